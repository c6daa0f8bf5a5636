//! Braid words over the Artin generators and the invariants that can be read
//! off a word without solving the word problem: the induced permutation of
//! the punctures, the exponent sum and pairwise linking numbers.
//!
//! Words act left to right everywhere in this crate: the first letter is
//! applied first.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in the Artin generators of the braid group on `n` strands.
///
/// Letter `k > 0` is the half-twist σ_k, `k < 0` its inverse. Words are kept
/// verbatim; no free reduction happens on composition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStrands { min: 2, got: n });
        }
        for &k in &letters {
            if k == 0 || k.unsigned_abs() as usize > n - 1 {
                return Err(Error::LetterOutOfRange { letter: k as i64, n });
            }
        }
        Ok(Self { n, letters })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// The single-letter word σ_k^sign.
    pub fn generator(n: usize, k: usize, sign: i32) -> Result<Self> {
        let k = k as i32 * sign.signum();
        Self::new(n, vec![k])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|k| -k).collect(),
        }
    }

    pub fn pow(&self, e: i32) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    /// The half twist Δ = (σ_1 σ_2 … σ_{n-1})(σ_1 … σ_{n-2}) … (σ_1).
    pub fn half_twist(n: usize) -> Result<BraidWord> {
        let mut letters = Vec::new();
        for top in (1..n).rev() {
            letters.extend(1..=top as i32);
        }
        Self::new(n, letters)
    }

    /// Parses whitespace separated tokens, each either a signed integer or
    /// `s<k>` / `s<k>^-1`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewStrands { min: 2, got: n });
        }
        let letters = text
            .split_whitespace()
            .map(parse_token)
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn permutation(&self) -> Permutation {
        let mut at_position: Vec<usize> = (0..self.n).collect();
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize - 1;
            at_position.swap(i, i + 1);
        }
        // at_position[p] is the puncture that ended up at position p
        let mut images = vec![0; self.n];
        for (pos, &start) in at_position.iter().enumerate() {
            images[start] = pos;
        }
        Permutation { images }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|k| k.signum() as i64).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Pairwise linking numbers of a pure braid.
    pub fn linking_matrix(&self) -> Result<LinkingMatrix> {
        let perm = self.permutation();
        if !perm.is_identity() {
            return Err(Error::NotPure(perm.to_string()));
        }
        let n = self.n;
        let mut strand_at: Vec<usize> = (0..n).collect();
        let mut crossings = vec![vec![0i64; n]; n];
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize - 1;
            let (s, t) = (strand_at[i], strand_at[i + 1]);
            let sign = k.signum() as i64;
            crossings[s][t] += sign;
            crossings[t][s] += sign;
            strand_at.swap(i, i + 1);
        }
        // each pair of strands of a pure braid crosses an even number of times
        let entries = crossings
            .into_iter()
            .map(|row| row.into_iter().map(|c| c / 2).collect())
            .collect();
        Ok(LinkingMatrix { entries })
    }
}

fn parse_token(tok: &str) -> Result<i32> {
    let malformed = || Error::MalformedToken(tok.to_string());
    if let Some(rest) = tok.strip_prefix('s') {
        let (index, inverted) = match rest.split_once('^') {
            Some((idx, "-1")) => (idx, true),
            Some((idx, "1")) => (idx, false),
            Some(_) => return Err(malformed()),
            None => (rest, false),
        };
        let k: i32 = index.parse().map_err(|_| malformed())?;
        if k <= 0 {
            return Err(malformed());
        }
        Ok(if inverted { -k } else { k })
    } else {
        tok.parse::<i32>().map_err(|_| malformed())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

/// A permutation of the punctures `1..=n`. Stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Builds from one-based images: `images[i-1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::MalformedPermutation(format!("{images:?} is not a bijection")));
            }
            seen[img - 1] = true;
            zero_based.push(img - 1);
        }
        Ok(Self { images: zero_based })
    }

    /// Transposition of two one-based points.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-based image of a one-based point.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub(crate) fn image0(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Commutator a⁻¹b⁻¹ab in left-to-right order.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// Conjugate g⁻¹·self·g.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let bad = |why: &str| Error::MalformedPermutation(format!("`{text}`: {why}"));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(bad("empty input"));
        }
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad("non-numeric point")))
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(bad("point out of range"));
                }
                if touched[p - 1] {
                    return Err(bad("cycles are not disjoint"));
                }
                touched[p - 1] = true;
            }
            for (idx, &p) in points.iter().enumerate() {
                images[p - 1] = points[(idx + 1) % points.len()] - 1;
            }
        }
        Ok(Self { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Symmetric integer matrix of pairwise linking numbers, zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn zero(n: usize) -> Self {
        Self { entries: vec![vec![0; n]; n] }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// One-based entry `lk_{ij}`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Strictly upper triangular entries, row by row.
    pub fn upper_triangle(&self) -> Vec<i64> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.entries[i][j]);
            }
        }
        out
    }
}

impl Add for &LinkingMatrix {
    type Output = LinkingMatrix;

    fn add(self, rhs: &LinkingMatrix) -> LinkingMatrix {
        assert_eq!(self.n(), rhs.n(), "linking matrix size mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
            .collect();
        LinkingMatrix { entries }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses one-based image lists like `[2, 1, 3]` or `2 1 3`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']')
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::MalformedPermutation(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images)
    }
}
