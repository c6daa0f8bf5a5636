//! Dynnikov coordinates of integral laminations on the n-punctured disk and
//! the piecewise-linear action of the braid generators on them.
//!
//! A lamination is encoded by `(a_1..a_{n-2}, b_1..b_{n-2})`. Writing
//! `x⁺ = max(x, 0)` and `x⁻ = min(x, 0)`, the generator σ_i acts as follows
//! (primed values are the images, untouched coordinates stay put):
//!
//! ```text
//! σ_1:      b'_1 = -a_1 + b_1⁺           a'_1 = b_1 - b'_1⁺
//! σ_1⁻¹:    b'_1 =  a_1 + b_1⁺           a'_1 = -b_1 + b'_1⁺
//! σ_{n-1}:  b'_{n-2} = -a_{n-2} + b_{n-2}⁻   a'_{n-2} = b_{n-2} - b'_{n-2}⁻
//! σ_{n-1}⁻¹: b'_{n-2} = a_{n-2} + b_{n-2}⁻   a'_{n-2} = -b_{n-2} + b'_{n-2}⁻
//!
//! σ_i, 2 <= i <= n-2, on (a_{i-1}, b_{i-1}, a_i, b_i):
//!   z = a_{i-1} - b_{i-1}⁻ - a_i + b_i⁺
//!   a'_{i-1} = a_{i-1} + b_{i-1}⁺ + (b_i⁺ - z)⁺     b'_{i-1} = b_i - z⁺
//!   a'_i     = a_i + b_i⁻ + (b_{i-1}⁻ + z)⁻          b'_i     = b_{i-1} + z⁺
//! σ_i⁻¹:
//!   z = a_{i-1} + b_{i-1}⁻ - a_i - b_i⁺
//!   a'_{i-1} = a_{i-1} - b_{i-1}⁺ - (b_i⁺ + z)⁺     b'_{i-1} = b_i + z⁻
//!   a'_i     = a_i - b_i⁻ - (b_{i-1}⁻ - z)⁻          b'_i     = b_{i-1} - z⁻
//! ```
//!
//! The maps are homogeneous, so the same rules run on exact integers and, for
//! long entropy runs, on renormalized floats.
//!
//! The word problem is solved in the disk with one extra puncture standing in
//! for the boundary: without it the full twist Δ², which fixes every
//! lamination of the n-punctured disk, would be indistinguishable from the
//! identity.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Permutation};
use crate::burau::{self, B3MatrixClass, NielsenThurstonType};
use crate::error::{Error, Result};

trait PlScalar: Clone + PartialOrd + Zero + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn pos(&self) -> Self {
        if *self > Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }

    fn neg_part(&self) -> Self {
        if *self < Self::zero() {
            self.clone()
        } else {
            Self::zero()
        }
    }
}

impl PlScalar for BigInt {}
impl PlScalar for i64 {}
impl PlScalar for f64 {}

/// Applies σ_k^sign in place to the coordinates of an `n`-punctured disk.
fn act<T: PlScalar>(a: &mut [T], b: &mut [T], n: usize, k: usize, sign: i32) {
    debug_assert!(n >= 3 && a.len() == n - 2 && b.len() == n - 2);
    debug_assert!(1 <= k && k < n);
    if k == 1 {
        let (a1, b1) = (a[0].clone(), b[0].clone());
        if sign > 0 {
            let nb = -a1 + b1.pos();
            a[0] = b1 - nb.pos();
            b[0] = nb;
        } else {
            let nb = a1 + b1.pos();
            a[0] = -b1 + nb.pos();
            b[0] = nb;
        }
    } else if k == n - 1 {
        let j = n - 3;
        let (aj, bj) = (a[j].clone(), b[j].clone());
        if sign > 0 {
            let nb = -aj + bj.neg_part();
            a[j] = bj - nb.neg_part();
            b[j] = nb;
        } else {
            let nb = aj + bj.neg_part();
            a[j] = -bj + nb.neg_part();
            b[j] = nb;
        }
    } else {
        let (p, q) = (k - 2, k - 1);
        let (a0, b0, a1, b1) = (a[p].clone(), b[p].clone(), a[q].clone(), b[q].clone());
        if sign > 0 {
            let z = a0.clone() - b0.neg_part() - a1.clone() + b1.pos();
            a[p] = a0 + b0.pos() + (b1.pos() - z.clone()).pos();
            b[p] = b1.clone() - z.pos();
            a[q] = a1 + b1.neg_part() + (b0.neg_part() + z.clone()).neg_part();
            b[q] = b0 + z.pos();
        } else {
            let z = a0.clone() + b0.neg_part() - a1.clone() - b1.pos();
            a[p] = a0 - b0.pos() - (b1.pos() + z.clone()).pos();
            b[p] = b1.clone() + z.neg_part();
            a[q] = a1 - b1.neg_part() - (b0.neg_part() - z.clone()).neg_part();
            b[q] = b0 - z.neg_part();
        }
    }
}

fn act_word<T: PlScalar>(a: &mut [T], b: &mut [T], n: usize, letters: &[i32]) {
    for &k in letters {
        act(a, b, n, k.unsigned_abs() as usize, k.signum());
    }
}

/// Integer coordinates of a lamination on the `n`-punctured disk.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynnikovCoords {
    n: usize,
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl DynnikovCoords {
    pub fn new(n: usize, a: Vec<BigInt>, b: Vec<BigInt>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewStrands { min: 3, got: n });
        }
        if a.len() != n - 2 || b.len() != n - 2 {
            return Err(Error::InvalidConfig(format!(
                "expected {} a- and b-coordinates for {n} punctures, got {} and {}",
                n - 2,
                a.len(),
                b.len()
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn from_i64(n: usize, a: &[i64], b: &[i64]) -> Result<Self> {
        Self::new(n, a.iter().map(|&x| x.into()).collect(), b.iter().map(|&x| x.into()).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![BigInt::zero(); n.saturating_sub(2)], vec![BigInt::zero(); n.saturating_sub(2)])
    }

    /// The simple closed curve enclosing punctures `k` and `k+1`.
    pub fn canonical_loop(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::LetterOutOfRange { letter: k as i64, n });
        }
        let mut c = Self::zero(n)?;
        if k <= n - 2 {
            c.b[k - 1] = BigInt::from(1);
        }
        if k >= 2 {
            c.b[k - 2] = BigInt::from(-1);
        }
        Ok(c)
    }

    /// The `n - 1` curves around adjacent pairs of punctures.
    pub fn canonical_loops(n: usize) -> Result<Vec<Self>> {
        (1..n).map(|k| Self::canonical_loop(n, k)).collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    pub fn dimension(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(Zero::is_zero)
    }

    pub fn l1_norm(&self) -> BigInt {
        self.a.iter().chain(&self.b).map(|x| x.abs()).sum()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            n: self.n,
            a: self.a.iter().map(|x| x * factor).collect(),
            b: self.b.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn apply_generator(&self, k: usize, sign: i32) -> Result<Self> {
        if k == 0 || k >= self.n {
            return Err(Error::LetterOutOfRange { letter: k as i64 * sign.signum() as i64, n: self.n });
        }
        let mut out = self.clone();
        act(&mut out.a, &mut out.b, self.n, k, sign);
        Ok(out)
    }

    /// Left-to-right action of a word.
    pub fn apply_braid(&self, w: &BraidWord) -> Result<Self> {
        if w.n() != self.n {
            return Err(Error::StrandMismatch(self.n, w.n()));
        }
        let mut out = self.clone();
        act_word(&mut out.a, &mut out.b, self.n, w.letters());
        Ok(out)
    }
}

impl fmt::Display for DynnikovCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "(a: [{}]; b: [{}])", join(&self.a), join(&self.b))
    }
}

/// A complete invariant of a braid: its permutation together with the images
/// of the canonical loops of the disk with an extra boundary puncture.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidKey {
    permutation: Permutation,
    loops: Vec<DynnikovCoords>,
}

pub fn braid_key(w: &BraidWord) -> BraidKey {
    let m = w.n() + 1;
    let loops = DynnikovCoords::canonical_loops(m)
        .expect("augmented disk has at least 3 punctures")
        .into_iter()
        .map(|mut c| {
            act_word(&mut c.a, &mut c.b, m, w.letters());
            c
        })
        .collect();
    BraidKey { permutation: w.permutation(), loops }
}

pub fn is_trivial(w: &BraidWord) -> bool {
    if !w.permutation().is_identity() {
        return false;
    }
    let m = w.n() + 1;
    DynnikovCoords::canonical_loops(m)
        .expect("augmented disk has at least 3 punctures")
        .into_iter()
        .all(|c| {
            let mut image = c.clone();
            act_word(&mut image.a, &mut image.b, m, w.letters());
            image == c
        })
}

pub fn equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    Ok(is_trivial(&w1.compose(&w2.inverse())?))
}

pub fn commute(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    equal(&u.compose(v)?, &v.compose(u)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Zero,
    Positive,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Zero => "ZERO",
            Verdict::Positive => "POSITIVE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Tuning for [`entropy_estimate`] and [`classify`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EntropyConfig {
    pub iterations: usize,
    /// Iterations run in exact integers before switching to floats.
    pub exact_warmup: usize,
    pub random_seeds: usize,
    pub rng_seed: u64,
    pub seed_range: i64,
    pub tail_fraction: f64,
    pub positive_threshold: f64,
    pub max_relative_std: f64,
    pub zero_threshold: f64,
    pub burau_grid: usize,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        Self {
            iterations: 1000,
            exact_warmup: 24,
            random_seeds: 8,
            rng_seed: 0x5EED,
            seed_range: 10,
            tail_fraction: 0.5,
            positive_threshold: 0.02,
            max_relative_std: 0.25,
            zero_threshold: 0.005,
            burau_grid: burau::DEFAULT_GRID,
        }
    }
}

impl EntropyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.iterations < 10 {
            return bad("entropy iterations must be at least 10");
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return bad("tail fraction must lie in (0, 1]");
        }
        if self.zero_threshold < 0.0 || self.positive_threshold <= self.zero_threshold {
            return bad("thresholds must satisfy 0 <= zero < positive");
        }
        if self.max_relative_std < 0.0 {
            return bad("relative standard deviation bound must be nonnegative");
        }
        if self.seed_range < 1 {
            return bad("seed range must be at least 1");
        }
        if self.burau_grid == 0 {
            return bad("burau grid must be at least 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    /// Nats per application of the word.
    pub value: f64,
    pub iterations: usize,
    /// Per-iteration log-norm increments of the seed that attained `value`.
    pub growth_log: Vec<f64>,
    pub tail_std: f64,
    pub verdict: Verdict,
    pub seed_index: usize,
}

/// Starting laminations: the canonical loops then pseudo-random vectors.
pub fn entropy_seeds(n: usize, config: &EntropyConfig) -> Result<Vec<DynnikovCoords>> {
    let mut seeds = DynnikovCoords::canonical_loops(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let r = config.seed_range;
    while seeds.len() < n - 1 + config.random_seeds {
        let a: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-r..=r)).collect();
        let b: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-r..=r)).collect();
        let c = DynnikovCoords::from_i64(n, &a, &b)?;
        if !c.is_zero() {
            seeds.push(c);
        }
    }
    Ok(seeds)
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.to_f64().unwrap_or(f64::NAN).ln()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Scales integer coordinates to floats of unit l1 norm.
fn to_unit_floats(v: &[BigInt], norm: &BigInt) -> Vec<f64> {
    let shift = norm.bits().saturating_sub(64);
    let denom = (norm >> shift).to_f64().unwrap_or(f64::NAN);
    v.iter().map(|x| (x >> shift).to_f64().unwrap_or(f64::NAN) / denom).collect()
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().chain(b).map(|x| x.abs()).sum()
}

/// Log-norm increments of one seed over `iterations` applications of `w`.
pub fn growth_log(w: &BraidWord, seed: &DynnikovCoords, iterations: usize, exact_warmup: usize) -> Vec<f64> {
    let n = w.n();
    let mut out = Vec::with_capacity(iterations);
    let mut a = seed.a.clone();
    let mut b = seed.b.clone();
    let mut log_prev = ln_big(&seed.l1_norm());
    let warm = exact_warmup.min(iterations);
    for _ in 0..warm {
        act_word(&mut a, &mut b, n, w.letters());
        let log_now = ln_big(&a.iter().chain(&b).map(|x| x.abs()).sum());
        out.push(log_now - log_prev);
        log_prev = log_now;
    }
    if warm == iterations {
        return out;
    }
    let norm: BigInt = a.iter().chain(&b).map(|x| x.abs()).sum();
    let mut fa = to_unit_floats(&a, &norm);
    let mut fb = to_unit_floats(&b, &norm);
    let s = l1(&fa, &fb);
    fa.iter_mut().chain(fb.iter_mut()).for_each(|x| *x /= s);
    for _ in warm..iterations {
        act_word(&mut fa, &mut fb, n, w.letters());
        let s = l1(&fa, &fb);
        out.push(s.ln());
        fa.iter_mut().chain(fb.iter_mut()).for_each(|x| *x /= s);
    }
    out
}

fn tail_stats(log: &[f64], tail_fraction: f64) -> (f64, f64) {
    let len = ((log.len() as f64 * tail_fraction).ceil() as usize).clamp(1, log.len());
    let tail = &log[log.len() - len..];
    let mean = tail.iter().sum::<f64>() / len as f64;
    let var = tail.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / len as f64;
    (mean, var.sqrt())
}

fn verdict_for(mean: f64, std: f64, config: &EntropyConfig) -> Verdict {
    if mean >= config.positive_threshold && std <= config.max_relative_std * mean {
        Verdict::Positive
    } else if mean <= config.zero_threshold {
        Verdict::Zero
    } else {
        Verdict::Inconclusive
    }
}

/// Growth rate of lamination complexity under iteration of `w`, maximized
/// over the seed family. Seeds are evaluated in parallel; the result does not
/// depend on scheduling.
pub fn entropy_estimate(w: &BraidWord, config: &EntropyConfig) -> Result<EntropyEstimate> {
    config.validate()?;
    if w.n() < 3 {
        return Err(Error::TooFewStrands { min: 3, got: w.n() });
    }
    let seeds = entropy_seeds(w.n(), config)?;
    let runs: Vec<(Vec<f64>, f64, f64)> = seeds
        .par_iter()
        .map(|seed| {
            let log = growth_log(w, seed, config.iterations, config.exact_warmup);
            let (mean, std) = tail_stats(&log, config.tail_fraction);
            (log, mean, std)
        })
        .collect();
    let (seed_index, (growth_log, value, tail_std)) = runs
        .into_iter()
        .enumerate()
        .reduce(|best, cur| if cur.1 .1 > best.1 .1 { cur } else { best })
        .expect("seed family is never empty");
    Ok(EntropyEstimate {
        value,
        iterations: config.iterations,
        verdict: verdict_for(value, tail_std, config),
        growth_log,
        tail_std,
        seed_index,
    })
}

/// Positive-entropy evidence for a braid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyCertificate {
    pub word: BraidWord,
    pub dynnikov_estimate: f64,
    pub burau_lower_bound: f64,
    /// The Burau bound alone proves the entropy positive.
    pub rigorous: bool,
}

impl EntropyCertificate {
    /// Tolerance between the estimate and the lower bound.
    pub const COHERENCE_SLACK: f64 = 5e-3;

    pub fn is_coherent(&self) -> bool {
        self.dynnikov_estimate >= self.burau_lower_bound - Self::COHERENCE_SLACK
            && (!self.rigorous || self.burau_lower_bound > 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    ZeroEntropy {
        estimate: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<B3MatrixClass>,
    },
    PositiveEntropy(EntropyCertificate),
    Inconclusive {
        estimate: f64,
        burau_lower_bound: f64,
    },
}

impl Classification {
    pub fn is_zero(&self) -> bool {
        matches!(self, Classification::ZeroEntropy { .. })
    }

    pub fn certificate(&self) -> Option<&EntropyCertificate> {
        match self {
            Classification::PositiveEntropy(c) => Some(c),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::ZeroEntropy { .. } => "ZERO_ENTROPY",
            Classification::PositiveEntropy(_) => "POSITIVE_ENTROPY",
            Classification::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

/// Zero / positive entropy decision for one braid.
///
/// On three strands the decision is exact. Elsewhere ZERO is the Dynnikov
/// heuristic; a positive Burau bound always rules it out.
pub fn classify(w: &BraidWord, config: &EntropyConfig) -> Result<Classification> {
    config.validate()?;
    if w.n() < 3 {
        return Err(Error::TooFewStrands { min: 3, got: w.n() });
    }
    let estimate = entropy_estimate(w, config)?;
    if w.n() == 3 {
        let exact = burau::b3_exact_classify(w)?;
        if exact.class != NielsenThurstonType::PseudoAnosov {
            return Ok(Classification::ZeroEntropy { estimate: estimate.value, exact: Some(exact) });
        }
        let bound = burau::entropy_lower_bound(w, config.burau_grid)?;
        return Ok(Classification::PositiveEntropy(EntropyCertificate {
            word: w.clone(),
            dynnikov_estimate: estimate.value,
            burau_lower_bound: bound,
            rigorous: bound > 0.0,
        }));
    }
    let bound = burau::entropy_lower_bound(w, config.burau_grid)?;
    let certificate = || EntropyCertificate {
        word: w.clone(),
        dynnikov_estimate: estimate.value,
        burau_lower_bound: bound,
        rigorous: bound > 0.0,
    };
    Ok(match estimate.verdict {
        Verdict::Positive => Classification::PositiveEntropy(certificate()),
        _ if bound > 0.0 && estimate.value >= bound - EntropyCertificate::COHERENCE_SLACK => {
            Classification::PositiveEntropy(certificate())
        }
        Verdict::Zero if bound == 0.0 => Classification::ZeroEntropy { estimate: estimate.value, exact: None },
        _ => Classification::Inconclusive { estimate: estimate.value, burau_lower_bound: bound },
    })
}
