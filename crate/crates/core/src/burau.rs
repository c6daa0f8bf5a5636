//! Reduced Burau representation over ℤ[t, t⁻¹] and the entropy bounds it
//! provides.
//!
//! Generator convention, frozen: for `2 <= i <= n-2` the image of σ_i is the
//! identity except for the 3×3 block on rows/columns `i-1, i, i+1`
//!
//! ```text
//! [ 1   t   0 ]
//! [ 0  -t   0 ]
//! [ 0   1   1 ]
//! ```
//!
//! truncated at the matrix border for σ_1 (`[[-t, 0], [1, 1]]` in the top
//! left corner) and σ_{n-1} (`[[1, t], [0, -t]]` in the bottom right corner).
//! A word maps to the left-to-right product of its letter images.
//!
//! For t on the unit circle the spectral radius of the image is at most the
//! dilatation of the braid, so `max_θ log ρ(B(e^{iθ}))` bounds the entropy
//! from below.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Default number of uniform θ samples; θ = π is always added.
pub const DEFAULT_GRID: usize = 64;

/// Integer Laurent polynomial in `t`. Only nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · t^exp`
    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, BigInt::from(coeff));
        }
        Self { terms }
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// `Some((c, k))` when the polynomial is the single term `c·t^k`.
    pub fn as_monomial(&self) -> Option<(BigInt, i32)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().expect("one term");
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.as_monomial(), Some((c, _)) if c.abs().is_one())
    }

    fn add_term(&mut self, exp: i32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| t.powi(*e) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Evaluation at an integer point where it is exact (`t = ±1`).
    pub fn eval_sign(&self, t: i8) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| if t < 0 && e % 2 != 0 { -c.clone() } else { c.clone() })
            .sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if idx == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix over ℤ[t, t⁻¹].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = LaurentPoly::one();
        }
        Self { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    fn set(&mut self, row: usize, col: usize, p: LaurentPoly) {
        self.entries[row * self.size + col] = p;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }

    /// Image of σ_k^sign in the reduced Burau representation of B_n.
    pub fn generator(n: usize, k: usize, sign: i32) -> Self {
        let size = n - 1;
        let r = k - 1;
        let mut m = Self::identity(size);
        if sign > 0 {
            m.set(r, r, LaurentPoly::monomial(-1, 1));
            if r > 0 {
                m.set(r - 1, r, LaurentPoly::t());
            }
            if r + 1 < size {
                m.set(r + 1, r, LaurentPoly::one());
            }
        } else {
            // inverse of the block above: column r becomes (1, -t⁻¹, t⁻¹)
            m.set(r, r, LaurentPoly::monomial(-1, -1));
            if r > 0 {
                m.set(r - 1, r, LaurentPoly::one());
            }
            if r + 1 < size {
                m.set(r + 1, r, LaurentPoly::monomial(1, -1));
            }
        }
        m
    }

    pub fn determinant(&self) -> LaurentPoly {
        // cofactor expansion; sizes here are tiny
        fn det(rows: &[Vec<LaurentPoly>]) -> LaurentPoly {
            match rows.len() {
                0 => LaurentPoly::one(),
                1 => rows[0][0].clone(),
                n => {
                    let mut acc = LaurentPoly::zero();
                    for col in 0..n {
                        if rows[0][col].is_zero() {
                            continue;
                        }
                        let minor: Vec<Vec<LaurentPoly>> = rows[1..]
                            .iter()
                            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
                            .collect();
                        let term = &rows[0][col] * &det(&minor);
                        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                    acc
                }
            }
        }
        let rows: Vec<Vec<LaurentPoly>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).clone()).collect())
            .collect();
        det(&rows)
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.size).fold(LaurentPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Substitutes `t = e^{iθ}`.
    pub fn evaluate_on_circle(&self, theta: f64) -> DMatrix<Complex64> {
        let t = Complex64::from_polar(1.0, theta);
        DMatrix::from_fn(self.size, self.size, |i, j| self.get(i, j).eval(t))
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        let n = self.size;
        let mut out = LaurentMatrix { size: n, entries: vec![LaurentPoly::zero(); n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.entries[i * n + j] + &(a * b);
                        out.entries[i * n + j] = cur;
                    }
                }
            }
        }
        out
    }
}

/// Reduced Burau image of a braid word on `n >= 3` strands.
pub fn reduced_burau(w: &BraidWord) -> Result<LaurentMatrix> {
    if w.n() < 3 {
        return Err(Error::TooFewStrands { min: 3, got: w.n() });
    }
    let n = w.n();
    Ok(w.letters().iter().fold(LaurentMatrix::identity(n - 1), |acc, &k| {
        &acc * &LaurentMatrix::generator(n, k.unsigned_abs() as usize, k.signum())
    }))
}

pub fn evaluate_on_circle(m: &LaurentMatrix, theta: f64) -> DMatrix<Complex64> {
    m.evaluate_on_circle(theta)
}

/// The sampled angles: `grid` uniform points in `[0, 2π)` plus π.
pub fn theta_grid(grid: usize) -> Vec<f64> {
    let mut thetas: Vec<f64> = (0..grid).map(|j| 2.0 * PI * j as f64 / grid as f64).collect();
    if !grid.is_multiple_of(2) || grid == 0 {
        thetas.push(PI);
    }
    thetas
}

fn spectral_radius(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    match m.clone().try_schur(1e-15, 10_000).and_then(|s| s.eigenvalues()) {
        Some(eigs) => eigs.iter().map(|z| z.norm()).fold(0.0, f64::max),
        None => gelfand_radius(m),
    }
}

// ‖M^(2^j)‖^(2^-j) with renormalization; fallback if the eigen solver fails.
fn gelfand_radius(m: &DMatrix<Complex64>) -> f64 {
    let mut p = m.clone();
    let mut log_scale = 0.0;
    let mut k = 1.0;
    for _ in 0..12 {
        let norm = p.norm();
        if norm == 0.0 {
            return 0.0;
        }
        p /= Complex64::from(norm);
        log_scale += norm.ln() / k;
        p = &p * &p;
        k *= 2.0;
    }
    log_scale += p.norm().ln() / k;
    log_scale.exp()
}

/// Certified log-radius values at or below this are treated as rounding
/// noise on the unit circle.
const CERTIFICATION_MARGIN: f64 = 1e-9;

/// Exponents at which `|tr M^k|` is compared against the dimension.
const TRACE_POWERS: [u32; 6] = [60, 120, 240, 420, 840, 1680];

/// Largest `(ln|tr M^k| - ln d) / k` over a few powers. Since
/// `|tr M^k| <= d·ρ^k`, a positive value proves `ρ > 1` regardless of how
/// the eigenvalues cluster.
fn trace_certified_log_radius(m: &DMatrix<Complex64>) -> f64 {
    let d = m.nrows() as f64;
    let mut best = f64::NEG_INFINITY;
    for &k in &TRACE_POWERS {
        let (power, log_scale) = normalized_power(m, k);
        let tr: Complex64 = power.trace();
        let value = (tr.norm().ln() + log_scale - d.ln()) / k as f64;
        if value > best {
            best = value;
        }
    }
    best
}

/// `M^k = power · exp(log_scale)` by square-and-multiply with renormalization.
fn normalized_power(m: &DMatrix<Complex64>, mut k: u32) -> (DMatrix<Complex64>, f64) {
    let n = m.nrows();
    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut result_scale = 0.0;
    let mut base = m.clone();
    let mut base_scale = 0.0;
    while k > 0 {
        if k & 1 == 1 {
            result = &result * &base;
            result_scale += base_scale;
            let norm = result.norm();
            if norm > 0.0 {
                result /= Complex64::from(norm);
                result_scale += norm.ln();
            }
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
            base_scale *= 2.0;
            let norm = base.norm();
            if norm > 0.0 {
                base /= Complex64::from(norm);
                base_scale += norm.ln();
            }
        }
    }
    (result, result_scale)
}

/// Log spectral radius at one angle, or 0 unless growth is confirmed by the
/// trace test.
pub fn log_radius_at(m: &LaurentMatrix, theta: f64) -> f64 {
    let evaluated = m.evaluate_on_circle(theta);
    if trace_certified_log_radius(&evaluated) <= CERTIFICATION_MARGIN {
        return 0.0;
    }
    spectral_radius(&evaluated).ln().max(0.0)
}

/// `max_θ log ρ(B(e^{iθ}))` over the sample grid, clamped at 0.
pub fn entropy_lower_bound(w: &BraidWord, grid: usize) -> Result<f64> {
    if grid == 0 {
        return Err(Error::InvalidConfig("burau grid must be at least 1".into()));
    }
    let m = reduced_burau(w)?;
    Ok(entropy_lower_bound_of(&m, grid).0)
}

/// Best bound and the angle that attains it.
pub fn entropy_lower_bound_of(m: &LaurentMatrix, grid: usize) -> (f64, f64) {
    let mut best = (0.0, PI);
    for theta in theta_grid(grid) {
        let v = log_radius_at(m, theta);
        if v > best.0 {
            best = (v, theta);
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NielsenThurstonType {
    Periodic,
    Reducible,
    PseudoAnosov,
}

impl fmt::Display for NielsenThurstonType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Periodic => "PERIODIC",
            Self::Reducible => "REDUCIBLE",
            Self::PseudoAnosov => "PSEUDO_ANOSOV",
        })
    }
}

/// Exact classification of a 3-strand braid through B₃ → SL(2, ℤ).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct B3MatrixClass {
    pub matrix: [[i64; 2]; 2],
    pub trace: i64,
    pub class: NielsenThurstonType,
    pub entropy_exact: f64,
}

/// σ₁ ↦ [[1,1],[0,1]], σ₂ ↦ [[1,0],[-1,1]]; the kernel is generated by Δ⁴.
pub fn b3_matrix(w: &BraidWord) -> Result<[[i64; 2]; 2]> {
    if w.n() != 3 {
        return Err(Error::StrandMismatch(3, w.n()));
    }
    let gen = |k: i32| -> [[i64; 2]; 2] {
        match k {
            1 => [[1, 1], [0, 1]],
            -1 => [[1, -1], [0, 1]],
            2 => [[1, 0], [-1, 1]],
            -2 => [[1, 0], [1, 1]],
            _ => unreachable!("letters validated on construction"),
        }
    };
    let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| -> [[i64; 2]; 2] {
        [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ]
    };
    Ok(w.letters().iter().fold([[1, 0], [0, 1]], |acc, &k| mul(acc, gen(k))))
}

pub fn b3_exact_classify(w: &BraidWord) -> Result<B3MatrixClass> {
    let matrix = b3_matrix(w)?;
    let trace = matrix[0][0] + matrix[1][1];
    let abs = trace.abs();
    let is_scalar = matrix[0][1] == 0 && matrix[1][0] == 0 && matrix[0][0] == matrix[1][1];
    let class = match abs {
        0 | 1 => NielsenThurstonType::Periodic,
        2 if is_scalar => NielsenThurstonType::Periodic,
        2 => NielsenThurstonType::Reducible,
        _ => NielsenThurstonType::PseudoAnosov,
    };
    let entropy_exact = if abs > 2 {
        let t = abs as f64;
        ((t + (t * t - 4.0).sqrt()) / 2.0).ln()
    } else {
        0.0
    };
    Ok(B3MatrixClass { matrix, trace, class, entropy_exact })
}
