//! Generalized Dehn twists of the annulus `S¹ × [0, 1]` and the free abelian
//! lattice of multi-twists about disjoint annuli.
//!
//! The twist with parameters `(a, b)` is `(x, t) ↦ (x + a·t + b mod 1, t)`.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Twist {
    pub a: BigRational,
    pub b: BigRational,
}

impl Twist {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    /// `a = an/ad`, `b = bn/bd`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn identity() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn is_essential(&self) -> bool {
        !self.a.is_zero()
    }

    /// The lift `(x, t) ↦ x + a·t + b` on the universal cover `ℝ × [0, 1]`.
    pub fn lift(&self, x: &BigRational, t: &BigRational) -> BigRational {
        x + &self.a * t + &self.b
    }

    pub fn compose(&self, other: &Twist) -> Twist {
        Twist::new(&self.a + &other.a, &self.b + &other.b)
    }

    pub fn inverse(&self) -> Twist {
        Twist::new(-&self.a, -&self.b)
    }

    pub fn boundary_behavior(&self) -> BoundaryBehavior {
        let inner = frac(&self.b);
        let outer = frac(&(&self.a + &self.b));
        let order = inner.denom().lcm(outer.denom());
        BoundaryBehavior { inner, outer, order }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Fractional part in `[0, 1)`.
fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Rotation numbers of the twist on the two boundary circles and the order
/// of the combined boundary rotation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryBehavior {
    /// Rotation on `S¹ × {0}`.
    pub inner: BigRational,
    /// Rotation on `S¹ × {1}`.
    pub outer: BigRational,
    pub order: BigInt,
}

impl BoundaryBehavior {
    pub fn is_trivial(&self) -> bool {
        self.inner.is_zero() && self.outer.is_zero() && self.order.is_one()
    }
}

/// Element of `ℤ^rank`: integer powers of twists about `rank` disjoint annuli.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeVector {
    pub powers: Vec<i64>,
}

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        Self { powers: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.powers.len()
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "lattice rank mismatch");
        LatticeVector { powers: self.powers.iter().zip(&rhs.powers).map(|(x, y)| x + y).collect() }
    }
}

/// The free abelian group generated by twists about `rank` disjoint annuli.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistLattice {
    pub rank: usize,
}

impl TwistLattice {
    pub fn new(rank: usize) -> Self {
        Self { rank }
    }

    /// Sum of `(annulus index, power)` terms.
    pub fn embed(&self, powers: &[(usize, i64)]) -> Result<LatticeVector> {
        let mut v = LatticeVector::zero(self.rank);
        for &(index, power) in powers {
            if index >= self.rank {
                return Err(Error::AnnulusOutOfRange { index, rank: self.rank });
            }
            v.powers[index] += power;
        }
        Ok(v)
    }
}
