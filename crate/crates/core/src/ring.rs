//! Commutative coefficient rings for truncated series.
//!
//! Elements of rings such as `GW(K)` do not have a context-free zero, so the
//! trait builds constants from an existing element (`zero_like`, `one_like`).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A commutative ring with exact, decidable equality.
pub trait CoeffRing: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    /// The image of the integer `n` under `Z -> R`.
    fn from_int_like(&self, n: i64) -> Self;

    /// Multiplicative inverse, when `self` is a unit the ring can certify.
    fn unit_inverse(&self) -> Option<Self>;

    /// Whether `self` and `other` live in the same ring (same field, same mode).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn scale(&self, n: i64) -> Self {
        self.mul(&self.from_int_like(n))
    }
}

impl CoeffRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl CoeffRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn unit_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl CoeffRing for i64 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_int_like(&self, n: i64) -> Self {
        n
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self {
            1 | -1 => Some(*self),
            _ => None,
        }
    }
}
