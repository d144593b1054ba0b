//! Integer backends for the elimination routines.
//!
//! Algorithms are written once against [`Ring`]. The `i128` backend reports
//! overflow by returning `None`; callers then retry with [`BigInt`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub(crate) trait Ring: Clone + PartialEq + Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, b: &Self) -> Option<Self>;
    fn sub(&self, b: &Self) -> Option<Self>;
    fn mul(&self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Exact quotient. A nonzero remainder is a logic error in the caller.
    fn div_exact(&self, b: &Self) -> Self;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    /// `a·b - c·d`, the Bareiss cross term.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Option<Self> {
        a.mul(b)?.sub(&c.mul(d)?)
    }
}

impl Ring for i128 {
    #[inline]
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn is_positive(&self) -> bool {
        *self > 0
    }
    #[inline]
    fn is_negative(&self) -> bool {
        *self < 0
    }
    #[inline]
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    #[inline]
    fn sub(&self, b: &Self) -> Option<Self> {
        self.checked_sub(*b)
    }
    #[inline]
    fn mul(&self, b: &Self) -> Option<Self> {
        self.checked_mul(*b)
    }
    #[inline]
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    #[inline]
    fn div_exact(&self, b: &Self) -> Self {
        assert!(*b != 0, "division by zero");
        assert!(self % b == 0, "inexact division {self} / {b}");
        self / b
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn sub(&self, b: &Self) -> Option<Self> {
        Some(self - b)
    }
    fn mul(&self, b: &Self) -> Option<Self> {
        Some(self * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, b: &Self) -> Self {
        let (q, r) = self.div_rem(b);
        assert!(Zero::is_zero(&r), "inexact division {self} / {b}");
        q
    }
}
