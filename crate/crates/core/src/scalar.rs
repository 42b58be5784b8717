//! Scalar abstractions.
//!
//! Integer linear algebra runs over any Euclidean integer type (`i64`,
//! `i128`, `BigInt`); eigenvalue profiles only need an ordered scalar
//! with a zero, so rationals of any width work there.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A Euclidean ring of integers: the coefficient type of every matrix,
/// cochain and group coordinate in the crate.
pub trait IntegerRing: Integer + Signed + Clone + Debug + Display + Send + Sync + 'static {
    /// Nonnegative remainder modulo a positive modulus.
    fn reduce_mod(&self, modulus: &Self) -> Self {
        self.mod_floor(modulus)
    }

    fn from_i64(value: i64) -> Self;

    /// Conversion for reporting; `None` when the value does not fit.
    fn to_i64(&self) -> Option<i64>;
}

impl IntegerRing for i32 {
    fn from_i64(value: i64) -> Self {
        value as i32
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self as i64)
    }
}

impl IntegerRing for i64 {
    fn from_i64(value: i64) -> Self {
        value
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
}

impl IntegerRing for i128 {
    fn from_i64(value: i64) -> Self {
        value as i128
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl IntegerRing for num_bigint::BigInt {
    fn from_i64(value: i64) -> Self {
        num_bigint::BigInt::from(value)
    }
    fn to_i64(&self) -> Option<i64> {
        num_traits::ToPrimitive::to_i64(self)
    }
}

/// Ordered scalar used for eigenvalue lists.
pub trait OrderedScalar: Clone + PartialOrd + Zero + Debug {}

impl<T: Clone + PartialOrd + Zero + Debug> OrderedScalar for T {}
