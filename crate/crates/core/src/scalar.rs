//! Exact integer scalars.
//!
//! Every numeric routine in this crate (Smith normal form, double description,
//! determinants) is written against [`ExactInt`], so the same code runs on
//! machine integers for speed and on [`num_bigint::BigInt`] when coefficient
//! growth matters. There is deliberately no floating-point instance.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed Euclidean ring of exact integers.
pub trait ExactInt:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("every ExactInt holds all i64 values")
    }
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Greatest common divisor of a slice, always non-negative. Zero for an all-zero slice.
pub fn gcd_all<T: ExactInt>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc.gcd(v))
}

/// Divides out the content of a vector. Returns `None` for the zero vector.
pub fn primitive<T: ExactInt>(values: &[T]) -> Option<Vec<T>> {
    let g = gcd_all(values);
    if g.is_zero() {
        return None;
    }
    Some(values.iter().map(|v| v.clone() / g.clone()).collect())
}

pub fn dot<T: ExactInt>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn primitive_divides_content() {
        assert_eq!(primitive(&[4i64, -6, 10]), Some(vec![2, -3, 5]));
        assert_eq!(primitive(&[0i64, 0]), None);
        let big: Vec<BigInt> = [3, 9].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(primitive(&big).unwrap(), vec![BigInt::from(1), BigInt::from(3)]);
    }

    #[test]
    fn gcd_is_non_negative() {
        assert_eq!(gcd_all(&[-4i64, -6]), 2);
        assert_eq!(gcd_all::<i64>(&[]), 0);
    }
}
