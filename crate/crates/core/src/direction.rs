//! Rational points of the character sphere.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A rational direction in `R^m`, stored as a primitive integer vector.
///
/// Positive rescalings are quotiented out: `Direction::new(vec![2, -4])` is
/// the same point as `Direction::new(vec![1, -2])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Direction(Vec<i64>);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DirectionError {
    #[error("the zero vector does not define a direction")]
    Zero,
    #[error("a direction needs at least one coordinate")]
    Empty,
}

impl Direction {
    pub fn new(coords: Vec<i64>) -> Result<Self, DirectionError> {
        if coords.is_empty() {
            return Err(DirectionError::Empty);
        }
        let g = coords.iter().fold(0i64, |acc, &c| acc.gcd(&c));
        if g == 0 {
            return Err(DirectionError::Zero);
        }
        Ok(Direction(coords.into_iter().map(|c| c / g).collect()))
    }

    /// `+e_i` (or `-e_i` when `negative`) in `R^dim`.
    pub fn axis(dim: usize, i: usize, negative: bool) -> Self {
        let mut v = vec![0; dim];
        v[i] = if negative { -1 } else { 1 };
        Direction(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn antipode(&self) -> Self {
        Direction(self.0.iter().map(|c| -c).collect())
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> i64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// Sign representative for a line through the origin: first non-zero coordinate positive.
    pub fn line_representative(&self) -> Self {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.antipode(),
            _ => self.clone(),
        }
    }

    /// Places this direction into coordinates `offset..offset + dim` of a longer zero vector.
    pub fn embed(&self, offset: usize, total: usize) -> Self {
        let mut v = vec![0; total];
        v[offset..offset + self.0.len()].copy_from_slice(&self.0);
        Direction(v)
    }
}

/// Returns the direction of `antipode(d)`; kept as a free function for symmetry with the set operations.
pub fn antipode(d: &Direction) -> Direction {
    d.antipode()
}

impl TryFrom<Vec<i64>> for Direction {
    type Error = DirectionError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Direction::new(v)
    }
}

impl From<Direction> for Vec<i64> {
    fn from(d: Direction) -> Self {
        d.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
