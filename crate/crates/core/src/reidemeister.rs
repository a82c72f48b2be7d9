//! Reidemeister numbers of automorphisms of finitely generated abelian groups.
//!
//! The group is `Z^k ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t`, written as the lattice
//! `Z^{k+t}` modulo the relations `d_j e_{k+j}`. An automorphism acts on
//! column vectors by the block matrix `Φ = [[A, 0], [M, T]]`, where `A` is the
//! free part, `M` sends the free part into the torsion and `T` acts on the
//! torsion. Twisted classes are the cosets of the image of `1 - Φ`, so
//! `R(φ) = #Coker(1 - Φ)` computed on the quotient lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::{Matrix, MatrixError};
use crate::snf::cokernel;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReidemeisterError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{part} must be {rows}x{cols}, got {found_rows}x{found_cols}")]
    Shape { part: &'static str, rows: usize, cols: usize, found_rows: usize, found_cols: usize },
    #[error("free part is not invertible over Z (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("torsion factor {0} must be at least 2")]
    TorsionFactor(BigInt),
    #[error("torsion part is not well defined: entry ({row}, {col}) times {divisor} is not divisible by {modulus}")]
    IllDefined { row: usize, col: usize, divisor: BigInt, modulus: BigInt },
    #[error("torsion part is not bijective")]
    NotBijective,
}

/// An automorphism of `Z^k ⊕ (⊕ Z/d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FGAbelianAutomorphism {
    free_part: Matrix<BigInt>,
    torsion_factors: Vec<BigInt>,
    torsion_part: Matrix<BigInt>,
    mixing: Matrix<BigInt>,
}

fn shape(part: &'static str, m: &Matrix<BigInt>, rows: usize, cols: usize) -> Result<(), ReidemeisterError> {
    if m.rows() == rows && m.cols() == cols {
        Ok(())
    } else {
        Err(ReidemeisterError::Shape { part, rows, cols, found_rows: m.rows(), found_cols: m.cols() })
    }
}

impl FGAbelianAutomorphism {
    /// Validates invertibility of the free part and well-definedness and
    /// bijectivity of the torsion part.
    pub fn new(
        free_part: Matrix<BigInt>,
        torsion_factors: Vec<BigInt>,
        torsion_part: Matrix<BigInt>,
        mixing: Matrix<BigInt>,
    ) -> Result<Self, ReidemeisterError> {
        let k = free_part.rows();
        let t = torsion_factors.len();
        shape("free part", &free_part, k, k)?;
        shape("torsion part", &torsion_part, t, t)?;
        shape("mixing", &mixing, t, k)?;
        if let Some(d) = torsion_factors.iter().find(|d| **d < BigInt::from(2)) {
            return Err(ReidemeisterError::TorsionFactor(d.clone()));
        }
        let det = free_part.determinant()?;
        if !det.abs().is_one() {
            return Err(ReidemeisterError::NotUnimodular(det));
        }
        for i in 0..t {
            for j in 0..t {
                if !(&torsion_part[(i, j)] * &torsion_factors[j]).is_multiple_of(&torsion_factors[i]) {
                    return Err(ReidemeisterError::IllDefined {
                        row: i,
                        col: j,
                        divisor: torsion_factors[j].clone(),
                        modulus: torsion_factors[i].clone(),
                    });
                }
            }
        }
        let relations = Matrix::from_diagonal(&torsion_factors);
        let image = cokernel(&torsion_part.hcat(&relations)?);
        if image.free_rank != 0 || !image.torsion.is_empty() {
            return Err(ReidemeisterError::NotBijective);
        }
        Ok(FGAbelianAutomorphism { free_part, torsion_factors, torsion_part, mixing })
    }

    /// An automorphism of `Z^k`.
    pub fn torsion_free(free_part: Matrix<BigInt>) -> Result<Self, ReidemeisterError> {
        let k = free_part.rows();
        FGAbelianAutomorphism::new(free_part, vec![], Matrix::zeros(0, 0), Matrix::zeros(0, k))
    }

    pub fn free_rank(&self) -> usize {
        self.free_part.rows()
    }

    pub fn free_part(&self) -> &Matrix<BigInt> {
        &self.free_part
    }

    pub fn torsion_factors(&self) -> &[BigInt] {
        &self.torsion_factors
    }

    /// The full block matrix `Φ` acting on `Z^{k+t}`.
    pub fn block_matrix(&self) -> Matrix<BigInt> {
        let k = self.free_rank();
        let t = self.torsion_factors.len();
        let mut phi = Matrix::zeros(k + t, k + t);
        for i in 0..k {
            for j in 0..k {
                phi[(i, j)] = self.free_part[(i, j)].clone();
            }
        }
        for i in 0..t {
            for j in 0..k {
                phi[(k + i, j)] = self.mixing[(i, j)].clone();
            }
            for j in 0..t {
                phi[(k + i, k + j)] = self.torsion_part[(i, j)].clone();
            }
        }
        phi
    }
}

/// Number of twisted conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReidemeisterNumber {
    Finite(BigInt),
    Infinite,
}

impl ReidemeisterNumber {
    pub fn is_finite(&self) -> bool {
        matches!(self, ReidemeisterNumber::Finite(_))
    }

    pub fn finite(n: impl Into<BigInt>) -> Self {
        ReidemeisterNumber::Finite(n.into())
    }

    /// Product in `N ∪ {∞}`.
    pub fn times(&self, other: &ReidemeisterNumber) -> ReidemeisterNumber {
        match (self, other) {
            (ReidemeisterNumber::Finite(a), ReidemeisterNumber::Finite(b)) => ReidemeisterNumber::Finite(a * b),
            _ => ReidemeisterNumber::Infinite,
        }
    }
}

impl fmt::Display for ReidemeisterNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReidemeisterNumber::Finite(n) => write!(f, "{n}"),
            ReidemeisterNumber::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for ReidemeisterNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ReidemeisterNumber::Finite(n) => match u64::try_from(n) {
                Ok(v) => s.serialize_u64(v),
                Err(_) => s.serialize_str(&n.to_string()),
            },
            ReidemeisterNumber::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for ReidemeisterNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(ReidemeisterNumber::finite(v)),
            Raw::Text(s) if s == "infinity" => Ok(ReidemeisterNumber::Infinite),
            Raw::Text(s) => s
                .parse::<BigInt>()
                .map(ReidemeisterNumber::Finite)
                .map_err(|_| serde::de::Error::custom(format!("expected an integer or \"infinity\", got {s:?}"))),
        }
    }
}

/// `#Coker(1 - Φ)` on the quotient lattice.
pub fn reidemeister_number(phi: &FGAbelianAutomorphism) -> ReidemeisterNumber {
    let n = phi.free_rank() + phi.torsion_factors.len();
    let one_minus = Matrix::identity(n).sub(&phi.block_matrix()).expect("square");
    let mut relations = Matrix::zeros(n, phi.torsion_factors.len());
    for (j, d) in phi.torsion_factors.iter().enumerate() {
        relations[(phi.free_rank() + j, j)] = d.clone();
    }
    let c = cokernel(&one_minus.hcat(&relations).expect("same row count"));
    match c.order() {
        Some(order) => ReidemeisterNumber::Finite(order),
        None => ReidemeisterNumber::Infinite,
    }
}

/// `Fix φ = {0}` on the free part, i.e. `det(1 - A) != 0`.
pub fn fixed_subgroup_trivial(phi: &FGAbelianAutomorphism) -> bool {
    let k = phi.free_rank();
    let one_minus = Matrix::identity(k).sub(&phi.free_part).expect("square");
    !one_minus.determinant().expect("square").is_zero()
}
