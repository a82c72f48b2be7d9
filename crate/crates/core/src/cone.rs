//! Polyhedral cones `{x : <x, f> <= 0 for every normal f}` and their exact
//! shape, computed with the double description method.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::direction::Direction;
use crate::matrix::Matrix;
use crate::scalar::{dot, primitive, ExactInt};

/// Largest ambient dimension accepted by [`cone_rays`].
pub const MAX_CONE_DIM: usize = 8;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("cone dimension {0} exceeds the cap of {MAX_CONE_DIM}")]
    DimensionCap(usize),
    #[error("normal {normal} has dimension {found}, expected {expected}")]
    Dimension { normal: String, found: usize, expected: usize },
    #[error("ray coordinates overflow i64")]
    Overflow,
}

/// Cone cut out by finitely many rational half-spaces through the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCone {
    dim: usize,
    normals: BTreeSet<Direction>,
}

impl RationalCone {
    pub fn new(dim: usize, normals: impl IntoIterator<Item = Direction>) -> Result<Self, ConeError> {
        let normals: BTreeSet<Direction> = normals.into_iter().collect();
        if let Some(bad) = normals.iter().find(|n| n.dim() != dim) {
            return Err(ConeError::Dimension {
                normal: bad.to_string(),
                found: bad.dim(),
                expected: dim,
            });
        }
        Ok(RationalCone { dim, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> impl Iterator<Item = &Direction> {
        self.normals.iter()
    }

    /// Exact membership of an integer vector.
    pub fn contains(&self, x: &[i64]) -> bool {
        self.normals.iter().all(|f| f.dot(x) <= 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConeShape {
    TrivialCone,
    SingleRay(Direction),
    /// A full line through the origin; the stored direction has its first non-zero coordinate positive.
    Line(Direction),
    HigherDimensional(usize),
}

/// Generators of a cone: a lineality basis plus rays (extreme modulo lineality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators<T> {
    pub lineality: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

impl<T: ExactInt> ConeGenerators<T> {
    pub fn dimension(&self) -> usize {
        let all: Vec<Vec<T>> = self.lineality.iter().chain(&self.rays).cloned().collect();
        if all.is_empty() {
            return 0;
        }
        Matrix::from_rows(all).expect("generators share a dimension").rank()
    }
}

/// Double description of `{x in R^dim : A x <= 0}`.
///
/// Starts from the whole space (lineality = standard basis) and intersects
/// one half-space at a time. Candidate rays that fail the algebraic
/// extremality test (tight constraints of rank `rank(A_seen) - 1`) are dropped
/// after every step.
pub fn double_description<T: ExactInt>(dim: usize, normals: &[Vec<T>]) -> ConeGenerators<T> {
    let mut lineality: Vec<Vec<T>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let mut rays: Vec<Vec<T>> = Vec::new();
    let mut seen: Vec<Vec<T>> = Vec::new();

    for a in normals {
        seen.push(a.clone());
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lineality.swap_remove(pos);
            let al = dot(a, &l);
            lineality = lineality
                .into_iter()
                .filter_map(|lj| {
                    let alj = dot(a, &lj);
                    let v: Vec<T> = lj
                        .iter()
                        .zip(&l)
                        .map(|(x, y)| al.clone() * x.clone() - alj.clone() * y.clone())
                        .collect();
                    primitive(&v)
                })
                .collect();
            let sign = al.signum();
            let abs = al.abs();
            rays = rays
                .into_iter()
                .filter_map(|r| {
                    let ar = dot(a, &r);
                    let v: Vec<T> = r
                        .iter()
                        .zip(&l)
                        .map(|(x, y)| abs.clone() * x.clone() - sign.clone() * ar.clone() * y.clone())
                        .collect();
                    primitive(&v)
                })
                .collect();
            let r0: Vec<T> = if al.is_positive() { l.iter().map(|x| -x.clone()).collect() } else { l };
            rays.push(primitive(&r0).expect("lineality vectors are non-zero"));
            dedup(&mut rays);
            continue;
        }

        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for r in rays {
            let ar = dot(a, &r);
            if ar.is_positive() {
                pos.push((r, ar));
            } else {
                if ar.is_negative() {
                    neg.push((r.clone(), ar));
                }
                next.push(r);
            }
        }
        for (p, ap) in &pos {
            for (n, an) in &neg {
                let v: Vec<T> = p
                    .iter()
                    .zip(n)
                    .map(|(x, y)| ap.clone() * y.clone() - an.clone() * x.clone())
                    .collect();
                if let Some(v) = primitive(&v) {
                    next.push(v);
                }
            }
        }
        dedup(&mut next);
        let seen_rank = Matrix::from_rows(seen.clone()).expect("normals share a dimension").rank();
        rays = next
            .into_iter()
            .filter(|r| {
                let tight: Vec<Vec<T>> = seen.iter().filter(|s| dot(s, r).is_zero()).cloned().collect();
                let tight_rank = if tight.is_empty() { 0 } else { Matrix::from_rows(tight).unwrap().rank() };
                tight_rank + 1 == seen_rank
            })
            .collect();
    }
    ConeGenerators { lineality, rays }
}

fn dedup<T: ExactInt>(v: &mut Vec<Vec<T>>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|r| seen.insert(r.clone()));
}

/// Classifies the cone, using arbitrary-precision arithmetic internally.
pub fn cone_rays(cone: &RationalCone) -> Result<ConeShape, ConeError> {
    if cone.dim > MAX_CONE_DIM {
        return Err(ConeError::DimensionCap(cone.dim));
    }
    classify::<BigInt>(cone)
}

/// Classification over a caller-chosen scalar type.
pub fn classify<T: ExactInt>(cone: &RationalCone) -> Result<ConeShape, ConeError> {
    let normals: Vec<Vec<T>> = cone
        .normals
        .iter()
        .map(|n| n.coords().iter().map(|&c| T::from_i64_exact(c)).collect())
        .collect();
    let gens = double_description(cone.dim, &normals);
    let dim = gens.dimension();
    let to_direction = |v: &[T]| -> Result<Direction, ConeError> {
        let coords = v.iter().map(|c| c.to_i64().ok_or(ConeError::Overflow)).collect::<Result<Vec<_>, _>>()?;
        Ok(Direction::new(coords).expect("generators are non-zero"))
    };
    Ok(match dim {
        0 => ConeShape::TrivialCone,
        1 if gens.lineality.len() == 1 => ConeShape::Line(to_direction(&gens.lineality[0])?.line_representative()),
        1 => ConeShape::SingleRay(to_direction(&gens.rays[0])?),
        d => ConeShape::HigherDimensional(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(dim: usize, normals: &[&[i64]]) -> RationalCone {
        RationalCone::new(dim, normals.iter().map(|n| Direction::new(n.to_vec()).unwrap())).unwrap()
    }

    fn d(v: &[i64]) -> Direction {
        Direction::new(v.to_vec()).unwrap()
    }

    #[test]
    fn half_line() {
        assert_eq!(cone_rays(&cone(1, &[&[-1]])).unwrap(), ConeShape::SingleRay(d(&[1])));
    }

    #[test]
    fn opposite_normals_leave_a_line() {
        assert_eq!(cone_rays(&cone(2, &[&[1, 0], &[-1, 0]])).unwrap(), ConeShape::Line(d(&[0, 1])));
    }

    #[test]
    fn quadrant_is_two_dimensional() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(cone_rays(&c).unwrap(), ConeShape::HigherDimensional(2));
        assert!(c.contains(&[-1, -1]) && c.contains(&[-2, -1]));
    }

    #[test]
    fn pointed_cone_collapsing_to_zero() {
        assert_eq!(cone_rays(&cone(1, &[&[1], &[-1]])).unwrap(), ConeShape::TrivialCone);
        assert_eq!(
            cone_rays(&cone(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap(),
            ConeShape::TrivialCone
        );
        // three normals positively spanning the plane
        assert_eq!(cone_rays(&cone(2, &[&[1, 0], &[0, 1], &[-1, -1]])).unwrap(), ConeShape::TrivialCone);
    }

    #[test]
    fn single_ray_in_three_space() {
        // x <= 0 fails to pin down; add y = 0, z = 0 via opposite pairs and -x <= 0
        let c = cone(3, &[&[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1], &[-1, 0, 0]]);
        assert_eq!(cone_rays(&c).unwrap(), ConeShape::SingleRay(d(&[1, 0, 0])));
        // edge of a wedge: x+y <= 0, -x+y <= 0, z = 0 is 2-dimensional
        let c = cone(3, &[&[1, 1, 0], &[-1, 1, 0], &[0, 0, 1], &[0, 0, -1]]);
        assert_eq!(cone_rays(&c).unwrap(), ConeShape::HigherDimensional(2));
    }

    #[test]
    fn empty_normals_give_whole_space() {
        assert_eq!(cone_rays(&cone(3, &[])).unwrap(), ConeShape::HigherDimensional(3));
    }

    #[test]
    fn dimension_cap_enforced() {
        assert_eq!(cone_rays(&cone(9, &[])), Err(ConeError::DimensionCap(9)));
    }

    #[test]
    fn machine_and_big_integers_agree() {
        let c = cone(3, &[&[1, 2, -1], &[-1, 0, 3], &[0, -1, -1], &[2, 1, 1]]);
        assert_eq!(classify::<i64>(&c).unwrap(), classify::<BigInt>(&c).unwrap());
    }
}
