//! `Ω^n` from `Σ^n`, the product formula, and structural checks on the result.

use serde::Serialize;

use crate::cone::{cone_rays, ConeError, ConeShape, RationalCone};
use crate::direction::Direction;
use crate::sphere::{Cardinality, Decomposition, JoinAtom, Part, SphereError, SphereSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OmegaError {
    #[error("Σ must be full, empty or cofinite on a single factor sphere; got {0}")]
    UnsupportedSigma(String),
    #[error("Σ lives on S^{found}, expected S^{expected}")]
    Rank { found: isize, expected: isize },
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
}

/// Directions whose open `π/2`-neighbourhood lies in `sigma`.
///
/// With obstruction set `F = Σ^c` finite, a direction `x` qualifies iff
/// `<x, f> <= 0` for every `f ∈ F`.
pub fn omega_from_sigma(sigma: &SphereSet, m: usize) -> Result<SphereSet, OmegaError> {
    if sigma.dim() != m {
        return Err(OmegaError::Rank { found: sigma.dim() as isize - 1, expected: m as isize - 1 });
    }
    if sigma.is_full() {
        return Ok(SphereSet::full(sigma.ambient().clone()));
    }
    if sigma.is_empty() {
        return Ok(SphereSet::empty(sigma.ambient().clone()));
    }
    let unsupported = || OmegaError::UnsupportedSigma(sigma.to_string());
    let complement = sigma.complement().map_err(|_| unsupported())?;
    let Cardinality::Finite(obstructions) = complement.cardinality() else {
        return Err(unsupported());
    };
    let shape = cone_rays(&RationalCone::new(m, obstructions.iter().cloned())?)?;
    let live = sigma.ambient().ranks().iter().position(|&r| r > 0).expect("non-empty sphere");
    let part = match shape {
        ConeShape::TrivialCone => Part::Empty,
        ConeShape::SingleRay(d) => Part::points([d]),
        ConeShape::Line(d) => Part::points([d.antipode(), d]),
        ConeShape::HigherDimensional(_) => Part::Cone(obstructions.into_iter().collect()),
    };
    let mut parts = vec![Part::Empty; sigma.ambient().factors()];
    parts[live] = part;
    Ok(SphereSet::new(sigma.ambient().clone(), vec![JoinAtom::new(parts)])?)
}

/// Iterated spherical join; any unknown factor makes the result unknown.
pub fn omega_of_product(factors: &[Option<SphereSet>]) -> Option<SphereSet> {
    let mut known = factors.iter();
    let first = known.next()?.clone()?;
    known.try_fold(first, |acc, f| f.as_ref().map(|f| acc.join(f)))
}

/// Union of the factor complements, each embedded with empty parts elsewhere.
pub fn sigma1_complement_of_product(factors: &[Option<SphereSet>]) -> Option<SphereSet> {
    let sets: Vec<&SphereSet> = factors.iter().map(Option::as_ref).collect::<Option<_>>()?;
    let ambients: Vec<&Decomposition> = sets.iter().map(|s| s.ambient()).collect();
    let mut total: Option<SphereSet> = None;
    for (i, s) in sets.iter().enumerate() {
        let left = Decomposition::concat_all(ambients[..i].iter().copied());
        let right = Decomposition::concat_all(ambients[i + 1..].iter().copied());
        let embedded = s.embed(&left, &right);
        total = Some(match total {
            None => embedded,
            Some(t) => t.union(&embedded).expect("embeddings share the concatenated ambient"),
        });
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finite12Report {
    pub ok: bool,
    pub count: Option<usize>,
    pub antipodal: bool,
    pub message: String,
}

/// A finite non-empty `Ω^n` has one point or two antipodal points.
pub fn check_finite12(omega: &SphereSet) -> Finite12Report {
    let card = omega.cardinality();
    let count = card.count();
    let antipodal = omega.is_antipodal_pair();
    let (ok, message) = match &card {
        Cardinality::Zero => (true, "empty".to_string()),
        Cardinality::Infinite => (true, "infinite".to_string()),
        Cardinality::Finite(p) if p.len() == 1 => (true, format!("single point {}", p[0])),
        Cardinality::Finite(p) if p.len() == 2 && antipodal => (true, format!("antipodal pair {}, {}", p[0], p[1])),
        Cardinality::Finite(p) if p.len() == 2 => (false, format!("two points {}, {} that are not antipodal", p[0], p[1])),
        Cardinality::Finite(p) => (false, format!("{} points", p.len())),
    };
    Finite12Report { ok, count, antipodal, message }
}

/// Membership class by the number of points of `Ω^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OClass {
    O0,
    O1,
    O2,
    Other,
    Unknown,
}

impl OClass {
    pub fn of(omega: Option<&SphereSet>) -> OClass {
        match omega.map(SphereSet::cardinality) {
            None => OClass::Unknown,
            Some(Cardinality::Zero) => OClass::O0,
            Some(Cardinality::Finite(p)) if p.len() == 1 => OClass::O1,
            Some(Cardinality::Finite(p)) if p.len() == 2 => OClass::O2,
            Some(_) => OClass::Other,
        }
    }

    pub fn points(self) -> Option<usize> {
        match self {
            OClass::O0 => Some(0),
            OClass::O1 => Some(1),
            OClass::O2 => Some(2),
            OClass::Other | OClass::Unknown => None,
        }
    }
}

/// Rational points of a finite `Ω`, if any.
pub fn finite_points(omega: &SphereSet) -> Vec<Direction> {
    match omega.cardinality() {
        Cardinality::Finite(p) => p,
        _ => Vec::new(),
    }
}
