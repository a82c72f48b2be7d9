//! Subsets of the character sphere `S^{m-1}` in join normal form.
//!
//! The ambient space `R^m` is split into orthogonal coordinate blocks (a
//! [`Decomposition`]), one per factor of a direct product. A [`JoinAtom`]
//! assigns a [`Part`] to every block and denotes the spherical join of those
//! parts: a unit vector `x` belongs to the atom iff every non-zero block
//! `x_i` lies in a non-empty part and `x_i / |x_i|` is a point of that part.
//! Empty parts are the join identity. A [`SphereSet`] is a finite union of
//! atoms.
//!
//! Only the decidable fragment is ever put into canonical shape: parts are
//! normalized per block, atoms that differ in a single block are merged when
//! the union of those parts is representable, and atoms contained partwise in
//! another atom are dropped. Semantically equal sets outside the fragment can
//! still have different normal forms, so callers compare through
//! [`SphereSet::member`] and [`SphereSet::cardinality`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::{self, ConeShape, RationalCone};
use crate::direction::Direction;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SphereError {
    #[error("ambient mismatch: {0:?} vs {1:?}")]
    AmbientMismatch(Vec<usize>, Vec<usize>),
    #[error("complement is only defined on single-factor, full or empty sets; got {0}")]
    UnsupportedComplement(String),
    #[error("atom has {found} parts but the ambient has {expected} factors")]
    AtomArity { found: usize, expected: usize },
    #[error("point {point} does not live in factor {factor} of rank {rank}")]
    PointDimension { point: String, factor: usize, rank: usize },
    #[error("decomposition needs at least one factor")]
    NoFactors,
    #[error(transparent)]
    Cone(#[from] cone::ConeError),
}

/// Ranks of the orthogonal coordinate blocks of `R^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decomposition(Vec<usize>);

impl Decomposition {
    pub fn new(ranks: Vec<usize>) -> Result<Self, SphereError> {
        if ranks.is_empty() {
            return Err(SphereError::NoFactors);
        }
        Ok(Decomposition(ranks))
    }

    pub fn single(rank: usize) -> Self {
        Decomposition(vec![rank])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn factors(&self) -> usize {
        self.0.len()
    }

    /// Dimension `m` of the ambient vector space.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn offset(&self, factor: usize) -> usize {
        self.0[..factor].iter().sum()
    }

    pub fn concat(&self, other: &Decomposition) -> Decomposition {
        Decomposition(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Concatenation of any number of decompositions. With no input the
    /// result has no factors and only serves as a padding argument to
    /// [`SphereSet::embed`].
    pub fn concat_all<'a>(parts: impl IntoIterator<Item = &'a Decomposition>) -> Decomposition {
        Decomposition(parts.into_iter().flat_map(|d| d.0.iter().copied()).collect())
    }
}

/// What a join atom contributes on one factor sphere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Empty,
    Full,
    Points(BTreeSet<Direction>),
    /// The factor sphere minus finitely many points.
    Cofinite(BTreeSet<Direction>),
    /// Directions `x` with `<x, f> <= 0` for every listed normal; only kept
    /// when that region has dimension at least two.
    Cone(BTreeSet<Direction>),
}

impl Part {
    pub fn points(points: impl IntoIterator<Item = Direction>) -> Part {
        Part::Points(points.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Part::Empty)
    }

    pub fn contains(&self, d: &Direction) -> bool {
        match self {
            Part::Empty => false,
            Part::Full => true,
            Part::Points(p) => p.contains(d),
            Part::Cofinite(e) => !e.contains(d),
            Part::Cone(f) => f.iter().all(|n| n.dot(d.coords()) <= 0),
        }
    }

    fn directions(&self) -> Box<dyn Iterator<Item = &Direction> + '_> {
        match self {
            Part::Points(s) | Part::Cofinite(s) | Part::Cone(s) => Box::new(s.iter()),
            Part::Empty | Part::Full => Box::new(std::iter::empty()),
        }
    }

    /// Canonical form of a part on a factor sphere of the given rank.
    fn normalize(self, rank: usize) -> Result<Part, SphereError> {
        if rank == 0 {
            return Ok(Part::Empty);
        }
        Ok(match self {
            Part::Points(p) if p.is_empty() => Part::Empty,
            Part::Points(p) if rank == 1 && p.len() == 2 => Part::Full,
            Part::Cofinite(e) if e.is_empty() => Part::Full,
            Part::Cofinite(e) if rank == 1 => {
                let rest: BTreeSet<Direction> = s0().into_iter().filter(|d| !e.contains(d)).collect();
                Part::Points(rest).normalize(1)?
            }
            Part::Cone(f) if f.is_empty() => Part::Full,
            Part::Cone(f) => {
                let c = RationalCone::new(rank, f.iter().cloned())?;
                match cone::cone_rays(&c)? {
                    ConeShape::TrivialCone => Part::Empty,
                    ConeShape::SingleRay(d) => Part::points([d]),
                    ConeShape::Line(d) => Part::points([d.antipode(), d]).normalize(rank)?,
                    ConeShape::HigherDimensional(_) => Part::Cone(f),
                }
            }
            other => other,
        })
    }

    /// `self ⊆ other`, decided only where it is cheap and exact; `false` means "not shown".
    fn subset_of(&self, other: &Part) -> bool {
        match (self, other) {
            (Part::Empty, _) | (_, Part::Full) => true,
            (a, b) if a == b => true,
            (Part::Points(p), b) => p.iter().all(|d| b.contains(d)),
            (Part::Cofinite(e), Part::Cofinite(e2)) => e2.is_subset(e),
            (Part::Cone(f), Part::Cone(f2)) => f2.is_subset(f),
            (Part::Cone(f), Part::Cofinite(e)) => e.iter().all(|x| !Part::Cone(f.clone()).contains(x)),
            _ => false,
        }
    }

    /// Representable union of two parts on the same factor, if any.
    fn union(&self, other: &Part, rank: usize) -> Option<Part> {
        let merged = match (self, other) {
            (a, b) if b.subset_of(a) => a.clone(),
            (a, b) if a.subset_of(b) => b.clone(),
            (Part::Points(p), Part::Points(q)) => Part::Points(p.union(q).cloned().collect()),
            (Part::Points(p), Part::Cofinite(e)) | (Part::Cofinite(e), Part::Points(p)) => {
                Part::Cofinite(e.difference(p).cloned().collect())
            }
            (Part::Cofinite(e), Part::Cofinite(e2)) => Part::Cofinite(e.intersection(e2).cloned().collect()),
            _ => return None,
        };
        Some(merged.normalize(rank).expect("unions of normalized parts stay in the fragment"))
    }
}

fn s0() -> [Direction; 2] {
    [Direction::axis(1, 0, true), Direction::axis(1, 0, false)]
}

/// One term of the union: the spherical join of one part per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JoinAtom(Vec<Part>);

impl JoinAtom {
    pub fn new(parts: Vec<Part>) -> Self {
        JoinAtom(parts)
    }

    pub fn parts(&self) -> &[Part] {
        &self.0
    }

    fn is_void(&self) -> bool {
        self.0.iter().all(Part::is_empty)
    }

    fn subset_of(&self, other: &JoinAtom) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a.subset_of(b))
    }
}

/// Exact size of a sphere subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Zero,
    /// The listed points, sorted, embedded in the full ambient space.
    Finite(Vec<Direction>),
    Infinite,
}

impl Cardinality {
    pub fn count(&self) -> Option<usize> {
        match self {
            Cardinality::Zero => Some(0),
            Cardinality::Finite(p) => Some(p.len()),
            Cardinality::Infinite => None,
        }
    }

    pub fn is_finite_nonempty(&self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Zero => write!(f, "0"),
            Cardinality::Finite(p) => write!(f, "{}", p.len()),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSphereSet")]
pub struct SphereSet {
    ambient: Decomposition,
    atoms: Vec<JoinAtom>,
}

#[derive(Deserialize)]
struct RawSphereSet {
    ambient: Vec<usize>,
    atoms: Vec<Vec<Part>>,
}

impl TryFrom<RawSphereSet> for SphereSet {
    type Error = SphereError;
    fn try_from(raw: RawSphereSet) -> Result<Self, Self::Error> {
        SphereSet::new(Decomposition::new(raw.ambient)?, raw.atoms.into_iter().map(JoinAtom).collect())
    }
}

impl SphereSet {
    /// Validates dimensions and brings the set into normal form.
    pub fn new(ambient: Decomposition, atoms: Vec<JoinAtom>) -> Result<Self, SphereError> {
        let mut normalized = Vec::with_capacity(atoms.len());
        for atom in atoms {
            if atom.0.len() != ambient.factors() {
                return Err(SphereError::AtomArity { found: atom.0.len(), expected: ambient.factors() });
            }
            let mut parts = Vec::with_capacity(atom.0.len());
            for (i, (part, &rank)) in atom.0.into_iter().zip(ambient.ranks()).enumerate() {
                if let Some(bad) = part.directions().find(|d| d.dim() != rank) {
                    return Err(SphereError::PointDimension { point: bad.to_string(), factor: i, rank });
                }
                parts.push(part.normalize(rank)?);
            }
            normalized.push(JoinAtom(parts));
        }
        let mut set = SphereSet { ambient, atoms: normalized };
        set.renormalize();
        Ok(set)
    }

    pub fn empty(ambient: Decomposition) -> Self {
        SphereSet { ambient, atoms: Vec::new() }
    }

    /// The whole ambient sphere (which is itself empty when `m = 0`).
    pub fn full(ambient: Decomposition) -> Self {
        let parts = ambient.ranks().iter().map(|&r| if r == 0 { Part::Empty } else { Part::Full }).collect();
        let mut set = SphereSet { ambient, atoms: vec![JoinAtom(parts)] };
        set.renormalize();
        set
    }

    /// A single-factor set with one part.
    pub fn from_part(rank: usize, part: Part) -> Result<Self, SphereError> {
        SphereSet::new(Decomposition::single(rank), vec![JoinAtom(vec![part])])
    }

    /// A finite set of points in a single-factor ambient.
    pub fn from_points(rank: usize, points: impl IntoIterator<Item = Direction>) -> Result<Self, SphereError> {
        SphereSet::from_part(rank, Part::points(points))
    }

    pub fn ambient(&self) -> &Decomposition {
        &self.ambient
    }

    pub fn atoms(&self) -> &[JoinAtom] {
        &self.atoms
    }

    pub fn dim(&self) -> usize {
        self.ambient.total()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Whether the set is syntactically the whole sphere.
    pub fn is_full(&self) -> bool {
        if self.dim() == 0 {
            return true;
        }
        self.atoms.iter().any(|a| {
            a.0.iter()
                .zip(self.ambient.ranks())
                .all(|(p, &r)| r == 0 || matches!(p, Part::Full))
        })
    }

    fn renormalize(&mut self) {
        self.atoms.retain(|a| !a.is_void());
        loop {
            self.atoms.sort();
            self.atoms.dedup();
            let mut changed = false;

            let n = self.atoms.len();
            let mut keep = vec![true; n];
            for j in 0..n {
                for i in 0..n {
                    if i != j && keep[i] && self.atoms[j].subset_of(&self.atoms[i]) {
                        keep[j] = false;
                        changed = true;
                        break;
                    }
                }
            }
            let mut it = keep.iter();
            self.atoms.retain(|_| *it.next().unwrap());

            'merge: for i in 0..self.atoms.len() {
                for j in i + 1..self.atoms.len() {
                    if let Some(merged) = self.try_merge(&self.atoms[i], &self.atoms[j]) {
                        self.atoms[i] = merged;
                        self.atoms.swap_remove(j);
                        changed = true;
                        break 'merge;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }

    fn try_merge(&self, a: &JoinAtom, b: &JoinAtom) -> Option<JoinAtom> {
        let diffs: Vec<usize> = (0..a.0.len()).filter(|&k| a.0[k] != b.0[k]).collect();
        let [k] = diffs[..] else {
            return None;
        };
        let part = a.0[k].union(&b.0[k], self.ambient.ranks()[k])?;
        let mut parts = a.0.clone();
        parts[k] = part;
        Some(JoinAtom(parts))
    }

    /// Embeds this set into `left ⊕ self ⊕ right` with empty parts on the new factors.
    pub fn embed(&self, left: &Decomposition, right: &Decomposition) -> SphereSet {
        let ambient = Decomposition(
            left.ranks().iter().chain(self.ambient.ranks()).chain(right.ranks()).copied().collect(),
        );
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let mut parts = vec![Part::Empty; left.factors()];
                parts.extend(a.0.iter().cloned());
                parts.extend(std::iter::repeat_n(Part::Empty, right.factors()));
                JoinAtom(parts)
            })
            .collect();
        SphereSet { ambient, atoms }
    }

    /// Spherical join over the concatenated decomposition; `∅` is the identity.
    pub fn join(&self, other: &SphereSet) -> SphereSet {
        let ambient = self.ambient.concat(&other.ambient);
        if self.is_empty() {
            return other.embed(&self.ambient, &Decomposition(Vec::new()));
        }
        if other.is_empty() {
            return self.embed(&Decomposition(Vec::new()), &other.ambient);
        }
        let atoms = self
            .atoms
            .iter()
            .flat_map(|a| {
                other.atoms.iter().map(move |b| JoinAtom(a.0.iter().chain(&b.0).cloned().collect()))
            })
            .collect();
        let mut set = SphereSet { ambient, atoms };
        set.renormalize();
        set
    }

    pub fn union(&self, other: &SphereSet) -> Result<SphereSet, SphereError> {
        if self.ambient != other.ambient {
            return Err(SphereError::AmbientMismatch(self.ambient.0.clone(), other.ambient.0.clone()));
        }
        let mut set = SphereSet {
            ambient: self.ambient.clone(),
            atoms: self.atoms.iter().chain(&other.atoms).cloned().collect(),
        };
        set.renormalize();
        Ok(set)
    }

    /// Set complement inside the ambient sphere, on the decidable fragment.
    pub fn complement(&self) -> Result<SphereSet, SphereError> {
        if self.is_full() {
            return Ok(SphereSet::empty(self.ambient.clone()));
        }
        if self.is_empty() {
            return Ok(SphereSet::full(self.ambient.clone()));
        }
        let live: Vec<usize> = (0..self.ambient.factors()).filter(|&i| self.ambient.ranks()[i] > 0).collect();
        if let ([k], [atom]) = (&live[..], &self.atoms[..]) {
            let part = match &atom.0[*k] {
                Part::Points(p) => Some(Part::Cofinite(p.clone())),
                Part::Cofinite(e) => Some(Part::Points(e.clone())),
                _ => None,
            };
            if let Some(part) = part {
                let mut parts = vec![Part::Empty; self.ambient.factors()];
                parts[*k] = part;
                return SphereSet::new(self.ambient.clone(), vec![JoinAtom(parts)]);
            }
        }
        Err(SphereError::UnsupportedComplement(self.to_string()))
    }

    /// Splits a full-ambient vector into its factor blocks.
    fn blocks<'a>(&'a self, coords: &'a [i64]) -> impl Iterator<Item = &'a [i64]> + 'a {
        (0..self.ambient.factors()).map(move |i| {
            let off = self.ambient.offset(i);
            &coords[off..off + self.ambient.ranks()[i]]
        })
    }

    /// Exact membership of a rational point.
    pub fn member(&self, d: &Direction) -> bool {
        if d.dim() != self.dim() {
            return false;
        }
        self.atoms.iter().any(|atom| {
            self.blocks(d.coords()).zip(&atom.0).all(|(block, part)| {
                if block.iter().all(|&c| c == 0) {
                    return true;
                }
                match Direction::new(block.to_vec()) {
                    Ok(dir) => part.contains(&dir),
                    Err(_) => false,
                }
            })
        })
    }

    pub fn intersect_with_finite<'a>(&self, points: impl IntoIterator<Item = &'a Direction>) -> Vec<Direction> {
        let mut out: Vec<Direction> = points.into_iter().filter(|d| self.member(d)).cloned().collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn cardinality(&self) -> Cardinality {
        let mut points = BTreeSet::new();
        for atom in &self.atoms {
            let live: Vec<usize> = (0..atom.0.len()).filter(|&i| !atom.0[i].is_empty()).collect();
            let [k] = live[..] else {
                return Cardinality::Infinite;
            };
            let rank = self.ambient.ranks()[k];
            let offset = self.ambient.offset(k);
            match &atom.0[k] {
                Part::Points(p) => points.extend(p.iter().map(|d| d.embed(offset, self.dim()))),
                Part::Full if rank == 1 => points.extend(s0().iter().map(|d| d.embed(offset, self.dim()))),
                _ => return Cardinality::Infinite,
            }
        }
        if points.is_empty() {
            Cardinality::Zero
        } else {
            Cardinality::Finite(points.into_iter().collect())
        }
    }

    /// True iff the set consists of exactly two antipodal points.
    pub fn is_antipodal_pair(&self) -> bool {
        match self.cardinality() {
            Cardinality::Finite(p) => p.len() == 2 && p[0] == p[1].antipode(),
            _ => false,
        }
    }

    /// Reorders the factors: factor `i` of the result is factor `perm[i]` of `self`.
    pub fn permute_factors(&self, perm: &[usize]) -> SphereSet {
        let ambient = Decomposition(perm.iter().map(|&i| self.ambient.0[i]).collect());
        let atoms = self.atoms.iter().map(|a| JoinAtom(perm.iter().map(|&i| a.0[i].clone()).collect())).collect();
        let mut set = SphereSet { ambient, atoms };
        set.renormalize();
        set
    }
}

impl fmt::Display for SphereSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "∅ in {:?}", self.ambient.0);
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            let shown: Vec<String> = atom
                .0
                .iter()
                .map(|p| match p {
                    Part::Empty => "∅".to_string(),
                    Part::Full => "S".to_string(),
                    Part::Points(s) => format!("{{{}}}", join_dirs(s)),
                    Part::Cofinite(s) => format!("S∖{{{}}}", join_dirs(s)),
                    Part::Cone(s) => format!("cone{{{}}}", join_dirs(s)),
                })
                .collect();
            write!(f, "{}", shown.join(" ⊛ "))?;
        }
        write!(f, " in {:?}", self.ambient.0)
    }
}

fn join_dirs(s: &BTreeSet<Direction>) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
