//! Geometric invariants of finitely generated groups and the twisted
//! conjugacy consequences they force.
//!
//! The crate works with a small catalog of groups closed under direct and
//! free products. For each expression it can report the rank of the
//! abelianization, the complement of the first BNSR invariant, the
//! truncated-cone invariants `Ω^n`, and a verdict on property `R∞` with a
//! replayable derivation trace. Exact Reidemeister numbers are available
//! for finitely generated abelian groups and by brute force for small
//! finite groups, and [`probe`] gives empirical connectivity evidence on
//! finite Cayley balls.
//!
//! Integer linear algebra ([`Matrix`], [`smith_normal_form`], the cone
//! enumerator) is generic over [`ExactInt`]; the aliases below fix the
//! usual instantiations.

pub mod catalog;
pub mod cone;
pub mod direction;
pub mod finite;
pub mod group;
pub mod matrix;
pub mod omega;
pub mod probe;
pub mod reidemeister;
pub mod rinf;
pub mod scalar;
pub mod selfcheck;
pub mod snf;
pub mod sphere;

pub use catalog::{Catalog, KnownInvariants};
pub use cone::{ConeShape, RationalCone};
pub use direction::Direction;
pub use finite::FiniteGroupTable;
pub use group::{parse_group_expr, AtomKind, GroupAtom, GroupExpr};
pub use matrix::Matrix;
pub use omega::{omega_from_sigma, OClass};
pub use reidemeister::{fixed_subgroup_trivial, reidemeister_number, FGAbelianAutomorphism, ReidemeisterNumber};
pub use probe::{connectivity_probe, enumerate_ball, BallGraph, Evidence, ProbeConfig, ProbeMode, ProbeReport};
pub use rinf::{decide, propagate_extension, Conclusion, ExtensionSpec, Rule, Verdict};
pub use scalar::ExactInt;
pub use snf::{cokernel, smith_normal_form, CokernelStructure, SmithForm};
pub use sphere::{Cardinality, Decomposition, JoinAtom, Part, SphereSet};

/// Arbitrary-precision integer matrix used wherever overflow is possible.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Machine-integer matrix for small, bounded inputs.
pub type SmallMatrix = Matrix<i64>;
/// Rational scale parameter of the probe.
pub type Scale = num_rational::Ratio<i64>;
