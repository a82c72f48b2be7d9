//! Direction scans compared against the catalog.

use itertools::Itertools;
use serde::Serialize;

use super::{connectivity_probe, enumerate_ball, Evidence, ProbeConfig, ProbeError, ProbeMode};
use crate::catalog::Catalog;
use crate::direction::Direction;
use crate::group::{GroupAtom, GroupExpr};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub direction: Direction,
    pub evidence: Evidence,
    /// Membership in `Σ¹` (half-space mode) or `Ω¹` (cone mode) per the catalog.
    pub catalog_member: Option<bool>,
    /// Evidence contradicts the catalog; the catalog wins.
    pub warn: bool,
}

/// Every non-zero vector in `{-1, 0, 1}^m`.
pub fn compass_directions(m: usize) -> Vec<Direction> {
    (0..m)
        .map(|_| [-1i64, 0, 1])
        .multi_cartesian_product()
        .filter(|v| v.iter().any(|&c| c != 0))
        .map(|v| Direction::new(v).expect("non-zero"))
        .collect()
}

pub fn probe_direction_scan(
    catalog: &Catalog,
    atom: &GroupAtom,
    directions: &[Direction],
    radius: u32,
    mode: ProbeMode,
) -> Result<Vec<ScanRow>, ProbeError> {
    let ball = enumerate_ball(atom, radius)?;
    let g = GroupExpr::Atom(atom.clone());
    let reference = match mode {
        ProbeMode::HalfSpace => catalog.sigma1_complement(&g).map(|s| (s.value, true)),
        ProbeMode::TruncatedCone => catalog.omega(&g, 1).map(|s| (s.value, false)),
    };
    directions
        .iter()
        .map(|d| {
            let report = connectivity_probe(&ball, &ProbeConfig::with_defaults(radius, d.clone(), mode)?)?;
            let catalog_member = reference.as_ref().map(|(set, complement)| set.member(d) != *complement);
            let warn = matches!(
                (report.evidence, catalog_member),
                (Evidence::SupportsMembership, Some(false)) | (Evidence::SupportsNonMembership, Some(true))
            );
            Ok(ScanRow { direction: d.clone(), evidence: report.evidence, catalog_member, warn })
        })
        .collect()
}
