//! Empirical `Σ¹` / `Ω¹` evidence from finite Cayley balls.
//!
//! For a direction `γ` and scale `s`, the half-space sublevel set is
//! `{v : ⟨h(v), γ⟩ >= s‖γ‖}` and the truncated-cone sublevel set adds the
//! angle condition `∠(h(v), γ) <= arctan(1/s)`. A direction supports
//! membership when, for every `s` on the grid, the sublevel set at `s`
//! connects inside the sublevel set at `s - λ` for some `λ <= λ_max`.
//! All tests are exact integer inequalities.
//!
//! The ball is a finite window, so the report is evidence on that window
//! only. Components made solely of boundary-shell vertices are ignored.

mod ball;
pub mod models;
mod scan;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Serialize, Serializer};

use crate::direction::Direction;
use crate::Scale;

pub use ball::{enumerate, enumerate_ball, BallGraph, MAX_RADIUS, MAX_VERTICES};
pub use scan::{compass_directions, probe_direction_scan, ScanRow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProbeError {
    #[error("no normal form implemented for {0}")]
    Unsupported(String),
    #[error("radius {radius} exceeds the cap {max}")]
    Radius { radius: u32, max: u32 },
    #[error("ball exceeds {0} vertices")]
    TooManyVertices(usize),
    #[error("normal form coefficients overflow")]
    Overflow,
    #[error("invalid probe configuration: {0}")]
    Config(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProbeMode {
    HalfSpace,
    TruncatedCone,
}

impl FromStr for ProbeMode {
    type Err = ProbeError;

    fn from_str(s: &str) -> Result<Self, ProbeError> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "halfspace" | "sigma" => Ok(ProbeMode::HalfSpace),
            "truncatedcone" | "cone" | "omega" => Ok(ProbeMode::TruncatedCone),
            _ => Err(ProbeError::Config(format!("unknown mode {s:?}, expected halfspace or cone"))),
        }
    }
}

impl fmt::Display for ProbeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Evidence {
    SupportsMembership,
    SupportsNonMembership,
    Inconclusive,
}

fn scale_str<S: Serializer>(s: &Scale, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.to_string())
}

fn opt_scale_str<S: Serializer>(s: &Option<Scale>, ser: S) -> Result<S::Ok, S::Error> {
    match s {
        Some(v) => ser.serialize_str(&v.to_string()),
        None => ser.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    pub radius: u32,
    pub direction: Direction,
    #[serde(serialize_with = "serialize_grid")]
    pub grid: Vec<Scale>,
    #[serde(serialize_with = "scale_str")]
    pub lambda_max: Scale,
    pub mode: ProbeMode,
}

fn serialize_grid<S: Serializer>(grid: &[Scale], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(grid.iter().map(ToString::to_string))
}

impl ProbeConfig {
    pub fn new(
        radius: u32,
        direction: Direction,
        grid: Vec<Scale>,
        lambda_max: Scale,
        mode: ProbeMode,
    ) -> Result<Self, ProbeError> {
        if radius < 2 {
            return Err(ProbeError::Config("radius must be at least 2".into()));
        }
        if grid.iter().any(Signed::is_negative) || grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(ProbeError::Config("grid must be non-negative and non-decreasing".into()));
        }
        if lambda_max.is_negative() {
            return Err(ProbeError::Config("lambda_max must be non-negative".into()));
        }
        Ok(ProbeConfig { radius, direction, grid, lambda_max, mode })
    }

    /// `s = 0, 1, ..., r/2 - 1` with `λ_max = 1`.
    pub fn with_defaults(radius: u32, direction: Direction, mode: ProbeMode) -> Result<Self, ProbeError> {
        let top = i64::from((radius / 2).max(1)) - 1;
        ProbeConfig::new(radius, direction, (0..=top).map(Scale::from_integer).collect(), Scale::from_integer(1), mode)
    }
}

fn dot(h: &[i64], g: &[i64]) -> BigInt {
    h.iter().zip(g).map(|(&a, &b)| BigInt::from(a) * b).sum()
}

/// `⟨h, γ⟩ >= s‖γ‖`.
pub fn in_halfspace(h: &[i64], gamma: &Direction, s: Scale) -> bool {
    let g = gamma.coords();
    let n = dot(g, g);
    let lhs = dot(h, g) * *s.denom();
    let p2 = BigInt::from(*s.numer()).pow(2);
    if *s.numer() >= 0 {
        !lhs.is_negative() && &lhs * &lhs >= p2 * n
    } else {
        !lhs.is_negative() || &lhs * &lhs <= p2 * n
    }
}

/// `h ∈ Cone_θ(γ) ∩ H_{γ,s}` with `θ = arctan(1/s)`, `θ = π/2` at `s = 0`.
/// Negative `s` is treated as `0`.
pub fn in_cone(h: &[i64], gamma: &Direction, s: Scale) -> bool {
    let s = if s.is_negative() { Scale::zero() } else { s };
    if !in_halfspace(h, gamma, s) {
        return false;
    }
    let g = gamma.coords();
    let (d, n, hh) = (dot(h, g), dot(g, g), dot(h, h));
    let (p, q) = (BigInt::from(*s.numer()), BigInt::from(*s.denom()));
    let d2 = &d * &d;
    !d.is_negative() && &p * &p * (hh * &n - &d2) <= q.pow(2) * d2 * n
}

fn check_rank(ball: &BallGraph, gamma: &Direction) -> Result<(), ProbeError> {
    if gamma.dim() == ball.rank {
        Ok(())
    } else {
        Err(ProbeError::Config(format!("direction has {} coordinates, ball heights have {}", gamma.dim(), ball.rank)))
    }
}

fn sublevel(ball: &BallGraph, gamma: &Direction, s: Scale, mode: ProbeMode) -> Vec<bool> {
    ball.heights
        .iter()
        .map(|h| match mode {
            ProbeMode::HalfSpace => in_halfspace(h, gamma, s),
            ProbeMode::TruncatedCone => in_cone(h, gamma, s),
        })
        .collect()
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Vertices of the half-space sublevel set; the subgraph is the induced one.
pub fn halfspace_subgraph(ball: &BallGraph, gamma: &Direction, s: Scale) -> Result<Vec<usize>, ProbeError> {
    check_rank(ball, gamma)?;
    Ok(indices(&sublevel(ball, gamma, s, ProbeMode::HalfSpace)))
}

/// Vertices of the truncated-cone sublevel set.
pub fn cone_subgraph(ball: &BallGraph, gamma: &Direction, s: Scale) -> Result<Vec<usize>, ProbeError> {
    check_rank(ball, gamma)?;
    Ok(indices(&sublevel(ball, gamma, s, ProbeMode::TruncatedCone)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRow {
    #[serde(serialize_with = "scale_str")]
    pub s: Scale,
    pub vertices: usize,
    /// Components of the sublevel set inside the `(s - λ)` sublevel set,
    /// at `λ(s)` or at `λ_max` when no retreat suffices.
    pub components: usize,
    /// Components containing a vertex off the boundary shell.
    pub interior_components: usize,
    /// Least sufficient retreat, if any within `λ_max`.
    #[serde(serialize_with = "opt_scale_str")]
    pub lambda: Option<Scale>,
    pub shell_touched: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub group: String,
    pub config: ProbeConfig,
    pub ball_vertices: usize,
    pub rows: Vec<ProbeRow>,
    pub evidence: Evidence,
    pub notes: Vec<String>,
}

impl ProbeReport {
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn retreats(lambda_max: Scale) -> Vec<Scale> {
    let mut out: Vec<Scale> = (0..=lambda_max.floor().to_integer()).map(Scale::from_integer).collect();
    if !lambda_max.is_integer() {
        out.push(lambda_max);
    }
    out
}

/// Component counts `(all, interior)` of `target` inside the graph induced on `allowed`.
fn components(ball: &BallGraph, target: &[usize], allowed: &[bool]) -> (usize, usize) {
    let mut uf = UnionFind::<usize>::new(ball.len());
    for &(v, w, _) in &ball.edges {
        if allowed[v] && allowed[w] {
            uf.union(v, w);
        }
    }
    let mut all: Vec<usize> = target.iter().map(|&v| uf.find(v)).collect();
    let mut interior: Vec<usize> = target.iter().filter(|&&v| !ball.is_shell(v)).map(|&v| uf.find(v)).collect();
    all.sort_unstable();
    all.dedup();
    interior.sort_unstable();
    interior.dedup();
    (all.len(), interior.len())
}

/// Runs the connectivity test at every grid scale.
pub fn connectivity_probe(ball: &BallGraph, config: &ProbeConfig) -> Result<ProbeReport, ProbeError> {
    check_rank(ball, &config.direction)?;
    if config.radius != ball.radius {
        return Err(ProbeError::Config(format!("config radius {} but ball radius {}", config.radius, ball.radius)));
    }
    let gamma = &config.direction;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for &s in &config.grid {
        let target = indices(&sublevel(ball, gamma, s, config.mode));
        let shell_touched = target.iter().any(|&v| ball.is_shell(v));
        if target.iter().all(|&v| ball.is_shell(v)) {
            notes.push(format!("s = {s}: no interior vertices in the sublevel set, skipped"));
            rows.push(ProbeRow {
                s,
                vertices: target.len(),
                components: 0,
                interior_components: 0,
                lambda: None,
                shell_touched,
            });
            continue;
        }
        let mut row = None;
        for lambda in retreats(config.lambda_max) {
            let allowed = sublevel(ball, gamma, s - lambda, config.mode);
            let (all, interior) = components(ball, &target, &allowed);
            let connected = interior <= 1;
            row = Some(ProbeRow {
                s,
                vertices: target.len(),
                components: all,
                interior_components: interior,
                lambda: connected.then_some(lambda),
                shell_touched,
            });
            if connected {
                break;
            }
        }
        rows.push(row.expect("at least the zero retreat is tried"));
    }
    let probed: Vec<&ProbeRow> = rows.iter().filter(|r| r.interior_components > 0).collect();
    let evidence = if probed.iter().any(|r| r.lambda.is_none()) {
        Evidence::SupportsNonMembership
    } else if probed.is_empty() {
        Evidence::Inconclusive
    } else {
        let reach: Vec<Scale> = probed.iter().map(|r| r.s - r.lambda.expect("connected rows")).collect();
        if reach.windows(2).all(|w| w[0] <= w[1]) {
            Evidence::SupportsMembership
        } else {
            notes.push("s - λ(s) is not monotone on the grid".into());
            Evidence::Inconclusive
        }
    };
    if evidence == Evidence::SupportsMembership {
        notes.push("membership evidence holds on the observed window only".into());
    }
    Ok(ProbeReport { group: ball.group.clone(), config: config.clone(), ball_vertices: ball.len(), rows, evidence, notes })
}
