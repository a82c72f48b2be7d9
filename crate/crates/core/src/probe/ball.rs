//! Finite balls in Cayley graphs.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::models::{BaumslagSolitarModel, FreeAbelianModel, FreeModel, KleinModel, NormalForm};
use super::ProbeError;
use crate::group::{AtomKind, GroupAtom};

pub const MAX_RADIUS: u32 = 12;
pub const MAX_VERTICES: usize = 2_000_000;

/// Ball of radius `r` around the identity, with heights `h(v) = π(v)`.
#[derive(Clone, Debug, Serialize)]
pub struct BallGraph {
    pub group: String,
    pub radius: u32,
    /// Rank `m` of the height lattice.
    pub rank: usize,
    pub generator_names: Vec<String>,
    pub generator_heights: Vec<Vec<i64>>,
    /// Normal forms, in breadth-first order; vertex 0 is the identity.
    pub labels: Vec<String>,
    pub heights: Vec<Vec<i64>>,
    pub lengths: Vec<u32>,
    /// `(v, w, i)` with `w = v · x_i`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl BallGraph {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertices at word length exactly `r`.
    pub fn is_shell(&self, v: usize) -> bool {
        self.lengths[v] == self.radius
    }

    /// Checks `h(v · x_i) - h(v) = π(x_i)` on every edge.
    pub fn heights_additive(&self) -> bool {
        self.heights[0].iter().all(|&c| c == 0)
            && self.edges.iter().all(|&(v, w, i)| {
                (0..self.rank).all(|k| self.heights[w][k] - self.heights[v][k] == self.generator_heights[i][k])
            })
    }
}

/// Breadth-first enumeration of the radius-`r` ball.
pub fn enumerate<M: NormalForm>(model: &M, group: String, radius: u32) -> Result<BallGraph, ProbeError> {
    if radius > MAX_RADIUS {
        return Err(ProbeError::Radius { radius, max: MAX_RADIUS });
    }
    let names = model.generator_names();
    let letters: Vec<i32> = (1..=names.len() as i32).flat_map(|i| [i, -i]).collect();
    let mut index: HashMap<M::Element, usize> = HashMap::new();
    let mut elements = vec![model.identity()];
    let mut lengths = vec![0];
    index.insert(model.identity(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if lengths[v] == radius {
            continue;
        }
        for &l in &letters {
            let w = model.step(&elements[v], l)?;
            if !index.contains_key(&w) {
                if elements.len() == MAX_VERTICES {
                    return Err(ProbeError::TooManyVertices(MAX_VERTICES));
                }
                index.insert(w.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(w);
                lengths.push(lengths[v] + 1);
            }
        }
    }
    let mut edges = Vec::new();
    for (v, g) in elements.iter().enumerate() {
        for i in 0..names.len() {
            if let Some(&w) = index.get(&model.step(g, i as i32 + 1)?) {
                edges.push((v, w, i));
            }
        }
    }
    Ok(BallGraph {
        group,
        radius,
        rank: model.rank(),
        generator_heights: (0..names.len()).map(|i| model.generator_height(i)).collect(),
        generator_names: names,
        labels: elements.iter().map(|g| model.label(g)).collect(),
        heights: elements.iter().map(|g| model.height(g)).collect(),
        lengths,
        edges,
    })
}

/// Ball for an atom with an implemented normal form.
pub fn enumerate_ball(atom: &GroupAtom, radius: u32) -> Result<BallGraph, ProbeError> {
    let name = atom.to_string();
    match atom.kind {
        AtomKind::FreeAbelian(k) if k >= 1 => enumerate(&FreeAbelianModel(k as usize), name, radius),
        AtomKind::Free(n) => enumerate(&FreeModel(n as usize), name, radius),
        AtomKind::BaumslagSolitar(n) => enumerate(&BaumslagSolitarModel(i128::from(n)), name, radius),
        AtomKind::KleinBottle => enumerate(&KleinModel, name, radius),
        _ => Err(ProbeError::Unsupported(name)),
    }
}
