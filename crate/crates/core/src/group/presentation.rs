//! Finite presentations and their abelianizations.

use num_bigint::BigInt;
use serde::Serialize;

use super::{AtomKind, GroupAtom};
use crate::matrix::Matrix;
use crate::snf::cokernel;

/// A letter is `±(i + 1)` for generator `i`, the sign giving the exponent.
pub type Word = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("relator {relator} uses letter {letter} outside the generators")]
    Letter { relator: usize, letter: i32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitePresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl FinitePresentation {
    /// Relators are freely reduced on construction; empty ones are dropped.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        let n = generators.len() as i32;
        for (relator, w) in relators.iter().enumerate() {
            if let Some(&letter) = w.iter().find(|&&l| l == 0 || l.abs() > n) {
                return Err(PresentationError::Letter { relator, letter });
            }
        }
        let relators = relators.iter().map(|w| free_reduce(w)).filter(|w| !w.is_empty()).collect();
        Ok(FinitePresentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Generators by rows, relators by columns.
    pub fn exponent_sum_matrix(&self) -> Matrix<BigInt> {
        let mut m = Matrix::zeros(self.generators.len(), self.relators.len());
        for (j, w) in self.relators.iter().enumerate() {
            for &l in w {
                let i = (l.unsigned_abs() - 1) as usize;
                m[(i, j)] += BigInt::from(l.signum());
            }
        }
        m
    }

    /// Free rank and torsion invariant factors `> 1` of the abelianization.
    pub fn abelianization(&self) -> (usize, Vec<BigInt>) {
        let c = cokernel(&self.exponent_sum_matrix());
        (c.free_rank, c.torsion)
    }
}

fn gens(names: impl IntoIterator<Item = String>) -> Vec<String> {
    names.into_iter().collect()
}

fn inv(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

fn commutator(a: &[i32], b: &[i32]) -> Word {
    [a, b, &inv(a), &inv(b)].concat()
}

fn power(a: i32, k: u32) -> Word {
    vec![a; k as usize]
}

/// The built-in presentation of an atom; `None` for atoms without a finite one.
pub fn atom_presentation(atom: &GroupAtom) -> Option<FinitePresentation> {
    let (generators, relators) = match &atom.kind {
        AtomKind::FreeAbelian(k) => {
            let k = *k as i32;
            let rels = (1..=k).flat_map(|i| (i + 1..=k).map(move |j| commutator(&[i], &[j]))).collect();
            (gens((1..=k).map(|i| format!("x{i}"))), rels)
        }
        AtomKind::Free(n) => (gens((1..=*n).map(|i| format!("x{i}"))), vec![]),
        AtomKind::BaumslagSolitar(n) => {
            // a = 1, t = 2; t a t^-1 a^-n
            let rel = [vec![2, 1, -2], power(-1, *n)].concat();
            (gens(["a".into(), "t".into()]), vec![rel])
        }
        AtomKind::KleinBottle => (gens(["a".into(), "b".into()]), vec![vec![1, 2, 1, -2]]),
        AtomKind::Braid(n) => {
            let m = *n as i32 - 1;
            let mut rels = Vec::new();
            for i in 1..=m {
                for j in i + 1..=m {
                    if j == i + 1 {
                        rels.push(vec![i, j, i, -j, -i, -j]);
                    } else {
                        rels.push(commutator(&[i], &[j]));
                    }
                }
            }
            (gens((1..=m).map(|i| format!("s{i}"))), rels)
        }
        AtomKind::ThompsonF => {
            // [A B^-1, A^-1 B A] and [A B^-1, A^-2 B A^2]
            let ab = [1, -2];
            (gens(["A".into(), "B".into()]), vec![commutator(&ab, &[-1, 2, 1]), commutator(&ab, &[-1, -1, 2, 1, 1])])
        }
        AtomKind::FiniteCyclic(k) => (gens(["a".into()]), vec![power(1, *k)]),
        AtomKind::GeneralizedThompson(_) | AtomKind::Lamplighter(_) | AtomKind::FiniteTable(_) => return None,
    };
    Some(FinitePresentation::new(generators, relators).expect("built-in presentations are well formed"))
}
