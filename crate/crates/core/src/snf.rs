//! Smith normal form over an exact integer ring.
//!
//! `smith_normal_form(M)` returns unimodular `U`, `V` and diagonal `D` with
//! `U * M * V = D`, `D[i][i] >= 0` and `D[i][i] | D[i+1][i+1]`. Pivots are
//! chosen as the entry of least absolute value to limit coefficient growth.


use crate::matrix::Matrix;
use crate::scalar::ExactInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: ExactInt> SmithForm<T> {
    /// Diagonal entries `D[i][i]` for `i < min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Non-zero elementary divisors.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Structure of the cokernel `Z^rows / (column span of M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelStructure<T> {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<T>,
}

impl<T: ExactInt> CokernelStructure<T> {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<T> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(T::one(), |acc, d| acc * d.clone()))
    }
}

pub fn smith_normal_form<T: ExactInt>(m: &Matrix<T>) -> SmithForm<T> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    let steps = rows.min(cols);
    for k in 0..steps {
        let Some((pi, pj)) = min_abs_entry(&a, k) else {
            break;
        };
        a.swap_rows(k, pi);
        u.swap_rows(k, pi);
        a.swap_cols(k, pj);
        v.swap_cols(k, pj);

        loop {
            let mut dirty = false;
            // clear column k below the pivot
            for i in k + 1..rows {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let q = a[(i, k)].div_floor(&a[(k, k)]);
                let neg = -q;
                a.add_row_multiple(i, k, &neg);
                u.add_row_multiple(i, k, &neg);
                if !a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
            // clear row k right of the pivot
            for j in k + 1..cols {
                if a[(k, j)].is_zero() {
                    continue;
                }
                let q = a[(k, j)].div_floor(&a[(k, k)]);
                let neg = -q;
                a.add_col_multiple(j, k, &neg);
                v.add_col_multiple(j, k, &neg);
                if !a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived: move it into the pivot slot
                if let Some((pi, pj)) = min_abs_in_cross(&a, k) {
                    a.swap_rows(k, pi);
                    u.swap_rows(k, pi);
                    a.swap_cols(k, pj);
                    v.swap_cols(k, pj);
                }
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let p = a[(k, k)].clone();
            let offender = (k + 1..rows)
                .flat_map(|i| (k + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a[(k, k)].is_negative() {
            a.negate_row(k);
            u.negate_row(k);
        }
    }
    SmithForm { u, d: a, v }
}

/// Cokernel of `M` viewed as a map `Z^cols -> Z^rows`.
pub fn cokernel<T: ExactInt>(m: &Matrix<T>) -> CokernelStructure<T> {
    let snf = smith_normal_form(m);
    let factors = snf.invariant_factors();
    CokernelStructure {
        free_rank: m.rows() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

fn min_abs_entry<T: ExactInt>(a: &Matrix<T>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn min_abs_in_cross<T: ExactInt>(a: &Matrix<T>, k: usize) -> Option<(usize, usize)> {
    let col = (k..a.rows()).map(|i| (i, k));
    let row = (k + 1..a.cols()).map(|j| (k, j));
    col.chain(row)
        .filter(|&(i, j)| !a[(i, j)].is_zero())
        .min_by(|&(i1, j1), &(i2, j2)| a[(i1, j1)].abs().cmp(&a[(i2, j2)].abs()))
}
