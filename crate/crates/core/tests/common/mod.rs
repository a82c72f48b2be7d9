//! Independent oracles shared by the integration tests. Nothing here calls
//! into the code under test except to build inputs.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use twistinv::{Decomposition, Direction, FiniteGroupTable, JoinAtom, Part, SphereSet};

/// Path-halving disjoint sets, kept separate from the library's union-find.
pub struct Dsu {
    parent: Vec<usize>,
    roots: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), roots: n }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.roots -= 1;
        }
    }

    pub fn roots(&self) -> usize {
        self.roots
    }
}

/// Mixed-radix coordinates of `⊕ Z/moduli[i]`.
fn decode(mut x: u64, moduli: &[u64]) -> Vec<u64> {
    let mut v = vec![0; moduli.len()];
    for (slot, &m) in v.iter_mut().zip(moduli).rev() {
        *slot = x % m;
        x /= m;
    }
    v
}

fn encode(v: &[u64], moduli: &[u64]) -> u64 {
    v.iter().zip(moduli).fold(0, |acc, (&c, &m)| acc * m + c)
}

/// Twisted classes of `x ↦ Mx` on `⊕ Z/moduli[i]`, where row `i` of `M` is
/// read modulo `moduli[i]`. Classes are orbits of `a ↦ σ + a - Mσ`, and
/// the unit vectors generate.
pub fn twisted_classes_mod(rows: &[Vec<i64>], moduli: &[u64]) -> u64 {
    let order: u64 = moduli.iter().product();
    let apply = |v: &[u64]| -> Vec<u64> {
        rows.iter()
            .zip(moduli)
            .map(|(row, &m)| {
                let y: i128 = row.iter().zip(v).map(|(&a, &b)| i128::from(a) * i128::from(b)).sum();
                y.rem_euclid(i128::from(m)) as u64
            })
            .collect()
    };
    let mut dsu = Dsu::new(order as usize);
    for i in 0..moduli.len() {
        let mut sigma = vec![0; moduli.len()];
        sigma[i] = 1 % moduli[i];
        let image = apply(&sigma);
        for a in 0..order {
            let v = decode(a, moduli);
            let w: Vec<u64> = (0..moduli.len())
                .map(|j| (v[j] + sigma[j] + moduli[j] - image[j]) % moduli[j])
                .collect();
            dsu.union(a as usize, encode(&w, moduli) as usize);
        }
    }
    dsu.roots() as u64
}

/// Fraction-free determinant.
pub fn det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}

pub fn identity_minus(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| i64::from(i == j) - x).collect())
        .collect()
}

/// Product of random elementary row operations and sign flips; rejects
/// entries above `bound`.
pub fn random_unimodular(rng: &mut impl Rng, k: usize, steps: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let mut m: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..steps {
            match rng.gen_range(0..4) {
                0 if k > 1 => {
                    let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
                    if i != j {
                        let c = *[-2, -1, 1, 2].choose(rng).expect("non-empty");
                        let src = m[j].clone();
                        m[i].iter_mut().zip(&src).for_each(|(a, b)| *a += c * b);
                    }
                }
                1 if k > 1 => {
                    let (i, j) = (rng.gen_range(0..k), rng.gen_range(0..k));
                    m.swap(i, j);
                }
                _ => {
                    let i = rng.gen_range(0..k);
                    m[i].iter_mut().for_each(|x| *x = -*x);
                }
            }
        }
        if m.iter().flatten().all(|x| x.abs() <= bound) {
            return m;
        }
    }
}

/// Conjugacy classes `C` with `φ(C) = C`. Their number equals `R(φ)` for
/// finite groups.
pub fn fixed_conjugacy_classes(g: &FiniteGroupTable, phi: &[usize]) -> usize {
    let n = g.order();
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if class[x] == usize::MAX {
            for s in 0..n {
                class[g.mul(g.mul(s, x), g.inv(s))] = count;
            }
            count += 1;
        }
    }
    let mut fixed = vec![true; count];
    for x in 0..n {
        if class[phi[x]] != class[x] {
            fixed[class[x]] = false;
        }
    }
    fixed.into_iter().filter(|&f| f).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteShape {
    Trivial,
    Ray(Vec<i64>),
    Line(Vec<i64>),
    Higher(usize),
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<i128>> = vectors.iter().map(|v| v.iter().map(|&x| i128::from(x)).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(&pivot).for_each(|(x, p)| *x = *x * a - p * b);
                let g = rows[i].iter().fold(0i128, |acc, &x| {
                    let (mut u, mut v) = (acc.abs(), x.abs());
                    while v != 0 {
                        (u, v) = (v, u % v);
                    }
                    u
                });
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// Shape of `{x : <x, f> <= 0}` read off from every primitive integer
/// vector with entries in `[-bound, bound]`.
pub fn brute_cone(m: usize, normals: &[Vec<i64>], bound: i64) -> BruteShape {
    let side = (2 * bound + 1) as usize;
    let mut inside = Vec::new();
    for idx in 0..side.pow(m as u32) {
        let mut x = Vec::with_capacity(m);
        let mut rest = idx;
        for _ in 0..m {
            x.push((rest % side) as i64 - bound);
            rest /= side;
        }
        if x.iter().fold(0, |g, &c| gcd(g, c)) != 1 {
            continue;
        }
        if normals.iter().all(|f| f.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() <= 0) {
            inside.push(x);
        }
    }
    match inside.len() {
        0 => BruteShape::Trivial,
        1 => BruteShape::Ray(inside.pop().expect("one")),
        2 if inside[0].iter().zip(&inside[1]).all(|(a, b)| *a == -b) => {
            let v = inside.into_iter().max().expect("two");
            BruteShape::Line(v)
        }
        _ => BruteShape::Higher(rank(&inside)),
    }
}

/// `count` non-zero normals drawn from `{-1, 0, 1}^m`.
pub fn random_normals(rng: &mut impl Rng, m: usize, count: usize) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| loop {
            let v: Vec<i64> = (0..m).map(|_| rng.gen_range(-1..=1)).collect();
            if v.iter().any(|&c| c != 0) {
                break v;
            }
        })
        .collect()
}

pub fn random_direction(rng: &mut impl Rng, rank: usize) -> Direction {
    loop {
        let v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
        if let Ok(d) = Direction::new(v) {
            return d;
        }
    }
}

pub fn random_part(rng: &mut impl Rng, rank: usize) -> Part {
    match rng.gen_range(0..6) {
        0 => Part::Empty,
        1 => Part::Full,
        2 | 3 => Part::points((0..rng.gen_range(1..=2)).map(|_| random_direction(rng, rank))),
        4 => Part::Cofinite([random_direction(rng, rank)].into()),
        _ => Part::Cone((0..rng.gen_range(1..=2)).map(|_| random_direction(rng, rank)).collect()),
    }
}

/// A set on one or two factors of rank at most three, with up to two atoms.
pub fn random_sphere_set(rng: &mut impl Rng) -> SphereSet {
    let ranks: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=3)).collect();
    let atoms = (0..rng.gen_range(0..=2))
        .map(|_| JoinAtom::new(ranks.iter().map(|&r| random_part(rng, r)).collect()))
        .collect();
    SphereSet::new(Decomposition::new(ranks).expect("non-empty ranks"), atoms).expect("random parts are well formed")
}

pub const PRODUCT_POOL: [&str; 16] = [
    "Z", "Z^2", "F(2)", "F(3)", "BS(1,2)", "BS(1,3)", "Klein", "B(3)", "B(4)", "T(2)", "L(2)", "Zmod(3)", "Zmod(2) * Zmod(2)",
    "BS(1,2) * Zmod(3)", "Thompson", "Zmod(6)",
];

/// Direct product of one to four pool groups.
pub fn random_product(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(1..=4);
    let factors: Vec<String> = (0..n)
        .map(|_| {
            let f = PRODUCT_POOL.choose(rng).expect("non-empty");
            if f.contains('*') {
                format!("({f})")
            } else {
                f.to_string()
            }
        })
        .collect();
    factors.join(" x ")
}
