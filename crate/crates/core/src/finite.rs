//! Finite groups given by multiplication tables, their automorphisms, and
//! brute-force twisted conjugacy.

use std::collections::{BTreeMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

/// Largest order accepted for a multiplication table.
pub const MAX_TABLE_ORDER: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiniteError {
    #[error("group order {0} is outside 1..={MAX_TABLE_ORDER}")]
    Order(usize),
    #[error("row {row} has length {len}, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is not an element index")]
    Entry { row: usize, col: usize, value: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("map has length {found}, expected {expected}")]
    MapLength { found: usize, expected: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map is not a homomorphism: f({0}*{1}) != f({0})*f({1})")]
    NotHomomorphism(usize, usize),
    #[error("subgroup is not normal or not closed")]
    BadSubgroup,
    #[error("automorphism does not preserve the subgroup")]
    SubgroupNotInvariant,
    #[error("extension data invalid: {0}")]
    Extension(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl TryFrom<Vec<Vec<usize>>> for FiniteGroupTable {
    type Error = FiniteError;
    fn try_from(table: Vec<Vec<usize>>) -> Result<Self, FiniteError> {
        FiniteGroupTable::new(table)
    }
}

impl From<FiniteGroupTable> for Vec<Vec<usize>> {
    fn from(g: FiniteGroupTable) -> Self {
        g.table
    }
}

impl FiniteGroupTable {
    /// Validates the group axioms.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, FiniteError> {
        let n = table.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(FiniteError::Order(n));
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(FiniteError::Ragged { row, len: r.len(), expected: n });
            }
            if let Some(col) = r.iter().position(|&v| v >= n) {
                return Err(FiniteError::Entry { row, col, value: r[col] });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(FiniteError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for (x, row) in table.iter().enumerate() {
            let inv = (0..n)
                .find(|&y| row[y] == identity && table[y][x] == identity)
                .ok_or(FiniteError::NoInverse(x))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(FiniteError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { table, identity, inverse })
    }

    fn from_op(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        FiniteGroupTable::new(table).expect("constructed table is a group")
    }

    /// `Z/n` with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        FiniteGroupTable::from_op(n, |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`; element `(f, r)` is `s^f r^r`, indexed `f*n + r`.
    pub fn dihedral(n: usize) -> Self {
        FiniteGroupTable::from_op(2 * n, |a, b| {
            let (fa, ra) = (a / n, a % n);
            let (fb, rb) = (b / n, b % n);
            let r = if fb == 0 { (ra + rb) % n } else { (n - ra % n + rb) % n };
            ((fa + fb) % 2) * n + r
        })
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}` indexed `sign*4 + unit`.
    pub fn quaternion() -> Self {
        // unit products as (sign, unit) for units 1, i, j, k
        const MUL: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        FiniteGroupTable::from_op(8, |a, b| {
            let (s, u) = MUL[a % 4][b % 4];
            ((a / 4 + b / 4 + s) % 2) * 4 + u
        })
    }

    /// Upper unitriangular 3x3 matrices over `Z/p`; `(x, y, z)` indexed `(x*p + y)*p + z`.
    pub fn heisenberg(p: usize) -> Self {
        FiniteGroupTable::from_op(p * p * p, |a, b| {
            let (x1, y1, z1) = (a / (p * p), (a / p) % p, a % p);
            let (x2, y2, z2) = (b / (p * p), (b / p) % p, b % p);
            let x = (x1 + x2) % p;
            let y = (y1 + y2) % p;
            let z = (z1 + z2 + x1 * y2) % p;
            (x * p + y) * p + z
        })
    }

    /// `G x H` with `(g, h)` indexed `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroupTable, h: &FiniteGroupTable) -> Self {
        let m = h.order();
        FiniteGroupTable::from_op(g.order() * m, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// A small generating set chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        while span.len() < self.order() {
            // prefer elements of large order so fewer generators are needed
            let next = (0..self.order())
                .filter(|x| span.binary_search(x).is_err())
                .max_by_key(|&x| (self.closure(&[gens.clone(), vec![x]].concat()).len(), usize::MAX - x))
                .expect("span is a proper subset");
            gens.push(next);
            span = self.closure(&gens);
        }
        gens
    }

    /// Checks that `f` is a homomorphism from `self` into `target`.
    pub fn check_homomorphism(&self, target: &FiniteGroupTable, f: &[usize]) -> Result<(), FiniteError> {
        if f.len() != self.order() {
            return Err(FiniteError::MapLength { found: f.len(), expected: self.order() });
        }
        if f.iter().any(|&v| v >= target.order()) {
            return Err(FiniteError::NotBijective);
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if f[self.mul(a, b)] != target.mul(f[a], f[b]) {
                    return Err(FiniteError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(())
    }

    pub fn check_automorphism(&self, phi: &[usize]) -> Result<(), FiniteError> {
        if phi.len() != self.order() {
            return Err(FiniteError::MapLength { found: phi.len(), expected: self.order() });
        }
        let mut hit = vec![false; self.order()];
        for &v in phi {
            if v >= self.order() || std::mem::replace(&mut hit[v], true) {
                return Err(FiniteError::NotBijective);
            }
        }
        self.check_homomorphism(self, phi)
    }

    /// Extends an assignment on generators to a map on the whole group, if consistent.
    fn extend(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = self.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = self.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        self.check_automorphism(&map).ok().map(|_| map)
    }

    /// Every automorphism, found by trying all generator images of matching order.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..self.order()).filter(|&x| self.element_order(x) == k).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; gens.len()];
        loop {
            let images: Vec<usize> = idx.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
            if let Some(map) = self.extend(&gens, &images) {
                out.push(map);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    out.sort();
                    out.dedup();
                    return out;
                }
                idx[k] += 1;
                if idx[k] < candidates[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// Twisted conjugacy classes `α ~ σ α φ(σ)^{-1}` of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedClasses {
    pub count: usize,
    /// Least element index of each class, ascending.
    pub representatives: Vec<usize>,
    /// Class index of every element, numbered by representative order.
    pub class_of: Vec<usize>,
}

pub fn brute_force_twisted_classes(g: &FiniteGroupTable, phi: &[usize]) -> Result<TwistedClasses, FiniteError> {
    g.check_automorphism(phi)?;
    let n = g.order();
    let mut uf = UnionFind::<usize>::new(n);
    for (sigma, &image) in phi.iter().enumerate() {
        let right = g.inv(image);
        for alpha in 0..n {
            uf.union(alpha, g.mul(g.mul(sigma, alpha), right));
        }
    }
    let mut rep_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        rep_of_root.entry(uf.find(x)).or_insert(x);
    }
    let mut representatives: Vec<usize> = rep_of_root.values().copied().collect();
    representatives.sort_unstable();
    let class_of = (0..n)
        .map(|x| representatives.binary_search(&rep_of_root[&uf.find(x)]).expect("representative present"))
        .collect();
    Ok(TwistedClasses { count: representatives.len(), representatives, class_of })
}

/// A central extension `1 -> A -> B -> C -> 1` with compatible automorphisms.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralExtension {
    pub a: FiniteGroupTable,
    pub b: FiniteGroupTable,
    pub c: FiniteGroupTable,
    pub inclusion: Vec<usize>,
    pub projection: Vec<usize>,
    pub phi_a: Vec<usize>,
    pub phi_b: Vec<usize>,
    pub phi_c: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub r_sub: usize,
    pub r_total: usize,
    pub r_quot: usize,
    pub product_holds: bool,
    /// Every fixed class of the quotient lifts to `b` with `b^{-1} φ(b)` twisted-trivial in `A`.
    pub boundary_trivial: bool,
    pub total_abelian: bool,
}

impl CentralExtension {
    /// Builds the extension of `B` by a central subgroup `A` invariant under `phi_b`.
    pub fn from_central_subgroup(b: &FiniteGroupTable, subgroup: &[usize], phi_b: &[usize]) -> Result<Self, FiniteError> {
        b.check_automorphism(phi_b)?;
        let mut sub = subgroup.to_vec();
        sub.sort_unstable();
        sub.dedup();
        if b.closure(&sub) != sub {
            return Err(FiniteError::BadSubgroup);
        }
        let center = b.center();
        if sub.iter().any(|x| center.binary_search(x).is_err()) {
            return Err(FiniteError::Extension("subgroup is not central".into()));
        }
        if sub.iter().any(|&x| sub.binary_search(&phi_b[x]).is_err()) {
            return Err(FiniteError::SubgroupNotInvariant);
        }
        let local = |x: usize| sub.binary_search(&x).expect("closed subgroup");
        let a = FiniteGroupTable::from_op(sub.len(), |i, j| local(b.mul(sub[i], sub[j])));
        let phi_a = sub.iter().map(|&x| local(phi_b[x])).collect();

        let mut coset_of = vec![usize::MAX; b.order()];
        let mut reps = Vec::new();
        for x in 0..b.order() {
            if coset_of[x] == usize::MAX {
                for &s in &sub {
                    coset_of[b.mul(x, s)] = reps.len();
                }
                reps.push(x);
            }
        }
        let c = FiniteGroupTable::from_op(reps.len(), |i, j| coset_of[b.mul(reps[i], reps[j])]);
        let phi_c = reps.iter().map(|&x| coset_of[phi_b[x]]).collect();
        let ext = CentralExtension {
            a,
            b: b.clone(),
            c,
            inclusion: sub.clone(),
            projection: coset_of,
            phi_a,
            phi_b: phi_b.to_vec(),
            phi_c,
        };
        ext.validate()?;
        Ok(ext)
    }

    /// Exactness, centrality and compatibility of the three automorphisms.
    pub fn validate(&self) -> Result<(), FiniteError> {
        let bad = |m: &str| Err(FiniteError::Extension(m.to_string()));
        self.a.check_homomorphism(&self.b, &self.inclusion)?;
        self.b.check_homomorphism(&self.c, &self.projection)?;
        self.a.check_automorphism(&self.phi_a)?;
        self.b.check_automorphism(&self.phi_b)?;
        self.c.check_automorphism(&self.phi_c)?;
        let mut image = self.inclusion.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != self.a.order() {
            return bad("inclusion is not injective");
        }
        let mut hit = vec![false; self.c.order()];
        self.projection.iter().for_each(|&y| hit[y] = true);
        if hit.contains(&false) {
            return bad("projection is not surjective");
        }
        let kernel: Vec<usize> = (0..self.b.order()).filter(|&x| self.projection[x] == self.c.identity()).collect();
        if kernel != image {
            return bad("image of inclusion differs from kernel of projection");
        }
        let center = self.b.center();
        if image.iter().any(|x| center.binary_search(x).is_err()) {
            return bad("extension is not central");
        }
        for x in 0..self.a.order() {
            if self.phi_b[self.inclusion[x]] != self.inclusion[self.phi_a[x]] {
                return bad("automorphisms do not commute with inclusion");
            }
        }
        for x in 0..self.b.order() {
            if self.projection[self.phi_b[x]] != self.phi_c[self.projection[x]] {
                return bad("automorphisms do not commute with projection");
            }
        }
        Ok(())
    }

    /// Computes all three Reidemeister numbers by orbit enumeration.
    pub fn verify(&self) -> Result<ExtensionReport, FiniteError> {
        self.validate()?;
        let ra = brute_force_twisted_classes(&self.a, &self.phi_a)?;
        let rb = brute_force_twisted_classes(&self.b, &self.phi_b)?;
        let rc = brute_force_twisted_classes(&self.c, &self.phi_c)?;

        let twisted_trivial: Vec<bool> = {
            let mut t = vec![false; self.a.order()];
            for x in 0..self.a.order() {
                t[self.a.mul(x, self.a.inv(self.phi_a[x]))] = true;
            }
            t
        };
        let local: BTreeMap<usize, usize> = self.inclusion.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let boundary_trivial = (0..self.b.order())
            .filter(|&x| self.phi_c[self.projection[x]] == self.projection[x])
            .all(|x| twisted_trivial[local[&self.b.mul(self.b.inv(x), self.phi_b[x])]]);

        Ok(ExtensionReport {
            r_sub: ra.count,
            r_total: rb.count,
            r_quot: rc.count,
            product_holds: rb.count == ra.count * rc.count,
            boundary_trivial,
            total_abelian: self.b.is_abelian(),
        })
    }
}

/// Central extensions of small groups: each `(B, A)` below with every
/// automorphism of `B` that preserves `A`, in a fixed order.
pub fn central_extension_family() -> Vec<(String, CentralExtension)> {
    let z = FiniteGroupTable::cyclic;
    let cases: Vec<(String, FiniteGroupTable, Vec<usize>)> = vec![
        ("Z/4 > Z/2".into(), z(4), vec![0, 2]),
        ("Z/6 > Z/2".into(), z(6), vec![0, 3]),
        ("Z/6 > Z/3".into(), z(6), vec![0, 2, 4]),
        ("Z/8 > Z/2".into(), z(8), vec![0, 4]),
        ("Z/8 > Z/4".into(), z(8), vec![0, 2, 4, 6]),
        ("Z/9 > Z/3".into(), z(9), vec![0, 3, 6]),
        ("Z/2 x Z/2 > Z/2".into(), FiniteGroupTable::direct_product(&z(2), &z(2)), vec![0, 1]),
        ("Z/2 x Z/4 > Z/2".into(), FiniteGroupTable::direct_product(&z(2), &z(4)), vec![0, 2]),
        ("Z/3 x Z/3 > Z/3".into(), FiniteGroupTable::direct_product(&z(3), &z(3)), vec![0, 1, 2]),
        ("Q8 > Z(Q8)".into(), FiniteGroupTable::quaternion(), FiniteGroupTable::quaternion().center()),
        ("D4 > Z(D4)".into(), FiniteGroupTable::dihedral(4), FiniteGroupTable::dihedral(4).center()),
        ("Heis(3) > Z(Heis(3))".into(), FiniteGroupTable::heisenberg(3), FiniteGroupTable::heisenberg(3).center()),
    ];
    let mut out = Vec::new();
    for (name, b, a) in cases {
        for (k, phi) in b.automorphisms().into_iter().enumerate() {
            if a.iter().all(|x| a.contains(&phi[*x])) {
                let ext = CentralExtension::from_central_subgroup(&b, &a, &phi).expect("family members are central extensions");
                out.push((format!("{name} #{k}"), ext));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn negate(n: usize) -> Vec<usize> {
        (0..n).map(|x| (n - x) % n).collect()
    }

    #[test]
    fn standard_tables_are_groups() {
        assert_eq!(FiniteGroupTable::dihedral(4).order(), 8);
        assert!(!FiniteGroupTable::dihedral(3).is_abelian());
        assert!(!FiniteGroupTable::quaternion().is_abelian());
        assert_eq!(FiniteGroupTable::quaternion().center().len(), 2);
        assert_eq!(FiniteGroupTable::heisenberg(3).center().len(), 3);
        let v4 = FiniteGroupTable::direct_product(&FiniteGroupTable::cyclic(2), &FiniteGroupTable::cyclic(2));
        assert!(v4.is_abelian());
    }

    #[test]
    fn axioms_rejected() {
        assert_eq!(FiniteGroupTable::new(vec![]), Err(FiniteError::Order(0)));
        assert!(matches!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]]), Err(FiniteError::NoInverse(1))));
        assert!(matches!(FiniteGroupTable::new(vec![vec![1, 1], vec![1, 1]]), Err(FiniteError::NoIdentity)));
        let nonassoc = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        assert!(matches!(FiniteGroupTable::new(nonassoc), Err(FiniteError::NotAssociative(..)) | Err(FiniteError::NoInverse(_))));
    }

    #[test]
    fn cyclic_four_negation_has_two_classes() {
        // σ·α = α + 2σ, so the orbits are {0, 2} and {1, 3}
        let z4 = FiniteGroupTable::cyclic(4);
        let classes = brute_force_twisted_classes(&z4, &negate(4)).unwrap();
        assert_eq!(classes.count, 2);
        assert_eq!(classes.representatives, vec![0, 1]);
        assert_eq!(classes.class_of, vec![0, 1, 0, 1]);
    }

    #[test]
    fn doubling_on_z5_is_one_class() {
        let z5 = FiniteGroupTable::cyclic(5);
        let phi: Vec<usize> = (0..5).map(|x| 2 * x % 5).collect();
        assert_eq!(brute_force_twisted_classes(&z5, &phi).unwrap().count, 1);
    }

    #[test]
    fn non_automorphism_rejected() {
        let z4 = FiniteGroupTable::cyclic(4);
        assert_eq!(brute_force_twisted_classes(&z4, &[0, 2, 0, 2]).unwrap_err(), FiniteError::NotBijective);
        assert!(matches!(z4.check_automorphism(&[0, 1, 3, 2]), Err(FiniteError::NotHomomorphism(..))));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(FiniteGroupTable::cyclic(8).automorphisms().len(), 4);
        assert_eq!(FiniteGroupTable::quaternion().automorphisms().len(), 24);
        assert_eq!(FiniteGroupTable::dihedral(4).automorphisms().len(), 8);
        let v4 = FiniteGroupTable::direct_product(&FiniteGroupTable::cyclic(2), &FiniteGroupTable::cyclic(2));
        assert_eq!(v4.automorphisms().len(), 6);
    }

    #[test]
    fn extension_of_z4_by_its_center() {
        let z4 = FiniteGroupTable::cyclic(4);
        let id: Vec<usize> = (0..4).collect();
        let ext = CentralExtension::from_central_subgroup(&z4, &[0, 2], &id).unwrap();
        let r = ext.verify().unwrap();
        assert_eq!((r.r_sub, r.r_total, r.r_quot), (2, 4, 2));
        assert!(r.product_holds);

        let ext = CentralExtension::from_central_subgroup(&z4, &[0, 2], &negate(4)).unwrap();
        let r = ext.verify().unwrap();
        assert_eq!((r.r_sub, r.r_total, r.r_quot), (2, 2, 2));
        assert!(!r.product_holds);
        assert!(!r.boundary_trivial);
    }

    #[test]
    fn non_central_subgroup_rejected() {
        let d3 = FiniteGroupTable::dihedral(3);
        let id: Vec<usize> = (0..6).collect();
        let rotations = d3.closure(&[1]);
        assert!(CentralExtension::from_central_subgroup(&d3, &rotations, &id).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let g = FiniteGroupTable::cyclic(3);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, "[[0,1,2],[1,2,0],[2,0,1]]");
        assert_eq!(serde_json::from_str::<FiniteGroupTable>(&json).unwrap(), g);
    }
}
