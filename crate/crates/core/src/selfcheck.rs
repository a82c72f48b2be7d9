//! Golden examples and light versions of the acceptance criteria.
//!
//! Every check recomputes its value from scratch and compares with a frozen
//! expectation. [`run`] never panics on a mismatch; it records it.

use num_bigint::BigInt;
use serde::Serialize;

use crate::catalog::Catalog;
use crate::direction::Direction;
use crate::finite::{brute_force_twisted_classes, central_extension_family, FiniteGroupTable};
use crate::group::{parse_group_expr, AtomKind, GroupAtom, GroupExpr};
use crate::matrix::Matrix;
use crate::omega::{check_finite12, omega_from_sigma};
use crate::probe::{compass_directions, probe_direction_scan, Evidence, ProbeMode};
use crate::reidemeister::{fixed_subgroup_trivial, reidemeister_number, FGAbelianAutomorphism, ReidemeisterNumber};
use crate::rinf::{decide, Conclusion, Rule};
use crate::snf::smith_normal_form;
use crate::sphere::{Cardinality, Decomposition, JoinAtom, Part, SphereSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check { id: id.into(), passed, detail: detail.into() });
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, id: impl Into<String>, got: T, want: T) {
        let passed = got == want;
        self.check(id, passed, format!("got {got:?}, expected {want:?}"));
    }
}

fn g(text: &str) -> GroupExpr {
    parse_group_expr(text).expect("golden expressions parse")
}

fn d(v: &[i64]) -> Direction {
    Direction::new(v.to_vec()).expect("golden directions are non-zero")
}

fn int_matrix(rows: &[Vec<i64>]) -> Matrix<BigInt> {
    Matrix::from_i64_rows(rows).expect("golden matrices are rectangular")
}

fn set(ranks: &[usize], atoms: Vec<Vec<Part>>) -> SphereSet {
    let ambient = Decomposition::new(ranks.to_vec()).expect("golden ranks");
    SphereSet::new(ambient, atoms.into_iter().map(JoinAtom::new).collect()).expect("golden sets")
}

/// Runs every check.
pub fn run() -> Vec<Check> {
    let mut c = Checks::default();
    let catalog = Catalog::builtin();
    reidemeister_checks(&mut c);
    finite_checks(&mut c);
    invariant_checks(&mut c, &catalog);
    verdict_checks(&mut c, &catalog);
    table_checks(&mut c, &catalog);
    finite12_checks(&mut c, &catalog);
    cone_checks(&mut c);
    probe_checks(&mut c, &catalog);
    join_checks(&mut c);
    c.0
}

fn reidemeister_checks(c: &mut Checks) {
    let r = |rows: &[Vec<i64>]| reidemeister_number(&FGAbelianAutomorphism::torsion_free(int_matrix(rows)).expect("unimodular"));
    c.eq("criterion-1/R(-1 on Z)", r(&[vec![-1]]), ReidemeisterNumber::finite(2));
    c.eq("criterion-1/R(+1 on Z)", r(&[vec![1]]), ReidemeisterNumber::Infinite);
    c.eq("golden/R([[2,1],[1,1]])", r(&[vec![2, 1], vec![1, 1]]), ReidemeisterNumber::finite(1));
    let snf = smith_normal_form(&int_matrix(&[vec![2, 0], vec![0, 3]]));
    c.eq("golden/snf(diag(2,3))", snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);

    // fixed list: Fix trivial iff R finite, and R agrees with orbit counting on (Z/N)^k
    let matrices: [&[Vec<i64>]; 6] = [
        &[vec![-1]],
        &[vec![2, 1], vec![1, 1]],
        &[vec![0, 1], vec![1, 0]],
        &[vec![0, -1], vec![1, 0]],
        &[vec![1, 1], vec![0, 1]],
        &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 1]],
    ];
    for rows in matrices {
        let phi = FGAbelianAutomorphism::torsion_free(int_matrix(rows)).expect("unimodular");
        let value = reidemeister_number(&phi);
        let id = format!("criterion-2/{rows:?}");
        if fixed_subgroup_trivial(&phi) != value.is_finite() {
            c.check(id, false, format!("Fix trivial = {}, R = {value}", fixed_subgroup_trivial(&phi)));
            continue;
        }
        let ReidemeisterNumber::Finite(n) = &value else {
            c.check(id, true, "R = infinity and Fix is non-trivial");
            continue;
        };
        let n = usize::try_from(n).expect("small");
        let k = rows.len();
        if n < 2 || n.pow(k as u32) > crate::finite::MAX_TABLE_ORDER {
            c.check(id, n == 1, format!("R = {n}, quotient too large or trivial"));
            continue;
        }
        let count = orbit_count_mod(rows, n);
        c.check(id, count == n, format!("R = {n}, orbits on (Z/{n})^{k} = {count}"));
    }
}

/// Twisted classes of `x ↦ Mx` on `(Z/N)^k`, by orbit enumeration.
fn orbit_count_mod(rows: &[Vec<i64>], n: usize) -> usize {
    let k = rows.len();
    let z = FiniteGroupTable::cyclic(n);
    let table = (1..k).fold(z.clone(), |acc, _| FiniteGroupTable::direct_product(&acc, &z));
    let digits = |mut x: usize| {
        let mut v = vec![0i64; k];
        for slot in v.iter_mut().rev() {
            *slot = (x % n) as i64;
            x /= n;
        }
        v
    };
    let phi: Vec<usize> = (0..table.order())
        .map(|x| {
            let v = digits(x);
            rows.iter().fold(0, |acc, row| {
                let y: i64 = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                acc * n + y.rem_euclid(n as i64) as usize
            })
        })
        .collect();
    brute_force_twisted_classes(&table, &phi).expect("linear maps of (Z/N)^k are automorphisms here").count
}

fn finite_checks(c: &mut Checks) {
    let z4 = FiniteGroupTable::cyclic(4);
    let neg: Vec<usize> = (0..4).map(|x| (4 - x) % 4).collect();
    c.eq("golden/Z4 negation classes", brute_force_twisted_classes(&z4, &neg).map(|t| t.count), Ok(2));
    let z5 = FiniteGroupTable::cyclic(5);
    let dbl: Vec<usize> = (0..5).map(|x| 2 * x % 5).collect();
    c.eq("golden/Z5 doubling classes", brute_force_twisted_classes(&z5, &dbl).map(|t| t.count), Ok(1));
    let q8 = FiniteGroupTable::quaternion();
    let id: Vec<usize> = (0..8).collect();
    c.eq("golden/Q8 identity classes", brute_force_twisted_classes(&q8, &id).map(|t| t.count), Ok(5));

    let family = central_extension_family();
    let failures: Vec<String> = family
        .iter()
        .filter_map(|(name, ext)| {
            let r = ext.verify().ok()?;
            (!r.product_holds).then(|| format!("{name}: {} != {} * {}", r.r_total, r.r_sub, r.r_quot))
        })
        .collect();
    c.check(
        "criterion-3/central extension product",
        failures.is_empty(),
        format!("{} of {} extensions violate R(φ) = R(φ')R(φ̄); first: {}", failures.len(), family.len(), failures.first().map_or("none", String::as_str)),
    );
}

fn invariant_checks(c: &mut Checks, catalog: &Catalog) {
    let plus = || Part::points([d(&[1])]);
    let minus = || Part::points([d(&[-1])]);
    for n in 2..=4u32 {
        let bs = g(&format!("BS(1,{n})"));
        c.eq(format!("criterion-4/Ω¹(BS(1,{n}))"), catalog.omega(&bs, 1).map(|s| s.value), Some(set(&[1], vec![vec![plus()]])));
        let e41 = g(&format!("BS(1,2) x F({n})"));
        let r = n as usize;
        c.eq(
            format!("criterion-4/Ω¹(BS(1,2) x F({n}))"),
            catalog.omega(&e41, 1).map(|s| s.value),
            Some(set(&[1, r], vec![vec![plus(), Part::Empty]])),
        );
        c.eq(
            format!("criterion-4/Σ¹ᶜ(BS(1,2) x F({n}))"),
            catalog.sigma1_complement(&e41).map(|s| s.value),
            Some(set(&[1, r], vec![vec![minus(), Part::Empty], vec![Part::Empty, Part::Full]])),
        );
        let e42 = g(&format!("F({n}) x Z"));
        c.eq(
            format!("criterion-4/Ω¹(F({n}) x Z)"),
            catalog.omega(&e42, 1).map(|s| s.value),
            Some(set(&[r, 1], vec![vec![Part::Empty, Part::Full]])),
        );
        c.eq(
            format!("criterion-4/Σ¹ᶜ(F({n}) x Z)"),
            catalog.sigma1_complement(&e42).map(|s| s.value),
            Some(set(&[r, 1], vec![vec![Part::Full, Part::Empty]])),
        );
    }
    for name in ["B(3)", "B(4)", "Klein"] {
        let grp = g(name);
        c.eq(format!("criterion-4/Ω¹({name})"), catalog.omega(&grp, 1).map(|s| s.value), Some(SphereSet::full(Decomposition::single(1))));
        c.eq(
            format!("criterion-4/Σ¹ᶜ({name})"),
            catalog.sigma1_complement(&grp).map(|s| s.value),
            Some(SphereSet::empty(Decomposition::single(1))),
        );
    }
}

fn verdict_checks(c: &mut Checks, catalog: &Catalog) {
    let cases: Vec<(String, Conclusion, Rule)> = (2..=4)
        .flat_map(|n| {
            [
                (format!("BS(1,{n})"), Conclusion::RInfinity, Rule::ThmMain1),
                (format!("BS(1,2) x F({n})"), Conclusion::RInfinity, Rule::ThmMain1),
                (format!("BS(1,{n}) * Zmod(3) * Zmod(4)"), Conclusion::RInfinity, Rule::ThmFreeProd2),
                (format!("F({n}) x Z"), Conclusion::IndexTwoSubgroupAllRInf, Rule::ThmMain2),
            ]
        })
        .chain([
            ("Klein * Z * Zmod(2)".to_string(), Conclusion::RInfinity, Rule::ThmFreeProd3),
            ("Zmod(2) * Zmod(2)".to_string(), Conclusion::RInfinity, Rule::ThmFreeProd1),
        ])
        .collect();
    for (text, conclusion, rule) in cases {
        let v = decide(catalog, &g(&text));
        let last = v.final_step().map(|s| s.rule);
        let replay = v.replay(catalog);
        c.check(
            format!("criterion-5/{text}"),
            v.conclusion == conclusion && last == Some(rule) && replay.is_ok(),
            format!("{} via {last:?}, replay {replay:?}", v.conclusion),
        );
    }
}

/// One row of the `#Ω¹` / `R∞` table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub group: String,
    /// `#Ω¹`, `None` when infinite.
    pub omega_points: Option<usize>,
    pub conclusion: Conclusion,
    pub rule: Option<Rule>,
    /// Stored `R∞` fact, premise or reference grade.
    pub cited: Option<&'static str>,
}

impl TableRow {
    pub fn has_rinf(&self) -> bool {
        self.conclusion == Conclusion::RInfinity || self.cited.is_some()
    }
}

pub const TABLE_GROUPS: [&str; 16] = [
    "F(2)", "F(3)", "L(2)", "L(3)", "L(4)", "Zmod(2) * Zmod(3)", "BS(1,2)", "BS(1,3)", "F(2) x Z", "F(3) x Z", "B(3)",
    "Klein", "T(2)", "T(3)", "Klein x Z", "Klein x Z^2",
];

pub fn omega_table_row(catalog: &Catalog, text: &str) -> TableRow {
    let grp = g(text);
    let verdict = decide(catalog, &grp);
    TableRow {
        group: text.to_string(),
        omega_points: catalog.omega(&grp, 1).and_then(|s| s.value.cardinality().count()),
        rule: verdict.final_step().map(|s| s.rule),
        conclusion: verdict.conclusion,
        cited: catalog.rinf_known(&grp).map(|f| f.id),
    }
}

/// Expected `#Ω¹` for the table groups, `None` for infinite.
pub fn expected_table_count(text: &str) -> Option<usize> {
    match text {
        t if t.starts_with("BS") => Some(1),
        t if t.starts_with("F(") && t.ends_with("x Z") => Some(2),
        "B(3)" | "Klein" => Some(2),
        t if t.starts_with("T(") || t.starts_with("Klein x") => None,
        _ => Some(0),
    }
}

/// Whether the row's `R∞` source fits its `#Ω¹` class.
pub fn table_source_ok(row: &TableRow) -> bool {
    let main = matches!(row.rule, Some(Rule::ThmMain1 | Rule::ThmMain2));
    row.has_rinf()
        && match row.omega_points {
            Some(1) => row.rule == Some(Rule::ThmMain1),
            Some(2) => row.conclusion != Conclusion::Unknown,
            _ => !main,
        }
}

fn table_checks(c: &mut Checks, catalog: &Catalog) {
    for text in TABLE_GROUPS {
        let row = omega_table_row(catalog, text);
        let want = expected_table_count(text);
        c.check(
            format!("criterion-6/{text}"),
            row.omega_points == want && table_source_ok(&row),
            format!("#Ω¹ = {:?}, {} via {:?}, cited {:?}", row.omega_points, row.conclusion, row.rule, row.cited),
        );
    }
}

fn finite12_checks(c: &mut Checks, catalog: &Catalog) {
    let pool = ["Z", "Z^2", "F(2)", "BS(1,2)", "Klein", "B(3)", "B(4)", "T(2)", "L(2)", "Zmod(3)", "BS(1,2) * Zmod(2)"];
    let mut seen = 0usize;
    let mut bad = Vec::new();
    let mut visit = |text: String| {
        for n in 1..=3 {
            if let Some(o) = catalog.omega(&g(&text), n) {
                seen += 1;
                let r = check_finite12(&o.value);
                if !r.ok {
                    bad.push(format!("{text} level {n}: {}", r.message));
                }
            }
        }
    };
    for a in pool {
        visit(a.to_string());
        for b in pool {
            visit(format!("{a} x {b}"));
            for c3 in pool.iter().take(5) {
                visit(format!("{a} x {b} x {c3}"));
            }
        }
    }
    c.check("criterion-7/finite Ω has one or two antipodal points", bad.is_empty(), format!("{seen} sets, failures {bad:?}"));
}

fn cone_checks(c: &mut Checks) {
    let cases: [(usize, Vec<Vec<i64>>, Option<usize>); 7] = [
        (2, vec![vec![1, 0], vec![0, 1]], None),
        (2, vec![vec![1, 0], vec![-1, 0]], Some(2)),
        (2, vec![vec![1, 0], vec![0, 1], vec![0, -1]], Some(1)),
        (2, vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], Some(0)),
        (3, vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0]], Some(2)),
        (3, vec![vec![1, 1, 0], vec![-1, 1, 0], vec![0, -1, 1], vec![0, -1, -1]], Some(0)),
        (3, vec![vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1]], Some(1)),
    ];
    for (m, normals, want) in cases {
        let points = normals.iter().map(|v| d(v));
        let sigma = SphereSet::from_part(m, Part::Cofinite(points.collect())).expect("valid");
        let got = omega_from_sigma(&sigma, m).map(|o| o.cardinality().count());
        c.eq(format!("criterion-8/Ω from Σ¹ᶜ = {normals:?}"), got, Ok(want));
    }
}

fn probe_checks(c: &mut Checks, catalog: &Catalog) {
    for kind in [AtomKind::FreeAbelian(2), AtomKind::Free(2), AtomKind::BaumslagSolitar(2), AtomKind::KleinBottle] {
        let atom = GroupAtom::new(kind).expect("valid atom");
        for mode in [ProbeMode::HalfSpace, ProbeMode::TruncatedCone] {
            let id = format!("criterion-9/{atom} {mode}");
            match probe_direction_scan(catalog, &atom, &compass_directions(atom.hom_rank()), 6, mode) {
                Ok(rows) => {
                    let mismatches: Vec<String> = rows
                        .iter()
                        .filter(|r| r.warn || r.catalog_member.is_none() || r.evidence == Evidence::Inconclusive)
                        .map(|r| format!("{} {:?}", r.direction, r.evidence))
                        .collect();
                    c.check(id, mismatches.is_empty(), format!("{} directions, mismatches {mismatches:?}", rows.len()));
                }
                Err(e) => c.check(id, false, e.to_string()),
            }
        }
    }
}

fn join_checks(c: &mut Checks) {
    let s0 = SphereSet::full(Decomposition::single(1));
    let joined = s0.join(&s0);
    c.check("criterion-10/Ω¹(Z) ⊛ Ω¹(Z) is the full circle", joined.is_full() && joined.cardinality() == Cardinality::Infinite, joined.to_string());
    let pool = [
        SphereSet::from_points(1, [d(&[1])]).expect("valid"),
        SphereSet::full(Decomposition::single(1)),
        SphereSet::empty(Decomposition::single(2)),
        SphereSet::from_points(2, [d(&[1, -2])]).expect("valid"),
        SphereSet::from_part(2, Part::Cofinite([d(&[0, 1])].into())).expect("valid"),
    ];
    let mut failures = Vec::new();
    for a in &pool {
        for b in &pool {
            let fa = a.ambient().factors();
            let fb = b.ambient().factors();
            let perm: Vec<usize> = (fb..fb + fa).chain(0..fb).collect();
            if a.join(b) != b.join(a).permute_factors(&perm) {
                failures.push(format!("commutativity {a} / {b}"));
            }
            let expect = match (a.cardinality(), b.cardinality()) {
                (Cardinality::Zero, x) | (x, Cardinality::Zero) => x.count(),
                _ => None,
            };
            if a.join(b).cardinality().count() != expect {
                failures.push(format!("cardinality {a} / {b}"));
            }
            for x in &pool {
                if a.join(b).join(x) != a.join(&b.join(x)) {
                    failures.push(format!("associativity {a} / {b} / {x}"));
                }
            }
        }
        let empty = SphereSet::empty(Decomposition::single(3));
        if a.join(&empty) != a.embed(&Decomposition::concat_all([]), empty.ambient()) {
            failures.push(format!("empty identity {a}"));
        }
    }
    c.check("criterion-10/join laws", failures.is_empty(), format!("failures {failures:?}"));
}
