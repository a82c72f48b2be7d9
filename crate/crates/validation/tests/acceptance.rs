//! Acceptance suite: one PASS/FAIL line per criterion with its pinned time
//! budget. Exits non-zero when any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    brute_cone, det, fixed_conjugacy_classes, identity_minus, random_normals, random_product, random_sphere_set,
    random_unimodular, twisted_classes_mod, BruteShape,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistinv::finite::central_extension_family;
use twistinv::omega::check_finite12;
use twistinv::probe::{compass_directions, probe_direction_scan, Evidence};
use twistinv::rinf::Rule;
use twistinv::{
    cone::cone_rays, decide, fixed_subgroup_trivial, omega_from_sigma, parse_group_expr, reidemeister_number,
    smith_normal_form, AtomKind, Cardinality, Catalog, Conclusion, ConeShape, Decomposition, Direction,
    FGAbelianAutomorphism, GroupAtom, GroupExpr, IntMatrix, JoinAtom, Part, ProbeMode, RationalCone,
    ReidemeisterNumber, SphereSet,
};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g(text: &str) -> GroupExpr {
    parse_group_expr(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn d(v: &[i64]) -> Direction {
    Direction::new(v.to_vec()).expect("non-zero")
}

fn set(ranks: &[usize], atoms: Vec<Vec<Part>>) -> SphereSet {
    SphereSet::new(Decomposition::new(ranks.to_vec()).expect("ranks"), atoms.into_iter().map(JoinAtom::new).collect())
        .expect("well formed")
}

fn torsion_free(rows: &[Vec<i64>]) -> FGAbelianAutomorphism {
    FGAbelianAutomorphism::torsion_free(IntMatrix::from_i64_rows(rows).expect("rectangular")).expect("unimodular")
}

fn reidemeister_basics() -> Outcome {
    let neg = reidemeister_number(&torsion_free(&[vec![-1]]));
    let id = reidemeister_number(&torsion_free(&[vec![1]]));
    ensure(neg == ReidemeisterNumber::finite(2), || format!("R(-1) = {neg}"))?;
    ensure(id == ReidemeisterNumber::Infinite, || format!("R(+1) = {id}"))?;
    Ok("R(-1 on Z) = 2, R(+1 on Z) = infinity".into())
}

/// Enumeration is skipped when `N^k` exceeds this.
const MAX_ENUMERATION: u64 = 200_000;

fn abelian_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let (mut finite, mut enumerated) = (0, 0);
    let total = 1200;
    for _ in 0..total {
        let k = rng.gen_range(1..=4);
        let steps = rng.gen_range(0..=3 * k);
        let rows = random_unimodular(&mut rng, k, steps, 6);
        let phi = torsion_free(&rows);
        let r = reidemeister_number(&phi);
        let delta = det(&identity_minus(&rows));
        ensure(fixed_subgroup_trivial(&phi) == r.is_finite(), || format!("{rows:?}: Fix trivial disagrees with R = {r}"))?;
        ensure((delta != 0) == r.is_finite(), || format!("{rows:?}: det(I - M) = {delta}, R = {r}"))?;
        let ReidemeisterNumber::Finite(value) = &r else { continue };
        finite += 1;
        ensure(*value == BigInt::from(delta.abs()), || format!("{rows:?}: R = {value}, |det(I - M)| = {}", delta.abs()))?;
        let snf = smith_normal_form(&IntMatrix::from_i64_rows(&identity_minus(&rows)).expect("rectangular"));
        let product: BigInt = snf.diagonal().iter().product();
        ensure(product == *value, || format!("{rows:?}: SNF product {product}"))?;
        let n = delta.unsigned_abs() as u64;
        if n.checked_pow(k as u32).is_some_and(|size| size <= MAX_ENUMERATION) {
            enumerated += 1;
            let count = twisted_classes_mod(&rows, &vec![n; k]);
            ensure(BigInt::from(count) == *value, || format!("{rows:?}: {count} orbits on (Z/{n})^{k}, R = {value}"))?;
        }
    }
    Ok(format!("{total} matrices, {finite} with finite R, {enumerated} checked by orbit enumeration"))
}

fn central_extension_product() -> Outcome {
    let family = central_extension_family();
    ensure(family.len() >= 20, || format!("only {} extensions", family.len()))?;
    let mut violations = Vec::new();
    for (name, ext) in &family {
        let report = ext.verify().map_err(|e| format!("{name}: {e}"))?;
        let oracle = (
            fixed_conjugacy_classes(&ext.a, &ext.phi_a),
            fixed_conjugacy_classes(&ext.b, &ext.phi_b),
            fixed_conjugacy_classes(&ext.c, &ext.phi_c),
        );
        ensure(oracle == (report.r_sub, report.r_total, report.r_quot), || format!("{name}: oracle {oracle:?}, engine {report:?}"))?;
        if report.r_total != report.r_sub * report.r_quot {
            violations.push(format!("{name}: R = {} but R' R̄ = {} * {}", report.r_total, report.r_sub, report.r_quot));
        }
    }
    ensure(violations.is_empty(), || {
        format!("{} of {} extensions violate the product formula, e.g. {}", violations.len(), family.len(), violations[0])
    })?;
    Ok(format!("{} extensions", family.len()))
}

fn omega_catalog() -> Outcome {
    let catalog = Catalog::builtin();
    let plus = || Part::points([d(&[1])]);
    let minus = || Part::points([d(&[-1])]);
    let both = || Part::points([d(&[1]), d(&[-1])]);
    let mut checked = 0;
    let mut check = |what: String, got: Option<SphereSet>, want: SphereSet| {
        checked += 1;
        ensure(got.as_ref() == Some(&want), || format!("{what}: got {got:?}, expected {want}"))
    };
    for n in 2..=4usize {
        check(format!("Ω¹(BS(1,{n}))"), catalog.omega(&g(&format!("BS(1,{n})")), 1).map(|s| s.value), set(&[1], vec![vec![plus()]]))?;
        let e = g(&format!("BS(1,2) x F({n})"));
        check(format!("Ω¹(BS(1,2) x F({n}))"), catalog.omega(&e, 1).map(|s| s.value), set(&[1, n], vec![vec![plus(), Part::Empty]]))?;
        check(
            format!("Σ¹ᶜ(BS(1,2) x F({n}))"),
            catalog.sigma1_complement(&e).map(|s| s.value),
            set(&[1, n], vec![vec![minus(), Part::Empty], vec![Part::Empty, Part::Full]]),
        )?;
        let e = g(&format!("F({n}) x Z"));
        check(format!("Ω¹(F({n}) x Z)"), catalog.omega(&e, 1).map(|s| s.value), set(&[n, 1], vec![vec![Part::Empty, both()]]))?;
        check(
            format!("Σ¹ᶜ(F({n}) x Z)"),
            catalog.sigma1_complement(&e).map(|s| s.value),
            set(&[n, 1], vec![vec![Part::Full, Part::Empty]]),
        )?;
    }
    // the braid group on two strands is Z
    for name in ["Z", "B(3)", "B(4)", "Klein"] {
        check(format!("Ω¹({name})"), catalog.omega(&g(name), 1).map(|s| s.value), set(&[1], vec![vec![both()]]))?;
        check(format!("Σ¹ᶜ({name})"), catalog.sigma1_complement(&g(name)).map(|s| s.value), set(&[1], vec![]))?;
    }
    Ok(format!("{checked} exact set equalities"))
}

fn verdicts() -> Outcome {
    let catalog = Catalog::builtin();
    let mut cases: Vec<(String, Conclusion, Rule)> = Vec::new();
    for n in 2..=5 {
        cases.push((format!("BS(1,{n})"), Conclusion::RInfinity, Rule::ThmMain1));
        cases.push((format!("BS(1,2) x F({n})"), Conclusion::RInfinity, Rule::ThmMain1));
        cases.push((format!("BS(1,{n}) * Zmod(3) * Zmod(4)"), Conclusion::RInfinity, Rule::ThmFreeProd2));
        cases.push((format!("F({n}) x Z"), Conclusion::IndexTwoSubgroupAllRInf, Rule::ThmMain2));
    }
    cases.push(("Klein * Z * Zmod(2)".into(), Conclusion::RInfinity, Rule::ThmFreeProd3));
    cases.push(("Zmod(2) * Zmod(2)".into(), Conclusion::RInfinity, Rule::ThmFreeProd1));
    for (text, conclusion, rule) in &cases {
        let v = decide(&catalog, &g(text));
        let last = v.final_step().map(|s| s.rule);
        ensure(v.conclusion == *conclusion, || format!("{text}: {}", v.conclusion))?;
        ensure(last == Some(*rule), || format!("{text}: final rule {last:?}, expected {rule:?}"))?;
        v.replay(&catalog).map_err(|e| format!("{text}: replay failed at step {}: {}", e.step, e.message))?;
    }
    let free3 = decide(&catalog, &g("Klein * Z * Zmod(2)"));
    ensure(free3.rules().contains(&Rule::LemRFacts1), || "Klein * Z * Zmod(2) does not split off the torsion".into())?;
    Ok(format!("{} verdicts with expected rules, all replayed", cases.len()))
}

fn omega_table() -> Outcome {
    let catalog = Catalog::builtin();
    // (group, #Ω¹ with None for infinite)
    let rows: [(&str, Option<usize>); 16] = [
        ("F(2)", Some(0)),
        ("F(3)", Some(0)),
        ("L(2)", Some(0)),
        ("L(3)", Some(0)),
        ("L(4)", Some(0)),
        ("Zmod(2) * Zmod(3)", Some(0)),
        ("BS(1,2)", Some(1)),
        ("BS(1,3)", Some(1)),
        ("F(2) x Z", Some(2)),
        ("F(3) x Z", Some(2)),
        ("B(3)", Some(2)),
        ("Klein", Some(2)),
        ("T(2)", None),
        ("T(3)", None),
        ("Klein x Z", None),
        ("Klein x Z^2", None),
    ];
    for (text, want) in rows {
        let grp = g(text);
        let count = catalog.omega(&grp, 1).ok_or_else(|| format!("{text}: Ω¹ unknown"))?.value.cardinality().count();
        ensure(count == want, || format!("{text}: #Ω¹ = {count:?}, expected {want:?}"))?;
        let v = decide(&catalog, &grp);
        let rule = v.final_step().map(|s| s.rule);
        let established = v.conclusion == Conclusion::RInfinity || catalog.rinf_known(&grp).is_some();
        ensure(established, || format!("{text}: R∞ not established ({})", v.conclusion))?;
        let source_ok = match want {
            Some(1) => rule == Some(Rule::ThmMain1),
            Some(2) => v.conclusion != Conclusion::Unknown,
            _ => !matches!(rule, Some(Rule::ThmMain1 | Rule::ThmMain2)),
        };
        ensure(source_ok, || format!("{text}: R∞ source {rule:?} does not fit #Ω¹ = {want:?}"))?;
    }
    Ok("16 rows".into())
}

fn finite_one_or_two(s: &SphereSet) -> Result<(), String> {
    match s.cardinality() {
        Cardinality::Finite(p) if p.len() == 1 => Ok(()),
        Cardinality::Finite(p) if p.len() == 2 && p[0].coords().iter().zip(p[1].coords()).all(|(a, b)| *a == -b) => Ok(()),
        Cardinality::Finite(p) => Err(format!("{s}: {} points {p:?}", p.len())),
        _ => Ok(()),
    }
}

fn finite12() -> Outcome {
    let catalog = Catalog::builtin();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let (mut instances, mut finite_nonempty, mut expressions) = (0usize, 0usize, 0usize);
    let mut pool: Vec<SphereSet> = Vec::new();
    while instances < 12_000 {
        let text = random_product(&mut rng);
        expressions += 1;
        for level in 1..=3 {
            let Some(o) = catalog.omega(&g(&text), level) else { continue };
            instances += 1;
            finite_one_or_two(&o.value).map_err(|e| format!("{text} level {level}: {e}"))?;
            ensure(check_finite12(&o.value).ok, || format!("{text}: engine gate rejects {}", o.value))?;
            finite_nonempty += usize::from(o.value.cardinality().is_finite_nonempty());
            if pool.len() < 64 && o.value.ambient().factors() <= 2 {
                pool.push(o.value);
            }
        }
    }
    for a in &pool {
        for b in &pool {
            let joined = a.join(b);
            instances += 1;
            finite_one_or_two(&joined)?;
        }
    }
    Ok(format!("{instances} sets from {expressions} expressions and joins, {finite_nonempty} finite non-empty"))
}

fn cone_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let total = 300;
    let mut seen = std::collections::BTreeMap::<&str, usize>::new();
    for _ in 0..total {
        let m = rng.gen_range(1..=3);
        let count = rng.gen_range(0..=5);
        let normals = random_normals(&mut rng, m, count);
        let brute = brute_cone(m, &normals, 5);
        let dirs: Vec<Direction> = normals.iter().map(|v| d(v)).collect();
        let shape = cone_rays(&RationalCone::new(m, dirs.iter().cloned()).expect("dims")).map_err(|e| e.to_string())?;
        let sigma = SphereSet::from_part(m, Part::Cofinite(dirs.into_iter().collect())).expect("valid");
        let omega = omega_from_sigma(&sigma, m).map_err(|e| format!("{normals:?}: {e}"))?;
        let card = omega.cardinality();
        let ok = match &brute {
            BruteShape::Trivial => shape == ConeShape::TrivialCone && card == Cardinality::Zero,
            BruteShape::Ray(v) => shape == ConeShape::SingleRay(d(v)) && card == Cardinality::Finite(vec![d(v)]),
            BruteShape::Line(v) => {
                let mut pts = vec![d(v), d(v).antipode()];
                pts.sort();
                matches!(&shape, ConeShape::Line(l) if *l == d(v) || *l == d(v).antipode()) && card == Cardinality::Finite(pts)
            }
            BruteShape::Higher(k) => shape == ConeShape::HigherDimensional(*k) && card == Cardinality::Infinite,
        };
        ensure(ok, || format!("m = {m}, normals {normals:?}: brute {brute:?}, engine {shape:?} / {card}"))?;
        let key = match brute {
            BruteShape::Trivial => "trivial",
            BruteShape::Ray(_) => "ray",
            BruteShape::Line(_) => "line",
            BruteShape::Higher(_) => "higher",
        };
        *seen.entry(key).or_default() += 1;
    }
    for key in ["trivial", "ray", "line"] {
        ensure(seen.get(key).copied().unwrap_or(0) > 0, || format!("no {key} cases drawn: {seen:?}"))?;
    }
    Ok(format!("{total} obstruction sets, {seen:?}"))
}

fn probe_consistency() -> Outcome {
    let catalog = Catalog::builtin();
    let mut directions = 0;
    for kind in [AtomKind::FreeAbelian(2), AtomKind::Free(2), AtomKind::BaumslagSolitar(2), AtomKind::KleinBottle] {
        let atom = GroupAtom::new(kind).expect("valid");
        for radius in [6, 8] {
            for mode in [ProbeMode::HalfSpace, ProbeMode::TruncatedCone] {
                let rows = probe_direction_scan(&catalog, &atom, &compass_directions(atom.hom_rank()), radius, mode)
                    .map_err(|e| format!("{atom}: {e}"))?;
                for row in rows {
                    directions += 1;
                    let want = row.catalog_member.ok_or_else(|| format!("{atom}: no catalog data"))?;
                    let got = match row.evidence {
                        Evidence::SupportsMembership => true,
                        Evidence::SupportsNonMembership => false,
                        Evidence::Inconclusive => return Err(format!("{atom} r = {radius} {mode} {}: inconclusive", row.direction)),
                    };
                    ensure(got == want && !row.warn, || format!("{atom} r = {radius} {mode} {}: {:?} vs {want}", row.direction, row.evidence))?;
                }
            }
        }
    }
    Ok(format!("{directions} (atom, radius, mode, direction) cases, zero warnings"))
}

fn join_laws() -> Outcome {
    let z = SphereSet::full(Decomposition::single(1));
    let zz = z.join(&z);
    ensure(zz.is_full() && zz == SphereSet::full(Decomposition::new(vec![1, 1]).expect("ranks")), || format!("Ω¹(Z) ⊛ Ω¹(Z) = {zz}"))?;
    ensure(zz.cardinality() == Cardinality::Infinite, || "S¹ is not infinite".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let total = 10_000;
    for _ in 0..total {
        let (a, b, c) = (random_sphere_set(&mut rng), random_sphere_set(&mut rng), random_sphere_set(&mut rng));
        ensure(a.join(&b).join(&c) == a.join(&b.join(&c)), || format!("associativity: {a} / {b} / {c}"))?;
        let (fa, fb) = (a.ambient().factors(), b.ambient().factors());
        let perm: Vec<usize> = (fb..fb + fa).chain(0..fb).collect();
        ensure(a.join(&b) == b.join(&a).permute_factors(&perm), || format!("commutativity: {a} / {b}"))?;
        let e = SphereSet::empty(c.ambient().clone());
        let none = Decomposition::concat_all([]);
        ensure(a.join(&e) == a.embed(&none, e.ambient()), || format!("right identity: {a}"))?;
        ensure(e.join(&a) == a.embed(e.ambient(), &none), || format!("left identity: {a}"))?;
        let want = match (a.cardinality(), b.cardinality()) {
            (Cardinality::Zero, x) | (x, Cardinality::Zero) => x.count(),
            _ => None,
        };
        ensure(a.join(&b).cardinality().count() == want, || format!("cardinality: {a} / {b}"))?;
    }
    Ok(format!("{total} random triples"))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "Reidemeister basics", budget: Duration::from_millis(1), run: reidemeister_basics },
    Criterion { id: 2, name: "abelian equivalence", budget: Duration::from_secs(10), run: abelian_equivalence },
    Criterion { id: 3, name: "central extension product", budget: Duration::from_secs(5), run: central_extension_product },
    Criterion { id: 4, name: "Ω catalog reproduction", budget: Duration::from_secs(1), run: omega_catalog },
    Criterion { id: 5, name: "verdict reproduction", budget: Duration::from_secs(1), run: verdicts },
    Criterion { id: 6, name: "#Ω¹ table", budget: Duration::from_secs(1), run: omega_table },
    Criterion { id: 7, name: "finite Ω has one or two antipodal points", budget: Duration::from_secs(30), run: finite12 },
    Criterion { id: 8, name: "cone engine cross-check", budget: Duration::from_secs(30), run: cone_cross_check },
    Criterion { id: 9, name: "probe consistency", budget: Duration::from_secs(60), run: probe_consistency },
    Criterion { id: 10, name: "join algebra laws", budget: Duration::from_secs(30), run: join_laws },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= c.budget {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:?}, budget {:?}; {detail}", c.budget))
            }
        });
        let (status, detail) = match outcome {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failed += 1;
                ("FAIL", detail)
            }
        };
        println!("{status} criterion {:>2} {} [{elapsed:.2?} / {:?}]: {detail}", c.id, c.name, c.budget);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
