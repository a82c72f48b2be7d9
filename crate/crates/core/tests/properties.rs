mod common;

use std::sync::OnceLock;

use common::{det, identity_minus, random_product, random_sphere_set, twisted_classes_mod, PRODUCT_POOL};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistinv::omega::check_finite12;
use twistinv::probe::models::{BaumslagSolitarModel, FreeAbelianModel, FreeModel, KleinModel, NormalForm};
use twistinv::probe::{cone_subgraph, halfspace_subgraph};
use twistinv::{
    connectivity_probe, decide, enumerate_ball, omega_from_sigma, parse_group_expr, reidemeister_number,
    smith_normal_form, AtomKind, BallGraph, Cardinality, Catalog, Decomposition, Direction, FGAbelianAutomorphism,
    GroupAtom, IntMatrix, ProbeConfig, ProbeMode, ReidemeisterNumber, Scale, SphereSet,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn balls() -> &'static [BallGraph] {
    static BALLS: OnceLock<Vec<BallGraph>> = OnceLock::new();
    BALLS.get_or_init(|| {
        [AtomKind::FreeAbelian(2), AtomKind::Free(2), AtomKind::BaumslagSolitar(2), AtomKind::KleinBottle]
            .into_iter()
            .map(|k| enumerate_ball(&GroupAtom::new(k).unwrap(), 5).unwrap())
            .collect()
    })
}

fn direction(rank: usize) -> impl Strategy<Value = Direction> {
    prop::collection::vec(-3i64..=3, rank).prop_filter_map("non-zero", |v| Direction::new(v).ok())
}

fn scale() -> impl Strategy<Value = Scale> {
    (0i64..=8, 1i64..=4).prop_map(|(p, q)| Scale::new(p, q))
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}

const ATOMS: [&str; 12] =
    ["Z", "Z^3", "F(2)", "BS(1,2)", "Klein", "B(3)", "T(2)", "Thompson", "L(2)", "Zmod(2)", "Zmod(3)", "Zmod(4)"];

/// Random expression text over the atom pool, nesting direct and free products.
fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop::sample::select(&ATOMS[..]).prop_map(str::to_string);
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(|fs| format!("({})", fs.join(" x "))),
            prop::collection::vec(inner, 2..=3).prop_map(|fs| format!("({})", fs.join(" * "))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn finite_omega_has_one_or_two_antipodal_points(seed in any::<u64>(), level in 1u32..=3) {
        let text = random_product(&mut rng(seed));
        if let Some(o) = Catalog::builtin().omega(&parse_group_expr(&text).unwrap(), level) {
            let report = check_finite12(&o.value);
            prop_assert!(report.ok, "{text}: {}", report.message);
            if let Cardinality::Finite(p) = o.value.cardinality() {
                prop_assert!(p.len() == 1 || (p.len() == 2 && p[0] == p[1].antipode()), "{text}: {p:?}");
            }
        }
    }

    #[test]
    fn join_is_associative_and_commutative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_sphere_set(&mut r), random_sphere_set(&mut r), random_sphere_set(&mut r));
        prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
        let (fa, fb) = (a.ambient().factors(), b.ambient().factors());
        let perm: Vec<usize> = (fb..fb + fa).chain(0..fb).collect();
        prop_assert_eq!(a.join(&b), b.join(&a).permute_factors(&perm));
        let e = SphereSet::empty(c.ambient().clone());
        prop_assert_eq!(a.join(&e).cardinality().count(), a.cardinality().count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn omega_endpoints_are_fixed(m in 1usize..=6) {
        let full = SphereSet::full(Decomposition::single(m));
        let empty = SphereSet::empty(Decomposition::single(m));
        prop_assert_eq!(omega_from_sigma(&full, m).unwrap(), full);
        prop_assert_eq!(omega_from_sigma(&empty, m).unwrap(), empty);
    }

    #[test]
    fn sublevel_sets_nest(which in 0usize..4, plane in direction(2), sign in prop::sample::select(vec![-1i64, 1]), s in scale(), t in scale()) {
        let ball = &balls()[which];
        let gamma = if ball.rank == 1 { Direction::new(vec![sign]).unwrap() } else { plane };
        let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
        let h_lo = halfspace_subgraph(ball, &gamma, lo).unwrap();
        let h_hi = halfspace_subgraph(ball, &gamma, hi).unwrap();
        let c_lo = cone_subgraph(ball, &gamma, lo).unwrap();
        let c_hi = cone_subgraph(ball, &gamma, hi).unwrap();
        prop_assert!(is_subset(&h_hi, &h_lo));
        prop_assert!(is_subset(&c_hi, &c_lo));
        prop_assert!(is_subset(&c_lo, &h_lo));
        prop_assert!(is_subset(&c_hi, &h_hi));
    }

    #[test]
    fn probe_is_deterministic(which in 0usize..4, cone in any::<bool>(), sign in prop::sample::select(vec![-1i64, 1])) {
        let ball = &balls()[which];
        let gamma = Direction::axis(ball.rank, 0, sign < 0);
        let mode = if cone { ProbeMode::TruncatedCone } else { ProbeMode::HalfSpace };
        let config = ProbeConfig::with_defaults(ball.radius, gamma, mode).unwrap();
        let a = connectivity_probe(ball, &config).unwrap();
        let b = connectivity_probe(ball, &config).unwrap();
        prop_assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
        prop_assert_eq!(a.evidence, b.evidence);
    }

    #[test]
    fn heights_add_along_words(letters in prop::collection::vec(prop::sample::select(vec![1i32, -1, 2, -2]), 0..24)) {
        fn check<M: NormalForm>(m: &M, letters: &[i32]) -> Result<(), TestCaseError> {
            let mut g = m.identity();
            let mut expected = vec![0i64; m.rank()];
            for &l in letters {
                let i = l.unsigned_abs() as usize - 1;
                g = m.step(&g, l).unwrap();
                for (e, h) in expected.iter_mut().zip(m.generator_height(i)) {
                    *e += i64::from(l.signum()) * h;
                }
            }
            prop_assert_eq!(m.height(&g), expected);
            Ok(())
        }
        check(&FreeAbelianModel(2), &letters)?;
        check(&FreeModel(2), &letters)?;
        check(&KleinModel, &letters)?;
        check(&BaumslagSolitarModel(2), &letters)?;
        check(&BaumslagSolitarModel(3), &letters)?;
    }

    #[test]
    fn inverse_words_return_to_identity(letters in prop::collection::vec(prop::sample::select(vec![1i32, -1, 2, -2]), 0..24)) {
        fn check<M: NormalForm>(m: &M, letters: &[i32]) -> Result<(), TestCaseError> {
            let g = letters.iter().fold(m.identity(), |g, &l| m.step(&g, l).unwrap());
            let back = letters.iter().rev().fold(g, |g, &l| m.step(&g, -l).unwrap());
            prop_assert!(back == m.identity());
            Ok(())
        }
        check(&FreeModel(2), &letters)?;
        check(&KleinModel, &letters)?;
        check(&BaumslagSolitarModel(2), &letters)?;
    }

    #[test]
    fn verdicts_replay_and_weaken_when_facts_are_removed(text in expr_text()) {
        let Ok(grp) = parse_group_expr(&text) else { return Ok(()) };
        let full = Catalog::builtin();
        let verdict = decide(&full, &grp);
        prop_assert!(verdict.replay(&full).is_ok(), "{text}: {:?}", verdict.replay(&full));
        prop_assert_eq!(&decide(&full, &grp), &verdict);
        let mut reduced: Vec<Catalog> = full.rinf_facts().iter().map(|f| Catalog::builtin().without(f.id)).collect();
        reduced.push(Catalog::without_rinf_facts());
        for catalog in &reduced {
            let weaker = decide(catalog, &grp);
            prop_assert!(weaker.conclusion.strength() <= verdict.conclusion.strength(), "{text}: {} then {}", verdict.conclusion, weaker.conclusion);
            prop_assert!(weaker.replay(catalog).is_ok(), "{text}");
        }
    }

    #[test]
    fn parse_display_round_trip(text in expr_text()) {
        if let Ok(grp) = parse_group_expr(&text) {
            let shown = grp.to_string();
            prop_assert_eq!(parse_group_expr(&shown).unwrap(), grp, "{} -> {}", text, shown);
        }
    }

    #[test]
    fn smith_form_postconditions(rows in 1usize..=4, cols in 1usize..=4, seed in prop::collection::vec(-9i64..=9, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 4..i * 4 + cols].to_vec()).collect();
        let m = IntMatrix::from_i64_rows(&m).unwrap();
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.checked_mul(&m).unwrap().checked_mul(&snf.v).unwrap(), snf.d.clone());
        prop_assert!(snf.d.is_diagonal());
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            let divides = if w[0] == BigInt::from(0) { w[1] == BigInt::from(0) } else { (&w[1] % &w[0]) == BigInt::from(0) };
            prop_assert!(divides, "{:?}", diag);
        }
        prop_assert_eq!(snf.rank(), m.rank());
    }

    #[test]
    fn reidemeister_matches_orbits_on_a_finite_quotient(
        k in 0usize..=2,
        moduli in prop::sample::select(vec![vec![], vec![2], vec![3], vec![4], vec![2, 2], vec![2, 4], vec![3, 3], vec![6]]),
        entries in prop::collection::vec(-3i64..=3, 16),
    ) {
        let t = moduli.len();
        let free: Vec<Vec<i64>> = (0..k).map(|i| entries[i * 2..i * 2 + k].to_vec()).collect();
        let tors: Vec<Vec<i64>> = (0..t).map(|i| entries[4 + i * 2..4 + i * 2 + t].to_vec()).collect();
        let mix: Vec<Vec<i64>> = (0..t).map(|i| entries[8 + i * 2..8 + i * 2 + k].to_vec()).collect();
        let big = |r: &[Vec<i64>], c| IntMatrix::from_rows_with_cols(r.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect(), c).unwrap();
        let factors: Vec<BigInt> = moduli.iter().map(|&d| BigInt::from(d)).collect();
        let Ok(phi) = FGAbelianAutomorphism::new(big(&free, k), factors, big(&tors, t), big(&mix, k)) else { return Ok(()) };
        let r = reidemeister_number(&phi);
        let delta = det(&identity_minus(&free));
        prop_assert_eq!(r.is_finite(), delta != 0);
        if delta == 0 {
            return Ok(());
        }
        // E = |det(I - M)| lcm(d) kills G / im(1 - φ), so classes of G / EG are classes of G
        let lcm = moduli.iter().fold(1u64, |acc, &d| acc * d / gcd(acc, d));
        let e = delta.unsigned_abs() as u64 * lcm;
        let mut all_moduli = vec![e; k];
        all_moduli.extend(&moduli);
        if all_moduli.iter().product::<u64>() > 50_000 {
            return Ok(());
        }
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| free[i].iter().copied().chain(std::iter::repeat_n(0, t)).collect())
            .chain((0..t).map(|i| mix[i].iter().chain(&tors[i]).copied().collect()))
            .collect();
        prop_assert_eq!(r, ReidemeisterNumber::finite(twisted_classes_mod(&rows, &all_moduli)));
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn pool_parses() {
    for text in PRODUCT_POOL {
        parse_group_expr(text).unwrap();
    }
}
