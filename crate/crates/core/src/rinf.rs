//! Property `R∞` verdicts with replayable derivation traces.
//!
//! Each rule is a sufficient condition. A trace is a list of steps; every
//! step makes one [`Claim`] about one group, names the rule that justifies
//! it and points at the earlier steps it uses. [`Verdict::replay`] re-derives
//! every leaf claim from the catalog and checks that every inference step
//! has premises of the right shape.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::direction::Direction;
use crate::group::{parse_group_expr, GroupExpr};
use crate::matrix::Matrix;
use crate::omega::OClass;
use crate::reidemeister::ReidemeisterNumber;
use crate::snf::smith_normal_form;
use crate::sphere::{Cardinality, SphereSet};

/// Highest `Ω^n` level the engine consults.
pub const MAX_LEVEL: u32 = 3;

/// Largest number of direct factors split by the product rule.
const MAX_SPLIT_FACTORS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    ThmMain1,
    ThmMain2,
    ThmGK1,
    ThmGK2,
    ThmFreeProd1,
    ThmFreeProd2,
    ThmFreeProd3,
    ThmProductO1,
    ThmProductO2,
    LemRFacts1,
    LemRFacts2,
    LemRFacts3,
    CatalogFact,
    /// `Ω^n` of a direct product as the join of the factors.
    ProductJoin,
    /// A premise supplied by the caller.
    Given,
}

impl Rule {
    pub fn statement(self) -> &'static str {
        match self {
            Rule::ThmMain1 => "G of type F_n and Ω^n(G) one rational point ⇒ R(φ) = ∞ for all φ ∈ Aut(G)",
            Rule::ThmMain2 => {
                "G of type F_n and Ω^n(G) two rational points ⇒ some N ◁ Aut(G) of index 2 has R(φ) = ∞ for all φ ∈ N"
            }
            Rule::ThmGK1 => {
                "Σ¹(G)^c finite, non-empty, rational ⇒ a finite-index subgroup of Aut(G) has R(φ) = ∞ throughout"
            }
            Rule::ThmGK2 => {
                "Σ¹(G)^c = {[χ_1], ..., [χ_k]} a basis of Hom(G/∩ker χ_i, R) ⇒ R(φ) = ∞ for all φ ∈ Aut(G)"
            }
            Rule::ThmFreeProd1 => "A_1 * ... * A_n with every A_i finite, non-trivial, freely indecomposable ⇒ R∞",
            Rule::ThmFreeProd2 => "A_j ∈ O^m_1 and A_i ∈ O^{k_i}_0 with k_i <= m for i != j ⇒ A_1 * ... * A_n has R∞",
            Rule::ThmFreeProd3 => "A_1 × ... × A_n has R∞ and some A_i is abelian and not Z ⇒ A_1 * ... * A_n has R∞",
            Rule::ThmProductO1 => "H ∈ O^n_1 and K ∈ O^m_0 with m <= n ⇒ H × K has R∞",
            Rule::ThmProductO2 => {
                "H ∈ O^n_2 and K ∈ O^m_0 with m <= n ⇒ some N ◁ Aut(H × K) of index 2 has R(φ) = ∞ for all φ ∈ N"
            }
            Rule::LemRFacts1 => "N characteristic in G and R(φ̄) = ∞ on G/N ⇒ R(φ) = ∞",
            Rule::LemRFacts2 => "|Fix φ̄| < ∞ and R(φ') = ∞ on N ⇒ R(φ) = ∞",
            Rule::LemRFacts3 => "central extension ⇒ R(φ) = R(φ') R(φ̄)",
            Rule::CatalogFact => "stored fact",
            Rule::ProductJoin => "Ω^n(H × K) = Ω^n(H) ⊛ Ω^n(K)",
            Rule::Given => "supplied premise",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum Conclusion {
    RInfinity,
    IndexTwoSubgroupAllRInf,
    FiniteIndexSubgroupAllRInf,
    ReidemeisterValue(ReidemeisterNumber),
    Unknown,
}

impl Conclusion {
    /// `RInfinity` outranks both subgroup statements, which outrank `Unknown`.
    pub fn strength(&self) -> u8 {
        match self {
            Conclusion::RInfinity | Conclusion::ReidemeisterValue(ReidemeisterNumber::Infinite) => 2,
            Conclusion::IndexTwoSubgroupAllRInf | Conclusion::FiniteIndexSubgroupAllRInf => 1,
            Conclusion::ReidemeisterValue(_) => 1,
            Conclusion::Unknown => 0,
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::ReidemeisterValue(n) => write!(f, "ReidemeisterValue({n})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `#Ω^level`, `None` when infinite.
    OmegaCount { level: u32, points: Option<usize>, antipodal: bool },
    Sigma1Complement { points: Vec<Direction> },
    /// Rank of the lattice spanned by the `Σ¹` complement points.
    SpanRank { rank: usize, count: usize },
    Class { level: u32, class: OClass },
    IsFinite,
    AbelianNotCyclic,
    TorsionSplit { torsion_free: String, finite: String },
    Given { statement: String },
    Holds { conclusion: Conclusion },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub id: usize,
    pub rule: Rule,
    pub group: String,
    pub claim: Claim,
    pub premises: Vec<usize>,
    pub quote: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub group: String,
    pub conclusion: Conclusion,
    pub trace: Vec<TraceStep>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {message}")]
pub struct ReplayError {
    pub step: usize,
    pub message: String,
}

#[derive(Default)]
struct Trace {
    steps: Vec<TraceStep>,
}

impl Trace {
    fn push(&mut self, rule: Rule, group: &dyn fmt::Display, claim: Claim, premises: Vec<usize>, quote: &str) -> usize {
        let id = self.steps.len();
        let quote = if quote.is_empty() { rule.statement().to_string() } else { quote.to_string() };
        self.steps.push(TraceStep { id, rule, group: group.to_string(), claim, premises, quote });
        id
    }

    /// Appends another trace, renumbering its steps; returns the new id of its last step.
    fn import(&mut self, other: &[TraceStep]) -> Option<usize> {
        let offset = self.steps.len();
        for s in other {
            let mut s = s.clone();
            s.id += offset;
            s.premises.iter_mut().for_each(|p| *p += offset);
            self.steps.push(s);
        }
        other.last().map(|_| self.steps.len() - 1)
    }

    fn finish(self, g: &GroupExpr, conclusion: Conclusion) -> Verdict {
        Verdict { group: g.to_string(), conclusion, trace: self.steps, notes: Vec::new() }
    }
}

impl Verdict {
    fn unknown(g: &GroupExpr, notes: Vec<String>) -> Verdict {
        Verdict { group: g.to_string(), conclusion: Conclusion::Unknown, trace: Vec::new(), notes }
    }

    /// Index of the step that establishes the conclusion.
    pub fn final_step(&self) -> Option<&TraceStep> {
        self.trace.last()
    }

    pub fn rules(&self) -> Vec<Rule> {
        self.trace.iter().map(|s| s.rule).collect()
    }

    /// Re-checks every step against the catalog and the rule shapes.
    pub fn replay(&self, catalog: &Catalog) -> Result<(), ReplayError> {
        match (&self.conclusion, self.trace.last()) {
            (Conclusion::Unknown, None) => return Ok(()),
            (Conclusion::Unknown, Some(_)) => return Err(err(0, "unknown verdict carries a trace")),
            (_, None) => return Err(err(0, "empty trace for a definite verdict")),
            (c, Some(last)) => {
                if last.claim != (Claim::Holds { conclusion: c.clone() }) || last.group != self.group {
                    return Err(err(last.id, "final step does not state the verdict"));
                }
            }
        }
        for (i, step) in self.trace.iter().enumerate() {
            if step.id != i {
                return Err(err(i, "step ids are not sequential"));
            }
            if let Some(&p) = step.premises.iter().find(|&&p| p >= i) {
                return Err(err(i, &format!("premise {p} is not an earlier step")));
            }
            check_step(catalog, &self.trace, step)?;
        }
        Ok(())
    }
}

fn err(step: usize, message: &str) -> ReplayError {
    ReplayError { step, message: message.to_string() }
}

fn parse_step_group(step: &TraceStep) -> Result<GroupExpr, ReplayError> {
    parse_group_expr(&step.group).map_err(|e| err(step.id, &format!("group does not parse: {e}")))
}

fn omega_claim(omega: &SphereSet, level: u32) -> Claim {
    let card = omega.cardinality();
    Claim::OmegaCount { level, points: card.count(), antipodal: omega.is_antipodal_pair() }
}

fn holds(c: Conclusion) -> Claim {
    Claim::Holds { conclusion: c }
}

fn check_step(catalog: &Catalog, trace: &[TraceStep], step: &TraceStep) -> Result<(), ReplayError> {
    let premises: Vec<&TraceStep> = step.premises.iter().map(|&p| &trace[p]).collect();
    let fail = |m: &str| Err(err(step.id, m));
    let find = |pred: &dyn Fn(&TraceStep) -> bool| premises.iter().copied().find(|p| pred(p));
    match step.rule {
        Rule::Given => Ok(()),
        Rule::CatalogFact | Rule::ProductJoin => {
            let g = parse_step_group(step)?;
            if step.rule == Rule::ProductJoin && !matches!(g, GroupExpr::DirectProduct(_)) {
                return fail("join rule applied to a group that is not a direct product");
            }
            let ok = match &step.claim {
                Claim::OmegaCount { level, .. } => {
                    catalog.omega(&g, *level).is_some_and(|o| omega_claim(&o.value, *level) == step.claim)
                }
                Claim::Sigma1Complement { points } => catalog
                    .sigma1_complement(&g)
                    .is_some_and(|s| matches!(s.value.cardinality(), Cardinality::Finite(p) if &p == points)),
                Claim::SpanRank { rank, count } => catalog.sigma1_complement(&g).is_some_and(|s| {
                    matches!(s.value.cardinality(), Cardinality::Finite(p) if p.len() == *count && span_rank(&p) == *rank)
                }),
                Claim::Class { level, class } => catalog.o_class(&g, *level) == *class,
                Claim::IsFinite => g.is_finite(),
                Claim::AbelianNotCyclic => g.is_abelian() && !g.is_infinite_cyclic() && !g.is_trivial(),
                Claim::TorsionSplit { torsion_free, finite } => {
                    let tf = parse_group_expr(torsion_free).map_err(|e| err(step.id, &e.to_string()))?;
                    let fin = parse_group_expr(finite).map_err(|e| err(step.id, &e.to_string()))?;
                    tf.is_torsion_free()
                        && fin.is_finite()
                        && same_factors(&g, &[&tf, &fin])
                }
                Claim::Holds { conclusion: Conclusion::RInfinity } => catalog.rinf_premise(&g).is_some(),
                _ => false,
            };
            if ok {
                Ok(())
            } else {
                fail("stored fact does not re-derive")
            }
        }
        Rule::ThmMain1 | Rule::ThmMain2 => {
            let (want, concl) = if step.rule == Rule::ThmMain1 {
                (1, Conclusion::RInfinity)
            } else {
                (2, Conclusion::IndexTwoSubgroupAllRInf)
            };
            let p = find(&|p| {
                p.group == step.group
                    && matches!(p.claim, Claim::OmegaCount { points: Some(k), antipodal, .. }
                        if k == want && (want == 1 || antipodal))
            });
            let Some(Claim::OmegaCount { level, .. }) = p.map(|p| &p.claim) else {
                return fail("missing Ω^n premise with the required number of points");
            };
            if !parse_step_group(step)?.is_type_f(*level) {
                return fail("group is not of type F_n");
            }
            expect_holds(step, concl)
        }
        Rule::ThmGK1 | Rule::ThmGK2 => {
            let sigma = find(&|p| {
                p.group == step.group && matches!(&p.claim, Claim::Sigma1Complement { points } if !points.is_empty())
            });
            if sigma.is_none() {
                return fail("missing non-empty finite Σ¹ complement premise");
            }
            if step.rule == Rule::ThmGK1 {
                return expect_holds(step, Conclusion::FiniteIndexSubgroupAllRInf);
            }
            if find(&|p| p.group == step.group && matches!(p.claim, Claim::SpanRank { rank, count } if rank == count)).is_none() {
                return fail("missing basis premise");
            }
            expect_holds(step, Conclusion::RInfinity)
        }
        Rule::ThmProductO1 | Rule::ThmProductO2 => {
            let (want, concl) = if step.rule == Rule::ThmProductO1 {
                (OClass::O1, Conclusion::RInfinity)
            } else {
                (OClass::O2, Conclusion::IndexTwoSubgroupAllRInf)
            };
            let h = find(&|p| matches!(p.claim, Claim::Class { class, .. } if class == want));
            let k = find(&|p| matches!(p.claim, Claim::Class { class: OClass::O0, .. }));
            let (Some(h), Some(k)) = (h, k) else {
                return fail("missing class premises");
            };
            let (Claim::Class { level: n, .. }, Claim::Class { level: m, .. }) = (&h.claim, &k.claim) else {
                unreachable!()
            };
            if m > n {
                return fail("K is only known in O^m_0 for m > n");
            }
            let g = parse_step_group(step)?;
            if !same_factors(&g, &[&parse_step_group(h)?, &parse_step_group(k)?]) {
                return fail("premises do not split the group as H × K");
            }
            expect_holds(step, concl)
        }
        Rule::ThmFreeProd1 | Rule::ThmFreeProd2 | Rule::ThmFreeProd3 => {
            let g = parse_step_group(step)?;
            let factors: Vec<String> = g.free_factors().iter().map(ToString::to_string).collect();
            if !matches!(g, GroupExpr::FreeProduct(_)) || factors.len() < 2 {
                return fail("not a free product");
            }
            match step.rule {
                Rule::ThmFreeProd1 => {
                    for f in &factors {
                        if find(&|p| &p.group == f && p.claim == Claim::IsFinite).is_none() {
                            return fail(&format!("factor {f} not shown finite"));
                        }
                    }
                }
                Rule::ThmFreeProd2 => {
                    let top = premises.iter().find_map(|p| match p.claim {
                        Claim::Class { level, class: OClass::O1 } => Some((p.group.clone(), level)),
                        _ => None,
                    });
                    let Some((j, m)) = top else {
                        return fail("no factor in O^m_1");
                    };
                    let mut rest = factors.clone();
                    let Some(pos) = rest.iter().position(|f| *f == j) else {
                        return fail("O^m_1 premise is not about a factor");
                    };
                    rest.remove(pos);
                    for f in &rest {
                        let ok = find(&|p| {
                            &p.group == f && matches!(p.claim, Claim::Class { level, class: OClass::O0 } if level <= m)
                        });
                        if ok.is_none() {
                            return fail(&format!("factor {f} not shown in O^k_0 with k <= {m}"));
                        }
                    }
                }
                _ => {
                    let product = GroupExpr::product_of(g.free_factors()).to_string();
                    if find(&|p| p.group == product && p.claim == holds(Conclusion::RInfinity)).is_none() {
                        return fail("missing R∞ premise for the direct product of the factors");
                    }
                    if find(&|p| factors.contains(&p.group) && p.claim == Claim::AbelianNotCyclic).is_none() {
                        return fail("missing abelian factor other than Z");
                    }
                }
            }
            expect_holds(step, Conclusion::RInfinity)
        }
        Rule::LemRFacts1 => {
            if let Some(split) = find(&|p| p.group == step.group && matches!(p.claim, Claim::TorsionSplit { .. })) {
                let Claim::TorsionSplit { torsion_free, .. } = &split.claim else { unreachable!() };
                if find(&|p| &p.group == torsion_free && p.claim == holds(Conclusion::RInfinity)).is_none() {
                    return fail("missing R∞ premise for the torsion-free quotient");
                }
                return expect_holds(step, Conclusion::RInfinity);
            }
            if find(&|p| matches!(&p.claim, Claim::Given { statement } if statement == "R(φ̄) = ∞")).is_none() {
                return fail("missing R(φ̄) = ∞ premise");
            }
            expect_holds(step, Conclusion::ReidemeisterValue(ReidemeisterNumber::Infinite))
        }
        Rule::LemRFacts2 => {
            let given = |s: &str| find(&|p| matches!(&p.claim, Claim::Given { statement } if statement == s)).is_some();
            if !given("|Fix φ̄| < ∞") || !given("R(φ') = ∞") {
                return fail("missing premises");
            }
            expect_holds(step, Conclusion::ReidemeisterValue(ReidemeisterNumber::Infinite))
        }
        Rule::LemRFacts3 => {
            let given = |prefix: &str| {
                premises.iter().find_map(|p| match &p.claim {
                    Claim::Given { statement } => statement.strip_prefix(prefix).map(str::to_string),
                    _ => None,
                })
            };
            if given("central").is_none() {
                return fail("missing centrality premise");
            }
            let (Some(a), Some(c)) = (given("R(φ') = "), given("R(φ̄) = ")) else {
                return fail("missing Reidemeister number premises");
            };
            let (Ok(a), Ok(c)) = (a.parse::<num_bigint::BigInt>(), c.parse::<num_bigint::BigInt>()) else {
                return fail("Reidemeister number premises are not finite integers");
            };
            expect_holds(step, Conclusion::ReidemeisterValue(ReidemeisterNumber::Finite(a * c)))
        }
    }
}

fn expect_holds(step: &TraceStep, c: Conclusion) -> Result<(), ReplayError> {
    if step.claim == holds(c) {
        Ok(())
    } else {
        Err(err(step.id, "conclusion does not follow from the rule"))
    }
}

fn same_factors(g: &GroupExpr, parts: &[&GroupExpr]) -> bool {
    let mut whole: Vec<String> = g.direct_factors().iter().map(ToString::to_string).collect();
    let mut split: Vec<String> =
        parts.iter().flat_map(|p| p.direct_factors()).map(ToString::to_string).collect();
    whole.sort();
    split.sort();
    whole == split
}

/// Rank of the lattice spanned by the given integer vectors.
fn span_rank(points: &[Direction]) -> usize {
    let rows: Vec<Vec<i64>> = points.iter().map(|d| d.coords().to_vec()).collect();
    let m: Matrix<num_bigint::BigInt> = Matrix::from_i64_rows(&rows).expect("equal lengths");
    smith_normal_form(&m).rank()
}

fn omega_step(catalog: &Catalog, trace: &mut Trace, g: &GroupExpr, n: u32) -> Option<(usize, SphereSet)> {
    let omega = catalog.omega(g, n)?;
    let rule = if matches!(g, GroupExpr::DirectProduct(_)) { Rule::ProductJoin } else { Rule::CatalogFact };
    let quote = match &omega.provenance {
        crate::catalog::Provenance::Catalog { citation } => citation,
        crate::catalog::Provenance::Derived { rule: r, .. } => r,
    };
    let quote = if rule == Rule::ProductJoin { "" } else { quote };
    let id = trace.push(rule, g, omega_claim(&omega.value, n), vec![], quote);
    Some((id, omega.value))
}

fn class_step(catalog: &Catalog, trace: &mut Trace, g: &GroupExpr, level: u32, class: OClass) -> usize {
    debug_assert_eq!(catalog.o_class(g, level), class);
    trace.push(Rule::CatalogFact, g, Claim::Class { level, class }, vec![], "O^k_i class from Ω^k")
}

/// `R∞` from a stored premise-grade fact.
pub fn decide_catalog(catalog: &Catalog, g: &GroupExpr) -> Option<Verdict> {
    let fact = catalog.rinf_premise(g)?;
    let mut t = Trace::default();
    t.push(Rule::CatalogFact, g, holds(Conclusion::RInfinity), vec![], fact.citation);
    Some(t.finish(g, Conclusion::RInfinity))
}

/// The finite-`Ω^n` criterion at a single level.
pub fn decide_main(catalog: &Catalog, g: &GroupExpr, n: u32) -> Verdict {
    let mut t = Trace::default();
    let Some((id, omega)) = omega_step(catalog, &mut t, g, n) else {
        return Verdict::unknown(g, vec![format!("Ω^{n} is not known")]);
    };
    if !g.is_type_f(n) {
        return Verdict::unknown(g, vec![format!("group is not of type F_{n}")]);
    }
    let (rule, conclusion) = match omega.cardinality() {
        Cardinality::Finite(p) if p.len() == 1 => (Rule::ThmMain1, Conclusion::RInfinity),
        Cardinality::Finite(p) if p.len() == 2 && omega.is_antipodal_pair() => {
            (Rule::ThmMain2, Conclusion::IndexTwoSubgroupAllRInf)
        }
        card => return Verdict::unknown(g, vec![format!("#Ω^{n} = {card}, not 1 or 2")]),
    };
    t.push(rule, g, holds(conclusion.clone()), vec![id], "");
    t.finish(g, conclusion)
}

/// The finite-`Σ¹`-complement criteria.
pub fn decide_gk(catalog: &Catalog, g: &GroupExpr) -> Verdict {
    let Some(sigma) = catalog.sigma1_complement(g) else {
        return Verdict::unknown(g, vec!["Σ¹ complement is not known".into()]);
    };
    let Cardinality::Finite(points) = sigma.value.cardinality() else {
        return Verdict::unknown(g, vec!["Σ¹ complement is empty or infinite".into()]);
    };
    let mut t = Trace::default();
    let s = t.push(Rule::CatalogFact, g, Claim::Sigma1Complement { points: points.clone() }, vec![], "");
    let rank = span_rank(&points);
    if rank == points.len() {
        let b = t.push(Rule::CatalogFact, g, Claim::SpanRank { rank, count: points.len() }, vec![s], "");
        t.push(Rule::ThmGK2, g, holds(Conclusion::RInfinity), vec![s, b], "");
        t.finish(g, Conclusion::RInfinity)
    } else {
        t.push(Rule::ThmGK1, g, holds(Conclusion::FiniteIndexSubgroupAllRInf), vec![s], "");
        t.finish(g, Conclusion::FiniteIndexSubgroupAllRInf)
    }
}

/// Splits a direct product as `H × K` with `H ∈ O^n_1 ∪ O^n_2` and `K ∈ O^m_0`, `m <= n`;
/// otherwise falls back to the finite-`Ω^n` criterion on the whole product.
pub fn decide_product(catalog: &Catalog, g: &GroupExpr, n: u32) -> Verdict {
    let factors: Vec<GroupExpr> = g.direct_factors().into_iter().cloned().collect();
    if factors.len() < 2 || factors.len() > MAX_SPLIT_FACTORS {
        return decide_main(catalog, g, n);
    }
    let mut best: Option<Verdict> = None;
    for mask in 1..(1u32 << factors.len()) - 1 {
        let pick = |inside: bool| {
            GroupExpr::product_of(
                factors.iter().enumerate().filter(|(i, _)| (mask >> i & 1 == 1) == inside).map(|(_, f)| f.clone()).collect(),
            )
        };
        let (h, k) = (pick(true), pick(false));
        let class = catalog.o_class(&h, n);
        let (rule, conclusion) = match class {
            OClass::O1 => (Rule::ThmProductO1, Conclusion::RInfinity),
            OClass::O2 => (Rule::ThmProductO2, Conclusion::IndexTwoSubgroupAllRInf),
            _ => continue,
        };
        let Some(m) = (1..=n).find(|&m| catalog.o_class(&k, m) == OClass::O0) else {
            continue;
        };
        let mut t = Trace::default();
        let hs = class_step(catalog, &mut t, &h, n, class);
        let ks = class_step(catalog, &mut t, &k, m, OClass::O0);
        t.push(rule, g, holds(conclusion.clone()), vec![hs, ks], "");
        let v = t.finish(g, conclusion);
        if best.as_ref().is_none_or(|b| v.conclusion.strength() > b.conclusion.strength()) {
            best = Some(v);
        }
    }
    best.unwrap_or_else(|| decide_main(catalog, g, n))
}

/// The three free-product criteria.
pub fn decide_free_product(catalog: &Catalog, g: &GroupExpr) -> Verdict {
    decide_free_product_with(catalog, g, &mut BTreeMap::new())
}

fn decide_free_product_with(catalog: &Catalog, g: &GroupExpr, memo: &mut Memo) -> Verdict {
    if !matches!(g, GroupExpr::FreeProduct(_)) {
        return Verdict::unknown(g, vec!["not a free product".into()]);
    }
    let factors = g.free_factors();
    if let Some(f) = factors.iter().find(|f| !f.freely_indecomposable()) {
        return Verdict::unknown(g, vec![format!("hypothesis violation: factor {f} is not freely indecomposable")]);
    }
    if factors.iter().all(GroupExpr::is_finite) {
        let mut t = Trace::default();
        let premises = factors.iter().map(|f| t.push(Rule::CatalogFact, f, Claim::IsFinite, vec![], "")).collect();
        t.push(Rule::ThmFreeProd1, g, holds(Conclusion::RInfinity), premises, "");
        return t.finish(g, Conclusion::RInfinity);
    }
    for m in 1..=MAX_LEVEL {
        for (j, top) in factors.iter().enumerate() {
            if catalog.o_class(top, m) != OClass::O1 {
                continue;
            }
            let levels: Option<Vec<u32>> = factors
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .map(|(_, f)| (1..=m).find(|&k| catalog.o_class(f, k) == OClass::O0))
                .collect();
            let Some(levels) = levels else { continue };
            let mut t = Trace::default();
            let mut premises = vec![class_step(catalog, &mut t, top, m, OClass::O1)];
            let others = factors.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, f)| f);
            for (f, k) in others.zip(levels) {
                premises.push(class_step(catalog, &mut t, f, k, OClass::O0));
            }
            t.push(Rule::ThmFreeProd2, g, holds(Conclusion::RInfinity), premises, "");
            return t.finish(g, Conclusion::RInfinity);
        }
    }
    let Some(abelian) = factors.iter().find(|f| f.is_abelian() && !f.is_infinite_cyclic()) else {
        return Verdict::unknown(g, vec!["no criterion applies: no finite-only factors, no O^m_1 factor, no abelian factor other than Z".into()]);
    };
    let product = GroupExpr::product_of(factors.clone());
    let sub = decide_with(catalog, &product, memo);
    if sub.conclusion != Conclusion::RInfinity {
        return Verdict::unknown(
            g,
            vec![format!("third criterion unverified: R∞ for {product} is not established by any rule")],
        );
    }
    let mut t = Trace::default();
    let p = t.import(&sub.trace).expect("definite verdict has a trace");
    let a = t.push(Rule::CatalogFact, abelian, Claim::AbelianNotCyclic, vec![], "");
    t.push(Rule::ThmFreeProd3, g, holds(Conclusion::RInfinity), vec![p, a], "");
    t.finish(g, Conclusion::RInfinity)
}

/// `G' × A` with `G'` torsion-free and `A` finite: `A` is the torsion subgroup,
/// hence characteristic, and `R∞` passes up from `G'`.
fn decide_torsion_split(catalog: &Catalog, g: &GroupExpr, memo: &mut Memo) -> Option<Verdict> {
    let factors = g.direct_factors();
    if factors.len() < 2 {
        return None;
    }
    let (finite, torsion_free): (Vec<&GroupExpr>, Vec<&GroupExpr>) = factors.iter().partition(|f| f.is_finite());
    if finite.is_empty() || torsion_free.is_empty() || !torsion_free.iter().all(|f| f.is_torsion_free()) {
        return None;
    }
    let quotient = GroupExpr::product_of(torsion_free.into_iter().cloned().collect());
    let finite = GroupExpr::product_of(finite.into_iter().cloned().collect());
    let sub = decide_with(catalog, &quotient, memo);
    if sub.conclusion != Conclusion::RInfinity {
        return None;
    }
    let mut t = Trace::default();
    let q = t.import(&sub.trace).expect("definite verdict has a trace");
    let claim = Claim::TorsionSplit { torsion_free: quotient.to_string(), finite: finite.to_string() };
    let s = t.push(Rule::CatalogFact, g, claim, vec![], "the torsion subgroup of G' × A is A when G' is torsion-free");
    t.push(Rule::LemRFacts1, g, holds(Conclusion::RInfinity), vec![q, s], "");
    Some(t.finish(g, Conclusion::RInfinity))
}

type Memo = BTreeMap<String, Verdict>;

/// Tries every rule and keeps the strongest verdict, earliest rule first on ties.
pub fn decide(catalog: &Catalog, g: &GroupExpr) -> Verdict {
    decide_with(catalog, g, &mut BTreeMap::new())
}

fn decide_with(catalog: &Catalog, g: &GroupExpr, memo: &mut Memo) -> Verdict {
    let key = g.to_string();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut notes = Vec::new();
    let mut best: Option<Verdict> = None;
    let mut offer = |v: Verdict, notes: &mut Vec<String>| {
        notes.extend(v.notes.iter().cloned());
        if v.conclusion.strength() > best.as_ref().map_or(0, |b| b.conclusion.strength()) {
            best = Some(v);
        }
    };
    if let Some(v) = decide_catalog(catalog, g) {
        offer(v, &mut notes);
    }
    for n in 1..=MAX_LEVEL {
        offer(decide_main(catalog, g, n), &mut notes);
    }
    offer(decide_gk(catalog, g), &mut notes);
    if matches!(g, GroupExpr::DirectProduct(_)) {
        for n in 1..=MAX_LEVEL {
            offer(decide_product(catalog, g, n), &mut notes);
        }
    }
    if matches!(g, GroupExpr::FreeProduct(_)) {
        offer(decide_free_product_with(catalog, g, memo), &mut notes);
    }
    if let Some(v) = decide_torsion_split(catalog, g, memo) {
        offer(v, &mut notes);
    }
    let mut verdict = best.unwrap_or_else(|| Verdict::unknown(g, Vec::new()));
    if verdict.conclusion == Conclusion::Unknown {
        notes.sort();
        notes.dedup();
        verdict.notes = notes;
    }
    memo.insert(key, verdict.clone());
    verdict
}

/// Premises about an automorphism of an extension `1 -> N -> G -> Q -> 1`
/// preserving `N`, with `φ'` and `φ̄` the induced automorphisms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ExtensionSpec {
    pub r_sub: Option<ReidemeisterNumber>,
    pub r_quot: Option<ReidemeisterNumber>,
    pub fix_quot_finite: Option<bool>,
    pub central: bool,
}

/// Reidemeister number of `φ` from facts about the sub and quotient.
pub fn propagate_extension(ext: &ExtensionSpec) -> Verdict {
    let phi = "φ";
    let mut t = Trace::default();
    let given = |t: &mut Trace, s: String| t.push(Rule::Given, &phi, Claim::Given { statement: s }, vec![], "");
    let infinite = Conclusion::ReidemeisterValue(ReidemeisterNumber::Infinite);
    let finish = |t: Trace, conclusion: Conclusion| Verdict {
        group: phi.into(),
        conclusion,
        trace: t.steps,
        notes: Vec::new(),
    };
    if ext.r_quot == Some(ReidemeisterNumber::Infinite) {
        let p = given(&mut t, "R(φ̄) = ∞".into());
        t.push(Rule::LemRFacts1, &phi, holds(infinite.clone()), vec![p], "");
        return finish(t, infinite);
    }
    if ext.fix_quot_finite == Some(true) && ext.r_sub == Some(ReidemeisterNumber::Infinite) {
        let a = given(&mut t, "|Fix φ̄| < ∞".into());
        let b = given(&mut t, "R(φ') = ∞".into());
        t.push(Rule::LemRFacts2, &phi, holds(infinite.clone()), vec![a, b], "");
        return finish(t, infinite);
    }
    if let (true, Some(ReidemeisterNumber::Finite(a)), Some(ReidemeisterNumber::Finite(c))) =
        (ext.central, &ext.r_sub, &ext.r_quot)
    {
        let p0 = given(&mut t, "central".into());
        let p1 = given(&mut t, format!("R(φ') = {a}"));
        let p2 = given(&mut t, format!("R(φ̄) = {c}"));
        let value = Conclusion::ReidemeisterValue(ReidemeisterNumber::Finite(a * c));
        t.push(Rule::LemRFacts3, &phi, holds(value.clone()), vec![p0, p1, p2], "");
        return finish(t, value);
    }
    Verdict { group: phi.into(), conclusion: Conclusion::Unknown, trace: Vec::new(), notes: vec!["insufficient premises".into()] }
}
