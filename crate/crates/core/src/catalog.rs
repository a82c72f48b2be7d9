//! Known invariants of catalog atoms and their propagation through products.
//!
//! Atom facts are curated; every fact carries a citation string. Facts about
//! products are derived from the factors and record the rule used. Anything
//! not covered stays `None`.
//!
//! Coordinates: the character sphere of an atom is written in the basis dual
//! to its abelianization generators, except for `BS(1,n)`, whose coordinate
//! is minus the exponent sum of `t` in `t a t^-1 = a^n`, so that `+e1` is the
//! direction lying in `Σ¹`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::direction::Direction;
use crate::group::{AtomKind, GroupAtom, GroupExpr};
use crate::omega::{omega_of_product, sigma1_complement_of_product, OClass};
use crate::sphere::{Decomposition, Part, SphereSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Catalog { citation: &'static str },
    Derived { rule: &'static str, from: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sourced<T> {
    pub value: T,
    pub provenance: Provenance,
}

impl<T> Sourced<T> {
    fn cited(value: T, citation: &'static str) -> Self {
        Sourced { value, provenance: Provenance::Catalog { citation } }
    }
}

/// Whether a stored `R∞` fact may be used as a premise by the verdict engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactGrade {
    Premise,
    /// Recorded for reporting only.
    Reference,
}

#[derive(Clone, Debug, Serialize)]
pub struct RinfFact {
    pub id: &'static str,
    pub citation: &'static str,
    pub grade: FactGrade,
    #[serde(skip)]
    matches: fn(&GroupExpr) -> bool,
}

impl RinfFact {
    pub fn applies_to(&self, g: &GroupExpr) -> bool {
        (self.matches)(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownInvariants {
    pub hom_rank: usize,
    pub sigma1_complement: Option<Sourced<SphereSet>>,
    pub omega: BTreeMap<u32, Option<Sourced<SphereSet>>>,
    pub o_class: BTreeMap<u32, OClass>,
    pub rinf_known: Option<RinfCitation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RinfCitation {
    pub id: &'static str,
    pub citation: &'static str,
    pub grade: FactGrade,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    rinf: Vec<RinfFact>,
}

fn atom_of(g: &GroupExpr) -> Option<&AtomKind> {
    match g {
        GroupExpr::Atom(GroupAtom { kind, .. }) => Some(kind),
        _ => None,
    }
}

fn is_klein_times_free_abelian(g: &GroupExpr) -> bool {
    let factors = g.direct_factors();
    let kleins = factors.iter().filter(|f| atom_of(f) == Some(&AtomKind::KleinBottle)).count();
    kleins == 1
        && factors
            .iter()
            .all(|f| matches!(atom_of(f), Some(AtomKind::KleinBottle | AtomKind::FreeAbelian(_))))
}

fn is_free_times_z(g: &GroupExpr) -> bool {
    let factors = g.direct_factors();
    factors.len() == 2
        && factors.iter().any(|f| matches!(atom_of(f), Some(AtomKind::Free(n)) if *n >= 2))
        && factors.iter().any(|f| f.is_infinite_cyclic())
}

impl Catalog {
    pub fn builtin() -> Self {
        let rinf = vec![
            RinfFact {
                id: "free-nonabelian",
                citation: "non-elementary hyperbolic groups have R∞ (Levitt–Lustig)",
                grade: FactGrade::Premise,
                matches: |g| matches!(atom_of(g), Some(AtomKind::Free(n)) if *n >= 2),
            },
            RinfFact {
                id: "klein-times-free-abelian",
                citation: "π1(Klein bottle) × Z^k has R∞ (Dekimpe–Gonçalves)",
                grade: FactGrade::Premise,
                matches: is_klein_times_free_abelian,
            },
            RinfFact {
                id: "lamplighter",
                citation: "Z/n wr Z has R∞ iff gcd(n, 6) > 1 (Gonçalves–Wong)",
                grade: FactGrade::Premise,
                matches: |g| matches!(atom_of(g), Some(AtomKind::Lamplighter(n)) if n.gcd(&6) > 1),
            },
            RinfFact {
                id: "baumslag-solitar",
                citation: "BS(1,n) has R∞ (Fel'shtyn–Gonçalves)",
                grade: FactGrade::Reference,
                matches: |g| matches!(atom_of(g), Some(AtomKind::BaumslagSolitar(_))),
            },
            RinfFact {
                id: "free-times-z",
                citation: "non-elementary generalized Baumslag–Solitar groups have R∞ (Levitt)",
                grade: FactGrade::Reference,
                matches: is_free_times_z,
            },
            RinfFact {
                id: "braid",
                citation: "B_n has R∞ for n >= 3 (Fel'shtyn–Gonçalves)",
                grade: FactGrade::Reference,
                matches: |g| matches!(atom_of(g), Some(AtomKind::Braid(_))),
            },
            RinfFact {
                id: "thompson",
                citation: "F_{n,0} has R∞ (Bleak–Fel'shtyn–Gonçalves; Gonçalves–Kochloukova)",
                grade: FactGrade::Reference,
                matches: |g| matches!(atom_of(g), Some(AtomKind::ThompsonF | AtomKind::GeneralizedThompson(_))),
            },
        ];
        Catalog { rinf }
    }

    /// The catalog with no `R∞` facts at all.
    pub fn without_rinf_facts() -> Self {
        Catalog { rinf: Vec::new() }
    }

    pub fn without(mut self, id: &str) -> Self {
        self.rinf.retain(|f| f.id != id);
        self
    }

    pub fn rinf_facts(&self) -> &[RinfFact] {
        &self.rinf
    }

    /// First stored fact of any grade that applies to `g`.
    pub fn rinf_known(&self, g: &GroupExpr) -> Option<&RinfFact> {
        self.rinf.iter().find(|f| f.applies_to(g))
    }

    /// First premise-grade fact that applies to `g`.
    pub fn rinf_premise(&self, g: &GroupExpr) -> Option<&RinfFact> {
        self.rinf.iter().find(|f| f.grade == FactGrade::Premise && f.applies_to(g))
    }

    pub fn sigma1_complement(&self, g: &GroupExpr) -> Option<Sourced<SphereSet>> {
        match g {
            GroupExpr::Atom(a) => atom_sigma1_complement(a),
            GroupExpr::DirectProduct(fs) => {
                let parts: Vec<Option<SphereSet>> =
                    fs.iter().map(|f| self.sigma1_complement(f).map(|s| s.value)).collect();
                sigma1_complement_of_product(&parts).map(|value| Sourced {
                    value,
                    provenance: derived("product formula for the Σ¹ complement", fs),
                })
            }
            GroupExpr::FreeProduct(fs) => Some(Sourced {
                value: SphereSet::full(Decomposition::single(g.hom_rank())),
                provenance: derived("free products of non-trivial groups have empty Σ¹", fs),
            }),
        }
    }

    pub fn omega(&self, g: &GroupExpr, n: u32) -> Option<Sourced<SphereSet>> {
        assert!(n >= 1, "Ω^n is indexed from n = 1");
        match g {
            GroupExpr::Atom(a) => atom_omega(a, n),
            GroupExpr::DirectProduct(fs) => {
                let parts: Vec<Option<SphereSet>> = fs.iter().map(|f| self.omega(f, n).map(|s| s.value)).collect();
                omega_of_product(&parts)
                    .map(|value| Sourced { value, provenance: derived("Ω of a product is the join of the factors", fs) })
            }
            GroupExpr::FreeProduct(fs) => Some(Sourced {
                value: SphereSet::empty(Decomposition::single(g.hom_rank())),
                provenance: derived("Ω^n ⊆ Σ¹ = ∅ for free products of non-trivial groups", fs),
            }),
        }
    }

    pub fn o_class(&self, g: &GroupExpr, k: u32) -> OClass {
        OClass::of(self.omega(g, k).as_ref().map(|s| &s.value))
    }

    pub fn lookup_invariants(&self, g: &GroupExpr, levels: u32) -> KnownInvariants {
        let omega: BTreeMap<u32, Option<Sourced<SphereSet>>> = (1..=levels).map(|n| (n, self.omega(g, n))).collect();
        let o_class = omega.iter().map(|(&n, o)| (n, OClass::of(o.as_ref().map(|s| &s.value)))).collect();
        KnownInvariants {
            hom_rank: g.hom_rank(),
            sigma1_complement: self.sigma1_complement(g),
            omega,
            o_class,
            rinf_known: self
                .rinf_known(g)
                .map(|f| RinfCitation { id: f.id, citation: f.citation, grade: f.grade }),
        }
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::builtin()
    }
}

fn derived(rule: &'static str, factors: &[GroupExpr]) -> Provenance {
    Provenance::Derived { rule, from: factors.iter().map(ToString::to_string).collect() }
}

fn points(rank: usize, pts: &[&[i64]]) -> SphereSet {
    SphereSet::from_points(rank, pts.iter().map(|p| Direction::new(p.to_vec()).expect("non-zero point")))
        .expect("points match the rank")
}

fn thompson_obstructions(n: usize) -> Vec<Direction> {
    let mut rho = vec![0; n];
    rho[0] = -1;
    vec![Direction::new(rho).expect("non-zero"), Direction::new(vec![1; n]).expect("non-zero")]
}

fn atom_sigma1_complement(a: &GroupAtom) -> Option<Sourced<SphereSet>> {
    let m = a.hom_rank();
    let full = || SphereSet::full(Decomposition::single(m));
    let empty = || SphereSet::empty(Decomposition::single(m));
    Some(match &a.kind {
        AtomKind::FreeAbelian(_) => Sourced::cited(empty(), "abelian groups: Σ¹ is the whole sphere"),
        AtomKind::Free(1) => Sourced::cited(empty(), "abelian groups: Σ¹ is the whole sphere"),
        AtomKind::Free(_) => Sourced::cited(full(), "free groups of rank >= 2 have empty Σ¹"),
        AtomKind::BaumslagSolitar(_) => {
            Sourced::cited(points(1, &[&[-1]]), "ascending HNN extension: Σ¹(BS(1,n)) = {+e1}")
        }
        AtomKind::KleinBottle => {
            Sourced::cited(empty(), "characters of the Klein bottle group have kernel Z, so Σ¹ is full")
        }
        AtomKind::Braid(_) => {
            Sourced::cited(empty(), "the commutator subgroup of B_n is finitely generated, so Σ¹ is full")
        }
        AtomKind::ThompsonF | AtomKind::GeneralizedThompson(_) => Sourced::cited(
            SphereSet::from_points(m, thompson_obstructions(m)).expect("points match the rank"),
            "Σ¹(F_{n,0})^c = {[ρ], [λ]} with ρ = -e1 and λ = e1 + ... + en (Bieri–Geoghegan–Kochloukova)",
        ),
        AtomKind::Lamplighter(_) => Sourced::cited(full(), "Z/n wr Z is not an ascending HNN extension over a finitely generated base, so Σ¹ is empty"),
        AtomKind::FiniteCyclic(_) | AtomKind::FiniteTable(_) => {
            Sourced::cited(empty(), "finite groups have an empty character sphere")
        }
    })
}

fn atom_omega(a: &GroupAtom, n: u32) -> Option<Sourced<SphereSet>> {
    let m = a.hom_rank();
    let full = || SphereSet::full(Decomposition::single(m));
    let empty = || SphereSet::empty(Decomposition::single(m));
    Some(match &a.kind {
        AtomKind::FreeAbelian(_) | AtomKind::Free(1) => {
            Sourced::cited(full(), "abelian groups: Σ^n and Ω^n are the whole sphere")
        }
        AtomKind::Free(_) => Sourced::cited(empty(), "Ω^n ⊆ Σ¹ = ∅ for free groups of rank >= 2"),
        AtomKind::BaumslagSolitar(_) => {
            Sourced::cited(points(1, &[&[1]]), "Σ^n(BS(1,n)) = {+e1} for all n, hence Ω^n = {+e1}")
        }
        AtomKind::KleinBottle => {
            Sourced::cited(full(), "character kernels of the Klein bottle group are Z, so Ω^n = S^0")
        }
        AtomKind::Braid(_) if n == 1 => {
            Sourced::cited(full(), "Σ¹(B_n) = S^0 and Ω¹(B_n) = {±e1}")
        }
        AtomKind::Braid(k @ (3 | 4)) => Sourced::cited(
            full(),
            if *k == 3 {
                "B_3' is free of rank 2, so Σ^n(B_3) = S^0 for all n"
            } else {
                "B_4' = F_2 ⋊ F_2 is of type F_∞ (Gorin–Lin), so Σ^n(B_4) = S^0 for all n"
            },
        ),
        AtomKind::Braid(_) => return None,
        AtomKind::ThompsonF | AtomKind::GeneralizedThompson(_) => Sourced::cited(
            SphereSet::from_part(m, Part::Cone(thompson_obstructions(m).into_iter().collect())).expect("valid cone"),
            if n == 1 {
                "Ω¹ is the cone {x : <x, ρ> <= 0, <x, λ> <= 0}"
            } else {
                "Σ^n(F_{n,0})^c lies in the arc spanned by ρ and λ, so Ω^n equals the same cone"
            },
        ),
        AtomKind::Lamplighter(_) => Sourced::cited(empty(), "Ω^n ⊆ Σ¹ = ∅ for Z/n wr Z"),
        AtomKind::FiniteCyclic(_) | AtomKind::FiniteTable(_) => {
            Sourced::cited(empty(), "finite groups have an empty character sphere")
        }
    })
}
