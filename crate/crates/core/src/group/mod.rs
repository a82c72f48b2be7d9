//! Group expressions: catalog atoms combined by direct and free products.

mod parse;
pub mod presentation;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::finite::FiniteGroupTable;

pub use parse::parse_group_expr;
pub use presentation::FinitePresentation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("parameter out of range at {position}: {message}")]
    OutOfRange { position: usize, message: String },
    #[error("{0} needs at least two factors")]
    Arity(&'static str),
    #[error("free product factor {0} is trivial")]
    TrivialFreeFactor(String),
    #[error(transparent)]
    Table(#[from] crate::finite::FiniteError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "param")]
pub enum AtomKind {
    FreeAbelian(u32),
    Free(u32),
    /// `BS(1, n) = <a, t | t a t^-1 = a^n>`.
    BaumslagSolitar(u32),
    KleinBottle,
    Braid(u32),
    ThompsonF,
    /// `F_{n,0}`; `ThompsonF` is the case `n = 2`.
    GeneralizedThompson(u32),
    /// `Z/n wr Z`.
    Lamplighter(u32),
    FiniteCyclic(u32),
    FiniteTable(Arc<FiniteGroupTable>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupAtom {
    pub kind: AtomKind,
    pub finite: bool,
    pub abelian: bool,
    pub freely_indecomposable: bool,
}

impl GroupAtom {
    pub fn new(kind: AtomKind) -> Result<Self, GroupError> {
        let range = |ok: bool, message: &str| {
            if ok {
                Ok(())
            } else {
                Err(GroupError::OutOfRange { position: 0, message: message.to_string() })
            }
        };
        let (finite, abelian, freely_indecomposable) = match &kind {
            AtomKind::FreeAbelian(k) => (*k == 0, true, true),
            AtomKind::Free(n) => {
                range(*n >= 1, "F(n) needs n >= 1")?;
                (false, *n == 1, *n == 1)
            }
            AtomKind::BaumslagSolitar(n) => {
                range(*n >= 2, "BS(1,n) needs n >= 2")?;
                (false, false, true)
            }
            AtomKind::KleinBottle | AtomKind::ThompsonF => (false, false, true),
            AtomKind::Braid(n) => {
                range(*n >= 3, "B(n) needs n >= 3")?;
                (false, false, true)
            }
            AtomKind::GeneralizedThompson(n) => {
                range(*n >= 2, "T(n) needs n >= 2")?;
                (false, false, true)
            }
            AtomKind::Lamplighter(n) => {
                range(*n >= 2, "L(n) needs n >= 2")?;
                (false, false, true)
            }
            AtomKind::FiniteCyclic(k) => {
                range(*k >= 1, "Zmod(k) needs k >= 1")?;
                (true, true, true)
            }
            AtomKind::FiniteTable(t) => (true, t.is_abelian(), true),
        };
        Ok(GroupAtom { kind, finite, abelian, freely_indecomposable })
    }

    pub fn is_trivial(&self) -> bool {
        match &self.kind {
            AtomKind::FreeAbelian(0) | AtomKind::FiniteCyclic(1) => true,
            AtomKind::FiniteTable(t) => t.is_trivial(),
            _ => false,
        }
    }

    pub fn torsion_free(&self) -> bool {
        match &self.kind {
            AtomKind::Lamplighter(_) => false,
            _ => !self.finite || self.is_trivial(),
        }
    }

    /// `Z`-rank of the abelianization.
    pub fn hom_rank(&self) -> usize {
        match &self.kind {
            AtomKind::FreeAbelian(k) | AtomKind::Free(k) | AtomKind::GeneralizedThompson(k) => *k as usize,
            AtomKind::BaumslagSolitar(_) | AtomKind::KleinBottle | AtomKind::Braid(_) | AtomKind::Lamplighter(_) => 1,
            AtomKind::ThompsonF => 2,
            AtomKind::FiniteCyclic(_) | AtomKind::FiniteTable(_) => 0,
        }
    }

    /// Largest `n` with the atom of type `F_n`; `None` means `F_∞`.
    pub fn finiteness_length(&self) -> Option<u32> {
        match self.kind {
            AtomKind::Lamplighter(_) => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for GroupAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AtomKind::FreeAbelian(1) => write!(f, "Z"),
            AtomKind::FreeAbelian(k) => write!(f, "Z^{k}"),
            AtomKind::Free(n) => write!(f, "F({n})"),
            AtomKind::BaumslagSolitar(n) => write!(f, "BS(1,{n})"),
            AtomKind::KleinBottle => write!(f, "Klein"),
            AtomKind::Braid(n) => write!(f, "B({n})"),
            AtomKind::ThompsonF => write!(f, "Thompson"),
            AtomKind::GeneralizedThompson(n) => write!(f, "T({n})"),
            AtomKind::Lamplighter(n) => write!(f, "L({n})"),
            AtomKind::FiniteCyclic(k) => write!(f, "Zmod({k})"),
            AtomKind::FiniteTable(t) => write!(f, "Table({})", t.order()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupExpr {
    Atom(GroupAtom),
    DirectProduct(Vec<GroupExpr>),
    FreeProduct(Vec<GroupExpr>),
}

impl GroupExpr {
    pub fn atom(kind: AtomKind) -> Result<Self, GroupError> {
        GroupAtom::new(kind).map(GroupExpr::Atom)
    }

    pub fn direct(factors: Vec<GroupExpr>) -> Result<Self, GroupError> {
        if factors.len() < 2 {
            return Err(GroupError::Arity("direct product"));
        }
        Ok(GroupExpr::DirectProduct(factors))
    }

    pub fn free(factors: Vec<GroupExpr>) -> Result<Self, GroupError> {
        if factors.len() < 2 {
            return Err(GroupError::Arity("free product"));
        }
        if let Some(t) = factors.iter().find(|f| f.is_trivial()) {
            return Err(GroupError::TrivialFreeFactor(t.to_string()));
        }
        Ok(GroupExpr::FreeProduct(factors))
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            GroupExpr::Atom(a) => a.is_trivial(),
            GroupExpr::DirectProduct(fs) | GroupExpr::FreeProduct(fs) => fs.iter().all(GroupExpr::is_trivial),
        }
    }

    pub fn hom_rank(&self) -> usize {
        match self {
            GroupExpr::Atom(a) => a.hom_rank(),
            GroupExpr::DirectProduct(fs) | GroupExpr::FreeProduct(fs) => fs.iter().map(GroupExpr::hom_rank).sum(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            GroupExpr::Atom(a) => a.finite,
            GroupExpr::DirectProduct(fs) => fs.iter().all(GroupExpr::is_finite),
            GroupExpr::FreeProduct(_) => false,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupExpr::Atom(a) => a.abelian,
            GroupExpr::DirectProduct(fs) => fs.iter().all(GroupExpr::is_abelian),
            GroupExpr::FreeProduct(_) => false,
        }
    }

    pub fn is_torsion_free(&self) -> bool {
        match self {
            GroupExpr::Atom(a) => a.torsion_free(),
            GroupExpr::DirectProduct(fs) | GroupExpr::FreeProduct(fs) => fs.iter().all(GroupExpr::is_torsion_free),
        }
    }

    /// Whether the expression is isomorphic to `Z` on syntactic grounds.
    pub fn is_infinite_cyclic(&self) -> bool {
        match self {
            GroupExpr::Atom(a) => matches!(a.kind, AtomKind::FreeAbelian(1) | AtomKind::Free(1)),
            GroupExpr::DirectProduct(fs) => {
                let live: Vec<&GroupExpr> = fs.iter().filter(|f| !f.is_trivial()).collect();
                matches!(live[..], [f] if f.is_infinite_cyclic())
            }
            GroupExpr::FreeProduct(_) => false,
        }
    }

    pub fn freely_indecomposable(&self) -> bool {
        match self {
            GroupExpr::Atom(a) => a.freely_indecomposable,
            GroupExpr::DirectProduct(fs) => {
                let live: Vec<&GroupExpr> = fs.iter().filter(|f| !f.is_trivial()).collect();
                match live[..] {
                    [f] => f.freely_indecomposable(),
                    _ => true,
                }
            }
            GroupExpr::FreeProduct(_) => false,
        }
    }

    /// Largest `n` with the group of type `F_n`; `None` means `F_∞`.
    pub fn finiteness_length(&self) -> Option<u32> {
        match self {
            GroupExpr::Atom(a) => a.finiteness_length(),
            GroupExpr::DirectProduct(fs) | GroupExpr::FreeProduct(fs) => {
                fs.iter().filter_map(GroupExpr::finiteness_length).min()
            }
        }
    }

    pub fn is_type_f(&self, n: u32) -> bool {
        self.finiteness_length().is_none_or(|len| len >= n)
    }

    /// Factors of a direct product with nested direct products spliced in.
    pub fn direct_factors(&self) -> Vec<&GroupExpr> {
        match self {
            GroupExpr::DirectProduct(fs) => fs.iter().flat_map(GroupExpr::direct_factors).collect(),
            other => vec![other],
        }
    }

    /// Factors of a free product with nested free products spliced in and
    /// free groups of rank `n` replaced by `n` copies of `Z`.
    pub fn free_factors(&self) -> Vec<GroupExpr> {
        match self {
            GroupExpr::FreeProduct(fs) => fs.iter().flat_map(GroupExpr::free_factors).collect(),
            GroupExpr::Atom(GroupAtom { kind: AtomKind::Free(n), .. }) => {
                let z = GroupExpr::atom(AtomKind::FreeAbelian(1)).expect("Z is an atom");
                vec![z; *n as usize]
            }
            other => vec![other.clone()],
        }
    }

    /// Rebuilds a direct product from factors, collapsing a single factor.
    pub fn product_of(mut factors: Vec<GroupExpr>) -> GroupExpr {
        if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            GroupExpr::DirectProduct(factors)
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, fs: &[GroupExpr], op: &str, nested: fn(&GroupExpr) -> bool| {
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                if nested(g) {
                    write!(f, "({g})")?;
                } else {
                    write!(f, "{g}")?;
                }
            }
            Ok(())
        };
        match self {
            GroupExpr::Atom(a) => write!(f, "{a}"),
            GroupExpr::DirectProduct(fs) => show(f, fs, "x", |g| !matches!(g, GroupExpr::Atom(_))),
            GroupExpr::FreeProduct(fs) => show(f, fs, "*", |g| matches!(g, GroupExpr::FreeProduct(_))),
        }
    }
}
