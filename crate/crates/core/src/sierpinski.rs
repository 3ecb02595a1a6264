//! Sheaves on the Sierpiński space as arrows `X(⊥) -> X(⊤)`.
//!
//! Subterminals are pairs `(u⊥, u⊤)` with `u⊥ <= u⊤`; the generic point is
//! `(0, 1)`. Boolean algebras internal to the arrow category have a
//! restriction homomorphism from the `⊥` stalk to the `⊤` stalk, so their
//! spectra map contravariantly, `⊤` to `⊥`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expspace::two;
use crate::order::{closed_nucleus, open_nucleus, sublocale_join, BoolAlg, DistLattice, ElemId, FinPoset, Nucleus};
use crate::points::{prime_filters, PointSet};

/// An object of the arrow category: two finite stalks and a total map between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowObject {
    pub stalk_bot: Vec<String>,
    pub stalk_top: Vec<String>,
    pub transition: Vec<usize>,
}

impl ArrowObject {
    pub fn new(stalk_bot: Vec<String>, stalk_top: Vec<String>, transition: Vec<usize>) -> Result<Self> {
        if transition.len() != stalk_bot.len() {
            return Err(Error::PreconditionFailed("transition must be defined on all of the bottom stalk".into()));
        }
        if let Some(&bad) = transition.iter().find(|&&t| t >= stalk_top.len()) {
            return Err(Error::UnknownElement(format!("top stalk element #{bad}")));
        }
        Ok(ArrowObject { stalk_bot, stalk_top, transition })
    }

    pub fn empty() -> Self {
        ArrowObject { stalk_bot: Vec::new(), stalk_top: Vec::new(), transition: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.stalk_bot.is_empty() && self.stalk_top.is_empty()
    }

    /// Stalk sizes `(|X(⊥)|, |X(⊤)|)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.stalk_bot.len(), self.stalk_top.len())
    }
}

/// A subobject of `1 = (1 -> 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subterminal {
    pub bot: bool,
    pub top: bool,
}

impl Subterminal {
    pub fn new(bot: bool, top: bool) -> Result<Self> {
        if bot && !top {
            return Err(Error::PreconditionFailed("a subterminal with u⊥ = 1 needs u⊤ = 1".into()));
        }
        Ok(Subterminal { bot, top })
    }

    pub const EMPTY: Subterminal = Subterminal { bot: false, top: false };
    /// The generic point `(0 -> 1)`.
    pub const GENERIC: Subterminal = Subterminal { bot: false, top: true };
    pub const FULL: Subterminal = Subterminal { bot: true, top: true };

    pub fn all() -> [Subterminal; 3] {
        [Self::EMPTY, Self::GENERIC, Self::FULL]
    }

    /// Position in the chain `(0,0) < (0,1) < (1,1)`.
    pub fn rank(self) -> usize {
        self.bot as usize + self.top as usize
    }

    pub fn from_rank(r: usize) -> Result<Self> {
        Self::all().get(r).copied().ok_or_else(|| Error::UnknownElement(format!("subterminal #{r}")))
    }

    pub fn meet(self, other: Subterminal) -> Subterminal {
        Subterminal { bot: self.bot && other.bot, top: self.top && other.top }
    }

    pub fn leq(self, other: Subterminal) -> bool {
        self.meet(other) == self
    }

    /// As an arrow object: `u⊥ -> u⊤`.
    pub fn as_arrow(self) -> ArrowObject {
        let stalk = |b: bool| if b { vec!["*".to_owned()] } else { Vec::new() };
        let transition = if self.bot { vec![0] } else { Vec::new() };
        ArrowObject { stalk_bot: stalk(self.bot), stalk_top: stalk(self.top), transition }
    }

    /// Written `(b,t)` with digits.
    pub fn label(self) -> String {
        format!("({},{})", self.bot as u8, self.top as u8)
    }
}

/// The largest subterminal disjoint from `u`.
pub fn heyting_neg(u: Subterminal) -> Subterminal {
    Subterminal::all()
        .into_iter()
        .filter(|&v| u.meet(v) == Subterminal::EMPTY)
        .max_by_key(|v| v.rank())
        .expect("(0,0) qualifies")
}

/// The frame of opens of the Sierpiński space: subterminals ordered by rank.
pub fn opens() -> DistLattice {
    DistLattice::from_poset(&FinPoset::chain(3)).expect("3-chain")
}

/// Open and closed nuclei of `u` on [`opens`], and their sublocale join.
pub fn open_closed_join(u: Subterminal) -> Result<(Nucleus, Nucleus, Nucleus)> {
    let l = opens();
    let open = open_nucleus(&l, u.rank());
    let closed = closed_nucleus(&l, u.rank());
    let join = sublocale_join(&open, &closed)?;
    Ok((open, closed, join))
}

/// A Boolean algebra in the arrow category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalBoolAlg {
    pub alg_bot: BoolAlg,
    pub alg_top: BoolAlg,
    pub restriction: Vec<ElemId>,
}

impl InternalBoolAlg {
    pub fn new(alg_bot: BoolAlg, alg_top: BoolAlg, restriction: Vec<ElemId>) -> Result<Self> {
        if !alg_bot.is_homomorphism(&alg_top, &restriction) {
            return Err(Error::PreconditionFailed("restriction is not a Boolean homomorphism".into()));
        }
        Ok(InternalBoolAlg { alg_bot, alg_top, restriction })
    }

    /// The same algebra at both stalks with the identity restriction.
    pub fn constant(a: &BoolAlg) -> Self {
        InternalBoolAlg { alg_bot: a.clone(), alg_top: a.clone(), restriction: a.elements().collect() }
    }
}

/// `0^u` stalkwise: `2` modulo identifying `0` and `1` wherever `u` holds.
pub fn internal_zero_exp(u: Subterminal) -> InternalBoolAlg {
    let quotient = |phi: bool| {
        let mut congruence = vec![(0, 0), (1, 1)];
        if phi {
            congruence.extend([(0, 1), (1, 0)]);
        }
        two().quotient(&congruence).expect("a congruence on 2")
    };
    let (alg_bot, proj_bot) = quotient(u.bot);
    let (alg_top, proj_top) = quotient(u.top);
    // 2 -> 2/u⊥ is onto, and u⊥ <= u⊤, so 2/u⊥ -> 2/u⊤ is induced.
    let mut restriction = vec![0; alg_bot.len()];
    for x in 0..2 {
        restriction[proj_bot[x]] = proj_top[x];
    }
    InternalBoolAlg::new(alg_bot, alg_top, restriction).expect("induced map is a homomorphism")
}

/// Prime filters at each stalk and the map sending a `⊤` point to its
/// preimage under restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrewiseSpec {
    pub points_bot: PointSet,
    pub points_top: PointSet,
    pub fibre_map: Vec<usize>,
}

impl FibrewiseSpec {
    pub fn counts(&self) -> (usize, usize) {
        (self.points_bot.len(), self.points_top.len())
    }
}

pub fn fibrewise_spec(b: &InternalBoolAlg) -> FibrewiseSpec {
    let points_bot = prime_filters(b.alg_bot.lattice());
    let points_top = prime_filters(b.alg_top.lattice());
    let fibre_map = points_top
        .points
        .iter()
        .map(|q| {
            let pre: Vec<usize> = b.alg_bot.elements().filter(|&x| q.contains(b.restriction[x])).collect();
            points_bot
                .points
                .iter()
                .position(|p| p.ones().eq(pre.iter().copied()))
                .expect("preimage of a prime filter is prime")
        })
        .collect();
    FibrewiseSpec { points_bot, points_top, fibre_map }
}

/// Whether some function from the `⊥` points to the `⊤` points exists.
pub fn opfibration_check(points_bot: usize, points_top: usize) -> bool {
    points_bot == 0 || points_top > 0
}

/// The largest arrow object with stalkwise injections into the point data
/// whose transition lies over the fibre map: all `⊤` points, and the `⊥`
/// points hit by the fibre map, each sent to its least preimage.
pub fn discrete_coreflection(s: &FibrewiseSpec) -> ArrowObject {
    let name = |p: &PointSet, i: usize| format!("p{i}:{{{}}}", p.iter_named().nth(i).unwrap_or_default().join(","));
    let stalk_top: Vec<String> = (0..s.points_top.len()).map(|i| name(&s.points_top, i)).collect();
    let mut stalk_bot = Vec::new();
    let mut transition = Vec::new();
    for p in 0..s.points_bot.len() {
        if let Some(q) = s.fibre_map.iter().position(|&b| b == p) {
            stalk_bot.push(name(&s.points_bot, p));
            transition.push(q);
        }
    }
    ArrowObject { stalk_bot, stalk_top, transition }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkPair {
    pub bot: usize,
    pub top: usize,
}

/// Every quantity of the closed complement of the generic point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedComplementReport {
    pub generic_point: StalkPair,
    pub heyting_negation: StalkPair,
    pub zero_exp_algebra_sizes: StalkPair,
    pub zero_exp_restriction: Vec<usize>,
    pub fibre_points: StalkPair,
    pub fibre_map: Vec<usize>,
    pub opfibration: bool,
    pub discrete_coreflection: ArrowObject,
    pub coreflection_empty: bool,
}

pub fn closed_complement_report() -> ClosedComplementReport {
    let p = Subterminal::GENERIC;
    let pair = |u: Subterminal| StalkPair { bot: u.bot as usize, top: u.top as usize };
    let b = internal_zero_exp(p);
    let s = fibrewise_spec(&b);
    let (nb, nt) = s.counts();
    let core = discrete_coreflection(&s);
    ClosedComplementReport {
        generic_point: pair(p),
        heyting_negation: pair(heyting_neg(p)),
        zero_exp_algebra_sizes: StalkPair { bot: b.alg_bot.len(), top: b.alg_top.len() },
        zero_exp_restriction: b.restriction.clone(),
        fibre_points: StalkPair { bot: nb, top: nt },
        fibre_map: s.fibre_map.clone(),
        opfibration: opfibration_check(nb, nt),
        coreflection_empty: core.is_empty(),
        discrete_coreflection: core,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::fin_powerset;

    #[test]
    fn negations() {
        assert_eq!(heyting_neg(Subterminal::FULL), Subterminal::EMPTY);
        assert_eq!(heyting_neg(Subterminal::EMPTY), Subterminal::FULL);
        assert_eq!(heyting_neg(Subterminal::GENERIC), Subterminal::EMPTY);
        assert!(Subterminal::new(true, false).is_err());
    }

    #[test]
    fn zero_exp_stalks() {
        let sizes = |u| {
            let b = internal_zero_exp(u);
            (b.alg_bot.len(), b.alg_top.len())
        };
        assert_eq!(sizes(Subterminal::GENERIC), (2, 1));
        assert_eq!(sizes(Subterminal::EMPTY), (2, 2));
        assert_eq!(sizes(Subterminal::FULL), (1, 1));
    }

    #[test]
    fn spectra() {
        let s = fibrewise_spec(&internal_zero_exp(Subterminal::GENERIC));
        assert_eq!(s.counts(), (1, 0));
        assert!(!opfibration_check(1, 0));
        assert!(discrete_coreflection(&s).is_empty());
        let s = fibrewise_spec(&internal_zero_exp(Subterminal::EMPTY));
        assert_eq!((s.counts(), s.fibre_map.clone()), ((1, 1), vec![0]));
        assert_eq!(discrete_coreflection(&s).counts(), (1, 1));
        let s = fibrewise_spec(&InternalBoolAlg::constant(&fin_powerset(&["a", "b"]).unwrap()));
        assert_eq!((s.counts(), s.fibre_map.clone()), ((2, 2), vec![0, 1]));
    }

    #[test]
    fn open_and_closed_cover_the_space() {
        for u in Subterminal::all() {
            assert_eq!(opens().name(u.rank()), u.rank().to_string());
            let (_, _, join) = open_closed_join(u).unwrap();
            assert!(join.is_identity());
        }
    }

    #[test]
    fn report() {
        let r = closed_complement_report();
        assert_eq!((r.fibre_points.bot, r.fibre_points.top), (1, 0));
        assert!(!r.opfibration && r.coreflection_empty);
    }
}
