use std::collections::BTreeSet;
use std::fmt;

use super::lattice::{DistLattice, ElemId};
use super::poset::FinPoset;
use crate::error::{Error, Result};

/// Default cap on the number of generators of a free Boolean algebra.
pub const FREE_GENERATOR_BOUND: usize = 4;

/// A finite Boolean algebra: a distributive lattice with a complement table.
#[derive(Clone, PartialEq, Eq)]
pub struct BoolAlg {
    base: DistLattice,
    complement: Vec<ElemId>,
}

impl BoolAlg {
    pub fn new(base: DistLattice) -> Result<Self> {
        let full = base.code(base.top());
        let complement = base
            .elements()
            .map(|a| base.element_with_code(full ^ base.code(a)).ok_or_else(|| Error::NotComplemented(base.name(a))))
            .collect::<Result<Vec<_>>>()?;
        Ok(BoolAlg { base, complement })
    }

    pub fn lattice(&self) -> &DistLattice {
        &self.base
    }

    pub fn into_lattice(self) -> DistLattice {
        self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> ElemId {
        self.base.bottom()
    }

    pub fn top(&self) -> ElemId {
        self.base.top()
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.base.meet(a, b)
    }

    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.base.join(a, b)
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.base.leq(a, b)
    }

    pub fn not(&self, a: ElemId) -> ElemId {
        self.complement[a]
    }

    pub fn atoms(&self) -> Vec<ElemId> {
        self.base.atoms()
    }

    pub fn name(&self, a: ElemId) -> String {
        self.base.name(a)
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        self.base.elements()
    }

    /// Whether `f: self -> other` preserves 0, 1, meet, join and complement.
    pub fn is_homomorphism(&self, other: &BoolAlg, f: &[ElemId]) -> bool {
        if f.len() != self.len() || f.iter().any(|&b| b >= other.len()) {
            return false;
        }
        if f[self.bottom()] != other.bottom() || f[self.top()] != other.top() {
            return false;
        }
        self.elements().all(|a| {
            f[self.not(a)] == other.not(f[a])
                && self.elements().all(|b| {
                    f[self.meet(a, b)] == other.meet(f[a], f[b]) && f[self.join(a, b)] == other.join(f[a], f[b])
                })
        })
    }

    /// Quotient by a congruence given as its full list of related pairs.
    ///
    /// Returns the quotient algebra and the projection table.
    pub fn quotient(&self, relation: &[(ElemId, ElemId)]) -> Result<(BoolAlg, Vec<ElemId>)> {
        let n = self.len();
        let mut rel = vec![false; n * n];
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            rel[a * n + b] = true;
        }
        let related = |a: usize, b: usize| rel[a * n + b];
        let name = |a: usize, b: usize| format!("({}, {})", self.name(a), self.name(b));
        for a in 0..n {
            if !related(a, a) {
                return Err(Error::NotACongruence(format!("{} missing", name(a, a))));
            }
        }
        for &(a, b) in relation {
            if !related(b, a) {
                return Err(Error::NotACongruence(format!("{} present but {} missing", name(a, b), name(b, a))));
            }
            if !related(self.not(a), self.not(b)) {
                return Err(Error::NotACongruence(format!("complement of {} not related", name(a, b))));
            }
            for c in 0..n {
                if related(b, c) && !related(a, c) {
                    return Err(Error::NotACongruence(format!("not transitive at {}", name(a, c))));
                }
                if !related(self.meet(a, c), self.meet(b, c)) || !related(self.join(a, c), self.join(b, c)) {
                    return Err(Error::NotACongruence(format!("{} not compatible with {}", name(a, b), self.name(c))));
                }
            }
        }
        // The class of 0 is the ideal below `i`; the quotient is the interval below `¬i`.
        let i = self.base.join_all((0..n).filter(|&a| related(a, self.bottom())));
        let keep = self.not(i);
        let image = self.base.principal_ideal(keep);
        let projection = self
            .elements()
            .map(|a| {
                let r = self.meet(a, keep);
                image.index_of(&self.name(r)).expect("interval member")
            })
            .collect();
        Ok((BoolAlg::new(image)?, projection))
    }

    /// An isomorphism `self -> other` respecting the complement.
    pub fn isomorphism(&self, other: &BoolAlg) -> Option<Vec<ElemId>> {
        self.base.isomorphism(&other.base)
    }
}

impl fmt::Debug for BoolAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolAlg({} elements, {} atoms)", self.len(), self.atoms().len())
    }
}

/// A Boolean algebra with a list of named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub algebra: BoolAlg,
    pub generators: Vec<(String, ElemId)>,
}

impl Generated {
    /// For each atom, the set of generator positions above it.
    fn signatures(&self) -> Vec<u64> {
        let a = &self.algebra;
        a.atoms()
            .into_iter()
            .map(|atom| {
                self.generators
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(_, g))| a.leq(atom, g))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect()
    }

    /// Whether the generators generate the whole algebra.
    pub fn is_generating(&self) -> bool {
        let sigs = self.signatures();
        sigs.iter().collect::<BTreeSet<_>>().len() == sigs.len()
    }

    /// Whether there is an isomorphism sending the `k`-th generator of `self`
    /// to the `k`-th generator of `other`.
    pub fn marked_isomorphic(&self, other: &Generated) -> bool {
        if self.generators.len() != other.generators.len() || self.generators.len() > 64 {
            return false;
        }
        if !self.is_generating() || !other.is_generating() {
            return false;
        }
        let left: BTreeSet<u64> = self.signatures().into_iter().collect();
        let right: BTreeSet<u64> = other.signatures().into_iter().collect();
        left == right
    }
}

/// The powerset algebra of a finite set.
pub fn fin_powerset<S: AsRef<str>>(names: &[S]) -> Result<BoolAlg> {
    BoolAlg::new(DistLattice::powerset(names)?)
}

/// The free Boolean algebra on `generators`, as sets of valuations.
pub fn free_boolean_algebra<S: AsRef<str>>(generators: &[S]) -> Result<Generated> {
    free_boolean_algebra_bounded(generators, FREE_GENERATOR_BOUND)
}

pub fn free_boolean_algebra_bounded<S: AsRef<str>>(generators: &[S], bound: usize) -> Result<Generated> {
    let k = generators.len();
    if k > bound {
        return Err(Error::bound("generator count", bound));
    }
    if k > FREE_GENERATOR_BOUND {
        return Err(Error::bound("generator count", FREE_GENERATOR_BOUND));
    }
    FinPoset::from_relation(generators, &[])?;
    let valuations: Vec<String> = (0..1usize << k)
        .map(|v| {
            let digits: String = (0..k).map(|i| if v >> i & 1 == 1 { '1' } else { '0' }).collect();
            format!("v{digits}")
        })
        .collect();
    let algebra = fin_powerset(&valuations)?;
    let gens = generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mask = (0..1usize << k).filter(|v| v >> i & 1 == 1).fold(0u64, |acc, v| acc | 1 << v);
            let id = algebra.lattice().element_with_code(mask).expect("every subset is present");
            (g.as_ref().to_owned(), id)
        })
        .collect();
    Ok(Generated { algebra, generators: gens })
}
