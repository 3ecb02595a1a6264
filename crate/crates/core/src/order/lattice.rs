use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::poset::FinPoset;
use crate::bits;
use crate::error::{Error, Result};

pub type ElemId = usize;

/// Most join-irreducibles a lattice may have; codes are packed into a `u64`.
pub const MAX_IRREDUCIBLES: usize = 64;

#[derive(Clone, PartialEq, Eq)]
enum Naming {
    Explicit(Vec<String>),
    /// Element names are the code written as a set of these names.
    Subsets(Vec<String>),
}

/// A finite bounded distributive lattice.
///
/// Every element carries its Birkhoff code: the set of join-irreducibles
/// below it, as a bit mask. Meet and join are intersection and union of
/// codes, so no quadratic tables are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DistLattice {
    codes: Vec<u64>,
    index: HashMap<u64, ElemId>,
    irreducibles: Vec<ElemId>,
    naming: Naming,
    bottom: ElemId,
    top: ElemId,
}

impl DistLattice {
    /// Validates `poset` as a distributive lattice.
    pub fn from_poset(poset: &FinPoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        let name = |a: usize| poset.name(a).to_owned();
        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&c| poset.leq(c, a) && poset.leq(c, b)).collect();
                let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| poset.leq(d, c)));
                let upper: Vec<usize> = (0..n).filter(|&c| poset.leq(a, c) && poset.leq(b, c)).collect();
                let lub = upper.iter().copied().find(|&c| upper.iter().all(|&d| poset.leq(c, d)));
                let glb = glb.ok_or_else(|| Error::NotALattice(name(a), name(b), "greatest lower bound"))?;
                let lub = lub.ok_or_else(|| Error::NotALattice(name(a), name(b), "least upper bound"))?;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in y..n {
                    let lhs = meet[x * n + join[y * n + z]];
                    let rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                    if lhs != rhs {
                        return Err(Error::NotDistributive(name(x), name(y), name(z)));
                    }
                }
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|c| poset.leq(b, c))).expect("lattice has a bottom");
        // Join-irreducible: not bottom, exactly one lower cover.
        let covers = poset.covers();
        let irreducibles: Vec<usize> =
            (0..n).filter(|&j| j != bottom && covers.iter().filter(|&&(_, b)| b == j).count() == 1).collect();
        if irreducibles.len() > MAX_IRREDUCIBLES {
            return Err(Error::bound("join-irreducible count", MAX_IRREDUCIBLES));
        }
        let codes = (0..n)
            .map(|x| {
                irreducibles
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| poset.leq(j, x))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        Ok(Self::from_codes(codes, Naming::Explicit(poset.names().to_vec())))
    }

    /// Lattice of all subsets of `names`.
    pub fn powerset<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let p = FinPoset::from_relation(names, &[])?;
        downsets_bounded(&p, 1 << 16)
    }

    /// Validates a family of subsets closed under binary union and intersection.
    ///
    /// `names` names the family members; the order is kept.
    pub fn from_set_family(family: &[FixedBitSet], names: Option<Vec<String>>) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let names = names.unwrap_or_else(|| family.iter().map(|s| format!("{{{}}}", join_ones(s))).collect());
        let mut seen: HashMap<&FixedBitSet, usize> = HashMap::new();
        for (i, s) in family.iter().enumerate() {
            if seen.insert(s, i).is_some() {
                return Err(Error::DuplicateElement(names[i].clone()));
            }
        }
        for (a, sa) in family.iter().enumerate() {
            for sb in &family[a + 1..] {
                let mut m = sa.clone();
                m.intersect_with(sb);
                let mut j = sa.clone();
                j.union_with(sb);
                if !seen.contains_key(&m) {
                    return Err(Error::NotALattice(
                        names[a].clone(),
                        format!("{{{}}}", join_ones(sb)),
                        "meet in the family",
                    ));
                }
                if !seen.contains_key(&j) {
                    return Err(Error::NotALattice(
                        names[a].clone(),
                        format!("{{{}}}", join_ones(sb)),
                        "join in the family",
                    ));
                }
            }
        }
        let bottom = family.iter().position(|s| family.iter().all(|t| s.is_subset(t))).expect("closed family");
        let irreducibles: Vec<usize> = (0..family.len())
            .filter(|&e| {
                if e == bottom {
                    return false;
                }
                let mut below = FixedBitSet::with_capacity(family[e].len());
                for f in family.iter() {
                    if f.is_subset(&family[e]) && f != &family[e] {
                        below.union_with(f);
                    }
                }
                below != family[e]
            })
            .collect();
        if irreducibles.len() > MAX_IRREDUCIBLES {
            return Err(Error::bound("join-irreducible count", MAX_IRREDUCIBLES));
        }
        let codes = family
            .iter()
            .map(|x| {
                irreducibles
                    .iter()
                    .enumerate()
                    .filter(|&(_, &j)| family[j].is_subset(x))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        Ok(Self::from_codes(codes, Naming::Explicit(names)))
    }

    fn from_codes(codes: Vec<u64>, naming: Naming) -> Self {
        let index: HashMap<u64, ElemId> = codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        debug_assert_eq!(index.len(), codes.len());
        let all = codes.iter().fold(0u64, |acc, &c| acc | c);
        let none = codes.iter().fold(u64::MAX, |acc, &c| acc & c);
        let irreducibles = bits::mask_bits(all)
            .map(|k| {
                let least = codes.iter().filter(|&&c| c >> k & 1 == 1).fold(u64::MAX, |acc, &c| acc & c);
                index[&least]
            })
            .collect();
        DistLattice { bottom: index[&none], top: index[&all], codes, index, irreducibles, naming }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.len()
    }

    pub fn bottom(&self) -> ElemId {
        self.bottom
    }

    pub fn top(&self) -> ElemId {
        self.top
    }

    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.index[&(self.codes[a] & self.codes[b])]
    }

    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.index[&(self.codes[a] | self.codes[b])]
    }

    pub fn meet_all(&self, elems: impl IntoIterator<Item = ElemId>) -> ElemId {
        elems.into_iter().fold(self.top, |acc, e| self.meet(acc, e))
    }

    pub fn join_all(&self, elems: impl IntoIterator<Item = ElemId>) -> ElemId {
        elems.into_iter().fold(self.bottom, |acc, e| self.join(acc, e))
    }

    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.codes[a] & !self.codes[b] == 0
    }

    /// Bit `k` is set iff the `k`-th join-irreducible lies below the element.
    pub fn code(&self, a: ElemId) -> u64 {
        self.codes[a]
    }

    pub fn element_with_code(&self, code: u64) -> Option<ElemId> {
        self.index.get(&code).copied()
    }

    /// Join-irreducibles, position `k` carrying code bit `k`.
    pub fn irreducibles(&self) -> &[ElemId] {
        &self.irreducibles
    }

    pub fn join_irreducibles(&self) -> FixedBitSet {
        bits::from_indices(self.irreducibles.iter().copied(), self.len())
    }

    /// The join-irreducibles with the induced order.
    pub fn irreducible_poset(&self) -> FinPoset {
        let names: Vec<String> = self.irreducibles.iter().map(|&j| self.name(j)).collect();
        let mut pairs = Vec::new();
        for (a, &ja) in self.irreducibles.iter().enumerate() {
            for (b, &jb) in self.irreducibles.iter().enumerate() {
                if self.leq(ja, jb) {
                    pairs.push((a, b));
                }
            }
        }
        FinPoset::from_relation(&names, &pairs).expect("induced order")
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<ElemId> {
        self.irreducibles.iter().copied().filter(|&j| self.codes[j].count_ones() == 1).collect()
    }

    pub fn is_boolean(&self) -> bool {
        self.irreducibles.iter().all(|&j| self.codes[j].count_ones() == 1)
            && self.len() as u128 == 1u128 << self.irreducibles.len()
    }

    /// `max{y : a ∧ y <= x}`.
    pub fn heyting_implies(&self, a: ElemId, x: ElemId) -> ElemId {
        self.join_all(self.elements().filter(|&y| self.leq(self.meet(a, y), x)))
    }

    pub fn name(&self, a: ElemId) -> String {
        match &self.naming {
            Naming::Explicit(names) => names[a].clone(),
            Naming::Subsets(base) => {
                let parts: Vec<&str> = bits::mask_bits(self.codes[a]).map(|k| base[k].as_str()).collect();
                format!("{{{}}}", parts.join(","))
            }
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.elements().map(|a| self.name(a)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<ElemId> {
        self.elements().find(|&a| self.name(a) == name)
    }

    /// The same lattice with explicit element names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::PreconditionFailed(format!("{} names for {} elements", names.len(), self.len())));
        }
        let mut out = self.clone();
        out.naming = Naming::Explicit(names);
        Ok(out)
    }

    /// All pairs `(a, b)` with `a <= b`.
    pub fn leq_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.leq(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_poset(&self) -> FinPoset {
        let pairs = self.leq_pairs();
        FinPoset::from_relation(&self.names(), &pairs).expect("lattice order")
    }

    /// The interval `[bottom, e]` as a lattice, keeping element names.
    pub fn principal_ideal(&self, e: ElemId) -> DistLattice {
        let members: Vec<ElemId> = self.elements().filter(|&x| self.leq(x, e)).collect();
        let names = members.iter().map(|&x| self.name(x)).collect();
        let sets: Vec<FixedBitSet> = members.iter().map(|&x| bits::from_mask(self.codes[x], 64)).collect();
        Self::from_set_family(&sets, Some(names)).expect("intervals of distributive lattices")
    }

    /// An isomorphism `self -> other`, found by matching join-irreducibles.
    pub fn isomorphism(&self, other: &DistLattice) -> Option<Vec<ElemId>> {
        if self.len() != other.len() || self.irreducibles.len() != other.irreducibles.len() {
            return None;
        }
        let pi = self.irreducible_poset().isomorphism(&other.irreducible_poset())?;
        let map = self
            .codes
            .iter()
            .map(|&c| {
                let image = bits::mask_bits(c).fold(0u64, |acc, k| acc | 1 << pi[k]);
                other.index.get(&image).copied()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &DistLattice) -> bool {
        self.isomorphism(other).is_some()
    }
}

impl fmt::Debug for DistLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DistLattice({} elements, {} irreducibles)", self.len(), self.irreducibles.len())
    }
}

fn join_ones(s: &FixedBitSet) -> String {
    s.ones().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Down-closed subsets of `p` under inclusion.
pub fn downsets(p: &FinPoset) -> DistLattice {
    downsets_bounded(p, usize::MAX).expect("unbounded enumeration")
}

/// Like [`downsets`], failing once more than `limit` down-sets exist.
pub fn downsets_bounded(p: &FinPoset, limit: usize) -> Result<DistLattice> {
    if p.len() > MAX_IRREDUCIBLES {
        return Err(Error::bound("poset size", MAX_IRREDUCIBLES));
    }
    let order = p.linear_extension();
    let below: Vec<u64> =
        (0..p.len()).map(|a| bits::to_mask(&p.down_set(a)).expect("at most 64 elements") & !(1 << a)).collect();
    let mut codes = vec![0u64];
    for &a in &order {
        let mut extra = Vec::new();
        for &d in &codes {
            if d & below[a] == below[a] {
                extra.push(d | 1 << a);
            }
        }
        codes.extend(extra);
        if codes.len() > limit {
            return Err(Error::bound("down-set count", limit));
        }
    }
    codes.sort_unstable();
    Ok(DistLattice::from_codes(codes, Naming::Subsets(p.names().to_vec())))
}

/// Join-irreducible elements of `l`.
pub fn join_irreducibles(l: &DistLattice) -> FixedBitSet {
    l.join_irreducibles()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> DistLattice {
        DistLattice::from_poset(&FinPoset::chain(n)).unwrap()
    }

    #[test]
    fn downsets_of_small_posets() {
        assert_eq!(downsets(&FinPoset::antichain(0)).len(), 1);
        assert_eq!(downsets(&FinPoset::chain(1)).len(), 2);
        let l = downsets(&FinPoset::antichain(2));
        assert_eq!(l.len(), 4);
        assert!(l.is_boolean());
        assert_eq!(l.names(), vec!["{}", "{0}", "{1}", "{0,1}"]);
    }

    #[test]
    fn irreducibles_of_chain_and_square() {
        let two = chain(2);
        assert_eq!(two.irreducibles(), &[two.top()]);
        let sq = downsets(&FinPoset::antichain(2));
        assert_eq!(sq.atoms().len(), 2);
        assert_eq!(sq.irreducibles().len(), 2);
    }

    #[test]
    fn pentagon_and_diamond_are_rejected() {
        let n5 = FinPoset::from_named(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        assert!(matches!(DistLattice::from_poset(&n5), Err(Error::NotDistributive(..))));
        let m3 = FinPoset::from_named(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .unwrap();
        assert!(matches!(DistLattice::from_poset(&m3), Err(Error::NotDistributive(..))));
        let v = FinPoset::from_named(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        assert!(matches!(DistLattice::from_poset(&v), Err(Error::NotALattice(..))));
    }

    #[test]
    fn heyting_implication_on_chain() {
        let l = chain(3);
        assert_eq!(l.heyting_implies(1, 0), 0);
        assert_eq!(l.heyting_implies(1, 1), 2);
        assert_eq!(l.heyting_implies(2, 1), 1);
    }

    #[test]
    fn set_family_matches_poset_form() {
        let fam: Vec<FixedBitSet> = [0b000u64, 0b001, 0b011, 0b111].iter().map(|&m| bits::from_mask(m, 3)).collect();
        let l = DistLattice::from_set_family(&fam, None).unwrap();
        assert!(l.is_isomorphic(&chain(4)));
        assert!(!l.is_isomorphic(&downsets(&FinPoset::antichain(2))));
    }

    #[test]
    fn principal_ideal_of_square() {
        let sq = downsets(&FinPoset::antichain(2));
        let atom = sq.atoms()[0];
        assert_eq!(sq.principal_ideal(atom).len(), 2);
    }
}
