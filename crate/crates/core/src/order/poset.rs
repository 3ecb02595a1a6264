use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A finite partial order on the dense ids `0..n`, with a name per element.
///
/// Row `up[a]` holds every `b` with `a <= b`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    up: Vec<FixedBitSet>,
}

impl FinPoset {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    pub fn from_relation<S: AsRef<str>>(elements: &[S], pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_owned()).collect();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            up[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if up[a].contains(b) && up[b].contains(a) {
                    return Err(Error::AntisymmetryViolation(names[a].clone(), names[b].clone()));
                }
            }
        }
        Ok(FinPoset { names, up })
    }

    /// Same as [`FinPoset::from_relation`] with pairs given by element name.
    pub fn from_named<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let index: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, s)| (s.as_ref(), i)).collect();
        let lookup = |s: &S| index.get(s.as_ref()).copied().ok_or_else(|| Error::UnknownElement(s.as_ref().to_owned()));
        let pairs = pairs.iter().map(|(a, b)| Ok((lookup(a)?, lookup(b)?))).collect::<Result<Vec<_>>>()?;
        Self::from_relation(elements, &pairs)
    }

    /// The `n`-element chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relation(&names, &pairs).expect("chains are posets")
    }

    pub fn antichain(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::from_relation(&names, &[]).expect("antichains are posets")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for b in 0..self.len() {
            if self.leq(b, a) {
                set.insert(b);
            }
        }
        set
    }

    /// All pairs `(a, b)` with `a <= b`, including the reflexive ones.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |a| self.up[a].ones().map(move |b| (a, b)))
    }

    /// Strict covering pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].ones() {
                if a == b {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_down_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|a| (0..self.len()).all(|b| !self.leq(b, a) || set.contains(b)))
    }

    pub fn is_up_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|a| self.up[a].is_subset(set))
    }

    /// The order restricted to `subset`, renumbered in the given order.
    pub fn induced(&self, subset: &[usize]) -> FinPoset {
        let names: Vec<String> = subset.iter().map(|&a| self.names[a].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in subset.iter().enumerate() {
            for (j, &b) in subset.iter().enumerate() {
                if self.leq(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        FinPoset::from_relation(&names, &pairs).expect("restriction of a partial order")
    }

    /// Elements sorted so that every element comes after all elements below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (self.down_set(a).count_ones(..), a));
        order
    }

    /// An order isomorphism `self -> other` as an image table, by backtracking.
    pub fn isomorphism(&self, other: &FinPoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let profile = |p: &FinPoset, a: usize| (p.up[a].count_ones(..), p.down_set(a).count_ones(..));
        let left: Vec<_> = (0..n).map(|a| profile(self, a)).collect();
        let right: Vec<_> = (0..n).map(|a| profile(other, a)).collect();
        let mut l_sorted = left.clone();
        let mut r_sorted = right.clone();
        l_sorted.sort_unstable();
        r_sorted.sort_unstable();
        if l_sorted != r_sorted {
            return None;
        }
        let order = self.linear_extension();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        #[allow(clippy::too_many_arguments)]
        fn go(
            p: &FinPoset,
            q: &FinPoset,
            order: &[usize],
            depth: usize,
            left: &[(usize, usize)],
            right: &[(usize, usize)],
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if depth == order.len() {
                return true;
            }
            let a = order[depth];
            for b in 0..q.len() {
                if used[b] || left[a] != right[b] {
                    continue;
                }
                let consistent = order[..depth]
                    .iter()
                    .all(|&c| p.leq(a, c) == q.leq(b, image[c]) && p.leq(c, a) == q.leq(image[c], b));
                if !consistent {
                    continue;
                }
                image[a] = b;
                used[b] = true;
                if go(p, q, order, depth + 1, left, right, image, used) {
                    return true;
                }
                used[b] = false;
            }
            image[a] = usize::MAX;
            false
        }
        go(self, other, &order, 0, &left, &right, &mut image, &mut used).then_some(image)
    }
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> =
            self.covers().into_iter().map(|(a, b)| format!("{}<{}", self.names[a], self.names[b])).collect();
        write!(f, "FinPoset({:?}; {})", self.names, covers.join(" "))
    }
}

/// Reflexive-transitive closure as a [`FinPoset`].
pub fn poset_from_relation<S: AsRef<str>>(elements: &[S], pairs: &[(usize, usize)]) -> Result<FinPoset> {
    FinPoset::from_relation(elements, pairs)
}
