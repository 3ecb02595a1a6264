//! Exhaustive catalogues of small posets and distributive lattices.

use super::lattice::{downsets_bounded, DistLattice};
use super::poset::FinPoset;
use crate::bits;

/// Every naturally labelled poset on `0..n`: `i <= j` implies `i <= j` as integers.
///
/// Each poset appears once per natural labelling.
pub fn labelled_posets(n: usize) -> Vec<FinPoset> {
    let mut out = Vec::new();
    let mut downs: Vec<u64> = Vec::new();
    extend_posets(n, &mut downs, &mut |downs| {
        out.push(poset_from_downs(downs));
        true
    });
    out
}

/// One representative per isomorphism class of posets with `n` elements.
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    dedupe(labelled_posets(n), |a, b| a.isomorphism(b).is_some(), poset_profile)
}

/// One representative per isomorphism class of distributive lattices with at
/// most `max_len` elements, built as down-set lattices of posets.
pub fn distributive_lattices(max_len: usize) -> Vec<DistLattice> {
    let mut found: Vec<DistLattice> = Vec::new();
    let mut n = 0;
    loop {
        let mut any = false;
        let mut batch = Vec::new();
        let mut downs: Vec<u64> = Vec::new();
        extend_posets_pruned(n, max_len, &mut downs, &mut |downs| {
            any = true;
            let p = poset_from_downs(downs);
            if let Ok(l) = downsets_bounded(&p, max_len) {
                batch.push(l);
            }
        });
        if !any {
            break;
        }
        found.extend(dedupe(batch, DistLattice::is_isomorphic, lattice_profile));
        n += 1;
    }
    found.sort_by_key(|l| l.len());
    found
}

/// One representative per isomorphism class of distributive lattices with
/// exactly `n` elements, found by generating lattice orders directly.
///
/// Elements are added in a natural labelling starting from the bottom, each
/// prefix being a meet-subsemilattice; the last element becomes the top.
/// No down-set construction is involved.
pub fn distributive_lattices_direct(n: usize) -> Vec<DistLattice> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        let p = FinPoset::chain(1);
        return vec![DistLattice::from_poset(&p).expect("one element")];
    }
    let mut found = Vec::new();
    let mut downs: Vec<u64> = vec![1];
    grow_semilattice(n, &mut downs, &mut |downs| {
        let p = poset_from_downs(downs);
        if let Ok(l) = DistLattice::from_poset(&p) {
            found.push(l);
        }
    });
    dedupe(found, DistLattice::is_isomorphic, lattice_profile)
}

fn grow_semilattice(n: usize, downs: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
    let k = downs.len();
    if k == n - 1 {
        let all = (1u64 << k) - 1;
        downs.push(all | 1 << k);
        emit(downs);
        downs.pop();
        return;
    }
    let prefix = (1u64 << k) - 1;
    // Candidate strict down-sets: down-closed subsets of the prefix containing 0.
    let mut subset = prefix;
    loop {
        if subset & 1 == 1 && is_down_closed(downs, subset) && meets_exist(downs, subset) {
            downs.push(subset | 1 << k);
            grow_semilattice(n, downs, emit);
            downs.pop();
        }
        if subset == 0 {
            break;
        }
        subset = (subset - 1) & prefix;
    }
}

fn is_down_closed(downs: &[u64], subset: u64) -> bool {
    bits::mask_bits(subset).all(|a| downs[a] & !subset == 0)
}

/// The new element with strict down-set `d` must have a meet with every
/// existing `x`: `d ∩ ↓x` has a greatest element.
fn meets_exist(downs: &[u64], d: u64) -> bool {
    (0..downs.len()).all(|x| {
        let common = d & downs[x];
        bits::mask_bits(common).any(|m| downs[m] & common == common)
    })
}

fn poset_from_downs(downs: &[u64]) -> FinPoset {
    let names: Vec<String> = (0..downs.len()).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    for (b, &d) in downs.iter().enumerate() {
        for a in bits::mask_bits(d) {
            pairs.push((a, b));
        }
    }
    FinPoset::from_relation(&names, &pairs).expect("natural labellings are acyclic")
}

/// `downs[i]` is the down-set of `i` as a mask, including `i`.
fn extend_posets(n: usize, downs: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64]) -> bool) {
    let k = downs.len();
    if k == n {
        emit(downs);
        return;
    }
    let prefix = (1u64 << k) - 1;
    let mut subset = prefix;
    loop {
        if is_down_closed(downs, subset) {
            downs.push(subset | 1 << k);
            extend_posets(n, downs, emit);
            downs.pop();
        }
        if subset == 0 {
            break;
        }
        subset = (subset - 1) & prefix;
    }
}

/// As [`extend_posets`], skipping prefixes with more than `max_downsets` down-sets.
fn extend_posets_pruned(n: usize, max_downsets: usize, downs: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64])) {
    if count_downsets(downs, max_downsets + 1) > max_downsets {
        return;
    }
    let k = downs.len();
    if k == n {
        emit(downs);
        return;
    }
    let prefix = (1u64 << k) - 1;
    let mut subset = prefix;
    loop {
        if is_down_closed(downs, subset) {
            downs.push(subset | 1 << k);
            extend_posets_pruned(n, max_downsets, downs, emit);
            downs.pop();
        }
        if subset == 0 {
            break;
        }
        subset = (subset - 1) & prefix;
    }
}

fn count_downsets(downs: &[u64], stop: usize) -> usize {
    let mut sets = vec![0u64];
    for (a, &d) in downs.iter().enumerate() {
        let strict = d & !(1 << a);
        let extra: Vec<u64> = sets.iter().filter(|&&s| s & strict == strict).map(|&s| s | 1 << a).collect();
        sets.extend(extra);
        if sets.len() >= stop {
            return sets.len();
        }
    }
    sets.len()
}

fn poset_profile(p: &FinPoset) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = (0..p.len()).map(|a| (p.up_set(a).count_ones(..), p.down_set(a).count_ones(..))).collect();
    v.sort_unstable();
    v
}

fn lattice_profile(l: &DistLattice) -> Vec<(usize, usize)> {
    let mut v = poset_profile(&l.irreducible_poset());
    v.push((l.len(), usize::MAX));
    v
}

fn dedupe<T, K: Ord + Clone>(items: Vec<T>, iso: impl Fn(&T, &T) -> bool, key: impl Fn(&T) -> K) -> Vec<T> {
    let mut buckets: std::collections::BTreeMap<K, Vec<T>> = std::collections::BTreeMap::new();
    let mut order: Vec<(K, usize)> = Vec::new();
    for item in items {
        let k = key(&item);
        let bucket = buckets.entry(k.clone()).or_default();
        if bucket.iter().all(|other| !iso(other, &item)) {
            order.push((k, bucket.len()));
            bucket.push(item);
        }
    }
    let mut slots: std::collections::BTreeMap<K, Vec<Option<T>>> =
        buckets.into_iter().map(|(k, v)| (k, v.into_iter().map(Some).collect())).collect();
    order.into_iter().map(|(k, i)| slots.get_mut(&k).expect("bucket")[i].take().expect("taken once")).collect()
}
