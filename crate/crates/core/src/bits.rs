//! Small helpers around [`FixedBitSet`] shared by the enumeration code.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

/// Compares two bit sets as binary numbers, bit `i` carrying weight `2^i`.
///
/// This is the order in which every point list in the crate is returned.
pub fn cmp_numeric(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    let len = a.len().max(b.len());
    for i in (0..len).rev() {
        match (a.contains(i), b.contains(i)) {
            (true, false) => return Ordering::Greater,
            (false, true) => return Ordering::Less,
            _ => {}
        }
    }
    Ordering::Equal
}

pub fn from_mask(mask: u64, len: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    for i in 0..len.min(64) {
        if mask >> i & 1 == 1 {
            set.insert(i);
        }
    }
    set
}

/// Packs a bit set into a `u64`; `None` if a member is at index 64 or above.
pub fn to_mask(set: &FixedBitSet) -> Option<u64> {
    let mut mask = 0u64;
    for i in set.ones() {
        if i >= 64 {
            return None;
        }
        mask |= 1 << i;
    }
    Some(mask)
}

pub fn from_indices(indices: impl IntoIterator<Item = usize>, len: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    for i in indices {
        set.insert(i);
    }
    set
}

pub fn mask_bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_order_matches_integer_order() {
        for a in 0u64..32 {
            for b in 0u64..32 {
                assert_eq!(cmp_numeric(&from_mask(a, 5), &from_mask(b, 5)), a.cmp(&b));
            }
        }
    }

    #[test]
    fn mask_round_trip() {
        let s = from_indices([0, 3, 7], 10);
        assert_eq!(to_mask(&s), Some(0b1000_1001));
        assert_eq!(from_mask(0b1000_1001, 10), s);
        assert_eq!(mask_bits(0b101).collect::<Vec<_>>(), vec![0, 2]);
    }
}
