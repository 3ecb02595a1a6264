use super::lattice::{DistLattice, ElemId};
use crate::error::{Error, Result};

/// Largest frame on which [`nuclei`] runs its exhaustive search.
pub const NUCLEI_BOUND: usize = 12;

/// A nucleus on a finite frame, standing for a sublocale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    frame: DistLattice,
    map: Vec<ElemId>,
}

impl Nucleus {
    /// Checks that `map` is inflationary, idempotent and meet-preserving.
    pub fn new(frame: &DistLattice, map: Vec<ElemId>) -> Result<Self> {
        if map.len() != frame.len() || map.iter().any(|&y| y >= frame.len()) {
            return Err(Error::NotANucleus("table is not a total map on the frame".into()));
        }
        for x in frame.elements() {
            if !frame.leq(x, map[x]) {
                return Err(Error::NotANucleus(format!("not inflationary at {}", frame.name(x))));
            }
            if map[map[x]] != map[x] {
                return Err(Error::NotANucleus(format!("not idempotent at {}", frame.name(x))));
            }
            for y in frame.elements() {
                if map[frame.meet(x, y)] != frame.meet(map[x], map[y]) {
                    return Err(Error::NotANucleus(format!(
                        "meet of {} and {} not preserved",
                        frame.name(x),
                        frame.name(y)
                    )));
                }
            }
        }
        Ok(Nucleus { frame: frame.clone(), map })
    }

    pub fn identity(frame: &DistLattice) -> Self {
        Nucleus { frame: frame.clone(), map: frame.elements().collect() }
    }

    /// The constant map to top: the empty sublocale.
    pub fn top(frame: &DistLattice) -> Self {
        Nucleus { frame: frame.clone(), map: vec![frame.top(); frame.len()] }
    }

    pub fn frame(&self) -> &DistLattice {
        &self.frame
    }

    pub fn map(&self) -> &[ElemId] {
        &self.map
    }

    pub fn apply(&self, x: ElemId) -> ElemId {
        self.map[x]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Fixed points of the nucleus: the frame of the sublocale.
    pub fn fixed_points(&self) -> Vec<ElemId> {
        self.frame.elements().filter(|&x| self.map[x] == x).collect()
    }
}

/// `x ↦ a → x`, the open sublocale of `a`.
pub fn open_nucleus(l: &DistLattice, a: ElemId) -> Nucleus {
    Nucleus { frame: l.clone(), map: l.elements().map(|x| l.heyting_implies(a, x)).collect() }
}

/// `x ↦ a ∨ x`, the closed sublocale complementing the open one of `a`.
pub fn closed_nucleus(l: &DistLattice, a: ElemId) -> Nucleus {
    Nucleus { frame: l.clone(), map: l.elements().map(|x| l.join(a, x)).collect() }
}

/// Join of sublocales: the pointwise meet of the nuclei.
pub fn sublocale_join(j1: &Nucleus, j2: &Nucleus) -> Result<Nucleus> {
    if j1.frame != j2.frame {
        return Err(Error::PreconditionFailed("nuclei live on different frames".into()));
    }
    let l = &j1.frame;
    let map = l.elements().map(|x| l.meet(j1.map[x], j2.map[x])).collect();
    Ok(Nucleus { frame: l.clone(), map })
}

/// Every nucleus on `l`, by exhaustive search over monotone inflationary tables.
///
/// The result is sorted by table.
pub fn nuclei(l: &DistLattice) -> Result<Vec<Nucleus>> {
    if l.len() > NUCLEI_BOUND {
        return Err(Error::bound("frame size for nucleus search", NUCLEI_BOUND));
    }
    let mut order: Vec<ElemId> = l.elements().collect();
    order.sort_by_key(|&x| (l.code(x).count_ones(), x));
    let mut map = vec![usize::MAX; l.len()];
    let mut out = Vec::new();
    search(l, &order, 0, &mut map, &mut out);
    out.sort();
    Ok(out.into_iter().map(|map| Nucleus { frame: l.clone(), map }).collect())
}

fn search(l: &DistLattice, order: &[ElemId], depth: usize, map: &mut Vec<ElemId>, out: &mut Vec<Vec<ElemId>>) {
    if depth == order.len() {
        out.push(map.clone());
        return;
    }
    let x = order[depth];
    for z in l.elements() {
        if !l.leq(x, z) {
            continue;
        }
        let assigned = &order[..depth];
        let ok = assigned.iter().all(|&y| {
            let jy = map[y];
            (!l.leq(y, x) || l.leq(jy, z))
                && (jy != x || z == x)
                && (map[l.meet(x, y)] == usize::MAX || map[l.meet(x, y)] == l.meet(z, jy))
        });
        if !ok {
            continue;
        }
        map[x] = z;
        if map[z] == usize::MAX || map[z] == z {
            search(l, order, depth + 1, map, out);
        }
        map[x] = usize::MAX;
    }
}
