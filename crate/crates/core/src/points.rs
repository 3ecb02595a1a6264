//! Points of propositional theories, prime filters, and Stone duality.

use fixedbitset::FixedBitSet;

use crate::bits;
use crate::error::{Error, Result};
use crate::order::{fin_powerset, BoolAlg, DistLattice};
use crate::present::{frame_to_theory, lindenbaum, PropTheory};

/// Default cap on the signature size for [`enumerate_points`].
pub const POINT_SIGNATURE_BOUND: usize = 20;

/// Models of a theory, each a subset of the signature, in increasing
/// numeric order of their bit sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub signature: Vec<String>,
    pub points: Vec<FixedBitSet>,
}

impl PointSet {
    fn sorted(signature: Vec<String>, mut points: Vec<FixedBitSet>) -> Self {
        points.sort_by(bits::cmp_numeric);
        points.dedup();
        PointSet { signature, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, point: &FixedBitSet) -> bool {
        self.points.iter().any(|p| bits::cmp_numeric(p, point).is_eq())
    }

    /// Each point as the list of symbol names it contains.
    pub fn iter_named(&self) -> impl Iterator<Item = Vec<&str>> + '_ {
        self.points.iter().map(move |p| p.ones().map(|i| self.signature[i].as_str()).collect())
    }
}

pub fn enumerate_points(t: &PropTheory) -> Result<PointSet> {
    enumerate_points_bounded(t, POINT_SIGNATURE_BOUND)
}

/// All subsets of the signature satisfying every axiom.
///
/// Depth-first over symbols in signature order; an axiom is checked as soon
/// as its largest symbol has been decided.
pub fn enumerate_points_bounded(t: &PropTheory, bound: usize) -> Result<PointSet> {
    let n = t.symbols().len();
    if n > bound || n > 63 {
        return Err(Error::bound("signature size", bound.min(63)));
    }
    let mask = |v: &[usize]| v.iter().fold(0u64, |acc, &s| acc | 1 << s);
    // checks[k]: axioms decided once symbols 0..k are fixed.
    let mut checks: Vec<Vec<(u64, Vec<u64>)>> = vec![Vec::new(); n + 1];
    for ax in t.axioms() {
        let level = ax.antecedent.iter().chain(ax.consequent.iter().flatten()).map(|&s| s + 1).max().unwrap_or(0);
        checks[level].push((mask(&ax.antecedent), ax.consequent.iter().map(|d| mask(d)).collect()));
    }
    let ok = |level: usize, m: u64| {
        checks[level].iter().all(|(ante, disj)| m & ante != *ante || disj.iter().any(|d| m & d == *d))
    };
    let mut found = Vec::new();
    if ok(0, 0) {
        let mut stack = vec![(0usize, 0u64)];
        while let Some((k, m)) = stack.pop() {
            if k == n {
                found.push(m);
                continue;
            }
            for bit in [1u64 << k, 0] {
                let next = m | bit;
                if ok(k + 1, next) {
                    stack.push((k + 1, next));
                }
            }
        }
    }
    found.sort_unstable();
    let points = found.into_iter().map(|m| bits::from_mask(m, n)).collect();
    Ok(PointSet::sorted(t.symbols().to_vec(), points))
}

/// Prime filters of `l`: the up-set of each join-irreducible.
pub fn prime_filters(l: &DistLattice) -> PointSet {
    let points =
        l.irreducibles().iter().map(|&j| bits::from_indices(l.elements().filter(|&x| l.leq(j, x)), l.len())).collect();
    PointSet::sorted(l.names(), points)
}

/// A finite space, by one of its presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceRep {
    Discrete {
        carrier: Vec<String>,
    },
    /// `ideal_collapse` marks that the frame of opens, the ideal completion
    /// of the algebra, has been identified with the algebra itself.
    Stone {
        algebra: BoolAlg,
        ideal_collapse: bool,
    },
    Presented {
        theory: PropTheory,
    },
}

impl SpaceRep {
    pub fn kind(&self) -> &'static str {
        match self {
            SpaceRep::Discrete { .. } => "discrete",
            SpaceRep::Stone { .. } => "stone",
            SpaceRep::Presented { .. } => "presented",
        }
    }

    /// Global points of the space.
    pub fn points(&self) -> Result<PointSet> {
        match self {
            SpaceRep::Discrete { carrier } => {
                let n = carrier.len();
                Ok(PointSet::sorted(carrier.clone(), (0..n).map(|i| bits::from_indices([i], n)).collect()))
            }
            SpaceRep::Stone { algebra, .. } => Ok(prime_filters(algebra.lattice())),
            SpaceRep::Presented { theory } => enumerate_points(theory),
        }
    }
}

/// The Stone space of `a` and its points.
pub fn spec(a: &BoolAlg) -> (SpaceRep, PointSet) {
    let points = prime_filters(a.lattice());
    (SpaceRep::Stone { algebra: a.clone(), ideal_collapse: true }, points)
}

/// The spectrum of a distributive lattice; Stone when the lattice is Boolean,
/// otherwise presented by its prime-filter theory.
pub fn spec_lattice(l: &DistLattice) -> (SpaceRep, PointSet) {
    match BoolAlg::new(l.clone()) {
        Ok(b) => spec(&b),
        Err(_) => (SpaceRep::Presented { theory: frame_to_theory(l) }, prime_filters(l)),
    }
}

/// Clopens of a Stone or discrete space.
pub fn clop(s: &SpaceRep) -> Result<BoolAlg> {
    match s {
        SpaceRep::Discrete { carrier } => fin_powerset(carrier),
        SpaceRep::Stone { algebra, .. } => clop_of_stone(algebra),
        SpaceRep::Presented { theory } => {
            let lb = lindenbaum(theory)?;
            BoolAlg::new(lb.lattice).map_err(|_| {
                Error::NotSupported("clopens of a presented space whose Lindenbaum algebra is not Boolean".into())
            })
        }
    }
}

/// The algebra of extents `{p : b ∈ p}` over the prime filters of `b`,
/// with the element names of `b`. Fails if the extent map is not an
/// isomorphism onto the powerset of points.
fn clop_of_stone(b: &BoolAlg) -> Result<BoolAlg> {
    let pts = prime_filters(b.lattice());
    let k = pts.len();
    if k > 16 {
        return Err(Error::bound("point count for clopen computation", 16));
    }
    let extent = |e: usize| (0..k).filter(|&p| pts.points[p].contains(e)).fold(0u64, |acc, p| acc | 1 << p);
    let atoms = b.atoms();
    let mut atom_extents: Vec<u64> = atoms.iter().map(|&a| extent(a)).collect();
    for (i, &ext) in atom_extents.iter().enumerate() {
        if ext.count_ones() != 1 {
            return Err(Error::DualityFailure(format!(
                "atom {} has extent of size {}",
                b.name(atoms[i]),
                ext.count_ones()
            )));
        }
    }
    atom_extents.sort_unstable();
    atom_extents.dedup();
    if atom_extents.len() != k {
        return Err(Error::DualityFailure("atom extents do not separate the points".into()));
    }
    let point_names: Vec<String> = (0..k).map(|p| format!("p{p}")).collect();
    let power = DistLattice::powerset(&point_names)?;
    let mut names = vec![String::new(); power.len()];
    for e in b.elements() {
        let ext = extent(e);
        let via_atoms = atoms.iter().filter(|&&a| b.leq(a, e)).fold(0u64, |acc, &a| acc | extent(a));
        if ext != via_atoms {
            return Err(Error::DualityFailure(format!("extent of {} is not the union of its atoms", b.name(e))));
        }
        let slot = power.element_with_code(ext).expect("powerset holds every mask");
        names[slot] = b.name(e);
    }
    BoolAlg::new(power.renamed(names)?)
}

/// `|Y|` for a discrete space, after checking that `Spec(Fin Y)` has as many points.
pub fn discrete_stone_cardinality(y: &SpaceRep) -> Result<usize> {
    let SpaceRep::Discrete { carrier } = y else {
        return Err(Error::PreconditionFailed(format!("expected a discrete space, got a {} one", y.kind())));
    };
    let (_, pts) = spec(&fin_powerset(carrier)?);
    if pts.len() != carrier.len() {
        return Err(Error::DualityFailure(format!("Spec(Fin Y) has {} points for |Y| = {}", pts.len(), carrier.len())));
    }
    Ok(carrier.len())
}
