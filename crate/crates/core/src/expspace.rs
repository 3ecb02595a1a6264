//! Exponentials `Y^X` between finite discrete and Stone spaces.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::bits;
use crate::error::{Error, Result};
use crate::order::{fin_powerset, free_boolean_algebra, BoolAlg, DistLattice, ElemId, FinPoset, Generated};
use crate::points::{prime_filters, PointSet, SpaceRep};

/// Most functions `X -> Spec B` that [`exp_stone_of_discrete`] enumerates.
pub const FUNCTION_BOUND: usize = 4096;
/// Most atoms for which the clopen algebra is materialised.
pub const ATOM_BOUND: usize = 16;
/// Most partitions of unity [`exp_discrete_of_stone`] returns.
pub const PARTITION_BOUND: usize = 1 << 16;

/// `Y^X` for `X` discrete and `Y = Spec B`, described through its clopens.
#[derive(Clone, Debug)]
pub struct StoneExponential {
    pub exponent: Vec<String>,
    pub base: BoolAlg,
    /// Points of `Spec B`.
    pub base_points: PointSet,
    /// Every function `X -> Spec B`, as the list of point indices `f(x)`.
    pub functions: Vec<Vec<usize>>,
    /// Atoms of the algebra generated by the extents, as sets of functions.
    pub atoms: Vec<FixedBitSet>,
}

impl StoneExponential {
    /// `{f : b ∈ f(x)}`.
    pub fn generator_extent(&self, x: usize, b: ElemId) -> FixedBitSet {
        let n = self.functions.len();
        bits::from_indices((0..n).filter(|&f| self.base_points.points[self.functions[f][x]].contains(b)), n)
    }

    /// Points of `Y^X`: the atoms of the generated algebra.
    pub fn point_count(&self) -> usize {
        self.atoms.len()
    }

    /// Whether every point is a single function.
    pub fn separates_functions(&self) -> bool {
        self.atoms.iter().all(|a| a.count_ones(..) == 1)
    }

    fn atom_mask(&self, set: &FixedBitSet) -> u64 {
        self.atoms.iter().enumerate().filter(|(_, a)| a.is_subset(set)).fold(0u64, |acc, (k, _)| acc | 1 << k)
    }

    /// Name of a point of `Spec B`: its least element.
    pub fn base_point_name(&self, p: usize) -> String {
        let l = self.base.lattice();
        l.name(l.meet_all(self.base_points.points[p].ones()))
    }

    /// The clopen algebra, one atom per point, named by the functions.
    pub fn algebra(&self) -> Result<BoolAlg> {
        if self.atoms.len() > ATOM_BOUND {
            return Err(Error::bound("atoms of the exponential algebra", ATOM_BOUND));
        }
        let names: Vec<String> = self
            .atoms
            .iter()
            .map(|a| {
                a.ones()
                    .map(|f| {
                        let parts: Vec<String> = self.functions[f].iter().map(|&p| self.base_point_name(p)).collect();
                        format!("[{}]", parts.join(","))
                    })
                    .collect::<Vec<_>>()
                    .join("|")
            })
            .collect();
        BoolAlg::new(DistLattice::powerset(&names)?)
    }

    /// The element of [`StoneExponential::algebra`] for generator `(x, b)`.
    pub fn generator_element(&self, algebra: &BoolAlg, x: usize, b: ElemId) -> ElemId {
        let mask = self.atom_mask(&self.generator_extent(x, b));
        algebra.lattice().element_with_code(mask).expect("powerset holds every atom set")
    }
}

/// Clopens of `Y^X` for `X` discrete and `Y = Spec B`, generated by the
/// extents of the pairs `(x, b)`.
pub fn exp_stone_of_discrete<S: AsRef<str>>(x: &[S], b: &BoolAlg) -> Result<StoneExponential> {
    let exponent: Vec<String> = x.iter().map(|s| s.as_ref().to_owned()).collect();
    FinPoset::from_relation(&exponent, &[])?;
    let base_points = prime_filters(b.lattice());
    let k = base_points.len();
    let count = (k as u128).checked_pow(exponent.len() as u32).unwrap_or(u128::MAX);
    if count > FUNCTION_BOUND as u128 {
        return Err(Error::bound("function count |Spec B|^|X|", FUNCTION_BOUND));
    }
    let count = count as usize;
    let functions: Vec<Vec<usize>> = (0..count)
        .map(|mut code| {
            let mut f = vec![0; exponent.len()];
            for slot in f.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            f
        })
        .collect();
    let mut out = StoneExponential { exponent, base: b.clone(), base_points, functions, atoms: Vec::new() };
    // Partition refinement by membership in each generator extent.
    let mut atoms: Vec<FixedBitSet> = if count == 0 {
        Vec::new()
    } else {
        let mut all = FixedBitSet::with_capacity(count);
        all.insert_range(..);
        vec![all]
    };
    for xi in 0..out.exponent.len() {
        for e in b.elements() {
            let ext = out.generator_extent(xi, e);
            atoms = atoms
                .into_iter()
                .flat_map(|a| {
                    let mut inside = a.clone();
                    inside.intersect_with(&ext);
                    let mut outside = a;
                    outside.difference_with(&ext);
                    [inside, outside].into_iter().filter(|s| !s.is_clear())
                })
                .collect();
        }
    }
    atoms.sort_by_key(|p| p.ones().next());
    out.atoms = atoms;
    Ok(out)
}

/// Outcome of checking the generators-and-relations description of `Y^X`
/// for `Y` discrete Stone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    /// Valuations of `X × Y` satisfying the relations.
    pub presented_points: usize,
    pub computed_points: usize,
    /// The relations hold in the computed algebra.
    pub relations_hold: bool,
    /// The generators `(x, y)` alone separate the points.
    pub generators_generate: bool,
    /// Functions and satisfying valuations correspond, respecting generators.
    pub bijective: bool,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.relations_hold
            && self.generators_generate
            && self.bijective
            && self.presented_points == self.computed_points
    }
}

/// Compares `exp_stone_of_discrete(X, fin_powerset(Y))` with the algebra
/// generated by `X × Y` subject to `1 <= ⋁_y (x,y)` and `(x,y) ∧ (x,y') <= 0`.
pub fn check_discrete_presentation<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<PresentationCheck> {
    let b = fin_powerset(y)?;
    let exp = exp_stone_of_discrete(x, &b)?;
    let nx = x.len();
    let ny = y.len();
    if nx * ny > 20 {
        return Err(Error::bound("generator count |X|·|Y|", 20));
    }
    // Generator (x, y) is the extent of the singleton {y}.
    let singleton: Vec<ElemId> = (0..ny).map(|j| b.lattice().element_with_code(1 << j).expect("singleton")).collect();
    let gen_ext: Vec<Vec<FixedBitSet>> =
        (0..nx).map(|i| (0..ny).map(|j| exp.generator_extent(i, singleton[j])).collect()).collect();
    let n = exp.functions.len();
    let relations_hold = (0..nx).all(|i| {
        let mut cover = FixedBitSet::with_capacity(n);
        for e in &gen_ext[i] {
            cover.union_with(e);
        }
        cover.count_ones(..) == n && (0..ny).all(|j| (j + 1..ny).all(|k| gen_ext[i][j].is_disjoint(&gen_ext[i][k])))
    });
    let mut sigs = BTreeSet::new();
    let mut generators_generate = true;
    for f in 0..n {
        let sig: Vec<bool> =
            (0..nx).flat_map(|i| (0..ny).map(move |j| (i, j))).map(|(i, j)| gen_ext[i][j].contains(f)).collect();
        generators_generate &= sigs.insert(sig);
    }
    // Valuations v: X × Y -> 2, bit i*ny + j.
    let satisfying: Vec<u64> = (0..1u64 << (nx * ny))
        .filter(|v| (0..nx).all(|i| ((v >> (i * ny)) & ((1 << ny) - 1)).count_ones() == 1))
        .collect();
    let of_function = |f: usize| -> u64 {
        (0..nx).fold(0u64, |acc, i| {
            let p = exp.functions[f][i];
            let j =
                (0..ny).find(|&j| exp.base_points.points[p].contains(singleton[j])).expect("point contains an atom");
            acc | 1 << (i * ny + j)
        })
    };
    let images: BTreeSet<u64> = (0..n).map(of_function).collect();
    let respects = (0..n).all(|f| {
        let v = of_function(f);
        (0..nx).all(|i| (0..ny).all(|j| gen_ext[i][j].contains(f) == (v >> (i * ny + j) & 1 == 1)))
    });
    let bijective = respects && images.len() == n && images == satisfying.iter().copied().collect();
    Ok(PresentationCheck {
        presented_points: satisfying.len(),
        computed_points: exp.point_count(),
        relations_hold,
        generators_generate,
        bijective,
    })
}

/// A family of pairwise disjoint elements of `algebra`, indexed by `target`,
/// with join 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionOfUnity {
    pub target: Arc<Vec<String>>,
    pub algebra: Arc<BoolAlg>,
    pub assignment: Vec<ElemId>,
}

impl PartitionOfUnity {
    pub fn new(target: Arc<Vec<String>>, algebra: Arc<BoolAlg>, assignment: Vec<ElemId>) -> Result<Self> {
        if assignment.len() != target.len() || assignment.iter().any(|&a| a >= algebra.len()) {
            return Err(Error::PreconditionFailed("assignment must be a total map from the target".into()));
        }
        for (i, &a) in assignment.iter().enumerate() {
            for &b in &assignment[i + 1..] {
                if algebra.meet(a, b) != algebra.bottom() {
                    return Err(Error::PreconditionFailed(format!(
                        "{} and {} are not disjoint",
                        algebra.name(a),
                        algebra.name(b)
                    )));
                }
            }
        }
        if algebra.lattice().join_all(assignment.iter().copied()) != algebra.top() {
            return Err(Error::PreconditionFailed("components do not join to 1".into()));
        }
        Ok(PartitionOfUnity { target, algebra, assignment })
    }

    /// Pairs `(y, a)` with `a` nonzero.
    pub fn support(&self) -> Vec<(usize, ElemId)> {
        self.assignment.iter().copied().enumerate().filter(|&(_, a)| a != self.algebra.bottom()).collect()
    }

    /// The map `Spec A -> Y` it describes: prime filter index to target index.
    pub fn as_function(&self) -> Vec<usize> {
        let pts = prime_filters(self.algebra.lattice());
        pts.points
            .iter()
            .map(|p| {
                self.assignment.iter().position(|&a| p.contains(a)).expect("some component lies in each prime filter")
            })
            .collect()
    }
}

/// Every partition of unity of `a` indexed by `y`, in lexicographic order of
/// the assignment.
pub fn exp_discrete_of_stone<S: AsRef<str>>(a: &BoolAlg, y: &[S]) -> Result<Vec<PartitionOfUnity>> {
    let target: Arc<Vec<String>> = Arc::new(y.iter().map(|s| s.as_ref().to_owned()).collect());
    FinPoset::from_relation(&target, &[])?;
    let algebra = Arc::new(a.clone());
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(target.len());
    fn go(a: &BoolAlg, n: usize, used: ElemId, current: &mut Vec<ElemId>, out: &mut Vec<Vec<ElemId>>) -> Result<()> {
        if current.len() == n {
            if used == a.top() {
                if out.len() >= PARTITION_BOUND {
                    return Err(Error::bound("partition of unity count", PARTITION_BOUND));
                }
                out.push(current.clone());
            }
            return Ok(());
        }
        let last = current.len() + 1 == n;
        for e in a.elements() {
            if a.meet(e, used) != a.bottom() {
                continue;
            }
            if last && a.join(e, used) != a.top() {
                continue;
            }
            current.push(e);
            go(a, n, a.join(used, e), current, out)?;
            current.pop();
        }
        Ok(())
    }
    go(a, target.len(), a.bottom(), &mut current, &mut out)?;
    Ok(out
        .into_iter()
        .map(|assignment| PartitionOfUnity { target: target.clone(), algebra: algebra.clone(), assignment })
        .collect())
}

/// A relation `θ ⊆ Y × A` describing a map `Spec A -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapRelation {
    pub algebra: DistLattice,
    pub target: Vec<String>,
    pub theta: BTreeSet<(usize, ElemId)>,
}

impl MapRelation {
    /// Checks down-closure, `(y, 0)`, binary joins, disjointness across
    /// distinct `y`, and the finite cover.
    pub fn new(algebra: DistLattice, target: Vec<String>, theta: BTreeSet<(usize, ElemId)>) -> Result<Self> {
        let l = &algebra;
        let name = |&(y, a): &(usize, ElemId)| format!("({}, {})", target[y], l.name(a));
        if let Some(bad) = theta.iter().find(|&&(y, a)| y >= target.len() || a >= l.len()) {
            return Err(Error::PreconditionFailed(format!("pair ({}, #{}) out of range", bad.0, bad.1)));
        }
        for &(y, a) in &theta {
            if let Some(b) = l.elements().find(|&b| l.leq(b, a) && !theta.contains(&(y, b))) {
                return Err(Error::PreconditionFailed(format!(
                    "not down-closed: {} but not {}",
                    name(&(y, a)),
                    name(&(y, b))
                )));
            }
            for &(y2, a2) in &theta {
                if y2 == y && !theta.contains(&(y, l.join(a, a2))) {
                    return Err(Error::PreconditionFailed(format!(
                        "join of {} and {} missing",
                        name(&(y, a)),
                        name(&(y2, a2))
                    )));
                }
                if y2 != y && l.meet(a, a2) != l.bottom() {
                    return Err(Error::PreconditionFailed(format!(
                        "{} and {} overlap",
                        name(&(y, a)),
                        name(&(y2, a2))
                    )));
                }
            }
        }
        if let Some(y) = (0..target.len()).find(|&y| !theta.contains(&(y, l.bottom()))) {
            return Err(Error::PreconditionFailed(format!("({}, 0) missing", target[y])));
        }
        if l.join_all(theta.iter().map(|&(_, a)| a)) != l.top() {
            return Err(Error::PreconditionFailed("the relation does not cover 1".into()));
        }
        Ok(MapRelation { algebra, target, theta })
    }

    /// For Boolean algebras: the largest element related to each `y`.
    pub fn components(&self) -> Vec<ElemId> {
        (0..self.target.len())
            .map(|y| self.algebra.join_all(self.theta.iter().filter(|&&(z, _)| z == y).map(|&(_, a)| a)))
            .collect()
    }
}

/// `y φ̄₀ a` iff `a <= ⋁{b : (y, b) ∈ φ₀}`.
pub fn theta_closure(phi0: &[(usize, ElemId)], a: &DistLattice, y: &[String]) -> Result<MapRelation> {
    for &(z, b) in phi0 {
        if z >= y.len() || b >= a.len() {
            return Err(Error::PreconditionFailed(format!("pair ({z}, #{b}) out of range")));
        }
    }
    for &(z, b) in phi0 {
        for &(z2, b2) in phi0 {
            if z != z2 && a.meet(b, b2) != a.bottom() {
                return Err(Error::PreconditionFailed(format!(
                    "({}, {}) and ({}, {}) overlap",
                    y[z],
                    a.name(b),
                    y[z2],
                    a.name(b2)
                )));
            }
        }
    }
    if a.join_all(phi0.iter().map(|&(_, b)| b)) != a.top() {
        return Err(Error::PreconditionFailed("the relation does not cover 1".into()));
    }
    let mut theta = BTreeSet::new();
    for z in 0..y.len() {
        let bound = a.join_all(phi0.iter().filter(|&&(w, _)| w == z).map(|&(_, b)| b));
        for e in a.elements().filter(|&e| a.leq(e, bound)) {
            theta.insert((z, e));
        }
    }
    MapRelation::new(a.clone(), y.to_vec(), theta)
}

/// `θ₀ ≡ φ₀` iff `θ₀ ⊆ φ̄₀`.
pub fn theta_equiv(t0: &[(usize, ElemId)], p0: &[(usize, ElemId)], a: &DistLattice, y: &[String]) -> Result<bool> {
    let closure = theta_closure(p0, a, y)?;
    Ok(t0.iter().all(|pair| closure.theta.contains(pair)))
}

/// `2^(2^X)`: partitions of the clopens of `2^X` into two pieces, ordered by
/// the piece sent to 1, with generator `x` the evaluation map at `x`.
pub fn double_exp_two<S: AsRef<str>>(x: &[S]) -> Result<Generated> {
    if x.len() > 3 {
        return Err(Error::bound("exponent size", 3));
    }
    let two_points = ["0", "1"];
    let b = fin_powerset(&two_points)?;
    let inner = exp_stone_of_discrete(x, &b)?;
    let clop = inner.algebra()?;
    let maps = exp_discrete_of_stone(&clop, &two_points)?;
    let m = clop.atoms().len();
    let family: Vec<FixedBitSet> =
        maps.iter().map(|p| bits::from_mask(clop.lattice().code(p.assignment[1]), m)).collect();
    let names: Vec<String> = (0..maps.len()).map(|i| format!("m{i}")).collect();
    let algebra = BoolAlg::new(DistLattice::from_set_family(&family, Some(names))?)?;
    let one = b.lattice().element_with_code(0b10).expect("{1}");
    let generators = x
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let ev = inner.generator_element(&clop, i, one);
            let id = maps.iter().position(|p| p.assignment[1] == ev).expect("evaluation is a partition");
            (name.as_ref().to_owned(), id)
        })
        .collect();
    let out = Generated { algebra, generators };
    let free = free_boolean_algebra(x)?;
    if !out.marked_isomorphic(&free) {
        return Err(Error::DualityFailure("2^(2^X) is not the free Boolean algebra on X".into()));
    }
    Ok(out)
}

/// The 2-element algebra with elements named `0` and `1`.
pub fn two() -> BoolAlg {
    BoolAlg::new(DistLattice::from_poset(&FinPoset::chain(2)).expect("2-chain")).expect("2 is Boolean")
}

/// `0^X` for `X` the subsingleton with truth value `phi`: the Stone space
/// of `2` modulo `{(0,0), (1,1)} ∪ φ × {(0,1), (1,0)}`.
pub fn zero_exp(phi: bool) -> SpaceRep {
    let two = two();
    let mut congruence = vec![(0, 0), (1, 1)];
    if phi {
        congruence.extend([(0, 1), (1, 0)]);
    }
    let (algebra, _) = two.quotient(&congruence).expect("a congruence on 2");
    SpaceRep::Stone { algebra, ideal_collapse: true }
}

/// `0^X` for a discrete `X`: `phi` is whether `X` is inhabited.
pub fn zero_exp_discrete<S: AsRef<str>>(x: &[S]) -> SpaceRep {
    zero_exp(!x.is_empty())
}

/// `0^X` for `X = Spec A` Stone: the discrete space `{∅ | 0 = 1 in A}`.
pub fn zero_exp_stone(x: &SpaceRep) -> Result<SpaceRep> {
    let SpaceRep::Stone { algebra, .. } = x else {
        return Err(Error::PreconditionFailed(format!("expected a Stone space, got a {} one", x.kind())));
    };
    let maps = exp_discrete_of_stone::<&str>(algebra, &[])?;
    Ok(SpaceRep::Discrete { carrier: maps.iter().map(|_| "∅".to_owned()).collect() })
}

/// Whether the space has a global point.
pub fn is_inhabited(x: &SpaceRep) -> Result<bool> {
    Ok(!x.points()?.is_empty())
}
