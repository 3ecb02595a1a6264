//! Propositional geometric theories presenting frames, formal topologies and
//! GRD-systems, and their Lindenbaum algebras.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::bits;
use crate::error::{Error, Result};
use crate::order::{DistLattice, ElemId, FinPoset};
use crate::points::enumerate_points;

/// `⋀ antecedent ⊢ ⋁_i ⋀ consequent[i]`, symbols given by signature position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropSequent {
    pub antecedent: Vec<usize>,
    pub consequent: Vec<Vec<usize>>,
}

impl PropSequent {
    pub fn new(antecedent: Vec<usize>, consequent: Vec<Vec<usize>>) -> Self {
        PropSequent { antecedent, consequent }
    }

    fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.antecedent.iter().chain(self.consequent.iter().flatten()).copied()
    }

    /// Whether the set `model` satisfies the sequent.
    pub fn holds_in(&self, model: &FixedBitSet) -> bool {
        !self.antecedent.iter().all(|&s| model.contains(s))
            || self.consequent.iter().any(|d| d.iter().all(|&s| model.contains(s)))
    }
}

/// A propositional geometric theory in coherent normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropTheory {
    symbols: Vec<String>,
    axioms: Vec<PropSequent>,
}

impl PropTheory {
    pub fn new(symbols: Vec<String>, axioms: Vec<PropSequent>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateElement(s.clone()));
            }
        }
        for ax in &axioms {
            if let Some(bad) = ax.symbols().find(|&s| s >= symbols.len()) {
                return Err(Error::UnknownSymbol(format!("#{bad}")));
            }
        }
        Ok(PropTheory { symbols, axioms })
    }

    /// Builds a theory from axioms written with symbol names.
    pub fn from_named<S: AsRef<str>>(symbols: &[S], axioms: &[(Vec<S>, Vec<Vec<S>>)]) -> Result<Self> {
        let index: HashMap<&str, usize> = symbols.iter().enumerate().map(|(i, s)| (s.as_ref(), i)).collect();
        let look = |s: &S| index.get(s.as_ref()).copied().ok_or_else(|| Error::UnknownSymbol(s.as_ref().to_owned()));
        let axioms = axioms
            .iter()
            .map(|(ante, cons)| {
                let a = ante.iter().map(look).collect::<Result<Vec<_>>>()?;
                let c =
                    cons.iter().map(|d| d.iter().map(look).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
                Ok(PropSequent::new(a, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols.iter().map(|s| s.as_ref().to_owned()).collect(), axioms)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn axioms(&self) -> &[PropSequent] {
        &self.axioms
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn with_axiom(mut self, axiom: PropSequent) -> Result<Self> {
        if let Some(bad) = axiom.symbols().find(|&s| s >= self.symbols.len()) {
            return Err(Error::UnknownSymbol(format!("#{bad}")));
        }
        self.axioms.push(axiom);
        Ok(self)
    }

    pub fn is_model(&self, model: &FixedBitSet) -> bool {
        self.axioms.iter().all(|ax| ax.holds_in(model))
    }

    /// Renders a sequent as `a b |- c | d e`.
    pub fn render(&self, ax: &PropSequent) -> String {
        let conj = |v: &[usize]| {
            if v.is_empty() {
                "true".to_owned()
            } else {
                v.iter().map(|&s| self.symbols[s].as_str()).collect::<Vec<_>>().join(" ")
            }
        };
        let rhs = if ax.consequent.is_empty() {
            "false".to_owned()
        } else {
            ax.consequent.iter().map(|d| conj(d)).collect::<Vec<_>>().join(" | ")
        };
        format!("{} |- {}", conj(&ax.antecedent), rhs)
    }
}

/// An inductively generated formal topology on a finite base poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalTopology {
    pub base: FinPoset,
    pub covers: Vec<(usize, Vec<usize>)>,
}

impl FormalTopology {
    pub fn new(base: FinPoset, covers: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        for (a, u) in &covers {
            if let Some(&bad) = std::iter::once(a).chain(u.iter()).find(|&&x| x >= base.len()) {
                return Err(Error::UnknownElement(format!("#{bad}")));
            }
        }
        Ok(FormalTopology { base, covers })
    }
}

/// A generators/relations/disjuncts presentation `(G, R, D, λ, π, ρ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrdSystem {
    pub g: Vec<String>,
    pub r: Vec<String>,
    pub d: Vec<String>,
    /// `λ(r)` for each relation.
    pub lambda: Vec<Vec<usize>>,
    /// `π(d)` for each disjunct.
    pub pi: Vec<usize>,
    /// `ρ(d)` for each disjunct.
    pub rho: Vec<Vec<usize>>,
}

impl GrdSystem {
    pub fn new(
        g: Vec<String>,
        r: Vec<String>,
        d: Vec<String>,
        lambda: Vec<Vec<usize>>,
        pi: Vec<usize>,
        rho: Vec<Vec<usize>>,
    ) -> Result<Self> {
        for names in [&g, &r, &d] {
            let mut seen = HashSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(Error::DuplicateElement(dup.clone()));
            }
        }
        if lambda.len() != r.len() {
            return Err(Error::PreconditionFailed(format!("λ has {} entries for {} relations", lambda.len(), r.len())));
        }
        if pi.len() != d.len() || rho.len() != d.len() {
            return Err(Error::PreconditionFailed(format!("π and ρ need one entry per disjunct ({})", d.len())));
        }
        if let Some(&bad) = pi.iter().find(|&&x| x >= r.len()) {
            return Err(Error::UnknownElement(format!("relation #{bad}")));
        }
        if let Some(&bad) = lambda.iter().chain(rho.iter()).flatten().find(|&&x| x >= g.len()) {
            return Err(Error::UnknownElement(format!("generator #{bad}")));
        }
        Ok(GrdSystem { g, r, d, lambda, pi, rho })
    }

    /// Disjuncts with `π(d) = r`.
    pub fn disjuncts_of(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.d.len()).filter(move |&d| self.pi[d] == r)
    }
}

/// The theory whose models are the completely prime filters of `a`.
pub fn frame_to_theory(a: &DistLattice) -> PropTheory {
    let symbols = a.names();
    let mut axioms = Vec::new();
    for (x, y) in a.leq_pairs() {
        axioms.push(PropSequent::new(vec![x], vec![vec![y]]));
    }
    axioms.push(PropSequent::new(vec![], vec![vec![a.top()]]));
    for x in a.elements() {
        for y in x + 1..a.len() {
            axioms.push(PropSequent::new(vec![x, y], vec![vec![a.meet(x, y)]]));
        }
    }
    axioms.push(PropSequent::new(vec![a.bottom()], vec![]));
    for x in a.elements() {
        for y in x + 1..a.len() {
            axioms.push(PropSequent::new(vec![a.join(x, y)], vec![vec![x], vec![y]]));
        }
    }
    PropTheory { symbols, axioms }
}

/// The theory of formal points of `f`.
pub fn formal_topology_to_theory(f: &FormalTopology) -> PropTheory {
    let b = &f.base;
    let symbols = b.names().to_vec();
    let mut axioms = Vec::new();
    for (x, y) in b.pairs() {
        axioms.push(PropSequent::new(vec![x], vec![vec![y]]));
    }
    axioms.push(PropSequent::new(vec![], (0..b.len()).map(|x| vec![x]).collect()));
    for x in 0..b.len() {
        for y in x + 1..b.len() {
            let lower = (0..b.len()).filter(|&c| b.leq(c, x) && b.leq(c, y)).map(|c| vec![c]).collect();
            axioms.push(PropSequent::new(vec![x, y], lower));
        }
    }
    for (a, u) in &f.covers {
        axioms.push(PropSequent::new(vec![*a], u.iter().map(|&x| vec![x]).collect()));
    }
    PropTheory { symbols, axioms }
}

/// One axiom `⋀ λ(r) ⊢ ⋁_{π(d)=r} ⋀ ρ(d)` per relation.
pub fn grd_to_theory(s: &GrdSystem) -> PropTheory {
    let axioms = (0..s.r.len())
        .map(|r| PropSequent::new(s.lambda[r].clone(), s.disjuncts_of(r).map(|d| s.rho[d].clone()).collect()))
        .collect();
    PropTheory { symbols: s.g.clone(), axioms }
}

/// Largest Lindenbaum algebra [`lindenbaum`] will build.
pub const LINDENBAUM_BOUND: usize = 1 << 12;

/// A Lindenbaum algebra computed from model extents.
#[derive(Clone, Debug)]
pub struct Lindenbaum {
    pub lattice: DistLattice,
    /// The class of each signature symbol.
    pub generator: Vec<ElemId>,
    /// Extent of each lattice element, over the enumerated models.
    pub extents: Vec<FixedBitSet>,
    pub model_count: usize,
}

/// Lattice of symbol extents over all models, closed under finite meets and joins.
pub fn lindenbaum(t: &PropTheory) -> Result<Lindenbaum> {
    let points = enumerate_points(t)?;
    let m = points.len();
    let extent_of = |s: usize| bits::from_indices((0..m).filter(|&i| points.points[i].contains(s)), m);
    let gens: Vec<FixedBitSet> = (0..t.symbols.len()).map(extent_of).collect();
    let mut full = FixedBitSet::with_capacity(m);
    full.insert_range(..);
    // Meets of generators, then joins of those.
    let mut meets: Vec<FixedBitSet> = vec![full.clone()];
    let mut seen: HashSet<FixedBitSet> = meets.iter().cloned().collect();
    let mut i = 0;
    while i < meets.len() {
        for g in &gens {
            let mut x = meets[i].clone();
            x.intersect_with(g);
            if seen.insert(x.clone()) {
                meets.push(x);
                if meets.len() > LINDENBAUM_BOUND {
                    return Err(Error::bound("Lindenbaum algebra size", LINDENBAUM_BOUND));
                }
            }
        }
        i += 1;
    }
    let empty = FixedBitSet::with_capacity(m);
    let mut family: Vec<FixedBitSet> = vec![empty.clone()];
    let mut seen: HashSet<FixedBitSet> = family.iter().cloned().collect();
    let mut i = 0;
    while i < family.len() {
        for g in &meets {
            let mut x = family[i].clone();
            x.union_with(g);
            if seen.insert(x.clone()) {
                family.push(x);
                if family.len() > LINDENBAUM_BOUND {
                    return Err(Error::bound("Lindenbaum algebra size", LINDENBAUM_BOUND));
                }
            }
        }
        i += 1;
    }
    family.sort_by(bits::cmp_numeric);
    let position: HashMap<&FixedBitSet, usize> = family.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let generator: Vec<ElemId> = gens.iter().map(|g| position[g]).collect();
    let mut names: Vec<Option<String>> = vec![None; family.len()];
    for (s, &e) in generator.iter().enumerate() {
        if names[e].is_none() {
            names[e] = Some(t.symbols[s].clone());
        }
    }
    let taken: HashSet<String> = names.iter().flatten().cloned().collect();
    let bottom = 0;
    let top = position[&full];
    let fallback = |e: usize| {
        let base = if e == bottom {
            "⊥".to_owned()
        } else if e == top {
            "⊤".to_owned()
        } else {
            format!("e{e}")
        };
        let mut name = base.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        name
    };
    let names: Vec<String> = names.into_iter().enumerate().map(|(e, n)| n.unwrap_or_else(|| fallback(e))).collect();
    let lattice = DistLattice::from_set_family(&family, Some(names))?;
    Ok(Lindenbaum { lattice, generator, extents: family, model_count: m })
}
