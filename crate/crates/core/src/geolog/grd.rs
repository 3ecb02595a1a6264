use fixedbitset::FixedBitSet;

use super::emit::{bounded_forall_translate, constant_name, syntacticize_set, BoundedForall};
use super::model::FinModel;
use super::search::{expand, SearchOptions, Seed};
use super::syntax::{Formula, GeomTheory, Sequent, Term, VarDecl};
use crate::bits;
use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::present::GrdSystem;

/// Largest generator set for the predicate form.
pub const GRD_GENERATOR_BOUND: usize = 6;

/// The predicate form of a GRD system.
///
/// Sorts `G`, `R`, `D` house the three sets, with `lam: R -> FG`,
/// `pi: D -> R` and `rho: D -> FG` fixed by constant axioms, where `FG`
/// is the sort of finite subsets of `G`. A point is a unary predicate `F`
/// on `G` satisfying
/// `∀g∈lam(r). F(g) ⊢_r ∃d:D. pi(d) = r ∧ ∀g∈rho(d). F(g)`,
/// with both bounded quantifiers translated at bound `|G|`.
pub fn grd_predicate_theory(s: &GrdSystem) -> Result<GeomTheory> {
    if s.g.len() > GRD_GENERATOR_BOUND {
        return Err(Error::bound("generator count", GRD_GENERATOR_BOUND));
    }
    let mut t = GeomTheory::new();
    t.merge(&syntacticize_set("G", &s.g)?)?;
    t.merge(&syntacticize_set("R", &s.r)?)?;
    t.merge(&syntacticize_set("D", &s.d)?)?;
    let (g, r, d) = (t.sort("G")?, t.sort("R")?, t.sort("D")?);
    let fg = t.add_fin_sort("FG", g)?;
    let lam = t.add_func("lam", &[r], fg)?;
    let pi = t.add_func("pi", &[d], r)?;
    let rho = t.add_func("rho", &[d], fg)?;
    let f = t.add_pred("F", &[g])?;
    let kg = |i: usize| t.func(&constant_name("G", &s.g[i]));
    let kr = |i: usize| t.func(&constant_name("R", &s.r[i]));
    let kd = |i: usize| t.func(&constant_name("D", &s.d[i]));

    let mut fixed = Vec::new();
    for (i, gens) in s.lambda.iter().enumerate() {
        let lit = gens.iter().map(|&x| kg(x).map(Term::constant)).collect::<Result<Vec<_>>>()?;
        let lhs = Term::app(lam, vec![Term::constant(kr(i)?)]);
        fixed.push((format!("lam_{i}"), Formula::SetEq(lhs, lit)));
    }
    for (i, &target) in s.pi.iter().enumerate() {
        let lhs = Term::app(pi, vec![Term::constant(kd(i)?)]);
        fixed.push((format!("pi_{i}"), Formula::eq(lhs, Term::constant(kr(target)?))));
    }
    for (i, gens) in s.rho.iter().enumerate() {
        let lit = gens.iter().map(|&x| kg(x).map(Term::constant)).collect::<Result<Vec<_>>>()?;
        let lhs = Term::app(rho, vec![Term::constant(kd(i)?)]);
        fixed.push((format!("rho_{i}"), Formula::SetEq(lhs, lit)));
    }
    for (label, eq) in fixed {
        t.add_axiom(Sequent { label, vars: Vec::new(), context: 0, premise: Formula::Top, conclusion: eq })?;
    }

    // slots: 0 = r, 1 = g (premise), 2 = d, 3 = g (conclusion), then fresh
    let mut vars = vec![
        VarDecl { name: "r".into(), sort: r },
        VarDecl { name: "g".into(), sort: g },
        VarDecl { name: "d".into(), sort: d },
        VarDecl { name: "h".into(), sort: g },
    ];
    let n = s.g.len();
    let premise = bounded_forall_translate(
        &mut vars,
        &BoundedForall { var: 1, set: Term::app(lam, vec![Term::var(0)]), body: Formula::Pred(f, vec![Term::var(1)]) },
        n,
    );
    let inner = bounded_forall_translate(
        &mut vars,
        &BoundedForall { var: 3, set: Term::app(rho, vec![Term::var(2)]), body: Formula::Pred(f, vec![Term::var(3)]) },
        n,
    );
    let conclusion = Formula::exists(
        vec![2],
        Formula::and(vec![Formula::eq(Term::app(pi, vec![Term::var(2)]), Term::var(0)), inner]),
    );
    t.add_axiom(Sequent { label: "relation".into(), vars, context: 1, premise, conclusion })?;
    t.bounded.push("relation".into());
    Ok(t)
}

/// The model of everything but `F`, with each constant naming its own index.
pub fn grd_canonical_seed(s: &GrdSystem, t: &GeomTheory) -> Result<Seed> {
    let mut seed = Seed::empty(t);
    let (g, r, d, fg) = (t.sort("G")?, t.sort("R")?, t.sort("D")?, t.sort("FG")?);
    seed.sizes[g] = Some(s.g.len());
    seed.sizes[r] = Some(s.r.len());
    seed.sizes[d] = Some(s.d.len());
    seed.sizes[fg] = Some(1 << s.g.len());
    for (sort, names) in [("G", &s.g), ("R", &s.r), ("D", &s.d)] {
        for (i, name) in names.iter().enumerate() {
            seed.funcs[t.func(&constant_name(sort, name))?] = Some(vec![i]);
        }
    }
    let mask = |gens: &Vec<usize>| gens.iter().fold(0usize, |acc, &x| acc | 1 << x);
    seed.funcs[t.func("lam")?] = Some(s.lambda.iter().map(mask).collect());
    seed.funcs[t.func("pi")?] = Some(s.pi.clone());
    seed.funcs[t.func("rho")?] = Some(s.rho.iter().map(mask).collect());
    Ok(seed)
}

/// Points of the predicate form: the extents of `F` over all models
/// extending the canonical one.
pub fn grd_predicate_points(s: &GrdSystem) -> Result<PointSet> {
    let t = grd_predicate_theory(s)?;
    let seed = grd_canonical_seed(s, &t)?;
    let caps = vec![0; t.sorts.len()];
    let models: Vec<FinModel> = expand(&t, &seed, &caps, &SearchOptions::default())?;
    let f = t.pred("F")?;
    let n = s.g.len();
    let mut points: Vec<FixedBitSet> =
        models.iter().map(|m| bits::from_indices((0..n).filter(|&i| m.preds[f][i]), n)).collect();
    points.sort_by(bits::cmp_numeric);
    points.dedup();
    Ok(PointSet { signature: s.g.clone(), points })
}
