use super::syntax::{Formula, GeomTheory, SequentBuilder, Slot, SortId, SortKind, Term, VarDecl};
use crate::error::{Error, Result};

/// Name of the constant for element `elem` of the set housed in `sort`.
pub fn constant_name(sort: &str, elem: &str) -> String {
    let clean: String = elem.chars().map(|c| if c.is_alphanumeric() || c == '_' { c } else { '_' }).collect();
    format!("{sort}_{clean}")
}

/// A sort standing for the finite set `elems`, one constant per element,
/// a covering axiom and a distinctness axiom for every pair.
pub fn syntacticize_set<S: AsRef<str>>(sort: &str, elems: &[S]) -> Result<GeomTheory> {
    let mut t = GeomTheory::new();
    add_set(&mut t, sort, elems)?;
    Ok(t)
}

fn add_set<S: AsRef<str>>(t: &mut GeomTheory, sort: &str, elems: &[S]) -> Result<Vec<usize>> {
    let s = t.add_sort(sort)?;
    let consts = elems.iter().map(|e| t.add_const(&constant_name(sort, e.as_ref()), s)).collect::<Result<Vec<_>>>()?;
    let mut b = SequentBuilder::new();
    let x = b.context("x", s);
    let cover = Formula::or(consts.iter().map(|&k| Formula::eq(Term::var(x), Term::constant(k))).collect());
    t.add_axiom(b.finish(&format!("{sort}_cover"), Formula::Top, cover))?;
    for i in 0..consts.len() {
        for j in i..consts.len() {
            let conclusion = if i == j { Formula::Top } else { Formula::Bottom };
            let premise = Formula::eq(Term::constant(consts[i]), Term::constant(consts[j]));
            t.add_axiom(SequentBuilder::new().finish(&format!("{sort}_distinct_{i}_{j}"), premise, conclusion))?;
        }
    }
    Ok(consts)
}

/// Both sets, plus `func` with `func(κ_a) = λ_{u(a)}` for each `a`.
///
/// When `dom_sort == cod_sort` the two element lists must agree and one
/// sort is emitted.
pub fn syntacticize_function<S: AsRef<str>>(
    func: &str,
    dom_sort: &str,
    dom: &[S],
    cod_sort: &str,
    cod: &[S],
    u: &[usize],
) -> Result<GeomTheory> {
    if u.len() != dom.len() {
        return Err(Error::PreconditionFailed(format!("{func}: {} values for {} arguments", u.len(), dom.len())));
    }
    if let Some(&bad) = u.iter().find(|&&v| v >= cod.len()) {
        return Err(Error::UnknownElement(format!("{func}: value #{bad}")));
    }
    let mut t = GeomTheory::new();
    let kappa = add_set(&mut t, dom_sort, dom)?;
    let lambda = if dom_sort == cod_sort {
        if dom.iter().map(AsRef::as_ref).ne(cod.iter().map(AsRef::as_ref)) {
            return Err(Error::PreconditionFailed(format!("{dom_sort} given two different element lists")));
        }
        kappa.clone()
    } else {
        add_set(&mut t, cod_sort, cod)?
    };
    let f = t.add_func(func, &[t.sort(dom_sort)?], t.sort(cod_sort)?)?;
    for (a, &k) in kappa.iter().enumerate() {
        let eq = Formula::eq(Term::app(f, vec![Term::constant(k)]), Term::constant(lambda[u[a]]));
        t.add_axiom(SequentBuilder::new().finish(&format!("{func}_{a}"), Formula::Top, eq))?;
    }
    Ok(t)
}

/// A universal construction forced onto a new sort by axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// A one-element sort.
    Terminal { sort: String },
    /// The pullback of unary `f1: A -> C` and `f2: B -> C` with projections `p1`, `p2`.
    Pullback { sort: String, f1: String, f2: String, p1: String, p2: String },
    /// The disjoint union of `summands` with one injection each.
    Coproduct { sort: String, summands: Vec<String>, injections: Vec<String> },
    /// Natural numbers below `bound`, with a partial successor.
    Nno { sort: String, zero: String, succ: String, bound: usize },
    /// Lists over `elem` of length below `bound`, with a partial `cons`.
    List { elem: String, sort: String, nil: String, cons: String, bound: usize },
    /// The quotient of the codomain of `p1`, `p2` by the equivalence relation they
    /// present, with quotient map `quotient_map`.
    Coeq { sort: String, p1: String, p2: String, quotient_map: String },
}

impl Construction {
    pub fn sort(&self) -> &str {
        match self {
            Construction::Terminal { sort }
            | Construction::Pullback { sort, .. }
            | Construction::Coproduct { sort, .. }
            | Construction::Nno { sort, .. }
            | Construction::List { sort, .. }
            | Construction::Coeq { sort, .. } => sort,
        }
    }
}

/// Copies host declarations into a fragment on demand.
struct Importer<'a> {
    host: &'a GeomTheory,
    frag: GeomTheory,
}

impl Importer<'_> {
    fn sort(&mut self, name: &str) -> Result<SortId> {
        if let Some(id) = self.frag.sort_id(name) {
            return Ok(id);
        }
        let hs = self.host.sort(name)?;
        match self.host.sorts[hs].kind {
            SortKind::Primitive => self.frag.add_sort(name),
            SortKind::Fin(b) => {
                let base = self.sort(&self.host.sorts[b].name.clone())?;
                self.frag.add_fin_sort(name, base)
            }
        }
    }

    /// A unary host function, returning its id and (domain, codomain).
    fn unary(&mut self, name: &str) -> Result<(usize, SortId, SortId)> {
        let hf = self.host.func(name)?;
        let func = self.host.funcs[hf].clone();
        if func.args.len() != 1 {
            return Err(Error::PreconditionFailed(format!("{name} must be unary")));
        }
        let dom = self.sort(&self.host.sorts[func.args[0]].name)?;
        let cod = self.sort(&self.host.sorts[func.ret].name)?;
        let id = match self.frag.func_id(name) {
            Some(id) => id,
            None if func.partial => self.frag.add_partial_func(name, &[dom], cod)?,
            None => self.frag.add_func(name, &[dom], cod)?,
        };
        Ok((id, dom, cod))
    }
}

/// The axioms forcing `c.sort()` to be the construction, as a fragment
/// mentioning the host declarations it uses. Merge it into the host with
/// [`GeomTheory::merge`].
pub fn emit_construction(host: &GeomTheory, c: &Construction) -> Result<GeomTheory> {
    let mut im = Importer { host, frag: GeomTheory::new() };
    let sort = c.sort();
    if host.sort_id(sort).is_some() {
        return Err(Error::DuplicateElement(sort.to_owned()));
    }
    match c {
        Construction::Terminal { .. } => {
            let s = im.frag.add_sort(sort)?;
            let mut b = SequentBuilder::new();
            let x = b.bound("x", s);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_inhabited"),
                Formula::Top,
                Formula::exists(vec![x], Formula::Top),
            ))?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", s);
            let y = b.context("y", s);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_subsingleton"),
                Formula::Top,
                Formula::eq(Term::var(x), Term::var(y)),
            ))?;
        }
        Construction::Pullback { f1, f2, p1, p2, .. } => {
            let (f1, a, c1) = im.unary(f1)?;
            let (f2, bsort, c2) = im.unary(f2)?;
            if c1 != c2 {
                return Err(Error::IllSorted("pullback of maps with different codomains".into()));
            }
            let s = im.frag.add_sort(sort)?;
            let p1 = im.frag.add_func(p1, &[s], a)?;
            let p2 = im.frag.add_func(p2, &[s], bsort)?;
            let app = |f, t| Term::app(f, vec![t]);
            let mut b = SequentBuilder::new();
            let x = b.context("x", s);
            let square = Formula::eq(app(f1, app(p1, Term::var(x))), app(f2, app(p2, Term::var(x))));
            im.frag.add_axiom(b.finish(&format!("{sort}_square"), Formula::Top, square))?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", s);
            let x2 = b.context("x2", s);
            let premise = Formula::and(vec![
                Formula::eq(app(p1, Term::var(x)), app(p1, Term::var(x2))),
                Formula::eq(app(p2, Term::var(x)), app(p2, Term::var(x2))),
            ]);
            im.frag.add_axiom(b.finish(&format!("{sort}_mono"), premise, Formula::eq(Term::var(x), Term::var(x2))))?;
            let mut b = SequentBuilder::new();
            let y1 = b.context("y1", a);
            let y2 = b.context("y2", bsort);
            let x = b.bound("x", s);
            let premise = Formula::eq(app(f1, Term::var(y1)), app(f2, Term::var(y2)));
            let conclusion = Formula::exists(
                vec![x],
                Formula::and(vec![
                    Formula::eq(Term::var(y1), app(p1, Term::var(x))),
                    Formula::eq(Term::var(y2), app(p2, Term::var(x))),
                ]),
            );
            im.frag.add_axiom(b.finish(&format!("{sort}_universal"), premise, conclusion))?;
        }
        Construction::Coproduct { summands, injections, .. } => {
            if summands.len() != injections.len() {
                return Err(Error::PreconditionFailed("one injection per summand".into()));
            }
            let parts = summands.iter().map(|s| im.sort(s)).collect::<Result<Vec<_>>>()?;
            let s = im.frag.add_sort(sort)?;
            let inj = injections
                .iter()
                .zip(&parts)
                .map(|(name, &p)| im.frag.add_func(name, &[p], s))
                .collect::<Result<Vec<_>>>()?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", s);
            let ys: Vec<Slot> = parts.iter().enumerate().map(|(i, &p)| b.bound(&format!("y{i}"), p)).collect();
            let cover = Formula::or(
                ys.iter()
                    .zip(&inj)
                    .map(|(&y, &f)| {
                        Formula::exists(vec![y], Formula::eq(Term::var(x), Term::app(f, vec![Term::var(y)])))
                    })
                    .collect(),
            );
            im.frag.add_axiom(b.finish(&format!("{sort}_cover"), Formula::Top, cover))?;
            for i in 0..parts.len() {
                for j in i..parts.len() {
                    let mut b = SequentBuilder::new();
                    let y = b.context("y", parts[i]);
                    let y2 = b.context("y2", parts[j]);
                    let premise =
                        Formula::eq(Term::app(inj[i], vec![Term::var(y)]), Term::app(inj[j], vec![Term::var(y2)]));
                    let conclusion = if i == j { Formula::eq(Term::var(y), Term::var(y2)) } else { Formula::Bottom };
                    im.frag.add_axiom(b.finish(&format!("{sort}_disjoint_{i}_{j}"), premise, conclusion))?;
                }
            }
        }
        Construction::Nno { zero, succ, bound, .. } => {
            if *bound == 0 {
                return Err(Error::BoundRequired(format!("natural numbers {sort}")));
            }
            let n = im.frag.add_sort(sort)?;
            let z = im.frag.add_const(zero, n)?;
            let s = im.frag.add_partial_func(succ, &[n], n)?;
            let sx = |x: Slot| Term::app(s, vec![Term::var(x)]);
            let mut b = SequentBuilder::new();
            let x = b.context("x", n);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_zero_not_succ"),
                Formula::eq(sx(x), Term::constant(z)),
                Formula::Bottom,
            ))?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", n);
            let x2 = b.context("x2", n);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_succ_injective"),
                Formula::eq(sx(x), sx(x2)),
                Formula::eq(Term::var(x), Term::var(x2)),
            ))?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", n);
            let mut numeral = Term::constant(z);
            let mut disjuncts = Vec::new();
            for _ in 0..*bound {
                disjuncts.push(Formula::eq(Term::var(x), numeral.clone()));
                numeral = Term::app(s, vec![numeral]);
            }
            let label = format!("{sort}_cover");
            im.frag.add_axiom(b.finish(&label, Formula::Top, Formula::or(disjuncts)))?;
            im.frag.bounded.push(label);
        }
        Construction::List { elem, nil, cons, bound, .. } => {
            if *bound == 0 {
                return Err(Error::BoundRequired(format!("lists {sort}")));
            }
            let e = im.sort(elem)?;
            let l = im.frag.add_sort(sort)?;
            let nil = im.frag.add_const(nil, l)?;
            let cons = im.frag.add_partial_func(cons, &[e, l], l)?;
            let cons_t = |x: Term, rest: Term| Term::app(cons, vec![x, rest]);
            let mut b = SequentBuilder::new();
            let x = b.context("x", e);
            let r = b.context("l", l);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_nil_not_cons"),
                Formula::eq(cons_t(Term::var(x), Term::var(r)), Term::constant(nil)),
                Formula::Bottom,
            ))?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", e);
            let r = b.context("l", l);
            let x2 = b.context("x2", e);
            let r2 = b.context("l2", l);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_cons_injective"),
                Formula::eq(cons_t(Term::var(x), Term::var(r)), cons_t(Term::var(x2), Term::var(r2))),
                Formula::and(vec![Formula::eq(Term::var(x), Term::var(x2)), Formula::eq(Term::var(r), Term::var(r2))]),
            ))?;
            let mut b = SequentBuilder::new();
            let r = b.context("l", l);
            let mut disjuncts = Vec::new();
            for len in 0..*bound {
                let xs: Vec<Slot> = (0..len).map(|i| b.bound(&format!("x{}", i + 1), e)).collect();
                let word = xs.iter().rev().fold(Term::constant(nil), |acc, &x| cons_t(Term::var(x), acc));
                disjuncts.push(Formula::exists(xs, Formula::eq(Term::var(r), word)));
            }
            let label = format!("{sort}_cover");
            im.frag.add_axiom(b.finish(&label, Formula::Top, Formula::or(disjuncts)))?;
            im.frag.bounded.push(label);
        }
        Construction::Coeq { p1, p2, quotient_map, .. } => {
            let (p1, rel, base) = im.unary(p1)?;
            let (p2, rel2, base2) = im.unary(p2)?;
            if rel != rel2 || base != base2 {
                return Err(Error::IllSorted("coequalizer of maps with different sorts".into()));
            }
            let q = im.frag.add_sort(sort)?;
            let p = im.frag.add_func(quotient_map, &[base], q)?;
            let app = |f, t| Term::app(f, vec![t]);
            let mut b = SequentBuilder::new();
            let e = b.context("e", rel);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_coequalizes"),
                Formula::Top,
                Formula::eq(app(p, app(p1, Term::var(e))), app(p, app(p2, Term::var(e)))),
            ))?;
            let mut b = SequentBuilder::new();
            let x = b.context("x", q);
            let y = b.bound("y", base);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_surjective"),
                Formula::Top,
                Formula::exists(vec![y], Formula::eq(Term::var(x), app(p, Term::var(y)))),
            ))?;
            let mut b = SequentBuilder::new();
            let y = b.context("y", base);
            let y2 = b.context("y2", base);
            let e = b.bound("e", rel);
            im.frag.add_axiom(b.finish(
                &format!("{sort}_effective"),
                Formula::eq(app(p, Term::var(y)), app(p, Term::var(y2))),
                Formula::exists(
                    vec![e],
                    Formula::and(vec![
                        Formula::eq(Term::var(y), app(p1, Term::var(e))),
                        Formula::eq(Term::var(y2), app(p2, Term::var(e))),
                    ]),
                ),
            ))?;
        }
    }
    Ok(im.frag)
}

/// `∀ var ∈ set. body`, for a set-valued term of a finite-powerset sort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedForall {
    pub var: Slot,
    pub set: Term,
    pub body: Formula,
}

/// `⋁_{n ≤ n_max} ∃x1..xn (set == {x1..xn} ∧ ⋀ body[xi/var])`.
///
/// Fresh slots for the `xi` are appended to `vars`. The body may not bind
/// `var` itself.
pub fn bounded_forall_translate(vars: &mut Vec<VarDecl>, f: &BoundedForall, n_max: usize) -> Formula {
    let decl = vars[f.var].clone();
    let mut disjuncts = Vec::new();
    for n in 0..=n_max {
        let xs: Vec<Slot> = (0..n)
            .map(|i| {
                vars.push(VarDecl { name: format!("{}_{}", decl.name, i + 1), sort: decl.sort });
                vars.len() - 1
            })
            .collect();
        let mut conj = vec![Formula::SetEq(f.set.clone(), xs.iter().map(|&x| Term::var(x)).collect())];
        for &x in &xs {
            conj.push(f.body.rename(&|s| if s == f.var { x } else { s }));
        }
        disjuncts.push(Formula::exists(xs, Formula::and(conj)));
    }
    Formula::or(disjuncts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geolog::model::{eval_formula, FinModel};
    use crate::geolog::search::{find_models, find_models_with, uniform_caps, SearchOptions};

    #[test]
    fn three_element_set_has_six_labelled_models() {
        let t = syntacticize_set("A", &["a", "b", "c"]).unwrap();
        let ms = find_models(&t, &[4]).unwrap();
        assert_eq!(ms.len(), 6);
        assert!(ms.iter().all(|m| m.sizes == vec![3]));
        let opts = SearchOptions { dedupe_iso: true, ..SearchOptions::default() };
        assert_eq!(find_models_with(&t, &[4], &opts).unwrap().len(), 1);
    }

    #[test]
    fn empty_and_singleton_sets() {
        let t = syntacticize_set::<&str>("E", &[]).unwrap();
        let ms = find_models(&t, &[3]).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].sizes, vec![0]);
        let t = syntacticize_set("U", &["u"]).unwrap();
        let ms = find_models(&t, &[3]).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].sizes, vec![1]);
    }

    #[test]
    fn identity_function_is_identity_on_labels() {
        let t = syntacticize_function("f", "A", &["p", "q"], "A", &["p", "q"], &[0, 1]).unwrap();
        let ms = find_models(&t, &[3]).unwrap();
        assert_eq!(ms.len(), 2);
        let f = t.func_id("f").unwrap();
        let kp = t.func_id("A_p").unwrap();
        let kq = t.func_id("A_q").unwrap();
        for m in &ms {
            assert_eq!(m.funcs[f][m.funcs[kp][0]], m.funcs[kp][0]);
            assert_eq!(m.funcs[f][m.funcs[kq][0]], m.funcs[kq][0]);
        }
    }

    #[test]
    fn nno_models_are_initial_segments() {
        let host = GeomTheory::new();
        let c = Construction::Nno { sort: "N".into(), zero: "z".into(), succ: "s".into(), bound: 3 };
        let t = emit_construction(&host, &c).unwrap();
        assert_eq!(t.bounded, vec!["N_cover".to_owned()]);
        let opts = SearchOptions { dedupe_iso: true, ..SearchOptions::default() };
        let ms = find_models_with(&t, &uniform_caps(&t, 5), &opts).unwrap();
        let sizes: Vec<usize> = ms.iter().map(|m| m.sizes[0]).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        let zero = Construction::Nno { sort: "N".into(), zero: "z".into(), succ: "s".into(), bound: 0 };
        assert!(matches!(emit_construction(&host, &zero), Err(Error::BoundRequired(_))));
    }

    #[test]
    fn unknown_host_symbol() {
        let host = GeomTheory::new();
        let c =
            Construction::Pullback { sort: "P".into(), f1: "f".into(), f2: "g".into(), p1: "p".into(), p2: "q".into() };
        assert!(matches!(emit_construction(&host, &c), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn bounded_forall_with_zero_bound_is_emptiness() {
        let mut t = GeomTheory::new();
        let x = t.add_sort("X").unwrap();
        let fx = t.add_fin_sort("FX", x).unwrap();
        let mut vars = vec![VarDecl { name: "S".into(), sort: fx }, VarDecl { name: "x".into(), sort: x }];
        let bf = BoundedForall { var: 1, set: Term::var(0), body: Formula::Top };
        let f = bounded_forall_translate(&mut vars, &bf, 0);
        let m = FinModel { sizes: vec![3, 8], funcs: vec![], preds: vec![] };
        for s in 0..8 {
            assert_eq!(eval_formula(&t, &m, &vars, &f, &[s, 0]), s == 0);
        }
    }
}
