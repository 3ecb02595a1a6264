use std::collections::BTreeSet;

use super::model::{dedupe_iso, is_model, isomorphic, orbit, FinModel};
use super::search::{expand, find_models_with, SearchOptions, Seed};
use super::syntax::{FuncId, GeomTheory, PredId, Sequent, SortId, SortKind};
use crate::error::{Error, Result};

/// `T1` extending `T0` along injective symbol maps that preserve arities
/// and carry every `T0` axiom to a `T1` axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryExtension {
    base: GeomTheory,
    ext: GeomTheory,
    sort_map: Vec<SortId>,
    func_map: Vec<FuncId>,
    pred_map: Vec<PredId>,
}

fn same_axiom(a: &Sequent, b: &Sequent) -> bool {
    a.context == b.context
        && a.vars.len() == b.vars.len()
        && a.vars.iter().zip(&b.vars).all(|(x, y)| x.sort == y.sort)
        && a.premise == b.premise
        && a.conclusion == b.conclusion
}

fn injective(map: &[usize]) -> bool {
    map.iter().collect::<BTreeSet<_>>().len() == map.len()
}

impl TheoryExtension {
    pub fn new(
        base: GeomTheory,
        ext: GeomTheory,
        sort_map: Vec<SortId>,
        func_map: Vec<FuncId>,
        pred_map: Vec<PredId>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidExtension(m));
        if sort_map.len() != base.sorts.len()
            || func_map.len() != base.funcs.len()
            || pred_map.len() != base.preds.len()
        {
            return bad("one image per base symbol".into());
        }
        if sort_map.iter().any(|&s| s >= ext.sorts.len())
            || func_map.iter().any(|&f| f >= ext.funcs.len())
            || pred_map.iter().any(|&p| p >= ext.preds.len())
        {
            return bad("image outside the extension's signature".into());
        }
        if !injective(&sort_map) || !injective(&func_map) || !injective(&pred_map) {
            return bad("symbol maps must be injective".into());
        }
        for (s, sort) in base.sorts.iter().enumerate() {
            let kind = match sort.kind {
                SortKind::Primitive => SortKind::Primitive,
                SortKind::Fin(b) => SortKind::Fin(sort_map[b]),
            };
            if ext.sorts[sort_map[s]].kind != kind {
                return bad(format!("sort {} changes kind", sort.name));
            }
        }
        for (f, func) in base.funcs.iter().enumerate() {
            let img = &ext.funcs[func_map[f]];
            let args: Vec<SortId> = func.args.iter().map(|&a| sort_map[a]).collect();
            if img.args != args || img.ret != sort_map[func.ret] || img.partial != func.partial {
                return bad(format!("function {} changes arity", func.name));
            }
        }
        for (p, pred) in base.preds.iter().enumerate() {
            let args: Vec<SortId> = pred.args.iter().map(|&a| sort_map[a]).collect();
            if ext.preds[pred_map[p]].args != args {
                return bad(format!("predicate {} changes arity", pred.name));
            }
        }
        for ax in &base.axioms {
            let moved = GeomTheory::translate(ax, &|s| sort_map[s], &|f| func_map[f], &|p| pred_map[p]);
            if !ext.axioms.iter().any(|b| same_axiom(&moved, b)) {
                return bad(format!("axiom {} has no counterpart", ax.label));
            }
        }
        Ok(TheoryExtension { base, ext, sort_map, func_map, pred_map })
    }

    /// Matches symbols by name.
    pub fn by_inclusion(base: GeomTheory, ext: GeomTheory) -> Result<Self> {
        let find = |what: &str, name: &str, id: Option<usize>| {
            id.ok_or_else(|| Error::InvalidExtension(format!("{what} {name} missing from the extension")))
        };
        let sort_map = base.sorts.iter().map(|s| find("sort", &s.name, ext.sort_id(&s.name))).collect::<Result<_>>()?;
        let func_map =
            base.funcs.iter().map(|f| find("function", &f.name, ext.func_id(&f.name))).collect::<Result<_>>()?;
        let pred_map =
            base.preds.iter().map(|p| find("predicate", &p.name, ext.pred_id(&p.name))).collect::<Result<_>>()?;
        Self::new(base, ext, sort_map, func_map, pred_map)
    }

    pub fn base(&self) -> &GeomTheory {
        &self.base
    }

    pub fn extension(&self) -> &GeomTheory {
        &self.ext
    }

    pub fn reduct(&self, m: &FinModel) -> Result<FinModel> {
        m.check_shape(&self.ext)?;
        Ok(FinModel {
            sizes: self.sort_map.iter().map(|&s| m.sizes[s]).collect(),
            funcs: self.func_map.iter().map(|&f| m.funcs[f].clone()).collect(),
            preds: self.pred_map.iter().map(|&p| m.preds[p].clone()).collect(),
        })
    }

    /// Models of `T1` within `caps` whose reduct is isomorphic to `a`.
    ///
    /// Each relabelling of `a` is extended separately, so only the new
    /// symbols are searched.
    pub fn fibre_models(&self, a: &FinModel, caps: &[usize], opts: &SearchOptions) -> Result<Vec<FinModel>> {
        self.check_point(a, caps)?;
        let mut out = BTreeSet::new();
        for copy in orbit(&self.base, a) {
            if self
                .sort_map
                .iter()
                .enumerate()
                .any(|(s, &e)| self.ext.sorts[e].kind == SortKind::Primitive && copy.sizes[s] > caps[e])
            {
                continue;
            }
            let mut seed = Seed::empty(&self.ext);
            for (s, &e) in self.sort_map.iter().enumerate() {
                seed.sizes[e] = Some(copy.sizes[s]);
            }
            for (f, &e) in self.func_map.iter().enumerate() {
                seed.funcs[e] = Some(copy.funcs[f].clone());
            }
            for (p, &e) in self.pred_map.iter().enumerate() {
                seed.preds[e] = Some(copy.preds[p].clone());
            }
            let plain = SearchOptions { dedupe_iso: false, budget: opts.budget };
            out.extend(expand(&self.ext, &seed, caps, &plain)?);
        }
        let mut found: Vec<FinModel> = out.into_iter().collect();
        if opts.dedupe_iso {
            found = dedupe_iso(&self.ext, found);
        }
        Ok(found)
    }

    /// The same set as [`TheoryExtension::fibre_models`], by filtering every model of `T1`.
    pub fn fibre_models_by_filter(&self, a: &FinModel, caps: &[usize], opts: &SearchOptions) -> Result<Vec<FinModel>> {
        self.check_point(a, caps)?;
        let plain = SearchOptions { dedupe_iso: false, budget: opts.budget };
        let mut out = Vec::new();
        for m in find_models_with(&self.ext, caps, &plain)? {
            if isomorphic(&self.base, &self.reduct(&m)?, a) {
                out.push(m);
            }
        }
        Ok(out)
    }

    fn check_point(&self, a: &FinModel, caps: &[usize]) -> Result<()> {
        if caps.len() != self.ext.sorts.len() {
            return Err(Error::PreconditionFailed("one cap per sort of the extension".into()));
        }
        if !is_model(&self.base, a) {
            return Err(Error::InvalidModel("not a model of the base theory".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geolog::search::uniform_caps;

    fn toy() -> TheoryExtension {
        let mut t0 = GeomTheory::new();
        t0.add_sort("X").unwrap();
        let mut t1 = t0.clone();
        t1.add_pred("P", &[0]).unwrap();
        TheoryExtension::by_inclusion(t0, t1).unwrap()
    }

    #[test]
    fn predicate_fibres() {
        let e = toy();
        let caps = uniform_caps(e.extension(), 3);
        let opts = SearchOptions::default();
        let two = FinModel { sizes: vec![2], funcs: vec![], preds: vec![] };
        assert_eq!(e.fibre_models(&two, &caps, &opts).unwrap().len(), 4);
        let empty = FinModel { sizes: vec![0], funcs: vec![], preds: vec![] };
        assert_eq!(e.fibre_models(&empty, &caps, &opts).unwrap().len(), 1);
        for n in 0..=3 {
            let a = FinModel { sizes: vec![n], funcs: vec![], preds: vec![] };
            assert_eq!(e.fibre_models(&a, &caps, &opts).unwrap(), e.fibre_models_by_filter(&a, &caps, &opts).unwrap());
        }
    }

    #[test]
    fn reduct_forgets_new_symbols() {
        let e = toy();
        let m = FinModel { sizes: vec![2], funcs: vec![], preds: vec![vec![true, false]] };
        assert_eq!(e.reduct(&m).unwrap(), FinModel { sizes: vec![2], funcs: vec![], preds: vec![] });
    }

    #[test]
    fn dropped_axiom_is_rejected() {
        let mut t0 = GeomTheory::new();
        t0.add_sort("X").unwrap();
        t0.add_axiom(crate::geolog::syntax::SequentBuilder::new().finish(
            "empty",
            crate::geolog::syntax::Formula::Top,
            crate::geolog::syntax::Formula::Bottom,
        ))
        .unwrap();
        let mut t1 = GeomTheory::new();
        t1.add_sort("X").unwrap();
        assert!(matches!(TheoryExtension::by_inclusion(t0, t1), Err(Error::InvalidExtension(_))));
    }
}
