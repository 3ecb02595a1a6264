use std::collections::BTreeSet;

use super::model::{compile_theory, dedupe_iso, CompiledSequent, FinModel, UNDEFINED};
use super::syntax::{GeomTheory, SortKind, FIN_BASE_BOUND};
use crate::error::{Error, Result};

/// Node budget when `LOCUS_BUDGET` is unset.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// The node budget: `LOCUS_BUDGET` if set and numeric, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("LOCUS_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep one model per isomorphism class.
    pub dedupe_iso: bool,
    /// Maximum number of candidate tables tried.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { dedupe_iso: false, budget: budget_from_env() }
    }
}

/// Parts of a structure fixed in advance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Seed {
    pub sizes: Vec<Option<usize>>,
    pub funcs: Vec<Option<Vec<usize>>>,
    pub preds: Vec<Option<Vec<bool>>>,
}

impl Seed {
    pub fn empty(t: &GeomTheory) -> Self {
        Seed { sizes: vec![None; t.sorts.len()], funcs: vec![None; t.funcs.len()], preds: vec![None; t.preds.len()] }
    }
}

/// The same cap for every primitive sort.
pub fn uniform_caps(t: &GeomTheory, cap: usize) -> Vec<usize> {
    vec![cap; t.sorts.len()]
}

/// All models with each primitive carrier of size at most its cap,
/// sorted. Sizes are tried in lexicographic order.
pub fn find_models(t: &GeomTheory, caps: &[usize]) -> Result<Vec<FinModel>> {
    find_models_with(t, caps, &SearchOptions::default())
}

pub fn find_models_with(t: &GeomTheory, caps: &[usize], opts: &SearchOptions) -> Result<Vec<FinModel>> {
    expand(t, &Seed::empty(t), caps, opts)
}

/// Models agreeing with `seed` on everything it fixes.
pub fn expand(t: &GeomTheory, seed: &Seed, caps: &[usize], opts: &SearchOptions) -> Result<Vec<FinModel>> {
    t.validate()?;
    if caps.len() != t.sorts.len() || seed.sizes.len() != t.sorts.len() {
        return Err(Error::PreconditionFailed("one cap and one seed entry per sort".into()));
    }
    if seed.funcs.len() != t.funcs.len() || seed.preds.len() != t.preds.len() {
        return Err(Error::PreconditionFailed("seed does not match the signature".into()));
    }
    let compiled = compile_theory(t);
    let symbol_count = t.funcs.len() + t.preds.len();
    // stages[k]: axioms decided once the first k symbols have tables.
    let mut stages: Vec<Vec<usize>> = vec![Vec::new(); symbol_count + 1];
    for (i, ax) in t.axioms.iter().enumerate() {
        let (fs, ps) = t.symbols_of(ax);
        let stage = fs.iter().map(|&f| f + 1).chain(ps.iter().map(|&p| t.funcs.len() + p + 1)).max().unwrap_or(0);
        stages[stage].push(i);
    }
    let mut search =
        Search { t, seed, compiled: &compiled, stages: &stages, budget: opts.budget, spent: 0, found: Vec::new() };

    let primitive: Vec<usize> = (0..t.sorts.len()).filter(|&s| t.sorts[s].kind == SortKind::Primitive).collect();
    let ranges: Vec<Vec<usize>> = primitive
        .iter()
        .map(|&s| match seed.sizes[s] {
            Some(n) => vec![n],
            None => (0..=caps[s]).collect(),
        })
        .collect();
    let mut sizes = vec![0; t.sorts.len()];
    search.sizes_rec(&primitive, &ranges, 0, &mut sizes)?;

    let mut found = search.found;
    found.sort();
    found.dedup();
    if opts.dedupe_iso {
        found = dedupe_iso(t, found);
    }
    Ok(found)
}

struct Search<'a> {
    t: &'a GeomTheory,
    seed: &'a Seed,
    compiled: &'a [CompiledSequent],
    stages: &'a [Vec<usize>],
    budget: u64,
    spent: u64,
    found: Vec<FinModel>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::bound("search nodes (LOCUS_BUDGET)", self.budget as usize));
        }
        Ok(())
    }

    fn sizes_rec(
        &mut self,
        primitive: &[usize],
        ranges: &[Vec<usize>],
        k: usize,
        sizes: &mut Vec<usize>,
    ) -> Result<()> {
        if k == primitive.len() {
            for (s, sort) in self.t.sorts.iter().enumerate() {
                if let SortKind::Fin(b) = sort.kind {
                    if sizes[b] > FIN_BASE_BOUND {
                        return Err(Error::bound("base of a finite-powerset sort", FIN_BASE_BOUND));
                    }
                    sizes[s] = 1 << sizes[b];
                }
                if let Some(n) = self.seed.sizes[s] {
                    if n != sizes[s] {
                        return Ok(());
                    }
                }
            }
            let mut m = FinModel {
                sizes: sizes.clone(),
                funcs: vec![Vec::new(); self.t.funcs.len()],
                preds: vec![Vec::new(); self.t.preds.len()],
            };
            self.tick()?;
            if self.stage_ok(0, &m) {
                self.tables_rec(0, &mut m)?;
            }
            return Ok(());
        }
        for &n in &ranges[k] {
            sizes[primitive[k]] = n;
            self.sizes_rec(primitive, ranges, k + 1, sizes)?;
        }
        Ok(())
    }

    fn stage_ok(&self, stage: usize, m: &FinModel) -> bool {
        self.stages[stage].iter().all(|&i| self.compiled[i].holds(self.t, m))
    }

    fn tables_rec(&mut self, k: usize, m: &mut FinModel) -> Result<()> {
        let nf = self.t.funcs.len();
        if k == nf + self.t.preds.len() {
            self.found.push(m.clone());
            return Ok(());
        }
        if k < nf {
            let func = &self.t.funcs[k];
            let dom = m.domain_size(&func.args);
            if let Some(table) = &self.seed.funcs[k] {
                if table.len() != dom {
                    return Ok(());
                }
                m.funcs[k] = table.clone();
                self.tick()?;
                if m.check_shape_of_func(self.t, k) && self.stage_ok(k + 1, m) {
                    self.tables_rec(k + 1, m)?;
                }
                return Ok(());
            }
            let mut values: Vec<usize> = (0..m.sizes[func.ret]).collect();
            if func.partial {
                values.push(UNDEFINED);
            }
            if values.is_empty() && dom > 0 {
                return Ok(());
            }
            let mut digits = vec![0usize; dom];
            loop {
                m.funcs[k] = digits.iter().map(|&d| values[d]).collect();
                self.tick()?;
                if self.stage_ok(k + 1, m) {
                    self.tables_rec(k + 1, m)?;
                }
                if !odometer(&mut digits, values.len()) {
                    break;
                }
            }
            return Ok(());
        }
        let p = k - nf;
        let dom = m.domain_size(&self.t.preds[p].args);
        if let Some(ext) = &self.seed.preds[p] {
            if ext.len() != dom {
                return Ok(());
            }
            m.preds[p] = ext.clone();
            self.tick()?;
            if self.stage_ok(k + 1, m) {
                self.tables_rec(k + 1, m)?;
            }
            return Ok(());
        }
        let mut digits = vec![0usize; dom];
        loop {
            m.preds[p] = digits.iter().map(|&d| d == 1).collect();
            self.tick()?;
            if self.stage_ok(k + 1, m) {
                self.tables_rec(k + 1, m)?;
            }
            if !odometer(&mut digits, 2) {
                break;
            }
        }
        Ok(())
    }
}

/// Advances a counter whose last digit moves fastest; false after the final value.
fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

impl FinModel {
    fn check_shape_of_func(&self, t: &GeomTheory, f: usize) -> bool {
        let func = &t.funcs[f];
        let cod = self.sizes[func.ret];
        self.funcs[f].iter().all(|&v| if v == UNDEFINED { func.partial } else { v < cod })
    }
}

/// The distinct size vectors among `models`.
pub fn size_profile(models: &[FinModel]) -> BTreeSet<Vec<usize>> {
    models.iter().map(|m| m.sizes.clone()).collect()
}
