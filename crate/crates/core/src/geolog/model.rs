use std::collections::BTreeSet;

use serde::Serialize;

use super::syntax::{Formula, GeomTheory, Sequent, Slot, SortId, SortKind, Term};
use crate::error::{Error, Result};

/// Marks an undefined value of a partial function.
pub const UNDEFINED: usize = usize::MAX;

/// A finite structure for a [`GeomTheory`].
///
/// Elements of a sort of size `n` are `0..n`. Elements of `fin X` are bit
/// masks over the carrier of `X`. Function tables are indexed in mixed radix
/// with the first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FinModel {
    pub sizes: Vec<usize>,
    pub funcs: Vec<Vec<usize>>,
    pub preds: Vec<Vec<bool>>,
}

impl FinModel {
    /// Builds a model, checking table shapes and every axiom.
    pub fn new(t: &GeomTheory, sizes: Vec<usize>, funcs: Vec<Vec<usize>>, preds: Vec<Vec<bool>>) -> Result<Self> {
        let m = FinModel { sizes, funcs, preds };
        m.check_shape(t)?;
        if let Some(label) = first_failing_axiom(t, &m) {
            return Err(Error::InvalidModel(format!("axiom {label} fails")));
        }
        Ok(m)
    }

    pub fn check_shape(&self, t: &GeomTheory) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidModel(msg));
        if self.sizes.len() != t.sorts.len() || self.funcs.len() != t.funcs.len() || self.preds.len() != t.preds.len() {
            return bad("signature mismatch".into());
        }
        for (s, sort) in t.sorts.iter().enumerate() {
            if let SortKind::Fin(b) = sort.kind {
                if self.sizes[b] > super::syntax::FIN_BASE_BOUND || self.sizes[s] != 1 << self.sizes[b] {
                    return bad(format!("sort {} must have 2^|{}| elements", sort.name, t.sorts[b].name));
                }
            }
        }
        for (f, func) in t.funcs.iter().enumerate() {
            let dom = self.domain_size(&func.args);
            let table = &self.funcs[f];
            if table.len() != dom {
                return bad(format!("table of {} has {} entries, expected {dom}", func.name, table.len()));
            }
            let cod = self.sizes[func.ret];
            for &v in table {
                if v == UNDEFINED && !func.partial {
                    return bad(format!("total function {} is undefined somewhere", func.name));
                }
                if v != UNDEFINED && v >= cod {
                    return bad(format!("{} takes value {v} outside its codomain", func.name));
                }
            }
        }
        for (p, pred) in t.preds.iter().enumerate() {
            if self.preds[p].len() != self.domain_size(&pred.args) {
                return bad(format!("extent of {} has the wrong length", pred.name));
            }
        }
        Ok(())
    }

    pub fn domain_size(&self, args: &[SortId]) -> usize {
        args.iter().map(|&s| self.sizes[s]).product()
    }

    pub fn index(&self, args: &[SortId], values: &[usize]) -> usize {
        args.iter().zip(values).fold(0, |acc, (&s, &v)| acc * self.sizes[s] + v)
    }

    /// Applies a function symbol; `None` when undefined.
    pub fn apply(&self, t: &GeomTheory, f: usize, values: &[usize]) -> Option<usize> {
        let v = self.funcs[f][self.index(&t.funcs[f].args, values)];
        (v != UNDEFINED).then_some(v)
    }

    /// The model with every primitive carrier relabelled: `perms[s][old] = new`.
    /// Entries for finite-powerset sorts are ignored.
    pub fn permuted(&self, t: &GeomTheory, perms: &[Vec<usize>]) -> FinModel {
        let map = |s: SortId, v: usize| -> usize {
            if v == UNDEFINED {
                return v;
            }
            match t.sorts[s].kind {
                SortKind::Primitive => perms[s][v],
                SortKind::Fin(b) => {
                    (0..self.sizes[b]).filter(|&i| v >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perms[b][i])
                }
            }
        };
        let funcs = t
            .funcs
            .iter()
            .enumerate()
            .map(|(f, func)| {
                let mut table = vec![0; self.funcs[f].len()];
                for (idx, args) in tuples(&self.sizes, &func.args).enumerate() {
                    let mapped: Vec<usize> = args.iter().zip(&func.args).map(|(&v, &s)| map(s, v)).collect();
                    table[self.index(&func.args, &mapped)] = map(func.ret, self.funcs[f][idx]);
                }
                table
            })
            .collect();
        let preds = t
            .preds
            .iter()
            .enumerate()
            .map(|(p, pred)| {
                let mut ext = vec![false; self.preds[p].len()];
                for (idx, args) in tuples(&self.sizes, &pred.args).enumerate() {
                    let mapped: Vec<usize> = args.iter().zip(&pred.args).map(|(&v, &s)| map(s, v)).collect();
                    ext[self.index(&pred.args, &mapped)] = self.preds[p][idx];
                }
                ext
            })
            .collect();
        FinModel { sizes: self.sizes.clone(), funcs, preds }
    }
}

/// All argument tuples over `sorts`, in table order.
pub fn tuples<'a>(sizes: &'a [usize], sorts: &'a [SortId]) -> impl Iterator<Item = Vec<usize>> + 'a {
    let total: usize = sorts.iter().map(|&s| sizes[s]).product();
    (0..total).map(move |mut idx| {
        let mut out = vec![0; sorts.len()];
        for (k, &s) in sorts.iter().enumerate().rev() {
            out[k] = idx % sizes[s];
            idx /= sizes[s];
        }
        out
    })
}

/// A formula prepared for evaluation: conjunctions under a binder are
/// split into levels, each checked as soon as its variables are bound.
#[derive(Clone, Debug)]
enum Plan {
    Atom(Formula),
    And(Vec<Plan>),
    Or(Vec<Plan>),
    Exists { slots: Vec<Slot>, sorts: Vec<SortId>, levels: Vec<Vec<Plan>>, filters: Vec<Option<Term>> },
}

fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(ps) => ps.iter().flat_map(conjuncts).collect(),
        Formula::Top => Vec::new(),
        other => vec![other],
    }
}

fn leveled(parts: Vec<&Formula>, slots: &[Slot], vars: &[super::syntax::VarDecl]) -> Vec<Vec<Plan>> {
    let mut levels: Vec<Vec<Plan>> = vec![Vec::new(); slots.len() + 1];
    for p in parts {
        let fv = p.free_vars();
        let level = slots.iter().rposition(|s| fv.contains(s)).map_or(0, |i| i + 1);
        levels[level].push(compile(p, vars));
    }
    levels
}

/// A set term, free of `slots`, that `slot` must belong to for the
/// conjunction to hold: from a conjunct `S == {.., slot, ..}`.
fn member_filter(parts: &[&Formula], slot: Slot, slots: &[Slot]) -> Option<Term> {
    parts.iter().find_map(|p| match p {
        Formula::SetEq(set, elems) if elems.contains(&Term::Var(slot)) => {
            let mut fv = BTreeSet::new();
            set.collect_vars(&mut fv);
            (!slots.iter().any(|s| fv.contains(s))).then(|| set.clone())
        }
        _ => None,
    })
}

fn compile(f: &Formula, vars: &[super::syntax::VarDecl]) -> Plan {
    match f {
        Formula::And(_) => Plan::And(conjuncts(f).into_iter().map(|p| compile(p, vars)).collect()),
        Formula::Or(ps) => Plan::Or(ps.iter().map(|p| compile(p, vars)).collect()),
        Formula::Exists(slots, body) => {
            let parts = conjuncts(body);
            Plan::Exists {
                slots: slots.clone(),
                sorts: slots.iter().map(|&s| vars[s].sort).collect(),
                filters: slots.iter().map(|&s| member_filter(&parts, s, slots)).collect(),
                levels: leveled(parts, slots, vars),
            }
        }
        atom => Plan::Atom(atom.clone()),
    }
}

/// A sequent prepared for evaluation.
#[derive(Clone, Debug)]
pub struct CompiledSequent {
    label: String,
    width: usize,
    context: Vec<SortId>,
    premise: Vec<Vec<Plan>>,
    conclusion: Plan,
}

impl CompiledSequent {
    pub fn new(s: &Sequent) -> Self {
        let slots: Vec<Slot> = (0..s.context).collect();
        CompiledSequent {
            label: s.label.clone(),
            width: s.vars.len(),
            context: s.vars[..s.context].iter().map(|v| v.sort).collect(),
            premise: leveled(conjuncts(&s.premise), &slots, &s.vars),
            conclusion: compile(&s.conclusion, &s.vars),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn holds(&self, t: &GeomTheory, m: &FinModel) -> bool {
        self.counterexample(t, m).is_none()
    }

    /// A context assignment satisfying the premise but not the conclusion.
    pub fn counterexample(&self, t: &GeomTheory, m: &FinModel) -> Option<Vec<usize>> {
        let mut env = vec![0; self.width];
        let ev = Evaluator { t, m };
        if self.search(&ev, &mut env, 0) {
            Some(env[..self.context.len()].to_vec())
        } else {
            None
        }
    }

    fn search(&self, ev: &Evaluator, env: &mut Vec<usize>, k: usize) -> bool {
        if !self.premise[k].iter().all(|p| ev.plan(p, env)) {
            return false;
        }
        if k == self.context.len() {
            return !ev.plan(&self.conclusion, env);
        }
        for v in 0..ev.m.sizes[self.context[k]] {
            env[k] = v;
            if self.search(ev, env, k + 1) {
                return true;
            }
        }
        false
    }
}

struct Evaluator<'a> {
    t: &'a GeomTheory,
    m: &'a FinModel,
}

impl Evaluator<'_> {
    fn term(&self, env: &[usize], term: &Term) -> Option<usize> {
        match term {
            Term::Var(s) => Some(env[*s]),
            Term::App(f, args) => {
                let sorts = &self.t.funcs[*f].args;
                let mut idx = 0;
                for (a, &s) in args.iter().zip(sorts) {
                    idx = idx * self.m.sizes[s] + self.term(env, a)?;
                }
                let v = self.m.funcs[*f][idx];
                (v != UNDEFINED).then_some(v)
            }
        }
    }

    fn atom(&self, env: &[usize], f: &Formula) -> bool {
        match f {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Eq(a, b) => matches!((self.term(env, a), self.term(env, b)), (Some(x), Some(y)) if x == y),
            Formula::Pred(p, args) => {
                let sorts = &self.t.preds[*p].args;
                let mut idx = 0;
                for (a, &s) in args.iter().zip(sorts) {
                    match self.term(env, a) {
                        Some(v) => idx = idx * self.m.sizes[s] + v,
                        None => return false,
                    }
                }
                self.m.preds[*p][idx]
            }
            Formula::Member(e, s) => match (self.term(env, e), self.term(env, s)) {
                (Some(x), Some(set)) => set >> x & 1 == 1,
                _ => false,
            },
            Formula::SetEq(s, elems) => {
                let Some(set) = self.term(env, s) else { return false };
                let mut lit = 0usize;
                for e in elems {
                    match self.term(env, e) {
                        Some(x) => lit |= 1 << x,
                        None => return false,
                    }
                }
                set == lit
            }
            Formula::And(_) | Formula::Or(_) | Formula::Exists(..) => unreachable!("compiled away"),
        }
    }

    fn plan(&self, p: &Plan, env: &mut Vec<usize>) -> bool {
        match p {
            Plan::Atom(f) => self.atom(env, f),
            Plan::And(ps) => ps.iter().all(|q| self.plan(q, env)),
            Plan::Or(ps) => ps.iter().any(|q| self.plan(q, env)),
            Plan::Exists { slots, sorts, levels, filters } => {
                let mut domains = Vec::with_capacity(slots.len());
                for (k, f) in filters.iter().enumerate() {
                    match f {
                        None => domains.push(None),
                        Some(set) => match self.term(env, set) {
                            Some(mask) => domains.push(Some(
                                (0..self.m.sizes[sorts[k]]).filter(|&v| mask >> v & 1 == 1).collect::<Vec<_>>(),
                            )),
                            None => return false,
                        },
                    }
                }
                self.bind(slots, sorts, levels, &domains, env, 0)
            }
        }
    }

    fn bind(
        &self,
        slots: &[Slot],
        sorts: &[SortId],
        levels: &[Vec<Plan>],
        domains: &[Option<Vec<usize>>],
        env: &mut Vec<usize>,
        k: usize,
    ) -> bool {
        if !levels[k].iter().all(|q| self.plan(q, env)) {
            return false;
        }
        if k == slots.len() {
            return true;
        }
        let all: Vec<usize>;
        let values = match &domains[k] {
            Some(d) => d.as_slice(),
            None => {
                all = (0..self.m.sizes[sorts[k]]).collect();
                all.as_slice()
            }
        };
        for &v in values {
            env[slots[k]] = v;
            if self.bind(slots, sorts, levels, domains, env, k + 1) {
                return true;
            }
        }
        false
    }
}

/// Whether a closed formula holds, or an open one under `env`.
pub fn eval_formula(t: &GeomTheory, m: &FinModel, vars: &[super::syntax::VarDecl], f: &Formula, env: &[usize]) -> bool {
    let mut env = env.to_vec();
    env.resize(vars.len().max(env.len()), 0);
    Evaluator { t, m }.plan(&compile(f, vars), &mut env)
}

pub fn compile_theory(t: &GeomTheory) -> Vec<CompiledSequent> {
    t.axioms.iter().map(CompiledSequent::new).collect()
}

/// Label of the first axiom the structure violates.
pub fn first_failing_axiom(t: &GeomTheory, m: &FinModel) -> Option<String> {
    compile_theory(t).into_iter().find(|c| !c.holds(t, m)).map(|c| c.label)
}

pub fn is_model(t: &GeomTheory, m: &FinModel) -> bool {
    m.check_shape(t).is_ok() && first_failing_axiom(t, m).is_none()
}

/// Every permutation of `0..n` as an `old -> new` table, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Calls `visit` with every tuple of carrier permutations, one per sort
/// (the identity on finite-powerset sorts), until it returns true.
pub fn for_each_relabelling(t: &GeomTheory, sizes: &[usize], visit: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> bool {
    let choices: Vec<Vec<Vec<usize>>> = t
        .sorts
        .iter()
        .enumerate()
        .map(|(s, sort)| match sort.kind {
            SortKind::Primitive => permutations(sizes[s]),
            SortKind::Fin(_) => vec![(0..sizes[s]).collect()],
        })
        .collect();
    fn go(
        choices: &[Vec<Vec<usize>>],
        cur: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        if cur.len() == choices.len() {
            return visit(cur);
        }
        for p in &choices[cur.len()] {
            cur.push(p.clone());
            if go(choices, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(&choices, &mut Vec::new(), visit)
}

pub fn isomorphic(t: &GeomTheory, a: &FinModel, b: &FinModel) -> bool {
    if a.sizes != b.sizes {
        return false;
    }
    if a == b {
        return true;
    }
    for_each_relabelling(t, &a.sizes, &mut |perms| a.permuted(t, perms) == *b)
}

/// The least relabelling of `m`; isomorphic models share it.
pub fn canonical_form(t: &GeomTheory, m: &FinModel) -> FinModel {
    let mut best = m.clone();
    for_each_relabelling(t, &m.sizes, &mut |perms| {
        let p = m.permuted(t, perms);
        if p < best {
            best = p;
        }
        false
    });
    best
}

/// Keeps the first model of each isomorphism class, preserving order.
pub fn dedupe_iso(t: &GeomTheory, models: Vec<FinModel>) -> Vec<FinModel> {
    let mut seen = BTreeSet::new();
    models.into_iter().filter(|m| seen.insert(canonical_form(t, m))).collect()
}

/// Every relabelling of `m`, without repeats, in increasing order.
pub fn orbit(t: &GeomTheory, m: &FinModel) -> Vec<FinModel> {
    let mut seen = BTreeSet::new();
    for_each_relabelling(t, &m.sizes, &mut |perms| {
        seen.insert(m.permuted(t, perms));
        false
    });
    seen.into_iter().collect()
}
