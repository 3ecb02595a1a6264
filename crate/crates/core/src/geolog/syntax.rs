use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

pub type SortId = usize;
pub type FuncId = usize;
pub type PredId = usize;
/// Position of a variable in its sequent's variable table.
pub type Slot = usize;

/// Largest base sort for a finite-powerset sort; its carrier has `2^n` elements.
pub const FIN_BASE_BOUND: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SortKind {
    Primitive,
    /// Finite subsets of another sort, elements encoded as bit masks.
    Fin(SortId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sort {
    pub name: String,
    pub kind: SortKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Func {
    pub name: String,
    pub args: Vec<SortId>,
    pub ret: SortId,
    /// Partial functions may be undefined; an atom with an undefined term is false.
    pub partial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pred {
    pub name: String,
    pub args: Vec<SortId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Slot),
    App(FuncId, Vec<Term>),
}

impl Term {
    pub fn var(s: Slot) -> Self {
        Term::Var(s)
    }

    pub fn app(f: FuncId, args: Vec<Term>) -> Self {
        Term::App(f, args)
    }

    pub fn constant(f: FuncId) -> Self {
        Term::App(f, Vec::new())
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Slot>) {
        match self {
            Term::Var(s) => {
                out.insert(*s);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn collect_funcs(&self, out: &mut BTreeSet<FuncId>) {
        if let Term::App(f, args) = self {
            out.insert(*f);
            args.iter().for_each(|a| a.collect_funcs(out));
        }
    }

    pub fn rename(&self, map: &dyn Fn(Slot) -> Slot) -> Term {
        match self {
            Term::Var(s) => Term::Var(map(*s)),
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| a.rename(map)).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Eq(Term, Term),
    Pred(PredId, Vec<Term>),
    /// `element ∈ set`.
    Member(Term, Term),
    /// `set == {t1, ..., tn}`.
    SetEq(Term, Vec<Term>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Vec<Slot>, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn and(parts: Vec<Formula>) -> Self {
        Formula::And(parts)
    }

    pub fn or(parts: Vec<Formula>) -> Self {
        Formula::Or(parts)
    }

    /// `∃ slots. body`; with no slots, just `body`.
    pub fn exists(slots: Vec<Slot>, body: Formula) -> Self {
        if slots.is_empty() {
            body
        } else {
            Formula::Exists(slots, Box::new(body))
        }
    }

    /// Free variables.
    pub fn free_vars(&self) -> BTreeSet<Slot> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Slot>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) | Formula::Member(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            Formula::SetEq(s, ts) => {
                s.collect_vars(out);
                ts.iter().for_each(|t| t.collect_vars(out));
            }
            Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| p.collect_free(out)),
            Formula::Exists(slots, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                for s in slots {
                    inner.remove(s);
                }
                out.extend(inner);
            }
        }
    }

    pub(crate) fn collect_symbols(&self, funcs: &mut BTreeSet<FuncId>, preds: &mut BTreeSet<PredId>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) | Formula::Member(a, b) => {
                a.collect_funcs(funcs);
                b.collect_funcs(funcs);
            }
            Formula::Pred(p, args) => {
                preds.insert(*p);
                args.iter().for_each(|a| a.collect_funcs(funcs));
            }
            Formula::SetEq(s, ts) => {
                s.collect_funcs(funcs);
                ts.iter().for_each(|t| t.collect_funcs(funcs));
            }
            Formula::And(ps) | Formula::Or(ps) => ps.iter().for_each(|p| p.collect_symbols(funcs, preds)),
            Formula::Exists(_, body) => body.collect_symbols(funcs, preds),
        }
    }

    /// Renames every variable occurrence, bound or free.
    pub fn rename(&self, map: &dyn Fn(Slot) -> Slot) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bottom => Formula::Bottom,
            Formula::Eq(a, b) => Formula::Eq(a.rename(map), b.rename(map)),
            Formula::Member(a, b) => Formula::Member(a.rename(map), b.rename(map)),
            Formula::Pred(p, args) => Formula::Pred(*p, args.iter().map(|a| a.rename(map)).collect()),
            Formula::SetEq(s, ts) => Formula::SetEq(s.rename(map), ts.iter().map(|t| t.rename(map)).collect()),
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.rename(map)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.rename(map)).collect()),
            Formula::Exists(slots, body) => {
                Formula::Exists(slots.iter().map(|&s| map(s)).collect(), Box::new(body.rename(map)))
            }
        }
    }

    fn map_symbols(&self, fm: &dyn Fn(FuncId) -> FuncId, pm: &dyn Fn(PredId) -> PredId) -> Formula {
        fn term(t: &Term, fm: &dyn Fn(FuncId) -> FuncId) -> Term {
            match t {
                Term::Var(s) => Term::Var(*s),
                Term::App(f, args) => Term::App(fm(*f), args.iter().map(|a| term(a, fm)).collect()),
            }
        }
        match self {
            Formula::Top => Formula::Top,
            Formula::Bottom => Formula::Bottom,
            Formula::Eq(a, b) => Formula::Eq(term(a, fm), term(b, fm)),
            Formula::Member(a, b) => Formula::Member(term(a, fm), term(b, fm)),
            Formula::Pred(p, args) => Formula::Pred(pm(*p), args.iter().map(|a| term(a, fm)).collect()),
            Formula::SetEq(s, ts) => Formula::SetEq(term(s, fm), ts.iter().map(|t| term(t, fm)).collect()),
            Formula::And(ps) => Formula::And(ps.iter().map(|p| p.map_symbols(fm, pm)).collect()),
            Formula::Or(ps) => Formula::Or(ps.iter().map(|p| p.map_symbols(fm, pm)).collect()),
            Formula::Exists(slots, body) => Formula::Exists(slots.clone(), Box::new(body.map_symbols(fm, pm))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarDecl {
    pub name: String,
    pub sort: SortId,
}

/// `premise ⊢_{x1..xk} conclusion`: slots `0..context` are the context,
/// later slots are bound by existentials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub label: String,
    pub vars: Vec<VarDecl>,
    pub context: usize,
    pub premise: Formula,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn context_vars(&self) -> &[VarDecl] {
        &self.vars[..self.context]
    }

    fn map_symbols(
        &self,
        sm: &dyn Fn(SortId) -> SortId,
        fm: &dyn Fn(FuncId) -> FuncId,
        pm: &dyn Fn(PredId) -> PredId,
    ) -> Sequent {
        Sequent {
            label: self.label.clone(),
            vars: self.vars.iter().map(|v| VarDecl { name: v.name.clone(), sort: sm(v.sort) }).collect(),
            context: self.context,
            premise: self.premise.map_symbols(fm, pm),
            conclusion: self.conclusion.map_symbols(fm, pm),
        }
    }
}

/// Allocates variable slots for one sequent.
#[derive(Clone, Debug, Default)]
pub struct SequentBuilder {
    vars: Vec<VarDecl>,
    context: usize,
    sealed: bool,
}

impl SequentBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// A context variable; all must be declared before any bound one.
    pub fn context(&mut self, name: &str, sort: SortId) -> Slot {
        assert!(!self.sealed, "context variables come before bound ones");
        self.vars.push(VarDecl { name: name.to_owned(), sort });
        self.context += 1;
        self.vars.len() - 1
    }

    /// A variable to be bound by an existential.
    pub fn bound(&mut self, name: &str, sort: SortId) -> Slot {
        self.sealed = true;
        self.vars.push(VarDecl { name: name.to_owned(), sort });
        self.vars.len() - 1
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn finish(self, label: &str, premise: Formula, conclusion: Formula) -> Sequent {
        Sequent { label: label.to_owned(), vars: self.vars, context: self.context, premise, conclusion }
    }
}

/// A multi-sorted geometric theory with finitely indexed disjunctions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeomTheory {
    pub sorts: Vec<Sort>,
    pub funcs: Vec<Func>,
    pub preds: Vec<Pred>,
    pub axioms: Vec<Sequent>,
    /// Labels of axioms whose disjunction was truncated at a finite bound.
    pub bounded: Vec<String>,
}

impl GeomTheory {
    pub fn new() -> Self {
        Self::default()
    }

    fn name_taken(&self, name: &str) -> bool {
        self.sort_id(name).is_some() || self.func_id(name).is_some() || self.pred_id(name).is_some()
    }

    pub fn add_sort(&mut self, name: &str) -> Result<SortId> {
        if self.name_taken(name) {
            return Err(Error::DuplicateElement(name.to_owned()));
        }
        self.sorts.push(Sort { name: name.to_owned(), kind: SortKind::Primitive });
        Ok(self.sorts.len() - 1)
    }

    pub fn add_fin_sort(&mut self, name: &str, base: SortId) -> Result<SortId> {
        if self.name_taken(name) {
            return Err(Error::DuplicateElement(name.to_owned()));
        }
        match self.sorts.get(base).map(|s| &s.kind) {
            Some(SortKind::Primitive) => {}
            Some(SortKind::Fin(_)) => return Err(Error::IllSorted(format!("{name}: nested finite powersets"))),
            None => return Err(Error::UnknownSymbol(format!("sort #{base}"))),
        }
        self.sorts.push(Sort { name: name.to_owned(), kind: SortKind::Fin(base) });
        Ok(self.sorts.len() - 1)
    }

    pub fn add_func(&mut self, name: &str, args: &[SortId], ret: SortId) -> Result<FuncId> {
        self.push_func(name, args, ret, false)
    }

    pub fn add_partial_func(&mut self, name: &str, args: &[SortId], ret: SortId) -> Result<FuncId> {
        self.push_func(name, args, ret, true)
    }

    pub fn add_const(&mut self, name: &str, sort: SortId) -> Result<FuncId> {
        self.push_func(name, &[], sort, false)
    }

    fn push_func(&mut self, name: &str, args: &[SortId], ret: SortId, partial: bool) -> Result<FuncId> {
        if self.name_taken(name) {
            return Err(Error::DuplicateElement(name.to_owned()));
        }
        if let Some(&bad) = args.iter().chain([&ret]).find(|&&s| s >= self.sorts.len()) {
            return Err(Error::UnknownSymbol(format!("sort #{bad}")));
        }
        self.funcs.push(Func { name: name.to_owned(), args: args.to_vec(), ret, partial });
        Ok(self.funcs.len() - 1)
    }

    pub fn add_pred(&mut self, name: &str, args: &[SortId]) -> Result<PredId> {
        if self.name_taken(name) {
            return Err(Error::DuplicateElement(name.to_owned()));
        }
        if let Some(&bad) = args.iter().find(|&&s| s >= self.sorts.len()) {
            return Err(Error::UnknownSymbol(format!("sort #{bad}")));
        }
        self.preds.push(Pred { name: name.to_owned(), args: args.to_vec() });
        Ok(self.preds.len() - 1)
    }

    /// Adds an axiom after checking that it is well sorted.
    pub fn add_axiom(&mut self, s: Sequent) -> Result<()> {
        self.check_sequent(&s)?;
        self.axioms.push(s);
        Ok(())
    }

    pub fn sort_id(&self, name: &str) -> Option<SortId> {
        self.sorts.iter().position(|s| s.name == name)
    }

    pub fn func_id(&self, name: &str) -> Option<FuncId> {
        self.funcs.iter().position(|f| f.name == name)
    }

    pub fn pred_id(&self, name: &str) -> Option<PredId> {
        self.preds.iter().position(|p| p.name == name)
    }

    pub fn sort(&self, name: &str) -> Result<SortId> {
        self.sort_id(name).ok_or_else(|| Error::UnknownSymbol(name.to_owned()))
    }

    pub fn func(&self, name: &str) -> Result<FuncId> {
        self.func_id(name).ok_or_else(|| Error::UnknownSymbol(name.to_owned()))
    }

    pub fn pred(&self, name: &str) -> Result<PredId> {
        self.pred_id(name).ok_or_else(|| Error::UnknownSymbol(name.to_owned()))
    }

    pub fn term_sort(&self, vars: &[VarDecl], t: &Term) -> Result<SortId> {
        match t {
            Term::Var(s) => {
                vars.get(*s).map(|v| v.sort).ok_or_else(|| Error::IllSorted(format!("variable slot {s} undeclared")))
            }
            Term::App(f, args) => {
                let func = self.funcs.get(*f).ok_or_else(|| Error::UnknownSymbol(format!("function #{f}")))?;
                if func.args.len() != args.len() {
                    return Err(Error::IllSorted(format!(
                        "{} takes {} arguments, given {}",
                        func.name,
                        func.args.len(),
                        args.len()
                    )));
                }
                for (i, (a, &want)) in args.iter().zip(&func.args).enumerate() {
                    let got = self.term_sort(vars, a)?;
                    if got != want {
                        return Err(Error::IllSorted(format!(
                            "argument {} of {} has sort {}, expected {}",
                            i + 1,
                            func.name,
                            self.sorts[got].name,
                            self.sorts[want].name
                        )));
                    }
                }
                Ok(func.ret)
            }
        }
    }

    fn element_sort_of_set(&self, vars: &[VarDecl], set: &Term) -> Result<SortId> {
        let s = self.term_sort(vars, set)?;
        match self.sorts[s].kind {
            SortKind::Fin(base) => Ok(base),
            SortKind::Primitive => {
                Err(Error::IllSorted(format!("{} is not a finite-powerset sort", self.sorts[s].name)))
            }
        }
    }

    pub fn check_formula(&self, vars: &[VarDecl], f: &Formula) -> Result<()> {
        match f {
            Formula::Top | Formula::Bottom => Ok(()),
            Formula::Eq(a, b) => {
                let (sa, sb) = (self.term_sort(vars, a)?, self.term_sort(vars, b)?);
                if sa != sb {
                    return Err(Error::IllSorted(format!(
                        "equation between sorts {} and {}",
                        self.sorts[sa].name, self.sorts[sb].name
                    )));
                }
                Ok(())
            }
            Formula::Pred(p, args) => {
                let pred = self.preds.get(*p).ok_or_else(|| Error::UnknownSymbol(format!("predicate #{p}")))?;
                if pred.args.len() != args.len() {
                    return Err(Error::IllSorted(format!("{} takes {} arguments", pred.name, pred.args.len())));
                }
                for (a, &want) in args.iter().zip(&pred.args) {
                    if self.term_sort(vars, a)? != want {
                        return Err(Error::IllSorted(format!("argument of {} has the wrong sort", pred.name)));
                    }
                }
                Ok(())
            }
            Formula::Member(e, set) => {
                let base = self.element_sort_of_set(vars, set)?;
                if self.term_sort(vars, e)? != base {
                    return Err(Error::IllSorted("member of the wrong sort".into()));
                }
                Ok(())
            }
            Formula::SetEq(set, elems) => {
                let base = self.element_sort_of_set(vars, set)?;
                for e in elems {
                    if self.term_sort(vars, e)? != base {
                        return Err(Error::IllSorted("set literal element of the wrong sort".into()));
                    }
                }
                Ok(())
            }
            Formula::And(ps) | Formula::Or(ps) => ps.iter().try_for_each(|p| self.check_formula(vars, p)),
            Formula::Exists(slots, body) => {
                if let Some(s) = slots.iter().find(|&&s| s >= vars.len()) {
                    return Err(Error::IllSorted(format!("bound slot {s} undeclared")));
                }
                self.check_formula(vars, body)
            }
        }
    }

    pub fn check_sequent(&self, s: &Sequent) -> Result<()> {
        if let Some(v) = s.vars.iter().find(|v| v.sort >= self.sorts.len()) {
            return Err(Error::UnknownSymbol(format!("sort of variable {}", v.name)));
        }
        for f in [&s.premise, &s.conclusion] {
            self.check_formula(&s.vars, f)?;
            if let Some(&free) = f.free_vars().iter().find(|&&v| v >= s.context) {
                return Err(Error::IllSorted(format!(
                    "{}: variable {} is neither in context nor bound",
                    s.label, s.vars[free].name
                )));
            }
        }
        Ok(())
    }

    /// Checks every axiom and every declaration.
    pub fn validate(&self) -> Result<()> {
        for f in &self.funcs {
            if f.args.iter().chain([&f.ret]).any(|&s| s >= self.sorts.len()) {
                return Err(Error::UnknownSymbol(format!("sort in {}", f.name)));
            }
        }
        self.axioms.iter().try_for_each(|s| self.check_sequent(s))
    }

    /// Function and predicate symbols mentioned by an axiom.
    pub fn symbols_of(&self, s: &Sequent) -> (BTreeSet<FuncId>, BTreeSet<PredId>) {
        let mut funcs = BTreeSet::new();
        let mut preds = BTreeSet::new();
        s.premise.collect_symbols(&mut funcs, &mut preds);
        s.conclusion.collect_symbols(&mut funcs, &mut preds);
        (funcs, preds)
    }

    /// Adds the declarations and axioms of `other`, identifying symbols by
    /// name. Shared names must have identical declarations.
    pub fn merge(&mut self, other: &GeomTheory) -> Result<()> {
        let mut sort_map = Vec::new();
        for s in &other.sorts {
            let kind = match s.kind {
                SortKind::Primitive => SortKind::Primitive,
                SortKind::Fin(b) => SortKind::Fin(sort_map[b]),
            };
            let id = match self.sort_id(&s.name) {
                Some(id) if self.sorts[id].kind == kind => id,
                Some(_) => return Err(Error::IllSorted(format!("sort {} declared twice differently", s.name))),
                None => match kind {
                    SortKind::Primitive => self.add_sort(&s.name)?,
                    SortKind::Fin(b) => self.add_fin_sort(&s.name, b)?,
                },
            };
            sort_map.push(id);
        }
        let mut func_map = Vec::new();
        for f in &other.funcs {
            let args: Vec<SortId> = f.args.iter().map(|&a| sort_map[a]).collect();
            let ret = sort_map[f.ret];
            let id = match self.func_id(&f.name) {
                Some(id) => {
                    let g = &self.funcs[id];
                    if g.args != args || g.ret != ret || g.partial != f.partial {
                        return Err(Error::IllSorted(format!("function {} declared twice differently", f.name)));
                    }
                    id
                }
                None => self.push_func(&f.name, &args, ret, f.partial)?,
            };
            func_map.push(id);
        }
        let mut pred_map = Vec::new();
        for p in &other.preds {
            let args: Vec<SortId> = p.args.iter().map(|&a| sort_map[a]).collect();
            let id = match self.pred_id(&p.name) {
                Some(id) if self.preds[id].args == args => id,
                Some(_) => return Err(Error::IllSorted(format!("predicate {} declared twice differently", p.name))),
                None => self.add_pred(&p.name, &args)?,
            };
            pred_map.push(id);
        }
        let existing: BTreeSet<String> = self.axioms.iter().map(|a| a.label.clone()).collect();
        for ax in &other.axioms {
            let mapped = ax.map_symbols(&|s| sort_map[s], &|f| func_map[f], &|p| pred_map[p]);
            if existing.contains(&ax.label) {
                if self.axioms.iter().any(|a| a == &mapped) {
                    continue;
                }
                return Err(Error::DuplicateElement(format!("axiom {}", ax.label)));
            }
            self.add_axiom(mapped)?;
        }
        for b in &other.bounded {
            if !self.bounded.contains(b) {
                self.bounded.push(b.clone());
            }
        }
        Ok(())
    }

    /// Translates an axiom of a theory along symbol maps into this one.
    pub(crate) fn translate(
        s: &Sequent,
        sm: &dyn Fn(SortId) -> SortId,
        fm: &dyn Fn(FuncId) -> FuncId,
        pm: &dyn Fn(PredId) -> PredId,
    ) -> Sequent {
        s.map_symbols(sm, fm, pm)
    }

    pub fn render_term(&self, vars: &[VarDecl], t: &Term) -> String {
        match t {
            Term::Var(s) => vars[*s].name.clone(),
            Term::App(f, args) if args.is_empty() => self.funcs[*f].name.clone(),
            Term::App(f, args) => {
                let parts: Vec<String> = args.iter().map(|a| self.render_term(vars, a)).collect();
                format!("{}({})", self.funcs[*f].name, parts.join(", "))
            }
        }
    }

    /// Renders in the text syntax: `/\`, `\/`, `exists x:X.`, `in`, `== {..}`.
    pub fn render_formula(&self, vars: &[VarDecl], f: &Formula) -> String {
        let wrap = |child: &Formula, parent_and: bool| {
            let s = self.render_formula(vars, child);
            let needs = match child {
                Formula::And(ps) => parent_and || ps.len() < 2,
                Formula::Or(_) => true,
                Formula::Exists(..) => true,
                _ => false,
            };
            if needs {
                format!("({s})")
            } else {
                s
            }
        };
        match f {
            Formula::Top => "true".into(),
            Formula::Bottom => "false".into(),
            Formula::Eq(a, b) => format!("{} = {}", self.render_term(vars, a), self.render_term(vars, b)),
            Formula::Pred(p, args) => {
                let parts: Vec<String> = args.iter().map(|a| self.render_term(vars, a)).collect();
                format!("{}({})", self.preds[*p].name, parts.join(", "))
            }
            Formula::Member(e, s) => format!("{} in {}", self.render_term(vars, e), self.render_term(vars, s)),
            Formula::SetEq(s, elems) => {
                let parts: Vec<String> = elems.iter().map(|e| self.render_term(vars, e)).collect();
                format!("{} == {{{}}}", self.render_term(vars, s), parts.join(", "))
            }
            Formula::And(ps) if ps.is_empty() => "true".into(),
            Formula::Or(ps) if ps.is_empty() => "false".into(),
            Formula::And(ps) => ps.iter().map(|p| wrap(p, true)).collect::<Vec<_>>().join(" /\\ "),
            Formula::Or(ps) => ps.iter().map(|p| wrap(p, false)).collect::<Vec<_>>().join(" \\/ "),
            Formula::Exists(slots, body) => {
                let binders: Vec<String> =
                    slots.iter().map(|&s| format!("{}:{}", vars[s].name, self.sorts[vars[s].sort].name)).collect();
                format!("exists {}. {}", binders.join(", "), self.render_formula(vars, body))
            }
        }
    }

    /// One axiom as `axiom label [x:X] premise |- conclusion;`.
    pub fn render_sequent(&self, s: &Sequent) -> String {
        let ctx: Vec<String> =
            s.context_vars().iter().map(|v| format!("{}:{}", v.name, self.sorts[v.sort].name)).collect();
        format!(
            "axiom {} [{}] {} |- {};",
            s.label,
            ctx.join(", "),
            self.render_formula(&s.vars, &s.premise),
            self.render_formula(&s.vars, &s.conclusion)
        )
    }

    /// Declarations and axioms, one per line.
    pub fn render_body(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for s in &self.sorts {
            match s.kind {
                SortKind::Primitive => lines.push(format!("sort {};", s.name)),
                SortKind::Fin(b) => lines.push(format!("sort {} = fin {};", s.name, self.sorts[b].name)),
            }
        }
        for f in &self.funcs {
            let args: Vec<&str> = f.args.iter().map(|&a| self.sorts[a].name.as_str()).collect();
            let kw = if f.partial { "pfunc" } else { "func" };
            let sep = if args.is_empty() { "" } else { " " };
            lines.push(format!("{kw} {}: {}{sep}-> {};", f.name, args.join(" "), self.sorts[f.ret].name));
        }
        for p in &self.preds {
            let args: Vec<&str> = p.args.iter().map(|&a| self.sorts[a].name.as_str()).collect();
            lines.push(format!("pred {}: {};", p.name, args.join(" ")));
        }
        for a in &self.axioms {
            lines.push(self.render_sequent(a));
        }
        for b in &self.bounded {
            lines.push(format!("bounded {b};"));
        }
        lines
    }

    /// Map from names to sort ids, for callers building theories by name.
    pub fn sort_table(&self) -> HashMap<&str, SortId> {
        self.sorts.iter().enumerate().map(|(i, s)| (s.name.as_str(), i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_sortedness() {
        let mut t = GeomTheory::new();
        let x = t.add_sort("X").unwrap();
        let y = t.add_sort("Y").unwrap();
        let f = t.add_func("f", &[x], y).unwrap();
        let mut b = SequentBuilder::new();
        let v = b.context("v", x);
        let bad = b.finish("bad", Formula::Top, Formula::eq(Term::var(v), Term::app(f, vec![Term::var(v)])));
        assert!(matches!(t.add_axiom(bad), Err(Error::IllSorted(_))));
        let mut b = SequentBuilder::new();
        let v = b.context("v", x);
        let w = b.bound("w", y);
        let good = b.finish(
            "total",
            Formula::Top,
            Formula::exists(vec![w], Formula::eq(Term::app(f, vec![Term::var(v)]), Term::var(w))),
        );
        t.add_axiom(good).unwrap();
        assert_eq!(t.render_sequent(&t.axioms[0]), "axiom total [v:X] true |- exists w:Y. f(v) = w;");
    }

    #[test]
    fn unbound_variable_is_rejected() {
        let mut t = GeomTheory::new();
        let x = t.add_sort("X").unwrap();
        let mut b = SequentBuilder::new();
        let w = b.bound("w", x);
        let s = b.finish("loose", Formula::Top, Formula::eq(Term::var(w), Term::var(w)));
        assert!(matches!(t.add_axiom(s), Err(Error::IllSorted(_))));
    }

    #[test]
    fn merge_identifies_by_name() {
        let mut a = GeomTheory::new();
        a.add_sort("X").unwrap();
        let mut b = GeomTheory::new();
        let x = b.add_sort("X").unwrap();
        b.add_pred("P", &[x]).unwrap();
        a.merge(&b).unwrap();
        assert_eq!(a.sorts.len(), 1);
        assert_eq!(a.preds[0].args, vec![0]);
        let mut c = GeomTheory::new();
        let y = c.add_sort("Y").unwrap();
        c.add_pred("P", &[y]).unwrap();
        assert!(a.merge(&c).is_err());
    }
}
