//! Random geometric theories over a fixed signature.

use locus::geolog::syntax::{Formula, GeomTheory, SequentBuilder, Term, VarDecl};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Signature: sort `X`, `FX = fin X`, constant `c`, total `f`, partial `g`,
/// total `h: X -> FX`, predicates `P(X)` and `R(X, X)`.
pub fn signature() -> GeomTheory {
    let mut t = GeomTheory::new();
    let x = t.add_sort("X").unwrap();
    let fx = t.add_fin_sort("FX", x).unwrap();
    t.add_const("c", x).unwrap();
    t.add_func("f", &[x], x).unwrap();
    t.add_partial_func("g", &[x], x).unwrap();
    t.add_func("h", &[x], fx).unwrap();
    t.add_pred("P", &[x]).unwrap();
    t.add_pred("R", &[x, x]).unwrap();
    t
}

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    t: &'a GeomTheory,
    vars: Vec<VarDecl>,
}

impl Gen<'_> {
    fn term(&mut self, scope: &[usize], depth: usize) -> Term {
        let pick = if depth == 0 { self.rng.gen_range(0..2) } else { self.rng.gen_range(0..4) };
        match pick {
            0 if !scope.is_empty() => Term::var(scope[self.rng.gen_range(0..scope.len())]),
            0 | 1 => Term::constant(self.t.func_id("c").unwrap()),
            2 => Term::app(self.t.func_id("f").unwrap(), vec![self.term(scope, depth - 1)]),
            _ => Term::app(self.t.func_id("g").unwrap(), vec![self.term(scope, depth - 1)]),
        }
    }

    fn atom(&mut self, scope: &[usize]) -> Formula {
        let h = self.t.func_id("h").unwrap();
        match self.rng.gen_range(0..7) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            2 => Formula::eq(self.term(scope, 1), self.term(scope, 1)),
            3 => Formula::Pred(self.t.pred_id("P").unwrap(), vec![self.term(scope, 1)]),
            4 => Formula::Pred(self.t.pred_id("R").unwrap(), vec![self.term(scope, 0), self.term(scope, 1)]),
            5 => Formula::Member(self.term(scope, 0), Term::app(h, vec![self.term(scope, 0)])),
            _ => {
                let k = self.rng.gen_range(0..=2);
                let elems = (0..k).map(|_| self.term(scope, 0)).collect();
                Formula::SetEq(Term::app(h, vec![self.term(scope, 0)]), elems)
            }
        }
    }

    fn formula(&mut self, scope: &[usize], depth: usize) -> Formula {
        if depth == 0 {
            return self.atom(scope);
        }
        match self.rng.gen_range(0..4) {
            0 => self.atom(scope),
            1 => Formula::And(vec![self.formula(scope, depth - 1), self.formula(scope, depth - 1)]),
            2 => Formula::Or(vec![self.formula(scope, depth - 1), self.formula(scope, depth - 1)]),
            _ => {
                let slot = self.vars.len();
                self.vars.push(VarDecl { name: format!("y{slot}"), sort: 0 });
                let inner: Vec<usize> = scope.iter().copied().chain([slot]).collect();
                Formula::Exists(vec![slot], Box::new(self.formula(&inner, depth - 1)))
            }
        }
    }
}

/// A random theory over [`signature`] with one to three axioms.
pub fn random_theory(seed: u64) -> GeomTheory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = signature();
    let sig = t.clone();
    for i in 0..rng.gen_range(1..=3) {
        let context = rng.gen_range(0..=2);
        let vars = (0..context).map(|k| VarDecl { name: format!("x{k}"), sort: 0 }).collect();
        let mut g = Gen { rng: &mut rng, t: &sig, vars };
        let scope: Vec<usize> = (0..context).collect();
        let premise = g.formula(&scope, 1);
        let conclusion = g.formula(&scope, 2);
        let mut b = SequentBuilder::new();
        for v in &g.vars[..context] {
            b.context(&v.name, v.sort);
        }
        for v in &g.vars[context..] {
            b.bound(&v.name, v.sort);
        }
        t.add_axiom(b.finish(&format!("ax{i}"), premise, conclusion)).unwrap();
    }
    t
}
