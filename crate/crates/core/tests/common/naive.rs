//! A direct recursive interpreter for geometric formulas, and exhaustive
//! enumeration of finite structures. Shares nothing with the compiled evaluator.

use locus::geolog::syntax::{Formula, GeomTheory, Sequent, SortKind, Term, VarDecl};
use locus::geolog::{FinModel, UNDEFINED};

fn index(m: &FinModel, sorts: &[usize], values: &[usize]) -> usize {
    let mut idx = 0;
    for (s, v) in sorts.iter().zip(values) {
        idx = idx * m.sizes[*s] + v;
    }
    idx
}

pub fn term(t: &GeomTheory, m: &FinModel, env: &[usize], term_: &Term) -> Option<usize> {
    match term_ {
        Term::Var(s) => Some(env[*s]),
        Term::App(f, args) => {
            let mut values = Vec::new();
            for a in args {
                values.push(term(t, m, env, a)?);
            }
            let v = m.funcs[*f][index(m, &t.funcs[*f].args, &values)];
            if v == UNDEFINED {
                None
            } else {
                Some(v)
            }
        }
    }
}

pub fn formula(t: &GeomTheory, m: &FinModel, vars: &[VarDecl], env: &mut Vec<usize>, f: &Formula) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bottom => false,
        Formula::Eq(a, b) => match (term(t, m, env, a), term(t, m, env, b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        },
        Formula::Pred(p, args) => {
            let mut values = Vec::new();
            for a in args {
                match term(t, m, env, a) {
                    Some(v) => values.push(v),
                    None => return false,
                }
            }
            m.preds[*p][index(m, &t.preds[*p].args, &values)]
        }
        Formula::Member(e, s) => match (term(t, m, env, e), term(t, m, env, s)) {
            (Some(x), Some(set)) => set >> x & 1 == 1,
            _ => false,
        },
        Formula::SetEq(s, elems) => {
            let Some(set) = term(t, m, env, s) else { return false };
            let mut mask = 0;
            for e in elems {
                match term(t, m, env, e) {
                    Some(x) => mask |= 1 << x,
                    None => return false,
                }
            }
            set == mask
        }
        Formula::And(ps) => ps.iter().all(|p| formula(t, m, vars, env, p)),
        Formula::Or(ps) => ps.iter().any(|p| formula(t, m, vars, env, p)),
        Formula::Exists(slots, body) => exists(t, m, vars, env, slots, body),
    }
}

fn exists(
    t: &GeomTheory,
    m: &FinModel,
    vars: &[VarDecl],
    env: &mut Vec<usize>,
    slots: &[usize],
    body: &Formula,
) -> bool {
    let Some((&first, rest)) = slots.split_first() else {
        return formula(t, m, vars, env, body);
    };
    let saved = env[first];
    for v in 0..m.sizes[vars[first].sort] {
        env[first] = v;
        if exists(t, m, vars, env, rest, body) {
            env[first] = saved;
            return true;
        }
    }
    env[first] = saved;
    false
}

pub fn sequent_holds(t: &GeomTheory, m: &FinModel, s: &Sequent) -> bool {
    let mut env = vec![0; s.vars.len()];
    all_contexts(t, m, s, 0, &mut env)
}

fn all_contexts(t: &GeomTheory, m: &FinModel, s: &Sequent, k: usize, env: &mut Vec<usize>) -> bool {
    if k == s.context {
        return !formula(t, m, &s.vars, env, &s.premise) || formula(t, m, &s.vars, env, &s.conclusion);
    }
    (0..m.sizes[s.vars[k].sort]).all(|v| {
        env[k] = v;
        all_contexts(t, m, s, k + 1, env)
    })
}

pub fn is_model(t: &GeomTheory, m: &FinModel) -> bool {
    t.axioms.iter().all(|s| sequent_holds(t, m, s))
}

/// Every structure with primitive carriers of size `0..=cap`, models or not.
pub fn structures(t: &GeomTheory, cap: usize, visit: &mut dyn FnMut(&FinModel)) {
    let primitive: Vec<usize> = (0..t.sorts.len()).filter(|&s| t.sorts[s].kind == SortKind::Primitive).collect();
    let mut sizes = vec![0; t.sorts.len()];
    let combos = (cap + 1).pow(primitive.len() as u32);
    for mut code in 0..combos {
        for &s in &primitive {
            sizes[s] = code % (cap + 1);
            code /= cap + 1;
        }
        for (s, sort) in t.sorts.iter().enumerate() {
            if let SortKind::Fin(b) = sort.kind {
                sizes[s] = 1 << sizes[b];
            }
        }
        // One slot per table entry; each slot ranges over the codomain, plus undefined for partial functions.
        let mut slots: Vec<Vec<usize>> = Vec::new();
        for func in &t.funcs {
            let dom: usize = func.args.iter().map(|&s| sizes[s]).product();
            let mut range: Vec<usize> = (0..sizes[func.ret]).collect();
            if func.partial {
                range.push(UNDEFINED);
            }
            slots.extend(std::iter::repeat_n(range, dom));
        }
        let pred_lens: Vec<usize> = t.preds.iter().map(|p| p.args.iter().map(|&s| sizes[s]).product()).collect();
        for len in &pred_lens {
            slots.extend(std::iter::repeat_n(vec![0, 1], *len));
        }
        if slots.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0; slots.len()];
        loop {
            let mut it = pick.iter().zip(&slots).map(|(&i, r)| r[i]);
            let funcs = t
                .funcs
                .iter()
                .map(|f| {
                    let dom: usize = f.args.iter().map(|&s| sizes[s]).product();
                    it.by_ref().take(dom).collect()
                })
                .collect();
            let preds = pred_lens.iter().map(|&len| it.by_ref().take(len).map(|v| v == 1).collect()).collect();
            visit(&FinModel { sizes: sizes.clone(), funcs, preds });
            let mut k = 0;
            while k < pick.len() {
                pick[k] += 1;
                if pick[k] < slots[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
            if k == pick.len() {
                break;
            }
        }
    }
}

/// Models with every primitive carrier of size at most `cap`, sorted.
pub fn models(t: &GeomTheory, cap: usize) -> Vec<FinModel> {
    let mut out = Vec::new();
    structures(t, cap, &mut |m| {
        if is_model(t, m) {
            out.push(m.clone());
        }
    });
    out.sort();
    out
}
