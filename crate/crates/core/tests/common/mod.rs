//! Brute-force oracles shared by the integration tests and the acceptance gate.
#![allow(dead_code)]

pub mod criteria;
pub mod gen;
pub mod naive;

use std::collections::BTreeSet;

use locus::order::{DistLattice, FinPoset};
use locus::points::PointSet;
use locus::present::{GrdSystem, PropTheory};
use rand::Rng;

/// Subsets of `0..n` as masks.
pub fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..1u64 << n
}

fn has(mask: u64, i: usize) -> bool {
    mask >> i & 1 == 1
}

/// Down-closed subsets of a poset, by checking every subset.
pub fn downsets_brute(p: &FinPoset) -> Vec<u64> {
    let n = p.len();
    subsets(n).filter(|&s| (0..n).all(|x| !has(s, x) || (0..n).all(|y| !p.leq(y, x) || has(s, y)))).collect()
}

/// Join-irreducibles read off the order alone: not the bottom, and not the
/// least upper bound of the elements strictly below.
pub fn join_irreducibles_brute(l: &DistLattice) -> Vec<usize> {
    let n = l.len();
    (0..n)
        .filter(|&x| {
            let below: Vec<usize> = (0..n).filter(|&y| y != x && l.leq(y, x)).collect();
            if below.is_empty() {
                return false;
            }
            // x is a join of elements below it iff it is the least upper bound of all of them.
            let uppers: Vec<usize> = (0..n).filter(|&u| below.iter().all(|&y| l.leq(y, u))).collect();
            !uppers.iter().all(|&u| l.leq(x, u))
        })
        .collect()
}

/// Prime filters by checking every subset against the definition.
pub fn prime_filters_brute(l: &DistLattice) -> BTreeSet<u64> {
    let n = l.len();
    subsets(n)
        .filter(|&f| {
            let up = (0..n).all(|x| !has(f, x) || (0..n).all(|y| !l.leq(x, y) || has(f, y)));
            let meets = (0..n).all(|x| (0..n).all(|y| !(has(f, x) && has(f, y)) || has(f, l.meet(x, y))));
            let proper = has(f, l.top()) && !has(f, l.bottom());
            let prime = (0..n).all(|x| (0..n).all(|y| !has(f, l.join(x, y)) || has(f, x) || has(f, y)));
            up && meets && proper && prime
        })
        .collect()
}

/// Models of a propositional theory, by checking every valuation.
pub fn models_brute(t: &PropTheory) -> BTreeSet<u64> {
    let n = t.symbols().len();
    subsets(n)
        .filter(|&v| {
            t.axioms().iter().all(|a| {
                !a.antecedent.iter().all(|&s| has(v, s)) || a.consequent.iter().any(|d| d.iter().all(|&s| has(v, s)))
            })
        })
        .collect()
}

/// Subsets `F` of generators such that every relation whose `λ` lies in `F`
/// has a disjunct whose `ρ` lies in `F`.
pub fn grd_points_brute(s: &GrdSystem) -> BTreeSet<u64> {
    subsets(s.g.len())
        .filter(|&f| {
            (0..s.r.len()).all(|r| {
                !s.lambda[r].iter().all(|&g| has(f, g))
                    || (0..s.d.len()).any(|d| s.pi[d] == r && s.rho[d].iter().all(|&g| has(f, g)))
            })
        })
        .collect()
}

pub fn masks(ps: &PointSet) -> BTreeSet<u64> {
    ps.points.iter().map(|p| p.ones().fold(0, |acc, i| acc | 1 << i)).collect()
}

/// Every function `0..n -> 0..m` as a table.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|f| (0..m).map(move |v| [f.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Every equivalence relation on `0..n`, as a class label per element.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let k = p.iter().max().map_or(0, |m| m + 1);
                (0..=k).map(move |c| [p.clone(), vec![c]].concat())
            })
            .collect();
    }
    out
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A random GRD system with at most `max_g` generators and short `λ`, `ρ`.
pub fn random_grd(rng: &mut impl Rng, max_g: usize) -> GrdSystem {
    let ng = rng.gen_range(1..=max_g);
    let nr = rng.gen_range(0..=4);
    let nd = if nr == 0 { 0 } else { rng.gen_range(0..=5) };
    let pick = |rng: &mut dyn rand::RngCore| {
        let k = rng.gen_range(0..=3.min(ng));
        let mut v: Vec<usize> = (0..k).map(|_| rng.gen_range(0..ng)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let lambda = (0..nr).map(|_| pick(rng)).collect();
    let pi = (0..nd).map(|_| rng.gen_range(0..nr)).collect();
    let rho = (0..nd).map(|_| pick(rng)).collect();
    GrdSystem::new(names("g", ng), names("r", nr), names("d", nd), lambda, pi, rho).expect("well formed")
}

/// Commands of the CLI corpus, one argument vector per line of `commands.txt`,
/// with file names resolved against the corpus directory.
pub fn corpus_commands() -> Vec<Vec<String>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/corpus");
    let list = std::fs::read_to_string(format!("{dir}/commands.txt")).expect("corpus command list");
    list.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|w| if w.ends_with(".locus") { format!("{dir}/{w}") } else { w.to_owned() })
                .collect()
        })
        .collect()
}

pub fn corpus_files() -> Vec<std::path::PathBuf> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/corpus");
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "locus"))
        .collect();
    files.sort();
    files
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).expect("golden file")
}
