//! One check per acceptance criterion. Each returns a short summary or the first failure.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use locus::expspace::{
    check_discrete_presentation, double_exp_two, exp_discrete_of_stone, exp_stone_of_discrete, is_inhabited, zero_exp,
    zero_exp_stone,
};
use locus::geolog::emit::{bounded_forall_translate, emit_construction, BoundedForall, Construction};
use locus::geolog::model::eval_formula;
use locus::geolog::site::{action_theory, catalogue, check_flat_epi, flat_theory, FinCategory};
use locus::geolog::{expand, find_models_with, grd_predicate_points, uniform_caps, FinModel, Formula, GeomTheory};
use locus::geolog::{SearchOptions, Seed, Term, TheoryExtension, VarDecl};
use locus::order::catalogue::{distributive_lattices, distributive_lattices_direct, posets_up_to_iso};
use locus::order::{
    closed_nucleus, downsets, fin_powerset, free_boolean_algebra, open_nucleus, sublocale_join, DistLattice,
};
use locus::points::{enumerate_points, prime_filters};
use locus::present::{frame_to_theory, grd_to_theory, lindenbaum};

use super::*;

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn plain() -> SearchOptions {
    SearchOptions { dedupe_iso: false, ..SearchOptions::default() }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn birkhoff() -> Outcome {
    let mut posets = 0;
    for n in 0..=6 {
        for p in posets_up_to_iso(n) {
            let l = downsets(&p);
            let family: Vec<FixedBitSet> =
                downsets_brute(&p).into_iter().map(|m| locus::bits::from_mask(m, n)).collect();
            let oracle = DistLattice::from_set_family(&family, None).map_err(|e| e.to_string())?;
            ensure(oracle.is_isomorphic(&l), || format!("downsets of a {n}-element poset differ from the oracle"))?;
            ensure(join_irreducibles_brute(&l).len() == n, || format!("{n}-element poset: wrong irreducible count"))?;
            ensure(l.irreducible_poset().isomorphism(&p).is_some(), || {
                format!("J(O(P)) is not P for a {n}-element poset")
            })?;
            posets += 1;
        }
    }
    // Known totals: posets on 0..=6 points, distributive lattices on 1..=10 elements.
    ensure(posets == 406, || format!("{posets} posets up to isomorphism"))?;
    let mut lattices = 0;
    for n in 1..=10 {
        for l in distributive_lattices_direct(n) {
            let j = l.irreducible_poset();
            ensure(join_irreducibles_brute(&l).len() == j.len(), || {
                format!("{n}-element lattice: wrong irreducibles")
            })?;
            ensure(downsets(&j).is_isomorphic(&l), || format!("O(J(L)) is not L for a {n}-element lattice"))?;
            lattices += 1;
        }
    }
    ensure(lattices == 109, || format!("{lattices} distributive lattices"))?;
    Ok(format!("{posets} posets (<= 6), {lattices} lattices (<= 10)"))
}

pub fn lindenbaum_recovery() -> Outcome {
    let cat = distributive_lattices(8);
    for l in &cat {
        let lb = lindenbaum(&frame_to_theory(l)).map_err(|e| e.to_string())?;
        let g = &lb.generator;
        ensure(lb.lattice.len() == l.len(), || format!("size {} recovered as {}", l.len(), lb.lattice.len()))?;
        let bijective = g.iter().collect::<BTreeSet<_>>().len() == l.len();
        let order = l.elements().all(|a| l.elements().all(|b| l.leq(a, b) == lb.lattice.leq(g[a], g[b])));
        ensure(bijective && order, || format!("a -> [a] is not an isomorphism for a {}-element lattice", l.len()))?;
    }
    Ok(format!("{} lattices (<= 8)", cat.len()))
}

pub fn prime_filters_agree() -> Outcome {
    let cat = distributive_lattices(12);
    let mut points = 0;
    for l in &cat {
        let fast = prime_filters(l);
        ensure(masks(&fast) == prime_filters_brute(l), || {
            format!("prime filters differ on a {}-element lattice", l.len())
        })?;
        let general = enumerate_points(&frame_to_theory(l)).map_err(|e| e.to_string())?;
        ensure(general == fast, || format!("frame points differ from prime filters on a {}-element lattice", l.len()))?;
        points += fast.len();
    }
    Ok(format!("{} lattices (<= 12), {points} points", cat.len()))
}

pub fn grd_cross_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a7d);
    let systems = 64;
    for i in 0..systems {
        let s = random_grd(&mut rng, 6);
        let direct = enumerate_points(&grd_to_theory(&s)).map_err(|e| e.to_string())?;
        let predicate = grd_predicate_points(&s).map_err(|e| e.to_string())?;
        ensure(direct == predicate, || format!("system {i}: predicate form disagrees"))?;
        ensure(masks(&direct) == grd_points_brute(&s), || format!("system {i}: oracle disagrees"))?;
    }
    Ok(format!("{systems} random systems, |G| <= 6"))
}

pub fn exponential_counts() -> Outcome {
    let mut cases = 0;
    for k in 0..=4 {
        let b = fin_powerset(&names("b", k)).map_err(|e| e.to_string())?;
        let y = prime_filters_brute(b.lattice()).len();
        for nx in 0..=3 {
            let x = names("x", nx);
            let e = exp_stone_of_discrete(&x, &b).map_err(|e| e.to_string())?;
            let expected = y.pow(nx as u32);
            ensure(e.point_count() == expected, || format!("|Y^X| for |X| = {nx}, |B| = {}", b.len()))?;
            let oracle: BTreeSet<Vec<usize>> = functions(nx, y).into_iter().collect();
            ensure(e.functions.iter().cloned().collect::<BTreeSet<_>>() == oracle, || {
                "points are not the functions".into()
            })?;
            if expected <= 16 {
                let alg = e.algebra().map_err(|e| e.to_string())?;
                ensure(alg.len() == 1 << expected, || format!("clopens of Y^X for |X| = {nx}"))?;
            }
            cases += 1;
        }
        for ny in 0..=4 {
            let target = names("y", ny);
            let maps = exp_discrete_of_stone(&b, &target).map_err(|e| e.to_string())?;
            let atoms = b.atoms();
            ensure(maps.len() == ny.pow(atoms.len() as u32), || format!("|Y^Spec A| for |Y| = {ny}, {k} atoms"))?;
            let got: BTreeSet<Vec<usize>> = maps.iter().map(|p| p.assignment.clone()).collect();
            let oracle: BTreeSet<Vec<usize>> = functions(atoms.len(), ny)
                .into_iter()
                .map(|f| {
                    (0..ny)
                        .map(|t| b.lattice().join_all((0..atoms.len()).filter(|&i| f[i] == t).map(|i| atoms[i])))
                        .collect()
                })
                .collect();
            ensure(got == oracle, || format!("partitions of unity differ for |Y| = {ny}, {k} atoms"))?;
            cases += 1;
        }
    }
    for nx in 0..=3 {
        for ny in 0..=3usize {
            if ny.pow(nx as u32) > 16 {
                continue;
            }
            let c = check_discrete_presentation(&names("x", nx), &names("y", ny)).map_err(|e| e.to_string())?;
            ensure(c.passed(), || format!("presentation fails for |X| = {nx}, |Y| = {ny}: {c:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} exponent/base pairs"))
}

pub fn double_exponential() -> Outcome {
    let mut sizes = Vec::new();
    for n in 0..=3 {
        let x = names("x", n);
        let d = double_exp_two(&x).map_err(|e| e.to_string())?;
        let free = free_boolean_algebra(&x).map_err(|e| e.to_string())?;
        ensure(d.marked_isomorphic(&free), || format!("2^(2^X) is not free for |X| = {n}"))?;
        ensure(d.algebra.len() == 1 << (1 << n), || format!("size for |X| = {n}"))?;
        sizes.push(d.algebra.len());
    }
    ensure(sizes == [2, 4, 16, 256], || format!("sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

pub fn excluded_middle() -> Outcome {
    for phi in [false, true] {
        let twice = zero_exp_stone(&zero_exp(phi)).map_err(|e| e.to_string())?;
        ensure(is_inhabited(&twice).map_err(|e| e.to_string())? == phi, || format!("0^(0^{phi}) is not {phi}"))?;
    }
    let cat = distributive_lattices(8);
    let mut pairs = 0;
    for l in &cat {
        for a in l.elements() {
            let (o, c) = (open_nucleus(l, a), closed_nucleus(l, a));
            let j = sublocale_join(&o, &c).map_err(|e| e.to_string())?;
            ensure(j.is_identity(), || {
                format!("open and closed parts of an element miss something ({} elements)", l.len())
            })?;
            ensure(l.elements().all(|x| l.meet(o.apply(x), c.apply(x)) == x), || {
                "pointwise meet is not the identity".into()
            })?;
            pairs += 1;
        }
    }
    Ok(format!("both truth values; {pairs} elements over {} frames (<= 8)", cat.len()))
}

pub fn closed_complement_golden() -> Outcome {
    let out = locus::cli::execute(["locus", "sierp", "report", "--json"]);
    ensure(out.code == 0, || format!("exit code {}", out.code))?;
    ensure(out.stdout == golden("sierpinski_closed_complement.json"), || "report differs from the golden file".into())?;
    let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let pair = |k: &str| (v[k]["bot"].as_u64(), v[k]["top"].as_u64());
    ensure(pair("generic_point") == (Some(0), Some(1)), || "P".into())?;
    ensure(pair("zero_exp_algebra_sizes") == (Some(2), Some(1)), || "0^P stalks".into())?;
    ensure(pair("fibre_points") == (Some(1), Some(0)), || "fibre points".into())?;
    ensure(v["opfibration"] == false && v["coreflection_empty"] == true, || "opfibration / coreflection".into())?;
    ensure(pair("heyting_negation") == (Some(0), Some(0)), || "not P".into())?;
    Ok("byte-identical to the golden report".into())
}

pub fn flat_agreement(c: &FinCategory, cap: usize) -> Result<(usize, BTreeSet<FinModel>), String> {
    let act = action_theory(c).map_err(|e| e.to_string())?;
    let functors = find_models_with(&act, &uniform_caps(&act, cap), &plain()).map_err(|e| e.to_string())?;
    let ft = flat_theory(c).map_err(|e| e.to_string())?;
    let logical: BTreeSet<FinModel> =
        find_models_with(&ft, &uniform_caps(&ft, cap), &plain()).map_err(|e| e.to_string())?.into_iter().collect();
    let epi: BTreeSet<FinModel> = functors.iter().filter(|m| check_flat_epi(m, c)).cloned().collect();
    ensure(logical == epi, || "flatness axioms and epi conditions disagree".into())?;
    Ok((functors.len(), logical))
}

pub fn flatness() -> Outcome {
    let mut cats = catalogue::standard();
    cats.push(("parallel pair", catalogue::parallel_pair()));
    let mut summary = Vec::new();
    for (name, c) in &cats {
        let (functors, flat) = flat_agreement(c, 3).map_err(|e| format!("{name}: {e}"))?;
        summary.push(format!("{name} {}/{functors}", flat.len()));
        if *name == "terminal" {
            let sizes: Vec<Vec<usize>> = flat.iter().map(|m| m.sizes.clone()).collect();
            ensure(sizes == vec![vec![1]], || format!("terminal flat models {sizes:?}"))?;
        }
        if *name == "discrete2" {
            let sizes: BTreeSet<Vec<usize>> = flat.iter().map(|m| m.sizes.clone()).collect();
            ensure(sizes == BTreeSet::from([vec![0, 1], vec![1, 0]]), || format!("discrete flat models {sizes:?}"))?;
            ensure(flat.len() == 2, || "discrete category: flat models mix stalks".into())?;
        }
    }
    Ok(format!("flat/functors with stalks <= 3: {}", summary.join(", ")))
}

fn seeded(t: &GeomTheory, sizes: &[(&str, usize)], funcs: &[(&str, &[usize])]) -> Result<Seed, String> {
    let mut seed = Seed::empty(t);
    for (s, n) in sizes {
        seed.sizes[t.sort(s).map_err(|e| e.to_string())?] = Some(*n);
    }
    for (f, table) in funcs {
        seed.funcs[t.func(f).map_err(|e| e.to_string())?] = Some(table.to_vec());
    }
    Ok(seed)
}

fn host(sorts: &[&str], funcs: &[(&str, &str, &str)]) -> GeomTheory {
    let mut t = GeomTheory::new();
    for s in sorts {
        t.add_sort(s).expect("fresh sort");
    }
    for (f, a, b) in funcs {
        let (a, b) = (t.sort(a).expect("sort"), t.sort(b).expect("sort"));
        t.add_func(f, &[a], b).expect("fresh function");
    }
    t
}

fn with_fragment(h: &GeomTheory, c: &Construction) -> Result<GeomTheory, String> {
    let frag = emit_construction(h, c).map_err(|e| e.to_string())?;
    let mut t = h.clone();
    t.merge(&frag).map_err(|e| e.to_string())?;
    Ok(t)
}

/// Every model of the pullback fragment over `f1`, `f2` has `(p1, p2)` a
/// bijection onto `{(a, b) : f1(a) = f2(b)}`.
pub fn pullback_case(na: usize, nb: usize, nc: usize, f1: &[usize], f2: &[usize]) -> Result<(), String> {
    let oracle: BTreeSet<(usize, usize)> =
        (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))).filter(|&(a, b)| f1[a] == f2[b]).collect();
    let n = oracle.len();
    let h = host(&["A", "B", "C"], &[("f1", "A", "C"), ("f2", "B", "C")]);
    let c =
        Construction::Pullback { sort: "P".into(), f1: "f1".into(), f2: "f2".into(), p1: "p1".into(), p2: "p2".into() };
    let t = with_fragment(&h, &c)?;
    let seed = seeded(&t, &[("A", na), ("B", nb), ("C", nc)], &[("f1", f1), ("f2", f2)])?;
    let mut caps = vec![na, nb, nc, 0];
    caps[t.sort("P").map_err(|e| e.to_string())?] = n + 1;
    let models = expand(&t, &seed, &caps, &plain()).map_err(|e| e.to_string())?;
    let (ps, p1, p2) = (t.sort("P").unwrap(), t.func("p1").unwrap(), t.func("p2").unwrap());
    for m in &models {
        let image: BTreeSet<(usize, usize)> = (0..m.sizes[ps]).map(|x| (m.funcs[p1][x], m.funcs[p2][x])).collect();
        ensure(m.sizes[ps] == n && image == oracle, || format!("pullback of {f1:?}, {f2:?}: wrong carrier"))?;
    }
    ensure(models.len() == factorial(n), || format!("pullback of {f1:?}, {f2:?}: {} models", models.len()))
}

pub fn coproduct_case(na: usize, nb: usize) -> Result<(), String> {
    let h = host(&["A", "B"], &[]);
    let c = Construction::Coproduct {
        sort: "S".into(),
        summands: vec!["A".into(), "B".into()],
        injections: vec!["i".into(), "j".into()],
    };
    let t = with_fragment(&h, &c)?;
    let seed = seeded(&t, &[("A", na), ("B", nb)], &[])?;
    let s = t.sort("S").unwrap();
    let mut caps = vec![na, nb, 0];
    caps[s] = na + nb + 1;
    let models = expand(&t, &seed, &caps, &plain()).map_err(|e| e.to_string())?;
    let (i, j) = (t.func("i").unwrap(), t.func("j").unwrap());
    for m in &models {
        let mut hit: Vec<usize> = m.funcs[i].iter().chain(&m.funcs[j]).copied().collect();
        hit.sort_unstable();
        ensure(hit == (0..na + nb).collect::<Vec<_>>(), || format!("{na} + {nb}: injections are not a bijection"))?;
    }
    ensure(models.len() == factorial(na + nb), || format!("{na} + {nb}: {} models", models.len()))
}

/// `p1`, `p2` the two projections of the equivalence relation with the given classes.
pub fn coequalizer_case(classes: &[usize]) -> Result<(), String> {
    let nv = classes.len();
    let rel: Vec<(usize, usize)> =
        (0..nv).flat_map(|x| (0..nv).map(move |y| (x, y))).filter(|&(x, y)| classes[x] == classes[y]).collect();
    let k = classes.iter().collect::<BTreeSet<_>>().len();
    let h = host(&["E", "V"], &[("p1", "E", "V"), ("p2", "E", "V")]);
    let c = Construction::Coeq { sort: "Q".into(), p1: "p1".into(), p2: "p2".into(), quotient_map: "q".into() };
    let t = with_fragment(&h, &c)?;
    let first: Vec<usize> = rel.iter().map(|r| r.0).collect();
    let second: Vec<usize> = rel.iter().map(|r| r.1).collect();
    let seed = seeded(&t, &[("E", rel.len()), ("V", nv)], &[("p1", &first), ("p2", &second)])?;
    let qs = t.sort("Q").unwrap();
    let mut caps = vec![rel.len(), nv, 0];
    caps[qs] = k + 1;
    let models = expand(&t, &seed, &caps, &plain()).map_err(|e| e.to_string())?;
    let q = t.func("q").unwrap();
    for m in &models {
        let kernel = (0..nv).all(|x| (0..nv).all(|y| (m.funcs[q][x] == m.funcs[q][y]) == (classes[x] == classes[y])));
        let onto = (0..m.sizes[qs]).all(|z| m.funcs[q].contains(&z));
        ensure(kernel && onto && m.sizes[qs] == k, || format!("quotient by {classes:?} is wrong"))?;
    }
    ensure(models.len() == factorial(k), || format!("quotient by {classes:?}: {} models", models.len()))
}

pub fn nno_case(bound: usize) -> Result<(), String> {
    let c = Construction::Nno { sort: "N".into(), zero: "z".into(), succ: "s".into(), bound };
    let t = emit_construction(&GeomTheory::new(), &c).map_err(|e| e.to_string())?;
    let opts = SearchOptions { dedupe_iso: true, ..SearchOptions::default() };
    let models = find_models_with(&t, &uniform_caps(&t, bound + 1), &opts).map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = models.iter().map(|m| m.sizes[0]).collect();
    ensure(sizes == (1..=bound).collect::<Vec<_>>(), || format!("bound {bound}: sizes {sizes:?}"))
}

pub fn bounded_forall_case() -> Result<usize, String> {
    let mut t = GeomTheory::new();
    let x = t.add_sort("X").unwrap();
    let fx = t.add_fin_sort("FX", x).unwrap();
    let p = t.add_pred("P", &[x]).unwrap();
    let mut vars = vec![VarDecl { name: "S".into(), sort: fx }, VarDecl { name: "x".into(), sort: x }];
    let bf = BoundedForall { var: 1, set: Term::var(0), body: Formula::Pred(p, vec![Term::var(1)]) };
    let f = bounded_forall_translate(&mut vars, &bf, 3);
    let mut checked = 0;
    for ext in subsets(3) {
        let m = FinModel { sizes: vec![3, 8], funcs: vec![], preds: vec![(0..3).map(|i| ext >> i & 1 == 1).collect()] };
        for s in subsets(3) {
            let direct = (0..3).all(|i| s >> i & 1 == 0 || ext >> i & 1 == 1);
            ensure(eval_formula(&t, &m, &vars, &f, &[s as usize, 0]) == direct, || {
                format!("S = {s:03b}, P = {ext:03b}")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

pub fn syntacticization() -> Outcome {
    let mut pullbacks = 0;
    for nc in 0..=3 {
        for na in 0..=3 {
            for nb in 0..=3 {
                for f1 in functions(na, nc) {
                    for f2 in functions(nb, nc) {
                        let size =
                            (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))).filter(|&(a, b)| f1[a] == f2[b]).count();
                        if size <= 3 {
                            pullback_case(na, nb, nc, &f1, &f2)?;
                            pullbacks += 1;
                        }
                    }
                }
            }
        }
    }
    for na in 0..=3 {
        for nb in 0..=3 {
            coproduct_case(na, nb)?;
        }
    }
    let mut quotients = 0;
    for nv in 0..=3 {
        for classes in partitions(nv) {
            coequalizer_case(&classes)?;
            quotients += 1;
        }
    }
    for bound in 1..=4 {
        nno_case(bound)?;
    }
    let zero = Construction::Nno { sort: "N".into(), zero: "z".into(), succ: "s".into(), bound: 0 };
    ensure(emit_construction(&GeomTheory::new(), &zero).is_err(), || "bound 0 accepted".into())?;
    let forall = bounded_forall_case()?;
    Ok(format!(
        "{pullbacks} pullbacks, 16 coproducts, {quotients} quotients, NNO bounds 1..4, {forall} bounded-forall cases"
    ))
}

pub fn toy_extension() -> TheoryExtension {
    let mut t0 = GeomTheory::new();
    t0.add_sort("X").unwrap();
    let mut t1 = t0.clone();
    t1.add_pred("P", &[0]).unwrap();
    TheoryExtension::by_inclusion(t0, t1).unwrap()
}

pub fn fibre_bipullback() -> Outcome {
    let e = toy_extension();
    let mut checked = 0;
    for cap in 0..=3 {
        for n in 0..=cap {
            let a = FinModel { sizes: vec![n], funcs: vec![], preds: vec![] };
            let caps = uniform_caps(e.extension(), cap);
            let direct = e.fibre_models(&a, &caps, &plain()).map_err(|e| e.to_string())?;
            let filtered = e.fibre_models_by_filter(&a, &caps, &plain()).map_err(|e| e.to_string())?;
            ensure(direct == filtered, || format!("cap {cap}, |X| = {n}: fibre routes differ"))?;
            ensure(direct.len() == 1 << n, || format!("cap {cap}, |X| = {n}: {} models", direct.len()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (cap, point) pairs"))
}

fn run_binary(args: &[String]) -> Result<Vec<u8>, String> {
    let out =
        std::process::Command::new(env!("CARGO_BIN_EXE_locus")).args(&args[1..]).output().map_err(|e| e.to_string())?;
    let mut bytes = out.stdout;
    bytes.extend(out.stderr);
    bytes.extend(format!("\nexit {:?}\n", out.status.code()).into_bytes());
    Ok(bytes)
}

pub fn determinism() -> Outcome {
    let commands = corpus_commands();
    let first: Vec<Vec<u8>> = commands.iter().map(|c| run_binary(c)).collect::<Result<_, _>>()?;
    let second: Vec<Vec<u8>> = commands.iter().map(|c| run_binary(c)).collect::<Result<_, _>>()?;
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        ensure(a == b, || format!("`{}` differs between runs", commands[i][1..].join(" ")))?;
    }
    Ok(format!("{} corpus commands, two runs each", commands.len()))
}
