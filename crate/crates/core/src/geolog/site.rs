use super::model::FinModel;
use super::syntax::{Formula, GeomTheory, SequentBuilder, Slot, Term};
use crate::error::{Error, Result};
use crate::order::FinPoset;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub dom: ObjId,
    pub cod: ObjId,
}

/// A finite category. Composition is diagrammatic: `compose(f, g)` is `f;g`,
/// defined when `cod f = dom g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    table: Vec<Option<MorId>>,
}

impl FinCategory {
    /// `composites` lists `(f, g, f;g)` for the composable pairs not
    /// involving an identity; identity laws are filled in.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorId>,
        composites: &[(MorId, MorId, MorId)],
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCategory(m));
        let n = morphisms.len();
        for (i, name) in objects.iter().enumerate() {
            if objects[..i].contains(name) {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        for (i, m) in morphisms.iter().enumerate() {
            if morphisms[..i].iter().any(|o| o.name == m.name) {
                return Err(Error::DuplicateElement(m.name.clone()));
            }
            if m.dom >= objects.len() || m.cod >= objects.len() {
                return bad(format!("{} has an unknown endpoint", m.name));
            }
        }
        if identities.len() != objects.len() {
            return bad("one identity per object".into());
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= n || morphisms[id].dom != o || morphisms[id].cod != o {
                return bad(format!("identity of {} is not an endomorphism of it", objects[o]));
            }
        }
        let mut table = vec![None; n * n];
        for f in 0..n {
            let (d, c) = (morphisms[f].dom, morphisms[f].cod);
            table[identities[d] * n + f] = Some(f);
            table[f * n + identities[c]] = Some(f);
        }
        for &(f, g, h) in composites {
            if f >= n || g >= n || h >= n {
                return bad("composite refers to an unknown morphism".into());
            }
            if morphisms[f].cod != morphisms[g].dom {
                return bad(format!("{} ; {} is not composable", morphisms[f].name, morphisms[g].name));
            }
            if morphisms[h].dom != morphisms[f].dom || morphisms[h].cod != morphisms[g].cod {
                return bad(format!("{} ; {} has the wrong endpoints", morphisms[f].name, morphisms[g].name));
            }
            match table[f * n + g] {
                Some(old) if old != h => {
                    return bad(format!("{} ; {} given two values", morphisms[f].name, morphisms[g].name));
                }
                _ => table[f * n + g] = Some(h),
            }
        }
        for f in 0..n {
            for g in 0..n {
                if morphisms[f].cod == morphisms[g].dom && table[f * n + g].is_none() {
                    return bad(format!("{} ; {} missing", morphisms[f].name, morphisms[g].name));
                }
            }
        }
        let c = FinCategory { objects, morphisms, identities, table };
        for f in 0..n {
            for g in c.out_of(c.morphisms[f].cod) {
                for h in c.out_of(c.morphisms[g].cod) {
                    let left = c.compose(c.compose(f, g).unwrap(), h);
                    let right = c.compose(f, c.compose(g, h).unwrap());
                    if left != right {
                        return bad(format!("associativity fails at {}, {}, {}", c.name(f), c.name(g), c.name(h)));
                    }
                }
            }
        }
        Ok(c)
    }

    /// The poset as a thin category, morphisms `a_b` for `a <= b`.
    pub fn from_poset(p: &FinPoset) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = p.pairs().collect();
        let morphisms: Vec<Morphism> = pairs
            .iter()
            .map(|&(a, b)| Morphism { name: format!("{}_{}", p.name(a), p.name(b)), dom: a, cod: b })
            .collect();
        let find = |a: usize, b: usize| pairs.iter().position(|&pr| pr == (a, b)).expect("pair present");
        let identities = (0..p.len()).map(|a| find(a, a)).collect();
        let mut composites = Vec::new();
        for &(a, b) in &pairs {
            for &(b2, c) in &pairs {
                if b == b2 && a != b && b != c {
                    composites.push((find(a, b), find(b, c), find(a, c)));
                }
            }
        }
        FinCategory::new(p.names().to_vec(), morphisms, identities, &composites)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn name(&self, f: MorId) -> &str {
        &self.morphisms[f].name
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities.contains(&f)
    }

    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.table[f * self.morphisms.len() + g]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].dom == a && self.morphisms[f].cod == b).collect()
    }

    pub fn incoming(&self, b: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].cod == b).collect()
    }

    pub fn out_of(&self, a: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len()).filter(|&f| self.morphisms[f].dom == a).collect()
    }

    pub fn object_index(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }
}

/// Small categories used for cross-validation.
pub mod catalogue {
    use super::*;

    pub fn terminal() -> FinCategory {
        FinCategory::from_poset(&FinPoset::chain(1)).expect("valid")
    }

    pub fn discrete(n: usize) -> FinCategory {
        FinCategory::from_poset(&FinPoset::antichain(n)).expect("valid")
    }

    pub fn chain(n: usize) -> FinCategory {
        FinCategory::from_poset(&FinPoset::chain(n)).expect("valid")
    }

    /// `l <- c -> r`.
    pub fn span() -> FinCategory {
        let p = FinPoset::from_named(&["c", "l", "r"], &[("c", "l"), ("c", "r")]).expect("valid");
        FinCategory::from_poset(&p).expect("valid")
    }

    /// Two parallel arrows `f, g: a -> b`.
    pub fn parallel_pair() -> FinCategory {
        let m = |name: &str, dom, cod| Morphism { name: name.into(), dom, cod };
        FinCategory::new(
            vec!["a".into(), "b".into()],
            vec![m("id_a", 0, 0), m("id_b", 1, 1), m("f", 0, 1), m("g", 0, 1)],
            vec![0, 1],
            &[],
        )
        .expect("valid")
    }

    /// The four categories of the flatness cross-check.
    pub fn standard() -> Vec<(&'static str, FinCategory)> {
        vec![("terminal", terminal()), ("discrete2", discrete(2)), ("chain2", chain(2)), ("span", span())]
    }
}

pub fn stalk_sort_name(c: &FinCategory, o: ObjId) -> String {
    format!("X_{}", c.objects[o])
}

pub fn action_name(c: &FinCategory, f: MorId) -> String {
    format!("u_{}", c.morphisms[f].name)
}

/// One sort `X_A` per object and one function `u_f: X_A -> X_B` per
/// morphism `f: A -> B`, with the identity and composition axioms.
/// Sort and function ids agree with object and morphism ids.
pub fn action_theory(c: &FinCategory) -> Result<GeomTheory> {
    let mut t = GeomTheory::new();
    for o in 0..c.objects.len() {
        t.add_sort(&stalk_sort_name(c, o))?;
    }
    for (f, m) in c.morphisms.iter().enumerate() {
        t.add_func(&action_name(c, f), &[m.dom], m.cod)?;
    }
    let u = |f: MorId, x: Term| Term::app(f, vec![x]);
    for o in 0..c.objects.len() {
        let mut b = SequentBuilder::new();
        let x = b.context("x", o);
        let eq = Formula::eq(u(c.identity(o), Term::var(x)), Term::var(x));
        t.add_axiom(b.finish(&format!("identity_{}", c.objects[o]), Formula::Top, eq))?;
    }
    for f in 0..c.morphisms.len() {
        for g in c.out_of(c.morphisms[f].cod) {
            if c.is_identity(f) || c.is_identity(g) {
                continue;
            }
            let fg = c.compose(f, g).expect("composable");
            let mut b = SequentBuilder::new();
            let x = b.context("x", c.morphisms[f].dom);
            let eq = Formula::eq(u(g, u(f, Term::var(x))), u(fg, Term::var(x)));
            t.add_axiom(b.finish(&format!("compose_{}_{}", c.name(f), c.name(g)), Formula::Top, eq))?;
        }
    }
    Ok(t)
}

/// The action theory plus the three flatness families: some stalk is
/// inhabited, any two elements come from a common one, and any element
/// equalized by a parallel pair comes through an equalizing morphism.
pub fn flat_theory(c: &FinCategory) -> Result<GeomTheory> {
    let mut t = action_theory(c)?;
    let n = c.objects.len();
    let u = |f: MorId, x: Slot| Term::app(f, vec![Term::var(x)]);

    let mut b = SequentBuilder::new();
    let witnesses: Vec<Slot> = (0..n).map(|o| b.bound(&format!("x_{}", c.objects[o]), o)).collect();
    let some = Formula::or(witnesses.iter().map(|&x| Formula::exists(vec![x], Formula::Top)).collect());
    t.add_axiom(b.finish("flat_inhabited", Formula::Top, some))?;

    for a in 0..n {
        for bo in 0..n {
            let mut b = SequentBuilder::new();
            let x = b.context("x", a);
            let y = b.context("y", bo);
            let mut disjuncts = Vec::new();
            for k in 0..n {
                for f in c.hom(k, a) {
                    for g in c.hom(k, bo) {
                        let z = b.bound("z", k);
                        disjuncts.push(Formula::exists(
                            vec![z],
                            Formula::and(vec![Formula::eq(Term::var(x), u(f, z)), Formula::eq(Term::var(y), u(g, z))]),
                        ));
                    }
                }
            }
            let label = format!("flat_cone_{}_{}", c.objects[a], c.objects[bo]);
            t.add_axiom(b.finish(&label, Formula::Top, Formula::or(disjuncts)))?;
        }
    }

    for a in 0..n {
        for bo in 0..n {
            let hom = c.hom(a, bo);
            for &f in &hom {
                for &g in &hom {
                    let mut b = SequentBuilder::new();
                    let x = b.context("x", a);
                    let mut disjuncts = Vec::new();
                    for k in 0..n {
                        for h in c.hom(k, a) {
                            if c.compose(h, f) == c.compose(h, g) {
                                let y = b.bound("y", k);
                                disjuncts.push(Formula::exists(vec![y], Formula::eq(Term::var(x), u(h, y))));
                            }
                        }
                    }
                    let label = format!("flat_equalize_{}_{}", c.name(f), c.name(g));
                    t.add_axiom(b.finish(&label, Formula::eq(u(f, x), u(g, x)), Formula::or(disjuncts)))?;
                }
            }
        }
    }
    Ok(t)
}

/// A finite category with a list of covers `(target, morphisms into it)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    category: FinCategory,
    covers: Vec<(ObjId, Vec<MorId>)>,
}

impl Site {
    pub fn new(category: FinCategory, covers: Vec<(ObjId, Vec<MorId>)>) -> Result<Self> {
        for (i, (target, fs)) in covers.iter().enumerate() {
            if *target >= category.objects.len() {
                return Err(Error::InvalidSite(format!("cover {i} has an unknown target")));
            }
            for &f in fs {
                if f >= category.morphisms.len() || category.morphisms[f].cod != *target {
                    return Err(Error::InvalidSite(format!(
                        "cover {i}: morphism #{f} does not end at {}",
                        category.objects[*target]
                    )));
                }
            }
        }
        Ok(Site { category, covers })
    }

    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn covers(&self) -> &[(ObjId, Vec<MorId>)] {
        &self.covers
    }

    /// Whether `h` factors as `k ; f` for some `k`.
    fn factors_through(&self, h: MorId, f: MorId) -> bool {
        let c = &self.category;
        c.hom(c.morphisms[h].dom, c.morphisms[f].dom).into_iter().any(|k| c.compose(k, f) == Some(h))
    }

    /// Pairs `(cover, g)` with `g: A' -> A` into the cover's target such that
    /// no cover of `A'` has every `h ; g` factoring through a member of the cover.
    pub fn site_condition_violations(&self) -> Vec<(usize, MorId)> {
        let c = &self.category;
        let mut out = Vec::new();
        for (i, (target, fs)) in self.covers.iter().enumerate() {
            for g in c.incoming(*target) {
                let source = c.morphisms[g].dom;
                let ok = self.covers.iter().filter(|(t, _)| *t == source).any(|(_, hs)| {
                    hs.iter().all(|&h| {
                        let hg = c.compose(h, g).expect("composable");
                        fs.iter().any(|&f| self.factors_through(hg, f))
                    })
                });
                if !ok {
                    out.push((i, g));
                }
            }
        }
        out
    }
}

/// Adds, for each cover `{f_i: A_i -> B}`, the axiom that every element of
/// `X_B` is `u_{f_i}(x)` for some `i` and `x`.
pub fn add_continuity(t: &GeomTheory, site: &Site) -> Result<GeomTheory> {
    let c = &site.category;
    let mut out = t.clone();
    for (i, (target, fs)) in site.covers.iter().enumerate() {
        let xb = out.sort(&stalk_sort_name(c, *target))?;
        let mut b = SequentBuilder::new();
        let y = b.context("y", xb);
        let mut disjuncts = Vec::new();
        for &f in fs {
            let xa = out.sort(&stalk_sort_name(c, c.morphisms[f].dom))?;
            let uf = out.func(&action_name(c, f))?;
            let x = b.bound("x", xa);
            disjuncts.push(Formula::exists(vec![x], Formula::eq(Term::app(uf, vec![Term::var(x)]), Term::var(y))));
        }
        out.add_axiom(b.finish(&format!("cover_{i}"), Formula::Top, Formula::or(disjuncts)))?;
    }
    Ok(out)
}

/// Flatness by surjectivity of the three comparison maps, for a model of
/// [`action_theory`]: onto the point, onto pairs, onto equalized triples.
pub fn check_flat_epi(m: &FinModel, c: &FinCategory) -> bool {
    let n = c.objects.len();
    let act = |f: MorId, x: usize| m.funcs[f][x];
    if (0..n).all(|k| m.sizes[k] == 0) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let mut hit = vec![false; m.sizes[i] * m.sizes[j]];
            for k in 0..n {
                for u in c.hom(k, i) {
                    for v in c.hom(k, j) {
                        for x in 0..m.sizes[k] {
                            hit[act(u, x) * m.sizes[j] + act(v, x)] = true;
                        }
                    }
                }
            }
            if hit.contains(&false) {
                return false;
            }
            let hom = c.hom(i, j);
            for &v in &hom {
                for &w in &hom {
                    let mut image = vec![false; m.sizes[i]];
                    for k in 0..n {
                        for u in c.hom(k, i) {
                            if c.compose(u, v) == c.compose(u, w) {
                                for x in 0..m.sizes[k] {
                                    image[act(u, x)] = true;
                                }
                            }
                        }
                    }
                    if (0..m.sizes[i]).any(|x| act(v, x) == act(w, x) && !image[x]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
