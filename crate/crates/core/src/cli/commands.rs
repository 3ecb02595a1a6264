use std::collections::BTreeSet;

use serde_json::{json, Map, Value};

use super::dsl::{self, BlockBody, Document};
use super::{CliError, Command, Flags, SierpView};
use crate::expspace::{
    double_exp_two, exp_discrete_of_stone, exp_stone_of_discrete, zero_exp_discrete, zero_exp_stone,
};
use crate::geolog::search::budget_from_env;
use crate::geolog::site::{action_theory, add_continuity, check_flat_epi, flat_theory, FinCategory};
use crate::geolog::{emit_construction, find_models_with, syntacticize_function, syntacticize_set, uniform_caps};
use crate::geolog::{Construction, FinModel, GeomTheory, SearchOptions, UNDEFINED};
use crate::order::{free_boolean_algebra, BoolAlg, DistLattice};
use crate::points::{clop, prime_filters, spec_lattice, PointSet, SpaceRep};
use crate::present::lindenbaum;
use crate::sierpinski::{
    closed_complement_report, discrete_coreflection, fibrewise_spec, heyting_neg, internal_zero_exp, opfibration_check,
    Subterminal,
};

/// A command's output: machine fields, text lines, and whether the check passed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub fields: Map<String, Value>,
    pub text: Vec<String>,
    pub ok: bool,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, fields: Map::new(), text: Vec::new(), ok: true }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_owned(), value);
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut obj = self.fields.clone();
            obj.insert("format".into(), json!(1));
            obj.insert("command".into(), json!(self.command));
            obj.insert("ok".into(), json!(self.ok));
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
            s.push('\n');
            s
        } else {
            let mut s = self.text.join("\n");
            s.push('\n');
            s
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn pick<'a>(doc: &'a Document, block: &'a Option<String>, kinds: &[&str]) -> Result<&'a str, CliError> {
    match block {
        Some(name) => {
            let b = doc.block(name).ok_or_else(|| usage(format!("no block named `{name}`")))?;
            if kinds.contains(&b.body.kind()) {
                Ok(name)
            } else {
                Err(usage(format!("`{name}` is a {}, expected {}", b.body.kind(), kinds.join(" or "))))
            }
        }
        None => doc.first_of(kinds).ok_or_else(|| usage(format!("the document has no {} block", kinds.join(" or ")))),
    }
}

fn kind_of<'a>(doc: &'a Document, name: &str) -> &'a str {
    doc.block(name).map_or("", |b| b.body.kind())
}

fn braces(names: &[&str]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn points_json(ps: &PointSet) -> Value {
    let pts: Vec<Vec<&str>> = ps.iter_named().collect();
    json!({ "count": ps.len(), "signature": ps.signature, "points": pts })
}

fn points_text(r: &mut Report, ps: &PointSet) {
    r.line(format!("points: {}", ps.len()));
    for p in ps.iter_named() {
        r.line(format!("  {}", braces(&p)));
    }
}

fn lattice_json(l: &DistLattice) -> Value {
    let covers: Vec<[String; 2]> = l.to_poset().covers().iter().map(|&(a, b)| [l.name(a), l.name(b)]).collect();
    json!({ "size": l.len(), "elements": l.names(), "covers": covers })
}

fn lattice_text(r: &mut Report, l: &DistLattice) {
    r.line(format!("size: {}", l.len()));
    r.line(format!("elements: {}", l.names().join(" ")));
    let covers: Vec<String> =
        l.to_poset().covers().iter().map(|&(a, b)| format!("{}<{}", l.name(a), l.name(b))).collect();
    r.line(format!("covers: {}", covers.join(" ")));
}

fn space_json(s: &SpaceRep) -> Result<Value, CliError> {
    let pts = s.points()?;
    let mut v = json!({ "kind": s.kind(), "points": points_json(&pts) });
    if let SpaceRep::Stone { algebra, .. } = s {
        v["algebra"] = lattice_json(algebra.lattice());
    }
    Ok(v)
}

fn boolean(doc: &Document, name: &str) -> Result<BoolAlg, CliError> {
    Ok(BoolAlg::new(doc.frame(name)?)?)
}

fn model_json(t: &GeomTheory, m: &FinModel) -> Value {
    let sizes: Map<String, Value> = t.sorts.iter().zip(&m.sizes).map(|(s, &n)| (s.name.clone(), json!(n))).collect();
    let funcs: Map<String, Value> = t
        .funcs
        .iter()
        .zip(&m.funcs)
        .map(|(f, tab)| (f.name.clone(), json!(tab.iter().map(|&v| (v != UNDEFINED).then_some(v)).collect::<Vec<_>>())))
        .collect();
    let preds: Map<String, Value> = t
        .preds
        .iter()
        .zip(&m.preds)
        .map(|(p, ext)| (p.name.clone(), json!(ext.iter().map(|&b| b as u8).collect::<Vec<_>>())))
        .collect();
    json!({ "sizes": sizes, "funcs": funcs, "preds": preds })
}

fn models_out(r: &mut Report, t: &GeomTheory, theory_name: &str, models: &[FinModel]) {
    r.set("count", json!(models.len()));
    r.set("models", Value::Array(models.iter().map(|m| model_json(t, m)).collect()));
    r.line(format!("models: {}", models.len()));
    for (i, m) in models.iter().enumerate() {
        let block = dsl::print_block(&format!("m{i}"), &dsl::model_block(t, theory_name, m));
        r.text.extend(block.lines().map(str::to_owned));
    }
}

fn options(flags: &Flags) -> SearchOptions {
    SearchOptions { dedupe_iso: flags.dedupe_iso, budget: budget_from_env() }
}

fn cap(flags: &Flags) -> usize {
    flags.cap.unwrap_or(3)
}

/// Runs one command against a parsed document.
pub fn run(command: &Command, doc: &Document, flags: &Flags) -> Result<Report, CliError> {
    match command {
        Command::Points { block, .. } => points(doc, block),
        Command::Lindenbaum { block, .. } => lindenbaum_cmd(doc, block),
        Command::Spec { block, .. } => spec_cmd(doc, block),
        Command::Clop { block, .. } => clop_cmd(doc, block),
        Command::Exp { exponent, base, .. } => exp_cmd(doc, exponent, base),
        Command::Freeba { block, .. } => freeba(doc, block),
        Command::Doubleexp { block, .. } => doubleexp(doc, block),
        Command::Zeroexp { block, .. } => zeroexp(doc, block),
        Command::Models { block, .. } => models(doc, block, flags),
        Command::Flat { block, .. } => flat(doc, block, flags),
        Command::Fibre { extension, model, .. } => fibre(doc, extension, model, flags),
        Command::Emit { block, construction, .. } => emit(doc, block, construction, flags),
        Command::Check { .. } => check(doc),
        Command::Sierp { view, subterminal } => sierp(*view, subterminal),
    }
}

fn points(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let name = pick(doc, block, &["frame", "formaltop", "grd", "theory"])?;
    let ps = if kind_of(doc, name) == "frame" {
        prime_filters(&doc.frame(name)?)
    } else {
        crate::points::enumerate_points(&doc.presentation(name)?)?
    };
    let mut r = Report::new("points");
    r.set("block", json!(name));
    r.set("points", points_json(&ps));
    points_text(&mut r, &ps);
    Ok(r)
}

fn lindenbaum_cmd(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let name = pick(doc, block, &["frame", "formaltop", "grd", "theory"])?;
    let t = doc.presentation(name)?;
    let lb = lindenbaum(&t)?;
    let mut r = Report::new("lindenbaum");
    r.set("block", json!(name));
    r.set("lattice", lattice_json(&lb.lattice));
    let gens: Map<String, Value> =
        t.symbols().iter().zip(&lb.generator).map(|(s, &g)| (s.clone(), json!(lb.lattice.name(g)))).collect();
    r.set("generators", Value::Object(gens));
    r.set("model_count", json!(lb.model_count));
    lattice_text(&mut r, &lb.lattice);
    for (s, &g) in t.symbols().iter().zip(&lb.generator) {
        r.line(format!("[{s}] = {}", lb.lattice.name(g)));
    }
    r.line(format!("models: {}", lb.model_count));
    Ok(r)
}

fn spec_cmd(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let name = pick(doc, block, &["frame"])?;
    let (space, ps) = spec_lattice(&doc.frame(name)?);
    let mut r = Report::new("spec");
    r.set("block", json!(name));
    r.set("kind", json!(space.kind()));
    r.set("points", points_json(&ps));
    r.line(format!("kind: {}", space.kind()));
    points_text(&mut r, &ps);
    Ok(r)
}

fn clop_cmd(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let name = pick(doc, block, &["frame", "set"])?;
    let space = if kind_of(doc, name) == "set" {
        SpaceRep::Discrete { carrier: doc.set(name)? }
    } else {
        spec_lattice(&boolean(doc, name)?.into_lattice()).0
    };
    let b = clop(&space)?;
    let mut r = Report::new("clop");
    r.set("block", json!(name));
    r.set("space", json!(space.kind()));
    r.set("algebra", lattice_json(b.lattice()));
    r.line(format!("space: {}", space.kind()));
    lattice_text(&mut r, b.lattice());
    Ok(r)
}

fn exp_cmd(doc: &Document, exponent: &str, base: &str) -> Result<Report, CliError> {
    let mut r = Report::new("exp");
    r.set("exponent", json!(exponent));
    r.set("base", json!(base));
    match (kind_of(doc, exponent), kind_of(doc, base)) {
        ("set", "frame") => {
            let x = doc.set(exponent)?;
            let b = boolean(doc, base)?;
            let e = exp_stone_of_discrete(&x, &b)?;
            let alg = e.algebra()?;
            let y = e.base_points.len();
            r.set("shape", json!("stone^discrete"));
            r.set("points", json!(e.point_count()));
            r.set("base_points", json!(y));
            r.set("algebra_size", json!(alg.len()));
            r.line(format!("Y = Spec {base}: {y} points"));
            r.line(format!("Y^{exponent}: {} points, clopen algebra of {} elements", e.point_count(), alg.len()));
        }
        ("frame", "set") => {
            let a = boolean(doc, exponent)?;
            let y = doc.set(base)?;
            let maps = exp_discrete_of_stone(&a, &y)?;
            r.set("shape", json!("discrete^stone"));
            r.set("points", json!(maps.len()));
            let listed: Vec<Vec<(String, String)>> = maps
                .iter()
                .map(|p| p.support().into_iter().map(|(i, e)| (y[i].clone(), a.name(e))).collect())
                .collect();
            r.set("partitions", json!(listed));
            r.line(format!("{base}^Spec {exponent}: {} points", maps.len()));
            for part in &listed {
                let cells: Vec<String> = part.iter().map(|(y, e)| format!("{y}:{e}")).collect();
                r.line(format!("  {}", cells.join(" ")));
            }
        }
        (a, b) => {
            return Err(usage(format!(
                "exp needs a set exponent with a Boolean frame base, or a Boolean frame exponent with a set base (got {a} and {b})"
            )))
        }
    }
    Ok(r)
}

fn set_arg<'a>(doc: &'a Document, block: &'a Option<String>) -> Result<(&'a str, Vec<String>), CliError> {
    let name = pick(doc, block, &["set"])?;
    Ok((name, doc.set(name)?))
}

fn freeba(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let (name, x) = set_arg(doc, block)?;
    let g = free_boolean_algebra(&x)?;
    let mut r = Report::new("freeba");
    r.set("block", json!(name));
    r.set("size", json!(g.algebra.len()));
    r.set("atoms", json!(g.algebra.atoms().len()));
    r.line(format!(
        "free Boolean algebra on {}: {} elements, {} atoms",
        braces(&x.iter().map(String::as_str).collect::<Vec<_>>()),
        g.algebra.len(),
        g.algebra.atoms().len()
    ));
    Ok(r)
}

fn doubleexp(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let (name, x) = set_arg(doc, block)?;
    let g = double_exp_two(&x)?;
    let free = free_boolean_algebra(&x)?;
    let iso = g.marked_isomorphic(&free);
    let mut r = Report::new("doubleexp");
    r.set("block", json!(name));
    r.set("size", json!(g.algebra.len()));
    r.set("free_isomorphic", json!(iso));
    let gens: Map<String, Value> = g.generators.iter().map(|(s, e)| (s.clone(), json!(g.algebra.name(*e)))).collect();
    r.set("generators", Value::Object(gens));
    r.line(format!("2^(2^{name}): {} elements", g.algebra.len()));
    r.line(format!("isomorphic to the free Boolean algebra on {name}: {iso}"));
    r.ok = iso;
    Ok(r)
}

fn zeroexp(doc: &Document, block: &Option<String>) -> Result<Report, CliError> {
    let name = pick(doc, block, &["set", "frame"])?;
    let (from, out) = if kind_of(doc, name) == "set" {
        ("discrete", zero_exp_discrete(&doc.set(name)?))
    } else {
        let (space, _) = spec_lattice(&boolean(doc, name)?.into_lattice());
        ("stone", zero_exp_stone(&space)?)
    };
    let mut r = Report::new("zeroexp");
    let pts = out.points()?.len();
    r.set("block", json!(name));
    r.set("exponent", json!(from));
    r.set("result", space_json(&out)?);
    r.line(format!("0^{name}: {} space with {pts} point(s)", out.kind()));
    Ok(r)
}

fn models(doc: &Document, block: &Option<String>, flags: &Flags) -> Result<Report, CliError> {
    let name = pick(doc, block, &["geotheory"])?;
    let t = doc.geotheory(name)?;
    let found = find_models_with(&t, &uniform_caps(&t, cap(flags)), &options(flags))?;
    let mut r = Report::new("models");
    r.set("block", json!(name));
    r.set("cap", json!(cap(flags)));
    r.set("dedupe_iso", json!(flags.dedupe_iso));
    models_out(&mut r, &t, name, &found);
    Ok(r)
}

fn flat_summary(r: &mut Report, c: &FinCategory, flags: &Flags) -> Result<(), CliError> {
    let plain = SearchOptions { dedupe_iso: false, budget: budget_from_env() };
    let act = action_theory(c)?;
    let functors = find_models_with(&act, &uniform_caps(&act, cap(flags)), &plain)?;
    let ft = flat_theory(c)?;
    let by_theory: BTreeSet<FinModel> =
        find_models_with(&ft, &uniform_caps(&ft, cap(flags)), &plain)?.into_iter().collect();
    let by_epi: BTreeSet<FinModel> = functors.iter().filter(|m| check_flat_epi(m, c)).cloned().collect();
    let agree = by_theory == by_epi;
    r.set("functors", json!(functors.len()));
    r.set("flat", json!(by_theory.len()));
    r.set("epi_agreement", json!(agree));
    r.line(format!("functors with stalks <= {}: {}", cap(flags), functors.len()));
    r.line(format!("flat: {}", by_theory.len()));
    r.line(format!("epi characterization agrees: {agree}"));
    r.ok &= agree;
    Ok(())
}

fn flat(doc: &Document, block: &Option<String>, flags: &Flags) -> Result<Report, CliError> {
    let name = pick(doc, block, &["category", "site"])?;
    let mut r = Report::new("flat");
    r.set("block", json!(name));
    r.set("cap", json!(cap(flags)));
    if kind_of(doc, name) == "category" {
        flat_summary(&mut r, &doc.category(name)?, flags)?;
        return Ok(r);
    }
    let site = doc.site(name)?;
    flat_summary(&mut r, site.category(), flags)?;
    let t = add_continuity(&flat_theory(site.category())?, &site)?;
    let continuous = find_models_with(&t, &uniform_caps(&t, cap(flags)), &options(flags))?;
    r.set("continuous", json!(continuous.len()));
    r.line(format!("flat and continuous: {}", continuous.len()));
    Ok(r)
}

fn fibre(doc: &Document, extension: &str, model: &str, flags: &Flags) -> Result<Report, CliError> {
    let ext = match doc.block(extension).map(|b| &b.body) {
        Some(BlockBody::Extend { base, .. }) => (doc.extension(extension)?, base.clone()),
        _ => return Err(usage(format!("`{extension}` is not an extend block"))),
    };
    let (e, base_name) = ext;
    let (theory_name, m) = match doc.block(model).map(|b| &b.body) {
        Some(BlockBody::Model { theory, .. }) => (theory.clone(), doc.model(model)?.1),
        _ => return Err(usage(format!("`{model}` is not a model block"))),
    };
    if theory_name != base_name {
        return Err(usage(format!("`{model}` is a model of `{theory_name}`, not of the base `{base_name}`")));
    }
    let t1 = e.extension().clone();
    let ext_name = match &doc.block(extension).expect("checked above").body {
        BlockBody::Extend { ext, .. } => ext.clone(),
        _ => unreachable!(),
    };
    let found = e.fibre_models(&m, &uniform_caps(&t1, cap(flags)), &options(flags))?;
    let mut r = Report::new("fibre");
    r.set("extension", json!(extension));
    r.set("point", json!(model));
    r.set("cap", json!(cap(flags)));
    models_out(&mut r, &t1, &ext_name, &found);
    Ok(r)
}

fn construction(args: &[String], bound: Option<usize>) -> Result<Construction, CliError> {
    let need = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(usage(format!("`{}` takes {} names after the kind", args[0], n - 1)))
        }
    };
    let s = |i: usize| args[i].clone();
    let bound = || bound.ok_or_else(|| usage(format!("`{}` needs --bound", args[0])));
    let Some(kind) = args.first() else { return Err(usage("emit on a geotheory needs a construction")) };
    Ok(match kind.as_str() {
        "terminal" => {
            need(2)?;
            Construction::Terminal { sort: s(1) }
        }
        "pullback" => {
            need(6)?;
            Construction::Pullback { sort: s(1), f1: s(2), f2: s(3), p1: s(4), p2: s(5) }
        }
        "coproduct" => {
            let rest = &args[2.min(args.len())..];
            if args.len() < 2 || !rest.len().is_multiple_of(2) {
                return Err(usage("`coproduct` takes a sort, then summands, then as many injections"));
            }
            let (summands, injections) = rest.split_at(rest.len() / 2);
            Construction::Coproduct { sort: s(1), summands: summands.to_vec(), injections: injections.to_vec() }
        }
        "nno" => {
            need(4)?;
            Construction::Nno { sort: s(1), zero: s(2), succ: s(3), bound: bound()? }
        }
        "list" => {
            need(5)?;
            Construction::List { sort: s(1), elem: s(2), nil: s(3), cons: s(4), bound: bound()? }
        }
        "coeq" => {
            need(5)?;
            Construction::Coeq { sort: s(1), p1: s(2), p2: s(3), quotient_map: s(4) }
        }
        other => return Err(usage(format!("unknown construction `{other}`"))),
    })
}

fn emit(doc: &Document, block: &str, args: &[String], flags: &Flags) -> Result<Report, CliError> {
    let (label, fragment) = match doc.block(block).map(|b| b.body.kind()) {
        Some("set") if args.is_empty() => (block.to_owned(), syntacticize_set(block, &doc.set(block)?)?),
        Some("function") if args.is_empty() => {
            let f = doc.function(block)?;
            (block.to_owned(), syntacticize_function(block, &f.from_sort, &f.from, &f.to_sort, &f.to, &f.table)?)
        }
        Some("geotheory") => {
            let c = construction(args, flags.bound)?;
            let host = doc.geotheory(block)?;
            (format!("{block}_{}", c.sort()), emit_construction(&host, &c)?)
        }
        Some(kind) => return Err(usage(format!("cannot emit from a {kind} block with these arguments"))),
        None => return Err(usage(format!("no block named `{block}`"))),
    };
    let text = dsl::print_block(&label, &BlockBody::GeoTheory(fragment.clone()));
    let mut r = Report::new("emit");
    r.set("block", json!(block));
    r.set("fragment", json!(label));
    r.set("axioms", json!(fragment.axioms.len()));
    r.set("text", json!(text));
    r.text.extend(text.lines().map(str::to_owned));
    Ok(r)
}

fn check(doc: &Document) -> Result<Report, CliError> {
    let mut r = Report::new("check");
    let mut entries = Vec::new();
    for b in &doc.blocks {
        let mut entry = json!({ "name": b.name, "kind": b.body.kind() });
        let mut status = "ok".to_owned();
        if let BlockBody::Site { .. } = b.body {
            let site = doc.site(&b.name)?;
            let c = site.category();
            let violations: Vec<Value> = site
                .site_condition_violations()
                .into_iter()
                .map(|(i, g)| {
                    let target = &c.objects()[site.covers()[i].0];
                    r.line(format!("site {}: cover {i} of {target} is not stable along {}", b.name, c.name(g)));
                    json!({ "cover": i, "target": target, "morphism": c.name(g) })
                })
                .collect();
            if !violations.is_empty() {
                status = "site condition fails".into();
                r.ok = false;
            }
            entry["violations"] = Value::Array(violations);
        }
        r.line(format!("{} {}: {status}", b.body.kind(), b.name));
        entry["status"] = json!(status);
        entries.push(entry);
    }
    r.set("blocks", Value::Array(entries));
    Ok(r)
}

fn sierp(view: SierpView, subterminal: &str) -> Result<Report, CliError> {
    let parse_bit = |c: char| match c {
        '0' => Ok(false),
        '1' => Ok(true),
        _ => Err(usage(format!("subterminal `{subterminal}` should be two binary digits, like 01"))),
    };
    let bits: Vec<char> = subterminal.chars().collect();
    if bits.len() != 2 {
        return Err(usage(format!("subterminal `{subterminal}` should be two binary digits, like 01")));
    }
    let u = Subterminal::new(parse_bit(bits[0])?, parse_bit(bits[1])?)?;
    let mut r = Report::new("sierp");
    let pair = |u: Subterminal| json!({ "bot": u.bot as u8, "top": u.top as u8 });
    r.set("subterminal", pair(u));
    let b = internal_zero_exp(u);
    let s = fibrewise_spec(&b);
    match view {
        SierpView::Neg => {
            let n = heyting_neg(u);
            r.set("view", json!("neg"));
            r.set("negation", pair(n));
            r.line(format!("not {} = {}", u.label(), n.label()));
        }
        SierpView::Zeroexp => {
            r.set("view", json!("zeroexp"));
            r.set("algebra_sizes", json!({ "bot": b.alg_bot.len(), "top": b.alg_top.len() }));
            r.set("restriction", json!(b.restriction));
            r.line(format!("0^{}: stalk algebras of sizes ({}, {})", u.label(), b.alg_bot.len(), b.alg_top.len()));
        }
        SierpView::Spec => {
            let (nb, nt) = s.counts();
            let op = opfibration_check(nb, nt);
            r.set("view", json!("spec"));
            r.set("fibre_points", json!({ "bot": nb, "top": nt }));
            r.set("fibre_map", json!(s.fibre_map));
            r.set("opfibration", json!(op));
            r.line(format!("fibre points: ({nb}, {nt})"));
            r.line(format!("opfibration: {op}"));
        }
        SierpView::Coreflect => {
            let core = discrete_coreflection(&s);
            let (cb, ct) = core.counts();
            r.set("view", json!("coreflect"));
            r.set("coreflection", serde_json::to_value(&core).expect("serializable"));
            r.set("empty", json!(core.is_empty()));
            r.line(format!("discrete coreflection: stalks ({cb}, {ct}), empty: {}", core.is_empty()));
        }
        SierpView::Report => {
            if u != Subterminal::GENERIC {
                return Err(usage("the full report is for the generic point 01"));
            }
            let rep = closed_complement_report();
            r.fields = match serde_json::to_value(&rep).expect("serializable") {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            r.set("view", json!("report"));
            let v = &rep;
            r.line(format!("generic point P = ({}, {})", v.generic_point.bot, v.generic_point.top));
            r.line(format!("not P = ({}, {})", v.heyting_negation.bot, v.heyting_negation.top));
            r.line(format!("0^P stalk algebras: ({}, {})", v.zero_exp_algebra_sizes.bot, v.zero_exp_algebra_sizes.top));
            r.line(format!("fibre points: ({}, {})", v.fibre_points.bot, v.fibre_points.top));
            r.line(format!("opfibration: {}", v.opfibration));
            r.line(format!("discrete coreflection empty: {}", v.coreflection_empty));
        }
    }
    Ok(r)
}
