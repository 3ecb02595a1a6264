//! Finite models of a small geometric theory.
use locus::geolog::{find_models_with, Formula, GeomTheory, SearchOptions, SequentBuilder, Term};

fn main() -> locus::Result<()> {
    // A set with an involution and a marked fixed point.
    let mut t = GeomTheory::new();
    let x = t.add_sort("X")?;
    let f = t.add_func("f", &[x], x)?;
    let c = t.add_const("c", x)?;
    let mut b = SequentBuilder::new();
    let v = b.context("x", x);
    let ffx = Term::app(f, vec![Term::app(f, vec![Term::var(v)])]);
    t.add_axiom(b.finish("involution", Formula::Top, Formula::eq(ffx, Term::var(v))))?;
    let fc = Term::app(f, vec![Term::constant(c)]);
    t.add_axiom(SequentBuilder::new().finish("fixed", Formula::Top, Formula::eq(fc, Term::constant(c))))?;

    for dedupe_iso in [false, true] {
        let opts = SearchOptions { dedupe_iso, ..SearchOptions::default() };
        let models = find_models_with(&t, &[4], &opts)?;
        println!("carriers <= 4, dedupe {dedupe_iso}: {} models", models.len());
        if dedupe_iso {
            for m in &models {
                println!("  |X| = {}, f = {:?}, c = {}", m.sizes[0], m.funcs[f], m.funcs[c][0]);
            }
        }
    }
    Ok(())
}
