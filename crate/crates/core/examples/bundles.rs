//! Models of an extension over a fixed model of the base theory.
use locus::geolog::{FinModel, GeomTheory, SearchOptions, TheoryExtension};

fn main() -> locus::Result<()> {
    let mut base = GeomTheory::new();
    let x = base.add_sort("X")?;
    let mut ext = base.clone();
    ext.add_pred("P", &[x])?;
    let e = TheoryExtension::by_inclusion(base, ext)?;

    let opts = SearchOptions::default();
    for n in 0..=3 {
        let point = FinModel { sizes: vec![n], funcs: vec![], preds: vec![] };
        let fibre = e.fibre_models(&point, &[3], &opts)?;
        let filtered = e.fibre_models_by_filter(&point, &[3], &opts)?;
        println!("|X| = {n}: {} models over the point, routes agree: {}", fibre.len(), fibre == filtered);
    }
    Ok(())
}
