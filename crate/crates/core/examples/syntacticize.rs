//! Axioms forcing a sort to be a given finite set or construction.
use locus::geolog::{
    emit_construction, find_models_with, syntacticize_function, uniform_caps, Construction, SearchOptions,
};

fn main() -> locus::Result<()> {
    let t = syntacticize_function("parity", "N", &["n0", "n1", "n2"], "P", &["even", "odd"], &[0, 1, 0])?;
    for line in t.render_body() {
        println!("{line}");
    }

    // Kernel pair of parity, as a pullback over P.
    let c = Construction::Pullback {
        sort: "K".into(),
        f1: "parity".into(),
        f2: "parity".into(),
        p1: "k1".into(),
        p2: "k2".into(),
    };
    let mut host = t.clone();
    host.merge(&emit_construction(&t, &c)?)?;
    let opts = SearchOptions { dedupe_iso: true, ..SearchOptions::default() };
    let models = find_models_with(&host, &uniform_caps(&host, 5), &opts)?;
    let k = host.sort("K")?;
    println!("pullback carrier sizes: {:?}", models.iter().map(|m| m.sizes[k]).collect::<Vec<_>>());

    let nno = Construction::Nno { sort: "Nat".into(), zero: "zero".into(), succ: "succ".into(), bound: 3 };
    let frag = emit_construction(&Default::default(), &nno)?;
    let sizes: Vec<usize> = find_models_with(&frag, &[4], &opts)?.iter().map(|m| m.sizes[0]).collect();
    println!("bounded naturals: carriers {sizes:?}");
    Ok(())
}
