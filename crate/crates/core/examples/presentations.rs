//! The same space presented as a frame, a formal topology, a GRD system
//! and a propositional theory.
use locus::order::{downsets, FinPoset};
use locus::points::{enumerate_points, prime_filters};
use locus::present::{
    formal_topology_to_theory, frame_to_theory, grd_to_theory, lindenbaum, FormalTopology, GrdSystem, PropTheory,
};

fn main() -> locus::Result<()> {
    let frame = downsets(&FinPoset::antichain(2));
    let t = frame_to_theory(&frame);
    println!("frame: {} elements, {} axioms, {} points", frame.len(), t.axioms().len(), enumerate_points(&t)?.len());
    println!("prime filters: {}", prime_filters(&frame).len());

    // A basic open `top` covered by two disjoint pieces.
    let base = FinPoset::from_named(&["l", "r", "top"], &[("l", "top"), ("r", "top")])?;
    let ft = FormalTopology::new(base, vec![(2, vec![0, 1])])?;
    let pts = enumerate_points(&formal_topology_to_theory(&ft))?;
    println!("formal topology points: {:?}", pts.iter_named().collect::<Vec<_>>());

    let s = GrdSystem::new(
        vec!["p".into(), "q".into()],
        vec!["split".into()],
        vec!["left".into(), "right".into()],
        vec![vec![]],
        vec![0, 0],
        vec![vec![0], vec![1]],
    )?;
    println!("GRD points: {:?}", enumerate_points(&grd_to_theory(&s))?.iter_named().collect::<Vec<_>>());

    let em = PropTheory::from_named(
        &["p", "notp"],
        &[(vec![], vec![vec!["p"], vec!["notp"]]), (vec!["p", "notp"], vec![])],
    )?;
    let lb = lindenbaum(&em)?;
    println!("Lindenbaum algebra of p or not p: {} elements over {} models", lb.lattice.len(), lb.model_count);
    Ok(())
}
