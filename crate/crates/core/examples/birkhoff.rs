//! Downsets of a poset form a distributive lattice whose join-irreducibles
//! give the poset back.
use locus::order::{downsets, FinPoset};

fn main() -> locus::Result<()> {
    // The zigzag a < c > b < d.
    let p = FinPoset::from_named(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")])?;
    let l = downsets(&p);
    println!("O(P) has {} elements:", l.len());
    for x in l.elements() {
        println!("  {}", l.name(x));
    }

    let j = l.irreducible_poset();
    println!("join-irreducibles: {:?}", j.names());
    println!("covers in J(O(P)): {:?}", j.covers().iter().map(|&(a, b)| (j.name(a), j.name(b))).collect::<Vec<_>>());
    println!("J(O(P)) isomorphic to P: {}", j.isomorphism(&p).is_some());
    Ok(())
}
