//! Spec and Clop between finite Boolean algebras and finite discrete spaces.
use locus::order::fin_powerset;
use locus::points::{clop, spec, SpaceRep};

fn main() -> locus::Result<()> {
    let b = fin_powerset(&["r", "g", "b"])?;
    let (space, points) = spec(&b);
    println!("Spec of P({{r,g,b}}) has {} points:", points.len());
    for p in points.iter_named() {
        println!("  {}", p.join(" "));
    }
    let back = clop(&space)?;
    println!(
        "Clop(Spec B) has {} elements, isomorphic to B: {}",
        back.len(),
        back.lattice().is_isomorphic(b.lattice())
    );

    let d = SpaceRep::Discrete { carrier: vec!["x".into(), "y".into()] };
    let a = clop(&d)?;
    println!("clopens of a 2-point discrete space: {}", a.len());
    Ok(())
}
