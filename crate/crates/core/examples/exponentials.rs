//! Exponentials between discrete and Stone spaces.
use locus::expspace::{double_exp_two, exp_discrete_of_stone, exp_stone_of_discrete};
use locus::order::{fin_powerset, free_boolean_algebra};

fn main() -> locus::Result<()> {
    let x = ["u", "v"];
    let b = fin_powerset(&["0", "1", "2"])?;
    let e = exp_stone_of_discrete(&x, &b)?;
    println!("(Spec B)^X: {} points, clopen algebra of size {}", e.point_count(), e.algebra()?.len());

    let a = fin_powerset(&["s", "t"])?;
    let maps = exp_discrete_of_stone(&a, &["red", "blue", "green"])?;
    println!("Y^(Spec A): {} maps", maps.len());
    for m in maps.iter().take(3) {
        println!("  {:?}", m.as_function());
    }

    for n in 0..=3 {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let d = double_exp_two(&names)?;
        println!(
            "|2^(2^X)| for |X| = {n}: {}, free: {}",
            d.algebra.len(),
            d.marked_isomorphic(&free_boolean_algebra(&names)?)
        );
    }
    Ok(())
}
