//! Every nucleus on a small frame and the sublocale it cuts out.
use locus::order::{downsets, nuclei, FinPoset};

fn main() -> locus::Result<()> {
    let l = downsets(&FinPoset::from_named(&["a", "b", "c"], &[("a", "c")])?);
    let all = nuclei(&l)?;
    println!("{} nuclei on a frame with {} elements", all.len(), l.len());
    for j in &all {
        let fixed: Vec<String> = j.fixed_points().into_iter().map(|x| l.name(x)).collect();
        println!("  fixes {}", fixed.join(" "));
    }
    Ok(())
}
