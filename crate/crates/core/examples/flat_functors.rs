//! Flat functors on a small category, and the continuous ones for a site.
use locus::geolog::site::catalogue;
use locus::geolog::{add_continuity, check_flat_epi, find_models_with, flat_theory, uniform_caps, SearchOptions, Site};

fn main() -> locus::Result<()> {
    let c = catalogue::span();
    let ft = flat_theory(&c)?;
    let opts = SearchOptions { dedupe_iso: true, ..SearchOptions::default() };
    let flat = find_models_with(&ft, &uniform_caps(&ft, 2), &opts)?;
    println!("flat functors on l <- c -> r with stalks <= 2, up to iso: {}", flat.len());
    for m in &flat {
        println!("  stalks {:?}, epi check {}", m.sizes, check_flat_epi(m, &c));
    }

    // l is covered by its identity; c and r by the empty family, which forces their stalks empty.
    let obj = |name: &str| c.object_index(name).expect("object");
    let (l, cc, r) = (obj("l"), obj("c"), obj("r"));
    let site = Site::new(c.clone(), vec![(l, vec![c.identity(l)]), (cc, vec![]), (r, vec![])])?;
    println!("site condition violations: {:?}", site.site_condition_violations());
    let cont = add_continuity(&ft, &site)?;
    for m in find_models_with(&cont, &uniform_caps(&cont, 2), &opts)? {
        println!("continuous: stalks {:?}", m.sizes);
    }
    Ok(())
}
