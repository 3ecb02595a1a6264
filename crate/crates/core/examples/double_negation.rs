//! 0^(0^p) recovers the truth value p, and open and closed subspaces
//! together cover the space.
use locus::expspace::{is_inhabited, zero_exp, zero_exp_stone};
use locus::order::{closed_nucleus, downsets, open_nucleus, sublocale_join, FinPoset};

fn main() -> locus::Result<()> {
    for p in [false, true] {
        let once = zero_exp(p);
        let twice = zero_exp_stone(&once)?;
        println!("p = {p}: 0^p inhabited {}, 0^(0^p) inhabited {}", is_inhabited(&once)?, is_inhabited(&twice)?);
    }

    let l = downsets(&FinPoset::chain(3));
    for a in l.elements() {
        let join = sublocale_join(&open_nucleus(&l, a), &closed_nucleus(&l, a))?;
        println!("open {0} join closed {0} is everything: {1}", l.name(a), join.is_identity());
    }
    Ok(())
}
