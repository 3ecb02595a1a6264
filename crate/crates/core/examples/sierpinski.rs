//! Subterminals of the Sierpinski topos and the closed complement of the
//! generic point.
use locus::sierpinski::{closed_complement_report, fibrewise_spec, heyting_neg, internal_zero_exp, Subterminal};

fn main() {
    for u in Subterminal::all() {
        let nn = heyting_neg(heyting_neg(u));
        let s = fibrewise_spec(&internal_zero_exp(u));
        println!("{}: not not = {}, points of 0^u per stalk = {:?}", u.label(), nn.label(), s.counts());
    }
    let report = closed_complement_report();
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
}
