//! Hilbert symbols at every relevant place and the product formula.

use modlat::exactnum::parse_rational;
use modlat::symbols::{hilbert, hilbert_product, relevant_places};

fn main() -> modlat::Result<()> {
    for (a, b) in [("-1", "-1"), ("2", "-7"), ("3/5", "-1"), ("-3", "14"), ("13", "-17/4")] {
        let (qa, qb) = (parse_rational(a)?, parse_rational(b)?);
        let parts: Vec<String> = relevant_places(&qa, &qb)?.into_iter().map(|v| format!("{v}:{:+}", hilbert(&qa, &qb, v).value())).collect();
        println!("({a}, {b})  {}  product {:+}", parts.join(" "), hilbert_product(&qa, &qb)?.value());
    }
    Ok(())
}
