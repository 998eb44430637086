//! Symmetric bilinear forms over F₂: brute-force orbit counts against the
//! invariants (rank, alternating).

use std::collections::BTreeSet;

use modlat::bass::{all_symmetric, f2_classify, f2_orbit_count};

fn main() -> modlat::Result<()> {
    for n in 1..=4 {
        let classes: BTreeSet<_> = all_symmetric(n).iter().map(f2_classify).collect();
        let brute = if n <= 3 { f2_orbit_count(n)?.to_string() } else { "(skipped)".into() };
        println!("n={n}: {} classes by invariants, {brute} orbits by brute force", classes.len());
        for c in &classes {
            println!("    rank {} alternating {:<5} canonical {:?}", c.rank, c.alternating, c.canonical.matrix);
        }
    }
    Ok(())
}
