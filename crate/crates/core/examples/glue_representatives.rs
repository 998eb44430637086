//! Explicit Gram matrices for every genus, checked against their symbols.
//!
//! `cargo run --example glue_representatives -- 11 4` picks p and n.

use modlat::global::{genus_enumerate, glue_lattice, verify_genus, Ring};
use modlat::herm::{global_det_class, ideals};

fn main() -> modlat::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (p, n) = match args[..] {
        [p, n] => (p, n as usize),
        _ => (7, 4),
    };
    for ring in [Ring::OK, Ring::R] {
        if ring == Ring::R && p % 4 != 3 {
            continue;
        }
        for s in genus_enumerate(p, n, ring) {
            let l = glue_lattice(p, &s)?;
            let check = verify_genus(&l, &s);
            println!("{s}");
            println!("  det {} (class {}), norm {}, verified: {}", l.det(), global_det_class(&l)?, ideals(&l).1, check.passed());
            for row in l.gram() {
                let cells: Vec<String> = row.iter().map(|e| format!("{}{:+}√-{p}", e.a, e.b)).collect();
                println!("    [{}]", cells.join(", "));
            }
        }
    }
    Ok(())
}
