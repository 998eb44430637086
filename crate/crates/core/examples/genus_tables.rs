//! Existence and genus counts for small primes and ranks, both rings.
//!
//! Run with `cargo run --example genus_tables`.

use modlat::exactnum::{primes_up_to, DetClass};
use modlat::global::{exists_modular, genus_enumerate, Ring};

fn main() {
    println!("{:>4} {:>3} {:>6} {:>6} {:>8}", "p", "n", "#OK", "#R", "OK, [1]");
    for p in primes_up_to(31) {
        for n in [2usize, 4, 6, 8] {
            let ok = genus_enumerate(p, n, Ring::OK).len();
            let r = if p % 4 == 3 { genus_enumerate(p, n, Ring::R).len().to_string() } else { "-".into() };
            let any = exists_modular(p, n, Ring::OK, &DetClass::identity(p)).unwrap_or(false);
            println!("{p:>4} {n:>3} {ok:>6} {r:>6} {:>8}", if any { "yes" } else { "no" });
        }
    }

    println!("\nthe seven genera of rank 4 over Z[√-7]:");
    for s in genus_enumerate(7, 4, Ring::R) {
        println!("  {s}");
    }
}
