//! Writing a representative to the JSON exchange format and reading it back.

use modlat::cli::GramDocument;
use modlat::global::{genus_enumerate, glue_lattice, Ring};

fn main() -> modlat::Result<()> {
    let s = &genus_enumerate(3, 4, Ring::R)[0];
    let l = glue_lattice(3, s)?;
    let text = GramDocument::from_lattice(&l, 64).to_json();
    print!("{text}");
    let back = GramDocument::parse(&text)?.to_lattice()?;
    assert_eq!(back.gram(), l.gram());
    assert_eq!(back.tags(), l.tags());
    println!("round trip ok for {s}");
    Ok(())
}
