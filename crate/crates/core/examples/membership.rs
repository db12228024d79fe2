//! Normal forms and membership in the subgroup <abaB, babab>.
//!
//!     cargo run --example membership -- abaB bb aBab

use modsub::graph::Graph;
use modsub::words::{member, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = Graph::from_json(include_str!("../data/subgroup_h.json"))?;
    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = ["abaB", "babab", "abb", "aBab", "ba"].map(String::from).to_vec();
    }
    for w in words {
        let word: Word = w.parse()?;
        println!("{w:>10} -> {:<10} member: {}", word.normalize().to_string(), member(&h, &word)?);
    }
    Ok(())
}
