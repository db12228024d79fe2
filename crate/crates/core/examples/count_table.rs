//! Prints s, L and H for every type of a given size.
//!
//!     cargo run --example count_table -- 4

use modsub::counting::CountTable;
use modsub::types::CombinatorialType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(3);
    let table = CountTable::new();
    println!("{:<16} {:>12} {:>12} {:>10}", "type", "s", "L", "H");
    for t in CombinatorialType::all_of_size(n) {
        let l = table.l(t)?;
        if l == Default::default() {
            continue;
        }
        println!("{:<16} {:>12} {:>12} {:>10}", t.to_string(), table.s(t)?.to_string(), l.to_string(), table.h(t)?.to_string());
    }
    for m in 1..=4 {
        println!("silhouette graphs on {} vertices: {}", 6 * m, table.silhouette_count(6 * m)?);
    }
    Ok(())
}
