//! Brute-force counts by type, next to the recurrence values.
//!
//!     cargo run --release --example enumerate_oracle -- 6

use modsub::counting::CountTable;
use modsub::oracle;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(5);
    let table = CountTable::new();
    for (t, brute) in oracle::count_by_type(n)? {
        let rec = table.s(t)?;
        println!("{t:<16} enumerated {brute:>8}  recurrence {rec:>8}  {}", if *rec == brute { "ok" } else { "MISMATCH" });
    }
    let graphs = oracle::enumerate_cyclically_reduced(n.min(3))?;
    println!("first of {} graphs on {} vertices: {}", graphs.len(), n.min(3), graphs[0].to_json());
    Ok(())
}
