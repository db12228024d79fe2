//! Fills the count table, writes it to disk and reloads it.
//!
//!     cargo run --release --example precompute_cache -- 60 /tmp/modsub.table

use std::time::Instant;

use modsub::counting::CountTable;
use modsub::types::CombinatorialType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let nmax: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(40);
    let path = args.next().unwrap_or_else(|| std::env::temp_dir().join("modsub.table").display().to_string());
    let start = Instant::now();
    let table = CountTable::new();
    table.precompute(nmax)?;
    println!("{} entries up to size {nmax} in {:.2?}", table.len(), start.elapsed());
    table.save(path.as_ref())?;
    let loaded = CountTable::load(path.as_ref())?;
    let t = CombinatorialType::new(nmax - nmax % 6, (nmax - nmax % 6) / 2, 0, 0, 0);
    println!("reloaded {} entries from {path}; s{t} has {} digits", loaded.len(), loaded.s(t)?.to_string().len());
    Ok(())
}
