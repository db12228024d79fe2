//! Draws uniform cyclically reduced graphs of a combinatorial type.
//!
//!     cargo run --release --example sample_cyclic -- 40,16,6,8,1 3

use modsub::counting::CountTable;
use modsub::sampler::{random_cyclically_reduced_graph, RandomSource, SamplerOptions};
use modsub::silhouette::silhouette;
use modsub::types::CombinatorialType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let t: CombinatorialType = args.next().unwrap_or_else(|| "40,16,6,8,1".into()).parse()?;
    let count: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(3);
    let table = CountTable::new();
    println!("{} labeled graphs of type {t}", table.s(t)?);
    let mut rng = RandomSource::seeded(2024);
    for _ in 0..count {
        let g = random_cyclically_reduced_graph(t, &table, &mut rng, SamplerOptions::default())?;
        let s = silhouette(&g)?;
        println!("{}\n  silhouette has {} vertices, rank {}", g.to_json(), s.size(), g.isomorphism_type()?.r);
    }
    println!("random bits used: {}", rng.bits_consumed());
    Ok(())
}
