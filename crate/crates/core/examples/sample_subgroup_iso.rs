//! Draws uniform subgroups of a given size and isomorphism type, and uniform
//! subgroups of a given combinatorial type.
//!
//!     cargo run --release --example sample_subgroup_iso -- 30 2 1 3

use modsub::counting::{factorial, CountTable};
use modsub::sampler::{random_reduced_graph, random_subgroup_iso, RandomSource, SamplerOptions};
use modsub::types::{CombinatorialType, IsomorphismType};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let nums: Vec<u32> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (n, sigma) = match nums[..] {
        [n, l2, l3, r] => (n, IsomorphismType::new(l2, l3, r)),
        _ => (30, IsomorphismType::new(2, 1, 3)),
    };
    let table = CountTable::new();
    let rooted = table.count_iso(n, sigma)?;
    println!("size {n}, Z/2^{} * Z/3^{} * F_{}: {} subgroups", sigma.l2, sigma.l3, sigma.r, &rooted / factorial(n));
    let mut rng = RandomSource::seeded(7);
    let opts = SamplerOptions::default();
    for _ in 0..3 {
        let g = random_subgroup_iso(n, sigma, false, &table, &mut rng, opts)?;
        println!("{}", g.to_json());
    }
    let t = CombinatorialType::new(12, 5, 2, 2, 1);
    let g = random_reduced_graph(t, &table, &mut rng, opts)?;
    println!("rooted graph of type {t}: {}", g.to_json());
    Ok(())
}
