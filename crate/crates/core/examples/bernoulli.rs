//! Exact Bernoulli draws with big-integer parameters, reading random bits
//! one at a time.
//!
//!     cargo run --release --example bernoulli

use modsub::counting::CountTable;
use modsub::sampler::{bernoulli_counted, RandomSource};
use modsub::types::CombinatorialType;
use num_traits::ToPrimitive;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = CountTable::new();
    // the branch probability at a λ2 step of a mid-sized type
    let t = CombinatorialType::new(60, 25, 10, 10, 4);
    let total = table.s(t)?;
    let weight = table.lambda21_weight(t)?;
    println!("s{t} has {} bits", total.bits());
    let mut rng = RandomSource::seeded(1);
    let draws = 100_000;
    let (mut hits, mut attempts) = (0u32, 0u64);
    for _ in 0..draws {
        let (b, a) = bernoulli_counted(&weight, &total, &mut rng)?;
        hits += b as u32;
        attempts += a as u64;
    }
    let shift = total.bits().saturating_sub(60);
    let exact = (&*weight >> shift).to_f64().unwrap() / (&*total >> shift).to_f64().unwrap();
    println!("probability {exact:.4}, empirical {:.4}", hits as f64 / draws as f64);
    println!("attempts per draw {:.3}, bits per draw {:.2}", attempts as f64 / draws as f64, rng.bits_consumed() as f64 / draws as f64);
    Ok(())
}
