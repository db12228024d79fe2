//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use modsub::counting::{factorial, t2, t3, CountTable};
use modsub::graph::Graph;
use modsub::moves::{self, Sign};
use modsub::oracle;
use modsub::sampler::{
    self, bernoulli_counted, Branch, Expansion, RandomSource, SamplerOptions,
};
use modsub::silhouette::{is_silhouette_graph, silhouette_random_order, silhouette_with_trace};
use modsub::types::{CombinatorialType, IsomorphismType, TypeDelta};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < budget, || format!("took {took:.1?}, budget {budget:?}"))
}

fn ty(n: u32, k2: u32, k3: u32, l2: u32, l3: u32) -> CombinatorialType {
    CombinatorialType::new(n, k2, k3, l2, l3)
}

fn small_table() -> Outcome {
    let start = Instant::now();
    let table = CountTable::new();
    let big = |x: u32| BigUint::from(x);
    for (t, want) in [
        (ty(1, 0, 0, 1, 1), 1),
        (ty(2, 1, 1, 0, 0), 2),
        (ty(2, 0, 1, 2, 0), 2),
        (ty(2, 1, 0, 0, 2), 1),
    ] {
        let got = table.s(t).map_err(|e| e.to_string())?;
        ensure(*got == big(want), || format!("s{t} = {got}, want {want}"))?;
    }
    for (t, l, h) in [(ty(2, 1, 1, 0, 0), 4, 2), (ty(2, 1, 0, 0, 1), 2, 1)] {
        let gl = table.l(t).map_err(|e| e.to_string())?;
        let gh = table.h(t).map_err(|e| e.to_string())?;
        ensure(gl == big(l) && gh == big(h), || format!("L{t} = {gl}, H = {gh}; want {l}, {h}"))?;
    }
    within(Duration::from_secs(1), start)?;
    Ok("4 s-values, 2 L/H pairs exact".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let table = CountTable::new();
    let mut s_checked = 0;
    let mut l_checked = 0;
    for n in 1..=7u32 {
        let brute = oracle::count_by_type(n).map_err(|e| e.to_string())?;
        for t in CombinatorialType::cyclic_of_size(n) {
            let want = brute.get(&t).cloned().unwrap_or_default();
            let got = table.s(t).map_err(|e| e.to_string())?;
            ensure(*got == want, || format!("s{t}: recurrence {got}, brute force {want}"))?;
            s_checked += 1;
        }
        ensure(brute.keys().all(|t| t.is_valid_cyclic()), || format!("invalid type in size {n}"))?;
        if n <= 6 {
            let brute = oracle::count_rooted_by_type(n).map_err(|e| e.to_string())?;
            for t in CombinatorialType::all_of_size(n) {
                let want = brute.get(&t).cloned().unwrap_or_default();
                let got = table.l(t).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("L{t}: recurrence {got}, brute force {want}"))?;
                l_checked += 1;
            }
            ensure(
                brute.keys().all(|t| CombinatorialType::all_of_size(n).any(|u| u == *t)),
                || format!("rooted type missing from the type list at size {n}"),
            )?;
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{s_checked} s-types (n<=7), {l_checked} L-types (n<=6)"))
}

fn silhouette_counts() -> Outcome {
    let start = Instant::now();
    let table = CountTable::new();
    let s6 = table.silhouette_count(6).map_err(|e| e.to_string())?;
    let brute6 = oracle::count_by_type(6).map_err(|e| e.to_string())?[&ty(6, 3, 0, 0, 0)].clone();
    ensure(*s6 == BigUint::from(600u32) && brute6 == *s6, || format!("s(6) = {s6}, brute {brute6}"))?;

    let s12 = table.silhouette_count(12).map_err(|e| e.to_string())?;
    let oracle12 = oracle::silhouette_count(12).map_err(|e| e.to_string())?;
    let want12 = BigUint::from(2_395_008_000u64);
    ensure(*s12 == want12 && oracle12 == want12, || format!("s(12) = {s12}, oracle {oracle12}"))?;

    // the recurrence without the binomial factor overcounts and loses integrality
    let p = |n: u32| t2(n).unwrap() * t3(n).unwrap();
    let no_binomial = p(12) - &*s6 * p(6);
    ensure(no_binomial == BigUint::from(2_560_968_000u64), || format!("unweighted s(12) = {no_binomial}"))?;
    ensure(!(BigUint::from(12u32) * &no_binomial % factorial(12)).is_zero(), || {
        "unweighted s(12) unexpectedly integral".into()
    })?;

    let mut firsts = Vec::new();
    for m in 1..=20u32 {
        let n = 6 * m;
        let s = table.silhouette_count(n).map_err(|e| e.to_string())?;
        let num = BigUint::from(n) * &*s;
        let f = factorial(n);
        ensure((&num % &f).is_zero(), || format!("{n} s({n}) / {n}! is not an integer"))?;
        if m <= 2 {
            firsts.push(num / f);
        }
    }
    ensure(firsts == [BigUint::from(5u32), BigUint::from(60u32)], || format!("first values {firsts:?}"))?;
    within(Duration::from_secs(120), start)?;
    Ok("s(6)=600, s(12)=2395008000, integral up to 6*20; unweighted recurrence gives 2560968000".into())
}

const SAMPLES: usize = 200_000;
const ALPHA: f64 = 1e-4;

fn all_options() -> Vec<SamplerOptions> {
    let mut v = Vec::new();
    for expansion in [Expansion::Faithful, Expansion::FreshVertex] {
        for branch in [Branch::Bernoulli, Branch::UniformInteger] {
            v.push(SamplerOptions { expansion, branch });
        }
    }
    v
}

fn sampler_uniformity() -> Outcome {
    let start = Instant::now();
    let table = CountTable::new();
    table.precompute(6).map_err(|e| e.to_string())?;
    let opts = SamplerOptions::default();

    // (label, universe, sampler)
    type Job<'a> = (String, Vec<Graph>, Box<dyn Fn(&mut RandomSource) -> Graph + Sync + 'a>);
    let mut jobs: Vec<Job> = Vec::new();

    let cr_types = [
        ty(3, 1, 1, 1, 1),
        ty(3, 1, 0, 1, 0),
        ty(4, 2, 2, 0, 0),
        ty(2, 1, 1, 0, 0),
        ty(2, 0, 1, 2, 0),
        ty(2, 1, 0, 0, 2),
    ];
    for t in cr_types {
        let universe: Vec<Graph> = oracle::enumerate_cyclically_reduced(t.n)
            .unwrap()
            .into_iter()
            .filter(|g| g.combinatorial_type() == t)
            .collect();
        for o in all_options() {
            let table = &table;
            let f = move |r: &mut RandomSource| sampler::random_cyclically_reduced_graph(t, table, r, o).unwrap();
            jobs.push((format!("cr {t} {o:?}"), universe.clone(), Box::new(f)));
        }
    }
    for n in 1..=4 {
        let rooted = oracle::enumerate_reduced(n).unwrap();
        for t in CombinatorialType::all_of_size(n) {
            let universe: Vec<Graph> = rooted.iter().filter(|g| g.combinatorial_type() == t).cloned().collect();
            if universe.is_empty() {
                continue;
            }
            let table = &table;
            let f = move |r: &mut RandomSource| sampler::random_reduced_graph(t, table, r, opts).unwrap();
            jobs.push((format!("rooted {t}"), universe, Box::new(f)));
        }
        for l2 in 0..=n {
            for l3 in 0..=n {
                for rk in 0..=n {
                    let sigma = IsomorphismType::new(l2, l3, rk);
                    for cyclic in [false, true] {
                        let universe: Vec<Graph> = rooted
                            .iter()
                            .filter(|g| g.isomorphism_type().unwrap() == sigma)
                            .filter(|g| !cyclic || g.is_cyclically_reduced())
                            .cloned()
                            .collect();
                        if universe.is_empty() {
                            continue;
                        }
                        let table = &table;
                        let f = move |r: &mut RandomSource| {
                            sampler::random_subgroup_iso(n, sigma, cyclic, table, r, opts).unwrap()
                        };
                        jobs.push((format!("iso n={n} {sigma} cyclic={cyclic}"), universe, Box::new(f)));
                    }
                }
            }
        }
    }

    let results: Vec<(String, Result<f64, String>)> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, (name, universe, f))| {
            let mut rng = RandomSource::seeded(1000 + i as u64);
            let p = panic::catch_unwind(AssertUnwindSafe(|| common::uniformity_p(universe, SAMPLES, || f(&mut rng))))
                .unwrap_or_else(|_| Err("sampler panicked".into()));
            (name.clone(), p)
        })
        .collect();
    let mut worst = (1.0f64, String::new());
    for (name, p) in &results {
        let p = p.clone().map_err(|e| format!("{name}: {e}"))?;
        ensure(p > ALPHA, || format!("{name}: p = {p:.2e}"))?;
        if p < worst.0 {
            worst = (p, name.clone());
        }
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{} distributions, {SAMPLES} samples each, min p = {:.3} ({})", results.len(), worst.0, worst.1))
}

fn check_confluence(g: &Graph, seed: u64) -> Result<(), String> {
    let (s0, _) = silhouette_with_trace(g).map_err(|e| e.to_string())?;
    let mut rng = RandomSource::seeded(seed);
    for _ in 0..5 {
        let s = silhouette_random_order(g, &mut rng).map_err(|e| e.to_string())?;
        ensure(s == s0, || format!("order-dependent silhouette for {}", g.to_json()))?;
    }
    ensure(is_silhouette_graph(&s0), || format!("{} is not a silhouette", s0.to_json()))?;
    let r = common::free_rank(g);
    ensure(common::free_rank(&s0) == r, || format!("rank changed on {}", g.to_json()))?;
    let formula = g.isomorphism_type().map_err(|e| e.to_string())?.r as i64;
    ensure(formula == r, || format!("rank formula {formula} vs quotient graph {r}"))?;
    ensure((s0 == Graph::delta1()) == (r == 0), || format!("r=0 vs delta1 on {}", g.to_json()))?;
    ensure((s0 == Graph::delta2()) == (r == 1), || format!("r=1 vs delta2 on {}", g.to_json()))?;
    Ok(())
}

fn confluence() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in 1..=7 {
        let mut batch: Vec<Graph> = Vec::new();
        let mut result: Result<(), String> = Ok(());
        let flush = |batch: &mut Vec<Graph>, result: &mut Result<(), String>, base: usize| {
            if result.is_ok() {
                *result = batch
                    .par_iter()
                    .enumerate()
                    .try_for_each(|(i, g)| check_confluence(g, (base + i) as u64));
            }
            batch.clear();
        };
        oracle::for_each_cyclically_reduced(n, |g| {
            batch.push(g);
            checked += 1;
            if batch.len() == 20_000 {
                flush(&mut batch, &mut result, checked);
            }
        })
        .map_err(|e| e.to_string())?;
        flush(&mut batch, &mut result, checked);
        result?;
    }
    let table = CountTable::new();
    let mut rng = RandomSource::seeded(77);
    let mut sampled = 0;
    while sampled < 200 {
        let n = rng.uniform_int(23) + 7;
        let types: Vec<CombinatorialType> = CombinatorialType::cyclic_of_size(n)
            .filter(|t| !table.s(*t).unwrap().is_zero())
            .collect();
        let t = types[rng.uniform_index(types.len())];
        let g = sampler::random_cyclically_reduced_graph(t, &table, &mut rng, SamplerOptions::default())
            .map_err(|e| e.to_string())?;
        check_confluence(&g, 10_000_000 + sampled)?;
        sampled += 1;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{checked} oracle graphs (n<=7) and {sampled} sampled graphs (n=8..30)"))
}

fn delta_ok(g: &Graph, d: &Graph, delta: TypeDelta) -> Result<(), String> {
    ensure(d.is_cyclically_reduced() && d.is_connected() && d.is_normalized(), || {
        format!("contraction of {} is not a normalized CR graph", g.to_json())
    })?;
    ensure(d.combinatorial_type().delta_from(&g.combinatorial_type()) == delta, || {
        format!("wrong type change on {}", g.to_json())
    })
}

fn round_trips() -> Outcome {
    let start = Instant::now();
    let mut counts = [0usize; 8];
    let err = |e: moves::MoveError| e.to_string();
    // contraction then expansion
    for n in 1..=6 {
        for g in oracle::enumerate_cyclically_reduced(n).unwrap() {
            for v in g.labels() {
                if let Ok((d, at, vv)) = moves::contract_lambda3(&g, v) {
                    delta_ok(&g, &d, TypeDelta::LAMBDA3)?;
                    ensure(moves::expand_lambda3(&d, at, vv).map_err(err)? == g, || format!("lambda3 at {v} on {}", g.to_json()))?;
                    counts[0] += 1;
                }
                if let Ok((d, from, vv)) = moves::contract_lambda21(&g, v) {
                    delta_ok(&g, &d, TypeDelta::LAMBDA21)?;
                    ensure(moves::expand_lambda21(&d, from, vv).map_err(err)? == g, || format!("lambda21 at {v} on {}", g.to_json()))?;
                    counts[1] += 1;
                }
                if let Ok((d, at, vv, w, eps)) = moves::contract_lambda22(&g, v) {
                    delta_ok(&g, &d, TypeDelta::LAMBDA22)?;
                    ensure(moves::expand_lambda22(&d, at, vv, w, eps).map_err(err)? == g, || format!("lambda22 at {v} on {}", g.to_json()))?;
                    counts[2] += 1;
                }
                if let Ok((d, e, vv, w, eps)) = moves::contract_kappa3(&g, v) {
                    delta_ok(&g, &d, TypeDelta::KAPPA3)?;
                    ensure(moves::expand_kappa3(&d, e, vv, w, eps).map_err(err)? == g, || format!("kappa3 at {v} on {}", g.to_json()))?;
                    counts[3] += 1;
                }
            }
        }
    }
    // expansion then contraction
    for m in 1..=5 {
        for d in oracle::enumerate_cyclically_reduced(m).unwrap() {
            for v in 1..=m + 1 {
                for at in d.a_loops() {
                    let g = moves::expand_lambda3(&d, at, v).map_err(err)?;
                    ensure(moves::contract_lambda3(&g, v).map_err(err)? == (d.clone(), at, v), || format!("lambda3 expansion of {}", d.to_json()))?;
                    counts[4] += 1;
                }
                for (from, _) in d.isolated_b_arcs() {
                    let g = moves::expand_lambda21(&d, from, v).map_err(err)?;
                    ensure(moves::contract_lambda21(&g, v).map_err(err)? == (d.clone(), from, v), || format!("lambda21 expansion of {}", d.to_json()))?;
                    counts[5] += 1;
                }
            }
            if m > 4 {
                continue;
            }
            for v in 1..=m + 2 {
                for w in (1..=m + 2).filter(|&w| w != v) {
                    for eps in [Sign::Plus, Sign::Minus] {
                        for at in d.a_loops() {
                            let g = moves::expand_lambda22(&d, at, v, w, eps).map_err(err)?;
                            ensure(
                                moves::contract_lambda22(&g, v).map_err(err)? == (d.clone(), at, v, w, eps),
                                || format!("lambda22 expansion of {}", d.to_json()),
                            )?;
                            counts[6] += 1;
                        }
                        for e in d.a_edges() {
                            let e = (e.0.min(e.1), e.0.max(e.1));
                            let g = moves::expand_kappa3(&d, e, v, w, eps).map_err(err)?;
                            ensure(
                                moves::contract_kappa3(&g, v).map_err(err)? == (d.clone(), e, v, w, eps),
                                || format!("kappa3 expansion of {}", d.to_json()),
                            )?;
                            counts[7] += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(counts.iter().all(|&c| c > 0), || format!("a family was never exercised: {counts:?}"))?;
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "contract/expand {:?} and expand/contract {:?} identities (l3, l21, l22, k3)",
        &counts[..4],
        &counts[4..]
    ))
}

fn rejection_rate() -> Outcome {
    let start = Instant::now();
    let n = 48;
    let trials = 100_000;
    let mut rng = RandomSource::seeded(48);
    let mut rejected = 0u32;
    for _ in 0..trials {
        if sampler::silhouette_attempt(n, &mut rng).map_err(|e| e.to_string())?.is_none() {
            rejected += 1;
        }
    }
    let freq = rejected as f64 / trials as f64;
    let asymptotic = 5.0 / (36.0 * n as f64);
    let ratio = freq / asymptotic;
    // exact disconnection probability from the counts, for the report
    let table = CountTable::new();
    let all = t2(n).unwrap() * t3(n).unwrap();
    let exact = 1.0 - ratio_of(&*table.silhouette_count(n).map_err(|e| e.to_string())?, &all);
    ensure((0.5..=2.0).contains(&ratio), || {
        format!("frequency {freq:.5}, ratio {ratio:.3} to 5/(36n); exact probability from counts {exact:.5}")
    })?;
    within(Duration::from_secs(120), start)?;
    Ok(format!("{rejected} of {trials} rejected, {ratio:.3} x 5/(36n)"))
}

/// `s / t` as a float, from the leading bits of both.
fn ratio_of(s: &BigUint, t: &BigUint) -> f64 {
    let shift = t.bits().saturating_sub(64);
    (s >> shift).to_f64().unwrap() / (t >> shift).to_f64().unwrap()
}

fn bernoulli_cost() -> Outcome {
    let start = Instant::now();
    let mut rng = RandomSource::seeded(8);
    let ten = BigUint::from(10u32);
    let low = ten.pow(999_999u32);
    let t = &low + rng.uniform_big(&(&low * 9u32));
    let s = rng.uniform_big(&t);
    let pairs = [
        (BigUint::from(1u32), BigUint::from(3u32), "1/3"),
        (BigUint::from(2u32), BigUint::from(5u32), "2/5"),
        (s, t, "10^6-digit pair"),
    ];
    let draws = 1_000_000u32;
    let mut report = Vec::new();
    for (s, t, name) in &pairs {
        let p = ratio_of(s, t);
        let mut hits = 0u32;
        let mut attempts = 0u64;
        for _ in 0..draws {
            let (b, a) = bernoulli_counted(s, t, &mut rng).map_err(|e| e.to_string())?;
            hits += b as u32;
            attempts += a as u64;
        }
        let mean = hits as f64 / draws as f64;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        let z = (mean - p) / sigma;
        let mean_attempts = attempts as f64 / draws as f64;
        ensure(z.abs() <= 4.0, || format!("{name}: mean {mean:.5} vs {p:.5}, z = {z:.2}"))?;
        ensure(mean_attempts <= 2.1, || format!("{name}: {mean_attempts:.3} attempts per call"))?;
        report.push(format!("{name}: z={z:.2}, attempts={mean_attempts:.3}"));
    }
    within(Duration::from_secs(120), start)?;
    Ok(report.join("; "))
}

fn scaling() -> Outcome {
    let start = Instant::now();
    let table = CountTable::new();
    let small = ty(600, 300, 0, 0, 0);
    let large = ty(6000, 3000, 0, 0, 0);
    table.s(small).map_err(|e| e.to_string())?;
    table.s(large).map_err(|e| e.to_string())?;
    let precompute = start.elapsed();
    let mut rng = RandomSource::seeded(9);
    let mut time = |t: CombinatorialType| -> Result<Duration, String> {
        for _ in 0..5 {
            sampler::random_cyclically_reduced_graph(t, &table, &mut rng, SamplerOptions::default())
                .map_err(|e| e.to_string())?;
        }
        let t0 = Instant::now();
        for _ in 0..50 {
            let g = sampler::random_cyclically_reduced_graph(t, &table, &mut rng, SamplerOptions::default())
                .map_err(|e| e.to_string())?;
            ensure(g.combinatorial_type() == t, || "wrong type".into())?;
        }
        Ok(t0.elapsed() / 50)
    };
    let a = time(small)?;
    let b = time(large)?;
    let r = b.as_secs_f64() / a.as_secs_f64();
    ensure(r < 20.0, || format!("time ratio {r:.1} (n=600: {a:?}, n=6000: {b:?})"))?;
    within(Duration::from_secs(600), start)?;
    Ok(format!("n=600: {a:.2?}, n=6000: {b:.2?}, ratio {r:.1} (table fill {precompute:.1?})"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 small-size table", small_table),
        ("2 oracle equivalence", oracle_equivalence),
        ("3 silhouette counts", silhouette_counts),
        ("4 sampler uniformity", sampler_uniformity),
        ("5 confluence and rank", confluence),
        ("6 bijection round trips", round_trips),
        ("7 silhouette rejection rate", rejection_rate),
        ("8 bernoulli correctness and cost", bernoulli_cost),
        ("9 scaling", scaling),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| name.starts_with(o.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} [{took:.1?}]"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} [{took:.1?}]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
