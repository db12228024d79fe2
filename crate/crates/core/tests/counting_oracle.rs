//! Recurrence counts against brute-force enumeration.

use std::collections::BTreeMap;

use modsub::counting::CountTable;
use modsub::oracle;
use modsub::types::{CombinatorialType, IsomorphismType};
use num_bigint::BigUint;

#[test]
fn s_matches_enumeration_up_to_seven() {
    let table = CountTable::new();
    for n in 1..=7 {
        let brute = oracle::count_by_type(n).unwrap();
        for t in brute.keys() {
            assert!(t.is_valid_cyclic(), "oracle produced invalid type {t}");
        }
        for t in CombinatorialType::cyclic_of_size(n) {
            let want = brute.get(&t).cloned().unwrap_or_default();
            assert_eq!(*table.s(t).unwrap(), want, "s{t}");
        }
        let total: BigUint = brute.values().sum();
        let listed = oracle::enumerate_cyclically_reduced(n).unwrap().len();
        assert_eq!(total, BigUint::from(listed), "size {n}");
    }
}

#[test]
fn l_matches_rooted_enumeration_up_to_six() {
    let table = CountTable::new();
    for n in 1..=6 {
        let brute = oracle::count_rooted_by_type(n).unwrap();
        let mut seen = 0;
        for t in CombinatorialType::all_of_size(n) {
            let want = brute.get(&t).cloned().unwrap_or_default();
            assert_eq!(table.l(t).unwrap(), want, "L{t}");
            seen += brute.contains_key(&t) as usize;
        }
        assert_eq!(seen, brute.len(), "rooted types missing from all_of_size({n})");
    }
}

#[test]
fn iso_counts_match_rooted_enumeration_up_to_six() {
    let table = CountTable::new();
    for n in 1..=6 {
        let mut all: BTreeMap<IsomorphismType, u64> = BTreeMap::new();
        let mut cyclic: BTreeMap<IsomorphismType, u64> = BTreeMap::new();
        oracle::for_each_reduced(n, |g| {
            let sigma = g.isomorphism_type().unwrap();
            *all.entry(sigma).or_default() += 1;
            if g.is_cyclically_reduced() {
                *cyclic.entry(sigma).or_default() += 1;
            }
        })
        .unwrap();
        for l2 in 0..=n {
            for l3 in 0..=n {
                for r in 0..=n {
                    let sigma = IsomorphismType::new(l2, l3, r);
                    let want = BigUint::from(all.get(&sigma).copied().unwrap_or(0));
                    assert_eq!(table.count_iso(n, sigma).unwrap(), want, "n={n} {sigma}");
                    let want = BigUint::from(cyclic.get(&sigma).copied().unwrap_or(0));
                    assert_eq!(table.count_iso_cyclic(n, sigma).unwrap(), want, "cyclic n={n} {sigma}");
                }
            }
        }
    }
}

#[test]
fn silhouette_counts_match_oracle() {
    let table = CountTable::new();
    assert_eq!(*table.silhouette_count(6).unwrap(), oracle::silhouette_count(6).unwrap());
    assert_eq!(*table.silhouette_count(12).unwrap(), oracle::silhouette_count(12).unwrap());
}
