use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use qiota::fixed_points::{
    classify, count_fixed_points, enumerate_fixed_points, find_rooted, is_fixed, pair_criterion,
    propagate_rooted, Classification,
};
use qiota::oracle;
use qiota::padic::prime_power;
use qiota::{CosetDescriptor, PadicInt, QParameter};

fn pow(p: u64, n: u32) -> u64 {
    prime_power(p, n).to_u64().unwrap()
}

fn principal_units(p: u64, k: u32) -> impl Iterator<Item = u64> {
    (0..pow(p, k)).filter(move |q| q % p == 1)
}

fn pair_valuation(z: u64, p: u64, n: u32) -> u32 {
    let m = pow(p, n);
    oracle::brute_valuation(z, p).unwrap_or(n) + oracle::brute_valuation((z + m - 1) % m, p).unwrap_or(n)
}

/// Every principal unit `q mod p^{n+2}` against the oracle. Answers for
/// lifts of an already verified class mod `p^n` are accepted when their
/// coset description is syntactically identical to the verified one.
#[test]
fn enumeration_and_counts_match_oracle() {
    for p in [2u64, 3, 5, 7] {
        for n in 1..=4 {
            let m = pow(p, n);
            let mut verified: HashMap<u64, (Vec<CosetDescriptor>, usize)> = HashMap::new();
            for q_int in principal_units(p, n + 2) {
                let q = QParameter::from_int(q_int, p, 2 * n + 4).unwrap();
                let set = enumerate_fixed_points(&q, n).unwrap();
                let count = count_fixed_points(&q, n).unwrap();
                let class = q_int % m;
                if let Some((cosets, size)) = verified.get(&class) {
                    if cosets.as_slice() == set.cosets() {
                        assert_eq!(count, BigUint::from(*size), "p={p} n={n} q={q_int}");
                        continue;
                    }
                }
                let brute = oracle::brute_fixed_points_raw(p, q_int, n).unwrap();
                let members: Vec<u64> = (0..m).filter(|&z| set.contains_u64(z)).collect();
                assert_eq!(members, brute, "p={p} n={n} q={q_int}");
                assert_eq!(count, BigUint::from(brute.len()), "p={p} n={n} q={q_int}");
                assert_eq!(set.count(), count);
                verified.insert(class, (set.cosets().to_vec(), brute.len()));
            }
        }
    }
}

#[test]
fn criterion_sound_and_exact_outside_the_exception() {
    for p in [2u64, 3, 5, 7] {
        for n in 1..=4 {
            let m = pow(p, n);
            for q_int in principal_units(p, n) {
                let q = QParameter::from_int(q_int, p, 2 * n + 4).unwrap();
                let fixed = oracle::brute_iota_table(p, q_int, n).unwrap();
                let deep = q_int % 9 == 1;
                for z in 0..m {
                    let zp = PadicInt::from_int(z, p, n).unwrap();
                    let crit = pair_criterion(&q, &zp, n).unwrap();
                    let is_fix = fixed[z as usize] == z;
                    assert_eq!(is_fixed(&q, &zp, n).unwrap(), is_fix);
                    if crit {
                        assert!(is_fix, "unsound: p={p} n={n} q={q_int} z={z}");
                    }
                    if p != 3 || deep || n <= 2 || z % 3 == 2 {
                        assert_eq!(crit, is_fix, "inexact: p={p} n={n} q={q_int} z={z}");
                    }
                }
            }
        }
    }
}

#[test]
fn cosets_near_the_pair_are_fixed() {
    for n in 3..=5 {
        for q_int in principal_units(3, n + 1) {
            let offset = match q_int % 9 {
                7 => 0,
                4 => 1,
                _ => continue,
            };
            let q = QParameter::from_int(q_int, 3, n + 1).unwrap();
            for c in 0..9 {
                let z = PadicInt::from_int(offset + c * pow(3, n - 2), 3, n).unwrap();
                assert!(is_fixed(&q, &z, n).unwrap(), "n={n} q={q_int} c={c}");
            }
        }
    }
}

#[test]
fn rooted_census() {
    for n in 4..=6 {
        let mut rooted = [0u64; 2];
        let mut bare = [0u64; 2];
        let mut by_v0: HashMap<u32, u64> = HashMap::new();
        for q_int in principal_units(3, n).filter(|q| q % 9 != 1) {
            let branch = usize::from(q_int % 9 == 4);
            let q = QParameter::from_int(q_int, 3, n).unwrap();
            let found = find_rooted(&q, n).unwrap();
            let brute = oracle::brute_rooted_valuation(q_int, n).unwrap();
            assert_eq!(found.as_ref().map(|r| r.v0), brute, "n={n} q={q_int}");
            match found {
                Some(r) => {
                    rooted[branch] += 1;
                    *by_v0.entry(r.v0).or_default() += 1;
                }
                None => bare[branch] += 1,
            }
        }
        let half = pow(3, (n - 1) / 2);
        assert_eq!(rooted, [pow(3, n - 2) - half; 2], "n={n}");
        assert_eq!(bare, [half; 2], "n={n}");
        for (v0, count) in by_v0 {
            assert_eq!(count, 4 * pow(3, n - v0 - 2), "n={n} v0={v0}");
        }
    }
}

#[test]
fn propagation_closes() {
    for q_int in principal_units(3, 8).filter(|q| q % 9 != 1).step_by(7) {
        let q = QParameter::from_int(q_int, 3, 8).unwrap();
        for n in 4..8 {
            let Some(root) = find_rooted(&q, n).unwrap() else { continue };
            let c = propagate_rooted(&q, &root.z0, n).unwrap();
            let next = find_rooted(&q, n + 1).unwrap().expect("rooted points persist");
            assert_eq!(next.v0, root.v0);
            let tau = n - root.v0 - 1;
            let expected = root.z0.with_precision(tau + 1).unwrap().residue() + BigUint::from(c) * prime_power(3, tau);
            assert_eq!(next.z0.residue(), &expected, "q={q_int} n={n}");
        }
    }
}

#[test]
fn large_primes_have_only_the_pair() {
    for p in [5u64, 7] {
        for n in 1..=5 {
            for q_int in principal_units(p, n).filter(|&q| q != 1) {
                let m0 = oracle::brute_valuation(q_int - 1, p).unwrap();
                for z in oracle::brute_fixed_points_raw(p, q_int, n).unwrap() {
                    let w = pair_valuation(z, p, n);
                    assert!(!(1 <= w && w < n - m0), "p={p} n={n} q={q_int} z={z}");
                }
            }
        }
    }
}

#[test]
fn classification_matches_valuations() {
    for n in 3..=6 {
        let m = pow(3, n);
        for q_int in principal_units(3, n).filter(|q| q % 9 != 1).take(40) {
            let q = QParameter::from_int(q_int, 3, n + 2).unwrap();
            let table = oracle::brute_iota_table(3, q_int, n).unwrap();
            for z in 0..m {
                let zp = PadicInt::from_int(z, 3, n).unwrap();
                let got = classify(&q, &zp, n).unwrap();
                let w = pair_valuation(z, 3, n);
                let expected = if table[z as usize] != z {
                    Classification::NotFixed
                } else if w >= n - 1 {
                    Classification::Pair
                } else if w >= 1 && 2 * w + 1 < n {
                    Classification::Rooted
                } else {
                    Classification::Drifting
                };
                assert_eq!(got, expected, "n={n} q={q_int} z={z}");
            }
        }
    }
}

proptest! {
    #[test]
    fn deep_counts_match_oracle(k in 0u64..3000, n in 5u32..=8) {
        let q_int = 1 + 3 * k;
        let q = QParameter::from_int(q_int, 3, n + 4).unwrap();
        let brute = oracle::brute_fixed_points_raw(3, q_int, n).unwrap();
        prop_assert_eq!(count_fixed_points(&q, n).unwrap(), BigUint::from(brute.len()));
        let set = enumerate_fixed_points(&q, n).unwrap();
        prop_assert_eq!(set.members(), brute);
    }
}
