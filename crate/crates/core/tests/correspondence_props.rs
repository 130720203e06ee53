use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use qiota::correspondence::{exceptional_q, f_map, g_map, phi, psi, Branch, PhiOutcome};
use qiota::fixed_points::{count_fixed_points, find_rooted, is_fixed};
use qiota::padic::prime_power;
use qiota::{PadicInt, QParameter, Valuation};

fn pow3(n: u32) -> u64 {
    prime_power(3, n).to_u64().unwrap()
}

/// A residue mod `3^digits` congruent to `offset` mod 3.
fn admissible(raw: u64, offset: u64, digits: u32) -> PadicInt {
    PadicInt::from_int(3 * (raw % pow3(digits - 1)) + offset, 3, digits).unwrap()
}

fn capped(v: Valuation, n: u32) -> u32 {
    v.finite().map_or(n, |v| v.min(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn psi_then_phi_returns_z(raw in any::<u64>(), offset in 0u64..2, precision in 6u32..14) {
        let z = admissible(raw, offset, precision - 1);
        let q = psi(&z, precision).unwrap();
        prop_assert_eq!(q.precision(), precision);
        let qp = QParameter::new(q.clone()).unwrap();
        let back = phi(&qp, precision).unwrap();
        prop_assert_eq!(back.residue(), z.clone());
        // the returned parameter fixes z at the conservative modulus
        prop_assert!(is_fixed(&qp, &z, precision - 1).unwrap());
        // branch law
        let expected = if offset == 0 { 7 } else { 4 };
        prop_assert_eq!(q.residue() % 9u32, BigUint::from(expected as u32));
    }

    #[test]
    fn phi_then_psi_returns_q(raw in any::<u64>(), seven in any::<bool>(), precision in 6u32..14) {
        let offset = if seven { 7 } else { 4 };
        let q_int = 9 * (raw % pow3(precision - 2)) + offset;
        let q = QParameter::from_int(q_int, 3, precision).unwrap();
        let outcome = phi(&q, precision).unwrap();
        let z = outcome.residue();
        prop_assert_eq!(z.precision(), precision - 1);
        prop_assert_eq!(psi(&z, precision).unwrap(), q.value().clone());
        if let PhiOutcome::Rooted { v0, .. } = outcome {
            let n = precision - 1 - v0;
            prop_assert!(is_fixed(&q, &z.truncate(n).unwrap(), n).unwrap());
            let branch = Branch::of_parameter(&q).unwrap();
            prop_assert_eq!(Branch::of_fixed_point(&z), Some(branch));
        }
    }
}

proptest! {
    #[test]
    fn f_and_g_are_isometries(a in any::<u64>(), b in any::<u64>()) {
        let n = 10;
        let x = PadicInt::from_int(a % pow3(n), 3, n).unwrap();
        let y = PadicInt::from_int(b % pow3(n), 3, n).unwrap();
        let d = capped((&x - &y).valuation(), n);
        let f = capped((&f_map(&x, n).unwrap() - &f_map(&y, n).unwrap()).valuation(), n);
        let g = capped((&g_map(&x, n).unwrap() - &g_map(&y, n).unwrap()).valuation(), n);
        prop_assert_eq!(f, d);
        prop_assert_eq!(g, d);
    }
}

#[test]
fn exceptional_parameters_have_no_rooted_points() {
    for branch in [Branch::Seven, Branch::Four] {
        for k in 2..=10 {
            let q = QParameter::new(exceptional_q(branch, k).unwrap()).unwrap();
            for n in 1..=2 * k - 1 {
                assert_eq!(find_rooted(&q, n).unwrap(), None, "{branch} k={k} n={n}");
            }
        }
    }
}

#[test]
fn psi_near_the_pair_is_exceptional() {
    for (branch, offset) in [(Branch::Seven, 0u64), (Branch::Four, 1)] {
        let z = PadicInt::from_int(offset + pow3(9), 3, 9).unwrap();
        assert_eq!(psi(&z, 10).unwrap(), exceptional_q(branch, 10).unwrap());
        let q = QParameter::new(exceptional_q(branch, 10).unwrap()).unwrap();
        assert_eq!(phi(&q, 10).unwrap(), PhiOutcome::Exceptional { branch, depth: 10 });
    }
}

#[test]
fn fixed_point_counts_stabilise() {
    let mut sampled = 0;
    let q0 = exceptional_q(Branch::Seven, 8).unwrap();
    let q1 = exceptional_q(Branch::Four, 8).unwrap();
    for k in (0..pow3(6)).step_by(37) {
        for offset in [4u64, 7] {
            let q_int = 9 * k + offset;
            let q = QParameter::from_int(q_int, 3, 8).unwrap();
            if q.value() == &q0 || q.value() == &q1 {
                continue;
            }
            let counts: Vec<BigUint> = (4..=8)
                .filter(|&n| find_rooted(&q, n).unwrap().is_some())
                .map(|n| count_fixed_points(&q, n).unwrap())
                .collect();
            assert!(counts.windows(2).all(|w| w[0] == w[1]), "q={q_int}: {counts:?}");
            sampled += 1;
        }
    }
    assert!(sampled >= 20);
    for q in [q0, q1] {
        let q = QParameter::new(q).unwrap();
        let mut last = BigUint::from(0u32);
        for n in 4..=8 {
            let count = count_fixed_points(&q, n).unwrap();
            assert_eq!(count, BigUint::from(pow3(n - n / 2) + 3), "n={n}");
            if n % 2 == 0 {
                assert!(count > last);
                last = count;
            }
        }
    }
}
