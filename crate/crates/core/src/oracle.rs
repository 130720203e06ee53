//! Brute-force reference computations on machine integers.
//!
//! Nothing here calls into [`crate::cocycle`] or [`crate::fixed_points`]:
//! values of `ι_q` come from the recurrence `ι_q(z + 1) = q ι_q(z) + 1`
//! and orders from repeated multiplication.

use num_traits::ToPrimitive;

use crate::error::{domain, Error, Result};
use crate::limits;
use crate::padic::{is_prime, QParameter};

fn modulus(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(domain(format!("{p} is not a prime")));
    }
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    p.checked_pow(n)
        .ok_or_else(|| Error::Resource(format!("{p}^{n} does not fit in 64 bits")))
}

fn scan_modulus(p: u64, n: u32, what: &str) -> Result<u64> {
    let m = modulus(p, n)?;
    limits::current().check_scan(what, m)?;
    Ok(m)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `q mod p^n` as a machine integer.
pub fn residue_of(q: &QParameter, n: u32) -> Result<u64> {
    if q.precision() < n {
        return Err(Error::Precision(format!(
            "q is known to {} digits, {n} are needed",
            q.precision()
        )));
    }
    let m = modulus(q.prime(), n)?;
    Ok((q.value().residue() % m).to_u64().expect("reduced below a u64 modulus"))
}

/// `ι_q(z) mod p^n` for `z >= 0`, summing the geometric series term by term.
pub fn brute_iota(p: u64, q: u64, z: u64, n: u32) -> Result<u64> {
    let m = modulus(p, n)?;
    let q = q % m;
    Ok((0..z).fold(0, |s, _| (mul_mod(q, s, m) + 1) % m))
}

/// `ι_q(z) mod p^n` for every `z` in `0..p^n`.
pub fn brute_iota_table(p: u64, q: u64, n: u32) -> Result<Vec<u64>> {
    let m = scan_modulus(p, n, "ι_q table")?;
    let q = q % m;
    let mut out = Vec::with_capacity(m as usize);
    let mut s = 0u64;
    for _ in 0..m {
        out.push(s);
        s = (mul_mod(q, s, m) + 1) % m;
    }
    Ok(out)
}

/// All residues `z mod p^n` with `ι_q(z) ≡ z`.
pub fn brute_fixed_points_raw(p: u64, q: u64, n: u32) -> Result<Vec<u64>> {
    Ok(brute_iota_table(p, q, n)?
        .into_iter()
        .enumerate()
        .filter(|&(z, s)| z as u64 == s)
        .map(|(z, _)| z as u64)
        .collect())
}

pub fn brute_fixed_points(q: &QParameter, n: u32) -> Result<Vec<u64>> {
    brute_fixed_points_raw(q.prime(), residue_of(q, n)?, n)
}

/// Multiplicative order of `q` mod `p^n` by iteration.
pub fn brute_order(p: u64, q: u64, n: u32) -> Result<u64> {
    let m = scan_modulus(p, n, "order")?;
    if q % p == 0 {
        return Err(domain(format!("{q} is not a unit mod {p}")));
    }
    let q = q % m;
    let mut x = q;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, q, m);
        k += 1;
    }
    Ok(k)
}

/// Period of `z ↦ ι_q(z) mod p^n` on the integers: the first `k > 0` with
/// `ι_q(k) ≡ 0`.
pub fn brute_period(p: u64, q: u64, n: u32) -> Result<u64> {
    let m = modulus(p, n)?;
    if q % p == 0 {
        return Err(domain(format!("{q} is not a unit mod {p}")));
    }
    let budget = limits::current().scan_budget.saturating_mul(p);
    let q = q % m;
    let mut s = 1 % m;
    let mut k = 1;
    while s != 0 {
        s = (mul_mod(q, s, m) + 1) % m;
        k += 1;
        if k > budget {
            return Err(Error::Resource(format!("period of ι_q mod {p}^{n} exceeds the scan")));
        }
    }
    Ok(k)
}

/// The distinct values of `ι_q mod p^n` over one period, ascending.
pub fn brute_image(p: u64, q: u64, n: u32) -> Result<Vec<u64>> {
    let m = scan_modulus(p, n, "image")?;
    let period = brute_period(p, q, n)?;
    let q = q % m;
    let mut seen = vec![false; m as usize];
    let mut s = 0u64;
    for _ in 0..period {
        seen[s as usize] = true;
        s = (mul_mod(q, s, m) + 1) % m;
    }
    Ok((0..m).filter(|&z| seen[z as usize]).collect())
}

/// `Σ_{z < p^n} ι_q(z) mod p^n`.
pub fn brute_sum(p: u64, q: u64, n: u32) -> Result<u64> {
    let m = modulus(p, n)?;
    Ok(brute_iota_table(p, q, n)?
        .into_iter()
        .fold(0u64, |acc, s| (acc + s) % m))
}

/// `v_p(x)`, `None` for zero.
pub fn brute_valuation(mut x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// Whether `[ι_q]_{3^n}` has a fixed residue with `1 <= v(z(z - 1)) < (n - 1)/2`,
/// and the smallest such valuation.
pub fn brute_rooted_valuation(q: u64, n: u32) -> Result<Option<u32>> {
    let m = modulus(3, n)?;
    Ok(brute_fixed_points_raw(3, q, n)?
        .into_iter()
        .filter_map(|z| {
            let w = brute_valuation(z % m, 3).unwrap_or(n) + brute_valuation((z + m - 1) % m, 3).unwrap_or(n);
            (w >= 1 && 2 * w + 1 < n).then_some(w)
        })
        .min())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_examples() {
        assert_eq!(
            brute_fixed_points_raw(3, 4, 4).unwrap(),
            vec![0, 1, 4, 10, 13, 19, 22, 27, 28, 31, 37, 40, 46, 49, 54, 55, 58, 64, 67, 73, 76]
        );
        assert_eq!(brute_fixed_points_raw(3, 7, 2).unwrap(), vec![0, 1, 3, 4, 6, 7]);
        assert_eq!(brute_fixed_points_raw(2, 5, 4).unwrap(), vec![0, 1, 8, 9]);
    }

    #[test]
    fn order_and_image_examples() {
        assert_eq!(brute_order(3, 4, 4).unwrap(), 27);
        assert_eq!(brute_order(5, 1, 3).unwrap(), 1);
        assert_eq!(brute_image(3, 4, 3).unwrap(), (0..27).collect::<Vec<_>>());
        assert_eq!(brute_image(2, 3, 4).unwrap(), vec![0, 1, 4, 5, 8, 9, 12, 13]);
        assert_eq!(brute_period(5, 2, 2).unwrap(), 20);
        assert_eq!(brute_period(2, 3, 4).unwrap(), 8);
    }

    #[test]
    fn iota_examples() {
        assert_eq!(brute_iota(3, 4, 2, 4).unwrap(), 5);
        assert_eq!(brute_iota(2, 3, 4, 6).unwrap(), 40);
        assert_eq!(brute_sum(2, 5, 4).unwrap(), 8);
    }

    #[test]
    fn rooted_examples() {
        assert_eq!(brute_rooted_valuation(4, 4).unwrap(), Some(1));
        assert_eq!(brute_rooted_valuation(4, 3).unwrap(), None);
        assert_eq!(brute_rooted_valuation(70, 7).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(brute_iota_table(3, 4, 10), Err(Error::Resource(_))));
    }
}
