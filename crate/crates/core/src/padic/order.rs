use num_bigint::{BigInt, BigUint};

use super::{prime_power, PadicInt, Valuation};
use crate::error::{domain, Error, Result};

/// Sum of base-`p` digits of `a`.
pub fn digit_sum(mut a: u64, p: u64) -> u64 {
    let mut s = 0;
    while a > 0 {
        s += a % p;
        a /= p;
    }
    s
}

/// `v_p(a!)`, by Legendre's digit-sum formula.
pub fn legendre_valuation(a: u64, p: u64) -> u64 {
    (a - digit_sum(a, p)) / (p - 1)
}

/// `v_p(binom(a, b))`, by Kummer's carry count.
pub fn kummer_valuation(a: u64, b: u64, p: u64) -> Result<u64> {
    if b > a {
        return Err(domain(format!("binomial({a}, {b}) needs b <= a")));
    }
    Ok((digit_sum(b, p) + digit_sum(a - b, p) - digit_sum(a, p)) / (p - 1))
}

fn pow_mod_small(base: u64, mut e: u64, m: u64) -> u64 {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % m as u128) as u64;
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn sorted_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `o_p`: the order of `q` modulo `p`, found among the divisors of `p - 1`.
pub fn residue_order(q: &PadicInt) -> Result<u64> {
    if !q.is_unit() {
        return Err(domain(format!("{q} is not a unit")));
    }
    let p = q.prime();
    let q0 = q.digit(0);
    Ok(sorted_divisors(p - 1)
        .into_iter()
        .find(|&d| pow_mod_small(q0, d, p) == 1)
        .expect("p - 1 kills every unit"))
}

/// `v_p(q^{o_p} - 1)` at the known precision of `q`.
pub fn order_m0(q: &PadicInt) -> Result<Valuation> {
    let o = residue_order(q)?;
    Ok(q.pow_int(&BigInt::from(o))?.add_int(-1).valuation())
}

/// Order of `q` in `(Z/p^n)^×`, by the closed form in `o_p`, `m0` and
/// (for `p = 2`) `l0 = v_2(q + 1)`.
pub fn mult_order(q: &PadicInt, n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(domain("order needs n >= 1"));
    }
    if q.precision() < n {
        return Err(Error::Precision(format!(
            "order mod {}^{n} needs {n} digits of q, have {}",
            q.prime(),
            q.precision()
        )));
    }
    let q = q.truncate(n)?;
    let p = q.prime();
    let o = residue_order(&q)?;
    let m0 = order_m0(&q)?;
    let Valuation::Finite(m0) = m0 else {
        return Ok(BigUint::from(o));
    };
    if p != 2 || m0 >= 2 {
        return Ok(BigUint::from(o) * prime_power(p, n - m0));
    }
    // p = 2 and q ≡ 3 (mod 4)
    match q.add_int(1).valuation() {
        Valuation::Infinite => Ok(BigUint::from(2u32)),
        Valuation::Finite(l0) => Ok(prime_power(2, n - l0)),
    }
}
