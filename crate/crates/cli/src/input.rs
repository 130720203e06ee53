//! Turning command-line literals into p-adic values.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qiota::{Literal, PadicInt, QParameter};

use crate::error::{CliError, CliResult};

/// Extra digits carried by exact literals beyond what an operation needs.
const GUARD_DIGITS: u32 = 2;

fn int_valuation(k: &BigInt, p: u64) -> Option<u32> {
    if k.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut k = k.abs();
    let mut v = 0;
    while (&k % &p).is_zero() {
        k /= &p;
        v += 1;
    }
    Some(v)
}

pub fn parse(text: &str) -> CliResult<Literal> {
    Ok(Literal::parse(text)?)
}

/// The prime named by a literal, if it is in digit form.
pub fn prime_of(lit: &Literal) -> Option<u64> {
    match lit {
        Literal::Digits(x) => Some(x.prime()),
        Literal::Rational { .. } => None,
    }
}

/// Resolves `--p` against the prime carried by digit literals.
pub fn resolve_prime(explicit: Option<u64>, lits: &[&Literal]) -> CliResult<u64> {
    let carried: Vec<u64> = lits.iter().filter_map(|l| prime_of(l)).collect();
    let p = match (explicit, carried.first()) {
        (Some(p), _) => p,
        (None, Some(&p)) => p,
        (None, None) => return Err(CliError::Usage("--p is required for integer and rational literals".into())),
    };
    if let Some(&other) = carried.iter().find(|&&c| c != p) {
        return Err(qiota::Error::Domain(format!("literal is {other}-adic but p = {p}")).into());
    }
    Ok(p)
}

/// An exact literal `a/b` with `n` digits plus enough to see `v(q - 1)`
/// (and `v(q + 1)` for `p = 2`); digit literals keep their own precision.
pub fn parameter(lit: &Literal, p: u64, n: u32) -> CliResult<QParameter> {
    match lit {
        Literal::Digits(x) => Ok(QParameter::new(lit.to_padic(p, x.precision())?)?),
        Literal::Rational { num, den } => {
            let minus = int_valuation(&(num - den), p).unwrap_or(0);
            let plus = if p == 2 { int_valuation(&(num + den), p).unwrap_or(0) } else { 0 };
            let digits = n + minus.max(plus) + GUARD_DIGITS;
            Ok(QParameter::new(lit.to_padic(p, digits)?)?)
        }
    }
}

/// A p-adic value with exactly `n` digits.
pub fn padic(lit: &Literal, p: u64, n: u32) -> CliResult<PadicInt> {
    Ok(lit.to_padic(p, n)?)
}

/// A digit literal's own precision, or `fallback` for exact literals.
pub fn own_precision(lit: &Literal, fallback: u32) -> u32 {
    match lit {
        Literal::Digits(x) => x.precision(),
        Literal::Rational { .. } => fallback,
    }
}

/// A non-negative machine integer literal, for oracle commands.
pub fn small_int(lit: &Literal, what: &str) -> CliResult<u64> {
    lit.as_integer()
        .and_then(|k| u64::try_from(k).ok())
        .ok_or_else(|| CliError::Usage(format!("{what} must be a non-negative integer here")))
}
