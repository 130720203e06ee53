//! Truncated p-adic integers.
//!
//! A [`PadicInt`] is a residue modulo `p^n`, viewed as the first `n` digits
//! of a p-adic expansion (little-endian: digit `i` is the coefficient of
//! `p^i`). Arithmetic between two values returns the smaller of the two
//! precisions, and exact division by an element of valuation `v` consumes
//! `v` digits.

mod order;
mod param;

pub use order::{digit_sum, kummer_valuation, legendre_valuation, mult_order, order_m0, residue_order};
pub use param::{Mod9Class, QParameter};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// p-adic valuation with a distinguished infinite marker.
///
/// `Infinite` means "at least the precision the value is known to"; it never
/// compares equal to a finite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Valuation::Infinite
    }

    /// `self >= bound`, with ∞ above everything.
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= bound,
            Valuation::Infinite => true,
        }
    }

    pub fn saturating_add(self, other: Valuation) -> Valuation {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for &a in &WITNESSES {
        let mut x = 1u64;
        let (mut base, mut e) = (a % n, d);
        while e > 0 {
            if e & 1 == 1 {
                x = mul(x, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(domain(format!("{p} is not a prime")))
    }
}

/// `p^n` as a big integer.
pub fn prime_power(p: u64, n: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), n as usize)
}

/// A p-adic integer known modulo `p^precision`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    prime: u64,
    precision: u32,
    residue: BigUint,
}

impl PadicInt {
    /// Reduces `residue` modulo `p^precision`.
    pub fn new(prime: u64, precision: u32, residue: BigUint) -> Result<Self> {
        check_prime(prime)?;
        if precision == 0 {
            return Err(domain("precision must be at least 1"));
        }
        Ok(Self::from_parts(prime, precision, residue))
    }

    /// Trusted constructor: prime and precision already validated.
    pub(crate) fn from_parts(prime: u64, precision: u32, residue: BigUint) -> Self {
        let modulus = prime_power(prime, precision);
        let residue = if residue >= modulus { residue % modulus } else { residue };
        PadicInt {
            prime,
            precision,
            residue,
        }
    }

    pub fn zero(prime: u64, precision: u32) -> Result<Self> {
        Self::new(prime, precision, BigUint::zero())
    }

    pub fn one(prime: u64, precision: u32) -> Result<Self> {
        Self::new(prime, precision, BigUint::one())
    }

    /// Builds a value from little-endian digits; the precision is the digit count.
    pub fn from_digits(prime: u64, digits: &[u64]) -> Result<Self> {
        check_prime(prime)?;
        if digits.is_empty() {
            return Err(domain("a p-adic integer needs at least one digit"));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= prime) {
            return Err(domain(format!("digit {d} is not below the prime {prime}")));
        }
        let p = BigUint::from(prime);
        let residue = digits
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * &p + BigUint::from(d));
        Ok(PadicInt {
            prime,
            precision: digits.len() as u32,
            residue,
        })
    }

    pub fn from_int(value: impl Into<BigInt>, prime: u64, precision: u32) -> Result<Self> {
        check_prime(prime)?;
        if precision == 0 {
            return Err(domain("precision must be at least 1"));
        }
        let modulus = BigInt::from(prime_power(prime, precision));
        let reduced = value.into().mod_floor(&modulus);
        Ok(PadicInt {
            prime,
            precision,
            residue: reduced.to_biguint().expect("mod_floor is non-negative"),
        })
    }

    /// The unique residue `r` with `r * den ≡ num (mod p^precision)`.
    ///
    /// The fraction is reduced first, so `255/3` is accepted at `p = 3`.
    pub fn from_rational(
        num: impl Into<BigInt>,
        den: impl Into<BigInt>,
        prime: u64,
        precision: u32,
    ) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(domain("denominator is zero"));
        }
        check_prime(prime)?;
        let mut num = num.into();
        let g = num.gcd(&den);
        let mut den = den / &g;
        num /= &g;
        if den.is_negative() {
            den = -den;
            num = -num;
        }
        if (&den % BigInt::from(prime)).is_zero() {
            return Err(domain(format!("denominator {den} is divisible by {prime}")));
        }
        let num = Self::from_int(num, prime, precision)?;
        let den = Self::from_int(den, prime, precision)?;
        Ok(&num * &den.unit_inverse()?)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The canonical representative in `[0, p^precision)`.
    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        prime_power(self.prime, self.precision)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.residue.to_u64()
    }

    /// Little-endian digits, exactly `precision` of them.
    pub fn digits(&self) -> Vec<u64> {
        let p = BigUint::from(self.prime);
        let mut rest = self.residue.clone();
        (0..self.precision)
            .map(|_| {
                let (q, r) = rest.div_rem(&p);
                rest = q;
                r.to_u64().expect("digit below prime")
            })
            .collect()
    }

    pub fn digit(&self, index: u32) -> u64 {
        if index >= self.precision {
            return 0;
        }
        let shifted = &self.residue / prime_power(self.prime, index);
        (shifted % self.prime).to_u64().expect("digit below prime")
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.prime).is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        if self.residue.is_zero() {
            return Valuation::Infinite;
        }
        let p = BigUint::from(self.prime);
        let mut v = 0;
        let mut rest = self.residue.clone();
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                return Valuation::Finite(v);
            }
            rest = q;
            v += 1;
        }
    }

    /// Reduction to fewer digits.
    pub fn truncate(&self, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(domain("precision must be at least 1"));
        }
        if precision > self.precision {
            return Err(Error::Precision(format!(
                "cannot truncate a {}-digit value to {precision} digits",
                self.precision
            )));
        }
        Ok(Self::from_parts(self.prime, precision, self.residue.clone()))
    }

    /// The same canonical representative read at `precision` digits.
    ///
    /// Extending pads with zero digits, so the result is one particular lift
    /// of the class, not a value determined by `self`.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if precision == 0 {
            return Err(domain("precision must be at least 1"));
        }
        Ok(Self::from_parts(self.prime, precision, self.residue.clone()))
    }

    fn check_same_prime(&self, other: &PadicInt) -> Result<()> {
        if self.prime != other.prime {
            return Err(domain(format!(
                "prime mismatch: {} vs {}",
                self.prime, other.prime
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PadicInt) -> Result<PadicInt> {
        self.check_same_prime(other)?;
        let precision = self.precision.min(other.precision);
        Ok(Self::from_parts(self.prime, precision, &self.residue + &other.residue))
    }

    pub fn try_sub(&self, other: &PadicInt) -> Result<PadicInt> {
        self.check_same_prime(other)?;
        let precision = self.precision.min(other.precision);
        let modulus = prime_power(self.prime, precision);
        let a = &self.residue % &modulus;
        let b = &other.residue % &modulus;
        let diff = if a >= b { a - b } else { a + &modulus - b };
        Ok(PadicInt {
            prime: self.prime,
            precision,
            residue: diff,
        })
    }

    pub fn try_mul(&self, other: &PadicInt) -> Result<PadicInt> {
        self.check_same_prime(other)?;
        let precision = self.precision.min(other.precision);
        Ok(Self::from_parts(self.prime, precision, &self.residue * &other.residue))
    }

    /// `self + k` at the precision of `self`.
    pub fn add_int(&self, k: i64) -> PadicInt {
        let other = Self::from_int(k, self.prime, self.precision).expect("validated prime");
        self + &other
    }

    /// Inverse of a unit, built one digit at a time: at step `i` the
    /// residual `1 - x*y` is divisible by `p^i`, and the next digit clears
    /// its lowest digit.
    pub fn unit_inverse(&self) -> Result<PadicInt> {
        if !self.is_unit() {
            return Err(domain(format!("{self} is not a unit")));
        }
        let p = self.prime;
        let x0 = (&self.residue % p).to_u64().expect("digit below prime");
        let inv0 = inverse_mod_small(x0, p);
        let modulus = self.modulus();
        let mut y = BigUint::zero();
        // residual = (1 - x*y) mod p^n, kept non-negative
        let mut residual = BigUint::one() % &modulus;
        let mut place = BigUint::one();
        for _ in 0..self.precision {
            let low = ((&residual / &place) % p).to_u64().expect("digit below prime");
            let d = ((low as u128 * inv0 as u128) % p as u128) as u64;
            if d != 0 {
                let step = &place * d;
                let correction = (&self.residue * &step) % &modulus;
                residual = if residual >= correction {
                    residual - correction
                } else {
                    residual + &modulus - correction
                };
                y += step;
            }
            place *= p;
        }
        debug_assert!(residual.is_zero());
        Ok(PadicInt {
            prime: p,
            precision: self.precision,
            residue: y,
        })
    }

    /// Divides by `p^shift`, which must divide `self`; consumes `shift` digits.
    pub fn shift_down(&self, shift: u32) -> Result<PadicInt> {
        if shift == 0 {
            return Ok(self.clone());
        }
        if shift >= self.precision {
            return Err(Error::Precision(format!(
                "dividing a {}-digit value by p^{shift} leaves no digits",
                self.precision
            )));
        }
        if !self.valuation().at_least(shift) {
            return Err(domain(format!("{self} is not divisible by p^{shift}")));
        }
        Ok(PadicInt {
            prime: self.prime,
            precision: self.precision - shift,
            residue: &self.residue / prime_power(self.prime, shift),
        })
    }

    /// Exact quotient `self / divisor`; loses `v_p(divisor)` digits.
    pub fn div_exact(&self, divisor: &PadicInt) -> Result<PadicInt> {
        self.check_same_prime(divisor)?;
        let shift = divisor.valuation().finite().ok_or_else(|| {
            Error::Precision(format!("divisor {divisor} is zero to its known precision"))
        })?;
        let precision = self.precision.min(divisor.precision);
        let numerator = self.truncate(precision)?.shift_down(shift)?;
        let unit = divisor.truncate(precision)?.shift_down(shift)?;
        Ok(&numerator * &unit.unit_inverse()?)
    }

    /// `self^k` for an integer exponent; negative exponents need a unit.
    pub fn pow_int(&self, k: &BigInt) -> Result<PadicInt> {
        let modulus = self.modulus();
        let (base, e) = if k.is_negative() {
            (self.unit_inverse()?, k.abs())
        } else {
            (self.clone(), k.clone())
        };
        let e = e.to_biguint().expect("non-negative exponent");
        Ok(PadicInt {
            prime: self.prime,
            precision: self.precision,
            residue: base.residue.modpow(&e, &modulus),
        })
    }

    /// `self^z` for a p-adic exponent, defined for principal units
    /// (`self ≡ 1 mod p`).
    ///
    /// The result precision is the number of digits fixed by the inputs:
    /// with `g = v_p(self - 1)` (or `v_2(self + 1)` when `p = 2` and
    /// `self ≡ 3 mod 4`) it is `min(self.precision, z.precision + g)`.
    pub fn pow_padic(&self, z: &PadicInt) -> Result<PadicInt> {
        self.check_same_prime(z)?;
        let growth = self.exponent_growth()?;
        let precision = match growth {
            Valuation::Infinite => self.precision,
            Valuation::Finite(g) => self.precision.min(z.precision + g),
        };
        let modulus = prime_power(self.prime, precision);
        Ok(PadicInt {
            prime: self.prime,
            precision,
            residue: self.residue.modpow(&z.residue, &modulus),
        })
    }

    /// Digits of `self^z` gained per known digit of `z`.
    fn exponent_growth(&self) -> Result<Valuation> {
        let m = self.add_int(-1).valuation();
        match m {
            Valuation::Finite(0) => Err(domain(format!(
                "{self} is not a principal unit; p-adic exponents are undefined"
            ))),
            Valuation::Finite(1) if self.prime == 2 => Ok(self.add_int(1).valuation()),
            other => Ok(other),
        }
    }

    /// The exact integer `self.residue`, read as a signed value.
    pub fn to_bigint(&self) -> BigInt {
        BigInt::from_biguint(Sign::Plus, self.residue.clone())
    }
}

/// Inverse of `x` modulo the small prime `p` via extended Euclid.
pub(crate) fn inverse_mod_small(x: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (x % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{x} is not invertible mod {p}");
    t0.rem_euclid(p as i128) as u64
}

impl Add for &PadicInt {
    type Output = PadicInt;

    /// Panics on a prime mismatch; use [`PadicInt::try_add`] to get an error.
    fn add(self, rhs: &PadicInt) -> PadicInt {
        self.try_add(rhs).expect("operands share a prime")
    }
}

impl Sub for &PadicInt {
    type Output = PadicInt;

    fn sub(self, rhs: &PadicInt) -> PadicInt {
        self.try_sub(rhs).expect("operands share a prime")
    }
}

impl Mul for &PadicInt {
    type Output = PadicInt;

    fn mul(self, rhs: &PadicInt) -> PadicInt {
        self.try_mul(rhs).expect("operands share a prime")
    }
}

impl Neg for &PadicInt {
    type Output = PadicInt;

    fn neg(self) -> PadicInt {
        if self.residue.is_zero() {
            return self.clone();
        }
        PadicInt {
            prime: self.prime,
            precision: self.precision,
            residue: self.modulus() - &self.residue,
        }
    }
}

impl fmt::Display for PadicInt {
    /// Canonical rendering `p^n:d0,d1,...,d(n-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}:", self.prime, self.precision)?;
        for (i, d) in self.digits().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for PadicInt {
    type Err = Error;

    /// Parses the canonical `p^n:d0,...` form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `p^n:digits`, got `{s}`")))?;
        let (p, n) = head
            .split_once('^')
            .ok_or_else(|| Error::Parse(format!("expected `p^n` before `:`, got `{head}`")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime `{p}`")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad precision `{n}`")))?;
        let digits = body
            .split(',')
            .map(|d| {
                d.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad digit `{d}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if digits.len() != n {
            return Err(Error::Parse(format!(
                "`{s}` declares {n} digits but lists {}",
                digits.len()
            )));
        }
        PadicInt::from_digits(p, &digits)
    }
}

/// A literal as accepted on input: an integer `k`, a rational `a/b`, or the
/// canonical digit form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Literal {
    Rational { num: BigInt, den: BigInt },
    Digits(PadicInt),
}

impl Literal {
    pub fn parse(s: &str) -> Result<Literal> {
        let s = s.trim();
        if s.contains(':') {
            return Ok(Literal::Digits(s.parse()?));
        }
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad integer `{t}`")))
        };
        match s.split_once('/') {
            Some((a, b)) => Ok(Literal::Rational {
                num: parse_int(a)?,
                den: parse_int(b)?,
            }),
            None => Ok(Literal::Rational {
                num: parse_int(s)?,
                den: BigInt::one(),
            }),
        }
    }

    /// The literal as an integer, when it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match self {
            Literal::Rational { num, den } if den.is_one() => Some(num),
            _ => None,
        }
    }

    /// Embeds the literal at `precision` digits. Digit literals must carry
    /// the same prime and at least that many digits.
    pub fn to_padic(&self, prime: u64, precision: u32) -> Result<PadicInt> {
        match self {
            Literal::Rational { num, den } => {
                PadicInt::from_rational(num.clone(), den.clone(), prime, precision)
            }
            Literal::Digits(x) => {
                if x.prime() != prime {
                    return Err(domain(format!(
                        "literal {x} is {}-adic, expected {prime}-adic",
                        x.prime()
                    )));
                }
                x.truncate(precision)
            }
        }
    }
}
