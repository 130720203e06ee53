//! The q-analog `ι_q(z) = (q^z - 1)/(q - 1)` at finite precision, with its
//! kernel, image and valuation structure.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coset::{disjoint_union_size, union_contains, CosetDescriptor};
use crate::error::{domain, Error, Result};
use crate::limits;
use crate::padic::{mult_order, prime_power, PadicInt, QParameter, Valuation};

/// An exponent for `ι_q`: an ordinary integer, or a p-adic integer when
/// `q` is a principal unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exponent {
    Integer(BigInt),
    Padic(PadicInt),
}

impl From<i64> for Exponent {
    fn from(k: i64) -> Self {
        Exponent::Integer(BigInt::from(k))
    }
}

impl From<BigInt> for Exponent {
    fn from(k: BigInt) -> Self {
        Exponent::Integer(k)
    }
}

impl From<PadicInt> for Exponent {
    fn from(z: PadicInt) -> Self {
        Exponent::Padic(z)
    }
}

impl From<&PadicInt> for Exponent {
    fn from(z: &PadicInt) -> Self {
        Exponent::Padic(z.clone())
    }
}

impl Exponent {
    /// The exponent as a p-adic integer with `n` digits.
    fn to_padic(&self, prime: u64, n: u32) -> Result<PadicInt> {
        match self {
            Exponent::Integer(k) => PadicInt::from_int(k.clone(), prime, n),
            Exponent::Padic(z) => {
                if z.prime() != prime {
                    return Err(domain(format!(
                        "exponent {z} is {}-adic, q is {prime}-adic",
                        z.prime()
                    )));
                }
                if z.precision() < n {
                    return Err(Error::Precision(format!(
                        "ι_q(z) mod {prime}^{n} needs z to {n} digits, have {}",
                        z.precision()
                    )));
                }
                z.truncate(n)
            }
        }
    }
}

/// `ι_q(z) mod p^n`.
///
/// For principal `q` this is `q^z - 1` at `m0 + n` digits divided exactly by
/// `q - 1`. When `q ≡ 1` to every known digit the result is `z` itself
/// (the limit of `ι_q` as `q → 1`). Non-principal `q` takes integer
/// exponents only.
pub fn iota_eval(q: &QParameter, z: &Exponent, n: u32) -> Result<PadicInt> {
    limits::current().check_precision("ι_q output", n)?;
    iota_at(q, z, n)
}

/// [`iota_eval`] without the precision cap, for internal searches.
pub(crate) fn iota_at(q: &QParameter, z: &Exponent, n: u32) -> Result<PadicInt> {
    if n == 0 {
        return Err(domain("output precision must be at least 1"));
    }
    let p = q.prime();
    match q.m0() {
        Valuation::Infinite => {
            // v_p(2) extra digits: p = 2 loses one in the limit argument
            let need = n + u32::from(p == 2);
            if q.precision() < need {
                return Err(Error::Precision(format!(
                    "q agrees with 1 to all {} known digits; ι_q mod {p}^{n} needs {need}",
                    q.precision()
                )));
            }
            z.to_padic(p, n)
        }
        Valuation::Finite(0) => {
            let Exponent::Integer(k) = z else {
                return Err(domain(
                    "q is not a principal unit; only integer exponents are supported",
                ));
            };
            if q.precision() < n {
                return Err(short_q(q, n));
            }
            let qn = q.value().truncate(n)?;
            let numer = qn.pow_int(k)?.add_int(-1);
            Ok(&numer * &qn.add_int(-1).unit_inverse()?)
        }
        Valuation::Finite(m) => {
            let work = m + n;
            if q.precision() < work {
                return Err(short_q(q, work));
            }
            let qw = q.value().truncate(work)?;
            let power = match z {
                Exponent::Integer(k) => qw.pow_int(k)?,
                Exponent::Padic(_) => qw.pow_padic(&z.to_padic(p, n)?)?,
            };
            let numer = power.truncate(work)?.add_int(-1);
            numer.div_exact(&qw.add_int(-1))
        }
    }
}

fn short_q(q: &QParameter, need: u32) -> Error {
    Error::Precision(format!(
        "q is known to {} digits, {need} are needed",
        q.precision()
    ))
}

/// `v_p(ι_q(z))` from the closed form; `Infinite` means at least the
/// precision of `z`.
///
/// Non-principal `q` takes integer exponents only, where `z = o_p · z'`
/// gives `v_p(z') + v_p(q^{o_p} - 1)`.
pub fn iota_valuation(q: &QParameter, z: &Exponent) -> Result<Valuation> {
    let p = q.prime();
    if q.m0().is_infinite() {
        return Err(domain("q agrees with 1 to its known precision"));
    }
    if !q.is_principal() {
        let Exponent::Integer(k) = z else {
            return Err(domain(
                "q is not a principal unit; only integer exponents are supported",
            ));
        };
        let o = BigInt::from(q.residue_order());
        if !k.is_multiple_of(&o) {
            return Ok(Valuation::Finite(0));
        }
        if k.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let z_prime = (k / o).abs();
        return Ok(match q.order_m0() {
            Valuation::Infinite => Valuation::Infinite,
            Valuation::Finite(m) => Valuation::Finite(int_valuation(&z_prime, p) + m),
        });
    }
    let v = match z {
        Exponent::Integer(k) if k.is_zero() => return Ok(Valuation::Infinite),
        Exponent::Integer(k) => Valuation::Finite(int_valuation(&k.abs(), p)),
        Exponent::Padic(x) => {
            if x.prime() != p {
                return Err(domain("prime mismatch"));
            }
            x.valuation()
        }
    };
    if v == Valuation::Finite(0) || p != 2 || q.is_deep() {
        return Ok(v);
    }
    // p = 2, q ≡ 3 (mod 4)
    let l0 = q
        .l0()
        .and_then(Valuation::finite)
        .ok_or_else(|| Error::Precision("q agrees with -1 to its known precision".into()))?;
    Ok(match v {
        Valuation::Finite(v) => Valuation::Finite(v + l0 - 1),
        Valuation::Infinite => Valuation::Infinite,
    })
}

fn int_valuation(k: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut k = k.clone();
    let mut v = 0;
    while !k.is_zero() && (&k % &p).is_zero() {
        k /= &p;
        v += 1;
    }
    v
}

/// Size of the quotient on which `[ι_q]_{p^n}` is injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOrder {
    /// `ι_q mod p^n` is injective on a quotient of this size.
    Quotient(BigUint),
    /// `q` is a root of unity to the known precision and `ι_q mod p^n` is
    /// injective on its whole (finite) domain of this order.
    InjectiveOnAll { group_order: u64 },
}

impl KernelOrder {
    /// Size of the domain on which the map is injective, either way.
    pub fn size(&self) -> BigUint {
        match self {
            KernelOrder::Quotient(n) => n.clone(),
            KernelOrder::InjectiveOnAll { group_order } => BigUint::from(*group_order),
        }
    }
}

/// The kernel of `[ι_q]_{p^n}` is `o([q]_{p^{m+n}}) · C_q` with `m = v_p(q - 1)`;
/// the quotient has that order, or `p^n` when `q ≡ 1 (mod p^n)`.
pub fn kernel_order(q: &QParameter, n: u32) -> Result<KernelOrder> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    let p = q.prime();
    let m = q.m0();
    if m.at_least(n) {
        if q.precision() < n {
            return Err(short_q(q, n));
        }
        return Ok(KernelOrder::Quotient(prime_power(p, n)));
    }
    let m = m.finite().expect("finite below n");
    if q.precision() < m + n {
        return Err(short_q(q, m + n));
    }
    if m == 0 && q.order_m0().is_infinite() {
        return Ok(KernelOrder::InjectiveOnAll {
            group_order: q.residue_order(),
        });
    }
    Ok(KernelOrder::Quotient(mult_order(q.value(), m + n)?))
}

/// The image of `[ι_q]_{p^n}` as a disjoint union of cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageDescription {
    prime: u64,
    n: u32,
    cosets: Vec<CosetDescriptor>,
    covers_all: bool,
}

impl ImageDescription {
    pub fn cosets(&self) -> &[CosetDescriptor] {
        &self.cosets
    }

    pub fn covers_all(&self) -> bool {
        self.covers_all
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.n
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn contains(&self, z: &BigUint) -> bool {
        self.covers_all || union_contains(&self.cosets, z)
    }

    /// Number of residues mod `p^n` in the image.
    pub fn size(&self) -> BigUint {
        disjoint_union_size(&self.cosets, self.n)
    }
}

/// Image of `ι_q mod p^n`: the whole ring; the pair `2^{l0}Z ∪ (1 + 2^{l0}Z)`
/// for `p = 2`, `q ≡ 3 (mod 4)`; or the `o_p` cosets `ι_q(z0) + p^{m0}Z`
/// for non-principal `q`.
pub fn image_description(q: &QParameter, n: u32) -> Result<ImageDescription> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    let p = q.prime();
    if q.precision() < n {
        return Err(short_q(q, n));
    }
    let whole = || ImageDescription {
        prime: p,
        n,
        cosets: vec![CosetDescriptor::from_u64(0, 0, p, n).expect("valid coset")],
        covers_all: true,
    };
    if q.is_principal() {
        if p != 2 || n == 1 || q.is_deep() {
            return Ok(whole());
        }
        let e = match q.l0().expect("p = 2") {
            Valuation::Finite(l0) => l0.min(n),
            Valuation::Infinite => n,
        };
        let cosets = vec![
            CosetDescriptor::from_u64(0, e, p, n)?,
            CosetDescriptor::from_u64(1, e, p, n)?,
        ];
        return Ok(ImageDescription {
            prime: p,
            n,
            cosets,
            covers_all: false,
        });
    }
    let e = match q.order_m0() {
        Valuation::Finite(m) => m.min(n),
        Valuation::Infinite => n,
    };
    let mut cosets = (0..q.residue_order())
        .map(|z0| {
            let base = iota_at(q, &Exponent::from(z0 as i64), n)?;
            CosetDescriptor::new(base, e)
        })
        .collect::<Result<Vec<_>>>()?;
    cosets.sort();
    Ok(ImageDescription {
        prime: p,
        n,
        cosets,
        covers_all: false,
    })
}

/// `Σ_{z=0}^{p^n-1} ι_q(z) mod p^n` by direct summation of the recurrence
/// `ι_q(z + 1) = q ι_q(z) + 1`.
pub fn cocycle_sum(q: &QParameter, n: u32) -> Result<PadicInt> {
    if !q.is_principal() {
        return Err(domain("the sum is taken over Z/p^n, which needs q ≡ 1 (mod p)"));
    }
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    if q.precision() < n {
        return Err(short_q(q, n));
    }
    let p = q.prime();
    let modulus = prime_power(p, n);
    let terms = modulus
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("{p}^{n} terms")))?;
    limits::current().check_scan("cocycle sum", terms)?;
    let qn = q.value().residue() % &modulus;
    let mut term = BigUint::zero();
    let mut total = BigUint::zero();
    for _ in 0..terms {
        total += &term;
        term = (&term * &qn + BigUint::one()) % &modulus;
    }
    PadicInt::new(p, n, total)
}
