use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::padic::{prime_power, PadicInt};

/// The residue class `base + p^exponent · Z_p`.
///
/// `base` is stored at the ambient precision it was built for, reduced
/// modulo `p^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetDescriptor {
    base: PadicInt,
    exponent: u32,
}

impl CosetDescriptor {
    pub fn new(base: PadicInt, exponent: u32) -> Result<Self> {
        if exponent > base.precision() {
            return Err(domain(format!(
                "coset exponent {exponent} exceeds the base precision {}",
                base.precision()
            )));
        }
        let reduced = base.residue() % prime_power(base.prime(), exponent);
        Ok(CosetDescriptor {
            base: PadicInt::from_parts(base.prime(), base.precision(), reduced),
            exponent,
        })
    }

    /// `base + p^exponent Z_p` with `base` given as a small integer, at ambient precision `n`.
    pub fn from_u64(base: u64, exponent: u32, prime: u64, n: u32) -> Result<Self> {
        Self::new(PadicInt::new(prime, n.max(1), BigUint::from(base))?, exponent)
    }

    pub fn base(&self) -> &PadicInt {
        &self.base
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn prime(&self) -> u64 {
        self.base.prime()
    }

    /// Membership of the integer residue `z`.
    pub fn contains(&self, z: &BigUint) -> bool {
        (z % prime_power(self.prime(), self.exponent)) == *self.base.residue()
    }

    pub fn contains_u64(&self, z: u64) -> bool {
        self.contains(&BigUint::from(z))
    }

    /// Membership of a p-adic value; needs at least `exponent` digits of `z`.
    pub fn contains_padic(&self, z: &PadicInt) -> Result<bool> {
        if z.prime() != self.prime() {
            return Err(domain("prime mismatch"));
        }
        if z.precision() < self.exponent {
            return Err(Error::Precision(format!(
                "membership in a coset mod {}^{} needs that many digits",
                self.prime(),
                self.exponent
            )));
        }
        Ok(self.contains(z.residue()))
    }

    /// Number of residues mod `p^n` in the coset, for `n >= exponent`.
    pub fn count_mod(&self, n: u32) -> BigUint {
        if n < self.exponent {
            return BigUint::zero();
        }
        prime_power(self.prime(), n - self.exponent)
    }

    /// The residues mod `p^n` in the coset, ascending; `n >= exponent`.
    pub fn members(&self, n: u32) -> Vec<u64> {
        let step = prime_power(self.prime(), self.exponent)
            .to_u64()
            .expect("small modulus");
        let modulus = prime_power(self.prime(), n).to_u64().expect("small modulus");
        let base = self.base.to_u64().expect("small modulus");
        (base..modulus).step_by(step as usize).collect()
    }

    /// Whether two cosets share a residue.
    pub fn meets(&self, other: &CosetDescriptor) -> bool {
        let e = self.exponent.min(other.exponent);
        let m = prime_power(self.prime(), e);
        (self.base.residue() % &m) == (other.base.residue() % &m)
    }
}

impl PartialOrd for CosetDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetDescriptor {
    /// Exponent first, then base residue.
    fn cmp(&self, other: &Self) -> Ordering {
        self.exponent
            .cmp(&other.exponent)
            .then_with(|| self.base.residue().cmp(other.base.residue()))
    }
}

impl fmt::Display for CosetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base.residue();
        match (base.is_zero(), self.exponent) {
            (_, 0) => f.write_str("Z"),
            (true, 1) => write!(f, "{}Z", self.prime()),
            (true, e) => write!(f, "{}^{e}Z", self.prime()),
            (false, 1) => write!(f, "{base}+{}Z", self.prime()),
            (false, e) => write!(f, "{base}+{}^{e}Z", self.prime()),
        }
    }
}

/// The union of `cosets`, tested residue by residue.
pub(crate) fn union_contains(cosets: &[CosetDescriptor], z: &BigUint) -> bool {
    cosets.iter().any(|c| c.contains(z))
}

/// Number of distinct residues mod `p^n` covered by a family of pairwise
/// disjoint cosets.
pub(crate) fn disjoint_union_size(cosets: &[CosetDescriptor], n: u32) -> BigUint {
    cosets.iter().map(|c| c.count_mod(n)).sum()
}

/// Whether the cosets are pairwise disjoint.
pub(crate) fn pairwise_disjoint(cosets: &[CosetDescriptor]) -> bool {
    cosets
        .iter()
        .enumerate()
        .all(|(i, a)| cosets[i + 1..].iter().all(|b| !a.meets(b)))
}
