//! Fixed points of `ι_q` modulo `p^n`.
//!
//! For principal `q` the fixed points always include the pair
//! `a0 Z_p ∪ (1 + a0 Z_p)`. Outside `p = 3`, `q ≡ 4, 7 (mod 9)` that pair is
//! the whole set; in that case the set is described by its rooted fixed
//! point (if any), which is located by a valuation-by-valuation search
//! followed by one-digit lifting.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use crate::coset::CosetDescriptor;
use crate::coset::{disjoint_union_size, pairwise_disjoint, union_contains};
use crate::cocycle::{iota_eval, Exponent};
use crate::error::{domain, Error, Result};
use crate::padic::{prime_power, Mod9Class, PadicInt, QParameter, Valuation};

/// Shape of a fixed-point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedPointKind {
    PairsOnly,
    Rooted,
    Drifting,
}

impl fmt::Display for FixedPointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixedPointKind::PairsOnly => "pairs-only",
            FixedPointKind::Rooted => "rooted",
            FixedPointKind::Drifting => "drifting",
        })
    }
}

/// The fixed points of `[ι_q]_{p^n}` as a sorted union of disjoint cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointSet {
    prime: u64,
    n: u32,
    cosets: Vec<CosetDescriptor>,
    kind: FixedPointKind,
    v0: Option<u32>,
    tau_exponent: Option<u32>,
}

impl FixedPointSet {
    fn build(
        prime: u64,
        n: u32,
        mut cosets: Vec<CosetDescriptor>,
        kind: FixedPointKind,
        v0: Option<u32>,
        tau_exponent: Option<u32>,
    ) -> Result<Self> {
        cosets.sort();
        if !pairwise_disjoint(&cosets) {
            return Err(Error::Invariant(format!(
                "fixed-point cosets overlap: {}",
                render(&cosets)
            )));
        }
        Ok(FixedPointSet {
            prime,
            n,
            cosets,
            kind,
            v0,
            tau_exponent,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.n
    }

    pub fn cosets(&self) -> &[CosetDescriptor] {
        &self.cosets
    }

    pub fn kind(&self) -> FixedPointKind {
        self.kind
    }

    /// Smallest nonzero `v(z(z - 1))` over the fixed points; absent for pairs-only sets.
    pub fn v0(&self) -> Option<u32> {
        self.v0
    }

    /// `n - v0 - 1` for rooted sets.
    pub fn tau_exponent(&self) -> Option<u32> {
        self.tau_exponent
    }

    pub fn contains(&self, z: &BigUint) -> bool {
        union_contains(&self.cosets, z)
    }

    pub fn contains_u64(&self, z: u64) -> bool {
        self.contains(&BigUint::from(z))
    }

    pub fn count(&self) -> BigUint {
        disjoint_union_size(&self.cosets, self.n)
    }

    /// All fixed residues mod `p^n`, ascending.
    pub fn members(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.cosets.iter().flat_map(|c| c.members(self.n)).collect();
        all.sort_unstable();
        all
    }
}

impl fmt::Display for FixedPointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.cosets))
    }
}

fn render(cosets: &[CosetDescriptor]) -> String {
    cosets
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ∪ ")
}

/// `ι_q(z) ≡ z (mod p^n)` for an exact integer representative `q` with
/// `v_p(q - 1) = m0`, tested as `q^z - 1 ≡ z(q - 1) (mod p^{n + m0})`.
pub(crate) fn fixes_exact(q: &BigUint, m0: u32, p: u64, z: &BigUint, n: u32) -> bool {
    let modulus = prime_power(p, n + m0);
    let lhs = q.modpow(z, &modulus);
    let rhs = (z * (q + &modulus - BigUint::one()) + BigUint::one()) % &modulus;
    lhs == rhs
}

/// `v_p(z(z - 1))` of the residue `z` mod `p^n`; `Infinite` when `z(z - 1) ≡ 0`.
fn pair_valuation(z: &PadicInt, n: u32) -> Result<Valuation> {
    let z = z.truncate(n)?;
    Ok(z.valuation().saturating_add(z.add_int(-1).valuation()).min_with(n))
}

trait ClampValuation {
    fn min_with(self, n: u32) -> Valuation;
}

impl ClampValuation for Valuation {
    /// Valuations at or above `n` are indistinguishable from ∞ mod `p^n`.
    fn min_with(self, n: u32) -> Valuation {
        match self {
            Valuation::Finite(v) if v < n => self,
            _ => Valuation::Infinite,
        }
    }
}

fn require_principal(q: &QParameter) -> Result<()> {
    if !q.is_principal() {
        return Err(domain(format!(
            "fixed points are defined for q ≡ 1 (mod p); q = {q}"
        )));
    }
    Ok(())
}

fn require_z(z: &PadicInt, q: &QParameter, n: u32) -> Result<()> {
    if z.prime() != q.prime() {
        return Err(domain("prime mismatch between q and z"));
    }
    if z.precision() < n {
        return Err(Error::Precision(format!(
            "z is known to {} digits, {n} are needed",
            z.precision()
        )));
    }
    Ok(())
}

/// Whether `ι_q(z) ≡ z (mod p^n)`.
pub fn is_fixed(q: &QParameter, z: &PadicInt, n: u32) -> Result<bool> {
    require_principal(q)?;
    require_z(z, q, n)?;
    let z = z.truncate(n)?;
    Ok(iota_eval(q, &Exponent::from(&z), n)? == z)
}

/// The sufficient condition `v_p(z(z - 1)) >= n - v_p(q - 1) + v_p(2)`.
pub fn pair_criterion(q: &QParameter, z: &PadicInt, n: u32) -> Result<bool> {
    require_principal(q)?;
    require_z(z, q, n)?;
    let bump = u32::from(q.prime() == 2);
    let m0 = match q.m0() {
        Valuation::Finite(m) => m,
        Valuation::Infinite if q.precision() >= n + bump => return Ok(true),
        Valuation::Infinite => {
            return Err(Error::Precision(format!(
                "q agrees with 1 to all {} known digits; the criterion mod p^{n} needs more",
                q.precision()
            )))
        }
    };
    if m0 >= n + bump {
        return Ok(true);
    }
    let threshold = n + bump - m0;
    Ok(pair_valuation(z, n)?.at_least(threshold))
}

/// Exponent `e` of the pair `p^e Z ∪ (1 + p^e Z)`, for `m0 < n`.
fn pair_exponent(p: u64, m0: u32, q: &QParameter, n: u32) -> u32 {
    if p != 2 {
        n - m0
    } else if q.is_deep() {
        n - m0 + 1
    } else {
        n
    }
}

/// The full fixed-point set of `[ι_q]_{p^n}`.
pub fn enumerate_fixed_points(q: &QParameter, n: u32) -> Result<FixedPointSet> {
    require_principal(q)?;
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    let p = q.prime();
    if q.precision() < n {
        return Err(Error::Precision(format!(
            "q is known to {} digits, {n} are needed",
            q.precision()
        )));
    }
    let coset = |base: &BigUint, e: u32| CosetDescriptor::new(PadicInt::from_parts(p, n, base.clone()), e);
    let zero = BigUint::zero();
    let one = BigUint::one();
    let m0 = match q.m0() {
        Valuation::Finite(m) if m < n => m,
        _ => {
            return FixedPointSet::build(p, n, vec![coset(&zero, 0)?], FixedPointKind::PairsOnly, None, None)
        }
    };
    match (p, q.class()) {
        (3, Some(class @ (Mod9Class::Seven | Mod9Class::Four))) => three_adic_set(q, class, n),
        _ => {
            let e = pair_exponent(p, m0, q, n);
            FixedPointSet::build(
                p,
                n,
                vec![coset(&zero, e)?, coset(&one, e)?],
                FixedPointKind::PairsOnly,
                None,
                None,
            )
        }
    }
}

fn three_adic_set(q: &QParameter, class: Mod9Class, n: u32) -> Result<FixedPointSet> {
    let coset = |base: u64, e: u32| CosetDescriptor::from_u64(base, e, 3, n);
    let (zero_side, one_side) = match class {
        Mod9Class::Seven => (0, 1),
        _ => (1, 0),
    };
    match find_rooted(q, n)? {
        Some(root) => {
            let tau = n - root.v0 - 1;
            let z0 = CosetDescriptor::new(root.z0.with_precision(n)?, tau)?;
            FixedPointSet::build(
                3,
                n,
                vec![z0, coset(zero_side, tau)?, coset(one_side, n - 1)?],
                FixedPointKind::Rooted,
                Some(root.v0),
                Some(tau),
            )
        }
        None => {
            let half = n / 2;
            FixedPointSet::build(
                3,
                n,
                vec![coset(zero_side, half)?, coset(one_side, n - 1)?],
                FixedPointKind::Drifting,
                Some(half),
                None,
            )
        }
    }
}

/// Number of fixed residues mod `p^n`, from the closed-form counts.
pub fn count_fixed_points(q: &QParameter, n: u32) -> Result<BigUint> {
    require_principal(q)?;
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    if q.precision() < n {
        return Err(Error::Precision(format!(
            "q is known to {} digits, {n} are needed",
            q.precision()
        )));
    }
    let p = q.prime();
    let m0 = match q.m0() {
        Valuation::Finite(m) if m < n => m,
        _ => return Ok(prime_power(p, n)),
    };
    let three = BigUint::from(3u32);
    Ok(match (p, q.class()) {
        (3, Some(Mod9Class::Seven | Mod9Class::Four)) => match find_rooted(q, n)? {
            Some(root) => BigUint::from(2u32) * prime_power(3, root.v0 + 1) + three,
            None => prime_power(3, n - n / 2) + three,
        },
        (2, _) => prime_power(2, m0),
        _ => BigUint::from(2u32) * prime_power(p, m0),
    })
}

/// Type of a single residue with respect to `[ι_q]_{3^n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Rooted,
    Drifting,
    Pair,
    NotFixed,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Rooted => "rooted",
            Classification::Drifting => "drifting",
            Classification::Pair => "pair",
            Classification::NotFixed => "not-fixed",
        })
    }
}

/// Classifies `z` for `p = 3`, `q ≡ 4, 7 (mod 9)`.
///
/// Fixed points meeting the pair criterion are reported as `Pair`, including
/// those whose `z(z - 1)` vanishes to the known precision. Others are
/// `Rooted` when `1 <= v(z(z - 1)) < (n - 1)/2` and `Drifting` otherwise.
pub fn classify(q: &QParameter, z: &PadicInt, n: u32) -> Result<Classification> {
    require_branch(q)?;
    if !is_fixed(q, z, n)? {
        return Ok(Classification::NotFixed);
    }
    if pair_criterion(q, z, n)? {
        return Ok(Classification::Pair);
    }
    match pair_valuation(z, n)? {
        Valuation::Finite(w) if w >= 1 && 2 * w + 1 < n => Ok(Classification::Rooted),
        _ => Ok(Classification::Drifting),
    }
}

fn require_branch(q: &QParameter) -> Result<Mod9Class> {
    match (q.prime(), q.class()) {
        (3, Some(c @ (Mod9Class::Seven | Mod9Class::Four))) => Ok(c),
        _ => Err(domain(format!(
            "rooted fixed points need p = 3 and q ≡ 4 or 7 (mod 9); q = {q}"
        ))),
    }
}

/// A rooted fixed point `z0` (reduced mod `3^{n - v0 - 1}`) and its `v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedPoint {
    pub z0: PadicInt,
    pub v0: u32,
}

/// Rooted-point search over an exact representative of `q`.
///
/// Whether `ι_q` has a rooted point with `v(z(z - 1)) = v` at level `L`
/// depends only on `q mod 3^{L - v}`, so `known` digits of `q` support
/// levels up to `known + v`.
pub(crate) struct RootSearch<'a> {
    q: &'a BigUint,
    known: u32,
    offset: u64,
}

impl<'a> RootSearch<'a> {
    pub(crate) fn new(q: &'a BigUint, known: u32, class: Mod9Class) -> Self {
        let offset = u64::from(class == Mod9Class::Four);
        RootSearch { q, known, offset }
    }

    fn check_level(&self, level: u32, v: u32) -> Result<()> {
        if level > self.known + v {
            return Err(Error::Precision(format!(
                "deciding level 3^{level} needs q to {} digits, have {}",
                level - v,
                self.known
            )));
        }
        Ok(())
    }

    /// The rooted residue mod `3^{v + 1}` at level `2v + 2`, if any.
    ///
    /// A rooted point at any higher level reduces to one at this level, so
    /// a miss here rules out `v` everywhere.
    pub(crate) fn detect(&self, v: u32) -> Result<Option<BigUint>> {
        let level = 2 * v + 2;
        self.check_level(level, v)?;
        let step = prime_power(3, v);
        let hits: Vec<BigUint> = (1u32..=2)
            .map(|u| BigUint::from(self.offset) + &step * u)
            .filter(|z| fixes_exact(self.q, 1, 3, z, level))
            .collect();
        match hits.len() {
            0 => Ok(None),
            1 => Ok(hits.into_iter().next()),
            _ => Err(Error::Invariant(format!(
                "two rooted residues with valuation {v} at level {level}"
            ))),
        }
    }

    /// The digit `c` extending a rooted point from level `level` to `level + 1`.
    pub(crate) fn next_digit(&self, z: &BigUint, v: u32, level: u32) -> Result<u32> {
        self.check_level(level + 1, v)?;
        let step = prime_power(3, level - v - 1);
        let hits: Vec<u32> = (0u32..3)
            .filter(|&c| fixes_exact(self.q, 1, 3, &(z + &step * c), level + 1))
            .collect();
        match hits.as_slice() {
            [c] => Ok(*c),
            [] => Err(Error::Invariant(format!(
                "no lift of the rooted point {z} from level {level}"
            ))),
            _ => Err(Error::Invariant(format!(
                "several lifts of the rooted point {z} from level {level}"
            ))),
        }
    }

    /// Lifts a rooted point from `from` to `to`, returning it mod `3^{to - v - 1}`.
    pub(crate) fn lift(&self, z: BigUint, v: u32, from: u32, to: u32) -> Result<BigUint> {
        let mut z = z;
        for level in from..to {
            let c = self.next_digit(&z, v, level)?;
            z += prime_power(3, level - v - 1) * c;
        }
        Ok(z % prime_power(3, to - v - 1))
    }

    /// First valuation `v` in `1..=max_v` carrying a rooted point, with the
    /// point mod `3^{v + 1}`.
    pub(crate) fn first_root(&self, max_v: u32) -> Result<Option<(u32, BigUint)>> {
        for v in 1..=max_v {
            if let Some(z) = self.detect(v)? {
                return Ok(Some((v, z)));
            }
        }
        Ok(None)
    }
}

/// The rooted fixed point of `[ι_q]_{3^n}`, if there is one.
pub fn find_rooted(q: &QParameter, n: u32) -> Result<Option<RootedPoint>> {
    let class = require_branch(q)?;
    if n < 4 {
        // 1 <= v0 < (n - 1)/2 has no solutions
        return Ok(None);
    }
    let search = RootSearch::new(q.value().residue(), q.precision(), class);
    let max_v = (n - 2) / 2;
    let Some((v0, z)) = search.first_root(max_v)? else {
        return Ok(None);
    };
    let z = search.lift(z, v0, 2 * v0 + 2, n)?;
    Ok(Some(RootedPoint {
        z0: PadicInt::from_parts(3, n - v0 - 1, z),
        v0,
    }))
}

/// The unique `c ∈ {0, 1, 2}` with `z0 + c·3^{n - v0 - 1}` fixed mod `3^{n + 1}`,
/// for a rooted fixed point `z0` of `[ι_q]_{3^n}`.
pub fn propagate_rooted(q: &QParameter, z0: &PadicInt, n: u32) -> Result<u32> {
    let class = require_branch(q)?;
    if z0.prime() != 3 {
        return Err(domain("z0 must be 3-adic"));
    }
    let v0 = match pair_valuation(z0, z0.precision())? {
        Valuation::Finite(v) if v >= 1 && 2 * v + 1 < n => v,
        _ => {
            return Err(domain(format!(
                "{z0} is not a rooted residue for level {n}: need 1 <= v(z(z-1)) < (n-1)/2"
            )))
        }
    };
    let search = RootSearch::new(q.value().residue(), q.precision(), class);
    search.check_level(n + 1, v0)?;
    if !fixes_exact(q.value().residue(), 1, 3, z0.residue(), n) {
        return Err(domain(format!("{z0} is not a fixed point mod 3^{n}")));
    }
    search.next_digit(z0.residue(), v0, n)
}
