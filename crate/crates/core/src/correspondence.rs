//! The 3-adic correspondence between parameters `q ≡ 4, 7 (mod 9)` and the
//! nontrivial fixed point `z_q` of `ι_q`.
//!
//! [`phi`] sends `q` to `z_q`, [`psi`] sends `z` back to the unique `q` fixing
//! it, and [`exceptional_q`] computes the two parameters whose cocycles have
//! no nontrivial fixed point (assigned `0` and `1`).

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{domain, Error, Result};
use crate::fixed_points::{fixes_exact, RootSearch};
use crate::limits;
use crate::padic::{prime_power, Mod9Class, PadicInt, QParameter, Valuation};

/// The two branches: `q ≡ 7 (mod 9)` pairs with `z ≡ 0 (mod 3)`,
/// `q ≡ 4 (mod 9)` with `z ≡ 1 (mod 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Seven,
    Four,
}

impl Branch {
    /// Branch of a fixed point `z`, from its last digit.
    pub fn of_fixed_point(z: &PadicInt) -> Option<Branch> {
        match z.digit(0) {
            0 => Some(Branch::Seven),
            1 => Some(Branch::Four),
            _ => None,
        }
    }

    pub fn of_parameter(q: &QParameter) -> Option<Branch> {
        match (q.prime(), q.class()) {
            (3, Some(Mod9Class::Seven)) => Some(Branch::Seven),
            (3, Some(Mod9Class::Four)) => Some(Branch::Four),
            _ => None,
        }
    }

    /// `q mod 9` on this branch.
    pub fn q_mod_9(self) -> u64 {
        match self {
            Branch::Seven => 7,
            Branch::Four => 4,
        }
    }

    /// `z mod 3` on this branch, which is also the value assigned to the
    /// exceptional parameter.
    pub fn z_mod_3(self) -> u64 {
        match self {
            Branch::Seven => 0,
            Branch::Four => 1,
        }
    }

    fn class(self) -> Mod9Class {
        match self {
            Branch::Seven => Mod9Class::Seven,
            Branch::Four => Mod9Class::Four,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Seven => "seven",
            Branch::Four => "four",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "seven" | "7" => Ok(Branch::Seven),
            "four" | "4" => Ok(Branch::Four),
            other => Err(Error::Parse(format!("unknown branch `{other}`"))),
        }
    }
}

/// `v(z(z - 1))` at the precision of `z`.
fn root_valuation(z: &PadicInt) -> Valuation {
    match z.valuation().saturating_add(z.add_int(-1).valuation()) {
        Valuation::Finite(v) if v < z.precision() => Valuation::Finite(v),
        _ => Valuation::Infinite,
    }
}

fn require_three_adic(z: &PadicInt) -> Result<Branch> {
    if z.prime() != 3 {
        return Err(domain(format!("{z} is not 3-adic")));
    }
    Branch::of_fixed_point(z)
        .ok_or_else(|| domain(format!("{z} is ≡ 2 (mod 3); no q fixes it")))
}

/// Digit-by-digit construction of the parameter fixing a given `z`.
///
/// At each stage the current `q_k` (with `k` digits) satisfies
/// `ι_{q_k}(z) ≡ z (mod 3^{k + v0})`; one more digit gains one more level.
#[derive(Debug, Clone)]
pub struct DigitSolverState {
    target: PadicInt,
    v0: u32,
    branch: Branch,
    q: BigUint,
    digits: u32,
}

impl DigitSolverState {
    pub fn new(z: &PadicInt) -> Result<Self> {
        let branch = require_three_adic(z)?;
        let v0 = match root_valuation(z) {
            Valuation::Finite(v) => v,
            Valuation::Infinite => {
                return Err(domain(format!(
                    "{z} is 0 or 1 to its known precision; use the exceptional parameters"
                )))
            }
        };
        if z.precision() < v0 + 2 {
            return Err(Error::Precision(format!(
                "the first stage needs z to {} digits",
                v0 + 2
            )));
        }
        let q = BigUint::from(branch.q_mod_9());
        if !fixes_exact(&q, 1, 3, z.residue(), v0 + 2) {
            return Err(Error::Invariant(format!(
                "q ≡ {} (mod 9) does not fix {z} at the first stage",
                branch.q_mod_9()
            )));
        }
        Ok(DigitSolverState {
            target: z.clone(),
            v0,
            branch,
            q,
            digits: 2,
        })
    }

    pub fn v0(&self) -> u32 {
        self.v0
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Exponent `k + v0` of the modulus at which `q_k` fixes the target.
    pub fn level(&self) -> u32 {
        self.digits + self.v0
    }

    /// The current `q_k`, with `k` digits.
    pub fn q(&self) -> PadicInt {
        PadicInt::from_parts(3, self.digits, self.q.clone())
    }

    /// Extends `q` by one digit, returning it.
    pub fn step(&mut self) -> Result<u32> {
        let level = self.level() + 1;
        if self.target.precision() < level {
            return Err(Error::Precision(format!(
                "level {level} needs z to {level} digits, have {}",
                self.target.precision()
            )));
        }
        let place = prime_power(3, self.digits);
        let hits: Vec<u32> = (0u32..3)
            .filter(|&a| fixes_exact(&(&self.q + &place * a), 1, 3, self.target.residue(), level))
            .collect();
        let [a] = hits.as_slice() else {
            return Err(Error::Invariant(format!(
                "{} candidate digits fix {} at level {level}",
                hits.len(),
                self.target
            )));
        };
        self.q += place * *a;
        self.digits += 1;
        Ok(*a)
    }
}

/// The unique `q mod 3^{n - v0}` with `ι_q(z) ≡ z (mod 3^n)`, where
/// `v0 = v(z(z - 1))` must satisfy `1 <= v0 <= n - 2`.
pub fn solve_q_for_z(z: &PadicInt, n: u32) -> Result<PadicInt> {
    require_three_adic(z)?;
    if z.precision() < n {
        return Err(Error::Precision(format!(
            "z is known to {} digits, {n} are needed",
            z.precision()
        )));
    }
    let z = z.truncate(n)?;
    match root_valuation(&z) {
        Valuation::Finite(v) if v + 2 <= n => {}
        Valuation::Finite(v) => {
            return Err(domain(format!("v(z(z-1)) = {v} exceeds n - 2 = {}", n as i64 - 2)))
        }
        Valuation::Infinite => {
            return Err(domain(format!(
                "{z} is 0 or 1 mod 3^{n}; use the exceptional parameters"
            )))
        }
    }
    let mut state = DigitSolverState::new(&z)?;
    while state.level() < n {
        state.step()?;
    }
    Ok(state.q())
}

static SEVEN_DIGITS: RwLock<Vec<u32>> = RwLock::new(Vec::new());
static FOUR_DIGITS: RwLock<Vec<u32>> = RwLock::new(Vec::new());

/// The exceptional parameter of the branch (`q0` for seven, `q1` for four)
/// to `digit_count` digits.
///
/// Stage `k` picks the digit `a` for which `q_k + a·3^k` fixes `3^k`
/// (seven) or `1 + 3^k` (four) modulo `3^{2k + 1}`. Stages are memoized
/// process-wide; one writer extends the table at a time.
pub fn exceptional_q(branch: Branch, digit_count: u32) -> Result<PadicInt> {
    if digit_count == 0 {
        return Err(domain("digit count must be at least 1"));
    }
    limits::current().check_precision("exceptional parameter", digit_count)?;
    let table = match branch {
        Branch::Seven => &SEVEN_DIGITS,
        Branch::Four => &FOUR_DIGITS,
    };
    let have = table.read().map(|d| d.len()).unwrap_or(0);
    if have < digit_count as usize {
        let mut digits = table.write().unwrap_or_else(|e| e.into_inner());
        extend_exceptional(branch, &mut digits, digit_count as usize)?;
    }
    let digits = table.read().unwrap_or_else(|e| e.into_inner());
    let digits: Vec<u64> = digits[..digit_count as usize].iter().map(|&d| d as u64).collect();
    PadicInt::from_digits(3, &digits)
}

fn extend_exceptional(branch: Branch, digits: &mut Vec<u32>, want: usize) -> Result<()> {
    if digits.is_empty() {
        digits.extend([1, if branch == Branch::Seven { 2 } else { 1 }]);
    }
    let mut q = digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &d| acc * 3u32 + d);
    while digits.len() < want {
        let k = digits.len() as u32;
        let place = prime_power(3, k);
        let z = &place + BigUint::from(branch.z_mod_3());
        let hits: Vec<u32> = (0u32..3)
            .filter(|&a| fixes_exact(&(&q + &place * a), 1, 3, &z, 2 * k + 1))
            .collect();
        let [a] = hits.as_slice() else {
            return Err(Error::Invariant(format!(
                "{} candidates for digit {k} of the {branch} exceptional parameter",
                hits.len()
            )));
        };
        q += place * *a;
        digits.push(*a);
    }
    Ok(())
}

/// Result of [`phi`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiOutcome {
    /// `z_q` to `N - 1` digits, and `v0 = v(z_q(z_q - 1))`.
    Rooted { z: PadicInt, v0: u32 },
    /// No rooted point exists at any level decidable from `N` digits, so
    /// `q` agrees with the exceptional parameter of `branch` to `depth`
    /// digits.
    Exceptional { branch: Branch, depth: u32 },
}

impl PhiOutcome {
    /// The value of `Φ(q)` to `N - 1` digits; the exceptional parameters
    /// are assigned `0` and `1`.
    pub fn residue(&self) -> PadicInt {
        match self {
            PhiOutcome::Rooted { z, .. } => z.clone(),
            PhiOutcome::Exceptional { branch, depth } => PadicInt::from_parts(
                3,
                depth - 1,
                BigUint::from(branch.z_mod_3()),
            ),
        }
    }
}

/// `Φ(q)`: the 3-adic fixed point of `ι_q`, to one digit fewer than `q`.
///
/// With `N = precision` digits of `q`, the rooted point with valuation `v`
/// is found at level `2v + 2` and lifted to level `N + v`, which fixes it
/// mod `3^{N - 1}`.
pub fn phi(q: &QParameter, precision: u32) -> Result<PhiOutcome> {
    let branch = Branch::of_parameter(q).ok_or_else(|| {
        domain(format!("Φ is defined on 3-adic q ≡ 4 or 7 (mod 9); q = {q}"))
    })?;
    if precision < 2 {
        return Err(domain("Φ needs at least 2 digits of q"));
    }
    limits::current().check_precision("Φ input", precision)?;
    if q.precision() < precision {
        return Err(Error::Precision(format!(
            "q is known to {} digits, {precision} are needed",
            q.precision()
        )));
    }
    let q_residue = q.value().residue() % prime_power(3, precision);
    let search = RootSearch::new(&q_residue, precision, branch.class());
    match search.first_root(precision - 2)? {
        Some((v0, z)) => {
            let z = search.lift(z, v0, 2 * v0 + 2, precision + v0)?;
            Ok(PhiOutcome::Rooted {
                z: PadicInt::from_parts(3, precision - 1, z),
                v0,
            })
        }
        None => Ok(PhiOutcome::Exceptional {
            branch,
            depth: precision,
        }),
    }
}

/// `Ψ(z)` to `precision` digits: the unique `q ≠ 1` with `ι_q(z) = z`.
///
/// Needs `z` to `precision - 1` digits. When `z` is within `3^{precision - 1}`
/// of `0` or `1` the answer agrees with the exceptional parameter.
pub fn psi(z: &PadicInt, precision: u32) -> Result<PadicInt> {
    let branch = require_three_adic(z)?;
    if precision == 0 {
        return Err(domain("precision must be at least 1"));
    }
    limits::current().check_precision("Ψ output", precision)?;
    if precision == 1 {
        return PadicInt::one(3, 1);
    }
    if z.precision() < precision - 1 {
        return Err(Error::Precision(format!(
            "Ψ(z) mod 3^{precision} needs z to {} digits, have {}",
            precision - 1,
            z.precision()
        )));
    }
    let z = z.truncate(precision - 1)?;
    let v0 = match root_valuation(&z) {
        Valuation::Finite(v) if precision >= v + 2 => v,
        _ => return exceptional_q(branch, precision),
    };
    let n = precision + v0;
    solve_q_for_z(&z.with_precision(n)?, n)
}

fn require_x(x: &PadicInt, precision: u32) -> Result<()> {
    if x.prime() != 3 {
        return Err(domain(format!("{x} is not 3-adic")));
    }
    if precision == 0 {
        return Err(domain("precision must be at least 1"));
    }
    if x.precision() < precision {
        return Err(Error::Precision(format!(
            "x is known to {} digits, {precision} are needed",
            x.precision()
        )));
    }
    Ok(())
}

/// `q = offset + 9x` to `precision + 2` digits.
fn reparametrize(x: &PadicInt, offset: u64, precision: u32) -> Result<QParameter> {
    let x = x.truncate(precision)?;
    let q = x.residue() * 9u32 + offset;
    QParameter::new(PadicInt::from_parts(3, precision + 2, q))
}

/// `F(x) = (Φ(4 + 9x) - 1)/3`, an isometry of `Z_3`.
pub fn f_map(x: &PadicInt, precision: u32) -> Result<PadicInt> {
    require_x(x, precision)?;
    let q = reparametrize(x, 4, precision)?;
    let z = phi(&q, precision + 2)?.residue();
    z.add_int(-1).shift_down(1)
}

/// `G(x) = Φ(7 + 9x)/3`, an isometry of `Z_3`.
pub fn g_map(x: &PadicInt, precision: u32) -> Result<PadicInt> {
    require_x(x, precision)?;
    let q = reparametrize(x, 7, precision)?;
    let z = phi(&q, precision + 2)?.residue();
    z.shift_down(1)
}
