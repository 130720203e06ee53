//! Verification sweeps: structural answers checked against the oracle or
//! against algebraic identities over exhaustive grids and seeded samples.

use std::collections::HashMap;
use std::fmt;

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, ToPrimitive};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use qiota::cocycle::{cocycle_sum, image_description, iota_eval, iota_valuation, kernel_order};
use qiota::correspondence::{exceptional_q, f_map, g_map, phi, psi, Branch, PhiOutcome};
use qiota::fixed_points::{
    count_fixed_points, enumerate_fixed_points, find_rooted, is_fixed, pair_criterion,
    propagate_rooted, FixedPointKind,
};
use qiota::oracle;
use qiota::padic::prime_power;
use qiota::{CosetDescriptor, Exponent, ImageDescription, PadicInt, QParameter, Result, Valuation};

/// Outcome of one sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SweepReport {
    fn new(name: &str) -> Self {
        SweepReport {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(detail());
        }
    }

    /// Counts a case whose evaluation returned an error as a failure.
    fn check_result(&mut self, outcome: Result<bool>, detail: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.check(ok, detail),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", detail()));
            }
        }
    }

    fn fail(&mut self, detail: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(detail);
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} cases, {} failures", self.name, self.cases, self.failures)?;
        if let Some(first) = &self.first_failure {
            write!(f, "; first: {first}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Fixed sets, counts, images and kernels against the oracle.
    OracleEquivalence,
    /// Rooted-parameter census mod 3^n.
    Census,
    /// Sums of ι_q over Z/p^n.
    Sums,
    /// ι_q(a + b) = q^a ι_q(b) + ι_q(a).
    CocycleIdentity,
    /// Negation, multiplication and defining identities.
    Identities,
    /// ι_q preserves the norm.
    Norm,
    /// Closed-form valuation against evaluation.
    Valuation,
    /// Pair criterion soundness and exactness.
    Criterion,
    /// Rooted points lift one level at a time.
    Propagation,
    /// Ψ∘Φ and Φ∘Ψ round trips.
    RoundTrip,
    /// F and G preserve distances.
    Isometry,
    /// Exceptional parameters have no rooted points.
    Exceptional,
    /// Fixed-point counts settle outside the exceptional classes.
    Stability,
    /// Primes above 3 only ever fix the pair.
    PairOnly,
    /// Every suite at its default settings.
    All,
}

impl Suite {
    pub const EVERY: [Suite; 14] = [
        Suite::OracleEquivalence,
        Suite::Census,
        Suite::Sums,
        Suite::CocycleIdentity,
        Suite::Identities,
        Suite::Norm,
        Suite::Valuation,
        Suite::Criterion,
        Suite::Propagation,
        Suite::RoundTrip,
        Suite::Isometry,
        Suite::Exceptional,
        Suite::Stability,
        Suite::PairOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleEquivalence => "oracle-equivalence",
            Suite::Census => "census",
            Suite::Sums => "sums",
            Suite::CocycleIdentity => "cocycle-identity",
            Suite::Identities => "identities",
            Suite::Norm => "norm",
            Suite::Valuation => "valuation",
            Suite::Criterion => "criterion",
            Suite::Propagation => "propagation",
            Suite::RoundTrip => "round-trip",
            Suite::Isometry => "isometry",
            Suite::Exceptional => "exceptional",
            Suite::Stability => "stability",
            Suite::PairOnly => "pair-only",
            Suite::All => "all",
        }
    }

    /// Default depth: the largest exponent `n` (or precision) swept.
    pub fn default_depth(self) -> u32 {
        match self {
            Suite::Census => 6,
            Suite::CocycleIdentity | Suite::Identities | Suite::Isometry | Suite::Exceptional => 10,
            Suite::RoundTrip => 14,
            Suite::Stability => 8,
            _ => 5,
        }
    }

    /// Default number of random cases, for sampled suites.
    pub fn default_cases(self) -> u64 {
        match self {
            Suite::CocycleIdentity => 500,
            Suite::Identities | Suite::RoundTrip => 200,
            Suite::Isometry => 100,
            _ => 0,
        }
    }
}

/// Sweep settings; `None` picks the suite default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Settings {
    pub depth: Option<u32>,
    pub cases: Option<u64>,
    pub seed: u64,
}

pub fn run(suite: Suite, settings: Settings) -> Vec<SweepReport> {
    if suite == Suite::All {
        let defaults = Settings {
            seed: settings.seed,
            ..Settings::default()
        };
        return Suite::EVERY.iter().flat_map(|&s| run(s, defaults)).collect();
    }
    let depth = settings.depth.unwrap_or(suite.default_depth());
    let cases = settings.cases.unwrap_or(suite.default_cases());
    let mut rng = StdRng::seed_from_u64(settings.seed);
    let report = match suite {
        Suite::OracleEquivalence => oracle_equivalence(depth),
        Suite::Census => census(depth),
        Suite::Sums => sums(depth),
        Suite::CocycleIdentity => cocycle_identity(depth, cases, &mut rng),
        Suite::Identities => identities(depth, cases, &mut rng),
        Suite::Norm => norm(depth),
        Suite::Valuation => valuation(depth),
        Suite::Criterion => criterion(depth),
        Suite::Propagation => propagation(depth),
        Suite::RoundTrip => round_trip(depth, cases, &mut rng),
        Suite::Isometry => isometry(depth, cases, &mut rng),
        Suite::Exceptional => exceptional(depth),
        Suite::Stability => stability(depth),
        Suite::PairOnly => pair_only(depth),
        Suite::All => unreachable!(),
    };
    vec![report]
}

fn pow(p: u64, n: u32) -> u64 {
    prime_power(p, n).to_u64().expect("sweep moduli fit in 64 bits")
}

fn principal_units(p: u64, k: u32) -> impl Iterator<Item = u64> {
    (0..pow(p, k)).filter(move |q| q % p == 1)
}

/// `v(z(z - 1))` for a residue mod `p^n`, each factor capped at `n`.
fn pair_valuation(z: u64, p: u64, n: u32) -> u32 {
    let m = pow(p, n);
    oracle::brute_valuation(z % m, p).unwrap_or(n) + oracle::brute_valuation((z + m - 1) % m, p).unwrap_or(n)
}

fn capped(v: Valuation, n: u32) -> u32 {
    v.finite().map_or(n, |v| v.min(n))
}

/// Oracle facts about one class `q mod p^n`, with the structural
/// descriptions already checked against them residue by residue.
struct ClassFacts {
    fixed: Vec<u64>,
    image: Vec<u64>,
    period: u64,
    fixed_cosets: Vec<Vec<CosetDescriptor>>,
    images: Vec<ImageDescription>,
}

impl ClassFacts {
    fn compute(p: u64, q: u64, n: u32) -> Result<Self> {
        Ok(ClassFacts {
            fixed: oracle::brute_fixed_points_raw(p, q, n)?,
            image: oracle::brute_image(p, q, n)?,
            period: oracle::brute_period(p, q, n)?,
            fixed_cosets: Vec::new(),
            images: Vec::new(),
        })
    }
}

/// Every principal unit `q mod p^{n+2}` for `p ∈ {2,3,5,7}`, `n <= depth`.
///
/// The oracle answers depend only on `q mod p^n`, so they are computed once
/// per class. Each distinct structural description met within a class is
/// compared with the oracle on all `p^n` residues; a lift whose description
/// is syntactically equal to one already compared needs no second pass.
pub fn oracle_equivalence(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("oracle-equivalence");
    for p in [2u64, 3, 5, 7] {
        for n in 1..=depth {
            let m = pow(p, n);
            let mut classes: HashMap<u64, ClassFacts> = HashMap::new();
            for q_int in principal_units(p, n + 2) {
                let tag = || format!("p={p} n={n} q={q_int}");
                if let Err(e) = equivalence_case(p, n, m, q_int, &mut classes, &mut report) {
                    report.cases += 1;
                    report.fail(format!("{}: {e}", tag()));
                }
            }
        }
    }
    report
}

fn equivalence_case(
    p: u64,
    n: u32,
    m: u64,
    q_int: u64,
    classes: &mut HashMap<u64, ClassFacts>,
    report: &mut SweepReport,
) -> Result<()> {
    let tag = || format!("p={p} n={n} q={q_int}");
    let q = QParameter::from_int(q_int, p, 2 * n + 4)?;
    let facts = match classes.entry(q_int % m) {
        std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
        std::collections::hash_map::Entry::Vacant(e) => e.insert(ClassFacts::compute(p, q_int, n)?),
    };

    let set = enumerate_fixed_points(&q, n)?;
    if !facts.fixed_cosets.iter().any(|c| c.as_slice() == set.cosets()) {
        let members: Vec<u64> = (0..m).filter(|&z| set.contains_u64(z)).collect();
        let ok = members == facts.fixed;
        report.check(ok, || format!("{}: fixed set {set} disagrees with the oracle", tag()));
        if ok {
            facts.fixed_cosets.push(set.cosets().to_vec());
        }
    } else {
        report.check(true, String::new);
    }

    let count = count_fixed_points(&q, n)?;
    report.check(count == BigUint::from(facts.fixed.len()), || {
        format!("{}: count {count}, oracle {}", tag(), facts.fixed.len())
    });

    let image = image_description(&q, n)?;
    if !facts.images.contains(&image) {
        let members: Vec<u64> = (0..m).filter(|&z| image.contains(&BigUint::from(z))).collect();
        let ok = members == facts.image && image.size() == BigUint::from(facts.image.len());
        report.check(ok, || format!("{}: image disagrees with the oracle", tag()));
        if ok {
            facts.images.push(image);
        }
    } else {
        report.check(true, String::new);
    }

    let kernel = kernel_order(&q, n)?.size();
    report.check(kernel == BigUint::from(facts.period), || {
        format!("{}: kernel {kernel}, oracle period {}", tag(), facts.period)
    });
    Ok(())
}

/// Rooted-parameter census mod `3^n` for `n = 4..=depth`.
pub fn census(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("census");
    for n in 4..=depth.max(4) {
        let mut rooted = [0u64; 2];
        let mut bare = [0u64; 2];
        let mut by_v0: HashMap<u32, u64> = HashMap::new();
        for q_int in principal_units(3, n).filter(|q| q % 9 != 1) {
            let branch = usize::from(q_int % 9 == 4);
            let outcome = QParameter::from_int(q_int, 3, n).and_then(|q| find_rooted(&q, n));
            let brute = oracle::brute_rooted_valuation(q_int, n);
            match (outcome, brute) {
                (Ok(found), Ok(brute)) => {
                    let v0 = found.map(|r| r.v0);
                    report.check(v0 == brute, || format!("n={n} q={q_int}: v0 {v0:?}, oracle {brute:?}"));
                    match v0 {
                        Some(v) => {
                            rooted[branch] += 1;
                            *by_v0.entry(v).or_default() += 1;
                        }
                        None => bare[branch] += 1,
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    report.cases += 1;
                    report.fail(format!("n={n} q={q_int}: {e}"));
                }
            }
        }
        let half = pow(3, (n - 1) / 2);
        let want_rooted = pow(3, n - 2) - half;
        report.check(rooted == [want_rooted; 2], || {
            format!("n={n}: rooted counts {rooted:?}, expected {want_rooted} per branch")
        });
        report.check(bare == [half; 2], || format!("n={n}: no-rooted counts {bare:?}, expected {half} per branch"));
        for v0 in 1..=(n - 2) / 2 {
            let got = by_v0.get(&v0).copied().unwrap_or(0);
            let want = 4 * pow(3, n - v0 - 2);
            report.check(got == want, || format!("n={n} v0={v0}: {got} parameters, expected {want}"));
        }
    }
    report
}

/// Sums of `ι_q` over a full residue system: `0` for odd `p` (`n <= depth`),
/// `2^{n-1}` for `p = 2` (`n <= depth + 1`), against direct oracle sums.
pub fn sums(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("sums");
    let grids = [(3u64, depth), (5, depth), (2, depth + 1)];
    for (p, top) in grids {
        for n in 1..=top {
            let expected = if p == 2 { BigUint::from(1u64 << (n - 1)) } else { BigUint::from(0u32) };
            let units: Vec<u64> = if p == 2 {
                (1..pow(2, n).max(4)).step_by(2).collect()
            } else {
                principal_units(p, n).collect()
            };
            for q_int in units {
                let outcome = (|| {
                    let q = QParameter::from_int(q_int, p, n + 2)?;
                    let s = cocycle_sum(&q, n)?;
                    let brute = oracle::brute_sum(p, q_int, n)?;
                    Ok(s.residue() == &expected && BigUint::from(brute) == expected)
                })();
                report.check_result(outcome, || format!("p={p} n={n} q={q_int}"));
            }
        }
    }
    report
}

/// A random principal unit: `1 + p·u`, or any odd `q` for `p = 2`.
fn random_principal(rng: &mut StdRng, p: u64) -> u64 {
    let u = rng.gen_range(1..1_000_000u64);
    if p == 2 {
        2 * u + 1
    } else {
        1 + p * u
    }
}

fn random_padic(rng: &mut StdRng, p: u64, n: u32) -> PadicInt {
    let digits: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    PadicInt::from_digits(p, &digits).expect("digits below p")
}

/// Working precision for a random `q`: enough for `v(q - 1) + n`.
fn work_precision(n: u32) -> u32 {
    2 * n + 48
}

pub fn cocycle_identity(depth: u32, cases: u64, rng: &mut StdRng) -> SweepReport {
    let mut report = SweepReport::new("cocycle-identity");
    for _ in 0..cases {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=depth.max(1));
        let q_int = random_principal(rng, p);
        let a = random_padic(rng, p, n);
        let b = random_padic(rng, p, n);
        let outcome = (|| {
            let q = QParameter::from_int(q_int, p, work_precision(n))?;
            let lhs = iota_eval(&q, &Exponent::from(a.try_add(&b)?), n)?;
            let qa = q.value().pow_padic(&a)?.truncate(n)?;
            let rhs = qa
                .try_mul(&iota_eval(&q, &Exponent::from(&b), n)?)?
                .try_add(&iota_eval(&q, &Exponent::from(&a), n)?)?;
            Ok(lhs == rhs)
        })();
        report.check_result(outcome, || format!("p={p} n={n} q={q_int} a={a} b={b}"));
    }
    report
}

fn iota_int(q: &QParameter, z: i64, n: u32) -> Result<PadicInt> {
    iota_eval(q, &Exponent::from(z), n)
}

/// `ι_q(-z) = -q^{-z} ι_q(z)`, `ι_q(rz) = ι_{q^z}(r) ι_q(z)` and
/// `(q - 1) ι_q(z) = q^z - 1`, each `cases` times.
pub fn identities(depth: u32, cases: u64, rng: &mut StdRng) -> SweepReport {
    let mut report = SweepReport::new("identities");
    for _ in 0..cases {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=depth.max(1));
        let q_int = random_principal(rng, p);
        let z = rng.gen_range(1..100_000i64);
        let outcome = (|| {
            let q = QParameter::from_int(q_int, p, work_precision(n))?;
            let inv = q.value().pow_int(&BigInt::from(-z))?.truncate(n)?;
            Ok(iota_int(&q, -z, n)? == -&inv.try_mul(&iota_int(&q, z, n)?)?)
        })();
        report.check_result(outcome, || format!("negation: p={p} n={n} q={q_int} z={z}"));

        let small_q = rng.gen_range(1..200u64) * if p == 2 { 2 } else { p } + 1;
        let e = rng.gen_range(1..30u32);
        let r = rng.gen_range(0..10_000i64);
        let outcome = (|| {
            let q = QParameter::from_int(small_q, p, 4 * n + 200)?;
            let qe = QParameter::from_int(BigInt::from(small_q).pow(e), p, 4 * n + 200)?;
            let lhs = iota_int(&q, r * i64::from(e), n)?;
            let rhs = iota_int(&qe, r, n)?.try_mul(&iota_int(&q, i64::from(e), n)?)?;
            Ok(lhs == rhs)
        })();
        report.check_result(outcome, || format!("multiplication: p={p} n={n} q={small_q} z={e} r={r}"));

        let w = rng.gen_range(-100_000..100_000i64);
        let outcome = (|| {
            let q = QParameter::from_int(q_int, p, work_precision(n))?;
            let lhs = q.value().add_int(-1).truncate(n)?.try_mul(&iota_int(&q, w, n)?)?;
            let rhs = q.value().pow_int(&BigInt::from(w))?.truncate(n)?.add_int(-1);
            Ok(lhs == rhs)
        })();
        report.check_result(outcome, || format!("definition: p={p} n={n} q={q_int} z={w}"));
    }
    report
}

/// `v(ι_q(z)) = v(z)` for every `z mod p^depth`, `p ∈ {3,5,7}`, a fixed
/// sample of principal units including `1`.
pub fn norm(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("norm");
    let n = depth.max(1);
    for p in [3u64, 5, 7] {
        for u in [0, 1, 2, p, p + 1, p * p - 1, 2 * p * p + 3] {
            let q_int = 1 + p * u;
            let Ok(q) = QParameter::from_int(q_int, p, n + 12) else { continue };
            for z in 0..pow(p, n) {
                let outcome = (|| {
                    let zp = PadicInt::from_int(z, p, n)?;
                    Ok(iota_eval(&q, &Exponent::from(&zp), n)?.valuation() == zp.valuation())
                })();
                report.check_result(outcome, || format!("p={p} n={n} q={q_int} z={z}"));
            }
        }
    }
    report
}

/// Closed-form `v(ι_q(z))` against the valuation of the evaluated value, for
/// every unit `q mod p^3`, every `z mod p^n`, `n <= depth`, `p ∈ {2,3,5}`.
pub fn valuation(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("valuation");
    for p in [2u64, 3, 5] {
        for n in 1..=depth {
            for q_int in (2..pow(p, 3)).filter(|q| q % p != 0) {
                let Ok(q) = QParameter::from_int(q_int, p, 2 * n + 6) else { continue };
                for z in 0..pow(p, n) as i64 {
                    let outcome = (|| {
                        let expected = capped(iota_int(&q, z, n)?.valuation(), n);
                        let mut ok = capped(iota_valuation(&q, &Exponent::from(z))?, n) == expected;
                        if q.is_principal() {
                            let zp = PadicInt::from_int(z, p, n)?;
                            ok &= capped(iota_valuation(&q, &Exponent::from(&zp))?, n) == expected;
                        }
                        Ok(ok)
                    })();
                    report.check_result(outcome, || format!("p={p} n={n} q={q_int} z={z}"));
                }
            }
        }
    }
    report
}

/// The pair criterion against fixedness, per class `q mod p^n`.
///
/// Soundness calls `is_fixed` on every residue the criterion accepts.
/// Exactness (outside `p = 3`, `q ≢ 1 (mod 9)`, `n > 2`, `z ≢ 2 (mod 3)`)
/// compares the criterion with the oracle's fixed set.
pub fn criterion(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("criterion");
    for p in [2u64, 3, 5, 7] {
        for n in 1..=depth {
            let m = pow(p, n);
            for q_int in principal_units(p, n) {
                let setup = QParameter::from_int(q_int, p, 2 * n + 4)
                    .and_then(|q| oracle::brute_iota_table(p, q_int, n).map(|t| (q, t)));
                let (q, table) = match setup {
                    Ok(s) => s,
                    Err(e) => {
                        report.cases += 1;
                        report.fail(format!("p={p} n={n} q={q_int}: {e}"));
                        continue;
                    }
                };
                let deep = q_int % 9 == 1;
                for z in 0..m {
                    let tag = || format!("p={p} n={n} q={q_int} z={z}");
                    let outcome = (|| {
                        let zp = PadicInt::from_int(z, p, n)?;
                        let crit = pair_criterion(&q, &zp, n)?;
                        let fixed = table[z as usize] == z;
                        let sound = !crit || (is_fixed(&q, &zp, n)? && fixed);
                        let exact = !(p != 3 || deep || n <= 2 || z % 3 == 2) || crit == fixed;
                        Ok(sound && exact)
                    })();
                    report.check_result(outcome, tag);
                }
            }
        }
    }
    report
}

/// A rooted point at level `n` lifts to level `n + 1` exactly as
/// `propagate_rooted` predicts, for every `q mod 3^{depth+3}` in
/// `U1 - U2` and `n = 4..depth+3`. Each rooted point is also checked
/// against the oracle's fixed set.
pub fn propagation(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("propagation");
    let top = depth + 3;
    for q_int in principal_units(3, top).filter(|q| q % 9 != 1) {
        let Ok(q) = QParameter::from_int(q_int, 3, top) else { continue };
        for n in 4..top {
            let tag = || format!("q={q_int} n={n}");
            let outcome = (|| {
                let Some(root) = find_rooted(&q, n)? else { return Ok(true) };
                let fixed = oracle::brute_fixed_points_raw(3, q_int, n)?;
                let z = root.z0.residue().to_u64().expect("small");
                let present = fixed.binary_search(&z).is_ok();
                let c = propagate_rooted(&q, &root.z0, n)?;
                let Some(next) = find_rooted(&q, n + 1)? else { return Ok(false) };
                let tau = n - root.v0 - 1;
                let lifted = root.z0.residue() + BigUint::from(c) * prime_power(3, tau);
                Ok(present && next.v0 == root.v0 && next.z0.residue() == &lifted)
            })();
            report.check_result(outcome, tag);
        }
    }
    report
}

/// Random round trips through Ψ and Φ at precisions `6..=depth`, with the
/// fixed-point witness and the branch law checked on every output.
pub fn round_trip(depth: u32, cases: u64, rng: &mut StdRng) -> SweepReport {
    let mut report = SweepReport::new("round-trip");
    let top = depth.max(6);
    for _ in 0..cases {
        let precision = rng.gen_range(6..=top);
        let offset = rng.gen_range(0..2u64);
        let raw = rng.gen_range(0..pow(3, precision - 2));
        let z = PadicInt::from_int(3 * raw + offset, 3, precision - 1).expect("valid");
        let outcome = (|| {
            let q = psi(&z, precision)?;
            let qp = QParameter::new(q.clone())?;
            let back = phi(&qp, precision)?.residue();
            let witness = is_fixed(&qp, &z, precision - 1)?;
            let seven = q.residue() % 9u32 == BigUint::from(7u32);
            Ok(back == z && witness && q.precision() == precision && seven == (offset == 0))
        })();
        report.check_result(outcome, || format!("psi then phi: z={z} precision={precision}"));

        let q_int = 9 * rng.gen_range(0..pow(3, precision - 2)) + [4, 7][rng.gen_range(0..2)];
        let outcome = (|| {
            let q = QParameter::from_int(q_int, 3, precision)?;
            let outcome = phi(&q, precision)?;
            let z = outcome.residue();
            let mut ok = psi(&z, precision)? == *q.value();
            if let PhiOutcome::Rooted { v0, .. } = outcome {
                let n = precision - 1 - v0;
                ok &= is_fixed(&q, &z.truncate(n)?, n)?;
                ok &= Branch::of_fixed_point(&z) == Branch::of_parameter(&q);
            }
            Ok(ok)
        })();
        report.check_result(outcome, || format!("phi then psi: q={q_int} precision={precision}"));
    }
    report
}

/// `v(F(x) - F(y)) = v(x - y)` and likewise for `G`, at precision `depth`.
pub fn isometry(depth: u32, cases: u64, rng: &mut StdRng) -> SweepReport {
    let mut report = SweepReport::new("isometry");
    let n = depth.max(1);
    for _ in 0..cases {
        let x = random_padic(rng, 3, n);
        let y = random_padic(rng, 3, n);
        let outcome = (|| {
            let d = capped(x.try_sub(&y)?.valuation(), n);
            let f = capped(f_map(&x, n)?.try_sub(&f_map(&y, n)?)?.valuation(), n);
            let g = capped(g_map(&x, n)?.try_sub(&g_map(&y, n)?)?.valuation(), n);
            Ok(f == d && g == d)
        })();
        report.check_result(outcome, || format!("x={x} y={y}"));
    }
    report
}

/// `q_k` has no rooted point at any level `n <= 2k - 1`, `k = 2..=depth`.
pub fn exceptional(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("exceptional");
    for branch in [Branch::Seven, Branch::Four] {
        for k in 2..=depth {
            for n in 1..=2 * k - 1 {
                let outcome = exceptional_q(branch, k)
                    .and_then(QParameter::new)
                    .and_then(|q| find_rooted(&q, n))
                    .map(|r| r.is_none());
                report.check_result(outcome, || format!("{branch} k={k} n={n}"));
            }
        }
    }
    report
}

/// Counts are constant once a rooted point appears, for a sample of parameters
/// mod `3^depth` away from the exceptional ones; the exceptional truncations
/// have `3^{n - ⌊n/2⌋} + 3` fixed points, growing over even levels.
pub fn stability(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("stability");
    let top = depth.max(4);
    let exceptional: Vec<PadicInt> = [Branch::Seven, Branch::Four]
        .iter()
        .filter_map(|&b| exceptional_q(b, top).ok())
        .collect();
    let step = (pow(3, top - 2) / 20).max(1);
    for k in (0..pow(3, top - 2)).step_by(step as usize) {
        for offset in [4u64, 7] {
            let q_int = 9 * k + offset;
            let outcome = (|| {
                let q = QParameter::from_int(q_int, 3, top)?;
                if exceptional.contains(q.value()) {
                    return Ok(true);
                }
                let mut counts = Vec::new();
                for n in 4..=top {
                    if find_rooted(&q, n)?.is_some() {
                        counts.push(count_fixed_points(&q, n)?);
                    }
                }
                Ok(counts.windows(2).all(|w| w[0] == w[1]))
            })();
            report.check_result(outcome, || format!("q={q_int}"));
        }
    }
    for q in exceptional {
        let mut last = BigUint::from(0u32);
        for n in 4..=top {
            let outcome = (|| {
                let qp = QParameter::new(q.clone())?;
                let count = count_fixed_points(&qp, n)?;
                let mut ok = count == BigUint::from(pow(3, n - n / 2) + 3);
                if n % 2 == 0 {
                    ok &= count > last;
                    last = count;
                }
                Ok(ok)
            })();
            report.check_result(outcome, || format!("exceptional {q} n={n}"));
        }
    }
    report
}

/// For `p ∈ {5,7}` and every `q ∈ U1 - {1}` mod `p^n`, `n <= depth`, no fixed
/// residue has `1 <= v(z(z - 1)) < n - v(q - 1)`, and the structural set
/// is the pair alone.
pub fn pair_only(depth: u32) -> SweepReport {
    let mut report = SweepReport::new("pair-only");
    for p in [5u64, 7] {
        for n in 1..=depth {
            for q_int in principal_units(p, n).filter(|&q| q != 1) {
                let outcome = (|| {
                    let m0 = oracle::brute_valuation(q_int - 1, p).expect("q != 1");
                    let fixed = oracle::brute_fixed_points_raw(p, q_int, n)?;
                    let gap = fixed.iter().all(|&z| {
                        let w = pair_valuation(z, p, n);
                        !(1 <= w && w < n - m0)
                    });
                    let q = QParameter::from_int(q_int, p, n + 2)?;
                    let set = enumerate_fixed_points(&q, n)?;
                    Ok(gap && set.kind() == FixedPointKind::PairsOnly && set.cosets().len() == 2)
                })();
                report.check_result(outcome, || format!("p={p} n={n} q={q_int}"));
            }
        }
    }
    report
}
