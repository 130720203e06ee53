//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Two criteria compare against reference data that contains known
//! misprints. Those criteria report FAIL; the test then requires the
//! mismatches to be exactly the documented ones, so any other deviation
//! still fails the run.

use std::process::Command;
use std::time::{Duration, Instant};

use qiota::correspondence::{exceptional_q, phi, Branch, PhiOutcome};
use qiota::QParameter;
use qiota_cli::sweeps::{self, SweepReport};
use qiota_cli::table::{self, Entry};

const TABLE_BUDGET: Duration = Duration::from_secs(1);
const EXCEPTIONAL_BUDGET: Duration = Duration::from_secs(60);
const PHI_BUDGET: Duration = Duration::from_secs(5);
const EQUIVALENCE_BUDGET: Duration = Duration::from_secs(120);
const CENSUS_BUDGET: Duration = Duration::from_secs(30);

/// Reference digits of the two exceptional parameters, indices 0..=7.
const REFERENCE_Q0: [u64; 8] = [1, 2, 1, 0, 0, 0, 1, 2];
const REFERENCE_Q1: [u64; 8] = [1, 1, 2, 0, 2, 1, 0, 1];

/// Mismatches against the reference data that are misprints in it:
/// the mod 3^5 table has impossible values at z = 58 and z = 111 (189
/// already occurs at z = 27 and the map is a bijection mod 3^5), and digit
/// 3 of q0 is forced to be 2 by the defining congruence.
const KNOWN_DEVIATIONS: [&str; 3] = [
    "mod 3^5 z=58: reference 189, computed 139",
    "mod 3^5 z=111: reference 43, computed 48",
    "q0 digit 3: reference 0, computed 2",
];

const REFERENCE_MOD_3_4: &str = "\
[0] [1] 5 21 [4] 17 69 34 56 63 [10] 41 3 [13] 53 51 43 11\n\
45 [19] 77 66 [22] 8 33 52 47 [27] [28] 32 48 [31] 44 15 61 2\n\
9 [37] 68 30 [40] 80 78 70 38 72 [46] 23 12 [49] 35 60 79 74\n\
[54] [55] 59 75 [58] 71 42 7 29 36 [64] 14 57 [67] 26 24 16 65\n\
18 [73] 50 39 [76] 62 6 25 20 [0] [1]\n";

const REFERENCE_MOD_3_5: &str = "\
[0] [1] 5 21 85 98 150 115 218 144 91 122 3 [13] 53 213 124 11\n\
45 181 239 228 184 8 33 133 47 189 [28] 113 210 112 206 96 142 83\n\
90 118 230 192 [40] 161 159 151 119 234 208 104 174 211 116 222 160 155\n\
135 [55] 221 156 189 71 42 169 191 36 145 95 138 [67] 26 105 178 227\n\
180 235 212 120 238 224 168 187 20 [81] [82] 86 102 166 179 231 196 56\n\
225 172 203 84 [94] 134 51 205 92 126 19 77 66 22 89 114 214 128\n\
27 [109] 194 43 193 44 177 223 164 171 199 68 30 [121] 242 240 232 200\n\
72 46 185 12 49 197 60 241 236 216 [136] 59 237\n";

const REFERENCE_MOD_3_6: &str = "\
[0] [1] 5 21 85 341 636 358 704 630 334 608 246 256 296 456 367 11\n\
45 181 725 714 670 494 519 619 290 432 271 356 696 598 206 96 385 83\n\
333 604 230 192 [40] 161 645 394 119 477 451 347 660 454 359 708 646 398\n\
135 541 707 642 382 71 285 412 191 36 145 581 138 553 26 105 421 227\n\
180 721 698 606 238 224 168 673 506 567 [82]\n";

struct Gate {
    lines: Vec<String>,
    deviations: Vec<String>,
    failed: Vec<u32>,
}

impl Gate {
    fn record(&mut self, id: u32, name: &str, ok: bool, detail: &str) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        let line = format!("{verdict} {id} {name}: {detail}");
        println!("{line}");
        self.lines.push(line);
        if !ok {
            self.failed.push(id);
        }
    }
}

fn within(elapsed: Duration, budget: Duration) -> (bool, String) {
    (elapsed <= budget, format!("{:.2}s of {:.0}s", elapsed.as_secs_f64(), budget.as_secs_f64()))
}

fn cli_table(n: u32, limit: u64) -> Vec<Entry> {
    let out = Command::new(env!("CARGO_BIN_EXE_qiota"))
        .args(["iota", "--p", "3", "--q", "4", "--n", &n.to_string(), "--table", &limit.to_string(), "--mark-fixed"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    table::parse(&String::from_utf8(out.stdout).unwrap()).expect("table parses")
}

fn tables(gate: &mut Gate) {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut marked = 0;
    for (n, reference) in [(4, REFERENCE_MOD_3_4), (5, REFERENCE_MOD_3_5), (6, REFERENCE_MOD_3_6)] {
        let reference = table::parse(reference).unwrap();
        let computed = cli_table(n, reference.len() as u64 - 1);
        assert_eq!(computed.len(), reference.len());
        for (z, (r, c)) in reference.iter().zip(&computed).enumerate() {
            if r.value != c.value {
                mismatches.push(format!("mod 3^{n} z={z}: reference {}, computed {}", r.value, c.value));
            }
            if r.fixed != c.fixed {
                mismatches.push(format!("mod 3^{n} z={z}: marker reference {}, computed {}", r.fixed, c.fixed));
            }
        }
        if n == 4 {
            marked = computed.iter().take(81).filter(|e| e.fixed).count();
        }
    }
    let (fast, timing) = within(start.elapsed(), TABLE_BUDGET);
    let ok = mismatches.is_empty() && fast && marked == 21;
    let detail = format!("{} mismatches {:?}; {marked} fixed mod 3^4; {timing}", mismatches.len(), mismatches);
    gate.record(1, "value tables", ok, &detail);
    gate.deviations.extend(mismatches);
}

fn exceptional(gate: &mut Gate) {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for (branch, reference, name) in [(Branch::Seven, REFERENCE_Q0, "q0"), (Branch::Four, REFERENCE_Q1, "q1")] {
        let digits = exceptional_q(branch, 8).unwrap().digits();
        for (i, (r, c)) in reference.iter().zip(&digits).enumerate() {
            if r != c {
                mismatches.push(format!("{name} digit {i}: reference {r}, computed {c}"));
            }
        }
    }
    let (fast, timing) = within(start.elapsed(), EXCEPTIONAL_BUDGET);
    let detail = format!("{} mismatches {:?}; {timing}", mismatches.len(), mismatches);
    gate.record(2, "exceptional digits", mismatches.is_empty() && fast, &detail);
    gate.deviations.extend(mismatches);
}

fn phi_of_four(gate: &mut Gate) {
    let start = Instant::now();
    let q = QParameter::from_int(4, 3, 20).unwrap();
    let outcome = phi(&q, 20).unwrap();
    let ok = match &outcome {
        PhiOutcome::Rooted { z, .. } => z.digits() == vec![1; 19],
        PhiOutcome::Exceptional { .. } => false,
    };
    let (fast, timing) = within(start.elapsed(), PHI_BUDGET);
    gate.record(3, "phi(4)", ok && fast, &format!("{}; {timing}", outcome.residue()));
}

fn sweep(gate: &mut Gate, id: u32, name: &str, report: SweepReport, elapsed: Duration, budget: Option<Duration>) {
    let (fast, timing) = match budget {
        Some(b) => within(elapsed, b),
        None => (true, format!("{:.2}s", elapsed.as_secs_f64())),
    };
    gate.record(id, name, report.passed() && fast, &format!("{report}; {timing}"));
}

fn timed(f: impl FnOnce() -> SweepReport) -> (SweepReport, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn property_suites(gate: &mut Gate) {
    let suites = [
        "cocycle-identity",
        "identities",
        "norm",
        "valuation",
        "criterion",
        "propagation",
        "round-trip",
        "isometry",
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut summary = Vec::new();
    for suite in suites {
        let out = Command::new(env!("CARGO_BIN_EXE_qiota"))
            .args(["verify", "--suite", suite])
            .output()
            .expect("binary runs");
        let text = String::from_utf8_lossy(&out.stdout).trim().to_string();
        if !out.status.success() {
            failed.push(text.clone());
        }
        summary.push(text);
    }
    let ok = failed.is_empty();
    let detail = format!("{}; {:.2}s", summary.join(" | "), start.elapsed().as_secs_f64());
    gate.record(7, "property suites", ok, &detail);
}

#[test]
fn acceptance() {
    let mut gate = Gate { lines: Vec::new(), deviations: Vec::new(), failed: Vec::new() };
    tables(&mut gate);
    exceptional(&mut gate);
    phi_of_four(&mut gate);

    let (report, elapsed) = timed(|| sweeps::oracle_equivalence(5));
    sweep(&mut gate, 4, "oracle equivalence", report, elapsed, Some(EQUIVALENCE_BUDGET));
    let (report, elapsed) = timed(|| sweeps::census(6));
    sweep(&mut gate, 5, "rooted census", report, elapsed, Some(CENSUS_BUDGET));
    let (report, elapsed) = timed(|| sweeps::sums(5));
    sweep(&mut gate, 6, "sums", report, elapsed, None);
    property_suites(&mut gate);

    let witnesses_ok = !gate.failed.iter().any(|id| (3..=7).contains(id));
    gate.record(8, "finite witnesses", witnesses_ok, "criteria 3 to 7 stand in for the limit statements");

    let mut deviations = gate.deviations.clone();
    deviations.sort();
    let mut known: Vec<String> = KNOWN_DEVIATIONS.iter().map(|s| s.to_string()).collect();
    known.sort();
    assert_eq!(deviations, known, "deviations from the reference data changed");
    let unexpected: Vec<&u32> = gate.failed.iter().filter(|id| !matches!(id, 1 | 2)).collect();
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}\n{}", gate.lines.join("\n"));
}
