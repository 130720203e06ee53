//! Runtime caps that turn runaway jobs into errors.
//!
//! Both caps can be overridden through the environment:
//! `QIOTA_PRECISION_CAP` (digits, default 64) and `QIOTA_SCAN_BUDGET`
//! (residues per brute-force scan, default 3^9).

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION_CAP: u32 = 64;
pub const DEFAULT_SCAN_BUDGET: u64 = 19_683;

pub const PRECISION_CAP_VAR: &str = "QIOTA_PRECISION_CAP";
pub const SCAN_BUDGET_VAR: &str = "QIOTA_SCAN_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub precision_cap: u32,
    pub scan_budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            precision_cap: DEFAULT_PRECISION_CAP,
            scan_budget: DEFAULT_SCAN_BUDGET,
        }
    }
}

impl Limits {
    /// Defaults overridden by whichever environment variables parse.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = read_var(PRECISION_CAP_VAR) {
            limits.precision_cap = cap as u32;
        }
        if let Some(budget) = read_var(SCAN_BUDGET_VAR) {
            limits.scan_budget = budget;
        }
        limits
    }

    pub fn check_precision(&self, what: &str, digits: u32) -> Result<()> {
        if digits > self.precision_cap {
            return Err(Error::Resource(format!(
                "{what} of {digits} digits exceeds the precision cap of {}",
                self.precision_cap
            )));
        }
        Ok(())
    }

    pub fn check_scan(&self, what: &str, size: u64) -> Result<()> {
        if size > self.scan_budget {
            return Err(Error::Resource(format!(
                "{what} over {size} residues exceeds the scan budget of {}",
                self.scan_budget
            )));
        }
        Ok(())
    }
}

/// Process-wide limits, read from the environment on first use.
pub fn current() -> Limits {
    static LIMITS: OnceLock<Limits> = OnceLock::new();
    *LIMITS.get_or_init(Limits::from_env)
}

fn read_var(name: &str) -> Option<u64> {
    std::env::var(name).ok()?.trim().parse().ok()
}
