use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::sweeps::Suite;

/// Fixed points of q-analogs of the integers over the p-adics.
#[derive(Debug, Parser)]
#[command(name = "qiota", version, about)]
pub struct Cli {
    /// Print one JSON record instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the output to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Leave timing out of JSON records.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Arithmetic on p-adic integers.
    Padic(PadicArgs),
    /// Multiplicative order of q mod p^n.
    Order(OrderArgs),
    /// Evaluate ι_q(z) mod p^n, or print a table of values.
    Iota(IotaArgs),
    /// Kernel, image, valuation and sums of ι_q.
    Cocycle {
        #[command(subcommand)]
        op: CocycleOp,
    },
    /// Fixed points of ι_q mod p^n.
    Fixed {
        #[command(subcommand)]
        op: FixedOp,
    },
    /// Φ(q): the fixed point attached to q ≡ 4, 7 (mod 9).
    Phi {
        #[arg(long)]
        q: String,
        #[arg(long)]
        precision: u32,
    },
    /// Ψ(z): the parameter fixing z ≡ 0, 1 (mod 3).
    Psi {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        precision: u32,
    },
    /// The parameter q with ι_q(z) ≡ z (mod 3^n).
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        n: u32,
    },
    /// Digits of an exceptional parameter.
    Exceptional {
        #[arg(long, value_enum)]
        branch: BranchArg,
        #[arg(long)]
        digits: u32,
    },
    /// F or G, the isometries derived from Φ.
    Isometry {
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        precision: u32,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        depth: Option<u32>,
        /// Random cases, for sampled suites.
        #[arg(long)]
        cases: Option<u64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(value_enum)]
    pub op: PadicOp,
    #[arg(long)]
    pub p: Option<u64>,
    /// Digits of precision; defaults to that of a digit literal.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PadicOp {
    /// Canonical digits, residue and valuation of x.
    Show,
    Add,
    Sub,
    Mul,
    /// Exact division x / y, consuming v(y) digits.
    Div,
    /// x^y with y an integer, or a p-adic integer for principal x.
    Pow,
    /// Inverse of a unit.
    Inv,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub n: u32,
    /// Count by repeated multiplication instead.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct IotaArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long)]
    pub n: u32,
    /// Print ι_q(z) for z = 0..=LIMIT, 18 per row.
    #[arg(long, value_name = "LIMIT")]
    pub table: Option<u64>,
    /// In table mode, bracket the fixed residues.
    #[arg(long)]
    pub mark_fixed: bool,
    /// Use the brute-force recurrence.
    #[arg(long)]
    pub oracle: bool,
}

/// Common `--p --q --n [--oracle]` flags.
#[derive(Debug, Args)]
pub struct QArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    #[arg(long)]
    pub n: u32,
    /// Use the brute-force oracle.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum CocycleOp {
    /// Size of the quotient on which ι_q mod p^n is injective.
    Kernel(QArgs),
    /// The image of ι_q mod p^n as cosets.
    Image(QArgs),
    /// Σ ι_q(z) over z mod p^n.
    Sum(QArgs),
    /// v_p(ι_q(z)) from the closed form.
    Valuation {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Digits for q and z when they are exact.
        #[arg(long, default_value_t = 20)]
        n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixedOp {
    /// The fixed set as a union of cosets.
    Enumerate(QArgs),
    /// Number of fixed residues.
    Count(QArgs),
    /// Rooted, drifting, pair or not fixed (p = 3).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        n: u32,
    },
    /// The rooted fixed point mod 3^n, if any.
    Rooted {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long)]
        n: u32,
    },
    /// The next digit of a rooted fixed point.
    Propagate {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        z0: String,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Seven,
    Four,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    F,
    G,
}
