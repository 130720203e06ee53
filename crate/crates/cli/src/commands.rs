//! Command execution: each command yields a text rendering and a record.

use num_bigint::BigUint;
use serde_json::{json, Value};

use qiota::cocycle::{cocycle_sum, image_description, iota_eval, iota_valuation, kernel_order};
use qiota::correspondence::{exceptional_q, f_map, g_map, phi, psi, solve_q_for_z, Branch, PhiOutcome};
use qiota::fixed_points::{classify, count_fixed_points, enumerate_fixed_points, find_rooted, propagate_rooted};
use qiota::padic::{mult_order, prime_power};
use qiota::{limits, oracle, Exponent, KernelOrder, Literal, PadicInt, Valuation};

use crate::args::{BranchArg, CocycleOp, Command, FixedOp, IotaArgs, MapArg, OrderArgs, PadicArgs, PadicOp, QArgs};
use crate::error::{CliError, CliResult};
use crate::input;
use crate::record::{Method, OutputRecord};
use crate::sweeps::{self, Settings};
use crate::table::{self, Entry};

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub record: OutputRecord,
    /// Process exit code; nonzero only for failed verification.
    pub exit_code: i32,
}

impl Output {
    fn new(text: impl Into<String>, record: OutputRecord, result: Value) -> Self {
        Output {
            text: text.into(),
            record: OutputRecord { result, ..record },
            exit_code: 0,
        }
    }
}

fn padic_json(x: &PadicInt) -> Value {
    json!({ "digits": x.to_string(), "residue": x.residue().to_string() })
}

fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(v) => json!(v),
        Valuation::Infinite => json!("inf"),
    }
}

fn method(oracle: bool) -> Method {
    if oracle {
        Method::Oracle
    } else {
        Method::Structural
    }
}

fn branch(b: BranchArg) -> Branch {
    match b {
        BranchArg::Seven => Branch::Seven,
        BranchArg::Four => Branch::Four,
    }
}

pub fn execute(command: &Command) -> CliResult<Output> {
    match command {
        Command::Padic(args) => padic(args),
        Command::Order(args) => order(args),
        Command::Iota(args) => iota(args),
        Command::Cocycle { op } => cocycle(op),
        Command::Fixed { op } => fixed(op),
        Command::Phi { q, precision } => cmd_phi(q, *precision),
        Command::Psi { z, precision } => cmd_psi(z, *precision),
        Command::Solve { z, n } => solve(z, *n),
        Command::Exceptional { branch: b, digits } => {
            let rec = OutputRecord::new("exceptional", Method::Structural)
                .input("branch", branch(*b))
                .input("digits", digits);
            let q = exceptional_q(branch(*b), *digits)?;
            Ok(Output::new(q.to_string(), rec, padic_json(&q)))
        }
        Command::Isometry { map, x, precision } => isometry(*map, x, *precision),
        Command::Verify { suite, depth, cases, seed } => {
            let rec = OutputRecord::new("verify", Method::Oracle)
                .input("suite", suite.name())
                .input("depth", depth.map_or("default".to_string(), |d| d.to_string()))
                .input("seed", seed);
            let reports = sweeps::run(*suite, Settings { depth: *depth, cases: *cases, seed: *seed });
            let passed = reports.iter().all(|r| r.passed());
            let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let mut out = Output::new(text, rec, json!({ "passed": passed, "reports": reports }));
            if !passed {
                out.exit_code = CliError::Verification(String::new()).exit_code();
            }
            Ok(out)
        }
    }
}

fn padic(args: &PadicArgs) -> CliResult<Output> {
    let x_lit = input::parse(&args.x)?;
    let y_lit = args.y.as_deref().map(input::parse).transpose()?;
    let mut lits = vec![&x_lit];
    lits.extend(y_lit.as_ref());
    let p = input::resolve_prime(args.p, &lits)?;
    let n = match args.n {
        Some(n) => n,
        None => match &x_lit {
            Literal::Digits(x) => x.precision(),
            _ => return Err(CliError::Usage("--n is required for integer and rational literals".into())),
        },
    };
    let op_name = format!("{:?}", args.op).to_lowercase();
    let mut rec = OutputRecord::new(format!("padic {op_name}"), Method::Structural)
        .input("p", p)
        .input("n", n)
        .input("x", &args.x);
    if let Some(y) = &args.y {
        rec = rec.input("y", y);
    }
    let x = input::padic(&x_lit, p, n)?;
    let need_y = || -> CliResult<&Literal> {
        y_lit
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("padic {op_name} needs --y")))
    };
    let value = match args.op {
        PadicOp::Show => {
            let v = x.valuation();
            let text = format!("{x}\nresidue: {}\nvaluation: {v}", x.residue());
            let result = json!({
                "digits": x.to_string(),
                "residue": x.residue().to_string(),
                "valuation": valuation_json(v),
            });
            return Ok(Output::new(text, rec, result));
        }
        PadicOp::Add => x.try_add(&input::padic(need_y()?, p, n)?)?,
        PadicOp::Sub => x.try_sub(&input::padic(need_y()?, p, n)?)?,
        PadicOp::Mul => x.try_mul(&input::padic(need_y()?, p, n)?)?,
        PadicOp::Div => x.div_exact(&input::padic(need_y()?, p, n)?)?,
        PadicOp::Pow => match need_y()? {
            lit @ Literal::Rational { .. } if lit.as_integer().is_some() => x.pow_int(lit.as_integer().unwrap())?,
            lit => x.pow_padic(&input::padic(lit, p, n)?)?,
        },
        PadicOp::Inv => x.unit_inverse()?,
    };
    Ok(Output::new(value.to_string(), rec, padic_json(&value)))
}

fn order(args: &OrderArgs) -> CliResult<Output> {
    let lit = input::parse(&args.q)?;
    let p = input::resolve_prime(args.p, &[&lit])?;
    let rec = OutputRecord::new("order", method(args.oracle))
        .input("p", p)
        .input("q", &args.q)
        .input("n", args.n);
    let q = input::parameter(&lit, p, args.n)?;
    if args.oracle {
        let k = oracle::brute_order(p, oracle::residue_of(&q, args.n)?, args.n)?;
        return Ok(Output::new(k.to_string(), rec, json!({ "order": k.to_string() })));
    }
    let k = mult_order(q.value(), args.n)?;
    let result = json!({
        "order": k.to_string(),
        "residue_order": q.residue_order(),
        "m0": valuation_json(q.m0()),
    });
    Ok(Output::new(k.to_string(), rec, result))
}

fn iota(args: &IotaArgs) -> CliResult<Output> {
    let q_lit = input::parse(&args.q)?;
    let z_lit = args.z.as_deref().map(input::parse).transpose()?;
    let mut lits = vec![&q_lit];
    lits.extend(z_lit.as_ref());
    let p = input::resolve_prime(args.p, &lits)?;
    let n = args.n;
    let mut rec = OutputRecord::new("iota", method(args.oracle))
        .input("p", p)
        .input("q", &args.q)
        .input("n", n);
    let q = input::parameter(&q_lit, p, n)?;

    if let Some(limit) = args.table {
        rec = rec.input("table", limit).input("mark_fixed", args.mark_fixed);
        return iota_table(&q, p, n, limit, args, rec);
    }
    let z_text = args
        .z
        .as_ref()
        .ok_or_else(|| CliError::Usage("iota needs --z or --table".into()))?;
    let z_lit = z_lit.expect("parsed above");
    rec = rec.input("z", z_text);
    if args.oracle {
        let z = input::small_int(&z_lit, "--z")?;
        let v = oracle::brute_iota(p, oracle::residue_of(&q, n)?, z, n)?;
        limits::current().check_scan("ι_q recurrence", z)?;
        return Ok(Output::new(v.to_string(), rec, json!({ "residue": v.to_string() })));
    }
    let exponent = match z_lit.as_integer() {
        Some(k) => Exponent::Integer(k.clone()),
        None => Exponent::Padic(input::padic(&z_lit, p, n)?),
    };
    let value = iota_eval(&q, &exponent, n)?;
    let text = match exponent {
        Exponent::Integer(_) => value.residue().to_string(),
        Exponent::Padic(_) => value.to_string(),
    };
    Ok(Output::new(text, rec, padic_json(&value)))
}

fn iota_table(
    q: &qiota::QParameter,
    p: u64,
    n: u32,
    limit: u64,
    args: &IotaArgs,
    rec: OutputRecord,
) -> CliResult<Output> {
    limits::current().check_scan("ι_q table", limit.saturating_add(1))?;
    let modulus = prime_power(p, n);
    let entries: Vec<Entry> = if args.oracle {
        let q_res = oracle::residue_of(q, n)?;
        let m = modulus.iter_u64_digits().next().unwrap_or(0);
        (0..=limit)
            .map(|z| {
                let value = oracle::brute_iota(p, q_res, z, n)?;
                Ok(Entry { value, fixed: value == z % m })
            })
            .collect::<qiota::Result<_>>()?
    } else {
        let set = if q.is_principal() {
            Some(enumerate_fixed_points(q, n)?)
        } else {
            None
        };
        (0..=limit)
            .map(|z| {
                let value = iota_eval(q, &Exponent::from(z as i64), n)?;
                let value = value.to_u64().expect("table moduli fit in 64 bits");
                let fixed = match &set {
                    Some(set) => set.contains(&(BigUint::from(z) % &modulus)),
                    None => BigUint::from(value) == BigUint::from(z) % &modulus,
                };
                Ok(Entry { value, fixed })
            })
            .collect::<qiota::Result<_>>()?
    };
    let text = table::render(&entries, args.mark_fixed);
    let result = json!({
        "values": entries.iter().map(|e| e.value).collect::<Vec<_>>(),
        "fixed": entries.iter().enumerate().filter(|(_, e)| e.fixed).map(|(z, _)| z).collect::<Vec<_>>(),
    });
    Ok(Output::new(text.trim_end().to_string(), rec, result))
}

fn q_record(name: &str, args: &QArgs, p: u64) -> OutputRecord {
    OutputRecord::new(name, method(args.oracle))
        .input("p", p)
        .input("q", &args.q)
        .input("n", args.n)
}

fn q_setup(args: &QArgs) -> CliResult<(u64, qiota::QParameter)> {
    let lit = input::parse(&args.q)?;
    let p = input::resolve_prime(args.p, &[&lit])?;
    Ok((p, input::parameter(&lit, p, args.n)?))
}

fn join(residues: &[u64]) -> String {
    residues.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cocycle(op: &CocycleOp) -> CliResult<Output> {
    match op {
        CocycleOp::Kernel(args) => {
            let (p, q) = q_setup(args)?;
            let rec = q_record("cocycle kernel", args, p);
            if args.oracle {
                let k = oracle::brute_period(p, oracle::residue_of(&q, args.n)?, args.n)?;
                return Ok(Output::new(k.to_string(), rec, json!({ "size": k.to_string() })));
            }
            let k = kernel_order(&q, args.n)?;
            let kind = match k {
                KernelOrder::Quotient(_) => "quotient",
                KernelOrder::InjectiveOnAll { .. } => "injective-on-all",
            };
            let size = k.size();
            Ok(Output::new(size.to_string(), rec, json!({ "kind": kind, "size": size.to_string() })))
        }
        CocycleOp::Image(args) => {
            let (p, q) = q_setup(args)?;
            let rec = q_record("cocycle image", args, p);
            if args.oracle {
                let image = oracle::brute_image(p, oracle::residue_of(&q, args.n)?, args.n)?;
                let text = format!("size: {}\nresidues: {}", image.len(), join(&image));
                return Ok(Output::new(text, rec, json!({ "size": image.len().to_string(), "residues": image })));
            }
            let image = image_description(&q, args.n)?;
            let cosets: Vec<String> = image.cosets().iter().map(|c| c.to_string()).collect();
            let text = format!("size: {}\ncosets: {}", image.size(), cosets.join(" ∪ "));
            let result = json!({
                "size": image.size().to_string(),
                "cosets": cosets,
                "covers_all": image.covers_all(),
            });
            Ok(Output::new(text, rec, result))
        }
        CocycleOp::Sum(args) => {
            let (p, q) = q_setup(args)?;
            let rec = q_record("cocycle sum", args, p);
            let s = if args.oracle {
                BigUint::from(oracle::brute_sum(p, oracle::residue_of(&q, args.n)?, args.n)?)
            } else {
                cocycle_sum(&q, args.n)?.residue().clone()
            };
            Ok(Output::new(s.to_string(), rec, json!({ "residue": s.to_string() })))
        }
        CocycleOp::Valuation { p, q, z, n } => {
            let q_lit = input::parse(q)?;
            let z_lit = input::parse(z)?;
            let p = input::resolve_prime(*p, &[&q_lit, &z_lit])?;
            let rec = OutputRecord::new("cocycle valuation", Method::Structural)
                .input("p", p)
                .input("q", q)
                .input("z", z);
            let qp = input::parameter(&q_lit, p, *n)?;
            let exponent = match z_lit.as_integer() {
                Some(k) => Exponent::Integer(k.clone()),
                None => Exponent::Padic(input::padic(&z_lit, p, input::own_precision(&z_lit, *n))?),
            };
            let v = iota_valuation(&qp, &exponent)?;
            Ok(Output::new(v.to_string(), rec, json!({ "valuation": valuation_json(v) })))
        }
    }
}

fn three_adic(q: &str, n: u32) -> CliResult<(Literal, qiota::QParameter)> {
    let lit = input::parse(q)?;
    let p = input::resolve_prime(Some(3), &[&lit])?;
    let qp = input::parameter(&lit, p, n)?;
    Ok((lit, qp))
}

fn fixed(op: &FixedOp) -> CliResult<Output> {
    match op {
        FixedOp::Enumerate(args) => {
            let (p, q) = q_setup(args)?;
            let rec = q_record("fixed enumerate", args, p);
            if args.oracle {
                let set = oracle::brute_fixed_points(&q, args.n)?;
                return Ok(Output::new(join(&set), rec, json!({ "count": set.len().to_string(), "residues": set })));
            }
            let set = enumerate_fixed_points(&q, args.n)?;
            let result = json!({
                "cosets": set.cosets().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "kind": set.kind().to_string(),
                "v0": set.v0(),
                "tau_exponent": set.tau_exponent(),
                "count": set.count().to_string(),
            });
            Ok(Output::new(set.to_string(), rec, result))
        }
        FixedOp::Count(args) => {
            let (p, q) = q_setup(args)?;
            let rec = q_record("fixed count", args, p);
            let count = if args.oracle {
                BigUint::from(oracle::brute_fixed_points(&q, args.n)?.len())
            } else {
                count_fixed_points(&q, args.n)?
            };
            Ok(Output::new(count.to_string(), rec, json!({ "count": count.to_string() })))
        }
        FixedOp::Classify { q, z, n } => {
            let rec = OutputRecord::new("fixed classify", Method::Structural)
                .input("q", q)
                .input("z", z)
                .input("n", n);
            let (_, qp) = three_adic(q, *n)?;
            let z_lit = input::parse(z)?;
            let zp = input::padic(&z_lit, 3, *n)?;
            let class = classify(&qp, &zp, *n)?;
            Ok(Output::new(class.to_string(), rec, json!({ "class": class.to_string() })))
        }
        FixedOp::Rooted { q, n } => {
            let rec = OutputRecord::new("fixed rooted", Method::Structural).input("q", q).input("n", n);
            let (_, qp) = three_adic(q, *n)?;
            match find_rooted(&qp, *n)? {
                Some(root) => {
                    let text = format!("{} (v0 = {})", root.z0, root.v0);
                    let result = json!({ "z0": padic_json(&root.z0), "v0": root.v0 });
                    Ok(Output::new(text, rec, result))
                }
                None => Ok(Output::new("none", rec, Value::Null)),
            }
        }
        FixedOp::Propagate { q, z0, n } => {
            let rec = OutputRecord::new("fixed propagate", Method::Structural)
                .input("q", q)
                .input("z0", z0)
                .input("n", n);
            let (_, qp) = three_adic(q, *n + 1)?;
            let z_lit = input::parse(z0)?;
            let zp = input::padic(&z_lit, 3, input::own_precision(&z_lit, *n))?;
            let c = propagate_rooted(&qp, &zp, *n)?;
            Ok(Output::new(c.to_string(), rec, json!({ "digit": c })))
        }
    }
}

fn cmd_phi(q: &str, precision: u32) -> CliResult<Output> {
    let rec = OutputRecord::new("phi", Method::Structural)
        .input("q", q)
        .input("precision", precision);
    let (_, qp) = three_adic(q, precision)?;
    let outcome = phi(&qp, precision)?;
    let z = outcome.residue();
    let (text, result) = match outcome {
        PhiOutcome::Rooted { v0, .. } => (
            z.to_string(),
            json!({ "kind": "rooted", "z": padic_json(&z), "v0": v0 }),
        ),
        PhiOutcome::Exceptional { branch, depth } => (
            format!("{z} (exceptional {branch} parameter to {depth} digits)"),
            json!({ "kind": "exceptional", "branch": branch.to_string(), "depth": depth, "z": padic_json(&z) }),
        ),
    };
    Ok(Output::new(text, rec, result))
}

fn cmd_psi(z: &str, precision: u32) -> CliResult<Output> {
    let rec = OutputRecord::new("psi", Method::Structural)
        .input("z", z)
        .input("precision", precision);
    let lit = input::parse(z)?;
    input::resolve_prime(Some(3), &[&lit])?;
    let zp = input::padic(&lit, 3, input::own_precision(&lit, precision.saturating_sub(1).max(1)))?;
    let q = psi(&zp, precision)?;
    Ok(Output::new(q.to_string(), rec, padic_json(&q)))
}

fn solve(z: &str, n: u32) -> CliResult<Output> {
    let rec = OutputRecord::new("solve", Method::Structural).input("z", z).input("n", n);
    let lit = input::parse(z)?;
    input::resolve_prime(Some(3), &[&lit])?;
    let zp = input::padic(&lit, 3, input::own_precision(&lit, n))?;
    let q = solve_q_for_z(&zp, n)?;
    Ok(Output::new(q.to_string(), rec, padic_json(&q)))
}

fn isometry(map: MapArg, x: &str, precision: u32) -> CliResult<Output> {
    let name = match map {
        MapArg::F => "f",
        MapArg::G => "g",
    };
    let rec = OutputRecord::new("isometry", Method::Structural)
        .input("map", name)
        .input("x", x)
        .input("precision", precision);
    let lit = input::parse(x)?;
    input::resolve_prime(Some(3), &[&lit])?;
    let xp = input::padic(&lit, 3, input::own_precision(&lit, precision))?;
    let value = match map {
        MapArg::F => f_map(&xp, precision)?,
        MapArg::G => g_map(&xp, precision)?,
    };
    Ok(Output::new(value.to_string(), rec, padic_json(&value)))
}
