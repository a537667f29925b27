//! Argument parsing, subcommand dispatch and report rendering.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use nillat_core::classify::{
    canon_g52, canon_g54, canon_g56, g4xr_construct, g4xr_validate, g52_lattice, g54_lattice, g56_equivalent,
    g56_lattice, isomorphism_search, s4_member, s6_member, split_abelian_factor, Automorphism, G4xRParams,
    G52Params, G54Canonical, G56Canonical, SearchOutcome,
};
use nillat_core::lattice::{UniformSubgroup, AUDIT_SEED};
use nillat_core::linalg::{hnf, snf, IntMatrix, Rational};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::census::{census, DEFAULT_ENTRY_BOUND};
use crate::json::*;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "nillat", version, about = "Exact computations with lattices in nilpotent Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Render the report as an aligned key/value table.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the closure audit (decimal or 0x-prefixed); NILLAT_SEED takes precedence.
    #[arg(long, global = true, value_parser = parse_seed)]
    seed: Option<u64>,
}

#[derive(Debug, clap::Args)]
struct Inputs {
    /// First input file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Further input files.
    files: Vec<PathBuf>,
}

impl Inputs {
    fn paths(&self) -> Vec<&Path> {
        self.input.iter().chain(&self.files).map(PathBuf::as_path).collect()
    }

    fn exactly(&self, n: usize) -> Result<Vec<Value>, CliError> {
        let paths = self.paths();
        if paths.len() != n {
            return Err(CliError::Usage(format!("expected {n} input file(s), got {}", paths.len())));
        }
        paths.into_iter().map(read_json).collect()
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix.
    Snf(Inputs),
    /// Hermite normal form (column operations) of a rational matrix.
    Hnf(Inputs),
    /// Product of two group elements.
    Mul(Inputs),
    /// Inverse of a group element.
    Inv(Inputs),
    /// Conjugate g h g⁻¹ of the second element by the first.
    Conj(Inputs),
    /// Malcev coordinates of an element relative to a lattice basis.
    Coords {
        #[arg(long)]
        lattice: PathBuf,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decide whether a lattice basis spans a subgroup.
    Verify {
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decide whether an element lies in a lattice.
    Member {
        #[arg(long)]
        lattice: PathBuf,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Rebase a lattice through the lower central series.
    Refine {
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Canonical parameters and witness automorphism.
    Canon {
        #[arg(long)]
        group: String,
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Decide whether two lattices are related by an automorphism.
    Isom {
        #[arg(long)]
        group: String,
        /// Coefficient bound for the automorphism search.
        #[arg(long, default_value_t = 2)]
        bound: u32,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Split off the Abelian factor of a lattice.
    Split {
        #[arg(long)]
        lattice: Option<PathBuf>,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Validate a parameter tuple and emit its lattice.
    ValidateParams {
        #[arg(long)]
        group: String,
        /// Comma-separated integers.
        #[arg(long)]
        params: String,
    },
    /// Enumerate canonical parameters up to a bound.
    Census {
        #[arg(long)]
        group: String,
        #[arg(long)]
        bound: u32,
        /// Largest diagonal entry of D (g5_4 and g5_6).
        #[arg(long, default_value_t = DEFAULT_ENTRY_BOUND)]
        entry_bound: u32,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    body: Value,
    positive: bool,
}

impl Report {
    fn ok(body: Value) -> Self {
        Self { body, positive: true }
    }

    fn verdict(body: Value, positive: bool) -> Self {
        Self { body, positive }
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => s.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let seed = match std::env::var("NILLAT_SEED") {
        Ok(s) => match parse_seed(&s) {
            Ok(seed) => seed,
            Err(e) => return failure(&CliError::Usage(format!("NILLAT_SEED: {e}"))),
        },
        Err(_) => cli.seed.unwrap_or(AUDIT_SEED),
    };
    let report = match dispatch(&cli.command, seed) {
        Ok(r) => r,
        Err(e) => return failure(&e),
    };
    let text = if cli.pretty {
        render_table(&report.body)
    } else {
        let mut s = report.body.to_string();
        s.push('\n');
        s
    };
    let code = if report.positive { 0 } else { 1 };
    match &cli.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(source) => failure(&CliError::Io { path: path.display().to_string(), source }),
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn lattice_input(lattice: &Option<PathBuf>, inputs: &Inputs, seed: u64) -> Result<UniformSubgroup, CliError> {
    let v = match lattice {
        Some(p) => {
            if !inputs.paths().is_empty() {
                return Err(CliError::Usage("unexpected extra input files".into()));
            }
            read_json(p)?
        }
        None => inputs.exactly(1)?.remove(0),
    };
    lattice_from_json(&v, seed)
}

fn dispatch(command: &Command, seed: u64) -> Result<Report, CliError> {
    match command {
        Command::Snf(inputs) => {
            let m = rat_matrix_from_json(&inputs.exactly(1)?[0])?;
            let m = m.to_integer().ok_or_else(|| CliError::Format("snf needs an integer matrix".into()))?;
            let s = snf(&m);
            Ok(Report::ok(json!({
                "divisors": s.divisors.iter().map(int_to_json).collect::<Vec<_>>(),
                "u": int_matrix_to_json(&s.u),
                "s": int_matrix_to_json(&s.s),
                "v": int_matrix_to_json(&s.v),
            })))
        }
        Command::Hnf(inputs) => {
            let m = rat_matrix_from_json(&inputs.exactly(1)?[0])?;
            let h = hnf(&m)?;
            Ok(Report::ok(json!({"h": rat_matrix_to_json(&h.h), "t": int_matrix_to_json(&h.t)})))
        }
        Command::Mul(inputs) => {
            let v = inputs.exactly(2)?;
            let (a, b) = (element_from_json(&v[0])?, element_from_json(&v[1])?);
            Ok(Report::ok(element_to_json(&a.mul(&b)?)))
        }
        Command::Inv(inputs) => Ok(Report::ok(element_to_json(&element_from_json(&inputs.exactly(1)?[0])?.inv()))),
        Command::Conj(inputs) => {
            let v = inputs.exactly(2)?;
            let (a, b) = (element_from_json(&v[0])?, element_from_json(&v[1])?);
            Ok(Report::ok(element_to_json(&a.conj(&b)?)))
        }
        Command::Coords { lattice, inputs } => {
            let l = lattice_from_json_unchecked(&read_json(lattice)?)?;
            let x = element_from_json(&inputs.exactly(1)?[0])?;
            let t = l.basis().malcev_coords(&x)?;
            let integral = t.iter().all(Rational::is_integer);
            Ok(Report::ok(json!({
                "algebra": l.algebra().name(),
                "coords": t.iter().map(rat_to_json).collect::<Vec<_>>(),
                "integral": integral,
            })))
        }
        Command::Verify { lattice, inputs } => {
            let v = match lattice {
                Some(p) => read_json(p)?,
                None => inputs.exactly(1)?.remove(0),
            };
            let l = lattice_from_json_unchecked(&v)?;
            let verified = l.verify_closure_with_seed(seed);
            Ok(Report::verdict(json!({"algebra": l.algebra().name(), "verified": verified}), verified))
        }
        Command::Member { lattice, inputs } => {
            let l = lattice_from_json(&read_json(lattice)?, seed)?;
            let x = element_from_json(&inputs.exactly(1)?[0])?;
            let member = l.contains(&x)?;
            Ok(Report::verdict(json!({"member": member}), member))
        }
        Command::Refine { lattice, inputs } => {
            let l = lattice_input(lattice, inputs, seed)?;
            let mut chain = l.algebra().lower_central_series();
            chain.reverse();
            chain.retain(|s| !s.is_zero() && s.dim() < l.algebra().dim());
            Ok(Report::ok(lattice_to_json(&l.basis_through_ideals(&chain)?)))
        }
        Command::Canon { group, lattice, inputs } => {
            let l = lattice_input(lattice, inputs, seed)?;
            require_group(&l, group)?;
            canon(group, &l)
        }
        Command::Isom { group, bound, inputs } => {
            let v = inputs.exactly(2)?;
            let (a, b) = (lattice_from_json(&v[0], seed)?, lattice_from_json(&v[1], seed)?);
            require_group(&a, group)?;
            require_group(&b, group)?;
            isom(group, &a, &b, *bound)
        }
        Command::Split { lattice, inputs } => {
            let l = lattice_input(lattice, inputs, seed)?;
            let s = split_abelian_factor(&l)?;
            Ok(Report::ok(json!({
                "r": s.r,
                "h": lattice_to_json(&s.h),
                "witness": rat_matrix_to_json(s.witness.matrix()),
            })))
        }
        Command::ValidateParams { group, params } => validate_params(group, params, seed),
        Command::Census { group, bound, entry_bound } => Ok(Report::ok(census(group, *bound, *entry_bound, seed)?)),
    }
}

fn require_group(l: &UniformSubgroup, group: &str) -> Result<(), CliError> {
    if l.algebra().name() != group {
        return Err(CliError::Usage(format!("lattice is in {}, not {group}", l.algebra().name())));
    }
    Ok(())
}

fn canon(group: &str, l: &UniformSubgroup) -> Result<Report, CliError> {
    let body = match group {
        "g5_2" => {
            let (c, w) = canon_g52(l)?;
            json!({"group": group, "r": [int_to_json(&c.r1), int_to_json(&c.r2)], "witness": rat_matrix_to_json(w.matrix())})
        }
        "g5_4" => {
            let (c, w) = canon_g54(l)?;
            json!({
                "group": group,
                "d": int_matrix_to_json(&c.d),
                "m": int_to_json(&c.m),
                "member": s4_member(&c),
                "witness": rat_matrix_to_json(w.matrix()),
            })
        }
        "g5_6" => {
            let (c, w) = canon_g56(l)?;
            json!({
                "group": group,
                "d": int_matrix_to_json(&c.d),
                "m": int_to_json(&c.m),
                "member": s6_member(&c),
                "witness": rat_matrix_to_json(w.matrix()),
            })
        }
        other => return Err(CliError::Usage(format!("canon is not available for {other}"))),
    };
    Ok(Report::ok(body))
}

fn found(group: &str, method: &str, w: &Automorphism) -> Report {
    Report::verdict(
        json!({"group": group, "verdict": "yes", "method": method, "witness": rat_matrix_to_json(w.matrix())}),
        true,
    )
}

fn not_found(group: &str, verdict: &str, method: &str) -> Report {
    Report::verdict(json!({"group": group, "verdict": verdict, "method": method}), false)
}

fn isom(group: &str, a: &UniformSubgroup, b: &UniformSubgroup, bound: u32) -> Result<Report, CliError> {
    let checked = |w: Automorphism, method: &str| -> Result<Report, CliError> {
        if !w.maps_onto(a, b) {
            return Err(nillat_core::Error::NotVerified.into());
        }
        Ok(found(group, method, &w))
    };
    match group {
        "g5_2" => {
            let ((ca, wa), (cb, wb)) = (canon_g52(a)?, canon_g52(b)?);
            if ca == cb {
                return checked(wb.inverse().compose(&wa), "canonical");
            }
            Ok(not_found(group, "no", "canonical"))
        }
        "g5_6" => {
            let ((ca, wa), (cb, wb)) = (canon_g56(a)?, canon_g56(b)?);
            if g56_equivalent(&ca, &cb)? {
                // R = ⟦Da,ma⟧⟦Db,mb⟧⁻¹ carries Γ_cb onto Γ_ca.
                let r = &ca.block().to_rational() * &cb.block().to_rational().inverse().expect("invertible");
                let r = Automorphism::new(a.algebra().clone(), r)?;
                return checked(wb.inverse().compose(&r.inverse()).compose(&wa), "equivalence");
            }
            search_report(group, a, b, bound, "unknown")
        }
        "g5_4" => {
            let ((ca, wa), (cb, wb)) = (canon_g54(a)?, canon_g54(b)?);
            if ca == cb {
                return checked(wb.inverse().compose(&wa), "canonical");
            }
            search_report(group, a, b, bound, "unknown")
        }
        _ => search_report(group, a, b, bound, "unknown"),
    }
}

fn search_report(group: &str, a: &UniformSubgroup, b: &UniformSubgroup, bound: u32, fallback: &str) -> Result<Report, CliError> {
    Ok(match isomorphism_search(a, b, bound)? {
        SearchOutcome::Found(w) => found(group, "search", &w),
        SearchOutcome::NotIsomorphic => not_found(group, "no", "invariants"),
        SearchOutcome::NotFoundWithinBound => not_found(group, fallback, "search"),
    })
}

fn parse_params(params: &str) -> Result<Vec<BigInt>, CliError> {
    params
        .split(',')
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| CliError::Format(format!("bad parameter {s:?}"))))
        .collect()
}

fn arity(p: &[BigInt], n: usize, group: &str) -> Result<(), CliError> {
    if p.len() != n {
        return Err(CliError::Usage(format!("{group} takes {n} parameters, got {}", p.len())));
    }
    Ok(())
}

fn validate_params(group: &str, params: &str, seed: u64) -> Result<Report, CliError> {
    let p = parse_params(params)?;
    let with_lattice = |valid: bool, l: Option<UniformSubgroup>| -> Report {
        let mut body = json!({"group": group, "valid": valid});
        if let Some(l) = l {
            let verified = l.verify_closure_with_seed(seed);
            let l = if verified { l.into_verified_with_seed(seed).expect("closed") } else { l };
            body["lattice"] = lattice_to_json(&l);
        }
        Report::verdict(body, valid)
    };
    match group {
        "g4xR" => {
            arity(&p, 3, group)?;
            let params = G4xRParams::new(p[0].clone(), p[1].clone(), p[2].clone());
            let valid = g4xr_validate(&params);
            Ok(with_lattice(valid, valid.then(|| g4xr_construct(&params)).transpose()?))
        }
        "g5_2" => {
            arity(&p, 3, group)?;
            match G52Params::new(p[0].clone(), p[1].clone(), p[2].clone()) {
                Ok(params) => Ok(with_lattice(true, Some(g52_lattice(&params)?))),
                Err(_) => Ok(with_lattice(false, None)),
            }
        }
        "g5_4" => {
            arity(&p, 10, group)?;
            let d = IntMatrix::new(3, 3, p[..9].to_vec())?;
            match G54Canonical::new(d, p[9].clone()) {
                Ok(c) => {
                    let valid = s4_member(&c);
                    Ok(with_lattice(valid, Some(g54_lattice(&c)?)))
                }
                Err(_) => Ok(with_lattice(false, None)),
            }
        }
        "g5_6" => {
            arity(&p, 8, group)?;
            let z = BigInt::from(0);
            let d = IntMatrix::new(
                4,
                4,
                vec![
                    p[0].clone(), p[1].clone(), p[2].clone(), z.clone(),
                    z.clone(), p[3].clone(), p[4].clone(), z.clone(),
                    z.clone(), z.clone(), p[5].clone(), z.clone(),
                    z.clone(), z.clone(), z, p[6].clone(),
                ],
            )?;
            match G56Canonical::new(d, p[7].clone()) {
                Ok(c) => {
                    let valid = s6_member(&c);
                    Ok(with_lattice(valid, Some(g56_lattice(&c)?)))
                }
                Err(_) => Ok(with_lattice(false, None)),
            }
        }
        other => Err(CliError::Usage(format!("validate-params is not available for {other}"))),
    }
}

/// One `path: value` line per scalar, with aligned values.
fn render_table(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            Value::Array(items) => {
                let cells: Vec<String> = items.iter().map(scalar).collect();
                out.push((prefix.into(), cells.join(" ")));
            }
            other => out.push((prefix.into(), scalar(other))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut rows = Vec::new();
    walk("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.into_iter().map(|(k, x)| format!("{k:<width$}  {x}\n")).collect()
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let outcome = run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}
