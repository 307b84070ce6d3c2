//! Command-line front end: `params`, `table`, `sweep` and `verify`.

use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::prime_power;
use crate::grs::{
    admissible_families, failure_points_bruteforce, validate_params, CodeError, CodeFamily,
    CodeFamilyParams, ParamError,
};
use crate::hull::{Exactness, HullComputation};
use crate::quantum::{record_from_hull, MdsStatus, QuantumCodeRecord, QuantumError};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    InvalidInput = 1,
    Mismatch = 2,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error("k range {range} lies outside [1, {n}]")]
    KRange { range: KRange, n: u64 },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        Exit::InvalidInput
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "grs-hull",
    version,
    about = "Hermitian hulls of GRS codes and EAQMDS parameters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the hull and quantum parameters of one code C(k).
    Params(ParamsArgs),
    /// Emit one row per k for a single family.
    Table(TableArgs),
    /// Emit rows for every admissible family of the given q values.
    Sweep(SweepArgs),
    /// Compare the closed-form c against the Gram-matrix rank.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Named example families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Q11,
    Q29,
    Q83,
}

impl Family {
    pub fn tuple(self) -> [u64; 5] {
        match self {
            Family::Q11 => [11, 5, 3, 4, 3],
            Family::Q29 => [29, 28, 5, 30, 2],
            Family::Q83 => [83, 41, 6, 84, 2],
        }
    }
}

/// Inclusive range of classical dimensions, written `a..b` or `a..=b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange {
    pub start: u64,
    pub end: u64,
}

impl KRange {
    pub fn iter(self) -> RangeInclusive<u64> {
        self.start..=self.end
    }

    fn clamp_to(self, n: u64) -> RangeInclusive<u64> {
        self.start.max(1)..=self.end.min(n)
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..=")
            .or_else(|| s.split_once(".."))
            .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
        let start = a
            .trim()
            .parse()
            .map_err(|e| format!("bad range start: {e}"))?;
        let end = b
            .trim()
            .parse()
            .map_err(|e| format!("bad range end: {e}"))?;
        if start > end {
            return Err(format!("empty range {s:?}"));
        }
        Ok(KRange { start, end })
    }
}

/// Which values of σ to include in sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaFilter {
    pub two: bool,
    pub three: bool,
    pub rho: bool,
    pub all: bool,
}

impl Default for SigmaFilter {
    fn default() -> Self {
        SigmaFilter {
            two: true,
            three: true,
            rho: true,
            all: false,
        }
    }
}

impl SigmaFilter {
    pub fn admits(&self, p: &CodeFamilyParams) -> bool {
        self.all
            || (self.two && p.sigma == 2)
            || (self.three && p.sigma == 3)
            || (self.rho && p.sigma == p.rho)
    }
}

impl FromStr for SigmaFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut f = SigmaFilter {
            two: false,
            three: false,
            rho: false,
            all: false,
        };
        for part in s.split(',') {
            match part.trim() {
                "2" => f.two = true,
                "3" => f.three = true,
                "rho" => f.rho = true,
                "all" => f.all = true,
                other => {
                    return Err(format!(
                        "unknown sigma choice {other:?} (use 2, 3, rho, all)"
                    ))
                }
            }
        }
        Ok(f)
    }
}

#[derive(Args, Debug)]
pub struct ParamsArgs {
    pub q: u64,
    pub lambda: u64,
    pub tau: u64,
    pub rho: u64,
    pub sigma: u64,
    pub k: u64,
    /// Output format; plain text when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also compute c as the rank of the Gram matrix.
    #[arg(long)]
    pub with_oracle: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// A named family instead of explicit parameters.
    #[arg(long, value_enum, conflicts_with = "params")]
    pub family: Option<Family>,
    /// q lambda tau rho sigma
    #[arg(num_args = 5, value_names = ["Q", "LAMBDA", "TAU", "RHO", "SIGMA"])]
    pub params: Vec<u64>,
    #[arg(long)]
    pub k_range: Option<KRange>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Append the Gram-matrix rank as an `oracle_c` column.
    #[arg(long)]
    pub with_oracle: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Comma separated prime powers.
    #[arg(long = "q", value_delimiter = ',', required = true)]
    pub q_list: Vec<u64>,
    #[arg(long)]
    pub k_range: Option<KRange>,
    /// Comma separated subset of 2, 3, rho (or `all`).
    #[arg(long, default_value = "2,3,rho")]
    pub sigma: SigmaFilter,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub with_oracle: bool,
    /// Skip oracle computations for families longer than this.
    #[arg(long, default_value_t = 2000)]
    pub max_n: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "q", value_delimiter = ',', required = true)]
    pub q_list: Vec<u64>,
    #[arg(long)]
    pub k_range: Option<KRange>,
    #[arg(long, default_value = "2,3,rho")]
    pub sigma: SigmaFilter,
    #[arg(long, default_value_t = 2000)]
    pub max_n: u64,
    /// Testing aid: shift L by this amount in the formula route only.
    #[arg(long, hide = true, default_value_t = 0, allow_hyphen_values = true)]
    pub inject_l_offset: i64,
}

/// One line of `table` / `sweep` output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub lambda: u64,
    pub tau: u64,
    pub rho: u64,
    pub sigma: u64,
    pub k: u64,
    #[serde(flatten)]
    pub record: QuantumCodeRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_c: Option<u64>,
}

fn bool_cell(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn mds_cell(s: MdsStatus) -> &'static str {
    match s {
        MdsStatus::Eaqmds => "true",
        MdsStatus::NotMds => "false",
        MdsStatus::Unknown => "unknown",
    }
}

fn write_rows(
    out: &mut dyn Write,
    rows: &[Row],
    format: Format,
    with_family: bool,
    with_oracle: bool,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Vec<&str> = Vec::new();
            if with_family {
                header.extend(["q", "lambda", "tau", "rho", "sigma"]);
            }
            header.extend(["k", "n", "K", "d", "c", "exact", "eaqmds"]);
            if with_oracle {
                header.push("oracle_c");
            }
            w.write_record(&header)?;
            for r in rows {
                let rec = &r.record;
                let mut cells: Vec<String> = Vec::new();
                if with_family {
                    cells.extend([rec.q, r.lambda, r.tau, r.rho, r.sigma].map(|x| x.to_string()));
                }
                cells.extend([r.k, rec.n, rec.dim, rec.d, rec.c].map(|x| x.to_string()));
                cells.push(bool_cell(rec.exactness.is_exact()).into());
                cells.push(mds_cell(rec.mds_status).into());
                if with_oracle {
                    cells.push(r.oracle_c.map_or_else(String::new, |c| c.to_string()));
                }
                w.write_record(&cells)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn oracle_ranks(family: &CodeFamily, ks: &[u64]) -> Vec<u64> {
    let gram = family.full_gram_matrix();
    ks.par_iter()
        .map(|&k| gram.leading(k as usize).rank(&family.field) as u64)
        .collect()
}

fn family_rows(
    params: &CodeFamilyParams,
    ks: RangeInclusive<u64>,
    with_oracle: bool,
) -> Result<Vec<Row>, CliError> {
    let ks: Vec<u64> = ks.collect();
    let oracle = if with_oracle {
        Some(oracle_ranks(&CodeFamily::new(*params)?, &ks))
    } else {
        None
    };
    ks.iter()
        .enumerate()
        .map(|(i, &k)| {
            let record = record_from_hull(&HullComputation::new(params, k))?;
            Ok(Row {
                lambda: params.lambda,
                tau: params.tau,
                rho: params.rho,
                sigma: params.sigma,
                k,
                record,
                oracle_c: oracle.as_ref().map(|o| o[i]),
            })
        })
        .collect()
}

fn cmd_params(args: &ParamsArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let params = validate_params(args.q, args.lambda, args.tau, args.rho, args.sigma)?;
    params.check_dimension(args.k)?;
    let hull = HullComputation::new(&params, args.k);
    let record = record_from_hull(&hull)?;
    let oracle = if args.with_oracle {
        Some(CodeFamily::new(params)?.hull_dimension_oracle(args.k)?.c)
    } else {
        None
    };

    #[derive(Serialize)]
    struct Report<'a> {
        params: &'a CodeFamilyParams,
        k: u64,
        hull: &'a HullComputation,
        hull_dim: u64,
        record: &'a QuantumCodeRecord,
        #[serde(skip_serializing_if = "Option::is_none")]
        oracle_c: Option<u64>,
    }

    match args.format {
        Some(Format::Json) => {
            let report = Report {
                params: &params,
                k: args.k,
                hull: &hull,
                hull_dim: hull.hull_dim(),
                record: &record,
                oracle_c: oracle,
            };
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        Some(Format::Csv) => {
            let row = Row {
                lambda: params.lambda,
                tau: params.tau,
                rho: params.rho,
                sigma: params.sigma,
                k: args.k,
                record,
                oracle_c: oracle,
            };
            write_rows(out, &[row], Format::Csv, true, oracle.is_some())?;
        }
        None => {
            let p = &params;
            writeln!(
                out,
                "family   q={} lambda={} tau={} rho={} sigma={}  (n={}, kappa1={}, kappa2={}, pi={})",
                p.q, p.lambda, p.tau, p.rho, p.sigma, p.n, p.kappa1, p.kappa2, p.pi
            )?;
            writeln!(out, "L        {}", p.l)?;
            let pt = |f: Option<crate::lattice::FirstPoint>| {
                f.map_or_else(|| "empty".to_string(), |f| format!("({},{})", f.d1, f.d2))
            };
            writeln!(
                out,
                "(T1,T2)  {}  second sublattice {}",
                pt(hull.t_first),
                pt(hull.t_first2)
            )?;
            writeln!(
                out,
                "(P1,P2)  {}  second sublattice {}",
                pt(hull.p_first),
                pt(hull.p_first2)
            )?;
            writeln!(out, "|F_<k|   {} (k = {})", hull.f_count, args.k)?;
            let exact = match hull.exactness {
                Exactness::Exact => "exact",
                Exactness::UpperBound => "upper bound",
            };
            writeln!(out, "c        {} ({exact})", hull.c())?;
            writeln!(out, "hull dim {}", hull.hull_dim())?;
            if let Some(c) = oracle {
                writeln!(out, "oracle c {c}")?;
            }
            let status = match record.mds_status {
                MdsStatus::Eaqmds => "EAQMDS",
                MdsStatus::NotMds => "not MDS",
                MdsStatus::Unknown => "MDS status unknown",
            };
            writeln!(out, "code     {record}  {status}")?;
        }
    }
    Ok(Exit::Success)
}

fn table_params(args: &TableArgs) -> Result<CodeFamilyParams, CliError> {
    let t = match (args.family, args.params.as_slice()) {
        (Some(f), []) => f.tuple(),
        (None, &[q, l, t, r, s]) => [q, l, t, r, s],
        _ => {
            return Err(CliError::Usage(
                "table needs either --family or the five parameters q lambda tau rho sigma".into(),
            ))
        }
    };
    Ok(validate_params(t[0], t[1], t[2], t[3], t[4])?)
}

fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<Exit, CliError> {
    let params = table_params(args)?;
    let range = args.k_range.unwrap_or(KRange {
        start: 1,
        end: params.n,
    });
    if range.start < 1 || range.end > params.n {
        return Err(CliError::KRange { range, n: params.n });
    }
    let rows = family_rows(&params, range.iter(), args.with_oracle)?;
    write_rows(out, &rows, args.format, false, args.with_oracle)?;
    Ok(Exit::Success)
}

fn require_prime_power(q: u64) -> Result<(), CliError> {
    match prime_power(q) {
        Some(_) => Ok(()),
        None => Err(ParamError::NotPrimePower(q).into()),
    }
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    let mut families = Vec::new();
    for &q in &args.q_list {
        require_prime_power(q)?;
        let fs: Vec<_> = admissible_families(q)
            .into_iter()
            .filter(|p| args.sigma.admits(p))
            .collect();
        if fs.is_empty() {
            writeln!(err, "note: q={q} has no admissible families")?;
        }
        families.extend(fs);
    }
    let mut skipped = Vec::new();
    if args.with_oracle {
        families.retain(|p| {
            let keep = p.n <= args.max_n;
            if !keep {
                skipped.push(*p);
            }
            keep
        });
    }
    for p in &skipped {
        writeln!(
            err,
            "warning: skipping q={} lambda={} tau={} rho={} sigma={}: n={} exceeds --max-n {}",
            p.q, p.lambda, p.tau, p.rho, p.sigma, p.n, args.max_n
        )?;
    }
    let per_family: Result<Vec<Vec<Row>>, CliError> = families
        .par_iter()
        .map(|p| {
            let ks = match args.k_range {
                Some(r) => r.clamp_to(p.n),
                None => 1..=p.n,
            };
            family_rows(p, ks, args.with_oracle)
        })
        .collect();
    let mut rows: Vec<Row> = per_family?.into_iter().flatten().collect();
    rows.sort_by_key(|r| (r.record.q, r.lambda, r.tau, r.rho, r.sigma, r.k));
    write_rows(out, &rows, args.format, true, args.with_oracle)?;
    Ok(Exit::Success)
}

/// One disagreement found by `verify`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub params: CodeFamilyParams,
    pub k: u64,
    pub formula_c: u64,
    pub oracle_c: u64,
    pub failure_points: u64,
    pub exactness: Exactness,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "MISMATCH q={} lambda={} tau={} rho={} sigma={} L={} k={}: formula c={} oracle c={} |F_<k|={} ({:?})",
            p.q,
            p.lambda,
            p.tau,
            p.rho,
            p.sigma,
            p.l,
            self.k,
            self.formula_c,
            self.oracle_c,
            self.failure_points,
            self.exactness
        )
    }
}

/// Result of checking one family over a range of k.
#[derive(Clone, Debug, Default)]
pub struct FamilyCheck {
    pub checked: u64,
    pub mismatches: Vec<Mismatch>,
}

/// Compares the closed-form c (using `formula_params`, normally equal to
/// `params`) with the Gram rank and the failure-point count.
///
/// Inside the exact range the three must agree; outside it the Gram rank
/// must not exceed the formula.
pub fn check_family(
    params: &CodeFamilyParams,
    formula_params: &CodeFamilyParams,
    ks: RangeInclusive<u64>,
) -> Result<FamilyCheck, CliError> {
    let family = CodeFamily::new(*params)?;
    let ks: Vec<u64> = ks.collect();
    let ranks = oracle_ranks(&family, &ks);
    let fps = failure_points_bruteforce(params, params.n);
    let mut check = FamilyCheck::default();
    for (&k, &oracle_c) in ks.iter().zip(&ranks) {
        let hull = HullComputation::new(formula_params, k);
        let failure_points = fps.iter().filter(|&&(a, b)| a < k && b < k).count() as u64;
        let ok = hull.f_count == failure_points
            && match hull.exactness {
                Exactness::Exact => oracle_c == hull.f_count,
                Exactness::UpperBound => oracle_c <= hull.f_count,
            };
        check.checked += 1;
        if !ok {
            check.mismatches.push(Mismatch {
                params: *formula_params,
                k,
                formula_c: hull.f_count,
                oracle_c,
                failure_points,
                exactness: hull.exactness,
            });
        }
    }
    Ok(check)
}

fn cmd_verify(
    args: &VerifyArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Exit, CliError> {
    let mut families = Vec::new();
    for &q in &args.q_list {
        require_prime_power(q)?;
        let fs: Vec<_> = admissible_families(q)
            .into_iter()
            .filter(|p| args.sigma.admits(p))
            .collect();
        if fs.is_empty() {
            writeln!(out, "q={q}: no admissible families")?;
        }
        for p in fs {
            if p.n > args.max_n {
                writeln!(
                    err,
                    "warning: skipping q={} lambda={} tau={} rho={} sigma={}: n={} exceeds --max-n {}",
                    p.q, p.lambda, p.tau, p.rho, p.sigma, p.n, args.max_n
                )?;
            } else {
                families.push(p);
            }
        }
    }
    let results: Result<Vec<FamilyCheck>, CliError> = families
        .par_iter()
        .map(|p| {
            let shifted = (p.l as i64 + args.inject_l_offset).max(0) as u64;
            let ks = match args.k_range {
                Some(r) => r.clamp_to(p.n),
                None => 1..=p.n,
            };
            check_family(p, &p.with_l(shifted), ks)
        })
        .collect();
    let results = results?;
    let checked: u64 = results.iter().map(|r| r.checked).sum();
    let mut mismatches = 0;
    for m in results.iter().flat_map(|r| &r.mismatches) {
        writeln!(out, "{m}")?;
        mismatches += 1;
    }
    writeln!(
        out,
        "verified {checked} instances across {} families: {mismatches} mismatches",
        families.len()
    )?;
    Ok(if mismatches == 0 {
        Exit::Success
    } else {
        Exit::Mismatch
    })
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<Exit, CliError> {
    match &cli.command {
        Command::Params(a) => cmd_params(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
    }
}
