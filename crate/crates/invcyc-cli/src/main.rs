//! Command-line front end for the invcyc library: single-coefficient
//! queries, full polynomial dumps, height and flatness queries, family
//! search with CSV/JSON export, the q = tp + 1 progressions, and the
//! cross-engine verification sweep.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 overflow or
//! degree budget exceeded.

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use invcyc::coeffengine::{c_coeff, c_trivial_case, EvalMethod};
use invcyc::heightflat::{h_witnesses, h_witnesses_with_oracle, is_flat};
use invcyc::numtheory::{is_prime, FamilyTriple};
use invcyc::polyoracle::{inverse_cyclotomic, psi_product_form};
use invcyc::search::{
    export, export_to_writer, flat_count_table, min_ratio_experiment, search_records, tp_family,
    ExportFormat,
};
use invcyc::verify::verify_sweep;
use invcyc::Error;

#[derive(Parser)]
#[command(
    name = "invcyc",
    version,
    about = "Coefficients, heights and flatness of inverse ternary cyclotomic polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Engine choice for single-coefficient queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed form, O(1) arithmetic per coefficient.
    Fast,
    /// Direct summation over the auxiliary-factor terms.
    Sum,
    /// Build the full polynomial and read the coefficient off it.
    Oracle,
}

impl From<Method> for EvalMethod {
    fn from(method: Method) -> Self {
        match method {
            Method::Fast => EvalMethod::ClosedForm,
            Method::Sum => EvalMethod::Summation,
            Method::Oracle => EvalMethod::Oracle,
        }
    }
}

/// Export format for `search`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficient of x^m in Psi_pqr.
    #[command(allow_negative_numbers = true)]
    Coeff {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        #[arg(short)]
        r: i64,
        /// Exponent of the coefficient to print.
        #[arg(short)]
        m: i64,
        /// Evaluation engine.
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
    },
    /// Print a whole inverse polynomial, by index n or by p, q, r.
    #[command(group(ArgGroup::new("source").required(true).args(["n", "p"])))]
    Poly {
        /// Index n >= 2 of Psi_n = (x^n - 1) / Phi_n.
        #[arg(short)]
        n: Option<u64>,
        /// First of three pairwise coprime moduli (product form).
        #[arg(short, requires = "q")]
        p: Option<u64>,
        #[arg(short, requires = "r")]
        q: Option<u64>,
        #[arg(short, requires = "p")]
        r: Option<u64>,
        /// Print every coefficient on its own line instead of sparse terms.
        #[arg(long)]
        dense: bool,
    },
    /// Print the height C of Psi_pqr for a family triple.
    Height {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        #[arg(short)]
        r: i64,
        /// Also build the full polynomial and check the formula against it.
        #[arg(long)]
        verify: bool,
    },
    /// Print the flatness verdict and the four conditions for a family triple.
    Flat {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        #[arg(short)]
        r: i64,
    },
    /// Enumerate all family members r for a pair (p, q) and export records.
    Search {
        #[arg(short)]
        p: i64,
        #[arg(short)]
        q: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compute each height from the full polynomial.
        #[arg(long)]
        oracle: bool,
    },
    /// The constructive family q = tp + 1: one descriptor, or a scan.
    #[command(group(ArgGroup::new("mode").required(true).args(["t", "limit_t"])))]
    Family {
        #[arg(short)]
        p: i64,
        /// Describe the single family q = t*p + 1 and list its members.
        #[arg(short)]
        t: Option<i64>,
        /// Scan all t up to this bound: flat counts per family, plus the
        /// minimum-ratio experiment for p > 5.
        #[arg(long)]
        limit_t: Option<i64>,
    },
    /// Cross-check every engine on all family triples with pqr <= N.
    Verify {
        #[arg(long)]
        max_pqr: i64,
        /// Worker threads for the sweep (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (e.g. `invcyc search ... | head`) instead
    // of panicking: std ignores SIGPIPE, so restore the default disposition.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version surface here but are not usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_class(&e))
        }
    }
}

/// Map library errors onto the documented exit codes.
fn exit_class(e: &Error) -> u8 {
    match e {
        Error::Overflow { .. } | Error::DegreeBudget { .. } => 3,
        _ => 2,
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Coeff { p, q, r, m, method } => coeff(p, q, r, m, method)?,
        Command::Poly { n, p, q, r, dense } => {
            let poly = match n {
                Some(n) => inverse_cyclotomic(n)?,
                None => {
                    let (p, q, r) = (p.unwrap(), q.unwrap(), r.unwrap());
                    psi_product_form(p, q, r)?
                }
            };
            if dense {
                for c in poly.coeffs() {
                    println!("{c}");
                }
            } else {
                println!("{poly}");
            }
        }
        Command::Height { p, q, r, verify } => {
            let t = FamilyTriple::new(p, q, r)?;
            if verify {
                let report = h_witnesses_with_oracle(&t)?;
                println!("C={} verified", report.c_formula);
            } else {
                let report = h_witnesses(&t)?;
                println!("C={}", report.c_formula);
            }
        }
        Command::Flat { p, q, r } => {
            let t = FamilyTriple::new(p, q, r)?;
            let v = is_flat(&t);
            println!(
                "flat={} conditions={},{},{},{}",
                u8::from(v.flat),
                u8::from(v.cond_a),
                u8::from(v.cond_b),
                u8::from(v.cond_c),
                u8::from(v.cond_d)
            );
        }
        Command::Search {
            p,
            q,
            format,
            out,
            oracle,
        } => {
            let records = search_records(p, q, oracle)?;
            let format = match format {
                Format::Csv => ExportFormat::Csv,
                Format::Json => ExportFormat::Json,
            };
            match out {
                Some(path) => export(&records, format, &path)?,
                None => {
                    let mut stdout = io::stdout().lock();
                    export_to_writer(&records, format, &mut stdout).map_err(|source| {
                        Error::Io {
                            path: "<stdout>".into(),
                            source,
                        }
                    })?;
                }
            }
        }
        Command::Family { p, t, limit_t } => match (t, limit_t) {
            (Some(t), _) => {
                let family = tp_family(p, t)?;
                println!(
                    "q={} progression_start={} step={} limit={}",
                    family.q, family.progression_start, family.step, family.limit
                );
                for record in family.member_records(false)? {
                    println!(
                        "r={} alpha={} beta={} flat={} C={}",
                        record.r,
                        record.alpha,
                        record.beta,
                        u8::from(record.flat),
                        record.c_formula
                    );
                }
            }
            (None, Some(limit)) => {
                for row in flat_count_table(p, limit)? {
                    println!(
                        "t={} q={} flat_count={} estimate={:.1}",
                        row.t, row.q, row.flat_count, row.progression_estimate
                    );
                }
                if p > 5 {
                    match min_ratio_experiment(p, limit)? {
                        Some(result) => println!(
                            "min_ratio r={} q={} ratio={}/{} target_met={}",
                            result.best.r,
                            result.best.q,
                            result.best.ratio_num,
                            result.best.ratio_den,
                            u8::from(result.met_target)
                        ),
                        None => println!("min_ratio none"),
                    }
                }
            }
            (None, None) => unreachable!("clap enforces the mode group"),
        },
        Command::Verify { max_pqr, jobs } => {
            if let Some(jobs) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build_global()
                    .map_err(|e| Error::InternalCheck {
                        what: format!("thread pool: {e}"),
                    })?;
            }
            let report = verify_sweep(max_pqr);
            println!(
                "triples={} coefficients={}",
                report.triples, report.coefficients
            );
            if !report.ok() {
                for mismatch in report.mismatches.iter().take(20) {
                    println!("mismatch {mismatch}");
                }
                return Ok(ExitCode::from(2));
            }
            println!("ok");
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// The coeff subcommand: family triples use the selected engine; r past
/// phi(pq) routes to the factorization engine with a note on stderr.
fn coeff(p: i64, q: i64, r: i64, m: i64, method: Method) -> Result<(), Error> {
    for &value in &[p, q, r] {
        if value < 0 || !is_prime(value as u64) {
            return Err(Error::NotPrime { value });
        }
    }
    if !(3 <= p && p < q && q < r) {
        return Err(Error::BadOrdering { p, q, r });
    }
    let phi_pq = (p - 1)
        .checked_mul(q - 1)
        .ok_or(Error::Overflow { context: "phi(pq)" })?;
    let value = if r > phi_pq {
        eprintln!("note: r = {r} exceeds phi(pq) = {phi_pq}; using the factorization engine");
        match method {
            Method::Oracle => {
                let overflow = || Error::Overflow { context: "p*q*r" };
                let n = p
                    .checked_mul(q)
                    .and_then(|pq| pq.checked_mul(r))
                    .ok_or_else(overflow)?;
                let psi = inverse_cyclotomic(n as u64)?;
                let deg = psi.degree().expect("Psi is nonzero") as i64;
                if m < 0 || m > deg {
                    return Err(Error::OutOfRange {
                        what: "m",
                        value: m,
                        lo: 0,
                        hi: deg,
                    });
                }
                psi.coeff(m)
            }
            _ => c_trivial_case(p, q, r, m)?,
        }
    } else {
        let t = FamilyTriple::new(p, q, r)?;
        c_coeff(&t, m, method.into())?
    };
    println!("{value}");
    Ok(())
}
