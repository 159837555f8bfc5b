//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a mathematical check failed on a concrete
//! instance, 2 usage error (bad flags, non-prime `p`, malformed sets,
//! violated preconditions).

use std::fmt::Write as _;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sumset_core::explore::{Mode, SearchSpec, DEFAULT_BUDGET};
use sumset_core::fourier::uncertainty_trials;
use sumset_core::proof::trace_theorem2;
use sumset_core::residue::{bound_table, DEFAULT_FIELD_CEILING, MAX_SET_PRIME};
use sumset_core::witness::{construct_witness, verify_witness};
use sumset_core::{Error, PrimeModulus, ResidueSet, DEFAULT_SEED};

use crate::parallel::{run_conjecture_scan, run_search};
use crate::schema::{
    BoundsJson, ConjectureCellJson, ScanJson, SearchJson, SumsetJson, TraceJson, UncertaintyJson, WitnessJson,
};

/// Environment variable overriding the prime ceiling.
pub const PRIME_CEILING_ENV: &str = "SUMSET_PRIME_CEILING";

#[derive(Debug, Parser)]
#[command(
    name = "sumset",
    version,
    about = "Restricted sumsets over Z/pZ: bounds, exact Fourier witnesses, proof traces, searches"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Largest prime accepted (defaults: 31 for exact field work, 61 for set work).
    #[arg(long, global = true, env = PRIME_CEILING_ENV)]
    pub max_prime: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Debug, Args)]
pub struct Sizes {
    /// Prime modulus
    #[arg(long)]
    pub p: u64,
    /// |A|
    #[arg(long)]
    pub a_size: usize,
    /// |B|
    #[arg(long)]
    pub b_size: usize,
    /// |S|
    #[arg(long, default_value_t = 0)]
    pub s_size: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form lower bounds for given set sizes.
    Bounds(Sizes),
    /// The restricted sumset C = {a+b : a∈A, b∈B, a−b∉S}.
    Sumset {
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Set A, e.g. 0,1,3
        #[arg(long)]
        a: String,
        /// Set B
        #[arg(long)]
        b: String,
        /// Excluded differences S (may be empty)
        #[arg(long, default_value = "")]
        s: String,
    },
    /// Random trials of |supp f| + |supp f̂| ≥ p + 1.
    Uncertainty {
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Number of random functions
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// A function with supp f = A and supp f̂ = B.
    Witness {
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Set A, e.g. 0,1,3
        #[arg(long)]
        a: String,
        /// Set B
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Checked run of the Fourier lower-bound argument on one instance.
    Trace {
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Set A, e.g. 0,1,3
        #[arg(long)]
        a: String,
        /// Set B
        #[arg(long)]
        b: String,
        /// Excluded differences S (may be empty)
        #[arg(long, default_value = "")]
        s: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Least |C| over all configurations of the given sizes.
    Search {
        #[command(flatten)]
        sizes: Sizes,
        /// Enumerate every configuration (the default).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Draw this many random configurations instead.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED, requires = "samples")]
        seed: u64,
        /// Scan every configuration instead of one per symmetry class.
        #[arg(long)]
        no_symmetry: bool,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Refuse exhaustive scans above this many configurations.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Conjecture evidence table over all size cells up to |S| = max-s.
    Scan {
        /// Prime modulus
        #[arg(long)]
        p: u64,
        /// Largest |S| to tabulate
        #[arg(long)]
        max_s: usize,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_check_failure() {
            Failure::Check(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                return Outcome { code: 0, stdout: e.render().to_string(), stderr: String::new() };
            }
            return Outcome { code: 2, stdout: String::new(), stderr: format!("{}\n", one_line(&e)) };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Check(msg)) => {
            Outcome { code: 1, stdout: String::new(), stderr: format!("check failed: {msg}\n") }
        }
    }
}

/// First paragraph of a clap diagnostic, joined onto a single line.
fn one_line(e: &clap::Error) -> String {
    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
        return "error: no subcommand given (try --help)".to_string();
    }
    let text = e.render().to_string();
    let words: Vec<&str> = text.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
    words.join(" ")
}

fn set_prime(cli: &Cli, p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::with_ceiling(p, cli.max_prime.unwrap_or(MAX_SET_PRIME))?)
}

fn field_prime(cli: &Cli, p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::with_ceiling(p, cli.max_prime.unwrap_or(DEFAULT_FIELD_CEILING))?)
}

fn parse_set(p: PrimeModulus, name: &str, literal: &str) -> Result<ResidueSet, Failure> {
    ResidueSet::parse(p, literal).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Space-separated members; CSV cells never need quoting.
fn cell(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn dispatch(cli: &Cli) -> Result<(i32, String), Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Bounds(sz) => {
            let p = set_prime(cli, sz.p)?;
            let b = bound_table(p, sz.a_size, sz.b_size, sz.s_size)?;
            let out = match fmt {
                Format::Json => json(&BoundsJson::from(&b)),
                Format::Csv => format!(
                    "p,a_size,b_size,s_size,cd,eh,thm2,pan_sun,clamped\n{p},{},{},{},{},{},{},{},{}\n",
                    sz.a_size, sz.b_size, sz.s_size, b.cd, opt(b.eh), b.thm2, b.pan_sun, b.clamped
                ),
                Format::Human => format!(
                    "p = {p}, |A| = {}, |B| = {}, |S| = {}\n  Cauchy-Davenport  {}\n  Erdos-Heilbronn   {}\n  restricted bound  {}\n  |A|+|B|-|S|-2     {}\n{}",
                    sz.a_size, sz.b_size, sz.s_size, b.cd,
                    b.eh.map_or("n/a (|A| != |B|)".to_string(), |v| v.to_string()),
                    b.thm2, b.pan_sun,
                    if b.clamped { "  (negative raw values clamped to 0)\n" } else { "" }
                ),
            };
            Ok((0, out))
        }
        Command::Sumset { p, a, b, s } => {
            let p = set_prime(cli, *p)?;
            let (a, b, s) = (parse_set(p, "a", a)?, parse_set(p, "b", b)?, parse_set(p, "s", s)?);
            let c = a.restricted_sumset(&b, &s)?;
            let bounds = bound_table(p, a.len(), b.len(), s.len())?;
            let report = SumsetJson {
                p: p.get(),
                a: a.to_vec(),
                b: b.to_vec(),
                s: s.to_vec(),
                c: c.to_vec(),
                size: c.len(),
                bounds: (&bounds).into(),
                thm2_bound: bounds.thm2,
                tight: c.len() == bounds.thm2 as usize,
            };
            // Only nonempty A, B fall under the bound.
            let violated = !a.is_empty() && !b.is_empty() && c.len() < bounds.thm2 as usize;
            let out = match fmt {
                Format::Json => json(&report),
                Format::Csv => format!(
                    "p,a,b,s,c,size,thm2_bound,tight\n{},{},{},{},{},{},{},{}\n",
                    report.p,
                    cell(&report.a),
                    cell(&report.b),
                    cell(&report.s),
                    cell(&report.c),
                    report.size,
                    report.thm2_bound,
                    report.tight
                ),
                Format::Human => format!(
                    "C = {c}, |C| = {}, bound {}{}\n",
                    c.len(),
                    bounds.thm2,
                    if report.tight { " (tight)" } else { "" }
                ),
            };
            if violated {
                return Err(Failure::Check(format!("|C| = {} is below the bound {}", c.len(), bounds.thm2)));
            }
            Ok((0, out))
        }
        Command::Uncertainty { p, trials, seed } => {
            let p = field_prime(cli, *p)?;
            let t = uncertainty_trials(p, *trials, *seed)?;
            let report = UncertaintyJson::from(&t);
            let out = match fmt {
                Format::Json => json(&report),
                Format::Csv => format!(
                    "p,seed,trials,violations,min_lhs\n{},{},{},{},{}\n",
                    t.p,
                    t.seed,
                    t.trials,
                    t.violations,
                    opt(t.min_lhs)
                ),
                Format::Human => format!(
                    "p = {}: {} trials, {} violations, smallest |supp f| + |supp f^| = {}\n",
                    t.p,
                    t.trials,
                    t.violations,
                    opt(t.min_lhs)
                ),
            };
            Ok((if t.violations == 0 { 0 } else { 1 }, out))
        }
        Command::Witness { p, a, b, seed } => {
            let p = field_prime(cli, *p)?;
            let (a, b) = (parse_set(p, "a", a)?, parse_set(p, "b", b)?);
            let f = construct_witness(p, &a, &b, *seed)?;
            let verified = verify_witness(&f, &a, &b);
            let out = match fmt {
                Format::Json => json(&WitnessJson::new(p, *seed, &a, &b, &f, verified)),
                Format::Csv => {
                    let f_hat = f.dft();
                    let mut s = String::from("x,in_a,in_b,f,f_hat\n");
                    for x in 0..p.get() {
                        let _ = writeln!(
                            s,
                            "{x},{},{},{},{}",
                            a.contains(x),
                            b.contains(x),
                            f.at(x.into()),
                            f_hat.at(x.into())
                        );
                    }
                    s
                }
                Format::Human => {
                    let f_hat = f.dft();
                    let mut s =
                        format!("supp f = {}, supp f^ = {}, verified = {verified}\n", f.support(), f_hat.support());
                    for x in 0..p.get() {
                        let _ = writeln!(s, "  f({x}) = {}    f^({x}) = {}", f.at(x.into()), f_hat.at(x.into()));
                    }
                    s
                }
            };
            Ok((if verified { 0 } else { 1 }, out))
        }
        Command::Trace { p, a, b, s, seed } => {
            let p = field_prime(cli, *p)?;
            let (a, b, s) = (parse_set(p, "a", a)?, parse_set(p, "b", b)?, parse_set(p, "s", s)?);
            let r = trace_theorem2(p, &a, &b, &s, *seed)?;
            let out = match fmt {
                Format::Json => json(&TraceJson::new(&r, *seed)),
                Format::Csv => {
                    let mut s = String::from("step,name,passed\n");
                    for (i, c) in r.checks.iter().enumerate() {
                        let _ = writeln!(s, "{},{},{}", i + 1, c.name, c.passed);
                    }
                    s
                }
                Format::Human => {
                    let mut s = format!(
                        "k = {}, l = {}, A^ = {}, B^ = {}{}\n",
                        r.context.k,
                        r.context.l,
                        r.context.a_hat,
                        r.context.b_hat,
                        if r.context.swapped { " (A, B swapped, S negated)" } else { "" }
                    );
                    for c in &r.checks {
                        let _ = writeln!(s, "  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
                    }
                    let _ =
                        writeln!(s, "branch {}: |C| = {} >= {}", r.branch.name(), r.actual_c.len(), r.derived_bound);
                    s
                }
            };
            let passed = r.checks.iter().all(|c| c.passed);
            Ok((if passed { 0 } else { 1 }, out))
        }
        Command::Search { sizes, exhaustive: _, samples, seed, no_symmetry, jobs, budget, timings } => {
            let p = set_prime(cli, sizes.p)?;
            let mode = match samples {
                Some(count) => Mode::Sampled { count: *count, seed: *seed },
                None => Mode::Exhaustive,
            };
            let spec = SearchSpec {
                p,
                n_a: sizes.a_size,
                n_b: sizes.b_size,
                n_s: sizes.s_size,
                mode,
                symmetry_reduction: !no_symmetry && mode == Mode::Exhaustive,
                workers: *jobs,
            };
            let start = Instant::now();
            let (report, _) = run_search(&spec, *budget)?;
            let elapsed = timings.then(|| start.elapsed().as_millis() as u64);
            let doc = SearchJson::new(&report, elapsed);
            let out = match fmt {
                Format::Json => json(&doc),
                Format::Csv => {
                    let mut s = String::from("p,a_size,b_size,s_size,min_c,a,b,s,c_size,thm2,pan_sun,tight_thm2\n");
                    for w in &doc.extremal_witnesses {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{},{},{},{},{},{}",
                            p,
                            spec.n_a,
                            spec.n_b,
                            spec.n_s,
                            doc.min_c,
                            cell(&w.a),
                            cell(&w.b),
                            cell(&w.s),
                            w.c.len(),
                            doc.bounds.thm2,
                            doc.bounds.pan_sun,
                            doc.tight_thm2
                        );
                    }
                    s
                }
                Format::Human => {
                    let mut s = format!(
                        "min |C| = {}{} over {} configurations; bound {} ({}tight)\n",
                        doc.min_c,
                        if doc.upper_bound_only { " (upper bound, sampled)" } else { "" },
                        doc.configs_scanned,
                        doc.bounds.thm2,
                        if doc.tight_thm2 { "" } else { "not " }
                    );
                    for w in &doc.extremal_witnesses {
                        let _ = writeln!(s, "  A = {:?}, B = {:?}, S = {:?}, C = {:?}", w.a, w.b, w.s, w.c);
                    }
                    s
                }
            };
            Ok((0, out))
        }
        Command::Scan { p, max_s, jobs, budget } => {
            let p = set_prime(cli, *p)?;
            if *jobs == 0 {
                return Err(Failure::Usage("--jobs must be positive".into()));
            }
            let cells = run_conjecture_scan(p, *max_s, *jobs, *budget)?;
            let doc =
                ScanJson { p: p.get(), max_s: *max_s, cells: cells.iter().map(ConjectureCellJson::from).collect() };
            let out = match fmt {
                Format::Json => json(&doc),
                Format::Csv | Format::Human => scan_csv(&doc),
            };
            Ok((0, out))
        }
    }
}

/// Header: `p,a_size,b_size,s_size,min_c,min_c_a_ne_b,thm2,pan_sun,strengthened_bound,s_even,s_nonempty_proper,all_meets_strengthened,a_ne_b_meets_strengthened,configs_scanned`.
pub fn scan_csv(doc: &ScanJson) -> String {
    let mut s = String::from(
        "p,a_size,b_size,s_size,min_c,min_c_a_ne_b,thm2,pan_sun,strengthened_bound,s_even,s_nonempty_proper,all_meets_strengthened,a_ne_b_meets_strengthened,configs_scanned\n",
    );
    for c in &doc.cells {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            doc.p,
            c.a_size,
            c.b_size,
            c.s_size,
            c.min_c,
            opt(c.min_c_a_ne_b),
            c.thm2,
            c.pan_sun,
            c.strengthened_bound,
            c.s_even,
            c.s_nonempty_proper,
            c.all_meets_strengthened,
            opt(c.a_ne_b_meets_strengthened),
            c.configs_scanned
        );
    }
    s
}
