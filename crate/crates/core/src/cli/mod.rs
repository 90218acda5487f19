//! Command-line frontend.
//!
//! Every subcommand produces a serializable report. JSON output wraps it as
//! `{"schema": 1, "command": ..., "passed": ..., "report": ...}`.

mod sweep;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::characters::{power_sum, symmetry_check, verify_power_sum_identity, IdentityReport, MultiPoly};
use crate::complexes::{
    build_nm, cohomology, equivariance_check, frobenius_comparison, homotopy_check, ses_check, CohomologyReport,
    EquivarianceReport, FrobeniusComparison, HomotopyReport, SesReport, DEFAULT_SEED,
};
use crate::error::{Error, Result};
use crate::ffield::Prime;
use crate::ktheory::{
    adams_composition_check, adams_grayson, euler_data, frobenius_adams_check, EulerData, FrobeniusAdamsReport,
    K0Class,
};
use crate::schur::{HookModule, HookShape};

pub use sweep::{run_sweep, SweepReport, SweepRow};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_M: usize = 12;
pub const MAX_N: usize = 6;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    CheckFailed = 1,
    Invalid = 2,
    SizeLimit = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::SizeLimit { .. } => ExitStatus::SizeLimit,
            Error::Invariant(_) => ExitStatus::CheckFailed,
            _ => ExitStatus::Invalid,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    /// Only meaningful for `sweep`; other commands fall back to JSON.
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hookschur", version, about = "Hook Schur modules and the complex N_m(V) over F_p")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ComplexArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build N_m(V): term dimensions, differential ranks, d∘d = 0.
    Complex(ComplexArgs),
    /// Cohomology of N_m(V) against F^p S_{(m/p-i,1^i)}(V), with Euler characteristics.
    Cohomology(ComplexArgs),
    /// Dimension and character of a hook module.
    Character {
        /// Hook shape `a,b` meaning (a,1^b).
        #[arg(long, value_parser = parse_shape)]
        shape: HookShape,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// p_m = Σ (-1)^i s_{(m-i,1^i)} in n variables.
    Identity {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// ψ^k of the split class v_1 + ⋯ + v_n, optionally checking ψ^k ∘ ψ^l = ψ^{kl}.
    Adams {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        l: Option<i64>,
        #[arg(long)]
        n: usize,
    },
    /// Contracting homotopy of L_m(V, v_ℓ) and the sequence L_m → N_m(V) → N_m(V').
    Homotopy {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        ell: usize,
    },
    /// Random GL_n(F_p) elements against the differentials of N_m(V).
    Equivariance {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Cohomology, Frobenius comparison and identity over a grid of (m, p, n).
    Sweep {
        #[arg(long, default_value_t = 9)]
        max_m: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u32>,
    },
}

fn parse_shape(s: &str) -> std::result::Result<HookShape, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("arm: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("leg: {e}"))?;
    Ok(HookShape::new(a, b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub passed: bool,
    pub report: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSummary {
    pub degree: usize,
    pub shape: HookShape,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSummary {
    pub m: usize,
    pub n: usize,
    pub p: Prime,
    pub terms: Vec<TermSummary>,
    pub term_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub d_squared_zero: bool,
    pub preserves_multidegree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyCommandReport {
    pub cohomology: CohomologyReport,
    pub frobenius: FrobeniusComparison,
    pub euler: EulerData,
    pub adams: FrobeniusAdamsReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub shape: HookShape,
    pub n: usize,
    pub p: Prime,
    pub dimension: usize,
    pub character: MultiPoly,
    pub character_text: String,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdamsReport {
    pub k: i64,
    pub l: Option<i64>,
    pub n: usize,
    pub result: MultiPoly,
    pub result_text: String,
    pub matches_power_sum: bool,
    pub composition_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyCommandReport {
    pub homotopy: HomotopyReport,
    pub ses: SesReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivarianceCommandReport {
    pub equivariance: EquivarianceReport,
    /// `None` when every differential is empty, so nothing can be corrupted.
    pub negative_control_detected: Option<bool>,
}

/// A finished command: what to print and how to exit.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub passed: bool,
    pub output: String,
}

impl Outcome {
    pub fn status(&self) -> ExitStatus {
        if self.passed {
            ExitStatus::Pass
        } else {
            ExitStatus::CheckFailed
        }
    }
}

fn prime(p: u32) -> Result<Prime> {
    Prime::new(p)
}

fn check_bounds(m: Option<usize>, n: usize) -> Result<()> {
    if let Some(m) = m {
        if m == 0 || m > MAX_M {
            return Err(Error::InvalidArgument(format!("m must lie in 1..={MAX_M}, got {m}")));
        }
    }
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidArgument(format!("n must lie in 1..={MAX_N}, got {n}")));
    }
    Ok(())
}

fn render<T: Serialize>(format: OutputFormat, command: &str, passed: bool, report: &T, text: String) -> Result<String> {
    match format {
        OutputFormat::Text => Ok(text),
        OutputFormat::Json | OutputFormat::Csv => {
            let env = Envelope { schema: SCHEMA_VERSION, command: command.to_owned(), passed, report };
            let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::invariant(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn dims(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Runs one command and renders its report.
pub fn run(config: &RunConfig) -> Result<Outcome> {
    let fmt = config.output;
    match &config.command {
        Command::Complex(a) => {
            check_bounds(Some(a.m), a.n)?;
            let hc = build_nm(a.m, a.n, prime(a.p)?)?;
            let c = hc.complex();
            let summary = ComplexSummary {
                m: a.m,
                n: a.n,
                p: hc.prime(),
                terms: hc
                    .modules()
                    .iter()
                    .enumerate()
                    .map(|(i, md)| TermSummary { degree: i, shape: md.shape(), dim: md.dimension() })
                    .collect(),
                term_dims: c.dims(),
                ranks: c.ranks(),
                d_squared_zero: c.is_complex(),
                preserves_multidegree: c.preserves_multidegree(),
            };
            let passed = summary.d_squared_zero && summary.preserves_multidegree;
            let mut t = format!("N_{}(V), n = {}, p = {}\n", a.m, a.n, a.p);
            for term in &summary.terms {
                let _ = writeln!(t, "  degree {}: S_{}  dim {}", term.degree, term.shape, term.dim);
            }
            let _ = writeln!(t, "term dims: {}", dims(&summary.term_dims));
            let _ = writeln!(t, "ranks: {}", dims(&summary.ranks));
            let _ = writeln!(t, "d∘d = 0: {}", summary.d_squared_zero);
            let _ = writeln!(t, "result: {}", verdict(passed));
            Ok(Outcome { passed, output: render(fmt, "complex", passed, &summary, t)? })
        }
        Command::Cohomology(a) => {
            check_bounds(Some(a.m), a.n)?;
            let p = prime(a.p)?;
            let hc = build_nm(a.m, a.n, p)?;
            let report = CohomologyCommandReport {
                cohomology: cohomology(&hc)?,
                frobenius: frobenius_comparison(&hc)?,
                euler: euler_data(hc.complex()),
                adams: frobenius_adams_check(a.m, a.n, p)?,
            };
            let passed = report.cohomology.all_match
                && report.frobenius.holds
                && report.euler.consistent
                && report.euler.bookkeeping_holds
                && report.adams.holds;
            let mut t = format!("H^*(N_{}(V)), n = {}, p = {}\n", a.m, a.n, a.p);
            for d in &report.cohomology.degrees {
                let _ = writeln!(
                    t,
                    "  H^{}: dim {} (expected {})  character {}",
                    d.degree, d.cohomology_dim, d.expected_dim, d.character
                );
            }
            let _ = writeln!(
                t,
                "euler: terms {} cohomology {}",
                report.cohomology.euler_terms, report.cohomology.euler_cohomology
            );
            let _ = writeln!(t, "chi = {}", report.euler.chi.value);
            let _ = writeln!(t, "chi' = {}", report.euler.chi_prime.value);
            let _ = writeln!(t, "frobenius comparison: {}", verdict(report.frobenius.holds));
            let _ = writeln!(t, "adams: {}", verdict(report.adams.holds));
            let _ = writeln!(t, "result: {}", verdict(passed));
            Ok(Outcome { passed, output: render(fmt, "cohomology", passed, &report, t)? })
        }
        Command::Character { shape, n, p } => {
            check_bounds(None, *n)?;
            if shape.size() > MAX_M as i64 {
                return Err(Error::InvalidArgument(format!("|shape| must be at most {MAX_M}")));
            }
            let module = HookModule::build(*shape, *n, prime(*p)?)?;
            let character = module.character();
            let report = CharacterReport {
                shape: *shape,
                n: *n,
                p: module.prime(),
                dimension: module.dimension(),
                character_text: character.to_string(),
                symmetric: symmetry_check(&character),
                character,
            };
            let passed = report.symmetric && report.character.coefficient_sum() == report.dimension as i64;
            let t = format!(
                "S_{}(V), n = {}, p = {}\ndimension: {}\ncharacter: {}\nresult: {}\n",
                shape,
                n,
                p,
                report.dimension,
                report.character_text,
                verdict(passed)
            );
            Ok(Outcome { passed, output: render(fmt, "character", passed, &report, t)? })
        }
        Command::Identity { m, n } => {
            check_bounds(Some(*m), *n)?;
            let report: IdentityReport = verify_power_sum_identity(*m as u32, *n)?;
            let t = format!(
                "p_{m} - Σ (-1)^i s_({m}-i,1^i), n = {n}\nresidual: {}\nresult: {}\n",
                report.residual,
                verdict(report.holds)
            );
            Ok(Outcome { passed: report.holds, output: render(fmt, "identity", report.holds, &report, t)? })
        }
        Command::Adams { k, l, n } => {
            check_bounds(None, *n)?;
            let within = |x: i64| x <= MAX_M as i64;
            if !within(*k) || !l.is_none_or(|l| within(l) && within(k * l)) {
                return Err(Error::InvalidArgument(format!("Adams degrees must be at most {MAX_M}")));
            }
            let v = K0Class::split(*n);
            let result = adams_grayson(*k, &v)?.value;
            let composition_holds = l.map(|l| adams_composition_check(*k, l, &v)).transpose()?;
            let report = AdamsReport {
                k: *k,
                l: *l,
                n: *n,
                matches_power_sum: result == power_sum(*k as u32, *n),
                result_text: result.to_string(),
                result,
                composition_holds,
            };
            let passed = report.matches_power_sum && report.composition_holds.unwrap_or(true);
            let mut t = format!("ψ^{}[V], n = {}\n{}\n", k, n, report.result_text);
            if let (Some(l), Some(c)) = (l, composition_holds) {
                let _ = writeln!(t, "ψ^{k} ∘ ψ^{l} = ψ^{}: {c}", k * l);
            }
            let _ = writeln!(t, "result: {}", verdict(passed));
            Ok(Outcome { passed, output: render(fmt, "adams", passed, &report, t)? })
        }
        Command::Homotopy { m, n, p, ell } => {
            check_bounds(Some(*m), *n)?;
            let p = prime(*p)?;
            let report = HomotopyCommandReport { homotopy: homotopy_check(*m, *n, p, *ell)?, ses: ses_check(*m, *n, p, *ell)? };
            let passed = report.homotopy.holds && report.ses.holds;
            let h = &report.homotopy;
            let t = format!(
                "L_{m}(V, v{ell}), n = {n}, p = {p}\nterm dims: {}\nchecked {} skipped {} failures {}\nshort exact sequence: {}\nresult: {}\n",
                dims(&h.term_dims),
                h.checked,
                h.skipped,
                h.failures.len(),
                verdict(report.ses.holds),
                verdict(passed)
            );
            Ok(Outcome { passed, output: render(fmt, "homotopy", passed, &report, t)? })
        }
        Command::Equivariance { m, n, p, trials, seed } => {
            check_bounds(Some(*m), *n)?;
            let hc = build_nm(*m, *n, prime(*p)?)?;
            let equivariance = equivariance_check(&hc, *trials, *seed);
            let negative_control_detected =
                hc.with_corrupted_differential().map(|bad| !equivariance_check(&bad, *trials, *seed).holds);
            let report = EquivarianceCommandReport { equivariance, negative_control_detected };
            let passed = report.equivariance.holds && report.negative_control_detected.unwrap_or(true);
            let e = &report.equivariance;
            let control = match negative_control_detected {
                Some(true) => "detected",
                Some(false) => "MISSED",
                None => "n/a",
            };
            let t = format!(
                "N_{m}(V), n = {n}, p = {p}, seed = {seed}\ntrials {} squares {} failures {}\nnegative control: {control}\nresult: {}\n",
                e.trials,
                e.commuting_squares_checked,
                e.failures.len(),
                verdict(passed)
            );
            Ok(Outcome { passed, output: render(fmt, "equivariance", passed, &report, t)? })
        }
        Command::Sweep { max_m, max_n, primes } => {
            if *max_m > MAX_M || *max_n > MAX_N {
                return Err(Error::InvalidArgument(format!("sweep bounds are m <= {MAX_M}, n <= {MAX_N}")));
            }
            let primes = primes.iter().map(|&p| prime(p)).collect::<Result<Vec<_>>>()?;
            let report = run_sweep(*max_m, *max_n, &primes);
            let passed = report.passed();
            let output = match fmt {
                OutputFormat::Csv => report.to_csv()?,
                OutputFormat::Json => render(fmt, "sweep", passed, &report, String::new())?,
                OutputFormat::Text => report.to_text(),
            };
            Ok(Outcome { passed, output })
        }
    }
}

/// Parses `args`, runs the command, writes output, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitStatus::for_error(&e).code();
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitStatus::Invalid.code();
            }
        }
        None => print!("{}", outcome.output),
    }
    outcome.status().code()
}
