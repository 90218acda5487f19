use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::verify_power_sum_identity;
use crate::complexes::{build_nm, cohomology, frobenius_comparison};
use crate::error::{Error, Result};
use crate::ffield::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub m: usize,
    pub p: Prime,
    pub n: usize,
    /// `pass`, `fail`, `skipped:size` or `error`.
    pub status: String,
    pub term_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub cohomology_matches: bool,
    pub frobenius_holds: bool,
    pub identity_holds: bool,
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_m: usize,
    pub max_n: usize,
    pub primes: Vec<Prime>,
    pub rows: Vec<SweepRow>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    m: usize,
    p: u32,
    n: usize,
    status: &'a str,
    term_dims: String,
    cohomology_dims: String,
    expected_dims: String,
    cohomology_matches: bool,
    frobenius_holds: bool,
    identity_holds: bool,
}

fn joined(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

impl SweepReport {
    /// No cell failed; skipped cells do not count against the sweep.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status == "pass" || r.status == "skipped:size")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record([
                "m",
                "p",
                "n",
                "status",
                "term_dims",
                "cohomology_dims",
                "expected_dims",
                "cohomology_matches",
                "frobenius_holds",
                "identity_holds",
            ])
            .map_err(|e| Error::invariant(e.to_string()))?;
        }
        for r in &self.rows {
            w.serialize(CsvRow {
                m: r.m,
                p: r.p.value(),
                n: r.n,
                status: &r.status,
                term_dims: joined(&r.term_dims),
                cohomology_dims: joined(&r.cohomology_dims),
                expected_dims: joined(&r.expected_dims),
                cohomology_matches: r.cohomology_matches,
                frobenius_holds: r.frobenius_holds,
                identity_holds: r.identity_holds,
            })
            .map_err(|e| Error::invariant(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invariant(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::invariant(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut t = String::new();
        for r in &self.rows {
            let _ = writeln!(
                t,
                "m={:<2} p={} n={}  {:<12} terms {:<24} H {}",
                r.m,
                r.p,
                r.n,
                r.status,
                joined(&r.term_dims),
                joined(&r.cohomology_dims)
            );
        }
        let _ = writeln!(t, "{} cells, result: {}", self.rows.len(), if self.passed() { "PASS" } else { "FAIL" });
        t
    }
}

fn run_cell(m: usize, p: Prime, n: usize) -> SweepRow {
    let mut row = SweepRow {
        m,
        p,
        n,
        status: String::new(),
        term_dims: Vec::new(),
        cohomology_dims: Vec::new(),
        expected_dims: Vec::new(),
        cohomology_matches: false,
        frobenius_holds: false,
        identity_holds: false,
        message: None,
    };
    let result = (|| -> Result<()> {
        let hc = build_nm(m, n, p)?;
        let coh = cohomology(&hc)?;
        row.term_dims = hc.term_dims();
        row.cohomology_dims = coh.degrees.iter().map(|d| d.cohomology_dim).collect();
        row.expected_dims = coh.degrees.iter().map(|d| d.expected_dim).collect();
        row.cohomology_matches = coh.all_match;
        row.frobenius_holds = frobenius_comparison(&hc)?.holds;
        row.identity_holds = verify_power_sum_identity(m as u32, n)?.holds;
        Ok(())
    })();
    row.status = match result {
        Ok(()) if row.cohomology_matches && row.frobenius_holds && row.identity_holds => "pass".into(),
        Ok(()) => "fail".into(),
        Err(e @ Error::SizeLimit { .. }) => {
            row.message = Some(e.to_string());
            "skipped:size".into()
        }
        Err(e) => {
            row.message = Some(e.to_string());
            "error".into()
        }
    };
    row
}

/// All cells `(m, p, n)` with `p | m`, `m <= max_m`, `n <= max_n`, in that order.
pub fn run_sweep(max_m: usize, max_n: usize, primes: &[Prime]) -> SweepReport {
    let mut primes = primes.to_vec();
    primes.sort();
    primes.dedup();
    let cells: Vec<(usize, Prime, usize)> = (1..=max_m)
        .flat_map(|m| primes.iter().map(move |&p| (m, p)))
        .filter(|&(m, p)| m % p.value() as usize == 0)
        .flat_map(|(m, p)| (1..=max_n).map(move |n| (m, p, n)))
        .collect();
    let rows = cells.par_iter().map(|&(m, p, n)| run_cell(m, p, n)).collect();
    SweepReport { max_m, max_n, primes, rows }
}
