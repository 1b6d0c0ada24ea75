// SPDX-License-Identifier: Apache-2.0

//! The batch pipeline: classify, predict, search and judge every family
//! member in a range, then emit CSV and/or JSON reports.
//!
//! Reports are a pure function of the range, the configuration and the tool
//! version. Work runs on a rayon pool; rows are assembled in ascending `D`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::ClassGroupCache;
use crate::classgroup::{class_group, Classification, ReflectionVerdict};
use crate::curves::{CurveK, CurvePoint};
use crate::discriminants::enumerate_family;
use crate::predict::{assemble_verdict, predict_selmer, Parity, SearchOutcome, Verdict};
use crate::search::{in_pool, integral_points, rational_points, SearchConfig};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 15] = [
    "D",
    "Dprime",
    "r3_D",
    "r3_Dprime",
    "classification",
    "r_S_phi",
    "r_S_phihat",
    "parity",
    "prediction_applies",
    "integral_points",
    "x_bound",
    "rational_witness",
    "consistent",
    "notes",
    "schema_version",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchConfig {
    pub search: SearchConfig,
    /// Run the rational-witness search for negative escalatory `D`.
    pub witness_search: bool,
}

impl Default for BatchConfig {
    fn default() -> Self {
        BatchConfig {
            search: SearchConfig {
                x_bound: 1_000_000,
                ..SearchConfig::default()
            },
            witness_search: true,
        }
    }
}

/// One report line per family member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "Dprime")]
    pub d_prime: i64,
    #[serde(rename = "r3_D")]
    pub r3_d: u32,
    #[serde(rename = "r3_Dprime")]
    pub r3_d_prime: u32,
    pub classification: Classification,
    #[serde(rename = "r_S_phi")]
    pub r_s_phi: u32,
    #[serde(rename = "r_S_phihat")]
    pub r_s_phihat: u32,
    pub parity: Parity,
    pub prediction_applies: bool,
    pub integral_points: Vec<[i128; 2]>,
    pub x_bound: u64,
    /// `[x, y]` as reduced fractions.
    pub rational_witness: Option<[String; 2]>,
    pub consistent: bool,
    pub notes: Vec<String>,
    pub schema_version: u32,
}

fn small(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::Domain(format!("{n} does not fit a report cell")))
}

impl ReportRow {
    pub fn from_verdict(v: &Verdict) -> Result<Self> {
        let integral_points = v
            .integral_points_found
            .iter()
            .map(|p| match (p.x.to_i128(), p.y.to_i128()) {
                (Some(x), Some(y)) => Ok([x, y]),
                _ => Err(Error::Domain(format!("point ({}, {}) does not fit a report cell", p.x, p.y))),
            })
            .collect::<Result<_>>()?;
        let rational_witness = v
            .rational_witness
            .as_ref()
            .and_then(CurvePoint::coords)
            .map(|(x, y)| [x.to_string(), y.to_string()]);
        Ok(ReportRow {
            d: small(v.pair.d())?,
            d_prime: small(v.pair.d_prime())?,
            r3_d: v.r3_d,
            r3_d_prime: v.r3_d_prime,
            classification: v.classification,
            r_s_phi: v.prediction.r_s_phi,
            r_s_phihat: v.prediction.r_s_phihat,
            parity: v.prediction.parity,
            prediction_applies: v.prediction_applies,
            integral_points,
            x_bound: v.x_bound,
            rational_witness,
            consistent: v.consistent,
            notes: v.notes.clone(),
            schema_version: SCHEMA_VERSION,
        })
    }

    fn csv_record(&self) -> Result<Vec<String>> {
        Ok(vec![
            self.d.to_string(),
            self.d_prime.to_string(),
            self.r3_d.to_string(),
            self.r3_d_prime.to_string(),
            self.classification.to_string(),
            self.r_s_phi.to_string(),
            self.r_s_phihat.to_string(),
            self.parity.to_string(),
            self.prediction_applies.to_string(),
            serde_json::to_string(&self.integral_points)?,
            self.x_bound.to_string(),
            match &self.rational_witness {
                Some(w) => serde_json::to_string(w)?,
                None => String::new(),
            },
            self.consistent.to_string(),
            serde_json::to_string(&self.notes)?,
            self.schema_version.to_string(),
        ])
    }
}

/// Process exit status of a batch run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BatchStatus {
    Success,
    Inconsistent,
    InternalAssertion,
}

impl BatchStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            BatchStatus::Success => 0,
            BatchStatus::Inconsistent => 1,
            BatchStatus::InternalAssertion => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchReport {
    pub rows: Vec<ReportRow>,
    /// Discriminants whose processing raised a fatal check, with the message.
    pub failures: Vec<(i64, String)>,
    pub status: BatchStatus,
}

/// Classification, prediction, searches and verdict for one family member.
pub fn verdict_for(
    d: &BigInt,
    cfg: &BatchConfig,
    cache: Option<&ClassGroupCache>,
) -> Result<Verdict> {
    let pair = crate::discriminants::mirror(d)?;
    let summary = |disc: &BigInt| match cache {
        Some(c) => c.class_group(disc),
        None => class_group(disc),
    };
    let r3_d = summary(pair.d())?.r3;
    let r3_d_prime = summary(pair.d_prime())?.r3;
    let reflection = ReflectionVerdict::from_ranks(pair, r3_d, r3_d_prime)?;
    let prediction = predict_selmer(d, r3_d_prime)?;
    let points = integral_points(d, &cfg.search)?;
    let wants_witness = cfg.witness_search
        && d.is_negative()
        && reflection.classification == Classification::Escalatory;
    let rational_witness = if wants_witness {
        let curve = CurveK::e_dprime(d)?;
        rational_points(&curve, &cfg.search)?.into_iter().next()
    } else {
        None
    };
    let outcome = SearchOutcome {
        d: d.clone(),
        x_bound: cfg.search.x_bound,
        integral_points: points,
        witness_height_bound: wants_witness.then_some(cfg.search.height_bound),
        rational_witness,
    };
    assemble_verdict(&reflection, &prediction, &outcome)
}

/// Runs the pipeline over every family member in `[dmin, dmax]`.
///
/// Internal assertions (reflection inequality, divisibility ladder) and
/// refutation-grade events are recorded in `failures` and reflected in the
/// status; any other error aborts the run.
pub fn run_batch(
    dmin: i64,
    dmax: i64,
    cfg: &BatchConfig,
    cache: Option<&ClassGroupCache>,
) -> Result<BatchReport> {
    if dmin > dmax {
        return Err(Error::Domain(format!("empty range: dmin = {dmin} > dmax = {dmax}")));
    }
    cfg.search.validate()?;
    let ds: Vec<BigInt> = enumerate_family(&BigInt::from(dmin), &BigInt::from(dmax))
        .map(|p| p.d().clone())
        .collect();
    log::info!("verifying {} family members in [{dmin}, {dmax}]", ds.len());
    // the inner searches see a pool of the requested size and stay on it
    let results: Vec<Result<Verdict>> = in_pool(cfg.search.threads, || {
        ds.par_iter().map(|d| verdict_for(d, cfg, cache)).collect()
    })?;
    let mut rows = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    let mut status = BatchStatus::Success;
    for (d, r) in ds.iter().zip(results) {
        match r {
            Ok(v) => {
                if !v.consistent && status == BatchStatus::Success {
                    status = BatchStatus::Inconsistent;
                }
                rows.push(ReportRow::from_verdict(&v)?);
            }
            Err(e) if e.is_internal_assertion() => {
                log::error!("D = {d}: {e}");
                failures.push((small(d)?, e.to_string()));
                status = BatchStatus::InternalAssertion;
            }
            Err(e @ Error::Refutation(_)) => {
                log::error!("D = {d}: {e}");
                failures.push((small(d)?, e.to_string()));
                if status == BatchStatus::Success {
                    status = BatchStatus::Inconsistent;
                }
            }
            Err(e) => return Err(e),
        }
    }
    if let Some(c) = cache {
        c.flush()?;
    }
    Ok(BatchReport {
        rows,
        failures,
        status,
    })
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        w.write_record(row.csv_record()?)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn csv_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

pub fn json_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_json(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("JSON output is UTF-8"))
}

/// Writes `<prefix>.csv` and/or `<prefix>.json`; returns the paths written.
pub fn write_reports(rows: &[ReportRow], prefix: &Path, format: ReportFormat) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let with_ext = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(".");
        s.push(ext);
        PathBuf::from(s)
    };
    if matches!(format, ReportFormat::Csv | ReportFormat::Both) {
        let p = with_ext("csv");
        fs::write(&p, csv_string(rows)?)?;
        written.push(p);
    }
    if matches!(format, ReportFormat::Json | ReportFormat::Both) {
        let p = with_ext("json");
        fs::write(&p, json_string(rows)?)?;
        written.push(p);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> BatchConfig {
        BatchConfig {
            search: SearchConfig {
                x_bound: 2_000,
                height_bound: 50,
                threads: 0,
            },
            witness_search: true,
        }
    }

    #[test]
    fn row_count_matches_family() {
        let r = run_batch(-100, -1, &quick(), None).unwrap();
        let ds: Vec<i64> = r.rows.iter().map(|r| r.d).collect();
        assert_eq!(ds, vec![-91, -79, -67, -55, -43, -31, -19, -7]);
        assert_eq!(r.status, BatchStatus::Success);
    }

    #[test]
    fn minus_31_row() {
        let r = run_batch(-31, -31, &quick(), None).unwrap();
        assert_eq!(r.rows.len(), 1);
        let row = &r.rows[0];
        assert_eq!(row.classification, Classification::Escalatory);
        assert_eq!(row.parity, Parity::Odd);
        assert!(row.integral_points.is_empty());
        assert!(row.consistent && row.prediction_applies);
        assert_eq!((row.d_prime, row.r3_d, row.r3_d_prime), (93, 1, 0));
    }

    #[test]
    fn empty_range_and_bad_range() {
        let r = run_batch(-6, -6, &quick(), None).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.status.exit_code(), 0);
        assert_eq!(csv_string(&r.rows).unwrap(), CSV_COLUMNS.join(",") + "\n");
        assert!(run_batch(5, -5, &quick(), None).is_err());
    }

    #[test]
    fn json_round_trips() {
        let r = run_batch(-100, 100, &quick(), None).unwrap();
        let back: Vec<ReportRow> = serde_json::from_str(&json_string(&r.rows).unwrap()).unwrap();
        assert_eq!(back, r.rows);
        let csv = csv_string(&r.rows).unwrap();
        assert_eq!(csv.lines().count(), r.rows.len() + 1);
    }
}
