// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mdv::batch::{csv_string, json_string, run_batch, write_reports, BatchConfig, ReportFormat};
use mdv::cache::ClassGroupCache;
use mdv::classgroup::class_group;
use mdv::curves::{CurveK, CurvePoint};
use mdv::descent::{cubic_census, cubic_from_integral_point, descent_image, is_virtual_unit};
use mdv::search::{integral_points_on_curve, SearchConfig};
use mdv::{BigInt, Error};

#[derive(Parser)]
#[command(name = "mdv", version, about = "Checks on the Mordell curves y^2 = x^3 + 16D'")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Classify, predict and search every family member in a range.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        dmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        dmax: i64,
        #[arg(long, default_value_t = 1_000_000)]
        x_bound: u64,
        #[arg(long, default_value_t = 1_000)]
        height_bound: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Class-group cache (JSON lines).
        #[arg(long, env = "MDV_CACHE")]
        cache: Option<PathBuf>,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Write `<PREFIX>.csv` / `<PREFIX>.json` instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class group of a fundamental discriminant.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: BigInt,
    },
    /// Descent image and cubic of an integral point on y^2 = x^3 - 48D.
    Descend {
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
        /// `A,B`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Integral points on y^2 = x^3 - 48D with |x| <= x-bound.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
        #[arg(long, default_value_t = 1_000_000)]
        x_bound: u64,
    },
    /// Trace-zero cubics of discriminant 81D.
    Census {
        #[arg(long, allow_hyphen_values = true)]
        d: BigInt,
        #[arg(long)]
        a_bound: Option<BigInt>,
    },
}

fn parse_point(s: &str) -> Result<(BigInt, BigInt), Error> {
    let bad = || Error::Domain(format!("expected A,B but got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn run(cmd: Command) -> Result<u8, Error> {
    match cmd {
        Command::Verify {
            dmin,
            dmax,
            x_bound,
            height_bound,
            format,
            cache,
            threads,
            out,
        } => {
            let cfg = BatchConfig {
                search: SearchConfig {
                    x_bound,
                    height_bound,
                    threads,
                },
                ..BatchConfig::default()
            };
            let cache = cache.map(ClassGroupCache::open).transpose()?;
            let report = run_batch(dmin, dmax, &cfg, cache.as_ref())?;
            let format = match format {
                Format::Csv => ReportFormat::Csv,
                Format::Json => ReportFormat::Json,
                Format::Both => ReportFormat::Both,
            };
            match (out, format) {
                (Some(prefix), f) => {
                    for p in write_reports(&report.rows, &prefix, f)? {
                        log::info!("wrote {}", p.display());
                    }
                }
                (None, ReportFormat::Csv) => print!("{}", csv_string(&report.rows)?),
                (None, ReportFormat::Json) => print!("{}", json_string(&report.rows)?),
                (None, ReportFormat::Both) => {
                    return Err(Error::Domain("--format both needs --out".into()))
                }
            }
            for (d, msg) in &report.failures {
                eprintln!("D = {d}: {msg}");
            }
            Ok(report.status.exit_code() as u8)
        }
        Command::Classgroup { disc } => {
            let s = class_group(&disc)?;
            println!("disc: {}", s.disc);
            println!("h: {}", s.h);
            if let Some(n) = s.narrow_h {
                println!("narrow h: {n}");
            }
            println!("invariant factors: {:?}", s.invariant_factors);
            println!("r3: {}", s.r3);
            Ok(0)
        }
        Command::Descend { d, point } => {
            let (a, b) = parse_point(&point)?;
            let p = CurvePoint::integral(a.clone(), b.clone());
            let image = descent_image(&d, &p)?;
            println!("descent image: {image}");
            if let Some(cert) = is_virtual_unit(&image)? {
                println!(
                    "norm = {}^3, trace {}, primitive: {}",
                    cert.cube_root_norm, cert.trace, cert.primitive
                );
            }
            let (case, cubic) = cubic_from_integral_point(&d, &a, &b)?;
            println!("{case:?} case cubic: {cubic}");
            println!("disc: {}", cubic.disc);
            println!("standard form: {}", cubic.standard_form);
            println!("irreducible: {}", cubic.is_irreducible());
            Ok(0)
        }
        Command::Search { d, x_bound } => {
            let curve = CurveK::other(&d * -48)?;
            let cfg = SearchConfig {
                x_bound,
                ..SearchConfig::default()
            };
            let points = integral_points_on_curve(&curve, &cfg)?;
            println!("{curve}, |x| <= {x_bound}: {} point(s)", points.len());
            for p in points {
                println!("({}, {})", p.x, p.y);
            }
            Ok(0)
        }
        Command::Census { d, a_bound } => {
            let census = cubic_census(&d, a_bound.as_ref())?;
            println!("|a| <= {}: {} cubic(s)", census.a_bound, census.cubics.len());
            for c in census.cubics {
                println!("{c}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal_assertion() {
                3
            } else if matches!(e, Error::Refutation(_)) {
                1
            } else {
                2
            })
        }
    }
}
