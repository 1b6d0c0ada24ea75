// SPDX-License-Identifier: Apache-2.0

//! The full pipeline over a range, with a class-group cache in a temporary
//! directory, printed as CSV.
//!
//! ```text
//! cargo run --release --example batch_verify -- -300 300
//! ```

use mdv::batch::{csv_string, run_batch, BatchConfig};
use mdv::cache::ClassGroupCache;

fn main() -> mdv::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer bound"))
        .collect();
    let (lo, hi) = match args[..] {
        [lo, hi] => (lo, hi),
        _ => (-150, 150),
    };
    let path = std::env::temp_dir().join("mdv-example-cache.jsonl");
    let cache = ClassGroupCache::open(&path)?;
    let report = run_batch(lo, hi, &BatchConfig::default(), Some(&cache))?;
    print!("{}", csv_string(&report.rows)?);
    eprintln!(
        "{} rows, exit status {}, cache at {}",
        report.rows.len(),
        report.status.exit_code(),
        path.display()
    );
    Ok(())
}
