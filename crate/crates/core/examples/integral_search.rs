// SPDX-License-Identifier: Apache-2.0

//! Integral points on `y^2 = x^3 - 48D` for a handful of `D`, in and out of
//! the family.
//!
//! ```text
//! cargo run --release --example integral_search -- 1000000
//! ```

use mdv::curves::CurveK;
use mdv::search::{integral_points_on_curve, SearchConfig};
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let x_bound = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("x bound"))
        .unwrap_or(100_000);
    let cfg = SearchConfig {
        x_bound,
        ..SearchConfig::default()
    };
    for d in [-1355i64, -31, -7, -187, 5, 17, 29] {
        let curve = CurveK::other(BigInt::from(d) * -48)?;
        let points = integral_points_on_curve(&curve, &cfg)?;
        let shown: Vec<String> = points.iter().map(|p| format!("({}, {})", p.x, p.y)).collect();
        println!("D = {d:>6}  {curve}: {}", if shown.is_empty() { "none".into() } else { shown.join(" ") });
    }
    Ok(())
}
