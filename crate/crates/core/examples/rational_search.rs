// SPDX-License-Identifier: Apache-2.0

//! Small rational points on `E_D` and the check that none of them maps to
//! an integral point under the dual isogeny.

use mdv::curves::CurveK;
use mdv::search::{lemma_notinim_check, rational_points, SearchConfig};
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let cfg = SearchConfig {
        height_bound: 1_000,
        ..SearchConfig::default()
    };
    let curve = CurveK::other(65040)?;
    let points = rational_points(&curve, &cfg)?;
    println!("{curve}: {} point(s) with |m|, |n|, z <= {}", points.len(), cfg.height_bound);
    for p in points.iter().take(6) {
        println!("  {p}");
    }
    for d in [-7i64, -31, 5, 17, -1355, -21] {
        let r = lemma_notinim_check(&BigInt::from(d), &cfg)?;
        match &r.skipped {
            Some(why) => println!("D = {d:>6}: skipped ({why})"),
            None => println!(
                "D = {d:>6}: {} point(s) checked{}",
                r.points_checked.len(),
                if r.vacuous() { ", vacuous" } else { "" }
            ),
        }
    }
    Ok(())
}
