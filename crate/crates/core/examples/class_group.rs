// SPDX-License-Identifier: Apache-2.0

//! Class groups of a few quadratic discriminants, computed from reduced
//! binary quadratic forms.
//!
//! ```text
//! cargo run --example class_group -- -3299 229 -87
//! ```

use mdv::classgroup::class_group;
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let mut discs: Vec<BigInt> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("discriminant"))
        .collect();
    if discs.is_empty() {
        discs = [-23i64, -31, -87, -3299, -4027, 5, 93, 229, 316, 32009]
            .into_iter()
            .map(BigInt::from)
            .collect();
    }
    println!("{:>8} {:>5} {:>8} {:>14} {:>3}", "disc", "h", "narrow", "structure", "r3");
    for d in &discs {
        let s = class_group(d)?;
        let narrow = s.narrow_h.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
        println!(
            "{:>8} {:>5} {:>8} {:>14} {:>3}",
            s.disc,
            s.h,
            narrow,
            format!("{:?}", s.invariant_factors),
            s.r3
        );
    }
    Ok(())
}
