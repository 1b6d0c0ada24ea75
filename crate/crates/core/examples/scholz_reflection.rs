// SPDX-License-Identifier: Apache-2.0

//! Escalatory / non-escalatory split of the family pairs `(D, -3D)` in a
//! range, with the 3-ranks on both sides.
//!
//! ```text
//! cargo run --example scholz_reflection -- -500 500
//! ```

use mdv::classgroup::{classify, Classification};
use mdv::discriminants::enumerate_family;
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer bound"))
        .collect();
    let (lo, hi) = match args[..] {
        [lo, hi] => (lo, hi),
        _ => (-300, 300),
    };
    let mut escalatory = 0;
    let mut total = 0;
    for pair in enumerate_family(&BigInt::from(lo), &BigInt::from(hi)) {
        let v = classify(&pair)?;
        total += 1;
        if v.classification == Classification::Escalatory {
            escalatory += 1;
        }
        println!(
            "D = {:>6}  D' = {:>6}  r3(D) = {}  r3(D') = {}  {}",
            pair.d(),
            pair.d_prime(),
            v.r3_d,
            v.r3_d_prime,
            v.classification
        );
    }
    println!("{escalatory} of {total} pairs are escalatory");
    Ok(())
}
