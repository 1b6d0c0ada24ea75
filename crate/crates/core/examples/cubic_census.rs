// SPDX-License-Identifier: Apache-2.0

//! Trace-zero cubics of discriminant `81 D`, side by side with the
//! classification of `D`.

use mdv::classgroup::classify;
use mdv::descent::cubic_census;
use mdv::discriminants::enumerate_family;
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    for pair in enumerate_family(&BigInt::from(-400), &BigInt::from(-1)) {
        let v = classify(&pair)?;
        let census = cubic_census(pair.d(), None)?;
        let cubics: Vec<String> = census.cubics.iter().map(|c| c.to_string()).collect();
        println!(
            "D = {:>5} {:<14} |a| <= {:<4} {}",
            pair.d(),
            v.classification.to_string(),
            census.a_bound,
            cubics.join(", ")
        );
    }
    Ok(())
}
