// SPDX-License-Identifier: Apache-2.0

//! Selmer-rank predictions and verdicts for single discriminants.

use mdv::batch::{verdict_for, BatchConfig};
use mdv::classgroup::r3;
use mdv::predict::predict_selmer;
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let cfg = BatchConfig::default();
    for d in [-31i64, -7, 5, 29, -199] {
        let d = BigInt::from(d);
        let p = predict_selmer(&d, r3(&(&d * -3))?)?;
        println!(
            "D = {:>5}: r(S_phi) = {}, r(S_phi_hat) = {}, parity {}",
            d, p.r_s_phi, p.r_s_phihat, p.parity
        );
        let v = verdict_for(&d, &cfg, None)?;
        println!(
            "          {} / prediction applies: {} / integral points: {} / consistent: {}",
            v.classification,
            v.prediction_applies,
            v.integral_points_found.len(),
            v.consistent
        );
    }
    Ok(())
}
