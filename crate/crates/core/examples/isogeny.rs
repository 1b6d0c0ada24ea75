// SPDX-License-Identifier: Apache-2.0

//! The 3-isogenies between `y^2 = x^3 - 48D` and `Y^2 = X^3 + 1296D`, checked
//! against chord-tangent tripling.

use mdv::curves::{decompose, mul, phi, phi_hat, CurveK, CurvePoint};
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let d = BigInt::from(-1355);
    let source = CurveK::other(&d * -48)?;
    let target = CurveK::other(&d * 1296)?;
    let p = CurvePoint::integral(64, 572);
    let q = phi(&d, &p)?;
    let back = phi_hat(&d, &q)?;
    println!("P            = {p} on {source}");
    println!("phi(P)       = {q} on {target}");
    println!("phi_hat(..)  = {back}");
    println!("[3]P         = {}", mul(&source, &p, 3));
    let dec = decompose(&target, &q)?;
    println!(
        "phi(P) = (X/Z^2, Y/Z^3) with X = {}, Y = {}, Z = {}, gcd(X, Y) = {}",
        dec.x, dec.y, dec.z, dec.d
    );
    Ok(())
}
