// SPDX-License-Identifier: Apache-2.0

//! From an integral point to its descent image, the 3-virtual unit it
//! defines and the trace-zero cubic of discriminant `81 D`.

use mdv::curves::CurvePoint;
use mdv::descent::{
    compare_cube_classes, cube_root_in_field, cubic_from_integral_point, descent_image,
    is_virtual_unit, QuadElement,
};
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    let d = BigInt::from(-1355);
    let (a, b) = (BigInt::from(64), BigInt::from(572));
    let image = descent_image(&d, &CurvePoint::integral(a.clone(), b.clone()))?;
    println!("descent image   {image}");
    let cert = is_virtual_unit(&image)?.expect("norm is A^3");
    println!(
        "norm            {}^3 (primitive: {})",
        cert.cube_root_norm, cert.primitive
    );
    println!("is a cube       {}", cube_root_in_field(&image)?.is_some());

    let (case, cubic) = cubic_from_integral_point(&d, &a, &b)?;
    println!("{case:?} case      {cubic}, disc {} = 81 * {d}", cubic.disc);
    println!("irreducible     {}", cubic.is_irreducible());

    let lambda = QuadElement::new(143, 1, -3 * -1355);
    println!("image ~ lambda  {:?}", compare_cube_classes(&image, &lambda)?);
    Ok(())
}
