// SPDX-License-Identifier: Apache-2.0

//! Exact integer helpers: square and cube recognition, factoring and
//! squarefree parts.

use mdv::arith::{exact_cube_root, factorize, is_perfect_square, squarefree_part};
use mdv::BigInt;

fn main() -> mdv::Result<()> {
    for n in ["327184", "327185", "10000006000000900", "1000006000012000008"] {
        let n: BigInt = n.parse().unwrap();
        println!(
            "{n}: square root {:?}, cube root {:?}",
            is_perfect_square(&n).map(|r| r.to_string()),
            exact_cube_root(&n).map(|r| r.to_string())
        );
    }
    for n in [-1355i64, 4065, -3299, 5184 * 7] {
        let n = BigInt::from(n);
        let (s, f) = squarefree_part(&n)?;
        let factors: Vec<String> = factorize(&n)?
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        println!("{n} = {s} * {f}^2 = {}", factors.join(" * "));
    }
    Ok(())
}
