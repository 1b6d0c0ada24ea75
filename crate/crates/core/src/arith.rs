// SPDX-License-Identifier: Apache-2.0

//! Exact integer helpers shared by every other module.
//!
//! Everything here is a pure function. The perfect-square test sits on the
//! hot path of the integral-point scan, so it has a fixed-width fast path
//! (`square_root_u128`) next to the arbitrary-precision one.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Trial division runs over all primes below this bound before the
/// cofactor is handed to Miller-Rabin.
pub const TRIAL_DIVISION_BOUND: u32 = 1_000_000;

const fn residue_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

pub(crate) static SQUARES_MOD_64: [bool; 64] = residue_table::<64>();
pub(crate) static SQUARES_MOD_63: [bool; 63] = residue_table::<63>();
pub(crate) static SQUARES_MOD_65: [bool; 65] = residue_table::<65>();
pub(crate) static SQUARES_MOD_11: [bool; 11] = residue_table::<11>();

#[inline]
fn passes_square_filter(r64: usize, r63: usize, r65: usize, r11: usize) -> bool {
    SQUARES_MOD_64[r64] && SQUARES_MOD_63[r63] && SQUARES_MOD_65[r65] && SQUARES_MOD_11[r11]
}

/// Floor of the square root of `n`.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    // the float estimate is off by at most a few units at this width
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Exact square root of `n` when `n` is a perfect square.
#[inline]
pub fn square_root_u128(n: u128) -> Option<u128> {
    let r64 = (n & 63) as usize;
    if !SQUARES_MOD_64[r64] {
        return None;
    }
    if !passes_square_filter(r64, (n % 63) as usize, (n % 65) as usize, (n % 11) as usize) {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// [`square_root_u128`] for values that fit a machine word; the common case
/// in the integral-point scan.
#[inline]
pub fn square_root_u64(n: u64) -> Option<u64> {
    let r64 = (n & 63) as usize;
    if !SQUARES_MOD_64[r64] {
        return None;
    }
    if !passes_square_filter(r64, (n % 63) as usize, (n % 65) as usize, (n % 11) as usize) {
        return None;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Floor of the cube root of `n`, for signed 128-bit input.
pub fn icbrt_floor_i128(n: i128) -> i128 {
    let mut r = (n as f64).cbrt().round() as i128;
    let cube = |r: i128| r.checked_mul(r).and_then(|s| s.checked_mul(r));
    while cube(r).map_or(r > 0, |c| c > n) {
        r -= 1;
    }
    while cube(r + 1).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}

/// Ceiling of the cube root of `n`.
pub fn icbrt_ceil_i128(n: i128) -> i128 {
    -icbrt_floor_i128(-n)
}

/// Returns `s >= 0` with `s * s == n`, or `None` when `n` is not a square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus => return None,
        Sign::NoSign => return Some(BigInt::zero()),
        Sign::Plus => {}
    }
    if let Some(small) = n.to_u128() {
        return square_root_u128(small).map(BigInt::from);
    }
    let (_, low) = n.to_u32_digits();
    let r64 = (low[0] & 63) as usize;
    if !SQUARES_MOD_64[r64] {
        return None;
    }
    let modulus = BigInt::from(63u32 * 65 * 11);
    let wheel = n.mod_floor(&modulus).to_usize().unwrap_or(0);
    if !passes_square_filter(r64, wheel % 63, wheel % 65, wheel % 11) {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Returns the integer cube root of `n` if `n` is a perfect cube.
pub fn exact_cube_root(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Miller-Rabin with the first twenty prime bases.
///
/// Deterministic below 3.3e24; beyond that a composite passing all twenty
/// bases is astronomically unlikely but not excluded.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for &p in &BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor `|n|` into `(prime, exponent)` pairs, ascending.
///
/// Trial division to [`TRIAL_DIVISION_BOUND`], then the cofactor is
/// classified: a prime (certain below the bound squared, Miller-Rabin above),
/// an exact square or cube, or otherwise kept as a single composite factor
/// whose prime factors all exceed the trial bound.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let mut rest = n.abs();
    let mut out = Vec::new();
    if let Some(mut small) = rest.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > small {
                break;
            }
            let mut e = 0;
            while small % p == 0 {
                small /= p;
                e += 1;
            }
            if e > 0 {
                out.push((BigInt::from(p), e));
            }
        }
        rest = BigInt::from(small);
    } else {
        for &p in small_primes() {
            let pb = BigInt::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((pb, e));
            }
        }
    }
    if rest.is_one() {
        return Ok(out);
    }
    let bound = BigInt::from(TRIAL_DIVISION_BOUND);
    if rest <= &bound * &bound || is_probable_prime(&rest) {
        out.push((rest, 1));
    } else if let Some(r) = is_perfect_square(&rest) {
        out.push((r, 2));
    } else if let Some(r) = exact_cube_root(&rest) {
        out.push((r, 3));
    } else {
        log::debug!("unfactored composite cofactor {rest} treated as squarefree");
        out.push((rest, 1));
    }
    Ok(out)
}

/// Write `n = s * f^2` with `s` squarefree; the sign of `n` stays on `s`.
pub fn squarefree_part(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::Domain("squarefree part of zero".into()));
    }
    let mut s = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut f = BigInt::one();
    for (p, e) in factorize(n)? {
        if e % 2 == 1 {
            s *= &p;
        }
        f *= p.pow(e / 2);
    }
    Ok((s, f))
}

pub fn is_squarefree(n: &BigInt) -> Result<bool> {
    Ok(squarefree_part(n)?.1.is_one())
}

/// Largest `e` with `p^e | n`.
pub fn valuation(n: &BigInt, p: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::Domain("valuation of zero".into()));
    }
    if p.abs() < BigInt::from(2) {
        return Err(Error::Domain(format!("valuation base {p} is not a prime")));
    }
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Ceiling of the square root of a non-negative integer.
pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    let r = n.sqrt();
    if &r * &r == *n {
        r
    } else {
        r + 1
    }
}
