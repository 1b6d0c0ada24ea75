// SPDX-License-Identifier: Apache-2.0

//! Bounded point searches on `y^2 = x^3 + k`.
//!
//! The integral scan is the hot loop of the whole crate: for the family
//! curves and `|x| <= 10^6` every value of `x^3 + k` fits in a machine word,
//! so the scan runs on `i128` / `u64` with a quadratic-residue filter and
//! only falls back to big integers for huge bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{icbrt_ceil_i128, is_perfect_square, square_root_u128, square_root_u64};
use crate::curves::{decompose, on_curve, phi_hat, CurveK, CurvePoint};
use crate::discriminants::in_family;
use crate::{Error, Result};

/// Bounds and parallelism for the searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Integral search covers `|x| <= x_bound`.
    pub x_bound: u64,
    /// Rational search covers `x = m / z^2`, `y = n / z^3` with
    /// `|m|, |n|, z <= height_bound`.
    pub height_bound: u64,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            x_bound: 100_000,
            height_bound: 1_000,
            threads: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.x_bound == 0 || self.height_bound == 0 {
            return Err(Error::Domain("search bounds must be at least 1".into()));
        }
        Ok(())
    }
}

/// Runs `f` on a pool of `threads` workers, or on the current pool when it
/// already has that size (or `threads == 0`).
pub(crate) fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 || rayon::current_num_threads() == threads {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot build thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// An integral point with `y >= 0`; `(x, -y)` is implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralPoint {
    pub x: BigInt,
    pub y: BigInt,
}

impl IntegralPoint {
    pub fn to_curve_point(&self) -> CurvePoint {
        CurvePoint::integral(self.x.clone(), self.y.clone())
    }
}

const CHUNK: i128 = 1 << 16;
/// Above this `|x|` the cube no longer fits comfortably in `i128`.
const FAST_X_LIMIT: u64 = 1 << 40;

fn scan_chunk_fast(k: i128, lo: i128, hi: i128) -> Vec<(i128, u128)> {
    let mut out = Vec::new();
    for x in lo..=hi {
        let v = x * x * x + k;
        if v < 0 {
            continue;
        }
        let root = if v <= u64::MAX as i128 {
            square_root_u64(v as u64).map(u128::from)
        } else {
            square_root_u128(v as u128)
        };
        if let Some(y) = root {
            out.push((x, y));
        }
    }
    out
}

fn integral_scan_fast(k: i128, x_bound: i128) -> Vec<IntegralPoint> {
    // x^3 + k >= 0 forces x >= -cbrt(k)
    let lo = (-x_bound).max(icbrt_ceil_i128(-k));
    if lo > x_bound {
        return Vec::new();
    }
    let n_chunks = (x_bound - lo) / CHUNK + 1;
    let hits: Vec<Vec<(i128, u128)>> = (0..n_chunks)
        .into_par_iter()
        .map(|i| {
            let a = lo + i * CHUNK;
            let b = (a + CHUNK - 1).min(x_bound);
            scan_chunk_fast(k, a, b)
        })
        .collect();
    hits.into_iter()
        .flatten()
        .map(|(x, y)| IntegralPoint {
            x: BigInt::from(x),
            y: BigInt::from(y),
        })
        .collect()
}

fn integral_scan_big(k: &BigInt, x_bound: &BigInt) -> Vec<IntegralPoint> {
    let start = -((k).cbrt());
    let lo = (-x_bound).max(start - 1);
    let mut out = Vec::new();
    let mut x = lo;
    while &x <= x_bound {
        let v = &x * &x * &x + k;
        if let Some(y) = is_perfect_square(&v) {
            out.push(IntegralPoint { x: x.clone(), y });
        }
        x += 1;
    }
    out
}

/// All integral points with `|x| <= x_bound` on `curve`, ascending in `x`,
/// one entry per `+-y`.
pub fn integral_points_on_curve(curve: &CurveK, cfg: &SearchConfig) -> Result<Vec<IntegralPoint>> {
    cfg.validate()?;
    let k = curve.k();
    let fast_k = k
        .to_i128()
        .filter(|k| k.unsigned_abs() < 1u128 << 100);
    let points = match fast_k {
        Some(k) if cfg.x_bound <= FAST_X_LIMIT => {
            let xb = cfg.x_bound as i128;
            in_pool(cfg.threads, || integral_scan_fast(k, xb))?
        }
        _ => integral_scan_big(k, &BigInt::from(cfg.x_bound)),
    };
    for p in &points {
        let cp = p.to_curve_point();
        if !on_curve(curve, &cp) {
            return Err(Error::Domain(format!("search produced {cp}, not on {curve}")));
        }
    }
    Ok(points)
}

/// Integral points on `E_D': y^2 = x^3 - 48 D` for a family member `D`.
pub fn integral_points(d: &BigInt, cfg: &SearchConfig) -> Result<Vec<IntegralPoint>> {
    integral_points_on_curve(&CurveK::e_dprime(d)?, cfg)
}

fn floor_cbrt(n: &BigInt) -> BigInt {
    // BigInt::cbrt truncates toward zero
    let r = n.cbrt();
    if n.is_negative() && &r * &r * &r != *n {
        r - 1
    } else {
        r
    }
}

fn ceil_cbrt(n: &BigInt) -> BigInt {
    -floor_cbrt(&-n)
}

fn rational_points_for_z(k: &BigInt, z: u64, h: &BigInt) -> Vec<CurvePoint> {
    let zb = BigInt::from(z);
    let z2 = &zb * &zb;
    let z3 = &z2 * &zb;
    let kz6 = k * &z3 * &z3;
    // 0 <= n^2 = m^3 + k z^6 <= h^2
    let lo = (-h).max(ceil_cbrt(&-&kz6));
    let hi = h.clone().min(floor_cbrt(&(h * h - &kz6)));
    let mut out = Vec::new();
    let mut m = lo;
    while m <= hi {
        if m.gcd(&zb) == BigInt::from(1) {
            let v = &m * &m * &m + &kz6;
            if let Some(n) = is_perfect_square(&v) {
                let x = BigRational::new(m.clone(), z2.clone());
                if n.is_zero() {
                    out.push(CurvePoint::new(x, BigRational::zero()));
                } else {
                    let y = BigRational::new(n, z3.clone());
                    out.push(CurvePoint::new(x.clone(), -&y));
                    out.push(CurvePoint::new(x, y));
                }
            }
        }
        m += 1;
    }
    out
}

/// Affine rational points `(m / z^2, n / z^3)` in lowest terms with
/// `|m|, |n|, z <= height_bound`, sorted by `z`, then `m`, then `n`.
pub fn rational_points(curve: &CurveK, cfg: &SearchConfig) -> Result<Vec<CurvePoint>> {
    cfg.validate()?;
    let h = BigInt::from(cfg.height_bound);
    let k = curve.k().clone();
    let per_z: Vec<Vec<CurvePoint>> = in_pool(cfg.threads, || {
        (1..=cfg.height_bound)
            .into_par_iter()
            .map(|z| rational_points_for_z(&k, z, &h))
            .collect()
    })?;
    Ok(per_z.into_iter().flatten().collect())
}

/// Outcome of checking that no rational point of `E_D` maps to an integral
/// point of `E_D'` under the dual isogeny.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub d: BigInt,
    pub height_bound: u64,
    /// Points of `E_D` examined (with `x != 0`).
    pub points_checked: Vec<CurvePoint>,
    /// Set when the hypotheses on `D` fail and nothing was checked.
    pub skipped: Option<String>,
}

impl LemmaReport {
    /// True when the check ran but found no point to test.
    pub fn vacuous(&self) -> bool {
        self.skipped.is_none() && self.points_checked.is_empty()
    }
}

/// Searches `E_D: Y^2 = X^3 + 1296 D` and checks, for every point `Q` found,
/// that `phi_hat(Q)` is not integral and that the `d | 36` ladder holds.
///
/// Needs `D` odd, squarefree and prime to 3; otherwise the report is marked
/// skipped. A violation is returned as [`Error::Refutation`].
pub fn lemma_notinim_check(d: &BigInt, cfg: &SearchConfig) -> Result<LemmaReport> {
    cfg.validate()?;
    let mut report = LemmaReport {
        d: d.clone(),
        height_bound: cfg.height_bound,
        points_checked: Vec::new(),
        skipped: None,
    };
    let hypotheses = d.is_odd()
        && !(d % 3u32).is_zero()
        && crate::arith::is_squarefree(d).unwrap_or(false);
    if !hypotheses {
        report.skipped = Some(format!("D = {d} is not odd, squarefree and prime to 3"));
        return Ok(report);
    }
    if !in_family(d) {
        log::debug!("lemma check for D = {d} outside the family");
    }
    let curve = CurveK::other(d * 1296)?;
    for q in rational_points(&curve, cfg)? {
        if q.coords().is_some_and(|(x, _)| x.is_zero()) {
            continue;
        }
        decompose(&curve, &q)?;
        let image = phi_hat(d, &q)?;
        if image.is_integral() {
            let msg = format!("phi_hat({q}) = {image} is integral for D = {d}");
            log::error!("{msg}");
            return Err(Error::Refutation(msg));
        }
        report.points_checked.push(q);
    }
    Ok(report)
}
