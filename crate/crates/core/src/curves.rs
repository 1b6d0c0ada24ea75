// SPDX-License-Identifier: Apache-2.0

//! Exact rational points on the j-invariant-zero curves `y^2 = x^3 + k`.
//!
//! Two members of the family matter: `E_D': y^2 = x^3 + 16 D'` and its
//! 3-isogenous partner `E_D: Y^2 = X^3 + 16 * 81 * D`. The isogenies are
//!
//! ```text
//! phi(x, y)     = ((x^3 + 64 D') / x^2,       y (x^3 - 128 D') / x^3)
//! phi_hat(X, Y) = ((X^3 - 1728 D') / (9 X^2), Y (X^3 + 3456 D') / (27 X^3))
//! ```
//!
//! and `phi_hat(phi(P)) = 3P` on `E_D'`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{is_perfect_square, is_squarefree, valuation};
use crate::discriminants::in_family;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveLabel {
    /// `y^2 = x^3 + 16 D'`
    EDprime,
    /// `Y^2 = X^3 + 1296 D`
    ED,
    Other,
}

/// The curve `y^2 = x^3 + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveK {
    k: BigInt,
    label: CurveLabel,
}

impl CurveK {
    /// `E_D'` for a family member `D`.
    pub fn e_dprime(d: &BigInt) -> Result<Self> {
        if !in_family(d) {
            return Err(Error::NotInFamily(d.clone()));
        }
        Ok(CurveK {
            k: d * -48,
            label: CurveLabel::EDprime,
        })
    }

    /// `E_D` for a family member `D`.
    pub fn e_d(d: &BigInt) -> Result<Self> {
        if !in_family(d) {
            return Err(Error::NotInFamily(d.clone()));
        }
        Ok(CurveK {
            k: d * 1296,
            label: CurveLabel::ED,
        })
    }

    /// Any curve `y^2 = x^3 + k` with `k != 0`.
    pub fn other(k: impl Into<BigInt>) -> Result<Self> {
        let k = k.into();
        if k.is_zero() {
            return Err(Error::Domain("y^2 = x^3 is singular".into()));
        }
        Ok(CurveK {
            k,
            label: CurveLabel::Other,
        })
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn label(&self) -> CurveLabel {
        self.label
    }

    /// The `D` for which this is `E_D'` (`k = -48 D`) or `E_D` (`k = 1296 D`)
    /// with `D` odd, squarefree and prime to 3: the hypotheses under which
    /// the `d | 36` ladder is a theorem. The two shapes cannot both match.
    pub fn ladder_discriminant(&self) -> Option<(BigInt, CurveLabel)> {
        let hypotheses = |d: &BigInt| {
            d.is_odd()
                && !(d % 3u32).is_zero()
                && !d.is_zero()
                && is_squarefree(d).unwrap_or(false)
        };
        let (q, r) = self.k.div_rem(&BigInt::from(-48));
        if r.is_zero() && hypotheses(&q) {
            return Some((q, CurveLabel::EDprime));
        }
        let (q, r) = self.k.div_rem(&BigInt::from(1296));
        if r.is_zero() && hypotheses(&q) {
            return Some((q, CurveLabel::ED));
        }
        None
    }
}

impl fmt::Display for CurveK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.k.is_negative() { '-' } else { '+' };
        write!(f, "y^2 = x^3 {sign} {}", self.k.abs())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl CurvePoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn integral(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        CurvePoint::Affine {
            x: rat(x),
            y: rat(y),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&BigRational, &BigRational)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, y } => Some((x, y)),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords()
            .is_some_and(|(x, y)| x.is_integer() && y.is_integer())
    }

    pub fn neg(&self) -> Self {
        match self {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y,
            },
        }
    }

    /// `(X, Y, Z)` with `x = X / Z^2`, `y = Y / Z^3`, `Z > 0`.
    ///
    /// Fails if the denominators are not a square and a cube of the same
    /// `Z`, which cannot happen for a point on `y^2 = x^3 + k`.
    pub fn weighted_coords(&self) -> Result<(BigInt, BigInt, BigInt)> {
        let (x, y) = self
            .coords()
            .ok_or_else(|| Error::Domain("point at infinity has no affine coordinates".into()))?;
        let z = is_perfect_square(x.denom())
            .ok_or_else(|| Error::NotOnCurve(format!("x-denominator {} is not a square", x.denom())))?;
        if &z * &z * &z != *y.denom() {
            return Err(Error::NotOnCurve(format!(
                "y-denominator {} is not {z}^3",
                y.denom()
            )));
        }
        Ok((x.numer().clone(), y.numer().clone(), z))
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

pub fn on_curve(c: &CurveK, p: &CurvePoint) -> bool {
    match p {
        CurvePoint::Infinity => true,
        CurvePoint::Affine { x, y } => y * y == x * x * x + rat(c.k.clone()),
    }
}

/// Chord-tangent addition.
///
/// `k` does not enter the formulas; `c` is only used for a debug-mode
/// membership check.
pub fn add(c: &CurveK, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
    debug_assert!(on_curve(c, p) && on_curve(c, q));
    let ((x1, y1), (x2, y2)) = match (p.coords(), q.coords()) {
        (None, _) => return q.clone(),
        (_, None) => return p.clone(),
        (Some(a), Some(b)) => (a, b),
    };
    let slope = if x1 == x2 {
        if (y1 + y2).is_zero() {
            return CurvePoint::Infinity;
        }
        rat(3) * x1 * x1 / (rat(2) * y1)
    } else {
        (y2 - y1) / (x2 - x1)
    };
    let x3 = &slope * &slope - x1 - x2;
    let y3 = slope * (x1 - &x3) - y1;
    CurvePoint::Affine { x: x3, y: y3 }
}

/// `[n] P` by double-and-add; negative `n` negates.
pub fn mul(c: &CurveK, p: &CurvePoint, n: i64) -> CurvePoint {
    let mut acc = CurvePoint::Infinity;
    let mut base = if n < 0 { p.neg() } else { p.clone() };
    let mut m = n.unsigned_abs();
    while m > 0 {
        if m & 1 == 1 {
            acc = add(c, &acc, &base);
        }
        m >>= 1;
        if m > 0 {
            base = add(c, &base, &base);
        }
    }
    acc
}

fn nonzero_x(p: &CurvePoint) -> Result<Option<(&BigRational, &BigRational)>> {
    match p.coords() {
        None => Ok(None),
        Some((x, _)) if x.is_zero() => Err(Error::Domain(
            "x = 0 lies in the isogeny kernel and carries no rational point here".into(),
        )),
        Some(c) => Ok(Some(c)),
    }
}

/// `phi: E_D' -> E_D`, with `D' = -3 D`. `D` only needs to be nonzero so
/// the identity can be exercised on synthetic curves.
pub fn phi(d: &BigInt, p: &CurvePoint) -> Result<CurvePoint> {
    let Some((x, y)) = nonzero_x(p)? else {
        return Ok(CurvePoint::Infinity);
    };
    let dp = rat(d * -3);
    let x2 = x * x;
    let x3 = &x2 * x;
    let out = CurvePoint::Affine {
        x: (&x3 + rat(64) * &dp) / &x2,
        y: y * (&x3 - rat(128) * &dp) / &x3,
    };
    let target = CurveK { k: d * 1296, label: CurveLabel::Other };
    if !on_curve(&target, &out) {
        return Err(Error::NotOnCurve(format!(
            "phi({p}) = {out} is not on {target}; input not on y^2 = x^3 + {}",
            d * -48
        )));
    }
    Ok(out)
}

/// `phi_hat: E_D -> E_D'`.
pub fn phi_hat(d: &BigInt, q: &CurvePoint) -> Result<CurvePoint> {
    let Some((x, y)) = nonzero_x(q)? else {
        return Ok(CurvePoint::Infinity);
    };
    let dp = rat(d * -3);
    let x2 = x * x;
    let x3 = &x2 * x;
    let out = CurvePoint::Affine {
        x: (&x3 - rat(1728) * &dp) / (rat(9) * &x2),
        y: y * (&x3 + rat(3456) * &dp) / (rat(27) * &x3),
    };
    let target = CurveK { k: d * -48, label: CurveLabel::Other };
    if !on_curve(&target, &out) {
        return Err(Error::NotOnCurve(format!(
            "phi_hat({q}) = {out} is not on {target}; input not on y^2 = x^3 + {}",
            d * 1296
        )));
    }
    Ok(out)
}

/// `X = d X'`, `Y = d Y'` with `d = gcd(X, Y)` for a point `(X/Z^2, Y/Z^3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointDecomposition {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
    pub d: BigInt,
    pub x_red: BigInt,
    pub y_red: BigInt,
}

impl PointDecomposition {
    pub fn of(p: &CurvePoint) -> Result<Self> {
        let (x, y, z) = p.weighted_coords()?;
        let d = x.gcd(&y);
        if d.is_zero() {
            return Err(Error::Domain("(0, 0) is not on a nonsingular curve".into()));
        }
        Ok(PointDecomposition {
            x_red: &x / &d,
            y_red: &y / &d,
            x,
            y,
            z,
            d,
        })
    }
}

/// Decomposition of `p` plus the divisibility ladder: `d | 36`, and for
/// `q` in `{2, 3}`, `q | d` forces `q^2 || d` and `q^2 || Y`.
///
/// The ladder is only asserted when the curve satisfies its hypotheses (see
/// [`CurveK::ladder_discriminant`]); otherwise the bare decomposition is
/// returned.
pub fn decompose(c: &CurveK, p: &CurvePoint) -> Result<PointDecomposition> {
    if !on_curve(c, p) {
        return Err(Error::NotOnCurve(format!("{p} on {c}")));
    }
    let dec = PointDecomposition::of(p)?;
    if c.ladder_discriminant().is_none() {
        return Ok(dec);
    }
    let fail = |what: &str| {
        Error::LadderViolation(format!(
            "{what} for {p} on {c}: X = {}, Y = {}, Z = {}, d = {}",
            dec.x, dec.y, dec.z, dec.d
        ))
    };
    if !(BigInt::from(36) % &dec.d).is_zero() {
        return Err(fail("d does not divide 36"));
    }
    for q in [2u32, 3] {
        let q = BigInt::from(q);
        if (&dec.d % &q).is_zero() {
            if valuation(&dec.d, &q)? != 2 {
                return Err(fail(&format!("{q} | d but {q}^2 does not exactly divide d")));
            }
            if valuation(&dec.y, &q)? != 2 {
                return Err(fail(&format!("{q} | d but {q}^2 does not exactly divide Y")));
            }
        }
    }
    Ok(dec)
}

/// True when `x = 0` gives no rational point, i.e. `k` is not a square.
pub fn rational_3_torsion_absent(c: &CurveK) -> bool {
    is_perfect_square(&c.k).is_none()
}

/// Whether `|x|`'s numerator and denominator are at most `bound` — the
/// naive height used by the searches.
pub fn naive_height_at_most(p: &CurvePoint, bound: &BigInt) -> bool {
    p.coords().is_none_or(|(x, _)| {
        x.numer().abs() <= *bound && x.denom() <= bound
    })
}
