// SPDX-License-Identifier: Apache-2.0

//! The 3-descent map on `E_D'`, 3-virtual units of `Q(sqrt(D'))`, and the
//! trace-zero cubics attached to integral points.
//!
//! An integral point `(A, B)` on `y^2 = x^3 + 16 D'` rewrites as
//! `81 D = 4 (3A/4)^3 - 27 (B/4)^2`, so it hands us a cubic of discriminant
//! `81 D` (both coordinates even) or `5184 D` (both odd). Its descent image
//! `B + 4 sqrt(D')` has norm `A^3`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{exact_cube_root, factorize, is_perfect_square, isqrt_ceil, squarefree_part};
use crate::curves::{on_curve, CurveK, CurvePoint};
use crate::{Error, Result};

/// `(u + v sqrt(disc)) / 2` in the quadratic field of discriminant `disc`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub u: BigInt,
    pub v: BigInt,
    pub disc: BigInt,
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} sqrt({})) / 2", self.u, self.v, self.disc)
    }
}

impl QuadElement {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>, disc: impl Into<BigInt>) -> Self {
        QuadElement {
            u: u.into(),
            v: v.into(),
            disc: disc.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// Membership in the maximal order.
    pub fn is_integral(&self) -> bool {
        if self.disc.is_odd() {
            (&self.u - &self.v).is_even()
        } else {
            self.u.is_even()
        }
    }

    pub fn trace(&self) -> &BigInt {
        &self.u
    }

    /// `4 N = u^2 - v^2 disc`.
    pub fn norm_times_four(&self) -> BigInt {
        &self.u * &self.u - &self.v * &self.v * &self.disc
    }

    /// The norm, when it is an integer (always the case for integral
    /// elements).
    pub fn norm(&self) -> Option<BigInt> {
        let (q, r) = self.norm_times_four().div_rem(&BigInt::from(4));
        r.is_zero().then_some(q)
    }

    pub fn conj(&self) -> Self {
        QuadElement {
            u: self.u.clone(),
            v: -&self.v,
            disc: self.disc.clone(),
        }
    }

    /// Product; only defined when the result keeps integer `u`, `v`, which
    /// holds whenever either factor is integral.
    pub fn mul(&self, other: &QuadElement) -> Result<QuadElement> {
        if self.disc != other.disc {
            return Err(Error::DiscriminantMismatch(
                self.disc.clone(),
                other.disc.clone(),
            ));
        }
        let u2 = &self.u * &other.u + &self.v * &other.v * &self.disc;
        let v2 = &self.u * &other.v + &self.v * &other.u;
        if u2.is_odd() || v2.is_odd() {
            return Err(Error::Domain(format!("{self} * {other} leaves the representation")));
        }
        Ok(QuadElement {
            u: u2 / 2,
            v: v2 / 2,
            disc: self.disc.clone(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> QuadElement {
        QuadElement {
            u: &self.u * k,
            v: &self.v * k,
            disc: self.disc.clone(),
        }
    }

    pub fn cube(&self) -> Result<QuadElement> {
        self.mul(self)?.mul(self)
    }

    /// Largest rational integer dividing the element in the maximal order.
    pub fn content(&self) -> BigInt {
        let delta = if self.disc.is_odd() { &self.v } else { &BigInt::zero() };
        ((&self.u - delta) / 2u32).gcd(&self.v)
    }
}

/// `Q_y + 4 sqrt(D')` for a point on `E_D'`, scaled by the cube `Z^3` so
/// both coordinates are integers: `(u, v) = (2 Y, 8 Z^3)`.
pub fn descent_image(d: &BigInt, p: &CurvePoint) -> Result<QuadElement> {
    if p.is_infinity() {
        return Err(Error::Domain("descent image of the point at infinity".into()));
    }
    let curve = CurveK::other(d * -48)?;
    if !on_curve(&curve, p) {
        return Err(Error::NotOnCurve(format!("{p} on {curve}")));
    }
    let (_, y, z) = p.weighted_coords()?;
    Ok(QuadElement {
        u: y * 2,
        v: &z * &z * &z * 8,
        disc: d * -3,
    })
}

/// Witness that an element has cube norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualUnitCertificate {
    pub elem: QuadElement,
    /// `a` with `N(elem) = a^3`.
    pub cube_root_norm: BigInt,
    pub trace: BigInt,
    pub primitive: bool,
}

impl VirtualUnitCertificate {
    /// `x^3 - 3a x + Tr`.
    pub fn cubic(&self) -> TraceZeroCubic {
        TraceZeroCubic::new(&self.cube_root_norm * 3, self.trace.clone())
    }
}

/// Returns a certificate when `N(e)` is a perfect cube.
///
/// `primitive` is exact: the principal ideal `(e)` is primitive iff no
/// rational integer `k > 1` divides `e` in the maximal order, i.e. the
/// content of `e` is 1.
pub fn is_virtual_unit(e: &QuadElement) -> Result<Option<VirtualUnitCertificate>> {
    if !e.is_integral() {
        return Err(Error::Domain(format!("{e} is not integral")));
    }
    let n = e.norm().expect("integral elements have integral norm");
    Ok(exact_cube_root(&n).map(|a| VirtualUnitCertificate {
        elem: e.clone(),
        cube_root_norm: a,
        trace: e.trace().clone(),
        primitive: e.content().is_one(),
    }))
}

/// `x^3 - p1 x + p0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceZeroCubic {
    pub p1: BigInt,
    pub p0: BigInt,
    pub disc: BigInt,
    pub standard_form: bool,
}

impl TraceZeroCubic {
    pub fn new(p1: BigInt, p0: BigInt) -> Self {
        let disc = BigInt::from(4) * &p1 * &p1 * &p1 - BigInt::from(27) * &p0 * &p0;
        let standard_form = standard_form(&p1, &p0);
        TraceZeroCubic {
            p1,
            p0,
            disc,
            standard_form,
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        x * x * x - &self.p1 * x + &self.p0
    }

    /// Rational roots; every one is an integer since the cubic is monic.
    pub fn integer_roots(&self) -> Vec<BigInt> {
        integer_roots_depressed(&-&self.p1, &self.p0)
    }

    pub fn is_irreducible(&self) -> bool {
        self.integer_roots().is_empty()
    }
}

impl fmt::Display for TraceZeroCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("x^3")?;
        if !self.p1.is_zero() {
            let sign = if self.p1.is_negative() { '+' } else { '-' };
            write!(f, " {sign} {}x", self.p1.abs())?;
        }
        if !self.p0.is_zero() {
            let sign = if self.p0.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}", self.p0.abs())?;
        }
        Ok(())
    }
}

fn standard_form(p1: &BigInt, p0: &BigInt) -> bool {
    match (p1.is_zero(), p0.is_zero()) {
        (true, true) => false,
        (false, true) => squarefree_part(p1).map(|(_, f)| f.is_one()).unwrap_or(false),
        (true, false) => factorize(p0).map(|f| f.iter().all(|(_, e)| *e < 3)).unwrap_or(false),
        (false, false) => {
            let g = p1.gcd(p0);
            let Ok(primes) = factorize(&g) else {
                return false;
            };
            primes.iter().all(|(q, _)| {
                let q2 = q * q;
                !((p1 % &q2).is_zero() && (p0 % (&q2 * q)).is_zero())
            })
        }
    }
}

pub fn is_standard_form(c: &TraceZeroCubic) -> bool {
    standard_form(&c.p1, &c.p0)
}

/// Integer roots of `t^3 + p t + q`, ascending, found by exact bisection on
/// the monotone pieces of the cubic.
pub fn integer_roots_depressed(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    let eval = |t: &BigInt| t * t * t + p * t + q;
    let bound = BigInt::one() + p.abs().max(q.abs());
    let mut pieces = Vec::new();
    if !p.is_negative() {
        pieces.push((-&bound, bound.clone(), true));
    } else {
        let ci = (-p).div_floor(&BigInt::from(3)).sqrt();
        pieces.push((-&bound, -&ci - 1, true));
        pieces.push((-&ci, ci.clone(), false));
        pieces.push((&ci + 1, bound.clone(), true));
    }
    let mut roots = Vec::new();
    for (lo, hi, increasing) in pieces {
        if lo > hi {
            continue;
        }
        // smallest t in [lo, hi] with eval(t) on the far side of zero
        let past_zero = |t: &BigInt| {
            let v = eval(t);
            if increasing {
                !v.is_negative()
            } else {
                !v.is_positive()
            }
        };
        if !past_zero(&hi) {
            continue;
        }
        let (mut a, mut b) = (lo, hi);
        while a < b {
            let mid = (&a + &b).div_floor(&BigInt::from(2));
            if past_zero(&mid) {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        if eval(&a).is_zero() {
            roots.push(a);
        }
    }
    roots
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CubicCase {
    /// `A`, `B` even: `g(x) = x^3 - 3(A/4) x + B/4`, discriminant `81 D`.
    Even,
    /// `A`, `B` odd: `f(x) = x^3 - 3A x + 2B`, discriminant `5184 D`.
    Odd,
}

/// The cubic attached to an integral point `(A, B)` of `y^2 = x^3 - 48 D`.
///
/// `D` must be odd. The parity ladder (`4 || B` and `4 | A` in the even
/// case) and the discriminant identity are asserted; when `D` is also
/// squarefree and prime to 3 the cubic must be in standard form, which is
/// asserted too.
pub fn cubic_from_integral_point(
    d: &BigInt,
    a: &BigInt,
    b: &BigInt,
) -> Result<(CubicCase, TraceZeroCubic)> {
    if d.is_even() {
        return Err(Error::Domain(format!("D = {d} must be odd")));
    }
    if b * b != a * a * a - d * 48 {
        return Err(Error::NotOnCurve(format!(
            "({a}, {b}) on y^2 = x^3 + {}",
            d * -48
        )));
    }
    let ladder = |what: String| Error::LadderViolation(format!("({a}, {b}), D = {d}: {what}"));
    let (case, cubic, expected_disc) = match (a.is_even(), b.is_even()) {
        (true, true) => {
            let four = BigInt::from(4);
            if !(b % &four).is_zero() || (b % BigInt::from(8)).is_zero() {
                return Err(ladder("4 does not exactly divide B".into()));
            }
            if !(a % &four).is_zero() {
                return Err(ladder("4 does not divide A".into()));
            }
            let cubic = TraceZeroCubic::new(a / &four * 3, b / &four);
            (CubicCase::Even, cubic, d * 81)
        }
        (false, false) => (
            CubicCase::Odd,
            TraceZeroCubic::new(a * 3, b * 2),
            d * 5184,
        ),
        _ => return Err(ladder("A and B have different parity".into())),
    };
    if cubic.disc != expected_disc {
        return Err(ladder(format!(
            "disc({cubic}) = {} but expected {expected_disc}",
            cubic.disc
        )));
    }
    let hypotheses = !(d % 3u32).is_zero() && squarefree_part(d)?.1.is_one();
    if hypotheses && !cubic.standard_form {
        return Err(ladder(format!("{cubic} is not in standard form")));
    }
    Ok((case, cubic))
}

/// Trace-zero cubics `x^3 - 3a x + b` with discriminant exactly `81 D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicCensus {
    pub d: BigInt,
    /// The scan covered `|a| <= a_bound`; nothing is claimed beyond it.
    pub a_bound: BigInt,
    pub cubics: Vec<TraceZeroCubic>,
}

/// `ceil(sqrt(|81 D|))`.
pub fn default_census_bound(d: &BigInt) -> BigInt {
    isqrt_ceil(&(d * 81u32).abs())
}

/// All irreducible standard-form `x^3 - 3a x + b` with `4a^3 - b^2 = 3D`
/// and `|a| <= a_bound`, one per pair `b, -b` (kept with `b > 0`).
///
/// Only the polynomial discriminant is certified; whether the generated
/// field has discriminant `81 D` or a proper divisor of it is not decided.
/// Any nonzero `D` is accepted; family membership is not required.
pub fn cubic_census(d: &BigInt, a_bound: Option<&BigInt>) -> Result<CubicCensus> {
    if d.is_zero() {
        return Err(Error::Domain("census of D = 0".into()));
    }
    let a_bound = a_bound.cloned().unwrap_or_else(|| default_census_bound(d));
    let three_d = d * 3;
    let mut cubics = Vec::new();
    let mut a = -&a_bound;
    while a <= a_bound {
        let b2 = BigInt::from(4) * &a * &a * &a - &three_d;
        if let Some(b) = is_perfect_square(&b2) {
            // b = 0 would force 4a^3 = 3D with D odd
            let cubic = TraceZeroCubic::new(&a * 3, b);
            debug_assert_eq!(cubic.disc, d * 81);
            if cubic.standard_form && cubic.is_irreducible() {
                cubics.push(cubic);
            }
        }
        a += 1;
    }
    Ok(CubicCensus {
        d: d.clone(),
        a_bound,
        cubics,
    })
}

/// Outcome of comparing two elements modulo cubes (and conjugation).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeClassComparison {
    /// `e1 / e2` (or `conj(e1) / e2` when `conjugated`) equals `alpha^3`
    /// times a rational cube.
    Equal { conjugated: bool, alpha: QuadElement },
    /// The norms already differ by a non-cube.
    DistinctByNorm,
    /// Neither ratio is a cube; decided exactly.
    Distinct,
}

impl CubeClassComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, CubeClassComparison::Equal { .. })
    }
}

/// Cube root of an integral element inside its field, if there is one.
///
/// A cube root `alpha` is integral with norm `n = N(rho)^(1/3)` and trace
/// `t` satisfying `t^3 - 3 n t = Tr(rho)`; the finitely many integer roots
/// `t` pin `alpha` down to `(t +- sqrt(t^2 - 4n)) / 2`.
pub fn cube_root_in_field(rho: &QuadElement) -> Result<Option<QuadElement>> {
    if !rho.is_integral() {
        return Err(Error::Domain(format!("{rho} is not integral")));
    }
    let Some(n) = rho.norm().as_ref().and_then(exact_cube_root) else {
        return Ok(None);
    };
    for t in integer_roots_depressed(&(&n * -3), &-rho.trace()) {
        let delta = &t * &t - &n * 4;
        let mut candidates = Vec::new();
        if let Some(s) = is_perfect_square(&delta) {
            candidates.push(QuadElement::new(&t + &s, 0, rho.disc.clone()));
            candidates.push(QuadElement::new(&t - &s, 0, rho.disc.clone()));
        }
        if !delta.is_zero() && (&delta % &rho.disc).is_zero() {
            if let Some(s) = is_perfect_square(&(&delta / &rho.disc)) {
                candidates.push(QuadElement::new(t.clone(), s.clone(), rho.disc.clone()));
                candidates.push(QuadElement::new(t.clone(), -s, rho.disc.clone()));
            }
        }
        for alpha in candidates {
            if alpha.is_integral() && alpha.cube()? == *rho {
                return Ok(Some(alpha));
            }
        }
    }
    Ok(None)
}

fn integral_multiple(e: &QuadElement) -> QuadElement {
    if e.is_integral() {
        e.clone()
    } else {
        e.scale(&BigInt::from(8))
    }
}

/// Decides whether `e1` and `e2` (or `conj(e1)` and `e2`) agree modulo cubes.
pub fn compare_cube_classes(e1: &QuadElement, e2: &QuadElement) -> Result<CubeClassComparison> {
    if e1.disc != e2.disc {
        return Err(Error::DiscriminantMismatch(e1.disc.clone(), e2.disc.clone()));
    }
    if e1.is_zero() || e2.is_zero() {
        return Err(Error::Domain("zero has no cube class".into()));
    }
    let (e1, e2) = (integral_multiple(e1), integral_multiple(e2));
    let n1 = e1.norm().expect("integral");
    let n2 = e2.norm().expect("integral");
    // e1 / e2 = e1 conj(e2) N(e2)^2 / N(e2)^3
    let n2sq = &n2 * &n2;
    if exact_cube_root(&(&n1 * &n2sq)).is_none() {
        return Ok(CubeClassComparison::DistinctByNorm);
    }
    for (conjugated, lhs) in [(false, e1.clone()), (true, e1.conj())] {
        let rho = lhs.mul(&e2.conj())?.scale(&n2sq);
        if let Some(alpha) = cube_root_in_field(&rho)? {
            return Ok(CubeClassComparison::Equal { conjugated, alpha });
        }
    }
    Ok(CubeClassComparison::Distinct)
}

pub fn cube_class_equal(e1: &QuadElement, e2: &QuadElement) -> Result<bool> {
    Ok(compare_cube_classes(e1, e2)?.is_equal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn descent_image_examples() {
        let p = CurvePoint::integral(64, 572);
        let img = descent_image(&big(-1355), &p).unwrap();
        assert_eq!(img, QuadElement::new(1144, 8, 4065));
        assert!(descent_image(&big(-1355), &CurvePoint::Infinity).is_err());
        assert!(descent_image(&big(-31), &p).is_err());
        // norm of B + 4 sqrt(D') is A^3
        assert_eq!(img.norm().unwrap(), big(64).pow(3));
    }

    #[test]
    fn virtual_unit_examples() {
        // (143^2 - 4065) / 4 = 4096 = 16^3
        let cert = is_virtual_unit(&QuadElement::new(143, 1, 4065)).unwrap().unwrap();
        assert_eq!(cert.cube_root_norm, big(16));
        assert_eq!(cert.trace, big(143));
        assert!(cert.primitive);
        assert_eq!(cert.cubic(), TraceZeroCubic::new(big(48), big(143)));
        let unit = is_virtual_unit(&QuadElement::new(2, 0, 4065)).unwrap().unwrap();
        assert_eq!(unit.cube_root_norm, big(1));
        assert!(is_virtual_unit(&QuadElement::new(6, 0, 4065)).unwrap().is_none());
        assert!(is_virtual_unit(&QuadElement::new(1, 0, 4065)).is_err());
        // 8 * lambda has content 8
        let cert = is_virtual_unit(&QuadElement::new(1144, 8, 4065)).unwrap().unwrap();
        assert_eq!(cert.cube_root_norm, big(64));
        assert!(!cert.primitive);
        assert!(is_virtual_unit(&QuadElement::new(286, 2, 4065)).unwrap().is_none());
    }

    #[test]
    fn worked_cubic() {
        let (case, g) = cubic_from_integral_point(&big(-1355), &big(64), &big(572)).unwrap();
        assert_eq!(case, CubicCase::Even);
        assert_eq!((g.p1.clone(), g.p0.clone()), (big(48), big(143)));
        // 4 * 48^3 - 27 * 143^2, evaluated independently
        assert_eq!(4 * 48i64.pow(3) - 27 * 143i64.pow(2), -109_755);
        assert_eq!(g.disc, big(-109_755));
        assert_eq!(g.disc, big(81 * -1355));
        assert!(g.standard_form);
        assert!(g.is_irreducible());
    }

    #[test]
    fn cubic_rejects_bad_points() {
        assert!(matches!(
            cubic_from_integral_point(&big(-1355), &big(64), &big(571)),
            Err(Error::NotOnCurve(_))
        ));
        assert!(cubic_from_integral_point(&big(2), &big(0), &big(0)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(TraceZeroCubic::new(big(48), big(143)).to_string(), "x^3 - 48x + 143");
        assert_eq!(TraceZeroCubic::new(big(-6), big(-77)).to_string(), "x^3 + 6x - 77");
        assert_eq!(TraceZeroCubic::new(big(0), big(2)).to_string(), "x^3 + 2");
    }

    #[test]
    fn standard_form_examples() {
        assert!(is_standard_form(&TraceZeroCubic::new(big(48), big(143))));
        assert!(!is_standard_form(&TraceZeroCubic::new(big(12), big(16))));
        assert!(is_standard_form(&TraceZeroCubic::new(big(3), big(1))));
        assert!(!is_standard_form(&TraceZeroCubic::new(big(0), big(0))));
        assert!(is_standard_form(&TraceZeroCubic::new(big(0), big(4))));
        assert!(!is_standard_form(&TraceZeroCubic::new(big(0), big(16))));
        assert!(!is_standard_form(&TraceZeroCubic::new(big(18), big(0))));
    }

    #[test]
    fn integer_roots_examples() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        assert_eq!(integer_roots_depressed(&big(-7), &big(6)), vec![big(-3), big(1), big(2)]);
        assert!(integer_roots_depressed(&big(-48), &big(143)).is_empty());
        assert_eq!(integer_roots_depressed(&big(0), &big(-27)), vec![big(3)]);
        assert_eq!(integer_roots_depressed(&big(0), &big(0)), vec![big(0)]);
        // x^3 - 3x + 2 = (x - 1)^2 (x + 2)
        assert_eq!(integer_roots_depressed(&big(-3), &big(2)), vec![big(-2), big(1)]);
    }

    #[test]
    fn census_contains_worked_cubic() {
        let d = big(-1355);
        let census = cubic_census(&d, Some(&big(100))).unwrap();
        assert!(census.cubics.contains(&TraceZeroCubic::new(big(48), big(143))));
        assert!(census.cubics.iter().all(|c| c.disc == &d * 81 && c.p0.is_positive()));
        // independent scan
        let oracle: Vec<i64> = (-100i64..=100)
            .filter(|a| {
                let b2 = 4 * a.pow(3) + 3 * 1355;
                b2 > 0 && (b2 as f64).sqrt().round().powi(2) as i64 == b2
            })
            .collect();
        assert!(oracle.contains(&16));
        assert!(cubic_census(&big(0), None).is_err());
    }

    #[test]
    fn census_escalatory_minus_31_is_empty() {
        let c = cubic_census(&big(-31), Some(&big(10_000))).unwrap();
        assert!(c.cubics.is_empty(), "{:?}", c.cubics);
    }

    #[test]
    fn census_window_default() {
        assert_eq!(default_census_bound(&big(-31)), big(51)); // 81 * 31 = 2511, 50^2 < 2511 <= 51^2
        let c = cubic_census(&big(-31), Some(&big(10_000))).unwrap();
        assert_eq!(c.a_bound, big(10_000));
    }

    #[test]
    fn cube_class_examples() {
        let e = QuadElement::new(143, 1, 4065);
        let cube = e.scale(&big(27));
        assert!(cube_class_equal(&e, &cube).unwrap());
        assert!(cube_class_equal(&e, &e.conj()).unwrap());
        let two = QuadElement::new(4, 0, 4065);
        let three = QuadElement::new(6, 0, 4065);
        assert_eq!(
            compare_cube_classes(&two, &three).unwrap(),
            CubeClassComparison::DistinctByNorm
        );
        assert!(compare_cube_classes(&e, &QuadElement::new(0, 0, 4065)).is_err());
        // lambda versus the descent image 8 lambda agree
        let img = descent_image(&big(-1355), &CurvePoint::integral(64, 572)).unwrap();
        assert!(cube_class_equal(&img, &e).unwrap());
    }

    #[test]
    fn cube_class_distinguishes_same_norm() {
        let e = QuadElement::new(143, 1, 4065);
        let beta = QuadElement::new(1, 1, 4065);
        let twisted = e.mul(&beta.cube().unwrap()).unwrap();
        assert!(cube_class_equal(&e, &twisted).unwrap());
        // conj(e^2) / e = (N(e) / e)^3
        let sq = e.mul(&e).unwrap();
        assert!(matches!(
            compare_cube_classes(&sq, &e).unwrap(),
            CubeClassComparison::Equal { conjugated: true, .. }
        ));
        // norm 16^3 against norm 1, but e is not a cube
        let one = QuadElement::new(2, 0, 4065);
        assert_eq!(compare_cube_classes(&e, &one).unwrap(), CubeClassComparison::Distinct);
    }

    proptest! {
        #[test]
        fn cube_roots_are_found(u in -300i64..300, v in -300i64..300, d in prop::sample::select(vec![-7i64, 21, -31, 93, 5, -15, 4065])) {
            let alpha = QuadElement::new(u, v, d);
            prop_assume!(alpha.is_integral() && !alpha.is_zero());
            let rho = alpha.cube().unwrap();
            let root = cube_root_in_field(&rho).unwrap().unwrap();
            prop_assert_eq!(root.cube().unwrap(), rho);
        }

        #[test]
        fn certificate_cubic_discriminant(u in -2000i64..2000, v in 1i64..50, d in prop::sample::select(vec![-7i64, 21, 93, -15, 4065])) {
            let e = QuadElement::new(u, v, d);
            prop_assume!(e.is_integral());
            if let Some(cert) = is_virtual_unit(&e).unwrap() {
                // 27 (4 N - Tr^2) = -27 v^2 disc
                prop_assert_eq!(cert.cubic().disc, big(-27 * v * v * d));
            }
        }

        #[test]
        fn even_case_round_trips(i in -130i64..130, j in 0i64..2000) {
            // 4a^3 - b^2 = 3D with b odd and a = b^2 (mod 3)
            let b = 2 * j + 1;
            let a = 3 * i + (b * b) % 3;
            let d = big((4 * a.pow(3) - b * b) / 3);
            let (case, g) = cubic_from_integral_point(&d, &big(4 * a), &big(4 * b)).unwrap();
            prop_assert_eq!(case, CubicCase::Even);
            prop_assert_eq!(g.disc, &d * 81);
        }
    }
}
