// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    disc: BigInt,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_disc(disc: &BigInt) -> Result<()> {
    let r = disc.mod_floor(&BigInt::from(4));
    if disc.is_zero() || !(r.is_zero() || r.is_one()) {
        return Err(Error::Domain(format!("{disc} is not a discriminant")));
    }
    Ok(())
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Self {
        let (a, b, c) = (a.into(), b.into(), c.into());
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        QuadForm { a, b, c, disc }
    }

    /// Builds `(a, b, (b^2 - disc) / 4a)`; fails when the division is inexact.
    pub fn from_ab(a: BigInt, b: BigInt, disc: &BigInt) -> Result<Self> {
        let num = &b * &b - disc;
        let den = BigInt::from(4) * &a;
        if a.is_zero() || !(&num % &den).is_zero() {
            return Err(Error::Domain(format!(
                "no form ({a}, {b}, *) of discriminant {disc}"
            )));
        }
        let c = num / den;
        Ok(QuadForm {
            a,
            b,
            c,
            disc: disc.clone(),
        })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// The principal form of the given discriminant (not reduced for
    /// positive discriminants).
    pub fn principal(disc: &BigInt) -> Result<Self> {
        check_disc(disc)?;
        let b = if disc.is_odd() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
        Self::from_ab(BigInt::one(), b, disc)
    }

    /// `(a, -b, c)`, representing the inverse class.
    pub fn inverse(&self) -> Self {
        QuadForm {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            disc: self.disc.clone(),
        }
    }

    /// `(-a, b, -c)`.
    pub fn negated(&self) -> Self {
        QuadForm {
            a: -&self.a,
            b: self.b.clone(),
            c: -&self.c,
            disc: self.disc.clone(),
        }
    }

    fn validate(&self) -> Result<()> {
        check_disc(&self.disc)?;
        if !self.is_primitive() {
            return Err(Error::Domain(format!("{self} is not primitive")));
        }
        if self.disc.is_negative() && !self.a.is_positive() {
            return Err(Error::Domain(format!("{self} is not positive definite")));
        }
        if !self.disc.is_negative() && is_square(&self.disc) {
            return Err(Error::Domain(format!(
                "square discriminant {} is not supported",
                self.disc
            )));
        }
        Ok(())
    }

    /// Reduced representative of the class of `self`.
    ///
    /// Definite forms reduce to the unique form with `|b| <= a <= c`, and
    /// `b >= 0` whenever `|b| = a` or `a = c`. Indefinite forms reduce to some
    /// form of their rho-cycle satisfying `|sqrt(D) - 2|a|| < b < sqrt(D)`.
    pub fn reduce(&self) -> Result<Self> {
        self.validate()?;
        Ok(if self.disc.is_negative() {
            self.reduce_definite()
        } else {
            self.reduce_indefinite()
        })
    }

    fn normalize_definite(&mut self) {
        let two_a = BigInt::from(2) * &self.a;
        let s = (&self.a - &self.b).div_floor(&two_a);
        if !s.is_zero() {
            self.b += &two_a * &s;
            self.c = (&self.b * &self.b - &self.disc) / (BigInt::from(4) * &self.a);
        }
    }

    fn reduce_definite(&self) -> Self {
        let mut f = self.clone();
        f.normalize_definite();
        while f.a > f.c {
            std::mem::swap(&mut f.a, &mut f.c);
            f.b = -&f.b;
            f.normalize_definite();
        }
        if f.a == f.c && f.b.is_negative() {
            f.b = -&f.b;
        }
        f
    }

    /// True for reduced definite or reduced indefinite forms.
    pub fn is_reduced(&self) -> bool {
        if self.disc.is_negative() {
            let babs = self.b.abs();
            babs <= self.a
                && self.a <= self.c
                && !((babs == self.a || self.a == self.c) && self.b.is_negative())
        } else {
            let s = self.disc.sqrt();
            let two_a = BigInt::from(2) * self.a.abs();
            self.b.is_positive()
                && self.b <= s
                && &two_a - &self.b <= s
                && &two_a + &self.b > s
        }
    }

    /// One step of the rho operator on an indefinite form:
    /// `(a, b, c) -> (c, r(-b, c), (r^2 - D) / 4c)`.
    pub fn rho(&self) -> Self {
        let s = self.disc.sqrt();
        let c_abs = self.c.abs();
        let two_c = BigInt::from(2) * &c_abs;
        let minus_b = -&self.b;
        let r = if c_abs > s {
            let r0 = minus_b.mod_floor(&two_c);
            if r0 > c_abs {
                r0 - &two_c
            } else {
                r0
            }
        } else {
            &s - (&s - &minus_b).mod_floor(&two_c)
        };
        let c_new = (&r * &r - &self.disc) / (BigInt::from(4) * &self.c);
        QuadForm {
            a: self.c.clone(),
            b: r,
            c: c_new,
            disc: self.disc.clone(),
        }
    }

    fn reduce_indefinite(&self) -> Self {
        let mut f = self.clone();
        while !f.is_reduced() {
            f = f.rho();
        }
        f
    }

    /// Dirichlet composition followed by reduction.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm> {
        if self.disc != other.disc {
            return Err(Error::DiscriminantMismatch(
                self.disc.clone(),
                other.disc.clone(),
            ));
        }
        self.validate()?;
        other.validate()?;
        self.compose_unreduced(other)?.reduce()
    }

    pub(crate) fn compose_unreduced(&self, other: &QuadForm) -> Result<QuadForm> {
        let d = &self.disc;
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2, c2) = (&other.a, &other.b, &other.c);
        let beta = (b1 + b2) / 2;
        let g1 = a1.extended_gcd(a2);
        let g = g1.gcd.extended_gcd(&beta);
        let e = g.gcd.abs();
        let sign: i32 = if g.gcd.is_negative() { -1 } else { 1 };
        let (u, v, w) = (&g1.x * &g.x * sign, &g1.y * &g.x * sign, &g.y * sign);
        let a3 = a1 * a2 / (&e * &e);
        let numer = &u * a1 * b2 + &v * a2 * b1 + &w * ((b1 * b2 + d) / 2u32);
        if !(&numer % &e).is_zero() {
            return Err(Error::Domain(format!("composition of {self} and {other} failed")));
        }
        let b3 = (numer / &e).mod_floor(&(BigInt::from(2) * a3.abs()));
        let f = QuadForm::from_ab(a3, b3, d);
        debug_assert!(f.is_ok(), "composition {self} * {other} with c2 = {c2}");
        f
    }
}

fn is_square(n: &BigInt) -> bool {
    crate::arith::is_perfect_square(n).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(a: i64, b: i64, c: i64) -> QuadForm {
        QuadForm::new(a, b, c)
    }

    #[test]
    fn reduce_definite_examples() {
        let f = qf(4, 3, 2);
        assert_eq!(f.disc(), &BigInt::from(-23));
        let r = f.reduce().unwrap();
        assert_eq!(r.a(), &BigInt::from(2));
        assert!(r.is_reduced());
        // (4, 3, 2) -> (2, -3, 4) -> (2, 1, 3)
        assert_eq!(r, qf(2, 1, 3));
        assert_eq!(qf(1, 1, 8).reduce().unwrap(), qf(1, 1, 8));
        let p = QuadForm::principal(&BigInt::from(-31)).unwrap();
        assert_eq!(p.reduce().unwrap(), p);
    }

    #[test]
    fn reduce_rejects_bad_input() {
        assert!(qf(2, 2, 2).reduce().is_err());
        assert!(qf(-1, 1, -8).reduce().is_err());
        assert!(qf(1, 0, -4).reduce().is_err());
    }

    #[test]
    fn compose_examples() {
        let g = qf(2, 1, 4);
        assert_eq!(g.compose(&g).unwrap(), qf(2, -1, 4));
        let id = QuadForm::principal(&BigInt::from(-31)).unwrap();
        assert_eq!(g.compose(&id).unwrap(), g);
        assert_eq!(g.compose(&g.inverse()).unwrap(), id);
        let h = QuadForm::principal(&BigInt::from(-23)).unwrap();
        assert!(matches!(
            g.compose(&h),
            Err(Error::DiscriminantMismatch(_, _))
        ));
    }

    #[test]
    fn indefinite_reduction_lands_on_reduced_form() {
        for d in [5i64, 13, 21, 29, 93, 229, 257, 1101, 3305] {
            let d = BigInt::from(d);
            let p = QuadForm::principal(&d).unwrap().reduce().unwrap();
            assert!(p.is_reduced(), "{p}");
            let q = p.rho();
            assert!(q.is_reduced(), "{q}");
        }
    }
}
