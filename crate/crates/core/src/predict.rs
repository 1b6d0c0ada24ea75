// SPDX-License-Identifier: Apache-2.0

//! Selmer-rank and parity predictions, and the per-discriminant verdict that
//! confronts the no-integral-points prediction with search results.
//!
//! The Selmer groups themselves are never computed. Their ranks are read off
//! `r3(D')`:
//!
//! - `D < 0`: `r(S_phi) = r3(D')`, `r(S_phi_hat) = r3(D') + 1`,
//! - `D > 0`: both equal `r3(D')`,
//!
//! and the rank parity is the parity of their sum, which is conditional on
//! the 3-primary part of the Tate-Shafarevich group being finite.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::classgroup::{Classification, ReflectionVerdict};
use crate::curves::CurvePoint;
use crate::descent::cubic_from_integral_point;
use crate::discriminants::{in_family, DiscriminantPair};
use crate::search::IntegralPoint;
use crate::{Error, Result};

/// Caveat attached to every parity prediction.
pub const PARITY_CAVEAT: &str = "parity conditional on finiteness of the 3-primary Tate-Shafarevich group";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelmerPrediction {
    pub d: BigInt,
    pub r_s_phi: u32,
    pub r_s_phihat: u32,
    pub parity: Parity,
    /// `|D| > 4`, where the rank formulas are stated.
    pub in_formula_range: bool,
}

pub fn predict_selmer(d: &BigInt, r3_d_prime: u32) -> Result<SelmerPrediction> {
    if !in_family(d) {
        return Err(Error::NotInFamily(d.clone()));
    }
    let (r_s_phi, r_s_phihat) = if d.is_negative() {
        (r3_d_prime, r3_d_prime + 1)
    } else {
        (r3_d_prime, r3_d_prime)
    };
    Ok(SelmerPrediction {
        d: d.clone(),
        r_s_phi,
        r_s_phihat,
        parity: Parity::of(r_s_phi + r_s_phihat),
        in_formula_range: d.abs() > BigInt::from(4),
    })
}

/// True for `D < 0` escalatory and `D > 0` non-escalatory, the two cases in
/// which `E_D'` is predicted to have no integral points.
pub fn no_integral_points_predicted(v: &ReflectionVerdict) -> bool {
    match v.classification {
        Classification::Escalatory => v.pair.d().is_negative(),
        Classification::NonEscalatory => v.pair.d().is_positive(),
    }
}

/// What the searches found for one `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub d: BigInt,
    pub x_bound: u64,
    pub integral_points: Vec<IntegralPoint>,
    /// Height bound of the witness search, when one was run.
    pub witness_height_bound: Option<u64>,
    pub rational_witness: Option<CurvePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pair: DiscriminantPair,
    pub r3_d: u32,
    pub r3_d_prime: u32,
    pub classification: Classification,
    pub prediction: SelmerPrediction,
    pub prediction_applies: bool,
    pub integral_points_found: Vec<IntegralPoint>,
    pub x_bound: u64,
    pub rational_witness: Option<CurvePoint>,
    pub consistent: bool,
    pub notes: Vec<String>,
}

/// Combines classification, prediction and search results for one `D`.
///
/// `consistent` is false exactly when the no-integral-points prediction
/// applies and a point was found; every such point is logged together with
/// the cubic it would produce.
pub fn assemble_verdict(
    reflection: &ReflectionVerdict,
    prediction: &SelmerPrediction,
    search: &SearchOutcome,
) -> Result<Verdict> {
    let d = reflection.pair.d();
    if prediction.d != *d || search.d != *d {
        return Err(Error::Mismatch(format!(
            "verdict inputs for D = {d}, prediction D = {}, search D = {}",
            prediction.d, search.d
        )));
    }
    let applies = no_integral_points_predicted(reflection);
    let consistent = !(applies && !search.integral_points.is_empty());
    let mut notes = Vec::new();
    if !prediction.in_formula_range {
        notes.push("outside the range |D| > 4 of the Selmer rank formulas".to_string());
    }
    notes.push(PARITY_CAVEAT.to_string());
    if !applies {
        notes.push("no integral-point prediction for this sign and classification".to_string());
    }
    if let Some(h) = search.witness_height_bound {
        notes.push(match &search.rational_witness {
            Some(_) => format!("rational witness found at height bound {h}"),
            None => format!("no rational witness at height bound {h}"),
        });
    }
    if !consistent {
        for p in &search.integral_points {
            let cubic = match cubic_from_integral_point(d, &p.x, &p.y) {
                Ok((case, c)) => format!("{case:?} case cubic {c}, disc {}", c.disc),
                Err(e) => format!("cubic construction failed: {e}"),
            };
            log::error!(
                "integral point ({}, {}) on y^2 = x^3 + {} contradicts the prediction for D = {d}; {cubic}",
                p.x,
                p.y,
                d * -48
            );
        }
        notes.push(format!(
            "{} integral point(s) found although none are predicted",
            search.integral_points.len()
        ));
    }
    Ok(Verdict {
        pair: reflection.pair.clone(),
        r3_d: reflection.r3_d,
        r3_d_prime: reflection.r3_d_prime,
        classification: reflection.classification,
        prediction: prediction.clone(),
        prediction_applies: applies,
        integral_points_found: search.integral_points.clone(),
        x_bound: search.x_bound,
        rational_witness: search.rational_witness.clone(),
        consistent,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::mirror;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn outcome(d: i64, points: Vec<IntegralPoint>) -> SearchOutcome {
        SearchOutcome {
            d: big(d),
            x_bound: 1000,
            integral_points: points,
            witness_height_bound: None,
            rational_witness: None,
        }
    }

    #[test]
    fn selmer_examples() {
        let p = predict_selmer(&big(-31), 0).unwrap();
        assert_eq!((p.r_s_phi, p.r_s_phihat, p.parity), (0, 1, Parity::Odd));
        let p = predict_selmer(&big(29), 1).unwrap();
        assert_eq!((p.r_s_phi, p.r_s_phihat, p.parity), (1, 1, Parity::Even));
        assert_eq!(predict_selmer(&big(-7), 0).unwrap().parity, Parity::Odd);
        assert!(predict_selmer(&big(-7), 0).unwrap().in_formula_range);
        assert!(predict_selmer(&big(-1355), 1).is_err());
    }

    #[test]
    fn parity_follows_sign() {
        for d in crate::discriminants::enumerate_family(&big(-600), &big(600)) {
            for r in 0..4 {
                let p = predict_selmer(d.d(), r).unwrap();
                assert_eq!(p.parity == Parity::Odd, d.d().is_negative());
                assert_eq!(p.parity, Parity::of(p.r_s_phi + p.r_s_phihat));
            }
        }
    }

    #[test]
    fn prediction_applicability() {
        let v = |d: i64, imag: u32, real: u32| {
            let pair = mirror(&big(d)).unwrap();
            let (r3_d, r3_dp) = if d < 0 { (imag, real) } else { (real, imag) };
            ReflectionVerdict::from_ranks(pair, r3_d, r3_dp).unwrap()
        };
        assert!(no_integral_points_predicted(&v(-31, 1, 0)));
        assert!(!no_integral_points_predicted(&v(-7, 0, 0)));
        assert!(no_integral_points_predicted(&v(5, 0, 0)));
        assert!(!no_integral_points_predicted(&v(5, 1, 0)));
    }

    #[test]
    fn verdict_examples() {
        let pair = mirror(&big(-31)).unwrap();
        let refl = ReflectionVerdict::from_ranks(pair, 1, 0).unwrap();
        let pred = predict_selmer(&big(-31), 0).unwrap();
        let v = assemble_verdict(&refl, &pred, &outcome(-31, vec![])).unwrap();
        assert!(v.consistent && v.prediction_applies);

        // injected fake point under a true hypothesis
        let fake = IntegralPoint { x: big(1), y: big(2) };
        let v = assemble_verdict(&refl, &pred, &outcome(-31, vec![fake.clone()])).unwrap();
        assert!(!v.consistent);

        let pair = mirror(&big(-7)).unwrap();
        let refl = ReflectionVerdict::from_ranks(pair, 0, 0).unwrap();
        let pred = predict_selmer(&big(-7), 0).unwrap();
        let v = assemble_verdict(&refl, &pred, &outcome(-7, vec![fake])).unwrap();
        assert!(v.consistent && !v.prediction_applies);

        assert!(matches!(
            assemble_verdict(&refl, &pred, &outcome(-31, vec![])),
            Err(Error::Mismatch(_))
        ));
    }
}
