// SPDX-License-Identifier: Apache-2.0

//! The discriminant family and the mirror map `D -> D' = -3D`.
//!
//! A family member is an odd fundamental discriminant `D` with `D = 2 (mod 3)`.
//! Being odd and fundamental means `D = 1 (mod 4)` and squarefree, so the
//! family is exactly the squarefree integers `D = 5 (mod 12)`, and the
//! mirror `D' = 9 (mod 12)` is again odd and fundamental.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::is_squarefree;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiscSign {
    Negative,
    Positive,
}

/// A family member `D` together with its mirror `D' = -3D`.
///
/// Construct through [`mirror`]; the fields are private so the congruence
/// certificates cannot be bypassed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscriminantPair {
    d: BigInt,
    d_prime: BigInt,
}

impl DiscriminantPair {
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn d_prime(&self) -> &BigInt {
        &self.d_prime
    }

    pub fn sign(&self) -> DiscSign {
        if self.d.is_negative() {
            DiscSign::Negative
        } else {
            DiscSign::Positive
        }
    }

    /// The negative member of `{D, D'}`.
    pub fn imaginary(&self) -> &BigInt {
        if self.d.is_negative() {
            &self.d
        } else {
            &self.d_prime
        }
    }

    /// The positive member of `{D, D'}`.
    pub fn real(&self) -> &BigInt {
        if self.d.is_negative() {
            &self.d_prime
        } else {
            &self.d
        }
    }

    /// Re-checks every invariant independently of how the pair was built.
    pub fn certify(&self) -> bool {
        let twelve = BigInt::from(12);
        self.d.mod_floor(&twelve) == BigInt::from(5)
            && self.d_prime.mod_floor(&twelve) == BigInt::from(9)
            && self.d_prime == &self.d * -3
            && self.d.mod_floor(&BigInt::from(4)).is_one()
            && self.d.mod_floor(&BigInt::from(3)) == BigInt::from(2)
            && is_squarefree(&self.d).unwrap_or(false)
    }
}

impl std::fmt::Display for DiscriminantPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(D = {}, D' = {})", self.d, self.d_prime)
    }
}

/// Standard test for discriminants of quadratic fields.
pub fn is_fundamental(n: &BigInt) -> Result<bool> {
    if n.is_zero() || n.is_one() {
        return Err(Error::Domain(format!("{n} is not a valid discriminant")));
    }
    let four = BigInt::from(4);
    let r = n.mod_floor(&four);
    if r.is_one() {
        return is_squarefree(n);
    }
    if r.is_zero() {
        let m = n / &four;
        let m4 = m.mod_floor(&four);
        if m4 == BigInt::from(2) || m4 == BigInt::from(3) {
            return is_squarefree(&m);
        }
    }
    Ok(false)
}

/// Odd, fundamental and `= 2 (mod 3)`.
pub fn in_family(n: &BigInt) -> bool {
    n.mod_floor(&BigInt::from(12)) == BigInt::from(5) && is_squarefree(n).unwrap_or(false)
}

pub fn mirror(d: &BigInt) -> Result<DiscriminantPair> {
    if !in_family(d) {
        return Err(Error::NotInFamily(d.clone()));
    }
    let d_prime = d * -3i32;
    if d_prime.is_even() || !is_fundamental(&d_prime)? {
        return Err(Error::NotFundamental(d_prime));
    }
    Ok(DiscriminantPair {
        d: d.clone(),
        d_prime,
    })
}

/// All family members in `[lo, hi]`, ascending.
pub fn enumerate_family(lo: &BigInt, hi: &BigInt) -> impl Iterator<Item = DiscriminantPair> {
    // first n >= lo with n = 5 (mod 12)
    let offset = (BigInt::from(5) - lo).mod_floor(&BigInt::from(12));
    let mut next = lo + offset;
    let hi = hi.clone();
    std::iter::from_fn(move || {
        while next <= hi {
            let candidate = next.clone();
            next += 12;
            if let Ok(pair) = mirror(&candidate) {
                return Some(pair);
            }
        }
        None
    })
}
