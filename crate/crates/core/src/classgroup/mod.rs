// SPDX-License-Identifier: Apache-2.0

//! Class groups of quadratic fields through binary quadratic forms.
//!
//! Negative discriminants: the classes are the reduced positive definite
//! forms, enumerated directly. Positive discriminants: the reduced forms
//! split into rho-cycles, one cycle per narrow class. The wide group is the
//! quotient of the narrow group by the class of `(-1, b0, c0)`, which is
//! trivial exactly when the fundamental unit has norm `-1`. The two groups
//! differ by a factor of at most 2, so their 3-ranks agree.

mod form;
pub mod structure;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use form::QuadForm;
use structure::{
    element_orders, invariant_factors_from_orders, three_rank_by_torsion,
    three_rank_from_factors, FiniteGroup,
};

use crate::discriminants::{is_fundamental, DiscriminantPair};
use crate::{Error, Result};

/// Limits on the class-group computation.
#[derive(Clone, Debug)]
pub struct ClassGroupConfig {
    pub max_abs_disc: BigInt,
}

impl Default for ClassGroupConfig {
    fn default() -> Self {
        ClassGroupConfig {
            max_abs_disc: BigInt::from(10_000_000u64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupSummary {
    pub disc: BigInt,
    /// Class number; the wide one for positive discriminants.
    pub h: u64,
    pub invariant_factors: Vec<u64>,
    pub r3: u32,
    /// Narrow class number, positive discriminants only.
    pub narrow_h: Option<u64>,
}

/// The (narrow) form class group of a fundamental discriminant.
pub struct ClassGroup {
    disc: BigInt,
    reps: Vec<QuadForm>,
    lookup: HashMap<QuadForm, usize>,
    identity: usize,
}

impl ClassGroup {
    pub fn new(disc: &BigInt, cfg: &ClassGroupConfig) -> Result<Self> {
        if disc.abs() > cfg.max_abs_disc {
            return Err(Error::BoundExceeded {
                disc: disc.clone(),
                bound: cfg.max_abs_disc.clone(),
            });
        }
        if !is_fundamental(disc)? {
            return Err(Error::NotFundamental(disc.clone()));
        }
        let d = disc
            .to_i64()
            .filter(|d| d.unsigned_abs() < (1 << 52))
            .ok_or_else(|| Error::BoundExceeded {
                disc: disc.clone(),
                bound: BigInt::from(1u64 << 52),
            })?;
        let mut group = if d < 0 {
            Self::definite(disc, d)
        } else {
            Self::indefinite(disc, d)
        };
        let principal = QuadForm::principal(disc)?.reduce()?;
        group.identity = group.lookup[&principal];
        Ok(group)
    }

    fn definite(disc: &BigInt, d: i64) -> Self {
        let d = d as i128;
        let mut reps = Vec::new();
        let mut a: i128 = 1;
        while 3 * a * a <= -d {
            let mut b = -a + 1;
            if (b - d).rem_euclid(2) != 0 {
                b += 1;
            }
            while b <= a {
                let num = b * b - d;
                if num % (4 * a) == 0 {
                    let c = num / (4 * a);
                    let tie = (b.abs() == a || a == c) && b < 0;
                    if c >= a && !tie && a.gcd(&b).gcd(&c) == 1 {
                        reps.push(QuadForm::new(a, b, c));
                    }
                }
                b += 2;
            }
            a += 1;
        }
        let lookup = reps.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        ClassGroup {
            disc: disc.clone(),
            reps,
            lookup,
            identity: 0,
        }
    }

    fn indefinite(disc: &BigInt, d: i64) -> Self {
        let d = d as i128;
        let s = crate::arith::isqrt_u128(d as u128) as i128;
        let mut reduced = Vec::new();
        let mut b = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
        while b > 0 {
            let n = (d - b * b) / 4;
            let mut a = 1;
            while a * a <= n {
                if n % a == 0 {
                    for aa in [a, n / a] {
                        if 2 * aa - b <= s && 2 * aa + b > s {
                            let c = n / aa;
                            if aa.gcd(&b).gcd(&c) == 1 {
                                reduced.push(QuadForm::new(aa, b, -c));
                                reduced.push(QuadForm::new(-aa, b, c));
                            }
                        }
                        if a * a == n {
                            break;
                        }
                    }
                }
                a += 1;
            }
            b -= 2;
        }
        reduced.sort();
        reduced.dedup();
        let mut lookup = HashMap::with_capacity(reduced.len());
        let mut reps = Vec::new();
        for f in &reduced {
            if lookup.contains_key(f) {
                continue;
            }
            let id = reps.len();
            reps.push(f.clone());
            let mut g = f.clone();
            loop {
                debug_assert!(g.is_reduced());
                lookup.insert(g.clone(), id);
                g = g.rho();
                if &g == f {
                    break;
                }
            }
        }
        ClassGroup {
            disc: disc.clone(),
            reps,
            lookup,
            identity: 0,
        }
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    /// One reduced form per class.
    pub fn representatives(&self) -> &[QuadForm] {
        &self.reps
    }

    /// Index of the class containing `f`.
    pub fn class_of(&self, f: &QuadForm) -> Result<usize> {
        let r = f.reduce()?;
        self.lookup
            .get(&r)
            .copied()
            .ok_or_else(|| Error::Domain(format!("{r} is not a form of discriminant {}", self.disc)))
    }

    /// Number of reduced forms (equals the class number for negative
    /// discriminants; the total cycle length otherwise).
    pub fn reduced_form_count(&self) -> usize {
        self.lookup.len()
    }

    /// Narrow class of `(-1, b0, c0)`; the identity iff the fundamental unit
    /// has norm `-1`.
    fn negative_principal(&self) -> Result<usize> {
        self.class_of(&QuadForm::principal(&self.disc)?.negated())
    }

    /// Wide class group as a quotient of this one. For negative
    /// discriminants this is the same group.
    pub fn wide(&self) -> Result<WideClassGroup<'_>> {
        let n = self.order();
        if self.disc.is_negative() {
            return Ok(WideClassGroup {
                narrow: self,
                wide_of: (0..n).collect(),
                reps: (0..n).collect(),
            });
        }
        let j = self.negative_principal()?;
        let mut wide_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if wide_of[x] != usize::MAX {
                continue;
            }
            let y = self.mul(x, j);
            wide_of[x] = reps.len();
            wide_of[y] = reps.len();
            reps.push(x);
        }
        Ok(WideClassGroup {
            narrow: self,
            wide_of,
            reps,
        })
    }
}

impl FiniteGroup for ClassGroup {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let f = self.reps[x]
            .compose(&self.reps[y])
            .expect("composition of forms with equal discriminant");
        self.lookup[&f]
    }
}

/// The narrow class group modulo the class of `(-1, b0, c0)`.
pub struct WideClassGroup<'a> {
    narrow: &'a ClassGroup,
    wide_of: Vec<usize>,
    reps: Vec<usize>,
}

impl WideClassGroup<'_> {
    pub fn representatives(&self) -> impl Iterator<Item = &QuadForm> {
        self.reps.iter().map(|&i| &self.narrow.reps[i])
    }
}

impl FiniteGroup for WideClassGroup<'_> {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn identity(&self) -> usize {
        self.wide_of[self.narrow.identity]
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        self.wide_of[self.narrow.mul(self.reps[x], self.reps[y])]
    }
}

pub fn class_group(disc: &BigInt) -> Result<ClassGroupSummary> {
    class_group_with(disc, &ClassGroupConfig::default())
}

pub fn class_group_with(disc: &BigInt, cfg: &ClassGroupConfig) -> Result<ClassGroupSummary> {
    let narrow = ClassGroup::new(disc, cfg)?;
    let wide = narrow.wide()?;
    let invariant_factors = invariant_factors_from_orders(&element_orders(&wide));
    let h = wide.order() as u64;
    let r3 = three_rank_by_torsion(&narrow);
    let product: u64 = invariant_factors.iter().product();
    if product != h
        || invariant_factors.windows(2).any(|w| w[1] % w[0] != 0)
        || three_rank_from_factors(&invariant_factors) != r3
    {
        return Err(Error::Domain(format!(
            "inconsistent class group structure for {disc}: h = {h}, factors {invariant_factors:?}, r3 = {r3}"
        )));
    }
    Ok(ClassGroupSummary {
        disc: disc.clone(),
        h,
        invariant_factors,
        r3,
        narrow_h: disc.is_positive().then_some(narrow.order() as u64),
    })
}

pub fn r3(disc: &BigInt) -> Result<u32> {
    Ok(class_group(disc)?.r3)
}

/// 3-rank from counting classes with `C^3 = 1` in the narrow group.
pub fn r3_by_torsion(disc: &BigInt) -> Result<u32> {
    let g = ClassGroup::new(disc, &ClassGroupConfig::default())?;
    Ok(three_rank_by_torsion(&g))
}

/// 3-rank from the invariant factors of the wide group.
pub fn r3_by_invariant_factors(disc: &BigInt) -> Result<u32> {
    let g = ClassGroup::new(disc, &ClassGroupConfig::default())?;
    let wide = g.wide()?;
    Ok(three_rank_from_factors(&invariant_factors_from_orders(
        &element_orders(&wide),
    )))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Escalatory,
    NonEscalatory,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Escalatory => "Escalatory",
            Classification::NonEscalatory => "NonEscalatory",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionVerdict {
    pub pair: DiscriminantPair,
    pub r3_d: u32,
    pub r3_d_prime: u32,
    pub classification: Classification,
}

impl ReflectionVerdict {
    /// Checks the reflection inequality `r3(real) <= r3(imag) <= r3(real) + 1`.
    pub fn from_ranks(pair: DiscriminantPair, r3_d: u32, r3_d_prime: u32) -> Result<Self> {
        let (imag, real) = if pair.d().is_negative() {
            (r3_d, r3_d_prime)
        } else {
            (r3_d_prime, r3_d)
        };
        let classification = if imag == real {
            Classification::NonEscalatory
        } else if imag == real + 1 {
            Classification::Escalatory
        } else {
            return Err(Error::ScholzViolation {
                d: pair.d().clone(),
                d_prime: pair.d_prime().clone(),
                r3_d,
                r3_d_prime,
            });
        };
        Ok(ReflectionVerdict {
            pair,
            r3_d,
            r3_d_prime,
            classification,
        })
    }
}

pub fn classify(pair: &DiscriminantPair) -> Result<ReflectionVerdict> {
    ReflectionVerdict::from_ranks(pair.clone(), r3(pair.d())?, r3(pair.d_prime())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminants::mirror;
    use std::collections::HashSet;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn fundamentals(limit: i64) -> impl Iterator<Item = i64> {
        (-limit..=limit).filter(|&d| d != 0 && d != 1 && is_fundamental(&big(d)).unwrap())
    }

    #[test]
    fn class_group_examples() {
        let g = class_group(&big(-31)).unwrap();
        assert_eq!((g.h, g.invariant_factors.clone(), g.r3), (3, vec![3], 1));
        let g = class_group(&big(93)).unwrap();
        assert_eq!((g.h, g.r3, g.narrow_h), (1, 0, Some(2)));
        let g = class_group(&big(-7)).unwrap();
        assert_eq!((g.h, g.r3), (1, 0));
        assert_eq!(r3(&big(21)).unwrap(), 0);
        assert_eq!(class_group(&big(-15)).unwrap().h, 2);
        assert_eq!(class_group(&big(5)).unwrap().narrow_h, Some(1));
        assert_eq!(class_group(&big(-87)).unwrap().h, 6);
        assert_eq!(r3(&big(-87)).unwrap(), 1);
    }

    #[test]
    fn known_class_numbers() {
        // small tables: h(-d) for imaginary, (h, h+) for real
        for (d, h) in [(-3, 1), (-4, 1), (-23, 3), (-47, 5), (-71, 7), (-199, 9), (-3299, 27), (-4027, 9)] {
            assert_eq!(class_group(&big(d)).unwrap().h, h, "h({d})");
        }
        assert_eq!(class_group(&big(-3299)).unwrap().invariant_factors, vec![3, 9]);
        assert_eq!(class_group(&big(-4027)).unwrap().invariant_factors, vec![3, 3]);
        for (d, h, hp) in [(5, 1, 1), (12, 1, 2), (40, 2, 2), (60, 2, 4), (229, 3, 3), (316, 3, 6), (145, 4, 4)] {
            let g = class_group(&big(d)).unwrap();
            assert_eq!((g.h, g.narrow_h), (h, Some(hp)), "h({d})");
        }
        assert_eq!(r3(&big(229)).unwrap(), 1);
        assert_eq!(r3(&big(32009)).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_discriminants() {
        assert!(matches!(class_group(&big(-12 * 4)), Err(Error::NotFundamental(_))));
        let cfg = ClassGroupConfig { max_abs_disc: big(100) };
        assert!(matches!(
            class_group_with(&big(-103), &cfg),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let v = classify(&mirror(&big(-31)).unwrap()).unwrap();
        assert_eq!((v.r3_d, v.r3_d_prime, v.classification), (1, 0, Classification::Escalatory));
        let v = classify(&mirror(&big(-7)).unwrap()).unwrap();
        assert_eq!((v.r3_d, v.r3_d_prime, v.classification), (0, 0, Classification::NonEscalatory));
        let v = classify(&mirror(&big(5)).unwrap()).unwrap();
        assert_eq!((v.r3_d, v.r3_d_prime, v.classification), (0, 0, Classification::NonEscalatory));
        let v = classify(&mirror(&big(29)).unwrap()).unwrap();
        assert_eq!((v.r3_d_prime, v.classification), (1, Classification::Escalatory));
    }

    #[test]
    fn scholz_violation_is_an_error() {
        let pair = mirror(&big(-31)).unwrap();
        assert!(matches!(
            ReflectionVerdict::from_ranks(pair.clone(), 2, 0),
            Err(Error::ScholzViolation { .. })
        ));
        assert!(ReflectionVerdict::from_ranks(pair, 0, 1).is_err());
    }

    #[test]
    fn definite_group_axioms_exhaustive() {
        for d in fundamentals(2000).filter(|&d| d < 0) {
            let g = ClassGroup::new(&big(d), &ClassGroupConfig::default()).unwrap();
            let n = g.order();
            let e = g.identity();
            assert_eq!(g.reps[e], QuadForm::principal(&big(d)).unwrap());
            for x in 0..n {
                assert_eq!(g.mul(x, e), x);
                assert_eq!(g.class_of(&g.reps[x].inverse()).map(|i| g.mul(x, i)).unwrap(), e);
            }
            // associativity on a bounded sample of triples
            let step = (n / 7).max(1);
            for x in (0..n).step_by(step) {
                for y in (0..n).step_by(step) {
                    for z in (0..n).step_by(step) {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)), "disc {d}");
                    }
                    assert_eq!(g.mul(x, y), g.mul(y, x));
                }
            }
        }
    }

    /// Closure of the classes reachable from the principal form by
    /// composing with the forms `(p, b, c)` for small primes `p`.
    fn orbit_count(d: i64) -> usize {
        let disc = big(d);
        let mut gens = Vec::new();
        for p in 2i64..=(((-d) as f64).sqrt() as i64 + 2).max(2) {
            if !crate::arith::is_probable_prime(&big(p)) {
                continue;
            }
            for b in 0..2 * p {
                if let Ok(f) = QuadForm::from_ab(big(p), big(b), &disc) {
                    if f.is_primitive() {
                        gens.push(f.reduce().unwrap());
                        break;
                    }
                }
            }
        }
        let start = QuadForm::principal(&disc).unwrap();
        let mut seen: HashSet<QuadForm> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        while let Some(f) = frontier.pop() {
            for g in &gens {
                let h = f.compose(g).unwrap();
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn reduced_form_count_matches_composition_orbit() {
        for d in fundamentals(2000).filter(|&d| d < 0) {
            let g = ClassGroup::new(&big(d), &ClassGroupConfig::default()).unwrap();
            assert_eq!(g.reduced_form_count(), orbit_count(d), "disc {d}");
        }
    }

    #[test]
    fn indefinite_group_is_a_group() {
        for d in fundamentals(1500).filter(|&d| d > 0) {
            let g = ClassGroup::new(&big(d), &ClassGroupConfig::default()).unwrap();
            let n = g.order();
            let e = g.identity();
            for x in 0..n {
                assert_eq!(g.mul(x, e), x, "disc {d}");
                let inv = g.class_of(&g.reps[x].inverse()).unwrap();
                assert_eq!(g.mul(x, inv), e, "disc {d}");
                for y in 0..n {
                    assert_eq!(g.mul(x, y), g.mul(y, x), "disc {d}");
                }
            }
            let wide = g.wide().unwrap();
            assert!(n == wide.order() || n == 2 * wide.order());
        }
    }
}
