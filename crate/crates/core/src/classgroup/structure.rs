// SPDX-License-Identifier: Apache-2.0

//! Structure of a finite abelian group given only by its multiplication.
//!
//! Elements are indices `0..order`. Two independent routes to the 3-rank are
//! provided: counting solutions of `g^3 = 1`, and reading it off the
//! invariant factors assembled from element orders.

use std::collections::BTreeMap;

/// A finite abelian group presented by an index-level multiplication.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, x: usize, y: usize) -> usize;

    fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = self.identity();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Order of every element, using `g^(h/p)` tests instead of walking powers.
pub fn element_orders<G: FiniteGroup + ?Sized>(g: &G) -> Vec<u64> {
    let h = g.order() as u64;
    let primes = prime_factors(h);
    let id = g.identity();
    (0..g.order())
        .map(|x| {
            let mut ord = h;
            for &(p, _) in &primes {
                while ord.is_multiple_of(p) && g.pow(x, ord / p) == id {
                    ord /= p;
                }
            }
            ord
        })
        .collect()
}

/// Invariant factors `d_1 | d_2 | ... | d_r` with every `d_i > 1`.
///
/// For each prime `p`, the number of elements of order dividing `p^k` is
/// `p^(s_k)` with `s_k = sum_i min(e_i, k)` over the `p`-primary cyclic
/// factors `Z/p^(e_i)`; successive differences of `s_k` recover the `e_i`.
pub fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let h = orders.len() as u64;
    if h <= 1 {
        return Vec::new();
    }
    // primary part per prime: exponents in descending order
    let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, max_e) in prime_factors(h) {
        let mut s_prev = 0u32;
        let mut at_least = Vec::new(); // at_least[k-1] = #{i : e_i >= k}
        let mut pk = 1u64;
        for _ in 1..=max_e {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            let s_k = count.ilog(p);
            debug_assert_eq!(p.pow(s_k), count);
            at_least.push(s_k - s_prev);
            s_prev = s_k;
        }
        let n_factors = at_least.first().copied().unwrap_or(0) as usize;
        let exps: Vec<u32> = (0..n_factors)
            .map(|j| at_least.iter().filter(|&&m| m as usize > j).count() as u32)
            .collect();
        primary.insert(p, exps);
    }
    let r = primary.values().map(Vec::len).max().unwrap_or(0);
    // largest factor gets the largest exponent of every prime
    let mut factors = vec![1u64; r];
    for (p, exps) in &primary {
        for (j, e) in exps.iter().enumerate() {
            factors[r - 1 - j] *= p.pow(*e);
        }
    }
    factors
}

/// `r` with `3^r = #{g : g^3 = 1}`, found by cubing every element.
pub fn three_rank_by_torsion<G: FiniteGroup + ?Sized>(g: &G) -> u32 {
    let id = g.identity();
    let count = (0..g.order())
        .filter(|&x| g.mul(g.mul(x, x), x) == id)
        .count() as u64;
    let r = count.ilog(3);
    assert_eq!(3u64.pow(r), count, "3-torsion count {count} is not a power of 3");
    r
}

pub fn three_rank_from_factors(factors: &[u64]) -> u32 {
    factors.iter().filter(|&&d| d % 3 == 0).count() as u32
}
