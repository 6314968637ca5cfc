//! Oracles shared by the integration tests. Nothing here calls into the
//! module under test beyond plain data accessors.

#![allow(dead_code)]

use hodge_core::{GammaVector, HypergeometricDatum, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// `v_p(n)` for a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p` of `A(k) = prod_a (a)_k / prod_b (b)_k` for `k = 0..p-1`, obtained
/// by multiplying the Pochhammer symbols out as exact rationals.
pub fn pochhammer_valuations(hd: &HypergeometricDatum, p: u64) -> Vec<i64> {
    let mut out = Vec::with_capacity(p as usize);
    let mut ratio = Rational::one();
    for k in 0..p {
        assert!(!ratio.is_zero());
        out.push(int_valuation(ratio.numer(), p) - int_valuation(ratio.denom(), p));
        let step = Rational::from(k as i64);
        for a in hd.alpha() {
            ratio = ratio * (a + &step);
        }
        for b in hd.beta() {
            let x = b + &step;
            ratio = ratio * Rational::new(x.denom().clone(), x.numer().clone());
        }
    }
    out
}

fn is_prime_naive(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Primes `p <= bound` with `p = 1 mod level`, ascending.
pub fn small_primes_one_mod(level: u64, bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&p| is_prime_naive(p) && p % level == 1 % level)
        .collect()
}

/// `[s, -1, .., -1]`.
pub fn dwork(s: u64) -> GammaVector {
    GammaVector::new(vec![s], vec![1; s as usize]).unwrap()
}

pub fn gamma(s: &str) -> GammaVector {
    s.parse().unwrap()
}

pub fn coords(v: &hodge_core::LatticeVector) -> Vec<i64> {
    v.coords().to_vec()
}
