//! p-adic orders of the Pochhammer ratios
//! `A(k) = prod_a (a)_k / prod_b (b)_k` for a prime `p = 1 mod M`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::datum::{GammaVector, HypergeometricDatum, Side};
use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::zigzag::ZigzagProfile;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes congruent to 1 modulo `level`.
pub fn primes_one_mod(level: u64, count: usize) -> Vec<u64> {
    let level = level.max(1);
    let step = if level.is_multiple_of(2) {
        level
    } else {
        2 * level
    };
    let mut out = Vec::with_capacity(count);
    // for odd level every odd prime 1 mod level is 1 mod 2 level
    if level == 1 && count > 0 {
        out.push(2);
    }
    let mut cand = 1 + step;
    while out.len() < count {
        if is_prime(cand) {
            out.push(cand);
        }
        cand += step;
    }
    out.truncate(count);
    out
}

/// A datum together with a prime `p = 1 mod M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    hd: HypergeometricDatum,
}

impl PadicContext {
    pub fn new(hd: HypergeometricDatum, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let level = hd.level();
        if p % level != 1 % level {
            return Err(Error::NotOneModLevel { p, level });
        }
        Ok(PadicContext { p, hd })
    }

    pub fn of_gamma(g: &GammaVector, p: u64) -> Result<Self> {
        PadicContext::new(g.to_datum(), p)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn datum(&self) -> &HypergeometricDatum {
        &self.hd
    }
}

/// First digit `[a]_0` of the p-adic expansion of `a`, i.e. `a mod p`.
pub fn first_digit(a: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = a.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(Error::BadDenominator(a.to_string()));
    }
    let den = den.to_u64().expect("reduced mod p");
    let num = a.numer().mod_floor(&pb).to_u64().expect("reduced mod p");
    // p is prime, so den^(p-2) is the inverse
    Ok(mul_mod(num, pow_mod(den, p - 2, p), p))
}

/// `ord_p (a)_k = -floor(a - k / (p - 1))` for `a in (0, 1]`, `1 <= k < p`.
pub fn pochhammer_order(a: &Rational, k: u64, p: u64) -> Result<u8> {
    if a.is_negative() || a.is_zero() || *a > Rational::one() {
        return Err(Error::BadRange(format!("{a} is not in (0, 1]")));
    }
    if k == 0 || k >= p {
        return Err(Error::BadRange(format!("k = {k} is not in [1, {}]", p - 1)));
    }
    if !(p - 1).is_multiple_of(a.denom_u64()) {
        return Err(Error::BadRange(format!(
            "p - 1 is not divisible by the denominator of {a}"
        )));
    }
    Ok(u8::from(k > threshold(a, p)))
}

/// `[-a]_0 = a (p - 1)` for `a` with denominator dividing `p - 1`.
fn threshold(a: &Rational, p: u64) -> u64 {
    a.scale((p - 1) as i64)
        .floor()
        .to_u64()
        .expect("a(p-1) >= 0")
}

/// `ord_p A(k)` for `k = 0..p-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    pub p: u64,
    pub orders: Vec<i64>,
}

impl ValuationProfile {
    pub fn order(&self, k: u64) -> i64 {
        self.orders[k as usize]
    }
}

/// `ord_p A(k) = sum_a -floor(a - k/(p-1)) + sum_b floor(b - k/(p-1))`.
pub fn valuation_profile(ctx: &PadicContext) -> ValuationProfile {
    let p = ctx.p;
    let alpha: Vec<u64> = ctx.hd.alpha().iter().map(|a| threshold(a, p)).collect();
    let beta: Vec<u64> = ctx.hd.beta().iter().map(|b| threshold(b, p)).collect();
    let orders = (0..p)
        .map(|k| {
            let up = alpha.iter().filter(|&&t| k > t).count() as i64;
            let down = beta.iter().filter(|&&t| k > t).count() as i64;
            up - down
        })
        .collect();
    ValuationProfile { p, orders }
}

/// Checks `Phi(i) = ord_p A(k) + r` on every nonempty interval
/// `k in ([-mu_i]_0, [-mu_{i+1}]_0]` of the merged list, and at
/// `k = [-mu_1]_0` covers `i = 0`.
pub fn verify_phi_bridge(g: &GammaVector, p: u64) -> Result<bool> {
    let ctx = PadicContext::of_gamma(g, p)?;
    let profile = valuation_profile(&ctx);
    let zz = ZigzagProfile::of_gamma(g);
    let merged = zz.merged();
    let r = g.r() as i64;
    for i in 0..merged.len() {
        let lo = threshold(&merged.mu(i), p);
        let hi = threshold(&merged.mu(i + 1), p);
        for k in lo + 1..=hi {
            if zz.phi()[i] != profile.order(k) + r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Checks `ord_p A(mu (p-1)) = s - r + sum {-mu p_i} - sum {-mu q_j}` for
/// every `mu` in alpha and beta.
pub fn verify_lemma_fractional(g: &GammaVector, p: u64) -> Result<bool> {
    let ctx = PadicContext::of_gamma(g, p)?;
    let profile = valuation_profile(&ctx);
    let base = g.s() as i64 - g.r() as i64;
    let entries = ctx.hd.merged_list();
    for entry in entries.entries() {
        let mu = &entry.value;
        let mut rhs = Rational::from(base);
        for &pi in g.positives() {
            rhs += mu.scale(-(pi as i64)).frac();
        }
        for &qj in g.negatives() {
            rhs += -mu.scale(-(qj as i64)).frac();
        }
        if Rational::from(profile.order(threshold(mu, p))) != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `0 <= [-mu_1]_0 <= ... <= [-mu_2L]_0 = p - 1`.
pub fn digit_chain_monotone(g: &GammaVector, p: u64) -> Result<bool> {
    let ctx = PadicContext::of_gamma(g, p)?;
    let merged = ctx.hd.merged_list();
    let digits: Vec<u64> = merged
        .entries()
        .iter()
        .map(|e| first_digit(&-&e.value, p))
        .collect::<Result<_>>()?;
    let sorted = digits.windows(2).all(|w| w[0] <= w[1]);
    // [-1]_0 = p - 1
    Ok(sorted && digits.last() == Some(&(p - 1)))
}

/// Jump of the profile at `k = [-mu]_0 + 1`: alpha copies of `mu` minus beta
/// copies.
pub fn jump_at(hd: &HypergeometricDatum, mu: &Rational) -> i64 {
    let merged = hd.merged_list();
    merged
        .entries()
        .iter()
        .filter(|e| &e.value == mu)
        .map(|e| if e.side == Side::Alpha { 1 } else { -1 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::canonical_gammas;

    fn g(s: &str) -> GammaVector {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(primes_one_mod(6, 3), [7, 13, 19]);
        assert_eq!(primes_one_mod(1, 2), [2, 3]);
        assert_eq!(primes_one_mod(2, 2), [3, 5]);
        assert_eq!(primes_one_mod(5, 2), [11, 31]);
    }

    #[test]
    fn first_digit_examples() {
        assert_eq!(first_digit(&q(-1, 3), 7).unwrap(), 2);
        assert_eq!(first_digit(&q(-1, 1), 7).unwrap(), 6);
        assert_eq!(first_digit(&q(0, 1), 7).unwrap(), 0);
        assert_eq!(
            first_digit(&q(1, 7), 7),
            Err(Error::BadDenominator("1/7".into()))
        );
        for p in [7u64, 13, 19, 31] {
            for d in [1i64, 2, 3, 6] {
                for c in 1..=d {
                    let want = c as u64 * (p - 1) / d as u64;
                    assert_eq!(first_digit(&q(-c, d), p).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn pochhammer_order_examples() {
        assert_eq!(pochhammer_order(&q(1, 3), 3, 7).unwrap(), 1);
        assert_eq!(pochhammer_order(&q(1, 1), 5, 7).unwrap(), 0);
        assert_eq!(pochhammer_order(&q(2, 3), 4, 7).unwrap(), 0);
        assert!(matches!(
            pochhammer_order(&q(1, 3), 0, 7),
            Err(Error::BadRange(_))
        ));
        assert!(matches!(
            pochhammer_order(&q(4, 3), 1, 7),
            Err(Error::BadRange(_))
        ));
    }

    #[test]
    fn context_validation() {
        let hd = g("3,-1,-1,-1").to_datum();
        assert_eq!(PadicContext::new(hd.clone(), 9), Err(Error::NotPrime(9)));
        assert_eq!(
            PadicContext::new(hd.clone(), 5),
            Err(Error::NotOneModLevel { p: 5, level: 3 })
        );
        assert!(PadicContext::new(hd, 7).is_ok());
    }

    #[test]
    fn profile_examples() {
        let ctx = PadicContext::of_gamma(&g("3,-1,-1,-1"), 7).unwrap();
        let prof = valuation_profile(&ctx);
        assert_eq!(prof.orders, [0, 0, 0, 1, 1, 2, 2]);
        assert_eq!(prof.order(6), 2);
        let ctx = PadicContext::of_gamma(&g("1,-1"), 5).unwrap();
        assert!(valuation_profile(&ctx).orders.iter().all(|&o| o == 0));
    }

    #[test]
    fn bridge_examples() {
        for (s, p) in [("3,-1,-1,-1", 7), ("6,-3,-2,-1", 7), ("1,-1", 5)] {
            assert!(verify_phi_bridge(&g(s), p).unwrap(), "{s}");
        }
        for (s, p) in [("6,-3,-2,-1", 7), ("4,4,2,-3,-6,-1", 13), ("1,-1", 5)] {
            assert!(verify_lemma_fractional(&g(s), p).unwrap(), "{s}");
        }
    }

    #[test]
    fn profile_endpoints_and_jumps() {
        for v in canonical_gammas(8) {
            for p in primes_one_mod(v.level(), 2) {
                let ctx = PadicContext::of_gamma(&v, p).unwrap();
                let prof = valuation_profile(&ctx);
                assert_eq!(prof.orders[0], 0);
                assert_eq!(prof.order(p - 1), v.s() as i64 - v.r() as i64);
                assert!(digit_chain_monotone(&v, p).unwrap());
                let hd = ctx.datum();
                for k in 1..p as usize {
                    let delta = prof.orders[k] - prof.orders[k - 1];
                    let mu = q(k as i64 - 1, p as i64 - 1);
                    let expected = if mu.is_zero() { 0 } else { jump_at(hd, &mu) };
                    assert_eq!(delta, expected, "{v} p={p} k={k}");
                }
            }
        }
    }
}
