//! Lattice points of the cone over `Delta(HD)`.
//!
//! For `Gamma = [p_1..p_r, -q_1..-q_s]` with `q_s = 1` and `n = r + s - 1`
//! the cone is spanned by
//!
//! ```text
//! e_0 = [1, 0, .., 0]
//! e_i = e_0 + (unit vector i)                       1 <= i <= n-1
//! e_n = [1, p_1, .., p_{r-1}, -q_1, .., -q_{s-1}]
//! ```
//!
//! All `e_i` lie on the hyperplane `x_0 = 1`, so the weight of a lattice
//! point of the cone is its first coordinate. The vectors satisfy the single
//! relation
//!
//! ```text
//! p_r e_0 + sum_{i<r} p_i e_i = sum_{j<s} q_j e_{r-1+j} + q_s e_n
//! ```
//!
//! which is why every index is tied to a *slot value*: `p_r` for slot 0,
//! `p_i` for slot `i < r`, `q_j` for slot `r - 1 + j`.
//!
//! Coordinates are machine integers; they are bounded by `weight * L`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datum::GammaVector;
use crate::error::{Error, Result};
use crate::exactmath::{binomial, Rational};
use crate::zigzag::HodgeVector;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn origin(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The first coordinate; for points of the cone this is the weight.
    pub fn weight(&self) -> i64 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Sum of the negative entries.
    pub fn depth(&self) -> i64 {
        self.0.iter().filter(|&&x| x < 0).sum()
    }

    pub fn plus(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Nonnegative fraction `num / den` with `den > 0`, compared exactly.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Self {
        debug_assert!(den > 0);
        Frac { num, den }
    }

    fn le(self, other: Frac) -> bool {
        self.num * other.den <= other.num * self.den
    }

    fn max(self, other: Frac) -> Frac {
        if self.le(other) {
            other
        } else {
            self
        }
    }

    /// `ceil(m * self)`.
    fn ceil_mul(self, m: i128) -> i128 {
        (m * self.num).div_euclid(self.den) + i128::from((m * self.num).rem_euclid(self.den) != 0)
    }
}

/// The generators `e_0..e_n` of the cone for a gamma vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeBasis {
    gamma: GammaVector,
    vectors: Vec<LatticeVector>,
}

impl ConeBasis {
    pub fn new(g: &GammaVector) -> Self {
        let n = g.n();
        let r = g.r();
        let s = g.s();
        let mut vectors = Vec::with_capacity(n + 1);
        let mut e0 = vec![0i64; n];
        e0[0] = 1;
        vectors.push(LatticeVector(e0.clone()));
        for i in 1..n {
            let mut e = e0.clone();
            e[i] = 1;
            vectors.push(LatticeVector(e));
        }
        let mut en = vec![1i64];
        en.extend(g.positives()[..r - 1].iter().map(|&p| p as i64));
        en.extend(g.negatives()[..s - 1].iter().map(|&q| -(q as i64)));
        vectors.push(LatticeVector(en));
        ConeBasis {
            gamma: g.clone(),
            vectors,
        }
    }

    pub fn gamma(&self) -> &GammaVector {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.vectors.len() - 1
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn e(&self, i: usize) -> &LatticeVector {
        &self.vectors[i]
    }

    fn r(&self) -> usize {
        self.gamma.r()
    }

    /// The gamma entry attached to slot `i` of the basis.
    pub fn slot_value(&self, i: usize) -> u64 {
        let r = self.r();
        let g = &self.gamma;
        match i {
            0 => g.positives()[r - 1],
            i if i < r => g.positives()[i - 1],
            i => g.negatives()[i - r],
        }
    }

    /// Whether slot `i` carries a positive gamma entry.
    pub fn is_positive_slot(&self, i: usize) -> bool {
        i < self.r()
    }

    /// Checks the linear relation among `e_0..e_n` coordinatewise.
    pub fn relation_holds(&self) -> bool {
        let n = self.n();
        let mut lhs = vec![0i64; n];
        let mut rhs = vec![0i64; n];
        for i in 0..=n {
            let side = if self.is_positive_slot(i) {
                &mut lhs
            } else {
                &mut rhs
            };
            let c = self.slot_value(i) as i64;
            for (acc, x) in side.iter_mut().zip(self.e(i).coords()) {
                *acc += c * x;
            }
        }
        lhs == rhs
    }

    /// Whether `v` is a nonnegative real combination of `e_0..e_n`.
    ///
    /// Once the coefficient `t` of `e_n` is fixed every other coefficient is
    /// affine in `t`, so membership reduces to a rational interval for `t`
    /// being nonempty.
    pub fn contains(&self, v: &LatticeVector) -> bool {
        let n = self.n();
        let r = self.r();
        let x = v.coords();
        if x.len() != n {
            return false;
        }
        let mut lo = Frac::new(0, 1);
        for (i, &xi) in x.iter().enumerate().skip(r) {
            let q = self.slot_value(i) as i128;
            lo = lo.max(Frac::new(-(xi as i128), q));
        }
        let mut uppers = Vec::with_capacity(r);
        for (i, &xi) in x.iter().enumerate().take(r).skip(1) {
            uppers.push(Frac::new(xi as i128, self.slot_value(i) as i128));
        }
        let rest: i128 = x[1..].iter().map(|&c| c as i128).sum();
        uppers.push(Frac::new(x[0] as i128 - rest, self.slot_value(0) as i128));
        uppers.into_iter().all(|u| lo.le(u))
    }

    /// Exact coefficients of `v` in the basis with `e_drop` removed.
    ///
    /// Returns numerators indexed by slot (the dropped slot is 0) and a
    /// common positive denominator.
    pub fn coefficients_without(&self, drop: usize, v: &LatticeVector) -> (Vec<i128>, i128) {
        let n = self.n();
        let r = self.r();
        let x: Vec<i128> = v.coords().iter().map(|&c| c as i128).collect();
        // t = coefficient of e_n, as num/den
        let (t_num, den) = if drop == n {
            (0, 1)
        } else if drop == 0 {
            let rest: i128 = x[1..].iter().sum();
            (x[0] - rest, self.slot_value(0) as i128)
        } else if drop < r {
            (x[drop], self.slot_value(drop) as i128)
        } else {
            (-x[drop], self.slot_value(drop) as i128)
        };
        let mut c = vec![0i128; n + 1];
        c[n] = t_num;
        for i in 1..n {
            let sv = self.slot_value(i) as i128;
            c[i] = if i < r {
                x[i] * den - sv * t_num
            } else {
                x[i] * den + sv * t_num
            };
        }
        let others: i128 = c[1..=n].iter().sum();
        c[0] = x[0] * den - others;
        c[drop] = 0;
        (c, den)
    }

    /// Whether `v` lies in `apex + Z_{>=0}`-span of the basis without
    /// `e_drop`.
    pub fn in_translated_subcone(
        &self,
        apex: &LatticeVector,
        drop: usize,
        v: &LatticeVector,
    ) -> bool {
        let (c, den) = self.coefficients_without(drop, &v.minus(apex));
        c.iter().all(|&ci| ci >= 0 && ci % den == 0)
    }

    /// Whether `v` lies in the real cone over `{e_j : j in members}`, for a
    /// proper subset `members` of the slots.
    pub fn in_face(&self, members: &[bool], v: &LatticeVector) -> bool {
        let Some(drop) = members.iter().position(|&m| !m) else {
            return self.contains(v);
        };
        let (c, _) = self.coefficients_without(drop, v);
        let (nonneg, support_ok) = c
            .iter()
            .enumerate()
            .fold((true, true), |(nn, so), (j, &cj)| {
                (nn && cj >= 0, so && (members[j] || cj == 0))
            });
        nonneg && support_ok
    }

    /// Visits every lattice point of the cone with weight exactly `k`.
    ///
    /// Box enumeration, `x_i in [0, k p_i]` on positive coordinates and
    /// `x_i in [-k q_i, k]` on negative ones, pruned by necessary conditions
    /// on the `e_n` coefficient and filtered by [`ConeBasis::contains`].
    pub fn for_each_point_of_weight<F: FnMut(&LatticeVector)>(&self, k: i64, mut visit: F) {
        let n = self.n();
        let r = self.r();
        let mut coords = vec![0i64; n];
        coords[0] = k;
        let ctx = Enumerator {
            basis: self,
            k,
            r,
            n,
        };
        ctx.negative_coords(r, Frac::new(0, 1), 0, 0, &mut coords, &mut visit);
    }

    /// All lattice points of weight `k`, in lexicographic order of the
    /// enumeration.
    pub fn points_of_weight(&self, k: i64) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        self.for_each_point_of_weight(k, |v| out.push(v.clone()));
        out
    }
}

struct Enumerator<'a> {
    basis: &'a ConeBasis,
    k: i64,
    r: usize,
    n: usize,
}

impl Enumerator<'_> {
    /// Chooses coordinates `r..n` (negative slots). `lo` is the lower bound
    /// for the `e_n` coefficient forced so far and `slack_num / lo.den`
    /// tracks `sum (x_j + q_j lo)`.
    fn negative_coords<F: FnMut(&LatticeVector)>(
        &self,
        i: usize,
        lo: Frac,
        sum_x: i128,
        sum_q: i128,
        coords: &mut Vec<i64>,
        visit: &mut F,
    ) {
        let k = self.k as i128;
        if i == self.n {
            self.positive_coords(1, lo, sum_x, coords, visit);
            return;
        }
        let q = self.basis.slot_value(i) as i128;
        for x in (-k * q)..=k {
            let lo2 = lo.max(Frac::new(-x, q));
            let sum_x2 = sum_x + x;
            let sum_q2 = sum_q + q;
            // coefficients of the chosen e_{r-1+j} at t >= lo2 already sum
            // to sum_x2 + sum_q2 * lo2, and all coefficients add up to k
            if sum_x2 * lo2.den + sum_q2 * lo2.num > k * lo2.den {
                if x >= 0 {
                    break;
                }
                continue;
            }
            coords[i] = x as i64;
            self.negative_coords(i + 1, lo2, sum_x2, sum_q2, coords, visit);
        }
    }

    fn positive_coords<F: FnMut(&LatticeVector)>(
        &self,
        i: usize,
        lo: Frac,
        sum: i128,
        coords: &mut Vec<i64>,
        visit: &mut F,
    ) {
        let k = self.k as i128;
        if i == self.r {
            let v = LatticeVector(coords.clone());
            if self.basis.contains(&v) {
                visit(&v);
            }
            return;
        }
        // minimum contribution of the positive coordinates not yet chosen
        let rest_min: i128 = (i + 1..self.r)
            .map(|j| lo.ceil_mul(self.basis.slot_value(j) as i128))
            .sum();
        let p = self.basis.slot_value(i) as i128;
        let pr = self.basis.slot_value(0) as i128;
        for y in lo.ceil_mul(p)..=k * p {
            let total = sum + y + rest_min;
            // c_0 = k - sum(x) - p_r t must stay nonnegative at t = lo
            if (k - total) * lo.den < pr * lo.num {
                break;
            }
            coords[i] = y as i64;
            self.positive_coords(i + 1, lo, sum + y, coords, visit);
        }
    }
}

/// Lattice point counts `w(0), .., w(k_max)` by weight.
pub fn weight_census(basis: &ConeBasis, k_max: usize) -> Vec<u64> {
    (0..=k_max)
        .into_par_iter()
        .map(|k| {
            let mut count = 0u64;
            basis.for_each_point_of_weight(k as i64, |_| count += 1);
            count
        })
        .collect()
}

/// `H(k) = sum_i (-1)^i C(n, i) w(k - i)` for `k = 0..=n`.
pub fn hodge_from_census(census: &[u64], n: usize) -> Result<HodgeVector> {
    if census.len() < n + 1 {
        return Err(Error::InsufficientCensus {
            needed: n,
            got: census.len(),
        });
    }
    let mut h = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = BigInt::zero();
        for i in 0..=k.min(n) {
            let term = binomial(n as i64, i as i64) * BigInt::from(census[k - i]);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(Error::BadRange(format!(
                "negative Hodge number at weight {k}"
            )));
        }
        h.push(acc.to_u64().expect("Hodge number fits in u64"));
    }
    Ok(HodgeVector::new(h))
}

/// Hodge vector from the brute-force census.
pub fn hodge_vector_cone(g: &GammaVector) -> HodgeVector {
    let basis = ConeBasis::new(g);
    let census = weight_census(&basis, g.n());
    hodge_from_census(&census, g.n()).expect("census covers 0..=n")
}

/// `u_mu = mu e_n + {-mu p_r} e_0 + sum_{i<r} {-mu p_i} e_i + sum_{j<s} {mu q_j} e_{r-1+j}`.
pub fn primitive_element(g: &GammaVector, mu: &Rational) -> Result<LatticeVector> {
    if !g.to_datum().contains(mu) {
        return Err(Error::NotDatumElement(mu.to_string()));
    }
    let basis = ConeBasis::new(g);
    let n = basis.n();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = mu.clone();
    for (i, c) in coeffs.iter_mut().enumerate().take(n) {
        let sv = basis.slot_value(i) as i64;
        *c = if basis.is_positive_slot(i) {
            (-mu.scale(sv)).frac()
        } else {
            mu.scale(sv).frac()
        };
    }
    let mut coords = Vec::with_capacity(n);
    for t in 0..n {
        let mut acc = Rational::zero();
        for (c, e) in coeffs.iter().zip(basis.vectors()) {
            acc += c * &Rational::from(e.coords()[t]);
        }
        assert!(acc.is_integer(), "u_mu has a non-integral coordinate");
        coords.push(acc.floor().to_i64().expect("coordinate fits in i64"));
    }
    Ok(LatticeVector(coords))
}

/// The apexes `w_0..w_{L-1}` of the partition of the cone's lattice points,
/// with the index `s(i)` of the generator each translated subcone omits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexSequence {
    pub apexes: Vec<LatticeVector>,
    pub removed_index: Vec<usize>,
}

impl ApexSequence {
    pub fn weights(&self) -> Vec<i64> {
        self.apexes.iter().map(LatticeVector::weight).collect()
    }
}

/// Builds the apexes from the elements `u_b`, `b` in beta.
///
/// A value `b < 1` of multiplicity `m` in beta yields `u_b + v_l` for
/// `l = 0..m`, where `v_l` adds the generators of the first `l` negative
/// slots `j` with `b q_j` integral. `b = 1` contributes `s - 1` apexes and
/// the origin accounts for the last copy. `w_i` is the apex of depth `-i`.
pub fn apex_sequence(g: &GammaVector) -> ApexSequence {
    let basis = ConeBasis::new(g);
    let n = basis.n();
    let r = g.r();
    let s = g.s();
    let len = g.natural_length() as usize;
    let mut apexes: Vec<Option<LatticeVector>> = vec![None; len];
    apexes[0] = Some(LatticeVector::origin(n));

    let mut beta: Vec<Rational> = g.to_datum().beta().to_vec();
    beta.dedup();
    for b in &beta {
        let u = primitive_element(g, b).expect("b is in beta");
        let dividing: Vec<usize> = (1..s)
            .filter(|&j| b.scale(g.negatives()[j - 1] as i64).is_integer())
            .collect();
        let copies = if b.is_integer() {
            s - 1
        } else {
            dividing.len()
        };
        let mut w = u;
        for l in 0..copies {
            if l > 0 {
                w = w.plus(basis.e(r - 1 + dividing[l - 1]));
            }
            let idx = (-w.depth()) as usize;
            assert!(idx < len && apexes[idx].is_none(), "apex depths collide");
            apexes[idx] = Some(w.clone());
        }
    }
    let apexes: Vec<LatticeVector> = apexes
        .into_iter()
        .map(|w| w.expect("every depth 0..L-1 is attained"))
        .collect();
    let removed_index = removed_indices(&basis, &apexes);
    ApexSequence {
        apexes,
        removed_index,
    }
}

/// `s(0) = n`; for `k >= 1`, `s(k)` is the generator `e_j` with
/// `w_k + e_j` inside the union of the earlier translated subcones.
fn removed_indices(basis: &ConeBasis, apexes: &[LatticeVector]) -> Vec<usize> {
    let n = basis.n();
    let mut removed = vec![n];
    for k in 1..apexes.len() {
        let candidates: Vec<usize> = (0..=n)
            .filter(|&j| {
                let v = apexes[k].plus(basis.e(j));
                (0..k).any(|m| basis.in_translated_subcone(&apexes[m], removed[m], &v))
            })
            .collect();
        // Exactly one candidate in every case checked; an empty list leaves
        // e_n, which makes the partition check fail visibly.
        removed.push(candidates.first().copied().unwrap_or(n));
    }
    removed
}

/// Outcome of checking the disjoint cover by translated subcones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub points_checked: u64,
    /// First point not covered exactly once, with its cover count.
    pub counterexample: Option<(LatticeVector, usize)>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn partition_report(g: &GammaVector, k_max: usize) -> PartitionReport {
    let basis = ConeBasis::new(g);
    let seq = apex_sequence(g);
    let mut points_checked = 0;
    for k in 0..=k_max as i64 {
        let mut bad = None;
        basis.for_each_point_of_weight(k, |v| {
            if bad.is_some() {
                return;
            }
            points_checked += 1;
            let covers = seq
                .apexes
                .iter()
                .zip(&seq.removed_index)
                .filter(|(w, &drop)| basis.in_translated_subcone(w, drop, v))
                .count();
            if covers != 1 {
                bad = Some((v.clone(), covers));
            }
        });
        if bad.is_some() {
            return PartitionReport {
                points_checked,
                counterexample: bad,
            };
        }
    }
    PartitionReport {
        points_checked,
        counterexample: None,
    }
}

/// Whether each lattice point of weight `<= k_max` lies in exactly one
/// translated subcone `w_i + C({e_j : j != s(i)})`.
pub fn verify_partition(g: &GammaVector, k_max: usize) -> bool {
    partition_report(g, k_max).passed()
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..size {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// `n! Vol(Delta)`: sum of `|det|` over the simplices obtained by dropping
/// one positive slot.
pub fn normalized_volume(g: &GammaVector) -> BigInt {
    let basis = ConeBasis::new(g);
    let n = basis.n();
    (0..g.r())
        .map(|drop| {
            let rows: Vec<Vec<BigInt>> = (0..=n)
                .filter(|&j| j != drop)
                .map(|j| {
                    basis
                        .e(j)
                        .coords()
                        .iter()
                        .map(|&c| BigInt::from(c))
                        .collect()
                })
                .collect();
            bareiss_determinant(rows).abs()
        })
        .sum()
}
