//! Weight generating function of the cone, computed from its simplicial
//! decomposition.
//!
//! Slots `S = {0..n}` carry the gamma entries as in [`crate::cone`]: slot 0
//! is `p_r`, slot `i < r` is `p_i`, slot `r - 1 + j` is `q_j`. `S_+` are the
//! first `r` slots, `S_-` the remaining `s`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datum::GammaVector;
use crate::error::{Error, Result};
use crate::exactmath::{gcd, IntPolynomial, Rational};
use crate::zigzag::HodgeVector;

/// Gamma entry attached to each slot `0..=n`.
pub fn slot_values(g: &GammaVector) -> Vec<u64> {
    let r = g.r();
    let p = g.positives();
    std::iter::once(p[r - 1])
        .chain(p[..r - 1].iter().copied())
        .chain(g.negatives().iter().copied())
        .collect()
}

/// A subset of the slots `{0..n}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet {
    members: Vec<bool>,
}

impl IndexSet {
    pub fn empty(n: usize) -> Self {
        IndexSet {
            members: vec![false; n + 1],
        }
    }

    pub fn full(n: usize) -> Self {
        IndexSet {
            members: vec![true; n + 1],
        }
    }

    pub fn from_slots(n: usize, slots: &[usize]) -> Result<Self> {
        let mut set = IndexSet::empty(n);
        for &i in slots {
            if i > n {
                return Err(Error::BadRange(format!("slot {i} outside 0..={n}")));
            }
            set.members[i] = true;
        }
        Ok(set)
    }

    /// The positive slots `{0..r-1}`.
    pub fn s_plus(g: &GammaVector) -> Self {
        let mut set = IndexSet::empty(g.n());
        set.members[..g.r()].fill(true);
        set
    }

    /// The negative slots `{r..n}`.
    pub fn s_minus(g: &GammaVector) -> Self {
        let mut set = IndexSet::empty(g.n());
        set.members[g.r()..].fill(true);
        set
    }

    /// All slots except `i`.
    pub fn without(n: usize, i: usize) -> Self {
        let mut set = IndexSet::full(n);
        set.members[i] = false;
        set
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    pub fn slots(&self) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i])
            .collect()
    }

    pub fn as_mask(&self) -> &[bool] {
        &self.members
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slots().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `w(t) = sum_{S_+} {-p t} + sum_{S_-} {q t}`, the weight of the
/// fundamental lattice point with parameter `t`.
pub fn weight_w(g: &GammaVector, t: &Rational) -> u64 {
    let mut acc = Rational::zero();
    for &p in g.positives() {
        acc += t.scale(-(p as i64)).frac();
    }
    for &q in g.negatives() {
        acc += t.scale(q as i64).frac();
    }
    assert!(acc.is_integer(), "w(t) is integral");
    acc.floor().to_u64().expect("w(t) is nonnegative")
}

/// Counting form of `w(t)`:
/// `sum_{S_+} #{k : 0 < k/p < t} - sum_{S_-} #{k : 0 < k/q <= t} + r`.
///
/// `t` is first reduced into `(0, 1]`.
pub fn weight_w_alt(g: &GammaVector, t: &Rational) -> i64 {
    let t = t.unit_interval();
    let below = |p: u64| t.scale(p as i64).ceil().to_i64().expect("small") - 1;
    let at_most = |q: u64| t.scale(q as i64).floor().to_i64().expect("small");
    let plus: i64 = g.positives().iter().map(|&p| below(p)).sum();
    let minus: i64 = g.negatives().iter().map(|&q| at_most(q)).sum();
    plus - minus + g.r() as i64
}

fn check_proper(g: &GammaVector, t: &IndexSet) -> Result<()> {
    let n = g.n();
    if t.universe() != n + 1 || t.len() == n + 1 {
        return Err(Error::ImproperSubset { n });
    }
    Ok(())
}

/// `d_T`: gcd of the slot values outside `T`.
pub fn d_t(g: &GammaVector, t: &IndexSet) -> Result<u64> {
    check_proper(g, t)?;
    Ok(slot_values(g)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !t.contains(*i))
        .fold(0, |acc, (_, v)| gcd(acc, v)))
}

/// `f(x; T) = sum_{c=0}^{d_T - 1} x^{w(c / d_T)}`, the numerator of the
/// weight series of the simplicial cone over `T`.
pub fn f_t(g: &GammaVector, t: &IndexSet) -> Result<IntPolynomial> {
    let d = d_t(g, t)?;
    let mut f = IntPolynomial::zero();
    for c in 0..d {
        f.add_term(weight_w(g, &Rational::new(c, d)) as usize, 1);
    }
    Ok(f)
}

/// Which side of the circuit the decomposition removes vertices from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decomposition {
    Plus,
    Minus,
}

/// Proper subsets of `side`, grouped as `(size, subset)`.
fn proper_subsets(side: &[usize]) -> Vec<Vec<usize>> {
    let m = side.len();
    (0u64..(1u64 << m) - 1)
        .map(|mask| {
            (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| side[i])
                .collect()
        })
        .collect()
}

/// Numerator `f(x)` of the weight series `f(x) / (1 - x)^n`, by
/// inclusion-exclusion over the triangulation that omits one vertex of the
/// chosen side:
///
/// ```text
/// f = sum_{k<m} (-1)^{m-1-k} sum_{T' in side, |T'| = k} f(x; T' + other) (1-x)^{m-1-k}
/// ```
pub fn hodge_polynomial_ie(g: &GammaVector, side: Decomposition) -> IntPolynomial {
    let n = g.n();
    let (chosen, other) = match side {
        Decomposition::Plus => (IndexSet::s_plus(g), IndexSet::s_minus(g)),
        Decomposition::Minus => (IndexSet::s_minus(g), IndexSet::s_plus(g)),
    };
    let m = chosen.len();
    proper_subsets(&chosen.slots())
        .into_par_iter()
        .map(|sub| {
            let k = sub.len();
            let t = IndexSet::from_slots(n, &sub)
                .expect("slots in range")
                .union(&other);
            let term =
                f_t(g, &t).expect("proper subset") * IntPolynomial::one_minus_x_pow(m - 1 - k);
            if (m - 1 - k) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .reduce(IntPolynomial::zero, |a, b| a + b)
}

/// The parameters `t in (0, 1]` with `p t` integral for some positive entry
/// `p`, sorted.
pub fn tau_set(g: &GammaVector) -> Vec<Rational> {
    let mut ts: Vec<Rational> = g
        .positives()
        .iter()
        .flat_map(|&p| (1..=p).map(move |i| Rational::new(i, p)))
        .collect();
    ts.sort();
    ts.dedup();
    ts
}

/// Number of positive entries `p` with `p t` integral.
pub fn tau_multiplicity(g: &GammaVector, t: &Rational) -> usize {
    g.positives()
        .iter()
        .filter(|&&p| t.scale(p as i64).is_integer())
        .count()
}

/// `sum_{t in T} x^{w(t)} (1 + x + ... + x^{m(t) - 1})`.
pub fn hodge_polynomial_simplified(g: &GammaVector) -> IntPolynomial {
    let mut f = IntPolynomial::zero();
    for t in tau_set(g) {
        let w = weight_w(g, &t) as usize;
        for i in 0..tau_multiplicity(g, &t) {
            f.add_term(w + i, 1);
        }
    }
    f
}

/// Hodge vector read off the simplified numerator.
pub fn hodge_vector_genfun(g: &GammaVector) -> HodgeVector {
    HodgeVector::from_polynomial(&hodge_polynomial_simplified(g), g.n())
        .expect("numerator has nonnegative coefficients of degree <= n")
}

/// Hodge vector read off an inclusion-exclusion numerator.
pub fn hodge_vector_ie(g: &GammaVector, side: Decomposition) -> Result<HodgeVector> {
    HodgeVector::from_polynomial(&hodge_polynomial_ie(g, side), g.n())
}

/// First `terms` coefficients of `f(x) / (1 - x)^n`, the predicted number of
/// cone lattice points of each weight.
pub fn weight_series(g: &GammaVector, terms: usize) -> Vec<BigInt> {
    hodge_polynomial_simplified(g).series_over_one_minus_x_pow(g.n(), terms)
}

/// First `terms` coefficients of `f(x; T) / (1 - x)^{|T|}`.
pub fn face_series(g: &GammaVector, t: &IndexSet, terms: usize) -> Result<Vec<BigInt>> {
    Ok(f_t(g, t)?.series_over_one_minus_x_pow(t.len(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{weight_census, ConeBasis};
    use crate::datum::canonical_gammas;
    use crate::zigzag::hodge_vector_zigzag;

    fn g(s: &str) -> GammaVector {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Slot of the negative entry `q`.
    fn negative_slot(v: &GammaVector, value: u64) -> usize {
        v.r() + v.negatives().iter().position(|&x| x == value).unwrap()
    }

    #[test]
    fn weight_examples() {
        let v = g("6,-3,-2,-1");
        assert_eq!(weight_w(&v, &q(5, 6)), 2);
        assert_eq!(weight_w(&v, &q(1, 6)), 1);
        assert_eq!(weight_w(&v, &q(1, 1)), 0);
        assert_eq!(weight_w_alt(&v, &q(5, 6)), 2);
        assert_eq!(weight_w_alt(&v, &q(1, 1)), 0);
        assert_eq!(weight_w_alt(&g("3,-1,-1,-1"), &q(1, 3)), 1);
    }

    #[test]
    fn weight_forms_agree() {
        use proptest::strategy::{Strategy, ValueTree};
        use proptest::test_runner::TestRunner;
        let mut runner = TestRunner::deterministic();
        let strategy = (1i64..=720).prop_flat_map(|d| (1i64..=d, proptest::strategy::Just(d)));
        let random: Vec<Rational> = (0..200)
            .map(|_| {
                let (a, b) = strategy.new_tree(&mut runner).unwrap().current();
                q(a, b)
            })
            .collect();
        for v in canonical_gammas(10) {
            for t in tau_set(&v).iter().chain(&random) {
                assert_eq!(weight_w(&v, t) as i64, weight_w_alt(&v, t), "{v} at {t}");
            }
        }
    }

    #[test]
    fn slot_table_matches_cone() {
        for v in canonical_gammas(8) {
            let basis = ConeBasis::new(&v);
            let slots = slot_values(&v);
            for (i, &s) in slots.iter().enumerate() {
                assert_eq!(basis.slot_value(i), s);
            }
            assert_eq!(*slots.last().unwrap(), 1);
        }
    }

    #[test]
    fn d_t_examples() {
        let v = g("5,2,-6,-1");
        let n = v.n();
        assert_eq!(
            d_t(&v, &IndexSet::without(n, negative_slot(&v, 6))).unwrap(),
            6
        );
        assert_eq!(d_t(&v, &IndexSet::without(n, n)).unwrap(), 1);
        let v = g("6,-3,-2,-1");
        assert_eq!(d_t(&v, &IndexSet::s_minus(&v)).unwrap(), 6);
        assert_eq!(
            d_t(&v, &IndexSet::full(v.n())),
            Err(Error::ImproperSubset { n: 3 })
        );
    }

    #[test]
    fn f_t_examples() {
        let v = g("5,2,-6,-1");
        let n = v.n();
        let facet = IndexSet::without(n, negative_slot(&v, 6));
        assert_eq!(f_t(&v, &facet).unwrap(), poly(&[1, 3, 2]));
        assert_eq!(f_t(&v, &IndexSet::without(n, n)).unwrap(), poly(&[1]));
        assert_eq!(f_t(&v, &IndexSet::s_plus(&v)).unwrap(), poly(&[1]));
        assert!(matches!(
            f_t(&v, &IndexSet::full(n)),
            Err(Error::ImproperSubset { .. })
        ));
        for s in 2..=8u64 {
            let mut entries = vec![s as i64];
            entries.extend(std::iter::repeat_n(-1, s as usize));
            let v = GammaVector::from_signed(&entries).unwrap();
            assert_eq!(
                f_t(&v, &IndexSet::s_minus(&v)).unwrap(),
                IntPolynomial::geometric(s as usize)
            );
        }
    }

    #[test]
    fn f_t_trivial_without_unit_slot() {
        for v in canonical_gammas(8) {
            let n = v.n();
            for mask in 0u64..(1 << n) {
                let slots: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let t = IndexSet::from_slots(n, &slots).unwrap();
                assert_eq!(f_t(&v, &t).unwrap(), IntPolynomial::one(), "{v} {t}");
            }
        }
    }

    #[test]
    fn hodge_polynomial_examples() {
        let cases = [
            ("6,-3,-2,-1", vec![1, 4, 1]),
            ("5,2,-6,-1", vec![1, 4, 2]),
            ("1,-1", vec![1]),
            ("3,-1,-1,-1", vec![1, 1, 1]),
            ("4,4,2,-3,-6,-1", vec![1, 2, 4, 3]),
            ("2,2,-1,-1,-1,-1", vec![1, 1, 1, 1]),
        ];
        for (s, want) in cases {
            let v = g(s);
            assert_eq!(
                hodge_polynomial_ie(&v, Decomposition::Plus),
                poly(&want),
                "{s}"
            );
            assert_eq!(
                hodge_polynomial_ie(&v, Decomposition::Minus),
                poly(&want),
                "{s}"
            );
            assert_eq!(hodge_polynomial_simplified(&v), poly(&want), "{s}");
        }
    }

    #[test]
    fn forms_agree_with_zigzag() {
        for v in canonical_gammas(8) {
            let simplified = hodge_polynomial_simplified(&v);
            assert_eq!(
                hodge_polynomial_ie(&v, Decomposition::Plus),
                simplified,
                "{v}"
            );
            assert_eq!(
                hodge_polynomial_ie(&v, Decomposition::Minus),
                simplified,
                "{v}"
            );
            assert_eq!(hodge_vector_genfun(&v), hodge_vector_zigzag(&v), "{v}");
        }
    }

    #[test]
    fn series_matches_census() {
        for v in canonical_gammas(6) {
            let terms = v.n() + 3;
            let census = weight_census(&ConeBasis::new(&v), terms - 1);
            let census: Vec<BigInt> = census.into_iter().map(BigInt::from).collect();
            assert_eq!(weight_series(&v, terms), census, "{v}");
        }
    }

    #[test]
    fn face_series_matches_face_census() {
        for v in canonical_gammas(5) {
            let n = v.n();
            let basis = ConeBasis::new(&v);
            let points: Vec<Vec<_>> = (0..=n as i64).map(|k| basis.points_of_weight(k)).collect();
            for side in [IndexSet::s_plus(&v), IndexSet::s_minus(&v)] {
                let other = IndexSet::full(n)
                    .slots()
                    .into_iter()
                    .filter(|&i| !side.contains(i));
                let other: Vec<usize> = other.collect();
                for sub in proper_subsets(&side.slots()) {
                    let mut slots = sub.clone();
                    slots.extend(&other);
                    let t = IndexSet::from_slots(n, &slots).unwrap();
                    let predicted = face_series(&v, &t, n + 1).unwrap();
                    for (k, pts) in points.iter().enumerate() {
                        let count = pts.iter().filter(|p| basis.in_face(t.as_mask(), p)).count();
                        assert_eq!(predicted[k], BigInt::from(count), "{v} {t} weight {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn dwork_family() {
        for s in 2..=8usize {
            let mut entries = vec![s as i64];
            entries.extend(std::iter::repeat_n(-1, s));
            let v = GammaVector::from_signed(&entries).unwrap();
            let want = IntPolynomial::geometric(s);
            assert_eq!(hodge_polynomial_simplified(&v), want);
            assert_eq!(hodge_polynomial_ie(&v, Decomposition::Plus), want);
            assert_eq!(hodge_polynomial_ie(&v, Decomposition::Minus), want);
        }
    }
}
