//! Hypergeometric data defined over Q and their gamma vectors.
//!
//! A gamma vector `[p_1, .., p_r, -q_1, .., -q_s]` records the cyclotomic
//! factorisation
//!
//! ```text
//! prod (X - e^{2 pi i a}) / prod (X - e^{2 pi i b}) = prod (X^p - 1) / prod (X^q - 1)
//! ```
//!
//! and expands to the datum whose `alpha` is the union of the sets
//! `{i/p : 1 <= i <= p}` and whose `beta` is the union of `{i/q}`.
//! Rationals are kept in `(0, 1]`, with `1` standing for the class of `0`
//! modulo 1; input values are reduced into that interval on construction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{divisors, gcd, lcm, moebius, Rational};

/// A hypergeometric gamma vector.
///
/// Entry order is significant: the lattice cone uses `p_1..p_{r-1}` and
/// `q_1..q_{s-1}` as coordinates, with `p_r` and `q_s` playing special
/// roles. `q_s` is always 1; construction moves a `1` to the last negative
/// slot when needed. [`GammaVector::canonical`] gives the sorted form used
/// for output and deduplication.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GammaVector {
    positives: Vec<u64>,
    negatives: Vec<u64>,
}

impl GammaVector {
    pub fn new(positives: Vec<u64>, mut negatives: Vec<u64>) -> Result<Self> {
        if positives.is_empty() || negatives.is_empty() {
            return Err(Error::InvalidGamma(
                "needs at least one positive and one negative entry".into(),
            ));
        }
        if positives.iter().chain(&negatives).any(|&x| x == 0) {
            return Err(Error::InvalidGamma("entries must be nonzero".into()));
        }
        let sp: u64 = positives.iter().sum();
        let sq: u64 = negatives.iter().sum();
        if sp != sq {
            return Err(Error::InvalidGamma(format!(
                "positive entries sum to {sp} but negative entries sum to {sq}"
            )));
        }
        let Some(unit) = negatives.iter().rposition(|&q| q == 1) else {
            return Err(Error::NoUnitDenominator);
        };
        // [1, -1] is the one vector allowed to share an entry between sides.
        let trivial = positives == [1] && negatives == [1];
        if !trivial && positives.iter().any(|p| negatives.contains(p)) {
            return Err(Error::InvalidGamma(
                "positive and negative entries must be disjoint".into(),
            ));
        }
        let last = negatives.len() - 1;
        negatives.swap(unit, last);
        Ok(GammaVector {
            positives,
            negatives,
        })
    }

    /// Builds from signed entries, e.g. `[3, -1, -1, -1]`.
    pub fn from_signed(entries: &[i64]) -> Result<Self> {
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        for &e in entries {
            match e {
                0 => return Err(Error::InvalidGamma("entries must be nonzero".into())),
                e if e > 0 => positives.push(e as u64),
                e => negatives.push(e.unsigned_abs()),
            }
        }
        GammaVector::new(positives, negatives)
    }

    pub fn positives(&self) -> &[u64] {
        &self.positives
    }

    pub fn negatives(&self) -> &[u64] {
        &self.negatives
    }

    /// Number of positive entries.
    pub fn r(&self) -> usize {
        self.positives.len()
    }

    /// Number of negative entries.
    pub fn s(&self) -> usize {
        self.negatives.len()
    }

    /// Dimension of the lattice, `r + s - 1`.
    pub fn n(&self) -> usize {
        self.r() + self.s() - 1
    }

    /// `L = sum p_i = sum q_j`.
    pub fn natural_length(&self) -> u64 {
        self.positives.iter().sum()
    }

    /// `lcm` of all entries, equal to the level of the expanded datum.
    pub fn level(&self) -> u64 {
        self.positives
            .iter()
            .chain(&self.negatives)
            .fold(1, |acc, &x| lcm(acc, x))
    }

    pub fn signed(&self) -> Vec<i64> {
        self.positives
            .iter()
            .map(|&p| p as i64)
            .chain(self.negatives.iter().map(|&q| -(q as i64)))
            .collect()
    }

    /// Both sides sorted in descending order.
    pub fn canonical(&self) -> GammaVector {
        let mut positives = self.positives.clone();
        let mut negatives = self.negatives.clone();
        positives.sort_unstable_by(|a, b| b.cmp(a));
        negatives.sort_unstable_by(|a, b| b.cmp(a));
        GammaVector {
            positives,
            negatives,
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// The datum `HD_Gamma` at natural length.
    pub fn to_datum(&self) -> HypergeometricDatum {
        let expand = |entries: &[u64]| -> Vec<Rational> {
            entries
                .iter()
                .flat_map(|&d| (1..=d).map(move |i| Rational::new(i, d)))
                .collect()
        };
        HypergeometricDatum::from_sorted(expand(&self.positives), expand(&self.negatives))
    }

    /// Whether alpha and beta of the expanded datum are disjoint.
    pub fn is_primitive(&self) -> bool {
        self.to_datum().is_primitive()
    }
}

impl fmt::Display for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signed().iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for GammaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for GammaVector {
    type Err = Error;

    /// Accepts comma and/or whitespace separated signed integers, optionally
    /// in square brackets.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let entries = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("empty gamma vector".into()));
        }
        GammaVector::from_signed(&entries)
    }
}

impl TryFrom<String> for GammaVector {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GammaVector> for String {
    fn from(g: GammaVector) -> String {
        g.to_string()
    }
}

/// Which multiset of a datum an entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    // Declared first so that ties sort beta before alpha.
    Beta,
    Alpha,
}

/// A pair of equal-length multisets in `(0, 1]`, each a union of full orbits
/// `{i/d : gcd(i, d) = 1}`.
///
/// Both multisets are stored sorted.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypergeometricDatum {
    alpha: Vec<Rational>,
    beta: Vec<Rational>,
}

impl HypergeometricDatum {
    pub fn new(alpha: Vec<Rational>, beta: Vec<Rational>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::LengthMismatch {
                alpha: alpha.len(),
                beta: beta.len(),
            });
        }
        if alpha.is_empty() {
            return Err(Error::NotOverQ("empty datum".into()));
        }
        let reduce = |v: Vec<Rational>| -> Vec<Rational> {
            let mut v: Vec<Rational> = v.iter().map(Rational::unit_interval).collect();
            v.sort();
            v
        };
        let alpha = reduce(alpha);
        let beta = reduce(beta);
        orbit_multiplicities(&alpha)?;
        orbit_multiplicities(&beta)?;
        Ok(HypergeometricDatum { alpha, beta })
    }

    fn from_sorted(mut alpha: Vec<Rational>, mut beta: Vec<Rational>) -> Self {
        alpha.sort();
        beta.sort();
        HypergeometricDatum { alpha, beta }
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rational] {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Least common denominator of `alpha ∪ beta`.
    pub fn level(&self) -> u64 {
        self.alpha
            .iter()
            .chain(&self.beta)
            .fold(1, |acc, x| lcm(acc, x.denom_u64()))
    }

    pub fn beta_multiplicity(&self, b: &Rational) -> usize {
        self.beta.iter().filter(|x| *x == b).count()
    }

    pub fn alpha_multiplicity(&self, a: &Rational) -> usize {
        self.alpha.iter().filter(|x| *x == a).count()
    }

    pub fn contains(&self, mu: &Rational) -> bool {
        self.alpha.binary_search(mu).is_ok() || self.beta.binary_search(mu).is_ok()
    }

    pub fn is_primitive(&self) -> bool {
        !self
            .alpha
            .iter()
            .any(|a| self.beta.binary_search(a).is_ok())
    }

    /// Recovers the gamma vector by Möbius inversion of the orbit
    /// multiplicities.
    pub fn to_gamma(&self) -> Result<GammaVector> {
        let na = orbit_multiplicities(&self.alpha)?;
        let nb = orbit_multiplicities(&self.beta)?;
        let level = self.level();
        // m_d: signed multiplicity of the d-th cyclotomic polynomial
        let m = |d: u64| -> i64 {
            na.get(&d).copied().unwrap_or(0) as i64 - nb.get(&d).copied().unwrap_or(0) as i64
        };
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        let divs = divisors(level);
        for &big_n in divs.iter().rev() {
            // Phi_d = prod_{N | d} (X^N - 1)^{moebius(d/N)}, so the exponent
            // of (X^N - 1) is sum over multiples N' of N of moebius(N'/N) m_{N'}.
            let c: i64 = divs
                .iter()
                .filter(|&&n2| n2 % big_n == 0)
                .map(|&n2| moebius(n2 / big_n) as i64 * m(n2))
                .sum();
            let count = c.unsigned_abs() as usize;
            if c > 0 {
                positives.extend(std::iter::repeat_n(big_n, count));
            } else if c < 0 {
                negatives.extend(std::iter::repeat_n(big_n, count));
            }
        }
        // {1} ; {1}: every cyclotomic exponent cancels, but this is the
        // degenerate one-dimensional datum of [1, -1].
        if positives.is_empty() && negatives.is_empty() && self.alpha == [Rational::one()] {
            return GammaVector::new(vec![1], vec![1]);
        }
        if !negatives.contains(&1) {
            return Err(Error::NoUnitDenominator);
        }
        if positives.is_empty() {
            // c_1 < 0 forces sum p = sum q > 0, so this cannot happen for a
            // consistent datum.
            return Err(Error::NoUnitDenominator);
        }
        let g = GammaVector::new(positives, negatives)?;
        if g.natural_length() != self.len() as u64 {
            return Err(Error::NotNaturalLength {
                len: self.len(),
                natural: g.natural_length(),
            });
        }
        Ok(g)
    }

    /// The sorted combined list `mu_1 <= ... <= mu_{2L}`, with beta copies
    /// placed before alpha copies of equal value.
    pub fn merged_list(&self) -> MergedList {
        let mut entries: Vec<MergedEntry> = self
            .alpha
            .iter()
            .map(|v| MergedEntry {
                value: v.clone(),
                side: Side::Alpha,
            })
            .chain(self.beta.iter().map(|v| MergedEntry {
                value: v.clone(),
                side: Side::Beta,
            }))
            .collect();
        entries.sort_by(|a, b| a.value.cmp(&b.value).then(a.side.cmp(&b.side)));
        MergedList { entries }
    }

    /// Removes the common part of alpha and beta.
    ///
    /// The accompanying offset normalises the zig-zag of the reduced datum:
    /// walking it from `Phi(0) = 0`, adding the offset to the values at beta
    /// positions makes the smallest of them 0.
    pub fn reduce(&self) -> Result<ReducedDatum> {
        let mut alpha = Vec::new();
        let mut beta = self.beta.clone();
        for a in &self.alpha {
            if let Some(pos) = beta.iter().position(|b| b == a) {
                beta.remove(pos);
            } else {
                alpha.push(a.clone());
            }
        }
        if alpha.is_empty() {
            return Err(Error::EmptyReduction);
        }
        let datum = HypergeometricDatum::from_sorted(alpha, beta);
        let mut phi = 0i64;
        let mut min_beta = i64::MAX;
        for entry in datum.merged_list().entries() {
            match entry.side {
                Side::Alpha => phi += 1,
                Side::Beta => {
                    phi -= 1;
                    min_beta = min_beta.min(phi);
                }
            }
        }
        Ok(ReducedDatum {
            datum,
            offset: -min_beta,
        })
    }
}

/// Multiplicity of each full orbit `{i/d : gcd(i,d) = 1}` in a sorted
/// multiset, keyed by `d`.
pub fn orbit_multiplicities(values: &[Rational]) -> Result<BTreeMap<u64, u64>> {
    let mut by_den: BTreeMap<u64, BTreeMap<u64, u64>> = BTreeMap::new();
    for v in values {
        let d = v.denom_u64();
        let i = num_traits::ToPrimitive::to_u64(v.numer())
            .ok_or_else(|| Error::NotOverQ(format!("{v} is outside (0, 1]")))?;
        *by_den.entry(d).or_default().entry(i).or_default() += 1;
    }
    let mut out = BTreeMap::new();
    for (d, counts) in by_den {
        let orbit: Vec<u64> = (1..=d).filter(|&i| gcd(i, d) == 1).collect();
        let mult = counts.get(&orbit[0]).copied().unwrap_or(0);
        let full = counts.len() == orbit.len()
            && orbit.iter().all(|i| counts.get(i).copied() == Some(mult));
        if !full {
            return Err(Error::NotOverQ(format!(
                "elements with denominator {d} do not form full orbits"
            )));
        }
        out.insert(d, mult);
    }
    Ok(out)
}

fn fmt_multiset(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for HypergeometricDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{};{}",
            fmt_multiset(&self.alpha),
            fmt_multiset(&self.beta)
        )
    }
}

impl fmt::Debug for HypergeometricDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HD{{{self}}}")
    }
}

impl FromStr for HypergeometricDatum {
    type Err = Error;

    /// `"1/3,2/3,1;1,1,1"`: alpha, a semicolon, then beta.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse("datum needs ';' between alpha and beta".into()))?;
        let parse = |part: &str| -> Result<Vec<Rational>> {
            part.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::parse)
                .collect()
        };
        HypergeometricDatum::new(parse(a)?, parse(b)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergedEntry {
    pub value: Rational,
    pub side: Side,
}

/// The combined sorted list of a datum; `entries()[i - 1]` is `mu_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergedList {
    entries: Vec<MergedEntry>,
}

impl MergedList {
    pub fn entries(&self) -> &[MergedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `mu_i` for `1 <= i <= 2L`, and `mu_0 = 0`.
    pub fn mu(&self, i: usize) -> Rational {
        if i == 0 {
            Rational::zero()
        } else {
            self.entries[i - 1].value.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDatum {
    pub datum: HypergeometricDatum,
    pub offset: i64,
}

/// Partitions of `n` into parts, each list in descending order.
fn partitions(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every canonical gamma vector with natural length `1..=max_len`, sorted by
/// natural length and then lexicographically by signed entries.
pub fn canonical_gammas(max_len: u64) -> Vec<GammaVector> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let parts = partitions(len);
        let mut batch: Vec<GammaVector> = parts
            .iter()
            .flat_map(|pos| parts.iter().map(move |neg| (pos, neg)))
            .filter(|(_, neg)| neg.contains(&1))
            .filter_map(|(pos, neg)| GammaVector::new(pos.clone(), neg.clone()).ok())
            .collect();
        batch.sort_by_key(GammaVector::signed);
        out.extend(batch);
    }
    out
}
