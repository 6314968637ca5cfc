//! The zig-zag walk over the merged list of a datum.
//!
//! Starting from `Phi(0) = r`, each alpha entry steps up and each beta entry
//! steps down. The values reached at beta entries are the Hodge–Tate weights.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::datum::{GammaVector, HypergeometricDatum, MergedList, Side};
use crate::error::{Error, Result};
use crate::exactmath::IntPolynomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagProfile {
    phi: Vec<i64>,
    merged: MergedList,
}

impl ZigzagProfile {
    /// Walks the merged list of `hd` starting at `start`.
    pub fn new(hd: &HypergeometricDatum, start: i64) -> Self {
        let merged = hd.merged_list();
        let mut phi = Vec::with_capacity(merged.len() + 1);
        phi.push(start);
        let mut cur = start;
        for entry in merged.entries() {
            cur += match entry.side {
                Side::Alpha => 1,
                Side::Beta => -1,
            };
            phi.push(cur);
        }
        ZigzagProfile { phi, merged }
    }

    /// The profile of `HD_Gamma` with `Phi(0) = r`.
    pub fn of_gamma(g: &GammaVector) -> Self {
        Self::new(&g.to_datum(), g.r() as i64)
    }

    /// The profile of the reduced datum, shifted so its smallest Hodge–Tate
    /// weight is 0.
    pub fn of_reduced(hd: &HypergeometricDatum) -> Result<Self> {
        let red = hd.reduce()?;
        Ok(Self::new(&red.datum, red.offset))
    }

    /// `Phi(0), .., Phi(2L)`.
    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn merged(&self) -> &MergedList {
        &self.merged
    }

    /// `{Phi(i) : mu_i in beta}` in list order.
    pub fn hodge_tate_multiset(&self) -> Vec<i64> {
        self.merged
            .entries()
            .iter()
            .zip(&self.phi[1..])
            .filter(|(e, _)| e.side == Side::Beta)
            .map(|(_, &v)| v)
            .collect()
    }
}

/// Hodge multiplicities `H(0), .., H(n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HodgeVector {
    multiplicities: Vec<u64>,
}

impl HodgeVector {
    pub fn new(multiplicities: Vec<u64>) -> Self {
        HodgeVector { multiplicities }
    }

    /// Counts weights into a vector indexed `0..=n`, growing it if a weight
    /// exceeds `n`.
    pub fn from_weights(weights: &[i64], n: usize) -> Result<Self> {
        let mut multiplicities = vec![0u64; n + 1];
        for &w in weights {
            let k = usize::try_from(w)
                .map_err(|_| Error::BadRange(format!("negative Hodge weight {w}")))?;
            if k >= multiplicities.len() {
                multiplicities.resize(k + 1, 0);
            }
            multiplicities[k] += 1;
        }
        Ok(HodgeVector { multiplicities })
    }

    /// Reads the coefficients of a Hodge polynomial, padded to `n + 1`
    /// entries. Fails on negative coefficients.
    pub fn from_polynomial(f: &IntPolynomial, n: usize) -> Result<Self> {
        let len = (n + 1).max(f.coeffs().len());
        let coeffs = f
            .to_i64_padded(len)
            .ok_or_else(|| Error::BadRange(format!("coefficient of {f} out of range")))?;
        let multiplicities = coeffs
            .into_iter()
            .map(|c| {
                u64::try_from(c)
                    .map_err(|_| Error::BadRange(format!("negative coefficient in {f}")))
            })
            .collect::<Result<_>>()?;
        Ok(HodgeVector { multiplicities })
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.multiplicities
    }

    pub fn get(&self, k: usize) -> u64 {
        self.multiplicities.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.multiplicities.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_i64(
            &self
                .multiplicities
                .iter()
                .map(|&m| m as i64)
                .collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for HodgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for HodgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HodgeVector{self}")
    }
}

/// Hodge vector of `HD_Gamma` by the zig-zag walk.
pub fn hodge_vector_zigzag(g: &GammaVector) -> HodgeVector {
    let ht = ZigzagProfile::of_gamma(g).hodge_tate_multiset();
    HodgeVector::from_weights(&ht, g.n()).expect("zig-zag weights are non-negative")
}

/// Hodge vector of the reduced datum, normalised to start at weight 0.
pub fn reduced_hodge_vector(hd: &HypergeometricDatum) -> Result<HodgeVector> {
    let ht = ZigzagProfile::of_reduced(hd)?.hodge_tate_multiset();
    let top = ht.iter().copied().max().unwrap_or(0).max(0) as usize;
    HodgeVector::from_weights(&ht, top)
}

/// The lower convex path with `H(k)` unit steps of slope `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgePolygon {
    vertices: Vec<(i64, i64)>,
}

impl HodgePolygon {
    pub fn from_hodge(h: &HodgeVector) -> Self {
        let mut vertices = vec![(0i64, 0i64)];
        let (mut x, mut y) = (0i64, 0i64);
        for (slope, &mult) in h.as_slice().iter().enumerate() {
            if mult == 0 {
                continue;
            }
            x += mult as i64;
            y += slope as i64 * mult as i64;
            vertices.push((x, y));
        }
        HodgePolygon { vertices }
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Draws a zig-zag profile.
pub fn render_zigzag(profile: &ZigzagProfile, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(profile),
        RenderFormat::Svg => render_svg(profile),
    }
}

/// Same as [`render_zigzag`] with the format given by name.
pub fn render_zigzag_named(profile: &ZigzagProfile, format: &str) -> Result<String> {
    Ok(render_zigzag(profile, format.parse()?))
}

fn render_ascii(profile: &ZigzagProfile) -> String {
    let phi = profile.phi();
    let entries = profile.merged().entries();
    let top = *phi.iter().max().unwrap_or(&0);
    let bottom = *phi.iter().min().unwrap_or(&0);
    let label_width = top.to_string().len().max(bottom.to_string().len());
    let mut out = String::new();
    for level in (bottom..=top).rev() {
        let _ = write!(out, "{level:>label_width$}|");
        for (i, &v) in phi.iter().enumerate() {
            let mark = if v != level {
                '.'
            } else if i == 0 {
                '*'
            } else if entries[i - 1].side == Side::Beta {
                'v'
            } else {
                '^'
            };
            out.push(mark);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "{}|{}", " ".repeat(label_width), "-".repeat(phi.len()));
    out
}

const STEP: i64 = 40;
const MARGIN: i64 = 40;

fn render_svg(profile: &ZigzagProfile) -> String {
    let phi = profile.phi();
    let entries = profile.merged().entries();
    let top = *phi.iter().max().unwrap_or(&0);
    let bottom = *phi.iter().min().unwrap_or(&0);
    let steps = phi.len() as i64 - 1;
    let width = steps * STEP + 2 * MARGIN;
    let height = (top - bottom) * STEP + 3 * MARGIN;
    // Logical coordinates (i, Phi(i)) mapped to pixels.
    let transform = format!(
        "translate({},{}) scale({},{})",
        MARGIN,
        MARGIN + top * STEP,
        STEP,
        -STEP
    );
    let points: Vec<String> = phi
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{i},{v}"))
        .collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"  <polyline transform="{transform}" points="{}" fill="none" stroke="black" stroke-width="0.05"/>"#,
        points.join(" ")
    );
    for (i, entry) in entries.iter().enumerate() {
        if entry.side == Side::Beta {
            let _ = writeln!(
                out,
                r#"  <circle transform="{transform}" cx="{}" cy="{}" r="0.12" fill="blue"/>"#,
                i + 1,
                phi[i + 1]
            );
        }
    }
    let label_y = MARGIN + (top - bottom) * STEP + MARGIN;
    for (i, entry) in entries.iter().enumerate() {
        let x = MARGIN + (i as i64 + 1) * STEP;
        let color = match entry.side {
            Side::Alpha => "black",
            Side::Beta => "blue",
        };
        let _ = writeln!(
            out,
            r#"  <text x="{x}" y="{label_y}" font-size="12" text-anchor="middle" fill="{color}">{}</text>"#,
            entry.value
        );
    }
    for level in bottom..=top {
        let y = MARGIN + (top - level) * STEP + 4;
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{y}" font-size="12" text-anchor="end">{level}</text>"#,
            MARGIN - 10
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::canonical_gammas;

    fn g(s: &str) -> GammaVector {
        s.parse().unwrap()
    }

    fn sorted(mut v: Vec<i64>) -> Vec<i64> {
        v.sort();
        v
    }

    #[test]
    fn profile_examples() {
        assert_eq!(
            ZigzagProfile::of_gamma(&g("3,-1,-1,-1")).phi(),
            [1, 2, 3, 2, 1, 0, 1]
        );
        assert_eq!(ZigzagProfile::of_gamma(&g("1,-1")).phi(), [1, 0, 1]);
        let p = ZigzagProfile::of_gamma(&g("5,-2,-2,-1"));
        assert_eq!(p.phi(), [1, 2, 3, 2, 1, 2, 3, 2, 1, 0, 1]);
        assert_eq!(p.hodge_tate_multiset(), [2, 1, 2, 1, 0]);
    }

    #[test]
    fn hodge_tate_examples() {
        let ht = |s| sorted(ZigzagProfile::of_gamma(&g(s)).hodge_tate_multiset());
        assert_eq!(ht("3,-1,-1,-1"), [0, 1, 2]);
        assert_eq!(ht("6,-3,-2,-1"), [0, 1, 1, 1, 1, 2]);
        assert_eq!(ht("5,2,-6,-1"), [0, 1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn hodge_vector_examples() {
        assert_eq!(
            hodge_vector_zigzag(&g("3,-1,-1,-1")).as_slice(),
            [1, 1, 1, 0]
        );
        assert_eq!(
            hodge_vector_zigzag(&g("4,4,2,-3,-6,-1")).as_slice(),
            [1, 2, 4, 3, 0, 0]
        );
        assert_eq!(
            hodge_vector_zigzag(&g("4,-1,-1,-1,-1")).as_slice(),
            [1, 1, 1, 1, 0]
        );
    }

    #[test]
    fn reduced_consistency() {
        let hd = g("3,-1,-1,-1").to_datum();
        assert_eq!(reduced_hodge_vector(&hd).unwrap().as_slice(), [1, 1]);
    }

    #[test]
    fn polygon_examples() {
        let poly = |v: Vec<u64>| {
            HodgePolygon::from_hodge(&HodgeVector::new(v))
                .vertices()
                .to_vec()
        };
        assert_eq!(poly(vec![1, 1, 1]), [(0, 0), (1, 0), (2, 1), (3, 3)]);
        assert_eq!(poly(vec![1, 4, 1]), [(0, 0), (1, 0), (5, 4), (6, 6)]);
        assert_eq!(poly(vec![7]), [(0, 0), (7, 0)]);
        assert_eq!(poly(vec![1, 0, 2]), [(0, 0), (1, 0), (3, 4)]);
    }

    #[test]
    fn ascii_rendering() {
        let art = render_zigzag(&ZigzagProfile::of_gamma(&g("1,-1")), RenderFormat::Ascii);
        assert_eq!(art, "1|*.^\n0|.v.\n |---\n");
        let art = render_zigzag(
            &ZigzagProfile::of_gamma(&g("3,-1,-1,-1")),
            RenderFormat::Ascii,
        );
        assert!(art
            .chars()
            .all(|c| ".-^v|* \n".contains(c) || c.is_ascii_digit()));
        assert_eq!(art.lines().count(), 5);
    }

    #[test]
    fn svg_rendering() {
        let svg = render_zigzag(
            &ZigzagProfile::of_gamma(&g("3,-1,-1,-1")),
            RenderFormat::Svg,
        );
        assert!(svg.contains(r#"points="0,1 1,2 2,3 3,2 4,1 5,0 6,1""#));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(">1/3</text>"));
        for tag in svg.split('<').skip(1) {
            let name: String = tag
                .chars()
                .take_while(|c| c.is_ascii_alphabetic() || *c == '/')
                .collect();
            assert!(
                ["svg", "/svg", "polyline", "circle", "text", "/text"].contains(&name.as_str()),
                "unexpected element {name}"
            );
        }
    }

    #[test]
    fn unsupported_format() {
        let p = ZigzagProfile::of_gamma(&g("1,-1"));
        assert_eq!(
            render_zigzag_named(&p, "png"),
            Err(Error::UnsupportedFormat("png".into()))
        );
    }

    #[test]
    fn profile_invariants_up_to_ten() {
        let mut out_of_range = Vec::new();
        for v in canonical_gammas(10) {
            let p = ZigzagProfile::of_gamma(&v);
            let phi = p.phi();
            assert_eq!(phi[0], v.r() as i64);
            assert_eq!(phi[phi.len() - 1], phi[0]);
            let ht = p.hodge_tate_multiset();
            assert_eq!(ht.len() as u64, v.natural_length());
            let h = hodge_vector_zigzag(&v);
            assert_eq!(h.total(), v.natural_length());
            assert_eq!(h.len(), v.n() + 1, "{v}: weight above n");
            if phi.iter().any(|&x| x < 0 || x > v.n() as i64) {
                out_of_range.push(v.to_string());
            }
        }
        // Non-negativity of the whole walk is empirical; report rather than fail.
        if !out_of_range.is_empty() {
            eprintln!("zig-zag leaves [0, n] for: {out_of_range:?}");
        }
    }
}
