//! Python bindings for `hodge-core`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hodge_core::cone::partition_report;
use hodge_core::genfun::IndexSet;
use hodge_core::zigzag::render_zigzag_named;
use hodge_core::{
    apex_sequence, canonical_gammas, f_t, hodge_polynomial_ie, hodge_vector_cone,
    hodge_vector_genfun, hodge_vector_zigzag, normalized_volume, reduced_hodge_vector,
    valuation_profile, verify_lemma_fractional, verify_phi_bridge, weight_census, ConeBasis,
    Decomposition, PadicContext, ZigzagProfile,
};

fn value_error(err: hodge_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn coeff_vec(coeffs: &[num_bigint::BigInt]) -> PyResult<Vec<i64>> {
    coeffs
        .iter()
        .map(|c| i64::try_from(c).map_err(|_| PyValueError::new_err("coefficient exceeds 64 bits")))
        .collect()
}

/// A gamma vector such as `GammaVector("3,-1,-1,-1")`.
#[pyclass(
    name = "GammaVector",
    module = "hgm_hodge",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGamma {
    inner: hodge_core::GammaVector,
}

#[pymethods]
impl PyGamma {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = text.parse().map_err(value_error)?;
        Ok(PyGamma { inner })
    }

    /// Builds from signed entries, e.g. `[3, -1, -1, -1]`.
    #[staticmethod]
    fn from_entries(entries: Vec<i64>) -> PyResult<Self> {
        let inner = hodge_core::GammaVector::from_signed(&entries).map_err(value_error)?;
        Ok(PyGamma { inner })
    }

    fn entries(&self) -> Vec<i64> {
        self.inner.signed()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn natural_length(&self) -> u64 {
        self.inner.natural_length()
    }

    #[getter]
    fn level(&self) -> u64 {
        self.inner.level()
    }

    fn canonical(&self) -> Self {
        PyGamma {
            inner: self.inner.canonical(),
        }
    }

    fn to_datum(&self) -> PyDatum {
        PyDatum {
            inner: self.inner.to_datum(),
        }
    }

    /// Hodge vector by `"zigzag"`, `"genfun"` or `"cone"`.
    #[pyo3(signature = (method = "zigzag"))]
    fn hodge(&self, method: &str) -> PyResult<Vec<u64>> {
        let h = match method {
            "zigzag" => hodge_vector_zigzag(&self.inner),
            "genfun" => hodge_vector_genfun(&self.inner),
            "cone" => hodge_vector_cone(&self.inner),
            _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
        };
        Ok(h.as_slice().to_vec())
    }

    /// Numerator of the weight series by inclusion-exclusion, `"plus"` or
    /// `"minus"` side.
    #[pyo3(signature = (side = "plus"))]
    fn hodge_polynomial(&self, side: &str) -> PyResult<Vec<i64>> {
        let side = match side {
            "plus" => Decomposition::Plus,
            "minus" => Decomposition::Minus,
            _ => return Err(PyValueError::new_err(format!("unknown side {side:?}"))),
        };
        coeff_vec(hodge_polynomial_ie(&self.inner, side).coeffs())
    }

    /// `f(x; T)` for the slots in `members`.
    fn face_polynomial(&self, members: Vec<usize>) -> PyResult<Vec<i64>> {
        let t = IndexSet::from_slots(self.inner.n(), &members).map_err(value_error)?;
        coeff_vec(f_t(&self.inner, &t).map_err(value_error)?.coeffs())
    }

    /// `Phi(0), .., Phi(2L)`.
    fn zigzag(&self) -> Vec<i64> {
        ZigzagProfile::of_gamma(&self.inner).phi().to_vec()
    }

    fn reduced_hodge(&self) -> PyResult<Vec<u64>> {
        let h = reduced_hodge_vector(&self.inner.to_datum()).map_err(value_error)?;
        Ok(h.as_slice().to_vec())
    }

    /// Generators `e_0..e_n` of the cone.
    fn cone_basis(&self) -> Vec<Vec<i64>> {
        ConeBasis::new(&self.inner)
            .vectors()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect()
    }

    /// Lattice point counts of weight `0..=k_max`.
    fn weight_census(&self, k_max: usize) -> Vec<u64> {
        weight_census(&ConeBasis::new(&self.inner), k_max)
    }

    /// `(apexes, removed_index)`.
    fn apexes(&self) -> (Vec<Vec<i64>>, Vec<usize>) {
        let seq = apex_sequence(&self.inner);
        let apexes = seq.apexes.iter().map(|w| w.coords().to_vec()).collect();
        (apexes, seq.removed_index)
    }

    #[pyo3(signature = (k_max = None))]
    fn verify_partition(&self, k_max: Option<usize>) -> bool {
        partition_report(&self.inner, k_max.unwrap_or(self.inner.n())).passed()
    }

    fn normalized_volume(&self) -> String {
        normalized_volume(&self.inner).to_string()
    }

    /// `ord_p A(k)` for `k = 0..p-1`.
    fn valuation_profile(&self, p: u64) -> PyResult<Vec<i64>> {
        let ctx = PadicContext::of_gamma(&self.inner, p).map_err(value_error)?;
        Ok(valuation_profile(&ctx).orders)
    }

    fn verify_padic(&self, p: u64) -> PyResult<(bool, bool)> {
        let bridge = verify_phi_bridge(&self.inner, p).map_err(value_error)?;
        let lemma = verify_lemma_fractional(&self.inner, p).map_err(value_error)?;
        Ok((bridge, lemma))
    }

    #[pyo3(signature = (format = "ascii", reduced = false))]
    fn plot(&self, format: &str, reduced: bool) -> PyResult<String> {
        let profile = if reduced {
            ZigzagProfile::of_reduced(&self.inner.to_datum()).map_err(value_error)?
        } else {
            ZigzagProfile::of_gamma(&self.inner)
        };
        render_zigzag_named(&profile, format).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GammaVector('{}')", self.inner)
    }
}

/// A hypergeometric datum such as `HypergeometricDatum("1/3,2/3,1;1,1,1")`.
#[pyclass(
    name = "HypergeometricDatum",
    module = "hgm_hodge",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyDatum {
    inner: hodge_core::HypergeometricDatum,
}

#[pymethods]
impl PyDatum {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner = text.parse().map_err(value_error)?;
        Ok(PyDatum { inner })
    }

    /// Elements as `"p/q"` strings.
    fn alpha(&self) -> Vec<String> {
        self.inner.alpha().iter().map(ToString::to_string).collect()
    }

    fn beta(&self) -> Vec<String> {
        self.inner.beta().iter().map(ToString::to_string).collect()
    }

    fn to_gamma(&self) -> PyResult<PyGamma> {
        Ok(PyGamma {
            inner: self.inner.to_gamma().map_err(value_error)?,
        })
    }

    /// `(reduced datum, offset)`.
    fn reduce(&self) -> PyResult<(PyDatum, i64)> {
        let red = self.inner.reduce().map_err(value_error)?;
        Ok((PyDatum { inner: red.datum }, red.offset))
    }

    fn is_primitive(&self) -> bool {
        self.inner.is_primitive()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HypergeometricDatum('{}')", self.inner)
    }
}

/// Hodge vector of a gamma vector or datum given as text.
#[pyfunction]
#[pyo3(signature = (text, method = "zigzag"))]
fn hodge_vector(text: &str, method: &str) -> PyResult<Vec<u64>> {
    let g = if text.contains(';') {
        PyDatum::new(text)?.to_gamma()?
    } else {
        PyGamma::new(text)?
    };
    g.hodge(method)
}

/// All canonical gamma vectors with natural length `<= max_len`.
#[pyfunction]
fn gammas_up_to(max_len: u64) -> Vec<PyGamma> {
    canonical_gammas(max_len)
        .into_iter()
        .map(|inner| PyGamma { inner })
        .collect()
}

#[pymodule]
fn hgm_hodge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGamma>()?;
    m.add_class::<PyDatum>()?;
    m.add_function(wrap_pyfunction!(hodge_vector, m)?)?;
    m.add_function(wrap_pyfunction!(gammas_up_to, m)?)?;
    Ok(())
}
