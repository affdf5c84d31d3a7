//! Python bindings: the model type, the stability predicates, the
//! Jordan-Hölder machinery, the GIT helpers and the verification suites.
//!
//! Rationals cross the boundary as `"p/q"` strings, exactly as in the JSON
//! document format.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use decostab::document::ModelDocument;
use decostab::enumerate::{run_suite, EnumerationBounds, VerifyOptions};
use decostab::gitpoint;
use decostab::jh;
use decostab::model::{BundleModel, WeightedFiltration};
use decostab::rational::{format_q, parse_q, qi};
use decostab::stability;
use decostab::Error;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn q_of(text: &str) -> PyResult<decostab::Q> {
    parse_q(text).map_err(err)
}

/// A decorated generalized parabolic bundle model, loaded from a JSON
/// document (the same format the CLI consumes).
#[pyclass(name = "Model")]
struct PyModel {
    doc: ModelDocument,
    model: BundleModel,
}

fn filtration_dict<'py>(
    py: Python<'py>,
    model: &BundleModel,
    filt: &WeightedFiltration,
) -> PyResult<Bound<'py, PyList>> {
    let steps = PyList::empty(py);
    for (&s, &w) in filt.steps.iter().zip(&filt.weights) {
        let d = PyDict::new(py);
        let sub = model.sub(s);
        d.set_item("id", &sub.id)?;
        d.set_item("rank", sub.rank)?;
        d.set_item("degree", sub.degree)?;
        d.set_item("qdim", sub.qdim)?;
        d.set_item("kappa", model.kappa(s))?;
        d.set_item("weight", format_q(w))?;
        steps.append(d)?;
    }
    Ok(steps)
}

impl PyModel {
    fn subobject(&self, id: &str) -> PyResult<decostab::SubIdx> {
        self.model
            .idx(id)
            .ok_or_else(|| PyValueError::new_err(format!("unknown subobject {id:?}")))
    }
}

#[pymethods]
impl PyModel {
    /// Parses a JSON model document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = ModelDocument::from_json(text).map_err(err)?;
        let model = doc.build_model().map_err(err)?;
        Ok(PyModel { doc, model })
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.model.rank()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.model.degree()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.model.genus()
    }

    #[getter]
    fn dim_r(&self) -> u32 {
        self.model.dim_r()
    }

    #[getter]
    fn a(&self) -> u32 {
        self.model.deco().a
    }

    fn brief(&self) -> String {
        self.model.brief()
    }

    /// Semistability check. `mode` is "dgpb", "2dgpb" or "fr"; rationals
    /// are "p/q" strings. Returns {"verdict", "margin", "witness"}.
    #[pyo3(signature = (mode, delta, delta2 = None, weight_max = 3))]
    fn check<'py>(
        &self,
        py: Python<'py>,
        mode: &str,
        delta: &str,
        delta2: Option<&str>,
        weight_max: i64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let delta = q_of(delta)?;
        let grid =
            stability::WeightGrid::new((1..=weight_max.max(1)).map(qi).collect()).map_err(err)?;
        let out = PyDict::new(py);
        match mode {
            "dgpb" | "2dgpb" => {
                let judgement = if mode == "dgpb" {
                    stability::is_dgpb_semistable(&self.model, delta, &grid).map_err(err)?
                } else {
                    let second = self
                        .doc
                        .build_second(&self.model)
                        .map_err(err)?
                        .ok_or_else(|| {
                            PyValueError::new_err("document has no second_decoration")
                        })?;
                    let d2 = match delta2 {
                        Some(t) => q_of(t)?,
                        None => delta,
                    };
                    stability::is_2dgpb_semistable(&self.model, &second, delta, d2, &grid)
                        .map_err(err)?
                };
                out.set_item("verdict", judgement.verdict.label())?;
                out.set_item("margin", judgement.margin.map(format_q))?;
                match &judgement.witness {
                    Some(w) => out.set_item("witness", filtration_dict(py, &self.model, w)?)?,
                    None => out.set_item("witness", py.None())?,
                }
            }
            "fr" => {
                let judgement = stability::is_fr_semistable(&self.model, delta);
                out.set_item("verdict", judgement.verdict.label())?;
                out.set_item("margin", judgement.margin.map(format_q))?;
                out.set_item(
                    "witness",
                    judgement.witness.map(|f| self.model.sub(f).id.clone()),
                )?;
            }
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown mode {other:?}: expected dgpb, 2dgpb or fr"
                )))
            }
        }
        Ok(out)
    }

    /// fr-slope of a catalog subobject ("E" for the bundle itself).
    fn fr_slope(&self, id: &str, delta: &str) -> PyResult<String> {
        let f = self.subobject(id)?;
        Ok(format_q(
            stability::fr_slope(&self.model, f, q_of(delta)?).map_err(err)?,
        ))
    }

    /// `μ(F, E) = κ(F)·r − a·rk F` for a catalog subobject.
    fn mu_subsheaf(&self, id: &str) -> PyResult<String> {
        Ok(format_q(stability::mu_subsheaf(
            &self.model,
            self.subobject(id)?,
        )))
    }

    /// `P` of the one-step filtration through a catalog subobject.
    fn p_one_step(&self, id: &str) -> PyResult<String> {
        Ok(format_q(stability::p_one_step(
            &self.model,
            self.subobject(id)?,
        )))
    }

    /// Jordan-Hölder filtration: {"slope", "steps", "factors"}.
    fn jordan_holder<'py>(&self, py: Python<'py>, delta: &str) -> PyResult<Bound<'py, PyDict>> {
        let jh = jh::jordan_holder(&self.model, q_of(delta)?).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("slope", format_q(jh.slope))?;
        out.set_item(
            "steps",
            jh.steps
                .iter()
                .map(|&s| self.model.sub(s).id.clone())
                .collect::<Vec<_>>(),
        )?;
        out.set_item(
            "factors",
            jh.graded
                .factors()
                .iter()
                .map(|f| (f.rank, f.degree, f.qdim, f.epsilon))
                .collect::<Vec<_>>(),
        )?;
        Ok(out)
    }

    /// S-equivalence with another model at the same δ.
    fn s_equivalent(&self, other: &PyModel, delta: &str) -> PyResult<bool> {
        jh::s_equivalent(&self.model, &other.model, q_of(delta)?).map_err(err)
    }

    /// GIT report: linearization ratios, point verdict and equivalence rows.
    #[pyo3(signature = (m = None, l_samples = None, delta = None))]
    fn git_report<'py>(
        &self,
        py: Python<'py>,
        m: Option<i64>,
        l_samples: Option<Vec<i64>>,
        delta: Option<&str>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let params = self.doc.git.clone().unwrap_or_default();
        let delta = match delta {
            Some(t) => q_of(t)?,
            None => params.delta.unwrap_or_else(|| qi(1)),
        };
        let m = m
            .or(params.m)
            .unwrap_or_else(|| gitpoint::default_m0(&self.model, delta));
        let l0 = gitpoint::default_l0(m);
        let samples = l_samples
            .or(params.l_samples)
            .unwrap_or_else(|| vec![l0, 2 * l0, 4 * l0]);

        let ratios =
            gitpoint::linearization_ratios(&self.model, m, samples[0], delta).map_err(err)?;
        let point = gitpoint::point_from_bundle(&self.model, m, samples[0], delta).map_err(err)?;
        let judgement = gitpoint::is_git_semistable_point(&point);
        let report = gitpoint::equivalence_check(&self.model, m, &samples, delta).map_err(err)?;

        let out = PyDict::new(py);
        out.set_item("m", m)?;
        out.set_item("l_samples", samples)?;
        out.set_item("delta", format_q(delta))?;
        out.set_item("n2_over_n1", format_q(ratios.n2_over_n1))?;
        out.set_item("n3_over_n1", format_q(ratios.n3_over_n1))?;
        out.set_item("point_verdict", judgement.verdict.label())?;
        out.set_item("point_margin", judgement.margin.map(format_q))?;
        out.set_item("all_agree", report.all_agree)?;
        let rows = PyList::empty(py);
        for row in &report.rows {
            let d = PyDict::new(py);
            d.set_item("subobject", &row.sub_id)?;
            d.set_item("l", row.l)?;
            d.set_item(
                "substituted",
                (format_q(row.substituted_lhs), format_q(row.substituted_rhs)),
            )?;
            d.set_item(
                "leading",
                (format_q(row.leading_lhs), format_q(row.leading_rhs)),
            )?;
            d.set_item("fr", (format_q(row.fr_lhs), format_q(row.fr_rhs)))?;
            d.set_item("agree", row.agree)?;
            rows.append(d)?;
        }
        out.set_item("rows", rows)?;
        Ok(out)
    }
}

/// `P(l) = rank·l + degree + (1 − genus)·rank`.
#[pyfunction]
fn hilbert(rank: u32, degree: i64, genus: u32, l: i64) -> i64 {
    gitpoint::hilbert(rank, degree, genus, l)
}

/// Decorated Hilbert polynomial `P − qdim − a·δ·ε` as "p/q".
#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn decorated_hilbert(
    rank: u32,
    degree: i64,
    genus: u32,
    qdim: u32,
    a: u32,
    delta: &str,
    eps: bool,
    l: i64,
) -> PyResult<String> {
    Ok(format_q(gitpoint::decorated_hilbert(
        rank,
        degree,
        genus,
        qdim,
        a,
        q_of(delta)?,
        eps,
        l,
    )))
}

/// The special one-parameter subgroup weights `ξ^(i)` for `1 <= i <= k-1`.
#[pyfunction]
fn special_weights(k: usize, i: usize) -> PyResult<Vec<i64>> {
    Ok(gitpoint::special_weights(k, i).map_err(err)?.xi().to_vec())
}

/// `μ(λ; 𝔥'') = −Σ ξ_i (ϖ(i) − ϖ(i−1))`.
#[pyfunction]
fn mu_hilbert_mumford(xi: Vec<i64>, wpi: Vec<i64>) -> PyResult<i64> {
    let xi = gitpoint::OneParameterWeights::new(xi).map_err(err)?;
    gitpoint::mu_hilbert_mumford(&xi, &wpi).map_err(err)
}

/// γ weight vector of an abstract weighted filtration, as "p/q" strings.
#[pyfunction]
fn gamma_vector(step_ranks: Vec<u32>, weights: Vec<String>, rank: u32) -> PyResult<Vec<String>> {
    let weights = weights
        .iter()
        .map(|w| q_of(w))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(stability::gamma_vector(&step_ranks, &weights, rank)
        .into_iter()
        .map(format_q)
        .collect())
}

/// Boundedness constants `(C, slope bound)` for two tensor powers.
#[pyfunction]
fn boundedness_constants(a1: u32, a2: u32, rank: u32, degree: i64) -> (String, String) {
    let d1 = decostab::DecorationType::new(a1.max(1), 1, 0, 0, 0);
    let d2 = decostab::DecorationType::new(a2.max(1), 1, 0, 0, 0);
    let (c, bound) = stability::boundedness_constants(&d1, &d2, rank, degree);
    (format_q(c), format_q(bound))
}

/// δ threshold `max(|C|·r·α·(r−1), |C|·(r−1))`.
#[pyfunction]
fn delta_threshold(c: &str, rank: u32, alpha_max: &str) -> PyResult<String> {
    Ok(format_q(stability::delta_threshold(
        q_of(c)?,
        rank,
        q_of(alpha_max)?,
    )))
}

/// Parabolic degree `degree − qdim` as "p/q".
#[pyfunction]
fn parabolic_degree(rank: u32, degree: i64, qdim: u32) -> String {
    let sub = decostab::SubobjectDescriptor::new("F", rank, degree, qdim);
    format_q(stability::parabolic_degree(&sub))
}

/// Reduces twisted endomorphism targets to the decoration type of the
/// single pair; returns `(a, b, c, deg_l, deg_d)`.
#[pyfunction]
fn nuple_reduce(rank: u32, target_degrees: Vec<i64>) -> PyResult<(u32, u32, u32, i64, i64)> {
    let deco = stability::nuple_reduce(rank, &target_degrees).map_err(err)?;
    Ok((deco.a, deco.b, deco.c, deco.deg_l, deco.deg_d))
}

/// Runs a verification suite; returns `(checked, violations)`.
#[pyfunction]
#[pyo3(signature = (suite, r_max = 3, d_max = 2, a_max = 3, weight_max = 3, catalog_max = 6))]
fn verify_suite(
    suite: &str,
    r_max: u32,
    d_max: i64,
    a_max: u32,
    weight_max: i64,
    catalog_max: usize,
) -> PyResult<(usize, usize)> {
    let suite = suite.parse().map_err(err)?;
    let bounds = EnumerationBounds {
        r_max,
        d_abs_max: d_max,
        a_max,
        weight_max,
        catalog_max,
        ..EnumerationBounds::default()
    };
    let summaries =
        run_suite(suite, &bounds, &VerifyOptions::default(), &mut |_| {}).map_err(err)?;
    Ok(summaries
        .iter()
        .fold((0, 0), |(c, v), s| (c + s.checked, v + s.violations)))
}

#[pymodule]
fn decostab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(decorated_hilbert, m)?)?;
    m.add_function(wrap_pyfunction!(special_weights, m)?)?;
    m.add_function(wrap_pyfunction!(mu_hilbert_mumford, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_vector, m)?)?;
    m.add_function(wrap_pyfunction!(boundedness_constants, m)?)?;
    m.add_function(wrap_pyfunction!(delta_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(parabolic_degree, m)?)?;
    m.add_function(wrap_pyfunction!(nuple_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
