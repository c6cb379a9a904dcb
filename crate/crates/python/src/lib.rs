//! Python bindings for the `fuzzylos` crate.

use fuzzylos::dsl::{parse_fis, serialize};
use fuzzylos::los::{self, parse_regions, serialize_regions, LosLabel, RuleGrid};
use fuzzylos::pipeline::{self, Measurement};
use fuzzylos::{defaults, AndOperator, LosLevel, LosRegionModel, SugenoFis};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A parsed inference system.
#[pyclass(name = "Fis", module = "pyfuzzylos", frozen)]
struct PyFis {
    inner: SugenoFis,
}

#[pymethods]
impl PyFis {
    /// Parses `.fis` source text.
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_fis(source).map_err(value_error)?,
        })
    }

    /// The shipped reference system.
    #[staticmethod]
    fn default() -> PyResult<Self> {
        Ok(Self {
            inner: defaults::default_fis().map_err(value_error)?,
        })
    }

    #[getter]
    fn rule_count(&self) -> usize {
        self.inner.rules().len()
    }

    #[getter]
    fn and_operator(&self) -> &'static str {
        self.inner.and_operator().as_str()
    }

    #[getter]
    fn inputs(&self) -> Vec<String> {
        self.inner.inputs().iter().map(|v| v.name().to_string()).collect()
    }

    fn with_and_operator(&self, op: &str) -> PyResult<Self> {
        let op: AndOperator = op.parse().map_err(value_error)?;
        Ok(Self {
            inner: self.inner.clone().with_and_operator(op),
        })
    }

    /// Returns `(raw, fired_rules)` for one value per input variable.
    fn infer(&self, values: Vec<f64>) -> PyResult<(f64, usize)> {
        let r = self.inner.infer(&values).map_err(value_error)?;
        Ok((r.raw, r.fired_rules))
    }

    /// Classifies a (flow, speed) pair. `level` is `None` for anomalies.
    #[pyo3(signature = (flow, speed, epsilon = los::DEFAULT_EPSILON))]
    fn classify<'py>(&self, py: Python<'py>, flow: f64, speed: f64, epsilon: f64) -> PyResult<Bound<'py, PyDict>> {
        let c = los::classify(&self.inner, flow, speed, epsilon).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("raw", c.raw)?;
        d.set_item("level", c.label.level().map(LosLevel::get))?;
        d.set_item("boundary", c.boundary)?;
        d.set_item("anomaly", c.label == LosLabel::Anomaly)?;
        d.set_item("fired_rules", c.fired_rules)?;
        Ok(d)
    }

    fn to_text(&self) -> String {
        serialize(&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Fis(inputs={:?}, rules={}, and_operator={})",
            self.inputs(),
            self.rule_count(),
            self.and_operator()
        )
    }
}

/// Ground-truth level rectangles.
#[pyclass(name = "RegionModel", module = "pyfuzzylos", frozen)]
struct PyRegionModel {
    inner: LosRegionModel,
}

#[pymethods]
impl PyRegionModel {
    /// Parses `.los` source text.
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_regions(source).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn default() -> PyResult<Self> {
        Ok(Self {
            inner: defaults::default_regions().map_err(value_error)?,
        })
    }

    #[getter]
    fn lanes(&self) -> u32 {
        self.inner.lanes()
    }

    /// Level at (flow, speed), or `None` outside every rectangle.
    fn oracle_label(&self, flow: f64, speed: f64) -> PyResult<Option<u8>> {
        Ok(self
            .inner
            .oracle_label(flow, speed)
            .map_err(value_error)?
            .map(LosLevel::get))
    }

    fn to_text(&self) -> String {
        serialize_regions(&self.inner)
    }
}

/// `fis.infer([flow, speed])` as a free function.
#[pyfunction]
fn infer(fis: &PyFis, flow: f64, speed: f64) -> PyResult<(f64, usize)> {
    fis.infer(vec![flow, speed])
}

#[pyfunction]
#[pyo3(signature = (fis, flow, speed, epsilon = los::DEFAULT_EPSILON))]
fn classify<'py>(py: Python<'py>, fis: &PyFis, flow: f64, speed: f64, epsilon: f64) -> PyResult<Bound<'py, PyDict>> {
    fis.classify(py, flow, speed, epsilon)
}

/// Synthetic measurements as `(timestamp, speed_kmh, flow_vph)` tuples.
#[pyfunction]
fn generate_synthetic(model: &PyRegionModel, n: usize, seed: u64) -> PyResult<Vec<(String, f64, f64)>> {
    let data = pipeline::generate_synthetic(&model.inner, n, seed).map_err(value_error)?;
    Ok(data
        .into_iter()
        .map(|m| (m.timestamp, m.speed_kmh, m.flow_vph))
        .collect())
}

/// Scores `(timestamp, speed_kmh, flow_vph[, los])` tuples against the region
/// oracle (or the optional label) and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (fis, model, data, epsilon = los::DEFAULT_EPSILON))]
fn evaluate<'py>(
    py: Python<'py>,
    fis: &PyFis,
    model: &PyRegionModel,
    data: Vec<Bound<'py, PyAny>>,
    epsilon: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let mut rows = Vec::with_capacity(data.len());
    for item in data {
        let m = if let Ok((t, s, f, l)) = item.extract::<(String, f64, f64, Option<u8>)>() {
            let label = match l {
                Some(l) => Some(LosLevel::new(l).ok_or_else(|| value_error(format!("los {l} is not 1-6")))?),
                None => None,
            };
            Measurement {
                label,
                ..Measurement::new(t, s, f)
            }
        } else {
            let (t, s, f) = item.extract::<(String, f64, f64)>()?;
            Measurement::new(t, s, f)
        };
        rows.push(m);
    }
    let r = pipeline::evaluate(&fis.inner, &model.inner, &rows, epsilon).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("points", r.points)?;
    d.set_item("unlabeled", r.unlabeled)?;
    d.set_item("anomalies", r.anomalies)?;
    d.set_item("total", r.total)?;
    d.set_item("mismatches", r.mismatches)?;
    d.set_item("boundary_cases", r.boundary_cases)?;
    d.set_item("accuracy", r.accuracy())?;
    d.set_item(
        "confusion",
        r.confusion.iter().map(|row| row.to_vec()).collect::<Vec<_>>(),
    )?;
    d.set_item("errors", r.errors.len())?;
    d.set_item("text", r.to_text())?;
    Ok(d)
}

/// Raw surface as `(flow_vph, speed_kmh, raw_los)` tuples, flow-major.
#[pyfunction]
#[pyo3(signature = (fis, steps = 50))]
fn export_surface(fis: &PyFis, steps: usize) -> PyResult<Vec<(f64, f64, f64)>> {
    let cells = pipeline::export_surface(&fis.inner, steps, steps).map_err(value_error)?;
    Ok(cells
        .into_iter()
        .map(|c| (c.flow_vph, c.speed_kmh, c.raw_los))
        .collect())
}

/// Rebuilds the rule base of `fis` from the region model.
#[pyfunction]
#[pyo3(signature = (fis, model, flow_steps = 240, speed_steps = 160, agreement = los::DEFAULT_AGREEMENT))]
fn generate_rules(
    fis: &PyFis,
    model: &PyRegionModel,
    flow_steps: usize,
    speed_steps: usize,
    agreement: f64,
) -> PyResult<PyFis> {
    let inputs = fis.inner.inputs();
    if inputs.len() != 2 {
        return Err(value_error(los::LosError::NotTwoInputs(inputs.len())));
    }
    let grid = RuleGrid {
        flow_steps,
        speed_steps,
    };
    let rules = los::generate_rules(&model.inner, &inputs[0], &inputs[1], grid, agreement).map_err(value_error)?;
    Ok(PyFis {
        inner: fis.inner.with_rules(rules).map_err(value_error)?,
    })
}

#[pyfunction]
fn default_fis() -> PyResult<PyFis> {
    PyFis::default()
}

#[pyfunction]
fn default_regions() -> PyResult<PyRegionModel> {
    PyRegionModel::default()
}

#[pymodule]
fn pyfuzzylos(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFis>()?;
    m.add_class::<PyRegionModel>()?;
    m.add_function(wrap_pyfunction!(infer, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(generate_synthetic, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(export_surface, m)?)?;
    m.add_function(wrap_pyfunction!(generate_rules, m)?)?;
    m.add_function(wrap_pyfunction!(default_fis, m)?)?;
    m.add_function(wrap_pyfunction!(default_regions, m)?)?;
    Ok(())
}
