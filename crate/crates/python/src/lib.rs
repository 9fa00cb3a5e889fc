//! Python bindings. Reports come back as plain dicts and lists; graphs go in
//! as `(n, edges)`.
//!
//! Long computations release the interpreter lock.

use doublejump::closed_form::{self, builtin_examples};
use doublejump::equivalence::{graph_signature, transfer_harness};
use doublejump::graph::{sample_gnp, GnpParams};
use doublejump::local_limit::{census_vs_poisson, CensusOptions, LambdaConvention};
use doublejump::logic::{load_sentence, named_sentence, CheckOptions};
use doublejump::moments::{compute_recurrences, constraint_summary, HSpec};
use doublejump::montecarlo::estimate_probability;
use doublejump::subcritical::{decide as decide_core, DecideOptions};
use doublejump::supercritical::{
    build_h_by_w1, detect_ctk as detect_ctk_core, min_theta_size as min_theta_core,
    nonconvergence_demo as demo_core, verify_arithmetization, wow_inv as wow_inv_core, HGraph,
    HMetadata, LogBase, NonconvergenceOptions,
};
use doublejump::{Error, Graph};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(
    doublejump,
    CapabilityError,
    PyRuntimeError,
    "Input exceeds a documented desk-scale bound."
);

/// Input errors become `ValueError`, desk-scale limits `CapabilityError`.
fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parameter(_)
        | Error::Syntax { .. }
        | Error::Unbound { .. }
        | Error::Type(_)
        | Error::EdgeList { .. }
        | Error::Hypothesis { .. } => PyValueError::new_err(e.to_string()),
        e if e.is_capability() => CapabilityError::new_err(e.to_string()),
        e => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_python<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Edges may be any two-element sequences.
fn graph(n: usize, edges: &[[usize; 2]]) -> PyResult<Graph> {
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&[u, v]| (u, v)).collect();
    Graph::from_edges(n, &pairs).map_err(to_py)
}

fn log_base(name: &str) -> PyResult<LogBase> {
    match name {
        "e" => Ok(LogBase::E),
        "2" => Ok(LogBase::Two),
        "10" => Ok(LogBase::Ten),
        _ => Err(PyValueError::new_err(format!(
            "log base must be 'e', '2' or '10', got {name:?}"
        ))),
    }
}

/// Sentence text, a file holding it, or a builtin example name.
fn sentence(arg: &str) -> PyResult<doublejump::logic::Sentence> {
    match builtin_examples().remove(arg) {
        Some(ex) => Ok(ex.sentence),
        None => match named_sentence(arg) {
            Some(s) => Ok(s),
            None => load_sentence(arg).map_err(to_py),
        },
    }
}

/// `(n, edges)` of one sample of G(n, c/n).
#[pyfunction]
fn sample_graph(
    py: Python<'_>,
    n: usize,
    c: f64,
    seed: u64,
) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let g = py
        .detach(|| GnpParams::new(n, c, seed).and_then(|p| sample_gnp(&p)))
        .map_err(to_py)?;
    Ok((g.n(), g.edges()))
}

/// Monte Carlo estimate of Pr[G(n, c/n) satisfies the sentence].
#[pyfunction]
#[pyo3(signature = (sentence_text, n, c, trials, seed, threads = None))]
fn estimate<'py>(
    py: Python<'py>,
    sentence_text: &str,
    n: usize,
    c: f64,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = sentence(sentence_text)?;
    let est = py
        .detach(|| estimate_probability(&s, n, c, trials, seed, threads, &CheckOptions::default()))
        .map_err(to_py)?;
    to_python(py, &est)
}

/// Interval for the limit probability of a sentence at c < 1.
#[pyfunction]
#[pyo3(signature = (sentence_text, c, eps = 0.02, mrep = None, smax = None))]
fn decide<'py>(
    py: Python<'py>,
    sentence_text: &str,
    c: f64,
    eps: f64,
    mrep: Option<usize>,
    smax: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = sentence(sentence_text)?;
    let (m, k) = if s.has_set_quantifier() {
        (1, 2)
    } else {
        (
            doublejump::subcritical::DEFAULT_MREP,
            doublejump::subcritical::DEFAULT_SMAX,
        )
    };
    let opts = DecideOptions {
        mrep: mrep.unwrap_or(m),
        smax: smax.unwrap_or(k),
        ..DecideOptions::default()
    };
    let r = py
        .detach(|| decide_core(&s, c, eps, &opts))
        .map_err(to_py)?;
    to_python(py, &r)
}

/// Value of a closed-form expression at c.
#[pyfunction]
fn closed_form_value(expr: &str, c: f64) -> PyResult<f64> {
    closed_form::parse(expr)
        .and_then(|f| f.evaluate(c))
        .map_err(to_py)
}

/// `(name, sentence, limit expression)` for each builtin example.
#[pyfunction]
fn examples() -> Vec<(String, String, String)> {
    builtin_examples()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.sentence.to_string(), v.limit.to_string()))
        .collect()
}

/// Cycle counts against their Poisson means.
#[pyfunction]
#[pyo3(signature = (c, radius, n, trials, seed, v_factorial = false))]
fn census(
    py: Python<'_>,
    c: f64,
    radius: usize,
    n: usize,
    trials: u64,
    seed: u64,
    v_factorial: bool,
) -> PyResult<Bound<'_, PyAny>> {
    let convention = if v_factorial {
        LambdaConvention::VFactorial
    } else {
        LambdaConvention::LabeledEmbedding
    };
    let opts = CensusOptions {
        convention,
        ..CensusOptions::default()
    };
    let rep = py
        .detach(|| census_vs_poisson(c, radius, n, trials, seed, &opts))
        .map_err(to_py)?;
    to_python(py, &rep)
}

/// Canonical R-equivalence signature of a graph.
#[pyfunction]
fn signature(n: usize, edges: Vec<[usize; 2]>, r: usize) -> PyResult<String> {
    let sig = graph_signature(&graph(n, &edges)?, r).map_err(to_py)?;
    serde_json::to_string(&sig).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Transfer test between random R-equivalent pairs.
#[pyfunction]
#[pyo3(signature = (r, trials, seed, threads = None))]
fn transfer(
    py: Python<'_>,
    r: usize,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> PyResult<Bound<'_, PyAny>> {
    let rep = py
        .detach(|| transfer_harness(r, trials, seed, threads))
        .map_err(to_py)?;
    to_python(py, &rep)
}

/// `{"n", "edges", "meta"}` of the arithmetized graph with `w1` points.
#[pyfunction]
fn build_h(py: Python<'_>, big_k: usize, w1: u64) -> PyResult<Bound<'_, PyAny>> {
    let h = build_h_by_w1(big_k, w1).map_err(to_py)?;
    to_python(
        py,
        &serde_json::json!({ "n": h.graph.n(), "edges": h.graph.edges(), "meta": h.meta }),
    )
}

/// Arithmetization report for a graph and its metadata dict.
#[pyfunction]
fn verify_h<'py>(
    py: Python<'py>,
    n: usize,
    edges: Vec<[usize; 2]>,
    meta: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let text: String = py
        .import("json")?
        .call_method1("dumps", (meta,))?
        .extract()?;
    let meta: HMetadata = serde_json::from_str(&text)
        .map_err(|e| PyValueError::new_err(format!("invalid metadata: {e}")))?;
    let h = HGraph::from_parts(graph(n, &edges)?, meta).map_err(to_py)?;
    to_python(py, &verify_arithmetization(&h))
}

#[pyfunction]
fn wow_inv(x: u64) -> PyResult<u64> {
    wow_inv_core(x).map_err(to_py)
}

/// Parity table of the nonconvergence sentence on H over `log_n`.
#[pyfunction]
#[pyo3(signature = (c, big_k, log_n = None, k1 = 5.0, base = "e", exhaustive_max_vertices = 0))]
fn nonconvergence<'py>(
    py: Python<'py>,
    c: f64,
    big_k: usize,
    log_n: Option<Vec<f64>>,
    k1: f64,
    base: &str,
    exhaustive_max_vertices: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mut opts = NonconvergenceOptions {
        k1,
        base: log_base(base)?,
        exhaustive_max_vertices,
        ..NonconvergenceOptions::default()
    };
    if let Some(v) = log_n {
        opts.log_n = v;
    }
    let rep = py.detach(|| demo_core(c, big_k, &opts)).map_err(to_py)?;
    to_python(py, &rep)
}

/// Clean topological k-clique search.
#[pyfunction]
#[pyo3(signature = (n, edges, k, budget = 2_000_000))]
fn detect_ctk(
    py: Python<'_>,
    n: usize,
    edges: Vec<[usize; 2]>,
    k: usize,
    budget: u64,
) -> PyResult<Bound<'_, PyAny>> {
    let g = graph(n, &edges)?;
    let out = py
        .detach(|| detect_ctk_core(&g, k, budget))
        .map_err(to_py)?;
    to_python(py, &out)
}

/// Vertex count of the smallest theta subgraph, or None.
#[pyfunction]
fn min_theta_size(py: Python<'_>, n: usize, edges: Vec<[usize; 2]>) -> PyResult<Option<usize>> {
    let g = graph(n, &edges)?;
    py.detach(|| min_theta_core(&g)).map_err(to_py)
}

/// Recurrence table for a planted graph on m vertices.
#[pyfunction]
fn recurrences(py: Python<'_>, n: f64, m: f64, p: f64, s_max: usize) -> PyResult<Bound<'_, PyAny>> {
    to_python(py, &compute_recurrences(n, m, p, s_max).map_err(to_py)?)
}

/// First and second moment constraints for H(k1, K, n).
#[pyfunction]
#[pyo3(signature = (big_k, n, c, k1 = 5.0, base = "e"))]
fn moment_constraints<'py>(
    py: Python<'py>,
    big_k: usize,
    n: f64,
    c: f64,
    k1: f64,
    base: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = HSpec::for_h(k1, big_k, n, log_base(base)?).map_err(to_py)?;
    to_python(py, &constraint_summary(&spec, n, c).map_err(to_py)?)
}

#[pymodule]
#[pyo3(name = "doublejump")]
pub fn doublejump_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapabilityError", m.py().get_type::<CapabilityError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(sample_graph, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_value, m)?)?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(signature, m)?)?;
    m.add_function(wrap_pyfunction!(transfer, m)?)?;
    m.add_function(wrap_pyfunction!(build_h, m)?)?;
    m.add_function(wrap_pyfunction!(verify_h, m)?)?;
    m.add_function(wrap_pyfunction!(wow_inv, m)?)?;
    m.add_function(wrap_pyfunction!(nonconvergence, m)?)?;
    m.add_function(wrap_pyfunction!(detect_ctk, m)?)?;
    m.add_function(wrap_pyfunction!(min_theta_size, m)?)?;
    m.add_function(wrap_pyfunction!(recurrences, m)?)?;
    m.add_function(wrap_pyfunction!(moment_constraints, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_python_classes() {
        Python::attach(|py| {
            assert!(to_py(Error::Parameter("x".into())).is_instance_of::<PyValueError>(py));
            assert!(to_py(Error::Capability("x".into())).is_instance_of::<CapabilityError>(py));
            assert!(to_py(Error::Construction("x".into())).is_instance_of::<PyRuntimeError>(py));
        });
    }

    #[test]
    fn results_arrive_as_python_objects() {
        Python::attach(|py| {
            let v = to_python(py, &serde_json::json!({ "a": [1, 2.5], "b": null })).unwrap();
            let a: Vec<f64> = v.get_item("a").unwrap().extract().unwrap();
            assert_eq!(a, vec![1.0, 2.5]);
            assert!(v.get_item("b").unwrap().is_none());
        });
    }

    #[test]
    fn h_round_trips_through_python() {
        Python::attach(|py| {
            let h = build_h(py, 3, 9).unwrap();
            let n: usize = h.get_item("n").unwrap().extract().unwrap();
            let edges: Vec<[usize; 2]> = h.get_item("edges").unwrap().extract().unwrap();
            let rep = verify_h(py, n, edges, &h.get_item("meta").unwrap()).unwrap();
            assert!(rep.get_item("pass").unwrap().extract::<bool>().unwrap());
        });
    }

    #[test]
    fn builtin_names_resolve() {
        assert!(sentence("triangle").is_ok());
        assert!(sentence("exists x. x = x").is_ok());
        assert!(sentence("exists x.").is_err());
        assert!(log_base("3").is_err());
    }
}
