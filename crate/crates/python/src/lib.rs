//! Python bindings: `import pyddna`.

use std::collections::HashMap;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use digital_dna::analysis::{derivative, smooth, DEFAULT_WINDOW};
use digital_dna::detection::{self, SplitResult, TrainedClassifier};
use digital_dna::metrics::{self, ConfusionMatrix};
use digital_dna::synth::{self, MixSpec, NoiseModel};
use digital_dna::{
    group_curve, AccountGroup, ActionKind, ActionRecord, AlphabetId, DnaSequence, Error, Label, LcsCurve, Timeline,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn alphabet(name: &str) -> PyResult<AlphabetId> {
    name.parse().map_err(py_err)
}

fn label(name: Option<&str>) -> PyResult<Label> {
    name.unwrap_or("").parse().map_err(py_err)
}

/// Encodes one account's actions. Each action is a dict with `kind`
/// ("tweet" | "reply" | "retweet"), optional entity counts `urls`,
/// `hashtags`, `mentions`, `media`, and `ts`.
#[pyfunction]
#[pyo3(signature = (actions, alphabet_id = "type3"))]
fn encode(actions: &Bound<'_, PyList>, alphabet_id: &str) -> PyResult<String> {
    let alphabet_id = alphabet(alphabet_id)?;
    let mut records = Vec::with_capacity(actions.len());
    for item in actions.iter() {
        let d = item.cast::<PyDict>()?;
        let get_u64 = |key: &str| -> PyResult<u64> {
            match d.get_item(key)? {
                Some(v) => v.extract::<u64>(),
                None => Ok(0),
            }
        };
        let kind: String =
            d.get_item("kind")?.ok_or_else(|| PyValueError::new_err("action without 'kind'"))?.extract()?;
        let mut a = ActionRecord::new("", kind.parse::<ActionKind>().map_err(py_err)?, get_u64("ts")?);
        a.has_url = get_u64("urls")? > 0;
        a.has_hashtag = get_u64("hashtags")? > 0;
        a.has_mention = get_u64("mentions")? > 0;
        a.has_media = get_u64("media")? > 0;
        records.push(a);
    }
    let t = Timeline { account_id: String::new(), label: Label::Unlabeled, actions: records };
    Ok(t.encode(alphabet_id).map_err(py_err)?.symbols().to_string())
}

/// Longest common substring of two strings (lexicographically smallest on ties).
#[pyfunction]
fn lcs_pair(a: &str, b: &str) -> String {
    digital_dna::lcs_pair(a, b)
}

/// LCS curve of a group: `lengths[i]` is the LCS at k = i + 2.
#[pyclass(name = "Curve", frozen)]
struct PyCurve {
    inner: LcsCurve,
    group: AccountGroup,
}

#[pymethods]
impl PyCurve {
    #[new]
    #[pyo3(signature = (account_ids, sequences, alphabet_id = "type3", labels = None))]
    fn new(
        account_ids: Vec<String>,
        sequences: Vec<String>,
        alphabet_id: &str,
        labels: Option<Vec<Option<String>>>,
    ) -> PyResult<Self> {
        if account_ids.len() != sequences.len() {
            return Err(PyValueError::new_err("account_ids and sequences differ in length"));
        }
        let alphabet_id = alphabet(alphabet_id)?;
        let labels = labels.unwrap_or_else(|| vec![None; sequences.len()]);
        let mut seqs = Vec::with_capacity(sequences.len());
        for ((id, s), l) in account_ids.into_iter().zip(sequences).zip(labels) {
            seqs.push(DnaSequence::new(id, alphabet_id, s, label(l.as_deref())?).map_err(py_err)?);
        }
        let group = AccountGroup::new(seqs).map_err(py_err)?;
        let inner = group_curve(&group).map_err(py_err)?;
        Ok(PyCurve { inner, group })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn account_ids(&self) -> Vec<String> {
        self.inner.account_ids().to_vec()
    }

    fn lengths(&self) -> Vec<usize> {
        self.inner.lengths()
    }

    fn witness(&self, k: usize) -> PyResult<String> {
        self.check_k(k)?;
        Ok(self.inner.point(k).witness.to_string())
    }

    /// Account ids sharing the witness at `k`.
    fn members(&self, k: usize) -> PyResult<Vec<String>> {
        self.check_k(k)?;
        Ok(self.inner.member_ids(k).into_iter().map(String::from).collect())
    }

    #[pyo3(signature = (window = DEFAULT_WINDOW))]
    fn smoothed(&self, window: usize) -> PyResult<Vec<usize>> {
        Ok(smooth(&self.inner, window).map_err(py_err)?.lengths())
    }

    /// `LCS[k] - LCS[k-1]` for k = 3..=M, of the smoothed curve when
    /// `window > 1`.
    #[pyo3(signature = (window = 1))]
    fn derivative(&self, window: usize) -> PyResult<Vec<i64>> {
        let c = smooth(&self.inner, window).map_err(py_err)?;
        Ok(derivative(&c).map_err(py_err)?.values().to_vec())
    }

    fn __len__(&self) -> usize {
        self.inner.m()
    }

    fn __repr__(&self) -> String {
        format!("Curve(m={}, lcs2={})", self.inner.m(), self.inner.length(2))
    }
}

impl PyCurve {
    fn check_k(&self, k: usize) -> PyResult<()> {
        if k < 2 || k > self.inner.m() {
            return Err(PyValueError::new_err(format!("k must be in [2, {}]", self.inner.m())));
        }
        Ok(())
    }
}

fn split_dict<'py>(py: Python<'py>, s: &SplitResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("mode", format!("{:?}", s.mode).to_lowercase())?;
    d.set_item("k_star", s.k_star)?;
    d.set_item("threshold_length", s.threshold_length)?;
    d.set_item("spambots", s.spambots.clone())?;
    d.set_item("genuine", s.genuine.clone())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (curve, window = DEFAULT_WINDOW, min_prominence = None))]
fn unsupervised_split<'py>(
    py: Python<'py>,
    curve: &PyCurve,
    window: usize,
    min_prominence: Option<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let s = detection::unsupervised_split(&curve.inner, window, min_prominence).map_err(py_err)?;
    split_dict(py, &s)
}

/// LCS threshold learned from labeled accounts.
#[pyclass(name = "Classifier", frozen)]
struct PyClassifier {
    inner: TrainedClassifier,
}

#[pymethods]
impl PyClassifier {
    #[getter]
    fn threshold_length(&self) -> usize {
        self.inner.threshold_length
    }

    #[getter]
    fn k_best(&self) -> usize {
        self.inner.k_best
    }

    #[getter]
    fn training_mcc(&self) -> f64 {
        self.inner.training_mcc
    }

    /// `(fpr, tpr)` for every k of the training curve.
    #[getter]
    fn roc(&self) -> Vec<(f64, f64)> {
        self.inner.roc.clone()
    }

    fn classify<'py>(&self, py: Python<'py>, curve: &PyCurve) -> PyResult<Bound<'py, PyDict>> {
        split_dict(py, &detection::supervised_classify(&curve.inner, &self.inner))
    }
}

/// Trains on a curve whose accounts carry labels, or on an explicit
/// `{account_id: "spambot" | "genuine"}` dict.
#[pyfunction]
#[pyo3(signature = (curve, labels = None))]
fn supervised_train(curve: &PyCurve, labels: Option<HashMap<String, String>>) -> PyResult<PyClassifier> {
    let labels: HashMap<String, Label> = match labels {
        Some(map) => map.into_iter().map(|(k, v)| Ok((k, label(Some(&v))?))).collect::<PyResult<_>>()?,
        None => curve.group.sequences().iter().map(|s| (s.account_id().to_string(), s.label())).collect(),
    };
    let inner = detection::supervised_train(&curve.inner, &labels).map_err(py_err)?;
    Ok(PyClassifier { inner })
}

/// Six scores from a confusion matrix; spambot is the positive class.
#[pyfunction]
fn compute_metrics<'py>(py: Python<'py>, tp: u64, tn: u64, fp: u64, fn_: u64) -> PyResult<Bound<'py, PyDict>> {
    let m = metrics::compute_metrics(&ConfusionMatrix::new(tp, tn, fp, fn_)).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("precision", m.precision)?;
    d.set_item("recall", m.recall)?;
    d.set_item("specificity", m.specificity)?;
    d.set_item("accuracy", m.accuracy)?;
    d.set_item("f_measure", m.f_measure)?;
    d.set_item("mcc", m.mcc)?;
    Ok(d)
}

/// Seeded planted-bot corpus as `(account_id, label, sequence)` tuples.
#[pyfunction]
#[pyo3(signature = (n_bots, n_humans, template_length = 40, noise = 0.05, alphabet_id = "type3", seed = 42, min_len = 180, max_len = 220, per_position_noise = false))]
#[allow(clippy::too_many_arguments)]
fn generate(
    n_bots: usize,
    n_humans: usize,
    template_length: usize,
    noise: f64,
    alphabet_id: &str,
    seed: u64,
    min_len: usize,
    max_len: usize,
    per_position_noise: bool,
) -> PyResult<Vec<(String, String, String)>> {
    let spec = MixSpec {
        alphabet: alphabet(alphabet_id)?,
        n_bots,
        n_humans,
        min_len,
        max_len,
        template_length,
        noise_rate: noise,
        noise_model: if per_position_noise { NoiseModel::PerPosition } else { NoiseModel::PerAccount },
    };
    let seqs = synth::gen_mixed(&spec, seed).map_err(py_err)?;
    Ok(seqs.into_iter().map(|s| (s.account_id().to_string(), s.label().to_string(), s.symbols().to_string())).collect())
}

/// Monte Carlo permutation experiment; returns `k`, `original`, `mean`, `std`.
#[pyfunction]
#[pyo3(signature = (curve, trials = 100, seed = 42))]
fn permute<'py>(py: Python<'py>, curve: &PyCurve, trials: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let s = synth::permute_sequences(&curve.group, trials, seed).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("k", s.ks)?;
    d.set_item("original", s.original)?;
    d.set_item("mean", s.mean)?;
    d.set_item("std", s.std)?;
    d.set_item("histograms_preserved", s.histograms_preserved)?;
    Ok(d)
}

#[pymodule]
pub fn pyddna(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyClassifier>()?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(lcs_pair, m)?)?;
    m.add_function(wrap_pyfunction!(unsupervised_split, m)?)?;
    m.add_function(wrap_pyfunction!(supervised_train, m)?)?;
    m.add_function(wrap_pyfunction!(compute_metrics, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(permute, m)?)?;
    Ok(())
}
