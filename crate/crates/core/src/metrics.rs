//! Binary confusion matrix and derived scores. Spambot is the positive class.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dna::Label;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: u64,
    pub tn: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionMatrix {
    pub fn new(tp: u64, tn: u64, fp: u64, fn_: u64) -> Self {
        ConfusionMatrix { tp, tn, fp, fn_ }
    }

    pub fn total(&self) -> u64 {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// Adds one (predicted, actual) observation.
    pub fn record(&mut self, predicted_spambot: bool, actual_spambot: bool) {
        match (predicted_spambot, actual_spambot) {
            (true, true) => self.tp += 1,
            (true, false) => self.fp += 1,
            (false, true) => self.fn_ += 1,
            (false, false) => self.tn += 1,
        }
    }
}

/// Builds the matrix from two account → class maps with identical keys.
///
/// Anything other than `Spambot` counts as the negative class.
pub fn confusion_matrix(predicted: &HashMap<String, Label>, truth: &HashMap<String, Label>) -> Result<ConfusionMatrix> {
    if predicted.len() != truth.len() {
        return Err(Error::input(format!(
            "prediction covers {} accounts but truth covers {}",
            predicted.len(),
            truth.len()
        )));
    }
    let mut cm = ConfusionMatrix::default();
    for (id, p) in predicted {
        let t =
            truth.get(id).ok_or_else(|| Error::input(format!("account '{id}' has a prediction but no truth label")))?;
        cm.record(*p == Label::Spambot, *t == Label::Spambot);
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub precision: f64,
    pub recall: f64,
    pub specificity: f64,
    pub accuracy: f64,
    pub f_measure: f64,
    pub mcc: f64,
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Precision, recall, specificity, accuracy, F-measure and MCC.
/// A metric whose denominator is zero is reported as 0.
pub fn compute_metrics(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    if cm.total() == 0 {
        return Err(Error::input("confusion matrix is empty"));
    }
    let (tp, tn, fp, fn_) = (cm.tp as f64, cm.tn as f64, cm.fp as f64, cm.fn_ as f64);
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let specificity = ratio(tn, tn + fp);
    let accuracy = (tp + tn) / (tp + tn + fp + fn_);
    let f_measure = ratio(2.0 * precision * recall, precision + recall);
    let den = (tp + fn_) * (tp + fp) * (tn + fp) * (tn + fn_);
    let mcc = if den == 0.0 { 0.0 } else { (tp * tn - fp * fn_) / den.sqrt() };
    Ok(MetricsReport { precision, recall, specificity, accuracy, f_measure, mcc })
}

/// `(false positive rate, true positive rate)`.
pub fn roc_point(cm: &ConfusionMatrix) -> (f64, f64) {
    let fpr = ratio(cm.fp as f64, (cm.fp + cm.tn) as f64);
    let tpr = ratio(cm.tp as f64, (cm.tp + cm.fn_) as f64);
    (fpr, tpr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(pairs: &[(&str, Label)]) -> HashMap<String, Label> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn counting() {
        use Label::*;
        let p = labels(&[("a", Spambot), ("b", Spambot), ("c", Genuine)]);
        let t = labels(&[("a", Spambot), ("b", Genuine), ("c", Genuine)]);
        assert_eq!(confusion_matrix(&p, &t).unwrap(), ConfusionMatrix::new(1, 1, 1, 0));

        let ids: Vec<String> = (0..10).map(|i| i.to_string()).collect();
        let truth: HashMap<String, Label> =
            ids.iter().enumerate().map(|(i, id)| (id.clone(), if i < 5 { Spambot } else { Genuine })).collect();
        assert_eq!(confusion_matrix(&truth, &truth).unwrap(), ConfusionMatrix::new(5, 5, 0, 0));
        let inverted: HashMap<String, Label> =
            truth.iter().map(|(k, v)| (k.clone(), if *v == Spambot { Genuine } else { Spambot })).collect();
        let cm = confusion_matrix(&inverted, &truth).unwrap();
        assert_eq!((cm.tp, cm.tn, cm.fp + cm.fn_), (0, 0, 10));
    }

    #[test]
    fn key_mismatch() {
        let p = labels(&[("a", Label::Spambot)]);
        let t = labels(&[("b", Label::Spambot)]);
        assert!(confusion_matrix(&p, &t).is_err());
        let t2 = labels(&[("a", Label::Spambot), ("b", Label::Genuine)]);
        assert!(confusion_matrix(&p, &t2).is_err());
    }

    #[test]
    fn zero_denominators() {
        let m = compute_metrics(&ConfusionMatrix::new(0, 5, 0, 0)).unwrap();
        assert_eq!(
            (m.precision, m.recall, m.specificity, m.accuracy, m.f_measure, m.mcc),
            (0.0, 0.0, 1.0, 1.0, 0.0, 0.0)
        );
        assert!(compute_metrics(&ConfusionMatrix::default()).is_err());
    }

    #[test]
    fn roc_points() {
        assert_eq!(roc_point(&ConfusionMatrix::new(5, 5, 0, 0)), (0.0, 1.0));
        assert_eq!(roc_point(&ConfusionMatrix::new(5, 0, 5, 0)), (1.0, 1.0));
        let (fpr, tpr) = roc_point(&ConfusionMatrix::new(963, 924, 18, 28));
        assert!((fpr - 18.0 / 942.0).abs() < 1e-12 && (fpr - 0.0191).abs() < 5e-5);
        assert!((tpr - 963.0 / 991.0).abs() < 1e-12 && (tpr - 0.9717).abs() < 5e-5);
    }

    #[test]
    fn printed_rows() {
        let m = compute_metrics(&ConfusionMatrix::new(963, 924, 18, 28)).unwrap();
        let got = [m.precision, m.recall, m.specificity, m.accuracy, m.f_measure, m.mcc];
        for (g, e) in got.iter().zip([0.982, 0.972, 0.981, 0.976, 0.977, 0.952]) {
            assert!((g - e).abs() <= 5e-4, "{g} vs {e}");
        }
        let m = compute_metrics(&ConfusionMatrix::new(398, 468, 0, 66)).unwrap();
        let got = [m.precision, m.recall, m.specificity, m.accuracy, m.f_measure, m.mcc];
        for (g, e) in got.iter().zip([1.0, 0.858, 1.0, 0.929, 0.923, 0.867]) {
            assert!((g - e).abs() <= 5e-4, "{g} vs {e}");
        }
    }
}
