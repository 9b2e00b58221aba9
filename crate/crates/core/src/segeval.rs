//! Pixelwise segmentation scoring against ground truth.
//!
//! DRY is the positive class. Metrics whose denominator vanishes are
//! reported as undefined (`None`) rather than silently zeroed, and
//! aggregation skips undefined entries while reporting how many were
//! skipped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::BinaryMask;

/// Pixel counts from comparing a predicted mask against ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub true_pos: u64,
    pub true_neg: u64,
    pub false_pos: u64,
    pub false_neg: u64,
}

impl ConfusionMatrix {
    pub fn new(true_pos: u64, true_neg: u64, false_pos: u64, false_neg: u64) -> Result<Self> {
        let cm = ConfusionMatrix {
            true_pos,
            true_neg,
            false_pos,
            false_neg,
        };
        if cm.total() == 0 {
            return Err(Error::argument(
                "confusion matrix must cover at least one pixel",
            ));
        }
        Ok(cm)
    }

    pub fn total(&self) -> u64 {
        self.true_pos + self.true_neg + self.false_pos + self.false_neg
    }

    /// Pools counts across frames (micro aggregation).
    pub fn merged(frames: &[ConfusionMatrix]) -> Result<ConfusionMatrix> {
        let mut acc = (0u64, 0u64, 0u64, 0u64);
        for f in frames {
            acc.0 += f.true_pos;
            acc.1 += f.true_neg;
            acc.2 += f.false_pos;
            acc.3 += f.false_neg;
        }
        ConfusionMatrix::new(acc.0, acc.1, acc.2, acc.3)
    }
}

/// Per-pixel comparison; masks must share dimensions.
pub fn confusion(pred: &BinaryMask, truth: &BinaryMask) -> Result<ConfusionMatrix> {
    if pred.width() != truth.width() || pred.height() != truth.height() {
        return Err(Error::argument(format!(
            "dimension mismatch: prediction {}x{} vs truth {}x{}",
            pred.width(),
            pred.height(),
            truth.width(),
            truth.height()
        )));
    }
    let mut cm = (0u64, 0u64, 0u64, 0u64);
    for (p, t) in pred.pixels().iter().zip(truth.pixels()) {
        match (p, t) {
            (true, true) => cm.0 += 1,
            (false, false) => cm.1 += 1,
            (true, false) => cm.2 += 1,
            (false, true) => cm.3 += 1,
        }
    }
    ConfusionMatrix::new(cm.0, cm.1, cm.2, cm.3)
}

/// The evaluation metric suite. `None` marks a metric whose denominator
/// was zero for this confusion matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub accuracy: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub specificity: Option<f64>,
    pub f1: Option<f64>,
    pub iou: Option<f64>,
    pub mcc: Option<f64>,
}

impl MetricSet {
    pub const NAMES: [&'static str; 7] = [
        "accuracy",
        "precision",
        "recall",
        "specificity",
        "f1",
        "iou",
        "mcc",
    ];

    pub fn values(&self) -> [Option<f64>; 7] {
        [
            self.accuracy,
            self.precision,
            self.recall,
            self.specificity,
            self.f1,
            self.iou,
            self.mcc,
        ]
    }
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    if den == 0 {
        None
    } else {
        Some(num as f64 / den as f64)
    }
}

/// Evaluates the full metric suite:
/// accuracy (TP+TN)/total, precision TP/(TP+FP), recall TP/(TP+FN),
/// specificity TN/(TN+FP), F1 2TP/(2TP+FP+FN), IoU TP/(TP+FP+FN) and
/// MCC (TP·TN − FP·FN)/√((TP+FP)(TP+FN)(TN+FP)(TN+FN)).
pub fn metrics(cm: &ConfusionMatrix) -> MetricSet {
    let (tp, tn, fp, fnn) = (cm.true_pos, cm.true_neg, cm.false_pos, cm.false_neg);
    let mcc = {
        let factors = [tp + fp, tp + fnn, tn + fp, tn + fnn];
        if factors.contains(&0) {
            None
        } else {
            let num = (tp as f64) * (tn as f64) - (fp as f64) * (fnn as f64);
            let den = factors.iter().map(|&f| f as f64).product::<f64>().sqrt();
            Some(num / den)
        }
    };
    MetricSet {
        accuracy: ratio(tp + tn, cm.total()),
        precision: ratio(tp, tp + fp),
        recall: ratio(tp, tp + fnn),
        specificity: ratio(tn, tn + fp),
        f1: ratio(2 * tp, 2 * tp + fp + fnn),
        iou: ratio(tp, tp + fp + fnn),
        mcc,
    }
}

/// Mean/min/max/standard deviation of one metric across frames.
/// Undefined entries are skipped and counted. The standard deviation is
/// the population form (÷ n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricAggregate {
    pub mean: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub std: Option<f64>,
    /// Frames where the metric was defined.
    pub defined: usize,
    /// Frames where it was undefined and skipped.
    pub undefined: usize,
}

pub fn aggregate_metric(values: &[Option<f64>]) -> MetricAggregate {
    let defined: Vec<f64> = values.iter().filter_map(|v| *v).collect();
    let undefined = values.len() - defined.len();
    if defined.is_empty() {
        return MetricAggregate {
            mean: None,
            min: None,
            max: None,
            std: None,
            defined: 0,
            undefined,
        };
    }
    let n = defined.len() as f64;
    let mean = defined.iter().sum::<f64>() / n;
    let var = defined.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    MetricAggregate {
        mean: Some(mean),
        min: defined.iter().copied().reduce(f64::min),
        max: defined.iter().copied().reduce(f64::max),
        std: Some(var.sqrt()),
        defined: defined.len(),
        undefined,
    }
}

/// Per-metric aggregates across frames (macro view), keyed in
/// [`MetricSet::NAMES`] order.
pub fn aggregate_macro(sets: &[MetricSet]) -> Vec<MetricAggregate> {
    (0..MetricSet::NAMES.len())
        .map(|k| {
            let column: Vec<Option<f64>> = sets.iter().map(|s| s.values()[k]).collect();
            aggregate_metric(&column)
        })
        .collect()
}
