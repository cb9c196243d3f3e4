//! Turning LCS curves into account partitions.
//!
//! Accounts "left of the split" are the members of the witness at the split
//! index: they all share the long substring that the curve reports there.

use std::collections::HashMap;

use serde::Serialize;

use crate::analysis::{default_min_prominence, derivative, detect_peaks, smooth};
use crate::dna::{AccountGroup, Label};
use crate::error::{Error, Result};
use crate::lcs::{group_curve, LcsCurve};
use crate::metrics::{compute_metrics, roc_point, ConfusionMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitMode {
    Supervised,
    Unsupervised,
    None,
}

/// A two-way partition of a group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitResult {
    pub mode: SplitMode,
    /// Last k before the drop; `None` when no split was made.
    pub k_star: Option<usize>,
    /// LCS length at `k_star`.
    pub threshold_length: Option<usize>,
    /// Account ids, in group order.
    pub spambots: Vec<String>,
    pub genuine: Vec<String>,
}

impl SplitResult {
    fn none(curve: &LcsCurve) -> Self {
        SplitResult {
            mode: SplitMode::None,
            k_star: None,
            threshold_length: None,
            spambots: Vec::new(),
            genuine: curve.account_ids().to_vec(),
        }
    }

    fn at(curve: &LcsCurve, k: usize, mode: SplitMode) -> Self {
        let mut is_bot = vec![false; curve.m()];
        for &i in curve.point(k).members.iter() {
            is_bot[i] = true;
        }
        let (mut spambots, mut genuine) = (Vec::new(), Vec::new());
        for (id, bot) in curve.account_ids().iter().zip(is_bot) {
            if bot {
                spambots.push(id.clone());
            } else {
                genuine.push(id.clone());
            }
        }
        SplitResult { mode, k_star: Some(k), threshold_length: Some(curve.length(k)), spambots, genuine }
    }

    /// Account id -> predicted class.
    pub fn predictions(&self) -> HashMap<String, Label> {
        self.spambots
            .iter()
            .map(|id| (id.clone(), Label::Spambot))
            .chain(self.genuine.iter().map(|id| (id.clone(), Label::Genuine)))
            .collect()
    }
}

/// Splits at the steepest drop of the curve.
///
/// Peaks of the smoothed derivative are the candidate locations. Each one is
/// refined to the largest raw drop within half a window of it, and the
/// candidate with the largest refined drop wins (ties: higher smoothed rank).
/// The split sits just before that drop. Ranking by the refined drop keeps
/// the low end of the curve, where the smoothing window has shrunk to one or
/// three points, from outranking a long planted plateau whose fall the
/// smoothing spreads over several k. `min_prominence = None` uses
/// [`default_min_prominence`].
pub fn unsupervised_split(curve: &LcsCurve, window: usize, min_prominence: Option<f64>) -> Result<SplitResult> {
    let m = curve.m();
    if m < 3 {
        return Err(Error::input(format!("unsupervised split needs M >= 3, got {m}")));
    }
    let smoothed = smooth(curve, window)?;
    let series = derivative(&smoothed)?;
    let prominence = min_prominence.unwrap_or_else(|| default_min_prominence(&series));
    let half = window / 2;

    let mut best: Option<(usize, usize)> = None; // (raw drop, k of the drop)
    for cand in detect_peaks(&series, prominence) {
        let lo = cand.k.saturating_sub(half).max(3);
        let hi = (cand.k_end + half).min(m);
        let mut local: Option<(usize, usize)> = None;
        for j in lo..=hi {
            let d = curve.length(j - 1) - curve.length(j);
            if d > 0 && local.is_none_or(|(b, _)| d > b) {
                local = Some((d, j));
            }
        }
        if let Some(l) = local {
            if best.is_none_or(|(b, _)| l.0 > b) {
                best = Some(l);
            }
        }
    }
    match best {
        Some((_, drop_at)) => Ok(SplitResult::at(curve, drop_at - 1, SplitMode::Unsupervised)),
        None => Ok(SplitResult::none(curve)),
    }
}

/// Threshold learned from a labeled training curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainedClassifier {
    pub threshold_length: usize,
    pub k_best: usize,
    pub training_mcc: f64,
    pub confusion: ConfusionMatrix,
    /// `(fpr, tpr)` for every k in `[2, M]`.
    pub roc: Vec<(f64, f64)>,
}

/// Evaluates every split point of the training curve and keeps the one with
/// the highest MCC (ties: smaller k).
pub fn supervised_train(curve: &LcsCurve, labels: &HashMap<String, Label>) -> Result<TrainedClassifier> {
    let mut truth = Vec::with_capacity(curve.m());
    for id in curve.account_ids() {
        match labels.get(id) {
            Some(Label::Spambot) => truth.push(true),
            Some(Label::Genuine) => truth.push(false),
            _ => return Err(Error::input(format!("training account '{id}' has no spambot/genuine label"))),
        }
    }
    let positives = truth.iter().filter(|&&t| t).count() as u64;
    let negatives = truth.len() as u64 - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::input("training labels must contain both spambots and genuine accounts"));
    }

    let mut roc = Vec::with_capacity(curve.m() - 1);
    let mut best: Option<(f64, usize, ConfusionMatrix)> = None;
    for p in curve.points() {
        let tp = p.members.iter().filter(|&&i| truth[i]).count() as u64;
        let fp = p.members.len() as u64 - tp;
        let cm = ConfusionMatrix::new(tp, negatives - fp, fp, positives - tp);
        let mcc = compute_metrics(&cm)?.mcc;
        roc.push(roc_point(&cm));
        if best.as_ref().is_none_or(|(b, _, _)| mcc > *b) {
            best = Some((mcc, p.k, cm));
        }
    }
    let (training_mcc, k_best, confusion) = best.expect("curve has at least one point");
    Ok(TrainedClassifier { threshold_length: curve.length(k_best), k_best, training_mcc, confusion, roc })
}

/// Applies a learned LCS threshold to a new curve: the split is the largest
/// k whose LCS still reaches the threshold.
pub fn supervised_classify(curve: &LcsCurve, classifier: &TrainedClassifier) -> SplitResult {
    let theta = classifier.threshold_length;
    let k =
        if theta == 0 { Some(curve.m()) } else { curve.points().iter().rev().find(|p| p.length >= theta).map(|p| p.k) };
    match k {
        Some(k) => SplitResult::at(curve, k, SplitMode::Supervised),
        None => SplitResult::none(curve),
    }
}

/// Node of a top-down split tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisiveNode {
    pub account_ids: Vec<String>,
    pub split_k: Option<usize>,
    pub children: Vec<DivisiveNode>,
}

impl DivisiveNode {
    fn leaf(account_ids: Vec<String>) -> Self {
        DivisiveNode { account_ids, split_k: None, children: Vec::new() }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn leaves(&self) -> Vec<&DivisiveNode> {
        if self.is_leaf() {
            return vec![self];
        }
        self.children.iter().flat_map(|c| c.leaves()).collect()
    }

    pub fn internal_nodes(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(|c| c.internal_nodes()).sum::<usize>()
        }
    }

    pub fn depth(&self) -> usize {
        self.children.iter().map(|c| 1 + c.depth()).max().unwrap_or(0)
    }
}

/// Repeatedly splits the group at its steepest drop, recomputing the curve
/// of each side, until no peak qualifies, a side has fewer than 3 accounts,
/// or `max_depth` splits have been stacked.
pub fn divisive_cluster(
    curve: &LcsCurve,
    group: &AccountGroup,
    max_depth: usize,
    window: usize,
    min_prominence: Option<f64>,
) -> Result<DivisiveNode> {
    if max_depth == 0 {
        return Err(Error::config("max_depth must be positive"));
    }
    if curve.account_ids() != group.account_ids().as_slice() {
        return Err(Error::input("curve and group describe different accounts"));
    }
    divide(curve, group, max_depth, window, min_prominence)
}

fn divide(
    curve: &LcsCurve,
    group: &AccountGroup,
    depth_left: usize,
    window: usize,
    min_prominence: Option<f64>,
) -> Result<DivisiveNode> {
    let ids = group.account_ids();
    if depth_left == 0 || group.len() < 3 {
        return Ok(DivisiveNode::leaf(ids));
    }
    let split = unsupervised_split(curve, window, min_prominence)?;
    let Some(k) = split.k_star else {
        return Ok(DivisiveNode::leaf(ids));
    };
    if split.genuine.is_empty() {
        return Ok(DivisiveNode::leaf(ids));
    }
    let left: Vec<usize> = curve.point(k).members.to_vec();
    let mut in_left = vec![false; group.len()];
    for &i in &left {
        in_left[i] = true;
    }
    let right: Vec<usize> = (0..group.len()).filter(|&i| !in_left[i]).collect();

    let mut children = Vec::with_capacity(2);
    for side in [left, right] {
        if side.len() < 3 {
            children.push(DivisiveNode::leaf(side.iter().map(|&i| ids[i].clone()).collect()));
            continue;
        }
        let sub = group.subgroup(&side)?;
        let sub_curve = group_curve(&sub)?;
        children.push(divide(&sub_curve, &sub, depth_left - 1, window, min_prominence)?);
    }
    Ok(DivisiveNode { account_ids: ids, split_k: Some(k), children })
}
