//! Behavioral "digital DNA" for groups of online accounts.
//!
//! Timelines are encoded as strings over small alphabets, a generalized
//! suffix array answers the k-common substring problem for a whole group,
//! and the shape of the resulting LCS curve is used to split the group into
//! a highly similar (automated) subgroup and the rest.

pub mod analysis;
pub mod detection;
pub mod dna;
pub mod error;
pub mod io;
pub mod lcs;
pub mod mem;
pub mod metrics;
pub mod synth;

pub use analysis::{
    default_min_prominence, derivative, detect_peaks, smooth, DerivativeSeries, SplitCandidate, DEFAULT_WINDOW,
};
pub use detection::{
    divisive_cluster, supervised_classify, supervised_train, unsupervised_split, DivisiveNode, SplitMode, SplitResult,
    TrainedClassifier,
};
pub use dna::{
    base_histogram, encode_sequence, AccountGroup, ActionKind, ActionRecord, Alphabet, AlphabetId, DnaSequence, Label,
    Timeline, MAX_TIMELINE,
};
pub use error::{Error, Result};
pub use lcs::{
    brute_force_curve, build_index, common_substring_curve, group_curve, lcs_pair, CorpusIndex, LcsCurve, LcsPoint,
};
pub use metrics::{compute_metrics, confusion_matrix, roc_point, ConfusionMatrix, MetricsReport};
