//! Generalized suffix array and the k-common substring problem.

mod curve;
mod index;
mod oracle;
mod sais;

pub use curve::{LcsCurve, LcsPoint};
pub use index::{build_index, lcs_pair, CorpusIndex};
pub use oracle::{brute_force_curve, brute_force_texts, ORACLE_MAX_TOTAL_LEN};

use crate::dna::AccountGroup;
use crate::error::Result;

/// Index + solve in one step.
pub fn group_curve(group: &AccountGroup) -> Result<LcsCurve> {
    Ok(build_index(group)?.common_substring_curve())
}

/// Solves the k-common substring problem for an already built index.
pub fn common_substring_curve(index: &CorpusIndex) -> LcsCurve {
    index.common_substring_curve()
}
