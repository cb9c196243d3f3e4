//! Exhaustive k-common substring solver used as a test oracle.
//!
//! Enumerates every substring of every sequence, counts the distinct
//! sequences containing it and keeps the per-k maxima. Cubic-ish in the
//! text size, so it refuses inputs above a small bound.

use std::collections::HashMap;
use std::sync::Arc;

use super::curve::{LcsCurve, LcsPoint};
use crate::dna::AccountGroup;
use crate::error::{Error, Result};

/// Default cap on the total text length the oracle accepts.
pub const ORACLE_MAX_TOTAL_LEN: usize = 200;

pub fn brute_force_curve(group: &AccountGroup) -> Result<LcsCurve> {
    brute_force_texts(group.account_ids(), &group.texts(), ORACLE_MAX_TOTAL_LEN)
}

pub fn brute_force_texts(ids: Vec<String>, texts: &[&str], max_total_len: usize) -> Result<LcsCurve> {
    let m = texts.len();
    if m < 2 {
        return Err(Error::input(format!("need at least 2 sequences, got {m}")));
    }
    let total: usize = texts.iter().map(|t| t.chars().count()).sum();
    if total > max_total_len {
        return Err(Error::config(format!("oracle input too large: total length {total} exceeds {max_total_len}")));
    }

    // substring -> sorted list of containing documents
    let mut holders: HashMap<String, Vec<usize>> = HashMap::new();
    for (d, t) in texts.iter().enumerate() {
        let chars: Vec<char> = t.chars().collect();
        for i in 0..chars.len() {
            for j in i + 1..=chars.len() {
                let sub: String = chars[i..j].iter().collect();
                let docs = holders.entry(sub).or_default();
                if docs.last() != Some(&d) {
                    docs.push(d);
                }
            }
        }
    }

    let mut points = Vec::with_capacity(m - 1);
    for k in 2..=m {
        let best = holders
            .iter()
            .filter(|(_, docs)| docs.len() >= k)
            .max_by(|(a, _), (b, _)| a.chars().count().cmp(&b.chars().count()).then_with(|| b.cmp(a)));
        points.push(match best {
            Some((w, docs)) => LcsPoint {
                k,
                length: w.chars().count(),
                witness: Arc::from(w.as_str()),
                members: Arc::from(docs.clone()),
            },
            None => LcsPoint::empty(k),
        });
    }
    let lens = texts.iter().map(|t| t.chars().count()).collect();
    Ok(LcsCurve::new(ids, lens, points))
}
