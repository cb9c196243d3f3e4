use std::collections::HashMap;
use std::sync::Arc;

use super::curve::{LcsCurve, LcsPoint};
use super::sais::{lcp_array, suffix_array};
use crate::dna::AccountGroup;
use crate::error::{Error, Result};

const NO_DOC: u32 = u32::MAX;

/// Witness and holder list shared by every k that resolves to the same interval.
type Shared = (Arc<str>, Arc<[usize]>);

/// Generalized suffix array over a group of sequences.
///
/// The text is the concatenation `s_1 #_1 s_2 #_2 ... s_M #_M 0`. Characters
/// map to codes `1..=sigma` in ascending char order, separator `#_d` gets
/// code `sigma + 1 + d`, and the terminal `0` closes the text. Separators
/// are unique, so no common prefix of two suffixes ever spans one.
#[derive(Debug, Clone)]
pub struct CorpusIndex {
    text: Vec<u32>,
    symbols: Vec<char>,
    doc_of: Vec<u32>,
    doc_starts: Vec<usize>,
    doc_lens: Vec<usize>,
    account_ids: Vec<String>,
    sa: Vec<u32>,
    lcp: Vec<u32>,
}

/// Builds the index for a group of accounts.
pub fn build_index(group: &AccountGroup) -> Result<CorpusIndex> {
    CorpusIndex::from_texts(group.account_ids(), &group.texts())
}

impl CorpusIndex {
    /// Builds an index over arbitrary non-empty strings; `ids` names each
    /// document.
    pub fn from_texts(ids: Vec<String>, texts: &[&str]) -> Result<Self> {
        if texts.len() < 2 {
            return Err(Error::input(format!("need at least 2 sequences, got {}", texts.len())));
        }
        if ids.len() != texts.len() {
            return Err(Error::input("one account id per sequence is required"));
        }
        if let Some(d) = texts.iter().position(|t| t.is_empty()) {
            return Err(Error::input(format!("sequence of '{}' is empty", ids[d])));
        }

        let mut symbols: Vec<char> = texts.iter().flat_map(|t| t.chars()).collect();
        symbols.sort_unstable();
        symbols.dedup();
        let mut code_of = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            code_of.insert(c, i as u32 + 1);
        }
        let sigma = symbols.len() as u32;

        let total: usize = texts.iter().map(|t| t.chars().count()).sum::<usize>() + texts.len() + 1;
        let mut text = Vec::with_capacity(total);
        let mut doc_of = Vec::with_capacity(total);
        let mut doc_starts = Vec::with_capacity(texts.len());
        let mut doc_lens = Vec::with_capacity(texts.len());
        for (d, t) in texts.iter().enumerate() {
            doc_starts.push(text.len());
            let before = text.len();
            for c in t.chars() {
                text.push(code_of[&c]);
                doc_of.push(d as u32);
            }
            doc_lens.push(text.len() - before);
            text.push(sigma + 1 + d as u32);
            doc_of.push(NO_DOC);
        }
        text.push(0);
        doc_of.push(NO_DOC);

        let alphabet_size = sigma as usize + texts.len() + 1;
        let sa = suffix_array(&text, alphabet_size);
        let lcp = lcp_array(&text, &sa);
        Ok(CorpusIndex { text, symbols, doc_of, doc_starts, doc_lens, account_ids: ids, sa, lcp })
    }

    /// Number of documents M.
    pub fn num_docs(&self) -> usize {
        self.doc_starts.len()
    }

    /// Length of the concatenated text, separators and terminal included.
    pub fn text_len(&self) -> usize {
        self.text.len()
    }

    pub fn account_ids(&self) -> &[String] {
        &self.account_ids
    }

    /// Document owning text position `pos`, `None` on separators.
    pub fn doc_at(&self, pos: usize) -> Option<usize> {
        match self.doc_of.get(pos) {
            Some(&d) if d != NO_DOC => Some(d as usize),
            _ => None,
        }
    }

    pub fn doc_start(&self, doc: usize) -> usize {
        self.doc_starts[doc]
    }

    pub fn suffix_array(&self) -> &[u32] {
        &self.sa
    }

    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    fn decode(&self, pos: usize, len: usize) -> String {
        self.text[pos..pos + len].iter().map(|&c| self.symbols[c as usize - 1]).collect()
    }

    /// Distinct documents among suffix ranks `lb..=rb`, ascending.
    fn members_of(doc_by_rank: &[u32], seen: &mut [bool], lb: usize, rb: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &d in &doc_by_rank[lb..=rb] {
            if d != NO_DOC && !seen[d as usize] {
                seen[d as usize] = true;
                out.push(d as usize);
            }
        }
        for &d in &out {
            seen[d] = false;
        }
        out.sort_unstable();
        out
    }

    /// Solves the k-common substring problem for every k in `[2, M]`.
    ///
    /// One bottom-up pass over the LCP intervals computes, for each
    /// interval, the number of distinct documents among its suffixes
    /// (leaf count minus duplicate corrections charged to the lowest
    /// common ancestor of consecutive same-document leaves). The best
    /// interval per exact document count is then turned into per-k answers
    /// with a suffix maximum over counts.
    pub fn common_substring_curve(&self) -> LcsCurve {
        let m = self.num_docs();
        // best[c] = (length, lb, rb) of the best interval with exactly c documents
        let mut best: Vec<Option<(u32, usize, usize)>> = vec![None; m + 1];
        let better = |cand: (u32, usize, usize), cur: Option<(u32, usize, usize)>| match cur {
            None => true,
            Some((len, lb, _)) => cand.0 > len || (cand.0 == len && cand.1 < lb),
        };

        struct Node {
            lcp: u32,
            lb: usize,
            leaves: u32,
            dups: u32,
        }
        let n = self.sa.len();
        // document of each suffix rank, so later scans read sequentially
        let doc_by_rank: Vec<u32> = self.sa.iter().map(|&p| self.doc_of[p as usize]).collect();
        let mut last_seen = vec![usize::MAX; m];
        let mut stack = vec![Node { lcp: 0, lb: 0, leaves: 0, dups: 0 }];

        for i in 1..=n {
            let h = if i < n { self.lcp[i] } else { 0 };
            let leaf = i - 1;
            let doc = Some(doc_by_rank[leaf]).filter(|&d| d != NO_DOC).map(|d| d as usize);
            let leaf_goes_to_new = h > stack.last().unwrap().lcp;

            // Duplicate correction: charge the deepest open interval that
            // contains both this leaf and the previous leaf of its document.
            if let Some(d) = doc {
                let prev = last_seen[d];
                last_seen[d] = leaf;
                if prev != usize::MAX {
                    let at = stack.partition_point(|nd| nd.lb <= prev);
                    debug_assert!(at > 0);
                    stack[at - 1].dups += 1;
                }
            }
            let leaf_count = doc.is_some() as u32;
            if !leaf_goes_to_new {
                stack.last_mut().unwrap().leaves += leaf_count;
            }

            let mut lb = leaf;
            let mut carried: Option<(u32, u32)> = None;
            while h < stack.last().unwrap().lcp {
                let node = stack.pop().unwrap();
                let (leaves, dups) = match carried.take() {
                    Some((l, d)) => (node.leaves + l, node.dups + d),
                    None => (node.leaves, node.dups),
                };
                let count = (leaves - dups) as usize;
                if count >= 2 {
                    let cand = (node.lcp, node.lb, leaf);
                    if better(cand, best[count]) {
                        best[count] = Some(cand);
                    }
                }
                lb = node.lb;
                let top = stack.last_mut().unwrap();
                if h <= top.lcp {
                    top.leaves += leaves;
                    top.dups += dups;
                } else {
                    carried = Some((leaves, dups));
                }
            }
            if h > stack.last().unwrap().lcp {
                let (mut leaves, dups) = carried.unwrap_or((0, 0));
                if leaf_goes_to_new {
                    leaves += leaf_count;
                }
                stack.push(Node { lcp: h, lb, leaves, dups });
            }
        }

        // keyed by interval bounds and length: nested intervals can share `lb`
        let mut cache: HashMap<(usize, usize, u32), Shared> = HashMap::new();
        let mut seen = vec![false; m];
        let mut running: Option<(u32, usize, usize)> = None;
        let mut points = Vec::with_capacity(m.saturating_sub(1));
        for k in (2..=m).rev() {
            if let Some(c) = best[k] {
                if better(c, running) {
                    running = Some(c);
                }
            }
            let point = match running {
                Some((len, lb, rb)) if len > 0 => {
                    let (witness, members) = cache
                        .entry((lb, rb, len))
                        .or_insert_with(|| {
                            let w: Arc<str> = self.decode(self.sa[lb] as usize, len as usize).into();
                            let mem: Arc<[usize]> = Self::members_of(&doc_by_rank, &mut seen, lb, rb).into();
                            (w, mem)
                        })
                        .clone();
                    LcsPoint { k, length: len as usize, witness, members }
                }
                _ => LcsPoint::empty(k),
            };
            points.push(point);
        }
        points.reverse();
        LcsCurve::new(self.account_ids.clone(), self.doc_lens.clone(), points)
    }
}

/// Longest common substring of two strings; among equally long candidates
/// the lexicographically smallest is returned.
pub fn lcs_pair(s1: &str, s2: &str) -> String {
    if s1.is_empty() || s2.is_empty() {
        return String::new();
    }
    let index =
        CorpusIndex::from_texts(vec!["1".into(), "2".into()], &[s1, s2]).expect("two non-empty strings always index");
    index.common_substring_curve().point(2).witness.to_string()
}
