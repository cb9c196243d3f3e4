use std::sync::Arc;

/// One point of an LCS curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsPoint {
    pub k: usize,
    /// Length of the longest substring shared by at least `k` sequences.
    pub length: usize,
    /// A substring realizing `length`, lexicographically smallest among ties.
    pub witness: Arc<str>,
    /// Group positions of every sequence containing `witness`, ascending.
    pub members: Arc<[usize]>,
}

impl LcsPoint {
    pub(crate) fn empty(k: usize) -> Self {
        LcsPoint { k, length: 0, witness: Arc::from(""), members: Arc::from(Vec::new()) }
    }
}

/// LCS length as a function of k, for k in `[2, M]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsCurve {
    account_ids: Arc<[String]>,
    seq_lens: Arc<[usize]>,
    points: Vec<LcsPoint>,
}

impl LcsCurve {
    pub(crate) fn new(account_ids: Vec<String>, seq_lens: Vec<usize>, points: Vec<LcsPoint>) -> Self {
        debug_assert_eq!(points.len() + 1, account_ids.len());
        LcsCurve { account_ids: account_ids.into(), seq_lens: seq_lens.into(), points }
    }

    /// Group size M.
    pub fn m(&self) -> usize {
        self.account_ids.len()
    }

    pub fn account_ids(&self) -> &[String] {
        &self.account_ids
    }

    /// Lengths of the underlying sequences, in group order.
    pub fn sequence_lengths(&self) -> &[usize] {
        &self.seq_lens
    }

    /// Points for k = 2..=M.
    pub fn points(&self) -> &[LcsPoint] {
        &self.points
    }

    /// Panics unless `2 <= k <= M`.
    pub fn point(&self, k: usize) -> &LcsPoint {
        assert!(k >= 2 && k <= self.m(), "k={k} outside [2, {}]", self.m());
        &self.points[k - 2]
    }

    pub fn length(&self, k: usize) -> usize {
        self.point(k).length
    }

    /// Lengths for k = 2..=M.
    pub fn lengths(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.length).collect()
    }

    /// Account ids of the members at `k`.
    pub fn member_ids(&self, k: usize) -> Vec<&str> {
        self.point(k).members.iter().map(|&i| self.account_ids[i].as_str()).collect()
    }

    /// Copy of this curve with new lengths; witnesses and members are kept.
    pub(crate) fn with_lengths(&self, lengths: &[usize]) -> LcsCurve {
        debug_assert_eq!(lengths.len(), self.points.len());
        let points = self.points.iter().zip(lengths).map(|(p, &length)| LcsPoint { length, ..p.clone() }).collect();
        LcsCurve { account_ids: self.account_ids.clone(), seq_lens: self.seq_lens.clone(), points }
    }
}
