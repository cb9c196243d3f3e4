//! Digital DNA alphabets and timeline encoding.
//!
//! An account timeline is a time-ordered list of actions. Each action is
//! mapped to exactly one base of the chosen alphabet, so the resulting
//! sequence has one character per action.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of (most recent) actions kept per account.
pub const MAX_TIMELINE: usize = 3200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphabetId {
    /// tweet / reply / retweet
    Type3,
    /// no entities / one entity type / mixed entity types
    Content3,
    /// no entities / url / hashtag / mention / media / mixed
    Content6,
}

impl AlphabetId {
    pub const ALL: [AlphabetId; 3] = [AlphabetId::Type3, AlphabetId::Content3, AlphabetId::Content6];

    pub fn alphabet(self) -> Alphabet {
        Alphabet::new(self)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AlphabetId::Type3 => "type3",
            AlphabetId::Content3 => "content3",
            AlphabetId::Content6 => "content6",
        }
    }
}

impl fmt::Display for AlphabetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlphabetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "type3" => Ok(AlphabetId::Type3),
            "content3" => Ok(AlphabetId::Content3),
            "content6" => Ok(AlphabetId::Content6),
            other => Err(Error::config(format!("unknown alphabet '{other}'"))),
        }
    }
}

/// The ordered, pairwise distinct set of bases of an encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    id: AlphabetId,
    bases: &'static [char],
}

impl Alphabet {
    pub fn new(id: AlphabetId) -> Self {
        let bases: &'static [char] = match id {
            AlphabetId::Type3 => &['A', 'C', 'T'],
            AlphabetId::Content3 => &['N', 'E', 'X'],
            AlphabetId::Content6 => &['N', 'U', 'H', 'M', 'D', 'X'],
        };
        Alphabet { id, bases }
    }

    pub fn id(&self) -> AlphabetId {
        self.id
    }

    pub fn bases(&self) -> &'static [char] {
        self.bases
    }

    /// Cardinality N of the alphabet.
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.bases.contains(&c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    Tweet,
    Reply,
    Retweet,
}

impl ActionKind {
    /// Classifies a raw action that may carry both a reply and a retweet
    /// marker. Retweet wins.
    pub fn from_flags(is_reply: bool, is_retweet: bool) -> Self {
        if is_retweet {
            ActionKind::Retweet
        } else if is_reply {
            ActionKind::Reply
        } else {
            ActionKind::Tweet
        }
    }
}

impl FromStr for ActionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tweet" => Ok(ActionKind::Tweet),
            "reply" => Ok(ActionKind::Reply),
            "retweet" => Ok(ActionKind::Retweet),
            other => Err(Error::input(format!("unknown action kind '{other}'"))),
        }
    }
}

/// One timeline action of one account.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionRecord {
    pub account_id: String,
    pub kind: ActionKind,
    pub has_url: bool,
    pub has_hashtag: bool,
    pub has_mention: bool,
    pub has_media: bool,
    /// Epoch seconds.
    pub timestamp: u64,
}

impl ActionRecord {
    pub fn new(account_id: impl Into<String>, kind: ActionKind, timestamp: u64) -> Self {
        ActionRecord {
            account_id: account_id.into(),
            kind,
            has_url: false,
            has_hashtag: false,
            has_mention: false,
            has_media: false,
            timestamp,
        }
    }

    fn entity_flags(&self) -> [bool; 4] {
        [self.has_url, self.has_hashtag, self.has_mention, self.has_media]
    }

    /// The base this action maps to under `alphabet`.
    pub fn base(&self, alphabet: AlphabetId) -> char {
        let flags = self.entity_flags();
        let set = flags.iter().filter(|&&f| f).count();
        match alphabet {
            AlphabetId::Type3 => match self.kind {
                ActionKind::Tweet => 'A',
                ActionKind::Reply => 'C',
                ActionKind::Retweet => 'T',
            },
            AlphabetId::Content3 => match set {
                0 => 'N',
                1 => 'E',
                _ => 'X',
            },
            AlphabetId::Content6 => match (set, flags) {
                (0, _) => 'N',
                (1, [true, _, _, _]) => 'U',
                (1, [_, true, _, _]) => 'H',
                (1, [_, _, true, _]) => 'M',
                (1, _) => 'D',
                _ => 'X',
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Spambot,
    Genuine,
    #[default]
    Unlabeled,
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spambot" => Ok(Label::Spambot),
            "genuine" => Ok(Label::Genuine),
            "unlabeled" | "" => Ok(Label::Unlabeled),
            other => Err(Error::input(format!("unknown label '{other}'"))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Spambot => "spambot",
            Label::Genuine => "genuine",
            Label::Unlabeled => "unlabeled",
        })
    }
}

/// An account's behavior string over a declared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnaSequence {
    account_id: String,
    alphabet: AlphabetId,
    symbols: String,
    label: Label,
}

impl DnaSequence {
    /// Validates that every symbol is a base of `alphabet`.
    pub fn new(
        account_id: impl Into<String>,
        alphabet: AlphabetId,
        symbols: impl Into<String>,
        label: Label,
    ) -> Result<Self> {
        let symbols = symbols.into();
        let account_id = account_id.into();
        let a = alphabet.alphabet();
        if let Some(bad) = symbols.chars().find(|&c| !a.contains(c)) {
            return Err(Error::input(format!("account '{account_id}': symbol '{bad}' is not a base of {alphabet}")));
        }
        Ok(DnaSequence { account_id, alphabet, symbols, label })
    }

    pub fn account_id(&self) -> &str {
        &self.account_id
    }

    pub fn alphabet(&self) -> AlphabetId {
        self.alphabet
    }

    pub fn symbols(&self) -> &str {
        &self.symbols
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn with_label(mut self, label: Label) -> Self {
        self.label = label;
        self
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Encodes one account's timeline.
///
/// Actions are stably sorted by timestamp (ties keep input order) and only
/// the [`MAX_TIMELINE`] most recent ones are kept.
pub fn encode_sequence(actions: &[ActionRecord], alphabet: AlphabetId) -> Result<DnaSequence> {
    let account_id = match actions.first() {
        Some(a) => a.account_id.clone(),
        None => return DnaSequence::new(String::new(), alphabet, String::new(), Label::Unlabeled),
    };
    if let Some(other) = actions.iter().find(|a| a.account_id != account_id) {
        return Err(Error::input(format!(
            "mixed account ids in one timeline: '{account_id}' and '{}'",
            other.account_id
        )));
    }
    let mut ordered: Vec<&ActionRecord> = actions.iter().collect();
    ordered.sort_by_key(|a| a.timestamp);
    if ordered.len() > MAX_TIMELINE {
        log::warn!("account '{account_id}': keeping the {MAX_TIMELINE} most recent of {} actions", ordered.len());
        ordered.drain(..ordered.len() - MAX_TIMELINE);
    }
    let symbols: String = ordered.iter().map(|a| a.base(alphabet)).collect();
    DnaSequence::new(account_id, alphabet, symbols, Label::Unlabeled)
}

/// One account's actions plus its optional ground-truth label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    pub account_id: String,
    pub label: Label,
    pub actions: Vec<ActionRecord>,
}

impl Timeline {
    /// Encodes the actions; the label is carried over. An empty timeline
    /// gives an empty sequence that keeps the account id.
    pub fn encode(&self, alphabet: AlphabetId) -> Result<DnaSequence> {
        if self.actions.is_empty() {
            return DnaSequence::new(self.account_id.clone(), alphabet, String::new(), self.label);
        }
        if let Some(a) = self.actions.iter().find(|a| a.account_id != self.account_id) {
            return Err(Error::input(format!(
                "timeline of '{}' contains an action of '{}'",
                self.account_id, a.account_id
            )));
        }
        Ok(encode_sequence(&self.actions, alphabet)?.with_label(self.label))
    }
}

/// Per-base counts of a sequence. Bases that do not occur are absent.
pub fn base_histogram(sequence: &DnaSequence) -> BTreeMap<char, usize> {
    histogram_of(sequence.symbols())
}

pub(crate) fn histogram_of(s: &str) -> BTreeMap<char, usize> {
    let mut h = BTreeMap::new();
    for c in s.chars() {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// A group of M ≥ 2 accounts sharing one alphabet.
#[derive(Debug, Clone)]
pub struct AccountGroup {
    alphabet: AlphabetId,
    sequences: Vec<DnaSequence>,
}

impl AccountGroup {
    /// Builds a group, dropping accounts with empty sequences (with a
    /// warning). Fails if fewer than two accounts remain, if account ids
    /// repeat, or if alphabets differ.
    pub fn new(sequences: Vec<DnaSequence>) -> Result<Self> {
        let alphabet = match sequences.first() {
            Some(s) => s.alphabet(),
            None => return Err(Error::input("a group needs at least 2 accounts, got 0")),
        };
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(sequences.len());
        for s in sequences {
            if s.alphabet() != alphabet {
                return Err(Error::input(format!(
                    "account '{}' uses alphabet {} but the group uses {alphabet}",
                    s.account_id(),
                    s.alphabet()
                )));
            }
            if !seen.insert(s.account_id.clone()) {
                return Err(Error::input(format!("duplicate account id '{}'", s.account_id())));
            }
            if s.is_empty() {
                log::warn!("account '{}' has an empty timeline and is excluded", s.account_id());
                continue;
            }
            kept.push(s);
        }
        if kept.len() < 2 {
            return Err(Error::input(format!("a group needs at least 2 non-empty accounts, got {}", kept.len())));
        }
        Ok(AccountGroup { alphabet, sequences: kept })
    }

    pub fn alphabet(&self) -> AlphabetId {
        self.alphabet
    }

    pub fn sequences(&self) -> &[DnaSequence] {
        &self.sequences
    }

    /// Group size M.
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn account_ids(&self) -> Vec<String> {
        self.sequences.iter().map(|s| s.account_id.clone()).collect()
    }

    pub fn texts(&self) -> Vec<&str> {
        self.sequences.iter().map(|s| s.symbols()).collect()
    }

    /// Sub-group made of the listed positions, in the given order.
    pub fn subgroup(&self, indices: &[usize]) -> Result<Self> {
        AccountGroup::new(indices.iter().map(|&i| self.sequences[i].clone()).collect())
    }

    pub fn into_sequences(self) -> Vec<DnaSequence> {
        self.sequences
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(kind: ActionKind, ts: u64) -> ActionRecord {
        ActionRecord::new("u", kind, ts)
    }

    #[test]
    fn type3_example_timeline() {
        use ActionKind::*;
        let kinds = [Tweet, Tweet, Tweet, Reply, Tweet, Retweet, Reply, Tweet, Tweet, Reply];
        let actions: Vec<_> = kinds.iter().enumerate().map(|(i, &k)| act(k, i as u64)).collect();
        let s = encode_sequence(&actions, AlphabetId::Type3).unwrap();
        assert_eq!(s.symbols(), "AAACATCAAC");
    }

    #[test]
    fn empty_timeline_encodes_to_empty_string() {
        for id in AlphabetId::ALL {
            assert_eq!(encode_sequence(&[], id).unwrap().symbols(), "");
        }
    }

    #[test]
    fn content6_classes() {
        let plain = act(ActionKind::Tweet, 1);
        let mut url = act(ActionKind::Tweet, 2);
        url.has_url = true;
        let mut mixed = act(ActionKind::Tweet, 3);
        mixed.has_hashtag = true;
        mixed.has_mention = true;
        let s = encode_sequence(&[plain, url, mixed], AlphabetId::Content6).unwrap();
        assert_eq!(s.symbols(), "NUX");
    }

    #[test]
    fn content_single_flags() {
        let mut a = act(ActionKind::Reply, 0);
        a.has_media = true;
        assert_eq!(a.base(AlphabetId::Content6), 'D');
        assert_eq!(a.base(AlphabetId::Content3), 'E');
        a.has_media = false;
        a.has_mention = true;
        assert_eq!(a.base(AlphabetId::Content6), 'M');
        a.has_mention = false;
        a.has_hashtag = true;
        assert_eq!(a.base(AlphabetId::Content6), 'H');
    }

    #[test]
    fn mixed_accounts_rejected() {
        let a = ActionRecord::new("a", ActionKind::Tweet, 0);
        let b = ActionRecord::new("b", ActionKind::Tweet, 1);
        assert!(encode_sequence(&[a, b], AlphabetId::Type3).is_err());
    }

    #[test]
    fn unknown_alphabet_rejected() {
        assert!("type4".parse::<AlphabetId>().is_err());
        assert_eq!("CONTENT6".parse::<AlphabetId>().unwrap(), AlphabetId::Content6);
    }

    #[test]
    fn ties_keep_input_order_and_unsorted_input_is_ordered() {
        use ActionKind::*;
        let actions = vec![act(Retweet, 5), act(Reply, 1), act(Tweet, 1)];
        let s = encode_sequence(&actions, AlphabetId::Type3).unwrap();
        assert_eq!(s.symbols(), "CAT");
    }

    #[test]
    fn timeline_cap_keeps_most_recent() {
        let mut actions: Vec<_> = (0..MAX_TIMELINE as u64).map(|t| act(ActionKind::Tweet, t + 10)).collect();
        actions.push(act(ActionKind::Retweet, 0));
        let s = encode_sequence(&actions, AlphabetId::Type3).unwrap();
        assert_eq!(s.len(), MAX_TIMELINE);
        assert!(!s.symbols().contains('T'));
    }

    #[test]
    fn retweet_beats_reply() {
        assert_eq!(ActionKind::from_flags(true, true), ActionKind::Retweet);
        assert_eq!(ActionKind::from_flags(true, false), ActionKind::Reply);
        assert_eq!(ActionKind::from_flags(false, false), ActionKind::Tweet);
    }

    #[test]
    fn histograms() {
        let s = DnaSequence::new("u", AlphabetId::Type3, "AAACATCAAC", Label::Unlabeled).unwrap();
        let h = base_histogram(&s);
        assert_eq!(h, BTreeMap::from([('A', 6), ('C', 3), ('T', 1)]));
        let e = DnaSequence::new("u", AlphabetId::Type3, "", Label::Unlabeled).unwrap();
        assert!(base_histogram(&e).is_empty());
        let t = DnaSequence::new("u", AlphabetId::Type3, "TTT", Label::Unlabeled).unwrap();
        assert_eq!(base_histogram(&t), BTreeMap::from([('T', 3)]));
    }

    #[test]
    fn sequence_rejects_foreign_symbols() {
        assert!(DnaSequence::new("u", AlphabetId::Type3, "AAG", Label::Unlabeled).is_err());
    }

    #[test]
    fn group_filters_empty_and_checks_ids() {
        let mk = |id: &str, s: &str| DnaSequence::new(id, AlphabetId::Type3, s, Label::Unlabeled).unwrap();
        let g = AccountGroup::new(vec![mk("a", "AC"), mk("b", ""), mk("c", "AT")]).unwrap();
        assert_eq!(g.len(), 2);
        assert!(AccountGroup::new(vec![mk("a", "AC"), mk("a", "AT")]).is_err());
        assert!(AccountGroup::new(vec![mk("a", "AC")]).is_err());
    }
}
