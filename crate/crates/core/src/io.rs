//! File formats: timeline and sequence JSON lines, curve CSV, detection
//! reports, and experiment tables.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::analysis::{derivative_of_lengths, smooth_lengths};
use crate::detection::{SplitMode, SplitResult, TrainedClassifier};
use crate::dna::{ActionKind, ActionRecord, AlphabetId, DnaSequence, Label, Timeline};
use crate::error::{Error, Result};
use crate::lcs::LcsCurve;
use crate::metrics::{ConfusionMatrix, MetricsReport};
use crate::synth::{BenchRecord, ImbalanceRecord, PermutationStats};

pub const TOOL_NAME: &str = "ddna";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CURVE_CSV_HEADER: &str = "k,lcs_length,smoothed_length,derivative,log10_abs_derivative,member_count,witness";

#[derive(Debug, Serialize, Deserialize)]
struct ActionLine {
    kind: ActionKind,
    urls: u64,
    hashtags: u64,
    mentions: u64,
    media: u64,
    ts: u64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TimelineLine {
    account_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<TruthLabel>,
    actions: Vec<ActionLine>,
}

/// Labels allowed in input files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum TruthLabel {
    Spambot,
    Genuine,
}

impl From<TruthLabel> for Label {
    fn from(t: TruthLabel) -> Self {
        match t {
            TruthLabel::Spambot => Label::Spambot,
            TruthLabel::Genuine => Label::Genuine,
        }
    }
}

fn truth_of(label: Label) -> Option<TruthLabel> {
    match label {
        Label::Spambot => Some(TruthLabel::Spambot),
        Label::Genuine => Some(TruthLabel::Genuine),
        Label::Unlabeled => None,
    }
}

/// Non-blank lines with their 1-based numbers.
fn numbered_lines(reader: impl BufRead) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok((i + 1, l))),
        Err(e) => Some(Err(Error::Io(e))),
    })
}

/// Reads one timeline per line.
///
/// Entity counts collapse to flags (count > 0) and actions are sorted by
/// timestamp, ties keeping input order. Blank lines are skipped; empty
/// input yields an empty list and a warning.
pub fn ingest_timelines(reader: impl BufRead) -> Result<Vec<Timeline>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for item in numbered_lines(reader) {
        let (line, text) = item?;
        let rec: TimelineLine =
            serde_json::from_str(&text).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        if rec.account_id.is_empty() {
            return Err(Error::Parse { line, message: "account_id is empty".into() });
        }
        if !seen.insert(rec.account_id.clone()) {
            return Err(Error::Parse { line, message: format!("duplicate account_id '{}'", rec.account_id) });
        }
        let mut actions: Vec<ActionRecord> = rec
            .actions
            .iter()
            .map(|a| ActionRecord {
                account_id: rec.account_id.clone(),
                kind: a.kind,
                has_url: a.urls > 0,
                has_hashtag: a.hashtags > 0,
                has_mention: a.mentions > 0,
                has_media: a.media > 0,
                timestamp: a.ts,
            })
            .collect();
        actions.sort_by_key(|a| a.timestamp);
        out.push(Timeline {
            account_id: rec.account_id,
            label: rec.label.map_or(Label::Unlabeled, Label::from),
            actions,
        });
    }
    if out.is_empty() {
        log::warn!("no timelines in input");
    }
    Ok(out)
}

/// Writes timelines in the ingest format; entity flags become counts 0/1.
pub fn write_timelines(mut w: impl Write, timelines: &[Timeline]) -> Result<()> {
    for t in timelines {
        let line = TimelineLine {
            account_id: t.account_id.clone(),
            label: truth_of(t.label),
            actions: t
                .actions
                .iter()
                .map(|a| ActionLine {
                    kind: a.kind,
                    urls: a.has_url as u64,
                    hashtags: a.has_hashtag as u64,
                    mentions: a.has_mention as u64,
                    media: a.has_media as u64,
                    ts: a.timestamp,
                })
                .collect(),
        };
        serde_json::to_writer(&mut w, &line).map_err(io_error)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

fn io_error(e: serde_json::Error) -> Error {
    Error::Io(e.into())
}

#[derive(Debug, Serialize, Deserialize)]
struct SequenceLine {
    account_id: String,
    alphabet: AlphabetId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<TruthLabel>,
    sequence: String,
}

/// Writes one `{account_id, alphabet, label?, sequence}` object per line.
pub fn write_sequences(mut w: impl Write, sequences: &[DnaSequence]) -> Result<()> {
    for s in sequences {
        let line = SequenceLine {
            account_id: s.account_id().to_string(),
            alphabet: s.alphabet(),
            label: truth_of(s.label()),
            sequence: s.symbols().to_string(),
        };
        serde_json::to_writer(&mut w, &line).map_err(io_error)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads a sequences file; symbols are validated against their alphabet.
pub fn read_sequences(reader: impl BufRead) -> Result<Vec<DnaSequence>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for item in numbered_lines(reader) {
        let (line, text) = item?;
        let rec: SequenceLine =
            serde_json::from_str(&text).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        if !seen.insert(rec.account_id.clone()) {
            return Err(Error::Parse { line, message: format!("duplicate account_id '{}'", rec.account_id) });
        }
        let label = rec.label.map_or(Label::Unlabeled, Label::from);
        let seq = DnaSequence::new(rec.account_id, rec.alphabet, rec.sequence, label)
            .map_err(|e| Error::Parse { line, message: e.to_string() })?;
        out.push(seq);
    }
    if out.is_empty() {
        log::warn!("no sequences in input");
    }
    Ok(out)
}

#[derive(Debug, Deserialize)]
struct LabelLine {
    account_id: String,
    label: Option<TruthLabel>,
}

/// Account → label from any JSON-lines file whose records carry
/// `account_id` and `label` (timelines, sequences, predictions). Records
/// without a label are skipped.
pub fn read_labels(reader: impl BufRead) -> Result<HashMap<String, Label>> {
    let mut out = HashMap::new();
    for item in numbered_lines(reader) {
        let (line, text) = item?;
        let rec: LabelLine = serde_json::from_str(&text).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        if let Some(l) = rec.label {
            if out.insert(rec.account_id.clone(), l.into()).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate account_id '{}'", rec.account_id) });
            }
        }
    }
    Ok(out)
}

/// Writes `{account_id, label}` lines in the given order.
pub fn write_labels(mut w: impl Write, labels: &[(String, Label)]) -> Result<()> {
    for (id, label) in labels {
        serde_json::to_writer(&mut w, &serde_json::json!({ "account_id": id, "label": label })).map_err(io_error)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Curve table: raw length, smoothed length, derivative of the smoothed
/// curve and its log magnitude, member count and witness for every k.
///
/// The derivative columns are empty at k = 2; the log column is also empty
/// where the derivative is zero.
pub fn write_curve_csv(mut w: impl Write, curve: &LcsCurve, window: usize) -> Result<()> {
    let lengths = curve.lengths();
    let smoothed = smooth_lengths(&lengths, window)?;
    let d = derivative_of_lengths(&smoothed);
    writeln!(w, "{CURVE_CSV_HEADER}")?;
    for (i, p) in curve.points().iter().enumerate() {
        let (deriv, log) = match d.at(p.k) {
            Some(v) if v != 0 => (v.to_string(), format!("{}", (v.unsigned_abs() as f64).log10())),
            Some(v) => (v.to_string(), String::new()),
            None => (String::new(), String::new()),
        };
        writeln!(w, "{},{},{},{},{},{},{}", p.k, p.length, smoothed[i], deriv, log, p.members.len(), p.witness)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportParameters {
    pub alphabet: Option<AlphabetId>,
    pub window: usize,
    /// The prominence floor actually used (the default is data-relative).
    pub min_prominence: Option<f64>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainingSummary {
    pub k_best: usize,
    pub threshold_length: usize,
    pub training_mcc: f64,
    pub confusion: ConfusionMatrix,
}

impl From<&TrainedClassifier> for TrainingSummary {
    fn from(c: &TrainedClassifier) -> Self {
        TrainingSummary {
            k_best: c.k_best,
            threshold_length: c.threshold_length,
            training_mcc: c.training_mcc,
            confusion: c.confusion,
        }
    }
}

/// Everything a detection run produced, as one JSON document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectReport {
    pub tool: String,
    pub version: String,
    pub mode: SplitMode,
    pub k_star: Option<usize>,
    pub threshold_length: Option<usize>,
    pub spambots: Vec<String>,
    pub genuine: Vec<String>,
    pub confusion: Option<ConfusionMatrix>,
    pub metrics: Option<MetricsReport>,
    pub training: Option<TrainingSummary>,
    pub parameters: ReportParameters,
}

impl DetectReport {
    pub fn new(split: &SplitResult, parameters: ReportParameters) -> Self {
        DetectReport {
            tool: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
            mode: split.mode,
            k_star: split.k_star,
            threshold_length: split.threshold_length,
            spambots: split.spambots.clone(),
            genuine: split.genuine.clone(),
            confusion: None,
            metrics: None,
            training: None,
            parameters,
        }
    }
}

pub fn write_report(mut w: impl Write, report: &DetectReport) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, report).map_err(io_error)?;
    w.write_all(b"\n")?;
    Ok(())
}

#[derive(Debug, Deserialize)]
struct ReportClasses {
    spambots: Vec<String>,
    genuine: Vec<String>,
}

/// Predictions from either a detection report or a labels file.
pub fn read_predictions(text: &str) -> Result<HashMap<String, Label>> {
    if let Ok(r) = serde_json::from_str::<ReportClasses>(text) {
        let mut out = HashMap::new();
        for (ids, label) in [(r.spambots, Label::Spambot), (r.genuine, Label::Genuine)] {
            for id in ids {
                if out.insert(id.clone(), label).is_some() {
                    return Err(Error::input(format!("account '{id}' listed twice in the report")));
                }
            }
        }
        return Ok(out);
    }
    read_labels(text.as_bytes())
}

/// `k,original,mean,std`.
pub fn write_permutation_csv(mut w: impl Write, stats: &PermutationStats) -> Result<()> {
    writeln!(w, "k,original,mean,std")?;
    for i in 0..stats.ks.len() {
        writeln!(w, "{},{},{},{}", stats.ks[i], stats.original[i], stats.mean[i], stats.std[i])?;
    }
    Ok(())
}

pub fn write_bench_csv(mut w: impl Write, records: &[BenchRecord]) -> Result<()> {
    writeln!(w, "alphabet,accounts,length,repeats,mean_secs,std_secs,mean_peak_bytes,std_peak_bytes")?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            r.alphabet, r.accounts, r.length, r.repeats, r.mean_secs, r.std_secs, r.mean_peak_bytes, r.std_peak_bytes
        )?;
    }
    Ok(())
}

pub fn write_imbalance_csv(mut w: impl Write, records: &[ImbalanceRecord]) -> Result<()> {
    writeln!(w, "ratio,bots,mean_mcc,std_mcc")?;
    for r in records {
        writeln!(w, "{},{},{},{}", r.ratio, r.bots, r.mean_mcc, r.std_mcc)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entity_counts_become_flags() {
        let input =
            r#"{"account_id":"u1","actions":[{"kind":"tweet","urls":1,"hashtags":0,"mentions":0,"media":0,"ts":10}]}"#;
        let t = ingest_timelines(input.as_bytes()).unwrap();
        assert_eq!(t.len(), 1);
        let a = &t[0].actions[0];
        assert!(a.has_url && !a.has_hashtag && !a.has_mention && !a.has_media);
        assert_eq!(t[0].label, Label::Unlabeled);
    }

    #[test]
    fn empty_input_is_empty_dataset() {
        assert!(ingest_timelines("".as_bytes()).unwrap().is_empty());
        assert!(ingest_timelines("\n  \n".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn duplicate_ids_rejected_with_line() {
        let input = "{\"account_id\":\"u1\",\"actions\":[]}\n{\"account_id\":\"u1\",\"actions\":[]}\n";
        match ingest_timelines(input.as_bytes()).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn malformed_and_unknown_kind() {
        let input = "{\"account_id\":\"u1\",\"actions\":[]}\n\n{not json\n";
        assert!(matches!(ingest_timelines(input.as_bytes()), Err(Error::Parse { line: 3, .. })));
        let input =
            r#"{"account_id":"u1","actions":[{"kind":"like","urls":0,"hashtags":0,"mentions":0,"media":0,"ts":1}]}"#;
        assert!(matches!(ingest_timelines(input.as_bytes()), Err(Error::Parse { line: 1, .. })));
        let input =
            r#"{"account_id":"u1","actions":[{"kind":"tweet","urls":-1,"hashtags":0,"mentions":0,"media":0,"ts":1}]}"#;
        assert!(matches!(ingest_timelines(input.as_bytes()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn actions_sorted_by_time() {
        let input = r#"{"account_id":"u","label":"spambot","actions":[{"kind":"reply","urls":0,"hashtags":0,"mentions":0,"media":0,"ts":20},{"kind":"tweet","urls":0,"hashtags":0,"mentions":0,"media":0,"ts":10}]}"#;
        let t = ingest_timelines(input.as_bytes()).unwrap();
        assert_eq!(t[0].label, Label::Spambot);
        assert_eq!(t[0].encode(AlphabetId::Type3).unwrap().symbols(), "AC");
    }

    #[test]
    fn sequences_round_trip() {
        let seqs = vec![
            DnaSequence::new("a", AlphabetId::Content6, "NUHMDX", Label::Spambot).unwrap(),
            DnaSequence::new("b", AlphabetId::Content6, "XX", Label::Unlabeled).unwrap(),
        ];
        let mut buf = Vec::new();
        write_sequences(&mut buf, &seqs).unwrap();
        assert_eq!(read_sequences(buf.as_slice()).unwrap(), seqs);
        let labels = read_labels(buf.as_slice()).unwrap();
        assert_eq!(labels.len(), 1);
        assert_eq!(labels["a"], Label::Spambot);
    }

    #[test]
    fn bad_symbol_names_line() {
        let input = "{\"account_id\":\"a\",\"alphabet\":\"type3\",\"sequence\":\"ACT\"}\n{\"account_id\":\"b\",\"alphabet\":\"type3\",\"sequence\":\"ACX\"}\n";
        assert!(matches!(read_sequences(input.as_bytes()), Err(Error::Parse { line: 2, .. })));
    }
}
