//! Seeded synthetic corpora and the experiments run on them.
//!
//! Humans are i.i.d. uniform over the alphabet. Bots share one random
//! template embedded at a random offset, surrounded by filler drawn from a
//! skewed distribution where one base dominates.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::DEFAULT_WINDOW;
use crate::detection::unsupervised_split;
use crate::dna::{encode_sequence, AccountGroup, ActionKind, ActionRecord, AlphabetId, DnaSequence, Label, Timeline};
use crate::error::{Error, Result};
use crate::lcs::{build_index, group_curve};
use crate::mem;
use crate::metrics::{compute_metrics, ConfusionMatrix};

/// Probability of the dominant base in bot filler.
pub const DOMINANT_BASE_PROB: f64 = 0.7;

/// How the bot template gets corrupted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseModel {
    /// Each bot's template copy is corrupted with probability `noise_rate`;
    /// a corrupted copy has every position redrawn uniformly.
    PerAccount,
    /// Every template position of every bot is redrawn uniformly with
    /// probability `noise_rate`.
    PerPosition,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorConfig {
    pub alphabet: AlphabetId,
    pub n_accounts: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub template_length: usize,
    pub noise_rate: f64,
    pub noise_model: NoiseModel,
    pub seed: u64,
    /// Account ids are `{id_prefix}{index}`.
    pub id_prefix: String,
}

impl GeneratorConfig {
    pub fn humans(n_accounts: usize, seed: u64) -> Self {
        GeneratorConfig {
            alphabet: AlphabetId::Type3,
            n_accounts,
            min_len: 180,
            max_len: 220,
            template_length: 0,
            noise_rate: 0.0,
            noise_model: NoiseModel::PerAccount,
            seed,
            id_prefix: "human-".into(),
        }
    }

    pub fn bots(n_accounts: usize, template_length: usize, noise_rate: f64, seed: u64) -> Self {
        GeneratorConfig { template_length, noise_rate, id_prefix: "bot-".into(), ..Self::humans(n_accounts, seed) }
    }

    pub fn with_alphabet(mut self, alphabet: AlphabetId) -> Self {
        self.alphabet = alphabet;
        self
    }

    pub fn with_lengths(mut self, min_len: usize, max_len: usize) -> Self {
        self.min_len = min_len;
        self.max_len = max_len;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n_accounts == 0 {
            return Err(Error::config("n_accounts must be at least 1"));
        }
        if self.min_len == 0 || self.min_len > self.max_len {
            return Err(Error::config(format!("invalid length range [{}, {}]", self.min_len, self.max_len)));
        }
        if !(0.0..=1.0).contains(&self.noise_rate) {
            return Err(Error::config(format!("noise_rate {} outside [0, 1]", self.noise_rate)));
        }
        if self.template_length > self.min_len {
            return Err(Error::config(format!(
                "template_length {} exceeds the minimum sequence length {}",
                self.template_length, self.min_len
            )));
        }
        Ok(())
    }
}

/// Independent stream seed for `(master, stream)`; splitmix64 finalizer.
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform draws over `n_symbols`, one vector per account.
fn draw_humans(config: &GeneratorConfig, n_symbols: usize) -> Vec<Vec<usize>> {
    let mut rng = rng_for(config.seed);
    (0..config.n_accounts)
        .map(|_| {
            let len = rng.gen_range(config.min_len..=config.max_len);
            (0..len).map(|_| rng.gen_range(0..n_symbols)).collect()
        })
        .collect()
}

/// Planted-template draws over `n_symbols`, one vector per account.
fn draw_bots(config: &GeneratorConfig, n_symbols: usize) -> Vec<Vec<usize>> {
    let mut rng = rng_for(config.seed);
    let dominant = rng.gen_range(0..n_symbols);
    let template: Vec<usize> = (0..config.template_length).map(|_| rng.gen_range(0..n_symbols)).collect();
    let filler = |rng: &mut ChaCha8Rng| -> usize {
        if n_symbols == 1 || rng.gen_bool(DOMINANT_BASE_PROB) {
            dominant
        } else {
            let j = rng.gen_range(0..n_symbols - 1);
            if j >= dominant {
                j + 1
            } else {
                j
            }
        }
    };

    (0..config.n_accounts)
        .map(|_| {
            let len = rng.gen_range(config.min_len..=config.max_len);
            let offset = rng.gen_range(0..=len - template.len());
            let corrupt_all = config.noise_model == NoiseModel::PerAccount && rng.gen_bool(config.noise_rate);
            let mut s = Vec::with_capacity(len);
            for _ in 0..offset {
                s.push(filler(&mut rng));
            }
            for &c in &template {
                let corrupt = match config.noise_model {
                    NoiseModel::PerAccount => corrupt_all,
                    NoiseModel::PerPosition => rng.gen_bool(config.noise_rate),
                };
                s.push(if corrupt { rng.gen_range(0..n_symbols) } else { c });
            }
            for _ in offset + template.len()..len {
                s.push(filler(&mut rng));
            }
            s
        })
        .collect()
}

fn to_sequences(config: &GeneratorConfig, draws: Vec<Vec<usize>>, label: Label) -> Result<Vec<DnaSequence>> {
    let bases = config.alphabet.alphabet().bases();
    draws
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let s: String = d.into_iter().map(|j| bases[j]).collect();
            DnaSequence::new(format!("{}{i}", config.id_prefix), config.alphabet, s, label)
        })
        .collect()
}

/// Uniform random sequences, labeled genuine.
pub fn gen_humans(config: &GeneratorConfig) -> Result<Vec<DnaSequence>> {
    config.validate()?;
    to_sequences(config, draw_humans(config, config.alphabet.alphabet().len()), Label::Genuine)
}

/// Planted-template sequences, labeled spambot.
pub fn gen_bots(config: &GeneratorConfig) -> Result<Vec<DnaSequence>> {
    config.validate()?;
    to_sequences(config, draw_bots(config, config.alphabet.alphabet().len()), Label::Spambot)
}

/// Action kinds times the six content classes (none, url, hashtag,
/// mention, media, url + hashtag).
const JOINT_ACTIONS: usize = 18;

fn joint_action(symbol: usize, account_id: &str, timestamp: u64) -> ActionRecord {
    let kind = [ActionKind::Tweet, ActionKind::Reply, ActionKind::Retweet][symbol / 6];
    let mut a = ActionRecord::new(account_id, kind, timestamp);
    match symbol % 6 {
        1 => a.has_url = true,
        2 => a.has_hashtag = true,
        3 => a.has_mention = true,
        4 => a.has_media = true,
        5 => {
            a.has_url = true;
            a.has_hashtag = true;
        }
        _ => {}
    }
    a
}

/// Mixed corpus at the timeline level.
///
/// Every action carries a kind and a content pattern, so the same corpus can
/// be encoded under any alphabet. Bots share one template of whole actions;
/// humans draw kind and content uniformly. `spec.alphabet` is ignored.
pub fn gen_mixed_timelines(spec: &MixSpec, seed: u64) -> Result<Vec<Timeline>> {
    let bots = GeneratorConfig {
        alphabet: spec.alphabet,
        n_accounts: spec.n_bots,
        min_len: spec.min_len,
        max_len: spec.max_len,
        template_length: spec.template_length,
        noise_rate: spec.noise_rate,
        noise_model: spec.noise_model,
        seed: derive_seed(seed, 1),
        id_prefix: "bot-".into(),
    };
    let humans = GeneratorConfig::humans(spec.n_humans, derive_seed(seed, 2)).with_lengths(spec.min_len, spec.max_len);
    let mut out = Vec::with_capacity(spec.n_bots + spec.n_humans);
    for (cfg, label) in [(&bots, Label::Spambot), (&humans, Label::Genuine)] {
        if cfg.n_accounts == 0 {
            continue;
        }
        cfg.validate()?;
        let draws = match label {
            Label::Spambot => draw_bots(cfg, JOINT_ACTIONS),
            _ => draw_humans(cfg, JOINT_ACTIONS),
        };
        for (i, d) in draws.into_iter().enumerate() {
            let id = format!("{}{i}", cfg.id_prefix);
            let actions = d.iter().enumerate().map(|(t, &sym)| joint_action(sym, &id, 60 * t as u64)).collect();
            out.push(Timeline { account_id: id, label, actions });
        }
    }
    Ok(out)
}

/// Encodes timelines, carrying their labels over.
pub fn encode_timelines(timelines: &[Timeline], alphabet: AlphabetId) -> Result<Vec<DnaSequence>> {
    timelines.iter().map(|t| t.encode(alphabet)).collect()
}

/// Canonical action for a base: the inverse of encoding, used to turn
/// synthetic sequences into timelines.
pub fn action_for_base(alphabet: AlphabetId, base: char, account_id: &str, timestamp: u64) -> Result<ActionRecord> {
    let mut a = ActionRecord::new(account_id, ActionKind::Tweet, timestamp);
    match (alphabet, base) {
        (AlphabetId::Type3, 'A') => {}
        (AlphabetId::Type3, 'C') => a.kind = ActionKind::Reply,
        (AlphabetId::Type3, 'T') => a.kind = ActionKind::Retweet,
        (AlphabetId::Content3 | AlphabetId::Content6, 'N') => {}
        (AlphabetId::Content3, 'E') | (AlphabetId::Content6, 'U') => a.has_url = true,
        (AlphabetId::Content6, 'H') => a.has_hashtag = true,
        (AlphabetId::Content6, 'M') => a.has_mention = true,
        (AlphabetId::Content6, 'D') => a.has_media = true,
        (AlphabetId::Content3 | AlphabetId::Content6, 'X') => {
            a.has_url = true;
            a.has_hashtag = true;
        }
        _ => return Err(Error::input(format!("'{base}' is not a base of {alphabet}"))),
    }
    Ok(a)
}

/// Timeline whose encoding under the sequence's alphabet is the sequence.
pub fn sequence_to_actions(seq: &DnaSequence, start_ts: u64) -> Result<Vec<ActionRecord>> {
    seq.symbols()
        .chars()
        .enumerate()
        .map(|(i, c)| action_for_base(seq.alphabet(), c, seq.account_id(), start_ts + 60 * i as u64))
        .collect()
}

/// Mean/std of permuted LCS lengths per k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermutationStats {
    /// k = 2..=M
    pub ks: Vec<usize>,
    pub original: Vec<usize>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
    pub trials: usize,
    /// Every trial kept every sequence's length and base counts.
    pub histograms_preserved: bool,
}

/// The group with every sequence independently shuffled, for one trial.
pub fn permuted_group(group: &AccountGroup, seed: u64, trial: usize) -> Result<AccountGroup> {
    let mut rng = rng_for(derive_seed(seed, trial as u64));
    let seqs = group
        .sequences()
        .iter()
        .map(|s| {
            let mut chars: Vec<char> = s.symbols().chars().collect();
            chars.shuffle(&mut rng);
            DnaSequence::new(s.account_id(), s.alphabet(), chars.into_iter().collect::<String>(), s.label())
        })
        .collect::<Result<Vec<_>>>()?;
    AccountGroup::new(seqs)
}

/// Monte Carlo permutation experiment. Trials run in parallel; trial `t`
/// uses the stream `derive_seed(seed, t)`, so results do not depend on
/// scheduling.
pub fn permute_sequences(group: &AccountGroup, trials: usize, seed: u64) -> Result<PermutationStats> {
    if trials < 1 {
        return Err(Error::config("trials must be at least 1"));
    }
    let original = group_curve(group)?.lengths();
    let runs: Vec<(Vec<usize>, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = permuted_group(group, seed, t)?;
            let same = g
                .sequences()
                .iter()
                .zip(group.sequences())
                .all(|(p, o)| crate::dna::base_histogram(p) == crate::dna::base_histogram(o));
            Ok((group_curve(&g)?.lengths(), same))
        })
        .collect::<Result<_>>()?;

    let (mean, std) = mean_std_columns(&runs.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>());
    Ok(PermutationStats {
        ks: (2..=group.len()).collect(),
        original,
        mean,
        std,
        trials,
        histograms_preserved: runs.iter().all(|(_, ok)| *ok),
    })
}

fn mean_std_columns(rows: &[Vec<usize>]) -> (Vec<f64>, Vec<f64>) {
    (0..rows[0].len())
        .map(|j| {
            let xs: Vec<f64> = rows.iter().map(|r| r[j] as f64).collect();
            mean_std(&xs)
        })
        .unzip()
}

/// Population mean and standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Mixed corpus: `n_bots` planted bots followed by `n_humans` humans.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixSpec {
    pub alphabet: AlphabetId,
    pub n_bots: usize,
    pub n_humans: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub template_length: usize,
    pub noise_rate: f64,
    pub noise_model: NoiseModel,
}

impl Default for MixSpec {
    fn default() -> Self {
        MixSpec {
            alphabet: AlphabetId::Type3,
            n_bots: 500,
            n_humans: 500,
            min_len: 180,
            max_len: 220,
            template_length: 40,
            noise_rate: 0.05,
            noise_model: NoiseModel::PerAccount,
        }
    }
}

/// Generates a labeled mixed corpus; bots and humans use separate streams
/// derived from `seed`.
pub fn gen_mixed(spec: &MixSpec, seed: u64) -> Result<Vec<DnaSequence>> {
    let mut out = Vec::with_capacity(spec.n_bots + spec.n_humans);
    if spec.n_bots > 0 {
        let bots = GeneratorConfig {
            alphabet: spec.alphabet,
            n_accounts: spec.n_bots,
            min_len: spec.min_len,
            max_len: spec.max_len,
            template_length: spec.template_length,
            noise_rate: spec.noise_rate,
            noise_model: spec.noise_model,
            seed: derive_seed(seed, 1),
            id_prefix: "bot-".into(),
        };
        out.extend(gen_bots(&bots)?);
    }
    if spec.n_humans > 0 {
        let humans = GeneratorConfig::humans(spec.n_humans, derive_seed(seed, 2))
            .with_alphabet(spec.alphabet)
            .with_lengths(spec.min_len, spec.max_len);
        out.extend(gen_humans(&humans)?);
    }
    Ok(out)
}

/// MCC of a split against the labels carried by the sequences.
pub fn planted_mcc(split: &crate::detection::SplitResult, seqs: &[DnaSequence]) -> Result<f64> {
    let predicted = split.predictions();
    let mut cm = ConfusionMatrix::default();
    for s in seqs {
        let p = predicted.get(s.account_id()).copied().unwrap_or(Label::Genuine);
        cm.record(p == Label::Spambot, s.label() == Label::Spambot);
    }
    Ok(compute_metrics(&cm)?.mcc)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImbalanceRecord {
    pub ratio: f64,
    pub bots: usize,
    pub mean_mcc: f64,
    pub std_mcc: f64,
    pub mccs: Vec<f64>,
}

/// Unsupervised detection on corpora with a varying share of bots.
///
/// For every ratio, `runs` corpora of `total_accounts` are drawn with
/// `round(ratio * total)` bots; each is split with the default window and
/// prominence and scored against the planted labels.
pub fn imbalance_experiment(
    ratios: &[f64],
    total_accounts: usize,
    runs: usize,
    seed: u64,
    base: &MixSpec,
) -> Result<Vec<ImbalanceRecord>> {
    if runs < 1 {
        return Err(Error::config("runs must be at least 1"));
    }
    let mut out = Vec::with_capacity(ratios.len());
    for (ri, &ratio) in ratios.iter().enumerate() {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(Error::config(format!("ratio {ratio} outside (0, 1]")));
        }
        let bots = (ratio * total_accounts as f64).round() as usize;
        if bots < 2 || bots > total_accounts {
            return Err(Error::config(format!("ratio {ratio} of {total_accounts} accounts gives {bots} bots")));
        }
        let spec = MixSpec { n_bots: bots, n_humans: total_accounts - bots, ..base.clone() };
        let mccs: Vec<f64> = (0..runs)
            .into_par_iter()
            .map(|r| {
                let run_seed = derive_seed(seed, ((ri as u64) << 32) | r as u64);
                let seqs = gen_mixed(&spec, run_seed)?;
                let group = AccountGroup::new(seqs.clone())?;
                let curve = group_curve(&group)?;
                let split = unsupervised_split(&curve, DEFAULT_WINDOW, None)?;
                planted_mcc(&split, &seqs)
            })
            .collect::<Result<_>>()?;
        let (mean_mcc, std_mcc) = mean_std(&mccs);
        out.push(ImbalanceRecord { ratio, bots, mean_mcc, std_mcc, mccs });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub alphabet: AlphabetId,
    pub accounts: usize,
    pub length: usize,
    pub repeats: usize,
    pub mean_secs: f64,
    pub std_secs: f64,
    pub mean_peak_bytes: f64,
    pub std_peak_bytes: f64,
}

/// Share of bots in benchmark corpora.
const BENCH_BOT_SHARE: f64 = 0.1;

/// Times the encode → index → curve → split pipeline.
///
/// Corpora are generated as timelines beforehand (10% planted bots, all
/// sequences exactly `length` long); only the pipeline is measured. Peak
/// memory is the allocation high-water mark above the pre-call baseline
/// and reads 0 unless [`mem::PeakAlloc`] is the global allocator.
pub fn benchmark(
    account_counts: &[usize],
    sequence_lengths: &[usize],
    alphabets: &[AlphabetId],
    repeats: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    if repeats < 1 {
        return Err(Error::config("repeats must be at least 1"));
    }
    if !mem::tracking_active() {
        log::warn!("peak-memory tracking allocator not installed; memory columns will read 0");
    }
    let mut out = Vec::new();
    for &alphabet in alphabets {
        for &length in sequence_lengths {
            let mut specs = Vec::with_capacity(account_counts.len());
            for &accounts in account_counts {
                if accounts < 3 {
                    return Err(Error::config("benchmark needs at least 3 accounts"));
                }
                let n_bots = ((accounts as f64 * BENCH_BOT_SHARE).round() as usize).max(1);
                specs.push(MixSpec {
                    alphabet,
                    n_bots,
                    n_humans: accounts - n_bots,
                    min_len: length,
                    max_len: length,
                    template_length: (length / 5).max(1),
                    ..MixSpec::default()
                });
            }
            // Sizes are interleaved within each repeat so that slow phases of
            // the host hit every size alike instead of skewing one mean.
            let mut secs = vec![Vec::with_capacity(repeats); specs.len()];
            let mut peaks = vec![Vec::with_capacity(repeats); specs.len()];
            for r in 0..repeats {
                for (i, spec) in specs.iter().enumerate() {
                    let seqs = gen_mixed(spec, derive_seed(seed, r as u64))?;
                    let timelines: Vec<Vec<ActionRecord>> =
                        seqs.iter().map(|s| sequence_to_actions(s, 0)).collect::<Result<_>>()?;
                    drop(seqs);
                    let baseline = mem::reset_peak();
                    let start = Instant::now();
                    let split = run_pipeline(&timelines, alphabet)?;
                    secs[i].push(start.elapsed().as_secs_f64());
                    peaks[i].push(mem::peak_bytes_since_reset(baseline) as f64);
                    drop(split);
                }
            }
            for (i, &accounts) in account_counts.iter().enumerate() {
                let (mean_secs, std_secs) = mean_std(&secs[i]);
                let (mean_peak_bytes, std_peak_bytes) = mean_std(&peaks[i]);
                out.push(BenchRecord {
                    alphabet,
                    accounts,
                    length,
                    repeats,
                    mean_secs,
                    std_secs,
                    mean_peak_bytes,
                    std_peak_bytes,
                });
            }
        }
    }
    Ok(out)
}

fn run_pipeline(timelines: &[Vec<ActionRecord>], alphabet: AlphabetId) -> Result<crate::detection::SplitResult> {
    let seqs = timelines.iter().map(|t| encode_sequence(t, alphabet)).collect::<Result<Vec<_>>>()?;
    let group = AccountGroup::new(seqs)?;
    let index = build_index(&group)?;
    let curve = index.common_substring_curve();
    drop(index);
    unsupervised_split(&curve, DEFAULT_WINDOW, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_accounts_rejected() {
        assert!(gen_humans(&GeneratorConfig::humans(0, 1)).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let c = GeneratorConfig::humans(20, 7);
        assert_eq!(gen_humans(&c).unwrap(), gen_humans(&c).unwrap());
        let b = GeneratorConfig::bots(20, 10, 0.3, 7);
        assert_eq!(gen_bots(&b).unwrap(), gen_bots(&b).unwrap());
        let other = GeneratorConfig::humans(20, 8);
        assert_ne!(gen_humans(&c).unwrap(), gen_humans(&other).unwrap());
    }

    #[test]
    fn template_longer_than_sequences_rejected() {
        let b = GeneratorConfig::bots(5, 50, 0.0, 1).with_lengths(40, 60);
        assert!(gen_bots(&b).unwrap_err().is_config());
    }

    #[test]
    fn noise_free_template_is_verbatim() {
        for model in [NoiseModel::PerAccount, NoiseModel::PerPosition] {
            let cfg = GeneratorConfig { noise_model: model, ..GeneratorConfig::bots(30, 25, 0.0, 3) };
            let bots = gen_bots(&cfg).unwrap();
            let first = bots[0].symbols();
            // some length-25 window of the first bot is common to all
            let shared =
                (0..=first.len() - 25).map(|i| &first[i..i + 25]).any(|w| bots.iter().all(|b| b.symbols().contains(w)));
            assert!(shared);
        }
    }

    #[test]
    fn human_base_frequencies_are_uniform() {
        let cfg = GeneratorConfig::humans(1000, 11).with_lengths(500, 600);
        for s in gen_humans(&cfg).unwrap() {
            let h = crate::dna::base_histogram(&s);
            for b in ['A', 'C', 'T'] {
                let f = *h.get(&b).unwrap_or(&0) as f64 / s.len() as f64;
                assert!((f - 1.0 / 3.0).abs() <= 0.05 + 0.03, "{f}");
            }
        }
    }

    #[test]
    fn actions_round_trip_through_encoding() {
        for alphabet in AlphabetId::ALL {
            let cfg = GeneratorConfig::bots(5, 10, 0.2, 5).with_alphabet(alphabet);
            for s in gen_bots(&cfg).unwrap() {
                let actions = sequence_to_actions(&s, 1_000).unwrap();
                assert_eq!(encode_sequence(&actions, alphabet).unwrap().symbols(), s.symbols());
            }
        }
    }

    #[test]
    fn single_symbol_sequences_survive_permutation() {
        let seqs = (0..4)
            .map(|i| DnaSequence::new(format!("s{i}"), AlphabetId::Type3, "AAAA", Label::Unlabeled).unwrap())
            .collect();
        let g = AccountGroup::new(seqs).unwrap();
        let stats = permute_sequences(&g, 10, 1).unwrap();
        assert_eq!(stats.original, vec![4, 4, 4]);
        assert!(stats.mean.iter().all(|&m| m == 4.0));
        assert!(stats.std.iter().all(|&s| s == 0.0));
        assert!(stats.histograms_preserved);
        assert!(permute_sequences(&g, 0, 1).is_err());
    }

    #[test]
    fn single_repeat_has_zero_spread() {
        let r = benchmark(&[20], &[30], &[AlphabetId::Content3], 1, 3).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].std_secs, 0.0);
        assert_eq!(r[0].std_peak_bytes, 0.0);
    }
}
