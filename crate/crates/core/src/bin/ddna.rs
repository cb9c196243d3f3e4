use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use digital_dna::analysis::{default_min_prominence, derivative, smooth, DEFAULT_WINDOW};
use digital_dna::detection::{divisive_cluster, supervised_classify, supervised_train, unsupervised_split};
use digital_dna::io::{self as dio, DetectReport, ReportParameters, TrainingSummary};
use digital_dna::mem::PeakAlloc;
use digital_dna::metrics::{compute_metrics, confusion_matrix, ConfusionMatrix, MetricsReport};
use digital_dna::synth::{self, MixSpec, NoiseModel};
use digital_dna::{group_curve, AccountGroup, AlphabetId, DnaSequence, Error, Label, Result};

#[global_allocator]
static ALLOC: PeakAlloc = PeakAlloc;

const DEFAULT_SEED: u64 = 42;

#[derive(Parser)]
#[command(name = "ddna", version, about = "Digital DNA group analysis and spambot detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode timelines (JSON lines) into DNA sequences.
    Encode(EncodeArgs),
    /// Compute the LCS curve of a group of sequences as CSV.
    Curve(CurveArgs),
    /// Split a group into spambots and genuine accounts.
    Detect(DetectArgs),
    /// Score predictions against ground truth.
    Eval(EvalArgs),
    /// Generate a seeded synthetic corpus.
    Synth(SynthArgs),
    /// Monte Carlo permutation experiment on a group.
    Permute(PermuteArgs),
    /// Time the encode-to-split pipeline on synthetic corpora.
    Bench(BenchArgs),
    /// Detection quality as the share of bots varies.
    Imbalance(ImbalanceArgs),
    /// Top-down split tree of a group.
    Cluster(ClusterArgs),
}

#[derive(Args)]
struct Io {
    /// Input file; `-` reads stdin.
    #[arg(short, long, default_value = "-")]
    input: PathBuf,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EncodeArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value = "type3")]
    alphabet: AlphabetId,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Supervised,
    Unsupervised,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, value_enum, default_value = "unsupervised")]
    mode: Mode,
    /// Labeled sequences to learn the threshold from (supervised mode).
    #[arg(long)]
    train: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    /// Defaults to max(1, 2 x median nonzero |derivative|).
    #[arg(long)]
    min_prominence: Option<f64>,
    /// Ground-truth labels; defaults to the input's own labels when every
    /// input account carries one.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Recorded in the report.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct EvalArgs {
    /// Detection report or labels file.
    #[arg(long)]
    predictions: PathBuf,
    #[arg(long)]
    truth: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthFormat {
    Timelines,
    Sequences,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    PerAccount,
    PerPosition,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 500)]
    humans: usize,
    #[arg(long, default_value_t = 500)]
    bots: usize,
    #[arg(long, default_value_t = 40)]
    template_len: usize,
    #[arg(long, default_value_t = 0.05)]
    noise: f64,
    #[arg(long, value_enum, default_value = "per-account")]
    noise_model: NoiseArg,
    #[arg(long, default_value_t = 180)]
    min_len: usize,
    #[arg(long, default_value_t = 220)]
    max_len: usize,
    #[arg(long, default_value = "type3")]
    alphabet: AlphabetId,
    #[arg(long, value_enum, default_value = "timelines")]
    format: SynthFormat,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PermuteArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "250,500,1000,2000")]
    accounts: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "200")]
    lengths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "type3")]
    alphabets: Vec<AlphabetId>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ImbalanceArgs {
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.02,0.03,0.04,0.05,0.06,0.07,0.08,0.09,0.1")]
    ratios: Vec<f64>,
    #[arg(long, default_value_t = 5000)]
    total: usize,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    #[arg(long)]
    min_prominence: Option<f64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 2 } else { 1 })
        }
    }
}

#[derive(serde::Serialize)]
struct EvalReport {
    confusion: ConfusionMatrix,
    metrics: MetricsReport,
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let f = File::open(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Ok(Box::new(BufReader::new(f)))
    }
}

fn read_text(path: &Path) -> Result<String> {
    let mut s = String::new();
    open_input(path)?.read_to_string(&mut s)?;
    Ok(s)
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => Ok(Box::new(BufWriter::new(File::create(p)?))),
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn seed_or_default(seed: Option<u64>) -> u64 {
    let s = seed.unwrap_or(DEFAULT_SEED);
    eprintln!("seed: {s}");
    s
}

fn load_group(path: &Path) -> Result<AccountGroup> {
    AccountGroup::new(dio::read_sequences(open_input(path)?)?)
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Encode(a) => {
            let timelines = dio::ingest_timelines(open_input(&a.io.input)?)?;
            let seqs = timelines.iter().map(|t| t.encode(a.alphabet)).collect::<Result<Vec<_>>>()?;
            let mut out = open_output(a.io.output.as_deref())?;
            dio::write_sequences(&mut out, &seqs)?;
            out.flush()?;
        }
        Command::Curve(a) => {
            let curve = group_curve(&load_group(&a.io.input)?)?;
            let mut out = open_output(a.io.output.as_deref())?;
            dio::write_curve_csv(&mut out, &curve, a.window)?;
            out.flush()?;
        }
        Command::Detect(a) => detect(a)?,
        Command::Eval(a) => {
            let predicted = dio::read_predictions(&read_text(&a.predictions)?)?;
            let truth = dio::read_labels(open_input(&a.truth)?)?;
            let cm = confusion_matrix(&predicted, &truth)?;
            let metrics = compute_metrics(&cm)?;
            let mut out = open_output(a.output.as_deref())?;
            serde_json::to_writer_pretty(&mut out, &EvalReport { confusion: cm, metrics })
                .map_err(|e| Error::Io(e.into()))?;
            writeln!(out)?;
            out.flush()?;
        }
        Command::Synth(a) => {
            let seed = seed_or_default(a.seed);
            let spec = MixSpec {
                alphabet: a.alphabet,
                n_bots: a.bots,
                n_humans: a.humans,
                min_len: a.min_len,
                max_len: a.max_len,
                template_length: a.template_len,
                noise_rate: a.noise,
                noise_model: match a.noise_model {
                    NoiseArg::PerAccount => NoiseModel::PerAccount,
                    NoiseArg::PerPosition => NoiseModel::PerPosition,
                },
            };
            if a.bots + a.humans == 0 {
                return Err(Error::InvalidConfig("nothing to generate".into()));
            }
            let mut out = open_output(a.output.as_deref())?;
            match a.format {
                SynthFormat::Timelines => dio::write_timelines(&mut out, &synth::gen_mixed_timelines(&spec, seed)?)?,
                SynthFormat::Sequences => dio::write_sequences(&mut out, &synth::gen_mixed(&spec, seed)?)?,
            }
            out.flush()?;
        }
        Command::Permute(a) => {
            let seed = seed_or_default(a.seed);
            let stats = synth::permute_sequences(&load_group(&a.io.input)?, a.trials, seed)?;
            if !stats.histograms_preserved {
                log::error!("a permutation changed a base histogram");
            }
            let mut out = open_output(a.io.output.as_deref())?;
            dio::write_permutation_csv(&mut out, &stats)?;
            out.flush()?;
        }
        Command::Bench(a) => {
            let seed = seed_or_default(a.seed);
            let records = synth::benchmark(&a.accounts, &a.lengths, &a.alphabets, a.repeats, seed)?;
            let mut out = open_output(a.output.as_deref())?;
            dio::write_bench_csv(&mut out, &records)?;
            out.flush()?;
        }
        Command::Imbalance(a) => {
            let seed = seed_or_default(a.seed);
            let records = synth::imbalance_experiment(&a.ratios, a.total, a.runs, seed, &MixSpec::default())?;
            let mut out = open_output(a.output.as_deref())?;
            dio::write_imbalance_csv(&mut out, &records)?;
            out.flush()?;
        }
        Command::Cluster(a) => {
            let group = load_group(&a.io.input)?;
            let curve = group_curve(&group)?;
            let tree = divisive_cluster(&curve, &group, a.max_depth, a.window, a.min_prominence)?;
            let mut out = open_output(a.io.output.as_deref())?;
            serde_json::to_writer_pretty(&mut out, &tree).map_err(|e| Error::Io(e.into()))?;
            writeln!(out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn labels_of(seqs: &[DnaSequence]) -> Option<HashMap<String, Label>> {
    seqs.iter()
        .map(|s| match s.label() {
            Label::Unlabeled => None,
            l => Some((s.account_id().to_string(), l)),
        })
        .collect()
}

fn detect(a: DetectArgs) -> Result<()> {
    if let Some(p) = a.min_prominence {
        if p.is_nan() || p < 0.0 {
            return Err(Error::InvalidConfig(format!("min_prominence must be non-negative, got {p}")));
        }
    }
    let group = load_group(&a.io.input)?;
    let curve = group_curve(&group)?;

    let (split, prominence, training) = match a.mode {
        Mode::Unsupervised => {
            let prominence = match a.min_prominence {
                Some(p) => p,
                None => default_min_prominence(&derivative(&smooth(&curve, a.window)?)?),
            };
            (unsupervised_split(&curve, a.window, Some(prominence))?, Some(prominence), None)
        }
        Mode::Supervised => {
            let train_path =
                a.train.as_ref().ok_or_else(|| Error::InvalidConfig("supervised mode needs --train".into()))?;
            let train_group = load_group(train_path)?;
            let labels = labels_of(train_group.sequences())
                .ok_or_else(|| Error::InvalidInput("every training account needs a label".into()))?;
            let clf = supervised_train(&group_curve(&train_group)?, &labels)?;
            (supervised_classify(&curve, &clf), None, Some(TrainingSummary::from(&clf)))
        }
    };

    let mut report = DetectReport::new(
        &split,
        ReportParameters {
            alphabet: Some(group.alphabet()),
            window: a.window,
            min_prominence: prominence,
            seed: a.seed,
        },
    );
    report.training = training;
    let truth = match &a.truth {
        Some(p) => Some(dio::read_labels(open_input(p)?)?),
        None => labels_of(group.sequences()),
    };
    if let Some(truth) = truth {
        let cm = confusion_matrix(&split.predictions(), &truth)?;
        report.metrics = Some(compute_metrics(&cm)?);
        report.confusion = Some(cm);
    }
    let mut out = open_output(a.io.output.as_deref())?;
    dio::write_report(&mut out, &report)?;
    out.flush()?;
    Ok(())
}
