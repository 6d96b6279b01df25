//! `ffp`: build, apply and inspect fuzzy fingerprint classifiers.
//!
//! Every subcommand reads and writes plain files. Machine-readable results go
//! to the paths given on the command line; a short summary goes to stdout and
//! warnings to stderr.
//!
//! Exit codes: 0 success, 2 malformed input, 3 dimension mismatch,
//! 4 bad configuration or usage, 5 I/O failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ffp_core::dataio::{
    conversations_to_documents, generate_synthetic, load_library, read_conversations, read_dataset,
    read_predictions, read_vocabulary, save_library, skewed_counts, stratified_split,
    vectorize_text, write_dataset, write_predictions, write_scores, write_vocabulary,
    LabeledDataset, Prediction, SyntheticSpec,
};
use ffp_core::eval::{diff_baseline, evaluate, run_seeds, sweep_k, NearestCentroid, SeedSource};
use ffp_core::explain::{
    emit_plot_data, intersect, render_classification, render_fingerprint, render_library,
    shared_features, PlotData, RenderStyle,
};
use ffp_core::{
    classify::classify_with_id, classify_dataset, fingerprint_instance, FfpError,
    FingerprintLibrary, FingerprintParams, NormRule, Result, DEFAULT_SLOPE,
};

#[derive(Parser, Debug)]
#[command(
    name = "ffp",
    version,
    about = "Fuzzy fingerprint classification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a fingerprint library from a labelled dataset.
    Build(BuildArgs),
    /// Classify every instance of a dataset against a library.
    Classify(ClassifyArgs),
    /// Score predictions against gold labels.
    Eval(EvalArgs),
    /// Macro-F1 on a validation set for a list of k values.
    Sweep(SweepArgs),
    /// Instances where the fingerprint classifier and a baseline disagree.
    Diff(DiffArgs),
    /// Render fingerprints, intersections and shared features.
    Explain(ExplainArgs),
    /// Write a synthetic labelled dataset.
    Generate(GenerateArgs),
    /// Turn a conversation file into bag-of-words vectors.
    Vectorize(VectorizeArgs),
    /// Repeat a synthetic train/test run over several seeds.
    Seeds(SeedsArgs),
}

#[derive(Args, Debug)]
struct FingerprintOpts {
    /// Fingerprint size.
    #[arg(long)]
    k: usize,
    /// Membership slope.
    #[arg(long, default_value_t = DEFAULT_SLOPE)]
    a: f64,
    /// Similarity normaliser: `k` or a positive number.
    #[arg(long, default_value_t = NormRule::FingerprintSize)]
    norm: NormRule,
}

impl FingerprintOpts {
    fn params(&self) -> Result<FingerprintParams> {
        FingerprintParams::new(self.k, self.a)
    }
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Training dataset.
    #[arg(long)]
    train: PathBuf,
    /// Library file to write.
    #[arg(long, short)]
    out: PathBuf,
    #[command(flatten)]
    fp: FingerprintOpts,
    /// Class order for the library (comma separated).
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    library: PathBuf,
    /// Dataset to classify; its labels are ignored.
    #[arg(long)]
    data: PathBuf,
    /// Predictions file to write.
    #[arg(long, short)]
    out: PathBuf,
    /// Per-instance similarity to every class.
    #[arg(long)]
    scores_out: Option<PathBuf>,
    /// Class order override; the earliest class wins ties.
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long)]
    predictions: PathBuf,
    /// Dataset holding the gold labels.
    #[arg(long)]
    gold: PathBuf,
    /// JSON report.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Class order for the report.
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    train: PathBuf,
    #[arg(long)]
    val: PathBuf,
    /// k values (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_SLOPE)]
    a: f64,
    #[arg(long, default_value_t = NormRule::FingerprintSize)]
    norm: NormRule,
    /// CSV table `k,macro_f1`.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// `k F1%` lines for plotting.
    #[arg(long)]
    plot_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiffArgs {
    /// Fingerprint classifier predictions.
    #[arg(long)]
    ffp: PathBuf,
    /// Baseline predictions.
    #[arg(
        long,
        conflicts_with = "centroid_train",
        required_unless_present = "centroid_train"
    )]
    baseline: Option<PathBuf>,
    /// Fit a nearest-centroid baseline on this dataset instead.
    #[arg(long)]
    centroid_train: Option<PathBuf>,
    /// Dataset the predictions refer to.
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    library: PathBuf,
    /// JSON report.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExplainArgs {
    #[arg(long)]
    library: PathBuf,
    /// Class to render, or to intersect with `--id`.
    #[arg(long)]
    class: Option<String>,
    /// Dataset holding the instance given by `--id`.
    #[arg(long, requires = "id")]
    data: Option<PathBuf>,
    /// Instance to classify and explain.
    #[arg(long, requires = "data")]
    id: Option<String>,
    /// List features present in at least this many classes.
    #[arg(long, conflicts_with_all = ["class", "id"])]
    shared: Option<usize>,
    /// Plot data for the rendered fingerprint or intersection.
    #[arg(long)]
    plot_out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Layout {
    /// Disjoint blocks, one per class.
    Blocks,
    /// The first class overlaps every other class's block.
    SharedMajority,
}

#[derive(Args, Debug, Clone)]
struct SynthOpts {
    /// Class labels (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    classes: Vec<String>,
    #[arg(long, value_enum, default_value_t = Layout::Blocks)]
    layout: Layout,
    /// Dimension (blocks layout).
    #[arg(long)]
    dim: Option<usize>,
    /// Block width per minority class (shared-majority layout).
    #[arg(long, default_value_t = 10)]
    width: usize,
    /// Instances per class (comma separated).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["total", "skew"])]
    counts: Option<Vec<usize>>,
    /// Total instances, apportioned by `--skew`.
    #[arg(long, requires = "skew")]
    total: Option<usize>,
    /// Relative class weights (comma separated).
    #[arg(long, value_delimiter = ',', requires = "total")]
    skew: Option<Vec<f64>>,
    /// Block height (blocks layout).
    #[arg(long, default_value_t = 1.0)]
    height: f64,
    /// Majority height on shared cells (shared-majority layout).
    #[arg(long, default_value_t = 1.25)]
    gain: f64,
    /// Half-width of the uniform noise added to every cell.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
}

impl SynthOpts {
    fn spec(&self, seed: u64) -> Result<SyntheticSpec> {
        let counts = match (&self.counts, self.total, &self.skew) {
            (Some(c), _, _) => c.clone(),
            (None, Some(total), Some(w)) => skewed_counts(total, w)?,
            _ => {
                return Err(FfpError::InvalidParameter(
                    "give --counts or --total with --skew".into(),
                ))
            }
        };
        match self.layout {
            Layout::Blocks => {
                let dim = self.dim.ok_or_else(|| {
                    FfpError::InvalidParameter("--dim is required for the blocks layout".into())
                })?;
                SyntheticSpec::one_hot_blocks(
                    self.classes.clone(),
                    dim,
                    counts,
                    self.height,
                    self.noise,
                    seed,
                )
            }
            Layout::SharedMajority => SyntheticSpec::shared_majority(
                self.classes.clone(),
                self.width,
                counts,
                self.gain,
                self.noise,
                seed,
            ),
        }
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    synth: SynthOpts,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dataset file; with `--split`, the first part.
    #[arg(long, short)]
    out: PathBuf,
    /// Stratified split fractions (comma separated), one output per part.
    #[arg(long, value_delimiter = ',', requires = "split_out")]
    split: Option<Vec<f64>>,
    /// Files for the parts after the first.
    #[arg(long, value_delimiter = ',')]
    split_out: Option<Vec<PathBuf>>,
}

#[derive(Args, Debug)]
struct VectorizeArgs {
    /// Conversation file (JSON lines).
    #[arg(long)]
    conversations: PathBuf,
    #[arg(long, short)]
    out: PathBuf,
    /// Existing vocabulary to reuse.
    #[arg(long, conflicts_with = "vocab_out")]
    vocab: Option<PathBuf>,
    /// Where to write the vocabulary built from this corpus.
    #[arg(long)]
    vocab_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeedsArgs {
    #[command(flatten)]
    synth: SynthOpts,
    #[command(flatten)]
    fp: FingerprintOpts,
    /// Seeds (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    seed: Vec<u64>,
    #[arg(long, default_value_t = 0.7)]
    train_fraction: f64,
    /// CSV `seed,macro_f1`.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Build(a) => build(a),
        Command::Classify(a) => classify(a),
        Command::Eval(a) => eval(a),
        Command::Sweep(a) => sweep(a),
        Command::Diff(a) => diff(a),
        Command::Explain(a) => explain(a),
        Command::Generate(a) => generate(a),
        Command::Vectorize(a) => vectorize(a),
        Command::Seeds(a) => seeds(a),
    }
}

fn warn_k(k: usize, dim: usize) {
    if k >= dim {
        eprintln!(
            "warning: k={k} covers all {dim} features; fingerprints hold {} entries",
            k.min(dim)
        );
    }
}

fn reorder(ds: LabeledDataset, classes: &Option<Vec<String>>) -> Result<LabeledDataset> {
    match classes {
        Some(order) => ds.with_class_order(order),
        None => Ok(ds),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| FfpError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn build(args: BuildArgs) -> Result<()> {
    let train = reorder(read_dataset(&args.train)?, &args.classes)?;
    let params = args.fp.params()?;
    warn_k(params.k(), train.dim());
    let lib = FingerprintLibrary::from_dataset(&train, params, args.fp.norm)?;
    save_library(&lib, &args.out)?;
    println!(
        "{} fingerprints, k={} a={} N={} dim={} -> {}",
        lib.len(),
        lib.k(),
        lib.a(),
        lib.norm(),
        lib.dim(),
        args.out.display()
    );
    Ok(())
}

fn load_ordered(path: &Path, classes: &Option<Vec<String>>) -> Result<FingerprintLibrary> {
    let lib = load_library(path)?;
    match classes {
        Some(order) => lib.with_class_order(order),
        None => Ok(lib),
    }
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let lib = load_ordered(&args.library, &args.classes)?;
    let data = read_dataset(&args.data)?;
    if !data.is_empty() {
        warn_k(lib.k(), data.dim());
    }
    let results = classify_dataset(&data, &lib)?;
    for (_, r) in &results {
        for w in &r.warnings {
            eprintln!("warning: {w}");
        }
    }
    let preds: Vec<Prediction> = results
        .iter()
        .map(|(id, r)| Prediction::new(id.clone(), r.predicted.clone()))
        .collect();
    write_predictions(&preds, &args.out)?;
    if let Some(path) = &args.scores_out {
        write_scores(&results, &lib.class_order(), path)?;
    }
    let tied = results.iter().filter(|(_, r)| r.tied).count();
    println!(
        "{} instances classified ({tied} tied) -> {}",
        preds.len(),
        args.out.display()
    );
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let gold = reorder(read_dataset(&args.gold)?, &args.classes)?;
    let preds = read_predictions(&args.predictions)?;
    let report = evaluate(&preds, &gold)?;
    if let Some(path) = &args.out {
        write_file(path, &report.to_json())?;
    }
    print!("{}", report.to_text());
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<()> {
    let train = read_dataset(&args.train)?;
    let val = read_dataset(&args.val)?;
    if let Some(&max) = args.k.iter().max() {
        warn_k(max, train.dim());
    }
    let table = sweep_k(&train, &val, &args.k, args.a, args.norm)?;
    if let Some(path) = &args.out {
        write_file(path, &table.to_csv())?;
    }
    if let Some(path) = &args.plot_out {
        emit_plot_data(PlotData::Sweep(&table), path)?;
    }
    print!("{}", table.to_text());
    Ok(())
}

fn diff(args: DiffArgs) -> Result<()> {
    let lib = load_library(&args.library)?;
    let data = read_dataset(&args.data)?;
    let ffp = read_predictions(&args.ffp)?;
    let baseline = match (&args.baseline, &args.centroid_train) {
        (Some(path), _) => read_predictions(path)?,
        (None, Some(train)) => {
            NearestCentroid::fit(&read_dataset(train)?)?.predict_dataset(&data)?
        }
        (None, None) => unreachable!("clap requires one baseline source"),
    };
    let set = diff_baseline(&ffp, &baseline, &data, &lib)?;
    if let Some(path) = &args.out {
        write_file(path, &set.to_json())?;
    }
    print!("{}", set.to_text());
    println!("{} disagreements out of {} instances", set.len(), ffp.len());
    Ok(())
}

fn explain(args: ExplainArgs) -> Result<()> {
    let lib = load_library(&args.library)?;
    if let Some(min) = args.shared {
        print!("{}", shared_features(&lib, min)?.to_text());
        return Ok(());
    }
    let class = match &args.class {
        Some(label) => Some(
            lib.get(label)
                .ok_or_else(|| FfpError::UnknownLabel(label.clone()))?,
        ),
        None => None,
    };
    match (&args.data, &args.id) {
        (Some(data), Some(id)) => {
            let ds = read_dataset(data)?;
            let inst = ds.get(id).ok_or_else(|| {
                FfpError::IdMismatch(format!("no instance {id} in {}", data.display()))
            })?;
            let fp = fingerprint_instance(&inst.vector, id.as_str(), lib.params())?;
            let result = classify_with_id(&inst.vector, id, &lib)?;
            print!("{}", render_classification(None, &fp, &result));
            if let Some(c) = class {
                let report = intersect(&fp, c, lib.norm())?;
                print!("{}", report.to_text());
                if let Some(path) = &args.plot_out {
                    emit_plot_data(PlotData::Intersection(&report), path)?;
                }
            } else if let Some(path) = &args.plot_out {
                emit_plot_data(PlotData::Fingerprint(&fp), path)?;
            }
        }
        _ => match class {
            Some(c) => {
                println!(
                    "FFP_{} = {}",
                    c.label(),
                    render_fingerprint(c, RenderStyle::RankOrdered)
                );
                if let Some(path) = &args.plot_out {
                    emit_plot_data(PlotData::Fingerprint(c), path)?;
                }
            }
            None => {
                if args.plot_out.is_some() {
                    return Err(FfpError::InvalidParameter(
                        "--plot-out needs --class or --id".into(),
                    ));
                }
                print!("{}", render_library(&lib));
            }
        },
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<()> {
    let ds = generate_synthetic(&args.synth.spec(args.seed)?)?;
    match (&args.split, &args.split_out) {
        (Some(fractions), Some(rest)) => {
            if rest.len() + 1 != fractions.len() {
                return Err(FfpError::InvalidParameter(format!(
                    "{} split fractions need {} --split-out paths",
                    fractions.len(),
                    fractions.len() - 1
                )));
            }
            let parts = stratified_split(&ds, fractions, args.seed)?;
            let paths = std::iter::once(&args.out).chain(rest);
            for (part, path) in parts.iter().zip(paths) {
                write_dataset(part, path)?;
                println!("{} instances -> {}", part.len(), path.display());
            }
        }
        (None, None) => {
            write_dataset(&ds, &args.out)?;
            println!(
                "{} instances, dim {} -> {}",
                ds.len(),
                ds.dim(),
                args.out.display()
            );
        }
        _ => {
            return Err(FfpError::InvalidParameter(
                "--split and --split-out go together".into(),
            ))
        }
    }
    Ok(())
}

fn vectorize(args: VectorizeArgs) -> Result<()> {
    let docs = conversations_to_documents(&read_conversations(&args.conversations)?);
    let vocab = args.vocab.as_ref().map(read_vocabulary).transpose()?;
    let out = vectorize_text(&docs, vocab.as_ref())?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    write_dataset(&out.dataset, &args.out)?;
    if let Some(path) = &args.vocab_out {
        write_vocabulary(&out.vocabulary, path)?;
    }
    println!(
        "{} utterances, {} tokens -> {}",
        out.dataset.len(),
        out.vocabulary.len(),
        args.out.display()
    );
    Ok(())
}

fn seeds(args: SeedsArgs) -> Result<()> {
    let spec = args.synth.spec(0)?;
    let source = SeedSource::Synthetic {
        spec: &spec,
        train_fraction: args.train_fraction,
    };
    let runs = run_seeds(source, &args.seed, args.fp.params()?, args.fp.norm)?;
    if let Some(path) = &args.out {
        let mut csv = String::from("seed,macro_f1\n");
        for (seed, f1) in &runs.runs {
            csv.push_str(&format!("{seed},{f1:?}\n"));
        }
        write_file(path, &csv)?;
    }
    for (seed, f1) in &runs.runs {
        println!("seed {seed}: macro-F1 {f1:.3}");
    }
    println!("mean {:.3} sd {:.3}", runs.mean, runs.std_dev());
    Ok(())
}
