//! `matclass` command-line interface: generate / train / predict / evaluate
//! / compare / verify-tables. Every command is a pure function of its flags
//! (seeds included); reruns with identical flags write identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::c45::{self, DecisionTree, TreeParams};
use crate::data::{stratified_split, Dataset, Schema};
use crate::error::{Error, Result};
use crate::eval::{evaluate_classifier, Classifier, Evaluation};
use crate::naive_bayes::{self, NaiveBayesModel};
use crate::reference::{run_checks, CheckStatus};
use crate::report::{
    self, confusion_plot_csv, metrics_plot_csv, roc_plot_csv, NamedEvaluation, ReportHeader,
};
use crate::synthgen::{self, GeneratorSpec};

#[derive(Debug, Parser)]
#[command(
    name = "matclass",
    version,
    about = "Materials classification toolkit: naive Bayes and C4.5 with confusion-matrix evaluation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic dataset (dataset.csv + schema.json) to --out
    Generate(GenerateArgs),
    /// Train a classifier and write its model JSON to --model
    Train(TrainArgs),
    /// Apply a trained model to a dataset and write predictions.csv
    Predict(PredictArgs),
    /// Evaluate a model (or train-and-evaluate with --classifier) and emit reports
    Evaluate(EvaluateArgs),
    /// Train both classifiers on one split and emit a side-by-side report
    Compare(CompareArgs),
    /// Recompute the embedded reference tables; exit nonzero on any failed check
    VerifyTables,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifierKind {
    Nb,
    C45,
}

impl ClassifierKind {
    fn name(self) -> &'static str {
        match self {
            ClassifierKind::Nb => "nb",
            ClassifierKind::C45 => "c45",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Number of rows
    #[arg(long, default_value_t = 2431)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Categorical noise rate override
    #[arg(long)]
    pub noise: Option<f64>,
    /// Generator spec JSON (defaults to the built-in spec)
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub schema: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum)]
    pub classifier: ClassifierKind,
    /// Output path for the model JSON
    #[arg(long)]
    pub model: PathBuf,
    /// Train on this fraction (stratified); omit to train on everything
    #[arg(long)]
    pub split: Option<f64>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub sigma_floor: f64,
    #[arg(long, default_value_t = 1)]
    pub min_leaf: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long)]
    pub schema: PathBuf,
    /// Input CSV; the class column is optional here
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub schema: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    /// Evaluate this model on the whole input
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Or: train this classifier on a split and evaluate on the rest
    #[arg(long, value_enum)]
    pub classifier: Option<ClassifierKind>,
    #[arg(long, default_value_t = 0.75)]
    pub split: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub sigma_floor: f64,
    #[arg(long, default_value_t = 1)]
    pub min_leaf: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ReportFormat::Text, ReportFormat::Csv, ReportFormat::Json])]
    pub format: Vec<ReportFormat>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub schema: PathBuf,
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value_t = 0.75)]
    pub split: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub sigma_floor: f64,
    #[arg(long, default_value_t = 1)]
    pub min_leaf: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ReportFormat::Text, ReportFormat::Csv, ReportFormat::Json])]
    pub format: Vec<ReportFormat>,
}

/// Run one command; the returned code becomes the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Train(args) => cmd_train(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Compare(args) => cmd_compare(args),
        Command::VerifyTables => cmd_verify_tables(),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn load_schema(path: &Path) -> Result<Schema> {
    Schema::from_json(&fs::read(path)?)
}

fn load_dataset(schema: &Schema, path: &Path) -> Result<Dataset> {
    Dataset::from_csv(schema, fs::File::open(path)?)
}

enum Model {
    Nb(NaiveBayesModel),
    Tree(DecisionTree),
}

impl Model {
    fn as_classifier(&self) -> &dyn Classifier {
        match self {
            Model::Nb(m) => m,
            Model::Tree(t) => t,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Model::Nb(_) => "nb",
            Model::Tree(_) => "c45",
        }
    }
}

fn load_model(path: &Path, schema: &Schema) -> Result<Model> {
    let bytes = fs::read(path)?;
    let value: serde_json::Value = serde_json::from_slice(&bytes)?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("naive_bayes") => {
            let model = NaiveBayesModel::from_json(&bytes)?;
            if model.schema() != schema {
                return Err(Error::SchemaMismatch(
                    "model schema differs from --schema".into(),
                ));
            }
            Ok(Model::Nb(model))
        }
        Some("c45") => Ok(Model::Tree(DecisionTree::from_json(&bytes, schema)?)),
        _ => Err(Error::InvalidModel(
            "document has no recognized 'kind' field".into(),
        )),
    }
}

fn tree_params(min_leaf: usize, max_depth: Option<usize>) -> TreeParams {
    TreeParams {
        min_leaf_size: min_leaf,
        max_depth,
        ..TreeParams::default()
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<i32> {
    let mut spec = match &args.spec {
        Some(path) => GeneratorSpec::from_json(&fs::read(path)?)?,
        None => synthgen::default_spec(),
    };
    if let Some(noise) = args.noise {
        spec.noise_rate = noise;
        spec.validate()?;
    }
    let dataset = synthgen::generate(&spec, args.n, args.seed)?;

    fs::create_dir_all(&args.out)?;
    write_file(&args.out.join("dataset.csv"), &dataset.to_csv_string())?;
    let mut schema_json = dataset.schema().to_json();
    schema_json.push('\n');
    write_file(&args.out.join("schema.json"), &schema_json)?;

    println!(
        "{} rows, {} classes",
        dataset.len(),
        dataset.schema().num_classes()
    );
    Ok(0)
}

fn cmd_train(args: TrainArgs) -> Result<i32> {
    let schema = load_schema(&args.schema)?;
    let full = load_dataset(&schema, &args.data)?;
    let train_set = match args.split {
        Some(fraction) => stratified_split(&full, fraction, args.seed)?.0,
        None => full,
    };

    let json = match args.classifier {
        ClassifierKind::Nb => {
            let model = naive_bayes::train(&train_set, args.alpha, args.sigma_floor)?;
            let priors: Vec<String> = schema
                .class_labels
                .iter()
                .map(|l| format!("{l}={:.4}", model.prior(l).unwrap()))
                .collect();
            println!(
                "trained nb on {} rows; priors: {}",
                train_set.len(),
                priors.join(" ")
            );
            model.to_json()
        }
        ClassifierKind::C45 => {
            let tree = c45::build(&train_set, tree_params(args.min_leaf, args.max_depth))?;
            println!(
                "trained c45 on {} rows; depth {}, {} leaves",
                train_set.len(),
                tree.depth(),
                tree.leaf_count()
            );
            tree.to_json()
        }
    };
    write_file(&args.model, &format!("{json}\n"))?;
    Ok(0)
}

fn cmd_predict(args: PredictArgs) -> Result<i32> {
    let schema = load_schema(&args.schema)?;
    let model = load_model(&args.model, &schema)?;
    let dataset = Dataset::from_csv_unlabeled(&schema, fs::File::open(&args.data)?)?;

    let classifier = model.as_classifier();
    let mut out = String::from("row,predicted\n");
    for (i, row) in dataset.rows().iter().enumerate() {
        let class = classifier.predict_index(row)?;
        out.push_str(&format!("{},{}\n", i + 1, schema.class_labels[class]));
    }
    fs::create_dir_all(&args.out)?;
    write_file(&args.out.join("predictions.csv"), &out)?;
    println!("predicted {} rows with {}", dataset.len(), model.name());
    Ok(0)
}

struct Emission<'a> {
    out_dir: &'a Path,
    stem: &'a str,
    formats: &'a [ReportFormat],
    header: ReportHeader,
}

fn emit_reports(
    emission: &Emission,
    evals: &[NamedEvaluation],
    winners: Option<&report::Winners>,
) -> Result<()> {
    fs::create_dir_all(emission.out_dir)?;
    for format in emission.formats {
        let (ext, contents) = match format {
            ReportFormat::Text => {
                let mut text = report::render_text(&emission.header, evals);
                if let Some(w) = winners {
                    text.push('\n');
                    text.push_str(&report::render_winners_text(w));
                }
                ("txt", text)
            }
            ReportFormat::Csv => ("csv", report::render_csv(&emission.header, evals)),
            ReportFormat::Json => ("json", report::render_json(&emission.header, evals, winners)),
        };
        write_file(
            &emission.out_dir.join(format!("{}.{ext}", emission.stem)),
            &contents,
        )?;
    }
    // Plot data is always CSV.
    if evals.len() == 1 {
        write_file(
            &emission.out_dir.join("plot_confusion.csv"),
            &confusion_plot_csv(evals[0].eval),
        )?;
    } else {
        for ne in evals {
            write_file(
                &emission.out_dir.join(format!("plot_confusion_{}.csv", ne.name)),
                &confusion_plot_csv(ne.eval),
            )?;
        }
    }
    write_file(&emission.out_dir.join("plot_metrics.csv"), &metrics_plot_csv(evals))?;
    write_file(&emission.out_dir.join("plot_roc.csv"), &roc_plot_csv(evals))?;
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<i32> {
    let schema = load_schema(&args.schema)?;
    let data = load_dataset(&schema, &args.data)?;
    let dataset_hash = report::dataset_fingerprint(&data.to_csv_string());

    let (name, eval, invocation, seed): (&str, Evaluation, String, Option<u64>) =
        match (&args.model, args.classifier) {
            (Some(model_path), None) => {
                let model = load_model(model_path, &schema)?;
                let eval = evaluate_classifier(model.as_classifier(), &data)?;
                let invocation = format!(
                    "matclass evaluate --schema {} --data {} --model {} --out {}",
                    args.schema.display(),
                    args.data.display(),
                    model_path.display(),
                    args.out.display()
                );
                (model.name(), eval, invocation, None)
            }
            (None, Some(kind)) => {
                let (train_set, test_set) = stratified_split(&data, args.split, args.seed)?;
                let eval = match kind {
                    ClassifierKind::Nb => {
                        let model = naive_bayes::train(&train_set, args.alpha, args.sigma_floor)?;
                        evaluate_classifier(&model, &test_set)?
                    }
                    ClassifierKind::C45 => {
                        let tree =
                            c45::build(&train_set, tree_params(args.min_leaf, args.max_depth))?;
                        evaluate_classifier(&tree, &test_set)?
                    }
                };
                let invocation = format!(
                    "matclass evaluate --schema {} --data {} --classifier {} --split {} --seed {} --alpha {} --sigma-floor {} --min-leaf {}{} --out {}",
                    args.schema.display(),
                    args.data.display(),
                    kind.name(),
                    args.split,
                    args.seed,
                    args.alpha,
                    args.sigma_floor,
                    args.min_leaf,
                    args.max_depth.map(|d| format!(" --max-depth {d}")).unwrap_or_default(),
                    args.out.display()
                );
                (kind.name(), eval, invocation, Some(args.seed))
            }
            _ => {
                return Err(Error::InvalidArgument(
                    "provide exactly one of --model or --classifier".into(),
                ))
            }
        };

    let emission = Emission {
        out_dir: &args.out,
        stem: "report",
        formats: &args.format,
        header: ReportHeader::new(invocation, seed, Some(dataset_hash)),
    };
    emit_reports(&emission, &[NamedEvaluation { name, eval: &eval }], None)?;
    println!(
        "{name}: pooled accuracy {}%, TPR {:.4}, FPR {:.4}",
        report::pct(eval.pooled.accuracy),
        eval.pooled.tpr,
        eval.pooled.fpr
    );
    Ok(0)
}

fn cmd_compare(args: CompareArgs) -> Result<i32> {
    let schema = load_schema(&args.schema)?;
    let data = load_dataset(&schema, &args.data)?;
    let dataset_hash = report::dataset_fingerprint(&data.to_csv_string());

    // One shared partition: both classifiers see identical train/test bytes.
    let (train_set, test_set) = stratified_split(&data, args.split, args.seed)?;
    let nb_model = naive_bayes::train(&train_set, args.alpha, args.sigma_floor)?;
    let tree = c45::build(&train_set, tree_params(args.min_leaf, args.max_depth))?;
    let nb_eval = evaluate_classifier(&nb_model, &test_set)?;
    let c45_eval = evaluate_classifier(&tree, &test_set)?;
    let winners = report::winners("nb", &nb_eval, "c45", &c45_eval);

    let invocation = format!(
        "matclass compare --schema {} --data {} --split {} --seed {} --alpha {} --sigma-floor {} --min-leaf {}{} --out {}",
        args.schema.display(),
        args.data.display(),
        args.split,
        args.seed,
        args.alpha,
        args.sigma_floor,
        args.min_leaf,
        args.max_depth.map(|d| format!(" --max-depth {d}")).unwrap_or_default(),
        args.out.display()
    );
    let emission = Emission {
        out_dir: &args.out,
        stem: "comparison",
        formats: &args.format,
        header: ReportHeader::new(invocation, Some(args.seed), Some(dataset_hash)),
    };
    let evals = [
        NamedEvaluation { name: "nb", eval: &nb_eval },
        NamedEvaluation { name: "c45", eval: &c45_eval },
    ];
    emit_reports(&emission, &evals, Some(&winners))?;

    println!(
        "nb pooled accuracy {}%, c45 pooled accuracy {}%",
        report::pct(nb_eval.pooled.accuracy),
        report::pct(c45_eval.pooled.accuracy)
    );
    print!("{}", report::render_winners_text(&winners));
    Ok(0)
}

fn cmd_verify_tables() -> Result<i32> {
    let checks = run_checks();
    let mut out = String::new();
    let mut failures = 0usize;
    for check in &checks {
        match check.status {
            CheckStatus::Pass => {
                out.push_str(&format!(
                    "PASS  {:<55} expected {:>9.4}  actual {:>9.4}  (tol {})\n",
                    check.name, check.expected, check.actual, check.tolerance
                ));
            }
            CheckStatus::Fail => {
                failures += 1;
                out.push_str(&format!(
                    "FAIL  {:<55} expected {:>9.4}  actual {:>9.4}  (tol {})\n",
                    check.name, check.expected, check.actual, check.tolerance
                ));
                if let Some(note) = &check.note {
                    out.push_str(&format!("      note: {note}\n"));
                }
            }
            CheckStatus::Warn => {
                out.push_str(&format!(
                    "WARN  {:<55} reported {:>9.4}  derived {:>9.4}\n",
                    check.name, check.expected, check.actual
                ));
                if let Some(note) = &check.note {
                    out.push_str(&format!("      note: {note}\n"));
                }
            }
        }
    }
    let warns = checks.iter().filter(|c| c.status == CheckStatus::Warn).count();
    let passes = checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
    out.push_str(&format!("{passes} passed, {failures} failed, {warns} warnings\n"));
    // One write; a reader that closed the pipe early (`| head`) is not an
    // error worth dying over.
    use std::io::Write;
    let _ = std::io::stdout().write_all(out.as_bytes());
    Ok(if failures > 0 { 1 } else { 0 })
}
