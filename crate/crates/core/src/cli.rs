//! Command-line interface.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::corpus::{corpus_stats, load_corpus, tag_corpus, Document};
use crate::error::{Error, Result};
use crate::evaluation::{
    self, baseline_objective_words, cross_validate_candidates, cross_validate_sequence_labeler, render_rule_records,
    render_rule_table, render_system_records, render_system_table, rule_rows, CvSettings, FoldPlan, Granularity,
    Labeled, SequenceConfig, SequenceLabeler, Stopwords, SystemRow, WeightMetric,
};
use crate::pipeline::{extract_sentence, IntegratorMode, Models, TargetAnnotation};
use crate::rules::{calibrate_rule_weights, RuleWeights};
use crate::sentiment::Lexicon;
use crate::statistical::{self, decompose, LinearModel, TrainConfig};
use crate::text::{analyze, parse_tagged_corpus, train_tagger, PerceptronConfig, TaggerModel};

pub const MODEL_DIR_ENV: &str = "SARCT_MODEL_DIR";

#[derive(Debug, Parser)]
#[command(name = "sarct", version, about = "Sarcasm target extraction and evaluation")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads for per-sentence work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Directory holding rule_weights.tsv, linear_model.txt and optionally
    /// tagger.txt and lexicon.tsv.
    #[arg(long, global = true, env = MODEL_DIR_ENV)]
    pub model_dir: Option<PathBuf>,
    /// Sentiment lexicon (`word<TAB>score`).
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Perceptron tagger model; the bundled lexical tagger otherwise.
    #[arg(long, global = true)]
    pub tagger: Option<PathBuf>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    RuleOnly,
    StatOnly,
    HybridOr,
    HybridAnd,
}

impl From<ModeArg> for IntegratorMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::RuleOnly => IntegratorMode::RuleOnly,
            ModeArg::StatOnly => IntegratorMode::StatOnly,
            ModeArg::HybridOr => IntegratorMode::HybridOr,
            ModeArg::HybridAnd => IntegratorMode::HybridAnd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    OverallDice,
    OverallEm,
    ConditionalDice,
    ConditionalEm,
}

impl From<MetricArg> for WeightMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::OverallDice => WeightMetric::OverallDice,
            MetricArg::OverallEm => WeightMetric::OverallEM,
            MetricArg::ConditionalDice => WeightMetric::ConditionalDice,
            MetricArg::ConditionalEm => WeightMetric::ConditionalEM,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GranularityArg {
    Word,
    Sentence,
}

#[derive(Debug, Args)]
pub struct ModelOpts {
    /// Rule weights file written by `calibrate`.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Linear model file written by `train`.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainOpts {
    #[arg(long, default_value_t = 30)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.1)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub l2: f64,
    /// Loss weight of target words (default: negatives / positives).
    #[arg(long)]
    pub positive_weight: Option<f64>,
}

impl TrainOpts {
    fn config(&self, seed: u64) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            l2: self.l2,
            seed,
            positive_weight: self.positive_weight,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract the target of one text or of every corpus record.
    Extract {
        #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
        text: Option<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::HybridOr)]
        mode: ModeArg,
        #[command(flatten)]
        models: ModelOpts,
    },
    /// Train the word-level classifier on a corpus.
    Train {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        opts: TrainOpts,
    },
    /// Derive rule weights from each rule's score alone on a corpus.
    Calibrate {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::OverallDice)]
        metric: MetricArg,
    },
    /// Compare the baselines and the four integrator modes.
    Eval {
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        models: ModelOpts,
        /// Training corpus for the sequence-labeling baseline (default: the
        /// evaluation corpus).
        #[arg(long)]
        train_corpus: Option<PathBuf>,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        /// Also write one JSON record per system and slice here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Overall and conditional scores of each rule alone.
    Rules {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Dataset statistics.
    Stats {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// k-fold cross-validated comparison.
    Crossval {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 4)]
        folds: usize,
        #[arg(long, value_enum, default_value_t = GranularityArg::Word)]
        granularity: GranularityArg,
        #[arg(long, value_enum, default_value_t = MetricArg::OverallDice)]
        metric: MetricArg,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[command(flatten)]
        opts: TrainOpts,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Train the perceptron tagger on `word/TAG` lines.
    TrainTagger {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 5)]
        iterations: usize,
    },
}

struct Context<'a> {
    global: &'a GlobalOpts,
}

impl Context<'_> {
    fn in_model_dir(&self, name: &str) -> Option<PathBuf> {
        self.global.model_dir.as_ref().map(|d| d.join(name))
    }

    fn tagger(&self) -> Result<TaggerModel> {
        if let Some(p) = &self.global.tagger {
            return TaggerModel::load(p);
        }
        match self.in_model_dir("tagger.txt") {
            Some(p) if p.exists() => TaggerModel::load(&p),
            _ => Ok(TaggerModel::bundled()),
        }
    }

    fn lexicon(&self) -> Result<Lexicon> {
        if let Some(p) = &self.global.lexicon {
            return Lexicon::load(p);
        }
        match self.in_model_dir("lexicon.tsv") {
            Some(p) if p.exists() => Lexicon::load(&p),
            _ => Ok(Lexicon::bundled().clone()),
        }
    }

    fn models(&self, opts: &ModelOpts) -> Result<Models> {
        let bundled = Models::bundled();
        let weights = match opts.weights.clone().or_else(|| self.in_model_dir("rule_weights.tsv")) {
            Some(p) => RuleWeights::load(&p)?,
            None => bundled.weights,
        };
        let linear = match opts.model.clone().or_else(|| self.in_model_dir("linear_model.txt")) {
            Some(p) => LinearModel::load(&p)?,
            None => bundled.linear.clone(),
        };
        Ok(Models { tagger: self.tagger()?, lexicon: self.lexicon()?, weights, linear })
    }

    fn labeled(&self, path: &Path, tagger: &TaggerModel) -> Result<(Vec<Document>, Vec<Labeled>)> {
        let docs = load_corpus(path)?;
        if docs.is_empty() {
            return Err(Error::EmptyInput);
        }
        let labeled = tag_corpus(&docs, tagger)?;
        Ok((docs, labeled))
    }
}

fn stopwords(path: &Option<PathBuf>) -> Result<Stopwords> {
    match path {
        Some(p) => Stopwords::load(p),
        None => Ok(Stopwords::bundled().clone()),
    }
}

fn write_report(path: &Option<PathBuf>, records: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, records)?;
    }
    Ok(())
}

fn golds(labeled: &[Labeled]) -> Vec<&TargetAnnotation> {
    labeled.iter().map(|(_, g)| g).collect()
}

fn run_command(cli: &Cli) -> Result<String> {
    let ctx = Context { global: &cli.global };
    let seed = cli.global.seed;
    let records = cli.global.format == Format::Records;
    let mut out = String::new();
    match &cli.command {
        Command::Extract { text, corpus, mode, models } => {
            let models = ctx.models(models)?;
            let mode = IntegratorMode::from(*mode);
            if let Some(text) = text {
                let s = analyze(text, &models.tagger)?;
                writeln!(out, "{}", extract_sentence(&s, &models, mode).render(&s, " ")).unwrap();
            } else if let Some(path) = corpus {
                let docs = load_corpus(path)?;
                let lines: Vec<String> = docs
                    .par_iter()
                    .map(|d| {
                        let s = analyze(&d.text, &models.tagger)?;
                        Ok(format!("{}\t{}", d.id, extract_sentence(&s, &models, mode).render(&s, "|")))
                    })
                    .collect::<Result<_>>()?;
                for l in lines {
                    writeln!(out, "{l}").unwrap();
                }
            }
        }
        Command::Train { corpus, out: path, opts } => {
            let lex = ctx.lexicon()?;
            let (_, labeled) = ctx.labeled(corpus, &ctx.tagger()?)?;
            let instances: Vec<_> = labeled
                .iter()
                .enumerate()
                .map(|(k, (s, g))| decompose(s, g, &lex, k))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            let positives = instances.iter().filter(|x| x.label).count();
            let model = statistical::train(&instances, &opts.config(seed))?;
            model.save(path)?;
            writeln!(
                out,
                "trained on {} word instances ({} in targets), {} features -> {}",
                instances.len(),
                positives,
                model.weights.len(),
                path.display()
            )
            .unwrap();
        }
        Command::Calibrate { corpus, out: path, metric } => {
            let lex = ctx.lexicon()?;
            let (_, labeled) = ctx.labeled(corpus, &ctx.tagger()?)?;
            let weights = calibrate_rule_weights(&labeled, &lex, (*metric).into())?;
            weights.save(path)?;
            out.push_str(&weights.to_text());
        }
        Command::Eval { corpus, models, train_corpus, stopwords: sw, report } => {
            let models = ctx.models(models)?;
            let sw = stopwords(sw)?;
            let (_, labeled) = ctx.labeled(corpus, &models.tagger)?;
            let train_set = match train_corpus {
                Some(p) => ctx.labeled(p, &models.tagger)?.1,
                None => labeled.clone(),
            };
            let labeler =
                SequenceLabeler::train(&train_set, &models.lexicon, &SequenceConfig { seed, ..Default::default() })?;
            let lex = &models.lexicon;
            let b1: Vec<TargetAnnotation> =
                labeled.par_iter().map(|(s, _)| baseline_objective_words(s, lex, &sw)).collect();
            let b2: Vec<TargetAnnotation> = labeled.par_iter().map(|(s, _)| labeler.label(s, lex)).collect();
            let cands: Vec<_> = labeled.par_iter().map(|(s, _)| crate::pipeline::candidates(s, &models)).collect();
            let g = golds(&labeled);
            let mut rows = vec![
                SystemRow::score(evaluation::BASELINE_1, &b1, &g),
                SystemRow::score(evaluation::BASELINE_2, &b2, &g),
            ];
            for mode in IntegratorMode::ALL {
                let preds: Vec<TargetAnnotation> =
                    cands.iter().map(|(r, s)| crate::pipeline::integrate(r, s, mode)).collect();
                rows.push(SystemRow::score(evaluation::system_name(mode), &preds, &g));
            }
            let rec = render_system_records(&rows);
            write_report(report, &rec)?;
            out.push_str(&if records { rec } else { render_system_table(&rows) });
        }
        Command::Rules { corpus, report } => {
            let lex = ctx.lexicon()?;
            let (_, labeled) = ctx.labeled(corpus, &ctx.tagger()?)?;
            let rows = rule_rows(&labeled, &lex);
            let rec = render_rule_records(&rows);
            write_report(report, &rec)?;
            out.push_str(&if records { rec } else { render_rule_table(&rows) });
        }
        Command::Stats { corpus } => {
            let lex = ctx.lexicon()?;
            let docs = load_corpus(corpus)?;
            let stats = corpus_stats(&docs, &lex)?;
            if records {
                writeln!(out, "{}", serde_json::to_string(&stats).expect("stats serialize")).unwrap();
            } else {
                out.push_str(&stats.render());
            }
        }
        Command::Crossval { corpus, folds, granularity, metric, stopwords: sw, opts, report } => {
            let lex = ctx.lexicon()?;
            let sw = stopwords(sw)?;
            let (_, labeled) = ctx.labeled(corpus, &ctx.tagger()?)?;
            let granularity = match granularity {
                GranularityArg::Word => Granularity::WordInstance,
                GranularityArg::Sentence => Granularity::Sentence,
            };
            let plan = FoldPlan::for_corpus(&labeled, *folds, seed, granularity)?;
            let sentence_plan = FoldPlan::for_corpus(&labeled, *folds, seed, Granularity::Sentence)?;
            let settings =
                CvSettings { lexicon: lex.clone(), train: opts.config(seed), weight_metric: (*metric).into() };
            let oof = cross_validate_candidates(&labeled, &plan, &settings)?;
            let b2 = cross_validate_sequence_labeler(
                &labeled,
                &sentence_plan,
                &lex,
                &SequenceConfig { seed, ..Default::default() },
            )?;
            let b1: Vec<TargetAnnotation> =
                labeled.par_iter().map(|(s, _)| baseline_objective_words(s, &lex, &sw)).collect();
            let g = golds(&labeled);
            let mut rows = vec![
                SystemRow::score(evaluation::BASELINE_1, &b1, &g),
                SystemRow::score(evaluation::BASELINE_2, &b2, &g),
            ];
            for mode in IntegratorMode::ALL {
                rows.push(SystemRow::score(evaluation::system_name(mode), &oof.predictions(mode), &g));
            }
            let rec = render_system_records(&rows);
            write_report(report, &rec)?;
            if records {
                out.push_str(&rec);
            } else {
                let unit = match granularity {
                    Granularity::WordInstance => "word instances",
                    Granularity::Sentence => "sentences",
                };
                writeln!(out, "{}-fold cross-validation over {unit}, seed {seed}", plan.k).unwrap();
                writeln!(out).unwrap();
                out.push_str(&render_system_table(&rows));
            }
        }
        Command::TrainTagger { corpus, out: path, iterations } => {
            if !corpus.exists() {
                return Err(Error::ModelNotFound(corpus.clone()));
            }
            let data = parse_tagged_corpus(&std::fs::read_to_string(corpus)?)?;
            let model = train_tagger(&data, &PerceptronConfig { iterations: *iterations, seed })?;
            let TaggerModel::Perceptron(p) = &model else { unreachable!("training yields a perceptron") };
            p.save(path)?;
            writeln!(out, "trained tagger on {} sentences -> {}", data.len(), path.display()).unwrap();
        }
    }
    Ok(out)
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 1 on an operational error, 2 on a usage error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.jobs {
        pool = pool.num_threads(n.max(1));
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| run_command(&cli)),
        Err(e) => Err(Error::InvalidAnnotation(e.to_string())),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
