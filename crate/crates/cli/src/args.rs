use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "scm",
    version,
    about = "Warmth/competence analysis of stereotype word data"
)]
pub struct Cli {
    /// Directory for output files and the run manifest.
    #[arg(long, short = 'o', global = true, default_value = "out")]
    pub output_dir: PathBuf,

    /// Output formats to write (repeatable).
    #[arg(long = "format", global = true, value_enum, value_delimiter = ',',
          default_values_t = [Format::Csv, Format::Json, Format::Svg])]
    pub formats: Vec<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Score the axes against the extended lexicon, for one or more models.
    Validate(ValidateArgs),
    /// Project words read from stdin (one per line) and print CSV.
    Project(ProjectArgs),
    /// Place each target group on the plane by its stereotype words.
    Cluster(ClusterArgs),
    /// Classify anti-stereotype strategies, per pair and per group.
    Strategies(StrategiesArgs),
    /// Propose "X and not-Y" counter-stereotypes for each group.
    Counter(CounterArgs),
    /// Normalize a StereoSet-style corpus to JSON lines.
    Ingest(IngestArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct AxisArgs {
    /// Labeled seed + extended lexicon (CSV).
    #[arg(long)]
    pub lexicon: PathBuf,
    /// Read at most this many embedding entries.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Rescale both axis directions to unit length.
    #[arg(long)]
    pub normalize_axes: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct CorpusArgs {
    /// StereoSet JSON or normalized JSON lines.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Targets to drop (one per line); defaults to the bundled list.
    #[arg(long)]
    pub exclusions: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct FilterArgs {
    /// Demographic words to drop from clusters; defaults to the bundled list.
    #[arg(long)]
    pub stoplist: Option<PathBuf>,
    /// Cosine distance above which a word counts as an outlier, in (0, 2].
    #[arg(long, default_value_t = scm_core::DEFAULT_OUTLIER_THRESHOLD)]
    pub threshold: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct AntonymArgs {
    /// Antonym TSV (word TAB comma-separated antonyms).
    #[arg(long)]
    pub antonyms: PathBuf,
    #[arg(long)]
    pub synonyms: Option<PathBuf>,
    /// Lemma TSV; without it a suffix-stripping fallback is used.
    #[arg(long)]
    pub lemmas: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ValidateArgs {
    /// Embedding file(s), word2vec or GloVe text format. Repeatable.
    #[arg(long, required = true, num_args = 1..)]
    pub embeddings: Vec<PathBuf>,
    #[command(flatten)]
    pub axis: AxisArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct ProjectArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[command(flatten)]
    pub axis: AxisArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideArg {
    Stereotype,
    AntiStereotype,
}

impl From<SideArg> for scm_core::pipeline::Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Stereotype => scm_core::pipeline::Side::Stereotype,
            SideArg::AntiStereotype => scm_core::pipeline::Side::AntiStereotype,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ClusterArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[command(flatten)]
    pub axis: AxisArgs,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    /// Which words of each pair to cluster.
    #[arg(long, value_enum, default_value_t = SideArg::Stereotype)]
    pub side: SideArg,
}

#[derive(Debug, Args, Serialize)]
pub struct StrategiesArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[command(flatten)]
    pub axis: AxisArgs,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub antonyms: AntonymArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct CounterArgs {
    #[arg(long)]
    pub embeddings: PathBuf,
    #[command(flatten)]
    pub axis: AxisArgs,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub antonyms: AntonymArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct IngestArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
}
