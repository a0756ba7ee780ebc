use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("embedding file is empty")]
    EmptyEmbeddings,

    #[error("too many malformed embedding lines: {bad} of {total} (budget {budget})")]
    BadLineBudget {
        bad: usize,
        total: usize,
        budget: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("no resolvable token among {0:?}")]
    NothingResolved(Vec<String>),

    #[error("lexicon: {0}")]
    Lexicon(String),

    #[error("empty {dimension} {polarity} seed cell")]
    EmptySeedCell {
        dimension: &'static str,
        polarity: &'static str,
    },

    #[error("{0} direction is zero")]
    ZeroDirection(&'static str),

    #[error("warmth and competence directions are near-parallel (gram determinant {0:e})")]
    NearParallel(f64),

    #[error("word {0:?} has no vector")]
    OutOfVocabulary(String),

    #[error("no {0} entries to evaluate")]
    EmptyPartition(&'static str),

    #[error("malformed corpus: {0}")]
    Corpus(String),

    #[error("all words of {0:?} were filtered out")]
    EmptyCluster(String),

    #[error("cluster {0:?} yields the same word for X and Y")]
    DegenerateCluster(String),

    #[error("group {0:?} is missing its {1} cluster")]
    MissingSide(String, &'static str),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::EmptyEmbeddings => "empty-embeddings",
            Error::BadLineBudget { .. } => "bad-line-budget",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NothingResolved(_) => "nothing-resolved",
            Error::Lexicon(_) => "lexicon",
            Error::EmptySeedCell { .. } => "empty-seed-cell",
            Error::ZeroDirection(_) => "zero-direction",
            Error::NearParallel(_) => "near-parallel",
            Error::OutOfVocabulary(_) => "out-of-vocabulary",
            Error::EmptyPartition(_) => "empty-partition",
            Error::Corpus(_) => "corpus",
            Error::EmptyCluster(_) => "empty-cluster",
            Error::DegenerateCluster(_) => "degenerate-cluster",
            Error::MissingSide(..) => "missing-side",
            Error::Parse { .. } => "parse",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
