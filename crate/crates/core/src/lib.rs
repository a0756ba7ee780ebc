//! Stereotype content analysis in word-embedding space.
//!
//! Seed lexicons for warmth and competence define two directions in a
//! pretrained embedding space; any word then projects to a point on the
//! warmth–competence plane. On top of that projection the crate validates
//! the axes against a labeled lexicon, places target groups by their
//! stereotype words, classifies how anti-stereotypes relate to stereotypes,
//! and proposes positive counter-stereotypes for ambivalent groups.

pub mod antonym;
pub mod cluster;
pub mod counter;
pub mod embedding;
pub mod error;
pub mod format;
pub mod lexicon;
pub mod pipeline;
pub mod plot;
pub mod polar;
pub mod stereoset;
pub mod strategy;
pub mod validation;
pub mod vector;

pub use antonym::AntonymResource;
pub use cluster::{summarize_group, GroupCluster, DEFAULT_OUTLIER_THRESHOLD};
pub use counter::{generate_counter, select_x_but_y, CounterStereotype};
pub use embedding::{EmbeddingSpace, LoadOptions};
pub use error::{Error, Result};
pub use lexicon::{build_seed_sets, Dimension, LexiconEntry, Polarity, SeedSets};
pub use polar::{build_axes, classify_point, AxisOptions, PolarPoint, PolarSubspace, Quadrant};
pub use stereoset::TargetGroup;
pub use strategy::{classify_pair, StrategyLabel, StrategyTable};
pub use validation::{evaluate_lexicon, AccuracyReport};
