//! Agreement between projected signs and lexicon polarity labels.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::lexicon::{Dimension, Facet, LexiconEntry, Polarity, ValidationSet};
use crate::polar::PolarSubspace;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FacetAccuracy {
    pub accuracy: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub model: String,
    pub warmth_accuracy: f64,
    pub competence_accuracy: f64,
    pub warmth_n: usize,
    pub competence_n: usize,
    pub per_facet: BTreeMap<Facet, FacetAccuracy>,
    pub skipped: usize,
}

/// Positive iff the word's coordinate on the entry's dimension is > 0.
pub fn predict_polarity(
    sub: &PolarSubspace,
    space: &EmbeddingSpace,
    entry: &LexiconEntry,
) -> Result<Polarity> {
    let v = space
        .lookup(&entry.word)
        .ok_or_else(|| Error::OutOfVocabulary(entry.word.clone()))?;
    let p = sub.project(v)?;
    Ok(if p.coordinate(entry.dimension) > 0.0 {
        Polarity::Positive
    } else {
        Polarity::Negative
    })
}

#[derive(Default)]
struct Tally {
    correct: usize,
    n: usize,
}

impl Tally {
    fn percent(&self) -> f64 {
        100.0 * self.correct as f64 / self.n as f64
    }
}

/// Accuracy per dimension, plus a per-facet breakdown.
///
/// Entries whose word has no vector in `space` are counted as skipped along
/// with the removals already recorded in `set`.
pub fn evaluate_lexicon(
    sub: &PolarSubspace,
    space: &EmbeddingSpace,
    set: &ValidationSet,
) -> Result<AccuracyReport> {
    let mut warmth = Tally::default();
    let mut competence = Tally::default();
    let mut facets: BTreeMap<Facet, Tally> = BTreeMap::new();
    let mut skipped = set.skipped();

    for entry in &set.entries {
        let predicted = match predict_polarity(sub, space, entry) {
            Ok(p) => p,
            Err(Error::OutOfVocabulary(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let hit = usize::from(predicted == entry.polarity);
        let dim = match entry.dimension {
            Dimension::Warmth => &mut warmth,
            Dimension::Competence => &mut competence,
        };
        dim.correct += hit;
        dim.n += 1;
        let f = facets.entry(entry.facet).or_default();
        f.correct += hit;
        f.n += 1;
    }

    if warmth.n == 0 {
        return Err(Error::EmptyPartition("warmth"));
    }
    if competence.n == 0 {
        return Err(Error::EmptyPartition("competence"));
    }
    Ok(AccuracyReport {
        model: space.source_tag().to_owned(),
        warmth_accuracy: warmth.percent(),
        competence_accuracy: competence.percent(),
        warmth_n: warmth.n,
        competence_n: competence.n,
        per_facet: facets
            .into_iter()
            .map(|(f, t)| {
                (
                    f,
                    FacetAccuracy {
                        accuracy: t.percent(),
                        n: t.n,
                    },
                )
            })
            .collect(),
        skipped,
    })
}
