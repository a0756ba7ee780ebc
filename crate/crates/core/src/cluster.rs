//! Per-group word clusters on the warmth–competence plane.
//!
//! A group's words are resolved against the embedding space, stripped of
//! demographic terms, and filtered once by cosine distance to their mean.
//! The survivors' mean is projected and classified, and the survivor closest
//! to that mean becomes the group's representative word.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use log::warn;
use serde::Serialize;

use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::polar::{classify_point, PolarPoint, PolarSubspace, Quadrant};
use crate::vector::{self, Accumulator};

pub const DEFAULT_OUTLIER_THRESHOLD: f64 = 0.6;

/// Distances closer than this are treated as ties.
const TIE_EPSILON: f64 = 1e-12;

/// Case-insensitive exact-match removal. Returns `(kept, removed)`.
pub fn apply_stoplist<S: AsRef<str>, T: AsRef<str>>(
    words: &[S],
    stoplist: &[T],
) -> (Vec<String>, Vec<String>) {
    let stop: Vec<String> = stoplist
        .iter()
        .map(|s| s.as_ref().trim().to_lowercase())
        .collect();
    words
        .iter()
        .map(|w| w.as_ref().to_owned())
        .partition(|w| !stop.contains(&w.trim().to_lowercase()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutlierSplit {
    pub kept: Vec<String>,
    pub discarded: Vec<String>,
    pub unresolved: Vec<String>,
    /// Mean of all resolved inputs, the reference for every distance.
    pub mean: Vec<f64>,
    /// The mean was zero, so nothing could be filtered.
    pub degenerate: bool,
}

/// Drops words farther than `threshold` (cosine distance) from the mean of
/// all resolved words. The mean is computed once and not refreshed.
pub fn filter_outliers<S: AsRef<str>>(
    space: &EmbeddingSpace,
    words: &[S],
    threshold: f64,
) -> Result<OutlierSplit> {
    let mut resolved = Vec::new();
    let mut unresolved = Vec::new();
    for w in words {
        match space.resolve(w.as_ref()) {
            Some(v) => resolved.push((w.as_ref().to_owned(), v)),
            None => unresolved.push(w.as_ref().to_owned()),
        }
    }
    let mut acc = Accumulator::new(space.dim());
    resolved.iter().for_each(|(_, v)| acc.add(v));
    let mean = acc
        .mean()
        .ok_or_else(|| Error::NothingResolved(unresolved.clone()))?;

    if vector::norm(&mean) == 0.0 {
        warn!("cluster mean is zero; keeping all {} words", resolved.len());
        return Ok(OutlierSplit {
            kept: resolved.into_iter().map(|(w, _)| w).collect(),
            discarded: Vec::new(),
            unresolved,
            mean,
            degenerate: true,
        });
    }

    let (kept, discarded) = resolved.into_iter().partition::<Vec<_>, _>(|(_, v)| {
        vector::cosine_distance(v, &mean).expect("non-zero vectors") <= threshold
    });
    Ok(OutlierSplit {
        kept: kept.into_iter().map(|(w, _)| w).collect(),
        discarded: discarded.into_iter().map(|(w, _)| w).collect(),
        unresolved,
        mean,
        degenerate: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordCount {
    pub word: String,
    pub count: usize,
    /// Cosine distance to the cluster mean.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupCluster {
    pub target: String,
    /// Distinct kept words, nearest to the mean first.
    pub kept_words: Vec<WordCount>,
    pub discarded_outliers: Vec<String>,
    pub discarded_demographic: Vec<String>,
    pub unresolved: Vec<String>,
    #[serde(skip)]
    pub mean_vector: Vec<f64>,
    pub mean_point: PolarPoint,
    pub quadrant: Quadrant,
    pub representative: String,
}

impl GroupCluster {
    pub fn kept_total(&self) -> usize {
        self.kept_words.iter().map(|w| w.count).sum()
    }
}

fn tally(words: &[String]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for w in words {
        *counts.entry(w.clone()).or_insert(0) += 1;
    }
    counts
}

/// Orders by distance, treating near-equal distances as ties broken by word.
pub(crate) fn by_distance_then_word(a: (f64, &str), b: (f64, &str)) -> Ordering {
    if (a.0 - b.0).abs() <= TIE_EPSILON {
        a.1.cmp(b.1)
    } else {
        a.0.total_cmp(&b.0)
    }
}

/// Runs resolve → stoplist → outlier filter → mean → project → classify.
pub fn summarize_group<S: AsRef<str>, T: AsRef<str>>(
    space: &EmbeddingSpace,
    sub: &PolarSubspace,
    target: &str,
    words: &[S],
    stoplist: &[T],
    threshold: f64,
) -> Result<GroupCluster> {
    let words: Vec<String> = words
        .iter()
        .map(|w| w.as_ref().trim().to_lowercase())
        .collect();
    let (resolvable, unresolved): (Vec<String>, Vec<String>) =
        words.into_iter().partition(|w| space.resolve(w).is_some());
    let (candidates, demographic) = apply_stoplist(&resolvable, stoplist);
    if candidates.is_empty() {
        return Err(Error::EmptyCluster(target.to_owned()));
    }
    let split = filter_outliers(space, &candidates, threshold)?;
    if split.kept.is_empty() {
        return Err(Error::EmptyCluster(target.to_owned()));
    }

    let mean = space.mean_vector(&split.kept)?.vector;
    let mean_point = sub.project(&mean)?;
    let quadrant = classify_point(mean_point).quadrant;

    let mut kept_words: Vec<WordCount> = tally(&split.kept)
        .into_iter()
        .map(|(word, count)| {
            let v = space.resolve(&word).expect("kept words resolve");
            let distance = vector::cosine_distance(&v, &mean).unwrap_or(0.0);
            WordCount {
                word,
                count,
                distance,
            }
        })
        .collect();
    kept_words.sort_by(|a, b| by_distance_then_word((a.distance, &a.word), (b.distance, &b.word)));
    let representative = kept_words[0].word.clone();

    Ok(GroupCluster {
        target: target.to_owned(),
        kept_words,
        discarded_outliers: split.discarded,
        discarded_demographic: demographic,
        unresolved,
        mean_vector: mean,
        mean_point,
        quadrant,
        representative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space() -> EmbeddingSpace {
        EmbeddingSpace::from_vectors(
            "t",
            4,
            [
                ("e1", vec![1.0, 0.0, 0.0, 0.0]),
                ("e4", vec![0.0, 0.0, 0.0, 1.0]),
                ("neg", vec![-1.0, 0.0, 0.0, 0.0]),
                ("caring", vec![1.0, 1.0, 0.0, 0.0]),
                ("kind", vec![1.0, 0.0, 0.0, 1.0]),
                ("nice", vec![0.0, 1.0, 0.0, 1.0]),
                ("black", vec![0.0, 0.0, 1.0, 0.0]),
            ],
        )
        .unwrap()
    }

    fn sub() -> PolarSubspace {
        PolarSubspace::from_directions(vec![1.0, 0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0, 0.0]).unwrap()
    }

    #[test]
    fn stoplist() {
        let (kept, removed) = apply_stoplist(&["black", "angry"], &["black", "white"]);
        assert_eq!(
            (kept, removed),
            (vec!["angry".to_string()], vec!["black".to_string()])
        );
        let (kept, removed) = apply_stoplist::<_, &str>(&["a", "b"], &[]);
        assert_eq!((kept.len(), removed.len()), (2, 0));
        let (_, removed) = apply_stoplist(&["White"], &["white"]);
        assert_eq!(removed, ["White"]);
    }

    #[test]
    fn outliers_single_pass() {
        let s = space();
        let split = filter_outliers(&s, &["e1", "e1", "e1", "e4"], 0.6).unwrap();
        // mean (0.75, 0, 0, 0.25); distances 1 - 0.75/√0.625 ≈ 0.051 and 1 - 0.25/√0.625 ≈ 0.684
        assert_eq!(split.kept, ["e1", "e1", "e1"]);
        assert_eq!(split.discarded, ["e4"]);
        assert_eq!(split.mean, vec![0.75, 0.0, 0.0, 0.25]);

        let split = filter_outliers(&s, &["e4", "e4"], 0.6).unwrap();
        assert_eq!(split.kept.len(), 2);

        let split = filter_outliers(&s, &["e1", "e4", "neg", "zzz"], 2.0).unwrap();
        assert_eq!(split.kept.len(), 3);
        assert_eq!(split.unresolved, ["zzz"]);
    }

    #[test]
    fn zero_mean_keeps_everything() {
        let split = filter_outliers(&space(), &["e1", "neg"], 0.6).unwrap();
        assert!(split.degenerate);
        assert_eq!(split.kept.len(), 2);
    }

    #[test]
    fn singleton_cluster() {
        let c =
            summarize_group::<_, &str>(&space(), &sub(), "nurse", &["caring"], &[], 0.6).unwrap();
        assert_eq!(c.representative, "caring");
        assert_eq!(c.mean_vector, space().lookup("caring").unwrap());
        assert_eq!(c.quadrant, Quadrant::HcHw);
    }

    #[test]
    fn lexicographic_tie_break() {
        // both at the same angle to the mean (0.5, 0.5, 0, 1)/√2
        let c =
            summarize_group::<_, &str>(&space(), &sub(), "x", &["nice", "kind"], &[], 0.6).unwrap();
        assert_eq!(c.representative, "kind");
    }

    #[test]
    fn partitions_input() {
        let words = ["e1", "e1", "black", "e4", "zzz", "e1"];
        let c = summarize_group(&space(), &sub(), "x", &words, &["black"], 0.6).unwrap();
        assert_eq!(c.kept_total(), 3);
        assert_eq!(c.discarded_outliers, ["e4"]);
        assert_eq!(c.discarded_demographic, ["black"]);
        assert_eq!(c.unresolved, ["zzz"]);
        assert_eq!(
            c.kept_total()
                + c.discarded_outliers.len()
                + c.discarded_demographic.len()
                + c.unresolved.len(),
            words.len()
        );
    }

    #[test]
    fn everything_filtered() {
        let err =
            summarize_group(&space(), &sub(), "x", &["black", "zzz"], &["black"], 0.6).unwrap_err();
        assert!(matches!(err, Error::EmptyCluster(_)));
    }
}
