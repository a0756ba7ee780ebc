//! Positive "X and not-Y" counter-stereotypes.
//!
//! An ambivalent cluster is high on one dimension and low on the other. Its
//! most positive word on the high dimension is X, its most negative word on
//! the low dimension is Y, giving "X but Y". The counter keeps X and swaps Y
//! for one of its antonyms: "X and Z".

use std::fmt;

use log::warn;
use serde::{Serialize, Serializer};

use crate::antonym::AntonymResource;
use crate::cluster::GroupCluster;
use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::format::csv_field;
use crate::lexicon::Dimension;
use crate::polar::{PolarPoint, PolarSubspace, Quadrant};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    pub target: String,
    pub representative: String,
    pub quadrant: Quadrant,
    pub ambivalent: bool,
    pub x_word: String,
    pub x_axis: Dimension,
    pub y_word: String,
    pub y_axis: Dimension,
}

fn other(d: Dimension) -> Dimension {
    match d {
        Dimension::Warmth => Dimension::Competence,
        Dimension::Competence => Dimension::Warmth,
    }
}

/// Axis supplying X. Ambivalent quadrants use their high dimension; the
/// others use whichever mean coordinate is larger (warmth on ties).
fn positive_axis(quadrant: Quadrant, mean: PolarPoint) -> Dimension {
    match quadrant {
        Quadrant::LcHw => Dimension::Warmth,
        Quadrant::HcLw => Dimension::Competence,
        Quadrant::HcHw | Quadrant::LcLw => {
            if mean.competence > mean.warmth {
                Dimension::Competence
            } else {
                Dimension::Warmth
            }
        }
    }
}

/// Picks X (max on the positive axis) and Y (min on the other axis) among
/// the cluster's kept words. Ties go to the lexicographically smaller word.
pub fn select_x_but_y(
    sub: &PolarSubspace,
    space: &EmbeddingSpace,
    cluster: &GroupCluster,
) -> Result<Selection> {
    if cluster.kept_words.is_empty() {
        return Err(Error::EmptyCluster(cluster.target.clone()));
    }
    let mut points = Vec::with_capacity(cluster.kept_words.len());
    for w in &cluster.kept_words {
        points.push((w.word.as_str(), sub.project_term(space, &w.word)?));
    }
    points.sort_by(|a, b| a.0.cmp(b.0));

    let x_axis = positive_axis(cluster.quadrant, cluster.mean_point);
    let y_axis = other(x_axis);
    // strict comparisons over sorted words keep the first (smallest) on ties
    let mut x = points[0];
    let mut y = points[0];
    for &p in &points[1..] {
        if p.1.coordinate(x_axis) > x.1.coordinate(x_axis) {
            x = p;
        }
        if p.1.coordinate(y_axis) < y.1.coordinate(y_axis) {
            y = p;
        }
    }
    if x.0 == y.0 {
        return Err(Error::DegenerateCluster(cluster.target.clone()));
    }
    Ok(Selection {
        target: cluster.target.clone(),
        representative: cluster.representative.clone(),
        quadrant: cluster.quadrant,
        ambivalent: cluster.quadrant.is_ambivalent(),
        x_word: x.0.to_owned(),
        x_axis,
        y_word: y.0.to_owned(),
        y_axis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CounterStatus {
    Ok,
    /// No antonym projected positively on Y's axis; the first one was used anyway.
    UncheckedAntonym,
    NoAntonym,
    Degenerate,
}

impl CounterStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CounterStatus::Ok => "ok",
            CounterStatus::UncheckedAntonym => "unchecked-antonym",
            CounterStatus::NoAntonym => "no-antonym",
            CounterStatus::Degenerate => "degenerate",
        }
    }
}

impl fmt::Display for CounterStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CounterStatus {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterStereotype {
    pub target: String,
    pub representative: String,
    pub x_word: String,
    pub y_word: String,
    pub x_but_y: String,
    pub counter: Option<String>,
    pub neg_antonym: Option<String>,
    pub ambivalent: bool,
    pub status: CounterStatus,
}

impl CounterStereotype {
    /// Status column text; non-ambivalent clusters carry a caveat suffix.
    pub fn status_label(&self) -> String {
        if self.ambivalent {
            self.status.to_string()
        } else {
            format!("{}+non-ambivalent", self.status)
        }
    }
}

/// Replaces Y by the smallest antonym that projects positively on Y's axis.
pub fn generate_counter(
    res: &AntonymResource,
    space: &EmbeddingSpace,
    sub: &PolarSubspace,
    selection: &Selection,
) -> CounterStereotype {
    let y = &selection.y_word;
    let candidates: Vec<String> = res.antonym_set(y).into_iter().filter(|a| a != y).collect();
    let positive = candidates.iter().find(|a| {
        sub.project_term(space, a)
            .map(|p| p.coordinate(selection.y_axis) > 0.0)
            .unwrap_or(false)
    });
    let (neg_antonym, status) = match (positive, candidates.first()) {
        (Some(a), _) => (Some(a.clone()), CounterStatus::Ok),
        (None, Some(a)) => {
            warn!(
                "no antonym of {y:?} is positive on {}; using {a:?}",
                selection.y_axis
            );
            (Some(a.clone()), CounterStatus::UncheckedAntonym)
        }
        (None, None) => (None, CounterStatus::NoAntonym),
    };
    if !selection.ambivalent {
        warn!(
            "{} lies in {}; a counter-stereotype may not be appropriate",
            selection.target, selection.quadrant
        );
    }
    CounterStereotype {
        target: selection.target.clone(),
        representative: selection.representative.clone(),
        x_word: selection.x_word.clone(),
        y_word: y.clone(),
        x_but_y: format!("{} but {}", selection.x_word, y),
        counter: neg_antonym
            .as_ref()
            .map(|a| format!("{} and {}", selection.x_word, a)),
        neg_antonym,
        ambivalent: selection.ambivalent,
        status,
    }
}

/// Status text for a cluster's row; `None` means X and Y could not be told apart.
pub fn row_status(cluster: &GroupCluster, counter: Option<&CounterStereotype>) -> String {
    match counter {
        Some(c) => c.status_label(),
        None if cluster.quadrant.is_ambivalent() => CounterStatus::Degenerate.to_string(),
        None => format!("{}+non-ambivalent", CounterStatus::Degenerate),
    }
}

/// One output row; `None` for a cluster that could not form X-but-Y.
pub fn counter_csv(rows: &[(&GroupCluster, Option<&CounterStereotype>)]) -> String {
    let mut out = String::from("target,stereotype_representative,x_but_y,counter,status\n");
    for (cluster, counter) in rows {
        let fields = match counter {
            Some(c) => [
                csv_field(&c.target),
                csv_field(&c.representative),
                csv_field(&c.x_but_y),
                csv_field(c.counter.as_deref().unwrap_or("")),
                row_status(cluster, *counter),
            ],
            None => [
                csv_field(&cluster.target),
                csv_field(&cluster.representative),
                String::new(),
                String::new(),
                row_status(cluster, None),
            ],
        };
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::summarize_group;

    // warmth = dim 0, competence = dim 1
    fn setup() -> (EmbeddingSpace, PolarSubspace) {
        let space = EmbeddingSpace::from_vectors(
            "t",
            3,
            [
                ("kind", vec![0.9, 0.0, 0.4]),
                ("feeble", vec![0.2, -0.8, 0.4]),
                ("old", vec![0.3, -0.3, 0.6]),
                ("strong", vec![0.0, 0.9, 0.4]),
                ("weak", vec![0.1, -0.9, 0.4]),
                ("frail", vec![0.2, -0.6, 0.4]),
                ("dull", vec![-0.2, -0.5, 0.4]),
                ("rude", vec![-0.7, -0.9, 0.1]),
            ],
        )
        .unwrap();
        let sub = PolarSubspace::from_directions(vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        (space, sub)
    }

    fn cluster(words: &[&str]) -> GroupCluster {
        let (space, sub) = setup();
        summarize_group::<_, &str>(&space, &sub, "grandfather", words, &[], 2.0).unwrap()
    }

    #[test]
    fn kind_but_feeble() {
        let (space, sub) = setup();
        let c = cluster(&["kind", "feeble", "old"]);
        assert_eq!(c.quadrant, Quadrant::LcHw);
        let s = select_x_but_y(&sub, &space, &c).unwrap();
        assert_eq!(
            (s.x_word.as_str(), s.y_word.as_str(), s.ambivalent),
            ("kind", "feeble", true)
        );
        assert_eq!(
            (s.x_axis, s.y_axis),
            (Dimension::Warmth, Dimension::Competence)
        );

        let res = AntonymResource::from_strs("feeble\tstrong\n", None, None).unwrap();
        let out = generate_counter(&res, &space, &sub, &s);
        assert_eq!(out.x_but_y, "kind but feeble");
        assert_eq!(out.counter.as_deref(), Some("kind and strong"));
        assert_eq!(out.status, CounterStatus::Ok);
    }

    #[test]
    fn positivity_beats_lexicographic_order() {
        let (space, sub) = setup();
        let s = select_x_but_y(&sub, &space, &cluster(&["kind", "feeble", "old"])).unwrap();
        // "frail" sorts first but is negative on competence
        let res = AntonymResource::from_strs("feeble\tfrail,strong\n", None, None).unwrap();
        assert_eq!(
            generate_counter(&res, &space, &sub, &s)
                .neg_antonym
                .as_deref(),
            Some("strong")
        );

        let res = AntonymResource::from_strs("feeble\tweak,frail\n", None, None).unwrap();
        let out = generate_counter(&res, &space, &sub, &s);
        assert_eq!(out.neg_antonym.as_deref(), Some("frail"));
        assert_eq!(out.status, CounterStatus::UncheckedAntonym);
    }

    #[test]
    fn no_antonym() {
        let (space, sub) = setup();
        let s = select_x_but_y(&sub, &space, &cluster(&["kind", "feeble"])).unwrap();
        let out = generate_counter(&AntonymResource::default(), &space, &sub, &s);
        assert_eq!(out.status, CounterStatus::NoAntonym);
        assert!(out.counter.is_none());
    }

    #[test]
    fn singleton_is_degenerate() {
        let (space, sub) = setup();
        let err = select_x_but_y(&sub, &space, &cluster(&["old"])).unwrap_err();
        assert!(matches!(err, Error::DegenerateCluster(_)));
    }

    #[test]
    fn non_ambivalent_still_selects() {
        let (space, sub) = setup();
        // mean in LC-LW with warmth the larger coordinate
        let c = cluster(&["dull", "rude"]);
        assert_eq!(c.quadrant, Quadrant::LcLw);
        let s = select_x_but_y(&sub, &space, &c).unwrap();
        assert!(!s.ambivalent);
        assert_eq!(s.x_axis, Dimension::Warmth);
        assert_eq!(s.x_word, "dull");
        assert_eq!(s.y_word, "rude");
        let out = generate_counter(&AntonymResource::default(), &space, &sub, &s);
        assert_eq!(out.status_label(), "no-antonym+non-ambivalent");
    }
}
