//! The warmth–competence plane.
//!
//! The two axes are differences of seed-set means:
//!
//! ```text
//! dir1 = mean(warmth+) - mean(warmth-)
//! dir2 = mean(competence+) - mean(competence-)
//! ```
//!
//! A vector `v` is mapped to the coordinates `E` that best reconstruct it
//! from the two directions, i.e. the least-squares solution of `dirᵀ E = v`.
//! With `dir` the stacked 2×d matrix this is `E = (dir dirᵀ)⁻¹ dir v`, the
//! pseudo-inverse of `dirᵀ` applied to `v`; when `d = 2` it is the plain
//! inverse.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::lexicon::{Dimension, SeedSets};
use crate::vector::{self, Accumulator};

/// Gram determinants at or below this are treated as parallel directions.
pub const MIN_GRAM_DETERMINANT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarPoint {
    pub warmth: f64,
    pub competence: f64,
}

impl PolarPoint {
    pub fn new(warmth: f64, competence: f64) -> Self {
        PolarPoint { warmth, competence }
    }

    pub fn coordinate(&self, dimension: Dimension) -> f64 {
        match dimension {
            Dimension::Warmth => self.warmth,
            Dimension::Competence => self.competence,
        }
    }
}

/// Sign region of the plane. Zero counts as low.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quadrant {
    HcHw,
    LcHw,
    LcLw,
    HcLw,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant::HcHw,
        Quadrant::LcHw,
        Quadrant::LcLw,
        Quadrant::HcLw,
    ];

    pub fn of(p: PolarPoint) -> Self {
        Self::from_signs(p.warmth > 0.0, p.competence > 0.0)
    }

    pub fn from_signs(high_warmth: bool, high_competence: bool) -> Self {
        match (high_competence, high_warmth) {
            (true, true) => Quadrant::HcHw,
            (false, true) => Quadrant::LcHw,
            (false, false) => Quadrant::LcLw,
            (true, false) => Quadrant::HcLw,
        }
    }

    pub fn high_warmth(self) -> bool {
        matches!(self, Quadrant::HcHw | Quadrant::LcHw)
    }

    pub fn high_competence(self) -> bool {
        matches!(self, Quadrant::HcHw | Quadrant::HcLw)
    }

    /// High on exactly one dimension.
    pub fn is_ambivalent(self) -> bool {
        self.high_warmth() != self.high_competence()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Quadrant::HcHw => "HC-HW",
            Quadrant::LcHw => "LC-HW",
            Quadrant::LcLw => "LC-LW",
            Quadrant::HcLw => "HC-LW",
        }
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Quadrant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Salience {
    Competence,
    Warmth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub quadrant: Quadrant,
    pub salient: Salience,
    /// `|warmth| == |competence|`; salience then defaults to warmth.
    pub tie: bool,
}

pub fn classify_point(p: PolarPoint) -> Classification {
    let (w, c) = (p.warmth.abs(), p.competence.abs());
    Classification {
        quadrant: Quadrant::of(p),
        salient: if c > w {
            Salience::Competence
        } else {
            Salience::Warmth
        },
        tie: c == w,
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AxisOptions {
    /// Rescale both directions to unit length before projecting.
    pub normalize_axes: bool,
}

/// Seed words that had no vector, per cell.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct AxisReport {
    pub oov_seeds: Vec<String>,
    /// In-vocabulary seed counts `(N1, N2, N3, N4)`.
    pub used: [usize; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarSubspace {
    dir1: Vec<f64>,
    dir2: Vec<f64>,
    gram_inverse: [[f64; 2]; 2],
}

impl PolarSubspace {
    /// Builds the subspace from explicit warmth and competence directions.
    pub fn from_directions(dir1: Vec<f64>, dir2: Vec<f64>) -> Result<Self> {
        if dir1.len() != dir2.len() {
            return Err(Error::DimensionMismatch {
                expected: dir1.len(),
                actual: dir2.len(),
            });
        }
        if vector::norm(&dir1) == 0.0 {
            return Err(Error::ZeroDirection("warmth"));
        }
        if vector::norm(&dir2) == 0.0 {
            return Err(Error::ZeroDirection("competence"));
        }
        let g11 = vector::dot(&dir1, &dir1);
        let g12 = vector::dot(&dir1, &dir2);
        let g22 = vector::dot(&dir2, &dir2);
        let det = g11 * g22 - g12 * g12;
        if det.abs() <= MIN_GRAM_DETERMINANT {
            return Err(Error::NearParallel(det));
        }
        let gram_inverse = [[g22 / det, -g12 / det], [-g12 / det, g11 / det]];
        Ok(PolarSubspace {
            dir1,
            dir2,
            gram_inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.dir1.len()
    }

    pub fn warmth_direction(&self) -> &[f64] {
        &self.dir1
    }

    pub fn competence_direction(&self) -> &[f64] {
        &self.dir2
    }

    pub fn gram_inverse(&self) -> [[f64; 2]; 2] {
        self.gram_inverse
    }

    pub fn gram(&self) -> [[f64; 2]; 2] {
        let g12 = vector::dot(&self.dir1, &self.dir2);
        [
            [vector::dot(&self.dir1, &self.dir1), g12],
            [g12, vector::dot(&self.dir2, &self.dir2)],
        ]
    }

    pub fn project(&self, v: &[f64]) -> Result<PolarPoint> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        let a = vector::dot(&self.dir1, v);
        let b = vector::dot(&self.dir2, v);
        let g = &self.gram_inverse;
        Ok(PolarPoint {
            warmth: g[0][0] * a + g[0][1] * b,
            competence: g[1][0] * a + g[1][1] * b,
        })
    }

    /// `dirᵀ E`: the d-dimensional vector a plane point stands for.
    pub fn reconstruct(&self, p: PolarPoint) -> Vec<f64> {
        self.dir1
            .iter()
            .zip(&self.dir2)
            .map(|(a, b)| a * p.warmth + b * p.competence)
            .collect()
    }

    /// Projects an in-vocabulary word or phrase.
    pub fn project_term(&self, space: &EmbeddingSpace, term: &str) -> Result<PolarPoint> {
        let v = space
            .resolve(term)
            .ok_or_else(|| Error::OutOfVocabulary(term.to_owned()))?;
        self.project(&v)
    }
}

/// Builds the warmth and competence directions from the seed sets.
pub fn build_axes(
    space: &EmbeddingSpace,
    seeds: &SeedSets,
    options: AxisOptions,
) -> Result<(PolarSubspace, AxisReport)> {
    let mut report = AxisReport::default();
    let cells = [
        &seeds.warm_pos,
        &seeds.warm_neg,
        &seeds.comp_pos,
        &seeds.comp_neg,
    ];
    let names = [
        ("warmth", "positive"),
        ("warmth", "negative"),
        ("competence", "positive"),
        ("competence", "negative"),
    ];
    let mut means = Vec::with_capacity(4);
    for (i, cell) in cells.iter().enumerate() {
        let mut acc = Accumulator::new(space.dim());
        for word in cell.iter() {
            match space.lookup(word) {
                Some(v) => acc.add(v),
                None => report.oov_seeds.push(word.clone()),
            }
        }
        report.used[i] = acc.count();
        let (dimension, polarity) = names[i];
        means.push(acc.mean().ok_or(Error::EmptySeedCell {
            dimension,
            polarity,
        })?);
    }
    if !report.oov_seeds.is_empty() {
        log::warn!("{} seed words have no vector", report.oov_seeds.len());
    }

    let mut dir1 = vector::sub(&means[0], &means[1]);
    let mut dir2 = vector::sub(&means[2], &means[3]);
    if options.normalize_axes {
        dir1 = vector::normalized(&dir1).ok_or(Error::ZeroDirection("warmth"))?;
        dir2 = vector::normalized(&dir2).ok_or(Error::ZeroDirection("competence"))?;
    }
    Ok((PolarSubspace::from_directions(dir1, dir2)?, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_space() -> EmbeddingSpace {
        EmbeddingSpace::from_vectors(
            "toy",
            4,
            [
                ("a", vec![1.0, 0.0, 0.0, 0.0]),
                ("b", vec![-1.0, 0.0, 0.0, 0.0]),
                ("c", vec![0.0, 1.0, 0.0, 0.0]),
                ("d", vec![0.0, -1.0, 0.0, 0.0]),
                ("e", vec![0.0, 0.0, 1.0, 0.0]),
                ("f", vec![0.0, 0.0, -1.0, 0.0]),
            ],
        )
        .unwrap()
    }

    fn seeds(cells: [&[&str]; 4]) -> SeedSets {
        let own = |c: &[&str]| c.iter().map(|s| s.to_string()).collect();
        SeedSets {
            warm_pos: own(cells[0]),
            warm_neg: own(cells[1]),
            comp_pos: own(cells[2]),
            comp_neg: own(cells[3]),
            dropped_overlaps: vec![],
        }
    }

    #[test]
    fn toy_axes() {
        let (sub, report) = build_axes(
            &toy_space(),
            &seeds([&["a"], &["b"], &["c"], &["d"]]),
            AxisOptions::default(),
        )
        .unwrap();
        assert_eq!(sub.warmth_direction(), &[2.0, 0.0, 0.0, 0.0]);
        assert_eq!(sub.competence_direction(), &[0.0, 2.0, 0.0, 0.0]);
        assert_eq!(sub.gram_inverse(), [[0.25, 0.0], [0.0, 0.25]]);
        assert_eq!(report.used, [1, 1, 1, 1]);
    }

    #[test]
    fn two_seeds_per_cell() {
        let (sub, _) = build_axes(
            &toy_space(),
            &seeds([&["a", "e"], &["b", "f"], &["c"], &["d"]]),
            AxisOptions::default(),
        )
        .unwrap();
        assert_eq!(sub.warmth_direction(), &[1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_direction() {
        let err = build_axes(
            &toy_space(),
            &seeds([&["a"], &["a"], &["c"], &["d"]]),
            AxisOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ZeroDirection("warmth")));
    }

    #[test]
    fn parallel_directions() {
        let err =
            PolarSubspace::from_directions(vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NearParallel(_)));
    }

    #[test]
    fn oov_seed_cell() {
        let err = build_axes(
            &toy_space(),
            &seeds([&["zz"], &["b"], &["c"], &["d"]]),
            AxisOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::EmptySeedCell {
                dimension: "warmth",
                polarity: "positive"
            }
        ));
        let (_, report) = build_axes(
            &toy_space(),
            &seeds([&["a", "zz"], &["b"], &["c"], &["d"]]),
            AxisOptions::default(),
        )
        .unwrap();
        assert_eq!(report.oov_seeds, ["zz"]);
    }

    #[test]
    fn normalized_axes_option() {
        let (sub, _) = build_axes(
            &toy_space(),
            &seeds([&["a"], &["b"], &["c"], &["d"]]),
            AxisOptions {
                normalize_axes: true,
            },
        )
        .unwrap();
        assert_eq!(
            sub.project(&[1.0, 0.0, 0.0, 0.0]).unwrap(),
            PolarPoint::new(1.0, 0.0)
        );
    }

    #[test]
    fn toy_projection() {
        let (sub, _) = build_axes(
            &toy_space(),
            &seeds([&["a"], &["b"], &["c"], &["d"]]),
            AxisOptions::default(),
        )
        .unwrap();
        assert_eq!(
            sub.project(&[1.0, 0.0, 0.0, 0.0]).unwrap(),
            PolarPoint::new(0.5, 0.0)
        );
        let p = sub.project(&[0.6, 0.8, 0.0, 0.0]).unwrap();
        assert!((p.warmth - 0.3).abs() < 1e-15 && (p.competence - 0.4).abs() < 1e-15);
        assert_eq!(
            sub.project(&[0.0, 0.0, 1.0, 0.0]).unwrap(),
            PolarPoint::new(0.0, 0.0)
        );
        assert!(matches!(
            sub.project(&[1.0]),
            Err(Error::DimensionMismatch {
                expected: 4,
                actual: 1
            })
        ));
    }

    #[test]
    fn classification_rules() {
        let c = classify_point(PolarPoint::new(0.3, 0.4));
        assert_eq!(
            (c.quadrant, c.salient),
            (Quadrant::HcHw, Salience::Competence)
        );
        let c = classify_point(PolarPoint::new(-0.2, 0.1));
        assert_eq!((c.quadrant, c.salient), (Quadrant::HcLw, Salience::Warmth));
        let c = classify_point(PolarPoint::new(0.0, -0.5));
        assert_eq!(
            (c.quadrant, c.salient),
            (Quadrant::LcLw, Salience::Competence)
        );
        let c = classify_point(PolarPoint::new(0.2, -0.2));
        assert_eq!((c.salient, c.tie), (Salience::Warmth, true));
    }
}
