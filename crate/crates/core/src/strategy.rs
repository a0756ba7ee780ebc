//! Classifying how an anti-stereotype relates to its stereotype.
//!
//! A pair is a direct antonym when the anti-stereotype's lemma matches the
//! lemma of one of the stereotype's antonyms. Otherwise the two projected
//! points are compared by quadrant, which always yields exactly one of four
//! relations: opposite quadrant, warmth flipped, competence flipped, or the
//! same quadrant.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::antonym::AntonymResource;
use crate::cluster::GroupCluster;
use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::format::{csv_field, format_number};
use crate::polar::{classify_point, PolarPoint, PolarSubspace, Quadrant, Salience};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyLabel {
    DirectAntonym,
    OppositeQuadrant,
    FlipWarmth,
    FlipCompetence,
    SameQuadrant,
}

impl StrategyLabel {
    pub const ALL: [StrategyLabel; 5] = [
        StrategyLabel::DirectAntonym,
        StrategyLabel::OppositeQuadrant,
        StrategyLabel::FlipWarmth,
        StrategyLabel::FlipCompetence,
        StrategyLabel::SameQuadrant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyLabel::DirectAntonym => "direct_antonym",
            StrategyLabel::OppositeQuadrant => "opposite_quadrant",
            StrategyLabel::FlipWarmth => "flip_warmth",
            StrategyLabel::FlipCompetence => "flip_competence",
            StrategyLabel::SameQuadrant => "same_quadrant",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StrategyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for StrategyLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Quadrant relation between two points; ignores antonymy.
pub fn geometric_label(stereotype: PolarPoint, anti: PolarPoint) -> StrategyLabel {
    let (s, a) = (Quadrant::of(stereotype), Quadrant::of(anti));
    let warmth_flipped = s.high_warmth() != a.high_warmth();
    let competence_flipped = s.high_competence() != a.high_competence();
    match (warmth_flipped, competence_flipped) {
        (true, true) => StrategyLabel::OppositeQuadrant,
        (true, false) => StrategyLabel::FlipWarmth,
        (false, true) => StrategyLabel::FlipCompetence,
        (false, false) => StrategyLabel::SameQuadrant,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifiedPair {
    pub stereotype: String,
    pub antistereotype: String,
    pub label: StrategyLabel,
    pub stereotype_point: PolarPoint,
    pub anti_point: PolarPoint,
}

pub fn classify_pair(
    res: &AntonymResource,
    space: &EmbeddingSpace,
    sub: &PolarSubspace,
    stereotype: &str,
    antistereotype: &str,
) -> Result<ClassifiedPair> {
    let stereotype_point = sub.project_term(space, stereotype)?;
    let anti_point = sub.project_term(space, antistereotype)?;
    let label = if res.is_antonym_match(stereotype, antistereotype) {
        StrategyLabel::DirectAntonym
    } else {
        geometric_label(stereotype_point, anti_point)
    };
    Ok(ClassifiedPair {
        stereotype: stereotype.to_owned(),
        antistereotype: antistereotype.to_owned(),
        label,
        stereotype_point,
        anti_point,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Column {
    Overall,
    Quadrant(Quadrant),
    CompetenceSalient,
    WarmthSalient,
}

impl Column {
    pub const ALL: [Column; 7] = [
        Column::Overall,
        Column::Quadrant(Quadrant::HcHw),
        Column::Quadrant(Quadrant::LcHw),
        Column::Quadrant(Quadrant::LcLw),
        Column::Quadrant(Quadrant::HcLw),
        Column::CompetenceSalient,
        Column::WarmthSalient,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Overall => "overall",
            Column::Quadrant(q) => q.as_str(),
            Column::CompetenceSalient => "|C|>|W|",
            Column::WarmthSalient => "|W|>|C|",
        }
    }
}

impl Serialize for Column {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ColumnCounts {
    pub counts: [usize; 5],
}

impl ColumnCounts {
    pub fn n(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn count(&self, label: StrategyLabel) -> usize {
        self.counts[label.index()]
    }

    /// Percentage for `label`, or `None` for an empty column.
    pub fn percent(&self, label: StrategyLabel) -> Option<f64> {
        let n = self.n();
        (n > 0).then(|| 100.0 * self.count(label) as f64 / n as f64)
    }
}

impl Serialize for ColumnCounts {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            n: usize,
            counts: BTreeMap<&'static str, usize>,
            percentages: BTreeMap<&'static str, Option<f64>>,
        }
        View {
            n: self.n(),
            counts: StrategyLabel::ALL
                .iter()
                .map(|l| (l.as_str(), self.count(*l)))
                .collect(),
            percentages: StrategyLabel::ALL
                .iter()
                .map(|l| (l.as_str(), self.percent(*l)))
                .collect(),
        }
        .serialize(s)
    }
}

/// Strategy distribution overall, per stereotype quadrant and per salient dimension.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StrategyTable {
    pub columns: BTreeMap<Column, ColumnCounts>,
    /// Pairs or groups left out (unresolvable words, missing sides).
    pub excluded: usize,
}

impl StrategyTable {
    fn new() -> Self {
        StrategyTable {
            columns: Column::ALL
                .iter()
                .map(|c| (*c, ColumnCounts::default()))
                .collect(),
            excluded: 0,
        }
    }

    fn record(&mut self, stereotype: PolarPoint, label: StrategyLabel) {
        let class = classify_point(stereotype);
        let salience = match class.salient {
            Salience::Competence => Column::CompetenceSalient,
            Salience::Warmth => Column::WarmthSalient,
        };
        for column in [Column::Overall, Column::Quadrant(class.quadrant), salience] {
            self.columns
                .get_mut(&column)
                .expect("all columns present")
                .counts[label.index()] += 1;
        }
    }

    pub fn column(&self, column: Column) -> &ColumnCounts {
        &self.columns[&column]
    }

    /// Rows are strategies, columns as in [`Column::ALL`]. The second header
    /// row carries the column sizes; empty columns print `—`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("strategy");
        for c in Column::ALL {
            out.push(',');
            out.push_str(&csv_field(c.name()));
        }
        out.push_str("\nn");
        for c in Column::ALL {
            out.push_str(&format!(",{}", self.column(c).n()));
        }
        out.push('\n');
        for label in StrategyLabel::ALL {
            out.push_str(label.as_str());
            for c in Column::ALL {
                out.push(',');
                match self.column(c).percent(label) {
                    Some(p) => out.push_str(&format_number(p)),
                    None => out.push('—'),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Tallies individually classified pairs, keyed by the stereotype point.
pub fn pairwise_table(pairs: &[ClassifiedPair]) -> StrategyTable {
    let mut table = StrategyTable::new();
    for p in pairs {
        table.record(p.stereotype_point, p.label);
    }
    table
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupStrategy {
    pub target: String,
    pub stereotype_representative: String,
    pub anti_representative: String,
    pub label: StrategyLabel,
    pub stereotype_mean: PolarPoint,
    pub anti_mean: PolarPoint,
}

/// One label per group: antonymy between the two representative words,
/// otherwise the quadrant relation between the two cluster means.
pub fn classify_group(
    res: &AntonymResource,
    stereotype: &GroupCluster,
    anti: &GroupCluster,
) -> GroupStrategy {
    let label = if res.is_antonym_match(&stereotype.representative, &anti.representative) {
        StrategyLabel::DirectAntonym
    } else {
        geometric_label(stereotype.mean_point, anti.mean_point)
    };
    GroupStrategy {
        target: stereotype.target.clone(),
        stereotype_representative: stereotype.representative.clone(),
        anti_representative: anti.representative.clone(),
        label,
        stereotype_mean: stereotype.mean_point,
        anti_mean: anti.mean_point,
    }
}

/// Group-level table. A group lacking either cluster is an error.
pub fn group_level_table(
    res: &AntonymResource,
    clusters: &[(Option<GroupCluster>, Option<GroupCluster>)],
) -> Result<(StrategyTable, Vec<GroupStrategy>)> {
    let mut table = StrategyTable::new();
    let mut rows = Vec::with_capacity(clusters.len());
    for pair in clusters {
        let (s, a) = match pair {
            (Some(s), Some(a)) => (s, a),
            (Some(s), None) => return Err(Error::MissingSide(s.target.clone(), "anti-stereotype")),
            (None, Some(a)) => return Err(Error::MissingSide(a.target.clone(), "stereotype")),
            (None, None) => return Err(Error::MissingSide(String::new(), "stereotype")),
        };
        let row = classify_group(res, s, a);
        table.record(row.stereotype_mean, row.label);
        rows.push(row);
    }
    Ok((table, rows))
}
