//! Warmth/competence lexicons and the four seed sets that define the axes.
//!
//! Seed and extended tiers share one CSV layout:
//!
//! ```text
//! word,dimension,facet,polarity,tier
//! friendly,warmth,sociability,+1,seed
//! forgetful,competence,ability,-1,extended
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};

const COLUMNS: [&str; 5] = ["word", "dimension", "facet", "polarity", "tier"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Warmth,
    Competence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Facet {
    Sociability,
    Morality,
    Agency,
    Ability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Seed,
    Extended,
}

impl Facet {
    pub fn dimension(self) -> Dimension {
        match self {
            Facet::Sociability | Facet::Morality => Dimension::Warmth,
            Facet::Agency | Facet::Ability => Dimension::Competence,
        }
    }
}

impl Polarity {
    pub fn flipped(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

impl Dimension {
    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::Warmth => "warmth",
            Dimension::Competence => "competence",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Facet::Sociability => "sociability",
            Facet::Morality => "morality",
            Facet::Agency => "agency",
            Facet::Ability => "ability",
        })
    }
}

impl FromStr for Dimension {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "warmth" => Ok(Dimension::Warmth),
            "competence" => Ok(Dimension::Competence),
            other => Err(format!("unknown dimension {other:?}")),
        }
    }
}

impl FromStr for Facet {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sociability" => Ok(Facet::Sociability),
            "morality" => Ok(Facet::Morality),
            "agency" => Ok(Facet::Agency),
            "ability" => Ok(Facet::Ability),
            other => Err(format!("unknown facet {other:?}")),
        }
    }
}

impl FromStr for Polarity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "+1" | "1" | "pos" | "positive" => Ok(Polarity::Positive),
            "-1" | "neg" | "negative" => Ok(Polarity::Negative),
            other => Err(format!("unknown polarity {other:?}")),
        }
    }
}

impl FromStr for Tier {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "seed" => Ok(Tier::Seed),
            "extended" => Ok(Tier::Extended),
            other => Err(format!("unknown tier {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub word: String,
    pub dimension: Dimension,
    pub facet: Facet,
    pub polarity: Polarity,
    pub tier: Tier,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub entries: Vec<LexiconEntry>,
    pub warnings: Vec<String>,
}

pub fn parse_lexicon(path: impl AsRef<Path>) -> Result<Lexicon> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_lexicon(file)
}

/// Parses lexicon CSV, collapsing duplicate `(word, dimension)` rows by
/// majority polarity. Ties are dropped with a warning.
pub fn read_lexicon<R: Read>(reader: R) -> Result<Lexicon> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(reader);

    let headers = csv
        .headers()
        .map_err(|e| Error::Lexicon(e.to_string()))?
        .clone();
    if headers.iter().all(|h| h.is_empty()) {
        return Err(Error::Lexicon("empty file".into()));
    }
    let mut columns = [0usize; 5];
    for (slot, name) in columns.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Lexicon(format!("missing header column {name:?}")))?;
    }

    let mut rows: Vec<LexiconEntry> = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::Lexicon(format!("line {line}: {e}")))?;
        let field = |k: usize| record.get(columns[k]).unwrap_or("");
        let at = |msg: String| Error::Lexicon(format!("line {line}: {msg}"));

        let word = field(0).to_lowercase();
        if word.is_empty() {
            return Err(at("empty word".into()));
        }
        let facet: Facet = field(2).parse().map_err(at)?;
        let dimension: Dimension = field(1).parse().map_err(at)?;
        if facet.dimension() != dimension {
            return Err(at(format!("facet {facet} does not belong to {dimension}")));
        }
        rows.push(LexiconEntry {
            word,
            dimension,
            facet,
            polarity: field(3).parse().map_err(at)?,
            tier: field(4).parse().map_err(at)?,
        });
    }
    if rows.is_empty() {
        return Err(Error::Lexicon("empty file".into()));
    }
    Ok(collapse_duplicates(rows))
}

fn collapse_duplicates(rows: Vec<LexiconEntry>) -> Lexicon {
    // (positive votes, negative votes, first row per polarity)
    type Tally = (usize, usize, Option<usize>, Option<usize>);
    let mut order: Vec<(String, Dimension)> = Vec::new();
    let mut tallies: HashMap<(String, Dimension), Tally> = HashMap::new();
    for (i, row) in rows.iter().enumerate() {
        let key = (row.word.clone(), row.dimension);
        let t = tallies.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            (0, 0, None, None)
        });
        match row.polarity {
            Polarity::Positive => {
                t.0 += 1;
                t.2.get_or_insert(i);
            }
            Polarity::Negative => {
                t.1 += 1;
                t.3.get_or_insert(i);
            }
        }
    }

    let mut lexicon = Lexicon::default();
    for key in order {
        let (pos, neg, first_pos, first_neg) = tallies[&key];
        let winner = match pos.cmp(&neg) {
            std::cmp::Ordering::Greater => first_pos,
            std::cmp::Ordering::Less => first_neg,
            std::cmp::Ordering::Equal => {
                let msg = format!("dropping {:?} ({}): polarity tie {pos}-{neg}", key.0, key.1);
                warn!("{msg}");
                lexicon.warnings.push(msg);
                None
            }
        };
        if let Some(i) = winner {
            lexicon.entries.push(rows[i].clone());
        }
    }
    lexicon
}

/// Writes entries in the canonical CSV form read by [`read_lexicon`].
pub fn write_lexicon<W: Write>(writer: W, entries: &[LexiconEntry]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    let csv_err = |e: csv::Error| Error::Lexicon(e.to_string());
    csv.write_record(COLUMNS).map_err(csv_err)?;
    for e in entries {
        let polarity = match e.polarity {
            Polarity::Positive => "+1",
            Polarity::Negative => "-1",
        };
        let tier = match e.tier {
            Tier::Seed => "seed",
            Tier::Extended => "extended",
        };
        csv.write_record([
            e.word.as_str(),
            e.dimension.as_str(),
            &e.facet.to_string(),
            polarity,
            tier,
        ])
        .map_err(csv_err)?;
    }
    csv.flush().map_err(|e| Error::io("<lexicon>", e))
}

/// The four pooled seed sets (warmth+/-, competence+/-).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedSets {
    pub warm_pos: Vec<String>,
    pub warm_neg: Vec<String>,
    pub comp_pos: Vec<String>,
    pub comp_neg: Vec<String>,
    /// Words that were seeds in more than one cell; removed from all of them.
    pub dropped_overlaps: Vec<String>,
}

impl SeedSets {
    pub fn cell(&self, dimension: Dimension, polarity: Polarity) -> &[String] {
        match (dimension, polarity) {
            (Dimension::Warmth, Polarity::Positive) => &self.warm_pos,
            (Dimension::Warmth, Polarity::Negative) => &self.warm_neg,
            (Dimension::Competence, Polarity::Positive) => &self.comp_pos,
            (Dimension::Competence, Polarity::Negative) => &self.comp_neg,
        }
    }

    /// `(N1, N2, N3, N4)`.
    pub fn counts(&self) -> [usize; 4] {
        [
            self.warm_pos.len(),
            self.warm_neg.len(),
            self.comp_pos.len(),
            self.comp_neg.len(),
        ]
    }

    pub fn contains(&self, word: &str) -> bool {
        [
            &self.warm_pos,
            &self.warm_neg,
            &self.comp_pos,
            &self.comp_neg,
        ]
        .iter()
        .any(|cell| cell.iter().any(|w| w == word))
    }
}

const CELLS: [(Dimension, Polarity); 4] = [
    (Dimension::Warmth, Polarity::Positive),
    (Dimension::Warmth, Polarity::Negative),
    (Dimension::Competence, Polarity::Positive),
    (Dimension::Competence, Polarity::Negative),
];

/// Pools seed-tier entries into the four (dimension, polarity) cells.
pub fn build_seed_sets(entries: &[LexiconEntry]) -> Result<SeedSets> {
    let mut cells: [Vec<String>; 4] = Default::default();
    let mut seen: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
    for e in entries.iter().filter(|e| e.tier == Tier::Seed) {
        let slot = CELLS
            .iter()
            .position(|&c| c == (e.dimension, e.polarity))
            .expect("all cells enumerated");
        if seen.entry(&e.word).or_default().insert(slot) {
            cells[slot].push(e.word.clone());
        }
    }

    let dropped: Vec<String> = seen
        .iter()
        .filter(|(_, slots)| slots.len() > 1)
        .map(|(w, _)| w.to_string())
        .collect();
    if !dropped.is_empty() {
        warn!("seed words present in several cells were dropped: {dropped:?}");
        for cell in cells.iter_mut() {
            cell.retain(|w| !dropped.contains(w));
        }
    }

    for (cell, (dimension, polarity)) in cells.iter().zip(CELLS) {
        if cell.is_empty() {
            return Err(Error::EmptySeedCell {
                dimension: dimension.as_str(),
                polarity: match polarity {
                    Polarity::Positive => "positive",
                    Polarity::Negative => "negative",
                },
            });
        }
    }

    let [warm_pos, warm_neg, comp_pos, comp_neg] = cells;
    Ok(SeedSets {
        warm_pos,
        warm_neg,
        comp_pos,
        comp_neg,
        dropped_overlaps: dropped,
    })
}

/// Extended-tier entries that survive seed-overlap and vocabulary filtering.
#[derive(Debug, Clone, Default)]
pub struct ValidationSet {
    pub entries: Vec<LexiconEntry>,
    pub removed_seed_overlap: usize,
    pub removed_oov: usize,
}

impl ValidationSet {
    pub fn skipped(&self) -> usize {
        self.removed_seed_overlap + self.removed_oov
    }
}

/// Extended entries minus seed words minus words missing from `space`.
pub fn validation_set(
    entries: &[LexiconEntry],
    seeds: &SeedSets,
    space: &EmbeddingSpace,
) -> ValidationSet {
    validation_set_multi(entries, seeds, &[space])
}

/// As [`validation_set`], but a word must have a vector in every space.
pub fn validation_set_multi(
    entries: &[LexiconEntry],
    seeds: &SeedSets,
    spaces: &[&EmbeddingSpace],
) -> ValidationSet {
    let mut set = ValidationSet::default();
    for e in entries.iter().filter(|e| e.tier == Tier::Extended) {
        if seeds.contains(&e.word) {
            set.removed_seed_overlap += 1;
        } else if !spaces.iter().all(|s| s.contains(&e.word)) {
            set.removed_oov += 1;
        } else {
            set.entries.push(e.clone());
        }
    }
    set
}
