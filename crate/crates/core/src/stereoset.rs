//! StereoSet-style corpus ingestion.
//!
//! Only the intra-sentence condition is read. Each record carries a context
//! with a `BLANK` placeholder and candidate sentences labeled stereotype,
//! anti-stereotype or unrelated; the fill words are recovered by aligning
//! each candidate against the context.
//!
//! The normalized output (one JSON object per line with `target`, `domain`,
//! `stereotype`, `antistereotype`) is accepted as input as well.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use log::{info, warn};
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::{Error, Result};

pub const BLANK: &str = "BLANK";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Gender,
    Race,
    Profession,
    Religion,
}

impl Domain {
    fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gender" => Some(Domain::Gender),
            "race" | "nationality" | "race-color" => Some(Domain::Race),
            "profession" => Some(Domain::Profession),
            "religion" => Some(Domain::Religion),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum GoldLabel {
    #[serde(rename = "stereotype")]
    Stereotype,
    #[serde(rename = "anti-stereotype")]
    AntiStereotype,
    #[serde(rename = "unrelated")]
    Unrelated,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Candidate {
    #[serde(default)]
    pub id: String,
    pub sentence: String,
    pub gold_label: GoldLabel,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawRecord {
    #[serde(default)]
    pub id: String,
    pub target: String,
    pub bias_type: String,
    pub context: String,
    pub sentences: Vec<Candidate>,
}

impl RawRecord {
    fn candidate(&self, label: GoldLabel) -> Option<&str> {
        self.sentences
            .iter()
            .find(|c| c.gold_label == label)
            .map(|c| c.sentence.as_str())
    }
}

#[derive(Deserialize)]
struct StereoSetFile {
    data: StereoSetData,
}

#[derive(Deserialize)]
struct StereoSetData {
    #[serde(default)]
    intrasentence: Option<Vec<RawRecord>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPair {
    pub stereotype: String,
    pub antistereotype: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub annotator_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetGroup {
    pub name: String,
    pub domain: Domain,
    pub pairs: Vec<WordPair>,
}

impl TargetGroup {
    pub fn stereotypes(&self) -> Vec<&str> {
        self.pairs.iter().map(|p| p.stereotype.as_str()).collect()
    }

    pub fn antistereotypes(&self) -> Vec<&str> {
        self.pairs
            .iter()
            .map(|p| p.antistereotype.as_str())
            .collect()
    }
}

/// One line of the normalized corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedPair {
    pub target: String,
    pub domain: Domain,
    pub stereotype: String,
    pub antistereotype: String,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedCorpus {
    pub records: Vec<RawRecord>,
    pub skipped_no_blank: usize,
    pub notes: Vec<String>,
}

pub fn parse_stereoset(path: impl AsRef<Path>) -> Result<ParsedCorpus> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_stereoset_str(&text)
}

pub fn parse_stereoset_str(text: &str) -> Result<ParsedCorpus> {
    let file: StereoSetFile =
        serde_json::from_str(text).map_err(|e| Error::Corpus(e.to_string()))?;
    let mut corpus = ParsedCorpus::default();
    let Some(records) = file.data.intrasentence else {
        let note = "no intra-sentence section; nothing to ingest".to_string();
        info!("{note}");
        corpus.notes.push(note);
        return Ok(corpus);
    };
    for record in records {
        if record.context.matches(BLANK).count() == 1 {
            corpus.records.push(record);
        } else {
            corpus.skipped_no_blank += 1;
        }
    }
    if corpus.skipped_no_blank > 0 {
        warn!(
            "skipped {} records without a single BLANK",
            corpus.skipped_no_blank
        );
    }
    Ok(corpus)
}

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum ExtractError {
    #[error("context must contain exactly one BLANK")]
    BlankCount,
    #[error("sentence does not align with the context")]
    Misaligned,
    #[error("the blank spans no words")]
    EmptySpan,
}

/// Compares tokens ignoring case and trailing sentence punctuation.
fn same_token(a: &str, b: &str) -> bool {
    let trim = |s: &str| {
        s.trim_end_matches(['.', '!', '?', ',', ';', ':'])
            .to_lowercase()
    };
    trim(a) == trim(b)
}

/// Recovers the words a sentence puts where the context has `BLANK`.
pub fn extract_fill_word(
    context: &str,
    sentence: &str,
) -> std::result::Result<String, ExtractError> {
    if context.matches(BLANK).count() != 1 {
        return Err(ExtractError::BlankCount);
    }
    let ctx: Vec<&str> = context.split_whitespace().collect();
    let sent: Vec<&str> = sentence.split_whitespace().collect();
    let b = ctx
        .iter()
        .position(|t| t.contains(BLANK))
        .ok_or(ExtractError::BlankCount)?;
    let (prefix, suffix) = (&ctx[..b], &ctx[b + 1..]);

    if sent.len() < prefix.len() + suffix.len() {
        return Err(ExtractError::Misaligned);
    }
    let aligned = prefix.iter().zip(&sent).all(|(c, s)| same_token(c, s))
        && suffix
            .iter()
            .rev()
            .zip(sent.iter().rev())
            .all(|(c, s)| same_token(c, s));
    if !aligned {
        return Err(ExtractError::Misaligned);
    }

    let span = sent[prefix.len()..sent.len() - suffix.len()].join(" ");
    let span = span
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_lowercase();
    if span.is_empty() {
        return Err(ExtractError::EmptySpan);
    }
    Ok(span)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct AssemblyReport {
    pub groups: usize,
    pub pairs: usize,
    pub mean_pairs_per_group: f64,
    pub excluded_targets: Vec<String>,
    pub failed_extractions: usize,
    pub unknown_domain: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Assembly {
    pub groups: Vec<TargetGroup>,
    pub report: AssemblyReport,
}

/// Groups records by (case-folded) target and pairs each record's stereotype
/// fill with its anti-stereotype fill. Targets on `excluded` are dropped.
///
/// Groups come out sorted by target key, pairs by record id.
pub fn assemble_groups<S: AsRef<str>>(records: &[RawRecord], excluded: &[S]) -> Assembly {
    let excluded: Vec<String> = excluded
        .iter()
        .map(|s| s.as_ref().trim().to_lowercase())
        .collect();
    let mut report = AssemblyReport::default();
    let mut groups: BTreeMap<String, TargetGroup> = BTreeMap::new();

    for record in records {
        let key = record.target.trim().to_lowercase();
        if excluded.contains(&key) {
            if !report.excluded_targets.contains(&key) {
                report.excluded_targets.push(key);
            }
            continue;
        }
        let Some(domain) = Domain::parse(&record.bias_type) else {
            report.unknown_domain += 1;
            continue;
        };
        let fill = |label| {
            record
                .candidate(label)
                .ok_or(ExtractError::Misaligned)
                .and_then(|s| extract_fill_word(&record.context, s))
        };
        let (stereotype, antistereotype) =
            match (fill(GoldLabel::Stereotype), fill(GoldLabel::AntiStereotype)) {
                (Ok(s), Ok(a)) => (s, a),
                _ => {
                    report.failed_extractions += 1;
                    continue;
                }
            };
        groups
            .entry(key)
            .or_insert_with(|| TargetGroup {
                name: record.target.trim().to_owned(),
                domain,
                pairs: Vec::new(),
            })
            .pairs
            .push(WordPair {
                stereotype,
                antistereotype,
                annotator_id: Some(record.id.clone()).filter(|id| !id.is_empty()),
            });
    }

    let mut groups: Vec<TargetGroup> = groups.into_values().collect();
    for g in &mut groups {
        g.pairs.sort_by(|a, b| a.annotator_id.cmp(&b.annotator_id));
    }
    report.excluded_targets.sort();
    finish_report(&mut report, &groups);
    Assembly { groups, report }
}

fn finish_report(report: &mut AssemblyReport, groups: &[TargetGroup]) {
    report.groups = groups.len();
    report.pairs = groups.iter().map(|g| g.pairs.len()).sum();
    report.mean_pairs_per_group = if groups.is_empty() {
        0.0
    } else {
        report.pairs as f64 / groups.len() as f64
    };
}

/// Serializes groups as normalized JSON lines.
pub fn write_normalized<W: Write>(mut writer: W, groups: &[TargetGroup]) -> std::io::Result<()> {
    for g in groups {
        for p in &g.pairs {
            let line = NormalizedPair {
                target: g.name.clone(),
                domain: g.domain,
                stereotype: p.stereotype.clone(),
                antistereotype: p.antistereotype.clone(),
            };
            serde_json::to_writer(&mut writer, &line)?;
            writer.write_all(b"\n")?;
        }
    }
    Ok(())
}

/// Reads normalized JSON lines, applying the same exclusion and grouping rules.
pub fn read_normalized<S: AsRef<str>>(text: &str, excluded: &[S]) -> Result<Assembly> {
    let excluded: Vec<String> = excluded
        .iter()
        .map(|s| s.as_ref().trim().to_lowercase())
        .collect();
    let mut report = AssemblyReport::default();
    let mut groups: BTreeMap<String, TargetGroup> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let pair: NormalizedPair = serde_json::from_str(line)
            .map_err(|e| Error::Corpus(format!("line {}: {e}", i + 1)))?;
        let key = pair.target.trim().to_lowercase();
        if excluded.contains(&key) {
            if !report.excluded_targets.contains(&key) {
                report.excluded_targets.push(key);
            }
            continue;
        }
        let clean = |w: &str| w.trim().to_lowercase();
        let (stereotype, antistereotype) = (clean(&pair.stereotype), clean(&pair.antistereotype));
        if stereotype.is_empty() || antistereotype.is_empty() {
            report.failed_extractions += 1;
            continue;
        }
        groups
            .entry(key)
            .or_insert_with(|| TargetGroup {
                name: pair.target.trim().to_owned(),
                domain: pair.domain,
                pairs: Vec::new(),
            })
            .pairs
            .push(WordPair {
                stereotype,
                antistereotype,
                annotator_id: None,
            });
    }
    let groups: Vec<TargetGroup> = groups.into_values().collect();
    report.excluded_targets.sort();
    finish_report(&mut report, &groups);
    Ok(Assembly { groups, report })
}

/// Loads either corpus layout, telling them apart by content.
pub fn load_corpus<S: AsRef<str>>(
    path: impl AsRef<Path>,
    excluded: &[S],
) -> Result<(Assembly, ParsedCorpus)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let is_stereoset = serde_json::from_str::<serde_json::Value>(&text)
        .map(|v| v.get("data").is_some())
        .unwrap_or(false);
    if is_stereoset {
        let parsed = parse_stereoset_str(&text)?;
        let assembly = assemble_groups(&parsed.records, excluded);
        Ok((assembly, parsed))
    } else {
        Ok((read_normalized(&text, excluded)?, ParsedCorpus::default()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extracts_single_word() {
        assert_eq!(
            extract_fill_word(
                "Women are known for being overly BLANK.",
                "Women are known for being overly emotional."
            )
            .unwrap(),
            "emotional"
        );
    }

    #[test]
    fn extracts_multi_word_span() {
        assert_eq!(
            extract_fill_word("The BLANK man", "The very tall man").unwrap(),
            "very tall"
        );
    }

    #[test]
    fn tolerates_case_and_final_punctuation() {
        assert_eq!(
            extract_fill_word("the BLANK man.", "The Hard-Working man").unwrap(),
            "hard-working"
        );
        assert_eq!(
            extract_fill_word("He is BLANK!", "he is Lazy.").unwrap(),
            "lazy"
        );
    }

    #[test]
    fn extraction_failures() {
        assert_eq!(
            extract_fill_word("X BLANK", "X"),
            Err(ExtractError::EmptySpan)
        );
        assert_eq!(
            extract_fill_word("X BLANK", "X ..."),
            Err(ExtractError::EmptySpan)
        );
        assert_eq!(
            extract_fill_word("The BLANK man", "A tall woman"),
            Err(ExtractError::Misaligned)
        );
        assert_eq!(
            extract_fill_word("No blank here", "No blank here"),
            Err(ExtractError::BlankCount)
        );
        assert_eq!(
            extract_fill_word("BLANK and BLANK", "a and b"),
            Err(ExtractError::BlankCount)
        );
    }

    fn record(id: &str, target: &str, context: &str, s: &str, a: &str) -> RawRecord {
        let c = |sentence: String, gold_label| Candidate {
            id: String::new(),
            sentence,
            gold_label,
        };
        RawRecord {
            id: id.into(),
            target: target.into(),
            bias_type: "race".into(),
            context: context.into(),
            sentences: vec![
                c(context.replace(BLANK, s), GoldLabel::Stereotype),
                c(context.replace(BLANK, a), GoldLabel::AntiStereotype),
                c(context.replace(BLANK, "blue"), GoldLabel::Unrelated),
            ],
        }
    }

    #[test]
    fn groups_and_excludes() {
        let records = vec![
            record("2", "Norwegian", "The Norwegian is BLANK.", "cold", "warm"),
            record("1", "Norwegian", "Norwegians are BLANK.", "tall", "short"),
            record("3", "Norway", "Norway is BLANK.", "cold", "hot"),
        ];
        let a = assemble_groups(&records, &["norway"]);
        assert_eq!(a.groups.len(), 1);
        let g = &a.groups[0];
        assert_eq!(g.name, "Norwegian");
        assert_eq!(g.stereotypes(), ["tall", "cold"]);
        assert_eq!(a.report.excluded_targets, ["norway"]);
        assert_eq!(a.report.mean_pairs_per_group, 2.0);
    }

    #[test]
    fn parses_intrasentence_only() {
        let text = r#"{"version":"1","data":{"intersentence":[]}}"#;
        let parsed = parse_stereoset_str(text).unwrap();
        assert!(parsed.records.is_empty());
        assert_eq!(parsed.notes.len(), 1);

        let text = r#"{"data":{"intrasentence":[
            {"id":"a","target":"women","bias_type":"gender","context":"Women are known for being overly BLANK.",
             "sentences":[{"sentence":"Women are known for being overly emotional.","gold_label":"stereotype"},
                          {"sentence":"Women are known for being overly rational.","gold_label":"anti-stereotype"},
                          {"sentence":"Women are known for being overly cat.","gold_label":"unrelated"}]},
            {"id":"b","target":"women","bias_type":"gender","context":"Women are nice.","sentences":[]}]}}"#;
        let parsed = parse_stereoset_str(text).unwrap();
        assert_eq!(parsed.records.len(), 1);
        assert_eq!(parsed.records[0].sentences.len(), 3);
        assert_eq!(parsed.skipped_no_blank, 1);

        assert!(matches!(
            parse_stereoset_str("{not json"),
            Err(Error::Corpus(_))
        ));
    }

    #[test]
    fn normalized_round_trip() {
        let records = vec![
            record("1", "Ethiopian", "The Ethiopian is BLANK.", "poor", "rich"),
            record("2", "chemist", "The chemist is BLANK.", "nerdy", "cool"),
        ];
        let a = assemble_groups::<&str>(&records, &[]);
        let mut buf = Vec::new();
        write_normalized(&mut buf, &a.groups).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            r#"{"target":"chemist","domain":"race","stereotype":"nerdy","antistereotype":"cool"}"#
        );
        let back = read_normalized::<&str>(&text, &[]).unwrap();
        let strip = |gs: &[TargetGroup]| -> Vec<(String, Vec<(String, String)>)> {
            gs.iter()
                .map(|g| {
                    (
                        g.name.clone(),
                        g.pairs
                            .iter()
                            .map(|p| (p.stereotype.clone(), p.antistereotype.clone()))
                            .collect(),
                    )
                })
                .collect()
        };
        assert_eq!(strip(&back.groups), strip(&a.groups));
    }
}
