//! Offline antonym, synonym and lemma resources.
//!
//! All three files are tab-separated:
//!
//! ```text
//! poor<TAB>rich,wealthy      (antonyms / synonyms: word, comma-separated list)
//! caring<TAB>care            (lemmas: word, lemma)
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub struct AntonymResource {
    antonyms: BTreeMap<String, BTreeSet<String>>,
    synonyms: BTreeMap<String, BTreeSet<String>>,
    lemmas: Option<HashMap<String, String>>,
    vocabulary: BTreeSet<String>,
    pub warnings: Vec<String>,
}

fn read_optional(path: Option<&Path>) -> Result<Option<String>> {
    match path {
        Some(p) => fs::read_to_string(p).map(Some).map_err(|e| Error::io(p, e)),
        None => Ok(None),
    }
}

impl AntonymResource {
    /// Loads the antonym file and, when given, the synonym and lemma files.
    pub fn load(
        antonyms: impl AsRef<Path>,
        synonyms: Option<&Path>,
        lemmas: Option<&Path>,
    ) -> Result<Self> {
        let path = antonyms.as_ref();
        let antonyms = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_strs(
            &antonyms,
            read_optional(synonyms)?.as_deref(),
            read_optional(lemmas)?.as_deref(),
        )
    }

    pub fn from_strs(antonyms: &str, synonyms: Option<&str>, lemmas: Option<&str>) -> Result<Self> {
        let mut res = AntonymResource::default();
        res.antonyms = parse_lists(antonyms, "antonyms", &mut res.warnings, true)?;
        if let Some(text) = synonyms {
            res.synonyms = parse_lists(text, "synonyms", &mut res.warnings, false)?;
        }
        if let Some(text) = lemmas {
            let mut table = HashMap::new();
            for (i, line) in text.lines().enumerate() {
                let Some((word, lemma)) = split_row(line) else {
                    continue;
                };
                let lemma = lemma.trim().to_lowercase();
                if lemma.is_empty() {
                    return Err(parse_error("lemmas", i, "missing lemma"));
                }
                table.insert(word, lemma);
            }
            res.lemmas = Some(table);
        }
        for (k, vs) in res.antonyms.iter().chain(&res.synonyms) {
            res.vocabulary.insert(k.clone());
            res.vocabulary.extend(vs.iter().cloned());
        }
        if let Some(table) = &res.lemmas {
            res.vocabulary.extend(table.keys().cloned());
            res.vocabulary.extend(table.values().cloned());
        }
        Ok(res)
    }

    pub fn direct_antonyms(&self, word: &str) -> Option<&BTreeSet<String>> {
        self.antonyms.get(&word.trim().to_lowercase())
    }

    /// Antonyms of the word together with antonyms of each of its synonyms.
    pub fn antonym_set(&self, word: &str) -> BTreeSet<String> {
        let word = word.trim().to_lowercase();
        let mut out = self.antonyms.get(&word).cloned().unwrap_or_default();
        if let Some(syns) = self.synonyms.get(&word) {
            for s in syns {
                if let Some(a) = self.antonyms.get(s) {
                    out.extend(a.iter().cloned());
                }
            }
        }
        out
    }

    /// Lemma from the table when listed, otherwise by suffix rules.
    pub fn lemma(&self, word: &str) -> String {
        let word = word.trim().to_lowercase();
        if let Some(lemma) = self.lemmas.as_ref().and_then(|t| t.get(&word)) {
            return lemma.clone();
        }
        let known = |w: &str| self.vocabulary.contains(w);
        strip_suffixes(&word, &known)
    }

    /// Whether the anti-stereotype shares a lemma with any antonym of the stereotype.
    pub fn is_antonym_match(&self, stereotype: &str, antistereotype: &str) -> bool {
        let target = self.lemma(antistereotype);
        self.antonym_set(stereotype)
            .iter()
            .any(|a| self.lemma(a) == target)
    }
}

fn parse_error(kind: &str, line: usize, message: &str) -> Error {
    Error::Parse {
        path: kind.into(),
        line: line + 1,
        message: message.into(),
    }
}

fn split_row(line: &str) -> Option<(String, &str)> {
    let line = line.trim_end_matches(['\r', '\n']);
    if line.trim().is_empty() || line.starts_with('#') {
        return None;
    }
    let (word, rest) = line.split_once('\t').unwrap_or((line, ""));
    Some((word.trim().to_lowercase(), rest))
}

fn parse_lists(
    text: &str,
    kind: &str,
    warnings: &mut Vec<String>,
    drop_self: bool,
) -> Result<BTreeMap<String, BTreeSet<String>>> {
    let mut map: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let Some((word, rest)) = split_row(line) else {
            continue;
        };
        if word.is_empty() {
            return Err(parse_error(kind, i, "empty word"));
        }
        let mut items: BTreeSet<String> = rest
            .split(',')
            .map(|s| s.trim().to_lowercase())
            .filter(|s| !s.is_empty())
            .collect();
        if drop_self && items.remove(&word) {
            let msg = format!("{kind} line {}: dropped self-antonym {word:?}", i + 1);
            warn!("{msg}");
            warnings.push(msg);
        }
        if items.is_empty() {
            continue;
        }
        map.entry(word).or_default().extend(items);
    }
    Ok(map)
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

fn has_vowel(s: &str) -> bool {
    s.bytes().any(is_vowel)
}

/// Ends consonant-vowel-consonant, last consonant not w/x/y, with a single
/// vowel group before it ("car", "hop", "lov").
fn wants_silent_e(stem: &str) -> bool {
    let b = stem.as_bytes();
    let n = b.len();
    if n < 3 {
        return false;
    }
    let (c1, v, c2) = (b[n - 3], b[n - 2], b[n - 1]);
    let vowel_groups = {
        let mut groups = 0;
        let mut prev = false;
        for &c in b {
            let v = is_vowel(c);
            if v && !prev {
                groups += 1;
            }
            prev = v;
        }
        groups
    };
    !is_vowel(c1)
        && is_vowel(v)
        && !is_vowel(c2)
        && !matches!(c2, b'w' | b'x' | b'y')
        && vowel_groups == 1
}

fn undouble(stem: &str) -> Option<&str> {
    let b = stem.as_bytes();
    let n = b.len();
    (n >= 3
        && b[n - 1] == b[n - 2]
        && !is_vowel(b[n - 1])
        && !matches!(b[n - 1], b'l' | b's' | b'z'))
    .then(|| &stem[..n - 1])
}

/// Restores the base of an `-ing` / `-ed` stem.
fn verbal_base(stem: &str, known: &dyn Fn(&str) -> bool) -> String {
    if let Some(s) = undouble(stem) {
        return s.to_owned();
    }
    if known(stem) {
        return stem.to_owned();
    }
    let with_e = format!("{stem}e");
    if known(&with_e) || wants_silent_e(stem) {
        return with_e;
    }
    stem.to_owned()
}

fn strip_once(word: &str, known: &dyn Fn(&str) -> bool) -> Option<String> {
    if let Some(stem) = word.strip_suffix("ies") {
        if stem.len() >= 2 && !stem.ends_with(['a', 'e']) {
            return Some(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if stem.len() >= 2 && !stem.ends_with(['a', 'e', 'o']) {
            let with_e = format!("{stem}e");
            return Some(if known(&with_e) && !known(stem) {
                with_e
            } else {
                stem.to_owned()
            });
        }
    }
    if let Some(stem) = word.strip_suffix('s') {
        if stem.len() >= 2 && !stem.ends_with(['s', 'u', 'i']) {
            return Some(stem.to_owned());
        }
    }
    if let Some(stem) = word.strip_suffix("ing") {
        if stem.len() >= 2 && has_vowel(stem) {
            return Some(verbal_base(stem, known));
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        if stem.len() >= 3 && has_vowel(stem) && !stem.ends_with('e') {
            return Some(verbal_base(stem, known));
        }
    }
    None
}

/// Rule-based lemmatizer, applied until no rule fires so that it is idempotent.
fn strip_suffixes(word: &str, known: &dyn Fn(&str) -> bool) -> String {
    let mut current = word.to_owned();
    // Every rule shortens the word, so this terminates.
    while let Some(next) = strip_once(&current, known) {
        if next.len() >= current.len() {
            break;
        }
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bare(word: &str) -> String {
        strip_suffixes(word, &|_| false)
    }

    #[test]
    fn parses_rows() {
        let res = AntonymResource::from_strs("poor\trich,wealthy\nhot\thot\n", None, None).unwrap();
        assert_eq!(
            res.antonym_set("poor"),
            BTreeSet::from(["rich".to_string(), "wealthy".to_string()])
        );
        assert!(res.antonym_set("hot").is_empty());
        assert_eq!(res.warnings.len(), 1);
    }

    #[test]
    fn synonym_expansion() {
        let res =
            AntonymResource::from_strs("poor\trich\nbroke\tsolvent\n", Some("poor\tbroke"), None)
                .unwrap();
        assert_eq!(
            res.antonym_set("poor"),
            BTreeSet::from(["rich".to_string(), "solvent".to_string()])
        );
        assert!(res.antonym_set("unknown").is_empty());

        let res = AntonymResource::from_strs("poor\trich\n", Some("glad\thappy"), None).unwrap();
        assert!(res.antonym_set("glad").is_empty());
    }

    #[test]
    fn rule_lemmas() {
        assert_eq!(bare("caring"), "care");
        assert_eq!(bare("rich"), "rich");
        assert_eq!(bare("studies"), "study");
        assert_eq!(bare("weakened"), "weaken");
        assert_eq!(bare("running"), "run");
        assert_eq!(bare("skilled"), "skill");
        assert_eq!(bare("working"), "work");
        assert_eq!(bare("loving"), "love");
        assert_eq!(bare("ruthless"), "ruthless");
        assert_eq!(bare("famous"), "famous");
        assert_eq!(bare("need"), "need");
        assert_eq!(bare("agreed"), "agreed");
        assert_eq!(bare("boxes"), "box");
        assert_eq!(bare("string"), "string");
    }

    #[test]
    fn es_rule_uses_known_words() {
        let res = AntonymResource::from_strs("kind\tcruel\ncare\tneglect\n", None, None).unwrap();
        assert_eq!(res.lemma("cares"), "care");
        assert_eq!(bare("cares"), "car");
    }

    #[test]
    fn table_takes_precedence() {
        let res = AntonymResource::from_strs("a\tb\n", None, Some("better\tgood\n")).unwrap();
        assert_eq!(res.lemma("Better"), "good");
    }

    #[test]
    fn lemma_is_idempotent_on_word_list() {
        let words = [
            "caring",
            "studies",
            "weakened",
            "running",
            "horses",
            "boxes",
            "skilled",
            "hating",
            "loved",
            "working",
            "hardworking",
            "uneducated",
            "educated",
            "lazy",
            "ruthless",
            "altruistic",
            "wealthy",
            "needs",
            "flies",
            "tries",
            "stopped",
            "seeing",
            "agreed",
            "analysis",
            "bus",
            "mature",
        ];
        for w in words {
            let once = bare(w);
            assert_eq!(bare(&once), once, "{w}");
        }
    }

    #[test]
    fn antonym_matching() {
        let res =
            AntonymResource::from_strs("poor\trich\ncaring\tuncaring\nstrong\tweak\n", None, None)
                .unwrap();
        assert!(res.is_antonym_match("poor", "rich"));
        assert!(res.is_antonym_match("Poor", "Rich"));
        assert!(!res.is_antonym_match("caring", "rude"));
        assert!(!res.is_antonym_match("strong", "weakened"));
        // not symmetric
        assert!(!res.is_antonym_match("rich", "poor"));
    }

    #[test]
    fn antonym_file_is_required() {
        assert!(matches!(
            AntonymResource::load("/nonexistent/antonyms.tsv", None, None),
            Err(Error::Io { .. })
        ));
    }
}
