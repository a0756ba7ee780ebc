//! Loading and serving pretrained word vectors.
//!
//! Two text layouts are accepted and told apart by the shape of the first
//! line:
//!
//! * word2vec text: a `V d` header, then one `token x1 .. xd` line per word;
//! * GloVe text: the same body without a header.
//!
//! Every vector is divided by its Euclidean norm at load time, and tokens are
//! case-folded, so the space only ever holds lowercase keys mapped to unit
//! vectors.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::vector::{self, Accumulator};

/// Share of data lines that may be malformed before loading fails.
pub const DEFAULT_BAD_LINE_FRACTION: f64 = 0.001;

#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Keep at most this many entries (in file order).
    pub limit: Option<usize>,
    pub bad_line_fraction: f64,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            limit: None,
            bad_line_fraction: DEFAULT_BAD_LINE_FRACTION,
        }
    }
}

/// What happened while reading an embedding file.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LoadReport {
    /// `(V, d)` from a word2vec header, if there was one.
    pub header: Option<(usize, usize)>,
    /// Data lines read (excluding the header and blank lines).
    pub lines: usize,
    pub bad_lines: usize,
    pub duplicates: usize,
    pub zero_norm: Vec<String>,
}

/// A vocabulary of unit word vectors sharing one dimensionality.
#[derive(Debug, Clone)]
pub struct EmbeddingSpace {
    dim: usize,
    source_tag: String,
    words: Vec<String>,
    index: HashMap<String, usize>,
    data: Vec<f64>,
}

/// Mean of the resolvable tokens of a list, plus the ones that did not resolve.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanVector {
    pub vector: Vec<f64>,
    pub resolved: usize,
    pub unresolved: Vec<String>,
}

impl EmbeddingSpace {
    fn empty(dim: usize, source_tag: impl Into<String>) -> Self {
        EmbeddingSpace {
            dim,
            source_tag: source_tag.into(),
            words: Vec::new(),
            index: HashMap::new(),
            data: Vec::new(),
        }
    }

    /// Builds a space from in-memory vectors, normalizing each one.
    ///
    /// Zero vectors are rejected, as are vectors of the wrong length. Later
    /// duplicates of a (case-folded) token are ignored.
    pub fn from_vectors<I, S>(source_tag: &str, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: AsRef<str>,
    {
        let mut space = EmbeddingSpace::empty(dim, source_tag);
        for (word, v) in entries {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: v.len(),
                });
            }
            let unit = vector::normalized(&v)
                .ok_or_else(|| Error::Lexicon(format!("zero vector for {:?}", word.as_ref())))?;
            space.insert(&fold(word.as_ref()), &unit);
        }
        Ok(space)
    }

    /// Loads a word2vec or GloVe text file. The source tag is the file stem.
    pub fn load(path: impl AsRef<Path>, options: &LoadOptions) -> Result<(Self, LoadReport)> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let tag = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::read(BufReader::new(file), &tag, options).map_err(|e| match e {
            Error::Io { source, .. } => Error::io(path, source),
            other => other,
        })
    }

    pub fn read<R: BufRead>(
        mut reader: R,
        source_tag: &str,
        options: &LoadOptions,
    ) -> Result<(Self, LoadReport)> {
        let mut report = LoadReport::default();
        let mut line = String::new();
        let io_err = |e| Error::io("<embeddings>", e);

        // Skip leading blank lines, then decide on the layout.
        let first = loop {
            line.clear();
            if reader.read_line(&mut line).map_err(io_err)? == 0 {
                return Err(Error::EmptyEmbeddings);
            }
            if !line.trim().is_empty() {
                break line.trim_end().to_owned();
            }
        };

        let header = parse_header(&first);
        let (dim, pending) = match header {
            Some((_, d)) => (d, None),
            None => {
                let fields = first.split_whitespace().count();
                if fields < 2 {
                    return Err(Error::Parse {
                        path: "<embeddings>".into(),
                        line: 1,
                        message: "first line is neither a header nor a vector".into(),
                    });
                }
                (fields - 1, Some(first))
            }
        };
        report.header = header;

        let mut space = EmbeddingSpace::empty(dim, source_tag);
        let mut components = Vec::with_capacity(dim);
        let limit = options.limit.unwrap_or(usize::MAX);

        let mut handle = |text: &str, space: &mut EmbeddingSpace, report: &mut LoadReport| {
            report.lines += 1;
            let mut fields = text.split_whitespace();
            let Some(token) = fields.next() else {
                report.bad_lines += 1;
                return;
            };
            components.clear();
            for field in fields {
                match field.parse::<f64>() {
                    Ok(x) if x.is_finite() => components.push(x),
                    _ => {
                        report.bad_lines += 1;
                        return;
                    }
                }
            }
            if components.len() != dim {
                report.bad_lines += 1;
                return;
            }
            let key = fold(token);
            if space.index.contains_key(key.as_ref()) {
                report.duplicates += 1;
                return;
            }
            match vector::normalized(&components) {
                Some(unit) => space.insert(&key, &unit),
                None => {
                    warn!("skipping zero-norm vector for {token:?}");
                    report.zero_norm.push(token.to_owned());
                }
            }
        };

        if let Some(text) = pending {
            if space.len() < limit {
                handle(&text, &mut space, &mut report);
            }
        }
        while space.len() < limit {
            line.clear();
            if reader.read_line(&mut line).map_err(io_err)? == 0 {
                break;
            }
            let text = line.trim_end();
            if text.is_empty() {
                continue;
            }
            handle(text, &mut space, &mut report);
        }

        let budget = (options.bad_line_fraction * report.lines as f64).ceil() as usize;
        if report.bad_lines > budget {
            return Err(Error::BadLineBudget {
                bad: report.bad_lines,
                total: report.lines,
                budget,
            });
        }
        if report.bad_lines > 0 {
            warn!("skipped {} malformed embedding lines", report.bad_lines);
        }
        if let Some((v, _)) = header {
            if options.limit.is_none() && v != report.lines {
                warn!(
                    "header announces {v} words but {} lines were read",
                    report.lines
                );
            }
        }
        Ok((space, report))
    }

    fn insert(&mut self, key: &str, unit: &[f64]) {
        self.index.insert(key.to_owned(), self.words.len());
        self.words.push(key.to_owned());
        self.data.extend_from_slice(unit);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn source_tag(&self) -> &str {
        &self.source_tag
    }

    /// Tokens in load order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn contains(&self, token: &str) -> bool {
        self.lookup(token).is_some()
    }

    /// The stored unit vector for `token` after case folding.
    pub fn lookup(&self, token: &str) -> Option<&[f64]> {
        let key = fold(token);
        let row = *self.index.get(key.as_ref())?;
        Some(&self.data[row * self.dim..(row + 1) * self.dim])
    }

    /// Unit vector for a (possibly multi-word) term.
    ///
    /// A term stored verbatim (e.g. `hard-working`) is returned as is.
    /// Otherwise it is split on whitespace and hyphens and the in-vocabulary
    /// parts are averaged and renormalized. `None` if no part is known or the
    /// parts cancel out.
    pub fn phrase_vector(&self, phrase: &str) -> Option<Vec<f64>> {
        if let Some(v) = self.lookup(phrase.trim()) {
            return Some(v.to_vec());
        }
        let mut acc = Accumulator::new(self.dim);
        for part in phrase
            .split(|c: char| c.is_whitespace() || c == '-')
            .filter(|p| !p.is_empty())
        {
            if let Some(v) = self.lookup(part) {
                acc.add(v);
            }
        }
        match acc.count() {
            0 => None,
            _ => vector::normalized(&acc.mean()?),
        }
    }

    /// Single-token lookup first, then phrase composition.
    pub fn resolve(&self, term: &str) -> Option<Cow<'_, [f64]>> {
        match self.lookup(term) {
            Some(v) => Some(Cow::Borrowed(v)),
            None => self.phrase_vector(term).map(Cow::Owned),
        }
    }

    /// Frequency-weighted mean of the resolvable terms. Not renormalized.
    pub fn mean_vector<S: AsRef<str>>(&self, tokens: &[S]) -> Result<MeanVector> {
        let mut acc = Accumulator::new(self.dim);
        let mut unresolved = Vec::new();
        for token in tokens {
            match self.resolve(token.as_ref()) {
                Some(v) => acc.add(&v),
                None => unresolved.push(token.as_ref().to_owned()),
            }
        }
        match acc.mean() {
            Some(vector) => Ok(MeanVector {
                vector,
                resolved: acc.count(),
                unresolved,
            }),
            None => Err(Error::NothingResolved(unresolved)),
        }
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let v = fields.next()?.parse().ok()?;
    let d: usize = fields.next()?.parse().ok()?;
    if fields.next().is_some() || d == 0 {
        return None;
    }
    Some((v, d))
}

/// Lowercases a token, borrowing when it is already lowercase.
pub fn fold(token: &str) -> Cow<'_, str> {
    if token.chars().any(char::is_uppercase) {
        Cow::Owned(token.to_lowercase())
    } else {
        Cow::Borrowed(token)
    }
}
