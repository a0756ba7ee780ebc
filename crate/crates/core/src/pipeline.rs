//! Corpus-wide runs over target groups, shared by the command line and the
//! browser demo.

use std::fmt;
use std::str::FromStr;

use log::{info, warn};
use serde::Serialize;

use crate::antonym::AntonymResource;
use crate::cluster::{summarize_group, GroupCluster};
use crate::counter::{generate_counter, select_x_but_y, CounterStereotype};
use crate::embedding::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::polar::PolarSubspace;
use crate::stereoset::TargetGroup;
use crate::strategy::{classify_pair, ClassifiedPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Stereotype,
    AntiStereotype,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Stereotype => "stereotype",
            Side::AntiStereotype => "anti-stereotype",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "stereotype" => Ok(Side::Stereotype),
            "anti-stereotype" | "antistereotype" | "anti" => Ok(Side::AntiStereotype),
            other => Err(format!("unknown side {other:?}")),
        }
    }
}

/// A group's cluster, or the reason it has none.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupOutcome {
    pub target: String,
    pub cluster: Option<GroupCluster>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// Clusters one side of every group. Groups whose words all drop out are
/// kept as skipped outcomes; any other failure aborts the run.
pub fn cluster_groups<T: AsRef<str>>(
    space: &EmbeddingSpace,
    sub: &PolarSubspace,
    groups: &[TargetGroup],
    side: Side,
    stoplist: &[T],
    threshold: f64,
) -> Result<Vec<GroupOutcome>> {
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let words = match side {
            Side::Stereotype => g.stereotypes(),
            Side::AntiStereotype => g.antistereotypes(),
        };
        match summarize_group(space, sub, &g.name, &words, stoplist, threshold) {
            Ok(c) => out.push(GroupOutcome {
                target: g.name.clone(),
                cluster: Some(c),
                skipped: None,
            }),
            Err(e @ Error::EmptyCluster(_)) | Err(e @ Error::NothingResolved(_)) => {
                warn!("{}: {e}", g.name);
                out.push(GroupOutcome {
                    target: g.name.clone(),
                    cluster: None,
                    skipped: Some(e.to_string()),
                });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct PairwiseRun {
    pub pairs: Vec<(String, ClassifiedPair)>,
    /// `(target, stereotype, anti-stereotype)` with a word lacking a vector.
    pub excluded: Vec<(String, String, String)>,
}

/// Classifies every word pair of every group. No stoplist applies here.
pub fn classify_all_pairs(
    res: &AntonymResource,
    space: &EmbeddingSpace,
    sub: &PolarSubspace,
    groups: &[TargetGroup],
) -> Result<PairwiseRun> {
    let mut run = PairwiseRun::default();
    for g in groups {
        for p in &g.pairs {
            match classify_pair(res, space, sub, &p.stereotype, &p.antistereotype) {
                Ok(c) => run.pairs.push((g.name.clone(), c)),
                Err(Error::OutOfVocabulary(_)) => run.excluded.push((
                    g.name.clone(),
                    p.stereotype.clone(),
                    p.antistereotype.clone(),
                )),
                Err(e) => return Err(e),
            }
        }
    }
    if !run.excluded.is_empty() {
        info!("{} pairs excluded for missing vectors", run.excluded.len());
    }
    Ok(run)
}

/// X-but-Y and its counter for each cluster; `None` where no two distinct
/// words could be picked.
pub fn counters_for(
    res: &AntonymResource,
    space: &EmbeddingSpace,
    sub: &PolarSubspace,
    clusters: &[GroupCluster],
) -> Result<Vec<Option<CounterStereotype>>> {
    let mut out = Vec::with_capacity(clusters.len());
    for c in clusters {
        match select_x_but_y(sub, space, c) {
            Ok(sel) => out.push(Some(generate_counter(res, space, sub, &sel))),
            Err(Error::DegenerateCluster(t)) | Err(Error::EmptyCluster(t)) => {
                warn!("{t}: no distinct X and Y words");
                out.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// One entry per non-empty line; `#` starts a comment.
pub fn parse_word_list(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_lowercase())
        .filter(|l| !l.is_empty())
        .collect()
}
