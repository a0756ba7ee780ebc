//! Browser demo: project words, place a group, and propose a counter-stereotype.
//!
//! Everything runs on the bundled mini fixtures unless the page supplies its
//! own embedding text. Results cross the boundary as JSON strings.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use scm_core::cluster::summarize_group;
use scm_core::counter::{generate_counter, row_status, select_x_but_y};
use scm_core::lexicon::read_lexicon;
use scm_core::pipeline::parse_word_list;
use scm_core::plot::{scatter_svg, LabeledPoint};
use scm_core::stereoset::{assemble_groups, parse_stereoset_str};
use scm_core::{
    build_axes, build_seed_sets, classify_point, AntonymResource, AxisOptions, EmbeddingSpace,
    LoadOptions, PolarSubspace, TargetGroup,
};

const EMBEDDINGS: &str = include_str!("../../../fixtures/mini/embeddings.txt");
const LEXICON: &str = include_str!("../../../fixtures/mini/lexicon.csv");
const CORPUS: &str = include_str!("../../../fixtures/mini/corpus.json");
const ANTONYMS: &str = include_str!("../../../fixtures/mini/antonyms.tsv");
const SYNONYMS: &str = include_str!("../../../fixtures/mini/synonyms.tsv");
const LEMMAS: &str = include_str!("../../../fixtures/mini/lemmas.tsv");
const STOPLIST: &str = include_str!("../../../fixtures/mini/stoplist.txt");
const EXCLUSIONS: &str = include_str!("../../../fixtures/mini/exclusions.txt");

const GENERATOR: &str = concat!("scm-web ", env!("CARGO_PKG_VERSION"));

/// Splits on commas and line breaks.
fn split_words(text: &str) -> Vec<String> {
    text.split([',', '\n'])
        .map(|w| w.trim().to_lowercase())
        .filter(|w| !w.is_empty())
        .collect()
}

#[derive(Serialize)]
struct Projected {
    word: String,
    warmth: f64,
    competence: f64,
    quadrant: String,
}

/// The demo state, independent of the JS bindings.
pub struct Demo {
    space: EmbeddingSpace,
    sub: PolarSubspace,
    antonyms: AntonymResource,
    stoplist: Vec<String>,
    groups: Vec<TargetGroup>,
}

impl Demo {
    pub fn bundled() -> Result<Self, String> {
        Self::with_embeddings(EMBEDDINGS, "mini")
    }

    /// Uses `embeddings` (word2vec or GloVe text) with the bundled lexicon and resources.
    pub fn with_embeddings(embeddings: &str, tag: &str) -> Result<Self, String> {
        let e = |e: scm_core::Error| e.to_string();
        let (space, _) =
            EmbeddingSpace::read(embeddings.as_bytes(), tag, &LoadOptions::default()).map_err(e)?;
        let lexicon = read_lexicon(LEXICON.as_bytes()).map_err(e)?;
        let seeds = build_seed_sets(&lexicon.entries).map_err(e)?;
        let (sub, _) = build_axes(&space, &seeds, AxisOptions::default()).map_err(e)?;
        let antonyms =
            AntonymResource::from_strs(ANTONYMS, Some(SYNONYMS), Some(LEMMAS)).map_err(e)?;
        let parsed = parse_stereoset_str(CORPUS).map_err(e)?;
        let groups = assemble_groups(&parsed.records, &parse_word_list(EXCLUSIONS)).groups;
        Ok(Demo {
            space,
            sub,
            antonyms,
            stoplist: parse_word_list(STOPLIST),
            groups,
        })
    }

    /// Bundled target groups with their stereotype words.
    pub fn groups(&self) -> Value {
        self.groups
            .iter()
            .map(|g| json!({ "target": g.name, "stereotypes": g.stereotypes() }))
            .collect()
    }

    pub fn project(&self, words: &str) -> Value {
        let mut points = Vec::new();
        let mut missing = Vec::new();
        for w in split_words(words) {
            match self.sub.project_term(&self.space, &w) {
                Ok(p) => points.push(Projected {
                    quadrant: classify_point(p).quadrant.to_string(),
                    word: w,
                    warmth: p.warmth,
                    competence: p.competence,
                }),
                Err(_) => missing.push(w),
            }
        }
        let labeled: Vec<LabeledPoint> = points
            .iter()
            .map(|p| {
                LabeledPoint::new(
                    p.word.clone(),
                    scm_core::PolarPoint::new(p.warmth, p.competence),
                )
            })
            .collect();
        json!({
            "points": points,
            "missing": missing,
            "svg": scatter_svg(&labeled, "projected words", GENERATOR),
        })
    }

    pub fn cluster(&self, target: &str, words: &str, threshold: f64) -> Result<Value, String> {
        if !(threshold > 0.0 && threshold <= 2.0) {
            return Err(format!("threshold must lie in (0, 2], got {threshold}"));
        }
        let words = split_words(words);
        let c = summarize_group(
            &self.space,
            &self.sub,
            target,
            &words,
            &self.stoplist,
            threshold,
        )
        .map_err(|e| e.to_string())?;
        let mut points: Vec<LabeledPoint> = c
            .kept_words
            .iter()
            .filter_map(|w| {
                let p = self.sub.project_term(&self.space, &w.word).ok()?;
                Some(LabeledPoint::new(w.word.clone(), p))
            })
            .collect();
        let mut mean = LabeledPoint::new(format!("{target} (mean)"), c.mean_point);
        mean.highlight = true;
        points.push(mean);
        let svg = scatter_svg(&points, target, GENERATOR);

        let counter = match select_x_but_y(&self.sub, &self.space, &c) {
            Ok(sel) => Some(generate_counter(
                &self.antonyms,
                &self.space,
                &self.sub,
                &sel,
            )),
            Err(_) => None,
        };
        Ok(json!({
            "cluster": c,
            "counter": counter,
            "status": row_status(&c, counter.as_ref()),
            "svg": svg,
        }))
    }
}

#[wasm_bindgen]
pub struct Explorer {
    demo: Demo,
}

fn to_js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

#[wasm_bindgen]
impl Explorer {
    /// Starts on the bundled fixtures.
    #[wasm_bindgen(constructor)]
    pub fn new() -> Result<Explorer, JsValue> {
        Ok(Explorer {
            demo: Demo::bundled().map_err(to_js)?,
        })
    }

    /// Starts on pasted embedding text instead.
    #[wasm_bindgen(js_name = withEmbeddings)]
    pub fn with_embeddings(text: &str) -> Result<Explorer, JsValue> {
        Ok(Explorer {
            demo: Demo::with_embeddings(text, "pasted").map_err(to_js)?,
        })
    }

    pub fn groups(&self) -> String {
        self.demo.groups().to_string()
    }

    /// Projects comma- or newline-separated words; JSON with points and an SVG.
    pub fn project(&self, words: &str) -> String {
        self.demo.project(words).to_string()
    }

    /// Places a group by its words and proposes a counter-stereotype.
    pub fn cluster(&self, target: &str, words: &str, threshold: f64) -> Result<String, JsValue> {
        self.demo
            .cluster(target, words, threshold)
            .map(|v| v.to_string())
            .map_err(to_js)
    }
}
