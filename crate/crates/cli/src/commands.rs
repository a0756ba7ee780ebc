use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use log::{info, warn};
use serde_json::json;

use scm_core::cluster::GroupCluster;
use scm_core::counter::{counter_csv, row_status};
use scm_core::embedding::LoadReport;
use scm_core::format::{csv_field, format_number};
use scm_core::lexicon::{parse_lexicon, validation_set_multi, Lexicon};
use scm_core::pipeline::{classify_all_pairs, cluster_groups, counters_for, parse_word_list, Side};
use scm_core::plot::{scatter_svg, LabeledPoint};
use scm_core::polar::AxisReport;
use scm_core::stereoset::{load_corpus, write_normalized, Assembly};
use scm_core::strategy::{group_level_table, pairwise_table};
use scm_core::{
    build_axes, build_seed_sets, evaluate_lexicon, AntonymResource, AxisOptions, EmbeddingSpace,
    LoadOptions, PolarSubspace, SeedSets,
};

use crate::args::{
    AntonymArgs, AxisArgs, Cli, ClusterArgs, Command, CorpusArgs, CounterArgs, FilterArgs, Format,
    IngestArgs, ProjectArgs, StrategiesArgs, ValidateArgs,
};
use crate::manifest::Manifest;
use crate::Failure;

const DEFAULT_STOPLIST: &str = include_str!("../config/demographic_stoplist.txt");
const DEFAULT_EXCLUSIONS: &str = include_str!("../config/exclusions.txt");

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    preflight(cli)?;
    let config = serde_json::to_value(cli).expect("arguments serialize");
    let mut out = Outputs {
        dir: cli.output_dir.clone(),
        formats: cli.formats.clone(),
        written: Vec::new(),
    };
    match &cli.command {
        Command::Validate(a) => validate(a, &mut out, Manifest::new("validate", config)),
        Command::Project(a) => project(a, &mut out, Manifest::new("project", config)),
        Command::Cluster(a) => cluster(a, &mut out, Manifest::new("cluster", config)),
        Command::Strategies(a) => strategies(a, &mut out, Manifest::new("strategies", config)),
        Command::Counter(a) => counter(a, &mut out, Manifest::new("counter", config)),
        Command::Ingest(a) => ingest(a, &mut out, Manifest::new("ingest", config)),
    }
}

// ---- configuration checks -------------------------------------------------

fn require_file(path: &Path, flag: &str) -> Outcome {
    if path.is_file() {
        Ok(())
    } else {
        Err(Failure::Config(format!(
            "--{flag}: {} is not a readable file",
            path.display()
        )))
    }
}

fn optional_file(path: &Option<PathBuf>, flag: &str) -> Outcome {
    path.as_deref().map_or(Ok(()), |p| require_file(p, flag))
}

fn check_axis(a: &AxisArgs) -> Outcome {
    require_file(&a.lexicon, "lexicon")?;
    if a.limit == Some(0) {
        return Err(Failure::Config("--limit must be positive".into()));
    }
    Ok(())
}

fn check_corpus(c: &CorpusArgs) -> Outcome {
    require_file(&c.corpus, "corpus")?;
    optional_file(&c.exclusions, "exclusions")
}

fn check_filter(f: &FilterArgs) -> Outcome {
    optional_file(&f.stoplist, "stoplist")?;
    if !(f.threshold > 0.0 && f.threshold <= 2.0) {
        return Err(Failure::Config(format!(
            "--threshold must lie in (0, 2], got {}",
            f.threshold
        )));
    }
    Ok(())
}

fn check_antonyms(a: &AntonymArgs) -> Outcome {
    require_file(&a.antonyms, "antonyms")?;
    optional_file(&a.synonyms, "synonyms")?;
    optional_file(&a.lemmas, "lemmas")
}

/// Validates every path and value before anything is loaded.
fn preflight(cli: &Cli) -> Outcome {
    if cli.formats.is_empty() {
        return Err(Failure::Config(
            "--format needs at least one of csv, json, svg".into(),
        ));
    }
    match &cli.command {
        Command::Validate(a) => {
            for p in &a.embeddings {
                require_file(p, "embeddings")?;
            }
            check_axis(&a.axis)
        }
        Command::Project(a) => {
            require_file(&a.embeddings, "embeddings")?;
            check_axis(&a.axis)
        }
        Command::Cluster(a) => {
            require_file(&a.embeddings, "embeddings")?;
            check_axis(&a.axis)?;
            check_corpus(&a.corpus)?;
            check_filter(&a.filter)
        }
        Command::Strategies(a) => {
            require_file(&a.embeddings, "embeddings")?;
            check_axis(&a.axis)?;
            check_corpus(&a.corpus)?;
            check_filter(&a.filter)?;
            check_antonyms(&a.antonyms)
        }
        Command::Counter(a) => {
            require_file(&a.embeddings, "embeddings")?;
            check_axis(&a.axis)?;
            check_corpus(&a.corpus)?;
            check_filter(&a.filter)?;
            check_antonyms(&a.antonyms)
        }
        Command::Ingest(a) => check_corpus(&a.corpus),
    }
}

// ---- output ---------------------------------------------------------------

struct Outputs {
    dir: PathBuf,
    formats: Vec<Format>,
    written: Vec<String>,
}

impl Outputs {
    fn write(&mut self, name: &str, format: Format, contents: &str) -> Outcome {
        if !self.formats.contains(&format) {
            return Ok(());
        }
        self.write_always(name, contents)
    }

    fn write_always(&mut self, name: &str, contents: &str) -> Outcome {
        fs::create_dir_all(&self.dir)
            .map_err(|e| Failure::Output(format!("cannot create {}: {e}", self.dir.display())))?;
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| Failure::Output(format!("cannot write {}: {e}", path.display())))?;
        self.written.push(name.to_owned());
        Ok(())
    }

    fn json(&mut self, name: &str, value: &impl serde::Serialize) -> Outcome {
        let mut text = serde_json::to_string_pretty(value).expect("report serializes");
        text.push('\n');
        self.write(name, Format::Json, &text)
    }

    fn finish_with(&mut self, mut manifest: Manifest) -> Outcome {
        manifest.outputs = self.written.clone();
        let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        text.push('\n');
        self.write_always("manifest.json", &text)
    }
}

fn num(x: f64) -> String {
    format_number(x)
}

// ---- loading --------------------------------------------------------------

fn input(manifest: &mut Manifest, role: &'static str, path: &Path) -> Outcome {
    manifest.add_input(role, path).map_err(|e| {
        Failure::Module(scm_core::Error::Io {
            path: path.to_owned(),
            source: e,
        })
    })
}

fn load_space(
    path: &Path,
    limit: Option<usize>,
    manifest: &mut Manifest,
) -> Result<(EmbeddingSpace, LoadReport), Failure> {
    input(manifest, "embeddings", path)?;
    let options = LoadOptions {
        limit,
        ..LoadOptions::default()
    };
    let (space, report) = EmbeddingSpace::load(path, &options)?;
    info!(
        "{}: {} vectors of dimension {}",
        path.display(),
        space.len(),
        space.dim()
    );
    Ok((space, report))
}

struct Axes {
    sub: PolarSubspace,
    report: AxisReport,
}

fn load_lexicon(a: &AxisArgs, manifest: &mut Manifest) -> Result<(Lexicon, SeedSets), Failure> {
    input(manifest, "lexicon", &a.lexicon)?;
    let lexicon = parse_lexicon(&a.lexicon)?;
    for w in &lexicon.warnings {
        warn!("lexicon: {w}");
    }
    let seeds = build_seed_sets(&lexicon.entries)?;
    Ok((lexicon, seeds))
}

fn axes(space: &EmbeddingSpace, seeds: &SeedSets, a: &AxisArgs) -> Result<Axes, Failure> {
    let options = AxisOptions {
        normalize_axes: a.normalize_axes,
    };
    let (sub, report) = build_axes(space, seeds, options)?;
    Ok(Axes { sub, report })
}

fn word_list(
    path: &Option<PathBuf>,
    role: &'static str,
    builtin_name: &str,
    builtin: &str,
    manifest: &mut Manifest,
) -> Result<Vec<String>, Failure> {
    match path {
        Some(p) => {
            input(manifest, role, p)?;
            let text = fs::read_to_string(p).map_err(|e| {
                Failure::Module(scm_core::Error::Io {
                    path: p.clone(),
                    source: e,
                })
            })?;
            Ok(parse_word_list(&text))
        }
        None => {
            manifest.add_builtin(role, builtin_name, builtin);
            Ok(parse_word_list(builtin))
        }
    }
}

fn load_groups(c: &CorpusArgs, manifest: &mut Manifest) -> Result<Assembly, Failure> {
    let excluded = word_list(
        &c.exclusions,
        "exclusions",
        "exclusions.txt",
        DEFAULT_EXCLUSIONS,
        manifest,
    )?;
    input(manifest, "corpus", &c.corpus)?;
    let (assembly, parsed) = load_corpus(&c.corpus, &excluded)?;
    for note in &parsed.notes {
        info!("corpus: {note}");
    }
    let r = &assembly.report;
    manifest.count("groups", r.groups);
    manifest.count("pairs", r.pairs);
    manifest.count("excluded_targets", r.excluded_targets.len());
    manifest.count("failed_extractions", r.failed_extractions);
    manifest.count("records_without_blank", parsed.skipped_no_blank);
    Ok(assembly)
}

fn load_antonyms(a: &AntonymArgs, manifest: &mut Manifest) -> Result<AntonymResource, Failure> {
    input(manifest, "antonyms", &a.antonyms)?;
    if let Some(p) = &a.synonyms {
        input(manifest, "synonyms", p)?;
    }
    if let Some(p) = &a.lemmas {
        input(manifest, "lemmas", p)?;
    }
    let res = AntonymResource::load(&a.antonyms, a.synonyms.as_deref(), a.lemmas.as_deref())?;
    for w in &res.warnings {
        warn!("antonyms: {w}");
    }
    Ok(res)
}

/// Everything the corpus-level commands share.
struct Prepared {
    space: EmbeddingSpace,
    axes: Axes,
    assembly: Assembly,
    stoplist: Vec<String>,
}

fn prepare(
    embeddings: &Path,
    axis: &AxisArgs,
    corpus: &CorpusArgs,
    filter: &FilterArgs,
    manifest: &mut Manifest,
) -> Result<Prepared, Failure> {
    let (_, seeds) = load_lexicon(axis, manifest)?;
    let assembly = load_groups(corpus, manifest)?;
    let stoplist = word_list(
        &filter.stoplist,
        "stoplist",
        "demographic_stoplist.txt",
        DEFAULT_STOPLIST,
        manifest,
    )?;
    let (space, _) = load_space(embeddings, axis.limit, manifest)?;
    let axes = axes(&space, &seeds, axis)?;
    manifest.count("oov_seeds", axes.report.oov_seeds.len());
    Ok(Prepared {
        space,
        axes,
        assembly,
        stoplist,
    })
}

fn complete(
    outcomes: Vec<scm_core::pipeline::GroupOutcome>,
) -> (Vec<GroupCluster>, Vec<(String, String)>) {
    let mut clusters = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o.cluster {
            Some(c) => clusters.push(c),
            None => skipped.push((o.target, o.skipped.unwrap_or_default())),
        }
    }
    (clusters, skipped)
}

// ---- commands -------------------------------------------------------------

fn validate(a: &ValidateArgs, out: &mut Outputs, mut manifest: Manifest) -> Outcome {
    let (lexicon, seeds) = load_lexicon(&a.axis, &mut manifest)?;
    let mut spaces = Vec::with_capacity(a.embeddings.len());
    for p in &a.embeddings {
        spaces.push(load_space(p, a.axis.limit, &mut manifest)?.0);
    }
    let refs: Vec<&EmbeddingSpace> = spaces.iter().collect();
    let set = validation_set_multi(&lexicon.entries, &seeds, &refs);

    let mut reports = Vec::new();
    let mut csv =
        String::from("model,warmth_accuracy,competence_accuracy,warmth_n,competence_n,skipped\n");
    for space in &spaces {
        let axes = axes(space, &seeds, &a.axis)?;
        let report = evaluate_lexicon(&axes.sub, space, &set)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&report.model),
            num(report.warmth_accuracy),
            num(report.competence_accuracy),
            report.warmth_n,
            report.competence_n,
            report.skipped
        ));
        reports.push(json!({ "report": report, "axes": axes.report }));
    }
    manifest.count("models", spaces.len());
    manifest.count("validation_entries", set.entries.len());
    manifest.count("removed_seed_overlap", set.removed_seed_overlap);
    manifest.count("removed_oov", set.removed_oov);

    out.write("validation.csv", Format::Csv, &csv)?;
    out.json(
        "validation.json",
        &json!({
            "models": reports,
            "seed_counts": seeds.counts(),
            "dropped_seed_overlaps": seeds.dropped_overlaps,
            "lexicon_warnings": lexicon.warnings,
        }),
    )?;
    out.finish_with(manifest)
}

fn project(a: &ProjectArgs, out: &mut Outputs, mut manifest: Manifest) -> Outcome {
    let (_, seeds) = load_lexicon(&a.axis, &mut manifest)?;
    let (space, _) = load_space(&a.embeddings, a.axis.limit, &mut manifest)?;
    let axes = axes(&space, &seeds, &a.axis)?;

    let stdin = io::stdin();
    let mut csv = String::from("word,warmth,competence\n");
    let (mut projected, mut missing) = (0usize, 0usize);
    for line in stdin.lock().lines() {
        let line = line.map_err(|e| Failure::Output(format!("cannot read stdin: {e}")))?;
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        match axes.sub.project_term(&space, word) {
            Ok(p) => {
                projected += 1;
                csv.push_str(&format!(
                    "{},{},{}\n",
                    csv_field(word),
                    num(p.warmth),
                    num(p.competence)
                ));
            }
            Err(scm_core::Error::OutOfVocabulary(_)) => {
                warn!("{word:?} has no vector");
                missing += 1;
                csv.push_str(&format!("{},,\n", csv_field(word)));
            }
            Err(e) => return Err(e.into()),
        }
    }
    io::stdout()
        .write_all(csv.as_bytes())
        .map_err(|e| Failure::Output(format!("cannot write stdout: {e}")))?;
    manifest.count("projected", projected);
    manifest.count("out_of_vocabulary", missing);
    out.finish_with(manifest)
}

fn cluster(a: &ClusterArgs, out: &mut Outputs, mut manifest: Manifest) -> Outcome {
    let p = prepare(&a.embeddings, &a.axis, &a.corpus, &a.filter, &mut manifest)?;
    let side: Side = a.side.into();
    let outcomes = cluster_groups(
        &p.space,
        &p.axes.sub,
        &p.assembly.groups,
        side,
        &p.stoplist,
        a.filter.threshold,
    )?;
    let (clusters, skipped) = complete(outcomes.clone());
    manifest.count("clusters", clusters.len());
    manifest.count("skipped_groups", skipped.len());

    let mut csv =
        String::from("target,warmth,competence,quadrant,representative,n_kept,n_discarded\n");
    for c in &clusters {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(&c.target),
            num(c.mean_point.warmth),
            num(c.mean_point.competence),
            c.quadrant,
            csv_field(&c.representative),
            c.kept_total(),
            c.discarded_outliers.len()
        ));
    }
    out.write("clusters.csv", Format::Csv, &csv)?;
    out.json(
        "clusters.json",
        &json!({ "side": side, "groups": outcomes }),
    )?;
    let points: Vec<LabeledPoint> = clusters
        .iter()
        .map(|c| LabeledPoint::new(c.target.clone(), c.mean_point))
        .collect();
    let title = format!("{side} clusters");
    out.write(
        "clusters.svg",
        Format::Svg,
        &scatter_svg(&points, &title, &generator()),
    )?;
    out.finish_with(manifest)
}

fn strategies(a: &StrategiesArgs, out: &mut Outputs, mut manifest: Manifest) -> Outcome {
    let p = prepare(&a.embeddings, &a.axis, &a.corpus, &a.filter, &mut manifest)?;
    let res = load_antonyms(&a.antonyms, &mut manifest)?;

    let run = classify_all_pairs(&res, &p.space, &p.axes.sub, &p.assembly.groups)?;
    let classified: Vec<_> = run.pairs.iter().map(|(_, c)| c.clone()).collect();
    let mut pair_table = pairwise_table(&classified);
    pair_table.excluded = run.excluded.len();

    let (t, sub, groups) = (a.filter.threshold, &p.axes.sub, &p.assembly.groups);
    let s = cluster_groups(&p.space, sub, groups, Side::Stereotype, &p.stoplist, t)?;
    let anti = cluster_groups(&p.space, sub, groups, Side::AntiStereotype, &p.stoplist, t)?;
    let mut both = Vec::new();
    let mut incomplete = Vec::new();
    for (s, a) in s.into_iter().zip(anti) {
        match (s.cluster, a.cluster) {
            (Some(s), Some(a)) => both.push((Some(s), Some(a))),
            _ => incomplete.push(s.target),
        }
    }
    let (mut group_table, group_rows) = group_level_table(&res, &both)?;
    group_table.excluded = incomplete.len();
    manifest.count("classified_pairs", classified.len());
    manifest.count("excluded_pairs", run.excluded.len());
    manifest.count("classified_groups", group_rows.len());
    manifest.count("incomplete_groups", incomplete.len());

    let mut pairs_csv = String::from(
        "target,stereotype,antistereotype,strategy,stereotype_warmth,stereotype_competence,anti_warmth,anti_competence\n",
    );
    for (target, c) in &run.pairs {
        pairs_csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_field(target),
            csv_field(&c.stereotype),
            csv_field(&c.antistereotype),
            c.label,
            num(c.stereotype_point.warmth),
            num(c.stereotype_point.competence),
            num(c.anti_point.warmth),
            num(c.anti_point.competence)
        ));
    }
    let mut groups_csv = String::from(
        "target,stereotype_representative,anti_representative,strategy,stereotype_warmth,stereotype_competence,anti_warmth,anti_competence\n",
    );
    for g in &group_rows {
        groups_csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_field(&g.target),
            csv_field(&g.stereotype_representative),
            csv_field(&g.anti_representative),
            g.label,
            num(g.stereotype_mean.warmth),
            num(g.stereotype_mean.competence),
            num(g.anti_mean.warmth),
            num(g.anti_mean.competence)
        ));
    }
    out.write("strategies_pairwise.csv", Format::Csv, &pair_table.to_csv())?;
    out.write("strategies_group.csv", Format::Csv, &group_table.to_csv())?;
    out.write("strategy_pairs.csv", Format::Csv, &pairs_csv)?;
    out.write("strategy_groups.csv", Format::Csv, &groups_csv)?;
    out.json(
        "strategies.json",
        &json!({
            "pairwise": { "table": pair_table, "pairs": run.pairs, "excluded": run.excluded },
            "group": { "table": group_table, "groups": group_rows, "incomplete": incomplete },
        }),
    )?;
    out.finish_with(manifest)
}

fn counter(a: &CounterArgs, out: &mut Outputs, mut manifest: Manifest) -> Outcome {
    let p = prepare(&a.embeddings, &a.axis, &a.corpus, &a.filter, &mut manifest)?;
    let res = load_antonyms(&a.antonyms, &mut manifest)?;
    let outcomes = cluster_groups(
        &p.space,
        &p.axes.sub,
        &p.assembly.groups,
        Side::Stereotype,
        &p.stoplist,
        a.filter.threshold,
    )?;
    let (clusters, skipped) = complete(outcomes);
    let counters = counters_for(&res, &p.space, &p.axes.sub, &clusters)?;
    manifest.count("clusters", clusters.len());
    manifest.count("skipped_groups", skipped.len());
    manifest.count("counters", counters.iter().filter(|c| c.is_some()).count());

    let rows: Vec<_> = clusters
        .iter()
        .zip(&counters)
        .map(|(c, k)| (c, k.as_ref()))
        .collect();
    out.write("counters.csv", Format::Csv, &counter_csv(&rows))?;
    let json_rows: Vec<_> = clusters
        .iter()
        .zip(&counters)
        .map(|(c, k)| {
            json!({
                "target": c.target,
                "quadrant": c.quadrant,
                "representative": c.representative,
                "counter": k,
                "status": row_status(c, k.as_ref()),
            })
        })
        .collect();
    out.json(
        "counters.json",
        &json!({ "groups": json_rows, "skipped": skipped }),
    )?;
    out.finish_with(manifest)
}

fn ingest(a: &IngestArgs, out: &mut Outputs, mut manifest: Manifest) -> Outcome {
    let assembly = load_groups(&a.corpus, &mut manifest)?;
    let mut buf = Vec::new();
    write_normalized(&mut buf, &assembly.groups).expect("writing to memory");
    let text = String::from_utf8(buf).expect("normalized corpus is UTF-8");
    out.write_always("corpus.jsonl", &text)?;
    out.json("ingest_report.json", &assembly.report)?;
    out.finish_with(manifest)
}

fn generator() -> String {
    format!("scm {}", env!("CARGO_PKG_VERSION"))
}
