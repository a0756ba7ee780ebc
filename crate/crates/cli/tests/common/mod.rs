#![allow(dead_code)]

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

pub fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn mini(name: &str) -> PathBuf {
    workspace().join("fixtures/mini").join(name)
}

pub fn toy(name: &str) -> PathBuf {
    workspace().join("fixtures/toy").join(name)
}

pub fn goldens() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/goldens")
}

pub fn scm(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_scm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn scm");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            // The process may exit on a config error before reading stdin.
            if let Err(e) = pipe.write_all(text.as_bytes()) {
                assert_eq!(e.kind(), std::io::ErrorKind::BrokenPipe, "{e}");
            }
        }
    }
    child.wait_with_output().unwrap()
}

fn s(p: PathBuf) -> String {
    p.to_str().unwrap().to_owned()
}

/// Flags shared by the corpus-level commands on the mini fixtures.
pub fn mini_args(command: &str, out: &Path) -> Vec<String> {
    let mut args = vec![
        command.to_owned(),
        "--embeddings".into(),
        s(mini("embeddings.txt")),
        "--lexicon".into(),
        s(mini("lexicon.csv")),
        "-o".into(),
        s(out.to_owned()),
    ];
    if command != "validate" {
        args.extend([
            "--corpus".into(),
            s(mini("corpus.json")),
            "--stoplist".into(),
            s(mini("stoplist.txt")),
            "--exclusions".into(),
            s(mini("exclusions.txt")),
        ]);
    }
    if command == "strategies" || command == "counter" {
        args.extend([
            "--antonyms".into(),
            s(mini("antonyms.tsv")),
            "--synonyms".into(),
            s(mini("synonyms.tsv")),
            "--lemmas".into(),
            s(mini("lemmas.tsv")),
        ]);
    }
    args
}

pub fn run_mini(command: &str, out: &Path) -> Output {
    let args = mini_args(command, out);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let output = scm(&refs, None);
    assert!(
        output.status.success(),
        "{command} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

/// Golden files per command; all are deterministic.
pub const GOLDENS: &[(&str, &[&str])] = &[
    ("validate", &["validation.csv", "validation.json"]),
    (
        "cluster",
        &["clusters.csv", "clusters.json", "clusters.svg"],
    ),
    (
        "strategies",
        &[
            "strategies_pairwise.csv",
            "strategies_group.csv",
            "strategy_pairs.csv",
            "strategy_groups.csv",
            "strategies.json",
        ],
    ),
    ("counter", &["counters.csv", "counters.json"]),
];

/// Compares outputs in `out` with the committed goldens. With `SCM_BLESS`
/// set, rewrites the goldens instead.
pub fn golden_mismatches(files: &[&str], out: &Path) -> Vec<String> {
    let bless = std::env::var_os("SCM_BLESS").is_some();
    let mut bad = Vec::new();
    for f in files {
        let actual = fs::read_to_string(out.join(f)).unwrap_or_else(|e| panic!("{f}: {e}"));
        let path = goldens().join(f);
        if bless {
            fs::write(&path, &actual).unwrap();
            continue;
        }
        match fs::read_to_string(&path) {
            Ok(expected) if expected == actual => {}
            Ok(_) => bad.push(format!("{f} differs from golden")),
            Err(e) => bad.push(format!("{f}: no golden ({e})")),
        }
    }
    bad
}
