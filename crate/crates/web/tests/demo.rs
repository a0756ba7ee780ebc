use std::fs;

use serde_json::json;

use scm_web::Demo;

#[test]
fn bundled_groups() {
    let demo = Demo::bundled().unwrap();
    let groups = demo.groups();
    let names: Vec<&str> = groups
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["target"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "African",
            "commander",
            "engineer",
            "grandfather",
            "mommy",
            "nurse"
        ]
    );
}

#[test]
fn projects_and_reports_missing() {
    let demo = Demo::bundled().unwrap();
    let out = demo.project("kind, lazy\nnotaword");
    let points = out["points"].as_array().unwrap();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0]["word"], "kind");
    assert!(points[0]["warmth"].as_f64().unwrap() > 0.0);
    assert!(points[1]["competence"].as_f64().unwrap() < 0.0);
    assert_eq!(out["missing"], json!(["notaword"]));
    assert!(out["svg"].as_str().unwrap().contains("kind"));
}

#[test]
fn grandfather_counter() {
    let demo = Demo::bundled().unwrap();
    let out = demo
        .cluster("grandfather", "kind, feeble, old, gentle", 0.6)
        .unwrap();
    assert_eq!(out["cluster"]["quadrant"], "LC-HW");
    assert_eq!(out["counter"]["x_but_y"], "kind but feeble");
    assert_eq!(out["counter"]["counter"], "kind and strong");
    assert_eq!(out["status"], "ok");
}

#[test]
fn rejects_bad_threshold() {
    let demo = Demo::bundled().unwrap();
    assert!(demo.cluster("x", "kind", 0.0).is_err());
    assert!(demo.cluster("x", "notaword", 0.6).is_err());
}

#[test]
fn pasted_embeddings_need_seeds() {
    assert!(Demo::with_embeddings("2 2\nfoo 1 0\nbar 0 1\n", "p").is_err());
    let demo = Demo::with_embeddings(
        &fs::read_to_string(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../fixtures/mini/embeddings.txt"
        ))
        .unwrap(),
        "copy",
    )
    .unwrap();
    assert_eq!(demo.project("kind")["points"][0]["quadrant"], "HC-HW");
}
