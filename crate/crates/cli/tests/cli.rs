use std::path::Path;

use permsplit_cli::{fixture_contents, parse_hyperplane, run, Output};

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("permsplit").chain(args.iter().copied()))
}

#[test]
fn split_check_reports_bad_square() {
    let out = cli(&["split", "check", "-n", "4", "x1+x2=5"]);
    assert_eq!(out.code, 0, "{}", out.text);
    assert!(out.text.contains("bad-square"));

    let out = cli(&["--format", "json", "split", "check", "-n", "4", "x1+x2=5"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["verdict"], "bad-square");
    assert!(v["face"]["vertices"].as_array().is_some_and(|a| a.len() == 4));
}

#[test]
fn split_scan_json_has_six_hyperplanes() {
    let out = cli(&["split", "scan", "-n", "4", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: Vec<serde_json::Value> = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v.len(), 6);
    assert!(v.contains(&serde_json::json!({"S": [1, 2], "alpha": 4})));
}

#[test]
fn poset_dot_sources_and_sinks() {
    let out = cli(&["poset", "build", "-n", "4", "--format", "dot"]);
    assert_eq!(out.code, 0);
    let nodes: Vec<&str> = out.text.lines().filter(|l| l.contains("[label=")).map(|l| l.trim().split(' ').next().unwrap()).collect();
    let edges: Vec<(&str, &str)> = out.text.lines().filter_map(|l| l.trim().trim_end_matches(';').split_once(" -> ")).collect();
    let sources = nodes.iter().filter(|n| !edges.iter().any(|(_, b)| b == *n)).count();
    let sinks = nodes.iter().filter(|n| !edges.iter().any(|(a, _)| a == *n)).count();
    assert_eq!(nodes.len(), 17);
    assert_eq!(sources, 6);
    // Parallel pairs such as x1=2, x1=3 are also maximal, next to the two three-hyperplane elements.
    assert_eq!(sinks, 5);
}

#[test]
fn hyperplane_arguments() {
    let h = parse_hyperplane("x1+x2=4", 4).unwrap();
    assert_eq!(h.support().to_vec(), vec![1, 2]);
    assert_eq!(h.integer_level(), Some(4));
    let h = parse_hyperplane("x_{1,3}=7", 5).unwrap();
    assert_eq!(h.support().to_vec(), vec![1, 3]);
    assert_eq!(h.integer_level(), Some(7));
    assert!(parse_hyperplane("x9=2", 4).is_err());

    let out = cli(&["split", "check", "-n", "4", "x9=2"]);
    assert_eq!(out.code, 2);
    let out = cli(&["split", "check", "-n", "4", "x1+y2=5"]);
    assert_eq!(out.code, 2);
    assert!(out.text.contains("position 3"), "{}", out.text);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["bruhat", "leq", "1324"]).code, 2);
    assert_eq!(cli(&["bruhat", "leq", "13a4", "4321"]).code, 2);
    assert_eq!(cli(&["bruhat", "interval", "4321", "1234"]).code, 1);
    assert_eq!(cli(&["matroid", "validate", "-n", "3", "12 3"]).code, 1);
    assert_eq!(cli(&["lpm", "bases", "-n", "3", "3:1"]).code, 1);
    assert_eq!(cli(&["split", "dual", "-n", "4", "x1+x2=5"]).code, 1);
    assert_eq!(cli(&["bruhat", "leq", "--format", "dot", "12", "21"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn library_operations() {
    let out = cli(&["bruhat", "dual", "123456", "316542"]);
    assert!(out.text.contains("[461235, 654321]"), "{}", out.text);

    let out = cli(&["--format", "json", "lpm", "bases", "-n", "4", "13:24"]);
    let bases: Vec<Vec<usize>> = serde_json::from_str(&out.text).unwrap();
    assert_eq!(bases, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);

    let out = cli(&["--format", "json", "matroid", "quotient-check", "-n", "3", "1 2 3", "12 13 23"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["quotient"] == true));

    let out = cli(&["--format", "json", "flag", "interval", "-n", "4", "1:4", "12:34", "123:234"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v, serde_json::json!({"lo": "1234", "hi": "4321"}));

    let out = cli(&["--format", "json", "flag", "of-interval", "1234", "2431"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["is_lpfm"], true);

    let out = cli(&["--format", "json", "split", "dual", "-n", "4", "x1=2"]);
    let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
    assert_eq!(v["dual"], serde_json::json!({"S": [1], "alpha": 3}));

    let out = cli(&["matroid", "from-matrix", "1,0,1;0,1,1"]);
    assert_eq!(out.code, 0);
    assert!(out.text.contains("12") && out.text.contains("23"));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["--format", "json", "poset", "build", "-n", "4"][..],
        &["split", "scan", "-n", "5"],
        &["--format", "json", "verify", "-n", "3", "--seed", "11"],
    ] {
        assert_eq!(cli(args), cli(args));
    }
}

#[test]
fn verify_small_n_passes() {
    let out = cli(&["verify", "-n", "3"]);
    assert_eq!(out.code, 0, "{}", out.text);
    assert!(out.text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
}

#[test]
fn verify_n4_reports_each_criterion() {
    let out = cli(&["verify", "-n", "4"]);
    assert!(!out.stderr);
    let lines: Vec<&str> = out.text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(out.code, if lines.iter().all(|l| l.starts_with("PASS")) { 0 } else { 1 });
}

#[test]
fn fixtures_match_golden_files() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for (name, text) in fixture_contents().unwrap() {
        let golden = std::fs::read_to_string(dir.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(golden, text, "{name} differs; regenerate with `permsplit fixtures`");
    }
}
