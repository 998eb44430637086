use std::process::Command as Proc;

use modlat::cli::{parse_command, run, GramDocument, Sub};
use modlat::Error;

fn bin(args: &[&str]) -> (String, i32) {
    let out = Proc::new(env!("CARGO_BIN_EXE_modlat")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

fn argv<'a>(args: &[&'a str]) -> Vec<&'a str> {
    std::iter::once("modlat").chain(args.iter().copied()).collect()
}

#[test]
fn parse_examples() {
    let c = parse_command(argv(&["genera", "--p", "7", "--n", "4", "--ring", "r", "--json"])).unwrap();
    assert!(matches!(c.sub, Sub::Genera { p: 7, n: 4, .. }));
    assert!(c.json);
    let c = parse_command(argv(&["exists", "--p", "3", "--n", "2", "--ring", "ok"])).unwrap();
    assert!(matches!(c.sub, Sub::Exists { p: 3, n: 2, .. }));
    assert_eq!(c.precision, 64);
    for bad in [
        &["genera", "--p", "4"][..],
        &["genera", "--p", "4", "--n", "2", "--ring", "ok"],
        &["exists", "--p", "5", "--n", "2", "--ring", "r"],
        &["sigma", "--p", "7"],
        &["symbols", "--a", "0", "--b", "3"],
        &["frobnicate"],
        &[],
    ] {
        assert!(matches!(parse_command(argv(bad)), Err(Error::UsageError(_))), "{bad:?}");
        assert_eq!(run(argv(bad)).code, 2);
    }
}

#[test]
fn sigma_json_has_string_numbers_and_sorted_keys() {
    let (out, code) = bin(&["sigma", "--p", "7", "--n", "4", "--json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"sigma1\": \"1\""), "{out}");
    assert!(out.contains("\"sigma2\": \"6\""), "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let first = out.find("\"command\"").unwrap();
    assert!(first < out.find("\"total\"").unwrap());
}

#[test]
fn strict_turns_negative_answers_into_failures() {
    let (out, code) = bin(&["exists", "--p", "7", "--n", "6", "--ring", "r", "--strict", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exists"], serde_json::Value::Bool(false));
    let (_, code) = bin(&["exists", "--p", "7", "--n", "6", "--ring", "r"]);
    assert_eq!(code, 0);
    let (_, code) = bin(&["exists", "--p", "7", "--n", "4", "--ring", "r", "--strict"]);
    assert_eq!(code, 0);
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("modlat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn local_doc(entries: &[[i64; 2]], tags: &[&str]) -> String {
    let e: Vec<Vec<[String; 2]>> = entries
        .iter()
        .enumerate()
        .map(|(i, d)| (0..entries.len()).map(|j| if i == j { [d[0].to_string(), d[1].to_string()] } else { ["0".into(), "0".into()] }).collect())
        .collect();
    serde_json::json!({
        "entries": e, "order_tags": tags, "p": "7", "precision": "32", "prime": "2", "ring": "r", "schema": "modlat.gram/1"
    })
    .to_string()
}

#[test]
fn decompose_reports_not_perfect() {
    let path = write_temp("np.json", &local_doc(&[[2, 0], [2, 0]], &["R", "R"]));
    let (out, code) = bin(&["decompose", "--gram", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reason"], "NotPerfect");
}

#[test]
fn classify_and_decompose_a_local_document() {
    let path = write_temp("ok.json", &local_doc(&[[1, 0], [2, 0]], &["R", "O"]));
    let (out, code) = bin(&["classify-local", "--gram", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["class"]["class"], "𝓛₁⊥𝓛₀");
    let (out, code) = bin(&["decompose", "--gram", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(v["type"]["r"], "1");
}

#[test]
fn missing_file_is_an_io_error() {
    let (_, code) = bin(&["classify-local", "--gram", "/definitely/not/here.json"]);
    assert_eq!(code, 3);
}

#[test]
fn glued_documents_round_trip() {
    let (out, code) = bin(&["glue", "--p", "7", "--n", "4", "--ring", "r", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let genera = v["genera"].as_array().unwrap();
    assert_eq!(genera.len(), 7);
    for g in genera {
        assert_eq!(g["verified"], serde_json::Value::Bool(true));
        let text = format!("{}\n", serde_json::to_string_pretty(&g["gram"]).unwrap());
        let doc = GramDocument::parse(&text).unwrap();
        assert_eq!(doc.to_json(), text);
        let again = GramDocument::from_lattice(&doc.to_lattice().unwrap(), 64);
        assert_eq!(again.to_json(), text);
    }
    let (_, code) = bin(&["glue", "--p", "7", "--n", "4", "--ring", "r", "--index", "9"]);
    assert_eq!(code, 1);
}

#[test]
fn symbols_and_help() {
    let (out, code) = bin(&["symbols", "--a", "-1", "--b", "3/5", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["product"], "1");
    assert_eq!(v["places"].as_array().unwrap().len(), 4);
    let (out, code) = bin(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn selftest_single_criterion() {
    let (out, code) = bin(&["selftest", "--criterion", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"));
}
