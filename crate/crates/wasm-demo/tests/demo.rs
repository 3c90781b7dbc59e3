use fanramsey_wasm_demo::{extremal, separator, tree_witness};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn tree_witness_on_empty_host_embeds() {
    let v = parse(tree_witness(9, "empty", 0.0, "random", 3));
    assert_eq!(v["witness"]["kind"], "tree");
    assert_eq!(v["order"], 145);
    assert_eq!(v["pattern"].as_array().unwrap().len(), 72);
    assert_eq!(v["trace"][0], "greedy");
}

#[test]
fn tree_witness_on_complete_host_finds_fan() {
    let v = parse(tree_witness(10, "complete", 0.0, "path", 0));
    assert_eq!(v["witness"]["kind"], "fan");
    assert_eq!(v["witness"]["n"], 91);
}

#[test]
fn bad_parameters_are_rejected() {
    assert!(tree_witness(8, "empty", 0.0, "path", 0).is_err());
    assert!(tree_witness(9, "random", 1.5, "path", 0).is_err());
    assert!(tree_witness(9, "empty", 0.0, "spider", 0).is_err());
    assert!(separator(2, 0).is_err());
    assert!(extremal(1).is_err());
}

#[test]
fn separator_parts_are_balanced() {
    let v = parse(separator(100, 5));
    let (k, h) = (
        v["k"].as_array().unwrap().len(),
        v["h"].as_array().unwrap().len(),
    );
    assert_eq!(k + h, 99);
    assert!((33..=66).contains(&k) && (33..=66).contains(&h));
}

#[test]
fn extremal_complement_splits_in_two() {
    let v = parse(extremal(10));
    assert_eq!(v["order"], 18);
    assert_eq!(v["edges"].as_array().unwrap().len(), 81);
    assert_eq!(v["has_triangle"], false);
    assert_eq!(v["complement_components"], serde_json::json!([9, 9]));
}
