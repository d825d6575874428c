use serde_json::Value;

use powerlab_web::{gammaf_json, hasse_svg, hoare_json, vexist_json};

const A2: &str = r#"{"labels": ["a","b"], "covers": []}"#;
const V: &str = r#"{"labels": ["a","b","t"], "covers": [["a","t"],["b","t"]]}"#;
const LAMBDA: &str = r#"{"labels": ["m","a","b"], "covers": [["m","a"],["m","b"]]}"#;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn hoare_view() {
    let v = parse(hoare_json(V).unwrap());
    assert_eq!(v["count"], 4);
    assert_eq!(v["unit"][2], serde_json::json!(["t", "{a,b,t}"]));
    let svg = v["svg"].as_str().unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    assert_eq!(svg.matches("<circle").count(), 4);
    assert_eq!(svg.matches("<line").count(), 3);
}

#[test]
fn gammaf_view() {
    assert_eq!(parse(gammaf_json(V).unwrap())["count"], 5);
    assert_eq!(parse(gammaf_json(A2).unwrap())["count"], 4);
    let l = parse(gammaf_json(LAMBDA).unwrap());
    assert_eq!(l["count"], 5);
    assert!(l["svg"].as_str().unwrap().contains("∅"));
}

#[test]
fn vexist_view() {
    let a = parse(vexist_json(A2, "a,b", 3).unwrap());
    assert_eq!(a["verdict"], "NO_SUP");
    assert_eq!(a["svg"].as_str().unwrap().matches("#f4c542").count(), 2);
    let v = parse(vexist_json(V, "a,b,t", 3).unwrap());
    assert_eq!(v["outcome"], "not_found");
    assert!(v["svg"].is_null());
}

#[test]
fn errors_are_messages() {
    assert!(hoare_json("{").unwrap_err().contains("JSON"));
    assert!(vexist_json(A2, "a,z", 3).unwrap_err().contains("unknown label"));
    assert!(vexist_json(V, "t", 3).is_err());
    assert!(vexist_json(V, "a", 9).is_err());
}

#[test]
fn svg_escapes_labels() {
    let p = powerlab::io::parse_poset(r#"{"labels": ["<x>"], "covers": []}"#).unwrap();
    assert!(hasse_svg(&p, None).contains("&lt;x&gt;"));
}
