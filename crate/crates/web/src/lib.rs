//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function takes a poset in the JSON format of the command
//! line tool and returns a JSON string carrying the result and an SVG
//! Hasse diagram. The `*_json` functions hold the logic and are what the
//! native tests call.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use powerlab::hoare::refute_v_existing;
use powerlab::io::{parse_poset, HoareJson, WitnessJson};
use powerlab::semilattice::gamma_f;
use powerlab::{ConsistentHoare, FinitePoset, Refutation, SubsetBits};

/// Largest semilattice size the page may search over.
pub const MAX_WITNESS_SIZE: usize = 5;

#[derive(Serialize)]
struct HoareView {
    #[serde(flatten)]
    hoare: HoareJson,
    base_svg: String,
    svg: String,
}

#[derive(Serialize)]
struct GammaFView {
    count: usize,
    members: Vec<Vec<String>>,
    semilattice_size: usize,
    svg: String,
}

#[derive(Serialize)]
struct WitnessView {
    #[serde(flatten)]
    witness: WitnessJson,
    svg: Option<String>,
}

fn parse(text: &str) -> Result<Arc<FinitePoset>, String> {
    parse_poset(text).map(Arc::new).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn hoare_json(poset: &str) -> Result<String, String> {
    let p = parse(poset)?;
    let h = ConsistentHoare::build(&p).map_err(|e| e.to_string())?;
    to_json(&HoareView {
        hoare: HoareJson::from_hoare(&h),
        base_svg: hasse_svg(&p, None),
        svg: hasse_svg(h.poset(), None),
    })
}

/// `Γ_F(H_c(P))`; its order is drawn with `∅` at the bottom.
pub fn gammaf_json(poset: &str) -> Result<String, String> {
    let p = parse(poset)?;
    let h = ConsistentHoare::build(&p).map_err(|e| e.to_string())?;
    let g = gamma_f(h.semilattice()).map_err(|e| e.to_string())?;
    let fam = g.family();
    let labels: Vec<String> =
        (0..fam.len()).map(|i| if fam.member(i).is_empty() { "∅".to_string() } else { fam.member_label(i) }).collect();
    let order = fam.as_poset();
    let order = FinitePoset::from_relation(labels, |i, j| order.le(i, j)).map_err(|e| e.to_string())?;
    to_json(&GammaFView {
        count: fam.len(),
        members: fam.members().iter().map(|&m| h.poset().labels_of(m)).collect(),
        semilattice_size: h.len(),
        svg: hasse_svg(&order, None),
    })
}

/// Refutation search for the set named by comma separated labels.
pub fn vexist_json(poset: &str, set: &str, max_l: usize) -> Result<String, String> {
    if max_l > MAX_WITNESS_SIZE {
        return Err(format!("search bound is capped at {MAX_WITNESS_SIZE} in the browser"));
    }
    let p = parse(poset)?;
    let labels: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let a = p.subset_of_labels(&labels).map_err(|e| e.to_string())?;
    if a.is_empty() || !p.is_scott_closed(a) {
        return Err("the set must be nonempty and downward closed".into());
    }
    let r = refute_v_existing(&p, a, max_l).map_err(|e| e.to_string())?;
    let h = ConsistentHoare::build(&p).map_err(|e| e.to_string())?;
    let svg = match &r {
        Refutation::Refuted(cert) => Some(hasse_svg(cert.target.poset(), Some(cert.map.image(a)))),
        Refutation::NotFound { .. } => None,
    };
    to_json(&WitnessView { witness: WitnessJson::from_refutation(&h, a, &r), svg })
}

#[wasm_bindgen]
pub fn hoare(poset: &str) -> Result<String, JsValue> {
    hoare_json(poset).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn gammaf(poset: &str) -> Result<String, JsValue> {
    gammaf_json(poset).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn vexist(poset: &str, set: &str, max_l: usize) -> Result<String, JsValue> {
    vexist_json(poset, set, max_l).map_err(|e| JsValue::from_str(&e))
}

const ROW: f64 = 70.0;
const COL: f64 = 90.0;
const PAD: f64 = 30.0;

/// Hasse diagram as SVG: rows by level, bottom up. Elements in `mark` are
/// drawn filled.
pub fn hasse_svg(p: &FinitePoset, mark: Option<SubsetBits>) -> String {
    let levels = p.levels();
    let height = levels.iter().copied().max().map_or(0, |m| m + 1);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); height];
    for x in p.linear_extension() {
        rows[levels[x]].push(x);
    }
    let widest = rows.iter().map(Vec::len).max().unwrap_or(0);
    let w = 2.0 * PAD + COL * widest.max(1) as f64;
    let h = 2.0 * PAD + ROW * height.saturating_sub(1) as f64;
    let mut pos = vec![(0.0, 0.0); p.len()];
    for (lvl, row) in rows.iter().enumerate() {
        let offset = (w - COL * row.len() as f64) / 2.0 + COL / 2.0;
        for (k, &x) in row.iter().enumerate() {
            pos[x] = (offset + COL * k as f64, h - PAD - ROW * lvl as f64);
        }
    }
    let mut out = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    for (lo, hi) in p.hasse() {
        let ((x1, y1), (x2, y2)) = (pos[lo], pos[hi]);
        let _ = write!(out, r##"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#555"/>"##);
    }
    for (x, &(cx, cy)) in pos.iter().enumerate() {
        let fill = if mark.is_some_and(|m| m.contains(x)) { "#f4c542" } else { "#fff" };
        let _ = write!(
            out,
            r##"<circle cx="{cx}" cy="{cy}" r="5" fill="{fill}" stroke="#222"/><text x="{}" y="{}" font-size="12" font-family="monospace">{}</text>"##,
            cx + 8.0,
            cy + 4.0,
            escape(p.label(x))
        );
    }
    out.push_str("</svg>");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
