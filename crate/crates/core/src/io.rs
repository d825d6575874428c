//! JSON and DOT formats for posets and families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::hoare::{ConsistentHoare, Refutation, SupVerdict};
use crate::poset::FinitePoset;
use crate::semilattice::FClosureSystem;
use crate::subset::SubsetBits;

/// `{"labels": [..], "covers": [[lo, hi], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub labels: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetJson {
            labels: p.labels().to_vec(),
            covers: p.hasse().into_iter().map(|(lo, hi)| [p.label(lo).to_string(), p.label(hi).to_string()]).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<FinitePoset> {
        let pairs: Vec<(&str, &str)> = self.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        FinitePoset::from_labeled_covers(self.labels.clone(), &pairs)
    }
}

/// `{"poset": <poset>, "members": [[labels..], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub poset: PosetJson,
    pub members: Vec<Vec<String>>,
}

impl FamilyJson {
    pub fn from_family(f: &SetFamily) -> Self {
        FamilyJson {
            poset: PosetJson::from_poset(f.base()),
            members: f.members().iter().map(|&m| f.base().labels_of(m)).collect(),
        }
    }
}

/// `H_c(P)`: the members, the order on them and the unit `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoareJson {
    pub poset: PosetJson,
    pub members: Vec<Vec<String>>,
    pub count: usize,
    pub equals_gamma_c: bool,
    pub order: PosetJson,
    pub unit: Vec<[String; 2]>,
}

impl HoareJson {
    pub fn from_hoare(h: &ConsistentHoare) -> Self {
        let fam = FamilyJson::from_family(h.family());
        let base = h.base();
        HoareJson {
            poset: fam.poset,
            count: fam.members.len(),
            members: fam.members,
            equals_gamma_c: h.equals_gamma_c(),
            order: PosetJson::from_poset(h.poset()),
            unit: (0..base.len())
                .map(|x| [base.label(x).to_string(), h.poset().label(h.j().apply(x)).to_string()])
                .collect(),
        }
    }
}

/// `Γ_F(L)` with the semilattice it was computed over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaFJson {
    pub semilattice: PosetJson,
    pub members: Vec<Vec<String>>,
    pub count: usize,
    pub order: PosetJson,
}

impl GammaFJson {
    pub fn from_system(g: &FClosureSystem) -> Self {
        let fam = FamilyJson::from_family(g.family());
        GammaFJson {
            semilattice: fam.poset,
            count: fam.members.len(),
            members: fam.members,
            order: PosetJson::from_poset(&g.family().as_poset()),
        }
    }
}

/// Result of a refutation search for a set `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub set: Vec<String>,
    /// `refuted` or `not_found`.
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<PosetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

impl WitnessJson {
    pub fn from_refutation(h: &ConsistentHoare, a: SubsetBits, r: &Refutation) -> Self {
        let set = h.base().labels_of(a);
        match r {
            Refutation::NotFound { bound } => WitnessJson {
                set,
                outcome: "not_found".into(),
                bound: Some(*bound),
                canonical: None,
                target: None,
                map: None,
                verdict: None,
            },
            Refutation::Refuted(cert) => {
                let (dom, cod) = (cert.map.dom(), cert.map.cod());
                WitnessJson {
                    set,
                    outcome: "refuted".into(),
                    bound: None,
                    canonical: Some(cert.target.poset() == h.poset()),
                    target: Some(PosetJson::from_poset(cod)),
                    map: Some(
                        (0..dom.len())
                            .map(|x| [dom.label(x).to_string(), cod.label(cert.map.apply(x)).to_string()])
                            .collect(),
                    ),
                    verdict: Some(match cert.verdict {
                        SupVerdict::NoSup => "NO_SUP".into(),
                        SupVerdict::SupExists(_) => "SUP_EXISTS".into(),
                    }),
                }
            }
        }
    }
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let json: PosetJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    json.to_poset()
}

pub fn poset_to_json(p: &FinitePoset) -> String {
    serde_json::to_string(&PosetJson::from_poset(p)).expect("poset JSON serializes")
}

/// Hasse diagram in DOT, bottom to top, nodes named by label.
pub fn to_dot(p: &FinitePoset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for l in p.labels() {
        out.push_str(&format!("  {};\n", dot_id(l)));
    }
    for (lo, hi) in p.hasse() {
        out.push_str(&format!("  {} -> {};\n", dot_id(p.label(lo)), dot_id(p.label(hi))));
    }
    out.push_str("}\n");
    out
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}
