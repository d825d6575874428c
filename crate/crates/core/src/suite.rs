//! Executable statements about `H_c(P)` and `Γ_F`, swept over every poset
//! (or semilattice) up to configured size bounds.
//!
//! Statements that quantify over all ∨↑-semilattices are checked against
//! the finite catalog of semilattices up to a bound; a PASS is a PASS at
//! that bound, recorded in the report.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{are_isomorphic, enumerate_monotone_maps, enumerate_posets, SemilatticeCatalog};
use crate::error::{Error, Result};
use crate::family::{gamma, gamma0, sup_exists_transport_check};
use crate::hoare::{r_gamma_c, refute_v_existing_with, sup_of_image, ConsistentHoare, Refutation, SupVerdict};
use crate::io::PosetJson;
use crate::map::PosetMap;
use crate::poset::FinitePoset;
use crate::semilattice::{
    cl_f_with, enumerate_homomorphisms, f_scott_continuity_against, gamma_f_with, is_f_scott_closed, is_homomorphism,
    ClosureSteps, VSemilattice,
};
use crate::subset::SubsetBits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    /// Finite-case reductions: Scott closed = lower, `≪` = `≤`, sobriety.
    Reductions,
    /// `RΓ_C(L)` agrees with `Γ̄c(L)`.
    Thm2_2,
    Lemma2_3,
    /// `H_c(P)` is free over `P` with unit `j`.
    Freeness,
    Prop3_2,
    Prop3_4,
    Lemma3_6,
    Lemma3_7,
    Lemma3_8,
    Thm3_9,
    Thm3_10,
    Cor3_11,
}

impl Statement {
    pub const ALL: [Statement; 12] = [
        Statement::Reductions,
        Statement::Thm2_2,
        Statement::Lemma2_3,
        Statement::Freeness,
        Statement::Prop3_2,
        Statement::Prop3_4,
        Statement::Lemma3_6,
        Statement::Lemma3_7,
        Statement::Lemma3_8,
        Statement::Thm3_9,
        Statement::Thm3_10,
        Statement::Cor3_11,
    ];

    /// Report identifier, e.g. `Thm3.10`.
    pub fn id(self) -> &'static str {
        match self {
            Statement::Reductions => "Reductions",
            Statement::Thm2_2 => "Thm2.2",
            Statement::Lemma2_3 => "Lemma2.3",
            Statement::Freeness => "Freeness",
            Statement::Prop3_2 => "Prop3.2",
            Statement::Prop3_4 => "Prop3.4",
            Statement::Lemma3_6 => "Lemma3.6",
            Statement::Lemma3_7 => "Lemma3.7",
            Statement::Lemma3_8 => "Lemma3.8",
            Statement::Thm3_9 => "Thm3.9",
            Statement::Thm3_10 => "Thm3.10",
            Statement::Cor3_11 => "Cor3.11",
        }
    }

    /// Command-line name, e.g. `thm3.10`.
    pub fn name(self) -> String {
        self.id().to_ascii_lowercase()
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Statement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Statement::ALL
            .into_iter()
            .find(|st| st.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Parses `all` or a comma separated list of statement names.
pub fn parse_suites(spec: &str) -> Result<Vec<Statement>> {
    let mut out = BTreeSet::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            out.extend(Statement::ALL);
        } else {
            out.insert(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::UnknownSuite(spec.to_string()));
    }
    Ok(out.into_iter().collect())
}

/// Size bounds and switches for a sweep.
///
/// Statement-specific poset bounds are clamped to `max_poset`; the
/// semilattice bound for the `cl_F` statements (`Prop3.4`, `Lemma3.7`)
/// is clamped to `max_semilattice + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_poset: usize,
    pub max_semilattice: usize,
    pub freeness_max_poset: usize,
    pub cor_max_poset: usize,
    pub prop3_2_max_poset: usize,
    pub closure_max_semilattice: usize,
    pub statements: Vec<Statement>,
    pub steps: ClosureSteps,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    pub record_timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_poset: 5,
            max_semilattice: 4,
            freeness_max_poset: 4,
            cor_max_poset: 4,
            prop3_2_max_poset: 3,
            closure_max_semilattice: 5,
            statements: Statement::ALL.to_vec(),
            steps: ClosureSteps::ALL,
            threads: 0,
            record_timing: true,
        }
    }
}

impl SuiteConfig {
    fn poset_bound(&self, st: Statement) -> usize {
        let own = match st {
            Statement::Lemma2_3 | Statement::Freeness | Statement::Lemma3_8 => self.freeness_max_poset,
            Statement::Cor3_11 => self.cor_max_poset,
            Statement::Prop3_2 => self.prop3_2_max_poset,
            _ => self.max_poset,
        };
        own.min(self.max_poset)
    }

    fn closure_bound(&self) -> usize {
        self.closure_max_semilattice.min(self.max_semilattice + 1)
    }

    fn bound_for(&self, st: Statement) -> BTreeMap<String, usize> {
        let mut b = BTreeMap::new();
        match st {
            Statement::Prop3_4 => {
                b.insert("max_semilattice".into(), self.max_semilattice);
                b.insert("max_semilattice_closure".into(), self.closure_bound());
            }
            Statement::Lemma3_6 => {
                b.insert("max_semilattice".into(), self.max_semilattice);
            }
            Statement::Lemma3_7 => {
                b.insert("max_semilattice".into(), self.closure_bound());
                b.insert("max_witness".into(), self.max_semilattice);
            }
            Statement::Reductions | Statement::Thm2_2 | Statement::Thm3_10 | Statement::Cor3_11 => {
                b.insert("max_poset".into(), self.poset_bound(st));
            }
            _ => {
                b.insert("max_poset".into(), self.poset_bound(st));
                b.insert("max_semilattice".into(), self.max_semilattice);
            }
        }
        b
    }

    pub fn validate(&self) -> Result<()> {
        let cap = crate::enumeration::DEFAULT_ENUMERATION_CAP;
        for n in [self.max_poset, self.closure_bound(), self.max_semilattice] {
            if n == 0 {
                return Err(Error::CapExceeded { n, cap });
            }
            if n > cap {
                return Err(Error::CapExceeded { n, cap });
            }
        }
        Ok(())
    }
}

/// One instance on which a statement failed or was inconclusive; enough
/// to rerun that instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub poset: PosetJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<PosetJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    pub detail: String,
}

impl Finding {
    fn on(p: &FinitePoset, detail: impl Into<String>) -> Self {
        Finding { poset: PosetJson::from_poset(p), other: None, map: None, set: None, detail: detail.into() }
    }

    fn with_other(mut self, q: &FinitePoset) -> Self {
        self.other = Some(PosetJson::from_poset(q));
        self
    }

    fn with_map(mut self, f: &PosetMap) -> Self {
        self.map = Some(f.table().to_vec());
        self
    }

    fn with_set(mut self, p: &FinitePoset, a: SubsetBits) -> Self {
        self.set = Some(p.labels_of(a));
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: String,
    pub bound: BTreeMap<String, usize>,
    pub instances: usize,
    pub failures: Vec<Finding>,
    pub inconclusive: Vec<Finding>,
    pub wall_ms: u64,
}

impl VerificationReport {
    pub fn verdict(&self) -> Verdict {
        if !self.failures.is_empty() {
            Verdict::Fail
        } else if !self.inconclusive.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

/// Per-instance tally.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cell {
    pub instances: usize,
    pub failures: Vec<Finding>,
    pub inconclusive: Vec<Finding>,
}

impl Cell {
    fn fail(&mut self, f: Finding) {
        self.failures.push(f);
    }

    fn absorb(&mut self, other: Cell) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
        self.inconclusive.extend(other.inconclusive);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inconclusive.is_empty()
    }
}

/// Shared, read-only inputs of a sweep.
pub struct SuiteContext {
    pub config: SuiteConfig,
    pub catalog: SemilatticeCatalog,
}

impl SuiteContext {
    pub fn new(config: SuiteConfig) -> Result<Self> {
        config.validate()?;
        let size = config.max_semilattice.max(config.closure_bound());
        let catalog = SemilatticeCatalog::new(size)?;
        Ok(SuiteContext { config, catalog })
    }

    fn targets(&self) -> impl Iterator<Item = &VSemilattice> {
        self.catalog.up_to(self.config.max_semilattice)
    }
}

fn hoare(p: &Arc<FinitePoset>, cell: &mut Cell) -> Option<ConsistentHoare> {
    match ConsistentHoare::build(p) {
        Ok(h) => Some(h),
        Err(e) => {
            cell.instances += 1;
            cell.fail(Finding::on(p, format!("building H_c failed: {e}")));
            None
        }
    }
}

/// Scott closed ⇔ lower set for every subset, `cl = ↓`, `≪ = ≤` by brute
/// force over directed subsets, and sobriety.
pub fn check_reductions(p: &Arc<FinitePoset>, _ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    for a in p.universe().subsets() {
        cell.instances += 1;
        if p.is_scott_closed(a) != p.is_lower_set(a) {
            cell.fail(Finding::on(p, "Scott closed and lower set disagree").with_set(p, a));
        }
        if p.scott_closure(a) != p.down_set(a) {
            cell.fail(Finding::on(p, "Scott closure differs from down-closure").with_set(p, a));
        }
    }
    let directed = match p.directed_subsets_brute(p.universe()) {
        Ok(d) => d,
        Err(e) => {
            cell.fail(Finding::on(p, e.to_string()));
            return cell;
        }
    };
    let n = p.len();
    for x in 0..n {
        for y in 0..n {
            cell.instances += 1;
            // every directed D with y <= ⋁D meets ↓x
            let brute = directed.iter().all(|&d| match p.sup(d) {
                Some(s) if p.le(y, s) => p.down_set(d).contains(x),
                _ => true,
            });
            if brute != p.le(x, y) || p.way_below(x, y) != brute {
                cell.fail(Finding::on(p, format!("way-below disagrees with order on ({x}, {y})")));
            }
        }
    }
    cell.instances += 1;
    if !p.is_sober() {
        cell.fail(Finding::on(p, "poset is not sober"));
    }
    cell
}

/// `RΓ_C(P) = Γ̄c(P)`, with `↡A = ↓A` on every member.
pub fn check_thm_2_2(p: &Arc<FinitePoset>, _ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let Some(h) = hoare(p, &mut cell) else { return cell };
    cell.instances += 1;
    match r_gamma_c(p) {
        Ok(r) if &r == h.family() => {}
        Ok(r) => cell.fail(Finding::on(p, format!("RΓ_C has {} members, H_c has {}", r.len(), h.len()))),
        Err(e) => cell.fail(Finding::on(p, e.to_string())),
    }
    for &a in gamma(p).members() {
        cell.instances += 1;
        if p.way_below_set(a) != p.down_set(a) {
            cell.fail(Finding::on(p, "↡A differs from ↓A").with_set(p, a));
        }
    }
    cell
}

/// Every monotone image of a member of `H_c(P)` has a supremum.
pub fn check_lemma_2_3(p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let Some(h) = hoare(p, &mut cell) else { return cell };
    for l in ctx.targets() {
        for f in enumerate_monotone_maps(p, l.poset_arc()) {
            for &a in h.family().members() {
                cell.instances += 1;
                if l.poset().sup(f.image(a)).is_none() {
                    cell.fail(
                        Finding::on(p, "⋁f(A) does not exist for a member A")
                            .with_other(l.poset())
                            .with_map(&f)
                            .with_set(p, a),
                    );
                }
            }
        }
    }
    cell
}

/// For every monotone `f : P → L`, `f̃(A) = ⋁f(A)` is a homomorphism with
/// `f̃ ∘ j = f`, and the only one.
pub fn check_freeness(p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let Some(h) = hoare(p, &mut cell) else { return cell };
    let hc = h.semilattice();
    for l in ctx.targets() {
        let homs = enumerate_homomorphisms(hc, l);
        let restricted: Vec<Vec<usize>> =
            homs.iter().map(|g| h.j().table().iter().map(|&i| g.apply(i)).collect()).collect();
        for f in enumerate_monotone_maps(p, l.poset_arc()) {
            cell.instances += 1;
            let finding = |detail: &str| Finding::on(p, detail).with_other(l.poset()).with_map(&f);
            let table: Option<Vec<usize>> = h.family().members().iter().map(|&a| l.poset().sup(f.image(a))).collect();
            let Some(table) = table else {
                cell.fail(finding("extension undefined: some ⋁f(A) is missing"));
                continue;
            };
            let ext = PosetMap::new(h.poset_arc().clone(), l.poset_arc().clone(), table).expect("images in L");
            if !is_homomorphism(&ext, hc, l) {
                cell.fail(finding("extension is not a homomorphism"));
            }
            match h.j().then(&ext) {
                Ok(comp) if comp.table() == f.table() => {}
                _ => cell.fail(finding("extension composed with j differs from f")),
            }
            let matching: Vec<usize> = (0..homs.len()).filter(|&i| restricted[i] == f.table()).collect();
            if matching.len() != 1 {
                cell.fail(finding(&format!("{} homomorphisms extend f", matching.len())));
            } else if homs[matching[0]] != ext {
                cell.fail(finding("the unique extending homomorphism is not ⋁f(-)"));
            }
        }
    }
    cell
}

/// Whether some monotone map into a target of at most `bound` elements
/// sends `a` to a set without supremum.
fn refuted_by_monotone(p: &Arc<FinitePoset>, a: SubsetBits, targets: &[(&VSemilattice, Vec<PosetMap>)]) -> bool {
    let _ = p;
    targets.iter().any(|(l, maps)| maps.iter().any(|f| l.poset().sup(f.image(a)).is_none()))
}

/// (1) `⋁f(A)` exists iff `⋁f(cl A)` does, with equal values; (2) `A` is
/// refuted as ⋁-existing at the bound iff `cl(A)` is.
pub fn check_prop_3_2(p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let targets: Vec<(&VSemilattice, Vec<PosetMap>)> =
        ctx.targets().map(|l| (l, enumerate_monotone_maps(p, l.poset_arc()))).collect();
    for a in p.universe().subsets() {
        for (l, maps) in &targets {
            for f in maps {
                cell.instances += 1;
                match sup_exists_transport_check(p, l, f, a) {
                    Ok(true) => {}
                    Ok(false) => cell.fail(
                        Finding::on(p, "⋁f(A) and ⋁f(cl A) disagree").with_other(l.poset()).with_map(f).with_set(p, a),
                    ),
                    Err(e) => cell.fail(Finding::on(p, e.to_string())),
                }
            }
        }
        cell.instances += 1;
        if refuted_by_monotone(p, a, &targets) != refuted_by_monotone(p, p.scott_closure(a), &targets) {
            cell.fail(Finding::on(p, "A and cl(A) differ in ⋁-existence at the bound").with_set(p, a));
        }
    }
    cell
}

/// `Γ̄c(P) = Γc(P)`; non-members are refuted (canonical witness first),
/// members survive the bounded search.
pub fn check_thm_3_9(p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let Some(h) = hoare(p, &mut cell) else { return cell };
    cell.instances += 1;
    if !h.equals_gamma_c() {
        cell.fail(Finding::on(p, "closure of Γc(P) in Γ(P) added members"));
    }
    let bound = ctx.config.max_semilattice;
    for &a in gamma(p).members() {
        cell.instances += 1;
        let member = h.family().contains(a);
        match refute_v_existing_with(&h, a, &ctx.catalog, bound) {
            Ok(Refutation::Refuted(cert)) if member => cell.fail(
                Finding::on(p, "member of H_c refuted as ⋁-existing")
                    .with_other(cert.target.poset())
                    .with_map(&cert.map)
                    .with_set(p, a),
            ),
            Ok(Refutation::NotFound { bound }) if !member => cell
                .inconclusive
                .push(Finding::on(p, format!("non-member not refuted at bound {bound}")).with_set(p, a)),
            Ok(_) => {}
            Err(e) => cell.fail(Finding::on(p, e.to_string()).with_set(p, a)),
        }
    }
    cell
}

/// `η(A) = cl_F(j(A))` is an order isomorphism `Γ_0(P) → Γ_F(H_c(P))`.
pub fn check_thm_3_10(p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let Some(h) = hoare(p, &mut cell) else { return cell };
    let l = h.semilattice();
    let steps = ctx.config.steps;
    let gf = match gamma_f_with(l, steps) {
        Ok(gf) => gf,
        Err(e) => {
            cell.instances += 1;
            cell.fail(Finding::on(p, format!("Γ_F(H_c) could not be enumerated: {e}")));
            return cell;
        }
    };
    let g0 = gamma0(p);
    cell.instances += 1;
    let mut fail = |detail: String| cell.failures.push(Finding::on(p, detail));

    for &m in gf.members() {
        if !is_f_scott_closed(l, m) {
            fail(format!(
                "Γ_F member {} is not F-Scott closed",
                gf.family().member_label(gf.family().index_of(m).unwrap_or(0))
            ));
        }
    }
    if gf.len() != gamma(p).len() + 1 {
        fail(format!("|Γ_F(H_c)| = {} but |Γ(P)| + 1 = {}", gf.len(), gamma(p).len() + 1));
    }
    let eta: Vec<SubsetBits> = g0.members().iter().map(|&a| cl_f_with(l, h.j_image(a), steps)).collect();
    for (i, &e) in eta.iter().enumerate() {
        if !gf.contains(e) {
            fail(format!("η({}) is not in Γ_F", g0.member_label(i)));
        }
        if h.family().union_of(e) != g0.member(i) {
            fail(format!("⋃η({}) differs from the set itself", g0.member_label(i)));
        }
    }
    let distinct: HashSet<SubsetBits> = eta.iter().copied().collect();
    if distinct.len() != eta.len() {
        fail("η is not injective".into());
    }
    let onto: HashSet<SubsetBits> = gf.members().iter().copied().collect();
    if distinct != onto {
        fail("η is not surjective".into());
    }
    for i in 0..eta.len() {
        for k in 0..eta.len() {
            if g0.member(i).is_subset(g0.member(k)) != eta[i].is_subset(eta[k]) {
                fail(format!("η does not preserve and reflect {} ⊆ {}", g0.member_label(i), g0.member_label(k)));
            }
        }
    }
    if !are_isomorphic(&g0.as_poset(), &gf.family().as_poset()) {
        fail("Γ_0(P) and Γ_F(H_c(P)) are not isomorphic as posets".into());
    }
    cell
}

/// Homomorphisms `H_c(P) → L` restricted along `j`, plus monotone maps
/// `P → L`, agree on which subsets lose their supremum.
pub fn check_lemma_3_8(p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let Some(h) = hoare(p, &mut cell) else { return cell };
    let monotone: Vec<(&VSemilattice, Vec<PosetMap>)> =
        ctx.targets().map(|l| (l, enumerate_monotone_maps(p, l.poset_arc()))).collect();
    let homs: Vec<(&VSemilattice, Vec<PosetMap>)> =
        ctx.targets().map(|l| (l, enumerate_homomorphisms(h.semilattice(), l))).collect();
    for a in p.universe().subsets() {
        cell.instances += 1;
        let left = refuted_by_monotone(p, a, &monotone);
        let ja = h.j_image(a);
        let right = homs.iter().any(|(l, hs)| hs.iter().any(|g| l.poset().sup(g.image(ja)).is_none()));
        if left != right {
            cell.fail(
                Finding::on(p, format!("A refuted as ⋁-existing: {left}; j(A) refuted as F-⋁-existing: {right}"))
                    .with_set(p, a),
            );
        }
    }
    cell
}

/// (1) homomorphism ⇔ F-Scott continuous for monotone maps `L → M`;
/// (2) `cl_F(A) = ↓⋁A` for consistent nonempty `A`.
pub fn check_prop_3_4(l: &VSemilattice, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let steps = ctx.config.steps;
    if l.len() <= ctx.config.max_semilattice {
        for m in ctx.targets() {
            let gf = match gamma_f_with(m, steps) {
                Ok(gf) => gf,
                Err(e) => {
                    cell.fail(Finding::on(m.poset(), format!("Γ_F could not be enumerated: {e}")));
                    continue;
                }
            };
            for f in enumerate_monotone_maps(l.poset_arc(), m.poset_arc()) {
                cell.instances += 1;
                let hom = is_homomorphism(&f, l, m);
                let cont = f_scott_continuity_against(&f, l, &gf).is_continuous();
                if hom != cont {
                    cell.fail(
                        Finding::on(l.poset(), format!("homomorphism: {hom}, F-Scott continuous: {cont}"))
                            .with_other(m.poset())
                            .with_map(&f),
                    );
                }
            }
        }
    }
    let p = l.poset();
    for a in p.universe().subsets() {
        if a.is_empty() || !p.is_consistent(a) {
            continue;
        }
        cell.instances += 1;
        let expected = p.sup(a).map(|s| p.principal_down(s));
        if expected != Some(cl_f_with(l, a, steps)) {
            cell.fail(Finding::on(p, "cl_F(A) differs from ↓⋁A").with_set(p, a));
        }
    }
    cell
}

/// Pointwise form: for every homomorphism `h : L → M`, `⋁h(A)` exists iff
/// `⋁h(cl_F A)` does, with equal values.
pub fn check_lemma_3_6(l: &VSemilattice, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let steps = ctx.config.steps;
    let homs: Vec<(&VSemilattice, Vec<PosetMap>)> = ctx.targets().map(|m| (m, enumerate_homomorphisms(l, m))).collect();
    let p = l.poset();
    for a in p.universe().subsets() {
        let closed = cl_f_with(l, a, steps);
        for (m, hs) in &homs {
            for h in hs {
                cell.instances += 1;
                if m.poset().sup(h.image(a)) != m.poset().sup(h.image(closed)) {
                    cell.fail(
                        Finding::on(p, "⋁h(A) and ⋁h(cl_F A) disagree")
                            .with_other(m.poset())
                            .with_map(h)
                            .with_set(p, a),
                    );
                }
            }
        }
    }
    cell
}

/// Every nonempty F-Scott closed `A` with a supremum is `↓⋁A`, and `∅` is
/// refuted as F-⋁-existing by a homomorphism into a semilattice without
/// least element.
pub fn check_lemma_3_7(l: &VSemilattice, ctx: &SuiteContext) -> Cell {
    let mut cell = Cell::default();
    let p = l.poset();
    let gf = match gamma_f_with(l, ctx.config.steps) {
        Ok(gf) => gf,
        Err(e) => {
            cell.fail(Finding::on(p, format!("Γ_F could not be enumerated: {e}")));
            return cell;
        }
    };
    for &a in gf.members() {
        cell.instances += 1;
        if a.is_empty() {
            let refuted = ctx.targets().any(|m| {
                enumerate_homomorphisms(l, m).iter().any(|h| m.poset().sup(h.image(SubsetBits::EMPTY)).is_none())
            });
            if !refuted && !l.is_empty() {
                cell.fail(Finding::on(p, "∅ not refuted as F-⋁-existing at the bound"));
            }
            continue;
        }
        if let Some(s) = p.sup(a) {
            if a != p.principal_down(s) {
                cell.fail(Finding::on(p, "F-Scott closed set with a supremum is not principal").with_set(p, a));
            }
        }
    }
    cell
}

/// `P₁ ≅ P₂` iff `H_c(P₁) ≅ H_c(P₂)` over all unordered pairs, after
/// checking every instance is sober.
pub fn check_cor_3_11(posets: &[Arc<FinitePoset>]) -> Cell {
    let mut cell = Cell::default();
    let mut hcs = Vec::with_capacity(posets.len());
    for p in posets {
        cell.instances += 1;
        if !p.is_sober() {
            cell.fail(Finding::on(p, "poset is not sober"));
        }
        match ConsistentHoare::build(p) {
            Ok(h) => hcs.push(h.poset().clone()),
            Err(e) => {
                cell.fail(Finding::on(p, format!("building H_c failed: {e}")));
                return cell;
            }
        }
    }
    for i in 0..posets.len() {
        for k in i..posets.len() {
            cell.instances += 1;
            let base = are_isomorphic(&posets[i], &posets[k]);
            let lifted = are_isomorphic(&hcs[i], &hcs[k]);
            if base != lifted {
                cell.fail(
                    Finding::on(&posets[i], format!("P₁ ≅ P₂: {base}, H_c(P₁) ≅ H_c(P₂): {lifted}"))
                        .with_other(&posets[k]),
                );
            }
        }
    }
    cell
}

/// Runs one statement on a single poset (or, for the semilattice
/// statements, on the poset as a semilattice).
pub fn check_on(st: Statement, p: &Arc<FinitePoset>, ctx: &SuiteContext) -> Result<Cell> {
    let as_semilattice = || VSemilattice::new(p.clone());
    Ok(match st {
        Statement::Reductions => check_reductions(p, ctx),
        Statement::Thm2_2 => check_thm_2_2(p, ctx),
        Statement::Lemma2_3 => check_lemma_2_3(p, ctx),
        Statement::Freeness => check_freeness(p, ctx),
        Statement::Prop3_2 => check_prop_3_2(p, ctx),
        Statement::Thm3_9 => check_thm_3_9(p, ctx),
        Statement::Thm3_10 => check_thm_3_10(p, ctx),
        Statement::Lemma3_8 => check_lemma_3_8(p, ctx),
        Statement::Prop3_4 => check_prop_3_4(&as_semilattice()?, ctx),
        Statement::Lemma3_6 => check_lemma_3_6(&as_semilattice()?, ctx),
        Statement::Lemma3_7 => check_lemma_3_7(&as_semilattice()?, ctx),
        Statement::Cor3_11 => check_cor_3_11(std::slice::from_ref(p)),
    })
}

/// Reruns the instance recorded in a finding; `true` if the same failure
/// detail comes back.
pub fn replay(st: Statement, finding: &Finding, ctx: &SuiteContext) -> Result<bool> {
    let p = Arc::new(finding.poset.to_poset()?);
    let cell = match (st, &finding.other) {
        (Statement::Cor3_11, Some(q)) => check_cor_3_11(&[p, Arc::new(q.to_poset()?)]),
        _ => check_on(st, &p, ctx)?,
    };
    Ok(cell
        .failures
        .iter()
        .chain(cell.inconclusive.iter())
        .any(|f| f.detail == finding.detail && f.set == finding.set && f.map == finding.map))
}

/// Runs one statement over its whole sweep.
pub fn run_statement(st: Statement, ctx: &SuiteContext, posets: &[Vec<Arc<FinitePoset>>]) -> VerificationReport {
    let start = Instant::now();
    let cfg = &ctx.config;
    let cell = match st {
        Statement::Prop3_4 | Statement::Lemma3_6 | Statement::Lemma3_7 => {
            let bound = match st {
                Statement::Lemma3_6 => cfg.max_semilattice,
                _ => cfg.closure_bound(),
            };
            let ls: Vec<&VSemilattice> = ctx.catalog.up_to(bound).collect();
            merge(ls.par_iter().map(|l| match st {
                Statement::Prop3_4 => check_prop_3_4(l, ctx),
                Statement::Lemma3_6 => check_lemma_3_6(l, ctx),
                _ => check_lemma_3_7(l, ctx),
            }))
        }
        Statement::Cor3_11 => {
            let all: Vec<Arc<FinitePoset>> = posets.iter().take(cfg.poset_bound(st)).flatten().cloned().collect();
            check_cor_3_11(&all)
        }
        _ => {
            let all: Vec<&Arc<FinitePoset>> = posets.iter().take(cfg.poset_bound(st)).flatten().collect();
            merge(all.par_iter().map(|p| check_on(st, p, ctx).expect("poset statements do not fail to start")))
        }
    };
    VerificationReport {
        statement: st.id().to_string(),
        bound: cfg.bound_for(st),
        instances: cell.instances,
        failures: cell.failures,
        inconclusive: cell.inconclusive,
        wall_ms: if cfg.record_timing { start.elapsed().as_millis() as u64 } else { 0 },
    }
}

fn merge(cells: impl IndexedParallelIterator<Item = Cell>) -> Cell {
    let collected: Vec<Cell> = cells.collect();
    let mut out = Cell::default();
    for c in collected {
        out.absorb(c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub reports: Vec<VerificationReport>,
    pub failures: usize,
    pub inconclusive: usize,
}

impl SummaryReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Every enabled statement over posets `1..=max_poset`, in statement order.
pub fn run_all(config: SuiteConfig) -> Result<SummaryReport> {
    let threads = config.threads;
    let ctx = SuiteContext::new(config)?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| Error::Internal(e.to_string()))?;
    let posets: Vec<Vec<Arc<FinitePoset>>> = (1..=ctx.config.max_poset)
        .map(|n| Ok(enumerate_posets(n)?.into_iter().map(Arc::new).collect()))
        .collect::<Result<_>>()?;
    let reports: Vec<VerificationReport> =
        pool.install(|| ctx.config.statements.iter().map(|&st| run_statement(st, &ctx, &posets)).collect());
    let failures = reports.iter().map(|r| r.failures.len()).sum();
    let inconclusive = reports.iter().map(|r| r.inconclusive.len()).sum();
    Ok(SummaryReport { reports, failures, inconclusive })
}

/// Runs every per-poset statement on a fixed list of posets (for example
/// the small named instances) instead of an enumerated sweep.
pub fn run_on(posets: &[Arc<FinitePoset>], config: SuiteConfig) -> Result<SummaryReport> {
    let ctx = SuiteContext::new(config)?;
    let mut reports = Vec::new();
    for &st in &ctx.config.statements {
        let start = Instant::now();
        let mut cell = Cell::default();
        if st == Statement::Cor3_11 {
            cell = check_cor_3_11(posets);
        } else {
            for p in posets {
                match check_on(st, p, &ctx) {
                    Ok(c) => cell.absorb(c),
                    // not a semilattice: the semilattice statements do not apply
                    Err(Error::NotVSemilattice(..)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        reports.push(VerificationReport {
            statement: st.id().to_string(),
            bound: ctx.config.bound_for(st),
            instances: cell.instances,
            failures: cell.failures,
            inconclusive: cell.inconclusive,
            wall_ms: if ctx.config.record_timing { start.elapsed().as_millis() as u64 } else { 0 },
        });
    }
    let failures = reports.iter().map(|r| r.failures.len()).sum();
    let inconclusive = reports.iter().map(|r| r.inconclusive.len()).sum();
    Ok(SummaryReport { reports, failures, inconclusive })
}

/// Same as `sup_of_image(H_c, j, A)`: the canonical refutation attempt.
pub fn canonical_witness(h: &ConsistentHoare, a: SubsetBits) -> Result<SupVerdict> {
    Ok(sup_of_image(h.semilattice(), h.j(), a)?.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(labels: &[&str], covers: &[(&str, &str)]) -> Arc<FinitePoset> {
        Arc::new(FinitePoset::from_labeled_covers(labels.iter().map(|s| s.to_string()).collect(), covers).unwrap())
    }

    fn small_ctx() -> SuiteContext {
        SuiteContext::new(SuiteConfig { max_semilattice: 3, ..SuiteConfig::default() }).unwrap()
    }

    #[test]
    fn parse_suite_names() {
        assert_eq!(parse_suites("all").unwrap().len(), 12);
        assert_eq!(parse_suites("thm3.10,cor3.11").unwrap(), vec![Statement::Thm3_10, Statement::Cor3_11]);
        assert_eq!(parse_suites("freeness").unwrap(), vec![Statement::Freeness]);
        assert!(matches!(parse_suites("thm9.9"), Err(Error::UnknownSuite(_))));
        assert_eq!(Statement::Thm3_10.name(), "thm3.10");
    }

    #[test]
    fn named_instances_pass() {
        let ctx = small_ctx();
        let a2 = arc(&["a", "b"], &[]);
        let v = arc(&["a", "b", "t"], &[("a", "t"), ("b", "t")]);
        let s1 = arc(&["x"], &[]);
        for p in [&a2, &v, &s1] {
            for st in [Statement::Lemma2_3, Statement::Freeness, Statement::Thm3_9, Statement::Thm3_10] {
                let cell = check_on(st, p, &ctx).unwrap();
                assert!(cell.passed(), "{st} on {:?}: {:?}", p.labels(), cell.failures);
                assert!(cell.instances > 0);
            }
        }
    }

    #[test]
    fn dropped_join_step_breaks_thm_3_10_on_v() {
        let v = arc(&["a", "b", "t"], &[("a", "t"), ("b", "t")]);
        let steps = ClosureSteps { pair_join: false, ..ClosureSteps::ALL };
        let ctx = SuiteContext::new(SuiteConfig { max_semilattice: 3, steps, ..SuiteConfig::default() }).unwrap();
        let cell = check_thm_3_10(&v, &ctx);
        assert!(!cell.failures.is_empty());
        for f in &cell.failures {
            assert!(replay(Statement::Thm3_10, f, &ctx).unwrap());
        }
    }

    #[test]
    fn config_validation() {
        let bad = SuiteConfig { max_poset: 9, ..SuiteConfig::default() };
        assert!(matches!(SuiteContext::new(bad), Err(Error::CapExceeded { .. })));
        let zero = SuiteConfig { max_semilattice: 0, ..SuiteConfig::default() };
        assert!(SuiteContext::new(zero).is_err());
    }
}
