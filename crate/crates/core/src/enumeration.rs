//! Canonical forms of finite posets and exhaustive generation of posets,
//! ∨↑-semilattices and monotone maps, all up to isomorphism.

use std::collections::{BTreeMap, HashSet};
use std::io::{self, Read, Write};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::PosetMap;
use crate::poset::{index_labels, FinitePoset};
use crate::semilattice::VSemilattice;
use crate::subset::SubsetBits;

/// Largest `n` accepted by [`enumerate_posets`] unless a cap is given.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Isomorphism-invariant encoding of a poset.
///
/// Layout: one byte for `n`, then the strict order in canonical position
/// order packed column by column (column `k` holds `k` bits, bit `j` set iff
/// position `j` lies below position `k`), padded to a whole byte. Forms
/// computed with vertex colours append one colour byte per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<Self> {
        let n = *bytes.first().ok_or(Error::BadCanonicalForm)? as usize;
        let body = (n * n.saturating_sub(1) / 2).div_ceil(8);
        if bytes.len() != 1 + body && bytes.len() != 1 + body + n {
            return Err(Error::BadCanonicalForm);
        }
        let form = CanonicalForm(bytes);
        // reject encodings that do not describe a partial order
        form.to_poset()?;
        Ok(form)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The poset in canonical position order, labelled `0..n`.
    pub fn to_poset(&self) -> Result<FinitePoset> {
        let n = self.0[0] as usize;
        let bit = |k: usize, j: usize| {
            let idx = k * (k - 1) / 2 + j;
            (self.0[1 + idx / 8] >> (idx % 8)) & 1 == 1
        };
        FinitePoset::from_relation(index_labels(n), |i, j| i == j || (i < j && bit(j, i)))
    }
}

/// Result of canonical labelling: `position[x]` is the canonical slot of `x`.
#[derive(Clone, Debug)]
pub struct Canonization {
    pub form: CanonicalForm,
    pub position: Vec<usize>,
}

pub fn canonical_form(p: &FinitePoset) -> CanonicalForm {
    canonize(p, None).form
}

pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    p.len() == q.len() && canonical_form(p) == canonical_form(q)
}

/// Canonical labelling by individualisation and refinement. Colours start
/// from (level, vertex colour, |↓x|, |↑x|) and are refined against the
/// colours of elements above and below; the search individualises each
/// element of the first non-singleton cell in turn and keeps the leaf with
/// the lexicographically largest column sequence. Refinement never
/// reorders cells, so every leaf is ordered by level and is a linear
/// extension. Optional vertex colours must be preserved by the labelling.
pub fn canonize(p: &FinitePoset, colors: Option<&[u8]>) -> Canonization {
    let n = p.len();
    let initial: Vec<u8> = colors.map_or_else(|| vec![0; n], <[u8]>::to_vec);
    let levels = p.levels();
    let sig0: Vec<(usize, u8, usize, usize)> =
        (0..n).map(|x| (levels[x], initial[x], p.principal_down(x).len(), p.principal_up(x).len())).collect();

    let mut search = Search {
        p,
        strict_down: (0..n).map(|x| p.principal_down(x).without(x)).collect(),
        strict_up: (0..n).map(|x| p.principal_up(x).without(x)).collect(),
        best_cols: Vec::new(),
        best_order: Vec::new(),
    };
    let start = search.refine(rank(&sig0));
    search.run(start);

    let mut position = vec![0; n];
    for (pos, &x) in search.best_order.iter().enumerate() {
        position[x] = pos;
    }
    let mut bytes = vec![n as u8];
    let total = n * n.saturating_sub(1) / 2;
    bytes.resize(1 + total.div_ceil(8), 0);
    let mut idx = 0;
    for (k, col) in search.best_cols.iter().enumerate() {
        for j in 0..k {
            if col.contains(j) {
                bytes[1 + idx / 8] |= 1 << (idx % 8);
            }
            idx += 1;
        }
    }
    if colors.is_some() {
        bytes.extend(search.best_order.iter().map(|&x| initial[x]));
    }
    Canonization { form: CanonicalForm(bytes), position }
}

fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sig.to_vec();
    sorted.sort();
    sorted.dedup();
    sig.iter().map(|s| sorted.binary_search(s).expect("present")).collect()
}

fn cell_count(color: &[usize]) -> usize {
    color.iter().collect::<HashSet<_>>().len()
}

struct Search<'a> {
    p: &'a FinitePoset,
    strict_down: Vec<SubsetBits>,
    strict_up: Vec<SubsetBits>,
    best_cols: Vec<SubsetBits>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    /// Splits cells by the multisets of colours strictly below and above
    /// until stable. A cell's rank only ever moves ahead of cells that
    /// ranked after it.
    fn refine(&self, mut color: Vec<usize>) -> Vec<usize> {
        let mut cells = cell_count(&color);
        loop {
            let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..color.len())
                .map(|x| {
                    let mut below: Vec<usize> = self.strict_down[x].iter().map(|y| color[y]).collect();
                    let mut above: Vec<usize> = self.strict_up[x].iter().map(|y| color[y]).collect();
                    below.sort_unstable();
                    above.sort_unstable();
                    (color[x], below, above)
                })
                .collect();
            let next = rank(&sig);
            let next_cells = cell_count(&next);
            if next_cells == cells {
                return next;
            }
            cells = next_cells;
            color = next;
        }
    }

    fn run(&mut self, color: Vec<usize>) {
        let n = color.len();
        let mut size = vec![0usize; n];
        for &c in &color {
            size[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.leaf(&color);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for x in (0..n).filter(|&x| color[x] == target) {
            // interchangeable elements give automorphic branches
            if tried
                .iter()
                .any(|&y| self.strict_down[x] == self.strict_down[y] && self.strict_up[x] == self.strict_up[y])
            {
                continue;
            }
            tried.push(x);
            let split: Vec<(usize, bool)> = (0..n).map(|y| (color[y], y != x)).collect();
            let child = self.refine(rank(&split));
            self.run(child);
        }
    }

    fn leaf(&mut self, color: &[usize]) {
        let mut order = vec![0; color.len()];
        for (x, &c) in color.iter().enumerate() {
            order[c] = x;
        }
        let cols: Vec<SubsetBits> =
            (0..order.len()).map(|k| (0..k).filter(|&j| self.p.lt(order[j], order[k])).collect()).collect();
        if self.best_order.is_empty() || cols > self.best_cols {
            self.best_cols = cols;
            self.best_order = order;
        }
    }
}

/// Calls `emit` with every monotone table `dom → cod` for which `accept`
/// holds at each assignment. Elements of `dom` are assigned in
/// linear-extension order; the candidates for `x` are the common upper
/// bounds of the images already chosen below it.
pub fn for_each_monotone_table(
    dom: &FinitePoset,
    cod: &FinitePoset,
    accept: &mut impl FnMut(usize, &[usize]) -> bool,
    emit: &mut impl FnMut(&[usize]),
) {
    let order = dom.linear_extension();
    let mut img = vec![usize::MAX; dom.len()];
    fn rec(
        k: usize,
        order: &[usize],
        dom: &FinitePoset,
        cod: &FinitePoset,
        img: &mut Vec<usize>,
        accept: &mut impl FnMut(usize, &[usize]) -> bool,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if k == order.len() {
            emit(img);
            return;
        }
        let x = order[k];
        let below_images: SubsetBits = dom.principal_down(x).without(x).iter().map(|y| img[y]).collect();
        for c in cod.upper_bounds(below_images) {
            img[x] = c;
            if accept(x, img) {
                rec(k + 1, order, dom, cod, img, accept, emit);
            }
        }
        img[x] = usize::MAX;
    }
    rec(0, &order, dom, cod, &mut img, accept, emit);
}

/// All monotone maps `dom → cod`, in lexicographic order of their tables.
pub fn enumerate_monotone_maps(dom: &Arc<FinitePoset>, cod: &Arc<FinitePoset>) -> Vec<PosetMap> {
    let mut tables = Vec::new();
    for_each_monotone_table(dom, cod, &mut |_, _| true, &mut |t| tables.push(t.to_vec()));
    tables.sort_unstable();
    tables.into_iter().map(|t| PosetMap::new(dom.clone(), cod.clone(), t).expect("tables are in range")).collect()
}

/// All posets on `n` elements up to isomorphism, with the default cap.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinitePoset>> {
    enumerate_posets_capped(n, DEFAULT_ENUMERATION_CAP)
}

/// All posets on `n` elements up to isomorphism, each in canonical
/// labelling, sorted by canonical form.
pub fn enumerate_posets_capped(n: usize, cap: usize) -> Result<Vec<FinitePoset>> {
    Ok(enumerate_canonical_forms(n, cap)?.iter().map(|f| f.to_poset().expect("canonical forms decode")).collect())
}

/// Canonical forms of all posets on `n` elements, sorted.
///
/// Generation adds one new maximal element at a time. A child is kept only
/// if its new element lies in the automorphism orbit of the canonically
/// chosen maximal element, which makes children of distinct parents
/// pairwise non-isomorphic; duplicates from one parent are removed by form.
pub fn enumerate_canonical_forms(n: usize, cap: usize) -> Result<Vec<CanonicalForm>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let mut level: Vec<FinitePoset> = vec![FinitePoset::antichain(0)?];
    for size in 1..=n {
        let mut next = Vec::new();
        for parent in &level {
            let mut local = HashSet::new();
            for lower in parent.lower_sets() {
                let child = extend_with_maximal(parent, lower, size);
                let canon = canonize(&child, None);
                if !is_canonical_extension(&child, &canon) {
                    continue;
                }
                if local.insert(canon.form.clone()) {
                    next.push((canon.form, child));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next.into_iter().map(|(f, _)| f.to_poset().expect("canonical forms decode")).collect();
    }
    let mut forms: Vec<CanonicalForm> = level.iter().map(canonical_form).collect();
    forms.sort();
    Ok(forms)
}

fn extend_with_maximal(parent: &FinitePoset, lower: SubsetBits, size: usize) -> FinitePoset {
    let new = size - 1;
    FinitePoset::from_relation(index_labels(size), |i, j| {
        if j == new {
            i == new || lower.contains(i)
        } else {
            i != new && parent.le(i, j)
        }
    })
    .expect("adding a maximal element over a lower set keeps a partial order")
}

fn is_canonical_extension(child: &FinitePoset, canon: &Canonization) -> bool {
    let new = child.len() - 1;
    let maximal = child.maximal_elements(child.universe());
    let chosen = maximal.iter().max_by_key(|&x| canon.position[x]).expect("nonempty poset has a maximal element");
    if chosen == new {
        return true;
    }
    let mark = |x: usize| {
        let mut colors = vec![0u8; child.len()];
        colors[x] = 1;
        canonize(child, Some(&colors)).form
    };
    mark(new) == mark(chosen)
}

/// The ∨↑-semilattices among the posets on `n` elements.
pub fn enumerate_v_semilattices(n: usize) -> Result<Vec<VSemilattice>> {
    enumerate_v_semilattices_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_v_semilattices_capped(n: usize, cap: usize) -> Result<Vec<VSemilattice>> {
    Ok(enumerate_posets_capped(n, cap)?
        .into_iter()
        .filter(crate::semilattice::is_v_semilattice)
        .map(|p| VSemilattice::new(Arc::new(p)).expect("filtered on the semilattice test"))
        .collect())
}

/// Every ∨↑-semilattice with `1..=max_size` elements, ascending by size and
/// canonical form within a size.
#[derive(Clone, Debug)]
pub struct SemilatticeCatalog {
    max_size: usize,
    by_size: BTreeMap<usize, Vec<VSemilattice>>,
}

impl SemilatticeCatalog {
    pub fn new(max_size: usize) -> Result<Self> {
        let by_size = (1..=max_size).map(|n| Ok((n, enumerate_v_semilattices(n)?))).collect::<Result<_>>()?;
        Ok(SemilatticeCatalog { max_size, by_size })
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Semilattices with at most `bound` elements, in catalog order.
    pub fn up_to(&self, bound: usize) -> impl Iterator<Item = &VSemilattice> {
        self.by_size.range(1..=bound).flat_map(|(_, ls)| ls.iter())
    }

    pub fn all(&self) -> impl Iterator<Item = &VSemilattice> {
        self.up_to(self.max_size)
    }

    pub fn len(&self) -> usize {
        self.by_size.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Writes forms as `u32` little-endian length followed by the bytes.
pub fn write_form_cache(mut w: impl Write, forms: &[CanonicalForm]) -> io::Result<()> {
    for f in forms {
        w.write_all(&(f.0.len() as u32).to_le_bytes())?;
        w.write_all(&f.0)?;
    }
    w.flush()
}

pub fn read_form_cache(mut r: impl Read) -> io::Result<Vec<CanonicalForm>> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    let mut out = Vec::new();
    let mut rest = buf.as_slice();
    while !rest.is_empty() {
        if rest.len() < 4 {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "truncated length prefix"));
        }
        let len = u32::from_le_bytes(rest[..4].try_into().expect("four bytes")) as usize;
        rest = &rest[4..];
        if rest.len() < len {
            return Err(io::Error::new(io::ErrorKind::InvalidData, "truncated canonical form"));
        }
        let form = CanonicalForm::from_bytes(rest[..len].to_vec())
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e.to_string()))?;
        out.push(form);
        rest = &rest[len..];
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(labels: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
        FinitePoset::from_labeled_covers(labels.iter().map(|s| s.to_string()).collect(), covers).unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        let v = named(&["a", "b", "t"], &[("a", "t"), ("b", "t")]);
        let relabeled = v.permuted(&[1, 2, 0]);
        assert!(are_isomorphic(&v, &relabeled));
        let c2 = FinitePoset::chain(2).unwrap();
        let a2 = FinitePoset::antichain(2).unwrap();
        assert!(!are_isomorphic(&c2, &a2));
        let lambda = named(&["m", "a", "b"], &[("m", "a"), ("m", "b")]);
        assert!(!are_isomorphic(&v, &lambda));
        assert!(are_isomorphic(&v.dual(), &lambda));
    }

    #[test]
    fn form_roundtrip() {
        let p = named(&["m", "a", "b", "t"], &[("m", "a"), ("m", "b"), ("a", "t")]);
        let f = canonical_form(&p);
        let q = f.to_poset().unwrap();
        assert!(are_isomorphic(&p, &q));
        assert_eq!(canonical_form(&q), f);
        assert_eq!(CanonicalForm::from_bytes(f.as_bytes().to_vec()).unwrap(), f);
        assert!(CanonicalForm::from_bytes(vec![]).is_err());
        assert!(CanonicalForm::from_bytes(vec![3]).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_posets(1).unwrap().len(), 1);
        assert_eq!(enumerate_posets(2).unwrap().len(), 2);
        assert_eq!(enumerate_posets(3).unwrap().len(), 5);
        assert!(matches!(enumerate_posets(7), Err(Error::CapExceeded { n: 7, cap: 6 })));
    }

    #[test]
    fn semilattice_filter() {
        assert_eq!(enumerate_v_semilattices(2).unwrap().len(), 2);
        let fours = enumerate_v_semilattices(4).unwrap();
        let two_tops = named(&["a", "b", "t1", "t2"], &[("a", "t1"), ("a", "t2"), ("b", "t1"), ("b", "t2")]);
        assert!(fours.iter().all(|l| !are_isomorphic(l.poset(), &two_tops)));
        let v = named(&["a", "b", "t"], &[("a", "t"), ("b", "t")]);
        assert!(enumerate_v_semilattices(3).unwrap().iter().any(|l| are_isomorphic(l.poset(), &v)));
    }

    #[test]
    fn monotone_map_counts() {
        let s1 = Arc::new(FinitePoset::chain(1).unwrap());
        let c3 = Arc::new(FinitePoset::chain(3).unwrap());
        assert_eq!(enumerate_monotone_maps(&s1, &c3).len(), 3);
        let c2 = Arc::new(FinitePoset::chain(2).unwrap());
        assert_eq!(enumerate_monotone_maps(&c2, &c2).len(), 3);
        let a2 = Arc::new(FinitePoset::antichain(2).unwrap());
        assert_eq!(enumerate_monotone_maps(&a2, &c2).len(), 4);
    }

    #[test]
    fn cache_roundtrip() {
        let forms = enumerate_canonical_forms(3, 6).unwrap();
        let mut buf = Vec::new();
        write_form_cache(&mut buf, &forms).unwrap();
        assert_eq!(read_form_cache(buf.as_slice()).unwrap(), forms);
        assert!(read_form_cache(&buf[..buf.len() - 1]).is_err());
    }

    #[test]
    fn catalog_order() {
        let cat = SemilatticeCatalog::new(3).unwrap();
        let sizes: Vec<usize> = cat.all().map(VSemilattice::len).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(cat.up_to(2).count(), 3);
        assert_eq!(cat.len(), 8);
    }
}
