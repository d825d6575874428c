mod common;

use std::sync::Arc;

use proptest::prelude::*;

use powerlab::enumeration::{canonical_form, SemilatticeCatalog};
use powerlab::hoare::ConsistentHoare;
use powerlab::io::{parse_poset, poset_to_json};
use powerlab::poset::{index_labels, FinitePoset};
use powerlab::semilattice::cl_f;
use powerlab::SubsetBits;

use common::all_posets_up_to;

/// Random poset on up to 8 elements: a random relation inside the natural
/// order, transitively closed.
#[allow(clippy::needless_range_loop)]
fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |edges| {
            let mut rel = vec![vec![false; n]; n];
            let mut k = 0;
            for j in 0..n {
                rel[j][j] = true;
                for i in 0..j {
                    rel[i][j] = edges[k];
                    k += 1;
                }
            }
            for m in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][m] && rel[m][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            FinitePoset::from_relation(index_labels(n), |i, j| rel[i][j]).unwrap()
        })
    })
}

fn with_subsets() -> impl Strategy<Value = (FinitePoset, SubsetBits, SubsetBits)> {
    poset().prop_flat_map(|p| {
        let full = 1u128 << p.len();
        (Just(p), 0..full, 0..full).prop_map(|(p, a, b)| (p, SubsetBits::from_raw(a), SubsetBits::from_raw(b)))
    })
}

proptest! {
    #[test]
    fn down_closure_is_a_closure((p, a, b) in with_subsets()) {
        let da = p.down_set(a);
        prop_assert!(a.is_subset(da));
        prop_assert_eq!(p.down_set(da), da);
        prop_assert!(p.is_lower_set(da));
        prop_assert!(p.down_set(a.intersection(b)).is_subset(da));
        prop_assert_eq!(p.scott_closure(a), da);
    }

    #[test]
    fn scott_closed_is_lower((p, a, _b) in with_subsets()) {
        prop_assert_eq!(p.is_scott_closed(a), p.is_lower_set(a));
    }

    #[test]
    fn way_below_is_order(p in poset()) {
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(p.way_below(x, y), p.le(x, y));
            }
        }
        prop_assert!(p.is_sober());
    }

    #[test]
    fn canonical_form_ignores_labelling(p in poset(), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_form(&p.permuted(&perm)), canonical_form(&p));
    }

    #[test]
    fn json_round_trip_keeps_labelling(p in poset()) {
        let back = parse_poset(&poset_to_json(&p)).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn hasse_generates_the_order(p in poset()) {
        let covers = p.hasse();
        let q = FinitePoset::from_covers(p.labels().to_vec(), &covers).unwrap();
        prop_assert_eq!(&q, &p);
        for &(lo, hi) in &covers {
            prop_assert!(p.lt(lo, hi));
            prop_assert!((0..p.len()).all(|m| !(p.lt(lo, m) && p.lt(m, hi))));
        }
    }

    #[test]
    fn unit_is_an_order_embedding(p in poset()) {
        let h = ConsistentHoare::build(&Arc::new(p)).unwrap();
        prop_assert!(h.j().is_order_embedding());
        prop_assert!(h.equals_gamma_c());
    }
}

fn catalog() -> &'static SemilatticeCatalog {
    use std::sync::OnceLock;
    static CATALOG: OnceLock<SemilatticeCatalog> = OnceLock::new();
    CATALOG.get_or_init(|| SemilatticeCatalog::new(5).unwrap())
}

proptest! {
    #[test]
    fn cl_f_is_a_closure(idx in any::<prop::sample::Index>(), a in any::<u32>(), b in any::<u32>()) {
        let all: Vec<_> = catalog().all().collect();
        let l = all[idx.index(all.len())];
        let full = l.poset().universe().raw() as u32;
        let (a, b) = (SubsetBits::from_raw((a & full) as u128), SubsetBits::from_raw((b & full) as u128));
        let ca = cl_f(l, a);
        prop_assert!(a.is_subset(ca));
        prop_assert_eq!(cl_f(l, ca), ca);
        prop_assert!(cl_f(l, a.intersection(b)).is_subset(ca));
    }
}

#[test]
fn partial_join_laws_on_hoare() {
    for p in all_posets_up_to(5) {
        let h = ConsistentHoare::build(&p).unwrap();
        let ms = h.family().members();
        let join = |a, b| h.partial_join(a, b).unwrap();
        for &a in ms {
            assert_eq!(join(a, a), Some(a));
            for &b in ms {
                assert_eq!(join(a, b), join(b, a));
                if let Some(ab) = join(a, b) {
                    assert!(a.is_subset(ab) && b.is_subset(ab));
                    assert_eq!(ab, a.union(b));
                }
                for &c in ms {
                    let pairwise = [(a, b), (b, c), (a, c)].iter().all(|&(x, y)| join(x, y).is_some());
                    if pairwise {
                        let left = join(a, b).and_then(|ab| join(ab, c));
                        let right = join(b, c).and_then(|bc| join(a, bc));
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }
}
