mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use powerlab::enumeration::{are_isomorphic, enumerate_posets};
use powerlab::hoare::{gamma_c, r_gamma_c, ConsistentHoare};
use powerlab::semilattice::{
    cl_f_with, gamma_f, gamma_f_with, is_f_scott_closed, is_f_scott_closed_literal, ClosureSteps,
};
use powerlab::{gamma, gamma0, SemilatticeCatalog, SubsetBits};

use common::*;

fn raw(sets: &[SubsetBits]) -> BTreeSet<u32> {
    sets.iter().map(|s| s.raw() as u32).collect()
}

#[test]
fn gamma_matches_lower_set_filter() {
    for p in all_posets_up_to(5) {
        let rel = rel_of(&p);
        assert_eq!(raw(gamma(&p).members()), lower_sets(&rel, false));
        assert_eq!(raw(gamma0(&p).members()), lower_sets(&rel, true));
    }
}

#[test]
fn gamma_c_matches_consistent_filter() {
    for p in all_posets_up_to(5) {
        let rel = rel_of(&p);
        let expected: BTreeSet<u32> = lower_sets(&rel, false)
            .into_iter()
            .filter(|&s| !upper_bounds(&rel, &members(s, rel.len())).is_empty())
            .collect();
        assert_eq!(raw(gamma_c(&p).members()), expected);
        let h = ConsistentHoare::build(&p).unwrap();
        assert!(h.equals_gamma_c());
        assert_eq!(raw(h.family().members()), expected);
        assert_eq!(raw(r_gamma_c(&p).unwrap().members()), expected);
    }
}

#[test]
fn way_below_matches_definition() {
    for p in all_posets_up_to(4) {
        let rel = rel_of(&p);
        for x in 0..p.len() {
            for y in 0..p.len() {
                assert_eq!(p.way_below(x, y), way_below(&rel, x, y));
                assert_eq!(way_below(&rel, x, y), rel[x][y]);
            }
        }
    }
}

#[test]
fn f_closed_sets_match_literal_filter() {
    let catalog = SemilatticeCatalog::new(4).unwrap();
    for l in catalog.all() {
        let rel = rel_of(l.poset());
        let n = rel.len();
        let expected: BTreeSet<u32> = (0u32..(1 << n)).filter(|&s| is_f_closed(&rel, s)).collect();
        assert_eq!(raw(gamma_f(l).unwrap().members()), expected);
        for s in 0u32..(1 << n) {
            assert_eq!(is_f_scott_closed(l, bits(s)), expected.contains(&s));
            assert_eq!(is_f_scott_closed_literal(l, bits(s)).unwrap(), expected.contains(&s));
            let closed = cl_f_with(l, bits(s), ClosureSteps::ALL).raw() as u32;
            let least = expected.iter().copied().filter(|&c| c & s == s).min_by_key(|c| c.count_ones());
            assert_eq!(Some(closed), least);
        }
    }
}

#[test]
fn gamma_f_of_hoare_counts_oracle() {
    for n in 1..=4 {
        for p in enumerate_posets(n).unwrap() {
            let p = Arc::new(p);
            let h = ConsistentHoare::build(&p).unwrap();
            let order = rel_of(h.poset());
            let m = order.len();
            let count = (0u64..(1 << m)).filter(|&s| is_f_closed(&order, s as u32)).count();
            assert_eq!(count, lower_sets(&rel_of(&p), false).len() + 1);
            assert_eq!(gamma_f(h.semilattice()).unwrap().len(), count);
        }
    }
}

// Dropping the directed-supremum step leaves cl_F unchanged on finite
// posets: the lower closure already holds the maximum of every directed set.
#[test]
fn directed_step_is_redundant_on_finite_posets() {
    let without = ClosureSteps { directed_sup: false, ..ClosureSteps::ALL };
    let catalog = SemilatticeCatalog::new(5).unwrap();
    for l in catalog.all() {
        for a in l.poset().universe().subsets() {
            assert_eq!(cl_f_with(l, a, without), cl_f_with(l, a, ClosureSteps::ALL));
        }
    }
    for p in all_posets_up_to(5) {
        let h = ConsistentHoare::build(&p).unwrap();
        let full = gamma_f_with(h.semilattice(), ClosureSteps::ALL).unwrap();
        let mutant = gamma_f_with(h.semilattice(), without).unwrap();
        assert_eq!(full, mutant);
        assert!(are_isomorphic(&full.family().as_poset(), &gamma0(&p).as_poset()));
    }
}
