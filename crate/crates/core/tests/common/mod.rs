#![allow(dead_code)]

use proptest::prelude::*;
use stanley_lab_core::{ModulePresentation, MonomialIdeal, Multidegree};

pub fn ideal(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 0..=max_gens)
        .prop_map(move |gens| MonomialIdeal::minimalize(gens.into_iter().map(Multidegree::new).collect(), n).unwrap())
}

pub fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Multidegree> {
    prop::collection::vec(0..=max_exp, n).prop_map(Multidegree::new)
}

/// A nonzero `J/I` with `I = J ∩ V` for a random `V`.
pub fn presentation(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = ModulePresentation> {
    (ideal(n, max_gens, max_exp), ideal(n, max_gens, max_exp))
        .prop_map(|(upper, v)| ModulePresentation::new(upper.intersect(&v).unwrap(), upper).unwrap())
        .prop_filter("nonzero module", |m| !m.is_zero())
}

/// All of `[0, corner]` in lexicographic order.
pub fn box_points(corner: &[u32]) -> Vec<Multidegree> {
    let mut out = vec![vec![]];
    for &c in corner {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=c).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Multidegree::new).collect()
}

/// Property-test configuration without on-disk regression files, which
/// proptest cannot place for integration-test sources.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}
