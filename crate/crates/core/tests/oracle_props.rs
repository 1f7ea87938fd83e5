mod common;

use common::{box_points, ideal, presentation};
use proptest::prelude::*;
use stanley_lab_core::depth::{depth_exact, homology_profile};
use stanley_lab_core::sdepth::{sdepth_exact, search_partition, CharacteristicPoset, SearchOutcome, DEFAULT_BUDGET};
use stanley_lab_core::{ModulePresentation, MonomialIdeal, Multidegree, StanleyDecomposition};

/// Largest `|Z|` with `K[Z] ∩ I = 0`: the Krull dimension of `S/I`.
fn quotient_dim(i: &MonomialIdeal) -> usize {
    let n = i.ambient_n();
    (0u32..1 << n)
        .filter(|mask| i.gens().iter().all(|g| g.support().iter().any(|&j| mask >> j & 1 == 0)))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn found_partitions_verify_with_their_value(m in presentation(3, 3, 2)) {
        let r = sdepth_exact(&m, DEFAULT_BUDGET).unwrap();
        prop_assert!(r.exact);
        let poset = CharacteristicPoset::new(&m).unwrap();
        let d = poset.partition_to_decomposition(&r.partition).unwrap();
        let report = d.verify().unwrap();
        prop_assert!(report.valid, "{:?}", report);
        prop_assert_eq!(report.sdepth, Some(r.value));
    }

    #[test]
    fn search_is_monotone(m in presentation(3, 3, 2)) {
        let poset = CharacteristicPoset::new(&m).unwrap();
        let value = sdepth_exact(&m, DEFAULT_BUDGET).unwrap().value;
        for d in 0..=value {
            prop_assert!(matches!(search_partition(&poset, d, DEFAULT_BUDGET).outcome, SearchOutcome::Found(_)));
        }
        if value < m.n() {
            prop_assert!(matches!(search_partition(&poset, value + 1, DEFAULT_BUDGET).outcome, SearchOutcome::Infeasible));
        }
    }

    #[test]
    fn free_variables_add(m in presentation(2, 3, 2), w in 1usize..=2) {
        let n = 2 + w;
        let extended = m.extend(&[0, 1], n).unwrap();
        let a = sdepth_exact(&m, DEFAULT_BUDGET).unwrap();
        let b = sdepth_exact(&extended, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(b.value, a.value + w);
    }

    #[test]
    fn quotient_sdepth_is_at_most_dimension(i in ideal(3, 3, 2)) {
        prop_assume!(!i.is_unit());
        let r = sdepth_exact(&ModulePresentation::quotient(&i), DEFAULT_BUDGET).unwrap();
        prop_assert!(r.value <= quotient_dim(&i));
    }

    #[test]
    fn depth_is_at_most_dimension(i in ideal(3, 3, 2)) {
        prop_assume!(!i.is_unit());
        prop_assert!(depth_exact(&ModulePresentation::quotient(&i)).unwrap() <= quotient_dim(&i));
    }

    #[test]
    fn ideal_depth_is_one_more_than_quotient_depth(i in ideal(3, 3, 2)) {
        prop_assume!(!i.is_unit() && !i.is_zero());
        let q = depth_exact(&ModulePresentation::quotient(&i)).unwrap();
        prop_assert_eq!(depth_exact(&ModulePresentation::ideal(&i)).unwrap(), q + 1);
    }

    #[test]
    fn euler_characteristic_of_koszul_homology_vanishes(m in presentation(3, 3, 2)) {
        // Euler-Poincaré in each multidegree: the alternating sums of chain
        // and homology dimensions agree.
        let profile = homology_profile(&m).unwrap();
        let homology: i64 = profile.ranks.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        let corner = m.generator_corner();
        let mut chains = 0i64;
        for a in box_points(&corner) {
            for mask in 0u32..1 << m.n() {
                let mut e = a.exponents().to_vec();
                if (0..m.n()).any(|j| mask >> j & 1 == 1 && e[j] == 0) {
                    continue;
                }
                for (j, x) in e.iter_mut().enumerate() {
                    *x -= mask >> j & 1;
                }
                if m.contains(&Multidegree::new(e)) {
                    chains += if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        prop_assert_eq!(homology, chains);
    }

    #[test]
    fn tampered_certificates_fail(m in presentation(3, 3, 2)) {
        let poset = CharacteristicPoset::new(&m).unwrap();
        let d = poset.partition_to_decomposition(&poset.singleton_partition()).unwrap();
        prop_assert!(d.verify().unwrap().valid);
        let mut spaces = d.spaces.clone();
        spaces.pop();
        let broken = StanleyDecomposition::new(m.clone(), spaces).unwrap();
        prop_assert!(!broken.verify().unwrap().valid);
        let mut doubled = d.spaces.clone();
        doubled.push(d.spaces[0].clone());
        prop_assert!(!StanleyDecomposition::new(m, doubled).unwrap().verify().unwrap().valid);
    }
}

#[test]
fn two_variable_ideals() {
    // In two variables a Stanley space of dimension 2 is a principal ideal and
    // two of them always meet, so sdepth(I) = 2 exactly for principal I and
    // 1 otherwise.
    for a in box_points(&[2, 2]) {
        for b in box_points(&[2, 2]) {
            let i = MonomialIdeal::minimalize(vec![a.clone(), b.clone()], 2).unwrap();
            let expected = if i.gens().len() == 1 { 2 } else { 1 };
            let r = sdepth_exact(&ModulePresentation::ideal(&i), DEFAULT_BUDGET).unwrap();
            assert_eq!((r.value, r.exact), (expected, true), "{i}");
        }
    }
}
