mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semiprob::green::GreenStructure;
use semiprob::rees::maximal_subgroup;
use semiprob::representation::module::same_classes;
use semiprob::representation::munn::is_multiplicative;
use semiprob::representation::{enumerate_irreducibles, group_irreducibles, regular_module_factors, Module, PrimeField};
use semiprob::FiniteSemigroup;

/// Smallest prime from a short list coprime to every maximal subgroup order.
fn coprime_field(s: &FiniteSemigroup, g: &GreenStructure) -> PrimeField {
    let orders: Vec<usize> = g
        .idempotent_representatives()
        .into_iter()
        .map(|e| maximal_subgroup(s, g, e).unwrap().order())
        .collect();
    let p = [5u64, 7, 11, 13].into_iter().find(|&p| orders.iter().all(|&o| o as u64 % p != 0)).unwrap();
    PrimeField::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn simples_follow_the_group_count_and_the_regular_module(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_closure(&mut rng, 3, 40);
        let g = GreenStructure::new(&s);
        let field = coprime_field(&s, &g);
        let irr = enumerate_irreducibles(&s, field, seed).unwrap();
        let expected: usize = g
            .idempotent_representatives()
            .into_iter()
            .map(|e| group_irreducibles(&maximal_subgroup(&s, &g, e).unwrap().table, field, seed).unwrap().len())
            .sum();
        prop_assert_eq!(irr.len(), expected);
        for m in &irr {
            prop_assert!(is_multiplicative(&s, &m.module));
            let r_hclasses = {
                let mut hs: Vec<usize> = g.r_class(m.idempotent).iter().map(|&x| g.h_class_of(x)).collect();
                hs.sort_unstable();
                hs.dedup();
                hs.len()
            };
            prop_assert_eq!(m.induced_dim % r_hclasses, 0);
        }
        let modules: Vec<Module> = irr.iter().map(|m| m.module.clone()).collect();
        let oracle = regular_module_factors(&s, field, seed, 200).unwrap();
        let factors: Vec<Module> = oracle.classes.iter().map(|(m, _)| m.clone()).collect();
        prop_assert_eq!(factors.len(), modules.len());
        prop_assert!(same_classes(&modules, &factors));
    }

    #[test]
    fn isomorphism_classes_do_not_depend_on_the_seed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_closure(&mut rng, 3, 40);
        let g = GreenStructure::new(&s);
        let field = coprime_field(&s, &g);
        let base: Vec<Module> = enumerate_irreducibles(&s, field, 0).unwrap().into_iter().map(|m| m.module).collect();
        for k in 1..3 {
            let other: Vec<Module> =
                enumerate_irreducibles(&s, field, seed.wrapping_add(k)).unwrap().into_iter().map(|m| m.module).collect();
            prop_assert!(same_classes(&base, &other));
        }
    }
}
