mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiprob::stochastic::lp::convex_combination;
use semiprob::stochastic::matrix::{random_distribution, random_stochastic};
use semiprob::stochastic::rational::frac;
use semiprob::stochastic::{
    block_idempotent, convolve, doob_analyze, green_test, matrix_of, reduced_row_form, Rational, Relation,
    StochasticMatrix,
};
use semiprob::Transformation;

const RELATIONS: [Relation; 4] = [Relation::L, Relation::R, Relation::H, Relation::J];

fn permutation<R: Rng>(rng: &mut R, n: usize) -> StochasticMatrix {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    StochasticMatrix::from_transformation(&Transformation::new(p).unwrap())
}

/// A matrix together with relatives obtained by permuting rows and columns,
/// plus an unrelated random matrix.
fn family(seed: u64) -> Vec<StochasticMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=5);
    let m = random_stochastic(&mut rng, n, 16);
    let left = permutation(&mut rng, n).mul(&m);
    let right = m.mul(&permutation(&mut rng, n));
    let both = permutation(&mut rng, n).mul(&right);
    vec![m, left, right, both, random_stochastic(&mut rng, n, 16)]
}

fn random_weights<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..len).map(|_| rng.gen_range(1..=8)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|x| frac(x, total)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = common::random_closure(&mut rng, 3, 60);
        let mu = random_distribution(&mut rng, s.len(), 16);
        let nu = random_distribution(&mut rng, s.len(), 16);
        let lhs = matrix_of(&s, &convolve(&s, &mu, &nu).unwrap()).unwrap();
        let rhs = matrix_of(&s, &mu).unwrap().mul(&matrix_of(&s, &nu).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_are_equivalences(seed in any::<u64>()) {
        let ms = family(seed);
        for rel in RELATIONS {
            let table: Vec<Vec<bool>> = (0..ms.len())
                .map(|a| (0..ms.len()).map(|b| green_test(&ms[a], &ms[b], rel).unwrap().holds).collect())
                .collect();
            let holds = |a: usize, b: usize| table[a][b];
            for a in 0..ms.len() {
                prop_assert!(holds(a, a));
                for b in 0..ms.len() {
                    prop_assert_eq!(holds(a, b), holds(b, a));
                    for c in 0..ms.len() {
                        if holds(a, b) && holds(b, c) {
                            prop_assert!(holds(a, c));
                        }
                    }
                }
            }
        }
        prop_assert!(green_test(&ms[0], &ms[1], Relation::L).unwrap().holds);
        prop_assert!(green_test(&ms[0], &ms[2], Relation::R).unwrap().holds);
        prop_assert!(green_test(&ms[0], &ms[3], Relation::J).unwrap().holds);
    }

    #[test]
    fn witnesses_reproduce_matrices(seed in any::<u64>()) {
        let ms = family(seed);
        for a in 0..ms.len() {
            for b in 0..ms.len() {
                for rel in RELATIONS {
                    let v = green_test(&ms[a], &ms[b], rel).unwrap();
                    if v.holds && rel != Relation::J {
                        prop_assert!(!v.witnesses.is_empty());
                    }
                    for w in &v.witnesses {
                        prop_assert!(w.verify(&ms[a], &ms[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn left_multiples_stay_in_the_row_cone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let m = random_stochastic(&mut rng, n, 16);
        let p = if rng.gen_bool(0.5) { permutation(&mut rng, n) } else { random_stochastic(&mut rng, n, 8) };
        let pm = p.mul(&m);
        let cone = reduced_row_form(&m);
        for row in reduced_row_form(&pm) {
            prop_assert!(convex_combination(&cone, &row).is_some());
        }
        let back: Option<Vec<Vec<Rational>>> =
            m.rows().iter().map(|row| convex_combination(pm.rows(), row)).collect();
        let verdict = green_test(&m, &pm, Relation::L).unwrap();
        prop_assert_eq!(verdict.holds, back.is_some());
    }

    #[test]
    fn doob_reconstruction_is_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let blocks = rng.gen_range(1..=3);
        let rows: Vec<Vec<Rational>> = (0..blocks).map(|_| {
            let len = rng.gen_range(1..=2);
            random_weights(&mut rng, len)
        }).collect();
        let transient: Vec<Vec<Rational>> = (0..rng.gen_range(0..=2)).map(|_| random_weights(&mut rng, blocks)).collect();
        let e = block_idempotent(&rows, &transient).unwrap();
        let q = permutation(&mut rng, e.size());
        let qt = StochasticMatrix::new((0..e.size()).map(|i| q.column(i)).collect()).unwrap();
        let e = qt.mul(&e).mul(&q);
        prop_assert!(e.is_idempotent());
        let d = doob_analyze(&e).unwrap();
        prop_assert!(d.is_idempotent);
        prop_assert_eq!(d.rank, blocks);
        prop_assert_eq!(d.blocks.len(), blocks);
        prop_assert_eq!(d.reconstruct(), e.rows().to_vec());
    }
}
