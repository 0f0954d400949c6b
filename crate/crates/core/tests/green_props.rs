mod common;

use common::{canonical, IdealOracle};
use proptest::prelude::*;
use semiprob::green::{is_regular, GreenStructure};
use semiprob::rees::rees_coordinatize;
use semiprob::schutz::schutz_representation;
use semiprob::{FiniteSemigroup, GroupTable, Transformation};

fn semigroup() -> impl Strategy<Value = FiniteSemigroup> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0..n, n), 1..=3)))
        .prop_map(|(n, gens)| {
            let gens: Vec<Transformation> = gens.into_iter().map(|g| Transformation::new(g).unwrap()).collect();
            FiniteSemigroup::generate(n, &gens).unwrap()
        })
}

fn intersect(a: &[Vec<usize>], b: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let c: Vec<usize> = x.iter().copied().filter(|v| y.contains(v)).collect();
            if !c.is_empty() {
                out.push(c);
            }
        }
    }
    canonical(&out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partitions_match_principal_ideals(s in semigroup()) {
        let g = GreenStructure::new(&s);
        let o = IdealOracle::new(&s);
        let l = IdealOracle::partition(&o.left);
        let r = IdealOracle::partition(&o.right);
        prop_assert_eq!(canonical(g.l_classes()), l.clone());
        prop_assert_eq!(canonical(g.r_classes()), r.clone());
        prop_assert_eq!(canonical(g.j_classes()), IdealOracle::partition(&o.two_sided));
        prop_assert_eq!(canonical(g.h_classes()), intersect(&l, &r));
        prop_assert_eq!(canonical(g.d_classes()), canonical(g.j_classes()));
        prop_assert!(g.d_equals_j());
    }

    #[test]
    fn idempotent_ideals_meet_j_class_in_green_classes(s in semigroup()) {
        let g = GreenStructure::new(&s);
        let n = s.len();
        for &e in g.idempotents() {
            let j = g.j_class(e);
            let sorted = |v: Vec<usize>| { let mut v = v; v.sort_unstable(); v.dedup(); v };
            let se = sorted((0..n).map(|a| s.multiply(a, e)).filter(|x| j.contains(x)).collect());
            let es = sorted((0..n).map(|a| s.multiply(e, a)).filter(|x| j.contains(x)).collect());
            let ese = sorted((0..n).flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| s.multiply(s.multiply(e, a), s.multiply(b, e)))
                .filter(|x| j.contains(x)).collect());
            prop_assert_eq!(se, g.l_class(e).to_vec());
            prop_assert_eq!(es, g.r_class(e).to_vec());
            prop_assert_eq!(ese, g.h_class(e).to_vec());
        }
    }

    #[test]
    fn green_lemma_cardinalities(s in semigroup()) {
        let g = GreenStructure::new(&s);
        for class in g.j_classes() {
            let x = class[0];
            for &y in class {
                prop_assert_eq!(g.l_class(x).len(), g.l_class(y).len());
                prop_assert_eq!(g.r_class(x).len(), g.r_class(y).len());
                prop_assert_eq!(g.h_class(x).len(), g.h_class(y).len());
            }
        }
    }

    #[test]
    fn regularity_is_class_wide(s in semigroup()) {
        let g = GreenStructure::new(&s);
        for x in 0..s.len() {
            prop_assert_eq!(is_regular(&s, x).is_some(), g.is_regular_class(g.j_class_of(x)));
        }
    }

    #[test]
    fn rees_round_trip(s in semigroup()) {
        let g = GreenStructure::new(&s);
        for e in g.idempotent_representatives() {
            let r = rees_coordinatize(&s, &g, e).unwrap();
            prop_assert!(r.is_regular_sandwich());
            for &x in &r.j_class {
                prop_assert_eq!(r.decode(r.encode(x).unwrap()), x);
                for &y in &r.j_class {
                    let xy = s.multiply(x, y);
                    let expected = r.j_class.contains(&xy).then_some(xy);
                    let got = r.product(r.encode(x), r.encode(y)).map(|t| r.decode(t));
                    prop_assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn schutz_matrices_are_multiplicative(s in semigroup()) {
        let g = GreenStructure::new(&s);
        for class in g.j_classes() {
            let rep = schutz_representation(&s, &g, class[0]).unwrap();
            for m in &rep.matrices {
                prop_assert_eq!(m.size(), rep.dimension());
            }
            for a in 0..s.len() {
                for b in 0..s.len() {
                    let lhs = rep.matrices[a].mul(&rep.matrices[b], &rep.schutz_group);
                    prop_assert_eq!(&lhs, &rep.matrices[s.multiply(a, b)]);
                }
            }
            prop_assert!(semiprob::schutz::check_schutz_duality(&s, &g, &rep).unwrap());
        }
    }

    #[test]
    fn composition_factor_orders_multiply_to_group_order(perms in prop::collection::vec(Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), 1..=3)) {
        let gens: Vec<Transformation> = perms.into_iter().map(|p| Transformation::new(p).unwrap()).collect();
        let s = FiniteSemigroup::generate(5, &gens).unwrap();
        let table = GroupTable::from_permutations(&s.elements().iter().map(|t| t.images().to_vec()).collect::<Vec<_>>()).unwrap();
        let factors = table.composition_series(200).unwrap();
        prop_assert_eq!(factors.iter().map(|f| f.order).product::<usize>(), table.order());
        prop_assert!(factors.iter().all(|f| f.order > 1));
    }
}
