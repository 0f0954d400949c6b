#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use semiprob::semigroup::{cyclic_group, flip_flop, full_transformation_monoid, symmetric_group};
use semiprob::{FiniteSemigroup, Transformation};

pub fn t(images: &[usize]) -> Transformation {
    Transformation::new(images.to_vec()).unwrap()
}

pub fn generate(degree: usize, gens: &[&[usize]]) -> FiniteSemigroup {
    let gens: Vec<Transformation> = gens.iter().map(|g| t(g)).collect();
    FiniteSemigroup::generate(degree, &gens).unwrap()
}

pub fn random_a() -> FiniteSemigroup {
    generate(4, &[&[1, 0, 3, 3], &[2, 2, 0, 1]])
}

pub fn random_b() -> FiniteSemigroup {
    generate(4, &[&[3, 1, 0, 1], &[1, 2, 3, 3], &[0, 0, 2, 1]])
}

/// The flip-flop acting below a swap of two copies, on states `x1 + 2 x2`.
pub fn flip_flop_wr_c2() -> FiniteSemigroup {
    generate(4, &[&[2, 3, 0, 1], &[0, 0, 2, 3], &[1, 1, 2, 3], &[0, 1, 2, 3]])
}

pub fn f3() -> FiniteSemigroup {
    generate(3, &[&[1, 2, 0], &[1, 0, 2], &[0, 0, 2]])
}

/// Named corpus used by the decomposition checks.
pub fn holonomy_corpus() -> Vec<(&'static str, FiniteSemigroup)> {
    vec![
        ("flip-flop", flip_flop()),
        ("C2", cyclic_group(2).unwrap()),
        ("C3", cyclic_group(3).unwrap()),
        ("C6", cyclic_group(6).unwrap()),
        ("S3", symmetric_group(3).unwrap()),
        ("F3", f3()),
        ("random-a", random_a()),
        ("random-b", random_b()),
    ]
}

/// Full corpus: the holonomy corpus plus F2 and the flip-flop wreath C2.
pub fn corpus() -> Vec<(&'static str, FiniteSemigroup)> {
    let mut out = holonomy_corpus();
    out.push(("F2", full_transformation_monoid(2).unwrap()));
    out.push(("flip-flop wr C2", flip_flop_wr_c2()));
    out
}

pub fn random_map<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    Transformation::new((0..n).map(|_| rng.gen_range(0..n)).collect()).unwrap()
}

/// Closure of 1..=3 random maps on `n` points with at most `max` elements.
pub fn random_closure<R: Rng>(rng: &mut R, n: usize, max: usize) -> FiniteSemigroup {
    loop {
        let k = rng.gen_range(1..=3);
        let gens: Vec<Transformation> = (0..k).map(|_| random_map(rng, n)).collect();
        if let Ok(s) = FiniteSemigroup::generate_bounded(n, &gens, max) {
            return s;
        }
    }
}

/// Principal ideals `S¹x`, `xS¹`, `S¹xS¹` as sorted element sets.
pub struct IdealOracle {
    pub left: Vec<BTreeSet<usize>>,
    pub right: Vec<BTreeSet<usize>>,
    pub two_sided: Vec<BTreeSet<usize>>,
}

impl IdealOracle {
    pub fn new(s: &FiniteSemigroup) -> Self {
        let n = s.len();
        let left: Vec<BTreeSet<usize>> =
            (0..n).map(|x| std::iter::once(x).chain((0..n).map(|a| s.multiply(a, x))).collect()).collect();
        let right: Vec<BTreeSet<usize>> =
            (0..n).map(|x| std::iter::once(x).chain((0..n).map(|a| s.multiply(x, a))).collect()).collect();
        let two_sided = (0..n)
            .map(|x| {
                let mut set = left[x].clone();
                for &y in &left[x] {
                    set.extend(right[y].iter().copied());
                }
                set
            })
            .collect();
        Self { left, right, two_sided }
    }

    pub fn partition(ideals: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
        let mut groups: HashMap<&BTreeSet<usize>, Vec<usize>> = HashMap::new();
        for (x, i) in ideals.iter().enumerate() {
            groups.entry(i).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// A partition given as a list of classes, in canonical order.
pub fn canonical(classes: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}
