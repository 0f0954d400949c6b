//! Simple modules of finite groups over prime fields not dividing the
//! group order, found by chopping the regular module.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::linalg::{identity, mat_mul, Mat};
use super::module::{isomorphism_classes, Module};
use crate::error::{Error, Result};
use crate::group::GroupTable;

/// A module over a group with the matrix of every element.
/// `module.gens[k]` is the matrix of `generators[k]`.
#[derive(Clone, Debug)]
pub struct GroupRepresentation {
    pub module: Module,
    pub generators: Vec<usize>,
    pub matrices: Vec<Mat>,
}

impl GroupRepresentation {
    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// Traces of all element matrices; a basis-independent fingerprint.
    pub fn traces(&self) -> Vec<u64> {
        let f = &self.module.field;
        self.matrices.iter().map(|m| (0..m.len()).fold(0, |acc, i| f.add(acc, m[i][i]))).collect()
    }
}

/// Generators used for every module of `g`: a greedy generating set, or
/// the identity alone for the trivial group.
pub fn group_generators(g: &GroupTable) -> Vec<usize> {
    let gens = g.generating_set();
    if gens.is_empty() {
        vec![g.identity()]
    } else {
        gens
    }
}

/// Extends generator matrices to all elements by breadth-first products
/// and checks `M(x h) = M(x) M(h)` for every element `x` and generator `h`.
pub fn extend_to_group(g: &GroupTable, module: Module) -> Result<GroupRepresentation> {
    let generators = group_generators(g);
    let f = module.field;
    let mut matrices: Vec<Option<Mat>> = vec![None; g.order()];
    matrices[g.identity()] = Some(identity(module.dim));
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (k, &h) in generators.iter().enumerate() {
            let y = g.mul(x, h);
            if matrices[y].is_none() {
                matrices[y] = Some(mat_mul(&f, matrices[x].as_ref().expect("visited"), &module.gens[k]));
                queue.push_back(y);
            }
        }
    }
    let matrices: Vec<Mat> =
        matrices.into_iter().collect::<Option<_>>().ok_or_else(|| Error::Invariant("generators do not generate".into()))?;
    for x in 0..g.order() {
        for (k, &h) in generators.iter().enumerate() {
            if matrices[g.mul(x, h)] != mat_mul(&f, &matrices[x], &module.gens[k]) {
                return Err(Error::Invariant("group matrices are not multiplicative".into()));
            }
        }
    }
    Ok(GroupRepresentation { module, generators, matrices })
}

/// Right regular module: basis vector `x` goes to `x h`.
pub fn group_regular_module(g: &GroupTable, field: PrimeField) -> Module {
    let n = g.order();
    let gens = group_generators(g)
        .iter()
        .map(|&h| (0..n).map(|x| (0..n).map(|y| u64::from(g.mul(x, h) == y)).collect()).collect())
        .collect();
    Module { field, dim: n, gens }
}

/// Number of classes of `x ~ c^-1 x^(p^i) c`; equals the number of simple
/// modules over `GF(p)` when `p` does not divide the order.
pub fn field_class_count(g: &GroupTable, p: u64) -> usize {
    let n = g.order();
    let power = |x: usize, e: u64| (0..e % g.element_order(x) as u64).fold(g.identity(), |acc, _| g.mul(acc, x));
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let mut stack = vec![x];
        class[x] = count;
        while let Some(y) = stack.pop() {
            let mut next: Vec<usize> = (0..n).map(|c| g.mul(g.mul(g.inv(c), y), c)).collect();
            next.push(power(y, p));
            for z in next {
                if class[z] == usize::MAX {
                    class[z] = count;
                    stack.push(z);
                }
            }
        }
        count += 1;
    }
    count
}

/// Pairwise non-isomorphic simple modules over `GF(p)`, sorted by
/// dimension and then by traces. The count is checked against
/// [`field_class_count`] and the sum of `dim^2 / dim End` against `|G|`.
pub fn group_irreducibles(g: &GroupTable, field: PrimeField, seed: u64) -> Result<Vec<GroupRepresentation>> {
    let p = field.characteristic();
    if g.order() as u64 % p == 0 {
        return Err(Error::CharacteristicClash { p, orders: vec![g.order()] });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = group_regular_module(g, field).composition_factors(&mut rng)?;
    let mut reps: Vec<GroupRepresentation> = isomorphism_classes(factors)
        .into_iter()
        .map(|(m, _)| extend_to_group(g, m))
        .collect::<Result<_>>()?;
    reps.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.traces().cmp(&b.traces())));
    let expected = field_class_count(g, p);
    if reps.len() != expected {
        return Err(Error::Invariant(format!("{} simple modules found, {expected} expected", reps.len())));
    }
    let weighted: usize = reps.iter().map(|r| r.dim() * r.dim() / r.module.endomorphism_dim()).sum();
    if weighted != g.order() {
        return Err(Error::Invariant(format!("Wedderburn sum {weighted} differs from the group order")));
    }
    Ok(reps)
}
