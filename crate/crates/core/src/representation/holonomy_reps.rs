//! Principal indecomposable modules of a reduced holonomy monoid built on
//! the R-classes of its distinguished idempotents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::group_reps::group_irreducibles;
use super::linalg::{Subspace, Vector};
use super::module::{Module, EXHAUSTIVE_LIMIT};
use super::munn::{checked_subgroups, induce, simple_top};
use crate::decomposition::zeiger::ReducedHolonomy;
use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::rees::maximal_subgroup;
use crate::transformation::Transformation;

#[derive(Clone, Debug)]
pub struct PrincipalIndecomposable {
    pub depth: usize,
    pub idempotent: usize,
    /// Index among the simple modules of `H_e`.
    pub group_module: usize,
    pub group_dim: usize,
    /// `|Y_i|`, the number of H-classes in `R_e`.
    pub tails: usize,
    pub module: Module,
    pub radical: Subspace,
    pub top: Module,
}

/// Whether every vector outside `n` generates all of `m`, so that `n`
/// contains every proper submodule. Exhaustive over vectors when the
/// module is small, sampled otherwise.
pub fn is_unique_maximal<R: Rng + ?Sized>(m: &Module, n: &Subspace, rng: &mut R) -> bool {
    let f = &m.field;
    let p = f.characteristic();
    let check = |v: &Vector| n.contains(f, v) || m.spin(std::slice::from_ref(v)).dim() == m.dim;
    if (p as f64).powi(m.dim as i32) <= EXHAUSTIVE_LIMIT as f64 {
        let total = p.pow(m.dim as u32);
        return (1..total).all(|code| {
            let mut c = code;
            let v: Vector = (0..m.dim)
                .map(|_| {
                    let x = c % p;
                    c /= p;
                    x
                })
                .collect();
            check(&v)
        });
    }
    (0..256).all(|_| check(&(0..m.dim).map(|_| rng.gen_range(0..p)).collect()))
}

/// For each depth `i` in `0..=m` and each simple module of `H_e` at the
/// distinguished idempotent `e` of depth `i` for state `y`: the induced
/// module on the basis `(1, z)`, its maximal submodule and simple top.
pub fn holonomy_principal_indecomposables(
    rh: &ReducedHolonomy,
    field: PrimeField,
    y: usize,
    seed: u64,
) -> Result<Vec<PrincipalIndecomposable>> {
    let u = &rh.monoid;
    let g = GreenStructure::new(u);
    checked_subgroups(u, &g, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for i in 0..=rh.m {
        let e = rh
            .distinguished_idempotent(y, i)
            .ok_or_else(|| Error::Invariant(format!("no distinguished idempotent of depth {i}")))?;
        let h_e = maximal_subgroup(u, &g, e)?;
        let reps = basis_representatives(rh, &g, e, i)?;
        check_factorization(rh, &g, &h_e.members, &reps, i)?;
        for (k, n) in group_irreducibles(&h_e.table, field, seed)?.iter().enumerate() {
            let induced = induce(u, &g, &h_e, n, Some(reps.clone()))?;
            if induced.module.dim != n.dim() * rh.shape.sizes[i..].iter().product::<usize>() {
                return Err(Error::Invariant(format!("depth {i}: induced dimension law fails")));
            }
            let (radical, top) = simple_top(u, &g, &h_e, n, &induced, &mut rng)?;
            if !is_unique_maximal(&induced.module, &radical, &mut rng) {
                return Err(Error::Invariant(format!("depth {i}: maximal submodule is not unique")));
            }
            out.push(PrincipalIndecomposable {
                depth: i,
                idempotent: e,
                group_module: k,
                group_dim: n.dim(),
                tails: reps.len(),
                module: induced.module,
                radical,
                top,
            });
        }
    }
    Ok(out)
}

fn components_up_to(rh: &ReducedHolonomy, x: &Transformation, i: usize) -> Vec<Vec<Transformation>> {
    rh.shape.components(x)[..i].to_vec()
}

/// One element `(1, z)` per H-class of `R_e`: identity on levels up to `i`.
fn basis_representatives(rh: &ReducedHolonomy, g: &GreenStructure, e: usize, i: usize) -> Result<Vec<usize>> {
    let u = &rh.monoid;
    let identity_part = components_up_to(rh, u.element(e), i);
    let mut reps = vec![e];
    for &x in g.r_class(e) {
        if reps.iter().any(|&r| g.h_class_of(r) == g.h_class_of(x)) {
            continue;
        }
        let rep = g
            .h_class(x)
            .iter()
            .copied()
            .find(|&z| components_up_to(rh, u.element(z), i) == identity_part)
            .ok_or_else(|| Error::Invariant(format!("depth {i}: H-class without an element (1, z)")))?;
        reps.push(rep);
    }
    Ok(reps)
}

/// Every `x = (h, z)` in `R_e` factors as `(h, y_i) (1, z)` with the
/// group part read off the lower levels of `x`.
fn check_factorization(
    rh: &ReducedHolonomy,
    g: &GreenStructure,
    h_members: &[usize],
    reps: &[usize],
    i: usize,
) -> Result<()> {
    let u = &rh.monoid;
    for &x in g.r_class(h_members[0]) {
        let rep = *reps.iter().find(|&&r| g.h_class_of(r) == g.h_class_of(x)).expect("every H-class has a rep");
        let lower = components_up_to(rh, u.element(x), i);
        let h = h_members
            .iter()
            .copied()
            .find(|&h| components_up_to(rh, u.element(h), i) == lower)
            .ok_or_else(|| Error::Invariant(format!("depth {i}: no group element matches element {x}")))?;
        if u.multiply(h, rep) != x {
            return Err(Error::Invariant(format!("depth {i}: element {x} does not factor through its basis vector")));
        }
    }
    Ok(())
}
