//! Simple modules of finite semigroups from those of their maximal
//! subgroups: induction along an R-class, quotient by the maximal
//! submodule, apex detection and enumeration.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::PrimeField;
use super::group_reps::{group_generators, group_irreducibles, GroupRepresentation};
use super::linalg::{is_zero, left_nullspace, mat_mul, vec_mat, zeros, Mat, Subspace};
use super::module::{isomorphism_classes, Module};
use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::rees::{maximal_subgroup, MaximalSubgroup};
use crate::semigroup::FiniteSemigroup;

/// Matrix of every element, from generator matrices along closure order.
pub fn element_matrices(s: &FiniteSemigroup, m: &Module) -> Vec<Mat> {
    let mut out: Vec<Mat> = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        out.push(match s.parent(i) {
            None => m.gens[s.word(i)[0]].clone(),
            Some((j, k)) => mat_mul(&m.field, &out[j], &m.gens[k]),
        });
    }
    out
}

/// `M(x) M(g) = M(x g)` for every element `x` and generator `g`.
pub fn is_multiplicative(s: &FiniteSemigroup, m: &Module) -> bool {
    let mats = element_matrices(s, m);
    (0..s.len()).all(|x| {
        (0..s.num_generators()).all(|k| mat_mul(&m.field, &mats[x], &m.gens[k]) == mats[s.right_mul_gen(x, k)])
    })
}

/// Right regular module of `S`: basis vector `x` goes to `x g`.
pub fn regular_module(s: &FiniteSemigroup, field: PrimeField) -> Module {
    let n = s.len();
    let gens = (0..s.num_generators())
        .map(|k| (0..n).map(|x| (0..n).map(|y| u64::from(s.right_mul_gen(x, k) == y)).collect()).collect())
        .collect();
    Module { field, dim: n, gens }
}

/// `N (x) K R_e` on the basis `n_a (x) reps[j]`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub idempotent: usize,
    pub reps: Vec<usize>,
    pub module: Module,
}

/// Default H-class representatives of `R_e`: `e` first, then the least
/// element of every other H-class.
pub fn r_class_representatives(g: &GreenStructure, e: usize) -> Vec<usize> {
    let mut reps = vec![e];
    for &x in g.r_class(e) {
        if !reps.iter().any(|&r| g.h_class_of(r) == g.h_class_of(x)) {
            reps.push(x);
        }
    }
    reps
}

/// Induces a module of `H_e` to `S`. With `s_j t = h s_k` for `h` in
/// `H_e`, the element `t` sends `n (x) s_j` to `n h (x) s_k`, and to zero
/// when `s_j t` leaves `R_e`.
pub fn induce(
    s: &FiniteSemigroup,
    g: &GreenStructure,
    h_e: &MaximalSubgroup,
    n: &GroupRepresentation,
    reps: Option<Vec<usize>>,
) -> Result<InducedModule> {
    let e = h_e.idempotent;
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let reps = reps.unwrap_or_else(|| r_class_representatives(g, e));
    let d = n.dim();
    let dim = d * reps.len();
    let mut gens = Vec::with_capacity(s.num_generators());
    for k in 0..s.num_generators() {
        let mut m = zeros(dim, dim);
        for (j, &sj) in reps.iter().enumerate() {
            let x = s.right_mul_gen(sj, k);
            if g.r_class_of(x) != g.r_class_of(e) {
                continue;
            }
            let target = reps
                .iter()
                .position(|&r| g.h_class_of(r) == g.h_class_of(x))
                .ok_or_else(|| Error::Invariant("H-class without a representative".into()))?;
            let h = (0..h_e.order())
                .find(|&i| s.multiply(h_e.members[i], reps[target]) == x)
                .ok_or_else(|| Error::Invariant("R-class element outside the H_e-orbit of its representative".into()))?;
            for a in 0..d {
                m[j * d + a][target * d..(target + 1) * d].copy_from_slice(&n.matrices[h][a]);
            }
        }
        gens.push(m);
    }
    let module = Module::new(n.module.field, dim, gens)?;
    if !is_multiplicative(s, &module) {
        return Err(Error::Invariant("induced action is not multiplicative".into()));
    }
    Ok(InducedModule { idempotent: e, reps, module })
}

/// `{m : m K S e = 0}`.
pub fn maximal_submodule(s: &FiniteSemigroup, m: &Module, e: usize) -> Subspace {
    let mats = element_matrices(s, m);
    let mut targets: Vec<usize> = (0..s.len()).map(|x| s.multiply(x, e)).collect();
    targets.sort_unstable();
    targets.dedup();
    let stacked: Mat =
        (0..m.dim).map(|r| targets.iter().flat_map(|&t| mats[t][r].iter().copied()).collect()).collect();
    Subspace::span(&m.field, m.dim, &left_nullspace(&m.field, &stacked, m.dim))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApexData {
    pub annihilator: Vec<usize>,
    /// `(J-class, idempotent)` of the apex.
    pub apex: Option<(usize, usize)>,
    pub valid: bool,
}

/// Annihilator of `m` and the regular J-class `J_e` with
/// `Ann = {s : J_e is not below J(s)}`, if one exists.
pub fn apex_of(s: &FiniteSemigroup, g: &GreenStructure, m: &Module) -> ApexData {
    let mats = element_matrices(s, m);
    let annihilator: Vec<usize> = (0..s.len()).filter(|&x| is_zero(&mats[x])).collect();
    let apex = g.idempotent_representatives().into_iter().find(|&e| {
        let predicted: Vec<usize> = (0..s.len()).filter(|&x| !g.element_j_leq(e, x)).collect();
        predicted == annihilator
    });
    ApexData { annihilator, apex: apex.map(|e| (g.j_class_of(e), e)), valid: apex.is_some() }
}

/// The e-fixed part `M e` as a module over `H_e`, using the generators
/// of [`group_generators`].
pub fn restrict_to_group(s: &FiniteSemigroup, m: &Module, h_e: &MaximalSubgroup) -> Module {
    let f = m.field;
    let mats = element_matrices(s, m);
    let image = Subspace::span(&f, m.dim, &mats[h_e.idempotent]);
    let gens = group_generators(&h_e.table)
        .iter()
        .map(|&h| {
            let mh = &mats[h_e.members[h]];
            image.basis.iter().map(|v| image.coordinates(&vec_mat(&f, v, mh))).collect()
        })
        .collect();
    Module { field: f, dim: image.dim(), gens }
}

#[derive(Clone, Debug)]
pub struct Irreducible {
    pub j_class: usize,
    pub idempotent: usize,
    pub group_order: usize,
    /// Index among the simple modules of `H_e`.
    pub group_module: usize,
    pub induced_dim: usize,
    pub module: Module,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibleSummary {
    pub dim: usize,
    pub field: u64,
    pub apex_j_class: usize,
    pub idempotent: usize,
    pub group_order: usize,
    pub induced_dim: usize,
}

impl Irreducible {
    pub fn summary(&self) -> IrreducibleSummary {
        IrreducibleSummary {
            dim: self.module.dim,
            field: self.module.field.characteristic(),
            apex_j_class: self.j_class,
            idempotent: self.idempotent,
            group_order: self.group_order,
            induced_dim: self.induced_dim,
        }
    }
}

/// Maximal subgroups at the idempotent representatives, after checking
/// that `p` divides none of their orders.
pub fn checked_subgroups(s: &FiniteSemigroup, g: &GreenStructure, field: PrimeField) -> Result<Vec<MaximalSubgroup>> {
    let subgroups: Vec<MaximalSubgroup> =
        g.idempotent_representatives().into_iter().map(|e| maximal_subgroup(s, g, e)).collect::<Result<_>>()?;
    let p = field.characteristic();
    let mut clashes: Vec<usize> =
        subgroups.iter().map(MaximalSubgroup::order).filter(|&o| o as u64 % p == 0).collect();
    if !clashes.is_empty() {
        clashes.sort_unstable();
        clashes.dedup();
        return Err(Error::CharacteristicClash { p, orders: clashes });
    }
    Ok(subgroups)
}

/// Top of an induced module, checked to be simple with apex `J_e` and to
/// restrict to `n` on `M e`.
pub fn simple_top(
    s: &FiniteSemigroup,
    g: &GreenStructure,
    h_e: &MaximalSubgroup,
    n: &GroupRepresentation,
    induced: &InducedModule,
    rng: &mut ChaCha8Rng,
) -> Result<(Subspace, Module)> {
    let e = h_e.idempotent;
    let radical = maximal_submodule(s, &induced.module, e);
    let top = induced.module.quotient(&radical);
    if !top.is_simple(rng)? {
        return Err(Error::Invariant(format!("quotient at idempotent {e} is not simple")));
    }
    if apex_of(s, g, &top).apex.map(|(j, _)| j) != Some(g.j_class_of(e)) {
        return Err(Error::Invariant(format!("quotient at idempotent {e} has the wrong apex")));
    }
    if !restrict_to_group(s, &top, h_e).is_isomorphic(&n.module) {
        return Err(Error::Invariant(format!("restriction at idempotent {e} differs from the group module")));
    }
    Ok((radical, top))
}

/// All simple modules with nonzero action, one per simple module of each
/// maximal subgroup at the idempotent representatives.
pub fn enumerate_irreducibles(s: &FiniteSemigroup, field: PrimeField, seed: u64) -> Result<Vec<Irreducible>> {
    let g = GreenStructure::new(s);
    let subgroups = checked_subgroups(s, &g, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Irreducible> = Vec::new();
    for h_e in &subgroups {
        let e = h_e.idempotent;
        for (i, n) in group_irreducibles(&h_e.table, field, seed)?.iter().enumerate() {
            let induced = induce(s, &g, h_e, n, None)?;
            let (_, top) = simple_top(s, &g, h_e, n, &induced, &mut rng)?;
            if out.iter().any(|o| o.module.is_isomorphic(&top)) {
                return Err(Error::Invariant("two enumerated simple modules are isomorphic".into()));
            }
            out.push(Irreducible {
                j_class: g.j_class_of(e),
                idempotent: e,
                group_order: h_e.order(),
                group_module: i,
                induced_dim: induced.module.dim,
                module: top,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RegularFactors {
    /// Isomorphism classes of composition factors with nonzero action,
    /// with multiplicities.
    pub classes: Vec<(Module, usize)>,
    /// Composition factors on which every element acts as zero.
    pub null_factors: usize,
}

pub fn regular_module_factors(
    s: &FiniteSemigroup,
    field: PrimeField,
    seed: u64,
    bound: usize,
) -> Result<RegularFactors> {
    if s.len() > bound {
        return Err(Error::BoundExceeded { what: "regular module".into(), size: s.len(), bound });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = regular_module(s, field).composition_factors(&mut rng)?;
    let (null, active): (Vec<Module>, Vec<Module>) = factors.into_iter().partition(Module::is_null);
    Ok(RegularFactors { classes: isomorphism_classes(active), null_factors: null.iter().map(|m| m.dim).sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{flip_flop, full_transformation_monoid, symmetric_group};
    use crate::transformation::Transformation;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn dims(irr: &[Irreducible]) -> Vec<usize> {
        irr.iter().map(|i| i.module.dim).collect()
    }

    #[test]
    fn flip_flop_over_gf3() {
        let s = flip_flop();
        let irr = enumerate_irreducibles(&s, gf(3), 0).unwrap();
        assert_eq!(dims(&irr), [1, 1]);
        let reg = regular_module_factors(&s, gf(3), 0, 200).unwrap();
        let mods: Vec<Module> = reg.classes.iter().map(|(m, _)| m.clone()).collect();
        let tops: Vec<Module> = irr.iter().map(|i| i.module.clone()).collect();
        assert!(super::super::module::same_classes(&mods, &tops));
    }

    #[test]
    fn f2_over_gf5() {
        let s = full_transformation_monoid(2).unwrap();
        let irr = enumerate_irreducibles(&s, gf(5), 0).unwrap();
        assert_eq!(irr.len(), 3);
        let mut group_orders: Vec<usize> = irr.iter().map(|i| i.group_order).collect();
        group_orders.sort();
        assert_eq!(group_orders, [1, 2, 2]);
    }

    #[test]
    fn induced_dimensions() {
        let s = full_transformation_monoid(2).unwrap();
        let g = GreenStructure::new(&s);
        let c0 = s.index_of(&Transformation::constant(2, 0)).unwrap();
        let h = maximal_subgroup(&s, &g, c0).unwrap();
        let n = &group_irreducibles(&h.table, gf(3), 0).unwrap()[0];
        let ind = induce(&s, &g, &h, n, None).unwrap();
        assert_eq!(ind.module.dim, 2);
        let radical = maximal_submodule(&s, &ind.module, c0);
        assert_eq!(radical.dim(), 1);

        let f3 = full_transformation_monoid(3).unwrap();
        let g3 = GreenStructure::new(&f3);
        let e = (0..f3.len()).find(|&i| f3.is_idempotent(i) && f3.element(i).rank() == 2).unwrap();
        let h = maximal_subgroup(&f3, &g3, e).unwrap();
        let n = &group_irreducibles(&h.table, gf(5), 0).unwrap()[0];
        assert_eq!(induce(&f3, &g3, &h, n, None).unwrap().module.dim, 3);
    }

    #[test]
    fn group_case_is_unchanged() {
        let s = symmetric_group(3).unwrap();
        let irr = enumerate_irreducibles(&s, gf(7), 3).unwrap();
        assert_eq!(dims(&irr), [1, 1, 2]);
        assert!(irr.iter().all(|i| i.induced_dim == i.module.dim));
    }

    #[test]
    fn trivial_module_apex_is_minimal_ideal() {
        let s = full_transformation_monoid(2).unwrap();
        let g = GreenStructure::new(&s);
        let one = Module::new(gf(3), 1, vec![vec![vec![1]]; s.num_generators()]).unwrap();
        let apex = apex_of(&s, &g, &one);
        assert!(apex.annihilator.is_empty());
        assert_eq!(apex.apex.map(|(j, _)| j), Some(g.minimal_ideal()));
        let zero = Module::new(gf(3), 1, vec![vec![vec![0]]; s.num_generators()]).unwrap();
        assert!(!apex_of(&s, &g, &zero).valid);
    }

    #[test]
    fn characteristic_clash() {
        let s = full_transformation_monoid(2).unwrap();
        assert!(matches!(enumerate_irreducibles(&s, gf(2), 0), Err(Error::CharacteristicClash { p: 2, .. })));
    }
}
