//! Finite-dimensional right modules given by generator matrices, with
//! submodule search (MeatAxe-style), composition factors and
//! isomorphism tests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::linalg::{
    inverse, left_nullspace, mat_mul, right_nullspace, transpose, unit, vec_mat, Mat, Subspace,
    Vector,
};
use super::poly::{charpoly, degree, eval_matrix, irreducible_factors};
use crate::error::{Error, Result};

/// Largest `p^dim` for which submodules are searched by spinning every
/// vector.
pub const EXHAUSTIVE_LIMIT: u64 = 20_000;

const SPLIT_ATTEMPTS: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub field: PrimeField,
    pub dim: usize,
    pub gens: Vec<Mat>,
}

impl Module {
    pub fn new(field: PrimeField, dim: usize, gens: Vec<Mat>) -> Result<Self> {
        for g in &gens {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(Error::Shape(format!("generator matrix is not {dim} x {dim}")));
            }
        }
        Ok(Self { field, dim, gens })
    }

    /// Smallest submodule containing `seeds`.
    pub fn spin(&self, seeds: &[Vector]) -> Subspace {
        let f = &self.field;
        let mut w = Subspace::zero(self.dim);
        let mut queue: Vec<Vector> = Vec::new();
        for v in seeds {
            if w.insert(f, v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for g in &self.gens {
                let image = vec_mat(f, &v, g);
                if w.insert(f, &image) {
                    queue.push(image);
                }
            }
            if w.dim() == self.dim {
                break;
            }
        }
        w
    }

    pub fn is_invariant(&self, w: &Subspace) -> bool {
        w.basis.iter().all(|v| self.gens.iter().all(|g| w.contains(&self.field, &vec_mat(&self.field, v, g))))
    }

    /// Action on an invariant subspace in its echelon basis.
    pub fn submodule(&self, w: &Subspace) -> Module {
        let f = &self.field;
        let gens = self
            .gens
            .iter()
            .map(|g| w.basis.iter().map(|v| w.coordinates(&vec_mat(f, v, g))).collect())
            .collect();
        Module { field: *f, dim: w.dim(), gens }
    }

    /// Action on `V / W`, coordinates indexed by the non-pivot columns of `W`.
    pub fn quotient(&self, w: &Subspace) -> Module {
        let f = &self.field;
        let free = w.free_columns();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                free.iter()
                    .map(|&c| {
                        let image = w.reduce(f, &vec_mat(f, &unit(self.dim, c), g));
                        free.iter().map(|&d| image[d]).collect()
                    })
                    .collect()
            })
            .collect();
        Module { field: *f, dim: free.len(), gens }
    }

    /// The dual module, acting by transposed matrices.
    pub fn dual(&self) -> Module {
        Module { field: self.field, dim: self.dim, gens: self.gens.iter().map(transpose).collect() }
    }

    /// Whether every generator acts as zero.
    pub fn is_null(&self) -> bool {
        self.gens.iter().all(|g| g.iter().all(|r| r.iter().all(|&x| x == 0)))
    }

    fn random_element<R: Rng + ?Sized>(&self, pool: &mut Vec<Mat>, rng: &mut R) -> Mat {
        let f = &self.field;
        let p = f.characteristic();
        for _ in 0..2 {
            let a = rng.gen_range(0..pool.len());
            let b = rng.gen_range(0..pool.len());
            let prod = mat_mul(f, &pool[a], &pool[b]);
            pool.push(prod);
        }
        let mut acc = vec![vec![0; self.dim]; self.dim];
        for _ in 0..4 {
            let m = &pool[rng.gen_range(0..pool.len())];
            let c = rng.gen_range(1..p.max(2));
            for (r, s) in acc.iter_mut().zip(m) {
                for (x, &y) in r.iter_mut().zip(s) {
                    *x = f.add(*x, f.mul(c % p, y));
                }
            }
        }
        acc
    }

    /// A proper nonzero submodule, or `None` when the module is simple.
    pub fn find_submodule<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Option<Subspace>> {
        if self.dim <= 1 {
            return Ok(None);
        }
        if self.gens.is_empty() || self.is_null() {
            return Ok(Some(Subspace::span(&self.field, self.dim, &[unit(self.dim, 0)])));
        }
        let p = self.field.characteristic();
        if (p as f64).powi(self.dim as i32) <= EXHAUSTIVE_LIMIT as f64 {
            return Ok(self.exhaustive_submodule());
        }
        let f = &self.field;
        let mut pool = self.gens.clone();
        let dual = self.dual();
        for _ in 0..SPLIT_ATTEMPTS {
            let a = self.random_element(&mut pool, rng);
            for factor in irreducible_factors(f, &charpoly(f, &a), rng) {
                let fa = eval_matrix(f, &factor, &a);
                let null = left_nullspace(f, &fa, self.dim);
                let mut candidates = null.clone();
                for _ in 0..4 {
                    let mut v = vec![0; self.dim];
                    for n in &null {
                        let c = rng.gen_range(0..p);
                        for (x, &y) in v.iter_mut().zip(n) {
                            *x = f.add(*x, f.mul(c, y));
                        }
                    }
                    candidates.push(v);
                }
                for v in candidates.iter().filter(|v| v.iter().any(|&x| x != 0)) {
                    let w = self.spin(std::slice::from_ref(v));
                    if w.dim() < self.dim {
                        return Ok(Some(w));
                    }
                }
                if null.len() == degree(&factor).unwrap_or(0) {
                    let dual_null = left_nullspace(f, &transpose(&fa), self.dim);
                    let wd = dual.spin(&dual_null[..1]);
                    if wd.dim() < self.dim {
                        return Ok(Some(self.annihilator(&wd)));
                    }
                    return Ok(None);
                }
            }
        }
        Err(Error::Invariant(format!("irreducibility test inconclusive in dimension {}", self.dim)))
    }

    /// `{v : v w^T = 0 for all w in W}`, a submodule when `W` is invariant
    /// in the dual.
    fn annihilator(&self, w: &Subspace) -> Subspace {
        let cols_of_w = transpose(&w.basis);
        Subspace::span(&self.field, self.dim, &left_nullspace(&self.field, &cols_of_w, self.dim))
    }

    fn exhaustive_submodule(&self) -> Option<Subspace> {
        let p = self.field.characteristic();
        let total = p.pow(self.dim as u32);
        for code in 1..total {
            let mut v = vec![0u64; self.dim];
            let mut c = code;
            for x in v.iter_mut() {
                *x = c % p;
                c /= p;
            }
            if v.iter().find(|&&x| x != 0) != Some(&1) {
                continue;
            }
            let w = self.spin(&[v]);
            if w.dim() < self.dim {
                return Some(w);
            }
        }
        None
    }

    pub fn is_simple<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<bool> {
        Ok(self.dim > 0 && self.find_submodule(rng)?.is_none())
    }

    /// Composition factors, bottom of the series first.
    pub fn composition_factors<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Module>> {
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        match self.find_submodule(rng)? {
            None => Ok(vec![self.clone()]),
            Some(w) => {
                let mut out = self.submodule(&w).composition_factors(rng)?;
                out.extend(self.quotient(&w).composition_factors(rng)?);
                Ok(out)
            }
        }
    }

    /// Basis of the homomorphisms `X` with `g_self X = X g_other`.
    pub fn hom_basis(&self, other: &Module) -> Vec<Mat> {
        let (m, n) = (self.dim, other.dim);
        let f = &self.field;
        let mut rows = Vec::new();
        for (ga, gb) in self.gens.iter().zip(&other.gens) {
            for a in 0..m {
                for b in 0..n {
                    let mut row = vec![0u64; m * n];
                    for c in 0..m {
                        row[c * n + b] = f.add(row[c * n + b], ga[a][c]);
                    }
                    for c in 0..n {
                        row[a * n + c] = f.sub(row[a * n + c], gb[c][b]);
                    }
                    rows.push(row);
                }
            }
        }
        right_nullspace(f, &rows, m * n).into_iter().map(|x| x.chunks(n.max(1)).map(<[u64]>::to_vec).collect()).collect()
    }

    /// Dimension of the endomorphism algebra.
    pub fn endomorphism_dim(&self) -> usize {
        self.hom_basis(self).len()
    }

    /// Decides isomorphism by searching the homomorphism space for an
    /// invertible element: basis elements first, then pseudo-random
    /// combinations. Exact for simple modules.
    pub fn is_isomorphic(&self, other: &Module) -> bool {
        if self.dim != other.dim || self.gens.len() != other.gens.len() || self.field != other.field {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        let basis = self.hom_basis(other);
        if basis.iter().any(|x| inverse(&self.field, x).is_some()) {
            return true;
        }
        let f = &self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..32 {
            let mut x = vec![vec![0; self.dim]; self.dim];
            for b in &basis {
                let c = rng.gen_range(0..f.characteristic());
                for (r, s) in x.iter_mut().zip(b) {
                    for (u, &v) in r.iter_mut().zip(s) {
                        *u = f.add(*u, f.mul(c, v));
                    }
                }
            }
            if inverse(f, &x).is_some() {
                return true;
            }
        }
        false
    }

    /// Applies a change of basis: the module with matrices `P g P^-1`.
    pub fn conjugate(&self, p: &Mat) -> Option<Module> {
        let pinv = inverse(&self.field, p)?;
        let gens = self.gens.iter().map(|g| mat_mul(&self.field, &mat_mul(&self.field, p, g), &pinv)).collect();
        Some(Module { field: self.field, dim: self.dim, gens })
    }

}

/// Groups modules into isomorphism classes, keeping first occurrences and
/// counting multiplicities.
pub fn isomorphism_classes(modules: Vec<Module>) -> Vec<(Module, usize)> {
    let mut classes: Vec<(Module, usize)> = Vec::new();
    for m in modules {
        match classes.iter_mut().find(|(c, _)| c.is_isomorphic(&m)) {
            Some((_, k)) => *k += 1,
            None => classes.push((m, 1)),
        }
    }
    classes
}

/// Whether the two lists agree up to isomorphism and order, counting each
/// class once.
pub fn same_classes(a: &[Module], b: &[Module]) -> bool {
    a.iter().all(|m| b.iter().any(|n| n.is_isomorphic(m))) && b.iter().all(|m| a.iter().any(|n| n.is_isomorphic(m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn swap_module_splits_in_odd_characteristic() {
        let m = Module::new(gf(3), 2, vec![vec![vec![0, 1], vec![1, 0]]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let factors = m.composition_factors(&mut rng).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(!factors[0].is_isomorphic(&factors[1]));
    }

    #[test]
    fn rotation_is_simple_over_gf5() {
        // Order-3 rotation: x^2 + x + 1 is irreducible over GF(5).
        let r = vec![vec![0, 1], vec![0, 0]];
        let f5 = gf(5);
        let rot = vec![vec![0, 1], vec![f5.neg(1), f5.neg(1)]];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(Module::new(f5, 2, vec![rot]).unwrap().is_simple(&mut rng).unwrap());
        assert!(!Module::new(gf(7), 2, vec![r]).unwrap().is_simple(&mut rng).unwrap());
    }

    #[test]
    fn large_field_uses_random_elements() {
        let f = gf(1_000_003);
        // Permutation module of a 3-cycle: trivial plus two characters.
        let c = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        let m = Module::new(f, 3, vec![c]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let factors = m.composition_factors(&mut rng).unwrap();
        assert_eq!(factors.iter().map(|m| m.dim).collect::<Vec<_>>(), vec![1, 1, 1]);
        // Over GF(1000003) = 1 mod 3 the three characters are distinct.
        assert_eq!(isomorphism_classes(factors).len(), 3);
    }

    #[test]
    fn isomorphism_after_change_of_basis() {
        let f = gf(11);
        let m = Module::new(f, 2, vec![vec![vec![0, 1], vec![1, 0]], vec![vec![2, 3], vec![3, 2]]]).unwrap();
        let p = vec![vec![1, 2], vec![3, 4]];
        let n = m.conjugate(&p).unwrap();
        assert!(m.is_isomorphic(&n));
        assert_eq!(m.hom_basis(&n).len(), m.endomorphism_dim());
    }
}
