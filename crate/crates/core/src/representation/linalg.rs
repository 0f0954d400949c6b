//! Dense matrices over a prime field. Vectors are rows and act on the
//! right: `v * M`.

use super::field::PrimeField;

pub type Vector = Vec<u64>;
pub type Mat = Vec<Vec<u64>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
}

pub fn unit(n: usize, i: usize) -> Vector {
    (0..n).map(|j| u64::from(i == j)).collect()
}

pub fn cols(m: &Mat, default: usize) -> usize {
    m.first().map_or(default, Vec::len)
}

pub fn mat_mul(f: &PrimeField, a: &Mat, b: &Mat) -> Mat {
    let n = cols(b, 0);
    a.iter()
        .map(|row| {
            let mut out = vec![0u64; n];
            for (k, &x) in row.iter().enumerate() {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(&b[k]) {
                        *o = (*o + x * y) % f.characteristic();
                    }
                }
            }
            out
        })
        .collect()
}

pub fn vec_mat(f: &PrimeField, v: &[u64], m: &Mat) -> Vector {
    let n = cols(m, 0);
    let mut out = vec![0u64; n];
    for (k, &x) in v.iter().enumerate() {
        if x != 0 {
            for (o, &y) in out.iter_mut().zip(&m[k]) {
                *o = (*o + x * y) % f.characteristic();
            }
        }
    }
    out
}

pub fn add(f: &PrimeField, a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(&x, &y)| f.add(x, y)).collect()).collect()
}

pub fn scale(f: &PrimeField, c: u64, a: &Mat) -> Mat {
    a.iter().map(|r| r.iter().map(|&x| f.mul(c, x)).collect()).collect()
}

pub fn transpose(m: &Mat) -> Mat {
    let n = cols(m, 0);
    (0..n).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn is_zero(m: &Mat) -> bool {
    m.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(f: &PrimeField, m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let n = cols(&a, 0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(f: &PrimeField, m: &Mat) -> usize {
    rref(f, m).1.len()
}

/// Basis of `{x : A x = 0}` for `A` with `n` columns.
pub fn right_nullspace(f: &PrimeField, a: &Mat, n: usize) -> Vec<Vector> {
    let (r, pivots) = rref(f, a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u64; n];
            x[fc] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                x[pc] = f.neg(row[fc]);
            }
            x
        })
        .collect()
}

/// Basis of `{v : v M = 0}` for `M` with `rows` rows.
pub fn left_nullspace(f: &PrimeField, m: &Mat, rows: usize) -> Vec<Vector> {
    right_nullspace(f, &transpose(m), rows)
}

pub fn inverse(f: &PrimeField, m: &Mat) -> Option<Mat> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let aug: Mat = m.iter().zip(identity(n)).map(|(r, i)| r.iter().copied().chain(i).collect()).collect();
    let (r, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// A subspace held as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Mat,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(f: &PrimeField, ambient: usize, vectors: &[Vector]) -> Self {
        let (basis, pivots) = rref(f, &vectors.to_vec());
        Self { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `v` minus its component along the basis; zero on pivot columns.
    pub fn reduce(&self, f: &PrimeField, v: &[u64]) -> Vector {
        let mut out = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let factor = out[c];
            if factor != 0 {
                for (x, &y) in out.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        out
    }

    pub fn contains(&self, f: &PrimeField, v: &[u64]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member of the subspace in the echelon basis.
    pub fn coordinates(&self, v: &[u64]) -> Vector {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, f: &PrimeField, v: &[u64]) -> bool {
        let r = self.reduce(f, v);
        if r.iter().all(|&x| x == 0) {
            return false;
        }
        let mut vectors = self.basis.clone();
        vectors.push(r);
        *self = Self::span(f, self.ambient, &vectors);
        true
    }

    /// Columns outside the pivots, which index quotient coordinates.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn is_subspace_of(&self, f: &PrimeField, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(f, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_inverse() {
        let f = PrimeField::new(5).unwrap();
        let m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank(&f, &m), 1);
        let n = left_nullspace(&f, &m, 2);
        assert_eq!(n.len(), 1);
        assert!(vec_mat(&f, &n[0], &m).iter().all(|&x| x == 0));
        assert!(inverse(&f, &m).is_none());
        let a = vec![vec![1, 2], vec![3, 4]];
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &ai), identity(2));
    }

    #[test]
    fn subspace_reduction() {
        let f = PrimeField::new(3).unwrap();
        let mut w = Subspace::zero(3);
        assert!(w.insert(&f, &[1, 1, 0]));
        assert!(!w.insert(&f, &[2, 2, 0]));
        assert!(w.contains(&f, &[2, 2, 0]));
        assert_eq!(w.free_columns(), vec![1, 2]);
        assert_eq!(w.coordinates(&[2, 2, 0]), vec![2]);
    }
}
