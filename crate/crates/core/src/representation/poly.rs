//! Univariate polynomials over `GF(p)`, characteristic polynomials and
//! factorization into irreducibles.

use rand::Rng;

use super::field::PrimeField;
use super::linalg::{add, identity, mat_mul, scale, zeros, Mat};

/// Coefficients from the constant term up, without trailing zeros.
pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn poly_add(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn poly_sub(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn poly_mul(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &PrimeField, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv = f.inv(b[db]);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = f.mul(r[i + db], inv);
        q[i] = c;
        if c != 0 {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = f.sub(r[i + j], f.mul(c, y));
            }
        }
    }
    (trim(q), trim(r))
}

pub fn rem(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &PrimeField, a: &Poly) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => {
            let inv = f.inv(lead);
            a.iter().map(|&x| f.mul(x, inv)).collect()
        }
    }
}

pub fn gcd(f: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative(f: &PrimeField, a: &Poly) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &x)| f.mul(i as u64 % f.characteristic(), x)).collect())
}

/// `a^e mod m`.
pub fn powmod(f: &PrimeField, a: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut base = rem(f, a, m);
    let mut out = rem(f, &vec![1], m);
    while e > 0 {
        if e & 1 == 1 {
            out = rem(f, &poly_mul(f, &out, &base), m);
        }
        base = rem(f, &poly_mul(f, &base, &base), m);
        e >>= 1;
    }
    out
}

/// `p(A)` by Horner's rule.
pub fn eval_matrix(f: &PrimeField, p: &Poly, a: &Mat) -> Mat {
    let n = a.len();
    let mut out = zeros(n, n);
    for &c in p.iter().rev() {
        out = add(f, &mat_mul(f, &out, a), &scale(f, c, &identity(n)));
    }
    out
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg
/// form.
pub fn charpoly(f: &PrimeField, a: &Mat) -> Poly {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            let u = f.mul(h[i][m - 1], inv);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let x = f.mul(u, h[m][j]);
                h[i][j] = f.sub(h[i][j], x);
            }
            for row in h.iter_mut() {
                let x = f.mul(u, row[i]);
                row[m] = f.add(row[m], x);
            }
        }
    }
    let mut polys: Vec<Poly> = vec![vec![1]];
    for m in 0..n {
        let mut next = poly_mul(f, &vec![f.neg(h[m][m]), 1], &polys[m]);
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            let c = f.mul(prod, h[i][m]);
            next = poly_sub(f, &next, &poly_mul(f, &vec![c], &polys[i]));
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// `a(x)` with every coefficient index divided by `p`, assuming only
/// multiples of `p` occur; inverts the Frobenius on `GF(p)[x]`.
fn pth_root(f: &PrimeField, a: &Poly) -> Poly {
    let p = f.characteristic() as usize;
    trim(a.iter().step_by(p).copied().collect())
}

/// Distinct monic irreducible factors, sorted by degree then coefficients.
pub fn irreducible_factors<R: Rng + ?Sized>(f: &PrimeField, a: &Poly, rng: &mut R) -> Vec<Poly> {
    let mut out = Vec::new();
    collect_factors(f, &monic(f, a), rng, &mut out);
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out.dedup();
    out
}

fn collect_factors<R: Rng + ?Sized>(f: &PrimeField, a: &Poly, rng: &mut R, out: &mut Vec<Poly>) {
    if a.len() <= 1 {
        return;
    }
    let d = derivative(f, a);
    if d.is_empty() {
        collect_factors(f, &monic(f, &pth_root(f, a)), rng, out);
        return;
    }
    let g = gcd(f, a, &d);
    let squarefree = divrem(f, a, &g).0;
    distinct_degree(f, &monic(f, &squarefree), rng, out);
    collect_factors(f, &g, rng, out);
}

fn distinct_degree<R: Rng + ?Sized>(f: &PrimeField, a: &Poly, rng: &mut R, out: &mut Vec<Poly>) {
    let p = f.characteristic();
    let mut rest = a.clone();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            out.push(rest);
            return;
        }
        h = powmod(f, &h, p, &rest);
        let g = gcd(f, &rest, &poly_sub(f, &h, &x));
        if g.len() > 1 {
            equal_degree(f, &g, d, rng, out);
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
        }
        d += 1;
    }
}

fn equal_degree<R: Rng + ?Sized>(f: &PrimeField, a: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
    if a.len() - 1 == d {
        out.push(monic(f, a));
        return;
    }
    let p = f.characteristic();
    loop {
        let r: Poly = trim((0..a.len() - 1).map(|_| rng.gen_range(0..p)).collect());
        if r.len() <= 1 {
            continue;
        }
        let b = if p == 2 {
            // Trace to GF(2): r + r^2 + ... + r^(2^(d-1)).
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = powmod(f, &t, 2, a);
                acc = poly_add(f, &acc, &t);
            }
            acc
        } else {
            // r^((p^d - 1) / 2) as (r r^p ... r^(p^(d-1)))^((p - 1) / 2).
            let mut t = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                t = powmod(f, &t, p, a);
                norm = rem(f, &poly_mul(f, &norm, &t), a);
            }
            poly_sub(f, &powmod(f, &norm, (p - 1) / 2, a), &vec![1])
        };
        let g = gcd(f, a, &b);
        if g.len() > 1 && g.len() < a.len() {
            let other = divrem(f, a, &g).0;
            equal_degree(f, &g, d, rng, out);
            equal_degree(f, &other, d, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(f: &PrimeField, ps: &[Poly]) -> Poly {
        ps.iter().fold(vec![1], |acc, p| poly_mul(f, &acc, p))
    }

    #[test]
    fn companion_matrix_charpoly() {
        let f = PrimeField::new(7).unwrap();
        // x^3 + 2x^2 + 5x + 3
        let c: Poly = vec![3, 5, 2, 1];
        let comp = vec![vec![0, 1, 0], vec![0, 0, 1], vec![f.neg(3), f.neg(5), f.neg(2)]];
        assert_eq!(charpoly(&f, &comp), c);
        assert!(super::super::linalg::is_zero(&eval_matrix(&f, &c, &comp)));
    }

    #[test]
    fn factorization_recovers_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            let x_minus_1: Poly = trim(vec![f.neg(1), 1]);
            let x: Poly = vec![0, 1];
            // x^2 + x + 1 is irreducible over GF(2) and GF(5); it splits elsewhere.
            let q: Poly = vec![1, 1, 1];
            let a = product(&f, &[x.clone(), x.clone(), x_minus_1.clone(), q.clone(), q.clone()]);
            let factors = irreducible_factors(&f, &a, &mut rng);
            for g in &factors {
                assert!(rem(&f, &a, g).is_empty());
            }
            let degree_sum: usize = factors.iter().map(|g| g.len() - 1).sum();
            let radical = product(&f, &factors);
            assert_eq!(degree_sum, radical.len() - 1);
            assert!(rem(&f, &product(&f, &[a.clone(), a.clone()]), &radical).is_empty());
            assert!(factors.contains(&x));
        }
    }

    #[test]
    fn frobenius_power() {
        let f = PrimeField::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x^2 + x + 1)^2 = x^4 + x^2 + 1 over GF(2).
        let a: Poly = vec![1, 0, 1, 0, 1];
        assert_eq!(irreducible_factors(&f, &a, &mut rng), vec![vec![1, 1, 1]]);
    }
}
