//! Stochastic matrices and finitely supported distributions.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::rational::{format_rational, int, one, zero, Rational};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::transformation::Transformation;

/// A square matrix with nonnegative rational entries and unit row sums.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StochasticMatrix {
    rows: Vec<Vec<Rational>>,
}

impl StochasticMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(j) = row.iter().position(Signed::is_negative) {
                return Err(Error::NotStochastic(format!("negative entry at ({i}, {j})")));
            }
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Err(Error::NotStochastic(format!("row {i} sums to {sum}")));
            }
        }
        Ok(Self { rows })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_transformation(&Transformation::identity(n))
    }

    /// The 0/1 matrix with a single 1 per row at the image of that row.
    pub fn from_transformation(t: &Transformation) -> Self {
        let n = t.degree();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if t.apply(i) == j { one() } else { zero() }).collect())
            .collect();
        Self { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &StochasticMatrix) -> StochasticMatrix {
        StochasticMatrix { rows: mat_mul(&self.rows, &other.rows) }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.size()).map(|j| v.iter().zip(&self.rows).map(|(a, r)| a * &r[j]).sum()).collect()
    }

    /// The transformation with the same 0/1 pattern, if the support is row-monomial.
    pub fn support_map(&self) -> Option<Transformation> {
        let images: Option<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| {
                let nz: Vec<usize> = (0..r.len()).filter(|&j| !r[j].is_zero()).collect();
                (nz.len() == 1).then(|| nz[0])
            })
            .collect();
        images.map(|v| Transformation::new(v).expect("support indices are in range"))
    }

    pub fn support_pattern(&self) -> Vec<Vec<bool>> {
        self.rows.iter().map(|r| r.iter().map(|x| !x.is_zero()).collect()).collect()
    }
}

impl fmt::Debug for StochasticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl fmt::Display for StochasticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, r)| x * &r[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Rank by exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r].clone();
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot[c];
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// A probability distribution on `{0, .., base - 1}`, stored by support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution {
    base: usize,
    weights: BTreeMap<usize, Rational>,
}

impl Distribution {
    pub fn new(base: usize, weights: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, w) in weights {
            if i >= base {
                return Err(Error::IndexOutOfRange { index: i, len: base });
            }
            if w.is_negative() {
                return Err(Error::NotDistribution(format!("negative weight {w} at {i}")));
            }
            *map.entry(i).or_insert_with(zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::NotDistribution(format!("weights sum to {total}")));
        }
        Ok(Self { base, weights: map })
    }

    pub fn from_vector(v: &[Rational]) -> Result<Self> {
        Self::new(v.len(), v.iter().cloned().enumerate())
    }

    pub fn point(base: usize, i: usize) -> Self {
        assert!(i < base);
        Self { base, weights: BTreeMap::from([(i, one())]) }
    }

    pub fn uniform(base: usize, support: &[usize]) -> Result<Self> {
        let w = Rational::new(1.into(), (support.len() as i64).into());
        Self::new(base, support.iter().map(|&i| (i, w.clone())))
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn weight(&self, i: usize) -> Rational {
        self.weights.get(&i).cloned().unwrap_or_else(zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.weights.iter().map(|(&i, w)| (i, w))
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        (0..self.base).map(|i| self.weight(i)).collect()
    }

    /// Image under a map of indices into a base of size `base`.
    pub fn pushforward(&self, base: usize, f: impl Fn(usize) -> usize) -> Result<Distribution> {
        Distribution::new(base, self.support().map(|(i, w)| (f(i), w.clone())))
    }
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.support().map(|(i, w)| format!("{i}:{}", format_rational(w))).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The matrix `sum_s mu(s) (s_xy)`.
pub fn matrix_of(s: &FiniteSemigroup, mu: &Distribution) -> Result<StochasticMatrix> {
    if mu.base() != s.len() {
        return Err(Error::Shape(format!("distribution over {} points, semigroup has {}", mu.base(), s.len())));
    }
    let n = s.degree();
    let mut rows = vec![vec![zero(); n]; n];
    for (i, w) in mu.support() {
        let t = s.element(i);
        for (x, row) in rows.iter_mut().enumerate() {
            row[t.apply(x)] += w;
        }
    }
    StochasticMatrix::new(rows)
}

/// `(mu * nu)(s) = sum over s = t u of mu(t) nu(u)`.
pub fn convolve(s: &FiniteSemigroup, mu: &Distribution, nu: &Distribution) -> Result<Distribution> {
    if mu.base() != s.len() || nu.base() != s.len() {
        return Err(Error::Shape("distributions must live on the semigroup".into()));
    }
    let mut out = Vec::new();
    for (t, a) in mu.support() {
        for (u, b) in nu.support() {
            out.push((s.multiply(t, u), a * b));
        }
    }
    Distribution::new(s.len(), out)
}

/// Random distribution on `base` points whose weights share a denominator
/// at most `max_den`.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, base: usize, max_den: i64) -> Distribution {
    let d = rng.gen_range(1..=max_den);
    let mut parts = vec![0i64; base];
    for _ in 0..d {
        parts[rng.gen_range(0..base)] += 1;
    }
    Distribution::new(base, parts.into_iter().enumerate().map(|(i, k)| (i, Rational::new(k.into(), d.into()))))
        .expect("parts sum to the denominator")
}

pub fn random_stochastic<R: Rng + ?Sized>(rng: &mut R, n: usize, max_den: i64) -> StochasticMatrix {
    let rows = (0..n).map(|_| random_distribution(rng, n, max_den).to_vector()).collect();
    StochasticMatrix::new(rows).expect("rows are distributions")
}

/// Stochastic matrix from integer rows scaled by their sums.
pub fn from_weights(rows: &[Vec<i64>]) -> Result<StochasticMatrix> {
    let rows = rows
        .iter()
        .map(|r| {
            let total: i64 = r.iter().sum();
            r.iter().map(|&x| int(x) / int(total.max(1))).collect()
        })
        .collect();
    StochasticMatrix::new(rows)
}
