//! Canonical row and column forms of stochastic matrices and the Green's
//! relation tests built on them.

use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::lp::{convex_combination, feasible};
use super::matrix::StochasticMatrix;
use super::rational::{one, zero, Rational};
use crate::error::{Error, Result};

/// Rows of `m` that are not convex combinations of the other rows,
/// deduplicated and sorted.
pub fn reduced_row_form(m: &StochasticMatrix) -> Vec<Vec<Rational>> {
    extreme_points(m.rows())
}

pub fn extreme_points(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut distinct: Vec<Vec<Rational>> = rows.to_vec();
    distinct.sort();
    distinct.dedup();
    let extreme: Vec<Vec<Rational>> = (0..distinct.len())
        .filter(|&i| {
            let others: Vec<Vec<Rational>> =
                distinct.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
            others.is_empty() || convex_combination(&others, &distinct[i]).is_none()
        })
        .map(|i| distinct[i].clone())
        .collect();
    extreme
}

/// Columns of an arbitrary `k x n` matrix with zero columns dropped and
/// proportional columns summed, sorted lexicographically.
pub fn merge_columns(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut merged: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    for j in 0..cols {
        let c: Vec<Rational> = rows.iter().map(|r| r[j].clone()).collect();
        let total: Rational = c.iter().sum();
        if total.is_zero() {
            continue;
        }
        let direction: Vec<Rational> = c.iter().map(|x| x / &total).collect();
        match merged.iter_mut().find(|(d, _)| *d == direction) {
            Some((_, sum)) => sum.iter_mut().zip(&c).for_each(|(s, x)| *s += x),
            None => merged.push((direction, c)),
        }
    }
    let mut out: Vec<Vec<Rational>> = merged.into_iter().map(|(_, c)| c).collect();
    out.sort();
    out
}

/// Merged columns of `m`, each column given top to bottom.
pub fn reduced_column_form(m: &StochasticMatrix) -> Vec<Vec<Rational>> {
    merge_columns(m.rows())
}

/// Column form of the row form, minimized over orderings of the extreme
/// rows so that it does not depend on how those rows are listed.
pub fn reduced_echelon_form(m: &StochasticMatrix) -> Vec<Vec<Rational>> {
    let rows = reduced_row_form(m);
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut best: Option<Vec<Vec<Rational>>> = None;
    loop {
        let permuted: Vec<Vec<Rational>> = order.iter().map(|&i| rows[i].clone()).collect();
        let form = merge_columns(&permuted);
        if best.as_ref().map_or(true, |b| form < *b) {
            best = Some(form);
        }
        if !next_permutation(&mut order) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("a larger element exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All three canonical forms of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCanonicalForm {
    pub extreme_rows: Vec<Vec<Rational>>,
    pub merged_columns: Vec<Vec<Rational>>,
    pub combined: Vec<Vec<Rational>>,
}

impl ConeCanonicalForm {
    pub fn of(m: &StochasticMatrix) -> Self {
        Self {
            extreme_rows: reduced_row_form(m),
            merged_columns: reduced_column_form(m),
            combined: reduced_echelon_form(m),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    L,
    R,
    J,
    H,
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "L" => Ok(Relation::L),
            "R" => Ok(Relation::R),
            "J" | "D" => Ok(Relation::J),
            "H" => Ok(Relation::H),
            _ => Err(Error::Parse(format!("unknown relation '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Stochastic multipliers relating two matrices. On the left side
/// `forward * m = n` and `backward * n = m`; on the right side
/// `m * forward = n` and `n * backward = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub side: Side,
    pub forward: StochasticMatrix,
    pub backward: StochasticMatrix,
}

impl Witness {
    pub fn verify(&self, m: &StochasticMatrix, n: &StochasticMatrix) -> bool {
        match self.side {
            Side::Left => self.forward.mul(m) == *n && self.backward.mul(n) == *m,
            Side::Right => m.mul(&self.forward) == *n && n.mul(&self.backward) == *m,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GreenVerdict {
    pub relation: Relation,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

/// Stochastic `q` with `q * from = to`, if one exists.
pub fn left_multiplier(from: &StochasticMatrix, to: &StochasticMatrix) -> Option<StochasticMatrix> {
    let rows: Option<Vec<Vec<Rational>>> =
        to.rows().iter().map(|r| convex_combination(from.rows(), r)).collect();
    StochasticMatrix::new(rows?).ok()
}

/// Stochastic `q` with `from * q = to`, if one exists.
pub fn right_multiplier(from: &StochasticMatrix, to: &StochasticMatrix) -> Option<StochasticMatrix> {
    let n = from.size();
    let var = |k: usize, j: usize| k * n + j;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![zero(); n * n];
            for k in 0..n {
                row[var(k, j)] = from.entry(i, k).clone();
            }
            a.push(row);
            b.push(to.entry(i, j).clone());
        }
    }
    for k in 0..n {
        let mut row = vec![zero(); n * n];
        for j in 0..n {
            row[var(k, j)] = one();
        }
        a.push(row);
        b.push(one());
    }
    let x = feasible(&a, &b)?;
    StochasticMatrix::new(x.chunks(n).map(<[Rational]>::to_vec).collect()).ok()
}

fn witness(side: Side, m: &StochasticMatrix, n: &StochasticMatrix) -> Result<Witness> {
    let pair = match side {
        Side::Left => (left_multiplier(m, n), left_multiplier(n, m)),
        Side::Right => (right_multiplier(m, n), right_multiplier(n, m)),
    };
    match pair {
        (Some(forward), Some(backward)) => {
            let w = Witness { side, forward, backward };
            if w.verify(m, n) {
                Ok(w)
            } else {
                Err(Error::Invariant("multiplier witness does not reproduce the matrices".into()))
            }
        }
        _ => Err(Error::Invariant(format!("canonical forms agree but no {side:?} multiplier exists"))),
    }
}

pub fn green_test(m: &StochasticMatrix, n: &StochasticMatrix, relation: Relation) -> Result<GreenVerdict> {
    if m.size() != n.size() {
        return Err(Error::Shape(format!("sizes {} and {} differ", m.size(), n.size())));
    }
    let l = || reduced_row_form(m) == reduced_row_form(n);
    let r = || reduced_column_form(m) == reduced_column_form(n);
    let holds = match relation {
        Relation::L => l(),
        Relation::R => r(),
        Relation::J => reduced_echelon_form(m) == reduced_echelon_form(n),
        Relation::H => l() && r(),
    };
    let mut witnesses = Vec::new();
    if holds {
        if matches!(relation, Relation::L | Relation::H) {
            witnesses.push(witness(Side::Left, m, n)?);
        }
        if matches!(relation, Relation::R | Relation::H) {
            witnesses.push(witness(Side::Right, m, n)?);
        }
    }
    Ok(GreenVerdict { relation, holds, witnesses })
}

#[cfg(test)]
mod tests {
    use super::super::rational::{frac, int};
    use super::*;

    fn m(rows: Vec<Vec<Rational>>) -> StochasticMatrix {
        StochasticMatrix::new(rows).unwrap()
    }

    fn support_abc() -> (StochasticMatrix, StochasticMatrix, StochasticMatrix) {
        let z = zero;
        let o = one;
        (
            m(vec![vec![o(), z(), z()], vec![z(), z(), o()], vec![z(), z(), o()]]),
            m(vec![vec![z(), z(), o()], vec![z(), o(), z()], vec![z(), z(), o()]]),
            m(vec![vec![z(), z(), o()], vec![z(), z(), o()], vec![z(), z(), o()]]),
        )
    }

    #[test]
    fn midpoint_row_is_dropped() {
        let h = frac(1, 2);
        let mat = m(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(1)],
            vec![h.clone(), int(0), h.clone()],
        ]);
        assert_eq!(reduced_row_form(&mat), vec![vec![int(0), int(0), int(1)], vec![int(1), int(0), int(0)]]);
    }

    #[test]
    fn proportional_columns_merge() {
        let mat = m(vec![
            vec![frac(1, 2), frac(1, 2), int(0)],
            vec![frac(1, 4), frac(1, 4), frac(1, 2)],
            vec![int(0), int(0), int(1)],
        ]);
        assert_eq!(
            reduced_column_form(&mat),
            vec![vec![int(0), frac(1, 2), int(1)], vec![int(1), frac(1, 2), int(0)]]
        );
        let (_, _, c) = support_abc();
        assert_eq!(reduced_column_form(&c), vec![vec![int(1), int(1), int(1)]]);
        assert_eq!(reduced_row_form(&c).len(), 1);
    }

    #[test]
    fn identity_forms() {
        let id = StochasticMatrix::identity(3);
        assert_eq!(reduced_row_form(&id).len(), 3);
        assert_eq!(reduced_column_form(&id).len(), 3);
    }

    #[test]
    fn a_and_b_are_j_equivalent() {
        let (a, b, c) = support_abc();
        assert!(green_test(&a, &b, Relation::J).unwrap().holds);
        assert!(!green_test(&a, &c, Relation::J).unwrap().holds);
        assert!(!green_test(&a, &b, Relation::L).unwrap().holds);
        for rel in [Relation::L, Relation::R, Relation::J, Relation::H] {
            let v = green_test(&a, &a, rel).unwrap();
            assert!(v.holds);
            assert!(v.witnesses.iter().all(|w| w.verify(&a, &a)));
        }
    }

    #[test]
    fn next_permutation_enumerates_all() {
        let mut v = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
