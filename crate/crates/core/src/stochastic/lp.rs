//! Exact feasibility of `A x = b, x >= 0` by a phase-one simplex with
//! Bland's rule over rationals.

use num_traits::{Signed, Zero};

use super::rational::{one, zero, Rational};

/// Returns a nonnegative solution of `a x = b` if one exists.
/// `a` is `m x n`, given row by row.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![zero(); n]);
    }
    // Tableau columns: n originals, m artificials, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let flip = b[i].is_negative();
            let sign = |x: &Rational| if flip { -x.clone() } else { x.clone() };
            let mut row: Vec<Rational> = a[i].iter().map(sign).collect();
            row.extend((0..m).map(|j| if i == j { one() } else { zero() }));
            row.push(sign(&b[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Objective row: minimize the sum of artificials, stored as reduced costs.
    let mut cost: Vec<Rational> = vec![zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    loop {
        let entering = (0..n + m).find(|&j| cost[j].is_negative());
        let Some(col) = entering else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][col] > zero() {
                let ratio = &t[i][width - 1] / &t[i][col];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else { break };
        pivot(&mut t, &mut cost, row, col);
        basis[row] = col;
    }
    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            x[bj] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    if !cost[col].is_zero() {
        let f = cost[col].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
    }
}

/// Whether `target` is a convex combination of `points`; returns weights.
pub fn convex_combination(points: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let dim = target.len();
    let mut a: Vec<Vec<Rational>> = (0..dim).map(|d| points.iter().map(|p| p[d].clone()).collect()).collect();
    a.push(vec![one(); points.len()]);
    let mut b: Vec<Rational> = target.to_vec();
    b.push(one());
    if points.is_empty() {
        return None;
    }
    feasible(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{frac, int};
    use super::*;

    #[test]
    fn midpoint_is_convex_combination() {
        let pts = vec![vec![int(1), int(0), int(0)], vec![int(0), int(0), int(1)]];
        let w = convex_combination(&pts, &[frac(1, 2), int(0), frac(1, 2)]).unwrap();
        assert_eq!(w, vec![frac(1, 2), frac(1, 2)]);
        assert!(convex_combination(&pts, &[int(0), int(1), int(0)]).is_none());
    }

    #[test]
    fn infeasible_and_negative_rhs() {
        // x1 - x2 = -1 has a nonnegative solution; x1 + x2 = -1 does not.
        let a = vec![vec![int(1), int(-1)]];
        let x = feasible(&a, &[int(-1)]).unwrap();
        assert_eq!(&x[0] - &x[1], int(-1));
        assert!(feasible(&[vec![int(1), int(1)]], &[int(-1)]).is_none());
    }

    #[test]
    fn degenerate_system_terminates() {
        let a = vec![
            vec![int(1), int(1), int(0), int(0)],
            vec![int(1), int(1), int(0), int(0)],
            vec![int(0), int(0), int(1), int(1)],
        ];
        let x = feasible(&a, &[int(1), int(1), int(0)]).unwrap();
        assert_eq!(&x[0] + &x[1], int(1));
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
