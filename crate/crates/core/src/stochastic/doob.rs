//! Block structure of idempotent stochastic matrices.

use num_traits::Zero;
use serde::Serialize;

use super::forms::{green_test, Relation};
use super::matrix::StochasticMatrix;
use super::rational::{zero, Rational};
use crate::error::{Error, Result};

/// Result of the block analysis. When `is_idempotent` holds, `permutation`
/// lists the states in their new order: essential states grouped by block,
/// then transient states. `blocks` holds the essential states of each
/// rank-one block, and `lower` is the transient-by-essential part.
#[derive(Clone, Debug, Serialize)]
pub struct DoobAnalysis {
    pub is_idempotent: bool,
    pub rank: usize,
    pub permutation: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub transient: Vec<usize>,
    #[serde(skip)]
    pub lower: Vec<Vec<Rational>>,
    /// Common row of each block, restricted to the block's states.
    #[serde(skip)]
    pub block_rows: Vec<Vec<Rational>>,
    /// Absorption probability of each transient state into each block.
    #[serde(skip)]
    pub absorption: Vec<Vec<Rational>>,
}

pub fn doob_analyze(e: &StochasticMatrix) -> Result<DoobAnalysis> {
    if !e.is_idempotent() {
        return Ok(DoobAnalysis {
            is_idempotent: false,
            rank: e.rank(),
            permutation: Vec::new(),
            blocks: Vec::new(),
            transient: Vec::new(),
            lower: Vec::new(),
            block_rows: Vec::new(),
            absorption: Vec::new(),
        });
    }
    let n = e.size();
    let essential: Vec<usize> = (0..n).filter(|&j| (0..n).any(|i| !e.entry(i, j).is_zero())).collect();
    let transient: Vec<usize> = (0..n).filter(|j| !essential.contains(j)).collect();

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &i in &essential {
        match blocks.iter_mut().find(|b| e.row(b[0]) == e.row(i)) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    for b in &blocks {
        let support: Vec<usize> = (0..n).filter(|&j| !e.entry(b[0], j).is_zero()).collect();
        if support != *b {
            return Err(Error::Invariant(format!("block {b:?} is not a rank-one stochastic block")));
        }
    }

    let permutation: Vec<usize> = blocks.iter().flatten().copied().chain(transient.iter().copied()).collect();
    let lower: Vec<Vec<Rational>> =
        transient.iter().map(|&i| essential_order(&blocks).map(|j| e.entry(i, j).clone()).collect()).collect();
    let absorption = transient
        .iter()
        .map(|&i| blocks.iter().map(|b| b.iter().map(|&j| e.entry(i, j).clone()).sum()).collect())
        .collect();
    let block_rows = blocks.iter().map(|b| b.iter().map(|&j| e.entry(b[0], j).clone()).collect()).collect();
    let analysis = DoobAnalysis {
        is_idempotent: true,
        rank: blocks.len(),
        permutation,
        blocks,
        transient,
        lower,
        block_rows,
        absorption,
    };
    if analysis.reconstruct() != *e.rows() {
        return Err(Error::Invariant("block reconstruction differs from the input".into()));
    }
    if analysis.rank != e.rank() {
        return Err(Error::Invariant("number of blocks differs from the rank".into()));
    }
    Ok(analysis)
}

fn essential_order(blocks: &[Vec<usize>]) -> impl Iterator<Item = usize> + '_ {
    blocks.iter().flatten().copied()
}

impl DoobAnalysis {
    /// Number of essential states.
    fn essential_count(&self) -> usize {
        self.permutation.len() - self.transient.len()
    }

    /// The block-diagonal part `e` in permuted coordinates.
    pub fn diagonal(&self) -> Vec<Vec<Rational>> {
        let c = self.essential_count();
        let mut e = vec![vec![zero(); c]; c];
        let mut offset = 0;
        for (b, weights) in self.blocks.iter().zip(&self.block_rows) {
            for i in 0..b.len() {
                e[offset + i][offset..offset + b.len()].clone_from_slice(weights);
            }
            offset += b.len();
        }
        e
    }

    /// Rebuilds the matrix from `[[e, 0], [s e, 0]]` and undoes the
    /// permutation.
    pub fn reconstruct(&self) -> Vec<Vec<Rational>> {
        let n = self.permutation.len();
        let c = self.essential_count();
        let e = self.diagonal();
        let mut permuted = vec![vec![zero(); n]; n];
        for i in 0..c {
            permuted[i][..c].clone_from_slice(&e[i]);
        }
        for (t, s) in self.lower.iter().enumerate() {
            for j in 0..c {
                permuted[c + t][j] = (0..c).map(|k| &s[k] * &e[k][j]).sum();
            }
        }
        let mut out = vec![vec![zero(); n]; n];
        for (a, &i) in self.permutation.iter().enumerate() {
            for (b, &j) in self.permutation.iter().enumerate() {
                out[i][j] = permuted[a][b].clone();
            }
        }
        out
    }
}

/// Rank equality of two idempotents, cross-checked against the J test.
pub fn idempotent_j_invariant(e: &StochasticMatrix, f: &StochasticMatrix) -> Result<bool> {
    for (name, m) in [("first", e), ("second", f)] {
        if !m.is_idempotent() {
            return Err(Error::NotStochastic(format!("{name} matrix is not idempotent")));
        }
    }
    let same_rank = e.rank() == f.rank();
    if green_test(e, f, Relation::J)?.holds != same_rank {
        return Err(Error::Invariant("rank equality and J-equivalence disagree".into()));
    }
    Ok(same_rank)
}

/// Idempotent with the given rank-one blocks; `transient[t]` lists the
/// absorption weight of transient state `t` into each block. States are
/// numbered block by block, then transient states.
pub fn block_idempotent(block_rows: &[Vec<Rational>], transient: &[Vec<Rational>]) -> Result<StochasticMatrix> {
    let c: usize = block_rows.iter().map(Vec::len).sum();
    let n = c + transient.len();
    let mut rows = vec![vec![zero(); n]; n];
    let mut offset = 0;
    for w in block_rows {
        for i in 0..w.len() {
            rows[offset + i][offset..offset + w.len()].clone_from_slice(w);
        }
        offset += w.len();
    }
    for (t, a) in transient.iter().enumerate() {
        let mut offset = 0;
        for (b, w) in block_rows.iter().enumerate() {
            for (k, x) in w.iter().enumerate() {
                rows[c + t][offset + k] = &a[b] * x;
            }
            offset += w.len();
        }
    }
    StochasticMatrix::new(rows)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{frac, int, one};
    use super::*;

    #[test]
    fn all_rows_equal_is_one_block() {
        let row = vec![frac(1, 3), frac(2, 3)];
        let m = StochasticMatrix::new(vec![row.clone(), row]).unwrap();
        let d = doob_analyze(&m).unwrap();
        assert!(d.is_idempotent);
        assert_eq!(d.rank, 1);
        assert_eq!(d.blocks, vec![vec![0, 1]]);
    }

    #[test]
    fn two_blocks() {
        let h = frac(1, 2);
        let m = StochasticMatrix::new(vec![
            vec![one(), zero(), zero()],
            vec![zero(), h.clone(), h.clone()],
            vec![zero(), h.clone(), h],
        ])
        .unwrap();
        let d = doob_analyze(&m).unwrap();
        assert_eq!(d.rank, 2);
        assert_eq!(d.reconstruct(), m.rows());
    }

    #[test]
    fn transient_states_and_permutation() {
        // Blocks {0} and {1, 2}; state 3 is transient.
        let m = block_idempotent(
            &[vec![one()], vec![frac(1, 4), frac(3, 4)]],
            &[vec![frac(1, 3), frac(2, 3)]],
        )
        .unwrap();
        let d = doob_analyze(&m).unwrap();
        assert_eq!(d.rank, 2);
        assert_eq!(d.transient, vec![3]);
        assert_eq!(d.absorption, vec![vec![frac(1, 3), frac(2, 3)]]);
        assert_eq!(d.reconstruct(), m.rows());
    }

    #[test]
    fn swap_is_not_idempotent() {
        let m = StochasticMatrix::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert!(!doob_analyze(&m).unwrap().is_idempotent);
        assert!(idempotent_j_invariant(&m, &m).is_err());
    }

    #[test]
    fn rank_decides_j_for_idempotents() {
        let rank1 = block_idempotent(&[vec![frac(1, 3), frac(1, 3), frac(1, 3)]], &[]).unwrap();
        let rank2 = block_idempotent(&[vec![one()], vec![frac(1, 2), frac(1, 2)]], &[]).unwrap();
        assert!(!idempotent_j_invariant(&rank1, &rank2).unwrap());
        assert!(idempotent_j_invariant(&rank2, &rank2).unwrap());
    }
}
