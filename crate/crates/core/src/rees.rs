//! Maximal subgroups and Rees matrix coordinates of regular J-classes.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::group::GroupTable;
use crate::semigroup::FiniteSemigroup;

/// The H-class of an idempotent as an abstract group.
/// `members[i]` is the element realizing group index `i`.
#[derive(Clone, Debug)]
pub struct MaximalSubgroup {
    pub idempotent: usize,
    pub members: Vec<usize>,
    pub table: GroupTable,
}

impl MaximalSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == x)
    }
}

pub fn maximal_subgroup(s: &FiniteSemigroup, g: &GreenStructure, e: usize) -> Result<MaximalSubgroup> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let members = g.h_class(e).to_vec();
    let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut table = vec![vec![0; members.len()]; members.len()];
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate() {
            table[i][j] = *pos
                .get(&s.multiply(a, b))
                .ok_or_else(|| Error::Invariant("H-class of an idempotent is not closed".into()))?;
        }
    }
    let table = GroupTable::new(table)?;
    if members[table.identity()] != e {
        return Err(Error::Invariant("idempotent is not the identity of its H-class".into()));
    }
    let je = g.j_class_of(e);
    let mut corner: Vec<usize> = (0..s.len())
        .map(|x| s.multiply(s.multiply(e, x), e))
        .filter(|&x| g.j_class_of(x) == je)
        .collect();
    corner.sort_unstable();
    corner.dedup();
    if corner != members {
        return Err(Error::Invariant("eSe meets J_e outside H_e".into()));
    }
    Ok(MaximalSubgroup { idempotent: e, members, table })
}

/// A nonzero Rees element `(gamma, g, lambda)`: row index, group index,
/// column index.
pub type ReesTriple = (usize, usize, usize);

/// Coordinates of a regular principal factor as a Rees matrix semigroup.
///
/// `lambda_reps` lie in R_e (one per L-class of J_e), `gamma_reps` lie in
/// L_e (one per R-class of J_e). The element `(i, g, j)` is
/// `gamma_reps[i] * g * lambda_reps[j]`, and the sandwich entry at
/// `(j, i)` is `lambda_reps[j] * gamma_reps[i]` when it lies in H_e.
#[derive(Clone, Debug)]
pub struct ReesCoordinatization {
    pub group: MaximalSubgroup,
    pub lambda_reps: Vec<usize>,
    pub gamma_reps: Vec<usize>,
    pub sandwich: Vec<Vec<Option<usize>>>,
    pub j_class: Vec<usize>,
    encode: HashMap<usize, ReesTriple>,
    decode: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesParameters {
    pub gamma: usize,
    pub group_order: usize,
    pub lambda: usize,
}

impl ReesCoordinatization {
    pub fn encode(&self, x: usize) -> Option<ReesTriple> {
        self.encode.get(&x).copied()
    }

    pub fn decode(&self, (i, g, j): ReesTriple) -> usize {
        self.decode[i][g][j]
    }

    /// Product in the Rees matrix semigroup; `None` is zero.
    pub fn product(&self, a: Option<ReesTriple>, b: Option<ReesTriple>) -> Option<ReesTriple> {
        let (i, g, j) = a?;
        let (k, h, l) = b?;
        let u = self.sandwich[j][k]?;
        let t = &self.group.table;
        Some((i, t.mul(t.mul(g, u), h), l))
    }

    /// Every row and every column of the sandwich matrix has a nonzero entry.
    pub fn is_regular_sandwich(&self) -> bool {
        self.sandwich.iter().all(|row| row.iter().any(Option::is_some))
            && (0..self.gamma_reps.len()).all(|i| self.sandwich.iter().any(|row| row[i].is_some()))
    }

    pub fn parameters(&self) -> ReesParameters {
        ReesParameters {
            gamma: self.gamma_reps.len(),
            group_order: self.group.order(),
            lambda: self.lambda_reps.len(),
        }
    }
}

pub fn rees_coordinatize(s: &FiniteSemigroup, g: &GreenStructure, e: usize) -> Result<ReesCoordinatization> {
    if !s.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let je = g.j_class_of(e);
    if !g.is_regular_class(je) {
        return Err(Error::NonRegular(e));
    }
    let group = maximal_subgroup(s, g, e)?;
    let j_class = g.j_classes()[je].clone();

    let mut lambda_reps: Vec<usize> = Vec::new();
    let mut gamma_reps: Vec<usize> = Vec::new();
    for &x in &j_class {
        if g.r_class_of(x) == g.r_class_of(e) && !lambda_reps.iter().any(|&y| g.l_class_of(y) == g.l_class_of(x)) {
            lambda_reps.push(x);
        }
        if g.l_class_of(x) == g.l_class_of(e) && !gamma_reps.iter().any(|&y| g.r_class_of(y) == g.r_class_of(x)) {
            gamma_reps.push(x);
        }
    }

    let sandwich = lambda_reps
        .iter()
        .map(|&l| gamma_reps.iter().map(|&r| group.index_of(s.multiply(l, r))).collect())
        .collect();

    let mut encode = HashMap::new();
    let mut decode = vec![vec![vec![0; lambda_reps.len()]; group.order()]; gamma_reps.len()];
    for (i, &r) in gamma_reps.iter().enumerate() {
        for (k, &h) in group.members.iter().enumerate() {
            let rh = s.multiply(r, h);
            for (j, &l) in lambda_reps.iter().enumerate() {
                let x = s.multiply(rh, l);
                if encode.insert(x, (i, k, j)).is_some() {
                    return Err(Error::Invariant("Rees coordinates are not injective".into()));
                }
                decode[i][k][j] = x;
            }
        }
    }
    if encode.len() != j_class.len() || j_class.iter().any(|x| !encode.contains_key(x)) {
        return Err(Error::Invariant("Rees coordinates do not cover the J-class".into()));
    }
    Ok(ReesCoordinatization { group, lambda_reps, gamma_reps, sandwich, j_class, encode, decode })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::principal_factor;
    use crate::semigroup::{full_transformation_monoid, symmetric_group};
    use crate::transformation::Transformation;

    fn round_trip(s: &FiniteSemigroup, e: usize) -> ReesCoordinatization {
        let g = GreenStructure::new(s);
        let rc = rees_coordinatize(s, &g, e).unwrap();
        let pf = principal_factor(s, &g, e);
        for (a, &x) in pf.j_class.iter().enumerate() {
            assert_eq!(rc.decode(rc.encode(x).unwrap()), x);
            for (b, &y) in pf.j_class.iter().enumerate() {
                let expected = pf.product(a, b).map(|p| pf.j_class[p]);
                let got = rc.product(rc.encode(x), rc.encode(y)).map(|t| rc.decode(t));
                assert_eq!(got, expected);
            }
        }
        assert!(rc.is_regular_sandwich());
        rc
    }

    #[test]
    fn maximal_subgroups_of_f3() {
        let s = full_transformation_monoid(3).unwrap();
        let g = GreenStructure::new(&s);
        let id = s.identity_map().unwrap();
        assert_eq!(maximal_subgroup(&s, &g, id).unwrap().order(), 6);
        let c = s.index_of(&Transformation::constant(3, 2)).unwrap();
        assert_eq!(maximal_subgroup(&s, &g, c).unwrap().order(), 1);
        let e = s.index_of(&Transformation::new(vec![0, 1, 1]).unwrap()).unwrap();
        assert_eq!(maximal_subgroup(&s, &g, e).unwrap().order(), 2);
        let swap = s.index_of(&Transformation::transposition(3, 0, 1)).unwrap();
        assert_eq!(maximal_subgroup(&s, &g, swap).unwrap_err(), Error::NotIdempotent(swap));
    }

    #[test]
    fn constants_of_f2() {
        let s = full_transformation_monoid(2).unwrap();
        let c0 = s.index_of(&Transformation::constant(2, 0)).unwrap();
        let rc = round_trip(&s, c0);
        let p = rc.parameters();
        assert_eq!((p.gamma, p.group_order, p.lambda), (1, 1, 2));
    }

    #[test]
    fn group_class() {
        let s = symmetric_group(3).unwrap();
        let rc = round_trip(&s, s.identity_map().unwrap());
        assert_eq!(rc.parameters(), ReesParameters { gamma: 1, group_order: 6, lambda: 1 });
        assert_eq!(rc.sandwich, vec![vec![Some(rc.group.table.identity())]]);
    }

    #[test]
    fn rank_two_class_of_f3() {
        let s = full_transformation_monoid(3).unwrap();
        let e = s.index_of(&Transformation::new(vec![0, 1, 1]).unwrap()).unwrap();
        let rc = round_trip(&s, e);
        let p = rc.parameters();
        assert_eq!(p.gamma * p.group_order * p.lambda, rc.j_class.len());
        assert_eq!((p.gamma, p.group_order, p.lambda), (3, 2, 3));
    }
}
