//! Right Schützenberger representations: the action of a semigroup on the
//! H-classes of an R-class, recorded as row-monomial matrices over the
//! Schützenberger group with zero.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::group::{find_isomorphism, GroupTable};
use crate::semigroup::FiniteSemigroup;

/// A row-monomial matrix: row `i` is either zero or holds group element `g`
/// in column `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    pub rows: Vec<Option<(usize, usize)>>,
}

impl MonomialMatrix {
    pub fn identity(n: usize, group_identity: usize) -> Self {
        Self { rows: (0..n).map(|i| Some((i, group_identity))).collect() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &MonomialMatrix, group: &GroupTable) -> MonomialMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let (j, g) = (*r)?;
                let (k, h) = other.rows[j]?;
                Some((k, group.mul(g, h)))
            })
            .collect();
        MonomialMatrix { rows }
    }
}

#[derive(Clone, Debug)]
pub struct SchutzRepresentation {
    pub element: usize,
    pub base_r_class: Vec<usize>,
    /// Least-index element of each H-class in the R-class, ascending.
    pub h_class_reps: Vec<usize>,
    /// Position of the H-class of `element` among the representatives.
    pub base: usize,
    /// Elements of that H-class; permutations below act on these positions.
    pub h_members: Vec<usize>,
    /// Schützenberger group elements as permutations of `h_members`.
    pub group_perms: Vec<Vec<usize>>,
    pub schutz_group: GroupTable,
    /// One matrix per semigroup element.
    pub matrices: Vec<MonomialMatrix>,
}

impl SchutzRepresentation {
    pub fn dimension(&self) -> usize {
        self.h_class_reps.len()
    }

    /// The element `x * g` for `x` the H-class member at position `at`.
    pub fn act(&self, g: usize, at: usize) -> usize {
        self.h_members[self.group_perms[g][at]]
    }

    pub fn identity_matrix(&self) -> MonomialMatrix {
        MonomialMatrix::identity(self.dimension(), self.schutz_group.identity())
    }
}

pub fn schutz_representation(s: &FiniteSemigroup, g: &GreenStructure, x: usize) -> Result<SchutzRepresentation> {
    let r_class = g.r_class(x).to_vec();
    let mut h_class_reps: Vec<usize> = Vec::new();
    for &y in &r_class {
        if !h_class_reps.iter().any(|&z| g.h_class_of(z) == g.h_class_of(y)) {
            h_class_reps.push(y);
        }
    }
    let base = h_class_reps.iter().position(|&y| g.h_class_of(y) == g.h_class_of(x)).expect("x lies in its R-class");
    let h_members = g.h_class(x).to_vec();
    let h_pos: HashMap<usize, usize> = h_members.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let class_pos = |y: usize| h_class_reps.iter().position(|&z| g.h_class_of(z) == g.h_class_of(y));
    let s_base = h_class_reps[base];

    // p[i] maps the base H-class onto H-class i; q[i] maps it back. None is 1.
    let find_multiplier = |from: usize, to: usize| -> Option<Option<usize>> {
        if from == to {
            return Some(None);
        }
        (0..s.len()).find(|&t| s.multiply(from, t) == to).map(Some)
    };
    let apply = |y: usize, t: Option<usize>| t.map_or(y, |t| s.multiply(y, t));
    let mut p = Vec::new();
    let mut q = Vec::new();
    for &rep in &h_class_reps {
        p.push(find_multiplier(s_base, rep).ok_or_else(|| Error::Invariant("R-class not strongly connected".into()))?);
        q.push(find_multiplier(rep, s_base).ok_or_else(|| Error::Invariant("R-class not strongly connected".into()))?);
    }

    let mut group_perms: Vec<Vec<usize>> = vec![(0..h_members.len()).collect()];
    let mut perm_index: HashMap<Vec<usize>, usize> = HashMap::from([(group_perms[0].clone(), 0)]);
    let mut raw_rows: Vec<Vec<Option<(usize, Vec<usize>)>>> = Vec::with_capacity(s.len());
    for t in 0..s.len() {
        let mut rows = Vec::with_capacity(h_class_reps.len());
        for (i, &rep) in h_class_reps.iter().enumerate() {
            let image = s.multiply(rep, t);
            if g.r_class_of(image) != g.r_class_of(x) {
                rows.push(None);
                continue;
            }
            let j = class_pos(image).expect("image lies in the R-class");
            let perm: Vec<usize> = h_members
                .iter()
                .map(|&h| h_pos[&apply(s.multiply(apply(h, p[i]), t), q[j])])
                .collect();
            if !perm_index.contains_key(&perm) {
                perm_index.insert(perm.clone(), group_perms.len());
                group_perms.push(perm.clone());
            }
            rows.push(Some((j, perm)));
        }
        raw_rows.push(rows);
    }
    // Sort group elements so the numbering depends only on the permutations.
    group_perms.sort();
    let perm_index: HashMap<&Vec<usize>, usize> = group_perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let schutz_group = GroupTable::from_permutations(&group_perms)?;
    if schutz_group.order() != h_members.len() {
        return Err(Error::Invariant("Schützenberger group order differs from |H|".into()));
    }
    let matrices: Vec<MonomialMatrix> = raw_rows
        .into_iter()
        .map(|rows| MonomialMatrix {
            rows: rows.into_iter().map(|r| r.map(|(j, perm)| (j, perm_index[&perm]))).collect(),
        })
        .collect();

    for i in 0..s.len() {
        for k in 0..s.num_generators() {
            let gk = s.generators()[k];
            let lhs = matrices[i].mul(&matrices[gk], &schutz_group);
            if lhs != matrices[s.right_mul_gen(i, k)] {
                return Err(Error::Invariant("Schützenberger matrices are not multiplicative".into()));
            }
        }
    }

    Ok(SchutzRepresentation {
        element: x,
        base_r_class: r_class,
        h_class_reps,
        base,
        h_members,
        group_perms,
        schutz_group,
        matrices,
    })
}

/// Left Schützenberger group of the H-class of `x`: permutations of the
/// H-class induced by left multiplications that stabilize it.
pub fn left_schutz_group(s: &FiniteSemigroup, g: &GreenStructure, x: usize) -> Result<GroupTable> {
    let h = g.h_class(x).to_vec();
    let pos: HashMap<usize, usize> = h.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut perms: Vec<Vec<usize>> = vec![(0..h.len()).collect()];
    for t in 0..s.len() {
        if g.h_class_of(s.multiply(t, x)) == g.h_class_of(x) {
            let perm: Vec<usize> = h.iter().map(|&y| pos[&s.multiply(t, y)]).collect();
            if !perms.contains(&perm) {
                perms.push(perm);
            }
        }
    }
    perms.sort();
    GroupTable::from_permutations(&perms)
}

/// Checks that the right group is anti-isomorphic to the left group and
/// that the left group acts on the R-class with all orbits of full size.
pub fn check_schutz_duality(s: &FiniteSemigroup, g: &GreenStructure, rep: &SchutzRepresentation) -> Result<bool> {
    let left = left_schutz_group(s, g, rep.element)?;
    let n = left.order();
    let opposite = GroupTable::new((0..n).map(|a| (0..n).map(|b| left.mul(b, a)).collect()).collect())?;
    if find_isomorphism(&rep.schutz_group, &opposite).is_none() {
        return Ok(false);
    }
    let stabilizers: Vec<usize> = (0..s.len())
        .filter(|&t| g.h_class_of(s.multiply(t, rep.element)) == g.h_class_of(rep.element))
        .collect();
    let free = rep.base_r_class.iter().all(|&y| {
        let mut orbit: Vec<usize> = stabilizers.iter().map(|&t| s.multiply(t, y)).collect();
        orbit.push(y);
        orbit.sort_unstable();
        orbit.dedup();
        orbit.len() == n
    });
    Ok(free)
}
