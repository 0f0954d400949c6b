//! The poset of images `XS` and its canonical height function.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Largest state count handled by the bit-mask set encoding.
pub const MAX_DEGREE: usize = 64;

pub fn full_set(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn set_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn format_set(mask: u64) -> String {
    let items: Vec<String> = set_members(mask).iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(","))
}

/// `XS = {X s : s in S^1 or constant} + {empty}` ordered by `a <= b` iff
/// `a` is contained in some image of `b`.
#[derive(Clone, Debug)]
pub struct XsPoset {
    pub degree: usize,
    /// Sets sorted by size, then by mask; index 0 is the empty set.
    pub sets: Vec<u64>,
    index: HashMap<u64, usize>,
    leq: Vec<Vec<bool>>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub height: Vec<i32>,
}

impl XsPoset {
    pub fn new(s: &FiniteSemigroup) -> Result<Self> {
        let n = s.degree();
        if n > MAX_DEGREE {
            return Err(Error::BoundExceeded { what: "state count".into(), size: n, bound: MAX_DEGREE });
        }
        let full = full_set(n);
        let mut found: HashSet<u64> = HashSet::from([0, full]);
        found.extend((0..n).map(|i| 1u64 << i));
        found.extend(s.elements().iter().map(|t| t.image_of_set(full)));
        let mut sets: Vec<u64> = found.into_iter().collect();
        sets.sort_by_key(|&m| (m.count_ones(), m));
        let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        let m = sets.len();
        let mut leq = vec![vec![false; m]; m];
        for (b, &bm) in sets.iter().enumerate() {
            let mut orbit: Vec<u64> = vec![bm];
            orbit.extend(s.elements().iter().map(|t| t.image_of_set(bm)));
            orbit.sort_unstable();
            orbit.dedup();
            for (a, &am) in sets.iter().enumerate() {
                leq[a][b] = (am.count_ones() <= 1 && bm != 0) || am == 0 || orbit.iter().any(|&o| am & !o == 0);
            }
        }

        let mut class_of = vec![usize::MAX; m];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..m {
            if class_of[a] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (a..m).filter(|&b| leq[a][b] && leq[b][a]).collect();
            for &b in &members {
                class_of[b] = classes.len();
            }
            classes.push(members);
        }

        let mut height = vec![i32::MIN; m];
        height[0] = -1;
        // Sets are sorted by size and a < b forces |a| <= |b|; equal sizes
        // are resolved by iterating to a fixed point.
        loop {
            let mut changed = false;
            for b in 1..m {
                let h = if sets[b].count_ones() == 1 {
                    0
                } else {
                    (1..m)
                        .filter(|&a| leq[a][b] && !leq[b][a])
                        .map(|a| height[a])
                        .max()
                        .map_or(i32::MIN, |h| if h == i32::MIN { h } else { h + 1 })
                };
                if h > height[b] {
                    height[b] = h;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let poset = Self { degree: n, sets, index, leq, class_of, classes, height };
        poset.check_height_axioms()?;
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Height of a set that must belong to XS.
    pub fn height_of(&self, mask: u64) -> i32 {
        self.height[self.index[&mask]]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn top_height(&self) -> i32 {
        self.height[self.len() - 1]
    }

    /// Representative (least mask) of the class of set `a`.
    pub fn representative(&self, a: usize) -> usize {
        *self.classes[self.class_of[a]].iter().min_by_key(|&&i| self.sets[i]).expect("classes are nonempty")
    }

    /// Class representatives of the given height, ordered by mask.
    pub fn representatives_at(&self, h: i32) -> Vec<usize> {
        let mut reps: Vec<usize> = self
            .classes
            .iter()
            .filter(|c| self.height[c[0]] == h)
            .map(|c| self.representative(c[0]))
            .collect();
        reps.sort_by_key(|&i| self.sets[i]);
        reps
    }

    /// Maximal proper subsets of `a` that belong to XS, ordered by mask.
    pub fn bricks(&self, a: usize) -> Vec<u64> {
        let am = self.sets[a];
        let proper: Vec<u64> = self.sets.iter().copied().filter(|&b| b != am && b != 0 && b & !am == 0).collect();
        let mut bricks: Vec<u64> =
            proper.iter().copied().filter(|&b| !proper.iter().any(|&c| c != b && b & !c == 0)).collect();
        bricks.sort_unstable();
        bricks
    }

    pub fn check_height_axioms(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Invariant(format!("height axiom violated: {what}")));
        if self.height[0] != -1 {
            return fail("empty set");
        }
        for (i, &m) in self.sets.iter().enumerate() {
            if m.count_ones() == 1 && self.height[i] != 0 {
                return fail("singleton");
            }
            if self.height[i] == i32::MIN {
                return fail("undefined height");
            }
        }
        for a in 0..self.len() {
            for b in 0..self.len() {
                let (ab, ba) = (self.leq[a][b], self.leq[b][a]);
                if ab && ba && self.height[a] != self.height[b] {
                    return fail("equivalent sets");
                }
                if ab && !ba && self.height[a] >= self.height[b] {
                    return fail("strict order");
                }
            }
        }
        for h in 0..=self.top_height() {
            if !self.height.contains(&h) {
                return fail("missing height");
            }
        }
        Ok(())
    }

    pub fn report(&self) -> Vec<XsEntry> {
        (0..self.len())
            .map(|i| XsEntry { set: set_members(self.sets[i]), height: self.height[i], class: self.class_of[i] })
            .collect()
    }

    /// Covering pairs `(a, b)` of classes with `a < b` and nothing between,
    /// as class ids.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let rep: Vec<usize> = self.classes.iter().map(|c| c[0]).collect();
        let lt = |a: usize, b: usize| self.leq[rep[a]][rep[b]] && !self.leq[rep[b]][rep[a]];
        let k = self.classes.len();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct XsEntry {
    pub set: Vec<usize>,
    pub height: i32,
    pub class: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{cyclic_group, flip_flop, full_transformation_monoid};

    #[test]
    fn flip_flop_poset() {
        let xs = XsPoset::new(&flip_flop()).unwrap();
        assert_eq!(xs.sets, vec![0b00, 0b01, 0b10, 0b11]);
        assert_eq!(xs.top_height(), 1);
        assert!(xs.equivalent(1, 2));
        assert_eq!(xs.bricks(3), vec![0b01, 0b10]);
    }

    #[test]
    fn cyclic_group_poset() {
        let xs = XsPoset::new(&cyclic_group(2).unwrap()).unwrap();
        assert_eq!(xs.sets, vec![0b00, 0b01, 0b10, 0b11]);
        assert_eq!(xs.top_height(), 1);
    }

    #[test]
    fn f3_heights() {
        let xs = XsPoset::new(&full_transformation_monoid(3).unwrap()).unwrap();
        for (i, &m) in xs.sets.iter().enumerate() {
            assert_eq!(xs.height[i], m.count_ones() as i32 - 1);
        }
        assert_eq!(xs.representatives_at(1).len(), 1);
        assert_eq!(xs.bricks(xs.len() - 1).len(), 3);
    }
}
