//! Finite groups given by their Cayley tables: generating sets, normal
//! subgroups, composition series and isomorphism search.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Default ceiling on group order for exhaustive algorithms.
pub const DEFAULT_GROUP_BOUND: usize = 2000;

/// A finite group stored as a multiplication table. `mul(a, b)` is the
/// product "a then b" in whatever convention the caller used to build it;
/// the table alone is authoritative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates the identity, inverses and Latin-square property.
    /// Associativity is the caller's responsibility.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("group table must be square and nonempty".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::Invariant("group table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = table[a][b];
                if c >= n || seen[c] {
                    return Err(Error::Invariant("group table is not a Latin square".into()));
                }
                seen[c] = true;
                if c == identity {
                    inverse[a] = b;
                }
            }
        }
        Ok(Self { table, identity, inverse })
    }

    /// Group of permutations (as image vectors) closed under composition.
    /// The product of `p` and `q` is "apply p, then q".
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = p.iter().map(|&x| q[x]).collect();
                table[i][j] = *index
                    .get(&pq)
                    .ok_or_else(|| Error::Invariant("permutation set not closed".into()))?;
            }
        }
        Self::new(table)
    }

    pub fn trivial() -> Self {
        Self { table: vec![vec![0]], identity: 0, inverse: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).expect("cyclic table is a group")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect(), 0, &mut perms);
        perms.sort();
        Self::from_permutations(&perms).expect("symmetric group is closed")
    }

    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        GroupTable::new(table).expect("direct product of groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|a| self.element_order(a) == self.order())
    }

    /// Membership vector of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    /// Greedy generating set, trying elements of large order first.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (0..self.order()).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut member = self.subgroup_generated(&gens);
        for a in candidates {
            if !member[a] {
                gens.push(a);
                member = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Smallest normal subgroup containing `set`, with a generating list.
    fn normal_closure(&self, set: &[usize], group_gens: &[usize]) -> (Vec<bool>, Vec<usize>) {
        let mut gens: Vec<usize> = set.to_vec();
        let mut member = self.subgroup_generated(&gens);
        loop {
            let mut extra = None;
            'search: for &h in &gens {
                for &g in group_gens {
                    let c = self.conjugate(h, g);
                    if !member[c] {
                        extra = Some(c);
                        break 'search;
                    }
                }
            }
            match extra {
                Some(c) => {
                    gens.push(c);
                    member = self.subgroup_generated(&gens);
                }
                None => return (member, gens),
            }
        }
    }

    /// All normal subgroups as sorted member lists, ordered by size then
    /// lexicographically.
    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        let group_gens = self.generating_set();
        let mut found: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let trivial = self.subgroup_generated(&[]);
        seen.insert(trivial.clone());
        found.push((trivial, vec![]));
        for x in 0..self.order() {
            let (m, g) = self.normal_closure(&[x], &group_gens);
            if seen.insert(m.clone()) {
                found.push((m, g));
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut gens = found[i].1.clone();
                gens.extend_from_slice(&found[j].1);
                let m = self.subgroup_generated(&gens);
                if seen.insert(m.clone()) {
                    found.push((m, gens));
                }
            }
            i += 1;
        }
        let mut out: Vec<Vec<usize>> = found
            .into_iter()
            .map(|(m, _)| (0..self.order()).filter(|&x| m[x]).collect())
            .collect();
        out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Proper normal subgroups not contained in another proper normal subgroup.
    pub fn maximal_normal_subgroups(&self) -> Vec<Vec<usize>> {
        let all = self.normal_subgroups();
        let n = self.order();
        let proper: Vec<&Vec<usize>> = all.iter().filter(|s| s.len() < n).collect();
        proper
            .iter()
            .filter(|s| {
                !proper.iter().any(|t| t.len() > s.len() && s.iter().all(|x| t.binary_search(x).is_ok()))
            })
            .map(|s| (*s).clone())
            .collect()
    }

    /// Table of the subgroup with the given sorted members.
    pub fn restrict(&self, members: &[usize]) -> GroupTable {
        let pos: std::collections::HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = members
            .iter()
            .map(|&a| members.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        GroupTable::new(table).expect("restriction to a subgroup")
    }

    /// Composition factors from the bottom of the series upwards, choosing
    /// the largest maximal normal subgroup at every step.
    pub fn composition_series(&self, bound: usize) -> Result<Vec<SimpleFactor>> {
        self.composition_series_with(bound, &mut |_| 0)
    }

    /// Same as [`GroupTable::composition_series`] with a caller-chosen
    /// maximal normal subgroup at each step (index into the candidates,
    /// which are sorted by decreasing size).
    pub fn composition_series_with(
        &self,
        bound: usize,
        pick: &mut dyn FnMut(&[Vec<usize>]) -> usize,
    ) -> Result<Vec<SimpleFactor>> {
        if self.order() > bound {
            return Err(Error::BoundExceeded {
                what: "group order".into(),
                size: self.order(),
                bound,
            });
        }
        let mut factors = Vec::new();
        let mut current = self.clone();
        while current.order() > 1 {
            let mut maximal = current.maximal_normal_subgroups();
            maximal.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            let chosen = maximal[pick(&maximal).min(maximal.len() - 1)].clone();
            factors.push(current.quotient_factor(&chosen));
            current = current.restrict(&chosen);
        }
        factors.reverse();
        Ok(factors)
    }

    fn quotient_factor(&self, normal: &[usize]) -> SimpleFactor {
        let mut member = vec![false; self.order()];
        for &x in normal {
            member[x] = true;
        }
        let order = self.order() / normal.len();
        let n = self.order();
        let abelian = (0..n).all(|a| {
            (0..n).all(|b| {
                let comm = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                member[comm]
            })
        });
        let coset_order = |a: usize| {
            let mut k = 1;
            let mut x = a;
            while !member[x] {
                x = self.mul(x, a);
                k += 1;
            }
            k
        };
        let cyclic = (0..n).any(|a| coset_order(a) == order);
        SimpleFactor::new(order, abelian, cyclic)
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// A composition factor, described by order and commutativity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleFactor {
    pub order: usize,
    pub abelian: bool,
    pub cyclic: bool,
    pub name: String,
}

impl SimpleFactor {
    pub fn new(order: usize, abelian: bool, cyclic: bool) -> Self {
        let name = if cyclic {
            format!("C{order}")
        } else if order == 60 {
            "A5".to_string()
        } else {
            format!("Simple({order})")
        };
        Self { order, abelian, cyclic, name }
    }
}

fn order_profile(g: &GroupTable) -> Vec<usize> {
    let mut p: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
    p.sort_unstable();
    p
}

/// Searches for an isomorphism `a -> b`; returns the element map if found.
pub fn find_isomorphism(a: &GroupTable, b: &GroupTable) -> Option<Vec<usize>> {
    if a.order() != b.order() || order_profile(a) != order_profile(b) {
        return None;
    }
    let gens = a.generating_set();
    let gen_orders: Vec<usize> = gens.iter().map(|&g| a.element_order(g)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| (0..b.order()).filter(|&y| b.element_order(y) == o).collect())
        .collect();
    let mut images = vec![0; gens.len()];
    search_images(a, b, &gens, &candidates, &mut images, 0)
}

fn search_images(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        return extend_homomorphism(a, b, gens, images);
    }
    for &y in &candidates[depth] {
        images[depth] = y;
        if let Some(m) = search_images(a, b, gens, candidates, images, depth + 1) {
            return Some(m);
        }
    }
    None
}

fn extend_homomorphism(a: &GroupTable, b: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; a.order()];
    map[a.identity()] = b.identity();
    let mut queue = VecDeque::from([a.identity()]);
    while let Some(x) = queue.pop_front() {
        for (k, &g) in gens.iter().enumerate() {
            let y = a.mul(x, g);
            let img = b.mul(map[x], images[k]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let mut hit = vec![false; b.order()];
    for &y in &map {
        if y == usize::MAX || hit[y] {
            return None;
        }
        hit[y] = true;
    }
    Some(map)
}

pub fn is_isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
    find_isomorphism(a, b).is_some()
}
