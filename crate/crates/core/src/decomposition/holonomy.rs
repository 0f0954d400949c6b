//! Holonomy decomposition: pavings, holonomy groups and the level-by-level
//! relational coverings that end in a division by the cascade.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::covering::{verify_covering, Covering};
use super::xs::{full_set, set_members, XsPoset};
use crate::error::{Error, Result};
use crate::semigroup::{FiniteSemigroup, DEFAULT_SIZE_BOUND};
use crate::transformation::Transformation;

/// Element of `S^1`: `None` is the adjoined identity.
pub type MonoidElement = Option<usize>;

fn act_set(s: &FiniteSemigroup, e: MonoidElement, mask: u64) -> u64 {
    match e {
        None => mask,
        Some(i) => s.element(i).image_of_set(mask),
    }
}

fn as_map(s: &FiniteSemigroup, e: MonoidElement) -> Transformation {
    match e {
        None => Transformation::identity(s.degree()),
        Some(i) => s.element(i).clone(),
    }
}

/// Identity first, then the elements of S in closure order.
fn monoid_elements(s: &FiniteSemigroup) -> impl Iterator<Item = MonoidElement> {
    std::iter::once(None).chain((0..s.len()).map(Some))
}

/// A class representative `a` with its bricks and holonomy group, the
/// latter as distinct permutations of brick indices.
#[derive(Clone, Debug)]
pub struct HolonomyRep {
    pub set: u64,
    pub bricks: Vec<u64>,
    pub group: Vec<Vec<usize>>,
}

impl HolonomyRep {
    fn new(s: &FiniteSemigroup, xs: &XsPoset, set: u64) -> Self {
        let bricks = xs.bricks(xs.index_of(set).expect("set lies in XS"));
        let group = stabilizer_perms(s, set, &bricks);
        Self { set, bricks, group }
    }

    pub fn brick_of(&self, mask: u64) -> Option<usize> {
        self.bricks.iter().position(|&b| mask & !b == 0)
    }
}

fn stabilizer_perms(s: &FiniteSemigroup, set: u64, bricks: &[u64]) -> Vec<Vec<usize>> {
    let mut perms: BTreeSet<Vec<usize>> = s
        .elements()
        .iter()
        .filter(|t| t.image_of_set(set) == set)
        .map(|t| {
            bricks
                .iter()
                .map(|&b| bricks.iter().position(|&c| c == t.image_of_set(b)).expect("stabilizer permutes bricks"))
                .collect()
        })
        .collect();
    if perms.is_empty() {
        perms.insert((0..bricks.len()).collect());
    }
    perms.into_iter().collect()
}

/// Paving `X_k` (product of the brick sets of the representatives of
/// height `k`, first representative in the lowest digit) and holonomy group.
#[derive(Clone, Debug)]
pub struct Level {
    pub height: usize,
    pub reps: Vec<HolonomyRep>,
}

impl Level {
    pub fn size(&self) -> usize {
        self.reps.iter().map(|r| r.bricks.len()).product()
    }

    pub fn group_order(&self) -> usize {
        self.reps.iter().map(|r| r.group.len()).product()
    }

    pub fn digits(&self, mut b: usize) -> Vec<usize> {
        self.reps
            .iter()
            .map(|r| {
                let d = b % r.bricks.len();
                b /= r.bricks.len();
                d
            })
            .collect()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        self.reps.iter().zip(digits).rev().fold(0, |acc, (r, &d)| acc * r.bricks.len() + d)
    }

    /// Map on `X_k` applying `perms[i]` to digit `i`.
    pub fn product_map(&self, perms: &[&[usize]]) -> Transformation {
        let images = (0..self.size())
            .map(|b| {
                let d: Vec<usize> = self.digits(b).iter().zip(perms).map(|(&x, p)| p[x]).collect();
                self.encode(&d)
            })
            .collect();
        Transformation::new(images).expect("digitwise permutation is a map")
    }

    /// Map acting by `perm` on digit `i` and trivially elsewhere.
    pub fn single_map(&self, i: usize, perm: &[usize]) -> Transformation {
        let ids: Vec<Vec<usize>> = self.reps.iter().map(|r| (0..r.bricks.len()).collect()).collect();
        let perms: Vec<&[usize]> =
            ids.iter().enumerate().map(|(j, id)| if j == i { perm } else { id.as_slice() }).collect();
        self.product_map(&perms)
    }

    /// All elements of `G_k` as maps on `X_k`, in lexicographic order of
    /// their coordinates.
    pub fn group_elements(&self) -> Vec<Transformation> {
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.reps.len()];
        loop {
            let perms: Vec<&[usize]> = self.reps.iter().zip(&idx).map(|(r, &i)| r.group[i].as_slice()).collect();
            out.push(self.product_map(&perms));
            let mut j = 0;
            while j < idx.len() && idx[j] + 1 == self.reps[j].group.len() {
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                return out;
            }
            idx[j] += 1;
        }
    }

    pub fn constants(&self) -> Vec<Transformation> {
        (0..self.size()).map(|b| Transformation::constant(self.size(), b)).collect()
    }

    /// `Hol_k`: the group together with all constants.
    pub fn holonomy(&self) -> Result<FiniteSemigroup> {
        let mut elements = self.group_elements();
        elements.extend(self.constants());
        FiniteSemigroup::from_elements(self.size(), &elements, DEFAULT_SIZE_BOUND)
    }

    /// Permutation group `G_k` acting on `X_k`.
    pub fn group(&self) -> Result<FiniteSemigroup> {
        FiniteSemigroup::from_elements(self.size(), &self.group_elements(), DEFAULT_SIZE_BOUND)
    }

    pub fn report(&self) -> LevelReport {
        LevelReport {
            height: self.height,
            representatives: self.reps.iter().map(|r| set_members(r.set)).collect(),
            brick_counts: self.reps.iter().map(|r| r.bricks.len()).collect(),
            group_orders: self.reps.iter().map(|r| r.group.len()).collect(),
            paving_size: self.size(),
            group_order: self.group_order(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub height: usize,
    pub representatives: Vec<Vec<usize>>,
    pub brick_counts: Vec<usize>,
    pub group_orders: Vec<usize>,
    pub paving_size: usize,
    pub group_order: usize,
}

/// Builds level `k` and checks that equivalent sets carry isomorphic
/// holonomy actions.
pub fn holonomy_level(s: &FiniteSemigroup, xs: &XsPoset, k: usize) -> Result<Level> {
    let reps: Vec<HolonomyRep> =
        xs.representatives_at(k as i32).into_iter().map(|a| HolonomyRep::new(s, xs, xs.sets[a])).collect();
    for rep in &reps {
        let a = xs.index_of(rep.set).expect("representative lies in XS");
        for &b in &xs.classes[xs.class_of[a]] {
            check_transport(s, rep, &HolonomyRep::new(s, xs, xs.sets[b]))?;
        }
    }
    Ok(Level { height: k, reps })
}

fn check_transport(s: &FiniteSemigroup, a: &HolonomyRep, b: &HolonomyRep) -> Result<()> {
    let fail = |what: &str| {
        Err(Error::Invariant(format!("holonomy of {:#b} and {:#b} differ: {what}", a.set, b.set)))
    };
    let Some(u) = monoid_elements(s).find(|&u| act_set(s, u, a.set) == b.set) else {
        return fail("no translation");
    };
    let tau: Option<Vec<usize>> =
        a.bricks.iter().map(|&c| b.bricks.iter().position(|&d| d == act_set(s, u, c))).collect();
    let Some(tau) = tau else { return fail("bricks do not correspond") };
    if a.bricks.len() != b.bricks.len() {
        return fail("brick counts");
    }
    let mut inverse = vec![0; tau.len()];
    for (i, &j) in tau.iter().enumerate() {
        inverse[j] = i;
    }
    let conjugated: BTreeSet<Vec<usize>> =
        a.group.iter().map(|p| (0..tau.len()).map(|j| tau[p[inverse[j]]]).collect()).collect();
    if conjugated != b.group.iter().cloned().collect() {
        return fail("groups are not conjugate");
    }
    Ok(())
}

/// `u` and `v` chosen for a set of height `k`: `a u = set`, `set v = a`,
/// and `v u` fixes every point of `set`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Selection {
    pub rep: usize,
    pub u: MonoidElement,
    pub v: MonoidElement,
}

fn select(s: &FiniteSemigroup, xs: &XsPoset, level: &Level, set: u64) -> Result<Selection> {
    let idx = xs.index_of(set).ok_or_else(|| Error::Invariant("set outside XS".into()))?;
    let rep = level
        .reps
        .iter()
        .position(|r| xs.equivalent(idx, xs.index_of(r.set).expect("representative lies in XS")))
        .ok_or_else(|| Error::Invariant("set has no representative".into()))?;
    let a = level.reps[rep].set;
    let u = monoid_elements(s)
        .find(|&u| act_set(s, u, a) == set)
        .ok_or_else(|| Error::Invariant("no u selection".into()))?;
    let um = as_map(s, u);
    let v = monoid_elements(s)
        .find(|&v| {
            act_set(s, v, set) == a && {
                let vm = as_map(s, v);
                set_members(set).iter().all(|&x| um.apply(vm.apply(x)) == x)
            }
        })
        .ok_or_else(|| Error::Invariant("no v selection".into()))?;
    Ok(Selection { rep, u, v })
}

/// Relational covering of `(X, S)` by `Hol_k wr ... wr Hol_n`: `psi`
/// assigns a set to each state and `witnesses` holds one map per generator.
#[derive(Clone, Debug)]
pub struct LevelCovering {
    pub level: usize,
    pub psi: Vec<u64>,
    pub witnesses: Vec<Transformation>,
    pub selections: Vec<(u64, Selection)>,
}

impl LevelCovering {
    /// Largest height among the sets `psi` assigns.
    pub fn rank(&self, xs: &XsPoset) -> i32 {
        self.psi.iter().map(|&m| xs.height_of(m)).max().unwrap_or(-1)
    }

    /// First `(state, generator)` with `psi s` not contained in `t psi`.
    pub fn soundness_failure(&self, s: &FiniteSemigroup) -> Option<(usize, usize)> {
        for (k, w) in self.witnesses.iter().enumerate() {
            let g = s.element(s.generators()[k]);
            for (y, &set) in self.psi.iter().enumerate() {
                if g.image_of_set(set) & !self.psi[w.apply(y)] != 0 {
                    return Some((y, k));
                }
            }
        }
        None
    }
}

/// One refinement step: from `phi` of rank `level.height` on `Y` to
/// `psi` of rank one less on `X_k x Y`.
pub fn refine(
    s: &FiniteSemigroup,
    xs: &XsPoset,
    level: &Level,
    phi: &[u64],
    witnesses: &[Transformation],
) -> Result<LevelCovering> {
    let k = level.height as i32;
    let nk = level.size();
    let mut cache: HashMap<u64, Selection> = HashMap::new();
    let mut selections = Vec::new();
    for &set in phi {
        if xs.height_of(set) == k && !cache.contains_key(&set) {
            let sel = select(s, xs, level, set)?;
            cache.insert(set, sel);
            selections.push((set, sel));
        }
    }
    selections.sort_by_key(|&(set, _)| set);

    let mut psi = Vec::with_capacity(nk * phi.len());
    for &set in phi {
        for b in 0..nk {
            psi.push(match cache.get(&set) {
                None => set,
                Some(sel) => act_set(s, sel.u, level.reps[sel.rep].bricks[level.digits(b)[sel.rep]]),
            });
        }
    }

    let identity = Transformation::identity(nk);
    let mut new_witnesses = Vec::with_capacity(witnesses.len());
    for (gi, t) in witnesses.iter().enumerate() {
        let g = s.generators()[gi];
        let mut images = vec![0; nk * phi.len()];
        for (y, &set) in phi.iter().enumerate() {
            let yt = t.apply(y);
            let moved = act_set(s, Some(g), set);
            let target = phi[yt];
            let value = match cache.get(&target) {
                None => identity.clone(),
                Some(st) => {
                    let rep = &level.reps[st.rep];
                    if moved == target {
                        let sy = cache[&set];
                        let w = as_map(s, sy.u).then(s.element(g)).then(&as_map(s, st.v));
                        let perm: Vec<usize> = rep
                            .bricks
                            .iter()
                            .map(|&c| rep.bricks.iter().position(|&d| d == w.image_of_set(c)))
                            .collect::<Option<_>>()
                            .ok_or_else(|| Error::Invariant("translation does not permute bricks".into()))?;
                        if rep.group.binary_search(&perm).is_err() {
                            return Err(Error::Invariant("translation outside the holonomy group".into()));
                        }
                        level.single_map(st.rep, &perm)
                    } else {
                        let brick = rep
                            .brick_of(act_set(s, st.v, moved))
                            .ok_or_else(|| Error::Invariant("image fits in no brick".into()))?;
                        let mut digits = vec![0; level.reps.len()];
                        digits[st.rep] = brick;
                        Transformation::constant(nk, level.encode(&digits))
                    }
                }
            };
            for b in 0..nk {
                images[b + nk * y] = value.apply(b) + nk * yt;
            }
        }
        new_witnesses.push(Transformation::new(images)?);
    }
    Ok(LevelCovering { level: level.height, psi, witnesses: new_witnesses, selections })
}

/// The complete decomposition. `levels[i]` is level `i + 1`; `chain` holds
/// the relational coverings from the top level down.
#[derive(Clone, Debug)]
pub struct HolonomyDecomposition {
    pub xs: XsPoset,
    pub levels: Vec<Level>,
    pub chain: Vec<LevelCovering>,
    pub covering: Covering,
    /// Closure of the generator witnesses and the identity on the
    /// product state set.
    pub cascade: FiniteSemigroup,
}

impl HolonomyDecomposition {
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn shape(&self) -> CascadeShape {
        CascadeShape { sizes: self.levels.iter().map(Level::size).collect() }
    }

    pub fn report(&self) -> Vec<LevelReport> {
        self.levels.iter().map(Level::report).collect()
    }
}

pub fn holonomy_decompose(s: &FiniteSemigroup) -> Result<HolonomyDecomposition> {
    holonomy_decompose_bounded(s, DEFAULT_SIZE_BOUND)
}

pub fn holonomy_decompose_bounded(s: &FiniteSemigroup, bound: usize) -> Result<HolonomyDecomposition> {
    let xs = XsPoset::new(s)?;
    let n = xs.top_height().max(0) as usize;
    let levels: Vec<Level> = (1..=n).map(|k| holonomy_level(s, &xs, k)).collect::<Result<_>>()?;
    let mut phi = vec![full_set(s.degree())];
    let mut witnesses = vec![Transformation::identity(1); s.num_generators()];
    let mut chain = Vec::with_capacity(n);
    for level in levels.iter().rev() {
        let step = refine(s, &xs, level, &phi, &witnesses)?;
        if let Some((y, g)) = step.soundness_failure(s) {
            return Err(Error::Invariant(format!("level {} unsound at state {y}, generator {g}", level.height)));
        }
        if step.rank(&xs) != level.height as i32 - 1 {
            return Err(Error::Invariant(format!("level {} does not lower the rank by one", level.height)));
        }
        phi.clone_from(&step.psi);
        witnesses.clone_from(&step.witnesses);
        chain.push(step);
    }
    let covering = Covering {
        phi: phi.iter().map(|&m| (m.count_ones() == 1).then(|| m.trailing_zeros() as usize)).collect(),
        witnesses,
    };
    verify_covering(&covering, s).map_err(|f| Error::Covering(format!("{f:?}")))?;
    let mut gens = vec![Transformation::identity(phi.len())];
    gens.extend(covering.witnesses.iter().cloned());
    let cascade = FiniteSemigroup::generate_bounded(phi.len(), &gens, bound)?;
    Ok(HolonomyDecomposition { xs, levels, chain, covering, cascade })
}

/// Digit layout of `Y = X_1 x ... x X_n`, level 1 in the lowest digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeShape {
    pub sizes: Vec<usize>,
}

impl CascadeShape {
    pub fn levels(&self) -> usize {
        self.sizes.len()
    }

    pub fn states(&self) -> usize {
        self.sizes.iter().product()
    }

    /// `|X_1| ... |X_{i-1}|` for 1-based level `i`.
    pub fn prefix(&self, i: usize) -> usize {
        self.sizes[..i - 1].iter().product()
    }

    /// Number of tails `|X_{i+1}| ... |X_n|` for 1-based level `i`.
    pub fn tails(&self, i: usize) -> usize {
        self.sizes[i..].iter().product()
    }

    pub fn digit(&self, y: usize, i: usize) -> usize {
        y / self.prefix(i) % self.sizes[i - 1]
    }

    pub fn tail(&self, y: usize, i: usize) -> usize {
        y / (self.prefix(i) * self.sizes[i - 1])
    }

    /// Component `i` of cascade element `u` at `tail`, as a map on `X_i`.
    pub fn component(&self, u: &Transformation, i: usize, tail: usize) -> Transformation {
        let (p, size) = (self.prefix(i), self.sizes[i - 1]);
        let images = (0..size).map(|x| self.digit(u.apply(p * (x + size * tail)), i)).collect();
        Transformation::new(images).expect("component is a map")
    }

    /// All components, `out[i - 1][tail]`.
    pub fn components(&self, u: &Transformation) -> Vec<Vec<Transformation>> {
        (1..=self.levels()).map(|i| (0..self.tails(i)).map(|t| self.component(u, i, t)).collect()).collect()
    }

    /// Cascade element with the given components, acting by
    /// `(x_1, ..., x_n) -> (x_i t_i(x_{i+1}, ..., x_n))_i`.
    pub fn assemble(&self, components: &[Vec<Transformation>]) -> Transformation {
        let images = (0..self.states())
            .map(|y| {
                (1..=self.levels())
                    .map(|i| components[i - 1][self.tail(y, i)].apply(self.digit(y, i)) * self.prefix(i))
                    .sum()
            })
            .collect();
        Transformation::new(images).expect("assembled cascade is a map")
    }

    /// Whether `u` acts as a cascade: digit `i` of the image depends only
    /// on digits `i..n` of the input, and the top tail is ignored.
    pub fn is_cascade(&self, u: &Transformation) -> bool {
        u.degree() == self.states() && self.assemble(&self.components(u)) == *u
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{cyclic_group, flip_flop, full_transformation_monoid, symmetric_group};

    #[test]
    fn flip_flop_levels() {
        let s = flip_flop();
        let hd = holonomy_decompose(&s).unwrap();
        assert_eq!(hd.height(), 1);
        let r = &hd.levels[0].reps[0];
        assert_eq!((r.set, r.bricks.clone(), r.group.len()), (0b11, vec![0b01, 0b10], 1));
        assert_eq!(hd.levels[0].holonomy().unwrap().len(), 3);
        assert_eq!(verify_covering(&hd.covering, &s), Ok(()));
    }

    #[test]
    fn cyclic_group_levels() {
        let hd = holonomy_decompose(&cyclic_group(2).unwrap()).unwrap();
        assert_eq!(hd.levels[0].group_order(), 2);
        assert_eq!(hd.levels[0].holonomy().unwrap().len(), 4);
    }

    #[test]
    fn f3_has_two_levels() {
        let s = full_transformation_monoid(3).unwrap();
        let hd = holonomy_decompose(&s).unwrap();
        let report = hd.report();
        assert_eq!(report.len(), 2);
        assert_eq!((report[1].brick_counts.clone(), report[1].group_order), (vec![3], 6));
        assert_eq!((report[0].brick_counts.clone(), report[0].group_order), (vec![2], 2));
        assert_eq!(hd.covering.phi.len(), 6);
        for w in hd.cascade.elements() {
            assert!(hd.shape().is_cascade(w));
        }
    }

    #[test]
    fn chain_descends_soundly() {
        for s in [full_transformation_monoid(3).unwrap(), symmetric_group(3).unwrap(), cyclic_group(6).unwrap()] {
            let hd = holonomy_decompose(&s).unwrap();
            for (step, k) in hd.chain.iter().zip((1..=hd.height()).rev()) {
                assert_eq!(step.rank(&hd.xs), k as i32 - 1);
                assert_eq!(step.soundness_failure(&s), None);
            }
        }
    }

    #[test]
    fn assemble_inverts_components() {
        let shape = CascadeShape { sizes: vec![2, 3] };
        let u = shape.assemble(&[
            vec![Transformation::identity(2), Transformation::constant(2, 1), Transformation::new(vec![1, 0]).unwrap()],
            vec![Transformation::cycle(3)],
        ]);
        assert!(shape.is_cascade(&u));
        assert_eq!(shape.component(&u, 1, 2), Transformation::new(vec![1, 0]).unwrap());
        assert!(!shape.is_cascade(&Transformation::new(vec![1, 0, 2, 3, 4, 5]).unwrap().then(&Transformation::transposition(6, 0, 2))));
    }
}
