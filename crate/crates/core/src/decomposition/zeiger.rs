//! Reduced holonomy monoid: cascade elements with the Zeiger property,
//! their depth, and the Green structure it predicts.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::covering::{verify_covering, Covering};
use super::holonomy::{CascadeShape, HolonomyDecomposition, Level};
use super::wreath::wreath;
use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::group::{find_isomorphism, GroupTable};
use crate::rees::maximal_subgroup;
use crate::semigroup::FiniteSemigroup;
use crate::transformation::Transformation;

/// Default ceiling on `|U|`.
pub const DEFAULT_ZEIGER_BOUND: usize = 5000;

fn is_group_value(t: &Transformation) -> bool {
    t.is_permutation()
}

/// Zeiger property, checked pointwise: whenever some component above
/// level `i` takes a group value along the tail of a state, component `i`
/// at that state takes a group value as well.
pub fn satisfies_zeiger(shape: &CascadeShape, u: &Transformation) -> bool {
    let comps = shape.components(u);
    let n = shape.levels();
    (0..shape.states()).all(|y| {
        let mut triggered = false;
        for i in (1..=n).rev() {
            let group = is_group_value(&comps[i - 1][shape.tail(y, i)]);
            if triggered && !group {
                return false;
            }
            triggered |= group;
        }
        true
    })
}

/// `k` when components `1..=k` each take some group value and components
/// above `k` are one constant each; `-1` otherwise.
pub fn depth_of(shape: &CascadeShape, u: &Transformation) -> i32 {
    let comps = shape.components(u);
    let k = comps.iter().take_while(|c| c.iter().any(is_group_value)).count();
    let constant_above = comps[k..].iter().all(|c| c[0].rank() == 1 && c.iter().all(|t| *t == c[0]));
    if constant_above {
        k as i32
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct ReducedHolonomy {
    pub shape: CascadeShape,
    pub monoid: FiniteSemigroup,
    pub depth: Vec<i32>,
    /// Largest depth attained.
    pub m: usize,
    pub n: usize,
    /// Covering of `(X, S)` by `(Y, U)`.
    pub covering: Covering,
    /// Group `G_i` of each level as maps on `X_i`.
    pub groups: Vec<Vec<Transformation>>,
}

impl ReducedHolonomy {
    pub fn dimension(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn identity(&self) -> usize {
        self.monoid.identity_map().expect("U contains the identity")
    }

    /// `E(U, y)` element of depth `k`: identity on levels up to `k`,
    /// constant at the digits of `y` above.
    pub fn distinguished_idempotent(&self, y: usize, k: usize) -> Option<usize> {
        let comps: Vec<Vec<Transformation>> = (1..=self.n)
            .map(|i| {
                let size = self.shape.sizes[i - 1];
                let value = if i <= k {
                    Transformation::identity(size)
                } else {
                    Transformation::constant(size, self.shape.digit(y, i))
                };
                vec![value; self.shape.tails(i)]
            })
            .collect();
        self.monoid.index_of(&self.shape.assemble(&comps))
    }
}

/// Enumerates every cascade element over `Hol_1, ..., Hol_n` satisfying
/// the Zeiger property.
pub fn zeiger_elements(levels: &[Level], bound: usize) -> Result<(CascadeShape, Vec<Transformation>)> {
    let shape = CascadeShape { sizes: levels.iter().map(Level::size).collect() };
    let n = shape.levels();
    let values: Vec<(Vec<Transformation>, Vec<Transformation>)> =
        levels.iter().map(|l| (l.group_elements(), l.constants())).collect();
    // Slots (level, tail), top level first.
    let slots: Vec<(usize, usize)> = (1..=n).rev().flat_map(|i| (0..shape.tails(i)).map(move |t| (i, t))).collect();
    let mut comps: Vec<Vec<Transformation>> =
        (1..=n).map(|i| vec![Transformation::identity(shape.sizes[i - 1]); shape.tails(i)]).collect();
    let mut out = Vec::new();
    enumerate(&shape, &values, &slots, 0, &mut comps, &mut out, bound)?;
    Ok((shape, out))
}

fn triggered(shape: &CascadeShape, comps: &[Vec<Transformation>], i: usize, tail: usize) -> bool {
    let mut t = tail;
    for j in i + 1..=shape.levels() {
        if is_group_value(&comps[j - 1][t / shape.sizes[j - 1]]) {
            return true;
        }
        t /= shape.sizes[j - 1];
    }
    false
}

fn enumerate(
    shape: &CascadeShape,
    values: &[(Vec<Transformation>, Vec<Transformation>)],
    slots: &[(usize, usize)],
    pos: usize,
    comps: &mut Vec<Vec<Transformation>>,
    out: &mut Vec<Transformation>,
    bound: usize,
) -> Result<()> {
    let Some(&(i, tail)) = slots.get(pos) else {
        if out.len() >= bound {
            return Err(Error::BoundExceeded { what: "reduced holonomy monoid".into(), size: out.len() + 1, bound });
        }
        out.push(shape.assemble(comps));
        return Ok(());
    };
    let (group, constants) = &values[i - 1];
    let forced = triggered(shape, comps, i, tail);
    let choices = group.iter().chain(constants.iter().filter(|_| !forced));
    for v in choices {
        comps[i - 1][tail] = v.clone();
        enumerate(shape, values, slots, pos + 1, comps, out, bound)?;
    }
    Ok(())
}

pub fn zeiger_reduce(hd: &HolonomyDecomposition, s: &FiniteSemigroup, bound: usize) -> Result<ReducedHolonomy> {
    let (shape, elements) = zeiger_elements(&hd.levels, bound)?;
    let monoid = FiniteSemigroup::from_elements(shape.states(), &elements, bound)?;
    if monoid.identity_map().is_none() {
        return Err(Error::Invariant("reduced holonomy monoid lacks the identity".into()));
    }
    for w in &hd.covering.witnesses {
        if monoid.index_of(w).is_none() {
            return Err(Error::Invariant("covering witness violates the Zeiger property".into()));
        }
    }
    let covering = hd.covering.clone();
    verify_covering(&covering, s).map_err(|f| Error::Covering(format!("{f:?}")))?;
    let depth: Vec<i32> = monoid.elements().iter().map(|u| depth_of(&shape, u)).collect();
    let n = shape.levels();
    let m = depth.iter().copied().max().unwrap_or(-1).max(0) as usize;
    let groups = hd.levels.iter().map(Level::group_elements).collect();
    Ok(ReducedHolonomy { shape, monoid, depth, m, n, covering, groups })
}

/// Checks performed by [`depth_and_classes`] for one depth `k >= 1`.
#[derive(Clone, Debug, Serialize)]
pub struct DepthClass {
    pub depth: usize,
    pub idempotent: usize,
    pub r_class_size: usize,
    pub expected_r_class_size: usize,
    pub group_order: usize,
    pub isomorphic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub dimension: (usize, usize),
    pub size: usize,
    /// Number of elements of each depth, `-1` included.
    pub depth_counts: BTreeMap<i32, usize>,
    pub regular_count: usize,
    pub regular_j_classes: usize,
    pub positive_depth_j_classes: usize,
    pub classes: Vec<DepthClass>,
}

/// Exhaustive regularity: some `v` with `u v u = u`.
pub fn brute_force_regular(u_monoid: &FiniteSemigroup) -> Vec<bool> {
    let elems = u_monoid.elements();
    let deg = u_monoid.degree();
    elems
        .iter()
        .map(|u| {
            let ui = u.images();
            elems.iter().any(|v| {
                let vi = v.images();
                (0..deg).all(|y| ui[vi[ui[y]]] == ui[y])
            })
        })
        .collect()
}

/// Group acting on `X_1 x ... x X_k` in the wreath product of the first
/// `k` holonomy groups.
pub fn cascade_group(rh: &ReducedHolonomy, k: usize, bound: usize) -> Result<GroupTable> {
    let comps: Vec<FiniteSemigroup> = rh.groups[..k]
        .iter()
        .zip(&rh.shape.sizes)
        .map(|(g, &size)| FiniteSemigroup::from_elements(size, g, bound))
        .collect::<Result<_>>()?;
    let w = wreath(&comps, bound)?;
    let perms: Vec<Vec<usize>> = w.elements().iter().map(|t| t.images().to_vec()).collect();
    GroupTable::from_permutations(&perms)
}

/// Cross-checks depth against regularity and the predicted L, J, R and H
/// structure of the reduced holonomy monoid. Errors name the first
/// disagreement.
pub fn depth_and_classes(rh: &ReducedHolonomy, bound: usize) -> Result<ClassReport> {
    let u = &rh.monoid;
    let fail = |what: String| Err(Error::Invariant(what));
    let regular = brute_force_regular(u);
    for (i, &r) in regular.iter().enumerate() {
        if r != (rh.depth[i] >= 0) {
            return fail(format!("element {i}: regular = {r} but depth = {}", rh.depth[i]));
        }
    }
    let g = GreenStructure::new(u);

    // L: equal depth and equal components above it. J: equal depth.
    let key = |i: usize| {
        let k = rh.depth[i] as usize;
        let comps = rh.shape.components(u.element(i));
        (rh.depth[i], comps[k..].to_vec())
    };
    let reg: Vec<usize> = (0..u.len()).filter(|&i| regular[i]).collect();
    let mut l_of_key: HashMap<(i32, Vec<Vec<Transformation>>), usize> = HashMap::new();
    let mut key_of_l: HashMap<usize, (i32, Vec<Vec<Transformation>>)> = HashMap::new();
    let mut j_of_depth: HashMap<i32, usize> = HashMap::new();
    let mut depth_of_j: HashMap<usize, i32> = HashMap::new();
    for &i in &reg {
        let kk = key(i);
        let l = g.l_class_of(i);
        if *l_of_key.entry(kk.clone()).or_insert(l) != l || *key_of_l.entry(l).or_insert(kk) != key(i) {
            return fail(format!("element {i}: L-class disagrees with depth and upper components"));
        }
        let j = g.j_class_of(i);
        let d = rh.depth[i];
        if *j_of_depth.entry(d).or_insert(j) != j || *depth_of_j.entry(j).or_insert(d) != d {
            return fail(format!("element {i}: J-class disagrees with depth"));
        }
    }
    let regular_j_classes = depth_of_j.len();
    let positive_depth_j_classes = depth_of_j.values().filter(|&&d| d > 0).count();
    if positive_depth_j_classes != rh.m {
        return fail(format!("{positive_depth_j_classes} regular J-classes of positive depth, expected {}", rh.m));
    }

    let mut classes = Vec::new();
    for k in 1..=rh.m {
        let e = rh
            .distinguished_idempotent(0, k)
            .ok_or_else(|| Error::Invariant(format!("no distinguished idempotent of depth {k}")))?;
        if !u.is_idempotent(e) || rh.depth[e] != k as i32 {
            return fail(format!("distinguished element of depth {k} is not an idempotent of that depth"));
        }
        let hk = cascade_group(rh, k, bound)?;
        let he = maximal_subgroup(u, &g, e)?;
        let expected = hk.order() * rh.shape.tails(k);
        let r_size = g.r_class(e).len();
        let isomorphic = find_isomorphism(&he.table, &hk).is_some();
        if r_size != expected || !isomorphic {
            return fail(format!("depth {k}: |R_e| = {r_size} (expected {expected}), H_e isomorphic: {isomorphic}"));
        }
        classes.push(DepthClass {
            depth: k,
            idempotent: e,
            r_class_size: r_size,
            expected_r_class_size: expected,
            group_order: hk.order(),
            isomorphic,
        });
    }
    let mut depth_counts = BTreeMap::new();
    for &d in &rh.depth {
        *depth_counts.entry(d).or_insert(0) += 1;
    }
    Ok(ClassReport {
        dimension: rh.dimension(),
        size: u.len(),
        depth_counts,
        regular_count: reg.len(),
        regular_j_classes,
        positive_depth_j_classes,
        classes,
    })
}
