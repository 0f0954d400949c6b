//! Green's relations of a finite semigroup, computed from strongly connected
//! components of its Cayley graphs.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::semigroup::FiniteSemigroup;

/// Partitions of the element indices into L-, R-, H-, D- and J-classes.
///
/// Class ids are assigned in order of the least element index in each class,
/// so class 0 always contains element 0.
#[derive(Clone, Debug)]
pub struct GreenStructure {
    l_of: Vec<usize>,
    r_of: Vec<usize>,
    h_of: Vec<usize>,
    d_of: Vec<usize>,
    j_of: Vec<usize>,
    l_classes: Vec<Vec<usize>>,
    r_classes: Vec<Vec<usize>>,
    h_classes: Vec<Vec<usize>>,
    d_classes: Vec<Vec<usize>>,
    j_classes: Vec<Vec<usize>>,
    /// `j_below[a][b]`: J-class `a` lies in the ideal generated by class `b`.
    j_below: Vec<Vec<bool>>,
    regular: Vec<bool>,
    idempotents: Vec<usize>,
}

fn scc_labels(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (a, b) in edges {
        graph.add_edge(nodes[a], nodes[b], ());
    }
    let mut label = vec![0; n];
    for (c, comp) in tarjan_scc(&graph).into_iter().enumerate() {
        for v in comp {
            label[v.index()] = c;
        }
    }
    canonical_labels(&label)
}

/// Renumbers labels by first occurrence.
fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    raw.iter()
        .map(|&r| {
            let next = map.len();
            *map.entry(r).or_insert(next)
        })
        .collect()
}

fn classes_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let count = labels.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for (i, &c) in labels.iter().enumerate() {
        out[c].push(i);
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = x;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

impl GreenStructure {
    pub fn new(s: &FiniteSemigroup) -> Self {
        let n = s.len();
        let k = s.num_generators();
        let right_edges = || (0..n).flat_map(move |i| (0..k).map(move |g| (i, s.right_mul_gen(i, g))));
        let left_edges = || (0..n).flat_map(move |i| (0..k).map(move |g| (i, s.left_mul_gen(i, g))));

        let r_of = scc_labels(n, right_edges());
        let l_of = scc_labels(n, left_edges());
        let j_of = scc_labels(n, right_edges().chain(left_edges()));

        let mut pair_ids = std::collections::HashMap::new();
        let h_of = (0..n)
            .map(|i| {
                let next = pair_ids.len();
                *pair_ids.entry((l_of[i], r_of[i])).or_insert(next)
            })
            .collect::<Vec<_>>();

        let mut parent: Vec<usize> = (0..n).collect();
        let l_classes = classes_of(&l_of);
        let r_classes = classes_of(&r_of);
        for class in l_classes.iter().chain(r_classes.iter()) {
            for &x in &class[1..] {
                let (a, b) = (find(&mut parent, class[0]), find(&mut parent, x));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let d_raw: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        let d_of = canonical_labels(&d_raw);

        let j_classes = classes_of(&j_of);
        let nj = j_classes.len();
        let mut succ = vec![Vec::new(); nj];
        for (a, b) in right_edges().chain(left_edges()) {
            let (ja, jb) = (j_of[a], j_of[b]);
            if ja != jb && !succ[ja].contains(&jb) {
                succ[ja].push(jb);
            }
        }
        let mut j_below = vec![vec![false; nj]; nj];
        for b in 0..nj {
            let mut stack = vec![b];
            j_below[b][b] = true;
            while let Some(x) = stack.pop() {
                for &y in &succ[x] {
                    if !j_below[y][b] {
                        j_below[y][b] = true;
                        stack.push(y);
                    }
                }
            }
        }

        let idempotents = s.idempotents();
        let mut regular = vec![false; nj];
        for &e in &idempotents {
            regular[j_of[e]] = true;
        }

        Self {
            h_classes: classes_of(&h_of),
            d_classes: classes_of(&d_of),
            l_of,
            r_of,
            h_of,
            d_of,
            j_of,
            l_classes,
            r_classes,
            j_classes,
            j_below,
            regular,
            idempotents,
        }
    }

    pub fn l_class_of(&self, i: usize) -> usize {
        self.l_of[i]
    }
    pub fn r_class_of(&self, i: usize) -> usize {
        self.r_of[i]
    }
    pub fn h_class_of(&self, i: usize) -> usize {
        self.h_of[i]
    }
    pub fn d_class_of(&self, i: usize) -> usize {
        self.d_of[i]
    }
    pub fn j_class_of(&self, i: usize) -> usize {
        self.j_of[i]
    }

    pub fn l_classes(&self) -> &[Vec<usize>] {
        &self.l_classes
    }
    pub fn r_classes(&self) -> &[Vec<usize>] {
        &self.r_classes
    }
    pub fn h_classes(&self) -> &[Vec<usize>] {
        &self.h_classes
    }
    pub fn d_classes(&self) -> &[Vec<usize>] {
        &self.d_classes
    }
    pub fn j_classes(&self) -> &[Vec<usize>] {
        &self.j_classes
    }

    pub fn l_class(&self, i: usize) -> &[usize] {
        &self.l_classes[self.l_of[i]]
    }
    pub fn r_class(&self, i: usize) -> &[usize] {
        &self.r_classes[self.r_of[i]]
    }
    pub fn h_class(&self, i: usize) -> &[usize] {
        &self.h_classes[self.h_of[i]]
    }
    pub fn j_class(&self, i: usize) -> &[usize] {
        &self.j_classes[self.j_of[i]]
    }

    /// J-class `a` is contained in the two-sided ideal generated by class `b`.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.j_below[a][b]
    }

    /// Element `x` lies in the ideal S¹ y S¹.
    pub fn element_j_leq(&self, x: usize, y: usize) -> bool {
        self.j_below[self.j_of[x]][self.j_of[y]]
    }

    pub fn is_regular_class(&self, j: usize) -> bool {
        self.regular[j]
    }

    pub fn regular_flags(&self) -> &[bool] {
        &self.regular
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Whether the D partition coincides with the J partition.
    pub fn d_equals_j(&self) -> bool {
        self.d_of == self.j_of
    }

    /// The unique J-class below every other one.
    pub fn minimal_ideal(&self) -> usize {
        (0..self.j_classes.len())
            .find(|&a| (0..self.j_classes.len()).all(|b| self.j_below[a][b]))
            .expect("a finite semigroup has a minimal ideal")
    }

    /// Least-index idempotent of each regular J-class, by class id.
    pub fn idempotent_representatives(&self) -> Vec<usize> {
        (0..self.j_classes.len())
            .filter_map(|j| self.idempotents.iter().copied().find(|&e| self.j_of[e] == j))
            .collect()
    }

    /// Eggbox of a J-class: R-class ids (rows), L-class ids (columns), and
    /// the H-class id in each cell.
    pub fn eggbox(&self, j: usize) -> Eggbox {
        let mut rows = Vec::new();
        let mut cols = Vec::new();
        for &x in &self.j_classes[j] {
            if !rows.contains(&self.r_of[x]) {
                rows.push(self.r_of[x]);
            }
            if !cols.contains(&self.l_of[x]) {
                cols.push(self.l_of[x]);
            }
        }
        let cells = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&l| {
                        let x = self.j_classes[j]
                            .iter()
                            .copied()
                            .find(|&x| self.r_of[x] == r && self.l_of[x] == l)
                            .expect("D = J forces every cell to be nonempty");
                        self.h_of[x]
                    })
                    .collect()
            })
            .collect();
        Eggbox { j_class: j, rows, cols, cells }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eggbox {
    pub j_class: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub cells: Vec<Vec<usize>>,
}

/// Returns `tst` for the first `t` in element order with `sts = s`.
/// The witness `w` satisfies `sws = s` and `wsw = w`.
pub fn is_regular(s: &FiniteSemigroup, x: usize) -> Option<usize> {
    let t = (0..s.len()).find(|&t| s.multiply(s.multiply(x, t), x) == x)?;
    Some(s.multiply(s.multiply(t, x), t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    Null,
    ZeroSimple,
    SimpleMinimalIdeal,
}

/// A J-class together with the product that sends escaping products to 0.
#[derive(Clone, Debug)]
pub struct PrincipalFactor {
    pub j_class: Vec<usize>,
    pub has_zero: bool,
    pub kind: FactorKind,
    table: Vec<Vec<Option<usize>>>,
}

impl PrincipalFactor {
    /// Product of the `a`-th and `b`-th members (positions in `j_class`);
    /// `None` stands for zero.
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a][b]
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.j_class.iter().position(|&y| y == x)
    }
}

pub fn principal_factor(s: &FiniteSemigroup, g: &GreenStructure, x: usize) -> PrincipalFactor {
    let j = g.j_class_of(x);
    let members = g.j_classes()[j].clone();
    let table: Vec<Vec<Option<usize>>> = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .map(|&b| {
                    let p = s.multiply(a, b);
                    members.iter().position(|&m| m == p)
                })
                .collect()
        })
        .collect();
    let has_zero = table.iter().flatten().any(Option::is_none);
    let kind = if !g.is_regular_class(j) {
        FactorKind::Null
    } else if g.minimal_ideal() == j {
        FactorKind::SimpleMinimalIdeal
    } else {
        FactorKind::ZeroSimple
    };
    PrincipalFactor { j_class: members, has_zero, kind, table }
}
