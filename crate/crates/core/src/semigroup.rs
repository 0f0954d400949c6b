//! Finite transformation semigroups generated by a set of maps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Default ceiling on the number of elements a closure may reach.
pub const DEFAULT_SIZE_BOUND: usize = 200_000;

/// A semigroup of maps on `degree` points, closed under composition.
///
/// Elements are numbered in breadth-first order of their shortest generator
/// word (shortlex), so the numbering depends only on the generator sequence.
#[derive(Clone, Debug)]
pub struct FiniteSemigroup {
    degree: usize,
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
    generators: Vec<usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
}

impl FiniteSemigroup {
    /// Closure of `generators` under composition.
    pub fn generate(degree: usize, generators: &[Transformation]) -> Result<Self> {
        Self::generate_bounded(degree, generators, DEFAULT_SIZE_BOUND)
    }

    pub fn generate_bounded(
        degree: usize,
        generators: &[Transformation],
        bound: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let mut gens: Vec<Transformation> = Vec::new();
        for g in generators {
            if !gens.contains(g) {
                gens.push(g.clone());
            }
        }

        let mut elements: Vec<Transformation> = Vec::new();
        let mut index = HashMap::new();
        let mut words = Vec::new();
        let mut parent = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            index.insert(g.clone(), elements.len());
            elements.push(g.clone());
            words.push(vec![k]);
            parent.push(None);
        }
        let generator_ids: Vec<usize> = (0..gens.len()).collect();

        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut next = 0;
        while next < elements.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (k, g) in gens.iter().enumerate() {
                let product = elements[next].then(g);
                let id = match index.get(&product) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= bound {
                            return Err(Error::BoundExceeded {
                                what: "semigroup closure".into(),
                                size: id + 1,
                                bound,
                            });
                        }
                        let mut word = words[next].clone();
                        word.push(k);
                        index.insert(product.clone(), id);
                        elements.push(product);
                        words.push(word);
                        parent.push(Some((next, k)));
                        id
                    }
                };
                row.push(id);
            }
            right.push(row);
            next += 1;
        }

        let left = elements
            .iter()
            .map(|s| gens.iter().map(|g| index[&g.then(s)]).collect())
            .collect();

        Ok(Self { degree, elements, index, generators: generator_ids, right, left, words, parent })
    }

    /// The semigroup whose elements are exactly `elements`, generated by a
    /// greedily chosen subset (in input order). Fails if the set is not
    /// closed under composition.
    pub fn from_elements(degree: usize, elements: &[Transformation], bound: usize) -> Result<Self> {
        let mut gens: Vec<Transformation> = Vec::new();
        let mut closure: Option<FiniteSemigroup> = None;
        for t in elements {
            if closure.as_ref().is_some_and(|c| c.index_of(t).is_some()) {
                continue;
            }
            gens.push(t.clone());
            closure = Some(Self::generate_bounded(degree, &gens, bound)?);
        }
        let closure = closure.ok_or(Error::NoGenerators)?;
        let wanted: std::collections::HashSet<&Transformation> = elements.iter().collect();
        if closure.len() != wanted.len() || closure.elements.iter().any(|t| !wanted.contains(t)) {
            return Err(Error::Invariant("element set is not closed under composition".into()));
        }
        Ok(closure)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Element indices of the (deduplicated) generators, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Index of `s_i * g_k`.
    pub fn right_mul_gen(&self, i: usize, k: usize) -> usize {
        self.right[i][k]
    }

    /// Index of `g_k * s_i`.
    pub fn left_mul_gen(&self, i: usize, k: usize) -> usize {
        self.left[i][k]
    }

    pub fn right_table(&self) -> &[Vec<usize>] {
        &self.right
    }

    pub fn left_table(&self) -> &[Vec<usize>] {
        &self.left
    }

    /// Shortest generator word (as generator positions) evaluating to element `i`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// `Some((j, k))` when element `i` was first reached as `s_j * g_k`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Index of `s_i * s_j`.
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.words[j].iter().fold(i, |cur, &k| self.right[cur][k])
    }

    /// Index of a product of a map already known to lie in the semigroup.
    pub fn product_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Evaluates a generator word.
    pub fn evaluate(&self, word: &[usize]) -> Option<usize> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(self.generators[first], |cur, &k| self.right[cur][k]))
    }

    /// Full Cayley table; intended for small semigroups.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.multiply(i, j)).collect()).collect()
    }

    pub fn is_idempotent(&self, i: usize) -> bool {
        self.elements[i].is_idempotent()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_idempotent(i)).collect()
    }

    /// Index of the identity element of the abstract semigroup, if it has one.
    /// This need not be the identity map (e.g. a single constant map).
    pub fn identity(&self) -> Option<usize> {
        (0..self.len()).find(|&e| {
            (0..self.generators.len())
                .all(|k| self.right[e][k] == self.generators[k] && self.left[e][k] == self.generators[k])
        })
    }

    pub fn is_monoid(&self) -> bool {
        self.identity().is_some()
    }

    /// Index of the identity map, if it belongs to the semigroup.
    pub fn identity_map(&self) -> Option<usize> {
        self.index_of(&Transformation::identity(self.degree))
    }

    pub fn is_group(&self) -> bool {
        self.elements.iter().all(Transformation::is_permutation)
    }

    pub fn to_json(&self) -> SemigroupJson {
        SemigroupJson {
            degree: self.degree,
            elements: self.elements.iter().map(|t| t.images().to_vec()).collect(),
            generators: self.generators.clone(),
            words: self.words.clone(),
        }
    }
}

/// Serialized form: element image arrays, generator element indices, and
/// shortest generator words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub degree: usize,
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    pub words: Vec<Vec<usize>>,
}

/// Semigroup of all maps on `n` points, generated by a transposition, an
/// `n`-cycle and a rank `n-1` idempotent.
pub fn full_transformation_monoid(n: usize) -> Result<FiniteSemigroup> {
    let mut gens = vec![Transformation::identity(n)];
    if n >= 2 {
        gens = vec![Transformation::transposition(n, 0, 1), Transformation::cycle(n)];
        let mut collapse: Vec<usize> = (0..n).collect();
        collapse[1] = 0;
        gens.push(Transformation::new(collapse)?);
    }
    FiniteSemigroup::generate(n, &gens)
}

/// Symmetric group on `n` points.
pub fn symmetric_group(n: usize) -> Result<FiniteSemigroup> {
    if n == 1 {
        return FiniteSemigroup::generate(1, &[Transformation::identity(1)]);
    }
    FiniteSemigroup::generate(n, &[Transformation::transposition(n, 0, 1), Transformation::cycle(n)])
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic_group(n: usize) -> Result<FiniteSemigroup> {
    FiniteSemigroup::generate(n, &[Transformation::cycle(n)])
}

/// The flip-flop monoid: identity and both constants on two points.
pub fn flip_flop() -> FiniteSemigroup {
    FiniteSemigroup::generate(
        2,
        &[
            Transformation::constant(2, 0),
            Transformation::constant(2, 1),
            Transformation::identity(2),
        ],
    )
    .expect("flip-flop generators are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transformation::all_maps;

    #[test]
    fn swap_generates_c2() {
        let s = FiniteSemigroup::generate(2, &[Transformation::new(vec![1, 0]).unwrap()]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.element(1), &Transformation::identity(2));
        assert_eq!(s.word(1), &[0, 0]);
    }

    #[test]
    fn constant_is_singleton() {
        let s = FiniteSemigroup::generate(2, &[Transformation::constant(2, 0)]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.identity(), Some(0));
        assert_eq!(s.identity_map(), None);
    }

    #[test]
    fn full_transformation_monoid_of_three_points() {
        let s = full_transformation_monoid(3).unwrap();
        assert_eq!(s.len(), 27);
        for m in all_maps(3) {
            assert!(s.index_of(&m).is_some(), "{m:?} missing");
        }
    }

    #[test]
    fn words_evaluate_and_are_shortlex() {
        let s = full_transformation_monoid(3).unwrap();
        for i in 0..s.len() {
            assert_eq!(s.evaluate(s.word(i)), Some(i));
        }
        for i in 1..s.len() {
            let (a, b) = (s.word(i - 1), s.word(i));
            assert!(a.len() < b.len() || (a.len() == b.len() && a < b));
        }
    }

    #[test]
    fn tables_agree_with_composition() {
        let s = full_transformation_monoid(3).unwrap();
        for i in 0..s.len() {
            for j in 0..s.len() {
                let p = s.element(i).then(s.element(j));
                assert_eq!(s.element(s.multiply(i, j)), &p);
            }
        }
    }

    #[test]
    fn zero_degree_rejected() {
        assert_eq!(FiniteSemigroup::generate(0, &[]).unwrap_err(), Error::ZeroDegree);
        assert_eq!(FiniteSemigroup::generate(2, &[]).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn bound_is_enforced() {
        let err = FiniteSemigroup::generate_bounded(
            3,
            &[Transformation::transposition(3, 0, 1), Transformation::cycle(3)],
            4,
        )
        .unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
    }
}
