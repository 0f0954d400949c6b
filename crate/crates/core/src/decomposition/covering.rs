//! Coverings (division data) between transformation semigroups and their
//! lift to distributions.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::stochastic::matrix::{random_distribution, Distribution};
use crate::stochastic::rational::Rational;
use crate::transformation::Transformation;

/// A surjective partial map `phi: Y -> X` together with, for every
/// generator `s` of S, a map `t` on Y with `phi s = t phi` on the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub phi: Vec<Option<usize>>,
    pub witnesses: Vec<Transformation>,
}

/// First failure found by [`verify_covering`], in generator-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoveringFailure {
    NotSurjective { missing: usize },
    WrongShape { detail: String },
    Square { y: usize, generator: usize },
}

impl Covering {
    pub fn identity(s: &FiniteSemigroup) -> Self {
        Self {
            phi: (0..s.degree()).map(Some).collect(),
            witnesses: s.generators().iter().map(|&g| s.element(g).clone()).collect(),
        }
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.phi.len()).filter(|&y| self.phi[y].is_some())
    }

    /// Witness on Y for an arbitrary element of S, as the product of the
    /// generator witnesses along its word.
    pub fn witness_of(&self, s: &FiniteSemigroup, element: usize) -> Transformation {
        let word = s.word(element);
        let mut t = self.witnesses[word[0]].clone();
        for &k in &word[1..] {
            t = t.then(&self.witnesses[k]);
        }
        t
    }

    /// Composite of `self: X <- Y` with `next: Y <- Z`, where `t` is the
    /// semigroup on Y generated by the maps whose witnesses `next` holds.
    pub fn compose(&self, t: &FiniteSemigroup, next: &Covering) -> Result<Covering> {
        let phi = next.phi.iter().map(|z| z.and_then(|y| self.phi[y])).collect();
        let witnesses = self
            .witnesses
            .iter()
            .map(|w| {
                let idx = t
                    .index_of(w)
                    .ok_or_else(|| Error::Covering("witness is not an element of the middle semigroup".into()))?;
                Ok(next.witness_of(t, idx))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Covering { phi, witnesses })
    }
}

/// Checks surjectivity and the commuting square for every generator.
pub fn verify_covering(cov: &Covering, s: &FiniteSemigroup) -> std::result::Result<(), CoveringFailure> {
    if cov.witnesses.len() != s.num_generators() {
        return Err(CoveringFailure::WrongShape {
            detail: format!("{} witnesses for {} generators", cov.witnesses.len(), s.num_generators()),
        });
    }
    if let Some(w) = cov.witnesses.iter().find(|w| w.degree() != cov.phi.len()) {
        return Err(CoveringFailure::WrongShape { detail: format!("witness of degree {}", w.degree()) });
    }
    let mut hit = vec![false; s.degree()];
    for x in cov.phi.iter().flatten() {
        if *x >= s.degree() {
            return Err(CoveringFailure::WrongShape { detail: format!("image {x} out of range") });
        }
        hit[*x] = true;
    }
    if let Some(missing) = hit.iter().position(|&h| !h) {
        return Err(CoveringFailure::NotSurjective { missing });
    }
    for (k, w) in cov.witnesses.iter().enumerate() {
        let g = s.element(s.generators()[k]);
        for y in cov.domain() {
            let x = cov.phi[y].expect("y is in the domain");
            if cov.phi[w.apply(y)] != Some(g.apply(x)) {
                return Err(CoveringFailure::Square { y, generator: k });
            }
        }
    }
    Ok(())
}

/// Pushes a distribution on Y (supported on the domain) to X.
pub fn push_distribution(cov: &Covering, pi: &Distribution, degree: usize) -> Result<Distribution> {
    let mut out = Vec::new();
    for (y, w) in pi.support() {
        let x = cov.phi[y].ok_or_else(|| Error::Covering(format!("mass on {y} outside the domain")))?;
        out.push((x, w.clone()));
    }
    Distribution::new(degree, out)
}

fn act_maps(pi: &Distribution, maps: &[(Transformation, Rational)]) -> Result<Distribution> {
    let mut out = Vec::new();
    for (y, p) in pi.support() {
        for (t, w) in maps {
            out.push((t.apply(y), p * w));
        }
    }
    Distribution::new(pi.base(), out)
}

/// A distribution on S lifted to the covering side: the mass of every
/// element is moved to its witness.
#[derive(Clone, Debug)]
pub struct LiftedDistribution {
    pub weights: Vec<(Transformation, Rational)>,
}

/// Lifts `mu` and checks `(pi phi) mu = (pi nu) phi` on every point mass of
/// the domain and on `extra` random distributions over the domain.
pub fn lift_covering<R: Rng + ?Sized>(
    cov: &Covering,
    s: &FiniteSemigroup,
    mu: &Distribution,
    rng: &mut R,
    extra: usize,
) -> Result<LiftedDistribution> {
    verify_covering(cov, s).map_err(|f| Error::Covering(format!("{f:?}")))?;
    let mut weights: Vec<(Transformation, Rational)> = Vec::new();
    for (e, w) in mu.support() {
        let t = cov.witness_of(s, e);
        match weights.iter_mut().find(|(u, _)| *u == t) {
            Some((_, acc)) => *acc += w,
            None => weights.push((t, w.clone())),
        }
    }
    let lifted = LiftedDistribution { weights };
    let domain: Vec<usize> = cov.domain().collect();
    let mut tests: Vec<Distribution> = domain.iter().map(|&y| Distribution::point(cov.phi.len(), y)).collect();
    for _ in 0..extra {
        let d = random_distribution(rng, domain.len(), 16);
        tests.push(d.pushforward(cov.phi.len(), |i| domain[i])?);
    }
    for pi in &tests {
        let left = crate::automata::act(s, &push_distribution(cov, pi, s.degree())?, mu)?;
        let right = push_distribution(cov, &act_maps(pi, &lifted.weights)?, s.degree())?;
        if left != right {
            return Err(Error::Covering(format!("distribution square fails at {pi:?}")));
        }
    }
    Ok(lifted)
}

/// Recovers generator witnesses from lifted point masses: for each
/// generator, some map in the support of its lift must make the square
/// commute on point masses.
pub fn witnesses_from_lifts(
    phi: &[Option<usize>],
    s: &FiniteSemigroup,
    lifts: &[LiftedDistribution],
) -> Result<Covering> {
    let mut witnesses = Vec::new();
    for (k, lift) in lifts.iter().enumerate() {
        let g = s.element(s.generators()[k]);
        let found = lift.weights.iter().map(|(t, _)| t).find(|t| {
            (0..phi.len()).all(|y| match phi[y] {
                Some(x) => phi[t.apply(y)] == Some(g.apply(x)),
                None => true,
            })
        });
        witnesses.push(found.cloned().ok_or_else(|| Error::Covering(format!("no witness for generator {k}")))?);
    }
    Ok(Covering { phi: phi.to_vec(), witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{flip_flop, full_transformation_monoid};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_covering_verifies() {
        let s = full_transformation_monoid(3).unwrap();
        assert_eq!(verify_covering(&Covering::identity(&s), &s), Ok(()));
    }

    #[test]
    fn wrong_witness_is_reported() {
        let s = flip_flop();
        let mut cov = Covering::identity(&s);
        cov.witnesses[0] = Transformation::identity(2);
        assert_eq!(verify_covering(&cov, &s), Err(CoveringFailure::Square { y: 1, generator: 0 }));
        cov.phi = vec![Some(0), Some(0)];
        assert_eq!(verify_covering(&cov, &s), Err(CoveringFailure::NotSurjective { missing: 1 }));
    }

    #[test]
    fn lift_and_recover() {
        let s = flip_flop();
        let cov = Covering::identity(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mu = Distribution::uniform(s.len(), &[0, 1]).unwrap();
        let lifted = lift_covering(&cov, &s, &mu, &mut rng, 10).unwrap();
        assert_eq!(lifted.weights.len(), 2);
        let lifts: Vec<LiftedDistribution> = (0..s.num_generators())
            .map(|k| lift_covering(&cov, &s, &Distribution::point(s.len(), s.generators()[k]), &mut rng, 0).unwrap())
            .collect();
        assert_eq!(witnesses_from_lifts(&cov.phi, &s, &lifts).unwrap(), cov);
    }

    #[test]
    fn lifted_weights_follow_witnesses() {
        let s = flip_flop();
        let cov = Covering::identity(&s);
        let mu = Distribution::new(s.len(), [(0, crate::stochastic::rational::frac(1, 3)), (2, crate::stochastic::rational::frac(2, 3))]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let lifted = lift_covering(&cov, &s, &mu, &mut rng, 3).unwrap();
        for (t, w) in &lifted.weights {
            assert_eq!(*w, mu.weight(s.index_of(t).unwrap()));
        }
    }
}
