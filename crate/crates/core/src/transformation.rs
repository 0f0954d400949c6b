//! Total maps on `{0, .., n-1}` acting on the right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total map on `n` points. `images[i]` is the image of point `i`.
///
/// Composition follows the right-action convention: `s.then(t)` maps `x` to
/// `(x s) t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transformation {
    images: Vec<usize>,
}

impl Transformation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if let Some(&image) = images.iter().find(|&&x| x >= degree) {
            return Err(Error::ImageOutOfRange { image, degree });
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    pub fn constant(degree: usize, point: usize) -> Self {
        assert!(point < degree);
        Self { images: vec![point; degree] }
    }

    /// The permutation swapping `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Self { images }
    }

    /// The cycle `0 -> 1 -> .. -> n-1 -> 0`.
    pub fn cycle(degree: usize) -> Self {
        Self { images: (0..degree).map(|i| (i + 1) % degree).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        debug_assert_eq!(self.degree(), other.degree());
        Transformation { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        for &x in &self.images {
            if seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&x| self.images[x] == x)
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        self.images.iter().filter(|&&x| !std::mem::replace(&mut seen[x], true)).count()
    }

    /// Image of the subset encoded as a bit mask.
    pub fn image_of_set(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = set;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1u64 << self.images[i];
        }
        out
    }

    /// The 0/1 row-monomial matrix of the map.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.degree();
        (0..n)
            .map(|i| (0..n).map(|j| u8::from(self.images[i] == j)).collect())
            .collect()
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// All `n^n` maps on `n` points in lexicographic order of image sequences.
pub fn all_maps(degree: usize) -> Vec<Transformation> {
    let total = degree.pow(degree as u32);
    (0..total)
        .map(|mut code| {
            let mut images = vec![0; degree];
            for slot in images.iter_mut().rev() {
                *slot = code % degree;
                code /= degree;
            }
            Transformation { images }
        })
        .collect()
}
