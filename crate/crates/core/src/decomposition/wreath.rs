//! Wreath products of transformation semigroups.

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::transformation::Transformation;

/// `(X, S) wr (Y, T)` on states `x + |X| * y`, with `(x, y)(f, t) =
/// (x (y f), y t)`.
pub fn wreath_pair(s: &FiniteSemigroup, t: &FiniteSemigroup, bound: usize) -> Result<FiniteSemigroup> {
    let (nx, ny) = (s.degree(), t.degree());
    let size = (s.len() as f64).powi(ny as i32) * t.len() as f64;
    if size > bound as f64 {
        return Err(Error::BoundExceeded { what: "wreath product".into(), size: size.min(usize::MAX as f64) as usize, bound });
    }
    let mut elements = Vec::with_capacity(size as usize);
    let mut f = vec![0usize; ny];
    loop {
        for u in t.elements() {
            let images = (0..nx * ny)
                .map(|state| {
                    let (x, y) = (state % nx, state / nx);
                    s.element(f[y]).apply(x) + nx * u.apply(y)
                })
                .collect();
            elements.push(Transformation::new(images)?);
        }
        // Next function Y -> S in lexicographic order.
        let mut i = 0;
        while i < ny && f[i] + 1 == s.len() {
            f[i] = 0;
            i += 1;
        }
        if i == ny {
            break;
        }
        f[i] += 1;
    }
    FiniteSemigroup::from_elements(nx * ny, &elements, bound)
}

/// Iterated wreath product; the first component sits at the bottom
/// (its action depends on all later coordinates).
pub fn wreath(components: &[FiniteSemigroup], bound: usize) -> Result<FiniteSemigroup> {
    let (last, rest) = components.split_last().ok_or(Error::NoGenerators)?;
    rest.iter().rev().try_fold(last.clone(), |acc, c| wreath_pair(c, &acc, bound))
}
