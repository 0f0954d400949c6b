//! Prime divisors read off the holonomy decomposition.

use serde::Serialize;

use super::holonomy::HolonomyDecomposition;
use crate::error::Result;
use crate::group::{GroupTable, SimpleFactor, DEFAULT_GROUP_BOUND};

/// Simple groups (with multiplicity, sorted) and the number of flip-flop
/// copies needed for the constant maps of every paving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeFactors {
    pub groups: Vec<SimpleFactor>,
    pub flip_flops: usize,
}

/// Copies of the flip-flop into whose product the monoid of `bricks`
/// constants plus identity embeds (binary encoding of the constants).
pub fn flip_flop_units(bricks: usize) -> usize {
    (usize::BITS - (bricks.max(1) - 1).leading_zeros()) as usize
}

pub fn prime_factors(hd: &HolonomyDecomposition) -> Result<PrimeFactors> {
    let mut groups = Vec::new();
    let mut flip_flops = 0;
    for level in &hd.levels {
        for rep in &level.reps {
            let table = GroupTable::from_permutations(&rep.group)?;
            groups.extend(table.composition_series(DEFAULT_GROUP_BOUND)?);
            flip_flops += flip_flop_units(rep.bricks.len());
        }
    }
    groups.sort();
    Ok(PrimeFactors { groups, flip_flops })
}

#[cfg(test)]
mod tests {
    use super::super::holonomy::holonomy_decompose;
    use super::*;
    use crate::semigroup::{cyclic_group, flip_flop, full_transformation_monoid};

    fn names(p: &PrimeFactors) -> Vec<&str> {
        p.groups.iter().map(|f| f.name.as_str()).collect()
    }

    #[test]
    fn units() {
        assert_eq!([2, 3, 4, 5, 8, 9].map(flip_flop_units), [1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn flip_flop_is_prime() {
        let p = prime_factors(&holonomy_decompose(&flip_flop()).unwrap()).unwrap();
        assert!(p.groups.is_empty());
        assert_eq!(p.flip_flops, 1);
    }

    #[test]
    fn c6_and_f3() {
        let p = prime_factors(&holonomy_decompose(&cyclic_group(6).unwrap()).unwrap()).unwrap();
        assert_eq!(names(&p), ["C2", "C3"]);
        assert_eq!(p.flip_flops, 3);
        let p = prime_factors(&holonomy_decompose(&full_transformation_monoid(3).unwrap()).unwrap()).unwrap();
        assert_eq!(names(&p), ["C2", "C2", "C3"]);
        assert_eq!(p.flip_flops, 1 + 2);
    }
}
