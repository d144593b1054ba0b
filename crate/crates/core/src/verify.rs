//! Consistency checks on complete censuses.
//!
//! Signed permutations act on the `2^(n(n−1)/2)` Seidel matrices of order
//! `n`, with `±I` acting trivially. Summing orbit sizes over a full census
//! gives `Σ n!·2^n/|Aut(S)| = 2^(n(n−1)/2)`, i.e.
//! `Σ 1/|Aut(S)| = 2^(n(n−3)/2)/n!`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::census::check_single_order;
use crate::colored::aut_order;
use crate::error::{Error, Result};
use crate::matrix::SeidelMatrix;

/// Whether a census holds every class of its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Full,
    /// Pruned or sharded; the string says how.
    Partial(String),
}

/// Both sides of the mass formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassCheck {
    pub order: usize,
    pub classes: usize,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl MassCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for MassCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} = {} {verdict}", self.lhs, self.rhs)
    }
}

/// `n!·2^n`, the number of signed permutations.
pub fn group_order(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k) << n
}

/// The exact right-hand side `2^(n(n−3)/2)/n!` (reduced; for `n < 3` the
/// exponent is negative).
pub fn expected_mass(n: usize) -> BigRational {
    let total = BigInt::one() << (n * n.saturating_sub(1) / 2);
    BigRational::new(total, BigInt::from(group_order(n)))
}

/// `Σ 1/|Aut(S)|` over a census compared with `2^(n(n−3)/2)/n!`.
pub fn mass_check(census: &[SeidelMatrix], coverage: &Coverage) -> Result<MassCheck> {
    if let Coverage::Partial(why) = coverage {
        return Err(Error::Census(format!("the mass formula needs a full census, this one is {why}")));
    }
    check_single_order(census)?;
    let n = census
        .first()
        .map(SeidelMatrix::order)
        .ok_or_else(|| Error::Census("empty census".into()))?;
    let g = group_order(n);
    // integer numerators over the common denominator n!·2^n
    let sum = census
        .par_iter()
        .map(|s| {
            let a = aut_order(s);
            let (q, r) = g.div_rem(&a);
            assert!(r.is_zero(), "|Aut| = {a} does not divide {g}");
            q
        })
        .reduce(BigUint::zero, |a, b| a + b);
    Ok(MassCheck {
        order: n,
        classes: census.len(),
        lhs: BigRational::new(BigInt::from(sum), BigInt::from(g)),
        rhs: expected_mass(n),
    })
}

/// Number of classes for each automorphism group order.
pub fn aut_histogram(census: &[SeidelMatrix]) -> BTreeMap<BigUint, u64> {
    let orders: Vec<BigUint> = census.par_iter().map(aut_order).collect();
    let mut h = BTreeMap::new();
    for a in orders {
        *h.entry(a).or_insert(0) += 1;
    }
    h
}
