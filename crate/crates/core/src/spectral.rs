//! Exact spectral predicates on Seidel matrices.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, charpoly_fl, poly_gcd, IntMatrix, IntPolynomial};
use crate::matrix::SeidelMatrix;

/// `det(λI − S)`, with the trace identities asserted.
pub fn charpoly(s: &SeidelMatrix) -> IntPolynomial {
    let n = s.order();
    let p = charpoly_fl(&s.to_int_matrix(0));
    if n >= 2 {
        assert!(p.coeff(n - 1).is_zero(), "nonzero trace coefficient");
        assert_eq!(
            p.coeff(n - 2),
            BigInt::from(-((n * (n - 1) / 2) as i64)),
            "trace of S² must be n(n-1)"
        );
    }
    p
}

/// Number of distinct roots of a polynomial with only real roots:
/// `deg p − deg gcd(p, p′)`.
pub fn distinct_roots(p: &IntPolynomial) -> usize {
    let d = p.degree().unwrap_or(0);
    let g = poly_gcd(p, &p.derivative());
    d - g.degree().unwrap_or(0)
}

pub fn distinct_eigenvalue_count(s: &SeidelMatrix) -> usize {
    distinct_roots(&charpoly(s))
}

/// Whether a real-rooted monic polynomial has no negative root, i.e. its
/// coefficients alternate in sign.
pub fn alternates_in_sign(p: &IntPolynomial) -> bool {
    let n = p.degree().unwrap_or(0);
    (0..=n).all(|i| {
        let c = p.coeff(i);
        if (n - i).is_multiple_of(2) {
            !c.is_negative()
        } else {
            !c.is_positive()
        }
    })
}

/// Positive semidefiniteness of a symmetric matrix from its characteristic
/// polynomial.
pub fn is_psd(a: &IntMatrix) -> bool {
    assert!(a.is_symmetric(), "is_psd needs a symmetric matrix");
    alternates_in_sign(&charpoly_fl(a))
}

pub use crate::linalg::is_pd_sylvester;

/// All eigenvalues of `S` lie strictly between `lo/100` and `hi/100`.
pub fn in_interval_open(s: &SeidelMatrix, lo_times_100: i64, hi_times_100: i64) -> bool {
    above(s, lo_times_100) && above(&s.negated(), -hi_times_100)
}

/// `λ_min(S) > x/100`, bracketed by integer shifts before falling back to
/// Sylvester's criterion on `100·S − x·I`.
fn above(s: &SeidelMatrix, x: i64) -> bool {
    let (fl, ce) = (x.div_euclid(100), -(-x).div_euclid(100));
    if fl == ce {
        // λ_min > x/100 iff S − (x/100)I is positive definite
        return linalg::is_pd_fast(&s.to_int_matrix(-fl));
    }
    // λ_min ≥ ⌈x/100⌉ suffices; λ_min < ⌊x/100⌋ refutes.
    if linalg::is_psd_elimination(&s.to_int_matrix(-ce)) {
        return true;
    }
    if !linalg::is_psd_elimination(&s.to_int_matrix(-fl)) {
        return false;
    }
    is_pd_sylvester(&s.to_int_matrix(0).scaled(100).shifted(-x))
}

/// Multiplicity of the integer `r` as an eigenvalue: `n − rank(S − rI)`.
pub fn multiplicity_int(s: &SeidelMatrix, r: i64) -> usize {
    s.order() - linalg::rank(&s.to_int_matrix(-r))
}

/// Whether `x² − px + q` has two distinct irrational roots.
pub fn is_irreducible_quadratic(p: i64, q: i64) -> bool {
    crate::spectrum::irreducible(p, q)
}

/// Common multiplicity of the two roots of `x² − px + q`:
/// `deg gcd(p_S, (x² − px + q)^⌊n/2⌋) / 2`.
pub fn multiplicity_quad(s: &SeidelMatrix, p: i64, q: i64) -> Result<usize> {
    if !is_irreducible_quadratic(p, q) {
        return Err(Error::InvalidArgument(format!(
            "x^2 - ({p})x + ({q}) is not an irreducible quadratic"
        )));
    }
    Ok(quad_multiplicity_in(&charpoly(s), p, q))
}

pub(crate) fn quad_multiplicity_in(cp: &IntPolynomial, p: i64, q: i64) -> usize {
    let n = cp.degree().unwrap_or(0);
    let quad = IntPolynomial::from_i64s(&[q, -p, 1]);
    let g = poly_gcd(cp, &quad.pow((n / 2) as u32));
    g.degree().unwrap_or(0) / 2
}

/// Compares `λ_min(S)` with `x`.
pub fn lambda_min_class(s: &SeidelMatrix, x: i64) -> Ordering {
    let m = s.to_int_matrix(-x);
    if !linalg::is_psd_elimination(&m) {
        Ordering::Less
    } else if linalg::rank(&m) < s.order() {
        Ordering::Equal
    } else {
        Ordering::Greater
    }
}

/// Summary of a cospectrality census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CospectralStats {
    pub distinct_polys: u64,
    pub with_mate: u64,
    pub max_family: u64,
}

/// Groups a census by characteristic polynomial. With `shard_prime`, the
/// census is processed one residue class of `|det S| mod p` at a time, so
/// only one shard's polynomials are held in memory.
pub fn cospectral_census(census: &[SeidelMatrix], shard_prime: Option<u64>) -> CospectralStats {
    let mut stats = CospectralStats::default();
    let mut absorb = |groups: HashMap<IntPolynomial, u64>| {
        for (_, c) in groups {
            stats.distinct_polys += 1;
            if c > 1 {
                stats.with_mate += c;
            }
            stats.max_family = stats.max_family.max(c);
        }
    };
    match shard_prime {
        None => {
            let mut groups = HashMap::new();
            for s in census {
                *groups.entry(charpoly(s)).or_insert(0) += 1;
            }
            absorb(groups);
        }
        Some(p) => {
            let keys: Vec<u64> = census.iter().map(|s| det_residue(s, p)).collect();
            for r in 0..p {
                let mut groups = HashMap::new();
                for (s, _) in census.iter().zip(&keys).filter(|&(_, &k)| k == r) {
                    *groups.entry(charpoly(s)).or_insert(0) += 1;
                }
                absorb(groups);
            }
        }
    }
    stats
}

/// `|det S| mod p`.
pub fn det_residue(s: &SeidelMatrix, p: u64) -> u64 {
    let d = linalg::det_bareiss(&s.to_int_matrix(0));
    (d.abs() % BigInt::from(p)).to_u64().expect("residue fits")
}
