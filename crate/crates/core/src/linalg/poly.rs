//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `c_0 + c_1·x + … + c_d·x^d` with `c_d ≠ 0`; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`.
    pub fn linear(r: i64) -> Self {
        Self::from_i64s(&[-r, 1])
    }

    /// Monic polynomial with the given integer roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots
            .iter()
            .fold(Self::from_i64s(&[1]), |acc, &r| acc.mul(&Self::linear(r)))
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_i64s(&[1]), |acc, _| acc.mul(self))
    }

    /// Gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) · self mod d`.
    /// Panics if `d` is zero.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut steps = (self.coeffs.len() + 1).saturating_sub(dd + 1);
        while r.len() > dd && !r.is_empty() {
            steps -= 1;
            let k = r.len() - 1;
            let top = r[k].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &top * dc;
            }
            debug_assert!(r[k].is_zero());
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let scale = num_traits::pow(lc, steps);
        Self::new(r.into_iter().map(|c| c * &scale).collect())
    }

    /// Exact quotient by `d`; `None` if `d` does not divide `self` over the
    /// integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() < dd + 1 {
            return if r.is_empty() { Some(Self::zero()) } else { None };
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let (qk, rem) = r[k].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + i] -= &qk * dc;
            }
            q[k - dd] = qk;
        }
        r.iter().all(Zero::is_zero).then(|| Self::new(q))
    }
}

/// Greatest common divisor via the primitive pseudo-remainder sequence,
/// normalized to be primitive with positive leading coefficient.
pub fn poly_gcd(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    let mut a = p.primitive_part();
    let mut b = q.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Space-separated ascending coefficients, `0` for the zero polynomial.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[-2, -3, 0, 1]).derivative(), p(&[-3, 0, 3]));
        assert!(p(&[7]).derivative().is_zero());
        assert!(IntPolynomial::zero().derivative().is_zero());
    }

    #[test]
    fn derivative_is_linear() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..100 {
            let a: Vec<i64> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(-9..=9)).collect();
            let b: Vec<i64> = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(-9..=9)).collect();
            let k = BigInt::from(rng.gen_range(-5..=5));
            let (a, b) = (p(&a), p(&b));
            assert_eq!(
                a.scale(&k).add(&b).derivative(),
                a.derivative().scale(&k).add(&b.derivative())
            );
        }
    }

    #[test]
    fn gcd_examples() {
        let f = p(&[-2, -3, 0, 1]);
        assert_eq!(poly_gcd(&f, &f.derivative()), p(&[1, 1]));
        assert_eq!(poly_gcd(&p(&[4, -6, -2]), &IntPolynomial::zero()), p(&[-2, 3, 1]));
        assert_eq!(poly_gcd(&IntPolynomial::zero(), &p(&[0, 5])), p(&[0, 1]));
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn gcd_degree_matches_repeated_root_count() {
        // For a product of linear factors, deg gcd(f, f') counts roots with
        // multiplicity minus the number of distinct roots.
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(1..=9);
            let roots: Vec<i64> = (0..k).map(|_| rng.gen_range(-4..=4)).collect();
            let f = IntPolynomial::from_roots(&roots);
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            let g = poly_gcd(&f, &f.derivative());
            assert_eq!(g.degree().unwrap(), k - distinct.len(), "{roots:?}");
        }
    }

    #[test]
    fn pseudo_remainder_and_exact_division() {
        let f = IntPolynomial::from_roots(&[1, 2, 3]);
        let g = IntPolynomial::from_roots(&[2, 3]);
        assert!(f.pseudo_rem(&g).is_zero());
        assert_eq!(f.div_exact(&g).unwrap(), p(&[-1, 1]));
        assert!(f.div_exact(&p(&[0, 2])).is_none());
        assert_eq!(p(&[1, 0, 1]).pseudo_rem(&p(&[0, 2])), p(&[4]));
    }

    #[test]
    fn eval_and_display() {
        let f = p(&[-2, -3, 0, 1]);
        assert_eq!(f.eval(&BigInt::from(2)), BigInt::zero());
        assert_eq!(f.eval(&BigInt::from(-1)), BigInt::zero());
        assert_eq!(f.to_string(), "-2 -3 0 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
