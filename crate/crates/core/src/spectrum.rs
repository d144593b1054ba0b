//! Exact spectra made of integer eigenvalues and conjugate quadratic pairs.
//!
//! Text form: comma-separated terms `[r]^m` (integer root `r` with
//! multiplicity `m`) and `Q(p,q)^m` (both roots of `x² − px + q`, each with
//! multiplicity `m`), e.g. `[-3]^2,[1]^3,[3]^1` or `[0]^1,Q(0,-5)^2`.

use std::fmt;
use std::str::FromStr;

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::linalg::IntPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraicEigenvalue {
    Int(i64),
    /// Both roots of `x² − px + q`, which is irreducible over the rationals.
    QuadPair { p: i64, q: i64 },
}

use AlgebraicEigenvalue::{Int, QuadPair};

fn discriminant(p: i64, q: i64) -> i128 {
    p as i128 * p as i128 - 4 * q as i128
}

pub(crate) fn irreducible(p: i64, q: i64) -> bool {
    let d = discriminant(p, q);
    d > 0 && d.sqrt().pow(2) != d
}

impl AlgebraicEigenvalue {
    pub fn quad(p: i64, q: i64) -> Result<Self> {
        if irreducible(p, q) {
            Ok(QuadPair { p, q })
        } else {
            Err(Error::InvalidArgument(format!("x^2 - ({p})x + ({q}) is reducible")))
        }
    }

    /// Number of roots represented: 1 or 2.
    pub fn degree(&self) -> usize {
        match self {
            Int(_) => 1,
            QuadPair { .. } => 2,
        }
    }

    pub fn min_poly(&self) -> IntPolynomial {
        match *self {
            Int(r) => IntPolynomial::linear(r),
            QuadPair { p, q } => IntPolynomial::from_i64s(&[q, -p, 1]),
        }
    }

    /// Sum of the represented roots.
    pub fn root_sum(&self) -> i128 {
        match *self {
            Int(r) => r as i128,
            QuadPair { p, .. } => p as i128,
        }
    }

    /// Sum of squares of the represented roots.
    pub fn root_square_sum(&self) -> i128 {
        match *self {
            Int(r) => r as i128 * r as i128,
            QuadPair { p, q } => p as i128 * p as i128 - 2 * q as i128,
        }
    }

    /// Product of the represented roots.
    pub fn root_product(&self) -> i128 {
        match *self {
            Int(r) => r as i128,
            QuadPair { q, .. } => q as i128,
        }
    }

    pub fn negated(&self) -> Self {
        match *self {
            Int(r) => Int(-r),
            QuadPair { p, q } => QuadPair { p: -p, q },
        }
    }

    /// `(⌊100·min root⌋, ⌈100·max root⌉)`.
    pub fn bounds_times_100(&self) -> (i64, i64) {
        match *self {
            Int(r) => (100 * r, 100 * r),
            QuadPair { p, q } => {
                // 100·(p ± √D)/2 = 50p ± √(2500·D), never an integer
                let s = (2500 * discriminant(p, q)).sqrt() as i64;
                (50 * p - s - 1, 50 * p + s + 1)
            }
        }
    }

    /// Floating approximations of the smallest and largest root, for
    /// ordering and display only.
    pub fn approx(&self) -> (f64, f64) {
        match *self {
            Int(r) => (r as f64, r as f64),
            QuadPair { p, q } => {
                let s = (discriminant(p, q) as f64).sqrt();
                ((p as f64 - s) / 2.0, (p as f64 + s) / 2.0)
            }
        }
    }
}

impl fmt::Display for AlgebraicEigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int(r) => write!(f, "[{r}]"),
            QuadPair { p, q } => write!(f, "Q({p},{q})"),
        }
    }
}

/// A multiset of eigenvalues satisfying the trace identities of a Seidel
/// matrix: roots sum to 0 and their squares sum to `n(n − 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpectrumSpec {
    terms: Vec<(AlgebraicEigenvalue, usize)>,
}

impl SpectrumSpec {
    pub fn new(terms: Vec<(AlgebraicEigenvalue, usize)>) -> Result<Self> {
        let bad = |m: String| Err(Error::SpectrumParse(m));
        if terms.is_empty() {
            return bad("empty spectrum".into());
        }
        for (i, &(e, m)) in terms.iter().enumerate() {
            if m == 0 {
                return bad(format!("{e} has multiplicity 0"));
            }
            if let QuadPair { p, q } = e {
                if !irreducible(p, q) {
                    return bad(format!("{e} is not an irreducible quadratic"));
                }
            }
            if terms[..i].iter().any(|&(f, _)| f == e) {
                return bad(format!("{e} listed twice"));
            }
        }
        let s = SpectrumSpec { terms };
        let n = s.order() as i128;
        let tr: i128 = s.terms.iter().map(|&(e, m)| e.root_sum() * m as i128).sum();
        let tr2: i128 = s.terms.iter().map(|&(e, m)| e.root_square_sum() * m as i128).sum();
        if tr != 0 {
            return bad(format!("{s}: eigenvalues sum to {tr}, not 0"));
        }
        if tr2 != n * (n - 1) {
            return bad(format!("{s}: squares sum to {tr2}, not {}", n * (n - 1)));
        }
        Ok(s)
    }

    pub fn terms(&self) -> &[(AlgebraicEigenvalue, usize)] {
        &self.terms
    }

    /// Matrix order: the multiplicities, quadratic pairs counted twice.
    pub fn order(&self) -> usize {
        self.terms.iter().map(|&(e, m)| e.degree() * m).sum()
    }

    /// Number of distinct eigenvalues.
    pub fn distinct_count(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.degree()).sum()
    }

    pub fn charpoly(&self) -> IntPolynomial {
        self.terms
            .iter()
            .fold(IntPolynomial::from_i64s(&[1]), |acc, &(e, m)| acc.mul(&e.min_poly().pow(m as u32)))
    }

    /// Determinant as the product of roots.
    pub fn determinant(&self) -> num_bigint::BigInt {
        self.terms.iter().fold(num_bigint::BigInt::from(1), |acc, &(e, m)| {
            acc * num_traits::pow(num_bigint::BigInt::from(e.root_product()), m)
        })
    }

    /// The spectrum of `−S`.
    pub fn negated(&self) -> Self {
        SpectrumSpec {
            terms: self.terms.iter().map(|&(e, m)| (e.negated(), m)).collect(),
        }
    }

    /// Terms reordered by increasing smallest root.
    pub fn sorted(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| a.0.approx().0.total_cmp(&b.0.approx().0));
        SpectrumSpec { terms }
    }

    pub fn multiplicity(&self, e: AlgebraicEigenvalue) -> usize {
        self.terms.iter().find(|t| t.0 == e).map_or(0, |t| t.1)
    }

    /// `(⌊100·λ_min⌋, ⌈100·λ_max⌉)`.
    pub fn bounds_times_100(&self) -> (i64, i64) {
        let lo = self.terms.iter().map(|t| t.0.bounds_times_100().0).min().unwrap();
        let hi = self.terms.iter().map(|t| t.0.bounds_times_100().1).max().unwrap();
        (lo, hi)
    }
}

impl fmt::Display for SpectrumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}^{m}")?;
        }
        Ok(())
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.s.get(self.at).is_some_and(u8::is_ascii_whitespace) {
            self.at += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.at) == Some(&c) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.at).copied()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.at;
        if matches!(self.s.get(self.at), Some(b'-' | b'+')) {
            self.at += 1;
        }
        while self.s.get(self.at).is_some_and(u8::is_ascii_digit) {
            self.at += 1;
        }
        std::str::from_utf8(&self.s[start..self.at])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn error(&self, what: &str) -> Error {
        Error::SpectrumParse(format!("{what} at byte {}", self.at))
    }
}

impl FromStr for SpectrumSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut c = Cursor { s: text.as_bytes(), at: 0 };
        let mut terms = Vec::new();
        loop {
            let e = match c.peek() {
                Some(b'[') => {
                    c.eat(b'[')?;
                    let r = c.int()?;
                    c.eat(b']')?;
                    Int(r)
                }
                Some(b'Q') => {
                    c.eat(b'Q')?;
                    c.eat(b'(')?;
                    let p = c.int()?;
                    c.eat(b',')?;
                    let q = c.int()?;
                    c.eat(b')')?;
                    QuadPair { p, q }
                }
                _ => return Err(c.error("expected '[' or 'Q'")),
            };
            c.eat(b'^')?;
            let m = c.int()?;
            if m < 0 {
                return Err(c.error("negative multiplicity"));
            }
            terms.push((e, m as usize));
            match c.peek() {
                None => break,
                Some(b',') => c.eat(b',')?,
                Some(_) => return Err(c.error("expected ','")),
            }
        }
        SpectrumSpec::new(terms)
    }
}
