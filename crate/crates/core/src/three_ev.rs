//! Seidel matrices with exactly three distinct eigenvalues.
//!
//! A three-eigenvalue spectrum is either three integers or one integer plus
//! a conjugate quadratic pair. Multiplicities follow from the order and the
//! roots alone, which makes candidate spectra finite for each order; each
//! candidate is then settled by a pruned exhaustive search.

use std::fmt;

use crate::error::{Error, Result};
use crate::generator::{self, Composite, ExactSpectrum, Interval, Prune, QuadMultiplicity, RankCap, RunOptions};
use crate::matrix::{AmbientGraph, SeidelMatrix};
use crate::spectrum::{AlgebraicEigenvalue, SpectrumSpec};

use AlgebraicEigenvalue::{Int, QuadPair};

/// Largest order for which every switching can be scanned.
pub const MAX_SWITCH_SCAN_ORDER: usize = 30;

/// `n·(n − 1 + στ) / ((ρ − σ)(ρ − τ))` when it is a positive integer.
fn quotient(num: i128, den: i128) -> Option<usize> {
    (den != 0 && num % den == 0 && num / den > 0).then(|| (num / den) as usize)
}

/// Multiplicities `(a, b, c)` of three distinct integer eigenvalues of an
/// order-`n` Seidel matrix, forced by the trace identities.
pub fn multiplicities(n: usize, l: i64, m: i64, v: i64) -> Result<(usize, usize, usize)> {
    if l == m || l == v || m == v {
        return Err(Error::InvalidArgument(format!("repeated root among {l}, {m}, {v}")));
    }
    multiplicities_opt(n, l, m, v)
        .ok_or_else(|| Error::Infeasible(format!("no integral multiplicities for {l}, {m}, {v} at order {n}")))
}

fn multiplicities_opt(n: usize, l: i64, m: i64, v: i64) -> Option<(usize, usize, usize)> {
    let (n1, l, m, v) = (n as i128, l as i128, m as i128, v as i128);
    let a = quotient(n1 * (n1 - 1 + m * v), (l - m) * (l - v))?;
    let b = quotient(n1 * (n1 - 1 + l * v), (m - l) * (m - v))?;
    let c = quotient(n1 * (n1 - 1 + l * m), (v - l) * (v - m))?;
    (a + b + c == n).then_some((a, b, c))
}

/// Multiplicities `(a, b)` of an integer `l` and of each root of
/// `x² − px + q` for an order-`n` Seidel matrix.
pub fn multiplicities_quad(n: usize, l: i64, p: i64, q: i64) -> Result<(usize, usize)> {
    AlgebraicEigenvalue::quad(p, q)?;
    multiplicities_quad_opt(n, l, p, q)
        .ok_or_else(|| Error::Infeasible(format!("no integral multiplicities for {l}, Q({p},{q}) at order {n}")))
}

fn multiplicities_quad_opt(n: usize, l: i64, p: i64, q: i64) -> Option<(usize, usize)> {
    let (n1, l, p, q) = (n as i128, l as i128, p as i128, q as i128);
    // (λ − μ)(λ − ν) = λ² − pλ + q
    let a = quotient(n1 * (n1 - 1 + q), l * l - p * l + q)?;
    let rest = n.checked_sub(a)?;
    (rest > 0 && rest % 2 == 0).then_some((a, rest / 2))
}

/// The necessary conditions for a three-eigenvalue spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `det S ≡ 1 − n (mod 4)`.
    Determinant,
    /// Even integer eigenvalues are simple.
    EvenSimple,
    /// `(n−1)(λ+μ+ν) + λμν − n² − n − 2 ≡ 0 (mod 4)`.
    DoublyEven,
    /// At least one eigenvalue is an integer.
    IntegerRoot,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Determinant => "(i) determinant",
            Condition::EvenSimple => "(ii) even eigenvalue multiplicity",
            Condition::DoublyEven => "(iii) doubly even quantity",
            Condition::IntegerRoot => "(iv) integer eigenvalue",
        })
    }
}

/// Outcome of every condition, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conditions {
    pub determinant: bool,
    pub even_simple: bool,
    pub doubly_even: bool,
    pub integer_root: bool,
}

impl Conditions {
    pub fn first_failure(&self) -> Option<Condition> {
        [
            (self.determinant, Condition::Determinant),
            (self.even_simple, Condition::EvenSimple),
            (self.doubly_even, Condition::DoublyEven),
            (self.integer_root, Condition::IntegerRoot),
        ]
        .into_iter()
        .find(|t| !t.0)
        .map(|t| t.1)
    }

    pub fn all(&self) -> bool {
        self.first_failure().is_none()
    }
}

/// Evaluates the conditions on raw terms, which need not satisfy the trace
/// identities; only three distinct roots are required.
pub fn necessary_conditions(terms: &[(AlgebraicEigenvalue, usize)]) -> Result<Conditions> {
    let roots: usize = terms.iter().map(|t| t.0.degree()).sum();
    if roots != 3 {
        return Err(Error::InvalidArgument(format!("{roots} distinct roots, expected 3")));
    }
    let n: i128 = terms.iter().map(|&(e, m)| (e.degree() * m) as i128).sum();
    // all arithmetic modulo 4 on exact integers
    let det = terms
        .iter()
        .fold(1i128, |acc, &(e, m)| (0..m).fold(acc, |x, _| (x * e.root_product()).rem_euclid(4)));
    let determinant = det == (1 - n).rem_euclid(4);
    let even_simple = terms.iter().all(|&(e, m)| !matches!(e, Int(r) if r % 2 == 0) || m == 1);
    let sum: i128 = terms.iter().map(|t| t.0.root_sum()).sum();
    let prod: i128 = terms.iter().map(|t| t.0.root_product()).product();
    let doubly_even = ((n - 1) * sum + prod - n * n - n - 2).rem_euclid(4) == 0;
    let integer_root = terms.iter().any(|t| matches!(t.0, Int(_)));
    Ok(Conditions { determinant, even_simple, doubly_even, integer_root })
}

/// A three-eigenvalue spectrum passing every necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FeasibleSpectrum {
    spec: SpectrumSpec,
}

impl FeasibleSpectrum {
    pub fn new(spec: SpectrumSpec) -> Result<Self> {
        let c = necessary_conditions(spec.terms())?;
        if let Some(f) = c.first_failure() {
            return Err(Error::Infeasible(format!("{spec} fails {f}")));
        }
        Ok(FeasibleSpectrum { spec: spec.sorted() })
    }

    pub fn spec(&self) -> &SpectrumSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.spec.order()
    }

    pub fn negated(&self) -> Self {
        FeasibleSpectrum { spec: self.spec.negated().sorted() }
    }

    pub fn is_integral(&self) -> bool {
        self.spec.terms().iter().all(|t| matches!(t.0, Int(_)))
    }

    /// Reporting orientation: for three integers `λ < 0 ≤ μ ≤ ν`, with a
    /// quadratic pair the integer root is `≥ 0`. When both orientations
    /// qualify the one with the smaller text form is used.
    pub fn is_normalized(&self) -> bool {
        let ok = |s: &SpectrumSpec| match s.terms() {
            [(Int(l), _), (Int(m), _), (Int(_), _)] => *l < 0 && *m >= 0,
            terms => terms.iter().any(|t| matches!(t.0, Int(r) if r >= 0)),
        };
        let neg = self.negated();
        match (ok(&self.spec), ok(&neg.spec)) {
            (true, true) => self.spec.to_string() <= neg.spec.to_string(),
            (a, _) => a,
        }
    }

    /// Marked open: no search is expected to settle it at desk scale.
    pub fn is_open(&self) -> bool {
        OPEN_SPECTRA.iter().any(|t| *t == self.spec.to_string() || *t == self.negated().spec.to_string())
    }
}

impl fmt::Display for FeasibleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

/// Spectra of order 24 where the multiplicity pruning is too weak to finish.
const OPEN_SPECTRA: [&str; 5] = [
    "[-7]^7,[1]^9,[5]^8",
    "[-7]^6,[1]^15,[9]^3",
    "[-5]^10,[1]^8,[7]^6",
    "[-5]^11,[3]^9,[7]^4",
    "Q(-2,-43)^6,[1]^12",
];

/// Every feasible three-eigenvalue spectrum of order `n`, in both
/// orientations, sorted by text form.
pub fn all_feasible(n: usize) -> Vec<FeasibleSpectrum> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let r = n as i64 - 1;
    let mut push = |terms: Vec<(AlgebraicEigenvalue, usize)>| {
        if let Ok(spec) = SpectrumSpec::new(terms) {
            if let Ok(f) = FeasibleSpectrum::new(spec) {
                out.push(f);
            }
        }
    };
    for l in -r..=r {
        for m in l + 1..=r {
            for v in m + 1..=r {
                if let Some((a, b, c)) = multiplicities_opt(n, l, m, v) {
                    push(vec![(Int(l), a), (Int(m), b), (Int(v), c)]);
                }
            }
        }
    }
    // both roots of x² − px + q lie in [−r, r]
    for l in -r..=r {
        for p in -2 * r..=2 * r {
            let qmin = (p * r - r * r).max(-p * r - r * r);
            for q in qmin..=p * p / 4 {
                if !crate::spectrum::irreducible(p, q) {
                    continue;
                }
                if let Some((a, b)) = multiplicities_quad_opt(n, l, p, q) {
                    push(vec![(Int(l), a), (QuadPair { p, q }, b)]);
                }
            }
        }
    }
    out.sort_by_key(|f| f.to_string());
    out.dedup();
    out
}

/// Feasible spectra of order `n`, one per `{S, −S}` orientation pair.
pub fn enumerate_feasible(n: usize) -> Vec<FeasibleSpectrum> {
    all_feasible(n).into_iter().filter(|f| f.is_normalized()).collect()
}

/// The prune used to search for one spectrum: eigenvalues within 1/100 of
/// the extreme roots, and the multiplicities interlacing forces at every
/// order.
pub fn spectrum_prune(spec: &FeasibleSpectrum) -> Composite {
    let n = spec.order();
    let mut parts: Vec<Box<dyn Prune>> = Vec::new();
    for &(e, mult) in spec.spec().terms() {
        match e {
            Int(root) => parts.push(Box::new(RankCap { root, cap: n - mult })),
            QuadPair { p, q } => parts.push(Box::new(QuadMultiplicity { p, q, order: n, mult })),
        }
    }
    let (lo, hi) = spec.spec().bounds_times_100();
    parts.push(Box::new(Interval { lo_times_100: lo - 1, hi_times_100: hi + 1 }));
    parts.push(Box::new(ExactSpectrum(spec.spec().clone())));
    Composite(parts)
}

/// All classes with exactly the spectrum `spec`.
pub fn search_spectrum(spec: &FeasibleSpectrum, opts: RunOptions) -> Result<Vec<SeidelMatrix>> {
    let prune = spectrum_prune(spec);
    let got = generator::generate(spec.order(), &prune, &generator::order_one_seed(), opts)?;
    Ok(got.matrices)
}

/// Classes found for each feasible spectrum of one order.
#[derive(Clone, Debug)]
pub struct ThreeEvCensus {
    pub order: usize,
    /// Every feasible orientation with its classes.
    pub spectra: Vec<(FeasibleSpectrum, Vec<SeidelMatrix>)>,
}

impl ThreeEvCensus {
    /// Classes with exactly three eigenvalues, `S` and `−S` counted
    /// separately when their spectra differ.
    pub fn total(&self) -> usize {
        self.spectra.iter().map(|t| t.1.len()).sum()
    }
}

/// Searches every feasible spectrum of order `n` (both orientations).
pub fn three_ev_census(n: usize, opts: RunOptions) -> Result<ThreeEvCensus> {
    let mut spectra = Vec::new();
    for f in all_feasible(n) {
        if f.is_open() {
            return Err(Error::Infeasible(format!("{f} is beyond exhaustive search")));
        }
        let found = search_spectrum(&f, opts)?;
        spectra.push((f, found));
    }
    Ok(ThreeEvCensus { order: n, spectra })
}

/// Number of classes of order `n` with exactly three distinct eigenvalues.
pub fn count_three_ev(n: usize) -> Result<usize> {
    Ok(three_ev_census(n, RunOptions::default())?.total())
}

/// Whether some switching of `s` has a regular ambient graph.
pub fn has_regular_switching_graph(s: &SeidelMatrix) -> Result<bool> {
    let n = s.order();
    if n > MAX_SWITCH_SCAN_ORDER {
        return Err(Error::OrderOutOfRange(n, MAX_SWITCH_SCAN_ORDER));
    }
    if n <= 2 {
        return Ok(true);
    }
    // Gray code over switchings of rows 1..n; switching row v flips the
    // negative entries of row v and one entry of every other row.
    let mut rows = s.rows().to_vec();
    let mut deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let full = (1u64 << n) - 1;
    let regular = |d: &[u32]| d.iter().all(|&x| x == d[0]);
    if regular(&deg) {
        return Ok(true);
    }
    for step in 1u64..1 << (n - 1) {
        let v = step.trailing_zeros() as usize + 1;
        rows[v] ^= full & !(1 << v);
        deg[v] = n as u32 - 1 - deg[v];
        for i in (0..n).filter(|&i| i != v) {
            rows[i] ^= 1 << v;
            if rows[i] >> v & 1 == 1 {
                deg[i] += 1;
            } else {
                deg[i] -= 1;
            }
        }
        if regular(&deg) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// For odd `n`, the ambient graph of the switching with every degree even.
pub fn even_degree_graph(s: &SeidelMatrix) -> Result<AmbientGraph> {
    if s.order().is_multiple_of(2) {
        return Err(Error::InvalidArgument("even-degree switching needs odd order".into()));
    }
    // switching the odd-degree vertices fixes every parity
    let g = s.ambient_graph();
    let odd = (0..s.order()).filter(|&i| g.degree(i) % 2 == 1).fold(0u64, |m, i| m | 1 << i);
    Ok(s.switched(odd).ambient_graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> SpectrumSpec {
        s.parse().unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicities(9, -3, 0, 3).unwrap(), (4, 1, 4));
        assert_eq!(multiplicities(6, -3, 1, 3).unwrap(), (2, 3, 1));
        assert!(matches!(multiplicities(6, -2, 1, 3), Err(Error::Infeasible(_))));
        assert!(matches!(multiplicities(6, 1, 1, 3), Err(Error::InvalidArgument(_))));
        assert_eq!(multiplicities_quad(5, 0, 0, -5).unwrap(), (1, 2));
        assert_eq!(multiplicities_quad(10, 3, -4, -1).unwrap(), (4, 3));
    }

    #[test]
    fn condition_examples() {
        let c = necessary_conditions(&[(Int(0), 1), (QuadPair { p: 0, q: -3 }, 1)]).unwrap();
        assert_eq!(c.first_failure(), Some(Condition::Determinant));
        let c = necessary_conditions(spec("[-7]^1,[-1]^3,[2]^5").terms()).unwrap();
        assert_eq!(c.first_failure(), Some(Condition::EvenSimple));
        // roots −2 ± 3√3 of x² + 4x − 23
        let c = necessary_conditions(&[(Int(1), 8), (QuadPair { p: -4, q: -23 }, 3)]).unwrap();
        assert!(!c.doubly_even);
        assert!(necessary_conditions(spec("[-3]^2,[1]^3,[3]^1").terms()).unwrap().all());
    }

    #[test]
    fn feasible_examples() {
        let six: Vec<String> = enumerate_feasible(6).iter().filter(|f| f.is_integral()).map(|f| f.to_string()).collect();
        assert_eq!(six, vec!["[-3]^2,[1]^3,[3]^1"]);
        let names = |n| enumerate_feasible(n).iter().map(|f| f.to_string()).collect::<Vec<_>>();
        assert!(names(16).contains(&"[-3]^8,[1]^6,[9]^2".to_string()));
        assert!(names(5).contains(&"Q(0,-5)^2,[0]^1".to_string()));
        for n in 3..=24 {
            for f in all_feasible(n) {
                let s = f.spec();
                let tr: i128 = s.terms().iter().map(|&(e, m)| e.root_sum() * m as i128).sum();
                assert_eq!(tr, 0);
                assert_eq!(s.distinct_count(), 3);
                assert!(all_feasible(n).contains(&f.negated()));
            }
        }
    }

    #[test]
    fn small_orders_search() {
        let k23 = SeidelMatrix::k_construction(2, 3).unwrap();
        let f = FeasibleSpectrum::new(spec("[-3]^2,[1]^3,[3]^1")).unwrap();
        let found = search_spectrum(&f, RunOptions::default()).unwrap();
        assert_eq!(found.len(), 1);
        assert!(crate::colored::are_equivalent(&found[0], &k23).unwrap());
        assert_eq!(count_three_ev(5).unwrap(), 1);
        assert_eq!(count_three_ev(6).unwrap(), 2);
        assert_eq!(count_three_ev(7).unwrap(), 0);
    }

    #[test]
    fn regular_switching() {
        assert!(has_regular_switching_graph(&SeidelMatrix::k_construction(2, 3).unwrap()).unwrap());
        // J − I is the empty graph; every switching of it stays in one class
        assert!(has_regular_switching_graph(&SeidelMatrix::all_positive(7).unwrap()).unwrap());
        let s = SeidelMatrix::from_fn(4, |i, j| (i, j) == (0, 1)).unwrap();
        let brute = (0..8u64).any(|u| s.switched(u << 1).ambient_graph().is_regular());
        assert_eq!(has_regular_switching_graph(&s).unwrap(), brute);
    }

    #[test]
    fn even_degree_switching() {
        let s = SeidelMatrix::from_fn(7, |i, j| (i * 3 + j * 5) % 7 < 3).unwrap();
        let g = even_degree_graph(&s).unwrap();
        assert!(g.degrees().iter().all(|d| d % 2 == 0));
        let back = SeidelMatrix::from_ambient(&g);
        assert!(crate::colored::are_equivalent(&back, &s).unwrap());
        assert!(even_degree_graph(&SeidelMatrix::conference_six()).is_err());
    }
}
