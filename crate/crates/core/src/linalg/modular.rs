//! Elimination modulo word-sized primes.
//!
//! Rank over the rationals is the largest rank modulo any prime, and a
//! nonzero minor bounded by `H` cannot vanish modulo every prime of a set
//! whose product exceeds `H`. Taking enough primes to beat the Hadamard bound
//! therefore gives the exact rank without big integers.

use num_bigint::BigInt;

use super::IntMatrix;

/// Primes just below `2^31`, so products of two residues fit in a `u64`.
pub(crate) const PRIMES: [u64; 8] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497,
];

/// Reduction modulo a fixed prime below `2^31` through a precomputed
/// reciprocal, avoiding hardware division in inner loops.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Modulus {
    p: u64,
    m: u64,
}

impl Modulus {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p > 2 && p < 1 << 31);
        Modulus { p, m: u64::MAX / p }
    }

    #[inline]
    pub(crate) fn p(self) -> u64 {
        self.p
    }

    /// `a mod p` for any `a < 2^63`.
    #[inline]
    pub(crate) fn reduce(self, a: u64) -> u64 {
        let q = ((a as u128 * self.m as u128) >> 64) as u64;
        let mut r = a - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub(crate) fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn residue(self, x: i64) -> u64 {
        let p = self.p as i64;
        if (0..p).contains(&x) {
            x as u64
        } else if (-p..0).contains(&x) {
            (x + p) as u64
        } else {
            x.rem_euclid(p) as u64
        }
    }

    /// Inverse of a nonzero residue by the extended Euclidean algorithm.
    pub(crate) fn inv(self, a: u64) -> u64 {
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "not invertible");
        self.residue(t0)
    }
}

/// Rank modulo `p` and the leftmost independent columns.
pub(crate) fn rank_mod(m: &IntMatrix, md: Modulus) -> (usize, Vec<usize>) {
    let n = m.order();
    let mut a: Vec<u64> = m.entries().iter().map(|&x| md.residue(x)).collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if r == n {
            break;
        }
        let Some(pr) = (r..n).find(|&i| a[i * n + col] != 0) else {
            continue;
        };
        if pr != r {
            for j in col..n {
                a.swap(r * n + j, pr * n + j);
            }
        }
        // a_ij ← piv·a_ij − a_i,col·a_rj, which keeps the row space
        let piv = a[r * n + col];
        for i in r + 1..n {
            let f = a[i * n + col];
            if f == 0 {
                continue;
            }
            let nf = md.p() - f;
            for j in col + 1..n {
                a[i * n + j] = md.reduce(piv * a[i * n + j] + nf * a[r * n + j]);
            }
            a[i * n + col] = 0;
        }
        pivots.push(col);
        r += 1;
    }
    (r, pivots)
}

/// Exact rank together with a prime attaining it and that prime's pivots.
pub(crate) fn rank_multimodular(m: &IntMatrix) -> (usize, Vec<usize>, Modulus) {
    let n = m.order();
    let needed = primes_needed(m);
    let mut best: Option<(usize, Vec<usize>, Modulus)> = None;
    for &p in &PRIMES[..needed] {
        let md = Modulus::new(p);
        let (r, piv) = rank_mod(m, md);
        if best.as_ref().is_none_or(|b| r > b.0) {
            best = Some((r, piv, md));
        }
        if r == n {
            break;
        }
    }
    best.expect("at least one prime")
}

/// Number of leading primes whose product exceeds the Hadamard bound.
fn primes_needed(m: &IntMatrix) -> usize {
    // Row norms squared are exact in f64; the log sum gets a generous margin.
    let n = m.order();
    let bits: f64 = (0..n)
        .map(|i| {
            let s: i64 = (0..n).map(|j| m.get(i, j) * m.get(i, j)).sum();
            (s.max(1) as f64).log2() / 2.0
        })
        .sum::<f64>()
        + 1.0;
    let k = (bits / 30.99).ceil().max(1.0) as usize;
    if k <= PRIMES.len() {
        return k;
    }
    // fall back to an exact comparison before giving up
    let bound = m.hadamard_bound_squared();
    let mut product = BigInt::from(1);
    for (i, &p) in PRIMES.iter().enumerate() {
        product *= p * p;
        if product > bound {
            return i + 1;
        }
    }
    panic!("matrix entries too large for the modular rank");
}

/// Inverse of a nonsingular `r × r` matrix of residues modulo `p`.
pub(crate) fn inverse_mod(b: &[u64], r: usize, md: Modulus) -> Option<Vec<u64>> {
    let w = 2 * r;
    let mut a = vec![0u64; r * w];
    for i in 0..r {
        a[i * w..i * w + r].copy_from_slice(&b[i * r..i * r + r]);
        a[i * w + r + i] = 1;
    }
    for k in 0..r {
        let pr = (k..r).find(|&i| a[i * w + k] != 0)?;
        if pr != k {
            for j in 0..w {
                a.swap(k * w + j, pr * w + j);
            }
        }
        // columns left of k are already reduced
        let hi = w;
        let inv = md.inv(a[k * w + k]);
        for j in k..hi {
            a[k * w + j] = md.mul(a[k * w + j], inv);
        }
        for i in 0..r {
            let f = a[i * w + k];
            if i == k || f == 0 {
                continue;
            }
            for j in k..hi {
                a[i * w + j] = md.sub(a[i * w + j], md.mul(f, a[k * w + j]));
            }
        }
    }
    let mut x = vec![0u64; r * r];
    for i in 0..r {
        x[i * r..i * r + r].copy_from_slice(&a[i * w + r..i * w + w]);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use rand::{Rng, SeedableRng};

    #[test]
    fn primes_are_prime() {
        for &p in &PRIMES {
            assert!((2..).take_while(|d| d * d <= p).all(|d| p % d != 0), "{p}");
        }
    }

    #[test]
    fn agrees_with_bareiss_rank() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        for _ in 0..400 {
            let n = rng.gen_range(1..=14);
            let k = rng.gen_range(1..=n);
            // low-rank products exercise the deficient case
            let a = IntMatrix::from_fn(n, |_, j| if j < k { rng.gen_range(-4..=4) } else { 0 });
            let at = IntMatrix::from_fn(n, |i, j| a.get(j, i));
            let m = a.mul(&at).shifted(if rng.gen_bool(0.3) { 1 } else { 0 });
            assert_eq!(rank_multimodular(&m).0, rank(&m), "{m:?}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let md = Modulus::new(PRIMES[0]);
        let b: Vec<u64> = [2i64, 1, 0, 1, -3, 1, 0, 1, 4].iter().map(|&x| md.residue(x)).collect();
        let x = inverse_mod(&b, 3, md).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(0, |acc, t| md.reduce(acc + md.mul(b[i * 3 + t], x[t * 3 + j])));
                assert_eq!(s, u64::from(i == j));
            }
        }
        assert!(inverse_mod(&[1, 1, 1, 1], 2, md).is_none());
    }

    #[test]
    fn reduction_matches_remainder() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for &p in &PRIMES {
            let md = Modulus::new(p);
            for _ in 0..2000 {
                let a = rng.gen_range(0..1u64 << 63);
                assert_eq!(md.reduce(a), a % p);
                let b = rng.gen_range(1..p);
                assert_eq!(md.mul(md.inv(b), b), 1);
            }
        }
    }
}
