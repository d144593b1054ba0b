//! Characteristic polynomials `det(λI − A)`, computed two independent ways.

use num_bigint::BigInt;

use super::bareiss::det_bareiss;
use super::poly::IntPolynomial;
use super::ring::Ring;
use super::IntMatrix;

fn fl_generic<T: Ring>(a: &[T], n: usize) -> Option<Vec<T>> {
    // c[k] is the coefficient of λ^k
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let mut m = vec![T::zero(); n * n];
    let mut am = vec![T::zero(); n * n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I, reusing am = A·M_{k-1}
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = am[i * n + j].clone();
            }
            m[i * n + i] = m[i * n + i].add(&c[n - k + 1])?;
        }
        for i in 0..n {
            for j in 0..n {
                let mut s = T::zero();
                for t in 0..n {
                    let x = &a[i * n + t];
                    if x.is_zero() {
                        continue;
                    }
                    s = s.add(&x.mul(&m[t * n + j])?)?;
                }
                am[i * n + j] = s;
            }
        }
        let mut tr = T::zero();
        for i in 0..n {
            tr = tr.add(&am[i * n + i])?;
        }
        c[n - k] = tr.neg()?.div_exact(&T::from_i64(k as i64));
    }
    Some(c)
}

/// Faddeev–LeVerrier with exact (asserted) divisions by the step index.
pub fn charpoly_fl(a: &IntMatrix) -> IntPolynomial {
    let n = a.order();
    let coeffs: Vec<BigInt> = match fl_generic::<i128>(&a.to_ring(), n) {
        Some(c) => c.into_iter().map(BigInt::from).collect(),
        None => fl_generic::<BigInt>(&a.to_ring(), n).expect("bigint"),
    };
    IntPolynomial::new(coeffs)
}

/// Evaluates `det(λI − A)` at `λ = 0..=n` with Bareiss and interpolates in
/// the falling-factorial basis.
pub fn charpoly_eval_interp(a: &IntMatrix) -> IntPolynomial {
    let n = a.order();
    let neg = a.scaled(-1);
    let mut diffs: Vec<BigInt> = (0..=n).map(|x| det_bareiss(&neg.shifted(x as i64))).collect();
    // In place forward differences: diffs[k] becomes Δ^k p(0).
    for k in 1..=n {
        for i in (k..=n).rev() {
            diffs[i] = &diffs[i] - &diffs[i - 1];
        }
    }
    // p(x) = Σ_k (Δ^k p(0) / k!) · x(x−1)…(x−k+1)
    let mut result = vec![BigInt::from(0); n + 1];
    let mut falling = IntPolynomial::from_i64s(&[1]);
    let mut fact = BigInt::from(1);
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            fact *= k;
            falling = falling.mul(&IntPolynomial::linear(k as i64 - 1));
        }
        let coef = d.div_exact(&fact);
        for (i, fc) in falling.coeffs().iter().enumerate() {
            result[i] += &coef * fc;
        }
    }
    IntPolynomial::new(result)
}
