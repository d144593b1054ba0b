//! Fraction-free (Bareiss) elimination: determinants, leading principal
//! minors, rank and definiteness.

use num_bigint::BigInt;

use super::ring::Ring;
use super::IntMatrix;

fn det_generic<T: Ring>(mut a: Vec<T>, n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k * n + k].is_zero() {
            let p = (k + 1..n).find(|&i| !a[i * n + k].is_zero());
            match p {
                None => return Some(T::zero()),
                Some(p) => {
                    for j in 0..n {
                        a.swap(k * n + j, p * n + j);
                    }
                    negate = !negate;
                }
            }
        }
        let piv = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let v = T::cross(&a[i * n + j], &piv, &aik, &a[k * n + j])?;
                a[i * n + j] = v.div_exact(&prev);
            }
        }
        prev = piv;
    }
    let d = a[n * n - 1].clone();
    if negate {
        d.neg()
    } else {
        Some(d)
    }
}

/// Exact determinant.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    let n = m.order();
    let d = match det_generic::<i128>(m.to_ring(), n) {
        Some(d) => BigInt::from(d),
        None => det_generic::<BigInt>(m.to_ring(), n).expect("bigint never overflows"),
    };
    assert!(&d * &d <= m.hadamard_bound_squared(), "determinant exceeds Hadamard bound");
    d
}

/// Leading minors from an unpivoted sweep. Stops at the first zero pivot,
/// returning the minors found so far.
fn minors_generic<T: Ring>(mut a: Vec<T>, n: usize, stop_nonpositive: bool) -> Option<Vec<T>> {
    let mut out = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        let piv = a[k * n + k].clone();
        let bad = if stop_nonpositive { !piv.is_positive() } else { piv.is_zero() };
        out.push(piv.clone());
        if bad {
            return Some(out);
        }
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let v = T::cross(&a[i * n + j], &piv, &aik, &a[k * n + j])?;
                a[i * n + j] = v.div_exact(&prev);
            }
        }
        prev = piv;
    }
    Some(out)
}

/// `d_1, …, d_n` where `d_k` is the determinant of the leading `k × k` block.
pub fn leading_principal_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.order();
    let mut out: Vec<BigInt> = match minors_generic::<i128>(m.to_ring(), n, false) {
        Some(v) => v.into_iter().map(BigInt::from).collect(),
        None => minors_generic::<BigInt>(m.to_ring(), n, false).expect("bigint"),
    };
    // A zero pivot ends the unpivoted sweep; finish block by block.
    for k in out.len() + 1..=n {
        out.push(det_bareiss(&m.leading(k)));
    }
    out
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_pd_sylvester(m: &IntMatrix) -> bool {
    let n = m.order();
    let check = |v: Vec<bool>| v.len() == n && v.iter().all(|&b| b);
    match minors_generic::<i128>(m.to_ring(), n, true) {
        Some(v) => check(v.iter().map(|x| x.is_positive()).collect()),
        None => {
            let v = minors_generic::<BigInt>(m.to_ring(), n, true).expect("bigint");
            check(v.iter().map(Ring::is_positive).collect())
        }
    }
}

pub(crate) fn is_pd_fast(m: &IntMatrix) -> bool {
    is_pd_sylvester(m)
}

/// Row echelon sweep returning the rank and pivot columns (leftmost greedy).
fn rank_generic<T: Ring>(mut a: Vec<T>, n: usize) -> Option<(usize, Vec<usize>)> {
    let mut prev = T::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i * n + col].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..n {
                a.swap(r * n + j, p * n + j);
            }
        }
        let piv = a[r * n + col].clone();
        for i in r + 1..n {
            let aic = a[i * n + col].clone();
            for j in col + 1..n {
                let v = T::cross(&a[i * n + j], &piv, &aic, &a[r * n + j])?;
                a[i * n + j] = v.div_exact(&prev);
            }
            a[i * n + col] = T::zero();
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }
    Some((r, pivots))
}

/// Rank over the rationals together with the leftmost independent columns.
pub(crate) fn rank_fast(m: &IntMatrix) -> (usize, Vec<usize>) {
    let n = m.order();
    rank_generic::<i128>(m.to_ring(), n)
        .or_else(|| rank_generic::<BigInt>(m.to_ring(), n))
        .expect("bigint")
}

/// Exact rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    rank_fast(m).0
}

/// Positive semidefiniteness by symmetric fraction-free elimination with
/// diagonal pivoting. Independent of the characteristic-polynomial route.
fn psd_generic<T: Ring>(mut a: Vec<T>, n: usize) -> Option<bool> {
    let mut alive: Vec<usize> = (0..n).collect();
    let mut prev = T::one();
    loop {
        if alive.iter().any(|&i| a[i * n + i].is_negative()) {
            return Some(false);
        }
        let Some(pos) = alive.iter().position(|&i| a[i * n + i].is_positive()) else {
            // every remaining diagonal entry is zero: PSD only if the rest vanishes
            let all_zero = alive
                .iter()
                .all(|&i| alive.iter().all(|&j| a[i * n + j].is_zero()));
            return Some(all_zero);
        };
        let k = alive.remove(pos);
        let piv = a[k * n + k].clone();
        for &i in &alive {
            let aik = a[i * n + k].clone();
            for &j in &alive {
                if j < i {
                    continue;
                }
                let v = T::cross(&a[i * n + j], &piv, &aik, &a[k * n + j])?;
                let v = v.div_exact(&prev);
                a[i * n + j] = v.clone();
                a[j * n + i] = v;
            }
        }
        prev = piv;
        if alive.is_empty() {
            return Some(true);
        }
    }
}

pub(crate) fn is_psd_elimination(m: &IntMatrix) -> bool {
    let n = m.order();
    psd_generic::<i128>(m.to_ring(), n)
        .or_else(|| psd_generic::<BigInt>(m.to_ring(), n))
        .expect("bigint")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SeidelMatrix;
    use rand::{Rng, SeedableRng};

    fn minor_expansion_det(m: &[Vec<i64>]) -> i128 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for c in 0..n {
            let sub: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                .collect();
            let term = m[0][c] as i128 * minor_expansion_det(&sub);
            total += if c % 2 == 0 { term } else { -term };
        }
        total
    }

    /// Rank by brute force: largest k with some nonzero k × k minor.
    fn minor_rank(m: &[Vec<i64>]) -> usize {
        let n = m.len();
        for k in (1..=n).rev() {
            let subsets: Vec<Vec<usize>> = (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect();
            for rs in &subsets {
                for cs in &subsets {
                    let sub: Vec<Vec<i64>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    if minor_expansion_det(&sub) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn det_of_j3_minus_i3() {
        let s = SeidelMatrix::all_positive(3).unwrap().to_int_matrix(0);
        assert_eq!(det_bareiss(&s), BigInt::from(2));
    }

    #[test]
    fn minors_of_small_pd_matrix() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(leading_principal_minors(&m), vec![BigInt::from(2), BigInt::from(3)]);
        assert!(is_pd_sylvester(&m));
        assert!(!is_pd_sylvester(&IntMatrix::ones(2)));
    }

    #[test]
    fn minors_fall_back_after_zero_pivot() {
        let m = IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![2, 3, 1]]);
        let d = leading_principal_minors(&m);
        assert_eq!(d[0], BigInt::from(0));
        assert_eq!(d[1], BigInt::from(-1));
        assert_eq!(d[2], det_bareiss(&m));
    }

    #[test]
    fn det_and_rank_agree_with_minor_expansion() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6);
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            let m = IntMatrix::from_rows(&rows);
            assert_eq!(det_bareiss(&m), BigInt::from(minor_expansion_det(&rows)));
        }
        for _ in 0..60 {
            // low-rank products keep the rank test interesting
            let k = rng.gen_range(0..=6);
            let u: Vec<Vec<i64>> = (0..6).map(|_| (0..k).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let v: Vec<Vec<i64>> = (0..k).map(|_| (0..6).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let rows: Vec<Vec<i64>> = (0..6)
                .map(|i| (0..6).map(|j| (0..k).map(|t| u[i][t] * v[t][j]).sum()).collect())
                .collect();
            assert_eq!(rank(&IntMatrix::from_rows(&rows)), minor_rank(&rows));
        }
    }

    #[test]
    fn rank_of_j3() {
        assert_eq!(rank(&IntMatrix::ones(3)), 1);
        let s = SeidelMatrix::all_positive(3).unwrap().to_int_matrix(1);
        assert_eq!(rank(&s), 1);
    }

    #[test]
    fn det_congruence_for_all_small_seidel_matrices() {
        for n in 1..=6usize {
            let bits = n * (n - 1) / 2;
            for mask in 0u64..1 << bits {
                let s = SeidelMatrix::from_fn(n, |i, j| mask >> (j * (j - 1) / 2 + i) & 1 == 1).unwrap();
                let d = det_bareiss(&s.to_int_matrix(0));
                let r = ((d - BigInt::from(1 - n as i64)) % 4 + 4) % 4;
                assert_eq!(r, BigInt::from(0), "n = {n}");
            }
        }
    }

    #[test]
    fn psd_elimination_basic_cases() {
        assert!(is_psd_elimination(&IntMatrix::ones(4)));
        assert!(is_psd_elimination(&IntMatrix::zero(3)));
        assert!(!is_psd_elimination(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])));
        assert!(!is_psd_elimination(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 1]])));
        let s = SeidelMatrix::all_positive(3).unwrap().to_int_matrix(1);
        assert!(is_psd_elimination(&s));
    }
}
