//! Exact analysis of all one-vertex extensions of a fixed parent.
//!
//! For `M = S − r·I` with rank `ρ`, pick pivot columns `I` (so `B = M[I,I]`
//! is nonsingular, `M` being symmetric) and the remaining rows `J`. A border
//! vector `c` lies in the column space of `M` iff `d·c_J = K·c_I` where
//! `X = d·B⁻¹` and `K = M[J,I]·X`. In that case the bordered matrix
//! `[[M, c], [cᵀ, −r]]` has rank `ρ` or `ρ + 1` according to whether the
//! Schur complement `−r − c_Iᵀ B⁻¹ c_I` vanishes; otherwise it has rank
//! `ρ + 2`. For positive semidefinite `M` the bordered matrix is positive
//! semidefinite iff `c` is in the column space and the complement is `≥ 0`.

use std::cmp::Ordering;

use super::bareiss::{is_psd_elimination, rank_fast};
use super::modular::{inverse_mod, rank_multimodular, Modulus};
use crate::matrix::{low_mask, SeidelMatrix};

/// Precomputed data for scanning the `2^(n−1)` sign vectors of a new row.
#[derive(Clone, Debug)]
pub struct BorderedScan {
    n: usize,
    root: i64,
    rank: usize,
    pivots: Vec<usize>,
    others: Vec<usize>,
    d: i128,
    /// `d·B⁻¹`, `ρ × ρ`, symmetric.
    x: Vec<i128>,
    /// `M[J,I]·X`, `(n−ρ) × ρ`.
    k: Vec<i128>,
    parent_psd: bool,
}

const LIMIT: i128 = 1 << 100;

impl BorderedScan {
    /// `None` when intermediate values could leave the `i128` fast path.
    pub fn new(parent: &SeidelMatrix, root: i64) -> Option<Self> {
        let n = parent.order();
        let m = parent.to_int_matrix(-root);
        let (rank, pivots) = rank_fast(&m);
        let others: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let parent_psd = is_psd_elimination(&m);
        let r = rank;
        let (d, x) = if r == 0 {
            (1, Vec::new())
        } else {
            gauss_jordan(&m.principal(&pivots).entries().iter().map(|&v| v as i128).collect::<Vec<_>>(), r)?
        };
        let mut k = vec![0i128; others.len() * r];
        for (a, &j) in others.iter().enumerate() {
            for b in 0..r {
                let mut s = 0i128;
                for (t, &p) in pivots.iter().enumerate() {
                    s = s.checked_add((m.get(j, p) as i128).checked_mul(x[t * r + b])?)?;
                }
                k[a * r + b] = s;
            }
        }
        // Incremental sums stay below r·max|entry|·2 and the quadratic form
        // below r²·max|X|·4; require comfortable headroom.
        let mx = x.iter().chain(k.iter()).map(|v| v.abs()).max().unwrap_or(0).max(d.abs());
        let rr = (r as i128 + 1) * (r as i128 + 1) * 8;
        if mx.checked_mul(rr)?.checked_mul(root.unsigned_abs() as i128 + 1)? > LIMIT {
            return None;
        }
        Some(BorderedScan { n, root, rank, pivots, others, d, x, k, parent_psd })
    }

    pub fn parent_order(&self) -> usize {
        self.n
    }

    pub fn parent_rank(&self) -> usize {
        self.rank
    }

    pub fn parent_is_psd(&self) -> bool {
        self.parent_psd
    }

    fn sign(mask: u64, i: usize) -> i128 {
        if mask >> i & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// Column-space membership and Schur complement sign for one border,
    /// `signs` using the same bit convention as [`SeidelMatrix::extended`].
    pub fn classify(&self, signs: u64) -> Option<Ordering> {
        let r = self.rank;
        let c_i: Vec<i128> = self.pivots.iter().map(|&p| Self::sign(signs, p)).collect();
        for (a, &j) in self.others.iter().enumerate() {
            let kc: i128 = (0..r).map(|b| self.k[a * r + b] * c_i[b]).sum();
            if kc != self.d * Self::sign(signs, j) {
                return None;
            }
        }
        let mut q = 0i128;
        for a in 0..r {
            for b in 0..r {
                q += c_i[a] * self.x[a * r + b] * c_i[b];
            }
        }
        Some(self.schur_sign(q))
    }

    fn schur_sign(&self, q: i128) -> Ordering {
        // d·schur = d·(−root) − q
        let ds = self.d * -(self.root as i128) - q;
        if self.d > 0 {
            ds.cmp(&0)
        } else {
            0.cmp(&ds)
        }
    }

    /// Rank of `child − root·I` for the child with border `signs`.
    pub fn child_rank(&self, signs: u64) -> usize {
        match self.classify(signs) {
            None => self.rank + 2,
            Some(Ordering::Equal) => self.rank,
            Some(_) => self.rank + 1,
        }
    }

    /// Calls `visit(signs, schur_sign)` for every border in the column space
    /// of the parent, one representative per `±c` pair, normalized so that
    /// bit 0 of `signs` is clear.
    pub fn for_each_in_column_space(&self, mut visit: impl FnMut(u64, Ordering)) {
        let r = self.rank;
        if r == 0 {
            return;
        }
        let full = low_mask(self.n);
        let nj = self.others.len();
        // c_I starts at all +1; coordinate 0 of I stays fixed.
        let mut c = vec![1i128; r];
        let mut w: Vec<i128> = (0..r).map(|a| (0..r).map(|b| self.x[a * r + b]).sum()).collect();
        let mut kc: Vec<i128> = (0..nj).map(|a| (0..r).map(|b| self.k[a * r + b]).sum()).collect();
        let mut q: i128 = w.iter().sum();
        let mut mask_i = 0u64;
        let total: u64 = 1 << (r - 1);
        let mut idx: u64 = 0;
        loop {
            let mut mask = mask_i;
            let mut ok = true;
            for a in 0..nj {
                if kc[a] == self.d {
                } else if kc[a] == -self.d {
                    mask |= 1 << self.others[a];
                } else {
                    ok = false;
                    break;
                }
            }
            if ok {
                let s = self.schur_sign(q);
                if mask & 1 == 1 {
                    mask ^= full;
                }
                visit(mask, s);
            }
            idx += 1;
            if idx == total {
                break;
            }
            let t = idx.trailing_zeros() as usize + 1;
            let delta = -2 * c[t];
            q += 2 * delta * w[t] + delta * delta * self.x[t * r + t];
            for a in 0..r {
                w[a] += delta * self.x[a * r + t];
            }
            for a in 0..nj {
                kc[a] += delta * self.k[a * r + t];
            }
            c[t] = -c[t];
            mask_i ^= 1 << self.pivots[t];
        }
    }
}

/// Modular screen for borders that keep the rank of `S − root·I` low.
///
/// Works in `Z/p` for a prime at which the parent attains its rational rank,
/// so every border of the requested kind is reported; a few others may be
/// too, and callers confirm them exactly.
#[derive(Clone, Debug)]
pub(crate) struct ModularScan {
    n: usize,
    rank: usize,
    md: Modulus,
    pivots: Vec<usize>,
    others: Vec<usize>,
    target: u64,
    /// Padded row length, a multiple of [`LANES`].
    width: usize,
    /// Row `t`: column `t` of `8·B⁻¹` followed by column `t` of `2·K`.
    up: Vec<i32>,
    /// Negation of `up`.
    down: Vec<i32>,
    diag4: Vec<i32>,
}

const LANES: usize = 8;

/// `a + b mod p` for residues held in `i32`, branch-free so loops vectorize.
#[inline(always)]
fn add_mod(a: i32, b: i32, p: i32) -> i32 {
    let v = a.wrapping_add(b).wrapping_sub(p);
    v.wrapping_add((v >> 31) & p)
}

impl ModularScan {
    pub(crate) fn new(parent: &SeidelMatrix, root: i64) -> Self {
        let n = parent.order();
        let m = parent.to_int_matrix(-root);
        let (rank, pivots, md) = rank_multimodular(&m);
        let others: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let r = rank;
        let b: Vec<u64> = m.principal(&pivots).entries().iter().map(|&v| md.residue(v)).collect();
        let x = inverse_mod(&b, r, md).expect("pivot block is nonsingular mod p");
        let width = n.div_ceil(LANES).max(1) * LANES;
        let mut up = vec![0i32; r * width];
        let mut down = vec![0i32; r * width];
        for t in 0..r {
            for a in 0..r {
                up[t * width + a] = md.reduce(8 * x[a * r + t]) as i32;
            }
            for (a, &j) in others.iter().enumerate() {
                let mut s = 0;
                for (u, &pu) in pivots.iter().enumerate() {
                    s = md.reduce(s + md.mul(md.residue(m.get(j, pu)), x[u * r + t]));
                }
                up[t * width + r + a] = md.reduce(2 * s) as i32;
            }
            for a in 0..width {
                down[t * width + a] = md.sub(0, up[t * width + a] as u64) as i32;
            }
        }
        ModularScan {
            n,
            rank,
            md,
            target: md.residue(-root),
            diag4: (0..r).map(|t| md.reduce(4 * x[t * r + t]) as i32).collect(),
            width,
            up,
            down,
            pivots,
            others,
        }
    }

    /// Exact rank of the parent's `S − root·I`.
    pub(crate) fn parent_rank(&self) -> usize {
        self.rank
    }

    /// Borders (bit 0 clear) that may lie in the column space; with
    /// `null_only`, also with vanishing Schur complement, i.e. child rank
    /// equal to the parent's.
    pub(crate) fn screen(&self, null_only: bool) -> Vec<u64> {
        let (r, nj, md, width) = (self.rank, self.others.len(), self.md, self.width);
        let p = md.p();
        let mut out = Vec::new();
        if r == 0 {
            return out;
        }
        let full = low_mask(self.n);
        let pi = p as i32;
        let add = |a: i32, b: i32| add_mod(a, b, pi);
        let half = |v: i32| md.reduce(v as u64 * (p + 1) / 2) as i32;
        // State for c = all ones: 4·B⁻¹c in the first r lanes, K·c in the
        // next nj, and q = cᵀB⁻¹c.
        let mut c = vec![true; r];
        let mut st = vec![0i32; width];
        for (a, v) in st.iter_mut().enumerate().take(r + nj) {
            *v = half((0..r).fold(0, |s, t| add(s, self.up[t * width + a])));
        }
        let sum = st[..r].iter().fold(0, |s, &v| add(s, v));
        let mut q = md.mul(sum as u64, md.inv(4)) as i32;
        let target = self.target as i32;
        let mut mask_i = 0u64;
        let total: u64 = 1 << (r - 1);
        let mut idx: u64 = 0;
        loop {
            if !null_only || q == target {
                let mut mask = mask_i;
                let mut ok = true;
                for (a, &kc) in st[r..r + nj].iter().enumerate() {
                    if kc == 1 {
                    } else if kc == pi - 1 {
                        mask |= 1 << self.others[a];
                    } else {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    if mask & 1 == 1 {
                        mask ^= full;
                    }
                    out.push(mask);
                }
            }
            idx += 1;
            if idx == total {
                break;
            }
            let t = idx.trailing_zeros() as usize + 1;
            // flipping c_t by δ = ∓2: q += 2δ·w_t + δ²·X_tt
            let rows = if c[t] {
                q = add(add(q, pi - st[t]), self.diag4[t]);
                &self.down
            } else {
                q = add(add(q, st[t]), self.diag4[t]);
                &self.up
            };
            let row = &rows[t * width..(t + 1) * width];
            for (sc, rc) in st.chunks_exact_mut(LANES).zip(row.chunks_exact(LANES)) {
                for l in 0..LANES {
                    sc[l] = add(sc[l], rc[l]);
                }
            }
            c[t] = !c[t];
            mask_i ^= 1 << self.pivots[t];
        }
        out.sort_unstable();
        out
    }
}

/// Fraction-free Gauss–Jordan on a nonsingular symmetric `r × r` matrix:
/// returns `(d, d·B⁻¹)` with `d = ±det B`.
fn gauss_jordan(b: &[i128], r: usize) -> Option<(i128, Vec<i128>)> {
    let w = 2 * r;
    let mut a = vec![0i128; r * w];
    for i in 0..r {
        a[i * w..i * w + r].copy_from_slice(&b[i * r..i * r + r]);
        a[i * w + r + i] = 1;
    }
    let mut prev = 1i128;
    for k in 0..r {
        if a[k * w + k] == 0 {
            let p = (k + 1..r).find(|&i| a[i * w + k] != 0)?;
            for j in 0..w {
                a.swap(k * w + j, p * w + j);
            }
        }
        let piv = a[k * w + k];
        for i in 0..r {
            if i == k {
                continue;
            }
            let aik = a[i * w + k];
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = piv
                    .checked_mul(a[i * w + j])?
                    .checked_sub(aik.checked_mul(a[k * w + j])?)?;
                assert!(v % prev == 0, "inexact Gauss-Jordan step");
                a[i * w + j] = v / prev;
            }
            a[i * w + k] = 0;
        }
        prev = piv;
    }
    let d = prev;
    let mut x = vec![0i128; r * r];
    for i in 0..r {
        debug_assert_eq!(a[i * w + i], d);
        x[i * r..i * r + r].copy_from_slice(&a[i * w + r..i * w + w]);
    }
    Some((d, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use rand::{Rng, SeedableRng};

    #[test]
    fn gauss_jordan_inverts() {
        let b = [2i128, 1, 0, 1, 3, 1, 0, 1, 4];
        let (d, x) = gauss_jordan(&b, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s: i128 = (0..3).map(|t| b[i * 3 + t] * x[t * 3 + j]).sum();
                assert_eq!(s, if i == j { d } else { 0 });
            }
        }
        let b = [0i128, 1, 1, 0];
        let (d, x) = gauss_jordan(&b, 2).unwrap();
        assert_eq!(d.abs(), 1);
        assert_eq!(x, vec![0, d, d, 0]);
    }

    fn check_parent(s: &SeidelMatrix, root: i64) {
        let scan = BorderedScan::new(s, root).unwrap();
        let n = s.order();
        let mut listed = Vec::new();
        scan.for_each_in_column_space(|mask, ord| listed.push((mask, ord)));
        let mut expected = Vec::new();
        for signs in 0u64..1 << n {
            let child = s.extended(signs).unwrap();
            let cm = child.to_int_matrix(-root);
            let rk = rank(&cm);
            assert_eq!(scan.child_rank(signs), rk, "{s:?} root {root} signs {signs:b}");
            if scan.parent_is_psd() {
                let psd = is_psd_elimination(&cm);
                let predicted = matches!(scan.classify(signs), Some(Ordering::Greater | Ordering::Equal));
                assert_eq!(psd, predicted);
            }
            if signs & 1 == 0 {
                if let Some(o) = scan.classify(signs) {
                    expected.push((signs, o));
                }
            }
        }
        listed.sort();
        expected.sort();
        assert_eq!(listed, expected);
    }

    #[test]
    fn matches_direct_rank_on_random_parents() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.gen_range(1..=7);
            let s = SeidelMatrix::from_fn(n, |_, _| rng.gen_bool(0.5)).unwrap();
            for root in [-3, -1, 1, 3] {
                check_parent(&s, root);
            }
        }
    }

    fn check_screen(s: &SeidelMatrix, root: i64) {
        let exact = BorderedScan::new(s, root).unwrap();
        let modular = ModularScan::new(s, root);
        assert_eq!(modular.parent_rank(), exact.parent_rank());
        let mut space = Vec::new();
        let mut null = Vec::new();
        exact.for_each_in_column_space(|m, o| {
            space.push(m);
            if o.is_eq() {
                null.push(m);
            }
        });
        for (want, got) in [(space, modular.screen(false)), (null, modular.screen(true))] {
            assert!(want.iter().all(|m| got.binary_search(m).is_ok()), "{s:?} root {root}");
        }
    }

    #[test]
    fn modular_screen_covers_exact_lists() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(8);
        for _ in 0..150 {
            let n = rng.gen_range(1..=9);
            let s = SeidelMatrix::from_fn(n, |_, _| rng.gen_bool(0.5)).unwrap();
            for root in [-5, -3, -1, 1, 3] {
                check_screen(&s, root);
            }
        }
        for root in [-5, -3, -1, 0, 1, 3, 5] {
            check_screen(&SeidelMatrix::pentagon(), root);
            check_screen(&SeidelMatrix::conference_six(), root);
        }
        check_screen(&SeidelMatrix::k_construction(2, 3).unwrap(), -3);
        check_screen(&SeidelMatrix::all_positive(6).unwrap(), -1);
    }

    #[test]
    fn low_rank_parents() {
        // structured parents with eigenvalues of high multiplicity
        let pent = SeidelMatrix::pentagon();
        for root in [-5, -3, -1, 0, 1, 3, 5] {
            check_parent(&pent, root);
        }
        let k23 = SeidelMatrix::k_construction(2, 3).unwrap();
        for root in [-3, 1, 3] {
            check_parent(&k23, root);
        }
        check_parent(&SeidelMatrix::all_positive(6).unwrap(), -1);
        check_parent(&SeidelMatrix::all_positive(1).unwrap(), 0);
    }
}
