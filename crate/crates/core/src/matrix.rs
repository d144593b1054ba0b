//! Seidel matrices, signed permutations and ambient graphs.
//!
//! A Seidel matrix is stored as one bitmask per row: bit `j` of row `i` is set
//! iff `S[i][j] = -1`. This is exactly the adjacency matrix of the ambient
//! graph, so the two views share a representation.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Largest order representable with one `u64` word per row.
pub const MAX_ORDER: usize = 64;

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Symmetric ±1 matrix with zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeidelMatrix {
    order: usize,
    rows: Vec<u64>,
}

impl SeidelMatrix {
    /// `J - I` of the given order (every off-diagonal entry `+1`).
    pub fn all_positive(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(SeidelMatrix {
            order,
            rows: vec![0; order],
        })
    }

    /// `-(J - I)`.
    pub fn all_negative(order: usize) -> Result<Self> {
        Ok(Self::all_positive(order)?.negated())
    }

    /// Builds a matrix from its ambient-graph adjacency rows.
    ///
    /// Bits on the diagonal or above `order` are rejected, as are asymmetric rows.
    pub fn from_rows(order: usize, rows: Vec<u64>) -> Result<Self> {
        check_order(order)?;
        if rows.len() != order {
            return Err(Error::InvalidArgument(format!(
                "expected {order} rows, got {}",
                rows.len()
            )));
        }
        let mask = low_mask(order);
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 || r >> i & 1 == 1 {
                return Err(Error::InvalidArgument(format!("row {i} has stray bits")));
            }
            for j in 0..order {
                if (r >> j & 1) != (rows[j] >> i & 1) {
                    return Err(Error::InvalidArgument(format!(
                        "rows {i} and {j} are not symmetric"
                    )));
                }
            }
        }
        Ok(SeidelMatrix { order, rows })
    }

    /// Builds a matrix from a closure returning the sign of entry `(i, j)` for `i < j`.
    pub fn from_fn(order: usize, mut negative: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        check_order(order)?;
        let mut rows = vec![0u64; order];
        for j in 1..order {
            for i in 0..j {
                if negative(i, j) {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
        }
        Ok(SeidelMatrix { order, rows })
    }

    /// Parses a dense matrix of entries in `{-1, 0, 1}`.
    pub fn from_entries(entries: &[Vec<i64>]) -> Result<Self> {
        let n = entries.len();
        check_order(n)?;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument("matrix is not square".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                let ok = if i == j { x == 0 } else { x == 1 || x == -1 };
                if !ok || x != entries[j][i] {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) = {x} is not a Seidel entry"
                    )));
                }
            }
        }
        Self::from_fn(n, |i, j| entries[i][j] == -1)
    }

    /// Unchecked constructor for hot paths that maintain symmetry themselves.
    pub(crate) fn from_rows_unchecked(order: usize, rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), order);
        SeidelMatrix { order, rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Ambient-graph adjacency rows (bit `j` of row `i` set iff `S[i][j] = -1`).
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn is_negative(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Entry `S[i][j]` as an integer in `{-1, 0, 1}`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i == j {
            0
        } else if self.is_negative(i, j) {
            -1
        } else {
            1
        }
    }

    /// Sets `S[i][j] = S[j][i] = sign` for `i != j`.
    pub fn set(&mut self, i: usize, j: usize, sign: i64) {
        assert!(i != j && (sign == 1 || sign == -1));
        if sign == -1 {
            self.rows[i] |= 1 << j;
            self.rows[j] |= 1 << i;
        } else {
            self.rows[i] &= !(1 << j);
            self.rows[j] &= !(1 << i);
        }
    }

    /// The complement `-S`.
    pub fn negated(&self) -> Self {
        let mask = low_mask(self.order);
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| !r & mask & !(1 << i))
            .collect();
        SeidelMatrix {
            order: self.order,
            rows,
        }
    }

    /// Appends a row and column; bit `j` of `signs` set means the new entry in row `j` is `-1`.
    pub fn extended(&self, signs: u64) -> Result<Self> {
        let n = self.order;
        check_order(n + 1)?;
        let signs = signs & low_mask(n);
        let mut rows = Vec::with_capacity(n + 1);
        for (j, &r) in self.rows.iter().enumerate() {
            rows.push(r | ((signs >> j & 1) << n));
        }
        rows.push(signs);
        Ok(SeidelMatrix { order: n + 1, rows })
    }

    /// Principal submatrix on the given (distinct, in-range) indices, in the given order.
    pub fn submatrix(&self, idx: &[usize]) -> Result<Self> {
        for (a, &i) in idx.iter().enumerate() {
            if i >= self.order || idx[..a].contains(&i) {
                return Err(Error::InvalidArgument(format!("bad index {i}")));
            }
        }
        Self::from_fn(idx.len(), |a, b| self.is_negative(idx[a], idx[b]))
    }

    /// Deletes row and column `i`.
    pub fn deleted(&self, i: usize) -> Result<Self> {
        let idx: Vec<usize> = (0..self.order).filter(|&k| k != i).collect();
        self.submatrix(&idx)
    }

    /// `S + shift·I` as an integer matrix.
    pub fn to_int_matrix(&self, shift: i64) -> IntMatrix {
        IntMatrix::from_fn(self.order, |i, j| if i == j { shift } else { self.entry(i, j) })
    }

    /// Sign bits of the strict upper triangle in graph6 order
    /// (`for j in 1..n, for i in 0..j`), `true` meaning `-1`.
    pub fn sign_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (1..self.order).flat_map(move |j| (0..j).map(move |i| self.is_negative(i, j)))
    }

    pub fn ambient_graph(&self) -> AmbientGraph {
        AmbientGraph {
            order: self.order,
            rows: self.rows.clone(),
        }
    }

    pub fn from_ambient(g: &AmbientGraph) -> Self {
        SeidelMatrix {
            order: g.order,
            rows: g.rows.clone(),
        }
    }

    /// Switches (negates row and column of) every vertex in `set`.
    pub fn switched(&self, set: u64) -> Self {
        let mask = low_mask(self.order);
        let set = set & mask;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let toggle = if set >> i & 1 == 1 { !set & mask } else { set };
                (r ^ toggle) & !(1 << i)
            })
            .collect();
        SeidelMatrix {
            order: self.order,
            rows,
        }
    }

    /// `PSP^T` for a signed permutation `P`.
    pub fn apply(&self, g: &SignedPermutation) -> Result<Self> {
        if g.order() != self.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: g.order(),
            });
        }
        let n = self.order;
        let mut rows = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let flip = (g.flips >> i ^ g.flips >> j) & 1 == 1;
                if self.is_negative(i, j) != flip {
                    rows[g.perm[i]] |= 1 << g.perm[j];
                }
            }
        }
        Ok(SeidelMatrix { order: n, rows })
    }

    /// `J_a ⊗ (S - I) + I`, indexed as `x·n + y` for block `x` and row `y`.
    pub fn blowup(&self, a: usize) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidArgument("blowup factor must be >= 1".into()));
        }
        let b = self.order;
        Self::from_fn(a * b, |p, q| {
            let (y, y2) = (p % b, q % b);
            y == y2 || self.is_negative(y, y2)
        })
    }

    /// `K(a,b) = J_a ⊗ (J_b - 2I_b) + I_{ab}`.
    pub fn k_construction(a: usize, b: usize) -> Result<Self> {
        if a < 2 || b < 3 {
            return Err(Error::InvalidArgument(format!(
                "K(a,b) needs a >= 2 and b >= 3, got ({a},{b})"
            )));
        }
        Self::all_positive(b)?.blowup(a)
    }

    /// `t[i·n + j]`: the number of `k ∉ {i, j}` with `S_ij·S_ik·S_jk = +1`,
    /// a switching invariant of the pair; zero on the diagonal.
    ///
    /// The parity of negative entries on the triangle `{i, j, k}` is
    /// `a_ij ⊕ (a_ik ⊕ a_jk)`, so each count is one popcount of `row_i ^ row_j`.
    pub(crate) fn triangle_counts(&self) -> Vec<u32> {
        let n = self.order;
        let full = low_mask(n);
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let x = self.rows[i] ^ self.rows[j];
                let live = full & !(1 << i) & !(1 << j);
                let hits = if self.rows[i] >> j & 1 == 1 { x } else { !x };
                let c = (hits & live).count_ones();
                t[i * n + j] = c;
                t[j * n + i] = c;
            }
        }
        t
    }

    /// `f(i) = #{(j, k) ordered, distinct, ≠ i : S_ij·S_ik·S_jk = +1}`.
    pub(crate) fn triple_invariant(&self) -> Vec<u32> {
        let n = self.order;
        let full = low_mask(n);
        (0..n)
            .map(|i| {
                let ri = self.rows[i];
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| {
                        let t = ri ^ self.rows[j];
                        let live = full & !(1 << i) & !(1 << j);
                        let hits = if ri >> j & 1 == 1 { t } else { !t };
                        (hits & live).count_ones()
                    })
                    .sum()
            })
            .collect()
    }

    /// Seidel matrix of the 5-cycle, spectrum `{[0]^1, [±√5]^2}`.
    pub fn pentagon() -> Self {
        Self::from_fn(5, |i, j| (j - i) % 5 == 1 || (j - i) % 5 == 4).expect("order 5")
    }

    /// The order-6 conference matrix: pentagon plus an isolated vertex, `S² = 5I`.
    pub fn conference_six() -> Self {
        let p = Self::pentagon();
        p.extended(0).expect("order 6")
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::OrderOutOfRange(n, MAX_ORDER))
    } else {
        Ok(())
    }
}

impl fmt::Debug for SeidelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeidelMatrix({}; ", self.order)?;
        for i in 0..self.order {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.order {
                f.write_str(match self.entry(i, j) {
                    0 => "0",
                    1 => "+",
                    _ => "-",
                })?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for SeidelMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order)
                .map(|j| format!("{:>2}", self.entry(i, j)))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation together with a set of row/column negations.
///
/// Applying it sends row `i` to position `perm[i]`, negated when bit `i` of
/// `flips` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    flips: u64,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            flips: 0,
        }
    }

    /// `-I`: negates every row, fixes every matrix.
    pub fn global_flip(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            flips: low_mask(n),
        }
    }

    pub fn new(perm: Vec<usize>, flips: u64) -> Result<Self> {
        let n = perm.len();
        if n > MAX_ORDER {
            return Err(Error::InvalidPermutation(format!("order {n} too large")));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
            }
            seen[p] = true;
        }
        if flips & !low_mask(n) != 0 {
            return Err(Error::InvalidPermutation("flip bits beyond order".into()));
        }
        Ok(SignedPermutation { perm, flips })
    }

    pub fn order(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn flips(&self) -> u64 {
        self.flips
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        let n = self.order();
        let mut perm = vec![0; n];
        let mut flips = 0u64;
        for i in 0..n {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            let f = (other.flips >> i ^ self.flips >> mid) & 1;
            flips |= f << i;
        }
        Ok(SignedPermutation { perm, flips })
    }

    pub fn inverse(&self) -> Self {
        let n = self.order();
        let mut perm = vec![0; n];
        let mut flips = 0u64;
        for i in 0..n {
            perm[self.perm[i]] = i;
            flips |= (self.flips >> i & 1) << self.perm[i];
        }
        SignedPermutation { perm, flips }
    }
}

/// Simple graph read directly off a Seidel matrix: `A = (J - I - S)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientGraph {
    order: usize,
    rows: Vec<u64>,
}

impl AmbientGraph {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.rows[i].count_ones()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.count_ones()).collect()
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_global_flip_fix_everything() {
        let s = SeidelMatrix::from_fn(6, |i, j| (i * 7 + j * 3) % 5 < 2).unwrap();
        assert_eq!(s.apply(&SignedPermutation::identity(6)).unwrap(), s);
        assert_eq!(s.apply(&SignedPermutation::global_flip(6)).unwrap(), s);
    }

    #[test]
    fn flipping_row_zero_of_j3_minus_i3() {
        let s = SeidelMatrix::all_positive(3).unwrap();
        let g = SignedPermutation::new(vec![0, 1, 2], 0b001).unwrap();
        let t = s.apply(&g).unwrap();
        assert_eq!(t.entry(0, 1), -1);
        assert_eq!(t.entry(0, 2), -1);
        assert_eq!(t.entry(1, 2), 1);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let s = SeidelMatrix::all_positive(3).unwrap();
        assert!(matches!(
            s.apply(&SignedPermutation::identity(4)),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn composition_matches_sequential_application() {
        let s = SeidelMatrix::from_fn(5, |i, j| (i + 2 * j) % 3 == 0).unwrap();
        let g = SignedPermutation::new(vec![2, 0, 4, 1, 3], 0b10110).unwrap();
        let h = SignedPermutation::new(vec![1, 3, 0, 4, 2], 0b01011).unwrap();
        let seq = s.apply(&h).unwrap().apply(&g).unwrap();
        assert_eq!(s.apply(&g.compose(&h).unwrap()).unwrap(), seq);
        let back = seq.apply(&g.compose(&h).unwrap().inverse()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn blowup_of_j3_is_k23() {
        let j3 = SeidelMatrix::all_positive(3).unwrap();
        assert_eq!(j3.blowup(2).unwrap(), SeidelMatrix::k_construction(2, 3).unwrap());
        let s = SeidelMatrix::pentagon();
        assert_eq!(s.blowup(1).unwrap(), s);
    }

    #[test]
    fn conference_six_squares_to_five_identity() {
        let m = SeidelMatrix::conference_six().to_int_matrix(0);
        let sq = m.mul(&m);
        assert_eq!(sq, IntMatrix::scalar(6, 5));
    }

    #[test]
    fn switching_preserves_products_of_triples() {
        let s = SeidelMatrix::from_fn(7, |i, j| (i * j + i) % 3 == 1).unwrap();
        let t = s.switched(0b1010011);
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    if i != j && j != k && i != k {
                        assert_eq!(
                            s.entry(i, j) * s.entry(j, k) * s.entry(i, k),
                            t.entry(i, j) * t.entry(j, k) * t.entry(i, k)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(SeidelMatrix::from_entries(&[vec![0, 1], vec![-1, 0]]).is_err());
        assert!(SeidelMatrix::from_entries(&[vec![1, 1], vec![1, 0]]).is_err());
        assert!(SeidelMatrix::all_positive(0).is_err());
        assert!(SeidelMatrix::from_rows(2, vec![0b10, 0]).is_err());
    }
}
