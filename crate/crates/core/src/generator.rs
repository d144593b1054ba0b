//! Isomorph-free generation of Seidel matrices by canonical augmentation.
//!
//! A child of order `n + 1` is kept only when its new row is the canonical
//! row to delete: the row with the smallest value among rows whose triple
//! invariant `f` is unique, or, when no value is unique, a row in the orbit
//! of the first canonically labelled row. Each class of children therefore
//! comes from exactly one parent class, and only siblings need deduplication.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::colored::{refined_invariant, seidel_canon};
use crate::error::{Error, Result};
use crate::linalg::bordered::ModularScan;
use crate::linalg::{self, BorderedScan};
use crate::matrix::SeidelMatrix;
use crate::spectral;
use crate::spectrum::SpectrumSpec;

/// `f(i)`: the number of ordered pairs `(j, k)` of other rows whose 3×3
/// principal submatrix with `i` is equivalent to `J₃ − I₃`.
pub fn compute_invariant(s: &SeidelMatrix) -> Result<Vec<u32>> {
    if s.order() < 3 {
        return Err(Error::InvalidArgument(format!(
            "the triple invariant needs order >= 3, got {}",
            s.order()
        )));
    }
    Ok(s.triple_invariant())
}

/// The signs of a new row as a bitmask (bit `i` set: `S_in = −1`), always
/// with bit 0 clear; switching the new row maps a mask to its complement.
pub type RowMask = u64;

/// What a prune predicate can say about the extensions of an accepted parent.
pub enum Candidates {
    /// Every extension survives.
    All,
    /// Exactly these masks survive, ascending.
    Exactly(Vec<RowMask>),
    /// Each child must be tested with [`Prune::accepts`].
    Unknown,
}

/// A filter applied to every generated matrix.
///
/// Implementations must be invariant under equivalence and hereditary: if a
/// matrix fails, so does every extension of it.
pub trait Prune: Send + Sync + fmt::Debug {
    fn accepts(&self, s: &SeidelMatrix) -> bool;

    fn candidates(&self, _parent: &SeidelMatrix) -> Candidates {
        Candidates::Unknown
    }

    /// Masks to enumerate for `parent` and the predicates still to be
    /// tested on each child.
    fn plan(&self, parent: &SeidelMatrix) -> Plan<'_> {
        match self.candidates(parent) {
            Candidates::All => Plan { masks: None, residual: Vec::new() },
            Candidates::Exactly(m) => Plan { masks: Some(m), residual: Vec::new() },
            Candidates::Unknown => Plan { masks: None, residual: vec![self.as_dyn()] },
        }
    }

    #[doc(hidden)]
    fn as_dyn(&self) -> &dyn Prune;
}

pub struct Plan<'a> {
    /// `None` means all `2^(n−1)` masks.
    pub masks: Option<Vec<RowMask>>,
    pub residual: Vec<&'a dyn Prune>,
}

macro_rules! as_dyn {
    () => {
        fn as_dyn(&self) -> &dyn Prune {
            self
        }
    };
}

#[derive(Clone, Copy, Debug, Default)]
pub struct NoPrune;

impl Prune for NoPrune {
    fn accepts(&self, _: &SeidelMatrix) -> bool {
        true
    }
    fn candidates(&self, _: &SeidelMatrix) -> Candidates {
        Candidates::All
    }
    as_dyn!();
}

fn column_space_masks(scan: &BorderedScan, keep: impl Fn(std::cmp::Ordering) -> bool) -> Vec<RowMask> {
    let mut out = Vec::new();
    scan.for_each_in_column_space(|m, s| {
        if keep(s) {
            out.push(m);
        }
    });
    out.sort_unstable();
    out
}

/// `λ_min(S) ≥ x`, i.e. `S − xI` positive semidefinite.
#[derive(Clone, Copy, Debug)]
pub struct LambdaMinAtLeast(pub i64);

impl Prune for LambdaMinAtLeast {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        linalg::is_psd_elimination(&s.to_int_matrix(-self.0))
    }
    fn candidates(&self, parent: &SeidelMatrix) -> Candidates {
        psd_candidates(parent, self.0)
    }
    as_dyn!();
}

fn psd_candidates(parent: &SeidelMatrix, x: i64) -> Candidates {
    match BorderedScan::new(parent, x) {
        Some(scan) if scan.parent_is_psd() => {
            Candidates::Exactly(column_space_masks(&scan, |s| s.is_ge()))
        }
        Some(_) => Candidates::Exactly(Vec::new()),
        None => Candidates::Unknown,
    }
}

/// `λ_max(S) ≤ x`.
#[derive(Clone, Copy, Debug)]
pub struct LambdaMaxAtMost(pub i64);

impl Prune for LambdaMaxAtMost {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        linalg::is_psd_elimination(&s.negated().to_int_matrix(self.0))
    }
    fn candidates(&self, parent: &SeidelMatrix) -> Candidates {
        // a mask and its complement are the same border up to sign
        psd_candidates(&parent.negated(), -self.0)
    }
    as_dyn!();
}

/// `rank(S − root·I) ≤ cap`: at order `m` the eigenvalue `root` has
/// multiplicity at least `m − cap`.
#[derive(Clone, Copy, Debug)]
pub struct RankCap {
    pub root: i64,
    pub cap: usize,
}

impl Prune for RankCap {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        s.order() <= self.cap || linalg::rank(&s.to_int_matrix(-self.root)) <= self.cap
    }
    fn candidates(&self, parent: &SeidelMatrix) -> Candidates {
        if parent.order() < self.cap {
            return Candidates::All;
        }
        let scan = ModularScan::new(parent, self.root);
        let r = scan.parent_rank();
        if r + 2 <= self.cap {
            return Candidates::All;
        }
        if r > self.cap {
            return Candidates::Exactly(Vec::new());
        }
        let mut masks = scan.screen(r == self.cap);
        masks.retain(|&m| {
            let child = parent.extended(m).expect("order checked by caller");
            linalg::modular::rank_multimodular(&child.to_int_matrix(-self.root)).0 <= self.cap
        });
        Candidates::Exactly(masks)
    }
    fn plan(&self, parent: &SeidelMatrix) -> Plan<'_> {
        // The screen can only over-report; survivors are confirmed by
        // `accepts`, which the generator runs after the cheap invariant test.
        if parent.order() < self.cap {
            return Plan { masks: None, residual: Vec::new() };
        }
        let scan = ModularScan::new(parent, self.root);
        let r = scan.parent_rank();
        if r + 2 <= self.cap {
            return Plan { masks: None, residual: Vec::new() };
        }
        if r > self.cap {
            return Plan { masks: Some(Vec::new()), residual: Vec::new() };
        }
        Plan { masks: Some(scan.screen(r == self.cap)), residual: vec![self.as_dyn()] }
    }
    as_dyn!();
}

/// All eigenvalues strictly inside `(lo/100, hi/100)`.
#[derive(Clone, Copy, Debug)]
pub struct Interval {
    pub lo_times_100: i64,
    pub hi_times_100: i64,
}

impl Prune for Interval {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        spectral::in_interval_open(s, self.lo_times_100, self.hi_times_100)
    }
    as_dyn!();
}

/// The roots of `x² − px + q` have multiplicity at least
/// `mult − (order − m)` at order `m`.
#[derive(Clone, Copy, Debug)]
pub struct QuadMultiplicity {
    pub p: i64,
    pub q: i64,
    pub order: usize,
    pub mult: usize,
}

impl Prune for QuadMultiplicity {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        let need = (self.mult + s.order()).saturating_sub(self.order);
        need == 0 || spectral::quad_multiplicity_in(&spectral::charpoly(s), self.p, self.q) >= need
    }
    as_dyn!();
}

/// Passes everything below the spectrum's order; at that order, only
/// matrices with exactly this spectrum.
#[derive(Clone, Debug)]
pub struct ExactSpectrum(pub SpectrumSpec);

impl Prune for ExactSpectrum {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        let n = self.0.order();
        s.order() < n || (s.order() == n && spectral::charpoly(s) == self.0.charpoly())
    }
    fn candidates(&self, parent: &SeidelMatrix) -> Candidates {
        if parent.order() + 1 < self.0.order() {
            Candidates::All
        } else {
            Candidates::Unknown
        }
    }
    as_dyn!();
}

/// Conjunction of predicates, tested in the given order.
#[derive(Debug, Default)]
pub struct Composite(pub Vec<Box<dyn Prune>>);

impl Prune for Composite {
    fn accepts(&self, s: &SeidelMatrix) -> bool {
        self.0.iter().all(|p| p.accepts(s))
    }

    fn plan(&self, parent: &SeidelMatrix) -> Plan<'_> {
        let mut masks: Option<Vec<RowMask>> = None;
        let mut residual = Vec::new();
        for p in &self.0 {
            let sub = p.plan(parent);
            residual.extend(sub.residual);
            if let Some(m) = sub.masks {
                masks = Some(match masks {
                    None => m,
                    Some(prev) => intersect_sorted(&prev, &m),
                });
            }
        }
        Plan { masks, residual }
    }
    as_dyn!();
}

fn intersect_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Whether only `±I` fixes `s`, when that is known.
type Rigid = Option<bool>;

/// Canonical augmentation engine for one prune predicate.
#[derive(Clone, Copy)]
pub struct Generator<'a> {
    prune: &'a dyn Prune,
    use_invariant: bool,
}

impl<'a> Generator<'a> {
    pub fn new(prune: &'a dyn Prune) -> Self {
        Generator { prune, use_invariant: true }
    }

    /// Always decides acceptance by canonical labelling, never by the
    /// triple invariant.
    pub fn without_invariant(mut self) -> Self {
        self.use_invariant = false;
        self
    }

    /// One representative of every class of surviving children whose
    /// canonical parent is `parent`.
    pub fn children(&self, parent: &SeidelMatrix) -> Vec<SeidelMatrix> {
        self.children_inner(parent, None).into_iter().map(|c| c.0).collect()
    }

    fn children_inner(&self, parent: &SeidelMatrix, rigid: Rigid) -> Vec<(SeidelMatrix, Rigid)> {
        let n = parent.order();
        let plan = self.prune.plan(parent);
        let fast = self.use_invariant && n + 1 > 3;
        let parent_rigid = if fast { rigid.unwrap_or_else(|| self.is_rigid(parent)) } else { false };
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        let mut visit = |mask: u64| {
            let child = parent.extended(mask).expect("order checked by caller");
            if !fast {
                if !plan.residual.iter().all(|p| p.accepts(&child)) {
                    return;
                }
                let c = seidel_canon(&child, None, false);
                if c.row_orbits[n] == c.row_orbits[c.first_row] && seen.insert(c.key) {
                    out.push((child, None));
                }
                return;
            }
            let f = child.triple_invariant();
            let unique = |i: usize| f.iter().filter(|&&v| v == f[i]).count() == 1;
            let best = (0..=n).filter(|&i| unique(i)).min_by_key(|&i| f[i]);
            if best.is_some_and(|i| i != n) {
                return;
            }
            if !plan.residual.iter().all(|p| p.accepts(&child)) {
                return;
            }
            if best.is_none() {
                // Canonical labelling starts from the refined invariant, so a
                // unique smallest refined value names the first row directly.
                let r = refined_invariant(&child, &f);
                let first: Vec<usize> = (0..=n).filter(|&i| r[i] == 0).collect();
                if first.len() == 1 && first[0] != n {
                    return;
                }
                if first.len() == 1 && parent_rigid {
                    out.push((child, None));
                    return;
                }
            } else if parent_rigid {
                // siblings can only be equivalent through an automorphism
                // of the parent fixing the new row
                let rigid = (0..=n).all(unique).then_some(true);
                out.push((child, rigid));
                return;
            }
            let c = seidel_canon(&child, Some(&f), false);
            if best.is_none() && c.row_orbits[n] != c.row_orbits[c.first_row] {
                return;
            }
            if parent_rigid || seen.insert(c.key) {
                let rigid = c.row_orbits.iter().enumerate().all(|(i, &o)| i == o);
                out.push((child, Some(rigid)));
            }
        };
        match &plan.masks {
            Some(list) => list.iter().for_each(|&m| visit(m)),
            None => (0..1u64 << (n - 1)).for_each(|m| visit(m << 1)),
        }
        out
    }

    fn is_rigid(&self, s: &SeidelMatrix) -> bool {
        let f = s.triple_invariant();
        let r = refined_invariant(s, &f);
        if r.iter().max().is_some_and(|&m| m as usize + 1 == r.len()) {
            // automorphisms preserve the invariant, hence fix every row
            return true;
        }
        let c = seidel_canon(s, Some(&f), false);
        c.row_orbits.iter().enumerate().all(|(i, &o)| i == o)
    }

    /// Depth-first extension of one seed to `target`, calling `emit` on every
    /// class reached at `target` and adding the number of classes met at
    /// each order to `counts[order]`.
    pub fn extend(
        &self,
        seed: &SeidelMatrix,
        target: usize,
        counts: &mut [u64],
        emit: &mut dyn FnMut(SeidelMatrix),
    ) {
        counts[seed.order()] += 1;
        if seed.order() == target {
            emit(seed.clone());
            return;
        }
        self.descend(seed, None, target, counts, emit);
    }

    fn descend(
        &self,
        s: &SeidelMatrix,
        rigid: Rigid,
        target: usize,
        counts: &mut [u64],
        emit: &mut dyn FnMut(SeidelMatrix),
    ) {
        for (child, r) in self.children_inner(s, rigid) {
            counts[child.order()] += 1;
            if child.order() == target {
                emit(child);
            } else {
                self.descend(&child, r, target, counts, emit);
            }
        }
    }
}

/// Children of `s` under `prune`: one per class whose canonical parent is `s`.
pub fn augment_one(s: &SeidelMatrix, prune: &dyn Prune) -> Vec<SeidelMatrix> {
    Generator::new(prune).children(s)
}

/// How a run is split and parallelised.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub jobs: usize,
    /// `(i, m)`: only seeds whose index is `i` modulo `m`.
    pub shard: Option<(usize, usize)>,
    /// Number of selected seeds already processed (resume point).
    pub skip: usize,
    pub use_invariant: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, shard: None, skip: 0, use_invariant: true }
    }
}

/// Everything produced from one seed.
#[derive(Clone, Debug)]
pub struct SeedResult {
    /// Index of the seed in the input list.
    pub index: usize,
    pub matrices: Vec<SeidelMatrix>,
    /// Classes met at each order, indexed by order.
    pub counts: Vec<u64>,
}

/// Extends every selected seed to `target`, reporting results in seed order.
///
/// Seeds must share one order and hold one representative per class; seeds
/// failing `prune` are skipped.
pub fn run(
    seeds: &[SeidelMatrix],
    target: usize,
    prune: &dyn Prune,
    opts: RunOptions,
    on_seed: &mut dyn FnMut(SeedResult) -> Result<()>,
) -> Result<()> {
    let Some(first) = seeds.first() else {
        return Ok(());
    };
    let start = first.order();
    if let Some(s) = seeds.iter().find(|s| s.order() != start) {
        return Err(Error::OrderMismatch { left: start, right: s.order() });
    }
    if target < start || target > crate::matrix::MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "cannot extend order {start} seeds to order {target}"
        )));
    }
    if let Some((i, m)) = opts.shard {
        if m == 0 || i >= m {
            return Err(Error::InvalidArgument(format!("bad shard {i}/{m}")));
        }
    }
    let mut g = Generator::new(prune);
    if !opts.use_invariant {
        g = g.without_invariant();
    }
    let selected: Vec<usize> = (0..seeds.len())
        .filter(|&k| opts.shard.is_none_or(|(i, m)| k % m == i))
        .skip(opts.skip)
        .collect();
    let one = |k: usize| {
        let mut counts = vec![0u64; target + 1];
        let mut matrices = Vec::new();
        if prune.accepts(&seeds[k]) {
            g.extend(&seeds[k], target, &mut counts, &mut |s| matrices.push(s));
        }
        SeedResult { index: k, matrices, counts }
    };
    if opts.jobs <= 1 {
        for &k in &selected {
            on_seed(one(k))?;
        }
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    for chunk in selected.chunks(opts.jobs * 16) {
        let results: Vec<SeedResult> = pool.install(|| chunk.par_iter().map(|&k| one(k)).collect());
        for r in results {
            on_seed(r)?;
        }
    }
    Ok(())
}

/// Result of [`generate`].
#[derive(Clone, Debug)]
pub struct Generated {
    pub matrices: Vec<SeidelMatrix>,
    /// Classes met at each order, indexed by order.
    pub counts: Vec<u64>,
}

/// Extends `seeds` to order `target` and collects the classes reached.
pub fn generate(
    target: usize,
    prune: &dyn Prune,
    seeds: &[SeidelMatrix],
    opts: RunOptions,
) -> Result<Generated> {
    let mut out = Generated { matrices: Vec::new(), counts: vec![0; target + 1] };
    run(seeds, target, prune, opts, &mut |r| {
        out.matrices.extend(r.matrices);
        for (a, b) in out.counts.iter_mut().zip(r.counts) {
            *a += b;
        }
        Ok(())
    })?;
    Ok(out)
}

/// The one class of order 1.
pub fn order_one_seed() -> Vec<SeidelMatrix> {
    vec![SeidelMatrix::all_positive(1).expect("order 1")]
}

/// All classes of order `n` surviving `prune`, starting from order 1.
pub fn census(n: usize, prune: &dyn Prune) -> Result<Vec<SeidelMatrix>> {
    Ok(generate(n, prune, &order_one_seed(), RunOptions::default())?.matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::canonical_form;
    use rand::{Rng, SeedableRng};

    fn counts_from_one(n: usize, prune: &dyn Prune, use_invariant: bool) -> Vec<u64> {
        let opts = RunOptions { use_invariant, ..Default::default() };
        generate(n, prune, &order_one_seed(), opts).unwrap().counts
    }

    #[test]
    fn invariant_examples() {
        let j3 = SeidelMatrix::all_positive(3).unwrap();
        assert_eq!(compute_invariant(&j3).unwrap(), vec![2, 2, 2]);
        let odd = SeidelMatrix::from_fn(3, |i, j| (i, j) == (0, 1)).unwrap();
        assert_eq!(compute_invariant(&odd).unwrap(), vec![0, 0, 0]);
        assert!(compute_invariant(&SeidelMatrix::all_positive(2).unwrap()).is_err());
    }

    #[test]
    fn small_census_counts() {
        let c = counts_from_one(8, &NoPrune, true);
        assert_eq!(&c[1..], &[1, 1, 2, 3, 7, 16, 54, 243]);
    }

    #[test]
    fn invariant_path_does_not_change_counts() {
        assert_eq!(counts_from_one(8, &NoPrune, false), counts_from_one(8, &NoPrune, true));
    }

    #[test]
    fn census_from_intermediate_order() {
        let c4 = census(4, &NoPrune).unwrap();
        let c5 = generate(5, &NoPrune, &c4, RunOptions::default()).unwrap();
        assert_eq!(c5.matrices.len(), 7);
        assert_eq!(c5.counts[4], 3);
        let c2 = census(2, &NoPrune).unwrap();
        assert_eq!(generate(3, &NoPrune, &c2, RunOptions::default()).unwrap().matrices.len(), 2);
    }

    #[test]
    fn lambda_min_census() {
        let c = counts_from_one(9, &LambdaMinAtLeast(-3), true);
        assert_eq!(&c[3..], &[2, 3, 5, 9, 16, 25, 40]);
    }

    #[test]
    fn shards_partition_the_output() {
        let c5 = census(5, &NoPrune).unwrap();
        let whole = generate(8, &NoPrune, &c5, RunOptions::default()).unwrap();
        let mut keys = HashSet::new();
        let mut total = 0;
        for i in 0..3 {
            let opts = RunOptions { shard: Some((i, 3)), ..Default::default() };
            for s in generate(8, &NoPrune, &c5, opts).unwrap().matrices {
                assert!(keys.insert(canonical_form(&s)));
                total += 1;
            }
        }
        assert_eq!(total, whole.matrices.len());
    }

    #[test]
    fn parallel_run_matches_serial() {
        let c5 = census(5, &NoPrune).unwrap();
        let serial = generate(8, &NoPrune, &c5, RunOptions::default()).unwrap();
        let par = generate(8, &NoPrune, &c5, RunOptions { jobs: 3, ..Default::default() }).unwrap();
        assert_eq!(serial.matrices, par.matrices);
        assert_eq!(serial.counts, par.counts);
    }

    #[test]
    fn resume_skips_completed_seeds() {
        let c5 = census(5, &NoPrune).unwrap();
        let whole = generate(7, &NoPrune, &c5, RunOptions::default()).unwrap();
        let mut first = Vec::new();
        run(&c5, 7, &NoPrune, RunOptions::default(), &mut |r| {
            if r.index < 3 {
                first.extend(r.matrices);
            }
            Ok(())
        })
        .unwrap();
        let rest = generate(7, &NoPrune, &c5, RunOptions { skip: 3, ..Default::default() }).unwrap();
        first.extend(rest.matrices);
        assert_eq!(first, whole.matrices);
    }

    fn check_candidates_exact(prune: &dyn Prune, parents: &[SeidelMatrix]) {
        for parent in parents {
            if !prune.accepts(parent) {
                continue;
            }
            let n = parent.order();
            let plan = prune.plan(parent);
            let expect: Vec<u64> = (0..1u64 << (n - 1))
                .map(|m| m << 1)
                .filter(|&m| prune.accepts(&parent.extended(m).unwrap()))
                .collect();
            let got: Vec<u64> = match plan.masks {
                Some(m) => m,
                None => (0..1u64 << (n - 1)).map(|m| m << 1).collect(),
            };
            let got: Vec<u64> = got
                .into_iter()
                .filter(|&m| plan.residual.iter().all(|p| p.accepts(&parent.extended(m).unwrap())))
                .collect();
            assert_eq!(got, expect, "{prune:?} on {parent:?}");
        }
    }

    #[test]
    fn candidate_lists_are_exact() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let mut parents = census(7, &NoPrune).unwrap();
        parents.extend(census(6, &LambdaMinAtLeast(-3)).unwrap());
        for _ in 0..30 {
            let d = rng.gen_range(0.0..1.0);
            parents.push(SeidelMatrix::from_fn(9, |_, _| rng.gen_bool(d)).unwrap());
        }
        let prunes: Vec<Box<dyn Prune>> = vec![
            Box::new(LambdaMinAtLeast(-3)),
            Box::new(LambdaMinAtLeast(-5)),
            Box::new(LambdaMaxAtMost(3)),
            Box::new(LambdaMaxAtMost(5)),
            Box::new(RankCap { root: -3, cap: 5 }),
            Box::new(RankCap { root: 1, cap: 6 }),
            Box::new(RankCap { root: -5, cap: 7 }),
            Box::new(Composite(vec![
                Box::new(RankCap { root: -3, cap: 6 }),
                Box::new(LambdaMinAtLeast(-3)),
                Box::new(Interval { lo_times_100: -400, hi_times_100: 600 }),
            ])),
        ];
        for p in &prunes {
            check_candidates_exact(p.as_ref(), &parents);
        }
    }

    #[test]
    fn shipped_prunes_are_hereditary() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let prunes: Vec<Box<dyn Prune>> = vec![
            Box::new(LambdaMinAtLeast(-3)),
            Box::new(LambdaMaxAtMost(5)),
            Box::new(RankCap { root: -3, cap: 6 }),
            Box::new(Interval { lo_times_100: -301, hi_times_100: 501 }),
            Box::new(QuadMultiplicity { p: 0, q: -5, order: 10, mult: 4 }),
        ];
        let mut checked = 0;
        for _ in 0..3000 {
            let n = rng.gen_range(4..=10);
            let d = rng.gen_range(0.0..1.0);
            let s = SeidelMatrix::from_fn(n, |_, _| rng.gen_bool(d)).unwrap();
            for p in &prunes {
                if p.accepts(&s) {
                    let i = rng.gen_range(0..n);
                    assert!(p.accepts(&s.deleted(i).unwrap()), "{p:?} {s:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 500);
    }
}
