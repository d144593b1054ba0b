//! Equiangular lines as Seidel matrices.
//!
//! `n` lines in `R^d` at common angle `arccos(1/k)` correspond to an order-`n`
//! Seidel matrix with smallest eigenvalue `−k` of multiplicity `n − d`; the
//! Gram matrix of unit vectors spanning the lines is `(S + kI)/k`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generator::{Composite, Generator, LambdaMinAtLeast, Prune, RankCap};
use crate::linalg::{self, IntMatrix};
use crate::matrix::SeidelMatrix;

/// Integer form `S + kI` of a Gram matrix with implied scale `1/k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    pub scaled: IntMatrix,
    pub k: i64,
    /// Dimension spanned by the lines.
    pub rank: usize,
}

/// The Gram matrix of the lines described by `s` at angle `arccos(1/k)`.
pub fn to_gram(s: &SeidelMatrix, k: i64) -> Result<Gram> {
    if k <= 0 {
        return Err(Error::InvalidArgument(format!("angle inverse {k} must be positive")));
    }
    let scaled = s.to_int_matrix(k);
    if !linalg::is_psd_elimination(&scaled) {
        return Err(Error::InvalidArgument(format!("{} is below the smallest eigenvalue", -k)));
    }
    let rank = linalg::rank(&scaled);
    if rank == s.order() {
        return Err(Error::InvalidArgument(format!("{} is not an eigenvalue", -k)));
    }
    debug_assert!(crate::spectral::is_psd(&scaled));
    Ok(Gram { scaled, k, rank })
}

/// Lines in `R^dimension` at angle `arccos(1/angle_inverse)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineSystemTarget {
    pub dimension: usize,
    pub angle_inverse: i64,
}

impl LineSystemTarget {
    pub fn new(dimension: usize, angle_inverse: i64) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidArgument(format!("dimension {dimension} below 2")));
        }
        if angle_inverse < 1 || angle_inverse % 2 == 0 {
            return Err(Error::InvalidArgument(format!("angle 1/{angle_inverse} needs an odd denominator")));
        }
        Ok(LineSystemTarget { dimension, angle_inverse })
    }

    /// The eigenvalue `−k` has multiplicity at least `m − d` at order `m`;
    /// with `lambda_min`, it is also the smallest eigenvalue.
    pub fn prune(&self, lambda_min: bool) -> Box<dyn Prune> {
        let cap = RankCap { root: -self.angle_inverse, cap: self.dimension };
        if lambda_min {
            Box::new(Composite(vec![Box::new(cap), Box::new(LambdaMinAtLeast(-self.angle_inverse))]))
        } else {
            Box::new(cap)
        }
    }
}

/// Per-order class counts of a line search.
#[derive(Clone, Debug, Default)]
pub struct LineSearch {
    pub counts: BTreeMap<usize, u64>,
    /// Classes at the largest order reached with a nonzero count.
    pub largest: Vec<SeidelMatrix>,
}

impl LineSearch {
    /// Largest order with at least one class.
    pub fn max_order(&self) -> Option<usize> {
        self.counts.iter().rev().find(|t| *t.1 > 0).map(|t| *t.0)
    }
}

/// Extends `seeds` (one order, one representative per class, already
/// satisfying the prune) level by level up to `n_max`, stopping early at
/// extinction. `on_level` sees every level, seeds included.
pub fn search_lines(
    target: LineSystemTarget,
    lambda_min: bool,
    seeds: &[SeidelMatrix],
    n_max: usize,
    jobs: usize,
    on_level: &mut dyn FnMut(usize, &[SeidelMatrix]) -> Result<()>,
) -> Result<LineSearch> {
    crate::census::check_single_order(seeds)?;
    let prune = target.prune(lambda_min);
    let mut level: Vec<SeidelMatrix> = seeds.iter().filter(|s| prune.accepts(s)).cloned().collect();
    let Some(start) = seeds.first().map(SeidelMatrix::order) else {
        return Ok(LineSearch::default());
    };
    if n_max < start {
        return Err(Error::InvalidArgument(format!("max order {n_max} is below the seed order {start}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let g = Generator::new(prune.as_ref());
    let mut out = LineSearch::default();
    for order in start..=n_max {
        out.counts.insert(order, level.len() as u64);
        on_level(order, &level)?;
        if level.is_empty() {
            break;
        }
        if order == n_max {
            break;
        }
        let next: Vec<SeidelMatrix> = pool.install(|| level.par_iter().flat_map_iter(|s| g.children(s)).collect());
        if next.is_empty() {
            out.largest = std::mem::take(&mut level);
        }
        level = next;
    }
    if !level.is_empty() {
        out.largest = level;
    }
    // heredity: nothing can reappear once a level is empty
    if out.counts.values().skip_while(|&&c| c > 0).any(|&c| c > 0) {
        return Err(Error::Census("a nonempty level follows an empty one".into()));
    }
    Ok(out)
}
