//! `seidel census`: TSV reports over a single-order census.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use seidel::census::{self, Manifest};
use seidel::error::Result;
use seidel::matrix::SeidelMatrix;
use seidel::spectral;
use seidel::verify::{self, Coverage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Report {
    Charpoly,
    DistinctEig,
    LambdaMin,
    AutHist,
    Mass,
}

/// The report text and whether every embedded check passed.
pub fn run(input: &Path, report: Report, mod_prime: Option<u64>) -> Result<(String, bool)> {
    let census = census::read_census(input)?;
    let n = census.first().map_or(0, SeidelMatrix::order);
    let mut out = String::new();
    let mut ok = true;
    match report {
        Report::Charpoly => {
            let st = spectral::cospectral_census(&census, mod_prime);
            out += "order\tclasses\tcharpolys\twith_mate\tmax_family\n";
            writeln!(out, "{n}\t{}\t{}\t{}\t{}", census.len(), st.distinct_polys, st.with_mate, st.max_family).unwrap();
        }
        Report::DistinctEig => {
            let ks: Vec<usize> = census.par_iter().map(spectral::distinct_eigenvalue_count).collect();
            out += "k\tclasses\n";
            for k in 1..=n {
                writeln!(out, "{k}\t{}", ks.iter().filter(|&&x| x == k).count()).unwrap();
            }
        }
        Report::LambdaMin => {
            out += "x\tlambda_min_ge\tlambda_min_eq\n";
            for x in [-3, -5, -7] {
                let c: Vec<Ordering> = census.par_iter().map(|s| spectral::lambda_min_class(s, x)).collect();
                let ge = c.iter().filter(|o| o.is_ge()).count();
                let eq = c.iter().filter(|o| o.is_eq()).count();
                writeln!(out, "{x}\t{ge}\t{eq}").unwrap();
            }
        }
        Report::AutHist => {
            out += "aut_order\tclasses\n";
            for (a, c) in verify::aut_histogram(&census) {
                writeln!(out, "{a}\t{c}").unwrap();
            }
        }
        Report::Mass => {
            let check = verify::mass_check(&census, &coverage_of(input)?)?;
            ok = check.passed();
            out += "order\tclasses\tmass\n";
            writeln!(out, "{n}\t{}\t{check}", census.len()).unwrap();
        }
    }
    Ok((out, ok))
}

/// A census is taken as pruned when its manifest says so.
fn coverage_of(input: &Path) -> Result<Coverage> {
    let path = census::manifest_path(input);
    if !path.exists() {
        return Ok(Coverage::Full);
    }
    let m = Manifest::load(&path)?;
    let params = m.get("params").unwrap_or_default();
    Ok(if let Some((_, p)) = params.split_once("--prune ") {
        Coverage::Partial(format!("pruned by {p}"))
    } else if m.get("shard").is_some_and(|s| s != "0/1") {
        Coverage::Partial("one shard".into())
    } else if m.get("input").is_some_and(|i| i != "-") {
        Coverage::Partial("grown from an input census".into())
    } else {
        Coverage::Full
    })
}
