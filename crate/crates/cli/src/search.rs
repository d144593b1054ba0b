//! `seidel three-ev` and `seidel lines`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use seidel::census;
use seidel::equiangular::{self, LineSystemTarget};
use seidel::error::{Error, Result};
use seidel::generator::{order_one_seed, RunOptions};
use seidel::s6;
use seidel::spectrum::SpectrumSpec;
use seidel::three_ev::{self, FeasibleSpectrum};

pub fn feasible(order: usize) -> String {
    let mut out = String::from("order\tspectrum\n");
    for f in three_ev::enumerate_feasible(order) {
        writeln!(out, "{order}\t{f}").unwrap();
    }
    out
}

/// Number of classes with the given spectrum; writes them to `out` if asked.
pub fn search(spectrum: &str, allow_open: bool, out: Option<&Path>, jobs: usize) -> Result<usize> {
    let spec: SpectrumSpec = spectrum.parse()?;
    if spec.distinct_count() != 3 {
        return Err(Error::InvalidArgument(format!(
            "{spec} has {} distinct eigenvalues, expected 3",
            spec.distinct_count()
        )));
    }
    let found = match FeasibleSpectrum::new(spec) {
        Ok(f) => {
            if f.is_open() {
                if !allow_open {
                    return Err(Error::InvalidArgument(format!(
                        "{f} is an open case; pass --allow-open to search anyway"
                    )));
                }
                eprintln!("warning: the pruning is weak for {f}; this search may not finish");
            }
            three_ev::search_spectrum(&f, RunOptions { jobs, ..Default::default() })?
        }
        Err(Error::Infeasible(why)) => {
            eprintln!("note: {why}");
            Vec::new()
        }
        Err(e) => return Err(e),
    };
    if let Some(path) = out {
        census::write_census(path, &found)?;
    }
    Ok(found.len())
}

/// One line per record: its `s6` form and whether a switching is regular.
pub fn regular_check(input: &Path) -> Result<String> {
    let mut out = String::from("record\tregular\n");
    for rec in census::CensusReader::open(input)? {
        let s = rec?.matrix;
        let r = three_ev::has_regular_switching_graph(&s)?;
        writeln!(out, "{}\t{}", s6::encode_string(&s)?, if r { "yes" } else { "no" }).unwrap();
    }
    Ok(out)
}

pub struct LinesParams {
    pub dimension: usize,
    pub angle: String,
    pub max_order: usize,
    pub input: Option<PathBuf>,
    pub lambda_min: Option<bool>,
    pub dump: Option<PathBuf>,
    pub jobs: usize,
}

fn parse_angle(a: &str) -> Result<i64> {
    a.strip_prefix("1/")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Error::InvalidArgument(format!("angle {a:?} is not of the form 1/K")))
}

/// Per-order class counts as TSV.
pub fn lines(p: &LinesParams) -> Result<String> {
    let target = LineSystemTarget::new(p.dimension, parse_angle(&p.angle)?)?;
    let seeds = match &p.input {
        Some(path) => census::read_census(path)?,
        None => order_one_seed(),
    };
    // from scratch the smallest eigenvalue is bounded too; from a seed file
    // only the multiplicity is required unless asked
    let lambda_min = p.lambda_min.unwrap_or(p.input.is_none());
    if let Some(dir) = &p.dump {
        std::fs::create_dir_all(dir)?;
    }
    let res = equiangular::search_lines(target, lambda_min, &seeds, p.max_order, p.jobs, &mut |order, level| {
        if let Some(dir) = &p.dump {
            census::write_census(&dir.join(format!("order{order:02}.s6")), level)?;
        }
        Ok(())
    })?;
    let mut out = String::from("order\tcount\n");
    for (n, c) in &res.counts {
        writeln!(out, "{n}\t{c}").unwrap();
    }
    Ok(out)
}
