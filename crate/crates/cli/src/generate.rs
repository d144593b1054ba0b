//! `seidel generate`: sharded, checkpointed canonical augmentation.

use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use seidel::census::{self, CensusReader, Manifest};
use seidel::error::{Error, Result};
use seidel::generator::{self, LambdaMinAtLeast, NoPrune, Prune, RankCap, RunOptions};
use seidel::matrix::SeidelMatrix;

/// Starting points are taken at this order when no input census is given.
const SPLIT_ORDER: usize = 8;
/// Starting points read from an input census per pass.
const BATCH: usize = 4096;
const CHECKPOINT_EVERY: Duration = Duration::from_secs(30);

pub struct Params {
    pub order: usize,
    pub prune: Option<String>,
    pub input: Option<PathBuf>,
    pub out: PathBuf,
    pub jobs: usize,
    pub shard: Option<(usize, usize)>,
    pub resume: bool,
}

/// Parses `lambda-min-ge:X` or `eig-mult:R:D`; the latter asks for the
/// eigenvalue `R` with multiplicity at least `D` at the target order.
pub fn parse_prune(spec: Option<&str>, order: usize) -> Result<Box<dyn Prune>> {
    let Some(spec) = spec else {
        return Ok(Box::new(NoPrune));
    };
    let bad = || Error::InvalidArgument(format!("malformed prune spec {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["lambda-min-ge", x] => Ok(Box::new(LambdaMinAtLeast(x.parse().map_err(|_| bad())?))),
        ["eig-mult", r, d] => {
            let root: i64 = r.parse().map_err(|_| bad())?;
            let mult: usize = d.parse().map_err(|_| bad())?;
            if mult == 0 || mult > order {
                return Err(Error::InvalidArgument(format!(
                    "multiplicity {mult} impossible at order {order}"
                )));
            }
            Ok(Box::new(RankCap { root, cap: order - mult }))
        }
        _ => Err(bad()),
    }
}

pub fn parse_shard(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidArgument(format!("malformed shard {s:?}, expected i/m"));
    let (i, m) = s.split_once('/').ok_or_else(bad)?;
    let (i, m): (usize, usize) = (i.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?);
    if m == 0 || i >= m {
        return Err(bad());
    }
    Ok((i, m))
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn describe(p: &Params) -> String {
    let mut s = format!("--order {}", p.order);
    if let Some(x) = &p.prune {
        s += &format!(" --prune {x}");
    }
    s
}

/// Output state shared by the checkpoints of one run.
struct Sink {
    out: BufWriter<File>,
    manifest: Manifest,
    manifest_path: PathBuf,
    counts: Vec<u64>,
    written: u64,
    last: Instant,
}

impl Sink {
    fn checkpoint(&mut self, next: u64, status: &str) -> Result<()> {
        self.out.flush()?;
        self.out.get_ref().sync_data()?;
        let bytes = self.out.get_ref().metadata()?.len();
        self.manifest.set("status", status);
        self.manifest.set("next_start", next);
        self.manifest.set("output_bytes", bytes);
        self.manifest.set("output_records", self.written);
        self.manifest.set_counts(&self.counts);
        self.manifest.set("updated", now());
        self.manifest.save(&self.manifest_path)?;
        self.last = Instant::now();
        Ok(())
    }
}

/// Runs the command and returns the number of classes at the target order.
pub fn run(p: &Params) -> Result<u64> {
    if p.order == 0 || p.order > seidel::s6::MAX_S6_ORDER.min(seidel::matrix::MAX_ORDER) {
        return Err(Error::OrderOutOfRange(p.order, seidel::matrix::MAX_ORDER));
    }
    let prune = parse_prune(p.prune.as_deref(), p.order)?;
    let manifest_path = census::manifest_path(&p.out);
    let params = describe(p);
    let shard_text = p.shard.map_or("0/1".to_owned(), |(i, m)| format!("{i}/{m}"));
    let input_text = p.input.as_ref().map_or("-".to_owned(), |x| x.display().to_string());

    let mut resume_from = 0u64;
    let mut counts = vec![0u64; p.order + 1];
    let mut written = 0u64;
    let mut manifest = Manifest::new();
    if p.resume && manifest_path.exists() {
        let old = Manifest::load(&manifest_path)?;
        let same = old.get("params") == Some(params.as_str())
            && old.get("shard") == Some(shard_text.as_str())
            && old.get("input") == Some(input_text.as_str());
        if !same {
            return Err(Error::Census("manifest does not match these parameters".into()));
        }
        if old.get("status") == Some("complete") {
            let c = old.counts()?;
            return Ok(c.get(&p.order).copied().unwrap_or(0));
        }
        let field = |k: &str| -> Result<u64> {
            old.get(k)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Census(format!("manifest lacks {k}")))
        };
        resume_from = field("next_start")?;
        written = field("output_records")?;
        let bytes = field("output_bytes")?;
        for (n, c) in old.counts()? {
            if n <= p.order {
                counts[n] = c;
            }
        }
        // drop anything written after the checkpoint
        OpenOptions::new().write(true).open(&p.out)?.set_len(bytes)?;
        manifest = old;
    } else {
        manifest.set("subcommand", "generate");
        manifest.set("params", &params);
        manifest.set("shard", &shard_text);
        manifest.set("input", &input_text);
        manifest.set("output", p.out.display());
        manifest.set("started", now());
    }
    manifest.set("jobs", p.jobs);

    let file = if resume_from > 0 || written > 0 {
        OpenOptions::new().append(true).open(&p.out)?
    } else {
        File::create(&p.out)?
    };
    let mut sink = Sink {
        out: BufWriter::new(file),
        manifest,
        manifest_path,
        counts,
        written,
        last: Instant::now(),
    };

    let opts = RunOptions { jobs: p.jobs.max(1), ..Default::default() };
    let selected = |k: u64| p.shard.is_none_or(|(i, m)| k % m as u64 == i as u64);

    match &p.input {
        Some(path) => {
            let mut reader = CensusReader::open(path)?;
            let mut base = 0u64;
            let mut order = None;
            loop {
                let batch = reader.batch(BATCH)?;
                if batch.is_empty() {
                    break;
                }
                let first = *order.get_or_insert(batch[0].order());
                census::check_single_order(&batch)?;
                if batch[0].order() != first {
                    return Err(Error::OrderMismatch { left: first, right: batch[0].order() });
                }
                process(&mut sink, &batch, base, resume_from, &selected, p.order, prune.as_ref(), opts)?;
                base += batch.len() as u64;
            }
            sink.checkpoint(base, "complete")?;
        }
        None => {
            let split = p.order.min(SPLIT_ORDER);
            let stage = generator::generate(split, prune.as_ref(), &generator::order_one_seed(), RunOptions::default())?;
            if resume_from == 0 && p.shard.is_none_or(|(i, _)| i == 0) {
                // orders below the starting points are reported once, by shard 0
                for n in 1..split {
                    sink.counts[n] = stage.counts[n];
                }
            }
            let total = stage.matrices.len() as u64;
            process(&mut sink, &stage.matrices, 0, resume_from, &selected, p.order, prune.as_ref(), opts)?;
            sink.checkpoint(total, "complete")?;
        }
    }
    sink.manifest.set("finished", now());
    sink.manifest.save(&sink.manifest_path)?;
    Ok(sink.counts[p.order])
}

#[allow(clippy::too_many_arguments)]
fn process(
    sink: &mut Sink,
    batch: &[SeidelMatrix],
    base: u64,
    resume_from: u64,
    selected: &dyn Fn(u64) -> bool,
    target: usize,
    prune: &dyn Prune,
    opts: RunOptions,
) -> Result<()> {
    let picked: Vec<u64> = (0..batch.len() as u64)
        .map(|k| base + k)
        .filter(|&g| g >= resume_from && selected(g))
        .collect();
    if picked.is_empty() {
        return Ok(());
    }
    let seeds: Vec<SeidelMatrix> = picked.iter().map(|&g| batch[(g - base) as usize].clone()).collect();
    generator::run(&seeds, target, prune, opts, &mut |r| {
        for s in &r.matrices {
            census::write_record(&mut sink.out, s, &[])?;
        }
        sink.written += r.matrices.len() as u64;
        for (a, b) in sink.counts.iter_mut().zip(&r.counts) {
            *a += b;
        }
        if sink.last.elapsed() >= CHECKPOINT_EVERY {
            sink.checkpoint(picked[r.index] + 1, "running")?;
        }
        Ok(())
    })
}
