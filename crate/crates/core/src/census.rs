//! Census files and their run manifests.
//!
//! A census file holds one `s6` record per line, optionally followed on the
//! same line by TAB-separated annotation columns. A manifest is a sidecar of
//! `key: value` lines describing the run that produced a census.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::matrix::SeidelMatrix;
use crate::s6;

/// One census line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub matrix: SeidelMatrix,
    pub annotations: Vec<String>,
}

/// Streaming reader over census lines; blank lines are skipped.
pub struct CensusReader<R> {
    input: R,
    line: Vec<u8>,
    lineno: usize,
}

impl CensusReader<BufReader<File>> {
    pub fn open(path: &Path) -> Result<Self> {
        Ok(CensusReader::new(BufReader::new(File::open(path)?)))
    }
}

impl<R: BufRead> CensusReader<R> {
    pub fn new(input: R) -> Self {
        CensusReader { input, line: Vec::new(), lineno: 0 }
    }

    /// Reads up to `limit` records.
    pub fn batch(&mut self, limit: usize) -> Result<Vec<SeidelMatrix>> {
        let mut out = Vec::with_capacity(limit.min(1 << 16));
        while out.len() < limit {
            match self.next() {
                Some(r) => out.push(r?.matrix),
                None => break,
            }
        }
        Ok(out)
    }
}

impl<R: BufRead> Iterator for CensusReader<R> {
    type Item = Result<Record>;

    fn next(&mut self) -> Option<Result<Record>> {
        loop {
            self.line.clear();
            match self.input.read_until(b'\n', &mut self.line) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => return Some(Err(e.into())),
            }
            self.lineno += 1;
            let line = self.line.strip_suffix(b"\n").unwrap_or(&self.line);
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split(|&b| b == b'\t');
            let head = cols.next().unwrap_or_default();
            let lineno = self.lineno;
            let matrix = match s6::decode(head) {
                Ok(m) => m,
                Err(e) => return Some(Err(Error::MalformedRecord(format!("line {lineno}: {e}")))),
            };
            let annotations = cols.map(|c| String::from_utf8_lossy(c).into_owned()).collect();
            return Some(Ok(Record { matrix, annotations }));
        }
    }
}

/// Reads a whole census, requiring a single order.
pub fn read_census(path: &Path) -> Result<Vec<SeidelMatrix>> {
    let all = CensusReader::open(path)?.map(|r| r.map(|r| r.matrix)).collect::<Result<Vec<_>>>()?;
    check_single_order(&all)?;
    Ok(all)
}

/// Rejects a census mixing orders.
pub fn check_single_order(census: &[SeidelMatrix]) -> Result<()> {
    if let Some(first) = census.first() {
        if let Some(s) = census.iter().find(|s| s.order() != first.order()) {
            return Err(Error::OrderMismatch { left: first.order(), right: s.order() });
        }
    }
    Ok(())
}

/// Writes one census line.
pub fn write_record(out: &mut dyn Write, s: &SeidelMatrix, annotations: &[String]) -> Result<()> {
    out.write_all(&s6::encode(s)?)?;
    for a in annotations {
        if a.contains(['\t', '\n']) {
            return Err(Error::InvalidArgument(format!("annotation {a:?} contains a separator")));
        }
        out.write_all(b"\t")?;
        out.write_all(a.as_bytes())?;
    }
    out.write_all(b"\n")?;
    Ok(())
}

/// Writes a census without annotations.
pub fn write_census(path: &Path, census: &[SeidelMatrix]) -> Result<()> {
    let mut out = io::BufWriter::new(File::create(path)?);
    for s in census {
        write_record(&mut out, s, &[])?;
    }
    out.flush()?;
    Ok(())
}

/// Path of the manifest sidecar for a census at `path`.
pub fn manifest_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".manifest");
    PathBuf::from(name)
}

/// Ordered `key: value` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Manifest {
    entries: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        assert!(!key.contains([':', '\n']), "bad manifest key {key:?}");
        let v = value.to_string();
        assert!(!v.contains('\n'), "bad manifest value {v:?}");
        self.entries.insert(key.to_owned(), v);
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Manifest::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Census(format!("manifest line {}: missing ':'", i + 1)))?;
            m.entries.insert(k.trim().to_owned(), v.trim().to_owned());
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Writes atomically through a temporary file beside `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        std::fs::write(&tmp, self.to_string())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Class counts stored under `count.<order>` keys.
    pub fn counts(&self) -> Result<BTreeMap<usize, u64>> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.entries {
            if let Some(n) = k.strip_prefix("count.") {
                let n = n.parse().map_err(|_| Error::Census(format!("bad key {k}")))?;
                let c = v.parse().map_err(|_| Error::Census(format!("bad count {v}")))?;
                out.insert(n, c);
            }
        }
        Ok(out)
    }

    pub fn set_counts(&mut self, counts: &[u64]) {
        for (n, &c) in counts.iter().enumerate() {
            if c > 0 {
                self.set(&format!("count.{n:02}"), c);
            }
        }
    }
}

impl std::fmt::Display for Manifest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}
