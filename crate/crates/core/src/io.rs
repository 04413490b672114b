//! CSV + JSON sidecar files for sample windows (`k,value`) and sequence
//! windows (`n,value`). Lines starting with `#` are comments.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::dht::SeqWindow;
use crate::error::{Error, Result};
use crate::sampling::{SampleSidecar, UniformSamples};

/// JSON metadata accompanying an `n,value` sequence file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSidecar {
    pub n0: i64,
    pub len: usize,
    pub tail_l2: f64,
}

/// `signal.csv` → `signal.json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn read_sidecar<T: DeserializeOwned>(csv: &Path) -> Result<T> {
    let path = sidecar_path(csv);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| input(format!("sidecar {}: {e}", path.display())))?;
    // serde names the offending field, e.g. "missing field `sigma`"
    serde_json::from_str(&text).map_err(|e| input(format!("sidecar {}: {e}", path.display())))
}

fn write_sidecar<T: Serialize>(csv: &Path, meta: &T) -> Result<()> {
    let path = sidecar_path(csv);
    let text = serde_json::to_string_pretty(meta).expect("sidecar serializes");
    std::fs::write(&path, text + "\n").map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Rows of an `<index>,value` file, checked to be consecutive from `first`.
fn read_rows(path: &Path, index: &str, first: i64, len: usize) -> Result<Vec<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers().map_err(|e| input(format!("{}: {e}", path.display())))?;
    if headers.len() != 2 || &headers[0] != index || &headers[1] != "value" {
        return Err(input(format!("{}: header must be `{index},value`", path.display())));
    }
    let mut values = Vec::with_capacity(len);
    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| input(format!("{}: {e}", path.display())))?;
        let line = row + 2;
        let parse = |i: usize| -> Result<&str> {
            rec.get(i).ok_or_else(|| input(format!("{}:{line}: short row", path.display())))
        };
        let k: i64 = parse(0)?
            .parse()
            .map_err(|_| input(format!("{}:{line}: bad {index}", path.display())))?;
        let v: f64 = parse(1)?
            .parse()
            .map_err(|_| input(format!("{}:{line}: bad value", path.display())))?;
        if k != first + values.len() as i64 {
            return Err(input(format!(
                "{}:{line}: expected {index} = {}, got {k}",
                path.display(),
                first + values.len() as i64
            )));
        }
        if !v.is_finite() {
            return Err(input(format!("{}:{line}: non-finite value", path.display())));
        }
        values.push(v);
    }
    if values.len() != len {
        return Err(input(format!(
            "{}: sidecar declares {len} rows, file has {}",
            path.display(),
            values.len()
        )));
    }
    Ok(values)
}

fn write_rows(
    path: &Path,
    comments: &[String],
    index: &str,
    rows: impl Iterator<Item = (i64, f64)>,
) -> Result<()> {
    let err = |e: std::io::Error| input(format!("{}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(err)?);
    for c in comments {
        writeln!(w, "# {c}").map_err(err)?;
    }
    writeln!(w, "{index},value").map_err(err)?;
    for (k, v) in rows {
        writeln!(w, "{k},{v:e}").map_err(err)?;
    }
    w.flush().map_err(err)
}

pub fn read_samples(path: &Path) -> Result<UniformSamples> {
    let meta: SampleSidecar = read_sidecar(path)?;
    if meta.k_max < meta.k_min {
        return Err(input("sidecar: k_max < k_min"));
    }
    let len = (meta.k_max - meta.k_min + 1) as usize;
    let values = read_rows(path, "k", meta.k_min, len)?;
    UniformSamples::new(meta.sigma, meta.h, meta.k_min, values, meta.tail())
}

pub fn write_samples(path: &Path, s: &UniformSamples, comments: &[String]) -> Result<()> {
    write_rows(path, comments, "k", s.iter())?;
    write_sidecar(path, &s.sidecar())
}

pub fn read_sequence(path: &Path) -> Result<SeqWindow> {
    let meta: SequenceSidecar = read_sidecar(path)?;
    let values = read_rows(path, "n", meta.n0, meta.len)?;
    SeqWindow::new(meta.n0, values, meta.tail_l2)
}

pub fn write_sequence(path: &Path, a: &SeqWindow, comments: &[String]) -> Result<()> {
    write_rows(path, comments, "n", a.iter())?;
    write_sidecar(path, &SequenceSidecar { n0: a.n0(), len: a.len(), tail_l2: a.tail_l2() })
}
