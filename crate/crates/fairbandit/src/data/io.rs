//! Embedding file IO.
//!
//! Canonical binary format (FCB1, little-endian):
//!
//! ```text
//! magic   "FCB1"   4 bytes
//! version u16      = 1
//! n       u32      number of examples
//! d       u32      context dimension
//! n_classes u32
//! n_groups  u32
//! records n × [ d × f32 context | u16 class | u16 group ]
//! ```
//!
//! Contexts are stored as f32; datasets produced by the synthetic generator
//! or by these loaders hold f32-exact values, so save → load is the
//! identity on them. A CSV loader (columns `f0..f(d-1), class, group`,
//! optional header row) is provided for interop; the binary format is
//! canonical.

use std::path::Path;

use crate::error::{Error, Result};

use super::dataset::{Dataset, LabeledExample};

pub const MAGIC: &[u8; 4] = b"FCB1";
pub const VERSION: u16 = 1;

pub fn save_embeddings(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if ds.len() > u32::MAX as usize || ds.d() > u32::MAX as usize {
        return Err(Error::config("dataset too large for FCB1 format"));
    }
    if ds.n_classes() > u16::MAX as usize || ds.n_groups() > u16::MAX as usize {
        return Err(Error::config("labels too large for u16 storage"));
    }
    let mut buf = Vec::with_capacity(22 + ds.len() * (ds.d() * 4 + 4));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(ds.len() as u32).to_le_bytes());
    buf.extend_from_slice(&(ds.d() as u32).to_le_bytes());
    buf.extend_from_slice(&(ds.n_classes() as u32).to_le_bytes());
    buf.extend_from_slice(&(ds.n_groups() as u32).to_le_bytes());
    for ex in ds.examples() {
        for &v in &ex.context {
            buf.extend_from_slice(&(v as f32).to_le_bytes());
        }
        buf.extend_from_slice(&(ex.class_label as u16).to_le_bytes());
        buf.extend_from_slice(&(ex.group_label as u16).to_le_bytes());
    }
    std::fs::write(path, buf)?;
    Ok(())
}

struct Reader<'a> {
    bytes: &'a [u8],
    offset: usize,
    path: &'a Path,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.offset + n > self.bytes.len() {
            return Err(Error::DataFormat {
                path: self.path.to_path_buf(),
                offset: self.offset,
                message: format!(
                    "truncated while reading {what}: need {n} bytes, {} left",
                    self.bytes.len() - self.offset
                ),
            });
        }
        let slice = &self.bytes[self.offset..self.offset + n];
        self.offset += n;
        Ok(slice)
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn f32(&mut self, what: &str) -> Result<f32> {
        Ok(f32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn fail(&self, offset: usize, message: String) -> Error {
        Error::DataFormat {
            path: self.path.to_path_buf(),
            offset,
            message,
        }
    }
}

pub fn load_embeddings(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let bytes = std::fs::read(path)?;
    let mut r = Reader {
        bytes: &bytes,
        offset: 0,
        path,
    };

    let magic = r.take(4, "magic")?;
    if magic != MAGIC {
        return Err(r.fail(0, format!("bad magic {magic:?}, expected {MAGIC:?}")));
    }
    let version = r.u16("version")?;
    if version != VERSION {
        return Err(r.fail(4, format!("unsupported version {version}, expected {VERSION}")));
    }
    let n = r.u32("n")? as usize;
    let d = r.u32("d")? as usize;
    let n_classes = r.u32("n_classes")? as usize;
    let n_groups = r.u32("n_groups")? as usize;

    let mut examples = Vec::with_capacity(n);
    for i in 0..n {
        let mut context = Vec::with_capacity(d);
        for _ in 0..d {
            context.push(r.f32("context")? as f64);
        }
        let class_offset = r.offset;
        let class = r.u16("class label")? as usize;
        if class >= n_classes {
            return Err(r.fail(
                class_offset,
                format!("record {i}: class label {class} out of range [0, {n_classes})"),
            ));
        }
        let group_offset = r.offset;
        let group = r.u16("group label")? as usize;
        if group >= n_groups {
            return Err(r.fail(
                group_offset,
                format!("record {i}: group label {group} out of range [0, {n_groups})"),
            ));
        }
        examples.push(LabeledExample {
            context,
            class_label: class,
            group_label: group,
        });
    }
    if r.offset != bytes.len() {
        return Err(r.fail(
            r.offset,
            format!("{} trailing bytes after {n} records", bytes.len() - r.offset),
        ));
    }
    Dataset::new(examples, d, n_classes, n_groups, format!("file:{}", path.display()))
}

/// CSV loader: d float columns, then integer `class` and `group` columns.
/// A first row that fails to parse numerically is treated as a header.
/// Shape metadata is inferred: n_classes / n_groups = max label + 1.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .from_path(path)?;

    let mut examples = Vec::new();
    let mut d = None;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::DataFormat {
            path: path.to_path_buf(),
            offset: 0,
            message: format!("row {row}: {e}"),
        })?;
        if record.len() < 3 {
            return Err(Error::DataFormat {
                path: path.to_path_buf(),
                offset: 0,
                message: format!("row {row}: need at least 3 columns, got {}", record.len()),
            });
        }
        let parsed: Option<Vec<f64>> = record.iter().map(|f| f.trim().parse().ok()).collect();
        let Some(values) = parsed else {
            if row == 0 {
                continue; // header row
            }
            return Err(Error::DataFormat {
                path: path.to_path_buf(),
                offset: 0,
                message: format!("row {row}: non-numeric field"),
            });
        };
        let row_d = values.len() - 2;
        let d = *d.get_or_insert(row_d);
        if row_d != d {
            return Err(Error::DataFormat {
                path: path.to_path_buf(),
                offset: 0,
                message: format!("row {row}: expected {d} feature columns, got {row_d}"),
            });
        }
        let class = values[d];
        let group = values[d + 1];
        if class < 0.0 || class.fract() != 0.0 || group < 0.0 || group.fract() != 0.0 {
            return Err(Error::DataFormat {
                path: path.to_path_buf(),
                offset: 0,
                message: format!("row {row}: class/group must be nonnegative integers"),
            });
        }
        examples.push(LabeledExample {
            context: values[..d].to_vec(),
            class_label: class as usize,
            group_label: group as usize,
        });
    }
    if examples.is_empty() {
        return Err(Error::DataFormat {
            path: path.to_path_buf(),
            offset: 0,
            message: "no data rows".into(),
        });
    }
    let n_classes = examples.iter().map(|e| e.class_label).max().unwrap() + 1;
    let n_groups = examples.iter().map(|e| e.group_label).max().unwrap() + 1;
    let d = d.unwrap();
    Dataset::new(examples, d, n_classes, n_groups, format!("csv:{}", path.display()))
}
