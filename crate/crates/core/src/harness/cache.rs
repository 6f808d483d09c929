//! On-disk cache of operator matrices, keyed by operator id, degree and a
//! fingerprint of the module they act on.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fock::{ModuleVector, PBWMonomial, VacuumModule, VacuumModuleSpec};
use crate::scalars::RationalFunction;

/// Version of the canonical monomial order; part of every fingerprint.
pub const ORDERING_VERSION: &str = "J<L;J:(m,a);L:m;lex/1";

/// Sparse matrix with monomial labels in canonical text form. Column `j` is
/// the image of `cols[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// `(row, col, coefficient)` in row-major order.
    pub entries: Vec<(usize, usize, RationalFunction)>,
}

impl OperatorMatrix {
    /// Matrix of a linear operator on the given source monomials; rows are
    /// all monomials in the images, in canonical order.
    pub fn from_images(module: &VacuumModule, cols: &[PBWMonomial], images: &[ModuleVector]) -> Self {
        let mut rows: Vec<PBWMonomial> = images.iter().flat_map(|v| v.terms().keys().cloned()).collect();
        rows.sort();
        rows.dedup();
        let index: BTreeMap<&PBWMonomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut entries = Vec::new();
        for (j, v) in images.iter().enumerate() {
            for (m, c) in v.terms() {
                entries.push((index[m], j, c.clone()));
            }
        }
        entries.sort_by_key(|e| (e.0, e.1));
        OperatorMatrix {
            rows: rows.iter().map(|m| module.format_monomial(m)).collect(),
            cols: cols.iter().map(|m| module.format_monomial(m)).collect(),
            entries,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CacheKey {
    pub operator: String,
    pub degree: i64,
    pub fingerprint: String,
}

impl CacheKey {
    fn slot(&self) -> String {
        format!("{}@{}", self.operator, self.degree)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Entry {
    fingerprint: String,
    matrix: OperatorMatrix,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    ordering_version: String,
    entries: BTreeMap<String, Entry>,
}

/// Concurrent reads, serialized writes; every store rewrites the file
/// atomically (write to a sibling temp file, then rename).
#[derive(Debug)]
pub struct OperatorMatrixCache {
    path: PathBuf,
    entries: RwLock<BTreeMap<String, Entry>>,
    write_lock: Mutex<()>,
}

/// SHA-256 over the algebra constants, module kind, `n`, `D`, parameters and
/// the ordering version.
pub fn fingerprint(spec: &VacuumModuleSpec) -> String {
    let mut h = Sha256::new();
    let mut feed = |s: &str| {
        h.update(s.as_bytes());
        h.update([0u8]);
    };
    feed(ORDERING_VERSION);
    feed(&format!("{:?}/{:?}", spec.kind, spec.regime));
    feed(&format!("n={};D={}", spec.level_structure, spec.truncation_degree));
    let p = &spec.params;
    for v in [&p.k, &p.c, &p.lambda, &p.mu] {
        feed(&v.to_string());
    }
    if let Some(g) = &spec.lie {
        feed(&g.name);
        feed(&g.basis_labels.join(","));
        for (a, row) in g.structure_constants.iter().enumerate() {
            for (b, sparse) in row.iter().enumerate() {
                for (d, c) in sparse {
                    feed(&format!("c[{a}][{b}][{d}]={c}"));
                }
            }
        }
        for row in &g.form_matrix {
            feed(&row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        }
        feed(&g.dual_coxeter.to_string());
    }
    hex::encode(h.finalize())
}

impl OperatorMatrixCache {
    /// Opens (or starts) a cache file. A missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let entries = match fs::read_to_string(&path) {
            Ok(s) => {
                let f: CacheFile = serde_json::from_str(&s)
                    .map_err(|e| Error::CacheInvalid(format!("{}: {e}", path.display())))?;
                if f.ordering_version != ORDERING_VERSION {
                    return Err(Error::CacheInvalid(format!(
                        "ordering version {} != {}",
                        f.ordering_version, ORDERING_VERSION
                    )));
                }
                f.entries
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(OperatorMatrixCache {
            path,
            entries: RwLock::new(entries),
            write_lock: Mutex::new(()),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// `Ok(None)` on a miss; a stored entry for the same operator and degree
    /// with another fingerprint is never reused.
    pub fn load(&self, key: &CacheKey) -> Result<Option<OperatorMatrix>> {
        let entries = self.entries.read().expect("cache lock");
        match entries.get(&key.slot()) {
            None => Ok(None),
            Some(e) if e.fingerprint == key.fingerprint => Ok(Some(e.matrix.clone())),
            Some(e) => Err(Error::CacheInvalid(format!(
                "{}: fingerprint {} does not match {}",
                key.slot(),
                &e.fingerprint[..12],
                &key.fingerprint[..12.min(key.fingerprint.len())]
            ))),
        }
    }

    pub fn store(&self, key: &CacheKey, matrix: &OperatorMatrix) -> Result<()> {
        let _guard = self.write_lock.lock().expect("cache write lock");
        let snapshot = {
            let mut entries = self.entries.write().expect("cache lock");
            entries.insert(
                key.slot(),
                Entry {
                    fingerprint: key.fingerprint.clone(),
                    matrix: matrix.clone(),
                },
            );
            CacheFile {
                ordering_version: ORDERING_VERSION.into(),
                entries: entries.clone(),
            }
        };
        let text = serde_json::to_string(&snapshot).map_err(|e| Error::Io(e.to_string()))?;
        let tmp = self.path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
