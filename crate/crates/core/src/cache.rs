//! Versioned JSON cache of a symplectic model: root data, `N` constants,
//! module matrices and pairing as integer triplets.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::arith::{to_i64, QJson, Q};
use crate::error::{Error, Result};
use crate::lie::{RootSystem, Weight};
use crate::rep::{ChevalleyBasis, InvariantPairing, MatrixRep, SparseMatrix, SymplecticModel};

pub const CACHE_FORMAT: u32 = 1;

/// Hash of the crate version and cache format; a change invalidates old files.
pub fn version_hash() -> String {
    // FNV-1a, stable across toolchains
    let key = format!("{}:{}", env!("CARGO_PKG_VERSION"), CACHE_FORMAT);
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in key.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

type Triplets = Vec<(usize, usize, i64)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelCache {
    pub format: u32,
    pub version_hash: String,
    pub algebra: String,
    pub rank: usize,
    pub node: usize,
    pub dim_g: usize,
    pub dim_v: usize,
    pub roots: Vec<Vec<i64>>,
    /// `(alpha, beta, N_{alpha,beta})` by root index, sorted.
    pub n_constants: Triplets,
    /// One matrix per algebra basis element.
    pub rep_matrices: Vec<Triplets>,
    pub pairing: Triplets,
    pub mu: QJson,
}

fn int_triplets(m: &SparseMatrix) -> Result<Triplets> {
    m.triplets()
        .into_iter()
        .map(|(i, j, x)| {
            to_i64(&x)
                .map(|v| (i, j, v))
                .ok_or_else(|| Error::Invalid(format!("non-integer matrix entry {x}")))
        })
        .collect()
}

fn from_triplets(n: usize, t: &Triplets) -> Result<SparseMatrix> {
    if t.iter().any(|&(i, j, _)| i >= n || j >= n) {
        return Err(Error::Invalid("matrix entry out of range".into()));
    }
    Ok(SparseMatrix::from_triplets(
        n,
        n,
        t.iter().map(|&(i, j, x)| (i, j, Q::from(x))).collect(),
    ))
}

impl ModelCache {
    pub fn from_model(m: &SymplecticModel) -> Result<Self> {
        let rs = m.algebra.root_system();
        let mut n_constants: Triplets = m
            .algebra
            .constants()
            .iter()
            .map(|(&(a, b), &v)| (a, b, v))
            .collect();
        n_constants.sort_unstable();
        Ok(Self {
            format: CACHE_FORMAT,
            version_hash: version_hash(),
            algebra: m.label(),
            rank: rs.rank(),
            node: m.node,
            dim_g: m.dim_g(),
            dim_v: m.dim_v(),
            roots: rs.roots(),
            n_constants,
            rep_matrices: m
                .rep
                .gens()
                .iter()
                .map(int_triplets)
                .collect::<Result<_>>()?,
            pairing: int_triplets(m.pairing.matrix())?,
            mu: QJson::from(&m.mu),
        })
    }

    /// Rebuilds the model and checks it against the stored data.
    pub fn to_model(&self) -> Result<SymplecticModel> {
        let bad = |what: &str| Error::Invalid(format!("cache inconsistent: {what}"));
        if self.format != CACHE_FORMAT {
            return Err(bad("format"));
        }
        let rs = RootSystem::from_dynkin(&self.algebra)?;
        if rs.roots() != self.roots || rs.rank() != self.rank || rs.dim() != self.dim_g {
            return Err(bad("root data"));
        }
        let n: HashMap<(usize, usize), i64> = self
            .n_constants
            .iter()
            .map(|&(a, b, v)| ((a, b), v))
            .collect();
        let cb = ChevalleyBasis::from_constants(rs, n);
        cb.check_jacobi()?;
        if self.rep_matrices.len() != self.dim_g {
            return Err(bad("number of module matrices"));
        }
        let gens = self
            .rep_matrices
            .iter()
            .map(|t| from_triplets(self.dim_v, t))
            .collect::<Result<Vec<_>>>()?;
        let weights = (0..self.dim_v)
            .map(|j| {
                let w = (0..self.rank)
                    .map(|i| {
                        to_i64(&gens[cb.cartan_basis_index(i)].get(j, j))
                            .ok_or_else(|| bad("weights"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Weight(w))
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = MatrixRep::new(self.dim_v, gens, Some(weights));
        crate::rep::check_homomorphism(&cb, &rep)?;
        let pairing = InvariantPairing::from_matrix(from_triplets(self.dim_v, &self.pairing)?)?;
        let m = SymplecticModel::assemble(cb, self.node, rep, Some(pairing))?;
        if QJson::from(&m.mu) != self.mu {
            return Err(bad("mu"));
        }
        Ok(m)
    }
}

/// Outcome of [`load_or_build`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Built,
    /// The existing file could not be used and was replaced.
    Rebuilt(String),
}

pub fn cache_path(dir: &Path, label: &str, node: usize) -> PathBuf {
    dir.join(format!("{label}-{node}-{}.json", version_hash()))
}

pub fn load(path: &Path) -> Result<SymplecticModel> {
    let cache: ModelCache = serde_json::from_str(&fs::read_to_string(path)?)?;
    if cache.version_hash != version_hash() {
        return Err(Error::Invalid("cache version mismatch".into()));
    }
    cache.to_model()
}

pub fn save(path: &Path, m: &SymplecticModel) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let text = serde_json::to_string(&ModelCache::from_model(m)?)?;
    fs::write(path, text)?;
    Ok(())
}

/// Loads the cached model, or builds and writes it.
pub fn load_or_build(
    dir: &Path,
    label: &str,
    node: usize,
) -> Result<(SymplecticModel, CacheStatus)> {
    let path = cache_path(dir, label, node);
    let status = if path.exists() {
        match load(&path) {
            Ok(m) if m.label() == label && m.node == node => return Ok((m, CacheStatus::Hit)),
            Ok(_) => CacheStatus::Rebuilt("cache describes a different model".into()),
            Err(e) => CacheStatus::Rebuilt(e.to_string()),
        }
    } else {
        CacheStatus::Built
    };
    let m = SymplecticModel::build(label, node)?;
    save(&path, &m)?;
    Ok((m, status))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("holonomy-cache-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_is_exact() {
        let m = SymplecticModel::build("A5", 3).unwrap();
        let c = ModelCache::from_model(&m).unwrap();
        let back = c.to_model().unwrap();
        assert_eq!(back.rep.gens(), m.rep.gens());
        assert_eq!(back.rep.weights(), m.rep.weights());
        assert_eq!(back.pairing, m.pairing);
        assert_eq!(back.killing, m.killing);
        assert_eq!(back.circ, m.circ);
        assert_eq!(back.mu, m.mu);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            serde_json::to_string(&ModelCache::from_model(&back).unwrap()).unwrap(),
            text
        );
    }

    #[test]
    fn hit_and_corruption() {
        let dir = tmp("hit");
        let (_, s) = load_or_build(&dir, "C2", 1).unwrap();
        assert_eq!(s, CacheStatus::Built);
        let (m, s) = load_or_build(&dir, "C2", 1).unwrap();
        assert_eq!(s, CacheStatus::Hit);
        assert_eq!(m.dim_v(), 4);
        let path = cache_path(&dir, "C2", 1);
        fs::write(&path, "{\"format\": 1, truncated").unwrap();
        let (_, s) = load_or_build(&dir, "C2", 1).unwrap();
        assert!(matches!(s, CacheStatus::Rebuilt(_)));
        // tampered pairing is caught by the consistency checks
        let mut c: ModelCache = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        c.pairing[0].2 += 1;
        fs::write(&path, serde_json::to_string(&c).unwrap()).unwrap();
        assert!(load(&path).is_err());
        let (_, s) = load_or_build(&dir, "C2", 1).unwrap();
        assert!(matches!(s, CacheStatus::Rebuilt(_)));
        assert_eq!(load_or_build(&dir, "C2", 1).unwrap().1, CacheStatus::Hit);
        fs::remove_dir_all(&dir).unwrap();
    }
}
