//! Modular invariants: non-negative integer matrices `Z` with `Z_00 = 1`
//! commuting with the S and T matrices of a datum.
//!
//! Enumeration runs in three stages. The T phases fix which entries may be
//! non-zero (exact rational comparison). The S commutator restricted to that
//! support has a small real nullspace, which is brought to reduced row-echelon
//! form so that each basis element is the identity at one pivot coordinate.
//! Finally the pivot values are searched as bounded integers, with interval
//! propagation keeping every reconstructed entry inside `[0, bound]`.

mod commutant;
mod search;

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;
use serde_json::{json, Value};

use crate::error::{domain, Result};
use crate::modular_data::{Algebra, ModularDatum};

pub use commutant::{commutant_basis, CommutantBasis, RANK_CUT, RANK_FLOOR};
pub use search::{enumerate_with_basis, SearchStats};

/// Tolerance of the `[Z, S] = 0` check.
pub const COMMUTATION_TOL: f64 = 1e-9;
/// Largest accepted distance of a reconstructed entry from an integer.
pub const INTEGRALITY_TOL: f64 = 1e-6;

/// Entry bound `floor(1 / (S_0a S_0b) + 1e-9)`, a consequence of `Z_00 = 1`
/// and positivity of the vacuum row of S.
pub fn entry_bound(d: &ModularDatum, a: usize, b: usize) -> u32 {
    let x = 1.0 / (d.s[(0, a)] * d.s[(0, b)]) + 1e-9;
    x.floor().min(f64::from(u32::MAX)) as u32
}

/// A square non-negative integer matrix over the labels of one datum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularInvariant {
    pub algebra: Algebra,
    n: usize,
    entries: Vec<u32>,
}

impl PartialOrd for ModularInvariant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModularInvariant {
    fn cmp(&self, other: &Self) -> Ordering {
        self.algebra
            .cmp(&other.algebra)
            .then_with(|| self.n.cmp(&other.n))
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl ModularInvariant {
    pub fn from_entries(algebra: Algebra, n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(domain(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(ModularInvariant { algebra, n, entries })
    }

    pub fn from_rows(algebra: Algebra, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(domain(format!("row {bad} has {} entries, expected {n}", rows[bad].len())));
        }
        Self::from_entries(algebra, n, rows.concat())
    }

    pub fn identity(algebra: Algebra, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        ModularInvariant { algebra, n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.entries[a * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: u32) {
        self.entries[a * self.n + b] = value;
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn trace(&self) -> u64 {
        (0..self.n).map(|i| u64::from(self.get(i, i))).sum()
    }

    /// `tr(Z Z^T)`, the sum of squared entries.
    pub fn trace_zzt(&self) -> u64 {
        self.entries.iter().map(|&x| u64::from(x) * u64::from(x)).sum()
    }

    /// Non-zero entries of the vacuum row as `(label index, multiplicity)`.
    pub fn vacuum_row(&self) -> Vec<(usize, u32)> {
        (0..self.n)
            .filter_map(|b| {
                let z = self.get(0, b);
                (z > 0).then_some((b, z))
            })
            .collect()
    }

    pub fn as_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |a, b| f64::from(self.get(a, b)))
    }

    pub fn to_json(&self, d: &ModularDatum) -> Value {
        json!({
            "algebra": self.algebra.to_json(),
            "Z": self.rows(),
            "labels": d.labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Which defining property of a modular invariant failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Normalization,
    TSupport,
    EntryBound,
    SCommutation,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Normalization => "normalization",
            ViolationKind::TSupport => "T-support",
            ViolationKind::EntryBound => "entry-bound",
            ViolationKind::SCommutation => "S-commutation",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub row: usize,
    pub col: usize,
    /// Offending value: the entry itself, or the commutator magnitude.
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at ({}, {}): {}", self.kind, self.row, self.col, self.value)
    }
}

/// Checks every defining property of a modular invariant and reports the
/// first failure. Fails only on a shape or algebra mismatch.
pub fn is_modular_invariant(d: &ModularDatum, z: &ModularInvariant) -> Result<Option<Violation>> {
    if z.algebra != d.algebra {
        return Err(domain(format!("invariant for {} checked against {}", z.algebra, d.algebra)));
    }
    let n = d.len();
    if z.size() != n {
        return Err(domain(format!("matrix is {0}x{0}, datum has {n} labels", z.size())));
    }
    if z.get(0, 0) != 1 {
        return Ok(Some(Violation {
            kind: ViolationKind::Normalization,
            row: 0,
            col: 0,
            value: f64::from(z.get(0, 0)),
        }));
    }
    for a in 0..n {
        for b in 0..n {
            let value = z.get(a, b);
            if value != 0 && !d.same_phase(a, b) {
                return Ok(Some(Violation {
                    kind: ViolationKind::TSupport,
                    row: a,
                    col: b,
                    value: f64::from(value),
                }));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if z.get(a, b) > entry_bound(d, a, b) {
                return Ok(Some(Violation {
                    kind: ViolationKind::EntryBound,
                    row: a,
                    col: b,
                    value: f64::from(z.get(a, b)),
                }));
            }
        }
    }
    let zm = z.as_matrix();
    let comm = &zm * &d.s - &d.s * &zm;
    if let Some((idx, v)) = comm
        .iter()
        .enumerate()
        .find(|(_, v)| v.abs() >= COMMUTATION_TOL)
    {
        // nalgebra storage is column-major
        return Ok(Some(Violation {
            kind: ViolationKind::SCommutation,
            row: idx % n,
            col: idx / n,
            value: v.abs(),
        }));
    }
    Ok(None)
}

/// All modular invariants of `d`, sorted by flattened matrix and deduplicated.
pub fn enumerate_invariants(d: &ModularDatum) -> Result<Vec<ModularInvariant>> {
    let basis = commutant_basis(d)?;
    let (found, _) = enumerate_with_basis(d, &basis)?;
    Ok(found)
}
