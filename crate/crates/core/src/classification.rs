//! Local (type I) and non-local (type II) extensions of SU(2)_k and of the
//! minimal models, with their numerical invariants.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::ade::{
    diagrams_with_coxeter, is_type_i, label_invariant, minimal_invariant, su2_invariant, Block,
    DynkinDiagram, DynkinKind, InvariantLabel, SectorCounts,
};
use crate::error::{domain, Error, Result};
use crate::fusion::{mu_index, qdim};
use crate::invariants::{is_modular_invariant, ModularInvariant};
use crate::modular_data::{minimal_data, su2_data, weight, Algebra, Label, ModularDatum};

/// One extension together with everything computed about it.
#[derive(Debug, Clone)]
pub struct ClassificationEntry {
    pub algebra: Algebra,
    pub label: InvariantLabel,
    pub z: ModularInvariant,
    /// Vacuum row of `Z` as `(label, multiplicity)`.
    pub theta: Vec<(Label, u32)>,
    pub index: f64,
    pub index_symbolic: Option<&'static str>,
    pub mu_extension: f64,
    pub counts: SectorCounts,
    pub type_i: bool,
    pub blocks: Option<Vec<Block>>,
    pub subnets: Option<u32>,
}

impl ClassificationEntry {
    pub fn to_json(&self, d: &ModularDatum) -> Value {
        let blocks = self.blocks.as_ref().map(|bs| {
            bs.iter()
                .map(|b| {
                    b.iter()
                        .flat_map(|&(i, c)| std::iter::repeat(d.labels[i].to_json()).take(c as usize))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        });
        json!({
            "algebra": self.algebra.to_json(),
            "label": self.label.to_string(),
            "typeI": self.type_i,
            "theta": self.theta.iter().map(|(l, k)| json!({"label": l.to_json(), "multiplicity": k})).collect::<Vec<_>>(),
            "index": self.index,
            "index_symbolic": self.index_symbolic,
            "mu_extension": self.mu_extension,
            "counts": {
                "ab": self.counts.ab,
                "full": self.counts.full,
                "chiral": self.counts.chiral,
                "ambichiral": self.counts.ambichiral,
            },
            "blocks": blocks,
            "subnets": self.subnets,
            "Z": self.z.rows(),
        })
    }
}

/// `[B:A] = sum over the vacuum row of Z_0l * qdim(l)`.
pub fn extension_index(d: &ModularDatum, z: &ModularInvariant) -> f64 {
    z.vacuum_row()
        .into_iter()
        .map(|(l, k)| f64::from(k) * qdim(d, l))
        .sum()
}

/// `mu_A / [B:A]^2`.
pub fn mu_of_extension(d: &ModularDatum, index: f64) -> f64 {
    mu_index(d) / (index * index)
}

/// Statistics phase of the simple current `(m-1, 1)` and whether the index-2
/// extension it generates is local.
pub fn simple_current_locality(m: u32) -> Result<(i8, bool)> {
    if m < 3 {
        return Err(domain(format!("minimal model needs m >= 3, got {m}")));
    }
    let m64 = u64::from(m);
    let phase: i8 = if ((m64 - 1) * (m64 - 2) / 2) % 2 == 0 { 1 } else { -1 };
    let h = weight(m, m - 1, 1)?;
    let from_weight: i8 = if h.is_integer() {
        1
    } else if (h * 2).is_integer() {
        -1
    } else {
        return Err(Error::Classification(format!("simple current weight {h} is not in Z/2")));
    };
    if phase != from_weight {
        return Err(Error::Classification(format!(
            "simple current phase {phase} disagrees with exp(2 pi i h) = {from_weight} at m = {m}"
        )));
    }
    Ok((phase, phase == 1))
}

/// Number of intermediate nets of a local minimal extension.
pub fn subnet_count(m: u32, label: InvariantLabel) -> Result<u32> {
    let InvariantLabel::Minimal(g, h) = label else {
        return Err(domain("subnet counts are defined for minimal-model extensions"));
    };
    if !label.is_block_type() {
        return Err(domain(format!("{label} is not a local extension")));
    }
    let s = match (g.kind, h.kind) {
        (DynkinKind::A, DynkinKind::A) => 1,
        (DynkinKind::E, _) | (_, DynkinKind::E) if g.rank == 8 || h.rank == 8 => 3,
        _ => 2,
    };
    let ok = match s {
        1 => true,
        2 => matches!(m % 4, 1 | 2) || m == 11 || m == 12,
        _ => m == 29 || m == 30,
    };
    if !ok {
        return Err(Error::Classification(format!("{label} at m = {m} gives s = {s} outside its admissible m")));
    }
    Ok(s)
}

/// Sector counts `(tr Z, tr ZZ^T, chiral, ambichiral)`: the first two from the
/// matrix, the last two from the per-diagram constants, cross-checked against
/// each other (and against the block decomposition for type I).
pub fn sector_counts(
    label: InvariantLabel,
    z: &ModularInvariant,
    blocks: Option<&[Block]>,
) -> Result<SectorCounts> {
    let predicted = label.counts();
    let counts = SectorCounts {
        ab: z.trace(),
        full: z.trace_zzt(),
        chiral: predicted.chiral,
        ambichiral: predicted.ambichiral,
    };
    let mismatch = |what: &str, got: u64, want: u64| {
        Error::Classification(format!("{label}: {what} is {got}, diagram constants give {want}"))
    };
    if counts.ab != predicted.ab {
        return Err(mismatch("tr Z", counts.ab, predicted.ab));
    }
    if counts.full != predicted.full {
        return Err(mismatch("tr ZZ^T", counts.full, predicted.full));
    }
    if let Some(blocks) = blocks {
        if counts.chiral != counts.ab {
            return Err(mismatch("chiral count", counts.chiral, counts.ab));
        }
        if counts.ambichiral != blocks.len() as u64 {
            return Err(mismatch("block count", blocks.len() as u64, counts.ambichiral));
        }
    }
    Ok(counts)
}

fn symbolic_index(label: InvariantLabel) -> Option<&'static str> {
    if !label.is_block_type() {
        return None;
    }
    let diagrams: Vec<DynkinDiagram> = match label {
        InvariantLabel::Su2(g) => vec![g],
        InvariantLabel::Minimal(g, h) => vec![g, h],
    };
    let special = diagrams.iter().find(|g| g.kind != DynkinKind::A);
    Some(match special {
        None => "1",
        Some(g) if g.kind == DynkinKind::D => "2",
        Some(g) if g.rank == 6 => "3+√3",
        Some(_) => "√(30-6√5)/(2sin(π/30))",
    })
}

fn build_entry(d: &ModularDatum, label: InvariantLabel, z: ModularInvariant) -> Result<ClassificationEntry> {
    if let Some(v) = is_modular_invariant(d, &z)? {
        return Err(Error::Classification(format!("{label} is not a modular invariant: {v}")));
    }
    let relabeled = label_invariant(&z)?;
    if relabeled != label {
        return Err(Error::Classification(format!("{label} constructed but labeled {relabeled}")));
    }
    let blocks = is_type_i(&z)?;
    let type_i = blocks.is_some();
    if type_i != label.is_block_type() {
        return Err(Error::Classification(format!(
            "{label}: block factorization says type {}",
            if type_i { "I" } else { "II" }
        )));
    }
    let counts = sector_counts(label, &z, blocks.as_deref())?;
    let theta = z.vacuum_row().into_iter().map(|(i, k)| (d.labels[i], k)).collect();
    let index = extension_index(d, &z);
    let subnets = match (d.algebra, type_i) {
        (Algebra::Minimal { m }, true) => Some(subnet_count(m, label)?),
        _ => None,
    };
    Ok(ClassificationEntry {
        algebra: d.algebra,
        label,
        theta,
        index,
        index_symbolic: symbolic_index(label),
        mu_extension: mu_of_extension(d, index),
        counts,
        type_i,
        blocks,
        subnets,
        z,
    })
}

/// Local extensions of SU(2)_k: `A_{k+1}`, `D_{k/2+2}` for `k = 0 mod 4`,
/// `E_6` at 10 and `E_8` at 28.
pub fn classify_su2(k: u32) -> Result<Vec<ClassificationEntry>> {
    let d = su2_data(k)?;
    diagrams_with_coxeter(k + 2)
        .into_iter()
        .filter(|g| g.constructible_at(k) && g.is_block_type())
        .filter(|g| g.kind != DynkinKind::D || k % 4 == 0)
        .map(|g| build_entry(&d, InvariantLabel::Su2(g), su2_invariant(g, k)?))
        .collect()
}

fn minimal_pairs(m: u32) -> Vec<(DynkinDiagram, DynkinDiagram)> {
    let mut out = Vec::new();
    for g in diagrams_with_coxeter(m).into_iter().filter(|g| g.constructible_at(m - 2)) {
        for h in diagrams_with_coxeter(m + 1).into_iter().filter(|h| h.constructible_at(m - 1)) {
            out.push((g, h));
        }
    }
    out.sort();
    out
}

fn classify_minimal_kind(m: u32, local: bool) -> Result<Vec<ClassificationEntry>> {
    let d = minimal_data(m)?;
    minimal_pairs(m)
        .into_iter()
        .map(|(g, h)| InvariantLabel::Minimal(g, h))
        .filter(|l| l.is_block_type() == local)
        .map(|l| {
            let InvariantLabel::Minimal(g, h) = l else { unreachable!() };
            build_entry(&d, l, minimal_invariant(g, h, m)?)
        })
        .collect()
}

/// Type I (local) extensions of minimal model `m`, ordered by pair label.
pub fn classify_minimal(m: u32) -> Result<Vec<ClassificationEntry>> {
    classify_minimal_kind(m, true)
}

/// Type II invariants of minimal model `m`, ordered by pair label.
pub fn classify_minimal_type_ii(m: u32) -> Result<Vec<ClassificationEntry>> {
    classify_minimal_kind(m, false)
}

/// Type I then type II entries for every `m` in `3..=max_m`, in order of `m`.
pub fn classify_minimal_range(max_m: u32) -> Result<Vec<ClassificationEntry>> {
    let per_m: Vec<Result<Vec<ClassificationEntry>>> = (3..=max_m)
        .into_par_iter()
        .map(|m| {
            let mut out = classify_minimal(m)?;
            out.extend(classify_minimal_type_ii(m)?);
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for part in per_m {
        out.extend(part?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(entries: &[ClassificationEntry]) -> Vec<String> {
        entries.iter().map(|e| e.label.to_string()).collect()
    }

    #[test]
    fn su2_local_extensions() {
        let k10 = classify_su2(10).unwrap();
        assert_eq!(labels(&k10), ["A11", "E6"]);
        assert!((k10[1].index - (3.0 + 3f64.sqrt())).abs() < 1e-9);
        assert_eq!(labels(&classify_su2(5).unwrap()), ["A6"]);
        let k4 = classify_su2(4).unwrap();
        assert_eq!(labels(&k4), ["A5", "D4"]);
        assert!((k4[1].index - 2.0).abs() < 1e-9);
        assert_eq!(labels(&classify_su2(6).unwrap()), ["A7"]);
        assert_eq!(labels(&classify_su2(28).unwrap()), ["A29", "D16", "E8"]);
    }

    #[test]
    fn minimal_type_i() {
        let m5 = classify_minimal(5).unwrap();
        assert_eq!(labels(&m5), ["(A4,A5)", "(A4,D4)"]);
        assert_eq!(m5[1].counts.ambichiral, 6);
        assert_eq!(m5[0].counts.ambichiral, 10);
        let m11 = classify_minimal(11).unwrap();
        assert_eq!(labels(&m11), ["(A10,A11)", "(A10,E6)"]);
        assert_eq!(m11[1].counts.as_array(), [30, 60, 30, 15]);
        assert_eq!(labels(&classify_minimal(3).unwrap()), ["(A2,A3)"]);
        assert_eq!(classify_minimal(3).unwrap()[0].counts.as_array(), [3, 3, 3, 3]);
    }

    #[test]
    fn minimal_type_ii() {
        let m17 = classify_minimal_type_ii(17).unwrap();
        assert_eq!(labels(&m17), ["(A16,E7)"]);
        assert_eq!(m17[0].counts.as_array(), [56, 136, 80, 48]);
        assert!(!m17[0].type_i);
        let m8 = classify_minimal_type_ii(8).unwrap();
        assert_eq!(labels(&m8), ["(D5,A8)"]);
        assert_eq!(m8[0].counts.as_array(), [20, 28, 28, 28]);
        assert!(classify_minimal_type_ii(5).unwrap().is_empty());
    }

    #[test]
    fn locality_parity() {
        assert_eq!(simple_current_locality(5).unwrap(), (1, true));
        assert_eq!(simple_current_locality(4).unwrap(), (-1, false));
        assert_eq!(simple_current_locality(6).unwrap(), (1, true));
        assert!(simple_current_locality(2).is_err());
    }

    #[test]
    fn subnet_rule() {
        let a = InvariantLabel::Minimal(DynkinDiagram::a(4), DynkinDiagram::a(5));
        assert_eq!(subnet_count(5, a).unwrap(), 1);
        let e6 = InvariantLabel::Minimal(DynkinDiagram::a(10), DynkinDiagram::e(6));
        assert_eq!(subnet_count(11, e6).unwrap(), 2);
        let e8 = InvariantLabel::Minimal(DynkinDiagram::e(8), DynkinDiagram::a(30));
        assert_eq!(subnet_count(30, e8).unwrap(), 3);
        let e7 = InvariantLabel::Minimal(DynkinDiagram::a(16), DynkinDiagram::e(7));
        assert!(subnet_count(17, e7).is_err());
    }

    #[test]
    fn mu_division() {
        let m5 = classify_minimal(5).unwrap();
        let mu = mu_index(&minimal_data(5).unwrap());
        assert!((m5[0].mu_extension - mu).abs() / mu < 1e-12);
        assert!((m5[1].mu_extension - mu / 4.0).abs() / mu < 1e-9);
    }

    #[test]
    fn e6_index_agrees_across_families() {
        let su2 = classify_su2(10).unwrap();
        let vir = classify_minimal(11).unwrap();
        assert!((su2[1].index - vir[1].index).abs() < 1e-12);
        assert_eq!(vir[1].index_symbolic, Some("3+√3"));
    }
}
