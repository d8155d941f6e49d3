//! Fusion rings: the combinatorial minimal-model rule, Verlinde coefficients,
//! quantum dimensions and the global index.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{domain, Error, Result};
use crate::modular_data::{canonical_label, minimal_labels, Label, MinimalLabel, ModularDatum};

/// Largest tolerated distance of a Verlinde sum from an integer.
pub const VERLINDE_RESIDUE: f64 = 1e-6;

/// Fusion multiplicities `N_{ab}^c` over the labels of one datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionCoefficients {
    n: usize,
    data: Vec<u32>,
}

impl FusionCoefficients {
    pub fn zeros(n: usize) -> Self {
        FusionCoefficients {
            n,
            data: vec![0; n * n * n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        self.data[(a * self.n + b) * self.n + c]
    }

    fn get_mut(&mut self, a: usize, b: usize, c: usize) -> &mut u32 {
        &mut self.data[(a * self.n + b) * self.n + c]
    }

    /// The fusion matrix `(N_a)_{bc} = N_{ab}^c`.
    pub fn matrix(&self, a: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |b, c| f64::from(self.get(a, b, c)))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.get(a, b, c) == self.get(b, a, c))))
    }

    pub fn has_unit(&self) -> bool {
        let n = self.n;
        (0..n).all(|b| (0..n).all(|c| self.get(0, b, c) == u32::from(b == c)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let left: u32 = (0..n).map(|s| self.get(a, b, s) * self.get(s, c, d)).sum();
                        let right: u32 = (0..n).map(|s| self.get(b, c, s) * self.get(a, s, d)).sum();
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn parity_range(lo: u32, hi: u32, parity_with: u32) -> impl Iterator<Item = u32> {
    // values r in [lo, hi] with r + parity_with odd
    (lo..=hi).filter(move |r| (r + parity_with) % 2 == 1)
}

/// Fusion of two minimal-model labels by the explicit double-sum rule.
/// The result is a multiset of canonical labels sorted by flat index.
pub fn minimal_fusion(m: u32, a: MinimalLabel, b: MinimalLabel) -> Result<Vec<MinimalLabel>> {
    for l in [a, b] {
        if canonical_label(m, l.p, l.q)? != l {
            return Err(domain(format!("label {l} is not canonical for m = {m}")));
        }
    }
    let (p, q, p2, q2) = (a.p, a.q, b.p, b.q);
    let r_hi = (p + p2 - 1).min(2 * m - p - p2 - 1);
    let s_hi = (q + q2 - 1).min(2 * (m + 1) - q - q2 - 1);
    let mut out = Vec::new();
    for r in parity_range(p.abs_diff(p2) + 1, r_hi, p + p2) {
        for s in parity_range(q.abs_diff(q2) + 1, s_hi, q + q2) {
            out.push(canonical_label(m, r, s)?);
        }
    }
    out.sort_by_key(|l| l.flat_index(m));
    Ok(out)
}

/// Fusion coefficients of minimal model `m` assembled from [`minimal_fusion`].
pub fn minimal_fusion_coefficients(m: u32) -> Result<FusionCoefficients> {
    let labels = minimal_labels(m);
    let index = |l: MinimalLabel| labels.iter().position(|x| *x == l).expect("canonical label");
    let mut out = FusionCoefficients::zeros(labels.len());
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            for c in minimal_fusion(m, *a, *b)? {
                *out.get_mut(i, j, index(c)) += 1;
            }
        }
    }
    Ok(out)
}

/// Verlinde coefficients `N_{ab}^c = sum_s S_as S_bs S_cs / S_0s`.
///
/// Every label in both families is self-conjugate, so `S^2 = 1` is checked up
/// front and no conjugation is applied.
pub fn verlinde(d: &ModularDatum) -> Result<FusionCoefficients> {
    let n = d.len();
    let s = &d.s;
    let s2 = (s * s - DMatrix::<f64>::identity(n, n)).amax();
    if s2 > 1e-9 {
        return Err(domain(format!("S^2 differs from the identity by {s2:.3e}")));
    }
    let mut out = FusionCoefficients::zeros(n);
    for a in 0..n {
        let weighted = DMatrix::from_fn(n, n, |b, sigma| s[(b, sigma)] * s[(a, sigma)] / s[(0, sigma)]);
        let na = weighted * s.transpose();
        for b in 0..n {
            for c in 0..n {
                let value = na[(b, c)];
                let rounded = value.round();
                let residue = (value - rounded).abs();
                if residue >= VERLINDE_RESIDUE || rounded < 0.0 {
                    return Err(Error::NonIntegral {
                        a,
                        b,
                        c,
                        value,
                        residue,
                    });
                }
                *out.get_mut(a, b, c) = rounded as u32;
            }
        }
    }
    Ok(out)
}

/// Quantum dimension `S_{0a} / S_{00}`.
pub fn qdim(d: &ModularDatum, a: usize) -> f64 {
    d.s[(0, a)] / d.s[(0, 0)]
}

/// Largest eigenvalue of a fusion matrix. Fusion matrices of self-conjugate
/// theories are symmetric, so a symmetric eigensolver applies.
pub fn perron_frobenius(n_a: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(n_a.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Global index `sum_a qdim(a)^2 = 1 / S_00^2`.
pub fn mu_index(d: &ModularDatum) -> f64 {
    1.0 / (d.s[(0, 0)] * d.s[(0, 0)])
}

/// Closed form `m(m+1) / (8 sin^2(pi/m) sin^2(pi/(m+1)))` for minimal model `m`.
pub fn mu_index_closed_form(m: u32) -> f64 {
    let mf = f64::from(m);
    let a = (PI / mf).sin();
    let b = (PI / (mf + 1.0)).sin();
    mf * (mf + 1.0) / (8.0 * a * a * b * b)
}

/// Resolves a label of `d` from user-facing coordinates.
pub fn lookup(d: &ModularDatum, label: Label) -> Result<usize> {
    d.index_of(label)
        .ok_or_else(|| domain(format!("label {label} does not belong to {}", d.algebra)))
}

/// Fusion of two labels of `d` read off from Verlinde coefficients.
pub fn fuse(d: &ModularDatum, fusion: &FusionCoefficients, a: usize, b: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for c in 0..d.len() {
        for _ in 0..fusion.get(a, b, c) {
            out.push(d.labels[c]);
        }
    }
    out
}
