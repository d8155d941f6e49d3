//! Labels, conformal weights and S/T modular data for SU(2)_k and the
//! unitary minimal models.
//!
//! Minimal model `m` has central charge `c = 1 - 6/(m(m+1))` and Kac labels
//! `(p, q)` with `1 <= p <= m-1`, `1 <= q <= m`, subject to the identification
//! `(p, q) ~ (m-p, m+1-q)`. Each class is represented by the member with the
//! smaller flat index `(p-1)*m + (q-1)`, and labels are ordered by that index
//! so the vacuum `(1,1)` comes first.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{domain, Result};

pub type Rational = Rational64;

/// Which chiral algebra a datum (or invariant) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Algebra {
    Su2 { level: u32 },
    Minimal { m: u32 },
}

impl Algebra {
    /// Rebuilds the modular datum for this algebra.
    pub fn datum(self) -> Result<ModularDatum> {
        match self {
            Algebra::Su2 { level } => su2_data(level),
            Algebra::Minimal { m } => minimal_data(m),
        }
    }

    pub fn to_json(self) -> Value {
        match self {
            Algebra::Su2 { level } => json!({"type": "su2", "level": level}),
            Algebra::Minimal { m } => json!({"type": "minimal", "m": m}),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Su2 { level } => write!(f, "SU(2)_{level}"),
            Algebra::Minimal { m } => write!(f, "minimal model m={m}"),
        }
    }
}

/// Spin label `a` of SU(2)_k, `0 <= a <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Su2Label(pub u32);

/// Canonical Kac label of a minimal model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinimalLabel {
    pub p: u32,
    pub q: u32,
}

impl MinimalLabel {
    pub fn flat_index(self, m: u32) -> u32 {
        (self.p - 1) * m + (self.q - 1)
    }

    /// The other member of the identification class.
    pub fn partner(self, m: u32) -> MinimalLabel {
        MinimalLabel {
            p: m - self.p,
            q: m + 1 - self.q,
        }
    }
}

impl fmt::Display for MinimalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Su2(Su2Label),
    Minimal(MinimalLabel),
}

impl Label {
    pub fn to_json(self) -> Value {
        match self {
            Label::Su2(Su2Label(a)) => json!(a),
            Label::Minimal(MinimalLabel { p, q }) => json!([p, q]),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Su2(Su2Label(a)) => write!(f, "{a}"),
            Label::Minimal(l) => write!(f, "{l}"),
        }
    }
}

/// Modular data of one chiral algebra: labels (vacuum first), real S matrix,
/// exact conformal weights, T phases `h - c/24 mod 1` and central charge.
#[derive(Debug, Clone)]
pub struct ModularDatum {
    pub algebra: Algebra,
    pub labels: Vec<Label>,
    pub s: DMatrix<f64>,
    pub t: Vec<Rational>,
    pub h: Vec<Rational>,
    pub c: Rational,
}

/// Largest deviations from the modular-data identities.
#[derive(Debug, Clone, Copy)]
pub struct DatumResiduals {
    pub symmetry: f64,
    pub orthogonality: f64,
    pub s_squared: f64,
    pub st_cubed: f64,
    pub min_vacuum_row: f64,
}

impl DatumResiduals {
    pub fn within(&self, tol: f64) -> bool {
        self.symmetry < tol
            && self.orthogonality < tol
            && self.s_squared < tol
            && self.st_cubed < tol
            && self.min_vacuum_row > 0.0
    }
}

impl ModularDatum {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Position of a label in canonical order. Minimal labels may be given by
    /// either member of their class.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        match (self.algebra, label) {
            (Algebra::Su2 { level }, Label::Su2(Su2Label(a))) if a <= level => Some(a as usize),
            (Algebra::Minimal { m }, Label::Minimal(MinimalLabel { p, q })) => {
                let canon = canonical_label(m, p, q).ok()?;
                self.labels
                    .binary_search_by_key(&canon.flat_index(m), |l| match l {
                        Label::Minimal(x) => x.flat_index(m),
                        Label::Su2(_) => u32::MAX,
                    })
                    .ok()
            }
            _ => None,
        }
    }

    /// True when the T phases of two labels coincide (exact comparison).
    pub fn same_phase(&self, a: usize, b: usize) -> bool {
        self.t[a] == self.t[b]
    }

    pub fn residuals(&self) -> DatumResiduals {
        let s = &self.s;
        let n = s.nrows();
        let symmetry = (s - s.transpose()).amax();
        let orthogonality = (s * s.transpose() - DMatrix::<f64>::identity(n, n)).amax();
        let s2 = s * s;
        let s_squared = (&s2 - DMatrix::<f64>::identity(n, n)).amax();

        let phases: Vec<Complex64> = self.t.iter().map(|t| phase(*t)).collect();
        let st = DMatrix::<Complex64>::from_fn(n, n, |i, j| Complex64::new(s[(i, j)], 0.0) * phases[j]);
        let st3 = &st * &st * &st;
        let st_cubed = st3
            .iter()
            .zip(s2.iter())
            .map(|(a, b)| (a - Complex64::new(*b, 0.0)).norm())
            .fold(0.0, f64::max);
        let min_vacuum_row = s.row(0).iter().copied().fold(f64::INFINITY, f64::min);
        DatumResiduals {
            symmetry,
            orthogonality,
            s_squared,
            st_cubed,
            min_vacuum_row,
        }
    }

    pub fn to_json(&self) -> Value {
        let s: Vec<Vec<f64>> = (0..self.len())
            .map(|i| self.s.row(i).iter().copied().collect())
            .collect();
        json!({
            "algebra": self.algebra.to_json(),
            "labels": self.labels.iter().map(|l| l.to_json()).collect::<Vec<_>>(),
            "c": rational_string(self.c),
            "h": self.h.iter().map(|x| rational_string(*x)).collect::<Vec<_>>(),
            "S": s,
            "t": self.t.iter().map(|x| rational_string(*x)).collect::<Vec<_>>(),
        })
    }
}

/// `exp(2 pi i t)`.
pub fn phase(t: Rational) -> Complex64 {
    let angle = 2.0 * PI * (*t.numer() as f64) / (*t.denom() as f64);
    Complex64::from_polar(1.0, angle)
}

/// Reduces a rational to `[0, 1)`.
pub fn frac(r: Rational) -> Rational {
    r - r.floor()
}

/// Renders a rational as `"num/den"`.
pub fn rational_string(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` (or a bare integer).
pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.trim().parse().ok()?)),
    }
}

pub fn central_charge(m: u32) -> Result<Rational> {
    if m < 2 {
        return Err(domain(format!("central charge needs m >= 2, got {m}")));
    }
    let m = i64::from(m);
    Ok(Rational::one() - Rational::new(6, m * (m + 1)))
}

fn check_kac(m: u32, p: u32, q: u32) -> Result<()> {
    if m < 2 || p < 1 || p > m - 1 || q < 1 || q > m {
        return Err(domain(format!("Kac label ({p},{q}) out of range for m = {m}")));
    }
    Ok(())
}

/// Conformal weight `h_{p,q} = (((m+1)p - mq)^2 - 1) / (4m(m+1))`.
pub fn weight(m: u32, p: u32, q: u32) -> Result<Rational> {
    check_kac(m, p, q)?;
    let (m, p, q) = (i64::from(m), i64::from(p), i64::from(q));
    let x = (m + 1) * p - m * q;
    Ok(Rational::new(x * x - 1, 4 * m * (m + 1)))
}

pub fn canonical_label(m: u32, p: u32, q: u32) -> Result<MinimalLabel> {
    check_kac(m, p, q)?;
    let l = MinimalLabel { p, q };
    let partner = l.partner(m);
    Ok(if l.flat_index(m) <= partner.flat_index(m) {
        l
    } else {
        partner
    })
}

/// Angle (mod 1) of the statistical phase of the sector `(p, q)`, computed
/// from the coset triple `(j, k, l)` with `j = p-1`, `k = q-1`.
pub fn statistical_phase(m: u32, p: u32, q: u32) -> Result<Rational> {
    check_kac(m, p, q)?;
    let (m, p, q) = (i64::from(m), i64::from(p), i64::from(q));
    let num = (m + 1) * p * p - m * q * q - 1 + m * (m + 1) * (p - q) * (p - q);
    Ok(frac(Rational::new(num, 4 * m * (m + 1))))
}

/// Canonical labels of minimal model `m` in flat-index order.
pub fn minimal_labels(m: u32) -> Vec<MinimalLabel> {
    let mut out = Vec::with_capacity((m * (m - 1) / 2) as usize);
    for p in 1..m {
        for q in 1..=m {
            let l = MinimalLabel { p, q };
            if l.flat_index(m) < l.partner(m).flat_index(m) {
                out.push(l);
            }
        }
    }
    out
}

/// The SU(2)_k S matrix `sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2))`.
pub fn su2_s_matrix(k: u32) -> DMatrix<f64> {
    let n = f64::from(k + 2);
    let norm = (2.0 / n).sqrt();
    let size = (k + 1) as usize;
    DMatrix::from_fn(size, size, |a, b| {
        norm * (PI * ((a + 1) * (b + 1)) as f64 / n).sin()
    })
}

pub fn su2_weight(k: u32, a: u32) -> Rational {
    let (k, a) = (i64::from(k), i64::from(a));
    Rational::new(a * (a + 2), 4 * (k + 2))
}

pub fn su2_data(k: u32) -> Result<ModularDatum> {
    if k < 1 {
        return Err(domain("SU(2) level must be >= 1"));
    }
    let c = Rational::new(3 * i64::from(k), i64::from(k) + 2);
    let h: Vec<Rational> = (0..=k).map(|a| su2_weight(k, a)).collect();
    let t = h.iter().map(|h| frac(h - c / 24)).collect();
    Ok(ModularDatum {
        algebra: Algebra::Su2 { level: k },
        labels: (0..=k).map(|a| Label::Su2(Su2Label(a))).collect(),
        s: su2_s_matrix(k),
        t,
        h,
        c,
    })
}

fn minimal_s_entry(m: u32, a: MinimalLabel, b: MinimalLabel) -> f64 {
    let mf = f64::from(m);
    let (p, q, p2, q2) = (a.p as u64, a.q as u64, b.p as u64, b.q as u64);
    let sign = if (1 + p * q2 + q * p2).is_even() { 1.0 } else { -1.0 };
    let norm = 2.0 * (2.0 / (mf * (mf + 1.0))).sqrt();
    // Reduce the sine arguments mod 2 before scaling to keep them small.
    let arg1 = ((u64::from(m) + 1) * p * p2) % (2 * u64::from(m));
    let arg2 = (u64::from(m) * q * q2) % (2 * (u64::from(m) + 1));
    norm * sign * (PI * arg1 as f64 / mf).sin() * (PI * arg2 as f64 / (mf + 1.0)).sin()
}

pub fn minimal_data(m: u32) -> Result<ModularDatum> {
    if m < 3 {
        return Err(domain(format!("minimal model needs m >= 3, got {m}")));
    }
    let labels = minimal_labels(m);
    let c = central_charge(m)?;
    let h: Vec<Rational> = labels
        .iter()
        .map(|l| weight(m, l.p, l.q))
        .collect::<Result<_>>()?;
    let t = h.iter().map(|h| frac(h - c / 24)).collect();
    let n = labels.len();
    let s = DMatrix::from_fn(n, n, |i, j| minimal_s_entry(m, labels[i], labels[j]));
    Ok(ModularDatum {
        algebra: Algebra::Minimal { m },
        labels: labels.into_iter().map(Label::Minimal).collect(),
        s,
        t,
        h,
        c,
    })
}

/// Minimal-model S matrix assembled from the coset
/// `SU(2)_{m-2} x SU(2)_1 / SU(2)_{m-1}`: `2 S^(m-2)_{jj'} S^(1)_{ll'} S^(m-1)_{kk'}`
/// with `j = p-1`, `k = q-1` and `l = (j - k) mod 2`.
pub fn minimal_s_coset(m: u32) -> Result<DMatrix<f64>> {
    if m < 3 {
        return Err(domain(format!("minimal model needs m >= 3, got {m}")));
    }
    let s_j = su2_s_matrix(m - 2);
    let s_k = su2_s_matrix(m - 1);
    let s_l = su2_s_matrix(1);
    let triples: Vec<(usize, usize, usize)> = minimal_labels(m)
        .iter()
        .map(|l| {
            let (j, k) = ((l.p - 1) as usize, (l.q - 1) as usize);
            (j, k, (j + k) % 2)
        })
        .collect();
    let n = triples.len();
    Ok(DMatrix::from_fn(n, n, |a, b| {
        let (j, k, l) = triples[a];
        let (j2, k2, l2) = triples[b];
        2.0 * s_j[(j, j2)] * s_l[(l, l2)] * s_k[(k, k2)]
    }))
}
