use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::modular_data::ModularDatum;

use super::{entry_bound, COMMUTATION_TOL};

/// Singular values above this count towards the rank.
pub const RANK_CUT: f64 = 1e-8;
/// Singular values in `[RANK_FLOOR, RANK_CUT]` make the rank decision ambiguous.
pub const RANK_FLOOR: f64 = 1e-10;

/// Reduced basis of `{Z real : ZS = SZ, supp(Z) within the T-support}`.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    /// Label pairs `(a, b)` with `t_a = t_b`, row-major.
    pub support: Vec<(usize, usize)>,
    /// One coefficient vector over `support` per basis element.
    pub basis: Vec<Vec<f64>>,
    /// Index into `support` where basis element `i` is 1 and all others 0.
    pub pivots: Vec<usize>,
    /// Singular values of the restricted commutator, descending.
    pub singular_values: Vec<f64>,
}

impl CommutantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis element `i` as a full matrix.
    pub fn matrix(&self, n: usize, i: usize) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(n, n);
        for (&(a, b), &x) in self.support.iter().zip(&self.basis[i]) {
            out[(a, b)] = x;
        }
        out
    }

    /// Largest `|[B_i, S]|` entry over all basis elements.
    pub fn max_commutator(&self, d: &ModularDatum) -> f64 {
        (0..self.dimension())
            .map(|i| {
                let b = self.matrix(d.len(), i);
                (&b * &d.s - &d.s * &b).amax()
            })
            .fold(0.0, f64::max)
    }
}

/// Coordinates of the T-support in row-major order.
pub(crate) fn t_support(d: &ModularDatum) -> Vec<(usize, usize)> {
    let n = d.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| d.same_phase(a, b))
        .collect()
}

/// Upper-triangular factor of the commutator map restricted to `support`.
///
/// The equation for output coordinate `(i, j)` is
/// `sum_{(a,b)} Z_ab (delta_ia S_bj - S_ia delta_bj) = 0`. Rows are fed in
/// blocks of one `i` at a time and folded into a running QR factor, so the
/// full `n^2 x |support|` system is never materialized.
fn commutator_r(d: &ModularDatum, support: &[(usize, usize)]) -> DMatrix<f64> {
    let n = d.len();
    let nv = support.len();
    let s = &d.s;
    let mut r = DMatrix::<f64>::zeros(0, nv);
    for i in 0..n {
        let mut block = DMatrix::<f64>::zeros(n, nv);
        for (c, &(a, b)) in support.iter().enumerate() {
            if a == i {
                for j in 0..n {
                    block[(j, c)] += s[(b, j)];
                }
            }
            block[(b, c)] -= s[(i, a)];
        }
        let stacked = if r.nrows() == 0 {
            block
        } else {
            let mut m = DMatrix::<f64>::zeros(r.nrows() + n, nv);
            m.rows_mut(0, r.nrows()).copy_from(&r);
            m.rows_mut(r.nrows(), n).copy_from(&block);
            m
        };
        r = stacked.qr().r();
    }
    r
}

pub fn commutant_basis(d: &ModularDatum) -> Result<CommutantBasis> {
    let support = t_support(d);
    let nv = support.len();
    let r = commutator_r(d, &support);
    // Pad to square so the SVD yields a full right-singular basis.
    let mut square = DMatrix::<f64>::zeros(nv, nv);
    let rows = r.nrows().min(nv);
    square.rows_mut(0, rows).copy_from(&r.rows(0, rows));
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");

    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();

    if let Some(&value) = singular_values
        .iter()
        .find(|&&x| (RANK_FLOOR..=RANK_CUT).contains(&x))
    {
        return Err(Error::Conditioning { value });
    }
    let null: Vec<Vec<f64>> = order
        .iter()
        .filter(|&&i| svd.singular_values[i] < RANK_FLOOR)
        .map(|&i| v_t.row(i).iter().copied().collect())
        .collect();

    let (basis, pivots) = reduce(d, &support, null);
    let out = CommutantBasis {
        support,
        basis,
        pivots,
        singular_values,
    };
    let residual = out.max_commutator(d);
    if residual >= COMMUTATION_TOL {
        return Err(Error::Conditioning { value: residual });
    }
    Ok(out)
}

/// Gauss-Jordan elimination of the nullspace rows. Pivot columns are taken in
/// preference order (vacuum entry first, then small entry bounds), skipping
/// columns whose best remaining magnitude is poor relative to the largest one.
fn reduce(
    d: &ModularDatum,
    support: &[(usize, usize)],
    mut rows: Vec<Vec<f64>>,
) -> (Vec<Vec<f64>>, Vec<usize>) {
    let nv = support.len();
    let mut preference: Vec<usize> = (0..nv).collect();
    preference.sort_by_key(|&c| {
        let (a, b) = support[c];
        ((a, b) != (0, 0), entry_bound(d, a, b), c)
    });

    let dim = rows.len();
    let mut pivots = Vec::with_capacity(dim);
    for step in 0..dim {
        let global = rows[step..]
            .iter()
            .flat_map(|r| preference.iter().filter(|c| !pivots.contains(*c)).map(move |&c| r[c].abs()))
            .fold(0.0, f64::max);
        let (col, src) = preference
            .iter()
            .filter(|c| !pivots.contains(*c))
            .find_map(|&c| {
                let (src, mag) = (step..dim)
                    .map(|i| (i, rows[i][c].abs()))
                    .max_by(|x, y| x.1.total_cmp(&y.1))?;
                (mag >= 0.1 * global).then_some((c, src))
            })
            .expect("a nullspace row always has a usable pivot");
        rows.swap(step, src);
        let scale = rows[step][col];
        rows[step].iter_mut().for_each(|x| *x /= scale);
        let pivot_row = rows[step].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != step {
                let f = row[col];
                if f != 0.0 {
                    row.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
                }
            }
        }
        pivots.push(col);
    }
    for row in &mut rows {
        for x in row.iter_mut() {
            if x.abs() < 1e-13 {
                *x = 0.0;
            }
        }
    }
    for (i, &p) in pivots.iter().enumerate() {
        for (j, row) in rows.iter_mut().enumerate() {
            row[p] = if i == j { 1.0 } else { 0.0 };
        }
    }
    (rows, pivots)
}
