use rayon::prelude::*;

use crate::error::Result;
use crate::modular_data::ModularDatum;

use super::{entry_bound, is_modular_invariant, CommutantBasis, ModularInvariant, INTEGRALITY_TOL};

const PROPAGATION_EPS: f64 = 1e-7;

/// Counters from one enumeration run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
}

impl std::ops::Add for SearchStats {
    type Output = SearchStats;
    fn add(self, o: SearchStats) -> SearchStats {
        SearchStats {
            nodes: self.nodes + o.nodes,
            leaves: self.leaves + o.leaves,
        }
    }
}

/// `lo <= sum coef * x[var] <= hi` for one support coordinate.
struct Constraint {
    terms: Vec<(usize, f64)>,
    lo: f64,
    hi: f64,
}

struct Problem<'a> {
    d: &'a ModularDatum,
    basis: &'a CommutantBasis,
    constraints: Vec<Constraint>,
}

type Bounds = (Vec<i64>, Vec<i64>);

impl<'a> Problem<'a> {
    fn new(d: &'a ModularDatum, basis: &'a CommutantBasis) -> Self {
        let constraints = basis
            .support
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| {
                let terms = basis
                    .basis
                    .iter()
                    .enumerate()
                    .filter_map(|(r, row)| (row[e].abs() > 1e-12).then_some((r, row[e])))
                    .collect();
                let (lo, hi) = if (a, b) == (0, 0) {
                    (1.0, 1.0)
                } else {
                    (0.0, f64::from(entry_bound(d, a, b)))
                };
                Constraint { terms, lo, hi }
            })
            .collect();
        Problem {
            d,
            basis,
            constraints,
        }
    }

    fn initial_bounds(&self) -> Bounds {
        let lo = vec![0; self.basis.dimension()];
        let hi = self
            .basis
            .pivots
            .iter()
            .map(|&e| {
                let (a, b) = self.basis.support[e];
                i64::from(entry_bound(self.d, a, b))
            })
            .collect();
        (lo, hi)
    }

    /// Bounds consistency over all constraints. Returns false on a wipe-out.
    fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
        loop {
            let mut changed = false;
            for con in &self.constraints {
                let (mut mn, mut mx) = (0.0, 0.0);
                for &(r, a) in &con.terms {
                    let (l, h) = (lo[r] as f64, hi[r] as f64);
                    if a > 0.0 {
                        mn += a * l;
                        mx += a * h;
                    } else {
                        mn += a * h;
                        mx += a * l;
                    }
                }
                if mn > con.hi + PROPAGATION_EPS || mx < con.lo - PROPAGATION_EPS {
                    return false;
                }
                for &(r, a) in &con.terms {
                    let (l, h) = (lo[r] as f64, hi[r] as f64);
                    let (own_mn, own_mx) = if a > 0.0 { (a * l, a * h) } else { (a * h, a * l) };
                    let rest_mn = mn - own_mn;
                    let rest_mx = mx - own_mx;
                    let (x_lo, x_hi) = if a > 0.0 {
                        ((con.lo - rest_mx) / a, (con.hi - rest_mn) / a)
                    } else {
                        ((con.hi - rest_mn) / a, (con.lo - rest_mx) / a)
                    };
                    let new_lo = (x_lo - PROPAGATION_EPS).ceil();
                    let new_hi = (x_hi + PROPAGATION_EPS).floor();
                    if new_lo > lo[r] as f64 {
                        lo[r] = new_lo as i64;
                        changed = true;
                    }
                    if new_hi < hi[r] as f64 {
                        hi[r] = new_hi as i64;
                        changed = true;
                    }
                    if lo[r] > hi[r] {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Rebuilds Z from pivot values; `None` unless every entry is a
    /// non-negative integer within its bound and `Z_00 = 1`.
    fn reconstruct(&self, x: &[i64]) -> Option<ModularInvariant> {
        let n = self.d.len();
        let mut entries = vec![0u32; n * n];
        for (e, &(a, b)) in self.basis.support.iter().enumerate() {
            let value: f64 = self
                .basis
                .basis
                .iter()
                .zip(x)
                .map(|(row, &xi)| row[e] * xi as f64)
                .sum();
            let rounded = value.round();
            if (value - rounded).abs() >= INTEGRALITY_TOL || rounded < 0.0 {
                return None;
            }
            entries[a * n + b] = rounded as u32;
        }
        if entries[0] != 1 {
            return None;
        }
        let z = ModularInvariant::from_entries(self.d.algebra, n, entries).ok()?;
        match is_modular_invariant(self.d, &z) {
            Ok(None) => Some(z),
            _ => None,
        }
    }

    fn dfs(&self, mut lo: Vec<i64>, mut hi: Vec<i64>, out: &mut Vec<ModularInvariant>, stats: &mut SearchStats) {
        stats.nodes += 1;
        if !self.propagate(&mut lo, &mut hi) {
            return;
        }
        match branch_variable(&lo, &hi) {
            None => {
                stats.leaves += 1;
                if let Some(z) = self.reconstruct(&lo) {
                    out.push(z);
                }
            }
            Some(r) => {
                for v in lo[r]..=hi[r] {
                    let (mut l2, mut h2) = (lo.clone(), hi.clone());
                    l2[r] = v;
                    h2[r] = v;
                    self.dfs(l2, h2, out, stats);
                }
            }
        }
    }
}

/// Free variable with the smallest domain (lowest index on ties).
fn branch_variable(lo: &[i64], hi: &[i64]) -> Option<usize> {
    (0..lo.len())
        .filter(|&r| lo[r] < hi[r])
        .min_by_key(|&r| (hi[r] - lo[r], r))
}

/// Bounded integer search over the pivot coordinates of `basis`.
///
/// The first branching variable is split across worker threads; each value
/// prefix is an independent subtree. Results are merged, sorted and
/// deduplicated, so the output does not depend on the worker count.
pub fn enumerate_with_basis(
    d: &ModularDatum,
    basis: &CommutantBasis,
) -> Result<(Vec<ModularInvariant>, SearchStats)> {
    let problem = Problem::new(d, basis);
    let (mut lo, mut hi) = problem.initial_bounds();
    let mut stats = SearchStats {
        nodes: 1,
        leaves: 0,
    };
    let mut found = Vec::new();
    if problem.propagate(&mut lo, &mut hi) {
        match branch_variable(&lo, &hi) {
            None => {
                stats.leaves += 1;
                found.extend(problem.reconstruct(&lo));
            }
            Some(r) => {
                let parts: Vec<(Vec<ModularInvariant>, SearchStats)> = (lo[r]..=hi[r])
                    .into_par_iter()
                    .map(|v| {
                        let (mut l2, mut h2) = (lo.clone(), hi.clone());
                        l2[r] = v;
                        h2[r] = v;
                        let mut out = Vec::new();
                        let mut st = SearchStats::default();
                        problem.dfs(l2, h2, &mut out, &mut st);
                        (out, st)
                    })
                    .collect();
                for (out, st) in parts {
                    found.extend(out);
                    stats = stats + st;
                }
            }
        }
    }
    found.sort();
    found.dedup();
    Ok((found, stats))
}
