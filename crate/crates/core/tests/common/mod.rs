#![allow(dead_code)]

use std::collections::BTreeSet;

use mmk::modular_data::ModularDatum;

const EPS: f64 = 1e-7;

/// Exhaustive bounded integer search for modular invariants of `d`, run
/// directly over the matrix entries on the T-support.
///
/// Every entry `Z_ab` with `t_a = t_b` is a variable in
/// `[0, floor(1/(S_0a S_0b))]`, `Z_00 = 1`, and each entry of `ZS - SZ` gives
/// a linear equation. Domains are narrowed by interval reasoning on those
/// equations and the search branches on the smallest remaining domain. No
/// nullspace is used.
pub fn brute_force_invariants(d: &ModularDatum) -> Vec<Vec<u32>> {
    let n = d.len();
    let s = &d.s;
    let vars: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| d.t[a] == d.t[b])
        .collect();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut row = Vec::new();
            for (v, &(a, b)) in vars.iter().enumerate() {
                let mut c = 0.0;
                if a == i {
                    c += s[(b, j)];
                }
                if b == j {
                    c -= s[(i, a)];
                }
                if c.abs() > 1e-12 {
                    row.push((v, c));
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    let mut lo = vec![0i64; vars.len()];
    let mut hi: Vec<i64> = vars
        .iter()
        .map(|&(a, b)| (1.0 / (s[(0, a)] * s[(0, b)]) + 1e-9).floor() as i64)
        .collect();
    let vac = vars.iter().position(|&v| v == (0, 0)).expect("vacuum is on the support");
    lo[vac] = 1;
    hi[vac] = 1;

    let mut found = Vec::new();
    search(&rows, lo, hi, &mut |x| {
        let mut z = vec![0u32; n * n];
        for (v, &(a, b)) in vars.iter().enumerate() {
            z[a * n + b] = x[v] as u32;
        }
        // exact re-check of the equations at the leaf
        let ok = rows
            .iter()
            .all(|r| r.iter().map(|&(v, c)| c * x[v] as f64).sum::<f64>().abs() < 1e-9);
        if ok {
            found.push(z);
        }
    });
    found.sort();
    found
}

fn propagate(rows: &[Vec<(usize, f64)>], lo: &mut [i64], hi: &mut [i64]) -> bool {
    loop {
        let mut changed = false;
        for r in rows {
            let (mut mn, mut mx) = (0.0, 0.0);
            for &(v, c) in r {
                let (a, b) = (c * lo[v] as f64, c * hi[v] as f64);
                mn += a.min(b);
                mx += a.max(b);
            }
            if mn > EPS || mx < -EPS {
                return false;
            }
            for &(v, c) in r {
                let (a, b) = (c * lo[v] as f64, c * hi[v] as f64);
                let rest_mn = mn - a.min(b);
                let rest_mx = mx - a.max(b);
                // c * x in [-rest_mx, -rest_mn]
                let (l, h) = if c > 0.0 {
                    (-rest_mx / c, -rest_mn / c)
                } else {
                    (-rest_mn / c, -rest_mx / c)
                };
                let nl = (l - EPS).ceil() as i64;
                let nh = (h + EPS).floor() as i64;
                if nl > lo[v] {
                    lo[v] = nl;
                    changed = true;
                }
                if nh < hi[v] {
                    hi[v] = nh;
                    changed = true;
                }
                if lo[v] > hi[v] {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(rows: &[Vec<(usize, f64)>], mut lo: Vec<i64>, mut hi: Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    if !propagate(rows, &mut lo, &mut hi) {
        return;
    }
    let free = (0..lo.len()).filter(|&v| lo[v] < hi[v]).min_by_key(|&v| hi[v] - lo[v]);
    match free {
        None => emit(&lo),
        Some(v) => {
            for x in lo[v]..=hi[v] {
                let (mut l, mut h) = (lo.clone(), hi.clone());
                l[v] = x;
                h[v] = x;
                search(rows, l, h, emit);
            }
        }
    }
}

/// Expected SU(2)_k invariant labels, written out from the A-D-E list.
pub fn expected_su2_labels(k: u32) -> BTreeSet<String> {
    let mut out = BTreeSet::from([format!("A{}", k + 1)]);
    if k % 2 == 0 && k >= 4 {
        out.insert(format!("D{}", k / 2 + 2));
    }
    match k {
        10 => {
            out.insert("E6".into());
        }
        16 => {
            out.insert("E7".into());
        }
        28 => {
            out.insert("E8".into());
        }
        _ => {}
    }
    out
}

/// Diagram names with Coxeter number `h` that carry an SU(2) invariant at
/// level `h - 2`.
fn constructible(h: u32) -> Vec<String> {
    expected_su2_labels(h - 2).into_iter().collect()
}

/// Expected minimal-model pairs: every combination of constructible factors.
pub fn expected_minimal_labels(m: u32) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for g in constructible(m) {
        for h in constructible(m + 1) {
            out.insert(format!("({g},{h})"));
        }
    }
    out
}

/// Closed forms for the count columns, by pair label at `m`.
/// Returns `None` for pairs outside both tables.
pub fn table_counts(m: u32, label: &str) -> Option<[u64; 4]> {
    let m = u64::from(m);
    let exceptional = [
        (11, "(A10,E6)", [30, 60, 30, 15]),
        (12, "(E6,A12)", [36, 72, 36, 18]),
        (29, "(A28,E8)", [112, 448, 112, 28]),
        (30, "(E8,A30)", [120, 480, 120, 30]),
        (17, "(A16,E7)", [56, 136, 80, 48]),
        (18, "(E7,A18)", [63, 153, 90, 54]),
    ];
    if let Some(&(_, _, c)) = exceptional.iter().find(|(mm, l, _)| *mm == m && *l == label) {
        return Some(c);
    }
    if label == format!("(A{},A{})", m - 1, m) {
        let x = m * (m - 1) / 2;
        return Some([x; 4]);
    }
    let n = m / 4;
    match m % 4 {
        1 if label == format!("(A{},D{})", 4 * n, 2 * n + 2) => Some([
            2 * n * (2 * n + 2),
            2 * n * (4 * n + 4),
            2 * n * (2 * n + 2),
            2 * n * (n + 2),
        ]),
        2 if label == format!("(D{},A{})", 2 * n + 2, 4 * n + 2) => Some([
            (2 * n + 1) * (2 * n + 2),
            (2 * n + 1) * (4 * n + 4),
            (2 * n + 1) * (2 * n + 2),
            (2 * n + 1) * (n + 2),
        ]),
        0 if label == format!("(D{},A{})", 2 * n + 1, 4 * n) => {
            Some([2 * n * (2 * n + 1), 2 * n * (4 * n - 1), 2 * n * (4 * n - 1), 2 * n * (4 * n - 1)])
        }
        3 if label == format!("(A{},D{})", 4 * n + 2, 2 * n + 3) => Some([
            (2 * n + 1) * (2 * n + 3),
            (2 * n + 1) * (4 * n + 3),
            (2 * n + 1) * (4 * n + 3),
            (2 * n + 1) * (4 * n + 3),
        ]),
        _ => None,
    }
}

/// Whether a pair belongs to one of the seven type I families.
pub fn is_table_one_pair(m: u32, label: &str) -> bool {
    let n = m / 4;
    label == format!("(A{},A{})", m - 1, m)
        || (m % 4 == 1 && label == format!("(A{},D{})", 4 * n, 2 * n + 2))
        || (m % 4 == 2 && label == format!("(D{},A{})", 2 * n + 2, 4 * n + 2))
        || (m == 11 && label == "(A10,E6)")
        || (m == 12 && label == "(E6,A12)")
        || (m == 29 && label == "(A28,E8)")
        || (m == 30 && label == "(E8,A30)")
}
