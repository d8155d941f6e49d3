//! Self-check suite behind `mmk verify`.

use std::collections::BTreeSet;

use crate::ade::{diagrams_with_coxeter, label_invariant, InvariantLabel};
use crate::classification::{classify_minimal, classify_minimal_type_ii, simple_current_locality};
use crate::error::Result;
use crate::fusion::{minimal_fusion_coefficients, mu_index, mu_index_closed_form, qdim, verlinde};
use crate::invariants::enumerate_invariants;
use crate::modular_data::{frac, minimal_data, minimal_labels, minimal_s_coset, statistical_phase, su2_data, weight};

use super::tables::{TYPE_II_FAMILIES, TYPE_I_FAMILIES};

const DATA_TOL: f64 = 1e-9;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub failure: Option<String>,
}

impl Check {
    fn from(name: impl Into<String>, outcome: Result<Option<String>>) -> Self {
        Check {
            name: name.into(),
            failure: match outcome {
                Ok(f) => f,
                Err(e) => Some(e.to_string()),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn first_failure(items: impl IntoIterator<Item = Result<Option<String>>>) -> Result<Option<String>> {
    for item in items {
        if let Some(f) = item? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

fn expected_su2(k: u32) -> BTreeSet<InvariantLabel> {
    diagrams_with_coxeter(k + 2)
        .into_iter()
        .filter(|g| g.constructible_at(k))
        .map(InvariantLabel::Su2)
        .collect()
}

fn expected_minimal(m: u32) -> BTreeSet<InvariantLabel> {
    let mut out = BTreeSet::new();
    for g in diagrams_with_coxeter(m).into_iter().filter(|g| g.constructible_at(m - 2)) {
        for h in diagrams_with_coxeter(m + 1).into_iter().filter(|h| h.constructible_at(m - 1)) {
            out.insert(InvariantLabel::Minimal(g, h));
        }
    }
    out
}

fn enumeration_matches(d: &crate::modular_data::ModularDatum, want: BTreeSet<InvariantLabel>) -> Result<Option<String>> {
    let found = enumerate_invariants(d)?;
    let got = found.iter().map(label_invariant).collect::<Result<BTreeSet<_>>>()?;
    if got.len() != found.len() || got != want {
        let show = |s: &BTreeSet<InvariantLabel>| s.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        return Ok(Some(format!("{}: found [{}], expected [{}]", d.algebra, show(&got), show(&want))));
    }
    Ok(None)
}

/// Runs every check on minimal models `3..=max_m` and on the SU(2) levels
/// they are built from, plus the exceptional levels 10, 16 and 28.
pub fn run_checks(max_m: u32) -> Vec<Check> {
    let ms: Vec<u32> = (3..=max_m).collect();
    let mut levels: BTreeSet<u32> = (1..max_m).collect();
    levels.extend([10, 16, 28]);
    let mut out = Vec::new();
    let range = format!("m=3..{max_m}");

    out.push(Check::from(
        "modular-data su2",
        first_failure(levels.iter().map(|&k| {
            let r = su2_data(k)?.residuals();
            Ok((!r.within(DATA_TOL)).then(|| format!("k={k}: {r:?}")))
        })),
    ));
    out.push(Check::from(
        format!("modular-data minimal {range}"),
        first_failure(ms.iter().map(|&m| {
            let d = minimal_data(m)?;
            let r = d.residuals();
            let coset = (&d.s - minimal_s_coset(m)?).amax();
            Ok((!r.within(DATA_TOL) || coset > DATA_TOL).then(|| format!("m={m}: {r:?}, coset {coset:.2e}")))
        })),
    ));
    out.push(Check::from(
        format!("fusion verlinde = combinatorial {range}"),
        first_failure(ms.iter().map(|&m| {
            let v = verlinde(&minimal_data(m)?)?;
            Ok((v != minimal_fusion_coefficients(m)?).then(|| format!("m={m}")))
        })),
    ));
    out.push(Check::from(
        format!("mu-index {range}"),
        first_failure(ms.iter().map(|&m| {
            let d = minimal_data(m)?;
            let mu = mu_index(&d);
            let closed = mu_index_closed_form(m);
            let dims: f64 = (0..d.len()).map(|a| qdim(&d, a).powi(2)).sum();
            let bad = (mu - closed).abs() / mu > DATA_TOL || (mu - dims).abs() / mu > DATA_TOL;
            Ok(bad.then(|| format!("m={m}: {mu} vs {closed} vs {dims}")))
        })),
    ));
    out.push(Check::from(
        format!("phase identity {range}"),
        first_failure(ms.iter().map(|&m| {
            for l in minimal_labels(m) {
                if statistical_phase(m, l.p, l.q)? != frac(weight(m, l.p, l.q)?) {
                    return Ok(Some(format!("m={m} label {l}")));
                }
            }
            let (phase, local) = simple_current_locality(m)?;
            Ok((local != matches!(m % 4, 1 | 2)).then(|| format!("m={m}: simple current phase {phase}")))
        })),
    ));
    out.push(Check::from(
        "enumeration su2",
        first_failure(levels.iter().map(|&k| enumeration_matches(&su2_data(k)?, expected_su2(k)))),
    ));
    out.push(Check::from(
        format!("enumeration minimal {range}"),
        first_failure(ms.iter().map(|&m| enumeration_matches(&minimal_data(m)?, expected_minimal(m)))),
    ));
    out.push(Check::from(
        format!("classification counts {range}"),
        first_failure(ms.iter().map(|&m| {
            for (entries, families) in [
                (classify_minimal(m)?, &TYPE_I_FAMILIES[..]),
                (classify_minimal_type_ii(m)?, &TYPE_II_FAMILIES[..]),
            ] {
                for e in entries {
                    for f in families {
                        if f.instance(m) == Some(e.label) {
                            let n = f.m.solve(i64::from(m)).expect("instance solved");
                            let want = f.counts_at(n)?;
                            let got = e.counts.as_array().map(|x| x as i64);
                            if got != want {
                                return Ok(Some(format!("m={m} {}: {got:?} vs {want:?}", e.label)));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })),
    ));
    out
}
