mod common;

use mmk::ade::{diagrams_with_coxeter, is_type_i, label_invariant, minimal_invariant, su2_invariant, InvariantLabel};
use mmk::cli::tables::{exceptional_expansion, family_expansion, TYPE_I_FAMILIES};
use mmk::invariants::is_modular_invariant;
use mmk::modular_data::{minimal_data, su2_data};

fn constructible_pairs(m: u32) -> Vec<InvariantLabel> {
    let mut out = Vec::new();
    for g in diagrams_with_coxeter(m).into_iter().filter(|g| g.constructible_at(m - 2)) {
        for h in diagrams_with_coxeter(m + 1).into_iter().filter(|h| h.constructible_at(m - 1)) {
            out.push(InvariantLabel::Minimal(g, h));
        }
    }
    out
}

#[test]
fn su2_round_trip_to_level_32() {
    for k in 1..=32 {
        let d = su2_data(k).unwrap();
        let mut labels: Vec<String> = Vec::new();
        for g in diagrams_with_coxeter(k + 2).into_iter().filter(|g| g.constructible_at(k)) {
            let z = su2_invariant(g, k).unwrap();
            assert_eq!(is_modular_invariant(&d, &z).unwrap(), None, "{g} k={k}");
            assert_eq!(label_invariant(&z).unwrap(), InvariantLabel::Su2(g));
            assert_eq!(z.trace(), g.counts().ab);
            labels.push(g.to_string());
        }
        let want: Vec<String> = common::expected_su2_labels(k).into_iter().collect();
        labels.sort();
        assert_eq!(labels, want, "k={k}");
    }
}

#[test]
fn minimal_round_trip_to_m_30() {
    for m in 3..=30 {
        let d = minimal_data(m).unwrap();
        for label in constructible_pairs(m) {
            let InvariantLabel::Minimal(g, h) = label else { unreachable!() };
            let z = minimal_invariant(g, h, m).unwrap();
            assert_eq!(is_modular_invariant(&d, &z).unwrap(), None, "{label} m={m}");
            assert_eq!(label_invariant(&z).unwrap(), label);
            assert_eq!(z.trace(), g.counts().ab * h.counts().ab / 2, "{label}");
            assert_eq!(z.trace_zzt(), g.counts().full * h.counts().full / 2, "{label}");
        }
    }
}

/// The character expansions of the type I families, evaluated at every
/// instance up to m = 30, reproduce the constructed invariants entrywise.
#[test]
fn table_one_expansions_match_constructed_invariants() {
    let mut checked = 0;
    for m in 3..=30 {
        for label in constructible_pairs(m) {
            let InvariantLabel::Minimal(g, h) = label else { unreachable!() };
            if !label.is_block_type() {
                continue;
            }
            let expansion = match TYPE_I_FAMILIES.iter().find(|f| f.instance(m) == Some(label)) {
                Some(f) => family_expansion(*f).unwrap(),
                None => exceptional_expansion(label).unwrap(),
            };
            let z = minimal_invariant(g, h, m).unwrap();
            assert_eq!(expansion.evaluate(m).unwrap(), z.rows(), "{label} m={m}");
            checked += 1;
        }
    }
    assert_eq!(checked, 46);
}

#[test]
fn type_i_blocks_count_the_ambichiral_column() {
    for m in 3..=30 {
        for label in constructible_pairs(m) {
            let InvariantLabel::Minimal(g, h) = label else { unreachable!() };
            let z = minimal_invariant(g, h, m).unwrap();
            let blocks = is_type_i(&z).unwrap();
            assert_eq!(blocks.is_some(), common::is_table_one_pair(m, &label.to_string()), "{label}");
            if let Some(b) = blocks {
                assert_eq!(b.len() as u64, label.counts().ambichiral, "{label}");
                // Z = sum b b^T
                let n = z.size();
                let mut acc = vec![0u32; n * n];
                for block in &b {
                    for &(i, ci) in block {
                        for &(j, cj) in block {
                            acc[i * n + j] += ci * cj;
                        }
                    }
                }
                assert_eq!(acc, z.entries(), "{label}");
            }
        }
    }
}
