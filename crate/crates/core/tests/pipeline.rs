use std::collections::HashSet;

use ekr_core::ekrverify::{reconstruct_from_blocks, verify_standard_module_membership};
use ekr_core::report::CheckReport;
use ekr_core::suite::{checks_for, SuiteConfig};
use ekr_core::{DerangementGraph, Error, GroupKind, GroupTable};
use proptest::prelude::*;

fn alt5() -> GroupTable {
    GroupTable::new(5, GroupKind::Alt).unwrap()
}

#[test]
fn flipped_adjacency_bit_yields_a_named_failure() {
    let mut graph = DerangementGraph::build(5).unwrap();
    graph.toggle_arc(0, 1);
    let err = graph.validate().unwrap_err();
    let report = CheckReport::from_error("graph", 5, "derangement-graph:structure", &err);
    assert!(!report.passed());
    assert_eq!(report.witnesses["invariant"], "symmetric");
    let json = report.to_json().unwrap();
    assert!(json.contains(r#""status":"fail""#));
    assert_eq!(CheckReport::from_json(&json).unwrap().to_json().unwrap(), json);
}

#[test]
fn whole_suite_passes_at_five_with_distinct_anchors() {
    let config = SuiteConfig::default();
    let mut anchors = HashSet::new();
    for check in checks_for(5, &config) {
        for report in check.run(5, &config).unwrap() {
            assert!(report.passed(), "{}", report.to_json().unwrap());
            assert!(
                anchors.insert(report.anchor.clone()),
                "duplicate anchor {}",
                report.anchor
            );
        }
    }
    assert!(anchors.len() >= 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn translated_cosets_reconstruct_to_their_label(
        i in 1usize..=5, j in 1usize..=5, g in 0usize..60, h in 0usize..60,
    ) {
        let table = alt5();
        let (g, h) = (table.element(g).clone(), table.element(h).clone());
        let set: Vec<_> = table.coset_family(i, j).members.iter().map(|p| h.compose(p).compose(&g)).collect();
        let r = reconstruct_from_blocks(&set).unwrap();
        prop_assert_eq!(r.coset, (g.inverse().apply(i), h.apply(j)));
        prop_assert!(set.contains(&r.translation));
        prop_assert_eq!(r.fixed_point_rows.len(), 5);
    }

    #[test]
    fn swapping_one_member_out_breaks_independence(
        i in 1usize..=5, j in 1usize..=5, out in 0usize..12, replacement in 0usize..48,
    ) {
        let table = alt5();
        let mut set = table.coset_family(i, j).members;
        let outside: Vec<_> = table.elements().iter().filter(|p| p.apply(i) != j).cloned().collect();
        set[out] = outside[replacement].clone();
        for err in [reconstruct_from_blocks(&set).unwrap_err(), verify_standard_module_membership(&set).unwrap_err()] {
            let is_edge = matches!(&err, Error::Verification { invariant, .. } if invariant == "independent set");
            prop_assert!(is_edge, "{}", err);
        }
    }
}
