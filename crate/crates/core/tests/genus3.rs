use std::collections::BTreeSet;

use curveaut::catalog::Catalog;
use curveaut::classify::{genus3_table, pairs_by_restriction, GenusReport};
use curveaut::covers::{types_for_signature, RamificationType, Signature};
use curveaut::fullness::{decide_nonexceptional_type, Verdict, Witness};
use curveaut::reference::{genus3_rows, Genus3Row};
use curveaut::Caps;

fn report() -> GenusReport {
    genus3_table(Caps::default()).unwrap()
}

#[test]
fn classification_matches_reference_rows() {
    let r = report();
    assert_eq!(r.pairs.len(), 48);
    assert_eq!(r.pair_count_with_trivial(), 49);

    let mut computed: Vec<Genus3Row> = r
        .records
        .iter()
        .map(|rec| Genus3Row {
            group: rec.group.clone(),
            g0: rec.signature.g0,
            periods: rec.signature.periods.clone(),
            delta: rec.delta,
            hyperelliptic: rec.hyperelliptic,
        })
        .collect();
    let mut expected = genus3_rows();
    computed.sort();
    expected.sort();
    assert_eq!(computed, expected);
    assert!(r.records.iter().all(|rec| rec.verdict.is_full()));
}

#[test]
fn restriction_recovers_every_pair() {
    let r = report();
    let direct: BTreeSet<(String, Signature)> = r
        .pairs
        .iter()
        .map(|(k, sig)| (r.universe[*k].label.clone(), sig.clone()))
        .collect();
    assert_eq!(pairs_by_restriction(&r, Caps::default()).unwrap(), direct);
}

#[test]
fn klein_quartic_row() {
    let r = report();
    let rec = r.records.iter().find(|x| x.group == "(168,42)").unwrap();
    assert_eq!(rec.signature.to_string(), "(0; 2,3,7)");
    assert_eq!(rec.delta, 0);
    assert!(!rec.hyperelliptic);
}

fn assert_handle_with_two_points_not_full(label: &str, periods: &[u32]) {
    let catalog = Catalog::bundled();
    let g = &catalog.get(label).unwrap().group;
    let sig = Signature::new(1, periods.to_vec()).unwrap();
    let types: Vec<RamificationType> = types_for_signature(g, &sig);
    let mut decided = 0;
    for ty in &types {
        let Ok(v) = decide_nonexceptional_type(g, ty, 1 << 24) else {
            continue;
        };
        decided += 1;
        let Verdict::NotFull(w) = v.verdict else {
            panic!("{label} {ty:?} judged {}", v.keyword())
        };
        let Witness::Action {
            action,
            system,
            automorphism,
        } = *w
        else {
            panic!("expected an action witness")
        };
        assert!(system.is_valid(g));
        let moved: Vec<_> = system
            .elements()
            .into_iter()
            .map(|x| automorphism.apply(x))
            .collect();
        assert_eq!(moved, action.evaluate(g, &system));
    }
    assert!(decided > 0, "{label} has no system of signature {sig}");
}

#[test]
fn order_three_and_four_with_one_handle_are_not_full() {
    assert_handle_with_two_points_not_full("(3,1)", &[3, 3]);
    assert_handle_with_two_points_not_full("(4,1)", &[2, 2]);
    assert_handle_with_two_points_not_full("(4,2)", &[2, 2]);
}
