use curveaut::catalog::Catalog;
use curveaut::classify::{emit_dot, emit_tsv, large_group_table};
use curveaut::reference::{crosswalk, reference_rows};
use curveaut::Caps;

#[test]
fn large_tables_match_reference_rows_and_inclusions() {
    let catalog = Catalog::bundled();
    let mut failures = Vec::new();
    for genus in 4..=10 {
        let report = large_group_table(&catalog, genus, Caps::default()).unwrap();
        let refs = reference_rows(genus);
        assert_eq!(report.records.len(), refs.len(), "genus {genus}");
        let cw = crosswalk(&report.records, &refs);
        assert!(cw.rows.iter().all(Option::is_some));
        failures.extend(cw.mismatches.iter().map(|m| format!("genus {genus}: {m}")));
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn genus4_inclusion_graph() {
    let report = large_group_table(&Catalog::bundled(), 4, Caps::default()).unwrap();
    let dot = emit_dot(4, &report.records, &report.edges);
    assert_eq!(dot.matches(" -> ").count(), 7);
    assert!(report
        .records
        .iter()
        .all(|r| r.components.to_string() == "1"));
}

#[test]
fn large_table_output_is_deterministic() {
    let catalog = Catalog::bundled();
    let a = large_group_table(&catalog, 4, Caps::default()).unwrap();
    let b = large_group_table(&catalog, 4, Caps::default()).unwrap();
    assert_eq!(emit_tsv(&a.records, &[]), emit_tsv(&b.records, &[]));
    assert_eq!(
        emit_dot(4, &a.records, &a.edges),
        emit_dot(4, &b.records, &b.edges)
    );
}

#[test]
fn bundled_crosswalk_file_is_current() {
    let text = include_str!("../../../catalog/large_groups.crosswalk.tsv");
    let catalog = Catalog::bundled();
    let mut expected = Vec::new();
    for genus in 4..=10 {
        let report = large_group_table(&catalog, genus, Caps::default()).unwrap();
        let cw = crosswalk(&report.records, &reference_rows(genus));
        for (k, (r, row)) in report.records.iter().zip(&cw.rows).enumerate() {
            expected.push(format!(
                "{genus}\t{}\t{}\t{}\t{}",
                k + 1,
                row.unwrap(),
                r.group,
                r.signature
            ));
        }
    }
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with(|c: char| c.is_ascii_digit()))
        .collect();
    assert_eq!(lines, expected);
}
