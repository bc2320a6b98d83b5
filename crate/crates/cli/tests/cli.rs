use std::process::{Command, Output};

fn curveaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curveaut"))
        .args(args)
        .env_remove("CURVEAUT_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn riemann_hurwitz_and_dimension() {
    let o = curveaut(&["rh", "--order", "168", "--g0", "0", "--periods", "2,3,7"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "3\n"));
    let o = curveaut(&["delta", "--g0", "0", "--r", "8"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn braid_orbits_of_a_reducible_locus() {
    let o = curveaut(&[
        "braid-orbits",
        "--group",
        "(54,6)",
        "--signature",
        "2,6,9",
        "--mod",
        "aut",
    ]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "2\n"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(curveaut(&["rh", "--order", "x"]).status.code(), Some(1));
    assert_eq!(curveaut(&["bogus"]).status.code(), Some(1));
    let o = curveaut(&["full", "--group", "(2,1)", "--signature", "2,2,2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ambiguous"));
    assert_eq!(
        curveaut(&[
            "braid-orbits",
            "--group",
            "(9999,1)",
            "--signature",
            "2,3,7"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn orbit_genus_prefix_and_genus_flag_agree() {
    let a = curveaut(&["full", "--group", "(2,1)", "--signature", "g0=1;2,2,2,2"]);
    let b = curveaut(&[
        "full",
        "--group",
        "(2,1)",
        "--signature",
        "2,2,2,2",
        "--genus",
        "3",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("Full"));
}

#[test]
fn one_handle_order_three_is_not_full() {
    let o = curveaut(&["full", "--group", "(3,1)", "--signature", "g0=1;3,3"]);
    assert!(
        stdout(&o).lines().all(|l| l.contains("NotFull")),
        "{}",
        stdout(&o)
    );
}

#[test]
fn restriction_names_the_case() {
    let o = curveaut(&[
        "restrict",
        "--group",
        "(168,42)",
        "--subgroup",
        "order=21",
        "--type",
        "2A,3A,7A",
    ]);
    let out = stdout(&o);
    assert!(out.contains("signature\t(0; 3,3,7)"), "{out}");
    assert!(out.contains("case\tIV(f)"), "{out}");
}

#[test]
fn genus4_table_and_graph() {
    let tsv = curveaut(&["classify", "--genus", "4", "--large-only"]);
    assert_eq!(tsv.status.code(), Some(0));
    let text = stdout(&tsv);
    assert_eq!(text.lines().filter(|l| l.starts_with("4\t")).count(), 14);
    assert!(text.lines().last().unwrap().starts_with("# universe"));
    let dot = curveaut(&[
        "classify",
        "--genus",
        "4",
        "--large-only",
        "--format",
        "dot",
    ]);
    assert_eq!(stdout(&dot).matches(" -> ").count(), 7);
}

#[test]
fn exhausted_budget_gives_partial_report() {
    let o = curveaut(&[
        "classify",
        "--genus",
        "4",
        "--large-only",
        "--tuple-budget",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("UNRESOLVED"));
    // every data row is complete
    let header_fields = text.lines().next().unwrap().split('\t').count();
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        assert_eq!(line.split('\t').count(), header_fields, "{line}");
    }
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("curveaut-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g4.tsv");
    let o = curveaut(&[
        "classify",
        "--genus",
        "4",
        "--large-only",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let direct = curveaut(&["classify", "--genus", "4", "--large-only"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn catalog_from_environment() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../catalog/genus3.cat");
    let run = |group: &str| {
        Command::new(env!("CARGO_BIN_EXE_curveaut"))
            .args(["braid-orbits", "--group", group, "--signature", "2,3,7"])
            .env("CURVEAUT_CATALOG", path)
            .output()
            .unwrap()
    };
    assert_eq!(stdout(&run("(168,42)")), "1\n");
    // only the genus-3 groups are loaded
    assert_eq!(run("(504,156)").status.code(), Some(1));
}
