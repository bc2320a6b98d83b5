use curveaut::braid::{signature_orbits, Symmetry};
use curveaut::catalog::Catalog;
use curveaut::covers::{rh_genus, Signature};
use curveaut::Caps;

fn count(catalog: &Catalog, label: &str, periods: &[u32], symmetry: Symmetry) -> usize {
    let g = &catalog.get(label).unwrap().group;
    let sig = Signature::spherical(periods).unwrap();
    signature_orbits(g, &sig, symmetry, Caps::default())
        .unwrap()
        .len()
}

#[test]
fn reducible_loci_have_two_components() {
    let c = Catalog::bundled();
    for (label, periods, genus) in [
        ("(54,6)", &[2, 6, 9][..], 7),
        ("(336,208)", &[2, 3, 8], 8),
        ("(84,7)", &[2, 6, 6], 8),
        ("(48,48)", &[2, 2, 2, 6], 9),
        ("(432,734)", &[2, 3, 8], 10),
        ("(42,2)", &[3, 6, 14], 10),
    ] {
        let order = c.get(label).unwrap().group.order();
        assert_eq!(
            rh_genus(order, &Signature::spherical(periods).unwrap()),
            Some(genus)
        );
        assert_eq!(
            count(&c, label, periods, Symmetry::FullAut),
            2,
            "{label} {periods:?}"
        );
    }
}

#[test]
fn irreducible_loci_have_one_component() {
    let c = Catalog::bundled();
    for (label, periods) in [
        ("(168,42)", &[2, 3, 7][..]),
        ("(120,34)", &[2, 4, 5]),
        ("(72,42)", &[2, 3, 12]),
        ("(36,10)", &[2, 2, 2, 3]),
        ("(192,181)", &[2, 3, 8]),
        ("(48,48)", &[2, 2, 2, 3]),
        ("(150,5)", &[2, 3, 10]),
        ("(504,156)", &[2, 3, 7]),
        ("(42,1)", &[2, 2, 3, 3]),
        ("(320,1582)", &[2, 4, 5]),
    ] {
        assert_eq!(
            count(&c, label, periods, Symmetry::FullAut),
            1,
            "{label} {periods:?}"
        );
    }
}

#[test]
fn inner_classes_refine_automorphism_classes() {
    let c = Catalog::bundled();
    for (label, periods) in [("(168,42)", &[2, 3, 7][..]), ("(54,6)", &[2, 6, 9])] {
        let aut = count(&c, label, periods, Symmetry::FullAut);
        let inn = count(&c, label, periods, Symmetry::Inner);
        assert!(inn >= aut, "{label}");
    }
    // the outer automorphism of L3(2) swaps the two classes of order 7
    assert_eq!(count(&c, "(168,42)", &[2, 3, 7], Symmetry::Inner), 2);
}
