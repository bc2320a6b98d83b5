//! Browser bindings: a Riemann–Hurwitz calculator, braid-orbit counts for
//! catalog groups, and the large-group table of a genus.
//!
//! Each export has a plain Rust counterpart returning `Result<String,
//! String>` so the logic can be tested off the browser.

use std::fmt::Write as _;
use std::sync::OnceLock;

use curveaut::braid::{signature_orbits, Symmetry};
use curveaut::catalog::Catalog;
use curveaut::classify::{emit_tsv, large_group_table};
use curveaut::covers::{delta, resolve_orbit_genus, rh_genus, Signature};
use curveaut::Caps;
use wasm_bindgen::prelude::*;

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(Catalog::bundled)
}

/// Browser-sized budgets: large enough for every table, small enough to
/// answer within seconds.
fn caps() -> Caps {
    Caps {
        tuple_budget: 2_000_000,
        node_budget: 20_000_000,
        ..Caps::default()
    }
}

/// Genus and locus dimension for a group order and periods; without an
/// explicit `g0=N;` prefix the orbit genus is the one placing the curve in
/// genus 2..=10.
pub fn describe_signature(order: usize, periods: &str) -> Result<String, String> {
    let (g0, periods) = Signature::parse(periods).map_err(|e| e.to_string())?;
    let g0 = match g0 {
        Some(g0) => g0,
        None => resolve_orbit_genus(order, &periods, None).map_err(|e| e.to_string())?,
    };
    let sig = Signature::new(g0, periods).map_err(|e| e.to_string())?;
    let genus = rh_genus(order, &sig)
        .ok_or_else(|| format!("order {order} and {sig} give no integral genus"))?;
    let mut out = format!(
        "signature {sig}\ngenus {genus}\ndimension {}\n",
        delta(&sig)
    );
    if genus >= 2 {
        let large = order > 4 * (genus as usize - 1);
        writeln!(out, "large {}", if large { "yes" } else { "no" }).unwrap();
        if order > 84 * (genus as usize - 1) {
            out.push_str("exceeds the Hurwitz bound 84(g-1)\n");
        }
    }
    Ok(out)
}

/// Braid orbits of a genus-0 signature modulo inner and all automorphisms.
pub fn count_braid_orbits(group: &str, periods: &str) -> Result<String, String> {
    let entry = catalog()
        .get(group.trim())
        .ok_or_else(|| format!("no group {group} in the catalog"))?;
    let (_, periods) = Signature::parse(periods).map_err(|e| e.to_string())?;
    let sig = Signature::new(0, periods).map_err(|e| e.to_string())?;
    let genus = rh_genus(entry.group.order(), &sig).ok_or("no integral genus")?;
    let mut out = format!("{} {sig}, genus {genus}\n", entry.label());
    for (name, symmetry) in [
        ("inner", Symmetry::Inner),
        ("automorphisms", Symmetry::FullAut),
    ] {
        let orbits =
            signature_orbits(&entry.group, &sig, symmetry, caps()).map_err(|e| e.to_string())?;
        let tuples: usize = orbits.iter().map(|o| o.size).sum();
        writeln!(
            out,
            "modulo {name}: {} orbits ({tuples} tuples)",
            orbits.len()
        )
        .unwrap();
    }
    Ok(out)
}

/// The large-group loci of a genus as tab-separated text.
pub fn large_table(genus: u32) -> Result<String, String> {
    let report = large_group_table(catalog(), genus, caps()).map_err(|e| e.to_string())?;
    Ok(emit_tsv(&report.records, &[]))
}

/// Catalog labels, one per line.
pub fn catalog_labels() -> String {
    catalog()
        .entries()
        .iter()
        .map(|e| e.label() + "\n")
        .collect()
}

#[wasm_bindgen(js_name = describeSignature)]
pub fn describe_signature_js(order: usize, periods: &str) -> Result<String, JsError> {
    describe_signature(order, periods).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = countBraidOrbits)]
pub fn count_braid_orbits_js(group: &str, periods: &str) -> Result<String, JsError> {
    count_braid_orbits(group, periods).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = largeTable)]
pub fn large_table_js(genus: u32) -> Result<String, JsError> {
    large_table(genus).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = catalogLabels)]
pub fn catalog_labels_js() -> String {
    catalog_labels()
}
