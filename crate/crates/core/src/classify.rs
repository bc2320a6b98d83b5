//! End-to-end classification: the full automorphism groups in genus 3, the
//! large groups in genus 2..10, and inclusions between their loci.

use std::collections::BTreeSet;
use std::fmt;

use crate::braid::{braid_orbits, Symmetry};
use crate::catalog::{fingerprint, Catalog, Fingerprint, GroupId};
use crate::covers::{
    admissible_signatures_for, delta, has_generating_system, signature_group_pairs,
    types_for_signature, RamificationType, Signature, Target,
};
use crate::error::{Error, Result};
use crate::fullness::{decide_type, ExtensionUniverse, FullnessVerdict};
use crate::group::{
    automorphism_group, center, is_isomorphic, subgroup_lattice, FiniteGroup, Subgroup,
};
use crate::restriction::{locus_inclusion, restrict_type};
use crate::Caps;

/// A group of a classification universe.
pub struct UniverseGroup {
    /// `(n,m)` when identified, otherwise a fingerprint label.
    pub label: String,
    pub id: Option<GroupId>,
    pub group: FiniteGroup,
    pub fingerprint: Fingerprint,
    /// Whether the group was given rather than found as a subgroup.
    pub seed: bool,
}

impl std::fmt::Debug for UniverseGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UniverseGroup({})", self.label)
    }
}

fn push_unique(
    out: &mut Vec<UniverseGroup>,
    group: FiniteGroup,
    seed: bool,
    ids: &Catalog,
) -> Result<bool> {
    let fp = fingerprint(&group);
    if out
        .iter()
        .any(|u| u.fingerprint == fp && is_isomorphic(&u.group, &group))
    {
        return Ok(false);
    }
    let id = ids.find(&group)?.and_then(|e| e.spec.id);
    let label = match id {
        Some(id) => id.to_string(),
        None => fp.label(),
    };
    out.push(UniverseGroup {
        label,
        id,
        group,
        fingerprint: fp,
        seed,
    });
    Ok(true)
}

/// The seeds together with all their nontrivial subgroups, one group per
/// isomorphism class. Seeds come first, in order; the rest are sorted by
/// order and label. Groups are identified against `ids`.
pub fn close_group_universe(
    seeds: &[&FiniteGroup],
    ids: &Catalog,
    caps: Caps,
) -> Result<Vec<UniverseGroup>> {
    let mut out: Vec<UniverseGroup> = Vec::new();
    for &g in seeds {
        push_unique(&mut out, g.clone(), true, ids)?;
    }
    let n_seeds = out.len();
    for &g in seeds {
        let lattice = subgroup_lattice(g, caps.lattice)?;
        // one subgroup per conjugacy class is enough
        let mut done: Vec<&Subgroup> = Vec::new();
        for s in lattice
            .iter()
            .filter(|s| s.order() > 1 && s.order() < g.order())
        {
            if done
                .iter()
                .any(|t| t.order() == s.order() && g.elements().any(|y| s.conjugate(g, y) == **t))
            {
                continue;
            }
            done.push(s);
            let (h, _) = s.to_group(g)?;
            push_unique(&mut out, h, false, ids)?;
        }
    }
    out[n_seeds..].sort_by(|a, b| (a.group.order(), &a.label).cmp(&(b.group.order(), &b.label)));
    Ok(out)
}

/// Number of components of a locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentCount {
    Known(usize),
    /// The braid computation ran out of budget.
    Unresolved,
    /// Positive orbit genus; braid orbits do not apply.
    NotComputed,
}

impl fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentCount::Known(n) => write!(f, "{n}"),
            ComponentCount::Unresolved => f.write_str("UNRESOLVED"),
            ComponentCount::NotComputed => f.write_str("-"),
        }
    }
}

/// One locus of curves whose full automorphism group acts with a given type.
#[derive(Clone, Debug)]
pub struct LocusRecord {
    pub genus: u32,
    pub group: String,
    pub id: Option<GroupId>,
    pub order: usize,
    /// Index of the group in the list the record was built from.
    pub group_index: usize,
    pub ty: RamificationType,
    pub type_labels: String,
    pub signature: Signature,
    pub delta: u32,
    pub components: ComponentCount,
    pub verdict: FullnessVerdict,
    pub hyperelliptic: bool,
    /// Rows (1-based) of loci contained in this one: some subgroup of the
    /// contained locus's group restricts its type to this record's type.
    pub contains: Vec<usize>,
    /// Rows whose restriction only matches this record's signature. A
    /// superset of `contains`.
    pub contains_by_signature: Vec<usize>,
}

impl LocusRecord {
    pub fn orbit_genus(&self) -> u32 {
        self.signature.g0
    }

    /// `|G| > 4(g-1)`.
    pub fn is_large(&self) -> bool {
        self.order > 4 * (self.genus as usize - 1)
    }
}

/// The permutations of class indices induced by automorphisms, deduplicated.
fn class_permutations(group: &FiniteGroup, caps: Caps) -> Result<Vec<Vec<usize>>> {
    let auts = automorphism_group(group, caps.automorphisms)?;
    let mut perms: Vec<Vec<usize>> = auts
        .iter()
        .map(|phi| {
            group
                .conjugacy_classes()
                .iter()
                .map(|c| group.class_of(phi.apply(c.representative)))
                .collect()
        })
        .collect();
    perms.sort();
    perms.dedup();
    Ok(perms)
}

fn canonical_classes(classes: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            let mut v: Vec<usize> = classes.iter().map(|&c| p[c]).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_else(|| classes.to_vec())
}

/// Types of the signature that have a generating system, one per orbit of
/// `Aut(G)` on class multisets.
pub fn realized_types(
    group: &FiniteGroup,
    sig: &Signature,
    caps: Caps,
) -> Result<Vec<RamificationType>> {
    let perms = class_permutations(group, caps)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for ty in types_for_signature(group, sig) {
        let key = canonical_classes(&ty.classes, &perms);
        if seen.contains(&key) {
            continue;
        }
        if has_generating_system(group, Target::Type(&ty), caps.node_budget)? {
            seen.insert(key);
            out.push(ty);
        }
    }
    Ok(out)
}

/// Whether some central involution `z` has `X/⟨z⟩` of genus 0.
pub fn is_hyperelliptic_type(group: &FiniteGroup, ty: &RamificationType) -> Result<bool> {
    if ty.g0 != 0 {
        return Ok(false);
    }
    for &z in center(group).elements() {
        if group.element_order(z) != 2 {
            continue;
        }
        let c = Subgroup::generated(group, &[z]);
        if restrict_type(group, ty, &c)?.signature.g0 == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Braid orbits modulo `Aut(G)` of a genus-0 type.
pub fn component_count(
    group: &FiniteGroup,
    ty: &RamificationType,
    caps: Caps,
) -> Result<ComponentCount> {
    if ty.g0 != 0 {
        return Ok(ComponentCount::NotComputed);
    }
    match braid_orbits(
        group,
        std::slice::from_ref(ty),
        Symmetry::FullAut,
        caps.automorphisms,
        caps.tuple_budget,
        caps.node_budget,
    ) {
        Ok(orbits) => Ok(ComponentCount::Known(orbits.len())),
        Err(e) if e.is_cap_exceeded() => Ok(ComponentCount::Unresolved),
        Err(e) => Err(e),
    }
}

struct GroupRef<'a> {
    label: String,
    id: Option<GroupId>,
    group: &'a FiniteGroup,
}

fn build_record(
    genus: u32,
    index: usize,
    g: &GroupRef,
    ty: RamificationType,
    verdict: FullnessVerdict,
    caps: Caps,
) -> Result<LocusRecord> {
    let signature = ty.signature(g.group);
    Ok(LocusRecord {
        genus,
        group: g.label.clone(),
        id: g.id,
        order: g.group.order(),
        group_index: index,
        type_labels: ty.labels(g.group),
        delta: delta(&signature),
        components: component_count(g.group, &ty, caps)?,
        hyperelliptic: is_hyperelliptic_type(g.group, &ty)?,
        signature,
        ty,
        verdict,
        contains: Vec::new(),
        contains_by_signature: Vec::new(),
    })
}

/// Orders rows by dimension, then by decreasing group order.
fn sort_records(records: &mut [LocusRecord]) {
    records.sort_by(|a, b| {
        (
            a.delta,
            std::cmp::Reverse(a.order),
            a.id,
            &a.group,
            &a.signature,
            &a.ty,
        )
            .cmp(&(
                b.delta,
                std::cmp::Reverse(b.order),
                b.id,
                &b.group,
                &b.signature,
                &b.ty,
            ))
    });
}

/// The outcome for one type of a signature-group pair.
#[derive(Clone, Debug)]
pub struct TypeDecision {
    pub group_index: usize,
    pub ty: RamificationType,
    pub verdict: FullnessVerdict,
}

/// Full classification over the closure of a set of seed groups.
#[derive(Debug)]
pub struct GenusReport {
    pub genus: u32,
    pub universe: Vec<UniverseGroup>,
    /// Nontrivial `(group index, signature)` pairs with a generating system.
    pub pairs: Vec<(usize, Signature)>,
    pub decisions: Vec<TypeDecision>,
    pub records: Vec<LocusRecord>,
}

impl GenusReport {
    /// Pair count including the trivial group, which acts on every curve
    /// with orbit genus `g` and no branch points.
    pub fn pair_count_with_trivial(&self) -> usize {
        self.pairs.len() + 1
    }

    /// Distinct `(group, signature)` pairs among the records.
    pub fn full_pairs(&self) -> BTreeSet<(String, Signature)> {
        self.records
            .iter()
            .map(|r| (r.group.clone(), r.signature.clone()))
            .collect()
    }
}

/// Classifies genus-`genus` actions of the seeds and all their subgroups:
/// enumerates signature-group pairs, decides each type up to automorphisms
/// and keeps the full ones. Triangle types are decided against the universe.
pub fn classify_universe(
    seeds: &Catalog,
    ids: &Catalog,
    genus: u32,
    caps: Caps,
) -> Result<GenusReport> {
    let seed_groups: Vec<&FiniteGroup> = seeds.entries().iter().map(|e| &e.group).collect();
    let universe = close_group_universe(&seed_groups, ids, caps)?;
    let groups: Vec<&FiniteGroup> = universe.iter().map(|u| &u.group).collect();
    let pairs = signature_group_pairs(&groups, genus, caps.node_budget)?;
    let ext = ExtensionUniverse::new(
        universe
            .iter()
            .map(|u| (u.label.clone(), &u.group))
            .collect(),
        genus,
        caps,
    );
    let mut decisions = Vec::new();
    let mut records = Vec::new();
    for (k, sig) in &pairs {
        let u = &universe[*k];
        let gref = GroupRef {
            label: u.label.clone(),
            id: u.id,
            group: &u.group,
        };
        for ty in realized_types(&u.group, sig, caps)? {
            let verdict = decide_type(&u.group, &ty, &ext)?;
            if !verdict.is_not_full() {
                records.push(build_record(
                    genus,
                    *k,
                    &gref,
                    ty.clone(),
                    verdict.clone(),
                    caps,
                )?);
            }
            decisions.push(TypeDecision {
                group_index: *k,
                ty,
                verdict,
            });
        }
    }
    sort_records(&mut records);
    Ok(GenusReport {
        genus,
        universe,
        pairs,
        decisions,
        records,
    })
}

/// The genus-3 classification from the bundled catalogs.
pub fn genus3_table(caps: Caps) -> Result<GenusReport> {
    classify_universe(&Catalog::genus3(), &Catalog::bundled(), 3, caps)
}

/// `(group label, signature)` pairs obtained by restricting every record's
/// type to every subgroup: an independent route to the pair list.
pub fn pairs_by_restriction(
    report: &GenusReport,
    caps: Caps,
) -> Result<BTreeSet<(String, Signature)>> {
    let mut out = BTreeSet::new();
    for rec in &report.records {
        let g = &report.universe[rec.group_index].group;
        for s in subgroup_lattice(g, caps.lattice)?
            .iter()
            .filter(|s| s.order() > 1)
        {
            let res = restrict_type(g, &rec.ty, s)?;
            let fp = fingerprint(&res.subgroup);
            let u = report
                .universe
                .iter()
                .find(|u| u.fingerprint == fp && is_isomorphic(&u.group, &res.subgroup))
                .ok_or_else(|| {
                    Error::InternalContradiction("subgroup missing from the universe".into())
                })?;
            out.insert((u.label.clone(), res.signature));
        }
    }
    Ok(out)
}

/// A containment between loci: the locus of row `contained` lies in the
/// locus of row `container` (rows are 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InclusionEdge {
    pub container: usize,
    pub contained: usize,
    pub class_level: bool,
}

/// Inclusions of 0-dimensional loci in 1-dimensional ones. A point locus of
/// `A` lies in the locus of `B` when a subgroup of `A` isomorphic to `B`
/// restricts `A`'s type to `B`'s signature.
pub fn locus_inclusions(
    records: &[LocusRecord],
    groups: &[&FiniteGroup],
    caps: Caps,
) -> Result<Vec<InclusionEdge>> {
    let mut edges = Vec::new();
    for (bi, b) in records.iter().enumerate().filter(|(_, r)| r.delta == 1) {
        for (ai, a) in records.iter().enumerate().filter(|(_, r)| r.delta == 0) {
            if a.genus != b.genus || a.order <= b.order || a.order % b.order != 0 {
                continue;
            }
            let inc = locus_inclusion(
                groups[a.group_index],
                &a.ty,
                groups[b.group_index],
                &b.signature,
                Some(&b.ty),
                caps.lattice,
                caps.automorphisms,
            )?;
            if inc.signature_level {
                edges.push(InclusionEdge {
                    container: bi + 1,
                    contained: ai + 1,
                    class_level: inc.class_level,
                });
            }
        }
    }
    edges.sort();
    Ok(edges)
}

fn attach_edges(records: &mut [LocusRecord], edges: &[InclusionEdge]) {
    for e in edges {
        let r = &mut records[e.container - 1];
        r.contains_by_signature.push(e.contained);
        if e.class_level {
            r.contains.push(e.contained);
        }
    }
}

/// Large-group loci of one genus.
#[derive(Debug)]
pub struct LargeReport {
    pub genus: u32,
    pub universe_size: usize,
    pub records: Vec<LocusRecord>,
    pub edges: Vec<InclusionEdge>,
}

/// Loci of genus-`genus` curves whose full automorphism group is large
/// (`|G| > 4(g-1)`), over the groups of `catalog`.
pub fn large_group_table(catalog: &Catalog, genus: u32, caps: Caps) -> Result<LargeReport> {
    if !(2..=10).contains(&genus) {
        return Err(Error::UnsupportedParams(format!(
            "genus {genus} outside 2..=10"
        )));
    }
    let lower = 4 * (genus as usize - 1);
    let upper = 84 * (genus as usize - 1);
    let entries: Vec<_> = catalog
        .entries()
        .iter()
        .filter(|e| e.group.order() > lower && e.group.order() <= upper)
        .collect();
    let groups: Vec<&FiniteGroup> = entries.iter().map(|e| &e.group).collect();
    let ext = ExtensionUniverse::new(
        entries.iter().map(|e| (e.label(), &e.group)).collect(),
        genus,
        caps,
    );
    let mut records = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let gref = GroupRef {
            label: e.label(),
            id: e.spec.id,
            group: &e.group,
        };
        for sig in admissible_signatures_for(genus, &e.group) {
            for ty in realized_types(&e.group, &sig, caps)? {
                let verdict = decide_type(&e.group, &ty, &ext)?;
                if !verdict.is_not_full() {
                    records.push(build_record(genus, k, &gref, ty, verdict, caps)?);
                }
            }
        }
    }
    sort_records(&mut records);
    let edges = locus_inclusions(&records, &groups, caps)?;
    attach_edges(&mut records, &edges);
    Ok(LargeReport {
        genus,
        universe_size: entries.len(),
        records,
        edges,
    })
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub const TSV_HEADER: &str =
    "genus\tgroup\tsignature\tdelta\tcomponents\tcontains\thyperelliptic\tverdict\ttype\tcontains_by_signature";

/// Tab-separated rows in record order; row numbers are line numbers after
/// the header. `footer` lines are emitted as `#` comments.
pub fn emit_tsv(records: &[LocusRecord], footer: &[String]) -> String {
    let mut out = String::new();
    out.push_str(TSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.genus,
            r.group,
            r.signature,
            r.delta,
            r.components,
            join(&r.contains),
            if r.hyperelliptic { "yes" } else { "no" },
            r.verdict.keyword(),
            r.type_labels,
            join(&r.contains_by_signature),
        ));
    }
    for line in footer {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// Inclusion digraph: an edge `container -> contained` per type-level
/// inclusion; 0-dimensional loci are boxes.
pub fn emit_dot(genus: u32, records: &[LocusRecord], edges: &[InclusionEdge]) -> String {
    let mut out = format!("digraph genus{genus} {{\n");
    for (k, r) in records.iter().enumerate() {
        let shape = if r.delta == 0 { "box" } else { "ellipse" };
        out.push_str(&format!(
            "  r{} [label=\"{}: {} {}\", shape={}];\n",
            k + 1,
            k + 1,
            r.group,
            r.signature,
            shape
        ));
    }
    for e in edges.iter().filter(|e| e.class_level) {
        out.push_str(&format!("  r{} -> r{};\n", e.container, e.contained));
    }
    out.push_str("}\n");
    out
}
