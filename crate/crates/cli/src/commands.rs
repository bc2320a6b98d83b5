use std::fmt::Write as _;

use curveaut::braid::{signature_orbits, Symmetry};
use curveaut::catalog::{Catalog, CatalogEntry};
use curveaut::classify::{
    classify_universe, emit_dot, emit_tsv, large_group_table, ComponentCount, LocusRecord,
};
use curveaut::covers::{
    admissible_signatures_for, delta, resolve_orbit_genus, rh_genus, RamificationType, Signature,
};
use curveaut::fullness::{decide_type, ExtensionUniverse, Verdict, Witness};
use curveaut::group::{parse_cycles, subgroup_lattice, Subgroup};
use curveaut::reference::{crosswalk, reference_rows};
use curveaut::restriction::{classify_equal_dim_pair, restrict_type};
use curveaut::Caps;
use thiserror::Error;

use crate::{Command, Format, Global, Modulo};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] curveaut::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_cap_exceeded() => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Output text; `partial` when some entry is unresolved.
pub struct Report {
    pub text: String,
    pub partial: bool,
}

impl Report {
    fn complete(text: String) -> Report {
        Report {
            text,
            partial: false,
        }
    }
}

fn load_catalog(global: &Global) -> Result<Catalog> {
    match &global.catalog {
        Some(path) => Ok(Catalog::load(path, global.max_elements)?),
        None => Ok(Catalog::bundled()),
    }
}

fn lookup<'a>(catalog: &'a Catalog, name: &str) -> Result<&'a CatalogEntry> {
    catalog
        .get(name)
        .ok_or_else(|| CliError::Usage(format!("no group {name:?} in the catalog")))
}

fn signature_for(order: usize, text: &str, genus: Option<u32>) -> Result<Signature> {
    let (g0, periods) = Signature::parse(text)?;
    let g0 = match g0 {
        Some(g0) => g0,
        None => resolve_orbit_genus(order, &periods, genus)?,
    };
    Ok(Signature::new(g0, periods)?)
}

/// Splits an optional `g0=N;` prefix off a list of class labels.
fn split_g0(text: &str) -> Result<(Option<u32>, &str)> {
    match text.trim().strip_prefix("g0=") {
        Some(rest) => {
            let (n, labels) = rest
                .split_once(';')
                .ok_or_else(|| CliError::Usage(format!("expected g0=N;labels, got {text:?}")))?;
            let g0 = n
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad orbit genus {n:?}")))?;
            Ok((Some(g0), labels.trim()))
        }
        None => Ok((None, text.trim())),
    }
}

fn type_for(entry: &CatalogEntry, text: &str, genus: Option<u32>) -> Result<RamificationType> {
    let g = &entry.group;
    let (g0, labels) = split_g0(text)?;
    let g0 = match g0 {
        Some(g0) => g0,
        None => {
            let mut periods = Vec::new();
            for label in labels.split(',').map(str::trim) {
                let c = g.class_by_label(label).ok_or_else(|| {
                    CliError::Usage(format!("{} has no class {label:?}", entry.label()))
                })?;
                periods.push(g.element_order(g.conjugacy_classes()[c].representative));
            }
            resolve_orbit_genus(g.order(), &periods, genus)?
        }
    };
    Ok(RamificationType::from_labels(g, g0, labels)?)
}

fn subgroup_for(entry: &CatalogEntry, spec: &str, caps: Caps) -> Result<Subgroup> {
    let g = &entry.group;
    if let Some(rest) = spec.trim().strip_prefix("order=") {
        let (order, k) = match rest.split_once('#') {
            Some((o, k)) => (
                o,
                k.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad index {k:?}")))?,
            ),
            None => (rest, 1),
        };
        let order: usize = order
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad order {order:?}")))?;
        let matching: Vec<&Subgroup> = subgroup_lattice(g, caps.lattice)?
            .iter()
            .filter(|s| s.order() == order)
            .collect();
        return match matching.get(k.wrapping_sub(1)) {
            Some(s) => Ok((*s).clone()),
            None => Err(CliError::Usage(format!(
                "{} has {} classes of subgroups of order {order}",
                entry.label(),
                matching.len()
            ))),
        };
    }
    let mut gens = Vec::new();
    for text in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let p = parse_cycles(g.degree(), text)?;
        let x = g.index_of(&p).ok_or_else(|| {
            CliError::Usage(format!("{text} is not an element of {}", entry.label()))
        })?;
        gens.push(x);
    }
    if gens.is_empty() {
        return Err(CliError::Usage("empty subgroup specification".into()));
    }
    Ok(Subgroup::generated(g, &gens))
}

fn list(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn run(command: &Command, global: &Global) -> Result<Report> {
    let caps = global.caps();
    match command {
        Command::Rh { order, g0, periods } => {
            let (_, periods) = Signature::parse(periods)?;
            let sig = Signature::new(*g0, periods)?;
            match rh_genus(*order, &sig) {
                Some(g) => Ok(Report::complete(format!("{g}\n"))),
                None => Err(CliError::Usage(format!(
                    "order {order} with signature {sig} gives no integral genus"
                ))),
            }
        }
        Command::Delta { g0, r } => {
            let d = 3 * *g0 as i64 - 3 + *r as i64;
            if d < 0 {
                return Err(CliError::Usage(format!(
                    "3g0 - 3 + r is negative for g0 = {g0}, r = {r}"
                )));
            }
            Ok(Report::complete(format!("{d}\n")))
        }
        Command::BraidOrbits {
            group,
            signature,
            modulo,
            verbose,
        } => {
            let catalog = load_catalog(global)?;
            let entry = lookup(&catalog, group)?;
            let sig = signature_for(entry.group.order(), signature, None)?;
            let symmetry = match modulo {
                Modulo::Inner => Symmetry::Inner,
                Modulo::Aut => Symmetry::FullAut,
            };
            let orbits = signature_orbits(&entry.group, &sig, symmetry, caps)?;
            let mut out = format!("{}\n", orbits.len());
            if *verbose {
                for (k, o) in orbits.iter().enumerate() {
                    let perms: Vec<String> = o
                        .representative
                        .iter()
                        .map(|&x| entry.group.perm(x).to_string())
                        .collect();
                    writeln!(
                        out,
                        "# orbit {}: {} tuples, e.g. {}",
                        k + 1,
                        o.size,
                        perms.join(" ")
                    )
                    .unwrap();
                }
            }
            Ok(Report::complete(out))
        }
        Command::Restrict {
            group,
            subgroup,
            ty,
            genus,
        } => {
            let catalog = load_catalog(global)?;
            let entry = lookup(&catalog, group)?;
            let g = &entry.group;
            let ty = type_for(entry, ty, *genus)?;
            let h = subgroup_for(entry, subgroup, caps)?;
            let res = restrict_type(g, &ty, &h)?;
            let mut out = String::new();
            writeln!(out, "group\t{} {}", entry.label(), ty.signature(g)).unwrap();
            writeln!(out, "subgroup\torder {} index {}", h.order(), h.index()).unwrap();
            writeln!(out, "signature\t{}", res.signature).unwrap();
            writeln!(out, "type\t{}", res.induced.labels(&res.subgroup)).unwrap();
            writeln!(
                out,
                "delta\t{} -> {}",
                delta(&ty.signature(g)),
                delta(&res.signature)
            )
            .unwrap();
            if let Some(case) = classify_equal_dim_pair(g, &ty, &h)? {
                writeln!(
                    out,
                    "case\t{} (index {}, induced periods {})",
                    case.tag,
                    case.n,
                    list(&case.d)
                )
                .unwrap();
            }
            Ok(Report::complete(out))
        }
        Command::Full {
            group,
            signature,
            ty,
            genus,
        } => {
            let catalog = load_catalog(global)?;
            let entry = lookup(&catalog, group)?;
            let g = &entry.group;
            let types = match ty {
                Some(text) => vec![type_for(entry, text, *genus)?],
                None => {
                    let sig = signature_for(g.order(), signature, *genus)?;
                    curveaut::classify::realized_types(g, &sig, caps)?
                }
            };
            if types.is_empty() {
                return Err(CliError::Usage(format!(
                    "{} has no generating system of that signature",
                    entry.label()
                )));
            }
            let genus = types[0].genus;
            let universe = ExtensionUniverse::new(
                catalog
                    .entries()
                    .iter()
                    .filter(|e| e.group.order() % g.order() == 0 && e.group.order() > g.order())
                    .map(|e| (e.label(), &e.group))
                    .collect(),
                genus,
                caps,
            );
            let mut out = String::new();
            let mut partial = false;
            for t in &types {
                let v = decide_type(g, t, &universe)?;
                write!(out, "{}\t{}\t{}", t.labels(g), t.signature(g), v.keyword()).unwrap();
                match &v.verdict {
                    Verdict::NotFull(w) => match w.as_ref() {
                        Witness::Action { action, system, .. } => {
                            let perms: Vec<String> = system
                                .elements()
                                .iter()
                                .map(|&x| g.perm(x).to_string())
                                .collect();
                            write!(
                                out,
                                "\t{action} extends to an automorphism for the system {}",
                                perms.join(" ")
                            )
                            .unwrap()
                        }
                        other => write!(out, "\t{other}").unwrap(),
                    },
                    Verdict::Indeterminate => partial = true,
                    Verdict::Full => {}
                }
                out.push('\n');
                for note in &v.notes {
                    writeln!(out, "# {note}").unwrap();
                }
            }
            Ok(Report { text: out, partial })
        }
        Command::Classify {
            genus,
            large_only,
            crosswalk: true,
            ..
        } => {
            if !*large_only || !(4..=10).contains(genus) {
                return Err(CliError::Usage(
                    "--crosswalk needs --large-only and a genus in 4..=10".into(),
                ));
            }
            let catalog = load_catalog(global)?;
            let report = large_group_table(&catalog, *genus, caps)?;
            let cw = crosswalk(&report.records, &reference_rows(*genus));
            let mut out = String::from("genus\trow\treference_row\tgroup\tsignature\n");
            for (k, (r, row)) in report.records.iter().zip(&cw.rows).enumerate() {
                let row = row.map_or("-".to_string(), |x| x.to_string());
                writeln!(
                    out,
                    "{genus}\t{}\t{row}\t{}\t{}",
                    k + 1,
                    r.group,
                    r.signature
                )
                .unwrap();
            }
            for m in &cw.mismatches {
                writeln!(out, "# mismatch: {m}").unwrap();
            }
            Ok(Report::complete(out))
        }
        Command::Classify {
            genus,
            large_only,
            format,
            ..
        } => {
            let catalog = load_catalog(global)?;
            if !(2..=10).contains(genus) {
                return Err(CliError::Usage(format!("genus {genus} is outside 2..=10")));
            }
            let source = match &global.catalog {
                Some(p) => p.display().to_string(),
                None => "bundled".to_string(),
            };
            if *large_only {
                let report = large_group_table(&catalog, *genus, caps)?;
                let footer = vec![format!(
                    "universe: {} groups of catalog {source} with {} < |G| <= {}",
                    report.universe_size,
                    4 * (genus - 1),
                    84 * (genus - 1)
                )];
                Ok(emit(
                    *genus,
                    &report.records,
                    &report.edges,
                    *format,
                    &footer,
                ))
            } else {
                let seeds: Vec<_> = catalog
                    .entries()
                    .iter()
                    .filter(|e| !admissible_signatures_for(*genus, &e.group).is_empty())
                    .map(|e| (e.spec.clone(), e.group.clone()))
                    .collect();
                let seeds = Catalog::from_parsed(seeds);
                let report = classify_universe(&seeds, &catalog, *genus, caps)?;
                let footer = vec![format!(
                    "universe: {} groups, the subgroup closure of {} groups of catalog {source}",
                    report.universe.len(),
                    seeds.len()
                )];
                Ok(emit(*genus, &report.records, &[], *format, &footer))
            }
        }
        Command::Genus3 { format } => {
            let report = curveaut::classify::genus3_table(caps)?;
            let footer = vec![
                format!(
                    "universe: {} groups, the subgroup closure of the bundled genus-3 groups",
                    report.universe.len()
                ),
                format!(
                    "signature-group pairs: {} nontrivial, {} with the trivial group",
                    report.pairs.len(),
                    report.pair_count_with_trivial()
                ),
            ];
            Ok(emit(3, &report.records, &[], *format, &footer))
        }
    }
}

fn emit(
    genus: u32,
    records: &[LocusRecord],
    edges: &[curveaut::classify::InclusionEdge],
    format: Format,
    footer: &[String],
) -> Report {
    let partial = records.iter().any(|r| {
        r.components == ComponentCount::Unresolved
            || matches!(r.verdict.verdict, Verdict::Indeterminate)
    });
    let text = match format {
        Format::Tsv => emit_tsv(records, footer),
        Format::Dot => emit_dot(genus, records, edges),
    };
    Report { text, partial }
}
