//! Named groups: the bundled catalog of permutation generators keyed by
//! Small Group ID, a parser for that format, constructors for the standard
//! families, and identification of arbitrary groups against the catalog.

mod construct;
mod fingerprint;

use std::fmt;
use std::sync::OnceLock;

pub use construct::{construct_named, Constructor};
pub use fingerprint::{fingerprint, Fingerprint};

use crate::error::{Error, Result};
use crate::group::{close_generators, find_isomorphism, parse_cycles, FiniteGroup, Permutation};

/// The groups named in the genus 3 classification and the large-group tables.
pub const BUNDLED: &str = include_str!("../../../../catalog/paper_groups.cat");
/// The 23 full automorphism groups of genus 3 curves, one per table row.
pub const GENUS3: &str = include_str!("../../../../catalog/genus3.cat");

/// A Small Group ID `(order, number)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId {
    pub order: u32,
    pub number: u32,
}

impl GroupId {
    pub fn new(order: u32, number: u32) -> GroupId {
        GroupId { order, number }
    }

    /// Accepts `(n,m)` or `n,m`.
    pub fn parse(text: &str) -> Option<GroupId> {
        let t = text.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        let (n, m) = t.split_once(',')?;
        Some(GroupId::new(n.trim().parse().ok()?, m.trim().parse().ok()?))
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.order, self.number)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub name: String,
    pub id: Option<GroupId>,
    pub degree: usize,
    /// Cycle notation with 1-based points, one string per generator.
    pub generators: Vec<String>,
}

impl GroupSpec {
    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| parse_cycles(self.degree, g))
            .collect()
    }

    /// Describes an existing group in catalog form.
    pub fn describe(name: &str, id: Option<GroupId>, group: &FiniteGroup) -> GroupSpec {
        GroupSpec {
            name: name.to_string(),
            id,
            degree: group.degree(),
            generators: group
                .generator_perms()
                .iter()
                .map(|p| p.to_string())
                .collect(),
        }
    }
}

/// Parses catalog text and closes every group. Errors carry 1-based line
/// numbers.
pub fn parse_catalog(text: &str, cap: usize) -> Result<Vec<(GroupSpec, FiniteGroup)>> {
    let mut out = Vec::new();
    let mut current: Option<(GroupSpec, usize)> = None;
    let err = |line: usize, message: String| Error::Parse { line, message };

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "GROUP" => {
                if current.is_some() {
                    return Err(err(line_no, "GROUP before END of previous group".into()));
                }
                current = Some((parse_header(rest).map_err(|m| err(line_no, m))?, line_no));
            }
            "GEN" => {
                let (spec, _) = current
                    .as_mut()
                    .ok_or_else(|| err(line_no, "GEN outside a GROUP block".into()))?;
                parse_cycles(spec.degree, rest).map_err(|e| err(line_no, e.to_string()))?;
                spec.generators.push(rest.to_string());
            }
            "END" => {
                let (spec, start) = current
                    .take()
                    .ok_or_else(|| err(line_no, "END without GROUP".into()))?;
                if spec.generators.is_empty() {
                    return Err(err(start, format!("group {} has no generators", spec.name)));
                }
                let group = close_generators(&spec.permutations()?, cap)?;
                if let Some(id) = spec.id {
                    if id.order as usize != group.order() {
                        return Err(Error::OrderMismatch {
                            name: spec.name.clone(),
                            declared: id.order as usize,
                            actual: group.order(),
                        });
                    }
                }
                out.push((spec, group));
            }
            other => return Err(err(line_no, format!("unknown keyword {other:?}"))),
        }
    }
    if let Some((spec, start)) = current {
        return Err(err(start, format!("group {} is missing END", spec.name)));
    }
    Ok(out)
}

fn parse_header(rest: &str) -> std::result::Result<GroupSpec, String> {
    let mut tokens = rest.split_whitespace();
    let name = tokens.next().ok_or("GROUP needs a name")?.to_string();
    let mut id = None;
    let mut degree = None;
    while let Some(key) = tokens.next() {
        let value = tokens
            .next()
            .ok_or_else(|| format!("{key} needs a value"))?;
        match key {
            "ID" => id = Some(GroupId::parse(value).ok_or_else(|| format!("bad ID {value:?}"))?),
            "DEGREE" => {
                degree = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| format!("bad DEGREE {value:?}"))?,
                )
            }
            _ => return Err(format!("unknown field {key:?}")),
        }
    }
    let degree = degree.ok_or("GROUP needs a DEGREE")?;
    if degree == 0 {
        return Err("DEGREE must be positive".into());
    }
    Ok(GroupSpec {
        name,
        id,
        degree,
        generators: Vec::new(),
    })
}

pub fn parse_catalog_file(
    path: &std::path::Path,
    cap: usize,
) -> Result<Vec<(GroupSpec, FiniteGroup)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_catalog(&text, cap)
}

/// Writes specs back in catalog format.
pub fn serialize(specs: &[GroupSpec]) -> String {
    let mut out = String::new();
    for spec in specs {
        out.push_str("GROUP ");
        out.push_str(&spec.name);
        if let Some(id) = spec.id {
            out.push_str(&format!(" ID {},{}", id.order, id.number));
        }
        out.push_str(&format!(" DEGREE {}\n", spec.degree));
        for g in &spec.generators {
            out.push_str("GEN ");
            out.push_str(g);
            out.push('\n');
        }
        out.push_str("END\n\n");
    }
    out
}

pub struct CatalogEntry {
    pub spec: GroupSpec,
    pub group: FiniteGroup,
    fingerprint: OnceLock<Fingerprint>,
}

impl CatalogEntry {
    pub fn new(spec: GroupSpec, group: FiniteGroup) -> CatalogEntry {
        CatalogEntry {
            spec,
            group,
            fingerprint: OnceLock::new(),
        }
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        self.fingerprint.get_or_init(|| fingerprint(&self.group))
    }

    /// `(n,m)` when known, else the fingerprint label.
    pub fn label(&self) -> String {
        match self.spec.id {
            Some(id) => id.to_string(),
            None => self.fingerprint().label(),
        }
    }
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatalogEntry({} {})", self.spec.name, self.label())
    }
}

/// Loaded groups, one entry per ID (first occurrence wins).
#[derive(Debug, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_parsed(parsed: Vec<(GroupSpec, FiniteGroup)>) -> Catalog {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for (spec, group) in parsed {
            if spec.id.is_some() && entries.iter().any(|e| e.spec.id == spec.id) {
                continue;
            }
            entries.push(CatalogEntry::new(spec, group));
        }
        Catalog { entries }
    }

    pub fn parse(text: &str, cap: usize) -> Result<Catalog> {
        Ok(Catalog::from_parsed(parse_catalog(text, cap)?))
    }

    pub fn load(path: &std::path::Path, cap: usize) -> Result<Catalog> {
        Ok(Catalog::from_parsed(parse_catalog_file(path, cap)?))
    }

    pub fn bundled() -> Catalog {
        Catalog::parse(BUNDLED, 2048).expect("bundled catalog is valid")
    }

    pub fn genus3() -> Catalog {
        Catalog::parse(GENUS3, 2048).expect("bundled genus 3 catalog is valid")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn by_id(&self, id: GroupId) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.spec.id == Some(id))
    }

    /// Looks a group up by name or by `(n,m)`.
    pub fn get(&self, key: &str) -> Option<&CatalogEntry> {
        if let Some(id) = GroupId::parse(key) {
            if let Some(e) = self.by_id(id) {
                return Some(e);
            }
        }
        self.entries.iter().find(|e| e.spec.name == key)
    }

    /// The catalog entry isomorphic to `group`.
    pub fn find(&self, group: &FiniteGroup) -> Result<Option<&CatalogEntry>> {
        let fp = fingerprint(group);
        let mut hit: Option<&CatalogEntry> = None;
        for e in &self.entries {
            if e.group.order() != group.order() || *e.fingerprint() != fp {
                continue;
            }
            if find_isomorphism(group, &e.group).is_none() {
                continue;
            }
            match hit {
                Some(h) if h.spec.id != e.spec.id => {
                    return Err(Error::AmbiguousMatch(h.label(), e.label()));
                }
                Some(_) => {}
                None => hit = Some(e),
            }
        }
        Ok(hit)
    }
}

/// The ID of the catalog group isomorphic to `group`, if there is one.
pub fn identify(group: &FiniteGroup, catalog: &Catalog) -> Result<Option<GroupId>> {
    Ok(catalog.find(group)?.and_then(|e| e.spec.id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_empty_catalog() {
        assert!(parse_catalog("", 16).unwrap().is_empty());
        assert!(parse_catalog("# only a comment\n\n", 16)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "GROUP C3 ID 3,1 DEGREE 3\nGEN (1 2 x)\nEND\n";
        assert_eq!(
            parse_catalog(text, 16).unwrap_err(),
            Error::Parse {
                line: 2,
                message: "invalid input: bad point \"x\" in \"(1 2 x)\"".into()
            }
        );
        assert!(matches!(
            parse_catalog("GROUP C3 DEGREE 3\nGEN (1 2 3)\n", 16),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_catalog("END\n", 16),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn declared_order_is_checked() {
        let text = "GROUP X ID 4,1 DEGREE 3\nGEN (1 2 3)\nEND\n";
        assert_eq!(
            parse_catalog(text, 16).unwrap_err(),
            Error::OrderMismatch {
                name: "X".into(),
                declared: 4,
                actual: 3
            }
        );
    }

    #[test]
    fn genus3_catalog_rows_and_ids() {
        let rows = parse_catalog(GENUS3, 2048).unwrap();
        assert_eq!(rows.len(), 23);
        let catalog = Catalog::from_parsed(rows);
        assert_eq!(catalog.len(), 21);
    }

    #[test]
    fn serialize_round_trips() {
        let parsed = parse_catalog(GENUS3, 2048).unwrap();
        let specs: Vec<GroupSpec> = parsed.iter().map(|(s, _)| s.clone()).collect();
        let again = parse_catalog(&serialize(&specs), 2048).unwrap();
        assert_eq!(again.len(), parsed.len());
        for ((s1, g1), (s2, g2)) in parsed.iter().zip(&again) {
            assert_eq!(s1, s2);
            assert_eq!(g1.order(), g2.order());
        }
    }

    #[test]
    fn lookup_by_name_and_id() {
        let c = Catalog::bundled();
        assert_eq!(c.get("(168,42)").unwrap().spec.name, "L3(2)");
        assert_eq!(c.get("168,42").unwrap().group.order(), 168);
        assert_eq!(c.get("S4").unwrap().spec.id, Some(GroupId::new(24, 12)));
        assert!(c.get("nope").is_none());
    }

    #[test]
    fn identify_constructed_groups() {
        let c = Catalog::bundled();
        let c2 = construct_named(&Constructor::Cyclic(2), 64).unwrap();
        assert_eq!(identify(&c2, &c).unwrap(), Some(GroupId::new(2, 1)));
        let d8 = construct_named(&Constructor::Dihedral(8), 64).unwrap();
        assert_eq!(identify(&d8, &c).unwrap(), Some(GroupId::new(8, 3)));
        let psl27 = construct_named(&Constructor::Psl2(7), 2048).unwrap();
        assert_eq!(identify(&psl27, &c).unwrap(), Some(GroupId::new(168, 42)));
        let psl28 = construct_named(&Constructor::Psl2(8), 2048).unwrap();
        assert_eq!(identify(&psl28, &c).unwrap(), Some(GroupId::new(504, 156)));
        // C5 is not in the bundle
        let c5 = construct_named(&Constructor::Cyclic(5), 64).unwrap();
        assert_eq!(identify(&c5, &c).unwrap(), None);
    }

    #[test]
    fn ambiguous_catalog_is_reported() {
        let text =
            "GROUP A ID 2,1 DEGREE 2\nGEN (1 2)\nEND\nGROUP B ID 2,2 DEGREE 2\nGEN (1 2)\nEND\n";
        let c = Catalog::parse(text, 16).unwrap();
        let c2 = construct_named(&Constructor::Cyclic(2), 64).unwrap();
        assert!(matches!(
            identify(&c2, &c),
            Err(Error::AmbiguousMatch(_, _))
        ));
    }
}
