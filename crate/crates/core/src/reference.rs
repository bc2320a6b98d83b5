//! Published rows: the genus-3 classification, the large-group loci for
//! genus 4..10, and a crosswalk from computed records onto the latter.
//!
//! Rows with the same group order are listed in a different order than
//! [`sort_records`](crate::classify) produces, and duplicate rows (two loci
//! with the same group and signature) are interchangeable, so records are
//! matched by group and signature, with duplicates resolved by whichever
//! assignment makes the most `contains` sets agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::classify::LocusRecord;
use crate::error::{Error, Result};

pub const LARGE_REFERENCE: &str = include_str!("../../../catalog/large_groups.ref.tsv");
pub const GENUS3_REFERENCE: &str = include_str!("../../../catalog/genus3.ref.tsv");

/// A genus-3 full automorphism group with its signature.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Genus3Row {
    pub group: String,
    pub g0: u32,
    pub periods: Vec<u32>,
    pub delta: u32,
    pub hyperelliptic: bool,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.starts_with('#') && !l.starts_with("g") && !l.trim().is_empty())
        .map(|(k, l)| (k + 1, l.split('\t').collect()))
}

pub fn parse_genus3_reference(text: &str) -> Result<Vec<Genus3Row>> {
    let mut rows = Vec::new();
    for (n, f) in data_lines(text) {
        if f.len() != 5 {
            return Err(Error::Parse {
                line: n,
                message: "expected 5 fields".into(),
            });
        }
        let bad = |m: &str| Error::Parse {
            line: n,
            message: m.to_string(),
        };
        rows.push(Genus3Row {
            group: f[0].to_string(),
            g0: f[1].parse().map_err(|_| bad("bad orbit genus"))?,
            periods: parse_list(f[2], n)?,
            delta: f[3].parse().map_err(|_| bad("bad dimension"))?,
            hyperelliptic: match f[4] {
                "yes" => true,
                "no" => false,
                _ => return Err(bad("hyperelliptic must be yes or no")),
            },
        });
    }
    Ok(rows)
}

pub fn genus3_rows() -> Vec<Genus3Row> {
    parse_genus3_reference(GENUS3_REFERENCE).expect("bundled reference is valid")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRow {
    pub genus: u32,
    pub row: usize,
    pub group: String,
    pub periods: Vec<u32>,
    pub contains: BTreeSet<usize>,
}

fn parse_list<T: std::str::FromStr>(field: &str, line: usize) -> Result<Vec<T>> {
    field
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad number {s:?}"),
            })
        })
        .collect()
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut rows = Vec::new();
    for (n, f) in data_lines(text) {
        if f.len() < 4 {
            return Err(Error::Parse {
                line: n,
                message: "expected at least 4 fields".into(),
            });
        }
        let bad = |m: &str| Error::Parse {
            line: n,
            message: m.to_string(),
        };
        rows.push(ReferenceRow {
            genus: f[0].parse().map_err(|_| bad("bad genus"))?,
            row: f[1].parse().map_err(|_| bad("bad row"))?,
            group: f[2].to_string(),
            periods: parse_list(f[3], n)?,
            contains: parse_list(f.get(4).copied().unwrap_or(""), n)?
                .into_iter()
                .collect(),
        });
    }
    Ok(rows)
}

/// The bundled rows of one genus.
pub fn reference_rows(genus: u32) -> Vec<ReferenceRow> {
    parse_reference(LARGE_REFERENCE)
        .expect("bundled reference is valid")
        .into_iter()
        .filter(|r| r.genus == genus)
        .collect()
}

/// A disagreement between computed records and the reference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// A reference row with no computed record.
    Missing {
        row: usize,
        group: String,
        periods: Vec<u32>,
    },
    /// A computed record (1-based) with no reference row.
    Extra {
        record: usize,
        group: String,
        periods: Vec<u32>,
    },
    /// Matched rows whose `contains` sets differ, in reference numbering.
    Contains {
        row: usize,
        group: String,
        computed: BTreeSet<usize>,
        expected: BTreeSet<usize>,
    },
}

fn list<T: fmt::Display>(it: impl IntoIterator<Item = T>) -> String {
    it.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Missing {
                row,
                group,
                periods,
            } => {
                write!(f, "row {row} {group} ({}) not computed", list(periods))
            }
            Mismatch::Extra {
                record,
                group,
                periods,
            } => {
                write!(
                    f,
                    "record {record} {group} ({}) has no reference row",
                    list(periods)
                )
            }
            Mismatch::Contains {
                row,
                group,
                computed,
                expected,
            } => write!(
                f,
                "row {row} {group}: contains {{{}}}, expected {{{}}}",
                list(computed),
                list(expected)
            ),
        }
    }
}

/// Record-to-row assignment plus any disagreements.
#[derive(Clone, Debug)]
pub struct Crosswalk {
    /// `rows[k]` is the reference row of record `k`, if any.
    pub rows: Vec<Option<usize>>,
    pub mismatches: Vec<Mismatch>,
}

impl Crosswalk {
    pub fn is_exact(&self) -> bool {
        self.mismatches.is_empty()
    }
}

const MAX_ASSIGNMENTS: usize = 1 << 12;

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn contains_mismatches(
    records: &[LocusRecord],
    refs: &[ReferenceRow],
    rows: &[Option<usize>],
) -> Vec<Mismatch> {
    let by_row: BTreeMap<usize, &ReferenceRow> = refs.iter().map(|r| (r.row, r)).collect();
    let mut out = Vec::new();
    for (k, rec) in records.iter().enumerate() {
        let Some(row) = rows[k] else { continue };
        let expected = &by_row[&row].contains;
        let computed: BTreeSet<usize> = rec
            .contains
            .iter()
            .map(|&c| rows[c - 1].unwrap_or(usize::MAX))
            .collect();
        if &computed != expected {
            out.push(Mismatch::Contains {
                row,
                group: rec.group.clone(),
                computed,
                expected: expected.clone(),
            });
        }
    }
    out
}

/// Matches records to reference rows and compares `contains` sets.
pub fn crosswalk(records: &[LocusRecord], refs: &[ReferenceRow]) -> Crosswalk {
    type Key = (String, Vec<u32>);
    let mut rec_buckets: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for (k, r) in records.iter().enumerate() {
        if r.signature.g0 == 0 {
            rec_buckets
                .entry((r.group.clone(), r.signature.periods.clone()))
                .or_default()
                .push(k);
        }
    }
    let mut ref_buckets: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
    for r in refs {
        ref_buckets
            .entry((r.group.clone(), r.periods.clone()))
            .or_default()
            .push(r.row);
    }

    let mut rows = vec![None; records.len()];
    let mut structural = Vec::new();
    let mut ambiguous: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (key, recs) in &rec_buckets {
        let target = ref_buckets.get(key).cloned().unwrap_or_default();
        for (i, &k) in recs.iter().enumerate() {
            match target.get(i) {
                Some(&row) => rows[k] = Some(row),
                None => structural.push(Mismatch::Extra {
                    record: k + 1,
                    group: key.0.clone(),
                    periods: key.1.clone(),
                }),
            }
        }
        let paired = recs.len().min(target.len());
        if paired > 1 {
            ambiguous.push((recs[..paired].to_vec(), target[..paired].to_vec()));
        }
    }
    for (key, target) in &ref_buckets {
        let have = rec_buckets.get(key).map_or(0, Vec::len);
        for &row in target.iter().skip(have) {
            structural.push(Mismatch::Missing {
                row,
                group: key.0.clone(),
                periods: key.1.clone(),
            });
        }
    }

    // Try every way of pairing duplicates, keeping the first best one.
    let combos: usize = ambiguous
        .iter()
        .map(|(r, _)| (1..=r.len()).product::<usize>())
        .product();
    let mut best = contains_mismatches(records, refs, &rows);
    if combos > 1 && combos <= MAX_ASSIGNMENTS {
        let mut perms: Vec<Vec<usize>> = ambiguous
            .iter()
            .map(|(r, _)| (0..r.len()).collect())
            .collect();
        let mut best_rows = rows.clone();
        'outer: loop {
            let mut trial = rows.clone();
            for ((recs, target), p) in ambiguous.iter().zip(&perms) {
                for (i, &k) in recs.iter().enumerate() {
                    trial[k] = Some(target[p[i]]);
                }
            }
            let m = contains_mismatches(records, refs, &trial);
            if m.len() < best.len() {
                best = m;
                best_rows = trial;
            }
            for p in perms.iter_mut() {
                if next_permutation(p) {
                    continue 'outer;
                }
                p.sort_unstable();
            }
            break;
        }
        rows = best_rows;
    }
    structural.extend(best);
    Crosswalk {
        rows,
        mismatches: structural,
    }
}
