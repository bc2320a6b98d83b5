//! Nielsen tuples, braid moves and braid orbits.
//!
//! The components of a genus-0 Hurwitz locus correspond to the orbits of the
//! braid group on Nielsen tuples of the signature, taken modulo `Aut(G)`.
//! Positions are permuted by the braid group, so one computation per class
//! multiset covers every ordering of the classes.

use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use crate::covers::{
    for_each_system, types_for_signature, Conjugation, RamificationType, Signature,
};
use crate::error::{Error, Result};
use crate::group::{automorphism_group, Elem, FiniteGroup, GroupMap};
use crate::Caps;

/// An ordered tuple `(γ₁, …, γ_r)` of nontrivial elements with product 1
/// generating the group.
pub type NielsenTuple = Vec<Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `(…, a, b, …) ↦ (…, aba⁻¹, a, …)`
    Forward,
    /// `(…, a, b, …) ↦ (…, b, b⁻¹ab, …)`
    Backward,
}

/// The Artin generator `Q_i` (0-based `i`, acting on positions `i, i+1`)
/// or its inverse.
pub fn braid_move(group: &FiniteGroup, t: &[Elem], i: usize, direction: Direction) -> NielsenTuple {
    assert!(
        i + 1 < t.len(),
        "braid position {i} out of range for length {}",
        t.len()
    );
    let mut out = t.to_vec();
    let (a, b) = (t[i], t[i + 1]);
    match direction {
        Direction::Forward => {
            out[i] = group.mul(group.mul(a, b), group.inv(a));
            out[i + 1] = a;
        }
        Direction::Backward => {
            out[i] = b;
            out[i + 1] = group.mul(group.mul(group.inv(b), a), b);
        }
    }
    out
}

/// Checks the three defining properties of a Nielsen tuple.
pub fn is_nielsen_tuple(group: &FiniteGroup, t: &[Elem]) -> bool {
    t.iter().all(|&x| x != 0) && group.product(t) == 0 && group.generates(t)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Symmetry {
    /// Simultaneous conjugation.
    Inner,
    /// All automorphisms.
    #[default]
    FullAut,
}

/// The maps a symmetry mode quotients by, with a lookup from each element to
/// the maps sending it to the least element of its orbit.
pub struct SymmetryGroup {
    maps: Vec<GroupMap>,
    to_min: Vec<Vec<u32>>,
}

impl SymmetryGroup {
    pub fn new(group: &FiniteGroup, symmetry: Symmetry, aut_cap: usize) -> Result<SymmetryGroup> {
        let maps: Vec<GroupMap> = match symmetry {
            Symmetry::FullAut => automorphism_group(group, aut_cap)?.to_vec(),
            Symmetry::Inner => {
                let mut maps: Vec<GroupMap> = group
                    .elements()
                    .map(|y| GroupMap::inner(group, y))
                    .collect();
                maps.sort();
                maps.dedup();
                maps
            }
        };
        let mut to_min = vec![Vec::new(); group.order()];
        for x in group.elements() {
            let min = maps.iter().map(|m| m.apply(x)).min().unwrap_or(x);
            to_min[x] = (0..maps.len() as u32)
                .filter(|&k| maps[k as usize].apply(x) == min)
                .collect();
        }
        Ok(SymmetryGroup { maps, to_min })
    }

    pub fn order(&self) -> usize {
        self.maps.len()
    }

    /// The least image of `t` under the symmetry group, lexicographically.
    pub fn canonicalize(&self, t: &[Elem]) -> Vec<u16> {
        let mut best: Option<Vec<u16>> = None;
        let Some(&first) = t.first() else {
            return Vec::new();
        };
        for &k in &self.to_min[first] {
            let m = &self.maps[k as usize];
            let image: Vec<u16> = t.iter().map(|&x| m.apply(x) as u16).collect();
            if best.as_ref().map_or(true, |b| image < *b) {
                best = Some(image);
            }
        }
        best.expect("the orbit minimum has a preimage map")
    }
}

/// Canonical key of `t` modulo the chosen symmetry.
pub fn canonicalize(
    group: &FiniteGroup,
    t: &[Elem],
    symmetry: Symmetry,
    aut_cap: usize,
) -> Result<Vec<u16>> {
    Ok(SymmetryGroup::new(group, symmetry, aut_cap)?.canonicalize(t))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidOrbit {
    /// The least canonical key in the orbit.
    pub representative: NielsenTuple,
    /// Number of Nielsen tuples in the orbit.
    pub size: usize,
    /// Class sequences of the orbit's canonical tuples.
    pub arrangements: BTreeSet<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
        }
    }
}

fn distinct_orderings(classes: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = classes.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Braid orbits on the Nielsen tuples whose classes form one of the given
/// multisets, modulo the chosen symmetry. Orbits are sorted by
/// representative.
///
/// Only canonical keys are stored; `tuple_budget` bounds their number.
pub fn braid_orbits(
    group: &FiniteGroup,
    types: &[RamificationType],
    symmetry: Symmetry,
    aut_cap: usize,
    tuple_budget: usize,
    node_budget: u64,
) -> Result<Vec<BraidOrbit>> {
    if types.iter().any(|t| t.g0 != 0) {
        return Err(Error::InvalidInput(
            "braid orbits need orbit genus 0".into(),
        ));
    }
    let sym = SymmetryGroup::new(group, symmetry, aut_cap)?;
    let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
    let mut keys: Vec<Vec<u16>> = Vec::new();
    let mut over_budget = false;

    // every symmetry class of tuples has a member whose first entry is a
    // class representative, so an up-to-inner enumeration reaches them all
    for ty in types {
        for order in distinct_orderings(&ty.classes) {
            let positions: Vec<Vec<Elem>> = order
                .iter()
                .map(|&c| group.conjugacy_classes()[c].members.clone())
                .collect();
            for_each_system(
                group,
                0,
                &positions,
                Conjugation::UpToInner,
                node_budget,
                &mut |sys| {
                    let key = sym.canonicalize(&sys.elliptic);
                    if !index.contains_key(&key) {
                        if keys.len() >= tuple_budget {
                            over_budget = true;
                            return ControlFlow::Break(());
                        }
                        index.insert(key.clone(), keys.len() as u32);
                        keys.push(key);
                    }
                    ControlFlow::Continue(())
                },
            )?;
            if over_budget {
                return Err(Error::CapExceeded {
                    what: "braid orbit tuple budget",
                    limit: tuple_budget,
                });
            }
        }
    }

    let mut uf = UnionFind {
        parent: (0..keys.len() as u32).collect(),
    };
    for k in 0..keys.len() {
        let t: Vec<Elem> = keys[k].iter().map(|&x| x as Elem).collect();
        for i in 0..t.len().saturating_sub(1) {
            let moved = braid_move(group, &t, i, Direction::Forward);
            debug_assert!(is_nielsen_tuple(group, &moved));
            let key = sym.canonicalize(&moved);
            let Some(&j) = index.get(&key) else {
                return Err(Error::InternalContradiction(
                    "braid move left the enumerated Nielsen class".into(),
                ));
            };
            uf.union(k as u32, j);
        }
    }

    let mut orbits: HashMap<u32, BraidOrbit> = HashMap::new();
    for k in 0..keys.len() {
        let root = uf.find(k as u32);
        let t: Vec<Elem> = keys[k].iter().map(|&x| x as Elem).collect();
        let classes: Vec<usize> = t.iter().map(|&x| group.class_of(x)).collect();
        let entry = orbits.entry(root).or_insert_with(|| BraidOrbit {
            representative: t.clone(),
            size: 0,
            arrangements: BTreeSet::new(),
        });
        if t < entry.representative {
            entry.representative = t;
        }
        entry.size += sym.order();
        entry.arrangements.insert(classes);
    }
    let mut out: Vec<BraidOrbit> = orbits.into_values().collect();
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(out)
}

/// Braid orbits on all Nielsen tuples of a genus-0 signature, whatever
/// their classes.
pub fn signature_orbits(
    group: &FiniteGroup,
    sig: &Signature,
    symmetry: Symmetry,
    caps: Caps,
) -> Result<Vec<BraidOrbit>> {
    if sig.g0 != 0 {
        return Err(Error::InvalidInput(
            "braid orbits need orbit genus 0".into(),
        ));
    }
    let types = types_for_signature(group, sig);
    braid_orbits(
        group,
        &types,
        symmetry,
        caps.automorphisms,
        caps.tuple_budget,
        caps.node_budget,
    )
}
