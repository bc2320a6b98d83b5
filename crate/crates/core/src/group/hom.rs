use fixedbitset::FixedBitSet;

use super::{derived_subgroup, Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Breadth-first words for every element over an arbitrary generating list.
#[derive(Clone, Debug)]
pub struct WordTree {
    generators: Vec<Elem>,
    parent: Vec<u16>,
    step: Vec<u8>,
    order: Vec<Elem>,
}

impl WordTree {
    pub fn new(group: &FiniteGroup, generators: &[Elem]) -> Result<WordTree> {
        let n = group.order();
        let mut parent = vec![u16::MAX; n];
        let mut step = vec![u8::MAX; n];
        let mut order = Vec::with_capacity(n);
        parent[0] = 0;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (k, &s) in generators.iter().enumerate() {
                let y = group.mul(x, s);
                if y != 0 && parent[y] == u16::MAX {
                    parent[y] = x as u16;
                    step[y] = k as u8;
                    order.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::GeneratorsDoNotGenerate);
        }
        Ok(WordTree {
            generators: generators.to_vec(),
            parent,
            step,
            order,
        })
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Word for `x` as generator positions, read left to right.
    pub fn word(&self, mut x: Elem) -> Vec<usize> {
        let mut w = Vec::new();
        while x != 0 {
            w.push(self.step[x] as usize);
            x = self.parent[x] as usize;
        }
        w.reverse();
        w
    }

    /// Evaluates every word on `images` in `target` and keeps the result only
    /// if it is multiplicative: `φ(g·s) = φ(g)·φ(s)` for every element `g` and
    /// generator `s`.
    pub fn extend(
        &self,
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: &[Elem],
    ) -> Option<Vec<u16>> {
        debug_assert_eq!(images.len(), self.generators.len());
        let n = source.order();
        let mut map = vec![0u16; n];
        for &y in &self.order[1..] {
            let p = self.parent[y] as usize;
            map[y] = target.mul(map[p] as Elem, images[self.step[y] as usize]) as u16;
        }
        for g in 0..n {
            for (k, &s) in self.generators.iter().enumerate() {
                let lhs = map[source.mul(g, s)] as Elem;
                if lhs != target.mul(map[g] as Elem, images[k]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// A homomorphism between two groups, stored as its full element map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupMap {
    map: Vec<u16>,
}

/// An automorphism is a bijective [`GroupMap`] from a group to itself.
pub type Automorphism = GroupMap;

impl GroupMap {
    pub fn identity(group: &FiniteGroup) -> GroupMap {
        GroupMap {
            map: (0..group.order() as u16).collect(),
        }
    }

    /// Conjugation `x ↦ y⁻¹ x y`.
    pub fn inner(group: &FiniteGroup, y: Elem) -> GroupMap {
        GroupMap {
            map: group.elements().map(|x| group.conj(x, y) as u16).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x] as Elem
    }

    pub fn images(&self) -> impl Iterator<Item = Elem> + '_ {
        self.map.iter().map(|&x| x as Elem)
    }

    pub fn source_order(&self) -> usize {
        self.map.len()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            map: self.map.iter().map(|&x| other.map[x as usize]).collect(),
        }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> GroupMap {
        let mut inv = vec![0u16; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        GroupMap { map: inv }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.map.len());
        self.map.iter().all(|&x| {
            let fresh = !seen.contains(x as usize);
            seen.insert(x as usize);
            fresh
        })
    }

    /// Checks `φ(ab) = φ(a)φ(b)` on all pairs.
    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        source.elements().all(|a| {
            source
                .elements()
                .all(|b| self.apply(source.mul(a, b)) == target.mul(self.apply(a), self.apply(b)))
        })
    }
}

/// The automorphism sending `gens[i]` to `images[i]`, if there is one.
pub fn extend_to_automorphism(
    group: &FiniteGroup,
    gens: &[Elem],
    images: &[Elem],
) -> Result<Option<Automorphism>> {
    if gens.len() != images.len() {
        return Err(Error::InvalidInput(format!(
            "{} generators but {} images",
            gens.len(),
            images.len()
        )));
    }
    let tree = WordTree::new(group, gens)?;
    Ok(tree
        .extend(group, group, images)
        .map(|map| GroupMap { map })
        .filter(GroupMap::is_bijective))
}

/// Automorphisms are determined by generator images; images must preserve
/// (element order, class size).
fn element_key(group: &FiniteGroup, x: Elem) -> (u32, usize) {
    (
        group.element_order(x),
        group.conjugacy_classes()[group.class_of(x)].size(),
    )
}

fn candidates(group: &FiniteGroup, key: (u32, usize)) -> Vec<Elem> {
    group
        .conjugacy_classes()
        .iter()
        .filter(|c| (c.element_order, c.size()) == key)
        .flat_map(|c| c.members.iter().copied())
        .collect()
}

pub(super) fn choose_generating_tuple(group: &FiniteGroup) -> Vec<Elem> {
    if group.order() == 1 {
        return Vec::new();
    }
    let weight = |x: Elem| candidates(group, element_key(group, x)).len();
    let weights: Vec<usize> = group.elements().map(weight).collect();

    let cyclic = group
        .elements()
        .filter(|&x| group.element_order(x) as usize == group.order())
        .min_by_key(|&x| (weights[x], x));
    if let Some(x) = cyclic {
        return vec![x];
    }

    // Two generators: the first only needs to range over class representatives.
    let mut best: Option<(usize, Elem, Elem)> = None;
    for class in group.conjugacy_classes().iter().skip(1) {
        let a = class.representative;
        let ha = Subgroup::generated(group, &[a]);
        for b in group.elements() {
            if ha.contains(b) {
                continue;
            }
            let cost = weights[a] * weights[b];
            if best.is_some_and(|(c, _, _)| c <= cost) {
                continue;
            }
            if ha.extended(group, b).order() == group.order() {
                best = Some((cost, a, b));
            }
        }
    }
    if let Some((_, a, b)) = best {
        return vec![a, b];
    }

    // Otherwise grow greedily, taking the element that enlarges the most.
    let mut tuple = Vec::new();
    let mut h = Subgroup::trivial(group);
    while h.order() < group.order() {
        let (x, next) = group
            .elements()
            .filter(|&x| !h.contains(x))
            .map(|x| (x, h.extended(group, x)))
            .max_by_key(|(x, t)| (t.order(), std::cmp::Reverse((weights[*x], *x))))
            .expect("proper subgroup misses an element");
        tuple.push(x);
        h = next;
    }
    tuple
}

/// Enumerates image tuples for `source_tuple` inside `target`, pruned by
/// element keys and by orders of pairwise products, and calls `visit` on
/// every candidate until it returns `false`.
fn search_images(
    source: &FiniteGroup,
    source_tuple: &[Elem],
    target: &FiniteGroup,
    first_choices: Option<Vec<Elem>>,
    visit: &mut dyn FnMut(&[Elem]) -> bool,
) {
    let mut pools: Vec<Vec<Elem>> = source_tuple
        .iter()
        .map(|&x| candidates(target, element_key(source, x)))
        .collect();
    if let (Some(first), Some(pool)) = (first_choices, pools.first_mut()) {
        pool.retain(|y| first.contains(y));
    }
    let k = source_tuple.len();
    let pair_orders: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            (0..i)
                .map(|j| source.element_order(source.mul(source_tuple[j], source_tuple[i])))
                .collect()
        })
        .collect();

    fn rec(
        depth: usize,
        pools: &[Vec<Elem>],
        pair_orders: &[Vec<u32>],
        target: &FiniteGroup,
        chosen: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> bool {
        if depth == pools.len() {
            return visit(chosen);
        }
        for &y in &pools[depth] {
            let ok = (0..depth)
                .all(|j| target.element_order(target.mul(chosen[j], y)) == pair_orders[depth][j]);
            if !ok {
                continue;
            }
            chosen.push(y);
            let go_on = rec(depth + 1, pools, pair_orders, target, chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    let mut chosen = Vec::with_capacity(k);
    rec(0, &pools, &pair_orders, target, &mut chosen, visit);
}

/// Every automorphism of `group`, sorted by element map; the identity is
/// first. Cached inside the group on first success.
pub fn automorphism_group(group: &FiniteGroup, cap: usize) -> Result<&[Automorphism]> {
    if let Some(cached) = group.aut_cache().get() {
        return Ok(cached);
    }
    if group.order() > cap {
        return Err(Error::CapExceeded {
            what: "automorphism group order",
            limit: cap,
        });
    }
    let tuple = group.small_generating_tuple().to_vec();
    let mut auts = Vec::new();
    if tuple.is_empty() {
        auts.push(GroupMap::identity(group));
    } else {
        let tree = WordTree::new(group, &tuple)?;
        search_images(group, &tuple, group, None, &mut |images| {
            if let Some(map) = tree.extend(group, group, images) {
                let m = GroupMap { map };
                if m.is_bijective() {
                    auts.push(m);
                }
            }
            true
        });
    }
    auts.sort();
    Ok(group.aut_cache().get_or_init(|| auts))
}

/// Cheap isomorphism invariants: order, (element order, class size) multiset,
/// center order and derived series orders.
fn invariants(group: &FiniteGroup) -> (usize, Vec<(u32, usize)>, usize, Vec<usize>) {
    let mut classes: Vec<(u32, usize)> = group
        .conjugacy_classes()
        .iter()
        .map(|c| (c.element_order, c.size()))
        .collect();
    classes.sort_unstable();
    let center = super::center(group).order();
    (group.order(), classes, center, derived_series_orders(group))
}

/// Orders of `G ⊇ G' ⊇ G'' ⊇ ...` down to the point where it stabilizes.
pub fn derived_series_orders(group: &FiniteGroup) -> Vec<usize> {
    let mut orders = vec![group.order()];
    let d = derived_subgroup(group);
    if d.order() == group.order() || d.order() == 1 {
        orders.push(d.order());
        return orders;
    }
    let (dg, _) = d
        .to_group(group)
        .expect("subgroup closes within parent order");
    orders.extend(derived_series_orders(&dg));
    orders
}

/// An isomorphism `source → target`, if one exists.
pub fn find_isomorphism(source: &FiniteGroup, target: &FiniteGroup) -> Option<GroupMap> {
    if source.order() != target.order() {
        return None;
    }
    if source.order() == 1 {
        return Some(GroupMap { map: vec![0] });
    }
    if invariants(source) != invariants(target) {
        return None;
    }
    let tuple = source.small_generating_tuple().to_vec();
    let tree = WordTree::new(source, &tuple).expect("generating tuple generates");
    // Composing with inner automorphisms of the target, the first image can
    // be taken to be a class representative.
    let reps: Vec<Elem> = target
        .conjugacy_classes()
        .iter()
        .map(|c| c.representative)
        .collect();
    let mut found = None;
    search_images(source, &tuple, target, Some(reps), &mut |images| {
        if let Some(map) = tree.extend(source, target, images) {
            let m = GroupMap { map };
            if m.is_bijective() {
                found = Some(m);
                return false;
            }
        }
        true
    });
    found
}

pub fn is_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    find_isomorphism(a, b).is_some()
}
