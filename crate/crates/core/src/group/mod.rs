//! Small finite permutation groups, fully materialized.
//!
//! A [`FiniteGroup`] holds every element (sorted lexicographically by image
//! array, so the identity is element 0), a Cayley table, inverses, element
//! orders, a breadth-first word tree over its generators and its conjugacy
//! classes. Elements are referred to by their index ([`Elem`]).

mod classes;
mod hom;
mod lattice;
mod perm;
mod subgroup;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

pub use classes::ConjugacyClass;
pub use hom::{
    automorphism_group, derived_series_orders, extend_to_automorphism, find_isomorphism,
    is_isomorphic, Automorphism, GroupMap, WordTree,
};
pub use perm::{parse_cycles, Permutation};
pub use subgroup::{CosetAction, Subgroup};

use crate::error::{Error, Result};

/// Index of an element inside its [`FiniteGroup`].
pub type Elem = usize;

#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, Elem>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    orders: Vec<u32>,
    generators: Vec<Elem>,
    word_parent: Vec<u16>,
    word_gen: Vec<u8>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u16>,
    lattice: OnceLock<Vec<Subgroup>>,
    automorphisms: OnceLock<Vec<Automorphism>>,
    generating_tuple: OnceLock<Vec<Elem>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("degree", &self.degree)
            .field("generators", &self.generator_perms())
            .finish()
    }
}

/// Closes `gens` under multiplication.
///
/// Fails with `CapExceeded` once more than `cap` elements have been found.
pub fn close_generators(gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let degree = match gens.first() {
        Some(g) => g.degree(),
        None => return Err(Error::InvalidInput("no generators given".into())),
    };
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidInput("generators of different degree".into()));
    }
    if cap > u16::MAX as usize {
        return Err(Error::InvalidInput(format!(
            "element cap {cap} above 65535"
        )));
    }
    if gens.len() > u8::MAX as usize {
        return Err(Error::InvalidInput("too many generators".into()));
    }

    let id = Permutation::identity(degree);
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), ());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains_key(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        limit: cap,
                    });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }

    let mut perms: Vec<Permutation> = seen.into_keys().collect();
    perms.sort();
    let index: HashMap<Permutation, Elem> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let generators: Vec<Elem> = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteGroup::assemble(degree, perms, index, generators))
}

impl FiniteGroup {
    fn assemble(
        degree: usize,
        perms: Vec<Permutation>,
        index: HashMap<Permutation, Elem>,
        generators: Vec<Elem>,
    ) -> FiniteGroup {
        let n = perms.len();
        // right multiplication by each generator
        let right: Vec<Vec<u16>> = generators
            .iter()
            .map(|&s| {
                perms
                    .iter()
                    .map(|p| index[&p.then(&perms[s])] as u16)
                    .collect()
            })
            .collect();

        let mut word_parent = vec![u16::MAX; n];
        let mut word_gen = vec![u8::MAX; n];
        let mut bfs = Vec::with_capacity(n);
        word_parent[0] = 0;
        bfs.push(0usize);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for (k, r) in right.iter().enumerate() {
                let y = r[x] as usize;
                if word_parent[y] == u16::MAX && y != 0 {
                    word_parent[y] = x as u16;
                    word_gen[y] = k as u8;
                    bfs.push(y);
                }
            }
        }
        debug_assert_eq!(bfs.len(), n);

        // table[x*n + y] = x·y, filled column by column in word-tree order
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            table[x * n] = x as u16;
        }
        for &y in bfs.iter().skip(1) {
            let p = word_parent[y] as usize;
            let r = &right[word_gen[y] as usize];
            for x in 0..n {
                table[x * n + y] = r[table[x * n + p] as usize];
            }
        }

        let mut inverse = vec![0u16; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            inverse[x] = row
                .iter()
                .position(|&v| v == 0)
                .expect("group has inverses") as u16;
        }

        let mut orders = vec![1u32; n];
        for (x, order) in orders.iter_mut().enumerate() {
            let mut y = x;
            let mut k = 1;
            while y != 0 {
                y = table[y * n + x] as usize;
                k += 1;
            }
            *order = k;
        }

        let mut group = FiniteGroup {
            degree,
            perms,
            index,
            table,
            inverse,
            orders,
            generators,
            word_parent,
            word_gen,
            classes: Vec::new(),
            class_of: Vec::new(),
            lattice: OnceLock::new(),
            automorphisms: OnceLock::new(),
            generating_tuple: OnceLock::new(),
        };
        let (classes, class_of) = classes::compute(&group);
        group.classes = classes;
        group.class_of = class_of;
        group
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order()
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn generator_perms(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|&g| self.perms[g].clone())
            .collect()
    }

    pub fn perm(&self, x: Elem) -> &Permutation {
        &self.perms[x]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<Elem> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order() + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as Elem
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let order = self.orders[a] as i64;
        let e = k.rem_euclid(order);
        let mut y = 0;
        for _ in 0..e {
            y = self.mul(y, a);
        }
        y
    }

    /// `x^y = y⁻¹ x y`.
    #[inline]
    pub fn conj(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn product(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Word-tree parent of `x` and the generator index with `x = parent·gen`.
    /// `None` for the identity.
    pub fn word_step(&self, x: Elem) -> Option<(Elem, usize)> {
        if x == 0 {
            None
        } else {
            Some((self.word_parent[x] as Elem, self.word_gen[x] as usize))
        }
    }

    /// The reduced word for `x` as a list of generator indices.
    pub fn word(&self, mut x: Elem) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((p, k)) = self.word_step(x) {
            w.push(k);
            x = p;
        }
        w.reverse();
        w
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x] as usize
    }

    /// Label such as `2A`, `7B`: element order plus a letter counting the
    /// classes of that order in sorted order.
    pub fn class_label(&self, class: usize) -> String {
        let order = self.classes[class].element_order;
        let rank = self.classes[..class]
            .iter()
            .filter(|c| c.element_order == order)
            .count();
        format!("{}{}", order, classes::letter(rank))
    }

    pub fn class_by_label(&self, label: &str) -> Option<usize> {
        (0..self.classes.len()).find(|&c| self.class_label(c) == label)
    }

    /// Every element of `xs` lies in the subgroup they generate; returns that
    /// subgroup's member set as a sorted list.
    pub fn closure_of(&self, xs: &[Elem]) -> Vec<Elem> {
        subgroup::closure_members(self, xs).ones().collect()
    }

    /// True if `xs` generates the whole group.
    pub fn generates(&self, xs: &[Elem]) -> bool {
        subgroup::generates(self, xs)
    }

    pub(crate) fn lattice_cache(&self) -> &OnceLock<Vec<Subgroup>> {
        &self.lattice
    }

    pub(crate) fn aut_cache(&self) -> &OnceLock<Vec<Automorphism>> {
        &self.automorphisms
    }

    /// A short generating tuple chosen to keep image searches small.
    pub fn small_generating_tuple(&self) -> &[Elem] {
        self.generating_tuple
            .get_or_init(|| hom::choose_generating_tuple(self))
    }
}

/// Smallest `m ≥ 1` with `x^m = 1`.
pub fn element_order(group: &FiniteGroup, x: Elem) -> u32 {
    group.element_order(x)
}

pub fn conjugacy_classes(group: &FiniteGroup) -> &[ConjugacyClass] {
    group.conjugacy_classes()
}

pub use lattice::subgroup_lattice;
pub use subgroup::{center, coset_action, derived_subgroup, normal_closure};

#[cfg(test)]
pub(crate) mod testing {
    use super::*;

    pub fn group(degree: usize, gens: &[&str]) -> FiniteGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|g| parse_cycles(degree, g).unwrap())
            .collect();
        close_generators(&gens, 4096).unwrap()
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        group(n, &[&format!("({})", cycle.join(" "))])
    }

    pub fn s3() -> FiniteGroup {
        group(3, &["(1 2)", "(1 2 3)"])
    }

    pub fn klein_quartic_group() -> FiniteGroup {
        group(7, &["(1 2 3)(4 5 7)", "(3 4)(5 6)"])
    }
}

#[cfg(test)]
mod tests {
    use super::testing::*;
    use super::*;

    #[test]
    fn closes_small_groups() {
        assert_eq!(group(2, &["(1 2)"]).order(), 2);
        assert_eq!(s3().order(), 6);
        assert_eq!(klein_quartic_group().order(), 168);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            parse_cycles(5, "(1 2 3 4 5)").unwrap(),
            parse_cycles(5, "(1 2)").unwrap(),
        ];
        let err = close_generators(&gens, 100).unwrap_err();
        assert!(err.is_cap_exceeded());
        assert_eq!(close_generators(&gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn identity_is_element_zero_and_order_is_lexicographic() {
        let g = klein_quartic_group();
        assert!(g.perm(0).is_identity());
        for x in 1..g.order() {
            assert!(g.perm(x - 1) < g.perm(x));
        }
    }

    #[test]
    fn table_agrees_with_permutation_product() {
        let g = klein_quartic_group();
        for a in (0..g.order()).step_by(7) {
            for b in 0..g.order() {
                let p = g.perm(a).then(g.perm(b));
                assert_eq!(g.index_of(&p), Some(g.mul(a, b)));
            }
        }
    }

    #[test]
    fn word_tree_evaluates_to_each_element() {
        let g = klein_quartic_group();
        for x in g.elements() {
            let w = g.word(x);
            let y = w.iter().fold(0, |acc, &k| g.mul(acc, g.generators()[k]));
            assert_eq!(x, y);
        }
    }

    #[test]
    fn element_orders() {
        let g = s3();
        assert_eq!(element_order(&g, g.identity()), 1);
        let three_cycle = g.index_of(&parse_cycles(3, "(1 2 3)").unwrap()).unwrap();
        assert_eq!(element_order(&g, three_cycle), 3);

        // a (2,3,7) triple in the Klein quartic group
        let k = klein_quartic_group();
        let a = k.index_of(&parse_cycles(7, "(3 4)(5 6)").unwrap()).unwrap();
        let b = k
            .index_of(&parse_cycles(7, "(1 2 3)(4 5 7)").unwrap())
            .unwrap();
        let c = k.inv(k.mul(a, b));
        assert_eq!(
            (k.element_order(a), k.element_order(b), k.element_order(c)),
            (2, 3, 7)
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let g = klein_quartic_group();
        let all: Vec<Elem> = g.elements().collect();
        assert_eq!(g.closure_of(&all), all);
        let perms: Vec<Permutation> = all.iter().map(|&x| g.perm(x).clone()).collect();
        let again = close_generators(&perms, 4096).unwrap();
        assert_eq!(again.order(), g.order());
        for x in g.elements() {
            assert_eq!(again.perm(x), g.perm(x));
        }
    }
}
