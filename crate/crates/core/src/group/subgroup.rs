use fixedbitset::FixedBitSet;

use super::{close_generators, Elem, FiniteGroup, Permutation};
use crate::error::Result;

/// A subgroup of some [`FiniteGroup`], stored as a member bitset over the
/// parent's element indices.
///
/// The parent is not borrowed; every method that needs multiplication takes
/// it explicitly, which lets subgroup lists be cached inside the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    elements: Vec<Elem>,
    generators: Vec<Elem>,
    parent_order: usize,
}

impl Subgroup {
    pub fn trivial(group: &FiniteGroup) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert(0);
        Subgroup {
            members,
            elements: vec![0],
            generators: Vec::new(),
            parent_order: group.order(),
        }
    }

    pub fn whole(group: &FiniteGroup) -> Subgroup {
        Subgroup::generated(group, group.generators())
    }

    /// The subgroup generated by `xs`. Its generator list keeps only the
    /// entries of `xs` that enlarged the group when added in order.
    pub fn generated(group: &FiniteGroup, xs: &[Elem]) -> Subgroup {
        let mut h = Subgroup::trivial(group);
        for &x in xs {
            if !h.contains(x) {
                h = h.extended(group, x);
            }
        }
        h
    }

    /// `⟨self, x⟩`, grown coset by coset: the right cosets of `self` inside
    /// the result are closed under right multiplication by the generators.
    pub fn extended(&self, group: &FiniteGroup, x: Elem) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let mut gens = self.generators.clone();
        gens.push(x);
        let mut members = self.members.clone();
        let mut elements = self.elements.clone();
        let mut reps = vec![0usize];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            for &s in &gens {
                let y = group.mul(r, s);
                if !members.contains(y) {
                    reps.push(y);
                    for &h in &self.elements {
                        let e = group.mul(h, y);
                        members.insert(e);
                        elements.push(e);
                    }
                }
            }
        }
        elements.sort_unstable();
        Subgroup {
            members,
            elements,
            generators: gens,
            parent_order: self.parent_order,
        }
    }

    /// Builds a subgroup from a member set that is known to be closed.
    pub(crate) fn from_closed_members(group: &FiniteGroup, members: FixedBitSet) -> Subgroup {
        let elements: Vec<Elem> = members.ones().collect();
        // greedy generating set
        let mut h = Subgroup::trivial(group);
        for &x in &elements {
            if !h.contains(x) {
                h = h.extended(group, x);
            }
        }
        debug_assert_eq!(h.members, members);
        h
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn member_set(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        group.generators().iter().all(|&s| {
            self.generators
                .iter()
                .all(|&h| self.contains(group.conj(h, s)))
        })
    }

    /// `y⁻¹ H y`.
    pub fn conjugate(&self, group: &FiniteGroup, y: Elem) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(group.order());
        for &h in &self.elements {
            members.insert(group.conj(h, y));
        }
        Subgroup {
            elements: members.ones().collect(),
            members,
            generators: self.generators.iter().map(|&h| group.conj(h, y)).collect(),
            parent_order: self.parent_order,
        }
    }

    /// The subgroup as a group in its own right, with the map from its
    /// element indices to the parent's.
    pub fn to_group(&self, group: &FiniteGroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        let gens: Vec<Permutation> = if self.generators.is_empty() {
            vec![Permutation::identity(group.degree())]
        } else {
            self.generators
                .iter()
                .map(|&g| group.perm(g).clone())
                .collect()
        };
        let h = close_generators(&gens, group.order().max(1))?;
        let embedding = h
            .elements()
            .map(|x| {
                group
                    .index_of(h.perm(x))
                    .expect("subgroup element in parent")
            })
            .collect();
        Ok((h, embedding))
    }
}

pub(super) fn closure_members(group: &FiniteGroup, xs: &[Elem]) -> FixedBitSet {
    Subgroup::generated(group, xs).members
}

pub(super) fn generates(group: &FiniteGroup, xs: &[Elem]) -> bool {
    Subgroup::generated(group, xs).order() == group.order()
}

/// Smallest normal subgroup containing `xs`: generated by their full
/// conjugacy classes.
pub fn normal_closure(group: &FiniteGroup, xs: &[Elem]) -> Subgroup {
    let mut h = Subgroup::trivial(group);
    for &x in xs {
        for &y in &group.conjugacy_classes()[group.class_of(x)].members {
            if !h.contains(y) {
                h = h.extended(group, y);
            }
        }
    }
    h
}

/// Commutator subgroup, as the normal closure of the generator commutators.
pub fn derived_subgroup(group: &FiniteGroup) -> Subgroup {
    let gens = group.generators();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            comms.push(group.comm(a, b));
        }
    }
    normal_closure(group, &comms)
}

pub fn center(group: &FiniteGroup) -> Subgroup {
    let mut members = FixedBitSet::with_capacity(group.order());
    for x in group.elements() {
        if group
            .generators()
            .iter()
            .all(|&s| group.mul(x, s) == group.mul(s, x))
        {
            members.insert(x);
        }
    }
    Subgroup::from_closed_members(group, members)
}

/// Right multiplication action of a group on the right cosets `Hτ` of a
/// subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// One representative per coset; `representatives[0]` is the identity.
    pub representatives: Vec<Elem>,
    coset_of: Vec<u32>,
    /// Images of the parent's generators as permutations of the cosets.
    pub generator_images: Vec<Permutation>,
}

impl CosetAction {
    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    /// The coset containing `x`.
    pub fn coset_of(&self, x: Elem) -> usize {
        self.coset_of[x] as usize
    }

    /// Image of coset `i` under right multiplication by `x`.
    pub fn act(&self, group: &FiniteGroup, i: usize, x: Elem) -> usize {
        self.coset_of(group.mul(self.representatives[i], x))
    }

    pub fn permutation_of(&self, group: &FiniteGroup, x: Elem) -> Permutation {
        let images = (0..self.degree()).map(|i| self.act(group, i, x)).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// The permutation group induced on the cosets.
    pub fn image_group(&self, cap: usize) -> Result<FiniteGroup> {
        close_generators(&self.generator_images, cap)
    }
}

pub fn coset_action(group: &FiniteGroup, h: &Subgroup) -> CosetAction {
    let mut coset_of = vec![u32::MAX; group.order()];
    let mut representatives: Vec<Elem> = Vec::with_capacity(h.index());
    let mut head = 0;
    let mark = |rep: Elem, reps: &mut Vec<Elem>, coset_of: &mut Vec<u32>| {
        let k = reps.len() as u32;
        for &y in h.elements() {
            coset_of[group.mul(y, rep)] = k;
        }
        reps.push(rep);
    };
    mark(0, &mut representatives, &mut coset_of);
    while head < representatives.len() {
        let r = representatives[head];
        head += 1;
        for &s in group.generators() {
            let y = group.mul(r, s);
            if coset_of[y] == u32::MAX {
                mark(y, &mut representatives, &mut coset_of);
            }
        }
    }
    let mut action = CosetAction {
        representatives,
        coset_of,
        generator_images: Vec::new(),
    };
    action.generator_images = group
        .generators()
        .iter()
        .map(|&s| action.permutation_of(group, s))
        .collect();
    action
}
