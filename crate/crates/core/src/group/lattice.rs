use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use super::{Elem, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// All subgroups of `group`, sorted by (order, member list).
///
/// Fixpoint closure: start from the cyclic subgroups and keep joining each
/// known subgroup with one cyclic generator until nothing new appears. Every
/// subgroup is a chain of such joins, so the closure is complete.
///
/// The result is cached inside the group on first success.
pub fn subgroup_lattice(group: &FiniteGroup, cap: usize) -> Result<&[Subgroup]> {
    if let Some(cached) = group.lattice_cache().get() {
        return Ok(cached);
    }
    if group.order() > cap {
        return Err(Error::CapExceeded {
            what: "subgroup lattice group order",
            limit: cap,
        });
    }
    let lattice = compute(group);
    Ok(group.lattice_cache().get_or_init(|| lattice))
}

fn compute(group: &FiniteGroup) -> Vec<Subgroup> {
    let n = group.order();
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut all: Vec<Subgroup> = Vec::new();

    // one generator per cyclic subgroup
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    let trivial = Subgroup::trivial(group);
    seen.insert(trivial.member_set().clone());
    all.push(trivial);
    for x in 1..n {
        let c = Subgroup::generated(group, &[x]);
        if seen.insert(c.member_set().clone()) {
            cyclic_gens.push(x);
            all.push(c);
        }
    }

    let mut head = 1;
    while head < all.len() {
        let s = all[head].clone();
        head += 1;
        for &x in &cyclic_gens {
            if s.contains(x) {
                continue;
            }
            let t = s.extended(group, x);
            if seen.insert(t.member_set().clone()) {
                all.push(t);
            }
        }
    }

    all.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    all
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::super::{derived_subgroup, Subgroup};
    use super::*;

    fn brute_force_count(g: &FiniteGroup) -> usize {
        // every subgroup is generated by at most two elements in these groups
        let mut sets = HashSet::new();
        for a in g.elements() {
            for b in g.elements() {
                sets.insert(Subgroup::generated(g, &[a, b]).member_set().clone());
            }
        }
        sets.len()
    }

    #[test]
    fn prime_cyclic_has_two_subgroups() {
        assert_eq!(subgroup_lattice(&cyclic(7), 512).unwrap().len(), 2);
    }

    #[test]
    fn s3_has_six_subgroups() {
        let g = s3();
        assert_eq!(subgroup_lattice(&g, 512).unwrap().len(), 6);
        assert_eq!(brute_force_count(&g), 6);
    }

    #[test]
    fn klein_quartic_group_has_179_subgroups() {
        let g = klein_quartic_group();
        let lattice = subgroup_lattice(&g, 512).unwrap();
        assert_eq!(lattice.len(), 179);
        assert_eq!(brute_force_count(&g), 179);
        assert_eq!(lattice[0].order(), 1);
        assert_eq!(lattice.last().unwrap().order(), 168);
    }

    #[test]
    fn cap_is_enforced() {
        let g = klein_quartic_group();
        assert!(subgroup_lattice(&g, 100).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn index_two_subgroups_contain_derived_subgroup() {
        // D12: three index-2 subgroups, matching C2-quotients of the abelianization V4
        let g = group(6, &["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"]);
        let d = derived_subgroup(&g);
        let index_two: Vec<&Subgroup> = subgroup_lattice(&g, 512)
            .unwrap()
            .iter()
            .filter(|s| s.index() == 2)
            .collect();
        assert_eq!(index_two.len(), 3);
        assert!(index_two.iter().all(|s| d.is_subgroup_of(s)));
    }
}
