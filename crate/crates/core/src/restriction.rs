//! Restricting a G-action to a subgroup H: the induced ramification type, the
//! classification of equal-dimension pairs, and inclusions between loci.
//!
//! For each class `Cᵢ` with representative `γ`, the double cosets `⟨γ⟩σH`
//! correspond to the orbits of `γ` on the right cosets `Hτ` (with
//! `σ = τ⁻¹`). An orbit of length `m` through `Hτ` contributes the H-class of
//! `τγ^mτ⁻¹ = σ⁻¹γ^mσ`, unless that element is trivial.

use std::fmt;

use crate::catalog::{construct_named, Constructor};
use crate::covers::{delta, orbit_genus_of, RamificationType, Signature};
use crate::error::{Error, Result};
use crate::group::{coset_action, find_isomorphism, is_isomorphic, Elem, FiniteGroup, Subgroup};

/// One `(i, j)` entry of the restriction: class position, double coset
/// representative, `m_ij` and the element `σ⁻¹γ^mσ` of the parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosetEntry {
    pub class_position: usize,
    pub sigma: Elem,
    pub m: u32,
    pub element: Elem,
}

/// The H-action obtained by restriction.
pub struct Restriction {
    /// H as a group in its own right.
    pub subgroup: FiniteGroup,
    /// Map from `subgroup`'s element indices to the parent's.
    pub embedding: Vec<Elem>,
    pub induced: RamificationType,
    pub signature: Signature,
    pub log: Vec<DoubleCosetEntry>,
}

impl fmt::Debug for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Restriction({} of order {})",
            self.signature,
            self.subgroup.order()
        )
    }
}

/// The induced type of the restriction of `ty` to `h`.
pub fn restrict_type(
    group: &FiniteGroup,
    ty: &RamificationType,
    h: &Subgroup,
) -> Result<Restriction> {
    let gammas: Vec<Elem> = ty
        .classes
        .iter()
        .map(|&c| group.conjugacy_classes()[c].representative)
        .collect();
    restrict_type_with(group, ty, h, &gammas, &[])
}

/// [`restrict_type`] with explicit choices: `gammas[i] ∈ Cᵢ`, and coset
/// representatives twisted on the left by `twist[k] ∈ H` (missing entries
/// mean no twist). The result does not depend on these choices.
pub fn restrict_type_with(
    group: &FiniteGroup,
    ty: &RamificationType,
    h: &Subgroup,
    gammas: &[Elem],
    twist: &[Elem],
) -> Result<Restriction> {
    if gammas.len() != ty.classes.len() {
        return Err(Error::InvalidInput("one γ per class required".into()));
    }
    let (subgroup, embedding) = h.to_group(group)?;
    let mut back = vec![usize::MAX; group.order()];
    for (k, &x) in embedding.iter().enumerate() {
        back[x] = k;
    }
    let action = coset_action(group, h);
    let n = action.degree();
    let rep = |k: usize| -> Elem {
        let t = twist.get(k).copied().unwrap_or(0);
        debug_assert!(h.contains(t));
        group.mul(t, action.representatives[k])
    };

    let mut log = Vec::new();
    let mut classes = Vec::new();
    for (pos, &gamma) in gammas.iter().enumerate() {
        if group.class_of(gamma) != ty.classes[pos] {
            return Err(Error::InvalidInput(format!(
                "γ for position {pos} is not in its class"
            )));
        }
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut m = 0u32;
            let mut k = start;
            loop {
                seen[k] = true;
                k = action.act(group, k, gamma);
                m += 1;
                if k == start {
                    break;
                }
            }
            let tau = rep(start);
            let element = group.mul(group.mul(tau, group.pow(gamma, m as i64)), group.inv(tau));
            debug_assert!(h.contains(element));
            log.push(DoubleCosetEntry {
                class_position: pos,
                sigma: group.inv(tau),
                m,
                element,
            });
            if element != 0 {
                classes.push(subgroup.class_of(back[element]));
            }
        }
    }
    classes.sort_unstable();
    let periods: Vec<u32> = classes
        .iter()
        .map(|&c| subgroup.conjugacy_classes()[c].element_order)
        .collect();
    let h0 = orbit_genus_of(ty.genus, subgroup.order(), &periods).ok_or_else(|| {
        Error::InternalContradiction(format!(
            "restriction to order {} gives periods {periods:?} with no orbit genus",
            subgroup.order()
        ))
    })?;
    let signature = Signature { g0: h0, periods };
    let induced = RamificationType {
        genus: ty.genus,
        g0: h0,
        classes,
    };
    Ok(Restriction {
        subgroup,
        embedding,
        induced,
        signature,
        log,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma2Tag {
    I,
    II,
    IIIa,
    IIIb,
    IIIc,
    IVa,
    IVb,
    IVc,
    IVd,
    IVe,
    IVf,
    IVg,
    IVh,
    /// Triangle case matching none of the listed patterns; these are the
    /// non-maximal cases of index 4, 6, 12 or 24 whose patterns are unknown.
    IViIndeterminate,
}

impl fmt::Display for Lemma2Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Lemma2Tag::I => "I",
            Lemma2Tag::II => "II",
            Lemma2Tag::IIIa => "III(a)",
            Lemma2Tag::IIIb => "III(b)",
            Lemma2Tag::IIIc => "III(c)",
            Lemma2Tag::IVa => "IV(a)",
            Lemma2Tag::IVb => "IV(b)",
            Lemma2Tag::IVc => "IV(c)",
            Lemma2Tag::IVd => "IV(d)",
            Lemma2Tag::IVe => "IV(e)",
            Lemma2Tag::IVf => "IV(f)",
            Lemma2Tag::IVg => "IV(g)",
            Lemma2Tag::IVh => "IV(h)",
            Lemma2Tag::IViIndeterminate => "IV(i)?",
        };
        f.write_str(s)
    }
}

/// A matched clause with the data it was matched on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma2Case {
    pub tag: Lemma2Tag,
    pub n: usize,
    pub h0: u32,
    pub s: usize,
    pub r: usize,
    pub c: Vec<u32>,
    pub d: Vec<u32>,
}

fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    v
}

/// Index sequences `π` with `c[π[0]] ≤ c[π[1]] ≤ …`: the labelings allowed
/// when classes with equal periods may be listed in any order.
fn sorted_labelings(c: &[u32]) -> Vec<Vec<usize>> {
    fn rec(c: &[u32], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == c.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..c.len() {
            if used[i] || cur.last().is_some_and(|&l| c[l] > c[i]) {
                continue;
            }
            used[i] = true;
            cur.push(i);
            rec(c, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    let mut out = Vec::new();
    rec(c, &mut vec![false; c.len()], &mut Vec::new(), &mut out);
    out
}

fn quotient_is(image: &FiniteGroup, kind: Constructor) -> bool {
    match construct_named(&kind, 2048) {
        Ok(q) => q.order() == image.order() && is_isomorphic(image, &q),
        Err(_) => false,
    }
}

/// Matches an equal-dimension restriction against the clauses of the lemma
/// classifying them. Returns `None` when the restriction has strictly larger
/// dimension.
pub fn classify_equal_dim_pair(
    group: &FiniteGroup,
    ty: &RamificationType,
    h: &Subgroup,
) -> Result<Option<Lemma2Case>> {
    if h.order() == group.order() {
        return Err(Error::InvalidInput("subgroup must be proper".into()));
    }
    let res = restrict_type(group, ty, h)?;
    let sig_g = ty.signature(group);
    let (dg, dh) = (delta(&sig_g), delta(&res.signature));
    if dg > dh {
        return Err(Error::InternalContradiction(format!(
            "restriction lowered the dimension from {dg} to {dh}"
        )));
    }
    if dg < dh {
        return Ok(None);
    }
    let n = h.index();
    let h0 = res.signature.g0;
    let s = res.signature.r();
    let r = sig_g.r();
    let c = sig_g.periods.clone();
    let d = res.signature.periods.clone();
    let case = |tag| Lemma2Case {
        tag,
        n,
        h0,
        s,
        r,
        c: c.clone(),
        d: d.clone(),
    };
    if ty.g0 != 0 {
        return Err(Error::InternalContradiction(format!(
            "equal dimensions with orbit genus {}",
            ty.g0
        )));
    }
    let class_inside = |i: usize| -> bool {
        group.conjugacy_classes()[ty.classes[i]]
            .members
            .iter()
            .all(|&x| h.contains(x))
    };
    let none_inside = (0..r).all(|i| !class_inside(i));
    let labelings = sorted_labelings(&c);
    // classes listed in signature order under some labeling
    let any_labeling = |pred: &dyn Fn(&[usize]) -> bool| labelings.iter().any(|l| pred(l));

    match dg {
        3 => {
            if n == 2 && h0 == 2 && s == 0 && r == 6 && c.iter().all(|&x| x == 2) && none_inside {
                return Ok(Some(case(Lemma2Tag::I)));
            }
        }
        2 => {
            if n == 2
                && h0 == 1
                && s == 2
                && r == 5
                && c[..4].iter().all(|&x| x == 2)
                && any_labeling(&|l| l[..4].iter().all(|&i| !class_inside(i)))
                && d == vec![c[4], c[4]]
            {
                return Ok(Some(case(Lemma2Tag::II)));
            }
        }
        1 => {
            if n == 2
                && h0 == 1
                && s == 1
                && r == 4
                && none_inside
                && c[..3].iter().all(|&x| x == 2)
                && c[3] % 2 == 0
                && d == vec![c[3] / 2]
            {
                return Ok(Some(case(Lemma2Tag::IIIa)));
            }
            if n == 2
                && h0 == 0
                && s == 4
                && r == 4
                && c[0] == 2
                && c[1] == 2
                && any_labeling(&|l| class_inside(l[2]) && class_inside(l[3]))
                && d == sorted(vec![c[2], c[2], c[3], c[3]])
            {
                return Ok(Some(case(Lemma2Tag::IIIb)));
            }
            if h0 == 0
                && s == 4
                && r == 4
                && c[..3].iter().all(|&x| x == 2)
                && any_labeling(&|l| class_inside(l[3]))
                && n == 4
                && h.is_normal(group)
                && group.elements().all(|x| h.contains(group.mul(x, x)))
                && d == vec![c[3]; 4]
            {
                return Ok(Some(case(Lemma2Tag::IIIc)));
            }
        }
        0 => {
            if !(h0 == 0 && s == 3 && r == 3) {
                return Err(Error::InternalContradiction(format!(
                    "equal dimension 0 with h0={h0}, s={s}, r={r}"
                )));
            }
            if n == 2 && c[0] == 2 {
                let ok = any_labeling(&|l| {
                    [(1usize, 2usize), (2, 1)].iter().any(|&(i, j)| {
                        c[i] > 2
                            && c[i] % 2 == 0
                            && class_inside(l[j])
                            && d == sorted(vec![c[i] / 2, c[j], c[j]])
                    })
                });
                if ok {
                    return Ok(Some(case(Lemma2Tag::IVa)));
                }
            }
            if n == 3 || n == 4 || (6..=10).contains(&n) {
                let image = coset_action(group, h).image_group(2048)?;
                let g = ty.genus;
                if n == 3 && image.order() == 3 {
                    let ok = (0..3).any(|i| {
                        class_inside(i)
                            && (0..3).filter(|&j| j != i).all(|j| c[j] == 3)
                            && d == vec![c[i]; 3]
                    });
                    if ok {
                        return Ok(Some(case(Lemma2Tag::IVb)));
                    }
                }
                if n == 3
                    && image.order() == 6
                    && c[0] == 2
                    && c[1] == 3
                    && c[2] > 2
                    && c[2] % 2 == 0
                    && d == sorted(vec![2, c[2] / 2, c[2]])
                {
                    return Ok(Some(case(Lemma2Tag::IVc)));
                }
                if n == 4
                    && c[0] == 2
                    && c[1] == 3
                    && c[2] > 3
                    && c[2] % 3 == 0
                    && d == sorted(vec![3, c[2] / 3, c[2]])
                    && quotient_is(&image, Constructor::Alternating(4))
                {
                    return Ok(Some(case(Lemma2Tag::IVd)));
                }
                let fixed = [
                    (
                        6,
                        Constructor::Pgl2(5),
                        [2, 4, 5],
                        [4, 4, 5],
                        3,
                        Lemma2Tag::IVe,
                    ),
                    (
                        8,
                        Constructor::Psl2(7),
                        [2, 3, 7],
                        [3, 3, 7],
                        2,
                        Lemma2Tag::IVf,
                    ),
                    (
                        9,
                        Constructor::Psl2(8),
                        [2, 3, 7],
                        [2, 7, 7],
                        6,
                        Lemma2Tag::IVg,
                    ),
                    (
                        10,
                        Constructor::Pgl2(9),
                        [2, 3, 8],
                        [3, 8, 8],
                        15,
                        Lemma2Tag::IVh,
                    ),
                ];
                for (nn, kind, cc, dd, modulus, tag) in fixed {
                    if n == nn
                        && c == cc
                        && d == dd
                        && g % modulus == 1 % modulus
                        && quotient_is(&image, kind)
                    {
                        return Ok(Some(case(tag)));
                    }
                }
            }
            return Ok(Some(case(Lemma2Tag::IViIndeterminate)));
        }
        _ => {}
    }
    Err(Error::InternalContradiction(format!(
        "equal dimension {dg} restriction (n={n}, h0={h0}, s={s}, r={r}, c={c:?}, d={d:?}) matches no clause"
    )))
}

/// How a locus of `(A, type)` sits inside a locus of `(B, ·)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Inclusion {
    /// Some subgroup isomorphic to B restricts to B's signature.
    pub signature_level: bool,
    /// ... and to B's type, up to an isomorphism.
    pub class_level: bool,
}

/// Checks whether curves of type `a_type` for `a` are also curves of
/// signature `b_sig` (and type `b_type`, if given) for a subgroup of `a`
/// isomorphic to `b`.
pub fn locus_inclusion(
    a: &FiniteGroup,
    a_type: &RamificationType,
    b: &FiniteGroup,
    b_sig: &Signature,
    b_type: Option<&RamificationType>,
    lattice_cap: usize,
    aut_cap: usize,
) -> Result<Inclusion> {
    let mut found = Inclusion::default();
    if b.order() >= a.order() || a.order() % b.order() != 0 {
        return Ok(found);
    }
    let lattice = crate::group::subgroup_lattice(a, lattice_cap)?;
    for s in lattice.iter().filter(|s| s.order() == b.order()) {
        let res = restrict_type(a, a_type, s)?;
        if res.signature != *b_sig {
            continue;
        }
        let Some(iso) = find_isomorphism(&res.subgroup, b) else {
            continue;
        };
        found.signature_level = true;
        let Some(bt) = b_type else {
            return Ok(found);
        };
        // induced classes carried over to B, compared up to Aut(B)
        let mapped: Vec<usize> = res
            .induced
            .classes
            .iter()
            .map(|&c| b.class_of(iso.apply(res.subgroup.conjugacy_classes()[c].representative)))
            .collect();
        let auts = crate::group::automorphism_group(b, aut_cap)?;
        let hit = auts.iter().any(|phi| {
            let mut image: Vec<usize> = mapped
                .iter()
                .map(|&c| b.class_of(phi.apply(b.conjugacy_classes()[c].representative)))
                .collect();
            image.sort_unstable();
            image == bt.classes
        });
        if hit {
            found.class_level = true;
            return Ok(found);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::testing::*;
    use crate::group::{derived_subgroup, subgroup_lattice};

    #[test]
    fn restriction_to_whole_group_is_identity() {
        let g = s3();
        let ty = RamificationType::from_labels(&g, 0, "2A,2A,2A,2A,3A").unwrap();
        let res = restrict_type(&g, &ty, &Subgroup::whole(&g)).unwrap();
        assert_eq!(res.signature, ty.signature(&g));
        assert_eq!(res.induced.classes.len(), ty.classes.len());
    }

    #[test]
    fn s3_to_a3() {
        let g = s3();
        let ty = RamificationType::from_labels(&g, 0, "2A,2A,2A,2A,3A").unwrap();
        assert_eq!(ty.genus, 3);
        let a3 = derived_subgroup(&g);
        let res = restrict_type(&g, &ty, &a3).unwrap();
        assert_eq!(res.signature, Signature::new(1, vec![3, 3]).unwrap());
        // the two order-3 classes of A3 are distinct
        assert_ne!(res.induced.classes[0], res.induced.classes[1]);
        let case = classify_equal_dim_pair(&g, &ty, &a3).unwrap().unwrap();
        assert_eq!(case.tag, Lemma2Tag::II);
        assert_eq!((case.n, case.h0, case.s, case.r), (2, 1, 2, 5));
    }

    #[test]
    fn klein_quartic_group_to_order_21() {
        let g = klein_quartic_group();
        let ty = RamificationType::from_labels(&g, 0, "2A,3A,7A").unwrap();
        let h = subgroup_lattice(&g, 512)
            .unwrap()
            .iter()
            .find(|s| s.order() == 21)
            .unwrap()
            .clone();
        let res = restrict_type(&g, &ty, &h).unwrap();
        assert_eq!(res.signature, Signature::new(0, vec![3, 3, 7]).unwrap());
        let case = classify_equal_dim_pair(&g, &ty, &h).unwrap().unwrap();
        assert_eq!(case.tag, Lemma2Tag::IVf);
    }

    #[test]
    fn c14_to_c7() {
        let g = cyclic(14);
        let c7 = Subgroup::generated(&g, &[g.pow(g.generators()[0], 2)]);
        assert_eq!(c7.order(), 7);
        // classes: one element each; pick orders 2, 7, 14 with product 1
        let x = g.generators()[0];
        let (a, b) = (g.pow(x, 7), g.pow(x, 2));
        let c = g.inv(g.mul(a, b));
        assert_eq!(g.element_order(c), 14);
        let ty = RamificationType::new(&g, 0, vec![g.class_of(a), g.class_of(b), g.class_of(c)])
            .unwrap();
        assert_eq!(ty.genus, 3);
        let case = classify_equal_dim_pair(&g, &ty, &c7).unwrap().unwrap();
        assert_eq!(case.tag, Lemma2Tag::IVa);
        assert_eq!(case.d, vec![7, 7, 7]);
    }

    #[test]
    fn strictly_larger_dimension_gives_none() {
        // C2 acting on itself trivially restricted: S3 (2,2,2,2,3) to a C2
        let g = s3();
        let ty = RamificationType::from_labels(&g, 0, "2A,2A,2A,2A,3A").unwrap();
        let c2 = Subgroup::generated(&g, &[g.conjugacy_classes()[1].representative]);
        assert_eq!(classify_equal_dim_pair(&g, &ty, &c2).unwrap(), None);
    }

    #[test]
    fn restriction_log_is_complete() {
        let g = klein_quartic_group();
        let ty = RamificationType::from_labels(&g, 0, "2A,3A,7A").unwrap();
        let h = subgroup_lattice(&g, 512)
            .unwrap()
            .iter()
            .find(|s| s.order() == 24)
            .unwrap()
            .clone();
        let res = restrict_type(&g, &ty, &h).unwrap();
        // per class, orbit lengths add up to the index
        for pos in 0..3 {
            let total: u32 = res
                .log
                .iter()
                .filter(|e| e.class_position == pos)
                .map(|e| e.m)
                .sum();
            assert_eq!(total as usize, h.index());
        }
    }
}
