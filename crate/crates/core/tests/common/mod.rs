//! Randomized invariants shared by the property suite and the acceptance
//! run.

#![allow(dead_code)]

use std::sync::OnceLock;

use curveaut::braid::{braid_move, is_nielsen_tuple, Direction};
use curveaut::catalog::{construct_named, Catalog, Constructor};
use curveaut::covers::{delta, rh_genus, GeneratingSystem, RamificationType};
use curveaut::fullness::decide_nonexceptional_type;
use curveaut::group::{automorphism_group, subgroup_lattice, Elem, FiniteGroup};
use curveaut::restriction::{restrict_type, restrict_type_with};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn groups() -> &'static Vec<FiniteGroup> {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        Catalog::bundled()
            .entries()
            .iter()
            .chain(Catalog::genus3().entries())
            .filter(|e| e.group.order() <= 200)
            .map(|e| e.group.clone())
            .collect()
    })
}

fn pick(group: &FiniteGroup, seed: u64) -> Elem {
    1 + (seed as usize) % (group.order() - 1)
}

/// A generating system built from the group's generators, extra random
/// elements and a closing element, so the relation holds by construction.
pub fn random_system(group: &FiniteGroup, h0: usize, seeds: &[u64]) -> GeneratingSystem {
    let mut it = seeds.iter().copied().cycle();
    let hyperbolic: Vec<(Elem, Elem)> = (0..h0)
        .map(|_| {
            (
                pick(group, it.next().unwrap()),
                pick(group, it.next().unwrap()),
            )
        })
        .collect();
    let mut elliptic: Vec<Elem> = group.generators().to_vec();
    elliptic.extend(seeds.iter().skip(2 * h0).map(|&s| pick(group, s)));
    let mut prefix = group.identity();
    for &(a, b) in &hyperbolic {
        prefix = group.mul(prefix, group.comm(a, b));
    }
    let closing = group.inv(group.mul(prefix, group.product(&elliptic)));
    elliptic.push(closing);
    elliptic.retain(|&x| x != group.identity());
    if h0 == 0 && elliptic.len() < 3 {
        let x = pick(group, seeds[0]);
        elliptic.push(x);
        elliptic.push(group.inv(x));
    }
    GeneratingSystem {
        hyperbolic,
        elliptic,
    }
}

pub type SystemInput = (usize, usize, Vec<u64>);

pub fn arb_system() -> impl Strategy<Value = SystemInput> {
    (
        0..groups().len(),
        0usize..3,
        prop::collection::vec(any::<u64>(), 1..5),
    )
}

pub fn check_system((gi, h0, seeds): SystemInput) -> Result<(), TestCaseError> {
    let g = &groups()[gi];
    let sys = random_system(g, h0, &seeds);
    prop_assert!(sys.is_valid(g));
    prop_assert_eq!(sys.relation_product(g), g.identity());
    let sig = sys.signature(g);
    let genus = rh_genus(g.order(), &sig);
    prop_assert!(genus.is_some(), "{} has no integral genus", sig);
    prop_assert_eq!(sys.genus(g), genus);
    prop_assert_eq!(delta(&sig) as i64, 3 * sig.g0 as i64 - 3 + sig.r() as i64);
    let ty = RamificationType::of_system(g, genus.unwrap(), &sys);
    prop_assert_eq!(ty.signature(g), sig);
    Ok(())
}

pub type BraidInput = (usize, Vec<u64>, Vec<usize>);

/// Ten moves per case.
pub fn arb_braid() -> impl Strategy<Value = BraidInput> {
    (
        0..groups().len(),
        prop::collection::vec(any::<u64>(), 1..4),
        prop::collection::vec(any::<usize>(), 10),
    )
}

pub fn check_braid((gi, seeds, moves): BraidInput) -> Result<(), TestCaseError> {
    let g = &groups()[gi];
    let mut t = random_system(g, 0, &seeds).elliptic;
    let mut classes: Vec<usize> = t.iter().map(|&x| g.class_of(x)).collect();
    classes.sort_unstable();
    for m in moves {
        let i = m % (t.len() - 1);
        let next = braid_move(g, &t, i, Direction::Forward);
        prop_assert!(is_nielsen_tuple(g, &next));
        prop_assert_eq!(braid_move(g, &next, i, Direction::Backward), t.clone());
        let mut c: Vec<usize> = next.iter().map(|&x| g.class_of(x)).collect();
        c.sort_unstable();
        prop_assert_eq!(&c, &classes);
        t = next;
    }
    Ok(())
}

pub type AutInput = (usize, usize, u64, u64);

pub fn arb_aut() -> impl Strategy<Value = AutInput> {
    (
        0..groups().len(),
        any::<usize>(),
        any::<u64>(),
        any::<u64>(),
    )
}

pub fn check_aut((gi, k, a, b): AutInput) -> Result<(), TestCaseError> {
    let g = &groups()[gi];
    let Ok(auts) = automorphism_group(g, 1024) else {
        return Ok(());
    };
    let phi = &auts[k % auts.len()];
    let (x, y) = (pick(g, a), pick(g, b));
    prop_assert_eq!(phi.apply(g.mul(x, y)), g.mul(phi.apply(x), phi.apply(y)));
    prop_assert!(phi.is_bijective());
    Ok(())
}

pub type RestrictionInput = (SystemInput, usize, Vec<u64>);

pub fn arb_restriction() -> impl Strategy<Value = RestrictionInput> {
    (
        arb_system(),
        any::<usize>(),
        prop::collection::vec(any::<u64>(), 8),
    )
}

pub fn check_restriction(
    ((gi, h0, seeds), si, conj): RestrictionInput,
) -> Result<(), TestCaseError> {
    let g = &groups()[gi];
    let sys = random_system(g, h0, &seeds);
    let genus = sys.genus(g).unwrap();
    let ty = RamificationType::of_system(g, genus, &sys);
    let Ok(lattice) = subgroup_lattice(g, 512) else {
        return Ok(());
    };
    let h = &lattice[si % lattice.len()];
    let res = restrict_type(g, &ty, h).unwrap();
    prop_assert_eq!(rh_genus(h.order(), &res.signature), Some(genus));

    // other class members and twisted coset representatives
    let gammas: Vec<Elem> = ty
        .classes
        .iter()
        .zip(conj.iter().cycle())
        .map(|(&c, &s)| {
            let members = &g.conjugacy_classes()[c].members;
            members[s as usize % members.len()]
        })
        .collect();
    let twist: Vec<Elem> = conj
        .iter()
        .map(|&s| h.elements()[s as usize % h.order()])
        .collect();
    let other = restrict_type_with(g, &ty, h, &gammas, &twist).unwrap();
    prop_assert_eq!(&other.signature, &res.signature);
    prop_assert_eq!(&other.induced, &res.induced);
    Ok(())
}

/// Runs a property outside the proptest macro; the error names the first
/// minimal failure.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

/// Abelian groups of order `2..=n`, one per invariant factor list
/// `d₁ | d₂ | …`.
pub fn abelian_groups_up_to(n: usize) -> Vec<FiniteGroup> {
    fn extend(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        let last = cur.last().copied().unwrap_or(1);
        let product: usize = cur.iter().product();
        for d in (last.max(2)..)
            .step_by(last)
            .take_while(|d| product * d <= n)
        {
            cur.push(d);
            extend(n, cur, out);
            cur.pop();
        }
    }
    let mut factors = Vec::new();
    extend(n, &mut Vec::new(), &mut factors);
    factors
        .into_iter()
        .map(|fs| {
            let mut it = fs.into_iter().map(Constructor::Cyclic);
            let first = it.next().unwrap();
            let kind = it.fold(first, |acc, c| {
                Constructor::DirectProduct(Box::new(acc), Box::new(c))
            });
            construct_named(&kind, 4096).unwrap()
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Decides every `(1; c, c)` type of every abelian group of order at most
/// `n`; returns how many types had systems, or the first full one.
pub fn abelian_one_handle_two_points(n: usize) -> Result<usize, String> {
    let mut decided = 0;
    for g in abelian_groups_up_to(n) {
        // x -> x^k is an automorphism for k prime to the exponent, so one
        // generator per cyclic subgroup covers every type
        let mut seen = vec![false; g.order()];
        for x in g.elements().skip(1) {
            if seen[x] {
                continue;
            }
            let o = g.element_order(x) as i64;
            for k in (1..o).filter(|&k| gcd(k, o) == 1) {
                seen[g.pow(x, k)] = true;
            }
            let ty = RamificationType::new(&g, 1, vec![g.class_of(x), g.class_of(g.inv(x))])
                .map_err(|e| e.to_string())?;
            match decide_nonexceptional_type(&g, &ty, 1 << 26) {
                Ok(v) if v.is_not_full() => decided += 1,
                Ok(v) => {
                    return Err(format!(
                        "order {} type {}: {}",
                        g.order(),
                        ty.labels(&g),
                        v.keyword()
                    ))
                }
                // the group needs more than three generators
                Err(curveaut::Error::InvalidInput(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(decided)
}
