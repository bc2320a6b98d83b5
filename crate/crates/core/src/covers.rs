//! Signatures, ramification types, Riemann–Hurwitz arithmetic and the search
//! for genus-g generating systems.
//!
//! A genus-g generating system of `G` is a tuple
//! `α₁,β₁,…,α_{g₀},β_{g₀},γ₁,…,γ_r` generating `G` with
//! `∏[αⱼ,βⱼ]·∏γᵢ = 1`, where `[a,b] = a⁻¹b⁻¹ab`, all `γᵢ ≠ 1`, and
//!
//! ```text
//! 2(g-1)/|G| = 2(g₀-1) + Σ (1 - 1/ord γᵢ)
//! ```

use std::fmt;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};

type Q = Ratio<i64>;

/// Orbit genus plus the ascending list of branch-point periods.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub g0: u32,
    pub periods: Vec<u32>,
}

impl Signature {
    /// Sorts the periods and checks `cᵢ ≥ 2`, `r ≥ 3` when `g₀ = 0` and
    /// `r ≥ 1` when `g₀ = 1`.
    pub fn new(g0: u32, mut periods: Vec<u32>) -> Result<Signature> {
        periods.sort_unstable();
        if periods.iter().any(|&c| c < 2) {
            return Err(Error::InvalidInput(format!(
                "periods must be ≥ 2, got {periods:?}"
            )));
        }
        let r = periods.len();
        if (g0 == 0 && r < 3) || (g0 == 1 && r < 1) {
            return Err(Error::InvalidInput(format!(
                "orbit genus {g0} needs more than {r} branch points"
            )));
        }
        Ok(Signature { g0, periods })
    }

    /// Genus-0 signature.
    pub fn spherical(periods: &[u32]) -> Result<Signature> {
        Signature::new(0, periods.to_vec())
    }

    pub fn r(&self) -> usize {
        self.periods.len()
    }

    /// `c₁,…,c_r` with repeated periods written as powers, e.g. `2^4,3`.
    pub fn periods_compact(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.periods.len() {
            let c = self.periods[i];
            let mut j = i;
            while j < self.periods.len() && self.periods[j] == c {
                j += 1;
            }
            if j - i >= 4 {
                parts.push(format!("{c}^{}", j - i));
            } else {
                parts.extend(std::iter::repeat(c.to_string()).take(j - i));
            }
            i = j;
        }
        parts.join(",")
    }

    /// Parses `2,3,7`, `g0=1;2,2,2,2`, `2^8` or `(0; 2,3,7)`.
    pub fn parse(text: &str) -> Result<(Option<u32>, Vec<u32>)> {
        let bad = || Error::InvalidInput(format!("cannot parse signature {text:?}"));
        let mut t = text.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            t = inner.trim();
        }
        let mut g0 = None;
        if let Some(rest) = t.strip_prefix("g0=") {
            let (num, tail) = rest.split_once([';', ' ', ':']).ok_or_else(bad)?;
            g0 = Some(num.trim().parse().map_err(|_| bad())?);
            t = tail.trim();
        } else if let Some((num, tail)) = t.split_once(';') {
            g0 = Some(num.trim().parse().map_err(|_| bad())?);
            t = tail.trim();
        }
        let mut periods = Vec::new();
        for tok in t.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match tok.split_once('^') {
                Some((c, k)) => {
                    let c: u32 = c.trim().parse().map_err(|_| bad())?;
                    let k: usize = k.trim().parse().map_err(|_| bad())?;
                    periods.extend(std::iter::repeat(c).take(k));
                }
                None => periods.push(tok.parse().map_err(|_| bad())?),
            }
        }
        periods.sort_unstable();
        Ok((g0, periods))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.g0, self.periods_compact())
    }
}

fn period_sum(periods: &[u32]) -> Q {
    periods
        .iter()
        .map(|&c| Q::from_integer(1) - Q::new(1, c as i64))
        .sum()
}

/// The genus `g` with `2(g-1)/|G| = 2(g₀-1) + Σ(1-1/cᵢ)`, if it is a
/// nonnegative integer.
pub fn rh_genus(order: usize, sig: &Signature) -> Option<u32> {
    let rhs = Q::from_integer(2 * (sig.g0 as i64 - 1)) + period_sum(&sig.periods);
    let g = Q::from_integer(1) + rhs * Q::from_integer(order as i64) / Q::from_integer(2);
    (g.is_integer() && *g.numer() >= 0).then(|| *g.numer() as u32)
}

/// The orbit genus solving the Riemann–Hurwitz relation, if it is a
/// nonnegative integer.
pub fn orbit_genus_of(genus: u32, order: usize, periods: &[u32]) -> Option<u32> {
    let lhs = Q::new(2 * (genus as i64 - 1), order as i64);
    let g0 = Q::from_integer(1) + (lhs - period_sum(periods)) / Q::from_integer(2);
    (g0.is_integer() && *g0.numer() >= 0).then(|| *g0.numer() as u32)
}

/// Curve genera handled by default when no genus is given.
pub const DEFAULT_GENUS_RANGE: std::ops::RangeInclusive<u32> = 2..=10;

/// The orbit genus of a signature given without one: the value solving the
/// Riemann–Hurwitz relation for `genus` when it is known, otherwise the
/// unique value whose genus lies in [`DEFAULT_GENUS_RANGE`].
pub fn resolve_orbit_genus(order: usize, periods: &[u32], genus: Option<u32>) -> Result<u32> {
    if let Some(g) = genus {
        return orbit_genus_of(g, order, periods).ok_or_else(|| {
            Error::InvalidInput(format!(
                "no orbit genus gives genus {g} for order {order} and these periods"
            ))
        });
    }
    let candidates: Vec<u32> = (0..=*DEFAULT_GENUS_RANGE.end())
        .filter(|&g0| {
            Signature::new(g0, periods.to_vec())
                .ok()
                .and_then(|sig| rh_genus(order, &sig))
                .is_some_and(|g| DEFAULT_GENUS_RANGE.contains(&g))
        })
        .collect();
    match candidates[..] {
        [g0] => Ok(g0),
        [] => Err(Error::InvalidInput(format!(
            "no orbit genus puts order {order} with these periods in genus 2..=10"
        ))),
        _ => Err(Error::InvalidInput(format!(
            "orbit genus is ambiguous (any of {candidates:?}); prefix the periods with g0=N;"
        ))),
    }
}

/// Dimension `3g₀ - 3 + r` of the locus.
pub fn delta(sig: &Signature) -> u32 {
    (3 * sig.g0 as i64 - 3 + sig.r() as i64).max(0) as u32
}

/// All signatures of genus-`genus` actions of a group of order `order`.
///
/// Periods divide the order and are at most `4g+2` (the largest order of an
/// automorphism of a genus-g curve). Sorted by (g₀, periods).
pub fn enumerate_admissible_signatures(genus: u32, order: usize) -> Vec<Signature> {
    let allowed: Vec<u32> = (2..=4 * genus + 2)
        .filter(|&c| order % c as usize == 0)
        .collect();
    enumerate_with_periods(genus, order, &allowed)
}

/// As [`enumerate_admissible_signatures`], restricted to periods that are
/// element orders of `group`.
pub fn admissible_signatures_for(genus: u32, group: &FiniteGroup) -> Vec<Signature> {
    let mut orders: Vec<u32> = group
        .element_orders()
        .iter()
        .copied()
        .filter(|&c| c >= 2)
        .collect();
    orders.sort_unstable();
    orders.dedup();
    orders.retain(|&c| c <= 4 * genus + 2);
    enumerate_with_periods(genus, group.order(), &orders)
}

fn enumerate_with_periods(genus: u32, order: usize, allowed: &[u32]) -> Vec<Signature> {
    let mut out = Vec::new();
    if genus < 2 {
        return out;
    }
    let lhs = Q::new(2 * (genus as i64 - 1), order as i64);
    let mut g0 = 0u32;
    loop {
        let target = lhs - Q::from_integer(2 * (g0 as i64 - 1));
        if target < Q::from_integer(0) {
            break;
        }
        let mut current = Vec::new();
        collect_periods(allowed, 0, target, &mut current, &mut |periods| {
            if let Ok(sig) = Signature::new(g0, periods.to_vec()) {
                out.push(sig);
            }
        });
        g0 += 1;
    }
    out.sort();
    out
}

fn collect_periods(
    allowed: &[u32],
    start: usize,
    remaining: Q,
    current: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    if remaining == Q::from_integer(0) {
        emit(current);
        return;
    }
    for (k, &c) in allowed.iter().enumerate().skip(start) {
        let term = Q::from_integer(1) - Q::new(1, c as i64);
        // terms only grow from here, and each is at least 1/2
        if term > remaining {
            break;
        }
        current.push(c);
        collect_periods(allowed, k, remaining - term, current, emit);
        current.pop();
    }
}

/// A genus, an orbit genus and an unordered multiset of nontrivial classes
/// of a fixed group, stored as sorted class indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RamificationType {
    pub genus: u32,
    pub g0: u32,
    pub classes: Vec<usize>,
}

impl RamificationType {
    pub fn new(group: &FiniteGroup, g0: u32, mut classes: Vec<usize>) -> Result<RamificationType> {
        classes.sort_unstable();
        let n = group.conjugacy_classes().len();
        if classes.iter().any(|&c| c == 0 || c >= n) {
            return Err(Error::InvalidInput(format!(
                "class indices {classes:?} must name nontrivial classes (1..{n})"
            )));
        }
        let periods: Vec<u32> = classes
            .iter()
            .map(|&c| group.conjugacy_classes()[c].element_order)
            .collect();
        let sig = Signature::new(g0, periods)?;
        let genus = rh_genus(group.order(), &sig)
            .filter(|&g| g >= 2)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{sig} gives no genus ≥ 2 for order {}",
                    group.order()
                ))
            })?;
        Ok(RamificationType { genus, g0, classes })
    }

    /// Parses class labels like `2A,3A,7A`.
    pub fn from_labels(group: &FiniteGroup, g0: u32, labels: &str) -> Result<RamificationType> {
        let classes = labels
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|l| {
                group
                    .class_by_label(l)
                    .ok_or_else(|| Error::InvalidInput(format!("no class labelled {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        RamificationType::new(group, g0, classes)
    }

    pub fn signature(&self, group: &FiniteGroup) -> Signature {
        Signature {
            g0: self.g0,
            periods: self
                .classes
                .iter()
                .map(|&c| group.conjugacy_classes()[c].element_order)
                .collect(),
        }
    }

    pub fn labels(&self, group: &FiniteGroup) -> String {
        self.classes
            .iter()
            .map(|&c| group.class_label(c))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The type of a system's elliptic elements.
    pub fn of_system(group: &FiniteGroup, genus: u32, sys: &GeneratingSystem) -> RamificationType {
        let mut classes: Vec<usize> = sys.elliptic.iter().map(|&x| group.class_of(x)).collect();
        classes.sort_unstable();
        RamificationType {
            genus,
            g0: sys.g0(),
            classes,
        }
    }
}

/// All types of the given signature (class multisets with matching orders).
pub fn types_for_signature(group: &FiniteGroup, sig: &Signature) -> Vec<RamificationType> {
    let Some(genus) = rh_genus(group.order(), sig) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut current = Vec::new();
    // class indices grow with element order, so nondecreasing index lists
    // are exactly the multisets
    fn rec(
        group: &FiniteGroup,
        periods: &[u32],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some((&c, rest)) = periods.split_first() else {
            out.push(current.clone());
            return;
        };
        let start = current.last().copied().unwrap_or(0);
        for (k, class) in group.conjugacy_classes().iter().enumerate().skip(start) {
            if class.element_order != c {
                continue;
            }
            current.push(k);
            rec(group, rest, current, out);
            current.pop();
        }
    }
    let mut raw = Vec::new();
    rec(group, &sig.periods, &mut current, &mut raw);
    for classes in raw {
        out.push(RamificationType {
            genus,
            g0: sig.g0,
            classes,
        });
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratingSystem {
    /// `(αⱼ, βⱼ)` for `j = 1..g₀`.
    pub hyperbolic: Vec<(Elem, Elem)>,
    /// `γ₁..γ_r`, all nontrivial.
    pub elliptic: Vec<Elem>,
}

impl GeneratingSystem {
    pub fn g0(&self) -> u32 {
        self.hyperbolic.len() as u32
    }

    pub fn elements(&self) -> Vec<Elem> {
        let mut out = Vec::with_capacity(2 * self.hyperbolic.len() + self.elliptic.len());
        for &(a, b) in &self.hyperbolic {
            out.push(a);
            out.push(b);
        }
        out.extend(&self.elliptic);
        out
    }

    /// `∏[αⱼ,βⱼ]·∏γᵢ`.
    pub fn relation_product(&self, group: &FiniteGroup) -> Elem {
        let mut p = 0;
        for &(a, b) in &self.hyperbolic {
            p = group.mul(p, group.comm(a, b));
        }
        for &c in &self.elliptic {
            p = group.mul(p, c);
        }
        p
    }

    pub fn signature(&self, group: &FiniteGroup) -> Signature {
        let mut periods: Vec<u32> = self
            .elliptic
            .iter()
            .map(|&x| group.element_order(x))
            .collect();
        periods.sort_unstable();
        Signature {
            g0: self.g0(),
            periods,
        }
    }

    /// The genus given by the Riemann–Hurwitz relation for this system.
    pub fn genus(&self, group: &FiniteGroup) -> Option<u32> {
        rh_genus(group.order(), &self.signature(group))
    }

    /// Checks the product relation, generation and nontrivial `γᵢ`.
    pub fn is_valid(&self, group: &FiniteGroup) -> bool {
        self.elliptic.iter().all(|&x| x != 0)
            && self.relation_product(group) == 0
            && group.generates(&self.elements())
    }

    /// Image under an element map (e.g. an automorphism).
    pub fn mapped(&self, f: impl Fn(Elem) -> Elem) -> GeneratingSystem {
        GeneratingSystem {
            hyperbolic: self.hyperbolic.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            elliptic: self.elliptic.iter().map(|&x| f(x)).collect(),
        }
    }
}

/// How the search treats simultaneous conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjugation {
    /// Report every system.
    All,
    /// Fix the first free element to a class representative; every system is
    /// conjugate to one reported.
    UpToInner,
}

/// Walks all generating systems with `g₀` handle pairs whose elliptic
/// elements lie in `positions[i]` (in that order). The last elliptic element
/// is solved from the product relation, not searched.
pub fn for_each_system(
    group: &FiniteGroup,
    g0: u32,
    positions: &[Vec<Elem>],
    conjugation: Conjugation,
    node_budget: u64,
    visit: &mut dyn FnMut(&GeneratingSystem) -> ControlFlow<()>,
) -> Result<()> {
    let n = group.order();
    let mut last_allowed = FixedBitSet::with_capacity(n);
    if let Some(last) = positions.last() {
        for &x in last {
            if x != 0 {
                last_allowed.insert(x);
            }
        }
    }
    let reps: Vec<Elem> = group
        .conjugacy_classes()
        .iter()
        .map(|c| c.representative)
        .collect();
    let mut search = Search {
        group,
        g0: g0 as usize,
        positions,
        last_allowed,
        conjugation,
        reps,
        nodes: 0,
        budget: node_budget,
        hyper: Vec::new(),
        ell: Vec::new(),
    };
    let _ = search.hyperbolic(0, visit)?;
    Ok(())
}

struct Search<'a> {
    group: &'a FiniteGroup,
    g0: usize,
    positions: &'a [Vec<Elem>],
    last_allowed: FixedBitSet,
    conjugation: Conjugation,
    reps: Vec<Elem>,
    nodes: u64,
    budget: u64,
    hyper: Vec<(Elem, Elem)>,
    ell: Vec<Elem>,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::CapExceeded {
                what: "generating-system search nodes",
                limit: self.budget as usize,
            });
        }
        Ok(())
    }

    fn prefix(&self) -> Elem {
        let g = self.group;
        let mut p = 0;
        for &(a, b) in &self.hyper {
            p = g.mul(p, g.comm(a, b));
        }
        for &c in &self.ell {
            p = g.mul(p, c);
        }
        p
    }

    fn first_choices(&self, candidates: &[Elem]) -> Vec<Elem> {
        if self.conjugation == Conjugation::UpToInner
            && self.hyper.is_empty()
            && self.ell.is_empty()
        {
            candidates
                .iter()
                .copied()
                .filter(|&x| self.reps.contains(&x))
                .collect()
        } else {
            candidates.to_vec()
        }
    }

    fn hyperbolic(
        &mut self,
        j: usize,
        visit: &mut dyn FnMut(&GeneratingSystem) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if j == self.g0 {
            return self.elliptic(0, visit);
        }
        let all: Vec<Elem> = self.group.elements().collect();
        let firsts = self.first_choices(&all);
        for a in firsts {
            for b in self.group.elements() {
                self.tick()?;
                self.hyper.push((a, b));
                let flow = self.hyperbolic(j + 1, visit)?;
                self.hyper.pop();
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn elliptic(
        &mut self,
        i: usize,
        visit: &mut dyn FnMut(&GeneratingSystem) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let r = self.positions.len();
        if r == 0 {
            return Ok(self.leaf(visit));
        }
        if i == r - 1 {
            let last = self.group.inv(self.prefix());
            if !self.last_allowed.contains(last) {
                return Ok(ControlFlow::Continue(()));
            }
            self.ell.push(last);
            let flow = self.leaf(visit);
            self.ell.pop();
            return Ok(flow);
        }
        let choices = self.first_choices(&self.positions[i]);
        for x in choices {
            if x == 0 {
                continue;
            }
            self.tick()?;
            self.ell.push(x);
            let flow = self.elliptic(i + 1, visit)?;
            self.ell.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn leaf(
        &mut self,
        visit: &mut dyn FnMut(&GeneratingSystem) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.ell.is_empty() && self.prefix() != 0 {
            return ControlFlow::Continue(());
        }
        let mut gens: Vec<Elem> = Vec::with_capacity(2 * self.hyper.len() + self.ell.len());
        for &(a, b) in &self.hyper {
            gens.push(a);
            gens.push(b);
        }
        gens.extend(&self.ell);
        if Subgroup::generated(self.group, &gens).order() != self.group.order() {
            return ControlFlow::Continue(());
        }
        visit(&GeneratingSystem {
            hyperbolic: self.hyper.clone(),
            elliptic: self.ell.clone(),
        })
    }
}

/// Orders positions for the search: smaller candidate sets first, the
/// largest one last so that it is solved rather than searched.
fn arrange(mut positions: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    positions.sort_by_key(|p| p.len());
    positions
}

/// What to search for.
#[derive(Clone, Debug)]
pub enum Target<'a> {
    Type(&'a RamificationType),
    Signature(&'a Signature),
}

fn positions_for(group: &FiniteGroup, target: &Target) -> (u32, Vec<Vec<Elem>>) {
    match target {
        Target::Type(t) => (
            t.g0,
            arrange(
                t.classes
                    .iter()
                    .map(|&c| group.conjugacy_classes()[c].members.clone())
                    .collect(),
            ),
        ),
        Target::Signature(s) => (
            s.g0,
            arrange(
                s.periods
                    .iter()
                    .map(|&c| {
                        group
                            .elements()
                            .filter(|&x| group.element_order(x) == c)
                            .collect()
                    })
                    .collect(),
            ),
        ),
    }
}

/// Generating systems for a type or signature, in search order, up to
/// `limit` of them. With [`Conjugation::UpToInner`] every system is conjugate
/// to one returned; an empty result certifies that none exists.
pub fn find_generating_systems(
    group: &FiniteGroup,
    target: Target,
    limit: Option<usize>,
    conjugation: Conjugation,
    node_budget: u64,
) -> Result<Vec<GeneratingSystem>> {
    let (g0, positions) = positions_for(group, &target);
    if let Target::Signature(s) = target {
        if rh_genus(group.order(), s).map_or(true, |g| g < 2) {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    for_each_system(
        group,
        g0,
        &positions,
        conjugation,
        node_budget,
        &mut |sys| {
            out.push(sys.clone());
            if limit.is_some_and(|l| out.len() >= l) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        },
    )?;
    Ok(out)
}

/// Whether some generating system of the target exists.
pub fn has_generating_system(
    group: &FiniteGroup,
    target: Target,
    node_budget: u64,
) -> Result<bool> {
    Ok(
        !find_generating_systems(group, target, Some(1), Conjugation::UpToInner, node_budget)?
            .is_empty(),
    )
}

/// All `(group index, signature)` pairs of genus `genus` with a generating
/// system. The groups are assumed pairwise non-isomorphic; the trivial group
/// is skipped.
pub fn signature_group_pairs(
    groups: &[&FiniteGroup],
    genus: u32,
    node_budget: u64,
) -> Result<Vec<(usize, Signature)>> {
    let mut out = Vec::new();
    for (k, g) in groups.iter().enumerate() {
        if g.order() == 1 {
            continue;
        }
        for sig in admissible_signatures_for(genus, g) {
            if has_generating_system(g, Target::Signature(&sig), node_budget)? {
                out.push((k, sig));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_genus_defaults() {
        assert_eq!(resolve_orbit_genus(54, &[2, 6, 9], None), Ok(0));
        assert_eq!(resolve_orbit_genus(2, &[2, 2, 2, 2], Some(3)), Ok(1));
        // C2 with four branch points: genus 1, 3, 5, ... as g0 grows
        assert!(resolve_orbit_genus(2, &[2, 2, 2, 2], None).is_err());
        assert!(resolve_orbit_genus(168, &[2, 3, 7], Some(4)).is_err());
    }
    use crate::group::testing::*;

    fn sig(g0: u32, p: &[u32]) -> Signature {
        Signature::new(g0, p.to_vec()).unwrap()
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(rh_genus(168, &sig(0, &[2, 3, 7])), Some(3));
        assert_eq!(rh_genus(2, &sig(0, &[2; 8])), Some(3));
        assert_eq!(rh_genus(120, &sig(0, &[2, 4, 5])), Some(4));
        assert_eq!(rh_genus(5, &sig(0, &[2, 3, 7])), None);
    }

    #[test]
    fn orbit_genus_examples() {
        assert_eq!(orbit_genus_of(3, 2, &[2; 8]), Some(0));
        assert_eq!(orbit_genus_of(3, 3, &[3, 3]), Some(1));
        assert_eq!(orbit_genus_of(3, 6, &[2, 2, 2, 2, 3]), Some(0));
        assert_eq!(orbit_genus_of(3, 7, &[2, 3]), None);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&sig(0, &[2, 3, 7])), 0);
        assert_eq!(delta(&sig(0, &[2; 8])), 5);
        assert_eq!(delta(&sig(0, &[2; 6])), 3);
        assert_eq!(delta(&sig(1, &[2, 2])), 2);
    }

    #[test]
    fn signature_validation_and_parsing() {
        assert!(Signature::new(0, vec![2, 3]).is_err());
        assert!(Signature::new(1, vec![]).is_err());
        assert!(Signature::new(2, vec![]).is_ok());
        assert!(Signature::new(0, vec![1, 2, 3]).is_err());
        assert_eq!(Signature::parse("2,3,7").unwrap(), (None, vec![2, 3, 7]));
        assert_eq!(Signature::parse("g0=1;2,2").unwrap(), (Some(1), vec![2, 2]));
        assert_eq!(Signature::parse("(0; 2^8)").unwrap(), (Some(0), vec![2; 8]));
        assert!(Signature::parse("2,x").is_err());
        assert_eq!(sig(0, &[2; 6]).to_string(), "(0; 2^6)");
        assert_eq!(sig(0, &[2, 2, 2, 3]).to_string(), "(0; 2,2,2,3)");
    }

    #[test]
    fn admissible_signatures() {
        assert_eq!(
            enumerate_admissible_signatures(3, 168),
            vec![sig(0, &[2, 3, 7])]
        );
        let two = enumerate_admissible_signatures(3, 2);
        assert_eq!(two, vec![sig(0, &[2; 8]), sig(1, &[2; 4]), sig(2, &[])]);
        assert!(enumerate_admissible_signatures(3, 169).is_empty());
        assert!(enumerate_admissible_signatures(4, 84 * 3 + 1).is_empty());
    }

    #[test]
    fn admissible_signatures_are_consistent() {
        for order in 1..=100 {
            for s in enumerate_admissible_signatures(4, order) {
                assert_eq!(rh_genus(order, &s), Some(4));
                assert_eq!(orbit_genus_of(4, order, &s.periods), Some(s.g0));
                assert!(s.periods.iter().all(|&c| order % c as usize == 0));
            }
        }
    }

    #[test]
    fn involution_system_is_forced() {
        let g = cyclic(2);
        let s = sig(0, &[2; 8]);
        let systems =
            find_generating_systems(&g, Target::Signature(&s), None, Conjugation::All, 1_000_000)
                .unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].elliptic, vec![1; 8]);
    }

    #[test]
    fn genus_below_two_yields_nothing() {
        let g = cyclic(3);
        let s = sig(1, &[3, 3]);
        assert_eq!(rh_genus(3, &s), Some(3));
        let s0 = Signature {
            g0: 0,
            periods: vec![3, 3],
        };
        assert!(
            find_generating_systems(&g, Target::Signature(&s0), None, Conjugation::All, 1000)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn klein_quartic_triples() {
        let g = klein_quartic_group();
        let s = sig(0, &[2, 3, 7]);
        let systems = find_generating_systems(
            &g,
            Target::Signature(&s),
            None,
            Conjugation::All,
            10_000_000,
        )
        .unwrap();
        // 2 classes of 7-elements, each contributing |G| triples
        assert_eq!(systems.len(), 2 * 168);
        for sys in &systems {
            assert!(sys.is_valid(&g));
            assert_eq!(sys.genus(&g), Some(3));
        }
        let up_to_inner = find_generating_systems(
            &g,
            Target::Signature(&s),
            None,
            Conjugation::UpToInner,
            10_000_000,
        )
        .unwrap();
        assert!(!up_to_inner.is_empty() && up_to_inner.len() < systems.len());
    }

    #[test]
    fn types_of_a_signature() {
        let g = klein_quartic_group();
        let types = types_for_signature(&g, &sig(0, &[2, 3, 7]));
        assert_eq!(types.len(), 2);
        assert_eq!(types[0].labels(&g), "2A,3A,7A");
        assert_eq!(types[1].labels(&g), "2A,3A,7B");
        let t = RamificationType::from_labels(&g, 0, "7A,2A,3A").unwrap();
        assert_eq!(t, types[0]);
        assert_eq!(t.genus, 3);
        // repeated periods give multisets, not sequences
        let v4 = group(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        assert_eq!(types_for_signature(&v4, &sig(0, &[2; 6])).len(), 28);
    }

    #[test]
    fn handle_pairs_are_searched() {
        // C2 acting with orbit genus 1 and four fixed points
        let g = cyclic(2);
        let s = sig(1, &[2; 4]);
        let systems =
            find_generating_systems(&g, Target::Signature(&s), None, Conjugation::All, 1_000_000)
                .unwrap();
        assert_eq!(systems.len(), 4);
        assert!(systems.iter().all(|s| s.is_valid(&g) && s.g0() == 1));
        // unramified double cover of a genus 2 curve
        let s2 = sig(2, &[]);
        let systems = find_generating_systems(
            &g,
            Target::Signature(&s2),
            None,
            Conjugation::All,
            1_000_000,
        )
        .unwrap();
        assert_eq!(systems.len(), 15);
    }

    #[test]
    fn node_budget_is_enforced() {
        let g = klein_quartic_group();
        let s = sig(0, &[2, 3, 7]);
        let err = find_generating_systems(&g, Target::Signature(&s), None, Conjugation::All, 10)
            .unwrap_err();
        assert!(err.is_cap_exceeded());
    }
}
