use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::group::{center, derived_series_orders, derived_subgroup, FiniteGroup};

/// Isomorphism invariants of a group. Equal fingerprints are necessary, not
/// sufficient, for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    /// element order → number of elements of that order
    pub order_histogram: BTreeMap<u32, usize>,
    pub center_order: usize,
    pub derived_series: Vec<usize>,
    /// Prime-power orders of the cyclic factors of `G/G'`, ascending.
    pub abelianization: Vec<usize>,
    /// Class sizes, ascending.
    pub class_sizes: Vec<usize>,
}

pub fn fingerprint(group: &FiniteGroup) -> Fingerprint {
    let mut order_histogram = BTreeMap::new();
    for x in group.elements() {
        *order_histogram.entry(group.element_order(x)).or_insert(0) += 1;
    }
    let mut class_sizes: Vec<usize> = group.conjugacy_classes().iter().map(|c| c.size()).collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: group.order(),
        order_histogram,
        center_order: center(group).order(),
        derived_series: derived_series_orders(group),
        abelianization: abelian_invariants(group),
        class_sizes,
    }
}

/// Counts elements of `G/G'` of each order and reads off the primary
/// decomposition: for a `p`-group `A`, the number of cyclic factors of order
/// at least `p^k` is `log_p |A[p^k]| / |A[p^(k-1)]|`.
fn abelian_invariants(group: &FiniteGroup) -> Vec<usize> {
    let d = derived_subgroup(group);
    let quotient_order = group.order() / d.order();
    // order of the coset of every element, counted per coset
    let mut coset_orders: BTreeMap<usize, usize> = BTreeMap::new();
    for x in group.elements() {
        let mut y = x;
        let mut m = 1;
        while !d.contains(y) {
            y = group.mul(y, x);
            m += 1;
        }
        *coset_orders.entry(m).or_insert(0) += 1;
    }
    for count in coset_orders.values_mut() {
        *count /= d.order();
    }
    let torsion = |n: usize| -> usize {
        coset_orders
            .iter()
            .filter(|(&m, _)| n % m == 0)
            .map(|(_, &c)| c)
            .sum()
    };

    let mut out = Vec::new();
    let mut rest = quotient_order;
    let mut p = 2;
    while rest > 1 {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        while rest % p == 0 {
            rest /= p;
        }
        // at_least[k] = number of cyclic factors of order ≥ p^k
        let mut at_least = Vec::new();
        let mut pk = 1;
        loop {
            let lower = torsion(pk);
            pk *= p;
            let upper = torsion(pk);
            if upper == lower {
                break;
            }
            let mut ratio = upper / lower;
            let mut e = 0;
            while ratio > 1 {
                ratio /= p;
                e += 1;
            }
            at_least.push(e);
        }
        for (k, &count) in at_least.iter().enumerate() {
            let next = at_least.get(k + 1).copied().unwrap_or(0);
            for _ in 0..count - next {
                out.push(p.pow(k as u32 + 1));
            }
        }
    }
    out.sort_unstable();
    out
}

impl Fingerprint {
    /// Short deterministic label, used as the identifier of groups that are
    /// not in the catalog.
    pub fn label(&self) -> String {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        format!("{}#{:08x}", self.order, h.finish() as u32)
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order {} orders {{", self.order)?;
        for (k, (o, c)) in self.order_histogram.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}:{c}")?;
        }
        write!(
            f,
            "}} center {} derived {:?} abelianization {:?}",
            self.center_order, self.derived_series, self.abelianization
        )
    }
}
