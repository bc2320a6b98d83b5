use super::{Elem, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest member index.
    pub representative: Elem,
    /// Sorted member indices.
    pub members: Vec<Elem>,
    pub element_order: u32,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Classes sorted by (element order, size, representative), plus the class
/// index of every element.
pub(super) fn compute(group: &FiniteGroup) -> (Vec<ConjugacyClass>, Vec<u16>) {
    let n = group.order();
    let mut class_of = vec![u16::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != u16::MAX {
            continue;
        }
        let id = classes.len() as u16;
        class_of[start] = id;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in group.generators() {
                let y = group.conj(x, s);
                if class_of[y] == u16::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: members[0],
            element_order: group.element_order(start),
            members,
        });
    }
    classes.sort_by_key(|c| (c.element_order, c.members.len(), c.representative));
    for (k, c) in classes.iter().enumerate() {
        for &x in &c.members {
            class_of[x] = k as u16;
        }
    }
    (classes, class_of)
}

/// `A`, `B`, ..., `Z`, `AA`, `AB`, ...
pub(super) fn letter(rank: usize) -> String {
    let mut out = Vec::new();
    let mut r = rank;
    loop {
        out.push(b'A' + (r % 26) as u8);
        if r < 26 {
            break;
        }
        r = r / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn cyclic_group_has_singleton_classes() {
        let g = cyclic(5);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert!(g.conjugacy_classes().iter().all(|c| c.size() == 1));
    }

    #[test]
    fn s3_class_sizes() {
        let g = s3();
        let sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn klein_quartic_group_classes() {
        let g = klein_quartic_group();
        let orders: Vec<u32> = g
            .conjugacy_classes()
            .iter()
            .map(|c| c.element_order)
            .collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 7, 7]);
        let total: usize = g.conjugacy_classes().iter().map(|c| c.size()).sum();
        assert_eq!(total, 168);
        let labels: Vec<String> = (0..6).map(|c| g.class_label(c)).collect();
        assert_eq!(labels, ["1A", "2A", "3A", "4A", "7A", "7B"]);
    }

    #[test]
    fn members_are_exactly_conjugates() {
        let g = klein_quartic_group();
        for c in g.conjugacy_classes() {
            let mut conj: Vec<Elem> = g.elements().map(|y| g.conj(c.representative, y)).collect();
            conj.sort_unstable();
            conj.dedup();
            assert_eq!(conj, c.members);
            assert!(c
                .members
                .iter()
                .all(|&x| g.element_order(x) == c.element_order));
        }
    }

    #[test]
    fn letters() {
        assert_eq!(letter(0), "A");
        assert_eq!(letter(25), "Z");
        assert_eq!(letter(26), "AA");
        assert_eq!(letter(27), "AB");
    }
}
