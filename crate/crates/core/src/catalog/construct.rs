use crate::error::{Error, Result};
use crate::group::{
    close_generators, extend_to_automorphism, Elem, FiniteGroup, GroupMap, Permutation, WordTree,
};

/// A recipe for one of the standard groups.
#[derive(Clone, Debug)]
pub enum Constructor {
    Cyclic(usize),
    /// Dihedral group of the given order (`Dihedral(8)` is the square's group).
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Psl2(usize),
    Pgl2(usize),
    DirectProduct(Box<Constructor>, Box<Constructor>),
    /// `N ⋊ K` where `K`'s generator `i` acts on `N` as the automorphism
    /// sending `N`'s generators to `action[i]`, on the right:
    /// `(n₁,k₁)(n₂,k₂) = (n₁^{k₂} n₂, k₁k₂)`.
    SemidirectProduct {
        base: Box<Constructor>,
        acting: Box<Constructor>,
        action: Vec<Vec<Elem>>,
    },
}

pub fn construct_named(kind: &Constructor, cap: usize) -> Result<FiniteGroup> {
    let gens = generators(kind, cap)?;
    close_generators(&gens, cap)
}

fn cycle(points: impl IntoIterator<Item = usize>) -> Vec<usize> {
    points.into_iter().collect()
}

fn generators(kind: &Constructor, cap: usize) -> Result<Vec<Permutation>> {
    let unsupported = || Error::UnsupportedParams(format!("{kind:?}"));
    match *kind {
        Constructor::Cyclic(n) => {
            if n == 0 {
                return Err(unsupported());
            }
            if n == 1 {
                return Ok(vec![Permutation::identity(1)]);
            }
            Permutation::from_cycles(n, &[cycle(0..n)]).map(|p| vec![p])
        }
        Constructor::Dihedral(order) => {
            if order < 2 || order % 2 != 0 {
                return Err(unsupported());
            }
            let n = order / 2;
            match n {
                1 => generators(&Constructor::Cyclic(2), cap),
                2 => Ok(vec![
                    Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                    Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
                ]),
                _ => {
                    let rotation = Permutation::from_cycles(n, &[cycle(0..n)])?;
                    let pairs: Vec<Vec<usize>> = (1..n)
                        .filter(|&i| i < n - i)
                        .map(|i| vec![i, n - i])
                        .collect();
                    Ok(vec![rotation, Permutation::from_cycles(n, &pairs)?])
                }
            }
        }
        Constructor::Symmetric(n) => match n {
            0 => Err(unsupported()),
            1 => Ok(vec![Permutation::identity(1)]),
            2 => Ok(vec![Permutation::from_cycles(2, &[vec![0, 1]])?]),
            _ => Ok(vec![
                Permutation::from_cycles(n, &[cycle(0..n)])?,
                Permutation::from_cycles(n, &[vec![0, 1]])?,
            ]),
        },
        Constructor::Alternating(n) => match n {
            0 => Err(unsupported()),
            1..=2 => Ok(vec![Permutation::identity(n)]),
            _ => (2..n)
                .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]))
                .collect(),
        },
        Constructor::Psl2(q) => projective_line_generators(q, false).ok_or_else(unsupported),
        Constructor::Pgl2(q) => projective_line_generators(q, true).ok_or_else(unsupported),
        Constructor::DirectProduct(ref a, ref b) => {
            let ga = generators(a, cap)?;
            let gb = generators(b, cap)?;
            let (da, db) = (ga[0].degree(), gb[0].degree());
            let mut out: Vec<Permutation> = ga.iter().map(|p| p.shifted(0, da + db)).collect();
            out.extend(gb.iter().map(|p| p.shifted(da, da + db)));
            Ok(out)
        }
        Constructor::SemidirectProduct {
            ref base,
            ref acting,
            ref action,
        } => semidirect_generators(base, acting, action, cap),
    }
}

fn semidirect_generators(
    base: &Constructor,
    acting: &Constructor,
    action: &[Vec<Elem>],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let n = construct_named(base, cap)?;
    let k = construct_named(acting, cap)?;
    let bad = |why: &str| Error::UnsupportedParams(format!("semidirect product action: {why}"));
    if action.len() != k.generators().len() {
        return Err(bad("one automorphism per acting generator required"));
    }
    if n.order() * k.order() > cap {
        return Err(Error::CapExceeded {
            what: "group order",
            limit: cap,
        });
    }
    let mut phis = Vec::new();
    for images in action {
        let phi = extend_to_automorphism(&n, n.generators(), images)?
            .ok_or_else(|| bad("generator images do not define an automorphism"))?;
        phis.push(phi);
    }
    // φ_k for every k ∈ K, as a right action: φ_{ks} = φ_k then φ_s
    let tree = WordTree::new(&k, k.generators())?;
    let mut phi_of: Vec<Option<GroupMap>> = vec![None; k.order()];
    phi_of[0] = Some(GroupMap::identity(&n));
    let mut order: Vec<Elem> = k.elements().collect();
    order.sort_by_key(|&x| tree.word(x).len());
    for &x in &order[1..] {
        let w = tree.word(x);
        let mut phi = GroupMap::identity(&n);
        for &s in &w {
            phi = phi.then(&phis[s]);
        }
        phi_of[x] = Some(phi);
    }
    let phi_of: Vec<GroupMap> = phi_of.into_iter().map(|p| p.expect("filled")).collect();
    for x in k.elements() {
        for (i, &s) in k.generators().iter().enumerate() {
            if phi_of[k.mul(x, s)] != phi_of[x].then(&phis[i]) {
                return Err(bad(
                    "generator actions violate a relation of the acting group",
                ));
            }
        }
    }

    // regular representation on pairs (n, k), point index n·|K| + k
    let kn = k.order();
    let degree = n.order() * kn;
    let mul = |(n1, k1): (Elem, Elem), (n2, k2): (Elem, Elem)| -> (Elem, Elem) {
        (n.mul(phi_of[k2].apply(n1), n2), k.mul(k1, k2))
    };
    let right = |g: (Elem, Elem)| -> Result<Permutation> {
        let images = (0..degree)
            .map(|p| {
                let (a, b) = mul((p / kn, p % kn), g);
                a * kn + b
            })
            .collect();
        Permutation::from_images(images)
    };
    let mut out = Vec::new();
    for &s in n.generators() {
        out.push(right((s, 0))?);
    }
    for &s in k.generators() {
        out.push(right((0, s))?);
    }
    Ok(out)
}

/// GF(q) for the prime powers we need, with elements encoded as base-`p`
/// digit strings of polynomial coefficients.
struct Field {
    p: usize,
    k: u32,
    /// `x^k` reduced: coefficients of the remainder, low degree first.
    reduction: Vec<usize>,
}

impl Field {
    fn new(q: usize) -> Option<Field> {
        let (p, k, reduction) = match q {
            2 | 3 | 5 | 7 => (q, 1, vec![]),
            4 => (2, 2, vec![1, 1]),    // x² = x + 1
            8 => (2, 3, vec![1, 1, 0]), // x³ = x + 1
            9 => (3, 2, vec![2, 0]),    // x² = -1
            _ => return None,
        };
        Some(Field { p, k, reduction })
    }

    fn q(&self) -> usize {
        self.p.pow(self.k)
    }

    fn digits(&self, a: usize) -> Vec<usize> {
        (0..self.k).map(|i| (a / self.p.pow(i)) % self.p).collect()
    }

    fn number(&self, d: &[usize]) -> usize {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.number(&s)
    }

    fn neg(&self, a: usize) -> usize {
        let d: Vec<usize> = self
            .digits(a)
            .iter()
            .map(|&u| (self.p - u) % self.p)
            .collect();
        self.number(&d)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let k = self.k as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0usize; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % self.p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &r) in self.reduction.iter().enumerate() {
                prod[deg - k + i] = (prod[deg - k + i] + c * r) % self.p;
            }
        }
        self.number(&prod[..k])
    }

    fn inv(&self, a: usize) -> usize {
        (1..self.q())
            .find(|&b| self.mul(a, b) == 1)
            .expect("nonzero element")
    }

    fn primitive(&self) -> usize {
        (2..self.q())
            .find(|&a| {
                let mut x = a;
                let mut m = 1;
                while x != 1 {
                    x = self.mul(x, a);
                    m += 1;
                }
                m == self.q() - 1
            })
            .unwrap_or(1)
    }
}

/// Möbius transformations `x ↦ (ax + b)/(cx + d)` on GF(q) ∪ {∞}, with ∞
/// as point `q`.
fn mobius(f: &Field, [a, b, c, d]: [usize; 4]) -> Permutation {
    let q = f.q();
    let images = (0..=q)
        .map(|x| {
            let (num, den) = if x == q {
                (a, c)
            } else {
                (f.add(f.mul(a, x), b), f.add(f.mul(c, x), d))
            };
            if den == 0 {
                q
            } else {
                f.mul(num, f.inv(den))
            }
        })
        .collect();
    Permutation::from_images(images).expect("invertible matrix gives a bijection")
}

fn projective_line_generators(q: usize, projective_general: bool) -> Option<Vec<Permutation>> {
    let f = Field::new(q)?;
    // SL2 is generated by the elementary matrices; their images suffice.
    let mut gens = Vec::new();
    for t in 1..q {
        gens.push(mobius(&f, [1, t, 0, 1]));
        gens.push(mobius(&f, [1, 0, t, 1]));
    }
    if projective_general {
        gens.push(mobius(&f, [f.primitive(), 0, 0, 1]));
    }
    // -1/x as an explicit extra, harmless and handy for q = 2
    gens.push(mobius(&f, [0, f.neg(1), 1, 0]));
    Some(gens)
}
