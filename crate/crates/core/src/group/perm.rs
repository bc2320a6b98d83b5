use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., degree-1}` stored as its image array.
///
/// Products are read left to right: `a.then(b)` maps `x` to `b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidInput(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u16).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles given as 0-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidInput(format!(
                        "point {} outside degree {degree}",
                        p + 1
                    )));
                }
                if touched[p] {
                    return Err(Error::InvalidInput(format!(
                        "point {} appears twice in cycle notation",
                        p + 1
                    )));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// Extends the permutation to a larger degree, fixing the new points.
    pub fn padded(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u16..degree as u16);
        Permutation { images }
    }

    /// Shifts the permutation onto the points `offset..offset+degree` of a
    /// permutation of `total` points.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u16> = (0..total as u16).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u16;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// Cycle notation with 1-based points, `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// Parses cycle notation with 1-based points, e.g. `(1 2)(3 4 5)` or
/// `(1,2)(3,4,5)`. An empty string or `()` is the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Permutation> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::InvalidInput(format!("expected '(' in {text:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::InvalidInput(format!("unclosed cycle in {text:?}")))?;
        let body = &open[..close];
        let mut cycle = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad point {tok:?} in {text:?}")))?;
            if p == 0 {
                return Err(Error::InvalidInput(format!(
                    "points are 1-based in {text:?}"
                )));
            }
            cycle.push(p - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = open[close + 1..].trim_start();
    }
    Permutation::from_cycles(degree, &cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn then_is_left_to_right() {
        let a = parse_cycles(3, "(1 2)").unwrap();
        let b = parse_cycles(3, "(2 3)").unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
    }

    #[test]
    fn inverse_and_identity() {
        let p = parse_cycles(5, "(1 3 5)(2 4)").unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(parse_cycles(4, "()").unwrap(), Permutation::identity(4));
    }

    #[test]
    fn display_round_trips() {
        let p = parse_cycles(7, "(1,2,3)(4,5,7)").unwrap();
        assert_eq!(parse_cycles(7, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(parse_cycles(3, "(1 x)").is_err());
        assert!(parse_cycles(3, "(1 4)").is_err());
        assert!(parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(parse_cycles(3, "(0 1)").is_err());
        assert!(parse_cycles(3, "1 2").is_err());
    }
}
