//! Permutations of the dart set `0..n`.
//!
//! A [`Permutation`] stores its image table. Composition follows the usual
//! right-to-left convention: `p.compose(&q)` applies `q` first, then `p`.

use std::fmt;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images(image: Vec<usize>) -> Result<Self, Error> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (d, &x) in image.iter().enumerate() {
            if x >= n {
                return Err(Error::NotAPermutation(format!(
                    "image of {d} is {x}, outside 0..{n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(format!("{x} is hit twice")));
            }
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation of `0..n` from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, Error> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &d) in cycle.iter().enumerate() {
                if d >= n {
                    return Err(Error::NotAPermutation(format!(
                        "cycle entry {d} outside 0..{n}"
                    )));
                }
                if std::mem::replace(&mut touched[d], true) {
                    return Err(Error::NotAPermutation(format!(
                        "{d} appears in two cycles"
                    )));
                }
                image[d] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn apply(&self, d: usize) -> usize {
        self.image[d]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (d, &x) in self.image.iter().enumerate() {
            inv[x] = d;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, Error> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: other.size(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&d| self.image[d]).collect(),
        })
    }

    /// `r ∘ self ∘ r⁻¹`, the same permutation written in the labels given by `r`.
    pub fn conjugate_by(&self, r: &Permutation) -> Result<Self, Error> {
        if self.size() != r.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: r.size(),
            });
        }
        let mut image = vec![0; self.size()];
        for d in 0..self.size() {
            image[r.apply(d)] = r.apply(self.apply(d));
        }
        Ok(Permutation { image })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(d, &x)| d == x)
    }

    /// Disjoint cycles, each starting at its least element, listed by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                cycle.push(d);
                d = self.image[d];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                d = self.image[d];
            }
        }
        count
    }

    /// Index of the cycle containing each point, cycles numbered as in [`Permutation::cycles`].
    pub fn cycle_index(&self) -> Vec<usize> {
        let mut index = vec![usize::MAX; self.size()];
        for (i, cycle) in self.cycles().iter().enumerate() {
            for &d in cycle {
                index[d] = i;
            }
        }
        index
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, fixed points included: `(0 1)(2)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.image.is_empty() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, d) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{d}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_orbits_are_singletons() {
        let p = Permutation::identity(4);
        assert_eq!(p.cycles(), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn involution_orbits() {
        let p = Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn single_cycle() {
        let p = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.cycle_count(), 1);
    }

    #[test]
    fn cycles_start_at_least_element() {
        let p = Permutation::from_cycles(5, &[&[3, 1, 4]]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0], vec![1, 4, 3], vec![2]]);
        assert_eq!(p.to_string(), "(0)(1 4 3)(2)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let p = Permutation::from_cycles(6, &[&[0, 3, 5], &[1, 2]]).unwrap();
        assert_eq!(p.inverse().inverse(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        let q = Permutation::from_cycles(6, &[&[0, 1]]).unwrap();
        // q first, then p
        assert_eq!(p.compose(&q).unwrap().apply(0), p.apply(1));
        assert!(p.compose(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let r = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(
            p.conjugate_by(&r).unwrap(),
            Permutation::from_cycles(3, &[&[0, 2]]).unwrap()
        );
    }
}
