//! Canonical codes for unrooted, orientation-preserving isomorphism classes.
//!
//! For every choice of root dart the map is traversed breadth-first, stepping
//! along `sigma` before `alpha`, and darts are numbered in order of first
//! visit. The traversal emits, per dart in that order, the numbers of its
//! `sigma`- and `alpha`-images (preceded by its vertex color for colored
//! maps). The code is the lexicographic minimum over roots; the number of
//! roots attaining it is the order of the automorphism group.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::map::{Color, ColoredMap, OrientedMap};
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalCode {
    words: Vec<u32>,
    automorphisms: usize,
    colored: bool,
}

impl CanonicalCode {
    pub fn words(&self) -> &[u32] {
        &self.words
    }

    /// Number of root darts realizing the minimal encoding.
    pub fn automorphism_count(&self) -> usize {
        self.automorphisms
    }

    pub fn is_colored(&self) -> bool {
        self.colored
    }
}

impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.cmp(&other.words)
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({self}, aut={})", self.automorphisms)
    }
}

/// Dotted decimal rendering, e.g. `1.8.1.1.2.0…`: colored flag, dart count,
/// then the per-dart encoding.
impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Deserialize)]
struct CodeText(String);

impl<'de> Deserialize<'de> for CanonicalCode {
    /// Restores the words only; the automorphism count is not part of the
    /// text form and reads back as 0.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let CodeText(text) = CodeText::deserialize(d)?;
        let words = text
            .split('.')
            .map(|w| w.parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        let colored = words.first() == Some(&1);
        Ok(CanonicalCode {
            words,
            automorphisms: 0,
            colored,
        })
    }
}

fn encode_from(
    root: usize,
    alpha: &Permutation,
    sigma: &Permutation,
    colors: Option<&[Color]>,
    order: &mut Vec<usize>,
    label: &mut [u32],
    out: &mut Vec<u32>,
) {
    const UNSEEN: u32 = u32::MAX;
    label.fill(UNSEEN);
    order.clear();
    out.clear();
    label[root] = 0;
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        for next in [sigma.apply(d), alpha.apply(d)] {
            if label[next] == UNSEEN {
                label[next] = order.len() as u32;
                order.push(next);
            }
        }
        i += 1;
    }
    for &d in order.iter() {
        if let Some(colors) = colors {
            out.push(match colors[d] {
                Color::White => 0,
                Color::Black => 1,
            });
        }
        out.push(label[sigma.apply(d)]);
        out.push(label[alpha.apply(d)]);
    }
}

/// Returns the code together with the relabeling that realizes it
/// (dart `d` becomes `r(d)`).
fn canonicalize(
    alpha: &Permutation,
    sigma: &Permutation,
    colors: Option<&[Color]>,
) -> (CanonicalCode, Permutation) {
    let n = alpha.size();
    let mut order = Vec::with_capacity(n);
    let mut label = vec![0u32; n];
    let mut scratch = Vec::with_capacity(3 * n);
    let mut best: Option<(Vec<u32>, Vec<u32>)> = None;
    let mut automorphisms = 0;
    for root in 0..n {
        encode_from(
            root,
            alpha,
            sigma,
            colors,
            &mut order,
            &mut label,
            &mut scratch,
        );
        match &best {
            Some((code, _)) => match scratch.cmp(code) {
                Ordering::Less => {
                    best = Some((scratch.clone(), label.clone()));
                    automorphisms = 1;
                }
                Ordering::Equal => automorphisms += 1,
                Ordering::Greater => {}
            },
            None => {
                best = Some((scratch.clone(), label.clone()));
                automorphisms = 1;
            }
        }
    }
    let (body, label) = best.expect("maps have at least one dart");
    let mut words = Vec::with_capacity(body.len() + 2);
    words.push(colors.is_some() as u32);
    words.push(n as u32);
    words.extend(body);
    let relabeling = Permutation::from_images(label.into_iter().map(|l| l as usize).collect())
        .expect("traversal of a connected map labels every dart once");
    (
        CanonicalCode {
            words,
            automorphisms,
            colored: colors.is_some(),
        },
        relabeling,
    )
}

pub fn canonical_code(m: &OrientedMap) -> CanonicalCode {
    canonicalize(m.alpha(), m.sigma(), None).0
}

pub fn colored_canonical_code(m: &ColoredMap) -> CanonicalCode {
    canonicalize(m.base().alpha(), m.base().sigma(), Some(m.dart_colors())).0
}

/// The code and the representative relabeled into canonical dart order.
/// Isomorphic inputs give identical representatives.
pub fn canonical_form(m: &OrientedMap) -> (CanonicalCode, OrientedMap) {
    let (code, r) = canonicalize(m.alpha(), m.sigma(), None);
    let rep = m.relabel(&r).expect("relabeling has the map's size");
    (code, rep)
}

pub fn colored_canonical_form(m: &ColoredMap) -> (CanonicalCode, ColoredMap) {
    let (code, r) = canonicalize(m.base().alpha(), m.base().sigma(), Some(m.dart_colors()));
    let rep = m.relabel(&r).expect("relabeling has the map's size");
    (code, rep)
}
