//! Ribbon reading of the incidence structure: every letter occurrence is a
//! dart, each word is a vertex rotation, and the occurrences of a pair on the
//! two sides are matched into edges. Pairs whose counts disagree cannot be
//! matched; every other matching is enumerated and its faces counted.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use super::{genus_estimate, GenusEstimate, IncidenceGraph, Mismatch};
use crate::error::{Error, Result};
use crate::map::Color;
use crate::perm::Permutation;

/// Largest number of matchings enumerated.
pub const MAX_MATCHINGS: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiPair {
    pub white: String,
    pub black: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RibbonReport {
    pub darts: usize,
    pub multi_pairs: Vec<MultiPair>,
    pub obstructions: Vec<Mismatch>,
    /// Number of matchings (0 when obstructed).
    pub matchings: u64,
    pub face_histogram: BTreeMap<usize, u64>,
    pub genus: Vec<GenusEstimate>,
}

pub fn ribbon_census(g: &IncidenceGraph) -> Result<RibbonReport> {
    // Darts are occurrences, numbered vertex by vertex.
    let mut offset = Vec::with_capacity(g.vertex_count());
    let mut darts = 0;
    for v in 0..g.vertex_count() {
        offset.push(darts);
        darts += g.word(v).len();
    }
    let mut sigma = vec![0; darts];
    for v in 0..g.vertex_count() {
        let len = g.word(v).len();
        for p in 0..len {
            sigma[offset[v] + p] = offset[v] + (p + 1) % len;
        }
    }
    let sigma = Permutation::from_images(sigma)?;
    let occurrences = |u: usize, v: usize| -> Vec<usize> {
        g.word(v)
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == u)
            .map(|(p, _)| offset[v] + p)
            .collect()
    };

    // Per white-black pair, occurrences of the black in the white word and of
    // the white in the black word.
    let mut pairs = Vec::new();
    let mut multi_pairs = Vec::new();
    for (b, w) in g.ordered_pairs() {
        if g.vertices()[w].side != Color::White {
            continue;
        }
        let (ow, ob) = (occurrences(b, w), occurrences(w, b));
        if ow.len() == ob.len() && ow.len() > 1 {
            multi_pairs.push(MultiPair {
                white: g.vertices()[w].label.clone(),
                black: g.vertices()[b].label.clone(),
                count: ow.len(),
            });
        }
        pairs.push((ow, ob));
    }
    let obstructions = g.mismatches().to_vec();
    let mut report = RibbonReport {
        darts,
        multi_pairs,
        obstructions,
        matchings: 0,
        face_histogram: BTreeMap::new(),
        genus: Vec::new(),
    };
    if !report.obstructions.is_empty() {
        return Ok(report);
    }

    let choices: Vec<Vec<Vec<usize>>> = pairs
        .iter()
        .map(|(ow, _)| (0..ow.len()).permutations(ow.len()).collect())
        .collect();
    let matchings = choices
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .filter(|&m| m <= MAX_MATCHINGS)
        .ok_or_else(|| Error::Infeasible(format!("more than {MAX_MATCHINGS} matchings")))?;
    report.matchings = matchings;

    let mut alpha = vec![0; darts];
    for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        for ((ow, ob), perm) in pairs.iter().zip(&combo) {
            for (i, &j) in perm.iter().enumerate() {
                alpha[ow[i]] = ob[j];
                alpha[ob[j]] = ow[i];
            }
        }
        let alpha = Permutation::from_images(alpha.clone())?;
        let faces = sigma.compose(&alpha)?.cycle_count();
        *report.face_histogram.entry(faces).or_insert(0) += 1;
    }
    report.genus = report
        .face_histogram
        .keys()
        .map(|&f| genus_estimate(g.vertex_count(), darts / 2, f))
        .collect();
    Ok(report)
}
