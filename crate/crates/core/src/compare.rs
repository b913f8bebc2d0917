//! Matching our tables against a reference set of tables whose labels are
//! unrelated to ours, and itemizing what differs.
//!
//! The label bijection is found by colour refinement on the two incidence
//! structures followed by backtracking. A black vertex must keep its word up
//! to rotation; a white vertex only its multiset of letters, since its order
//! depends on a choice of Eulerian circuit.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::{run_census, CensusReport, EdgeConvention, IncidenceGraph};
use crate::error::{Error, Result};
use crate::golden::{Correspondence, Expectations, GoldenBundle};
use crate::orders::{CyclicWord, WordTables};

/// Search nodes visited before giving up.
pub const SEARCH_LIMIT: usize = 200_000;

struct Structure {
    labels: Vec<String>,
    whites: usize,
    words: Vec<Vec<usize>>,
}

impl Structure {
    fn new(t: &WordTables) -> Result<Self> {
        let whites = t.white.len();
        let labels: Vec<String> = t.white.iter().chain(&t.black).map(|r| r.0.clone()).collect();
        let find = |black: bool, l: &str| {
            let range = if black { 0..whites } else { whites..labels.len() };
            range
                .into_iter()
                .find(|&i| labels[i] == l)
                .ok_or_else(|| Error::Integrity(format!("letter {l} has no row on the other side")))
        };
        let words = t
            .white
            .iter()
            .map(|r| (false, &r.1))
            .chain(t.black.iter().map(|r| (true, &r.1)))
            .map(|(black, w)| w.letters().iter().map(|l| find(black, l)).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Ok(Structure { labels, whites, words })
    }

    fn is_black(&self, v: usize) -> bool {
        v >= self.whites
    }

    fn signature(&self, v: usize, colors: &[u32]) -> (u32, Vec<u32>) {
        let mut seq: Vec<u32> = self.words[v].iter().map(|&u| colors[u]).collect();
        if self.is_black(v) {
            seq = (0..seq.len().max(1))
                .map(|k| {
                    let mut r = seq.clone();
                    r.rotate_left(k.min(seq.len()));
                    r
                })
                .min()
                .unwrap_or_default();
        } else {
            seq.sort_unstable();
        }
        (colors[v], seq)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Imbalance {
    pub ours: Vec<String>,
    pub theirs: Vec<String>,
}

/// One refinement round at the root of the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementStep {
    pub round: usize,
    pub classes: usize,
    pub imbalances: Vec<Imbalance>,
}

/// Refines both colourings jointly until the class count is stable. Returns
/// the class count per round.
fn refine(a: &Structure, b: &Structure, ca: &mut Vec<u32>, cb: &mut Vec<u32>) -> Vec<usize> {
    let mut rounds = Vec::new();
    let mut classes = count_classes(ca, cb);
    loop {
        let sa: Vec<_> = (0..ca.len()).map(|v| a.signature(v, ca)).collect();
        let sb: Vec<_> = (0..cb.len()).map(|v| b.signature(v, cb)).collect();
        let mut names: BTreeMap<&(u32, Vec<u32>), u32> = sa.iter().chain(&sb).map(|s| (s, 0)).collect();
        for (i, v) in names.values_mut().enumerate() {
            *v = i as u32;
        }
        *ca = sa.iter().map(|s| names[s]).collect();
        *cb = sb.iter().map(|s| names[s]).collect();
        let next = names.len();
        rounds.push(next);
        if next == classes {
            return rounds;
        }
        classes = next;
    }
}

fn count_classes(ca: &[u32], cb: &[u32]) -> usize {
    let mut all: Vec<u32> = ca.iter().chain(cb).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn imbalances(a: &Structure, b: &Structure, ca: &[u32], cb: &[u32]) -> Vec<Imbalance> {
    let mut groups: BTreeMap<u32, Imbalance> = BTreeMap::new();
    let empty = || Imbalance {
        ours: Vec::new(),
        theirs: Vec::new(),
    };
    for (v, &c) in ca.iter().enumerate() {
        groups.entry(c).or_insert_with(empty).ours.push(a.labels[v].clone());
    }
    for (v, &c) in cb.iter().enumerate() {
        groups.entry(c).or_insert_with(empty).theirs.push(b.labels[v].clone());
    }
    groups.into_values().filter(|g| g.ours.len() != g.theirs.len()).collect()
}

fn consistent(a: &Structure, b: &Structure, map: &[usize]) -> bool {
    (0..a.words.len()).all(|v| {
        let mapped: Vec<usize> = a.words[v].iter().map(|&u| map[u]).collect();
        let target = &b.words[map[v]];
        if mapped.len() != target.len() {
            return false;
        }
        if a.is_black(v) {
            (0..mapped.len().max(1)).any(|k| (0..mapped.len()).all(|i| mapped[(i + k) % mapped.len()] == target[i]))
        } else {
            let (mut x, mut y) = (mapped, target.clone());
            x.sort_unstable();
            y.sort_unstable();
            x == y
        }
    })
}

struct Search<'a> {
    a: &'a Structure,
    b: &'a Structure,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, mut ca: Vec<u32>, mut cb: Vec<u32>) -> Option<Vec<usize>> {
        self.nodes += 1;
        if self.nodes > SEARCH_LIMIT {
            return None;
        }
        refine(self.a, self.b, &mut ca, &mut cb);
        if !imbalances(self.a, self.b, &ca, &cb).is_empty() {
            return None;
        }
        let mut members: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (v, &c) in ca.iter().enumerate() {
            members.entry(c).or_default().0.push(v);
        }
        for (v, &c) in cb.iter().enumerate() {
            members.entry(c).or_default().1.push(v);
        }
        let Some((_, (xs, ys))) = members
            .iter()
            .filter(|(_, m)| m.0.len() > 1)
            .min_by_key(|(&c, m)| (m.0.len(), c))
        else {
            let mut map = vec![0; ca.len()];
            for (xs, ys) in members.values() {
                map[xs[0]] = ys[0];
            }
            return consistent(self.a, self.b, &map).then_some(map);
        };
        let fresh = members.keys().last().map_or(0, |&c| c + 1);
        let x = xs[0];
        for &y in ys {
            let (mut ca2, mut cb2) = (ca.clone(), cb.clone());
            ca2[x] = fresh;
            cb2[y] = fresh;
            if let Some(map) = self.run(ca2, cb2) {
                return Some(map);
            }
        }
        None
    }
}

/// Outcome of [`find_correspondence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub correspondence: Option<Correspondence>,
    pub refinement: Vec<RefinementStep>,
    pub search_nodes: usize,
}

/// Looks for a relabelling of `ours` onto `theirs` under which every black
/// word agrees up to rotation and every white word as a multiset.
pub fn find_correspondence(ours: &WordTables, theirs: &WordTables) -> Result<Matching> {
    let a = Structure::new(ours)?;
    let b = Structure::new(theirs)?;
    let initial = |s: &Structure| -> Vec<u32> {
        (0..s.words.len())
            .map(|v| (s.is_black(v) as u32) << 16 | s.words[v].len() as u32)
            .collect()
    };
    let (mut ca, mut cb) = (initial(&a), initial(&b));
    let mut refinement = vec![RefinementStep {
        round: 0,
        classes: count_classes(&ca, &cb),
        imbalances: imbalances(&a, &b, &ca, &cb),
    }];
    if a.whites != b.whites || a.words.len() != b.words.len() || !refinement[0].imbalances.is_empty() {
        return Ok(Matching {
            correspondence: None,
            refinement,
            search_nodes: 0,
        });
    }
    let rounds = refine(&a, &b, &mut ca, &mut cb);
    let last = rounds.len();
    for (i, classes) in rounds.into_iter().enumerate() {
        refinement.push(RefinementStep {
            round: i + 1,
            classes,
            imbalances: if i + 1 == last { imbalances(&a, &b, &ca, &cb) } else { Vec::new() },
        });
    }
    let mut search = Search { a: &a, b: &b, nodes: 0 };
    let map = search.run(ca, cb);
    let correspondence = map.map(|map| {
        let mut c = Correspondence::default();
        for (v, &w) in map.iter().enumerate() {
            let side = if a.is_black(v) { &mut c.black } else { &mut c.white };
            side.insert(a.labels[v].clone(), b.labels[w].clone());
        }
        c
    });
    Ok(Matching {
        correspondence,
        refinement,
        search_nodes: search.nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDiff {
    pub ours: String,
    pub theirs: String,
    /// Our word with letters renamed to their labels.
    pub ours_word: CyclicWord,
    pub theirs_word: Option<CyclicWord>,
    /// Equal up to rotation.
    pub exact: bool,
    pub multiset: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub white: Vec<RowDiff>,
    pub black: Vec<RowDiff>,
    pub white_exact: usize,
    pub white_multiset: usize,
    pub black_exact: usize,
    pub black_multiset: usize,
}

impl TableDiff {
    /// Rows that differ beyond what the comparison tolerates: black rows not
    /// equal up to rotation, white rows with different multisets.
    pub fn failures(&self) -> usize {
        (self.white.len() - self.white_multiset) + (self.black.len() - self.black_exact)
    }
}

pub fn diff_tables(ours: &WordTables, theirs: &WordTables, c: &Correspondence) -> TableDiff {
    let rows = |ours: &[(String, CyclicWord)], theirs: &[(String, CyclicWord)], names: &BTreeMap<String, String>, letters: &BTreeMap<String, String>| {
        ours.iter()
            .map(|(id, w)| {
                let label = names.get(id).cloned().unwrap_or_else(|| id.clone());
                let ours_word = w.map_letters(|l| letters.get(l).cloned());
                let theirs_word = theirs.iter().find(|r| r.0 == label).map(|r| r.1.clone());
                let exact = theirs_word.as_ref() == Some(&ours_word);
                let multiset = theirs_word.as_ref().is_some_and(|t| t.multiset() == ours_word.multiset());
                RowDiff {
                    ours: id.clone(),
                    theirs: label,
                    ours_word,
                    theirs_word,
                    exact,
                    multiset,
                }
            })
            .collect::<Vec<_>>()
    };
    let white = rows(&ours.white, &theirs.white, &c.white, &c.black);
    let black = rows(&ours.black, &theirs.black, &c.black, &c.white);
    TableDiff {
        white_exact: white.iter().filter(|r| r.exact).count(),
        white_multiset: white.iter().filter(|r| r.multiset).count(),
        black_exact: black.iter().filter(|r| r.exact).count(),
        black_multiset: black.iter().filter(|r| r.multiset).count(),
        white,
        black,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusSummary {
    pub fork_count: usize,
    pub white_forks: usize,
    pub black_forks: usize,
    pub face_histogram: BTreeMap<usize, u64>,
    pub edge_counts: BTreeMap<EdgeConvention, usize>,
    pub mismatches: usize,
}

impl From<&CensusReport> for CensusSummary {
    fn from(r: &CensusReport) -> Self {
        CensusSummary {
            fork_count: r.fork_count,
            white_forks: r.white_forks,
            black_forks: r.black_forks,
            face_histogram: r.face_histogram.clone(),
            edge_counts: r.edge_counts.clone(),
            mismatches: r.mismatches.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationCheck {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

fn check<T: std::fmt::Debug + PartialEq>(name: &str, expected: T, actual: T) -> ExpectationCheck {
    ExpectationCheck {
        name: name.into(),
        ok: expected == actual,
        expected: format!("{expected:?}"),
        actual: format!("{actual:?}"),
    }
}

/// Integral genus values over the observed face counts, for one convention.
pub fn integral_genera(report: &CensusReport, convention: EdgeConvention) -> Vec<i64> {
    let mut g: Vec<i64> = report
        .genus_table
        .iter()
        .filter(|r| r.convention == convention && r.estimate.integral)
        .map(|r| r.estimate.genus as i64)
        .collect();
    g.sort_unstable();
    g.dedup();
    g
}

pub fn check_expectations(
    e: &Expectations,
    m33: usize,
    m446: usize,
    census: &CensusReport,
) -> Vec<ExpectationCheck> {
    vec![
        check("m33", e.m33, m33),
        check("m446", e.m446, m446),
        check("forks", e.forks, census.fork_count),
        check("faces", e.faces.clone(), census.face_counts()),
        check("genus", e.genus.clone(), integral_genera(census, EdgeConvention::WhiteSide)),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub matching: Matching,
    pub raw: Option<TableDiff>,
    pub reduced: Option<TableDiff>,
    pub census_ours: CensusSummary,
    pub census_reference: CensusSummary,
    pub expectations: Vec<ExpectationCheck>,
}

impl CompareReport {
    /// Every tolerated check holds: a bijection exists, black words agree,
    /// white multisets agree, and every expectation is met.
    pub fn is_clean(&self) -> bool {
        self.matching.correspondence.is_some()
            && [&self.raw, &self.reduced].iter().all(|d| d.as_ref().is_some_and(|d| d.failures() == 0))
            && self.expectations.iter().all(|e| e.ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Full comparison of our raw tables against a bundle. The bundle's own
/// correspondence is used when present, otherwise one is searched for.
pub fn compare(ours: &WordTables, golden: &GoldenBundle, counts: (usize, usize), jobs: usize) -> Result<CompareReport> {
    let matching = match &golden.correspondence {
        Some(c) => Matching {
            correspondence: Some(c.clone()),
            refinement: Vec::new(),
            search_nodes: 0,
        },
        None => find_correspondence(ours, &golden.raw)?,
    };
    let ours_reduced = ours.for_census();
    let (raw, reduced) = match &matching.correspondence {
        Some(c) => (
            Some(diff_tables(ours, &golden.raw, c)),
            Some(diff_tables(&ours_reduced, &golden.reduced, c)),
        ),
        None => (None, None),
    };
    let census_ours = run_census(&IncidenceGraph::assemble(&ours_reduced)?, jobs)?;
    let census_reference = run_census(&IncidenceGraph::assemble(&golden.reduced.for_census())?, jobs)?;
    Ok(CompareReport {
        expectations: check_expectations(&golden.expectations, counts.0, counts.1, &census_reference),
        matching,
        raw,
        reduced,
        census_ours: (&census_ours).into(),
        census_reference: (&census_reference).into(),
    })
}
