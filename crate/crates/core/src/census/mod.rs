//! The bipartite incidence structure built from reduced words, its binary
//! ambiguities ("forks"), and the exhaustive face census over all of them.
//!
//! A walk state is an ordered pair `(u, v)`: we have just arrived at `v`
//! from `u`. The successor is `(v, w)` where `w` follows `u` in the word of
//! `v`. When `u` occurs twice in that word the successor depends on which
//! occurrence is meant; that is a fork, and each fork is one bit of a
//! [`ChoiceVector`]. Faces are the cycles of the successor map.

pub mod ribbon;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::Color;
use crate::orders::{label_order, CyclicWord, WordTables};

pub use ribbon::{ribbon_census, RibbonReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub side: Color,
    pub label: String,
}

/// A pair whose occurrence counts differ between the two sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub white: String,
    pub black: String,
    /// Occurrences of the black label in the white word.
    pub in_white: usize,
    /// Occurrences of the white label in the black word.
    pub in_black: usize,
}

#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    vertices: Vec<Vertex>,
    /// Letters as vertex indices, one word per vertex.
    words: Vec<Vec<usize>>,
    /// `(u, v)` to the number of occurrences of `u` in the word of `v`.
    adjacency: BTreeMap<(usize, usize), usize>,
    mismatches: Vec<Mismatch>,
}

impl IncidenceGraph {
    /// Builds the graph from word tables as given; callers wanting the census
    /// semantics pass [`WordTables::for_census`].
    pub fn assemble(tables: &WordTables) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut index: BTreeMap<(Color, &str), usize> = BTreeMap::new();
        for (side, rows) in [(Color::White, &tables.white), (Color::Black, &tables.black)] {
            for (label, _) in rows.iter() {
                if index.insert((side, label.as_str()), vertices.len()).is_some() {
                    return Err(Error::Integrity(format!("{side:?} label {label} appears twice")));
                }
                vertices.push(Vertex {
                    side,
                    label: label.clone(),
                });
            }
        }
        let mut words = Vec::with_capacity(vertices.len());
        for (side, rows) in [(Color::White, &tables.white), (Color::Black, &tables.black)] {
            for (label, word) in rows.iter() {
                let letters = word
                    .letters()
                    .iter()
                    .map(|l| {
                        index.get(&(side.swapped(), l.as_str())).copied().ok_or_else(|| {
                            Error::Integrity(format!(
                                "word of {side:?} {label} names {l}, which has no row on the other side"
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                words.push(letters);
            }
        }
        let mut adjacency = BTreeMap::new();
        for (v, word) in words.iter().enumerate() {
            for &u in word {
                *adjacency.entry((u, v)).or_insert(0) += 1;
            }
        }
        for &(u, v) in adjacency.keys() {
            if !adjacency.contains_key(&(v, u)) {
                return Err(Error::Integrity(format!(
                    "{} occurs in the word of {} but not the other way round",
                    describe(&vertices[u]),
                    describe(&vertices[v])
                )));
            }
        }
        let mut mismatches = Vec::new();
        for (&(b, w), &in_white) in &adjacency {
            if vertices[w].side != Color::White {
                continue;
            }
            let in_black = adjacency[&(w, b)];
            if in_white != in_black {
                mismatches.push(Mismatch {
                    white: vertices[w].label.clone(),
                    black: vertices[b].label.clone(),
                    in_white,
                    in_black,
                });
            }
        }
        Ok(IncidenceGraph {
            vertices,
            words,
            adjacency,
            mismatches,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn word(&self, v: usize) -> &[usize] {
        &self.words[v]
    }

    pub fn word_labels(&self, v: usize) -> CyclicWord {
        CyclicWord::new(self.words[v].iter().map(|&u| self.vertices[u].label.clone()))
    }

    pub fn find(&self, side: Color, label: &str) -> Option<usize> {
        self.vertices.iter().position(|x| x.side == side && x.label == label)
    }

    /// Occurrences of `u` in the word of `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adjacency.get(&(u, v)).copied().unwrap_or(0)
    }

    /// All `(u, v)` with `u` in the word of `v`, in order.
    pub fn ordered_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn mismatches(&self) -> &[Mismatch] {
        &self.mismatches
    }

    pub fn letter_total(&self, side: Color) -> usize {
        self.vertices
            .iter()
            .zip(&self.words)
            .filter(|(x, _)| x.side == side)
            .map(|(_, w)| w.len())
            .sum()
    }

    pub fn edge_count(&self, convention: EdgeConvention) -> usize {
        match convention {
            EdgeConvention::WhiteSide => self.letter_total(Color::White),
            EdgeConvention::BlackSide => self.letter_total(Color::Black),
            EdgeConvention::MaxPerPair => self
                .adjacency
                .iter()
                .filter(|((_, v), _)| self.vertices[*v].side == Color::White)
                .map(|(&(b, w), &n)| n.max(self.adjacency[&(w, b)]))
                .sum(),
        }
    }
}

fn describe(v: &Vertex) -> String {
    let side = match v.side {
        Color::White => "white",
        Color::Black => "black",
    };
    format!("{side} {}", v.label)
}

/// How many edges the incidence structure is taken to have when computing a
/// genus. Each side's words count every edge once, so the sides agree exactly
/// when no pair is mismatched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeConvention {
    /// Total length of the white words.
    WhiteSide,
    /// Total length of the black words.
    BlackSide,
    /// Per adjacent pair, the larger of its two occurrence counts.
    MaxPerPair,
}

impl EdgeConvention {
    pub const ALL: [EdgeConvention; 3] = [
        EdgeConvention::WhiteSide,
        EdgeConvention::BlackSide,
        EdgeConvention::MaxPerPair,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EdgeConvention::WhiteSide => "white_side",
            EdgeConvention::BlackSide => "black_side",
            EdgeConvention::MaxPerPair => "max_per_pair",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForkSite {
    pub side: Color,
    pub at: String,
    pub from: String,
    /// Labels following the two occurrences, in label order.
    pub options: [String; 2],
    #[serde(skip)]
    pub(crate) state: (usize, usize),
    #[serde(skip)]
    pub(crate) successors: [usize; 2],
}

/// One fork per (vertex, doubled letter), ordered by vertex then letter.
/// The two options are ordered by label.
pub fn detect_forks(g: &IncidenceGraph) -> Result<Vec<ForkSite>> {
    let mut sites = Vec::new();
    for v in 0..g.vertex_count() {
        let word = g.word(v);
        let mut froms: Vec<usize> = word.to_vec();
        froms.sort_by(|&a, &b| label_order(&g.vertices[a].label, &g.vertices[b].label));
        froms.dedup();
        for u in froms {
            let count = g.multiplicity(u, v);
            if count < 2 {
                continue;
            }
            if count > 2 {
                return Err(Error::UnsupportedFork {
                    at: describe(&g.vertices[v]),
                    label: g.vertices[u].label.clone(),
                    count,
                });
            }
            let mut next: Vec<usize> = (0..word.len())
                .filter(|&p| word[p] == u)
                .map(|p| word[(p + 1) % word.len()])
                .collect();
            next.sort_by(|&a, &b| label_order(&g.vertices[a].label, &g.vertices[b].label));
            let successors = [next[0], next[1]];
            sites.push(ForkSite {
                side: g.vertices[v].side,
                at: g.vertices[v].label.clone(),
                from: g.vertices[u].label.clone(),
                options: successors.map(|w| g.vertices[w].label.clone()),
                state: (u, v),
                successors,
            });
        }
    }
    Ok(sites)
}

/// Bit `i` picks option `i` of fork `i` (0 for the first occurrence).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChoiceVector {
    pub bits: u64,
    pub len: usize,
}

impl ChoiceVector {
    pub fn new(bits: u64, len: usize) -> Self {
        ChoiceVector { bits, len }
    }

    pub fn get(&self, i: usize) -> usize {
        ((self.bits >> i) & 1) as usize
    }
}

/// The closed walks of one resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub faces: usize,
    /// Whether the successor map is a permutation of the states.
    pub bijective: bool,
    /// Each walk as its sequence of visited vertices, least rotation first.
    pub walks: Vec<Vec<usize>>,
}

/// The successor map with forks left open, compiled once and evaluated per
/// choice vector.
#[derive(Clone, Debug)]
pub struct Tracer {
    states: Vec<(usize, usize)>,
    /// Successor state for states that are not forks.
    fixed: Vec<u32>,
    /// `(state, [successor if bit 0, successor if bit 1])` per fork.
    forks: Vec<(u32, [u32; 2])>,
}

impl Tracer {
    pub fn new(g: &IncidenceGraph, forks: &[ForkSite]) -> Self {
        let states: Vec<(usize, usize)> = g.ordered_pairs().collect();
        let index: BTreeMap<(usize, usize), u32> =
            states.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let fixed = states
            .iter()
            .map(|&(u, v)| {
                let word = g.word(v);
                let p = word.iter().position(|&x| x == u).expect("pair comes from the word");
                index[&(v, word[(p + 1) % word.len()])]
            })
            .collect();
        let forks = forks
            .iter()
            .map(|f| {
                let (_, v) = f.state;
                (index[&f.state], f.successors.map(|w| index[&(v, w)]))
            })
            .collect();
        Tracer { states, fixed, forks }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn fork_count(&self) -> usize {
        self.forks.len()
    }

    fn fill(&self, c: ChoiceVector, succ: &mut Vec<u32>) {
        succ.clear();
        succ.extend_from_slice(&self.fixed);
        for (i, &(s, opts)) in self.forks.iter().enumerate() {
            succ[s as usize] = opts[c.get(i)];
        }
    }

    /// Face count and bijectivity, reusing the caller's buffers.
    pub fn count(&self, c: ChoiceVector, scratch: &mut Scratch) -> (usize, bool) {
        self.fill(c, &mut scratch.succ);
        let n = self.states.len();
        scratch.stamp.clear();
        scratch.stamp.resize(n, u32::MAX);
        scratch.indegree.clear();
        scratch.indegree.resize(n, 0);
        for &t in &scratch.succ {
            scratch.indegree[t as usize] += 1;
        }
        let bijective = scratch.indegree.iter().all(|&d| d == 1);
        let mut cycles = 0;
        for start in 0..n {
            let mut s = start;
            while scratch.stamp[s] == u32::MAX {
                scratch.stamp[s] = start as u32;
                s = scratch.succ[s] as usize;
            }
            if scratch.stamp[s] == start as u32 {
                cycles += 1;
            }
        }
        (cycles, bijective)
    }

    pub fn trace(&self, c: ChoiceVector) -> Trace {
        let mut scratch = Scratch::default();
        let (faces, bijective) = self.count(c, &mut scratch);
        let succ = &scratch.succ;
        let mut on_cycle = vec![false; succ.len()];
        let mut walks = Vec::with_capacity(faces);
        // A state is on a cycle iff it is reached after len() steps.
        for start in 0..succ.len() {
            let mut s = start;
            for _ in 0..succ.len() {
                s = succ[s] as usize;
            }
            if on_cycle[s] {
                continue;
            }
            let mut walk = Vec::new();
            let first = s;
            loop {
                on_cycle[s] = true;
                walk.push(self.states[s].1);
                s = succ[s] as usize;
                if s == first {
                    break;
                }
            }
            let k = (0..walk.len()).min_by_key(|&k| (&walk[k..], &walk[..k])).unwrap_or(0);
            walk.rotate_left(k);
            walks.push(walk);
        }
        walks.sort();
        Trace {
            faces,
            bijective,
            walks,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Scratch {
    succ: Vec<u32>,
    stamp: Vec<u32>,
    indegree: Vec<u32>,
}

pub fn trace_faces(g: &IncidenceGraph, forks: &[ForkSite], c: ChoiceVector) -> Trace {
    Tracer::new(g, forks).trace(c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusEstimate {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// `(2 - V + E - F) / 2`, possibly fractional or negative.
    pub genus: f64,
    pub integral: bool,
    pub non_negative: bool,
}

pub fn genus_estimate(vertices: usize, edges: usize, faces: usize) -> GenusEstimate {
    let twice = 2 - vertices as i64 + edges as i64 - faces as i64;
    GenusEstimate {
        vertices,
        edges,
        faces,
        genus: twice as f64 / 2.0,
        integral: twice % 2 == 0,
        non_negative: twice >= 0,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusRow {
    pub faces: usize,
    pub convention: EdgeConvention,
    pub estimate: GenusEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusReport {
    pub vertices: usize,
    pub white_vertices: usize,
    pub black_vertices: usize,
    pub states: usize,
    pub fork_count: usize,
    pub white_forks: usize,
    pub black_forks: usize,
    pub forks: Vec<ForkSite>,
    pub traces: u64,
    pub face_histogram: BTreeMap<usize, u64>,
    pub bijective_vectors: u64,
    /// Single-bit flips between two bijective resolutions that change the
    /// face count by an odd amount.
    pub parity_violations: u64,
    pub edge_counts: BTreeMap<EdgeConvention, usize>,
    pub genus_table: Vec<GenusRow>,
    pub mismatches: Vec<Mismatch>,
}

impl CensusReport {
    pub fn face_counts(&self) -> Vec<usize> {
        self.face_histogram.keys().copied().collect()
    }

    pub fn genus_for(&self, convention: EdgeConvention) -> Vec<f64> {
        self.genus_table
            .iter()
            .filter(|r| r.convention == convention)
            .map(|r| r.estimate.genus)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Largest fork count the exhaustive census accepts.
pub const MAX_FORKS: usize = 26;

/// Traces every choice vector, splitting the range `0..2^k` into `jobs`
/// contiguous pieces. The report does not depend on `jobs`.
pub fn run_census(g: &IncidenceGraph, jobs: usize) -> Result<CensusReport> {
    let forks = detect_forks(g)?;
    let k = forks.len();
    if k > MAX_FORKS {
        return Err(Error::Infeasible(format!("{k} forks is beyond the exhaustive limit of {MAX_FORKS}")));
    }
    let tracer = Tracer::new(g, &forks);
    let total = 1u64 << k;
    let jobs = jobs.clamp(1, total as usize);
    let chunk = total.div_ceil(jobs as u64);

    // Face count per vector, high bit set when the successor map is bijective.
    let mut results = vec![0u32; total as usize];
    std::thread::scope(|scope| {
        for (j, part) in results.chunks_mut(chunk as usize).enumerate() {
            let tracer = &tracer;
            scope.spawn(move || {
                let mut scratch = Scratch::default();
                let base = j as u64 * chunk;
                for (i, slot) in part.iter_mut().enumerate() {
                    let (faces, bij) = tracer.count(ChoiceVector::new(base + i as u64, k), &mut scratch);
                    *slot = faces as u32 | if bij { 1 << 31 } else { 0 };
                }
            });
        }
    });

    let mut face_histogram = BTreeMap::new();
    let mut bijective_vectors = 0;
    let mut parity_violations = 0;
    let bijective = |r: u32| r >> 31 == 1;
    let faces_of = |r: u32| (r & !(1 << 31)) as i64;
    for (bits, &r) in results.iter().enumerate() {
        *face_histogram.entry(faces_of(r) as usize).or_insert(0) += 1;
        if !bijective(r) {
            continue;
        }
        bijective_vectors += 1;
        for i in 0..k {
            if bits >> i & 1 == 0 {
                let other = results[bits | 1 << i];
                if bijective(other) && (faces_of(r) - faces_of(other)) % 2 != 0 {
                    parity_violations += 1;
                }
            }
        }
    }

    let vertices = g.vertex_count();
    let edge_counts: BTreeMap<EdgeConvention, usize> =
        EdgeConvention::ALL.iter().map(|&c| (c, g.edge_count(c))).collect();
    let genus_table = face_histogram
        .keys()
        .flat_map(|&faces| {
            edge_counts.iter().map(move |(&convention, &edges)| GenusRow {
                faces,
                convention,
                estimate: genus_estimate(vertices, edges, faces),
            })
        })
        .collect();
    let white_forks = forks.iter().filter(|f| f.side == Color::White).count();
    Ok(CensusReport {
        vertices,
        white_vertices: g.vertices.iter().filter(|v| v.side == Color::White).count(),
        black_vertices: g.vertices.iter().filter(|v| v.side == Color::Black).count(),
        states: tracer.state_count(),
        fork_count: k,
        white_forks,
        black_forks: k - white_forks,
        forks,
        traces: total,
        face_histogram,
        bijective_vectors,
        parity_violations,
        edge_counts,
        genus_table,
        mismatches: g.mismatches.clone(),
    })
}
