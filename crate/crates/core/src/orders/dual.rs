//! The loopless dual of a quadrangulation as a directed graph, and Eulerian
//! circuits in it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{Color, ColoredMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualEdge {
    pub tail: usize,
    pub head: usize,
    /// The white-end dart of the crossed edge of `Q`.
    pub crossing: usize,
}

/// Faces of `Q` as nodes; one directed edge per separating edge of `Q`,
/// oriented so that the dual face of the black endpoint lies on its right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualDigraph {
    pub nodes: usize,
    /// Sorted by crossing dart.
    pub edges: Vec<DualEdge>,
    pub loops_removed: usize,
}

impl DualDigraph {
    /// Builds a digraph from raw parts, sorting edges by crossing dart.
    pub fn from_edges(nodes: usize, mut edges: Vec<DualEdge>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.tail >= nodes || e.head >= nodes) {
            return Err(Error::DualAnomaly(format!("edge {e:?} leaves the node set")));
        }
        edges.sort_by_key(|e| e.crossing);
        let d = DualDigraph {
            nodes,
            edges,
            loops_removed: 0,
        };
        d.check_balanced()?;
        Ok(d)
    }

    fn check_balanced(&self) -> Result<()> {
        let mut balance = vec![0i64; self.nodes];
        for e in &self.edges {
            balance[e.tail] += 1;
            balance[e.head] -= 1;
        }
        if let Some(v) = balance.iter().position(|&b| b != 0) {
            return Err(Error::DualAnomaly(format!(
                "node {v} has in-degree != out-degree"
            )));
        }
        Ok(())
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }
}

/// Crossing a `Q`-edge from the face that contains its white-end dart to the
/// face that contains its black-end dart keeps the black endpoint on the
/// right, because face circuits keep their face on the right.
pub fn loopless_dual(q: &ColoredMap) -> Result<DualDigraph> {
    let base = q.base();
    let face = base.face_of();
    let nodes = base.phi().cycle_count();
    let mut edges = Vec::new();
    let mut loops = 0;
    for [a, b] in base.edges() {
        let (white, black) = if q.color(a) == Color::White { (a, b) } else { (b, a) };
        if face[white] == face[black] {
            loops += 1;
        } else {
            edges.push(DualEdge {
                tail: face[white],
                head: face[black],
                crossing: white,
            });
        }
    }
    let mut d = DualDigraph::from_edges(nodes, edges)?;
    d.loops_removed = loops;
    Ok(d)
}

/// The canonical Eulerian circuit: Hierholzer's algorithm starting with the
/// edge of least crossing dart, always leaving a node by its unused edge of
/// least crossing dart. Returns indices into `d.edges`.
pub fn eulerian_circuit(d: &DualDigraph) -> Result<Vec<usize>> {
    eulerian_circuit_with(d, &mut |_| 0)
}

/// Like [`eulerian_circuit`], but `choose` picks among the unused outgoing
/// edges at each step (given sorted by crossing dart) by returning a position
/// in that list.
pub fn eulerian_circuit_with(
    d: &DualDigraph,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<Vec<usize>> {
    if d.edges.is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); d.nodes];
    for (i, e) in d.edges.iter().enumerate() {
        out[e.tail].push(i);
    }
    let mut used = vec![false; d.edges.len()];
    let mut circuit = Vec::with_capacity(d.edges.len());
    let mut stack: Vec<(usize, Option<usize>)> = vec![(d.edges[0].tail, None)];
    let mut first = true;
    while let Some(&(v, via)) = stack.last() {
        let candidates: Vec<usize> = out[v].iter().copied().filter(|&i| !used[i]).collect();
        if candidates.is_empty() {
            stack.pop();
            if let Some(e) = via {
                circuit.push(e);
            }
            continue;
        }
        let pick = if first {
            first = false;
            0
        } else {
            choose(&candidates).min(candidates.len() - 1)
        };
        let e = candidates[pick];
        used[e] = true;
        stack.push((d.edges[e].head, Some(e)));
    }
    circuit.reverse();
    if circuit.len() != d.edges.len() {
        return Err(Error::Disconnected(edge_components(d)));
    }
    Ok(circuit)
}

/// Weakly connected components of the edge set, as lists of edge indices.
fn edge_components(d: &DualDigraph) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..d.nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &d.edges {
        let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
        parent[a] = b;
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, e) in d.edges.iter().enumerate() {
        groups.entry(find(&mut parent, e.tail)).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Checks that `circuit` uses every edge once and that consecutive edges
/// chain head to tail, cyclically.
pub fn is_eulerian_circuit(d: &DualDigraph, circuit: &[usize]) -> bool {
    if circuit.len() != d.edges.len() {
        return false;
    }
    let mut used = vec![false; d.edges.len()];
    for &e in circuit {
        if e >= used.len() || std::mem::replace(&mut used[e], true) {
            return false;
        }
    }
    (0..circuit.len()).all(|i| {
        let next = circuit[(i + 1) % circuit.len()];
        d.edges[circuit[i]].head == d.edges[next].tail
    })
}
