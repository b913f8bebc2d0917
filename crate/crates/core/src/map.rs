//! Oriented combinatorial maps given as rotation systems.
//!
//! Darts are the integers `0..n`. `alpha` is a fixed-point-free involution
//! pairing the two darts of each edge, and `sigma` lists the darts around each
//! vertex counterclockwise. Faces are the cycles of `phi = sigma ∘ alpha`,
//! i.e. `phi(d) = sigma(alpha(d))`; each face circuit keeps its face on the
//! right.
//!
//! The element `d` of a face cycle stands for the corner at the vertex of `d`
//! lying between `sigma⁻¹(d)` and `d`. Quadrangulation and arc insertion rely
//! on this.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Vertex, edge and face counts of a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl Counts {
    pub fn new(vertices: usize, edges: usize, faces: usize) -> Self {
        Counts {
            vertices,
            edges,
            faces,
        }
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

impl From<(usize, usize, usize)> for Counts {
    fn from((v, e, f): (usize, usize, usize)) -> Self {
        Counts::new(v, e, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedMap {
    alpha: Permutation,
    sigma: Permutation,
}

impl std::fmt::Debug for OrientedMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrientedMap")
            .field("alpha", &self.alpha)
            .field("sigma", &self.sigma)
            .finish()
    }
}

impl OrientedMap {
    /// Validates and builds a map: `alpha` must be a fixed-point-free
    /// involution and `<alpha, sigma>` must act transitively.
    pub fn new(alpha: Permutation, sigma: Permutation) -> Result<Self> {
        let n = alpha.size();
        if sigma.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: sigma.size(),
            });
        }
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidMap(format!(
                "dart count must be positive and even, got {n}"
            )));
        }
        for d in 0..n {
            let a = alpha.apply(d);
            if a == d || alpha.apply(a) != d {
                return Err(Error::InvalidMap(format!(
                    "alpha is not a fixed-point-free involution at dart {d}"
                )));
            }
        }
        let map = OrientedMap { alpha, sigma };
        if !map.is_connected() {
            return Err(Error::InvalidMap("map is disconnected".into()));
        }
        Ok(map)
    }

    /// Builds a map whose edges are `(0 1)(2 3)…` from a rotation image table.
    pub fn from_sigma(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidMap(format!("odd dart count {n}")));
        }
        OrientedMap::new(standard_alpha(n), Permutation::from_images(sigma)?)
    }

    pub fn n_darts(&self) -> usize {
        self.alpha.size()
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    /// The face permutation `d ↦ sigma(alpha(d))`.
    pub fn phi(&self) -> Permutation {
        self.sigma
            .compose(&self.alpha)
            .expect("alpha and sigma share a dart set")
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.sigma.cycles()
    }

    pub fn edges(&self) -> Vec<[usize; 2]> {
        (0..self.n_darts())
            .filter(|&d| d < self.alpha.apply(d))
            .map(|d| [d, self.alpha.apply(d)])
            .collect()
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.phi().cycles()
    }

    /// Vertex index of every dart, vertices numbered by least dart.
    pub fn vertex_of(&self) -> Vec<usize> {
        self.sigma.cycle_index()
    }

    /// Face index of every dart, faces numbered by least dart.
    pub fn face_of(&self) -> Vec<usize> {
        self.phi().cycle_index()
    }

    pub fn counts(&self) -> Counts {
        Counts::new(
            self.sigma.cycle_count(),
            self.n_darts() / 2,
            self.phi().cycle_count(),
        )
    }

    /// Sorted face perimeters.
    pub fn face_degrees(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.faces().iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.vertices().iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    /// The genus `g` with `V - E + F = 2 - 2g`.
    pub fn euler_genus(&self) -> Result<usize> {
        let defect = 2 - self.counts().euler_characteristic();
        if defect < 0 || defect % 2 != 0 {
            return Err(Error::InvalidMap(format!(
                "Euler defect {defect} is not a non-negative even number"
            )));
        }
        Ok((defect / 2) as usize)
    }

    /// The dual map: same darts, rotation `phi`, same edges. Applying it twice
    /// gives back the original map dart for dart.
    pub fn dual(&self) -> OrientedMap {
        OrientedMap {
            alpha: self.alpha.clone(),
            sigma: self.phi(),
        }
    }

    /// Reverses every rotation.
    pub fn mirror(&self) -> OrientedMap {
        OrientedMap {
            alpha: self.alpha.clone(),
            sigma: self.sigma.inverse(),
        }
    }

    /// Renames dart `d` to `r(d)`.
    pub fn relabel(&self, r: &Permutation) -> Result<OrientedMap> {
        Ok(OrientedMap {
            alpha: self.alpha.conjugate_by(r)?,
            sigma: self.sigma.conjugate_by(r)?,
        })
    }

    /// Relabels darts so that the edges become `(0 1)(2 3)…`, edges taken in
    /// order of their least dart.
    pub fn normalized(&self) -> OrientedMap {
        let mut r = vec![0; self.n_darts()];
        for (i, [a, b]) in self.edges().into_iter().enumerate() {
            r[a] = 2 * i;
            r[b] = 2 * i + 1;
        }
        let r = Permutation::from_images(r).expect("edge relabeling is a bijection");
        self.relabel(&r).expect("same size")
    }

    fn is_connected(&self) -> bool {
        let n = self.n_darts();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(d) = stack.pop() {
            for next in [self.alpha.apply(d), self.sigma.apply(d)] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        reached == n
    }

    /// Proper 2-coloring with the vertex of dart 0 painted `root`.
    pub fn bicolor(&self, root: Color) -> Result<ColoredMap> {
        let vertex = self.vertex_of();
        let vcount = self.sigma.cycle_count();
        let mut color: Vec<Option<Color>> = vec![None; vcount];
        color[vertex[0]] = Some(root);
        let mut stack = vec![vertex[0]];
        let vertices = self.vertices();
        while let Some(v) = stack.pop() {
            let c = color[v].expect("pushed vertices are colored");
            for &d in &vertices[v] {
                let u = vertex[self.alpha.apply(d)];
                match color[u] {
                    None => {
                        color[u] = Some(c.swapped());
                        stack.push(u);
                    }
                    Some(cu) if cu == c => {
                        return Err(Error::NotBipartite(format!(
                            "edge at dart {d} joins two vertices of the same color"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let dart_colors = vertex
            .iter()
            .map(|&v| color[v].expect("connected"))
            .collect();
        ColoredMap::new(self.clone(), dart_colors)
    }
}

pub(crate) fn standard_alpha(n: usize) -> Permutation {
    Permutation::from_images((0..n).map(|d| d ^ 1).collect()).expect("pairing is a bijection")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "w")]
    White,
    #[serde(rename = "b")]
    Black,
}

impl Color {
    pub fn swapped(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// A map with a proper white/black vertex coloring, stored per dart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredMap {
    base: OrientedMap,
    colors: Vec<Color>,
}

impl ColoredMap {
    pub fn new(base: OrientedMap, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != base.n_darts() {
            return Err(Error::SizeMismatch {
                expected: base.n_darts(),
                found: colors.len(),
            });
        }
        for d in 0..base.n_darts() {
            if colors[d] != colors[base.sigma.apply(d)] {
                return Err(Error::InvalidColoring(format!(
                    "darts {d} and {} share a vertex but not a color",
                    base.sigma.apply(d)
                )));
            }
            if colors[d] == colors[base.alpha.apply(d)] {
                return Err(Error::InvalidColoring(format!(
                    "edge at dart {d} is monochromatic"
                )));
            }
        }
        Ok(ColoredMap { base, colors })
    }

    pub fn base(&self) -> &OrientedMap {
        &self.base
    }

    pub fn into_base(self) -> OrientedMap {
        self.base
    }

    /// Color of the vertex at each dart.
    pub fn dart_colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, d: usize) -> Color {
        self.colors[d]
    }

    pub fn n_darts(&self) -> usize {
        self.base.n_darts()
    }

    pub fn counts(&self) -> Counts {
        self.base.counts()
    }

    /// Number of (white, black) vertices.
    pub fn color_counts(&self) -> (usize, usize) {
        let white = self
            .base
            .vertices()
            .iter()
            .filter(|v| self.colors[v[0]] == Color::White)
            .count();
        (white, self.base.sigma.cycle_count() - white)
    }

    pub fn mirror(&self) -> ColoredMap {
        ColoredMap {
            base: self.base.mirror(),
            colors: self.colors.clone(),
        }
    }

    pub fn swap_colors(&self) -> ColoredMap {
        ColoredMap {
            base: self.base.clone(),
            colors: self.colors.iter().map(|c| c.swapped()).collect(),
        }
    }

    pub fn relabel(&self, r: &Permutation) -> Result<ColoredMap> {
        let base = self.base.relabel(r)?;
        let mut colors = vec![Color::White; self.colors.len()];
        for (d, &c) in self.colors.iter().enumerate() {
            colors[r.apply(d)] = c;
        }
        Ok(ColoredMap { base, colors })
    }
}

/// Interchange form of a map: image tables indexed by dart, with optional
/// per-dart vertex colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub n_darts: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<Vec<Color>>,
}

impl From<&OrientedMap> for MapRecord {
    fn from(m: &OrientedMap) -> Self {
        MapRecord {
            n_darts: m.n_darts(),
            alpha: m.alpha.images().to_vec(),
            sigma: m.sigma.images().to_vec(),
            colors: None,
        }
    }
}

impl From<&ColoredMap> for MapRecord {
    fn from(m: &ColoredMap) -> Self {
        MapRecord {
            colors: Some(m.colors.clone()),
            ..MapRecord::from(&m.base)
        }
    }
}

impl MapRecord {
    pub fn to_map(&self) -> Result<OrientedMap> {
        if self.alpha.len() != self.n_darts || self.sigma.len() != self.n_darts {
            return Err(Error::SizeMismatch {
                expected: self.n_darts,
                found: self.alpha.len().max(self.sigma.len()),
            });
        }
        OrientedMap::new(
            Permutation::from_images(self.alpha.clone())?,
            Permutation::from_images(self.sigma.clone())?,
        )
    }

    pub fn to_colored(&self) -> Result<ColoredMap> {
        let colors = self
            .colors
            .clone()
            .ok_or_else(|| Error::InvalidColoring("record carries no colors".into()))?;
        ColoredMap::new(self.to_map()?, colors)
    }
}
