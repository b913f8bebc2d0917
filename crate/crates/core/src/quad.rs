//! Quadrangulations of maps and the moves between them.
//!
//! [`quadrangulate`] works corner by corner: the corner of a map `m` at face
//! element `d` (see [`crate::map`]) becomes one edge of `Q`, with white end
//! dart `2d` and black end dart `2d + 1`. Around a white vertex the rotation
//! follows `sigma`; around a black vertex (a face of `m`, traversed with the
//! face on the right) it follows `phi⁻¹`. Every face of `Q` then has degree
//! four and `phi_Q²(2·sigma(e)) = 2·sigma(alpha(e))`, which is what
//! [`dequadrangulate`] inverts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::{standard_alpha, Color, ColoredMap, Counts, OrientedMap};
use crate::perm::Permutation;

/// An arc that can be drawn inside the hexagonal face of an `M(4,4,6)` map:
/// it joins the black corner `black_corner` to the corner three steps further
/// along the face circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcDescriptor {
    pub black_corner: usize,
    pub white_corner: usize,
}

pub fn quadrangulate(m: &OrientedMap) -> ColoredMap {
    let n = m.n_darts();
    let phi_inv = m.phi().inverse();
    let mut sigma = vec![0; 2 * n];
    let mut colors = vec![Color::White; 2 * n];
    for d in 0..n {
        sigma[2 * d] = 2 * m.sigma().apply(d);
        sigma[2 * d + 1] = 2 * phi_inv.apply(d) + 1;
        colors[2 * d + 1] = Color::Black;
    }
    let sigma = Permutation::from_images(sigma).expect("rotation of Q is a bijection");
    let base = OrientedMap::new(standard_alpha(2 * n), sigma)
        .expect("quadrangulation of a connected map is connected");
    ColoredMap::new(base, colors).expect("every edge of Q joins a corner to its face")
}

/// Recovers the map whose quadrangulation is `q`. White darts of `q`, taken in
/// increasing order, become the darts of the result.
pub fn dequadrangulate(q: &ColoredMap) -> Result<OrientedMap> {
    let base = q.base();
    if !base.face_degrees().iter().all(|&deg| deg == 4) {
        return Err(Error::Shape(format!(
            "not a quadrangulation: face degrees {:?}",
            base.face_degrees()
        )));
    }
    let whites: Vec<usize> = (0..q.n_darts())
        .filter(|&d| q.color(d) == Color::White)
        .collect();
    let mut index = vec![usize::MAX; q.n_darts()];
    for (i, &d) in whites.iter().enumerate() {
        index[d] = i;
    }
    let phi = base.phi();
    let sigma: Vec<usize> = whites
        .iter()
        .map(|&d| index[base.sigma().apply(d)])
        .collect();
    let sigma = Permutation::from_images(sigma)?;
    let sigma_inv = sigma.inverse();
    let mut alpha = Vec::with_capacity(whites.len());
    for &d in &whites {
        let across = phi.apply(phi.apply(base.sigma().apply(d)));
        if q.color(across) != Color::White {
            return Err(Error::Integrity(format!(
                "face through dart {d} does not alternate colors"
            )));
        }
        alpha.push(sigma_inv.apply(index[across]));
    }
    let alpha = Permutation::from_images(alpha)?;
    OrientedMap::new(alpha, sigma).map_err(|e| Error::Integrity(e.to_string()))
}

/// Edges, as `[least dart, other dart]`, whose two sides lie in different faces.
pub fn separating_edges(q: &ColoredMap) -> Vec<[usize; 2]> {
    let face = q.base().face_of();
    q.base()
        .edges()
        .into_iter()
        .filter(|&[a, b]| face[a] != face[b])
        .collect()
}

/// Removes a separating edge; the two faces it separates merge into one.
/// Remaining darts keep their relative order.
pub fn delete_separating_edge(q: &ColoredMap, edge: [usize; 2]) -> Result<ColoredMap> {
    let base = q.base();
    let [a, b] = edge;
    if a >= q.n_darts() || base.alpha().apply(a) != b {
        return Err(Error::Shape(format!("({a}, {b}) is not an edge")));
    }
    let face = base.face_of();
    if face[a] == face[b] {
        return Err(Error::NotSeparating(a, b));
    }
    let n = q.n_darts();
    let mut index = vec![usize::MAX; n];
    let kept: Vec<usize> = (0..n).filter(|&d| d != a && d != b).collect();
    for (i, &d) in kept.iter().enumerate() {
        index[d] = i;
    }
    let mut sigma = Vec::with_capacity(kept.len());
    let mut alpha = Vec::with_capacity(kept.len());
    for &d in &kept {
        let mut next = base.sigma().apply(d);
        while next == a || next == b {
            next = base.sigma().apply(next);
        }
        sigma.push(index[next]);
        alpha.push(index[base.alpha().apply(d)]);
    }
    let colors = kept.iter().map(|&d| q.color(d)).collect();
    let map = OrientedMap::new(Permutation::from_images(alpha)?, Permutation::from_images(sigma)?)
        .map_err(|e| Error::Integrity(format!("deleting a separating edge: {e}")))?;
    ColoredMap::new(map, colors)
}

/// Checks the `M(4,4,6)` shape: 3 white and 3 black vertices, 7 edges, faces
/// of perimeters 4, 4 and 6.
pub fn check_m446_shape(m: &ColoredMap) -> Result<()> {
    let counts = m.counts();
    if counts != Counts::new(6, 7, 3) {
        return Err(Error::Shape(format!("counts {counts:?}, expected (6, 7, 3)")));
    }
    if m.base().face_degrees() != [4, 4, 6] {
        return Err(Error::Shape(format!(
            "face degrees {:?}, expected [4, 4, 6]",
            m.base().face_degrees()
        )));
    }
    if m.color_counts() != (3, 3) {
        return Err(Error::Shape(format!(
            "color counts {:?}, expected 3 white and 3 black",
            m.color_counts()
        )));
    }
    Ok(())
}

/// The three arcs of the hexagonal face, in circuit order starting from the
/// least dart of that face.
pub fn arcs(m: &ColoredMap) -> Result<[ArcDescriptor; 3]> {
    let phi = m.base().phi();
    let hexagon = phi
        .cycles()
        .into_iter()
        .find(|f| f.len() == 6)
        .ok_or_else(|| Error::Shape("no face of perimeter 6".into()))?;
    let mut out = Vec::with_capacity(3);
    for (i, &d) in hexagon.iter().enumerate() {
        let opposite = hexagon[(i + 3) % 6];
        if m.color(d) == Color::Black {
            if m.color(opposite) != Color::White {
                return Err(Error::Shape("hexagon corners do not alternate".into()));
            }
            out.push(ArcDescriptor {
                black_corner: d,
                white_corner: opposite,
            });
        }
    }
    out.try_into()
        .map_err(|_| Error::Shape("hexagon does not have three black corners".into()))
}

/// Draws the arc inside its corners. The new darts are `n` (black end) and
/// `n + 1` (white end).
pub fn insert_arc(m: &ColoredMap, arc: ArcDescriptor) -> Result<ColoredMap> {
    let base = m.base();
    let n = m.n_darts();
    let ArcDescriptor {
        black_corner,
        white_corner,
    } = arc;
    if black_corner >= n || white_corner >= n {
        return Err(Error::Shape("arc corner outside the map".into()));
    }
    let phi = base.phi();
    let three = phi.apply(phi.apply(phi.apply(black_corner)));
    if three != white_corner
        || m.color(black_corner) != Color::Black
        || m.color(white_corner) != Color::White
    {
        return Err(Error::Shape(format!(
            "arc {black_corner} -> {white_corner} does not join opposite corners"
        )));
    }
    let sigma_inv = base.sigma().inverse();
    let mut sigma: Vec<usize> = base.sigma().images().to_vec();
    sigma.extend([black_corner, white_corner]);
    sigma[sigma_inv.apply(black_corner)] = n;
    sigma[sigma_inv.apply(white_corner)] = n + 1;
    let mut alpha: Vec<usize> = base.alpha().images().to_vec();
    alpha.extend([n + 1, n]);
    let mut colors = m.dart_colors().to_vec();
    colors.extend([Color::Black, Color::White]);
    let map = OrientedMap::new(Permutation::from_images(alpha)?, Permutation::from_images(sigma)?)?;
    ColoredMap::new(map, colors)
}
