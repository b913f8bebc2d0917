//! Cyclic orders around the vertices of the incidence graph.
//!
//! A black class (an `M(4,4,6)` map) orders its three neighbours by walking
//! the hexagon. A white class orders the separating edges of its
//! quadrangulation `Q` along an Eulerian circuit of the loopless dual of `Q`;
//! deleting each edge names a black class.

pub mod dual;
pub mod word;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use dual::{eulerian_circuit, eulerian_circuit_with, is_eulerian_circuit, loopless_dual, DualDigraph, DualEdge};
pub use word::{
    label_order, reduce_black_word, reduce_black_word_with, reduce_white_word, reduce_white_word_with,
    BlackReduction, CyclicWord, WhiteReduction, WordTables,
};

use crate::catalog::{Catalog, MapClass};
use crate::error::Result;
use crate::quad::{arcs, delete_separating_edge, dequadrangulate, insert_arc, quadrangulate};

/// How ties between outgoing dual edges are broken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Least crossing dart first.
    #[default]
    LeastDart,
    /// Uniformly random, seeded per white class.
    Random(u64),
}

pub fn white_word(class: &MapClass, m446: &Catalog) -> Result<CyclicWord> {
    white_word_with(class, m446, TieBreak::LeastDart)
}

pub fn white_word_with(class: &MapClass, m446: &Catalog, tie: TieBreak) -> Result<CyclicWord> {
    let q = quadrangulate(&class.map);
    let d = loopless_dual(&q)?;
    let circuit = match tie {
        TieBreak::LeastDart => eulerian_circuit(&d)?,
        TieBreak::Random(seed) => {
            let salt = class.id.bytes().fold(seed, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
            let mut rng = ChaCha8Rng::seed_from_u64(salt);
            eulerian_circuit_with(&d, &mut |c| rng.gen_range(0..c.len()))?
        }
    };
    let mut letters = Vec::with_capacity(circuit.len());
    for e in circuit {
        let white = d.edges[e].crossing;
        let other = q.base().alpha().apply(white);
        let edge = [white.min(other), white.max(other)];
        let h = delete_separating_edge(&q, edge)?;
        letters.push(m446.classify_colored(&h)?.id.clone());
    }
    Ok(CyclicWord::new(letters))
}

/// The white classes reached through the three arcs, in hexagon order.
pub fn black_word(class: &MapClass, m33: &Catalog) -> Result<CyclicWord> {
    let h = class
        .colored()
        .ok_or_else(|| crate::Error::Shape(format!("{} carries no coloring", class.id)))?;
    let mut letters = Vec::with_capacity(3);
    for arc in arcs(&h)? {
        let q = insert_arc(&h, arc)?;
        let m = dequadrangulate(&q)?;
        letters.push(m33.classify(&m)?.id.clone());
    }
    Ok(CyclicWord::new(letters))
}

/// Raw words for every class of both catalogs, labelled by our ids.
pub fn compute_tables(m33: &Catalog, m446: &Catalog, tie: TieBreak) -> Result<WordTables> {
    let white = m33
        .classes()
        .iter()
        .map(|c| Ok((c.id.clone(), white_word_with(c, m446, tie)?)))
        .collect::<Result<Vec<_>>>()?;
    let black = m446
        .classes()
        .iter()
        .map(|c| Ok((c.id.clone(), black_word(c, m33)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(WordTables {
        white,
        black,
        reduced: false,
    })
}
