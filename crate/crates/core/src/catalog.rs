//! The two catalogs: plane maps with 3 vertices and 3 faces (`M33`), and the
//! bipartite maps with faces of perimeters 4, 4 and 6 obtained from their
//! quadrangulations by deleting one separating edge (`M446`).
//!
//! Classes are sorted by canonical code and numbered in that order
//! (`W01…`, `B01…`). Representatives are stored in canonical dart order, so
//! everything derived from them is independent of how a map was first built.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, colored_canonical_code, colored_canonical_form, CanonicalCode};
use crate::error::{Error, Result};
use crate::map::{Color, ColoredMap, Counts, MapRecord, OrientedMap};
use crate::quad::{check_m446_shape, delete_separating_edge, quadrangulate, separating_edges};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogKind {
    /// Plane maps with given vertex and face counts; `M33` when both are 3.
    M33,
    M446,
}

impl CatalogKind {
    pub fn name(self) -> &'static str {
        match self {
            CatalogKind::M33 => "m33",
            CatalogKind::M446 => "m446",
        }
    }

    fn prefix(self) -> char {
        match self {
            CatalogKind::M33 => 'W',
            CatalogKind::M446 => 'B',
        }
    }
}

#[derive(Clone, Debug)]
pub struct MapClass {
    pub id: String,
    pub map: OrientedMap,
    /// Per-dart colors, present for `M446` classes.
    pub colors: Option<Vec<Color>>,
    pub code: CanonicalCode,
    pub counts: Counts,
    pub face_degrees: Vec<usize>,
    pub partner: Option<String>,
}

impl MapClass {
    pub fn automorphisms(&self) -> usize {
        self.code.automorphism_count()
    }

    pub fn colored(&self) -> Option<ColoredMap> {
        self.colors
            .as_ref()
            .map(|c| ColoredMap::new(self.map.clone(), c.clone()).expect("stored coloring is valid"))
    }

    pub fn record(&self) -> MapRecord {
        match self.colored() {
            Some(c) => MapRecord::from(&c),
            None => MapRecord::from(&self.map),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    kind: CatalogKind,
    classes: Vec<MapClass>,
    by_code: HashMap<Vec<u32>, usize>,
}

impl Catalog {
    fn assemble(kind: CatalogKind, reps: BTreeMap<CanonicalCode, (OrientedMap, Option<Vec<Color>>)>) -> Self {
        let width = reps.len().to_string().len().max(2);
        let classes: Vec<MapClass> = reps
            .into_iter()
            .enumerate()
            .map(|(i, (code, (map, colors)))| MapClass {
                id: format!("{}{:0width$}", kind.prefix(), i + 1),
                counts: map.counts(),
                face_degrees: map.face_degrees(),
                map,
                colors,
                code,
                partner: None,
            })
            .collect();
        let by_code = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.code.words().to_vec(), i))
            .collect();
        let mut catalog = Catalog {
            kind,
            classes,
            by_code,
        };
        catalog.assign_partners();
        catalog
    }

    pub fn kind(&self) -> CatalogKind {
        self.kind
    }

    pub fn classes(&self) -> &[MapClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&MapClass> {
        self.classes.iter().find(|c| c.id == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.id == id)
    }

    pub fn find(&self, code: &CanonicalCode) -> Option<&MapClass> {
        self.by_code.get(code.words()).map(|&i| &self.classes[i])
    }

    /// The class of an uncolored map.
    pub fn classify(&self, m: &OrientedMap) -> Result<&MapClass> {
        let code = crate::canon::canonical_code(m);
        self.find(&code)
            .ok_or_else(|| Error::UnknownClass(format!("{:?} map with code {code}", self.kind)))
    }

    pub fn classify_colored(&self, m: &ColoredMap) -> Result<&MapClass> {
        let code = colored_canonical_code(m);
        self.find(&code)
            .ok_or_else(|| Error::UnknownClass(format!("{:?} map with code {code}", self.kind)))
    }

    /// Codes of the mirror, the color swap and both, in that order. Uncolored
    /// classes only have a mirror.
    fn transforms(&self, class: &MapClass) -> Vec<CanonicalCode> {
        match class.colored() {
            Some(c) => vec![
                colored_canonical_code(&c.mirror()),
                colored_canonical_code(&c.swap_colors()),
                colored_canonical_code(&c.mirror().swap_colors()),
            ],
            None => vec![crate::canon::canonical_code(&class.map.mirror())],
        }
    }

    fn assign_partners(&mut self) {
        let partners: Vec<Option<String>> = self
            .classes
            .iter()
            .map(|class| {
                self.transforms(class)
                    .into_iter()
                    .find(|code| code != &class.code)
                    .and_then(|code| self.find(&code).map(|p| p.id.clone()))
            })
            .collect();
        for (class, partner) in self.classes.iter_mut().zip(partners) {
            class.partner = partner;
        }
    }

    /// Orbits of the group generated by mirror (and color swap, when colored),
    /// each sorted by id, listed by least member.
    pub fn symmetry_orbits(&self) -> Vec<Vec<String>> {
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for class in &self.classes {
            if seen.contains(&class.id) {
                continue;
            }
            let mut orbit: BTreeSet<String> = BTreeSet::new();
            orbit.insert(class.id.clone());
            for code in self.transforms(class) {
                if let Some(p) = self.find(&code) {
                    orbit.insert(p.id.clone());
                }
            }
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit.into_iter().collect());
        }
        orbits
    }

    pub fn to_record(&self) -> CatalogRecord {
        CatalogRecord {
            kind: self.kind,
            classes: self
                .classes
                .iter()
                .map(|c| ClassRecord {
                    id: c.id.clone(),
                    map: c.record(),
                    code: c.code.to_string(),
                    counts: [c.counts.vertices, c.counts.edges, c.counts.faces],
                    face_degrees: c.face_degrees.clone(),
                    automorphisms: c.automorphisms(),
                    partner: c.partner.clone(),
                })
                .collect(),
        }
    }
}

/// Catalog file contents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub kind: CatalogKind,
    pub classes: Vec<ClassRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub id: String,
    pub map: MapRecord,
    pub code: String,
    pub counts: [usize; 3],
    pub face_degrees: Vec<usize>,
    pub automorphisms: usize,
    pub partner: Option<String>,
}

/// All connected genus-0 maps with `vertices` vertices and `faces` faces, up
/// to orientation-preserving isomorphism.
///
/// Edges are fixed to `(0 1)(2 3)…` and every rotation with the right number
/// of cycles is tried, so this is only practical up to about 10 darts.
pub fn enumerate_plane_maps(vertices: usize, faces: usize) -> Result<Catalog> {
    if vertices == 0 || faces == 0 || vertices + faces < 3 {
        return Err(Error::Infeasible(format!(
            "V = {vertices}, F = {faces} leaves E = V + F - 2 < 1"
        )));
    }
    let edges = vertices + faces - 2;
    let n = 2 * edges;
    let mut reps = BTreeMap::new();
    for images in (0..n).permutations(n) {
        let sigma = crate::perm::Permutation::from_images(images).expect("permutations are bijections");
        if sigma.cycle_count() != vertices {
            continue;
        }
        let Ok(map) = OrientedMap::new(crate::map::standard_alpha(n), sigma) else {
            continue;
        };
        if map.phi().cycle_count() != faces {
            continue;
        }
        let (code, rep) = canonical_form(&map);
        reps.entry(code).or_insert((rep, None));
    }
    Ok(Catalog::assemble(CatalogKind::M33, reps))
}

pub fn build_m33() -> Catalog {
    enumerate_plane_maps(3, 3).expect("3 vertices and 3 faces are feasible")
}

/// One deletion `Q - e` from a white class.
#[derive(Clone, Debug)]
pub struct DeletionEvent {
    pub white: String,
    pub edge: [usize; 2],
    pub result: ColoredMap,
}

/// Every `(class, separating edge)` deletion over the catalog, in class order
/// then edge order.
pub fn deletion_events(m33: &Catalog) -> Result<Vec<DeletionEvent>> {
    let mut events = Vec::new();
    for class in m33.classes() {
        let q = quadrangulate(&class.map);
        for edge in separating_edges(&q) {
            let result = delete_separating_edge(&q, edge)?;
            check_m446_shape(&result).map_err(|e| {
                Error::Integrity(format!("{} minus edge {edge:?}: {e}", class.id))
            })?;
            events.push(DeletionEvent {
                white: class.id.clone(),
                edge,
                result,
            });
        }
    }
    Ok(events)
}

pub fn build_m446(m33: &Catalog) -> Result<Catalog> {
    let mut reps = BTreeMap::new();
    for event in deletion_events(m33)? {
        let (code, rep) = colored_canonical_form(&event.result);
        reps.entry(code).or_insert_with(|| {
            let colors = rep.dart_colors().to_vec();
            (rep.into_base(), Some(colors))
        });
    }
    Ok(Catalog::assemble(CatalogKind::M446, reps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub pairs: Vec<(String, String)>,
    pub singletons: Vec<String>,
    /// Orbits under mirror and color swap with more than two members; the
    /// pairing of such an orbit depends on the partner rule.
    pub large_orbits: Vec<Vec<String>>,
}

/// Groups classes into `{n, n'}` pairs by the partner relation.
pub fn pair_primes(catalog: &Catalog) -> Result<PairingReport> {
    let mut pairs = Vec::new();
    let mut singletons = Vec::new();
    for class in catalog.classes() {
        match &class.partner {
            None => singletons.push(class.id.clone()),
            Some(p) => {
                let back = catalog
                    .get(p)
                    .and_then(|pc| pc.partner.as_deref())
                    .unwrap_or_default();
                if back != class.id {
                    return Err(Error::Integrity(format!(
                        "partner relation is not symmetric: {} -> {p} -> {back}",
                        class.id
                    )));
                }
                if class.id < *p {
                    pairs.push((class.id.clone(), p.clone()));
                }
            }
        }
    }
    let large_orbits = catalog
        .symmetry_orbits()
        .into_iter()
        .filter(|o| o.len() > 2)
        .collect();
    Ok(PairingReport {
        pairs,
        singletons,
        large_orbits,
    })
}
