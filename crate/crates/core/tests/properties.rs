//! Property tests on random small maps.

use proptest::prelude::*;
use ribbonmap::quad::{dequadrangulate, quadrangulate};
use ribbonmap::{canonical_code, canonical_form, OrientedMap, Permutation};

/// Connected maps with the standard edge involution and up to 12 darts.
fn small_map() -> impl Strategy<Value = OrientedMap> {
    (1usize..=6)
        .prop_flat_map(|edges| Just((0..2 * edges).collect::<Vec<_>>()).prop_shuffle())
        .prop_filter_map("disconnected", |sigma| OrientedMap::from_sigma(sigma).ok())
}

fn map_and_relabeling() -> impl Strategy<Value = (OrientedMap, Permutation)> {
    small_map().prop_flat_map(|m| {
        let n = m.n_darts();
        (
            Just(m),
            Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dual_is_an_involution(m in small_map()) {
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn mirror_is_an_involution(m in small_map()) {
        prop_assert_eq!(m.mirror().mirror(), m);
    }

    #[test]
    fn dual_swaps_vertices_and_faces(m in small_map()) {
        let (c, d) = (m.counts(), m.dual().counts());
        prop_assert_eq!((c.vertices, c.edges, c.faces), (d.faces, d.edges, d.vertices));
        prop_assert_eq!(m.euler_genus(), m.dual().euler_genus());
    }

    #[test]
    fn genus_is_well_defined(m in small_map()) {
        let g = m.euler_genus().unwrap();
        prop_assert!(2 * g <= m.counts().edges + 1);
        prop_assert_eq!(m.mirror().euler_genus().unwrap(), g);
    }

    #[test]
    fn code_is_relabeling_invariant((m, r) in map_and_relabeling()) {
        let moved = m.relabel(&r).unwrap();
        prop_assert_eq!(canonical_code(&moved), canonical_code(&m));
        prop_assert_eq!(moved.relabel(&r.inverse()).unwrap(), m);
    }

    #[test]
    fn canonical_representative_is_a_fixed_point((m, r) in map_and_relabeling()) {
        let (code, rep) = canonical_form(&m);
        let (_, rep2) = canonical_form(&m.relabel(&r).unwrap());
        prop_assert_eq!(&rep, &rep2);
        prop_assert_eq!(canonical_code(&rep), code);
    }

    #[test]
    fn automorphisms_divide_darts(m in small_map()) {
        let code = canonical_code(&m);
        prop_assert_eq!(m.n_darts() % code.automorphism_count(), 0);
    }

    #[test]
    fn quadrangulation_round_trips(m in small_map()) {
        let q = quadrangulate(&m);
        let c = m.counts();
        let qc = q.counts();
        prop_assert_eq!((qc.vertices, qc.edges, qc.faces), (c.vertices + c.faces, 2 * c.edges, c.edges));
        prop_assert!(q.base().face_degrees().iter().all(|&d| d == 4));
        prop_assert_eq!(q.base().euler_genus(), m.euler_genus());
        prop_assert_eq!(dequadrangulate(&q).unwrap(), m);
    }
}
