//! End-to-end checks from small maps up to the word tables.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use ribbonmap::catalog::{build_m33, build_m446, deletion_events, pair_primes, Catalog};
use ribbonmap::census::IncidenceGraph;
use ribbonmap::golden::raw_tables;
use ribbonmap::orders::{
    black_word, compute_tables, is_eulerian_circuit, eulerian_circuit, loopless_dual, reduce_white_word,
    CyclicWord, TieBreak, WordTables,
};
use ribbonmap::quad::{arcs, dequadrangulate, insert_arc, quadrangulate, separating_edges};
use ribbonmap::{canonical_code, colored_canonical_code, Color, OrientedMap, Permutation};

struct World {
    m33: Catalog,
    m446: Catalog,
    tables: WordTables,
}

fn world() -> &'static World {
    static W: OnceLock<World> = OnceLock::new();
    W.get_or_init(|| {
        let m33 = build_m33();
        let m446 = build_m446(&m33).unwrap();
        let tables = compute_tables(&m33, &m446, TieBreak::LeastDart).unwrap();
        World { m33, m446, tables }
    })
}

fn loop_map() -> OrientedMap {
    OrientedMap::from_sigma(vec![1, 0]).unwrap()
}

fn edge_map() -> OrientedMap {
    OrientedMap::from_sigma(vec![0, 1]).unwrap()
}

fn triple(m: &OrientedMap) -> (usize, usize, usize) {
    let c = m.counts();
    (c.vertices, c.edges, c.faces)
}

#[test]
fn loop_and_edge() {
    let (l, p) = (loop_map(), edge_map());
    assert_eq!(triple(&l), (1, 1, 2));
    assert_eq!(triple(&p), (2, 1, 1));
    assert_eq!(canonical_code(&l.dual()), canonical_code(&p));
    assert_eq!(p.mirror(), p);
    assert_ne!(canonical_code(&l), canonical_code(&p));
    let swap = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
    assert_eq!(l.relabel(&swap).unwrap(), l);
    assert!(l.bicolor(Color::White).is_err());
    let colored = p.bicolor(Color::White).unwrap();
    assert_eq!(colored.dart_colors(), &[Color::White, Color::Black]);
}

#[test]
fn tiny_quadrangulations() {
    for m in [loop_map(), edge_map()] {
        let q = quadrangulate(&m);
        assert_eq!(triple(q.base()), (3, 2, 1));
        assert_eq!(dequadrangulate(&q).unwrap(), m);
    }
    let q = quadrangulate(&loop_map());
    assert!(separating_edges(&q).is_empty());
    assert!(loopless_dual(&q).unwrap().edges.is_empty());
}

#[test]
fn white_catalog() {
    let w = world();
    assert_eq!(w.m33.len(), 23);
    let mut separating = BTreeSet::new();
    let mut mirror_pair = false;
    for c in w.m33.classes() {
        assert_eq!(triple(&c.map), (3, 4, 3));
        let q = quadrangulate(&c.map);
        assert_eq!(triple(q.base()), (6, 8, 4));
        assert!(q.base().face_degrees().iter().all(|&d| d == 4));
        assert!(q.base().dual().vertex_degrees().iter().all(|&d| d == 4));
        assert_eq!(canonical_code(&dequadrangulate(&q).unwrap()), c.code);

        let sep = separating_edges(&q).len();
        separating.insert(sep);
        let d = loopless_dual(&q).unwrap();
        assert_eq!(d.nodes, 4);
        assert_eq!(d.edges.len(), sep);
        assert_eq!(d.loops_removed, 8 - sep);
        assert!(is_eulerian_circuit(&d, &eulerian_circuit(&d).unwrap()));
        assert_eq!(w.tables.white_word(&c.id).unwrap().len() + d.loops_removed, 8);

        if let Some(other) = w.m33.find(&canonical_code(&c.map.mirror())) {
            mirror_pair |= other.id != c.id;
        }
    }
    assert!(separating.contains(&4) && separating.contains(&8));
    assert!(mirror_pair);
}

#[test]
fn black_catalog_and_arcs() {
    let w = world();
    assert_eq!(w.m446.len(), 40);
    let pairing = pair_primes(&w.m446).unwrap();
    assert_eq!((pairing.pairs.len(), pairing.singletons.len()), (18, 4));

    let mut xyy = false;
    for c in w.m446.classes() {
        let h = c.colored().unwrap();
        assert_eq!(triple(h.base()), (6, 7, 3));
        let three = arcs(&h).unwrap();
        let phi = h.base().phi();
        let mut via_arcs = Vec::new();
        for a in three {
            assert_eq!(h.color(a.black_corner), Color::Black);
            assert_eq!(h.color(a.white_corner), Color::White);
            assert_eq!(phi.apply(phi.apply(phi.apply(a.black_corner))), a.white_corner);
            let q = insert_arc(&h, a).unwrap();
            let mut degrees = q.base().face_degrees();
            degrees.sort();
            assert_eq!(degrees, [4, 4, 4, 4]);
            via_arcs.push(w.m33.classify(&dequadrangulate(&q).unwrap()).unwrap().id.clone());
        }
        via_arcs.sort();
        let word = black_word(c, &w.m33).unwrap();
        assert_eq!(word.multiset(), via_arcs);
        assert_eq!(w.tables.black_word(&c.id).unwrap(), &word);
        xyy |= word.shape() == [0, 0, 1];
    }
    assert!(xyy, "no black word repeats a letter twice");
}

#[test]
fn white_words_reorder_the_deletions() {
    let w = world();
    let events = deletion_events(&w.m33).unwrap();
    assert_eq!(events.len(), 136);
    for c in w.m33.classes() {
        let mut from_events: Vec<String> = events
            .iter()
            .filter(|e| e.white == c.id)
            .map(|e| w.m446.find(&colored_canonical_code(&e.result)).unwrap().id.clone())
            .collect();
        from_events.sort();
        assert_eq!(w.tables.white_word(&c.id).unwrap().multiset(), from_events);
    }
    let total: usize = w.tables.white.iter().map(|(_, word)| word.len()).sum();
    assert_eq!(total, 136);
    let black: BTreeSet<&str> = w.m446.classes().iter().map(|c| c.id.as_str()).collect();
    let white: BTreeSet<&str> = w.m33.classes().iter().map(|c| c.id.as_str()).collect();
    for (_, word) in &w.tables.white {
        assert!(word.letters().iter().all(|l| black.contains(l.as_str())));
    }
    for (_, word) in &w.tables.black {
        assert!(word.letters().iter().all(|l| white.contains(l.as_str())));
    }
}

#[test]
fn reductions() {
    let w = world();
    let once = w.tables.reduce();
    let twice = once.reduce();
    assert_eq!(once, twice);
    for (_, word) in &once.white {
        assert_eq!(&reduce_white_word(word), word);
    }
    let parse = |s| CyclicWord::parse(s).unwrap();
    assert_eq!(reduce_white_word(&parse("12',3',3',12',3',3'")), parse("3',12'"));
}

#[test]
fn raw_fixture_is_not_symmetric() {
    let g = IncidenceGraph::assemble(&raw_tables()).unwrap();
    assert!(!g.mismatches().is_empty());
    let reduced = IncidenceGraph::assemble(&raw_tables().reduce()).unwrap();
    assert!(reduced.mismatches().is_empty());
}
