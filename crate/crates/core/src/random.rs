//! Random test inputs: matrices, Δ-complexes, and admissible Frobenius actions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::IndexedRandom;
use rand::Rng;

use crate::complex::{Component, ComplexBuilder, DeltaComplex, FrobeniusSpec, SncConfiguration, Stratum};
use crate::linalg::IntMatrix;

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.random_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, entries)
}

/// A Δ-complex on `1..=max_vertices` vertices of dimension at most `max_dim`
/// (capped at 2), with parallel edges allowed.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize, max_dim: usize) -> DeltaComplex {
    let mut b = ComplexBuilder::new();
    let n = rng.random_range(1..=max_vertices.max(1));
    for i in 0..n {
        b.vertex(format!("v{i}"));
    }
    if max_dim == 0 || n < 2 {
        return b.build().expect("vertices only");
    }
    // Parallel edges keyed by their endpoints, u < v.
    let mut between: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let edge_count = rng.random_range(0..=2 * n);
    for k in 0..edge_count {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let (u, v) = (u.min(v), u.max(v));
        let id = b.edge(format!("e{k}"), u, v);
        between.entry((u, v)).or_default().push(id);
    }
    if max_dim >= 2 {
        let mut triples = Vec::new();
        for a in 0..n {
            for bb in a + 1..n {
                for c in bb + 1..n {
                    if [(a, bb), (a, c), (bb, c)].iter().all(|p| between.contains_key(p)) {
                        triples.push((a, bb, c));
                    }
                }
            }
        }
        if !triples.is_empty() {
            let count = rng.random_range(0..=n);
            for k in 0..count {
                let &(a, bb, c) = triples.choose(rng).expect("nonempty");
                let pick = |rng: &mut R, key| *between[&key].choose(rng).expect("edge exists");
                let bc = pick(rng, (bb, c));
                let ac = pick(rng, (a, c));
                let ab = pick(rng, (a, bb));
                b.simplex(2, format!("t{k}"), vec![bc, ac, ab]);
            }
        }
    }
    b.build().expect("random complexes are well formed")
}

/// A graph configuration with a Frobenius action of order `e`.
///
/// Components come in orbits of sizes dividing `e`, at least one of size `e`.
/// Each edge orbit joins two different component orbits, so no stratum has
/// two vertices in one orbit at any level.
pub fn random_admissible_config<R: Rng + ?Sized>(rng: &mut R, e: u64) -> SncConfiguration {
    let e = e.max(1) as usize;
    let divisors: Vec<usize> = (1..=e).filter(|d| e.is_multiple_of(*d)).collect();
    let orbit_count = rng.random_range(2..=3);
    let mut sizes: Vec<usize> = (0..orbit_count).map(|_| *divisors.choose(rng).expect("1 divides e")).collect();
    sizes[0] = e;

    let cid = |o: usize, t: usize| format!("c{o}_{t}");
    let mut components = Vec::new();
    let mut comp_action = BTreeMap::new();
    for (o, &s) in sizes.iter().enumerate() {
        for t in 0..s {
            components.push(Component {
                id: cid(o, t),
                point_degrees: vec![1],
            });
            comp_action.insert(cid(o, t), cid(o, (t + 1) % s));
        }
    }

    let mut edges = Vec::new();
    let mut edge_action = BTreeMap::new();
    let edge_orbits = rng.random_range(1..=4);
    for k in 0..edge_orbits {
        let i = rng.random_range(0..orbit_count);
        let mut j = rng.random_range(0..orbit_count - 1);
        if j >= i {
            j += 1;
        }
        let base = num_integer::lcm(sizes[i], sizes[j]);
        let size = if e.is_multiple_of(2 * base) && rng.random_bool(0.5) { 2 * base } else { base };
        let (a, b) = (rng.random_range(0..sizes[i]), rng.random_range(0..sizes[j]));
        let eid = |t: usize| format!("s{k}_{t}");
        for t in 0..size {
            edges.push(Stratum {
                id: eid(t),
                on: vec![cid(i, (a + t) % sizes[i]), cid(j, (b + t) % sizes[j])],
                facets: None,
                point_degrees: vec![1],
            });
            edge_action.insert(eid(t), eid((t + 1) % size));
        }
    }
    // `on` lists follow the component order.
    let position: BTreeMap<String, usize> = components.iter().enumerate().map(|(p, c)| (c.id.clone(), p)).collect();
    for s in &mut edges {
        s.on.sort_by_key(|id| position[id]);
    }

    SncConfiguration {
        name: format!("random-e{e}"),
        components,
        strata: BTreeMap::from([(2, edges)]),
        frobenius: Some(FrobeniusSpec {
            order: e as u64,
            components: comp_action,
            strata: BTreeMap::from([(2, edge_action)]),
        }),
    }
}
