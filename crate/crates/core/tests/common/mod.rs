#![allow(dead_code)]

use metrized_green::{Edge, MetrizedGraph, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x6d67_7265_656e;
pub const CORPUS_SIZE: usize = 50;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn edge(label: impl Into<String>, p: usize, q_: usize, length: Rational) -> Edge<Rational> {
    Edge {
        label: label.into(),
        p,
        q: q_,
        length,
    }
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

/// Lengths `m/d` with `d ≤ 4`, between 1/4 and 3.
fn random_length<R: Rng>(rng: &mut R) -> Rational {
    let d = rng.gen_range(1..=4i64);
    let m = rng.gen_range(1..=3 * d);
    q(m, d)
}

/// A connected multigraph with `3 ≤ v ≤ 8`, at most 16 edges, and occasional
/// self-loops and parallel edges.
pub fn random_graph<R: Rng>(rng: &mut R) -> MetrizedGraph<Rational> {
    let v = rng.gen_range(3..=8usize);
    let target = rng.gen_range(v - 1..=16usize);
    let mut edges = Vec::new();
    for k in 1..v {
        let parent = rng.gen_range(0..k);
        edges.push((parent, k));
    }
    while edges.len() < target {
        let roll = rng.gen_range(0..10);
        let p = rng.gen_range(0..v);
        let pair = if roll == 0 {
            (p, p)
        } else if roll == 1 {
            edges[rng.gen_range(0..edges.len())]
        } else {
            let q_ = rng.gen_range(0..v);
            if q_ == p {
                continue;
            }
            (p, q_)
        };
        edges.push(pair);
    }
    let edges = edges
        .into_iter()
        .enumerate()
        .map(|(k, (p, q_))| edge(format!("e{}", k + 1), p, q_, random_length(rng)))
        .collect();
    MetrizedGraph::new(names(v), edges).expect("spanning tree keeps the graph connected")
}

pub fn corpus() -> Vec<MetrizedGraph<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_SIZE).map(|_| random_graph(&mut rng)).collect()
}

/// Circle on three vertices, edges `(v1,v2), (v1,v3), (v2,v3)` of lengths `a, b, c`.
pub fn circle(a: Rational, b: Rational, c: Rational) -> MetrizedGraph<Rational> {
    MetrizedGraph::new(
        names(3),
        vec![
            edge("e1", 0, 1, a),
            edge("e2", 0, 2, b),
            edge("e3", 1, 2, c),
        ],
    )
    .unwrap()
}

/// Tree with edges `(v1,v3), (v2,v3), (v3,v4), (v4,v5), (v4,v6)`.
pub fn tree(lengths: [Rational; 5]) -> MetrizedGraph<Rational> {
    let pairs = [(0, 2), (1, 2), (2, 3), (3, 4), (3, 5)];
    MetrizedGraph::new(
        names(6),
        pairs
            .iter()
            .zip(lengths)
            .enumerate()
            .map(|(k, (&(p, q_), l))| edge(format!("e{}", k + 1), p, q_, l))
            .collect(),
    )
    .unwrap()
}

/// Unit tetrahedron, edges `(v1,v2), (v1,v3), (v1,v4), (v2,v3), (v2,v4), (v3,v4)`.
pub fn tetrahedron() -> MetrizedGraph<Rational> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    MetrizedGraph::new(
        names(4),
        pairs
            .iter()
            .enumerate()
            .map(|(k, &(p, q_))| edge(format!("e{}", k + 1), p, q_, q(1, 1)))
            .collect(),
    )
    .unwrap()
}

pub fn to_float(graph: &MetrizedGraph<Rational>) -> MetrizedGraph<f64> {
    graph.map_lengths(|l| l.to_f64())
}
