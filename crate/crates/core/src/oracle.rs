//! Independent checks that never touch the piecewise formulas.
//!
//! Interior points are turned into genuine valence-two vertices and the
//! resistances are read off the Laplacian of the subdivided graph.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, MetrizedGraph, Point, VertexId};
use crate::laplacian::{build_laplacian, pseudo_inverse};
use crate::matrix::DenseMatrix;
use crate::network::resistance;
use crate::scalar::Scalar;

/// Subdivides `graph` so that every point becomes a vertex. Returns the new
/// graph and the vertex of each input point.
pub fn subdivide_at<S: Scalar>(
    graph: &MetrizedGraph<S>,
    points: &[Point<S>],
) -> Result<(MetrizedGraph<S>, Vec<VertexId>)> {
    let canonical = points
        .iter()
        .map(|p| graph.canonicalize(p))
        .collect::<Result<Vec<_>>>()?;
    let mut cuts: BTreeMap<EdgeId, Vec<S>> = BTreeMap::new();
    for p in &canonical {
        if let Point::Interior { edge, offset } = p {
            let list = cuts.entry(*edge).or_default();
            if !list.contains(offset) {
                list.push(offset.clone());
            }
        }
    }
    let mut vertices = graph.vertices().to_vec();
    let mut edges = Vec::new();
    // (edge, offset) -> vertex, in insertion order
    let mut inserted: Vec<(EdgeId, S, VertexId)> = Vec::new();
    for (e, edge) in graph.edges().iter().enumerate() {
        let mut offsets = cuts.remove(&e).unwrap_or_default();
        offsets.sort_by(|a, b| a.partial_cmp(b).expect("ordered offsets"));
        let mut previous = (edge.p, S::zero());
        for (k, t) in offsets.into_iter().enumerate() {
            vertices.push(format!("{}#{}", edge.label, k + 1));
            let v = vertices.len() - 1;
            edges.push(Edge {
                label: format!("{}#{}", edge.label, k + 1),
                p: previous.0,
                q: v,
                length: t.clone() - previous.1.clone(),
            });
            inserted.push((e, t.clone(), v));
            previous = (v, t);
        }
        edges.push(Edge {
            label: edge.label.clone(),
            p: previous.0,
            q: edge.q,
            length: edge.length.clone() - previous.1,
        });
    }
    let ids = canonical
        .iter()
        .map(|p| match p {
            Point::Vertex(v) => *v,
            Point::Interior { edge, offset } => inserted
                .iter()
                .find(|(e, t, _)| e == edge && t == offset)
                .map(|(_, _, v)| *v)
                .expect("inserted point"),
        })
        .collect();
    Ok((MetrizedGraph::new(vertices, edges)?, ids))
}

/// Pairwise resistances between `points`, computed on the subdivided graph.
pub fn oracle_resistance<S: Scalar>(
    graph: &MetrizedGraph<S>,
    points: &[Point<S>],
) -> Result<DenseMatrix<S>> {
    let (refined, ids) = subdivide_at(graph, points)?;
    let pinv = pseudo_inverse(&build_laplacian(&refined)?)?;
    Ok(DenseMatrix::from_fn(ids.len(), |a, b| {
        if ids[a] == ids[b] {
            S::zero()
        } else {
            resistance(&pinv, ids[a], ids[b])
        }
    }))
}

/// Quadrature estimate of `τ` from `k` equal sub-segments per edge, using
/// secant slopes of `r(v₀, ·)` on the subdivided graph.
pub fn oracle_tau<S: Scalar>(graph: &MetrizedGraph<S>, k: usize) -> Result<S> {
    oracle_tau_from(graph, k, 0)
}

pub fn oracle_tau_from<S: Scalar>(graph: &MetrizedGraph<S>, k: usize, base: VertexId) -> Result<S> {
    if k < 2 {
        return Err(Error::TooFewSubdivisions(k));
    }
    let v = graph.vertex_count();
    let interior = graph.edge_count() * (k - 1);
    // Interior nodes come first so that eliminating them along each chain
    // only ever fills in against the chain's starting vertex.
    let node_of_vertex = |u: VertexId| interior + u;
    let chain_node = |e: EdgeId, t: usize| e * (k - 1) + (t - 1);
    let node_at = |e: EdgeId, t: usize| {
        let edge = graph.edge(e);
        if t == 0 {
            node_of_vertex(edge.p)
        } else if t == k {
            node_of_vertex(edge.q)
        } else {
            chain_node(e, t)
        }
    };
    let n = interior + v;
    let mut system = GroundedLaplacian::new(n, node_of_vertex(base));
    for (e, edge) in graph.edges().iter().enumerate() {
        let conductance = S::from_usize(k) / edge.length.clone();
        for t in 0..k {
            system.add_conductance(node_at(e, t), node_at(e, t + 1), conductance.clone());
        }
    }
    let factor = system.factor()?;
    let mut sum = S::zero();
    for (e, edge) in graph.edges().iter().enumerate() {
        let h = edge.length.clone() / S::from_usize(k);
        let values: Vec<S> = (0..=k)
            .map(|t| factor.diagonal_of_inverse(node_at(e, t)))
            .collect();
        for w in values.windows(2) {
            let slope = (w[1].clone() - w[0].clone()) / h.clone();
            sum = sum + slope.sq() * h.clone();
        }
    }
    Ok(sum / S::from_usize(4))
}

/// Laplacian with one node grounded, stored as symmetric sparse rows.
struct GroundedLaplacian<S> {
    ground: usize,
    rows: Vec<BTreeMap<usize, S>>,
}

struct SparseFactor<S> {
    ground: usize,
    /// column k of the unit lower factor: (row, value) with row > k
    columns: Vec<Vec<(usize, S)>>,
    pivots: Vec<S>,
}

impl<S: Scalar> GroundedLaplacian<S> {
    fn new(n: usize, ground: usize) -> Self {
        GroundedLaplacian {
            ground,
            rows: vec![BTreeMap::new(); n],
        }
    }

    fn add(&mut self, i: usize, j: usize, value: S) {
        if i == self.ground || j == self.ground {
            return;
        }
        let slot = self.rows[i].entry(j).or_insert_with(S::zero);
        *slot = slot.clone() + value;
    }

    fn add_conductance(&mut self, a: usize, b: usize, c: S) {
        self.add(a, a, c.clone());
        self.add(b, b, c.clone());
        self.add(a, b, -c.clone());
        self.add(b, a, -c);
    }

    fn factor(mut self) -> Result<SparseFactor<S>> {
        let n = self.rows.len();
        let mut columns = Vec::with_capacity(n);
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            if k == self.ground {
                columns.push(Vec::new());
                pivots.push(S::one());
                continue;
            }
            let row = std::mem::take(&mut self.rows[k]);
            let pivot = row.get(&k).cloned().unwrap_or_else(S::zero);
            if pivot <= S::zero() {
                return Err(Error::RankDeficient { pivot: k });
            }
            let below: Vec<(usize, S)> = row.into_iter().filter(|(j, _)| *j > k).collect();
            for (i, a_ik) in &below {
                let l = a_ik.clone() / pivot.clone();
                for (j, a_kj) in &below {
                    let slot = self.rows[*i].entry(*j).or_insert_with(S::zero);
                    *slot = slot.clone() - l.clone() * a_kj.clone();
                }
                self.rows[*i].remove(&k);
            }
            columns.push(
                below
                    .into_iter()
                    .map(|(i, a)| (i, a / pivot.clone()))
                    .collect(),
            );
            pivots.push(pivot);
        }
        Ok(SparseFactor {
            ground: self.ground,
            columns,
            pivots,
        })
    }
}

impl<S: Scalar> SparseFactor<S> {
    /// `(L_g⁻¹)_{xx}`, which is the resistance between `x` and the ground.
    fn diagonal_of_inverse(&self, x: usize) -> S {
        if x == self.ground {
            return S::zero();
        }
        // w = L⁻¹ e_x has support on indices ≥ x
        let mut w: BTreeMap<usize, S> = BTreeMap::from([(x, S::one())]);
        let mut sum = S::zero();
        while let Some((k, wk)) = w.pop_first() {
            if wk.is_zero() {
                continue;
            }
            for (i, l) in &self.columns[k] {
                let slot = w.entry(*i).or_insert_with(S::zero);
                *slot = slot.clone() - l.clone() * wk.clone();
            }
            sum = sum + wk.sq() / self.pivots[k].clone();
        }
        sum
    }
}
