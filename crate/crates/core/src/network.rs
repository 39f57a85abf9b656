//! Vertex resistances and voltages, and the edge-deleted circuit reduction.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetrizedGraph, Side, VertexId};
use crate::laplacian::{build_laplacian, pseudo_inverse, LaplacianMatrix, PseudoInverse};
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Effective resistances between vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ResistanceMatrix<S>(pub DenseMatrix<S>);

impl<S: Scalar> ResistanceMatrix<S> {
    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.0
    }
}

/// The reduced circuit seen from vertex `p` with reference to edge `e_i`.
///
/// `r_a`, `r_b` and `r_c` are the voltages `j_{p_i}(p, q_i)`, `j_{q_i}(p, p_i)`
/// and `j_p(p_i, q_i)` in `Γ - e_i`, and `r_i` is the resistance between the
/// endpoints of `e_i` once its interior is removed. On a bridge those are
/// infinite on one side, so only the side of `p` is recorded.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeDeletedData<S> {
    Connected { r_i: S, r_a: S, r_b: S, r_c: S },
    Bridge { side: Side },
}

/// `r(p,q) = l⁺_pp - 2 l⁺_pq + l⁺_qq`.
pub fn resistance<S: Scalar>(pinv: &PseudoInverse<S>, p: VertexId, q: VertexId) -> S {
    let l = pinv.matrix();
    l[(p, p)].clone() - l[(p, q)].clone() * S::from_usize(2) + l[(q, q)].clone()
}

/// `j_p(q,s) = l⁺_pp - l⁺_pq - l⁺_ps + l⁺_qs`.
pub fn voltage<S: Scalar>(pinv: &PseudoInverse<S>, p: VertexId, q: VertexId, s: VertexId) -> S {
    let l = pinv.matrix();
    l[(p, p)].clone() - l[(p, q)].clone() - l[(p, s)].clone() + l[(q, s)].clone()
}

pub fn resistance_matrix<S: Scalar>(pinv: &PseudoInverse<S>) -> ResistanceMatrix<S> {
    let n = pinv.matrix().size();
    ResistanceMatrix(DenseMatrix::from_fn(n, |p, q| {
        if p == q {
            S::zero()
        } else {
            resistance(pinv, p, q)
        }
    }))
}

/// Recovers `R_i`, `R_a`, `R_b`, `R_c` from the resistances of `Γ` itself by
/// inverting the series-parallel relations of the reduced circuit.
pub fn edge_deleted_data<S: Scalar>(
    graph: &MetrizedGraph<S>,
    pinv: &PseudoInverse<S>,
    e: EdgeId,
    p: VertexId,
) -> Result<EdgeDeletedData<S>> {
    if p >= graph.vertex_count() {
        return Err(Error::UnknownVertexId(format!("#{p}")));
    }
    if graph.is_bridge(e)? {
        return Ok(EdgeDeletedData::Bridge {
            side: graph.side_of(e, p)?,
        });
    }
    let edge = graph.edge(e);
    let length = edge.length.clone();
    let across = resistance(pinv, edge.p, edge.q);
    let gap = length.clone() - across.clone();
    if gap.is_negligible(&length) {
        return Err(Error::InconsistentEdge(edge.label.clone()));
    }
    let r_i = length.clone() * across / gap;
    let to_p = resistance(pinv, p, edge.p);
    let to_q = resistance(pinv, p, edge.q);
    let total = length.clone() + r_i.clone();
    // r(p,p_i) - r(p,q_i) = L (R_a - R_b) / (L + R_i)
    let diff = (to_p.clone() - to_q) * total.clone() / length.clone();
    let r_a = (r_i.clone() + diff.clone()) * S::half();
    let r_b = (r_i.clone() - diff) * S::half();
    let r_c = to_p - r_a.clone() * (length + r_b.clone()) / total;
    Ok(EdgeDeletedData::Connected { r_i, r_a, r_b, r_c })
}

/// An adequate graph together with everything derived from its Laplacian.
#[derive(Clone, Debug)]
pub struct Network<S> {
    graph: MetrizedGraph<S>,
    laplacian: LaplacianMatrix<S>,
    pinv: PseudoInverse<S>,
    resistance: ResistanceMatrix<S>,
    bridges: Vec<Option<Vec<Side>>>,
}

impl<S: Scalar> Network<S> {
    /// Builds the network of an adequate graph.
    pub fn new(graph: MetrizedGraph<S>) -> Result<Self> {
        let laplacian = build_laplacian(&graph)?;
        let pinv = pseudo_inverse(&laplacian)?;
        let resistance = resistance_matrix(&pinv);
        let bridges = (0..graph.edge_count())
            .map(|e| graph.bridge_sides(e))
            .collect::<Result<_>>()?;
        Ok(Network {
            graph,
            laplacian,
            pinv,
            resistance,
            bridges,
        })
    }

    /// Refines to an adequate vertex set first.
    pub fn from_graph(graph: &MetrizedGraph<S>) -> Result<Self> {
        Self::new(graph.refine_adequate())
    }

    pub fn graph(&self) -> &MetrizedGraph<S> {
        &self.graph
    }

    pub fn laplacian(&self) -> &LaplacianMatrix<S> {
        &self.laplacian
    }

    pub fn pseudo_inverse(&self) -> &PseudoInverse<S> {
        &self.pinv
    }

    pub fn resistance_matrix(&self) -> &ResistanceMatrix<S> {
        &self.resistance
    }

    pub fn r(&self, p: VertexId, q: VertexId) -> &S {
        &self.resistance.0[(p, q)]
    }

    /// `j_p(q, s)` from resistances: `(r(p,q) + r(p,s) - r(q,s)) / 2`.
    pub fn j(&self, p: VertexId, q: VertexId, s: VertexId) -> S {
        (self.r(p, q).clone() + self.r(p, s).clone() - self.r(q, s).clone()) * S::half()
    }

    pub fn is_bridge(&self, e: EdgeId) -> bool {
        self.bridges[e].is_some()
    }

    /// Side of `v` relative to bridge `e`, `None` for non-bridges.
    pub fn side(&self, e: EdgeId, v: VertexId) -> Option<Side> {
        self.bridges[e].as_ref().map(|sides| sides[v])
    }

    pub fn bridge_count(&self) -> usize {
        self.bridges.iter().filter(|b| b.is_some()).count()
    }

    pub fn edge_deleted_data(&self, e: EdgeId, p: VertexId) -> Result<EdgeDeletedData<S>> {
        edge_deleted_data(&self.graph, &self.pinv, e, p)
    }

    /// `(L_i - r(p_i, q_i)) / L_i²`, the curvature of `r` along edge `e`;
    /// zero exactly on bridges.
    pub fn curvature(&self, e: EdgeId) -> S {
        if self.is_bridge(e) {
            return S::zero();
        }
        let edge = self.graph.edge(e);
        (edge.length.clone() - self.r(edge.p, edge.q).clone()) / edge.length.sq()
    }
}
