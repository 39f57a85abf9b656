//! Discrete Laplacian of an adequate graph and its Moore-Penrose pseudoinverse.

use crate::error::{Error, Result};
use crate::graph::MetrizedGraph;
use crate::matrix::DenseMatrix;
use crate::scalar::Scalar;

/// Edge-length ratio beyond which float-mode results are flagged.
pub const CONDITION_WARNING_RATIO: f64 = 1e12;

/// `D - A` with conductances `1/L_k`; rows and columns follow vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianMatrix<S>(pub DenseMatrix<S>);

/// `L⁺`, symmetric with zero row sums.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoInverse<S>(pub DenseMatrix<S>);

impl<S: Scalar> LaplacianMatrix<S> {
    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.0
    }
}

impl<S: Scalar> PseudoInverse<S> {
    pub fn matrix(&self) -> &DenseMatrix<S> {
        &self.0
    }

    pub fn entry(&self, p: usize, q: usize) -> &S {
        &self.0[(p, q)]
    }
}

pub fn build_laplacian<S: Scalar>(graph: &MetrizedGraph<S>) -> Result<LaplacianMatrix<S>> {
    if let Some(reason) = graph.adequacy_violation() {
        return Err(Error::NotAdequate(reason));
    }
    if !S::EXACT {
        let lengths = graph.edges().iter().map(|e| e.length.to_f64());
        let (lo, hi) = lengths.fold((f64::INFINITY, 0.0f64), |(lo, hi), l| {
            (lo.min(l), hi.max(l))
        });
        if hi / lo > CONDITION_WARNING_RATIO {
            log::warn!(
                "edge length ratio {:.3e} exceeds {:.0e}; float results may be ill-conditioned",
                hi / lo,
                CONDITION_WARNING_RATIO
            );
        }
    }
    let mut m: DenseMatrix<S> = DenseMatrix::zeros(graph.vertex_count());
    for e in graph.edges() {
        let c = S::one() / e.length.clone();
        m[(e.p, e.q)] = m[(e.p, e.q)].clone() - c.clone();
        m[(e.q, e.p)] = m[(e.q, e.p)].clone() - c.clone();
        m[(e.p, e.p)] = m[(e.p, e.p)].clone() + c.clone();
        m[(e.q, e.q)] = m[(e.q, e.q)].clone() + c;
    }
    Ok(LaplacianMatrix(m))
}

/// `L⁺ = (L + J/v)⁻¹ - J/v`, valid because the kernel of a connected graph's
/// Laplacian is spanned by the all-ones vector.
pub fn pseudo_inverse<S: Scalar>(laplacian: &LaplacianMatrix<S>) -> Result<PseudoInverse<S>> {
    let n = laplacian.0.size();
    let shift = S::one() / S::from_usize(n);
    let shifted = DenseMatrix::from_fn(n, |i, j| laplacian.0[(i, j)].clone() + shift.clone());
    let inv = shifted.spd_inverse()?;
    Ok(PseudoInverse(DenseMatrix::from_fn(n, |i, j| {
        inv[(i, j)].clone() - shift.clone()
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, Edge};
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn tetrahedron() -> MetrizedGraph<Rational> {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        MetrizedGraph::new(
            (1..=4).map(|i| format!("v{i}")).collect(),
            pairs
                .iter()
                .enumerate()
                .map(|(k, &(p, q_))| Edge {
                    label: format!("e{}", k + 1),
                    p,
                    q: q_,
                    length: q(1, 1),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn triangle_laplacian_rows() {
        let g: MetrizedGraph<Rational> = parse_graph(
            r#"{"vertices":["v1","v2","v3"],"edges":[
                {"id":"e1","from":"v1","to":"v2","length":1},
                {"id":"e2","from":"v1","to":"v3","length":2},
                {"id":"e3","from":"v2","to":"v3","length":3}]}"#,
        )
        .unwrap();
        let l = build_laplacian(&g).unwrap();
        assert_eq!(l.0.row(0), &[q(3, 2), q(-1, 1), q(-1, 2)]);
        assert!(l.0.is_symmetric());
        for row in l.0.rows() {
            assert_eq!(row.iter().cloned().fold(q(0, 1), |a, b| a + b), q(0, 1));
        }
    }

    #[test]
    fn tetrahedron_laplacian_and_pseudoinverse() {
        let l = build_laplacian(&tetrahedron()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { q(3, 1) } else { q(-1, 1) };
                assert_eq!(l.0[(i, j)], expected);
            }
        }
        let p = pseudo_inverse(&l).unwrap();
        // (1/16)(4I - J)
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { q(3, 16) } else { q(-1, 16) };
                assert_eq!(p.0[(i, j)], expected);
            }
        }
    }

    #[test]
    fn single_edge() {
        let g: MetrizedGraph<Rational> = parse_graph(
            r#"{"vertices":["a","b"],"edges":[{"id":"e","from":"a","to":"b","length":"5/2"}]}"#,
        )
        .unwrap();
        let l = build_laplacian(&g).unwrap();
        assert_eq!(l.0.row(0), &[q(2, 5), q(-2, 5)]);
        let p = pseudo_inverse(&l).unwrap();
        assert_eq!(p.0.row(0), &[q(5, 8), q(-5, 8)]);
    }

    #[test]
    fn unit_triangle_pseudoinverse() {
        let g: MetrizedGraph<Rational> = parse_graph(
            r#"{"vertices":["v1","v2","v3"],"edges":[
                {"id":"e1","from":"v1","to":"v2","length":1},
                {"id":"e2","from":"v1","to":"v3","length":1},
                {"id":"e3","from":"v2","to":"v3","length":1}]}"#,
        )
        .unwrap();
        let p = pseudo_inverse(&build_laplacian(&g).unwrap()).unwrap();
        assert_eq!(p.0[(0, 0)], q(2, 9));
        assert_eq!(p.0[(0, 1)], q(-1, 9));
    }

    #[test]
    fn rejects_non_adequate_graph() {
        let g: MetrizedGraph<Rational> = parse_graph(
            r#"{"vertices":["a"],"edges":[{"id":"e","from":"a","to":"a","length":1}]}"#,
        )
        .unwrap();
        assert!(matches!(build_laplacian(&g), Err(Error::NotAdequate(_))));
    }
}
