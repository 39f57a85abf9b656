//! `r(x, y)` and `j_x(y, z)` at arbitrary points, from vertex resistances only.
//!
//! On every pair of edges the resistance is a polynomial of degree at most two
//! in the offsets. The functions below evaluate those pieces directly; the
//! branch functions take raw offsets (endpoints included) and do not
//! canonicalize, so they can be compared against each other at shared vertices.

use crate::error::Result;
use crate::graph::{EdgeId, Point, Side, VertexId};
use crate::network::{voltage, Network};
use crate::scalar::Scalar;

/// `a x² + b x + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic<S> {
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> Quadratic<S> {
    pub fn eval(&self, x: &S) -> S {
        (self.a.clone() * x.clone() + self.b.clone()) * x.clone() + self.c.clone()
    }

    /// `∫₀ᴸ (d/dx)² dx = 4a²L³/3 + 2abL² + b²L`.
    pub fn slope_energy(&self, length: &S) -> S {
        let l = length.clone();
        S::from_ratio(4, 3) * self.a.sq() * l.sq() * l.clone()
            + S::from_usize(2) * self.a.clone() * self.b.clone() * l.sq()
            + self.b.sq() * l
    }
}

/// `r(p, x)` for `x` at offset `x` on edge `e`, as a quadratic in `x`.
pub fn vertex_profile<S: Scalar>(net: &Network<S>, p: VertexId, e: EdgeId) -> Quadratic<S> {
    let edge = net.graph().edge(e);
    let length = edge.length.clone();
    match net.side(e, p) {
        Some(Side::P) => Quadratic {
            a: S::zero(),
            b: S::one(),
            c: net.r(p, edge.p).clone(),
        },
        Some(Side::Q) => Quadratic {
            a: S::zero(),
            b: -S::one(),
            c: length + net.r(p, edge.q).clone(),
        },
        None => {
            let across = net.r(edge.p, edge.q).clone();
            let gap = length.clone() - across;
            Quadratic {
                a: -gap.clone() / length.sq(),
                b: (gap + net.r(p, edge.q).clone() - net.r(p, edge.p).clone()) / length,
                c: net.r(p, edge.p).clone(),
            }
        }
    }
}

pub fn vertex_to_edge<S: Scalar>(net: &Network<S>, p: VertexId, e: EdgeId, x: &S) -> S {
    vertex_profile(net, p, e).eval(x)
}

pub fn same_edge<S: Scalar>(net: &Network<S>, e: EdgeId, x: &S, y: &S) -> S {
    let d = x.clone() - y.clone();
    if net.is_bridge(e) {
        d.abs()
    } else {
        d.abs() - d.sq() * net.curvature(e)
    }
}

/// `r(x, y)` for `x` on `e_i` and `y` on `e_j`, `e_i ≠ e_j`.
pub fn distinct_edges<S: Scalar>(net: &Network<S>, i: EdgeId, x: &S, j: EdgeId, y: &S) -> S {
    debug_assert_ne!(i, j);
    let g = net.graph();
    let (ei, ej) = (g.edge(i), g.edge(j));
    let (li, lj) = (ei.length.clone(), ej.length.clone());
    match (net.is_bridge(i), net.is_bridge(j)) {
        (false, false) => {
            let pinv = net.pseudo_inverse();
            let (pi, qi, pj, qj) = (ei.p, ei.q, ej.p, ej.q);
            let two = S::from_usize(2);
            let xy = two.clone() * (voltage(pinv, pj, pi, qj) - voltage(pinv, pj, qi, qj))
                / (li.clone() * lj.clone());
            let cx = (li.clone() - two.clone() * voltage(pinv, pi, qi, pj)) / li;
            let cy = (lj.clone() - two * voltage(pinv, pj, pi, qj)) / lj;
            -x.sq() * net.curvature(i) - y.sq() * net.curvature(j)
                + xy * x.clone() * y.clone()
                + cx * x.clone()
                + cy * y.clone()
                + net.r(pi, pj).clone()
        }
        (true, true) => {
            let (dx, a) = match net.side(i, ej.p) {
                Some(Side::P) => (x.clone(), ei.p),
                _ => (li - x.clone(), ei.q),
            };
            let (dy, b) = match net.side(j, ei.p) {
                Some(Side::P) => (y.clone(), ej.p),
                _ => (lj - y.clone(), ej.q),
            };
            dx + dy + net.r(a, b).clone()
        }
        (true, false) => match net.side(i, ej.p) {
            Some(Side::P) => x.clone() + vertex_to_edge(net, ei.p, j, y),
            _ => li - x.clone() + vertex_to_edge(net, ei.q, j, y),
        },
        (false, true) => match net.side(j, ei.p) {
            Some(Side::P) => y.clone() + vertex_to_edge(net, ej.p, i, x),
            _ => lj - y.clone() + vertex_to_edge(net, ej.q, i, x),
        },
    }
}

/// Effective resistance between two points.
pub fn resistance_points<S: Scalar>(net: &Network<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
    let g = net.graph();
    let x = g.canonicalize(x)?;
    let y = g.canonicalize(y)?;
    Ok(match (&x, &y) {
        (Point::Vertex(p), Point::Vertex(q)) => net.r(*p, *q).clone(),
        (Point::Vertex(p), Point::Interior { edge, offset })
        | (Point::Interior { edge, offset }, Point::Vertex(p)) => {
            vertex_to_edge(net, *p, *edge, offset)
        }
        (
            Point::Interior {
                edge: i,
                offset: ox,
            },
            Point::Interior {
                edge: j,
                offset: oy,
            },
        ) => {
            if i == j {
                same_edge(net, *i, ox, oy)
            } else {
                distinct_edges(net, *i, ox, *j, oy)
            }
        }
    })
}

/// `j_x(y, z) = (r(x,y) + r(x,z) - r(y,z)) / 2`.
pub fn voltage_points<S: Scalar>(
    net: &Network<S>,
    x: &Point<S>,
    y: &Point<S>,
    z: &Point<S>,
) -> Result<S> {
    let xy = resistance_points(net, x, y)?;
    let xz = resistance_points(net, x, z)?;
    let yz = resistance_points(net, y, z)?;
    Ok((xy + xz - yz) * S::half())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_graph, Edge, MetrizedGraph};
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn tetrahedron() -> Network<Rational> {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(k, &(p, q_))| Edge {
                label: format!("e{}", k + 1),
                p,
                q: q_,
                length: q(1, 1),
            })
            .collect();
        Network::new(MetrizedGraph::new((1..=4).map(|i| format!("v{i}")).collect(), edges).unwrap())
            .unwrap()
    }

    #[test]
    fn same_point_has_zero_resistance() {
        let g: MetrizedGraph<Rational> = parse_graph(
            r#"{"vertices":["v1","v2","v3"],"edges":[
                {"id":"e1","from":"v1","to":"v2","length":1},
                {"id":"e2","from":"v1","to":"v3","length":2},
                {"id":"e3","from":"v2","to":"v3","length":3}]}"#,
        )
        .unwrap();
        let net = Network::new(g).unwrap();
        let x = Point::on_edge(0, q(1, 2));
        assert_eq!(resistance_points(&net, &x, &x).unwrap(), q(0, 1));
    }

    #[test]
    fn unit_bridge_is_a_line_segment() {
        let g: MetrizedGraph<f64> = parse_graph(
            r#"{"vertices":["a","b"],"edges":[{"id":"e","from":"a","to":"b","length":1}]}"#,
        )
        .unwrap();
        let net = Network::new(g).unwrap();
        let r = resistance_points(&net, &Point::on_edge(0, 0.2), &Point::on_edge(0, 0.7)).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_opposite_midpoints() {
        // unit current splits evenly: 1/4 + 1/4 across the middle + 1/4
        let net = tetrahedron();
        let x = Point::on_edge(0, q(1, 2));
        let y = Point::on_edge(5, q(1, 2));
        assert_eq!(resistance_points(&net, &x, &y).unwrap(), q(3, 4));
        assert_eq!(resistance_points(&net, &y, &x).unwrap(), q(3, 4));
    }

    #[test]
    fn tetrahedron_voltages() {
        let net = tetrahedron();
        let v1 = Point::Vertex(0);
        let v2 = Point::Vertex(1);
        let mid = Point::on_edge(5, q(1, 2));
        assert_eq!(voltage_points(&net, &v1, &mid, &v2).unwrap(), q(1, 4));
        assert_eq!(voltage_points(&net, &v1, &v1, &mid).unwrap(), q(0, 1));
        assert_eq!(
            voltage_points(&net, &v1, &mid, &mid).unwrap(),
            resistance_points(&net, &v1, &mid).unwrap()
        );
    }

    #[test]
    fn rejects_points_off_the_edge() {
        let net = tetrahedron();
        assert!(resistance_points(&net, &Point::on_edge(0, q(2, 1)), &Point::Vertex(0)).is_err());
        assert!(resistance_points(&net, &Point::on_edge(0, q(-1, 2)), &Point::Vertex(0)).is_err());
    }

    #[test]
    fn bridge_profiles_have_unit_slope() {
        let g: MetrizedGraph<Rational> = parse_graph(
            r#"{"vertices":["a","b","c","d"],"edges":[
                {"id":"t1","from":"a","to":"b","length":1},
                {"id":"t2","from":"b","to":"c","length":1},
                {"id":"t3","from":"c","to":"a","length":1},
                {"id":"br","from":"c","to":"d","length":2}]}"#,
        )
        .unwrap();
        let net = Network::new(g).unwrap();
        let from_a = vertex_profile(&net, 0, 3);
        assert_eq!(from_a.a, q(0, 1));
        assert_eq!(from_a.b, q(1, 1));
        let from_d = vertex_profile(&net, 3, 3);
        assert_eq!(from_d.b, q(-1, 1));
        assert_eq!(from_d.c, q(2, 1));
        for e in 0..3 {
            assert!(net.curvature(e) > q(0, 1));
        }
    }
}
