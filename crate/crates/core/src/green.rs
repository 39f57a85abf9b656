//! Tau constant and the Arakelov-Green functions `g_μcan` and `g_μD`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, MetrizedGraph, Point, Side, VertexId};
use crate::network::Network;
use crate::pointwise::{resistance_points, vertex_profile, voltage_points, Quadratic};
use crate::scalar::Scalar;

/// `τ(Γ) = ¼ ∫ (∂r(p,x)/∂x)² dx`, with base vertex 0.
pub fn tau_constant<S: Scalar>(net: &Network<S>) -> S {
    tau_constant_from(net, 0)
}

/// Tau constant integrated against `r(base, ·)`; the result does not depend
/// on `base`.
pub fn tau_constant_from<S: Scalar>(net: &Network<S>, base: VertexId) -> S {
    let sum = net
        .graph()
        .edges()
        .iter()
        .enumerate()
        .fold(S::zero(), |acc, (e, edge)| {
            acc + vertex_profile(net, base, e).slope_energy(&edge.length)
        });
    sum / S::from_usize(4)
}

/// `g_μcan(x, y) = τ - r(x, y) / 2`.
pub fn green_can<S: Scalar>(net: &Network<S>, tau: &S, x: &Point<S>, y: &Point<S>) -> Result<S> {
    Ok(tau.clone() - resistance_points(net, x, y)? * S::half())
}

/// One entry of the value matrix: `g_μcan` for `x` on one edge and `y` on another.
#[derive(Clone, Debug, PartialEq)]
pub enum GreenForm<S> {
    /// `constant + quad·(x-y)² + abs·|x-y|`.
    SameEdge { abs: S, quad: S, constant: S },
    /// `xx·x² + yy·y² + xy·xy + x·x + y·y + constant`.
    CrossEdge {
        xx: S,
        yy: S,
        xy: S,
        x: S,
        y: S,
        constant: S,
    },
}

impl<S: Scalar> GreenForm<S> {
    pub fn eval(&self, x: &S, y: &S) -> S {
        match self {
            GreenForm::SameEdge {
                abs,
                quad,
                constant,
            } => {
                let d = x.clone() - y.clone();
                constant.clone() + quad.clone() * d.sq() + abs.clone() * d.abs()
            }
            GreenForm::CrossEdge {
                xx,
                yy,
                xy,
                x: cx,
                y: cy,
                constant,
            } => {
                xx.clone() * x.sq()
                    + yy.clone() * y.sq()
                    + xy.clone() * x.clone() * y.clone()
                    + cx.clone() * x.clone()
                    + cy.clone() * y.clone()
                    + constant.clone()
            }
        }
    }

    /// The same function with the roles of `x` and `y` exchanged.
    pub fn transpose(&self) -> Self {
        match self {
            GreenForm::SameEdge { .. } => self.clone(),
            GreenForm::CrossEdge {
                xx,
                yy,
                xy,
                x,
                y,
                constant,
            } => GreenForm::CrossEdge {
                xx: yy.clone(),
                yy: xx.clone(),
                xy: xy.clone(),
                x: y.clone(),
                y: x.clone(),
                constant: constant.clone(),
            },
        }
    }

    /// Coefficient of the square of the variable living on the row edge.
    pub fn row_quadratic(&self) -> &S {
        match self {
            GreenForm::SameEdge { quad, .. } => quad,
            GreenForm::CrossEdge { xx, .. } => xx,
        }
    }

    /// `τ - (1/2)(...)`, the polynomial whose half is subtracted from `τ`.
    pub fn pretty(&self, tau: &S) -> String {
        let minus_two = -S::from_usize(2);
        let scaled = |c: &S| c.clone() * minus_two.clone();
        let terms: Vec<(S, &str)> = match self {
            GreenForm::SameEdge {
                abs,
                quad,
                constant,
            } => vec![
                (scaled(quad), "(x-y)^2"),
                (scaled(abs), "|x-y|"),
                (scaled(&(constant.clone() - tau.clone())), ""),
            ],
            GreenForm::CrossEdge {
                xx,
                yy,
                xy,
                x,
                y,
                constant,
            } => vec![
                (scaled(&(constant.clone() - tau.clone())), ""),
                (scaled(x), "x"),
                (scaled(xx), "x^2"),
                (scaled(y), "y"),
                (scaled(xy), "x y"),
                (scaled(yy), "y^2"),
            ],
        };
        format!("{} - (1/2)({})", tau.to_text(), format_polynomial(&terms))
    }
}

fn format_polynomial<S: Scalar>(terms: &[(S, &str)]) -> String {
    let mut out = String::new();
    for (coefficient, monomial) in terms {
        if coefficient.is_zero() {
            continue;
        }
        let negative = coefficient.is_negative();
        let magnitude = coefficient.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if monomial.is_empty() {
            out.push_str(&magnitude.to_text());
        } else if magnitude.is_one() {
            out.push_str(monomial);
        } else {
            let _ = write!(out, "{} {}", magnitude.to_text(), monomial);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Linear part `slope·x + offset` of the distance from a point on a bridge to
/// the endpoint facing the other side.
fn bridge_leg<S: Scalar>(edge: &Edge<S>, side: Side) -> (S, S, VertexId) {
    match side {
        Side::P => (S::one(), S::zero(), edge.p),
        Side::Q => (-S::one(), edge.length.clone(), edge.q),
    }
}

/// Off-diagonal coefficients from the resistance-only expansion of `r(x, y)`.
fn cross_form<S: Scalar>(net: &Network<S>, tau: &S, i: EdgeId, j: EdgeId) -> GreenForm<S> {
    let g = net.graph();
    let (ei, ej) = (g.edge(i), g.edge(j));
    let half = S::half();
    let (li, lj) = (ei.length.clone(), ej.length.clone());
    // g = τ - r/2 where r = rxx x² + ryy y² + rxy xy + rx x + ry y + r0
    let (rxx, ryy, rxy, rx, ry, r0) = match (net.is_bridge(i), net.is_bridge(j)) {
        (false, false) => {
            let r = |a, b| net.r(a, b).clone();
            let (pi, qi, pj, qj) = (ei.p, ei.q, ej.p, ej.q);
            (
                -net.curvature(i),
                -net.curvature(j),
                (r(pi, pj) - r(pi, qj) - r(qi, pj) + r(qi, qj)) / (li.clone() * lj.clone()),
                (li.clone() - r(pi, qi) + r(qi, pj) - r(pi, pj)) / li,
                (lj.clone() - r(pj, qj) + r(pi, qj) - r(pi, pj)) / lj,
                r(pi, pj),
            )
        }
        (true, true) => {
            let (sx, ox, a) = bridge_leg(ei, net.side(i, ej.p).expect("bridge"));
            let (sy, oy, b) = bridge_leg(ej, net.side(j, ei.p).expect("bridge"));
            (
                S::zero(),
                S::zero(),
                S::zero(),
                sx,
                sy,
                ox + oy + net.r(a, b).clone(),
            )
        }
        (true, false) => {
            let (sx, ox, a) = bridge_leg(ei, net.side(i, ej.p).expect("bridge"));
            let Quadratic {
                a: qa,
                b: qb,
                c: qc,
            } = vertex_profile(net, a, j);
            (S::zero(), qa, S::zero(), sx, qb, ox + qc)
        }
        (false, true) => {
            let (sy, oy, b) = bridge_leg(ej, net.side(j, ei.p).expect("bridge"));
            let Quadratic {
                a: qa,
                b: qb,
                c: qc,
            } = vertex_profile(net, b, i);
            (qa, S::zero(), S::zero(), qb, sy, oy + qc)
        }
    };
    GreenForm::CrossEdge {
        xx: -rxx * half.clone(),
        yy: -ryy * half.clone(),
        xy: -rxy * half.clone(),
        x: -rx * half.clone(),
        y: -ry * half.clone(),
        constant: tau.clone() - r0 * half,
    }
}

/// The same off-diagonal entry written with vertex voltages, for two
/// non-bridge edges.
pub fn cross_form_from_voltages<S: Scalar>(
    net: &Network<S>,
    tau: &S,
    i: EdgeId,
    j: EdgeId,
) -> GreenForm<S> {
    let g = net.graph();
    let (ei, ej) = (g.edge(i), g.edge(j));
    let (li, lj) = (ei.length.clone(), ej.length.clone());
    let (pi, qi, pj, qj) = (ei.p, ei.q, ej.p, ej.q);
    let two = S::from_usize(2);
    let half = S::half();
    GreenForm::CrossEdge {
        xx: (li.clone() - net.r(pi, qi).clone()) / (two.clone() * li.sq()),
        yy: (lj.clone() - net.r(pj, qj).clone()) / (two.clone() * lj.sq()),
        xy: -(net.j(pj, pi, qj) - net.j(pj, qi, qj)) / (li.clone() * lj.clone()),
        x: -(li.clone() - two.clone() * net.j(pi, qi, pj)) / (two.clone() * li),
        y: -(lj.clone() - two.clone() * net.j(pj, pi, qj)) / (two * lj),
        constant: tau.clone() - net.r(pi, pj).clone() * half,
    }
}

/// The `e × e` table of closed forms of `g_μcan`, in the network's edge order.
#[derive(Clone, Debug)]
pub struct ValueMatrix<S> {
    graph: MetrizedGraph<S>,
    tau: S,
    entries: Vec<GreenForm<S>>,
}

pub fn value_matrix<S: Scalar>(net: &Network<S>, tau: &S) -> ValueMatrix<S> {
    let n = net.graph().edge_count();
    let upper: Vec<(usize, usize, GreenForm<S>)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i..n).map(move |j| {
                let form = if i == j {
                    GreenForm::SameEdge {
                        abs: -S::half(),
                        quad: net.curvature(i) * S::half(),
                        constant: tau.clone(),
                    }
                } else {
                    cross_form(net, tau, i, j)
                };
                (i, j, form)
            })
        })
        .collect();
    let mut entries = vec![None; n * n];
    for (i, j, form) in upper {
        if i != j {
            entries[j * n + i] = Some(form.transpose());
        }
        entries[i * n + j] = Some(form);
    }
    ValueMatrix {
        graph: net.graph().clone(),
        tau: tau.clone(),
        entries: entries.into_iter().map(|f| f.expect("filled")).collect(),
    }
}

impl<S: Scalar> ValueMatrix<S> {
    pub fn size(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn tau(&self) -> &S {
        &self.tau
    }

    pub fn graph(&self) -> &MetrizedGraph<S> {
        &self.graph
    }

    pub fn entry(&self, i: EdgeId, j: EdgeId) -> &GreenForm<S> {
        &self.entries[i * self.size() + j]
    }

    /// Evaluates `g_μcan(x, y)` by reading the offsets of `x` and `y` into the
    /// entry for their edges. Vertices use their first incident edge.
    pub fn evaluate(&self, x: &Point<S>, y: &Point<S>) -> Result<S> {
        let anchor = |p: &Point<S>| -> Result<(EdgeId, S)> {
            Ok(match self.graph.canonicalize(p)? {
                Point::Vertex(v) => self.graph.vertex_anchor(v),
                Point::Interior { edge, offset } => (edge, offset),
            })
        };
        let (i, ox) = anchor(x)?;
        let (j, oy) = anchor(y)?;
        Ok(self.entry(i, j).eval(&ox, &oy))
    }

    pub fn to_wire(&self) -> ValueMatrixWire {
        let g = &self.graph;
        let n = self.size();
        ValueMatrixWire {
            mode: S::MODE.to_string(),
            tau: self.tau.to_text(),
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| WireEdge {
                    id: e.label.clone(),
                    from: g.vertices()[e.p].clone(),
                    to: g.vertices()[e.q].clone(),
                    length: e.length.to_text(),
                })
                .collect(),
            entries: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| WireForm::from_form(self.entry(i, j)))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_wire(wire: &ValueMatrixWire) -> Result<Self> {
        let parse = |text: &str| {
            S::parse_literal(text).ok_or_else(|| Error::InvalidCoefficient {
                vertex: "value matrix".to_string(),
                value: text.to_string(),
            })
        };
        let mut edges = Vec::with_capacity(wire.edges.len());
        for e in &wire.edges {
            let find = |name: &str| {
                wire.vertices
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: name.to_string(),
                    })
            };
            edges.push(Edge {
                label: e.id.clone(),
                p: find(&e.from)?,
                q: find(&e.to)?,
                length: parse(&e.length)?,
            });
        }
        let graph = MetrizedGraph::new(wire.vertices.clone(), edges)?;
        let n = graph.edge_count();
        let mut entries = Vec::with_capacity(n * n);
        for row in &wire.entries {
            for form in row {
                entries.push(form.to_form(&parse)?);
            }
        }
        if wire.entries.len() != n || entries.len() != n * n {
            return Err(Error::Json(serde::de::Error::custom(
                "value matrix shape does not match edge count",
            )));
        }
        Ok(ValueMatrix {
            graph,
            tau: parse(&wire.tau)?,
            entries,
        })
    }
}

/// Serialized value matrix; every scalar is a string in the mode's text form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValueMatrixWire {
    pub mode: String,
    pub tau: String,
    pub vertices: Vec<String>,
    pub edges: Vec<WireEdge>,
    pub entries: Vec<Vec<WireForm>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WireEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub length: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WireForm {
    SameEdge {
        abs: String,
        quad: String,
        constant: String,
    },
    CrossEdge {
        xx: String,
        yy: String,
        xy: String,
        x: String,
        y: String,
        constant: String,
    },
}

impl WireForm {
    fn from_form<S: Scalar>(form: &GreenForm<S>) -> Self {
        match form {
            GreenForm::SameEdge {
                abs,
                quad,
                constant,
            } => WireForm::SameEdge {
                abs: abs.to_text(),
                quad: quad.to_text(),
                constant: constant.to_text(),
            },
            GreenForm::CrossEdge {
                xx,
                yy,
                xy,
                x,
                y,
                constant,
            } => WireForm::CrossEdge {
                xx: xx.to_text(),
                yy: yy.to_text(),
                xy: xy.to_text(),
                x: x.to_text(),
                y: y.to_text(),
                constant: constant.to_text(),
            },
        }
    }

    fn to_form<S: Scalar>(&self, parse: &impl Fn(&str) -> Result<S>) -> Result<GreenForm<S>> {
        Ok(match self {
            WireForm::SameEdge {
                abs,
                quad,
                constant,
            } => GreenForm::SameEdge {
                abs: parse(abs)?,
                quad: parse(quad)?,
                constant: parse(constant)?,
            },
            WireForm::CrossEdge {
                xx,
                yy,
                xy,
                x,
                y,
                constant,
            } => GreenForm::CrossEdge {
                xx: parse(xx)?,
                yy: parse(yy)?,
                xy: parse(xy)?,
                x: parse(x)?,
                y: parse(y)?,
                constant: parse(constant)?,
            },
        })
    }
}

/// A divisor `Σ a_q q` supported on vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct Divisor<S> {
    coefficients: Vec<S>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientLiteral {
    Text(String),
    Number(serde_json::Number),
}

impl<S: Scalar> Divisor<S> {
    pub fn zero(vertex_count: usize) -> Self {
        Divisor {
            coefficients: vec![S::zero(); vertex_count],
        }
    }

    pub fn from_coefficients(coefficients: Vec<S>) -> Self {
        Divisor { coefficients }
    }

    /// Parses `{"v1": 1, "v3": -2}`; absent vertices have coefficient 0.
    pub fn from_json(graph: &MetrizedGraph<S>, text: &str) -> Result<Self> {
        let map: BTreeMap<String, CoefficientLiteral> = serde_json::from_str(text)?;
        let mut divisor = Self::zero(graph.vertex_count());
        for (name, literal) in map {
            let v = graph
                .vertex_id(&name)
                .ok_or_else(|| Error::UnknownVertexId(name.clone()))?;
            let text = match literal {
                CoefficientLiteral::Text(s) => s,
                CoefficientLiteral::Number(n) => n.to_string(),
            };
            divisor.coefficients[v] = S::parse_literal(&text).ok_or(Error::InvalidCoefficient {
                vertex: name,
                value: text,
            })?;
        }
        Ok(divisor)
    }

    pub fn coefficient(&self, v: VertexId) -> &S {
        &self.coefficients[v]
    }

    pub fn degree(&self) -> S {
        self.coefficients
            .iter()
            .fold(S::zero(), |acc, a| acc + a.clone())
    }

    fn support(&self) -> impl Iterator<Item = (VertexId, &S)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
    }
}

/// `g_μD` for a fixed divisor, with the constant `c(D)` computed once.
#[derive(Clone, Debug)]
pub struct DivisorGreen<S> {
    divisor: Divisor<S>,
    tau: S,
    normalizer: S,
    constant: S,
}

impl<S: Scalar> DivisorGreen<S> {
    pub fn new(net: &Network<S>, tau: &S, divisor: Divisor<S>) -> Result<Self> {
        if divisor.coefficients.len() != net.graph().vertex_count() {
            return Err(Error::UnknownVertexId(format!(
                "divisor has {} coefficients for {} vertices",
                divisor.coefficients.len(),
                net.graph().vertex_count()
            )));
        }
        let degree = divisor.degree();
        let normalizer = degree.clone() + S::from_usize(2);
        if normalizer.is_zero() {
            return Err(Error::DegreeMinusTwo);
        }
        let mut pairing = S::zero();
        for (q, aq) in divisor.support() {
            for (s, as_) in divisor.support() {
                pairing = pairing + aq.clone() * as_.clone() * net.r(q, s).clone();
            }
        }
        let constant = (S::from_usize(8) * tau.clone() * (degree + S::one()) + pairing)
            / (S::from_usize(2) * normalizer.sq());
        Ok(DivisorGreen {
            divisor,
            tau: tau.clone(),
            normalizer,
            constant,
        })
    }

    /// `c(D)`.
    pub fn constant(&self) -> &S {
        &self.constant
    }

    pub fn divisor(&self) -> &Divisor<S> {
        &self.divisor
    }

    pub fn evaluate(&self, net: &Network<S>, x: &Point<S>, y: &Point<S>) -> Result<S> {
        let mut sum = S::from_usize(4) * self.tau.clone() - resistance_points(net, x, y)?;
        for (s, a) in self.divisor.support() {
            sum = sum + a.clone() * voltage_points(net, &Point::Vertex(s), x, y)?;
        }
        Ok(sum / self.normalizer.clone() - self.constant.clone())
    }
}

/// One-shot `g_μD(x, y)`.
pub fn green_divisor<S: Scalar>(
    net: &Network<S>,
    tau: &S,
    divisor: &Divisor<S>,
    x: &Point<S>,
    y: &Point<S>,
) -> Result<S> {
    DivisorGreen::new(net, tau, divisor.clone())?.evaluate(net, x, y)
}
