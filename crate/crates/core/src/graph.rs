//! Metrized graph model, parsing, adequate refinement and bridge structure.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type VertexId = usize;
pub type EdgeId = usize;

/// An edge parametrized by `[0, length]`, with `p` at 0 and `q` at `length`.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub label: String,
    pub p: VertexId,
    pub q: VertexId,
    pub length: S,
}

/// A location on the graph.
///
/// Offsets are measured from the edge's `p` endpoint. Use
/// [`MetrizedGraph::canonicalize`] before comparing points: interior points
/// at offset `0` or `length` become the corresponding vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<S> {
    Vertex(VertexId),
    Interior { edge: EdgeId, offset: S },
}

impl<S> Point<S> {
    pub fn on_edge(edge: EdgeId, offset: S) -> Self {
        Point::Interior { edge, offset }
    }
}

/// Which component of `Γ - e` a vertex belongs to, for a bridge `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The component containing the edge's `p` endpoint.
    P,
    /// The component containing the edge's `q` endpoint.
    Q,
}

/// A piece of an input edge after refinement: refined edge `edge` covers the
/// original coordinates `[start, start + edges[edge].length]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment<S> {
    pub edge: EdgeId,
    pub start: S,
}

/// An edge as it appeared in the input, mapped onto refined edges.
#[derive(Clone, Debug, PartialEq)]
pub struct OriginalEdge<S> {
    pub label: String,
    pub p: VertexId,
    pub q: VertexId,
    pub length: S,
    pub segments: Vec<Segment<S>>,
}

#[derive(Clone, Debug)]
pub struct MetrizedGraph<S> {
    vertices: Vec<String>,
    edges: Vec<Edge<S>>,
    originals: Vec<OriginalEdge<S>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<EdgeRecord>,
}

#[derive(Deserialize)]
struct EdgeRecord {
    id: String,
    from: String,
    to: String,
    length: LengthLiteral,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum LengthLiteral {
    Text(String),
    Number(serde_json::Number),
}

impl LengthLiteral {
    fn text(&self) -> String {
        match self {
            LengthLiteral::Text(s) => s.clone(),
            // serde_json prints the shortest literal that round-trips, which is
            // the decimal the user wrote for any reasonable input.
            LengthLiteral::Number(n) => n.to_string(),
        }
    }
}

/// Parses the JSON graph format:
/// `{"vertices": [...], "edges": [{"id", "from", "to", "length"}]}`.
pub fn parse_graph<S: Scalar>(text: &str) -> Result<MetrizedGraph<S>> {
    let file: GraphFile = serde_json::from_str(text)?;
    let mut index = HashMap::new();
    for (i, name) in file.vertices.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateVertex(name.clone()));
        }
    }
    let mut edges = Vec::with_capacity(file.edges.len());
    for record in file.edges {
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVertex {
                    edge: record.id.clone(),
                    vertex: name.to_string(),
                })
        };
        let p = lookup(&record.from)?;
        let q = lookup(&record.to)?;
        let literal = record.length.text();
        let length = S::parse_literal(&literal).ok_or_else(|| Error::InvalidLength {
            edge: record.id.clone(),
            literal,
        })?;
        edges.push(Edge {
            label: record.id,
            p,
            q,
            length,
        });
    }
    MetrizedGraph::new(file.vertices, edges)
}

impl<S: Scalar> MetrizedGraph<S> {
    /// Validates and wraps a vertex list and edge list. The adequacy map is the
    /// identity.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge<S>>) -> Result<Self> {
        let mut names = HashSet::new();
        for v in &vertices {
            if !names.insert(v.as_str()) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        if edges.is_empty() {
            return Err(Error::Empty);
        }
        let mut labels = HashSet::new();
        for e in &edges {
            if !labels.insert(e.label.as_str()) {
                return Err(Error::DuplicateEdge(e.label.clone()));
            }
            for end in [e.p, e.q] {
                if end >= vertices.len() {
                    return Err(Error::UnknownVertex {
                        edge: e.label.clone(),
                        vertex: format!("#{end}"),
                    });
                }
            }
            if e.length <= S::zero() {
                return Err(Error::NonPositiveLength(e.label.clone()));
            }
        }
        let originals = edges
            .iter()
            .enumerate()
            .map(|(i, e)| OriginalEdge {
                label: e.label.clone(),
                p: e.p,
                q: e.q,
                length: e.length.clone(),
                segments: vec![Segment {
                    edge: i,
                    start: S::zero(),
                }],
            })
            .collect();
        let graph = MetrizedGraph {
            vertices,
            edges,
            originals,
        };
        if graph.reachable_from(0, None).iter().any(|seen| !seen) {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge<S> {
        &self.edges[e]
    }

    /// Input edges with their mapping onto the (possibly refined) edges.
    pub fn original_edges(&self) -> &[OriginalEdge<S>] {
        &self.originals
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_id(&self, label: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.label == label)
    }

    pub fn total_length(&self) -> S {
        self.edges
            .iter()
            .fold(S::zero(), |acc, e| acc + e.length.clone())
    }

    /// Converts every length with `f`, keeping structure and adequacy map.
    pub fn map_lengths<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MetrizedGraph<T> {
        MetrizedGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    label: e.label.clone(),
                    p: e.p,
                    q: e.q,
                    length: f(&e.length),
                })
                .collect(),
            originals: self
                .originals
                .iter()
                .map(|o| OriginalEdge {
                    label: o.label.clone(),
                    p: o.p,
                    q: o.q,
                    length: f(&o.length),
                    segments: o
                        .segments
                        .iter()
                        .map(|s| Segment {
                            edge: s.edge,
                            start: f(&s.start),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Describes the first self-loop or repeated vertex pair, if any.
    pub fn adequacy_violation(&self) -> Option<String> {
        let mut pairs = HashSet::new();
        for e in &self.edges {
            if e.p == e.q {
                return Some(format!("edge `{}` is a self-loop", e.label));
            }
            if !pairs.insert((e.p.min(e.q), e.p.max(e.q))) {
                return Some(format!("edge `{}` duplicates a vertex pair", e.label));
            }
        }
        None
    }

    pub fn is_adequate(&self) -> bool {
        self.adequacy_violation().is_none()
    }

    /// Adds valence-two vertices until there are no self-loops or multiple
    /// edges. Self-loops are split into three equal edges; every edge after
    /// the first between the same pair of vertices is split at its midpoint.
    pub fn refine_adequate(&self) -> MetrizedGraph<S> {
        if self.is_adequate() {
            return self.clone();
        }
        let mut vertices = self.vertices.clone();
        let mut edges: Vec<Edge<S>> = Vec::new();
        // old edge -> pieces (new edge, start offset within old edge)
        let mut pieces: Vec<Vec<(EdgeId, S)>> = Vec::with_capacity(self.edges.len());
        let mut pairs = HashSet::new();
        let fresh_vertex = |vertices: &mut Vec<String>, base: String| {
            let mut name = base;
            while vertices.contains(&name) {
                name.push('\'');
            }
            vertices.push(name);
            vertices.len() - 1
        };
        for e in &self.edges {
            let chain: Vec<VertexId> = if e.p == e.q {
                let a = fresh_vertex(&mut vertices, format!("{}@1", e.label));
                let b = fresh_vertex(&mut vertices, format!("{}@2", e.label));
                vec![e.p, a, b, e.q]
            } else if !pairs.insert((e.p.min(e.q), e.p.max(e.q))) {
                let m = fresh_vertex(&mut vertices, format!("{}@1", e.label));
                vec![e.p, m, e.q]
            } else {
                vec![e.p, e.q]
            };
            let parts = chain.len() - 1;
            let piece_length = e.length.clone() / S::from_usize(parts);
            let mut list = Vec::with_capacity(parts);
            for (k, w) in chain.windows(2).enumerate() {
                let label = if parts == 1 {
                    e.label.clone()
                } else {
                    format!("{}.{}", e.label, k + 1)
                };
                // the last piece closes the edge exactly, whatever the rounding
                let start = piece_length.clone() * S::from_usize(k);
                let length = if k + 1 == parts {
                    e.length.clone() - start.clone()
                } else {
                    piece_length.clone()
                };
                edges.push(Edge {
                    label,
                    p: w[0],
                    q: w[1],
                    length,
                });
                list.push((edges.len() - 1, start));
            }
            pieces.push(list);
        }
        let originals = self
            .originals
            .iter()
            .map(|o| OriginalEdge {
                segments: o
                    .segments
                    .iter()
                    .flat_map(|s| {
                        pieces[s.edge].iter().map(|(edge, start)| Segment {
                            edge: *edge,
                            start: s.start.clone() + start.clone(),
                        })
                    })
                    .collect(),
                ..o.clone()
            })
            .collect();
        MetrizedGraph {
            vertices,
            edges,
            originals,
        }
    }

    fn reachable_from(&self, start: VertexId, without: Option<EdgeId>) -> Vec<bool> {
        let mut adjacency = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if Some(i) != without {
                adjacency[e.p].push(e.q);
                adjacency[e.q].push(e.p);
            }
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Whether deleting the interior of `e` disconnects the graph.
    pub fn is_bridge(&self, e: EdgeId) -> Result<bool> {
        let edge = self
            .edges
            .get(e)
            .ok_or_else(|| Error::UnknownEdge(format!("#{e}")))?;
        Ok(!self.reachable_from(edge.p, Some(e))[edge.q])
    }

    /// For a bridge `e`, the side of every vertex; `None` if `e` is not a bridge.
    pub fn bridge_sides(&self, e: EdgeId) -> Result<Option<Vec<Side>>> {
        let edge = self
            .edges
            .get(e)
            .ok_or_else(|| Error::UnknownEdge(format!("#{e}")))?;
        let seen = self.reachable_from(edge.p, Some(e));
        if seen[edge.q] {
            return Ok(None);
        }
        Ok(Some(
            seen.into_iter()
                .map(|s| if s { Side::P } else { Side::Q })
                .collect(),
        ))
    }

    /// Which component of `Γ - e` contains vertex `v`. Fails unless `e` is a bridge.
    pub fn side_of(&self, e: EdgeId, v: VertexId) -> Result<Side> {
        if v >= self.vertices.len() {
            return Err(Error::UnknownVertexId(format!("#{v}")));
        }
        match self.bridge_sides(e)? {
            Some(sides) => Ok(sides[v]),
            None => Err(Error::NotABridge(self.edges[e].label.clone())),
        }
    }

    /// Range-checks a point and maps interior points at an endpoint to that vertex.
    pub fn canonicalize(&self, point: &Point<S>) -> Result<Point<S>> {
        match point {
            Point::Vertex(v) => {
                if *v >= self.vertices.len() {
                    return Err(Error::UnknownVertexId(format!("#{v}")));
                }
                Ok(point.clone())
            }
            Point::Interior { edge, offset } => {
                let e = self
                    .edges
                    .get(*edge)
                    .ok_or_else(|| Error::UnknownEdge(format!("#{edge}")))?;
                if *offset < S::zero() || *offset > e.length {
                    return Err(Error::PointOutOfRange {
                        edge: e.label.clone(),
                        offset: offset.to_text(),
                        length: e.length.to_text(),
                    });
                }
                if offset.is_zero() {
                    Ok(Point::Vertex(e.p))
                } else if *offset == e.length {
                    Ok(Point::Vertex(e.q))
                } else {
                    Ok(point.clone())
                }
            }
        }
    }

    /// An incident edge and the offset of `v` on it.
    pub fn vertex_anchor(&self, v: VertexId) -> (EdgeId, S) {
        self.edges
            .iter()
            .enumerate()
            .find_map(|(i, e)| {
                if e.p == v {
                    Some((i, S::zero()))
                } else if e.q == v {
                    Some((i, e.length.clone()))
                } else {
                    None
                }
            })
            .expect("connected graph has no isolated vertices")
    }

    /// Maps a coordinate on an input edge to a canonical point of this graph.
    pub fn locate(&self, original: EdgeId, offset: S) -> Result<Point<S>> {
        let o = self
            .originals
            .get(original)
            .ok_or_else(|| Error::UnknownEdge(format!("#{original}")))?;
        if offset < S::zero() || offset > o.length {
            return Err(Error::PointOutOfRange {
                edge: o.label.clone(),
                offset: offset.to_text(),
                length: o.length.to_text(),
            });
        }
        let segment = o
            .segments
            .iter()
            .rev()
            .find(|s| s.start <= offset)
            .unwrap_or(&o.segments[0]);
        let local = offset - segment.start.clone();
        let length = &self.edges[segment.edge].length;
        let local = if local > *length {
            length.clone()
        } else {
            local
        };
        self.canonicalize(&Point::on_edge(segment.edge, local))
    }

    /// Inverse of [`locate`](Self::locate): the coordinate of `point` on input
    /// edge `original`, if the point lies on it. The base vertex of a self-loop
    /// reports 0.
    pub fn offset_on_original(&self, original: EdgeId, point: &Point<S>) -> Option<S> {
        let o = self.originals.get(original)?;
        match point {
            Point::Interior { edge, offset } => o
                .segments
                .iter()
                .find(|s| s.edge == *edge)
                .map(|s| s.start.clone() + offset.clone()),
            Point::Vertex(v) => {
                if *v == o.p {
                    return Some(S::zero());
                }
                o.segments.iter().find_map(|s| {
                    let e = &self.edges[s.edge];
                    if e.p == *v {
                        Some(s.start.clone())
                    } else if e.q == *v {
                        Some(s.start.clone() + e.length.clone())
                    } else {
                        None
                    }
                })
            }
        }
    }

    /// Parses `<vertex-id>` or `<edge-id>:<offset>`. Edge ids refer to input
    /// edges (refined edge labels are accepted as a fallback) and offsets are
    /// measured in input-edge coordinates.
    pub fn parse_point(&self, text: &str) -> Result<Point<S>> {
        let text = text.trim();
        if let Some(v) = self.vertex_id(text) {
            return Ok(Point::Vertex(v));
        }
        let (label, offset) = text
            .rsplit_once(':')
            .ok_or_else(|| Error::PointSyntax(text.to_string()))?;
        let offset =
            S::parse_literal(offset).ok_or_else(|| Error::PointSyntax(text.to_string()))?;
        if let Some(o) = self.originals.iter().position(|o| o.label == label) {
            return self.locate(o, offset);
        }
        if let Some(e) = self.edge_id(label) {
            return self.canonicalize(&Point::on_edge(e, offset));
        }
        Err(Error::UnknownEdge(label.to_string()))
    }

    /// Human-readable point label.
    pub fn describe_point(&self, point: &Point<S>) -> String {
        match point {
            Point::Vertex(v) => self.vertices[*v].clone(),
            Point::Interior { edge, offset } => {
                format!("{}:{}", self.edges[*edge].label, offset.to_text())
            }
        }
    }
}
