//! The exchange graph of dissections under signed flips.
//!
//! Vertices are dissections in canonical sorted form; the graph is the
//! breadth-first closure of the context itself under flips at every arc.
//! Output ordering is canonical:  vertices are sorted after the search, so
//! the result is independent of expansion order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arc::TaggedArc;
use crate::dissection::{flip, FlipError};
use crate::surface::SurfaceModel;
use crate::triang::PartialTaggedTriangulation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// The vertex budget ran out; the partial graph is attached.
    LimitExceeded(ExchangeGraph),
    /// A flip failed while expanding.
    Flip(FlipError),
}

/// Search limits for the graph closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphLimits {
    pub max_vertices: usize,
}

impl Default for GraphLimits {
    fn default() -> GraphLimits {
        GraphLimits { max_vertices: 10_000 }
    }
}

/// One directed flip move of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// The arc of `from` that was flipped away.
    pub flipped: TaggedArc,
    /// The arc of `to` that replaced it.
    pub new_arc: TaggedArc,
    /// The flip direction sign.
    pub sign: i8,
}

/// The exchange graph over a context, with canonically sorted vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    /// Dissections, each sorted, the list sorted.
    pub vertices: Vec<Vec<TaggedArc>>,
    /// Directed flip moves; each undirected edge appears once per
    /// direction.
    pub edges: Vec<GraphEdge>,
    /// Breadth-first depth of each vertex from the context.
    pub depth: Vec<usize>,
}

impl ExchangeGraph {
    /// Degree of a vertex, counting outgoing moves.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    /// Is every vertex of the given degree?
    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.vertices.len()).all(|v| self.degree(v) == d)
    }
}

/// Breadth-first closure of the context under flips at all arcs.
pub fn exchange_graph(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    limits: GraphLimits,
) -> Result<ExchangeGraph, GraphError> {
    let mut root = r.arcs.clone();
    root.sort();
    let mut index: BTreeMap<Vec<TaggedArc>, usize> = BTreeMap::new();
    let mut verts: Vec<Vec<TaggedArc>> = Vec::new();
    let mut depth: Vec<usize> = Vec::new();
    let mut edges: Vec<(usize, usize, TaggedArc, TaggedArc, i8)> = Vec::new();
    index.insert(root.clone(), 0);
    verts.push(root);
    depth.push(0);
    let mut head = 0usize;
    let mut truncated = false;
    while head < verts.len() {
        let u = verts[head].clone();
        let d = depth[head];
        for l in &u {
            let f = flip(model, r, &u, l).map_err(GraphError::Flip)?;
            let to = match index.get(&f.arcs) {
                Some(&i) => i,
                None => {
                    if verts.len() >= limits.max_vertices {
                        truncated = true;
                        continue;
                    }
                    let i = verts.len();
                    index.insert(f.arcs.clone(), i);
                    verts.push(f.arcs.clone());
                    depth.push(d + 1);
                    i
                }
            };
            edges.push((head, to, l.clone(), f.new_arc, f.sign));
        }
        head += 1;
    }
    // Canonical order: sort vertices, remap edges, sort edges.
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by(|&a, &b| verts[a].cmp(&verts[b]));
    let mut rank = alloc::vec![0usize; verts.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let mut vertices: Vec<Vec<TaggedArc>> = Vec::with_capacity(verts.len());
    let mut new_depth = alloc::vec![0usize; verts.len()];
    for &old in &order {
        new_depth[rank[old]] = depth[old];
        vertices.push(verts[old].clone());
    }
    let mut graph_edges: Vec<GraphEdge> = edges
        .into_iter()
        .map(|(f, t, flipped, new_arc, sign)| GraphEdge {
            from: rank[f],
            to: rank[t],
            flipped,
            new_arc,
            sign,
        })
        .collect();
    graph_edges.sort_by(|a, b| (a.from, a.to, &a.flipped).cmp(&(b.from, b.to, &b.flipped)));
    let g = ExchangeGraph {
        vertices,
        edges: graph_edges,
        depth: new_depth,
    };
    if truncated {
        return Err(GraphError::LimitExceeded(g));
    }
    Ok(g)
}

/// The verdict of checking a complete graph against the connectedness
/// statement and an optional independent vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub oracle_count: Option<usize>,
    pub count_matches: Option<bool>,
}

impl ConnectivityReport {
    pub fn ok(&self) -> bool {
        self.connected && self.count_matches != Some(false)
    }
}

/// Check that the breadth-first component is the whole vertex set and, when
/// an independent count is supplied, that the vertex count matches it.
///
/// The graph is connected by construction of the search; the check guards
/// against a mismatch with the independent enumeration.
pub fn check_connected(graph: &ExchangeGraph, oracle_count: Option<usize>) -> ConnectivityReport {
    let n = graph.vertices.len();
    let mut seen = alloc::vec![false; n];
    let mut stack = alloc::vec![0usize];
    let mut found = 0usize;
    if n > 0 {
        seen[0] = true;
        found = 1;
        while let Some(v) = stack.pop() {
            for e in graph.edges.iter().filter(|e| e.from == v) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    found += 1;
                    stack.push(e.to);
                }
            }
        }
    }
    ConnectivityReport {
        vertices: n,
        edges: graph.edges.len(),
        connected: found == n,
        oracle_count,
        count_matches: oracle_count.map(|c| c == n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Corner, Slot};
    use crate::curve::{Curve, End};
    use crate::surface::{build_surface, SurfaceSpec};

    fn ptt(m: &SurfaceModel, arcs: Vec<TaggedArc>) -> PartialTaggedTriangulation {
        PartialTaggedTriangulation::new(m, arcs).unwrap()
    }

    fn fan(m: &SurfaceModel) -> Vec<TaggedArc> {
        m.chart_arcs()
            .into_iter()
            .map(|e| {
                TaggedArc::normalize(
                    m,
                    &Curve::chart_edge(
                        Corner::new(e.tri, e.side),
                        Corner::new(e.tri, (e.side + 1) % 3),
                    ),
                    [1, 1],
                )
                .unwrap()
            })
            .collect()
    }

    #[test]
    fn hexagon_exchange_graph_is_the_associahedron() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap();
        let r = ptt(&m, fan(&m));
        let g = exchange_graph(&m, &r, GraphLimits::default()).unwrap();
        assert_eq!(g.vertices.len(), 14);
        assert!(g.is_regular(3));
        let rep = check_connected(&g, Some(14));
        assert!(rep.ok());
        // Flip moves pair up into undirected edges.
        assert_eq!(g.edges.len(), 14 * 3);
        for e in &g.edges {
            assert!(g
                .edges
                .iter()
                .any(|b| b.from == e.to && b.to == e.from && b.flipped == e.new_arc));
        }
    }

    #[test]
    fn single_arc_context_gives_one_flip() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap();
        let d = fan(&m)[0].clone();
        let r = ptt(&m, alloc::vec![d]);
        let g = exchange_graph(&m, &r, GraphLimits::default()).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert!(g.is_regular(1));
        assert_eq!(g.edges.len(), 2);
        assert!(check_connected(&g, Some(2)).ok());
    }

    #[test]
    fn vertex_limit_reports_partial_graph() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![6], 0)).unwrap();
        let r = ptt(&m, fan(&m));
        match exchange_graph(&m, &r, GraphLimits { max_vertices: 5 }) {
            Err(GraphError::LimitExceeded(g)) => assert_eq!(g.vertices.len(), 5),
            other => panic!("expected a limit hit, got {other:?}"),
        }
    }
    #[test]
    fn punctured_triangle_graph_is_connected() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![3], 1)).unwrap();
        let r = ptt(&m, fan(&m));
        let g = exchange_graph(&m, &r, GraphLimits::default()).unwrap();
        assert_eq!(g.vertices.len(), 14);
        assert!(g.is_regular(3));
        assert!(check_connected(&g, Some(14)).ok());
    }

    #[test]
    fn punctured_square_graph_is_connected() {
        let m = build_surface(&SurfaceSpec::new(0, alloc::vec![4], 1)).unwrap();
        let rad = Curve::chart_edge(Corner::new(0, 0), Corner::new(0, 2));
        let plus = TaggedArc::normalize(&m, &rad, [1, 1]).unwrap();
        let minus = TaggedArc::normalize(&m, &rad, [1, -1]).unwrap();
        let left = TaggedArc::normalize(
            &m,
            &Curve::new(
                End::Corner(Corner::new(0, 0)),
                alloc::vec![Slot::new(0, 1)],
                End::Corner(Corner::new(1, 1)),
            ),
            [1, 1],
        )
        .unwrap();
        let right = TaggedArc::normalize(
            &m,
            &Curve::new(
                End::Corner(Corner::new(3, 1)),
                alloc::vec![Slot::new(3, 2)],
                End::Corner(Corner::new(2, 0)),
            ),
            [1, 1],
        )
        .unwrap();
        let r = ptt(&m, alloc::vec![plus, minus, left, right]);
        let g = exchange_graph(&m, &r, GraphLimits::default()).unwrap();
        assert_eq!(g.vertices.len(), 50);
        assert!(g.is_regular(4));
        assert!(check_connected(&g, Some(50)).ok());
    }
}
