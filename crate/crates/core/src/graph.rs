//! Finite simple graphs, windows and the structural primitives built on them.
//!
//! Vertices are `0..n`. Adjacency lists are kept sorted, and every edge
//! enumeration runs in lexicographic order of the normalized pair, which is
//! the total order used whenever a "least edge" is needed.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// An undirected edge, normalized so that `u() < v()`.
///
/// The derived `Ord` is the lexicographic order on the normalized pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return invalid(format!("loop at vertex {a}"));
        }
        Ok(Edge(a.min(b), a.max(b)))
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.0
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if x == self.0 {
            Some(self.1)
        } else if x == self.1 {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn endpoints(&self) -> [usize; 2] {
        [self.0, self.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.0, self.1)
    }
}

/// A finite undirected simple graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Number of candidate edges discarded while building a simple graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CollapseCounts {
    pub loops_dropped: usize,
    pub duplicates_collapsed: usize,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); vertex_count],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list. Loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let (g, counts) = Self::collapse_edges(vertex_count, edges)?;
        if counts.loops_dropped > 0 {
            return invalid("edge list contains a loop");
        }
        if counts.duplicates_collapsed > 0 {
            return invalid("edge list contains a repeated edge");
        }
        Ok(g)
    }

    /// Builds a simple graph from arbitrary candidate pairs, dropping loops
    /// and collapsing parallel edges. Out-of-range endpoints are still an error.
    pub fn collapse_edges<I>(vertex_count: usize, edges: I) -> Result<(Self, CollapseCounts)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); vertex_count];
        let mut counts = CollapseCounts::default();
        let mut candidates = 0;
        for (a, b) in edges {
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if a == b {
                counts.loops_dropped += 1;
                continue;
            }
            candidates += 1;
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut half_edges = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            half_edges += list.len();
        }
        let edge_count = half_edges / 2;
        counts.duplicates_collapsed = candidates - edge_count;
        Ok((Graph { adj, edge_count }, counts))
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u(), e.v())
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&w| w <= u);
            list[start..].iter().map(move |&w| Edge(u, w))
        })
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    /// Position of `e` in [`Graph::edges`] order.
    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if !self.contains_edge(e) {
            return None;
        }
        let before: usize = (0..e.u())
            .map(|u| self.adj[u].iter().filter(|&&w| w > u).count())
            .sum();
        let list = &self.adj[e.u()];
        let start = list.partition_point(|&w| w <= e.u());
        let offset = list[start..].partition_point(|&w| w < e.v());
        Some(before + offset)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Induced subgraph on the vertices with `keep[v] == true`.
    pub fn induced(&self, keep: &[bool]) -> Subgraph {
        assert_eq!(keep.len(), self.vertex_count());
        let original: Vec<usize> = self.vertices().filter(|&v| keep[v]).collect();
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in original.iter().enumerate() {
            local[v] = i;
        }
        let mut edge_count = 0;
        let adj: Vec<Vec<usize>> = original
            .iter()
            .map(|&v| {
                let list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| keep[w])
                    .map(|&w| local[w])
                    .collect();
                edge_count += list.len();
                list
            })
            .collect();
        Subgraph {
            graph: Graph {
                adj,
                edge_count: edge_count / 2,
            },
            original,
        }
    }

    /// `self - s`: the induced subgraph on the vertices outside `s`.
    pub fn remove_vertices(&self, s: &[usize]) -> Result<Subgraph> {
        let mut keep = vec![true; self.vertex_count()];
        for &v in s {
            self.check_vertex(v)?;
            keep[v] = false;
        }
        Ok(self.induced(&keep))
    }

    /// The graph with a single edge deleted (vertices kept).
    pub fn without_edge(&self, e: Edge) -> Result<Graph> {
        if !self.contains_edge(e) {
            return invalid(format!("edge ({}, {}) not in graph", e.u(), e.v()));
        }
        let mut g = self.clone();
        g.adj[e.u()].retain(|&w| w != e.v());
        g.adj[e.v()].retain(|&w| w != e.u());
        g.edge_count -= 1;
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|list| list.iter().map(|&w| w + shift).collect()),
        );
        Graph {
            adj,
            edge_count: self.edge_count + other.edge_count,
        }
    }
}

/// An induced subgraph together with the map back to the host's vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `original[i]` is the host id of local vertex `i`; strictly increasing.
    pub original: Vec<usize>,
}

impl Subgraph {
    pub fn to_original(&self, local: usize) -> usize {
        self.original[local]
    }

    pub fn local_id(&self, original: usize) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }

    pub fn edge_to_original(&self, e: Edge) -> Edge {
        Edge(self.original[e.u()], self.original[e.v()])
    }
}

/// `g - s`, see [`Graph::remove_vertices`].
pub fn remove_vertices(g: &Graph, s: &[usize]) -> Result<Subgraph> {
    g.remove_vertices(s)
}

/// Connected components, each sorted, ordered by least vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut scratch = ComponentScratch::new(g.vertex_count());
    scratch.components(g, &vec![false; g.vertex_count()])
}

/// Hop distance from `u` to `v`, `None` if unreachable.
pub fn distance(g: &Graph, u: usize, v: usize) -> Option<usize> {
    if u == v {
        return Some(0);
    }
    bfs_distances(g, u, None)[v]
}

/// BFS distances from `source`, optionally cut off after `limit` hops.
pub fn bfs_distances(g: &Graph, source: usize, limit: Option<usize>) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        if limit.is_some_and(|l| d >= l) {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Whether the subgraph induced by `set` is connected. The empty set is not.
pub fn is_connected_set(g: &Graph, set: &[usize]) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![set[0]];
    seen[set[0]] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if inside[y] && !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == set.len()
}

/// Reusable buffers for repeated component searches on one graph.
#[derive(Clone, Debug)]
pub(crate) struct ComponentScratch {
    seen: Vec<bool>,
    stack: Vec<usize>,
}

impl ComponentScratch {
    pub(crate) fn new(n: usize) -> Self {
        ComponentScratch {
            seen: vec![false; n],
            stack: Vec::new(),
        }
    }

    /// Components of `g` minus the vertices flagged in `removed`.
    pub(crate) fn components(&mut self, g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = g.vertex_count();
        self.seen.clear();
        self.seen.resize(n, false);
        let mut out = Vec::new();
        for s in 0..n {
            if removed[s] || self.seen[s] {
                continue;
            }
            let mut comp = vec![s];
            self.seen[s] = true;
            self.stack.clear();
            self.stack.push(s);
            while let Some(x) = self.stack.pop() {
                for &y in g.neighbors(x) {
                    if !removed[y] && !self.seen[y] {
                        self.seen[y] = true;
                        comp.push(y);
                        self.stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// A finite truncation of a (possibly infinite) graph.
///
/// Vertices outside `interior` form the frontier. `external_stubs[v]` counts
/// the edges at `v` that leave the truncation; only frontier vertices carry
/// stubs. A component of `graph - X` is treated as infinite exactly when it
/// reaches the frontier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub graph: Graph,
    interior: Vec<bool>,
    external_stubs: Vec<usize>,
}

/// Components of `window - X` split by the frontier rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentSplit {
    pub finite: Vec<Vec<usize>>,
    pub infinite: Vec<Vec<usize>>,
}

impl Window {
    pub fn new(graph: Graph, interior: Vec<bool>, external_stubs: Vec<usize>) -> Result<Self> {
        let n = graph.vertex_count();
        if interior.len() != n || external_stubs.len() != n {
            return invalid("interior/stub vectors must have one entry per vertex");
        }
        if let Some(v) = (0..n).find(|&v| interior[v] && external_stubs[v] > 0) {
            return invalid(format!("interior vertex {v} carries external stubs"));
        }
        Ok(Window {
            graph,
            interior,
            external_stubs,
        })
    }

    /// Window from an interior id list and `(vertex, stubs)` pairs.
    pub fn from_parts(
        graph: Graph,
        interior: &[usize],
        stubs: &[(usize, usize)],
    ) -> Result<Self> {
        let n = graph.vertex_count();
        let mut inside = vec![false; n];
        for &v in interior {
            graph.check_vertex(v)?;
            inside[v] = true;
        }
        let mut ext = vec![0; n];
        for &(v, k) in stubs {
            graph.check_vertex(v)?;
            ext[v] += k;
        }
        Window::new(graph, inside, ext)
    }

    /// Every vertex interior, no stubs: the graph read as a finite object.
    pub fn closed(graph: Graph) -> Self {
        let n = graph.vertex_count();
        Window {
            graph,
            interior: vec![true; n],
            external_stubs: vec![0; n],
        }
    }

    pub fn is_closed(&self) -> bool {
        self.interior.iter().all(|&b| b)
    }

    #[inline]
    pub fn is_interior(&self, v: usize) -> bool {
        self.interior[v]
    }

    #[inline]
    pub fn is_frontier(&self, v: usize) -> bool {
        !self.interior[v]
    }

    #[inline]
    pub fn stubs(&self, v: usize) -> usize {
        self.external_stubs[v]
    }

    pub fn external_stubs(&self) -> &[usize] {
        &self.external_stubs
    }

    pub fn interior_mask(&self) -> &[bool] {
        &self.interior
    }

    /// Degree in the ambient graph: window degree plus stubs.
    pub fn full_degree(&self, v: usize) -> usize {
        self.graph.degree(v) + self.external_stubs[v]
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        self.graph.vertices().filter(|&v| self.interior[v]).collect()
    }

    pub fn frontier_vertices(&self) -> Vec<usize> {
        self.graph.vertices().filter(|&v| !self.interior[v]).collect()
    }

    /// `Some(d)` if every vertex has full degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut it = self.graph.vertices().map(|v| self.full_degree(v));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// The window with vertices `s` deleted. Deleted vertices simply vanish:
    /// their edges to survivors do not become stubs.
    pub fn remove_vertices(&self, s: &[usize]) -> Result<SubWindow> {
        let sub = self.graph.remove_vertices(s)?;
        let interior = sub.original.iter().map(|&v| self.interior[v]).collect();
        let stubs = sub.original.iter().map(|&v| self.external_stubs[v]).collect();
        Ok(SubWindow {
            window: Window {
                graph: sub.graph,
                interior,
                external_stubs: stubs,
            },
            original: sub.original,
        })
    }

    pub(crate) fn split_components(&self, comps: Vec<Vec<usize>>) -> ComponentSplit {
        let mut split = ComponentSplit::default();
        for c in comps {
            if c.iter().any(|&v| !self.interior[v]) {
                split.infinite.push(c);
            } else {
                split.finite.push(c);
            }
        }
        split
    }
}

/// A window restricted to surviving vertices, with the id map back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubWindow {
    pub window: Window,
    pub original: Vec<usize>,
}

/// Components of `w.graph - x`, classified by the frontier rule.
pub fn classify_components(w: &Window, x: &[usize]) -> Result<ComponentSplit> {
    let mut removed = vec![false; w.graph.vertex_count()];
    for &v in x {
        w.graph.check_vertex(v)?;
        removed[v] = true;
    }
    let comps = ComponentScratch::new(w.graph.vertex_count()).components(&w.graph, &removed);
    Ok(w.split_components(comps))
}
