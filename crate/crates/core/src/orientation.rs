//! Balanced orientations of even-degree graphs.
//!
//! The bipartite gadget `G*` has one node `x_e` per edge and `deg(v)/2`
//! copy nodes `v_i` per vertex, with `x_uv` adjacent to every copy of `u`
//! and of `v`. A perfect matching of `G*` orients each edge toward the
//! vertex whose copy it is matched to, which is balanced. Euler circuits
//! give an independent route to the same objects.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph, Window};
use crate::matching::{bipartite_max_matching, MatchingState};
use crate::scalar::Scalar;
use crate::subsets::par_min_subsets;

/// What a gadget node projects to in the host.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetNode {
    Edge(Edge),
    Copy { vertex: usize, index: usize },
}

/// The gadget `G*`. Nodes `0..m` are edge nodes in host edge order; copy
/// nodes follow, ordered by `(vertex, index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    host: Graph,
    host_edges: Vec<Edge>,
    copy_start: Vec<usize>,
    graph: Graph,
}

impl GadgetGraph {
    fn with_copies(host: Graph, copies: Vec<usize>) -> Result<Self> {
        let host_edges = host.edge_list();
        let m = host_edges.len();
        let mut copy_start = Vec::with_capacity(copies.len() + 1);
        let mut next = m;
        for &c in &copies {
            copy_start.push(next);
            next += c;
        }
        copy_start.push(next);
        let mut pairs = Vec::new();
        for (i, e) in host_edges.iter().enumerate() {
            for v in e.endpoints() {
                pairs.extend((copy_start[v]..copy_start[v + 1]).map(|c| (i, c)));
            }
        }
        let graph = Graph::from_edges(next, pairs)?;
        Ok(GadgetGraph {
            host,
            host_edges,
            copy_start,
            graph,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// The bipartite graph itself.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_node_count(&self) -> usize {
        self.host_edges.len()
    }

    pub fn copy_node_count(&self) -> usize {
        self.graph.vertex_count() - self.edge_node_count()
    }

    pub fn edge_nodes(&self) -> std::ops::Range<usize> {
        0..self.edge_node_count()
    }

    pub fn copy_nodes(&self) -> std::ops::Range<usize> {
        self.edge_node_count()..self.graph.vertex_count()
    }

    /// Copy nodes of host vertex `v`.
    pub fn copies_of(&self, v: usize) -> std::ops::Range<usize> {
        self.copy_start[v]..self.copy_start[v + 1]
    }

    pub fn edge_node(&self, e: Edge) -> Option<usize> {
        self.host_edges.binary_search(&e).ok()
    }

    /// The projection `π`.
    pub fn project(&self, node: usize) -> GadgetNode {
        if node < self.edge_node_count() {
            return GadgetNode::Edge(self.host_edges[node]);
        }
        let vertex = self.copy_start.partition_point(|&s| s <= node) - 1;
        GadgetNode::Copy {
            vertex,
            index: node - self.copy_start[vertex],
        }
    }

    fn host_vertex(&self, copy: usize) -> usize {
        match self.project(copy) {
            GadgetNode::Copy { vertex, .. } => vertex,
            GadgetNode::Edge(_) => unreachable!("edge node passed as copy"),
        }
    }
}

/// Gadget of a finite graph with only even degrees.
pub fn build_gadget(g: &Graph) -> Result<GadgetGraph> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return invalid(format!("vertex {v} has odd degree {}", g.degree(v)));
    }
    let copies = g.vertices().map(|v| g.degree(v) / 2).collect();
    GadgetGraph::with_copies(g.clone(), copies)
}

/// Gadget of a window: edge nodes for window edges only, `full_degree/2`
/// copies per vertex, so frontier vertices keep the copies their stubs
/// account for.
pub fn build_window_gadget(w: &Window) -> Result<GadgetGraph> {
    let g = &w.graph;
    if let Some(v) = g.vertices().find(|&v| w.full_degree(v) % 2 == 1) {
        return invalid(format!("vertex {v} has odd full degree {}", w.full_degree(v)));
    }
    let copies = g.vertices().map(|v| w.full_degree(v) / 2).collect();
    GadgetGraph::with_copies(g.clone(), copies)
}

/// One head per host edge, aligned with the host's edge order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    edges: Vec<Edge>,
    heads: Vec<usize>,
}

impl Orientation {
    /// `heads[i]` must be an endpoint of the `i`-th edge of `g`.
    pub fn from_heads(g: &Graph, heads: Vec<usize>) -> Result<Self> {
        let edges = g.edge_list();
        if heads.len() != edges.len() {
            return invalid(format!("{} heads for {} edges", heads.len(), edges.len()));
        }
        if let Some((e, h)) = edges.iter().zip(&heads).find(|(e, &h)| !e.contains(h)) {
            return invalid(format!("head {h} is not an endpoint of ({e})"));
        }
        Ok(Orientation { edges, heads })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(edge, head)` pairs in edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.edges.iter().copied().zip(self.heads.iter().copied())
    }

    pub fn head(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok().map(|i| self.heads[i])
    }

    /// Flips one edge; unknown edges are an input error.
    pub fn reverse(&mut self, e: Edge) -> Result<()> {
        let i = self
            .edges
            .binary_search(&e)
            .map_err(|_| Error::InvalidInput(format!("edge ({e}) is not oriented")))?;
        self.heads[i] = e.other(self.heads[i]).expect("head is an endpoint");
        Ok(())
    }

    /// `(in, out)` degree per vertex of a graph on `vertex_count` vertices.
    pub fn degrees(&self, vertex_count: usize) -> Vec<(usize, usize)> {
        let mut deg = vec![(0, 0); vertex_count];
        for (e, h) in self.iter() {
            deg[h].0 += 1;
            deg[e.other(h).expect("head is an endpoint")].1 += 1;
        }
        deg
    }
}

impl fmt::Display for Orientation {
    /// One `u v -> head` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, h) in self.iter() {
            writeln!(f, "{e} -> {h}")?;
        }
        Ok(())
    }
}

/// Orients `e` toward `v` when `x_e` is matched to a copy of `v`.
pub fn orientation_from_matching(gadget: &GadgetGraph, m: &MatchingState) -> Result<Orientation> {
    m.validate(gadget.graph())
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    if !m.is_perfect_for(gadget.graph()) {
        return invalid(format!(
            "matching covers {} of {} gadget nodes",
            m.covered().len(),
            gadget.graph().vertex_count()
        ));
    }
    let mates = m.mates(gadget.graph().vertex_count());
    let heads = gadget
        .edge_nodes()
        .map(|x| gadget.host_vertex(mates[x].expect("perfect matching")))
        .collect();
    Orientation::from_heads(gadget.host(), heads)
}

/// Gadget, Hopcroft–Karp, extraction, then a balance check before returning.
pub fn balanced_orientation_via_gadget(g: &Graph) -> Result<Orientation> {
    let gadget = build_gadget(g)?;
    let side: Vec<usize> = gadget.edge_nodes().collect();
    let m = bipartite_max_matching(gadget.graph(), &side)?;
    if !m.is_perfect_for(gadget.graph()) {
        let edge_side = gadget.edge_nodes().filter(|&x| m.covers(x)).count();
        return Err(Error::Internal(format!(
            "gadget matching covers {edge_side} of {} edge nodes and {} of {} copy nodes",
            gadget.edge_node_count(),
            m.len(),
            gadget.copy_node_count()
        )));
    }
    let o = orientation_from_matching(&gadget, &m)?;
    let all: Vec<usize> = g.vertices().collect();
    let report = verify_balanced(g, &o, &all);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "gadget orientation unbalanced at {:?}",
            report.unbalanced
        )));
    }
    Ok(o)
}

/// Hierholzer traversal from the least vertex of each component, always
/// leaving along the least unused edge; every edge points the way it was
/// walked.
pub fn eulerian_orientation(g: &Graph) -> Result<Orientation> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return invalid(format!("vertex {v} has odd degree {}", g.degree(v)));
    }
    let n = g.vertex_count();
    // incident edge ids, aligned with the sorted neighbor lists
    let mut incident = vec![Vec::new(); n];
    for (i, e) in g.edges().enumerate() {
        incident[e.u()].push(i);
        incident[e.v()].push(i);
    }
    let mut used = vec![false; g.edge_count()];
    let mut next = vec![0usize; n];
    let mut heads = vec![usize::MAX; g.edge_count()];
    let mut stack = Vec::new();
    for start in 0..n {
        if next[start] == g.degree(start) {
            continue;
        }
        stack.push(start);
        while let Some(&v) = stack.last() {
            while next[v] < incident[v].len() && used[incident[v][next[v]]] {
                next[v] += 1;
            }
            if next[v] == incident[v].len() {
                stack.pop();
                continue;
            }
            let id = incident[v][next[v]];
            let w = g.neighbors(v)[next[v]];
            used[id] = true;
            heads[id] = w;
            stack.push(w);
        }
    }
    Orientation::from_heads(g, heads)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BalanceReport {
    /// `(vertex, in, out)` for every checked vertex with `in != out`.
    pub unbalanced: Vec<(usize, usize, usize)>,
    /// Edges of the graph that the orientation does not direct.
    pub undirected: Vec<Edge>,
}

impl BalanceReport {
    pub fn passed(&self) -> bool {
        self.unbalanced.is_empty() && self.undirected.is_empty()
    }
}

/// Lists the vertices of `interior` whose in-degree differs from their
/// out-degree under `o`.
pub fn verify_balanced(g: &Graph, o: &Orientation, interior: &[usize]) -> BalanceReport {
    let undirected = g.edges().filter(|&e| o.head(e).is_none()).collect();
    let n = o
        .edges
        .iter()
        .map(|e| e.v() + 1)
        .chain([g.vertex_count()])
        .max()
        .unwrap_or(0);
    let deg = o.degrees(n);
    let mut checked: Vec<usize> = interior.iter().copied().filter(|&v| v < n).collect();
    checked.sort_unstable();
    checked.dedup();
    let unbalanced = checked
        .into_iter()
        .filter(|&v| deg[v].0 != deg[v].1)
        .map(|v| (v, deg[v].0, deg[v].1))
        .collect();
    BalanceReport {
        unbalanced,
        undirected,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetSide {
    EdgeType,
    VertexType,
}

impl GadgetSide {
    pub fn as_str(self) -> &'static str {
        match self {
            GadgetSide::EdgeType => "edge",
            GadgetSide::VertexType => "vertex",
        }
    }
}

/// The worst set found on one side of the gadget.
#[derive(Clone, Debug, PartialEq)]
pub struct HallMinimum<S> {
    pub ratio: S,
    /// Gadget node ids of the first minimizer in (size, lexicographic) order.
    pub witness: Vec<usize>,
    pub neighbors: usize,
    /// Half the stubs at the projected vertices; zero on the edge side.
    pub stub_credit: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SideAudit<S> {
    pub side: GadgetSide,
    pub candidates: usize,
    /// `min |N(F)| / |F|`; `None` when the side has no nodes.
    pub plain: Option<HallMinimum<S>>,
    /// `min (|N(F)| + stub credit) / |F|`.
    pub credited: Option<HallMinimum<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HallAudit<S> {
    pub epsilon: S,
    pub max_f: usize,
    pub edge_side: SideAudit<S>,
    pub vertex_side: SideAudit<S>,
}

impl<S: Scalar> HallAudit<S> {
    fn side_passes(&self, pick: impl Fn(&SideAudit<S>) -> &Option<HallMinimum<S>>) -> bool {
        let bar = S::one() + self.epsilon.clone();
        [&self.edge_side, &self.vertex_side]
            .into_iter()
            .all(|s| pick(s).as_ref().is_none_or(|m| m.ratio >= bar))
    }

    pub fn passed_without_credit(&self) -> bool {
        self.side_passes(|s| &s.plain)
    }

    pub fn passed_with_credit(&self) -> bool {
        self.side_passes(|s| &s.credited)
    }
}

/// Minimum of `|N(F)|/|F|` over nonempty one-sided `F` with `|F| <= max_f`,
/// counting neighbors literally in the gadget.
///
/// With stub credit, each stub at a vertex of `π(F)` adds half a neighbor
/// on the vertex side. The missing edge node of a stub is a whole neighbor
/// in the untruncated gadget, so the credited ratio never overstates it.
pub fn check_gadget_hall_expansion<S: Scalar>(
    gadget: &GadgetGraph,
    stubs: &[usize],
    epsilon: S,
    max_f: usize,
) -> Result<HallAudit<S>> {
    if epsilon.is_negative_value() {
        return invalid("epsilon must be non-negative");
    }
    if max_f == 0 {
        return invalid("max_f must be positive");
    }
    if stubs.len() != gadget.host().vertex_count() {
        return invalid("need one stub count per host vertex");
    }
    let edge_side = audit_side(gadget, stubs, GadgetSide::EdgeType, max_f);
    let vertex_side = audit_side(gadget, stubs, GadgetSide::VertexType, max_f);
    Ok(HallAudit {
        epsilon,
        max_f,
        edge_side,
        vertex_side,
    })
}

fn audit_side<S: Scalar>(
    gadget: &GadgetGraph,
    stubs: &[usize],
    side: GadgetSide,
    max_f: usize,
) -> SideAudit<S> {
    let nodes: Vec<usize> = match side {
        GadgetSide::EdgeType => gadget.edge_nodes().collect(),
        GadgetSide::VertexType => gadget.copy_nodes().collect(),
    };
    let g = gadget.graph();
    let count = |f: &[usize]| -> (usize, usize) {
        let mut nbrs: Vec<usize> = f.iter().flat_map(|&i| g.neighbors(nodes[i]).iter().copied()).collect();
        nbrs.sort_unstable();
        nbrs.dedup();
        let credit = match side {
            GadgetSide::EdgeType => 0,
            GadgetSide::VertexType => {
                let mut hosts: Vec<usize> = f.iter().map(|&i| gadget.host_vertex(nodes[i])).collect();
                hosts.dedup();
                hosts.iter().map(|&v| stubs[v]).sum()
            }
        };
        (nbrs.len(), credit)
    };
    let (best, candidates) = par_min_subsets(nodes.len(), 1, max_f, |f| {
        let (n, credit) = count(f);
        [S::ratio(n, f.len()), S::ratio(2 * n + credit, 2 * f.len())]
    });
    let [plain, credited] = best.map(|slot| {
        slot.map(|(ratio, f)| {
            let (neighbors, credit) = count(&f);
            HallMinimum {
                ratio,
                witness: f.iter().map(|&i| nodes[i]).collect(),
                neighbors,
                stub_credit: S::ratio(credit, 2),
            }
        })
    });
    SideAudit {
        side,
        candidates,
        plain,
        credited,
    }
}
