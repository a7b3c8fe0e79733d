//! Matching oracles.
//!
//! [`max_matching`] (blossom) is the engine behind every existence test.
//! [`bipartite_max_matching`] (Hopcroft–Karp) serves the orientation gadget,
//! and [`tutte_berge_deficiency`] is an independent exhaustive cross-check.

mod blossom;
mod hopcroft_karp;
mod tutte_berge;

use std::collections::BTreeSet;

use crate::error::{invalid, Error, Result};
use crate::graph::{Edge, Graph};

pub use tutte_berge::{tutte_berge_deficiency, Deficiency};

/// A set of pairwise vertex-disjoint edges and the vertices they cover.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MatchingState {
    edges: BTreeSet<Edge>,
    covered: BTreeSet<usize>,
}

impl MatchingState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Validates disjointness and membership in `g`.
    pub fn from_edges<I>(g: &Graph, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut m = MatchingState::new();
        for e in edges {
            if !g.contains_edge(e) {
                return invalid(format!("edge ({}, {}) not in graph", e.u(), e.v()));
            }
            m.insert(e)?;
        }
        Ok(m)
    }

    pub(crate) fn from_mates(mate: &[Option<usize>]) -> Self {
        let mut m = MatchingState::new();
        for (v, w) in mate.iter().enumerate() {
            if let Some(w) = *w {
                if v < w {
                    m.edges.insert(Edge::new(v, w).expect("mate is never self"));
                    m.covered.insert(v);
                    m.covered.insert(w);
                }
            }
        }
        m
    }

    /// Adds an edge; fails if it touches an already covered vertex.
    pub fn insert(&mut self, e: Edge) -> Result<()> {
        if let Some(v) = e.endpoints().into_iter().find(|v| self.covered.contains(v)) {
            return invalid(format!(
                "edge ({}, {}) meets covered vertex {v}",
                e.u(),
                e.v()
            ));
        }
        self.edges.insert(e);
        self.covered.insert(e.u());
        self.covered.insert(e.v());
        Ok(())
    }

    /// Union with a disjoint matching.
    pub fn extend_disjoint(&mut self, other: &MatchingState) -> Result<()> {
        for &e in &other.edges {
            self.insert(e)?;
        }
        Ok(())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn covered(&self) -> &BTreeSet<usize> {
        &self.covered
    }

    pub fn covers(&self, v: usize) -> bool {
        self.covered.contains(&v)
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect_for(&self, g: &Graph) -> bool {
        self.covered.len() == g.vertex_count()
    }

    pub fn mates(&self, vertex_count: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; vertex_count];
        for e in &self.edges {
            mate[e.u()] = Some(e.v());
            mate[e.v()] = Some(e.u());
        }
        mate
    }

    /// Checks every structural invariant against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !g.contains_edge(*e) {
                return Err(Error::Internal(format!("matched edge {e} not in graph")));
            }
            if !seen.insert(e.u()) || !seen.insert(e.v()) {
                return Err(Error::Internal(format!("matched edge {e} is not disjoint")));
            }
        }
        if seen != self.covered {
            return Err(Error::Internal("covered set out of sync".into()));
        }
        Ok(())
    }
}

/// A maximum-cardinality matching. Deterministic for a given graph.
pub fn max_matching(g: &Graph) -> MatchingState {
    MatchingState::from_mates(&blossom::maximum_mates(g))
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.vertex_count().is_multiple_of(2) && max_matching(g).is_perfect_for(g)
}

/// Whether `e` lies in some perfect matching of `g`.
pub fn is_allowed_edge(g: &Graph, e: Edge) -> Result<bool> {
    if !g.contains_edge(e) {
        return invalid(format!("edge ({}, {}) not in graph", e.u(), e.v()));
    }
    if !has_perfect_matching(g) {
        return Ok(false);
    }
    let rest = g.remove_vertices(&e.endpoints())?;
    Ok(has_perfect_matching(&rest.graph))
}

/// Maximum matching of a bipartite graph whose parts are `side` and its
/// complement. Both parts must be independent sets.
pub fn bipartite_max_matching(g: &Graph, side: &[usize]) -> Result<MatchingState> {
    let mut in_side = vec![false; g.vertex_count()];
    for &v in side {
        g.check_vertex(v)?;
        in_side[v] = true;
    }
    if let Some(e) = g.edges().find(|e| in_side[e.u()] == in_side[e.v()]) {
        return invalid(format!("edge ({}, {}) lies within one side of the bipartition", e.u(), e.v()));
    }
    let left: Vec<usize> = g.vertices().filter(|&v| in_side[v]).collect();
    Ok(MatchingState::from_mates(&hopcroft_karp::maximum_mates(g, &left)))
}

/// `m` extended by a maximum matching of `g - V(m)`.
pub fn complete_matching(g: &Graph, m: &MatchingState) -> Result<MatchingState> {
    let covered: Vec<usize> = m.covered().iter().copied().collect();
    let rest = g.remove_vertices(&covered)?;
    let mut out = m.clone();
    for e in max_matching(&rest.graph).edges() {
        out.insert(rest.edge_to_original(e))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = vec![];
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        g(n, &e)
    }

    fn star3() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn petersen() -> Graph {
        let mut e = vec![];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        g(10, &e)
    }

    /// Exhaustive maximum matching by branching on the least vertex.
    fn brute_force_size(g: &Graph) -> usize {
        fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
            let Some(v) = (from..g.vertex_count()).find(|&v| !used[v]) else {
                return 0;
            };
            used[v] = true;
            let mut best = go(g, used, v + 1);
            for &w in g.neighbors(v) {
                if !used[w] {
                    used[w] = true;
                    best = best.max(1 + go(g, used, v + 1));
                    used[w] = false;
                }
            }
            used[v] = false;
            best
        }
        go(g, &mut vec![false; g.vertex_count()], 0)
    }

    #[test]
    fn max_matching_examples() {
        assert_eq!(max_matching(&complete(4)).len(), 2);
        assert_eq!(max_matching(&star3()).len(), 1);
        let p = petersen();
        assert_eq!(brute_force_size(&p), 5);
        let m = max_matching(&p);
        assert_eq!(m.len(), 5);
        m.validate(&p).unwrap();
    }

    #[test]
    fn blossom_needed_case() {
        // triangle with a pendant path: greedy picks (0,1) first and must augment through the odd cycle
        let h = g(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (1, 4), (3, 5)]);
        assert_eq!(brute_force_size(&h), 3);
        assert_eq!(max_matching(&h).len(), 3);
    }

    #[test]
    fn perfect_matching_examples() {
        assert!(has_perfect_matching(&g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])));
        assert!(!has_perfect_matching(&g(3, &[(0, 1), (1, 2)])));
        let minus = petersen().remove_vertices(&[0]).unwrap();
        assert!(!has_perfect_matching(&minus.graph));
        assert!(has_perfect_matching(&Graph::empty(0)));
    }

    #[test]
    fn allowed_edge_examples() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(is_allowed_edge(&c4, Edge::new(0, 1).unwrap()).unwrap());
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(!is_allowed_edge(&p4, Edge::new(1, 2).unwrap()).unwrap());
        assert!(is_allowed_edge(&p4, Edge::new(0, 1).unwrap()).unwrap());
        assert!(is_allowed_edge(&p4, Edge::new(0, 2).unwrap()).is_err());
    }

    #[test]
    fn bipartite_examples() {
        let k22 = g(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(bipartite_max_matching(&k22, &[0, 1]).unwrap().len(), 2);
        assert_eq!(bipartite_max_matching(&star3(), &[0]).unwrap().len(), 1);
        let tri = complete(3);
        assert!(bipartite_max_matching(&tri, &[0]).is_err());
    }

    #[test]
    fn tutte_berge_examples() {
        let d = tutte_berge_deficiency(&star3(), 4);
        assert_eq!(d.deficiency, 2);
        assert_eq!(d.witness, vec![0]);
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(tutte_berge_deficiency(&c4, 4).deficiency, 0);
        assert_eq!(tutte_berge_deficiency(&g(3, &[(0, 1), (1, 2)]), 3).deficiency, 1);
    }

    #[test]
    fn matching_state_rejects_overlap() {
        let p = g(3, &[(0, 1), (1, 2)]);
        let e01 = Edge::new(0, 1).unwrap();
        let e12 = Edge::new(1, 2).unwrap();
        assert!(MatchingState::from_edges(&p, [e01, e12]).is_err());
        assert!(MatchingState::from_edges(&p, [Edge::new(0, 2).unwrap()]).is_err());
        let m = MatchingState::from_edges(&p, [e12]).unwrap();
        assert_eq!(m.mates(3), vec![None, Some(2), Some(1)]);
    }

    #[test]
    fn completion_extends_partial_matching() {
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let m = MatchingState::from_edges(&c6, [Edge::new(1, 2).unwrap()]).unwrap();
        let full = complete_matching(&c6, &m).unwrap();
        assert!(full.is_perfect_for(&c6));
        assert!(full.contains(Edge::new(1, 2).unwrap()));
    }
}
