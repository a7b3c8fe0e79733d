//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

use crate::graph::Graph;

const INF: usize = usize::MAX;

/// Maximum matching between `left` (ascending vertex ids) and the rest of
/// `g`. The caller has already validated the bipartition. Returns mates.
pub(crate) fn maximum_mates(g: &Graph, left: &[usize]) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    let mut dist = vec![INF; n];
    loop {
        if !layer(g, left, &mate, &mut dist) {
            break;
        }
        let mut progressed = false;
        let mut next_edge = vec![0usize; n];
        for &u in left {
            if mate[u].is_none() && augment(g, u, &mut mate, &mut dist, &mut next_edge) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    mate
}

/// BFS layering from the free left vertices; true if some free right vertex
/// is reachable.
fn layer(g: &Graph, left: &[usize], mate: &[Option<usize>], dist: &mut [usize]) -> bool {
    dist.iter_mut().for_each(|d| *d = INF);
    let mut queue = VecDeque::new();
    for &u in left {
        if mate[u].is_none() {
            dist[u] = 0;
            queue.push_back(u);
        }
    }
    let mut found = false;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            match mate[w] {
                None => found = true,
                Some(u2) if dist[u2] == INF => {
                    dist[u2] = dist[u] + 1;
                    queue.push_back(u2);
                }
                Some(_) => {}
            }
        }
    }
    found
}

fn augment(
    g: &Graph,
    u: usize,
    mate: &mut [Option<usize>],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    while next_edge[u] < g.degree(u) {
        let w = g.neighbors(u)[next_edge[u]];
        next_edge[u] += 1;
        let ok = match mate[w] {
            None => true,
            Some(u2) => dist[u2] == dist[u] + 1 && augment(g, u2, mate, dist, next_edge),
        };
        if ok {
            mate[u] = Some(w);
            mate[w] = Some(u);
            return true;
        }
    }
    dist[u] = INF;
    false
}
