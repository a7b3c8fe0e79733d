//! Corpus builders and brute-force oracles shared by the integration tests.
//! Nothing here calls the library's algorithms; only its graph container.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tuttelab::{Graph, Rational, Window};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn relabel(n: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, edges.iter().map(|&(a, b)| (perm[a], perm[b]))).unwrap()
}

/// Random spanning tree plus independent extra edges with probability `p`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    relabel(n, &edges.into_iter().collect::<Vec<_>>(), rng)
}

pub fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Every labeled graph on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

/// 500 random connected graphs on 1..=8 vertices.
pub fn small_corpus() -> Vec<Graph> {
    let mut r = rng(0x5eed_0001);
    (0..500)
        .map(|_| {
            let n = r.gen_range(1..=8);
            let p = r.gen_range(0.0..0.6);
            random_connected(&mut r, n, p)
        })
        .collect()
}

/// 200 random graphs on 9..=14 vertices, not necessarily connected.
pub fn medium_corpus() -> Vec<Graph> {
    let mut r = rng(0x5eed_0002);
    (0..200)
        .map(|_| {
            let n = r.gen_range(9..=14);
            let p = r.gen_range(0.1..0.5);
            gnp(&mut r, n, p)
        })
        .collect()
}

/// Tree on `2 * pairs` vertices with a perfect matching: grown by hanging
/// a new matched pair `u - a - b` off a random existing vertex `u`.
pub fn random_matchable_tree(rng: &mut ChaCha8Rng, pairs: usize) -> Graph {
    assert!(pairs >= 1);
    let mut edges = vec![(0, 1)];
    for i in 1..pairs {
        let (a, b) = (2 * i, 2 * i + 1);
        let u = rng.gen_range(0..a);
        edges.push((u, a));
        edges.push((a, b));
    }
    relabel(2 * pairs, &edges, rng)
}

/// Connected graph whose degrees all lie in {2, 4, 6}: a Hamiltonian cycle
/// plus edge-disjoint random cycles through vertices of degree at most 4.
pub fn random_even_graph(rng: &mut ChaCha8Rng, n: usize, extra_cycles: usize) -> Graph {
    assert!(n >= 3);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    for i in 0..n {
        edges.insert(key(order[i], order[(i + 1) % n]));
    }
    let mut deg = vec![2usize; n];
    for _ in 0..extra_cycles {
        for _attempt in 0..50 {
            let open: Vec<usize> = (0..n).filter(|&v| deg[v] <= 4).collect();
            if open.len() < 3 {
                break;
            }
            let len = rng.gen_range(3..=open.len().min(8));
            let cycle: Vec<usize> = open.choose_multiple(rng, len).copied().collect();
            let new: Vec<(usize, usize)> = (0..len).map(|i| key(cycle[i], cycle[(i + 1) % len])).collect();
            if new.iter().any(|e| edges.contains(e)) {
                continue;
            }
            for &(a, b) in &new {
                edges.insert((a, b));
                deg[a] += 1;
                deg[b] += 1;
            }
            break;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Maximum matching size by memoized branching on the lowest free vertex.
pub fn brute_matching_size(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    let mut memo = vec![u8::MAX; 1 << n];
    fn go(g: &Graph, mask: usize, memo: &mut [u8]) -> usize {
        if mask == 0 {
            return 0;
        }
        if memo[mask] != u8::MAX {
            return memo[mask] as usize;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut best = go(g, rest, memo);
        for &w in g.neighbors(v) {
            if rest >> w & 1 == 1 {
                best = best.max(1 + go(g, rest & !(1 << w), memo));
            }
        }
        memo[mask] = best as u8;
        best
    }
    go(g, (1 << n) - 1, &mut memo)
}

pub fn brute_has_perfect_matching(g: &Graph) -> bool {
    2 * brute_matching_size(g) == g.vertex_count()
}

/// Every perfect matching, as sorted edge lists.
pub fn all_perfect_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    fn go(g: &Graph, used: &mut [bool], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(v) = (0..g.vertex_count()).find(|&v| !used[v]) else {
            out.push(cur.clone());
            return;
        };
        used[v] = true;
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                cur.push((v.min(w), v.max(w)));
                go(g, used, cur, out);
                cur.pop();
                used[w] = false;
            }
        }
        used[v] = false;
    }
    let mut out = Vec::new();
    go(g, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out
}

/// Union-find components of `g` minus the vertices flagged in `removed`,
/// each sorted, ordered by least vertex.
pub fn components_without(g: &Graph, removed: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for v in 0..n {
        for &u in g.neighbors(v) {
            if !removed[u] && !removed[v] {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in (0..n).filter(|&v| !removed[v]) {
        let r = find(&mut parent, v);
        groups[r].push(v);
    }
    let mut comps: Vec<Vec<usize>> = groups.into_iter().filter(|c| !c.is_empty()).collect();
    comps.sort();
    comps
}

fn induced_connected(g: &Graph, set: &[usize]) -> bool {
    if set.is_empty() {
        return false;
    }
    let removed: Vec<bool> = (0..g.vertex_count()).map(|v| !set.contains(&v)).collect();
    components_without(g, &removed).len() == 1
}

/// `(X, kind, components, hull, slack)` with kind "tutte" or "quantitative".
pub type OracleViolation = (Vec<usize>, &'static str, usize, usize, Rational);

/// Direct restatement of the `Tutte_{ε,k}` check on a small window,
/// enumerating `X` by bitmask and ordering results by (|X|, lex).
pub fn oracle_tutte(w: &Window, eps: Rational, k: usize, max_x: usize) -> Vec<OracleViolation> {
    let g = &w.graph;
    let n = g.vertex_count();
    let mut sets: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|x: &Vec<usize>| x.len() <= max_x)
        .collect();
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let mut out = Vec::new();
    for x in sets {
        let removed: Vec<bool> = (0..n).map(|v| x.contains(&v)).collect();
        let odd: Vec<Vec<usize>> = components_without(g, &removed)
            .into_iter()
            .filter(|c| c.iter().all(|&v| w.is_interior(v)) && c.len() % 2 == 1)
            .collect();
        let hull: Vec<usize> = x.iter().copied().chain(odd.iter().flatten().copied()).collect();
        let size = Rational::from_integer(x.len() as i64);
        let odd_count = Rational::from_integer(odd.len() as i64);
        if odd.len() > x.len() {
            out.push((x.clone(), "tutte", odd.len(), hull.len(), size - odd_count));
        }
        let slack = size - odd_count - eps * Rational::from_integer(hull.len() as i64);
        if hull.len() >= k && slack < Rational::from_integer(0) && induced_connected(g, &hull) {
            out.push((x.clone(), "quantitative", odd.len(), hull.len(), slack));
        }
    }
    out
}

/// Boundary of `set` counted edge by edge, stubs included.
pub fn oracle_boundary(w: &Window, set: &[usize]) -> usize {
    let inside = |v: usize| set.contains(&v);
    let crossing = w.graph.edges().filter(|e| inside(e.u()) != inside(e.v())).count();
    crossing + set.iter().map(|&v| w.stubs(v)).sum::<usize>()
}

/// `min |∂F| / |F|` over `1 <= |F| <= max_f` by bitmask.
pub fn oracle_expansion(w: &Window, max_f: usize) -> Rational {
    let n = w.graph.vertex_count();
    (1u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max_f)
        .map(|m| {
            let set: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
            Rational::new(oracle_boundary(w, &set) as i64, set.len() as i64)
        })
        .min()
        .unwrap()
}

/// Random window over `g`: each vertex is frontier with probability 1/3 and
/// carries 0..=2 stubs when it is.
pub fn random_window(rng: &mut ChaCha8Rng, g: Graph) -> Window {
    let n = g.vertex_count();
    let interior: Vec<bool> = (0..n).map(|_| !rng.gen_bool(1.0 / 3.0)).collect();
    let stubs = (0..n).map(|v| if interior[v] { 0 } else { rng.gen_range(0..=2) }).collect();
    Window::new(g, interior, stubs).unwrap()
}

/// Unweighted distances by Floyd–Warshall.
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
        for &u in g.neighbors(v) {
            row[u] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}
