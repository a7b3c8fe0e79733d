//! Exhaustive enumeration of vertex subsets.
//!
//! Results always come back in a fixed order, (size, lexicographic) for
//! plain subsets and (seed, discovery) for connected ones, regardless of
//! how rayon schedules the work.

use itertools::Itertools;
use rayon::prelude::*;

use crate::graph::Graph;

/// Evaluates `eval` on every subset of `0..n` with `min_size <= |X| <= max_size`
/// and returns the `Some` results in (size, lexicographic) order, together
/// with the number of subsets visited.
pub(crate) fn par_subsets<S, T, I, F>(
    n: usize,
    min_size: usize,
    max_size: usize,
    init: I,
    eval: F,
) -> (Vec<T>, usize)
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, &[usize]) -> Option<T> + Sync + Send,
{
    let mut out = Vec::new();
    let mut visited = 0usize;
    for size in min_size..=max_size.min(n) {
        if size == 0 {
            visited += 1;
            out.extend(eval(&mut init(), &[]));
            continue;
        }
        let per_seed: Vec<(Vec<T>, usize)> = (0..n)
            .into_par_iter()
            .map_init(&init, |state, first| {
                let mut found = Vec::new();
                let mut count = 0;
                let mut x = Vec::with_capacity(size);
                for rest in (first + 1..n).combinations(size - 1) {
                    x.clear();
                    x.push(first);
                    x.extend_from_slice(&rest);
                    count += 1;
                    found.extend(eval(state, &x));
                }
                (found, count)
            })
            .collect();
        for (found, count) in per_seed {
            visited += count;
            out.extend(found);
        }
    }
    (out, visited)
}

/// Per-key best `(key, subset)` so far.
pub(crate) type Minima<T, const K: usize> = [Option<(T, Vec<usize>)>; K];

fn offer<T: PartialOrd>(slot: &mut Option<(T, Vec<usize>)>, key: T, x: impl FnOnce() -> Vec<usize>) {
    if slot.as_ref().is_none_or(|(b, _)| key < *b) {
        *slot = Some((key, x()));
    }
}

/// For each of `K` keys produced by `eval`, the first subset (in
/// (size, lexicographic) order) attaining the minimum, with the number of
/// subsets visited. Subsets with `|X|` in `min_size..=max_size` are scanned.
pub(crate) fn par_min_subsets<T, F, const K: usize>(
    n: usize,
    min_size: usize,
    max_size: usize,
    eval: F,
) -> (Minima<T, K>, usize)
where
    T: PartialOrd + Send,
    F: Fn(&[usize]) -> [T; K] + Sync + Send,
{
    let mut best: Minima<T, K> = std::array::from_fn(|_| None);
    let mut visited = 0usize;
    for size in min_size.max(1)..=max_size.min(n) {
        let per_seed: Vec<(Minima<T, K>, usize)> = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut local: Minima<T, K> = std::array::from_fn(|_| None);
                let mut count = 0;
                let mut x = Vec::with_capacity(size);
                for rest in (first + 1..n).combinations(size - 1) {
                    x.clear();
                    x.push(first);
                    x.extend_from_slice(&rest);
                    count += 1;
                    for (slot, key) in local.iter_mut().zip(eval(&x)) {
                        offer(slot, key, || x.clone());
                    }
                }
                (local, count)
            })
            .collect();
        // seeds arrive in ascending order, so strict improvement keeps the first minimizer
        for (local, count) in per_seed {
            visited += count;
            for (slot, cand) in best.iter_mut().zip(local) {
                if let Some((key, x)) = cand {
                    offer(slot, key, || x);
                }
            }
        }
    }
    (best, visited)
}

/// Every connected vertex set of `g` with `1 <= |F| <= max_size`, each
/// exactly once, grouped by least vertex.
pub(crate) fn connected_subsets(g: &Graph, max_size: usize) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    if max_size == 0 {
        return Vec::new();
    }
    (0..n)
        .into_par_iter()
        .map(|seed| {
            let mut out = Vec::new();
            let mut in_sub = vec![false; n];
            let mut near = vec![0u32; n];
            let mut sub = vec![seed];
            in_sub[seed] = true;
            mark(g, seed, &mut near, 1);
            let ext: Vec<usize> = g.neighbors(seed).iter().copied().filter(|&u| u > seed).collect();
            extend(g, seed, max_size, &mut sub, ext, &mut in_sub, &mut near, &mut out);
            out
        })
        .flatten()
        .collect()
}

fn mark(g: &Graph, v: usize, near: &mut [u32], delta: i32) {
    for &u in g.neighbors(v) {
        near[u] = (near[u] as i32 + delta) as u32;
    }
}

// ESU-style extension: a vertex joins the extension set only if it is
// larger than the seed and not already adjacent to the current subset.
#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    seed: usize,
    max_size: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    in_sub: &mut [bool],
    near: &mut [u32],
    out: &mut Vec<Vec<usize>>,
) {
    let mut sorted = sub.clone();
    sorted.sort_unstable();
    out.push(sorted);
    if sub.len() == max_size {
        return;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in g.neighbors(w) {
            if u > seed && !in_sub[u] && near[u] == 0 && !ext.contains(&u) && !next.contains(&u) {
                next.push(u);
            }
        }
        sub.push(w);
        in_sub[w] = true;
        mark(g, w, near, 1);
        extend(g, seed, max_size, sub, next, in_sub, near, out);
        mark(g, w, near, -1);
        in_sub[w] = false;
        sub.pop();
    }
}
