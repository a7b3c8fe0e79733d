use itertools::Itertools;

use crate::graph::{ComponentScratch, Graph};

/// Result of the exhaustive Tutte–Berge maximization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deficiency {
    /// max over enumerated X of `odd(g - X) - |X|`.
    pub deficiency: usize,
    /// The first maximizer in (size, lexicographic) order.
    pub witness: Vec<usize>,
}

/// Exhaustive Tutte–Berge deficiency over all `X` with `|X| <= max_x`.
///
/// `X = ∅` is always enumerated, so the value is at least the number of odd
/// components of `g`. It is exact once `max_x` reaches the size of a true
/// maximizer, in particular for `max_x >= vertex_count`.
pub fn tutte_berge_deficiency(g: &Graph, max_x: usize) -> Deficiency {
    let n = g.vertex_count();
    let mut scratch = ComponentScratch::new(n);
    let mut removed = vec![false; n];
    let mut best: Option<(i64, Vec<usize>)> = None;
    for size in 0..=max_x.min(n) {
        for x in (0..n).combinations(size) {
            for &v in &x {
                removed[v] = true;
            }
            let odd = scratch
                .components(g, &removed)
                .iter()
                .filter(|c| c.len() % 2 == 1)
                .count();
            for &v in &x {
                removed[v] = false;
            }
            let value = odd as i64 - size as i64;
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                best = Some((value, x));
            }
        }
    }
    let (value, witness) = best.expect("the empty set is always enumerated");
    Deficiency {
        deficiency: value.max(0) as usize,
        witness,
    }
}
