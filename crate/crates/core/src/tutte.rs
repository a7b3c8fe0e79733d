//! Quantitative Tutte verification on windows.
//!
//! For a finite `X`, the components of `G - X` are split into finite and
//! infinite ones by the window's frontier rule; `C_odd(X)` are the finite
//! components of odd size, and the hulls are `X` together with the union of
//! the respective components.
//!
//! All checks are exhaustive over `|X| <= max_x`, so a pass verdict means
//! "no violation up to `max_x`", nothing more.

use crate::error::{invalid, Result};
use crate::graph::{classify_components, ComponentScratch, Graph, Window};
use crate::scalar::Scalar;
use crate::subsets::{connected_subsets, par_min_subsets, par_subsets};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullReport {
    pub x: Vec<usize>,
    pub odd_components: Vec<Vec<usize>>,
    pub finite_components: Vec<Vec<usize>>,
    pub hull_odd: Vec<usize>,
    pub hull_fin: Vec<usize>,
}

fn hull_of(x: &[usize], comps: &[Vec<usize>]) -> Vec<usize> {
    let mut hull: Vec<usize> = x.iter().copied().chain(comps.iter().flatten().copied()).collect();
    hull.sort_unstable();
    hull.dedup();
    hull
}

pub fn hull_report(w: &Window, x: &[usize]) -> Result<HullReport> {
    let split = classify_components(w, x)?;
    let odd: Vec<Vec<usize>> = split
        .finite
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .cloned()
        .collect();
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    Ok(HullReport {
        hull_odd: hull_of(&xs, &odd),
        hull_fin: hull_of(&xs, &split.finite),
        odd_components: odd,
        finite_components: split.finite,
        x: xs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// `|C_odd(X)| > |X|`.
    TutteCondition,
    /// `|X| < |C(X)| + ε|hull(X)|` with a connected hull of size at least `k`.
    Quantitative,
    /// A finite component of `G - X` with fewer than `d` boundary edges.
    ComponentBoundary,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::TutteCondition => "tutte",
            ViolationKind::Quantitative => "quantitative",
            ViolationKind::ComponentBoundary => "component-boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation<S> {
    pub x: Vec<usize>,
    pub kind: ViolationKind,
    /// `|C_odd(X)|` for Tutte checks, `|C_fin(X)|` for the expansion lemma.
    pub components: usize,
    /// Size of the matching hull.
    pub hull_size: usize,
    /// Right-hand side subtracted from the left; negative means violated.
    pub slack: S,
    /// The offending component for [`ViolationKind::ComponentBoundary`].
    pub component: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TutteReport<S> {
    pub epsilon: S,
    pub k: usize,
    pub max_x: usize,
    /// Number of sets `X` evaluated.
    pub candidates: usize,
    /// In (|X|, lexicographic) order of the witness.
    pub violations: Vec<Violation<S>>,
}

impl<S> TutteReport<S> {
    pub fn verdict(&self) -> Verdict {
        if self.violations.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scratch state for evaluating many `X` on one window.
struct Evaluator<'a> {
    w: &'a Window,
    removed: Vec<bool>,
    comps: ComponentScratch,
    in_hull: Vec<bool>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

/// Component data for one `X`.
struct Split {
    finite: Vec<Vec<usize>>,
    odd: usize,
    odd_volume: usize,
    fin_volume: usize,
}

impl<'a> Evaluator<'a> {
    fn new(w: &'a Window) -> Self {
        let n = w.graph.vertex_count();
        Evaluator {
            w,
            removed: vec![false; n],
            comps: ComponentScratch::new(n),
            in_hull: vec![false; n],
            seen: vec![false; n],
            stack: Vec::new(),
        }
    }

    fn split(&mut self, x: &[usize]) -> Split {
        for &v in x {
            self.removed[v] = true;
        }
        let comps = self.comps.components(&self.w.graph, &self.removed);
        for &v in x {
            self.removed[v] = false;
        }
        let finite = self.w.split_components(comps).finite;
        let odd = finite.iter().filter(|c| c.len() % 2 == 1).count();
        let odd_volume = finite.iter().filter(|c| c.len() % 2 == 1).map(Vec::len).sum();
        let fin_volume = finite.iter().map(Vec::len).sum();
        Split {
            finite,
            odd,
            odd_volume,
            fin_volume,
        }
    }

    /// Whether `x` together with the selected components induces a connected subgraph.
    fn hull_connected(&mut self, x: &[usize], comps: &[&Vec<usize>]) -> bool {
        let g: &Graph = &self.w.graph;
        let members: Vec<usize> = x.iter().copied().chain(comps.iter().flat_map(|c| c.iter().copied())).collect();
        let Some(&start) = members.first() else {
            return false;
        };
        for &v in &members {
            self.in_hull[v] = true;
        }
        self.stack.clear();
        self.stack.push(start);
        self.seen[start] = true;
        let mut reached = 1;
        while let Some(v) = self.stack.pop() {
            for &u in g.neighbors(v) {
                if self.in_hull[u] && !self.seen[u] {
                    self.seen[u] = true;
                    reached += 1;
                    self.stack.push(u);
                }
            }
        }
        for &v in &members {
            self.in_hull[v] = false;
            self.seen[v] = false;
        }
        reached == members.len()
    }
}

/// Checks `Tutte_{ε,k}` for every `X` with `|X| <= max_x` (the empty set
/// included): (i) `|C_odd(X)| <= |X|`, and (ii) `|X| >= |C_odd(X)| + ε|hull_odd(X)|`
/// whenever `hull_odd(X)` is connected with at least `k` vertices.
pub fn check_tutte_eps_k<S: Scalar>(
    w: &Window,
    epsilon: S,
    k: usize,
    max_x: usize,
) -> Result<TutteReport<S>> {
    if epsilon.is_negative_value() {
        return invalid("epsilon must be nonnegative");
    }
    if k < 1 {
        return invalid("k must be at least 1");
    }
    let n = w.graph.vertex_count();
    let (nested, candidates) = par_subsets(
        n,
        0,
        max_x,
        || Evaluator::new(w),
        |ev, x| {
            let split = ev.split(x);
            let mut found = Vec::new();
            let size = x.len();
            let hull_size = size + split.odd_volume;
            if split.odd > size {
                found.push(Violation {
                    x: x.to_vec(),
                    kind: ViolationKind::TutteCondition,
                    components: split.odd,
                    hull_size,
                    slack: S::from_count(size) - S::from_count(split.odd),
                    component: None,
                });
            }
            if hull_size >= k {
                let rhs = S::from_count(split.odd) + epsilon.clone() * S::from_count(hull_size);
                let slack = S::from_count(size) - rhs;
                if slack.is_negative_value() {
                    let odd: Vec<&Vec<usize>> =
                        split.finite.iter().filter(|c| c.len() % 2 == 1).collect();
                    if ev.hull_connected(x, &odd) {
                        found.push(Violation {
                            x: x.to_vec(),
                            kind: ViolationKind::Quantitative,
                            components: split.odd,
                            hull_size,
                            slack,
                            component: None,
                        });
                    }
                }
            }
            (!found.is_empty()).then_some(found)
        },
    );
    Ok(TutteReport {
        epsilon,
        k,
        max_x,
        candidates,
        violations: nested.into_iter().flatten().collect(),
    })
}

/// `|E(F, V \ F)|` in the ambient graph: window edges leaving `f` plus the
/// external stubs at `f`. Ids in `f` must be valid vertices of the window.
pub fn edge_boundary(w: &Window, f: &[usize]) -> usize {
    let mut inside = vec![false; w.graph.vertex_count()];
    for &v in f {
        inside[v] = true;
    }
    boundary_with_mask(w, f, &inside)
}

/// Boundary of a short sorted vertex list without a mask.
fn small_boundary(w: &Window, f: &[usize]) -> usize {
    f.iter()
        .map(|&v| {
            w.stubs(v) + w.graph.neighbors(v).iter().filter(|u| f.binary_search(u).is_err()).count()
        })
        .sum()
}

fn boundary_with_mask(w: &Window, f: &[usize], inside: &[bool]) -> usize {
    f.iter()
        .map(|&v| {
            w.stubs(v) + w.graph.neighbors(v).iter().filter(|&&u| !inside[u]).count()
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport<S> {
    /// Minimum of `|E(F, V \ F)| / |F|` over the enumerated range.
    pub delta_lower: S,
    pub delta_witness: Vec<usize>,
    pub witness_boundary: usize,
    pub max_f: usize,
    pub connected_only: bool,
    /// True when every subset of the window was within range.
    pub exhaustive: bool,
    pub candidates: usize,
}

/// Minimum boundary ratio over all `F` with `1 <= |F| <= max_f`.
///
/// With `connected_only` the search is restricted to connected `F`. This
/// loses nothing: the boundary of a disconnected set is the sum of the
/// boundaries of its components, so its ratio is at least the smallest
/// component ratio. Ties keep the first witness in enumeration order.
pub fn expansion_constant<S: Scalar>(
    w: &Window,
    max_f: usize,
    connected_only: bool,
) -> Result<ExpansionReport<S>> {
    if max_f < 1 {
        return invalid("max_f must be at least 1");
    }
    let n = w.graph.vertex_count();
    if n == 0 {
        return invalid("window has no vertices");
    }
    let (boundary, size, witness, candidates) = if connected_only {
        let sets = connected_subsets(&w.graph, max_f);
        let candidates = sets.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for f in sets {
            let b = edge_boundary(w, &f);
            // compare b/|f| < b*/|f*| without division
            if best.as_ref().is_none_or(|(bb, bf)| b * bf.len() < bb * f.len()) {
                best = Some((b, f));
            }
        }
        let (b, f) = best.expect("every singleton is connected");
        (b, f.len(), f, candidates)
    } else {
        let ([best], candidates) = par_min_subsets(n, 1, max_f, |f| [S::ratio(small_boundary(w, f), f.len())]);
        let (_, f) = best.expect("at least one singleton is enumerated");
        (small_boundary(w, &f), f.len(), f, candidates)
    };
    Ok(ExpansionReport {
        delta_lower: S::ratio(boundary, size),
        delta_witness: witness,
        witness_boundary: boundary,
        max_f,
        connected_only,
        exhaustive: max_f >= n,
        candidates,
    })
}

/// `ε = δ / d`.
pub fn epsilon_from_delta<S: Scalar>(delta: S, d: usize) -> Result<S> {
    if d == 0 {
        return invalid("degree bound must be positive");
    }
    if delta.is_negative_value() {
        return invalid("delta must be nonnegative");
    }
    Ok(delta / S::from_count(d))
}

/// Checks the two ingredients of the expansion lemma on a `d`-regular
/// window (stubs included), for every nonempty `X` with `|X| <= max_x`:
/// each finite component of `G - X` has at least `d` boundary edges, and
/// `|X| >= |C_fin(X)| + ε|hull_fin(X)|` with `ε = δ/d`.
pub fn verify_expansion_lemma<S: Scalar>(
    w: &Window,
    d: usize,
    delta: S,
    max_x: usize,
) -> Result<TutteReport<S>> {
    let epsilon = epsilon_from_delta(delta, d)?;
    if w.graph.vertex_count() > 0 && w.regular_degree() != Some(d) {
        return invalid(format!("window is not {d}-regular (stubs included)"));
    }
    let (nested, candidates) = par_subsets(
        w.graph.vertex_count(),
        1,
        max_x,
        || Evaluator::new(w),
        |ev, x| {
            let split = ev.split(x);
            let mut found = Vec::new();
            for c in &split.finite {
                let b = edge_boundary(w, c);
                if b < d {
                    found.push(Violation {
                        x: x.to_vec(),
                        kind: ViolationKind::ComponentBoundary,
                        components: split.finite.len(),
                        hull_size: x.len() + split.fin_volume,
                        slack: S::from_count(b) - S::from_count(d),
                        component: Some(c.clone()),
                    });
                }
            }
            let hull_size = x.len() + split.fin_volume;
            let rhs = S::from_count(split.finite.len()) + epsilon.clone() * S::from_count(hull_size);
            let slack = S::from_count(x.len()) - rhs;
            if slack.is_negative_value() {
                found.push(Violation {
                    x: x.to_vec(),
                    kind: ViolationKind::Quantitative,
                    components: split.finite.len(),
                    hull_size,
                    slack,
                    component: None,
                });
            }
            (!found.is_empty()).then_some(found)
        },
    );
    Ok(TutteReport {
        epsilon,
        k: 1,
        max_x,
        candidates,
        violations: nested.into_iter().flatten().collect(),
    })
}
