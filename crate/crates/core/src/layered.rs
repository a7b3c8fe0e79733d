//! Level-by-level perfect matching construction with per-level certificates.
//!
//! A [`Schedule`] fixes radii `f(n) = c·2^n` and budgets
//! `ε_n = ε - Σ_{m<=n} 4/f(m)` with `Σ_n 4/f(n) < ε` and
//! `ε_{n-1}·f(n) > 4`. [`build_nets`] picks greedy `f(n)`-separated vertex
//! levels `A_n`, and [`run_layered_matching`] matches every `x ∈ A_n` along
//! the least edge at `x` that still extends to a perfect matching of the
//! remaining graph, then certifies `G - M_n` at `(ε_n, f(n))`.

// negated comparisons keep NaN on the failing side for float scalars
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use crate::error::{invalid, Error, Result};
use crate::graph::{bfs_distances, distance, Edge, Graph, Window};
use crate::matching::{has_perfect_matching, max_matching, MatchingState};
use crate::scalar::Scalar;
use crate::tutte::{check_tutte_eps_k, hull_report, TutteReport};

/// Largest radius scale tried before giving up on a tiny epsilon.
const MAX_SCALE: usize = 1 << 40;

#[derive(Clone, Debug, PartialEq)]
pub struct Schedule<S> {
    pub epsilon: S,
    /// The power of two `c` in `f(n) = c·2^n`.
    pub scale: usize,
    /// `f(0), f(1), ...`
    pub radii: Vec<usize>,
    /// `ε_0, ε_1, ...`
    pub eps: Vec<S>,
}

impl<S: Scalar> Schedule<S> {
    pub fn level_count(&self) -> usize {
        self.radii.len()
    }

    /// `ε_{n-1}`, with `ε_{-1} = ε`.
    pub fn eps_before(&self, n: usize) -> S {
        if n == 0 {
            self.epsilon.clone()
        } else {
            self.eps[n - 1].clone()
        }
    }

    /// `Σ_{n>=0} 4/(c·2^n) = 8/c`, the full infinite tail.
    pub fn tail_sum(&self) -> S {
        S::ratio(8, self.scale)
    }

    /// Re-derives both schedule conditions from scratch and reports the
    /// first one that fails.
    pub fn check_conditions(&self) -> std::result::Result<(), String> {
        if !(self.tail_sum() < self.epsilon) {
            return Err(format!(
                "sum of 4/f(n) = {} is not below epsilon {}",
                self.tail_sum(),
                self.epsilon
            ));
        }
        let mut budget = self.epsilon.clone();
        for (n, &f) in self.radii.iter().enumerate() {
            if n > 0 && f <= self.radii[n - 1] {
                return Err(format!("f is not increasing at level {n}"));
            }
            if !(budget.clone() * S::from_count(f) > S::from_count(4)) {
                return Err(format!("eps_(n-1) * f(n) <= 4 at level {n}"));
            }
            budget = budget - S::ratio(4, f);
            if budget != self.eps[n] {
                return Err(format!("eps_{n} = {} but expected {budget}", self.eps[n]));
            }
            if !(budget > S::zero()) {
                return Err(format!("eps_{n} is not positive"));
            }
        }
        Ok(())
    }
}

/// Picks the least power of two `c` with `8/c < ε` and lays out
/// `level_count` levels of `f(n) = c·2^n`.
pub fn build_schedule<S: Scalar>(epsilon: S, level_count: usize) -> Result<Schedule<S>> {
    if !(epsilon > S::zero()) {
        return invalid("epsilon must be positive");
    }
    if level_count == 0 {
        return invalid("need at least one level");
    }
    let mut scale = 1usize;
    while !(S::ratio(8, scale) < epsilon) {
        scale *= 2;
        if scale > MAX_SCALE {
            return invalid("epsilon too small for a representable schedule");
        }
    }
    let mut radii = Vec::with_capacity(level_count);
    let mut eps = Vec::with_capacity(level_count);
    let mut budget = epsilon.clone();
    for n in 0..level_count {
        let f = u32::try_from(n)
            .ok()
            .and_then(|n| 1usize.checked_shl(n))
            .and_then(|p| p.checked_mul(scale))
            .filter(|&f| f <= MAX_SCALE << 8)
            .ok_or_else(|| Error::InvalidInput("too many schedule levels".into()))?;
        budget = budget - S::ratio(4, f);
        radii.push(f);
        eps.push(budget.clone());
    }
    let schedule = Schedule {
        epsilon,
        scale,
        radii,
        eps,
    };
    schedule.check_conditions().map_err(Error::Internal)?;
    Ok(schedule)
}

/// Disjoint separated vertex levels `A_n` and the interior left over.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NetLevels {
    pub levels: Vec<Vec<usize>>,
    pub residual: Vec<usize>,
}

impl NetLevels {
    /// Whether distinct vertices of level `n` are more than `radii[n]` apart.
    pub fn is_separated(&self, g: &Graph, radii: &[usize]) -> bool {
        self.levels.iter().zip(radii).all(|(level, &f)| {
            level.iter().enumerate().all(|(i, &x)| {
                level[i + 1..]
                    .iter()
                    .all(|&y| distance(g, x, y).is_none_or(|d| d > f))
            })
        })
    }
}

pub fn build_nets<S: Scalar>(w: &Window, schedule: &Schedule<S>) -> NetLevels {
    build_nets_with_radii(w, &schedule.radii)
}

/// Greedy nets in ascending vertex order: level `n` is a maximal subset of
/// the not-yet-used interior vertices with pairwise distance `> radii[n]`.
pub fn build_nets_with_radii(w: &Window, radii: &[usize]) -> NetLevels {
    let g = &w.graph;
    let mut used = vec![false; g.vertex_count()];
    let mut levels = Vec::with_capacity(radii.len());
    for &f in radii {
        let mut blocked = vec![false; g.vertex_count()];
        let mut level = Vec::new();
        for v in w.interior_vertices() {
            if used[v] || blocked[v] {
                continue;
            }
            level.push(v);
            used[v] = true;
            for (u, d) in bfs_distances(g, v, Some(f)).into_iter().enumerate() {
                if d.is_some() {
                    blocked[u] = true;
                }
            }
        }
        levels.push(level);
    }
    let residual = w.interior_vertices().into_iter().filter(|&v| !used[v]).collect();
    NetLevels { levels, residual }
}

/// The least edge at `x` lying in some perfect matching of `g`.
///
/// Incident edges in lexicographic order are exactly the neighbors of `x` in
/// ascending order. The edge to `x`'s partner in a maximum matching is
/// always allowed, so only smaller neighbors need the deletion test.
pub fn least_extendable_edge(g: &Graph, x: usize) -> Result<Edge> {
    g.check_vertex(x)?;
    if g.degree(x) == 0 {
        return Err(Error::Precondition(format!("vertex {x} is isolated")));
    }
    let m = max_matching(g);
    if !m.is_perfect_for(g) {
        return Err(Error::Precondition("graph has no perfect matching".into()));
    }
    let partner = m.mates(g.vertex_count())[x].expect("perfect matching covers x");
    for &y in g.neighbors(x).iter().take_while(|&&y| y < partner) {
        let rest = g.remove_vertices(&[x, y])?;
        if has_perfect_matching(&rest.graph) {
            return Edge::new(x, y);
        }
    }
    Edge::new(x, partner)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelCertificate<S> {
    pub level: usize,
    pub radius: usize,
    pub eps: S,
    /// Edges added at this level, in selection order (original ids).
    pub chosen: Vec<Edge>,
    /// Net vertices already covered by earlier selections.
    pub already_covered: usize,
    /// `Tutte_{ε_n, f(n)}` on `G - M_n` up to the certificate bound.
    pub tutte: TutteReport<S>,
    /// Odd finite components of `G - M_n`.
    pub odd_components: usize,
    pub remaining_perfectly_matchable: bool,
    pub nets_covered: bool,
    pub separated: bool,
}

impl<S> LevelCertificate<S> {
    pub fn passed(&self) -> bool {
        self.tutte.passed()
            && self.odd_components == 0
            && self.remaining_perfectly_matchable
            && self.nets_covered
            && self.separated
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunCertificate<S> {
    pub levels: Vec<LevelCertificate<S>>,
    pub matching: MatchingState,
    pub interior_count: usize,
    pub covered_interior: usize,
    /// Set when a net vertex had no extendable edge; the run stopped there.
    pub aborted: Option<String>,
}

impl<S: Scalar> RunCertificate<S> {
    pub fn passed(&self) -> bool {
        self.aborted.is_none() && self.levels.iter().all(LevelCertificate::passed)
    }

    /// Fraction of interior vertices covered by the final matching.
    pub fn coverage(&self) -> S {
        if self.interior_count == 0 {
            return S::one();
        }
        S::ratio(self.covered_interior, self.interior_count)
    }
}

/// Runs the layered construction on the closed reading of `w.graph`.
///
/// Within a level, net vertices are handled one at a time in ascending
/// order against the current `G - M`, so every choice is re-validated.
/// After each level the remaining window is certified.
pub fn run_layered_matching<S: Scalar>(
    w: &Window,
    schedule: &Schedule<S>,
    nets: &NetLevels,
    cert_max_x: usize,
) -> Result<RunCertificate<S>> {
    let g = &w.graph;
    if nets.levels.len() > schedule.level_count() {
        return invalid("more net levels than schedule levels");
    }
    if !has_perfect_matching(g) {
        return Err(Error::Precondition("graph has no perfect matching".into()));
    }
    let mut matching = MatchingState::new();
    let mut certs = Vec::with_capacity(nets.levels.len());
    let mut aborted = None;
    'levels: for (n, level) in nets.levels.iter().enumerate() {
        let mut chosen = Vec::new();
        let mut already_covered = 0;
        for &x in level {
            if matching.covers(x) {
                already_covered += 1;
                continue;
            }
            let covered: Vec<usize> = matching.covered().iter().copied().collect();
            let rest = g.remove_vertices(&covered)?;
            let local = rest.local_id(x).expect("uncovered vertex survives");
            match least_extendable_edge(&rest.graph, local) {
                Ok(e) => {
                    let e = rest.edge_to_original(e);
                    matching.insert(e)?;
                    chosen.push(e);
                }
                Err(err) => {
                    aborted = Some(format!("level {n}, vertex {x}: {err}"));
                    break 'levels;
                }
            }
        }
        let radius = schedule.radii[n];
        let eps = schedule.eps[n].clone();
        let covered: Vec<usize> = matching.covered().iter().copied().collect();
        let rest = w.remove_vertices(&covered)?;
        let tutte = check_tutte_eps_k(&rest.window, eps.clone(), radius, cert_max_x)?;
        let odd_components = hull_report(&rest.window, &[])?.odd_components.len();
        certs.push(LevelCertificate {
            level: n,
            radius,
            eps,
            chosen,
            already_covered,
            tutte,
            odd_components,
            remaining_perfectly_matchable: has_perfect_matching(&rest.window.graph),
            nets_covered: level.iter().all(|&x| matching.covers(x)),
            separated: NetLevels {
                levels: vec![level.clone()],
                residual: Vec::new(),
            }
            .is_separated(g, &[radius]),
        });
    }
    let interior = w.interior_vertices();
    let covered_interior = interior.iter().filter(|&&v| matching.covers(v)).count();
    Ok(RunCertificate {
        levels: certs,
        matching,
        interior_count: interior.len(),
        covered_interior,
        aborted,
    })
}
