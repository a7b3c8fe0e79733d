//! Example graphs: Cayley-graph balls, the grandparent graph, Schreier
//! graphs of finite actions, and a small fixture corpus.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::{CollapseCounts, Graph, Window};

/// Groups with a decidable normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Free group on `rank` generators.
    Free { rank: usize },
    /// Free product of cyclic groups `Z/q` for each order `q`.
    FreeProductOfCyclic { orders: Vec<u32> },
    /// `Z^dimension`, the amenable control case.
    AbelianGrid { dimension: usize },
}

/// One element of the symmetric generating set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Generator {
    factor: usize,
    step: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Element {
    /// Reduced syllables `(factor, exponent)`; consecutive factors differ.
    Word(Vec<(usize, i64)>),
    Vector(Vec<i64>),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Free { rank } if *rank == 0 => invalid("free rank must be at least 1"),
            GroupSpec::FreeProductOfCyclic { orders } if orders.is_empty() => {
                invalid("free product needs at least one factor")
            }
            GroupSpec::FreeProductOfCyclic { orders } if orders.iter().any(|&q| q < 2) => {
                invalid("cyclic orders must be at least 2")
            }
            GroupSpec::AbelianGrid { dimension } if *dimension == 0 => {
                invalid("grid dimension must be at least 1")
            }
            _ => Ok(()),
        }
    }

    /// `None` for an infinite cyclic factor.
    fn factor_order(&self, factor: usize) -> Option<u32> {
        match self {
            GroupSpec::FreeProductOfCyclic { orders } => Some(orders[factor]),
            _ => None,
        }
    }

    fn generating_set(&self) -> Vec<Generator> {
        let factors = match self {
            GroupSpec::Free { rank } => *rank,
            GroupSpec::FreeProductOfCyclic { orders } => orders.len(),
            GroupSpec::AbelianGrid { dimension } => *dimension,
        };
        (0..factors)
            .flat_map(|factor| {
                let involution = self.factor_order(factor) == Some(2);
                let inverse = (!involution).then_some(Generator { factor, step: -1 });
                std::iter::once(Generator { factor, step: 1 }).chain(inverse)
            })
            .collect()
    }

    /// Human-readable generator labels: `a`, `A` (= a^-1), `b`, `B`, ...
    pub fn generator_labels(&self) -> Vec<String> {
        self.generating_set()
            .iter()
            .map(|g| {
                let c = (b'a' + (g.factor % 26) as u8) as char;
                let base = if g.factor < 26 {
                    c.to_string()
                } else {
                    format!("{c}{}", g.factor / 26)
                };
                if g.step > 0 {
                    base
                } else {
                    base.to_uppercase()
                }
            })
            .collect()
    }

    /// Size of the symmetric generating set, the Cayley-graph degree.
    pub fn degree(&self) -> usize {
        self.generating_set().len()
    }

    fn identity(&self) -> Element {
        match self {
            GroupSpec::AbelianGrid { dimension } => Element::Vector(vec![0; *dimension]),
            _ => Element::Word(Vec::new()),
        }
    }

    /// Right multiplication by a generator.
    fn multiply(&self, x: &Element, g: Generator) -> Element {
        match x {
            Element::Vector(v) => {
                let mut v = v.clone();
                v[g.factor] += g.step;
                Element::Vector(v)
            }
            Element::Word(w) => {
                let order = self.factor_order(g.factor).map(i64::from);
                let normalize = |e: i64| order.map_or(e, |q| e.rem_euclid(q));
                let mut w = w.clone();
                match w.last_mut() {
                    Some((f, e)) if *f == g.factor => {
                        *e = normalize(*e + g.step);
                        if *e == 0 {
                            w.pop();
                        }
                    }
                    _ => w.push((g.factor, normalize(g.step))),
                }
                Element::Word(w)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free { rank } => write!(f, "free({rank})"),
            GroupSpec::FreeProductOfCyclic { orders } => {
                let parts: Vec<String> = orders.iter().map(|q| format!("Z{q}")).collect();
                write!(f, "{}", parts.join("*"))
            }
            GroupSpec::AbelianGrid { dimension } => write!(f, "Z^{dimension}"),
        }
    }
}

/// The ball of radius `radius` around the identity in the Cayley graph.
///
/// Vertex ids follow BFS discovery from the identity (id 0), scanning the
/// generators in label order. Words of length `radius` form the frontier and
/// carry one stub per neighbor at length `radius + 1`.
pub fn cayley_ball(spec: &GroupSpec, radius: usize) -> Result<Window> {
    spec.validate()?;
    let gens = spec.generating_set();
    let mut index: HashMap<Element, usize> = HashMap::new();
    let mut elements = vec![spec.identity()];
    let mut dist = vec![0usize];
    index.insert(spec.identity(), 0);
    let mut head = 0;
    while head < elements.len() {
        if dist[head] < radius {
            for &g in &gens {
                let y = spec.multiply(&elements[head], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                    dist.push(dist[head] + 1);
                }
            }
        }
        head += 1;
    }
    let n = elements.len();
    let mut pairs = Vec::new();
    let mut stubs = vec![0usize; n];
    for (v, x) in elements.iter().enumerate() {
        for &g in &gens {
            match index.get(&spec.multiply(x, g)) {
                Some(&w) => pairs.push((v, w)),
                None => stubs[v] += 1,
            }
        }
    }
    let (graph, _) = Graph::collapse_edges(n, pairs)?;
    let interior = dist.iter().map(|&d| d < radius).collect();
    Window::new(graph, interior, stubs)
}

/// Truncation of the grandparent graph built on the binary tree with a
/// distinguished end. See [`grandparent_window_with_branching`].
pub fn grandparent_window(depth: usize) -> Result<Window> {
    grandparent_window_with_branching(depth, 2)
}

/// Truncation of the grandparent graph over the `(branching + 1)`-regular
/// tree oriented toward a fixed end: every vertex has one parent and
/// `branching` children, and is additionally joined to its grandparent.
///
/// The window is the complete `branching`-ary tree on levels `0..=depth`
/// (ids in level order), with tree and grandparent edges. Each vertex has
/// full degree `branching^2 + branching + 2`; missing neighbors (above the
/// top level or below the bottom one) become stubs, and the interior is the
/// set of vertices with no stubs.
pub fn grandparent_window_with_branching(depth: usize, branching: usize) -> Result<Window> {
    if depth < 2 {
        return invalid("grandparent window needs depth >= 2");
    }
    if branching < 2 {
        return invalid("grandparent window needs branching >= 2");
    }
    let mut level_start = vec![0usize];
    let mut size = 1usize;
    for _ in 0..depth {
        let prev = *level_start.last().unwrap();
        level_start.push(prev + size);
        size = size
            .checked_mul(branching)
            .ok_or_else(|| Error::InvalidInput("grandparent window too large".into()))?;
    }
    let n = *level_start.last().unwrap() + size;
    let parent = |v: usize| -> Option<usize> { (v > 0).then(|| (v - 1) / branching) };
    let mut pairs = Vec::new();
    for v in 1..n {
        let p = parent(v).unwrap();
        pairs.push((p, v));
        if let Some(gp) = parent(p) {
            pairs.push((gp, v));
        }
    }
    let graph = Graph::from_edges(n, pairs)?;
    let full = branching * branching + branching + 2;
    let stubs: Vec<usize> = graph.vertices().map(|v| full - graph.degree(v)).collect();
    let interior = stubs.iter().map(|&k| k == 0).collect();
    Window::new(graph, interior, stubs)
}

/// A finite permutation action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub point_count: usize,
    /// Image lists: `generators[j][i]` is the image of point `i`.
    pub generators: Vec<Vec<usize>>,
}

impl ActionSpec {
    pub fn validate(&self) -> Result<()> {
        if self.point_count == 0 {
            return invalid("an action needs at least one point");
        }
        for (j, perm) in self.generators.iter().enumerate() {
            if perm.len() != self.point_count {
                return invalid(format!("generator {j} has {} images", perm.len()));
            }
            let mut hit = vec![false; self.point_count];
            for &p in perm {
                if p >= self.point_count || std::mem::replace(&mut hit[p], true) {
                    return invalid(format!("generator {j} is not a bijection"));
                }
            }
        }
        Ok(())
    }
}

/// Parses cycle notation such as `"0 1,2 3"` (the product (0 1)(2 3)) into
/// an image list on `point_count` points. Cycles are comma separated; points
/// not mentioned are fixed.
pub fn permutation_from_cycles(point_count: usize, text: &str) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..point_count).collect();
    let mut moved = vec![false; point_count];
    for cycle in text.split(',') {
        let pts = cycle
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad point {t:?} in cycle")))
            })
            .collect::<Result<Vec<_>>>()?;
        for &p in &pts {
            if p >= point_count {
                return invalid(format!("point {p} out of range"));
            }
            if std::mem::replace(&mut moved[p], true) {
                return invalid(format!("point {p} appears in two cycles"));
            }
        }
        for (i, &p) in pts.iter().enumerate() {
            perm[p] = pts[(i + 1) % pts.len()];
        }
    }
    Ok(perm)
}

/// A Schreier graph with the number of loops and repeated edges dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGraph {
    pub graph: Graph,
    pub collapsed: CollapseCounts,
}

/// Edges `{i, σ(i)}` for every generator `σ` and point `i`.
pub fn schreier_graph(spec: &ActionSpec) -> Result<SchreierGraph> {
    spec.validate()?;
    let pairs = spec
        .generators
        .iter()
        .flat_map(|perm| perm.iter().enumerate().map(|(i, &j)| (i, j)));
    let (graph, collapsed) = Graph::collapse_edges(spec.point_count, pairs)?;
    Ok(SchreierGraph { graph, collapsed })
}

/// Named test graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Center 0 with `n` leaves.
    Star(usize),
    Petersen,
    RandomRegular { n: usize, d: usize, seed: u64 },
}

impl FromStr for Fixture {
    type Err = Error;

    /// `path:5`, `cycle:4`, `complete:5`, `star:3`, `petersen`,
    /// `random-regular:10:3:1` (n, d, seed).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u64> {
            parts
                .get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::InvalidInput(format!("bad fixture parameters in {s:?}")))
        };
        let expect_len = |k: usize| -> Result<()> {
            if parts.len() == k {
                Ok(())
            } else {
                invalid(format!("fixture {s:?} takes {} parameter(s)", k - 1))
            }
        };
        match parts[0] {
            "path" => expect_len(2).and(Ok(Fixture::Path(num(1)? as usize))),
            "cycle" => expect_len(2).and(Ok(Fixture::Cycle(num(1)? as usize))),
            "complete" => expect_len(2).and(Ok(Fixture::Complete(num(1)? as usize))),
            "star" => expect_len(2).and(Ok(Fixture::Star(num(1)? as usize))),
            "petersen" => expect_len(1).and(Ok(Fixture::Petersen)),
            "random-regular" => {
                expect_len(4)?;
                Ok(Fixture::RandomRegular {
                    n: num(1)? as usize,
                    d: num(2)? as usize,
                    seed: num(3)?,
                })
            }
            other => invalid(format!("unknown fixture {other:?}")),
        }
    }
}

pub fn fixture(f: &Fixture) -> Result<Graph> {
    match *f {
        Fixture::Path(n) => {
            if n == 0 {
                return invalid("path needs at least one vertex");
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Fixture::Cycle(n) => {
            if n < 3 {
                return invalid("cycle needs at least three vertices");
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Fixture::Complete(n) => {
            Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
        }
        Fixture::Star(n) => Graph::from_edges(n + 1, (1..=n).map(|i| (0, i))),
        Fixture::Petersen => Graph::from_edges(
            10,
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]),
        ),
        Fixture::RandomRegular { n, d, seed } => random_regular(n, d, seed),
    }
}

const PAIRING_ATTEMPTS: usize = 100_000;

/// Pairing model with rejection of loops and multi-edges.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return invalid("random regular graph needs n*d even");
    }
    if d >= n && !(n == 0 || d == 0) {
        return invalid("random regular graph needs d < n");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..PAIRING_ATTEMPTS {
        points.shuffle(&mut rng);
        let pairs = points.chunks(2).map(|c| (c[0], c[1]));
        let (g, counts) = Graph::collapse_edges(n, pairs)?;
        if counts == CollapseCounts::default() {
            return Ok(g);
        }
    }
    invalid("pairing model did not produce a simple graph")
}

/// Closes a window into a finite graph of even order.
///
/// External stubs are paired up into new edges (a seeded random pairing,
/// retried until the result is simple). If the window has odd order, one
/// extra vertex is added first and takes over stubs from distinct frontier
/// vertices: `d` of them for a `d`-regular window, so the closure stays
/// regular, otherwise one or two depending on the stub parity.
pub fn close_window(w: &Window, seed: u64) -> Result<Graph> {
    let n = w.graph.vertex_count();
    let total: usize = w.external_stubs().iter().sum();
    let odd_order = n % 2 == 1;
    let extra = if odd_order {
        match w.regular_degree() {
            Some(d) if d > 0 && d <= total && (total - d).is_multiple_of(2) => d,
            _ => 2 - total % 2,
        }
    } else {
        0
    };
    if total < extra || (total - extra) % 2 == 1 {
        return invalid("window stubs cannot be closed into an even-order simple graph");
    }
    let mut stubs: Vec<usize> = w
        .graph
        .vertices()
        .flat_map(|v| std::iter::repeat_n(v, w.stubs(v)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = n + usize::from(odd_order);
    for _ in 0..PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut pairs: Vec<(usize, usize)> = w.graph.edges().map(|e| (e.u(), e.v())).collect();
        let mut rest = Vec::with_capacity(stubs.len());
        let mut taken = Vec::new();
        for &v in &stubs {
            if taken.len() < extra && !taken.contains(&v) {
                taken.push(v);
                pairs.push((v, n));
            } else {
                rest.push(v);
            }
        }
        if taken.len() < extra {
            return invalid("not enough distinct frontier vertices for the extra vertex");
        }
        pairs.extend(rest.chunks(2).map(|c| (c[0], c[1])));
        let (g, counts) = Graph::collapse_edges(order, pairs)?;
        if counts == CollapseCounts::default() {
            return Ok(g);
        }
    }
    invalid("could not pair window stubs into a simple graph")
}
