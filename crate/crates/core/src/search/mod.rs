//! Exact clique and coclique search, colouring verification and exact cover.

mod clique;
mod cover;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::Bitset;
use crate::error::{domain, Result};
use crate::graphs::{SchemeGraph, VertexSet};
use clique::{colouring_bound, greedy_clique, is_clique_in, Engine, Mode, View};

pub use cover::{exact_cover, exact_cover_partition, ExactCover};

/// Default per-call search budget.
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(300);

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// A known upper bound on the answer; the search stops as soon as it is met.
    /// Must be a true bound, or the reported optimum is wrong.
    pub upper_bound_hint: Option<usize>,
    pub time_budget: Option<Duration>,
    /// Branch on one vertex per orbit of the symmetric group (scheme graphs only).
    pub use_symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            upper_bound_hint: None,
            time_budget: Some(DEFAULT_TIME_BUDGET),
            use_symmetry: true,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: Duration) -> Self {
        SearchOptions {
            time_budget: Some(budget),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: VertexSet,
    pub proved_optimal: bool,
    /// Best upper bound known when the search ended (equals `size` when proved).
    pub upper_bound: usize,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Serializable summary of a [`CliqueResult`].
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SearchValue {
    pub value: usize,
    pub proved: bool,
    pub upper_bound: usize,
}

impl CliqueResult {
    pub fn summary(&self) -> SearchValue {
        SearchValue {
            value: self.size,
            proved: self.proved_optimal,
            upper_bound: self.upper_bound,
        }
    }
}

fn run_scheme_search(g: &SchemeGraph, complement: bool, opts: &SearchOptions) -> Result<CliqueResult> {
    if g.v() == 0 {
        return domain("empty graph");
    }
    let start = Instant::now();
    let view = View {
        rows: g.rows(),
        complement,
    };
    let all = Bitset::full(g.v());
    let colour_ub = colouring_bound(view, &all);
    let ub = opts.upper_bound_hint.map_or(colour_ub, |h| h.min(colour_ub));
    let masks = opts.use_symmetry.then(|| g.masks());
    let mut engine = Engine::new(view, masks, Mode::Maximum { stop_at: ub }, opts.time_budget);
    engine.seed(greedy_clique(view, &all));
    engine.run(all);
    let mut members = engine.best.clone();
    members.sort_unstable();
    if !is_clique_in(&view, &members) {
        return Err(crate::error::Error::Consistency(
            "search returned a non-clique witness".into(),
        ));
    }
    let witness = VertexSet::from_ranks(g.params(), members.iter().copied())?;
    let proved = !engine.timed_out;
    Ok(CliqueResult {
        size: members.len(),
        witness,
        proved_optimal: proved,
        upper_bound: if proved { members.len() } else { ub },
        nodes_explored: engine.nodes,
        elapsed: start.elapsed(),
    })
}

/// Maximum clique of a scheme graph.
pub fn max_clique(g: &SchemeGraph, opts: &SearchOptions) -> Result<CliqueResult> {
    run_scheme_search(g, false, opts)
}

/// Maximum coclique, searched on the implicit complement.
pub fn max_coclique(g: &SchemeGraph, opts: &SearchOptions) -> Result<CliqueResult> {
    run_scheme_search(g, true, opts)
}

/// Outcome of asking whether a clique of at least `target` vertices exists.
#[derive(Debug, Clone)]
pub struct Decision {
    pub target: usize,
    /// A clique of at least `target` vertices, if one was found.
    pub witness: Option<VertexSet>,
    /// False when the budget ran out before the question was settled.
    pub settled: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl Decision {
    /// `Some(true)` if found, `Some(false)` if proved absent, `None` if unsettled.
    pub fn answer(&self) -> Option<bool> {
        if self.witness.is_some() {
            Some(true)
        } else if self.settled {
            Some(false)
        } else {
            None
        }
    }
}

fn decide_scheme(g: &SchemeGraph, complement: bool, target: usize, opts: &SearchOptions) -> Result<Decision> {
    let start = Instant::now();
    let view = View {
        rows: g.rows(),
        complement,
    };
    let all = Bitset::full(g.v());
    let masks = opts.use_symmetry.then(|| g.masks());
    let mut engine = Engine::new(view, masks, Mode::AtLeast { target }, opts.time_budget);
    if target > 0 {
        engine.seed(greedy_clique(view, &all));
        if engine.best.is_empty() && colouring_bound(view, &all) >= target {
            engine.run(all);
        }
    }
    let witness = if target == 0 || engine.best.len() >= target {
        let mut members = engine.best.clone();
        members.sort_unstable();
        if !is_clique_in(&view, &members) {
            return Err(crate::error::Error::Consistency("search returned a non-clique witness".into()));
        }
        Some(VertexSet::from_ranks(g.params(), members)?)
    } else {
        None
    };
    Ok(Decision {
        target,
        settled: witness.is_some() || !engine.timed_out,
        witness,
        nodes_explored: engine.nodes,
        elapsed: start.elapsed(),
    })
}

/// Looks for a clique of at least `target` vertices; pruning is against the
/// target, so proving absence is much cheaper than a maximum search.
pub fn find_clique_at_least(g: &SchemeGraph, target: usize, opts: &SearchOptions) -> Result<Decision> {
    decide_scheme(g, false, target, opts)
}

pub fn find_coclique_at_least(g: &SchemeGraph, target: usize, opts: &SearchOptions) -> Result<Decision> {
    decide_scheme(g, true, target, opts)
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub sets: Vec<VertexSet>,
    /// True when the search finished without hitting the cap or the budget.
    pub exhaustive: bool,
    pub cap_hit: bool,
    pub timed_out: bool,
}

fn enumerate_scheme(
    g: &SchemeGraph,
    complement: bool,
    size: usize,
    cap: usize,
    budget: Option<Duration>,
) -> Result<Enumeration> {
    let view = View {
        rows: g.rows(),
        complement,
    };
    let mut engine = Engine::new(view, None, Mode::Enumerate { size, cap }, budget);
    engine.run(Bitset::full(g.v()));
    let mut sets = Vec::with_capacity(engine.found.len());
    for c in &engine.found {
        if !is_clique_in(&view, c) {
            return Err(crate::error::Error::Consistency("enumerated a non-clique".into()));
        }
        sets.push(VertexSet::from_ranks(g.params(), c.iter().copied())?);
    }
    sets.sort_by(|a, b| a.ranks().cmp(b.ranks()));
    Ok(Enumeration {
        exhaustive: !engine.cap_hit && !engine.timed_out,
        cap_hit: engine.cap_hit,
        timed_out: engine.timed_out,
        sets,
    })
}

/// All cliques of exactly `size` vertices, up to `cap`.
pub fn enumerate_max_cliques(
    g: &SchemeGraph,
    size: usize,
    cap: usize,
    budget: Option<Duration>,
) -> Result<Enumeration> {
    enumerate_scheme(g, false, size, cap, budget)
}

/// All cocliques of exactly `size` vertices, up to `cap`.
pub fn enumerate_max_cocliques(
    g: &SchemeGraph,
    size: usize,
    cap: usize,
    budget: Option<Duration>,
) -> Result<Enumeration> {
    enumerate_scheme(g, true, size, cap, budget)
}

/// A plain undirected graph with bitset rows, for searches outside the scheme.
#[derive(Debug, Clone)]
pub struct BitGraph {
    rows: Vec<Bitset>,
}

impl BitGraph {
    pub fn new(v: usize) -> Self {
        BitGraph {
            rows: vec![Bitset::new(v); v],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.rows[a].insert(b);
            self.rows[b].insert(a);
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn v(&self) -> usize {
        self.rows.len()
    }

    /// Subgraph induced on `keep`, renumbered in the given order.
    pub fn induced(&self, keep: &[usize]) -> BitGraph {
        let mut g = BitGraph::new(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.adjacent(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn from_scheme(g: &SchemeGraph) -> BitGraph {
        BitGraph {
            rows: g.rows().to_vec(),
        }
    }

    /// Vertices by degeneracy: repeatedly strip a minimum-degree vertex; the
    /// last stripped comes first.
    fn degeneracy_order(&self) -> Vec<usize> {
        let v = self.v();
        let mut deg: Vec<usize> = self.rows.iter().map(|r| r.count()).collect();
        let mut alive = Bitset::full(v);
        let mut stripped = Vec::with_capacity(v);
        for _ in 0..v {
            let u = alive.iter().min_by_key(|&u| (deg[u], u)).unwrap();
            alive.remove(u);
            stripped.push(u);
            for w in self.rows[u].iter() {
                if alive.contains(w) {
                    deg[w] -= 1;
                }
            }
        }
        stripped.reverse();
        stripped
    }

    /// Maximum clique by branch and bound; returns sorted vertices and whether it was proved.
    pub fn max_clique(&self, budget: Option<Duration>) -> (Vec<usize>, bool) {
        if self.v() == 0 {
            return (Vec::new(), true);
        }
        let order = self.degeneracy_order();
        let renumbered = self.induced(&order);
        let view = View {
            rows: &renumbered.rows,
            complement: false,
        };
        let all = Bitset::full(self.v());
        let mut engine = Engine::new(view, None, Mode::Maximum { stop_at: usize::MAX }, budget);
        engine.run(all);
        let mut best: Vec<usize> = engine.best.iter().map(|&i| order[i]).collect();
        best.sort_unstable();
        (best, !engine.timed_out)
    }
}

/// A family of vertex sets meant to partition the vertices.
#[derive(Debug, Clone, Serialize)]
pub struct Partition {
    pub parts: Vec<VertexSet>,
}

/// Checks that `p` partitions the vertices and that each part is a coclique of `g`.
///
/// A family that is not a partition is a domain error naming the first
/// overlapping or uncovered vertex.
pub fn verify_colouring(g: &SchemeGraph, p: &Partition) -> Result<bool> {
    let mut seen = Bitset::new(g.v());
    for (i, part) in p.parts.iter().enumerate() {
        if part.params() != g.params() {
            return domain(format!("part {i} belongs to a different scheme"));
        }
        if let Some(r) = part.ranks().find(|&r| seen.contains(r)) {
            return domain(format!("vertex {r} ({:?}) lies in two parts", g.vertex(r)));
        }
        seen.union_with(part.members());
    }
    if let Some(r) = seen.complement().first() {
        return domain(format!("vertex {r} ({:?}) is in no part", g.vertex(r)));
    }
    Ok(p.parts.iter().all(|part| g.is_coclique(part)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{KSet, SchemeParams};
    use crate::graphs::{build_graph, ClassSet, GraphOptions};

    fn graph(n: usize, k: usize, classes: &[usize]) -> SchemeGraph {
        let p = SchemeParams::new(n, k).unwrap();
        build_graph(&p, &ClassSet::new(k, classes).unwrap(), &GraphOptions::default()).unwrap()
    }

    #[test]
    fn complete_graph_clique() {
        let mut g = BitGraph::new(5);
        for a in 0..5 {
            for b in a + 1..5 {
                g.add_edge(a, b);
            }
        }
        assert_eq!(g.max_clique(None), (vec![0, 1, 2, 3, 4], true));
    }

    #[test]
    fn gamma2_n10() {
        let g = graph(10, 4, &[2]);
        let r = max_clique(&g, &SearchOptions::default()).unwrap();
        assert_eq!(r.size, 7);
        assert!(r.proved_optimal);
        assert!(g.is_clique(&r.witness));
        // complements of the Fano lines pairwise meet in two points
        let fano = [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];
        let blocks: Vec<KSet> = fano
            .iter()
            .map(|l| {
                let rest: Vec<usize> = (1..=7).filter(|x| !l.contains(x)).collect();
                KSet::from_elements(10, &rest).unwrap()
            })
            .collect();
        let x = VertexSet::from_ksets(g.params(), &blocks).unwrap();
        assert!(g.is_clique(&x));
    }

    #[test]
    fn decisions_bracket_the_optimum() {
        let g = graph(9, 4, &[1, 3]);
        let yes = find_clique_at_least(&g, 9, &SearchOptions::default()).unwrap();
        assert_eq!(yes.answer(), Some(true));
        assert!(g.is_clique(yes.witness.as_ref().unwrap()));
        let no = find_clique_at_least(&g, 10, &SearchOptions::default()).unwrap();
        assert_eq!(no.answer(), Some(false));
        assert_eq!(find_coclique_at_least(&g, 14, &SearchOptions::default()).unwrap().answer(), Some(true));
        assert_eq!(find_coclique_at_least(&g, 15, &SearchOptions::default()).unwrap().answer(), Some(false));
        assert_eq!(find_clique_at_least(&g, 0, &SearchOptions::default()).unwrap().answer(), Some(true));
    }

    #[test]
    fn gamma3_n10() {
        let g = graph(10, 4, &[3]);
        let r = max_clique(&g, &SearchOptions::default()).unwrap();
        assert_eq!((r.size, r.proved_optimal), (5, true));
    }

    #[test]
    fn gamma13_n9() {
        let g = graph(9, 4, &[1, 3]);
        let w = max_clique(&g, &SearchOptions::default()).unwrap();
        let a = max_coclique(&g, &SearchOptions::default()).unwrap();
        assert_eq!((w.size, a.size), (9, 14));
        assert!(g.is_coclique(&a.witness));
    }

    #[test]
    fn symmetry_agrees_with_plain_search() {
        for (n, k, cls) in [
            (9, 4, vec![2]),
            (8, 3, vec![1]),
            (10, 3, vec![2, 3]),
            (9, 3, vec![3]),
            (8, 4, vec![1, 4]),
            (9, 4, vec![1, 3]),
        ] {
            let g = graph(n, k, &cls);
            for complement in [false, true] {
                let with = SearchOptions::default();
                let without = SearchOptions {
                    use_symmetry: false,
                    ..Default::default()
                };
                let a = run_scheme_search(&g, complement, &with).unwrap();
                let b = run_scheme_search(&g, complement, &without).unwrap();
                assert_eq!(a.size, b.size, "n={n} k={k} {cls:?} complement={complement}");
            }
        }
    }

    #[test]
    fn delta3_coclique_is_ekr() {
        let g = graph(10, 4, &[2, 3, 4]);
        let r = max_coclique(&g, &SearchOptions::default()).unwrap();
        assert_eq!(r.size, 7);
        let e = enumerate_max_cocliques(&g, 7, 1000, None).unwrap();
        assert!(e.exhaustive);
        assert_eq!(e.sets.len(), 120);
        for s in &e.sets {
            let common = s.ksets().iter().fold(!0u64, |acc, b| acc & b.mask());
            assert_eq!(common.count_ones(), 3);
        }
    }

    #[test]
    fn enumerate_on_complete_graph_singletons() {
        let g = graph(6, 2, &[1, 2]);
        let e = enumerate_max_cocliques(&g, 1, 100, None).unwrap();
        assert_eq!(e.sets.len(), 15);
    }

    #[test]
    fn enumeration_cap_flags() {
        let g = graph(10, 4, &[2, 3, 4]);
        let e = enumerate_max_cocliques(&g, 7, 5, None).unwrap();
        assert_eq!(e.sets.len(), 5);
        assert!(e.cap_hit && !e.exhaustive);
    }

    #[test]
    fn timeout_is_flagged() {
        let g = graph(16, 4, &[2, 4]);
        let opts = SearchOptions {
            time_budget: Some(Duration::from_millis(1)),
            use_symmetry: false,
            ..Default::default()
        };
        let r = max_clique(&g, &opts).unwrap();
        assert!(!r.proved_optimal);
        assert!(r.upper_bound >= r.size);
        assert!(g.is_clique(&r.witness));
    }

    #[test]
    fn colouring_must_be_partition() {
        let g = graph(6, 2, &[1]);
        let p = g.params();
        let half = VertexSet::from_ranks(p, 0..7).unwrap();
        let err = verify_colouring(&g, &Partition { parts: vec![half.clone()] });
        assert!(err.is_err());
        let rest = VertexSet::from_ranks(p, 6..15).unwrap();
        assert!(verify_colouring(&g, &Partition { parts: vec![half, rest] }).is_err());
        let all = VertexSet::all(p);
        // one part holding adjacent vertices
        assert!(!verify_colouring(&g, &Partition { parts: vec![all] }).unwrap());
    }
}
