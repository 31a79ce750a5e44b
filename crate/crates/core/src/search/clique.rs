//! Branch-and-bound maximum clique over bitset rows (greedy colouring bound).
//!
//! For scheme graphs the symmetric group acts on the vertices preserving
//! every class. At a node with chosen sets `K`, the permutations fixing each
//! member of `K` setwise have as orbits on k-sets exactly the vectors of
//! intersection sizes with the atoms cut out by `K`. The candidate set is
//! always a union of such orbits, so it suffices to branch on one vertex per
//! orbit and then discard the whole orbit.

use std::time::{Duration, Instant};

use crate::bitset::Bitset;

/// Adjacency as seen by the engine: raw rows, or their complement.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub rows: &'a [Bitset],
    pub complement: bool,
}

impl View<'_> {
    /// `out = p ∩ N(u)`.
    #[inline]
    fn restrict(&self, p: &Bitset, u: usize) -> Bitset {
        let mut out = p.clone();
        if self.complement {
            out.difference_with(&self.rows[u]);
            out.remove(u);
        } else {
            out.intersect_with(&self.rows[u]);
        }
        out
    }

    /// `q ∖ N(u)`, with `u` already removed from `q`.
    #[inline]
    fn drop_neighbours(&self, q: &mut Bitset, u: usize) {
        if self.complement {
            q.intersect_with(&self.rows[u]);
        } else {
            q.difference_with(&self.rows[u]);
        }
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.rows[a].contains(b) != self.complement
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Mode {
    /// Maximum clique, stopping early once `stop_at` is reached.
    Maximum { stop_at: usize },
    /// Every clique of exactly this size, up to `cap` of them.
    Enumerate { size: usize, cap: usize },
    /// Any one clique of at least this size.
    AtLeast { target: usize },
}

struct Orbits {
    /// candidates in ascending vertex order with their orbit key
    by_vertex: Vec<(usize, u64)>,
    by_key: Vec<(u64, usize)>,
}

impl Orbits {
    fn remove_orbit_of(&self, u: usize, p: &mut Bitset) {
        let i = self
            .by_vertex
            .binary_search_by_key(&u, |&(w, _)| w)
            .expect("branch vertex is a candidate");
        let key = self.by_vertex[i].1;
        let lo = self.by_key.partition_point(|&(kk, _)| kk < key);
        for &(_, w) in self.by_key[lo..].iter().take_while(|&&(kk, _)| kk == key) {
            p.remove(w);
        }
    }
}

pub(crate) struct Engine<'a> {
    view: View<'a>,
    /// k-set masks per vertex when orbit reduction is allowed
    masks: Option<&'a [u64]>,
    mode: Mode,
    deadline: Option<Instant>,
    pub nodes: u64,
    pub timed_out: bool,
    pub cap_hit: bool,
    pub best: Vec<usize>,
    pub found: Vec<Vec<usize>>,
    stack: Vec<usize>,
}

impl<'a> Engine<'a> {
    pub fn new(view: View<'a>, masks: Option<&'a [u64]>, mode: Mode, budget: Option<Duration>) -> Self {
        Engine {
            view,
            masks,
            mode,
            deadline: budget.map(|b| Instant::now() + b),
            nodes: 0,
            timed_out: false,
            cap_hit: false,
            best: Vec::new(),
            found: Vec::new(),
            stack: Vec::new(),
        }
    }

    pub fn seed(&mut self, clique: Vec<usize>) {
        let wanted = match self.mode {
            Mode::AtLeast { target } => clique.len() >= target,
            _ => true,
        };
        if wanted && clique.len() > self.best.len() {
            self.best = clique;
        }
    }

    pub fn run(&mut self, candidates: Bitset) {
        let sym = self.masks.is_some();
        self.expand(candidates, sym);
    }

    fn done(&self) -> bool {
        if self.timed_out || self.cap_hit {
            return true;
        }
        match self.mode {
            Mode::Maximum { stop_at } => self.best.len() >= stop_at,
            Mode::Enumerate { .. } => false,
            Mode::AtLeast { target } => self.best.len() >= target,
        }
    }

    /// Smallest colour a vertex needs to be worth branching on.
    fn threshold(&self) -> usize {
        self.need().saturating_sub(self.stack.len()).max(1)
    }

    /// Size a clique must reach to matter.
    fn need(&self) -> usize {
        match self.mode {
            Mode::Maximum { .. } => self.best.len() + 1,
            Mode::Enumerate { size, .. } => size,
            Mode::AtLeast { target } => target,
        }
    }

    /// Greedy sequential colouring; returns vertices with colour >= `min_colour`
    /// in colour order, with their colours.
    fn colour_sort(&self, p: &Bitset, min_colour: usize) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(u) = q.first() {
                q.remove(u);
                uncoloured.remove(u);
                self.view.drop_neighbours(&mut q, u);
                if colour >= min_colour {
                    order.push(u);
                    colours.push(colour);
                }
            }
        }
        (order, colours)
    }

    fn orbit_key(&self, point_atom: &[u8; 64], mask: u64) -> u64 {
        let mut ids = [0u8; 16];
        let mut len = 0;
        let mut m = mask;
        while m != 0 {
            ids[len] = point_atom[m.trailing_zeros() as usize];
            len += 1;
            m &= m - 1;
        }
        ids[..len].sort_unstable();
        ids[..len].iter().fold(0u64, |acc, &a| acc << 6 | a as u64)
    }

    /// Orbits of the setwise stabiliser of the chosen sets, restricted to `p`.
    /// `None` when every orbit is a single vertex.
    fn orbits(&self, p: &Bitset) -> Option<Orbits> {
        let masks = self.masks?;
        let mut point_atom = [0u8; 64];
        let mut atoms = 1usize;
        for &u in &self.stack {
            let m = masks[u];
            // split every atom by membership in m
            let mut remap: Vec<Option<u8>> = vec![None; atoms];
            let mut next = atoms;
            for (pt, atom) in point_atom.iter_mut().enumerate() {
                if m >> pt & 1 == 1 {
                    let a = *atom as usize;
                    *atom = *remap[a].get_or_insert_with(|| {
                        next += 1;
                        (next - 1) as u8
                    });
                }
            }
            atoms = next;
            if atoms > 60 {
                return None;
            }
        }
        let by_vertex: Vec<(usize, u64)> = p
            .iter()
            .map(|u| (u, self.orbit_key(&point_atom, masks[u])))
            .collect();
        let mut by_key: Vec<(u64, usize)> = by_vertex.iter().map(|&(u, key)| (key, u)).collect();
        by_key.sort_unstable();
        let distinct = 1 + by_key.windows(2).filter(|w| w[0].0 != w[1].0).count();
        (distinct < by_key.len()).then_some(Orbits { by_vertex, by_key })
    }

    fn tick(&mut self) {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
    }

    fn record(&mut self) {
        match self.mode {
            Mode::Maximum { .. } => {
                if self.stack.len() > self.best.len() {
                    self.best = self.stack.clone();
                }
            }
            Mode::AtLeast { target } => {
                if self.stack.len() >= target && self.best.len() < target {
                    self.best = self.stack.clone();
                }
            }
            Mode::Enumerate { size, cap } => {
                if self.stack.len() == size {
                    if self.found.len() >= cap {
                        self.cap_hit = true;
                    } else {
                        let mut c = self.stack.clone();
                        c.sort_unstable();
                        self.found.push(c);
                    }
                }
            }
        }
    }

    fn expand(&mut self, mut p: Bitset, symmetric: bool) {
        self.tick();
        if self.done() {
            return;
        }
        let orbits = if symmetric { self.orbits(&p) } else { None };
        let child_symmetric = orbits.is_some();
        let (order, colours) = self.colour_sort(&p, self.threshold());
        for idx in (0..order.len()).rev() {
            let u = order[idx];
            if !p.contains(u) {
                continue;
            }
            if self.stack.len() + colours[idx] < self.need() {
                return;
            }
            self.stack.push(u);
            let next = self.view.restrict(&p, u);
            let enumerate_full = match self.mode {
                Mode::Enumerate { size, .. } => self.stack.len() >= size,
                Mode::AtLeast { target } => self.stack.len() >= target,
                Mode::Maximum { .. } => false,
            };
            if next.is_empty() || enumerate_full {
                self.record();
            } else {
                self.expand(next, child_symmetric);
            }
            self.stack.pop();
            match &orbits {
                Some(o) => o.remove_orbit_of(u, &mut p),
                None => p.remove(u),
            }
            if self.done() {
                return;
            }
        }
    }
}

/// Verifies pairwise adjacency on the raw view.
pub(crate) fn is_clique_in(view: &View<'_>, members: &[usize]) -> bool {
    members
        .iter()
        .enumerate()
        .all(|(i, &a)| members[i + 1..].iter().all(|&b| view.adjacent(a, b)))
}

/// Upper bound from one greedy colouring of the candidate set.
pub(crate) fn colouring_bound(view: View<'_>, p: &Bitset) -> usize {
    let e = Engine::new(view, None, Mode::Maximum { stop_at: usize::MAX }, None);
    let (_, colours) = e.colour_sort(p, 1);
    colours.last().copied().unwrap_or(0)
}

/// Greedy clique: repeatedly take the candidate with most candidate neighbours.
pub(crate) fn greedy_clique(view: View<'_>, p: &Bitset) -> Vec<usize> {
    let mut p = p.clone();
    let mut clique = Vec::new();
    while !p.is_empty() {
        let u = p
            .iter()
            .max_by_key(|&u| (view.restrict(&p, u).count(), std::cmp::Reverse(u)))
            .unwrap();
        clique.push(u);
        p = view.restrict(&p, u);
    }
    clique
}
