//! Exact cover by Algorithm X on bitsets, branching on the item with the
//! fewest live options.

use std::time::{Duration, Instant};

use crate::bitset::Bitset;
use crate::error::{domain, Result};
use crate::graphs::{SchemeGraph, VertexSet};

use super::Partition;

#[derive(Debug, Clone)]
pub struct ExactCover {
    /// Indices of the chosen options, ascending.
    pub solution: Option<Vec<usize>>,
    /// False when the budget ran out before the search finished.
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a> {
    options: &'a [Bitset],
    by_item: &'a [Vec<usize>],
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
    chosen: Vec<usize>,
}

impl<'a> Search<'a> {
    fn solve(&mut self, uncovered: &Bitset, live: &Bitset) -> bool {
        self.nodes += 1;
        if self.nodes & 255 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }
        // most constrained item
        let mut pick = None;
        for item in uncovered.iter() {
            let c = self.by_item[item].iter().filter(|&&o| live.contains(o)).count();
            if pick.is_none_or(|(_, best)| c < best) {
                pick = Some((item, c));
                if c <= 1 {
                    break;
                }
            }
        }
        let Some((item, count)) = pick else {
            return true;
        };
        if count == 0 {
            return false;
        }
        let by_item = self.by_item;
        let mut found = false;
        for &o in by_item[item].iter().filter(|&&o| live.contains(o)) {
            let mut next_live = live.clone();
            let mut next_uncovered = uncovered.clone();
            next_uncovered.difference_with(&self.options[o]);
            for covered in self.options[o].iter() {
                for &other in &by_item[covered] {
                    next_live.remove(other);
                }
            }
            self.chosen.push(o);
            if self.solve(&next_uncovered, &next_live) {
                found = true;
                break;
            }
            self.chosen.pop();
            if self.timed_out {
                break;
            }
        }
        found
    }
}

/// Finds options (subsets of `0..universe`) partitioning the universe.
pub fn exact_cover(universe: usize, options: &[Bitset], budget: Option<Duration>) -> ExactCover {
    let mut by_item = vec![Vec::new(); universe];
    for (o, opt) in options.iter().enumerate() {
        for item in opt.iter() {
            by_item[item].push(o);
        }
    }
    let mut s = Search {
        options,
        by_item: &by_item,
        deadline: budget.map(|b| Instant::now() + b),
        nodes: 0,
        timed_out: false,
        chosen: Vec::new(),
    };
    let found = s.solve(&Bitset::full(universe), &Bitset::full(options.len()));
    let mut chosen = s.chosen;
    chosen.sort_unstable();
    ExactCover {
        solution: found.then_some(chosen),
        complete: found || !s.timed_out,
        nodes: s.nodes,
    }
}

/// Picks candidate cocliques of size `part_size` that partition the vertices of `g`.
///
/// `Ok(None)` means no sub-collection of the candidates is a partition.
pub fn exact_cover_partition(
    g: &SchemeGraph,
    part_size: usize,
    candidates: &[VertexSet],
) -> Result<Option<Partition>> {
    if part_size == 0 || g.v() % part_size != 0 {
        return Ok(None);
    }
    for (i, c) in candidates.iter().enumerate() {
        if c.params() != g.params() {
            return domain(format!("candidate {i} belongs to a different scheme"));
        }
        if c.len() != part_size {
            return domain(format!("candidate {i} has {} vertices, expected {part_size}", c.len()));
        }
        if let Some((a, b)) = g.first_edge_within(c) {
            return domain(format!(
                "candidate {i} is not a coclique: {:?} and {:?} are adjacent",
                g.vertex(a),
                g.vertex(b)
            ));
        }
    }
    let options: Vec<Bitset> = candidates.iter().map(|c| c.members().clone()).collect();
    let cover = exact_cover(g.v(), &options, None);
    Ok(cover.solution.map(|idx| Partition {
        parts: idx.into_iter().map(|i| candidates[i].clone()).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knuth_example() {
        // the six-option example from the dancing links paper; unique cover
        let opts: Vec<Bitset> = [
            vec![2, 4, 5],
            vec![0, 3, 6],
            vec![1, 2, 5],
            vec![0, 3],
            vec![1, 6],
            vec![3, 4, 6],
        ]
        .into_iter()
        .map(|v| Bitset::from_indices(7, v))
        .collect();
        let r = exact_cover(7, &opts, None);
        assert_eq!(r.solution, Some(vec![0, 3, 4]));
        assert!(r.complete);
    }

    #[test]
    fn no_cover() {
        let opts = vec![Bitset::from_indices(3, [0, 1]), Bitset::from_indices(3, [1, 2])];
        let r = exact_cover(3, &opts, None);
        assert!(r.solution.is_none() && r.complete);
    }
}
