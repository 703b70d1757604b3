//! Maximum {K2,K3}-packings.
//!
//! The search is exact: a memoized branch over the smallest uncovered
//! vertex of each connected component (match it with a neighbor, place it in
//! a triangle, or leave it uncovered), cut off as soon as a branch reaches
//! the trivial upper bound of "every non-isolated vertex covered". Sparse
//! friendship graphs of about 40 vertices solve in well under a second;
//! dense graphs are covered quickly by the upper-bound cutoff.

use super::SimpleGraph;
use serde::Serialize;
use std::collections::HashMap;

/// A vertex-disjoint collection of edges and triangles.
///
/// Parts are sorted internally and ordered by their smallest vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Packing {
    pub parts: Vec<Vec<usize>>,
}

impl Packing {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.sort();
        Packing { parts }
    }

    /// Number of packed vertices.
    pub fn covered(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn covered_set(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.parts.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    pub fn is_factor_of(&self, g: &SimpleGraph) -> bool {
        self.covered() == g.vertex_count()
    }

    /// Disjoint parts of size 2 or 3, each a clique of `g`.
    pub fn is_valid_in(&self, g: &SimpleGraph) -> bool {
        let mut used = vec![false; g.vertex_count()];
        for part in &self.parts {
            if !(2..=3).contains(&part.len()) || !g.is_clique(part) {
                return false;
            }
            for &v in part {
                if v >= used.len() || used[v] {
                    return false;
                }
                used[v] = true;
            }
        }
        true
    }
}

/// Bitset over the vertices of one component.
type Mask = Vec<u64>;

fn bit(mask: &Mask, v: usize) -> bool {
    mask[v / 64] >> (v % 64) & 1 == 1
}

fn clear(mask: &mut Mask, v: usize) {
    mask[v / 64] &= !(1u64 << (v % 64));
}

fn lowest(mask: &Mask) -> Option<usize> {
    mask.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[derive(Clone, Copy, Debug)]
enum Choice {
    Skip,
    Edge(usize),
    Triangle(usize, usize),
}

struct ComponentSearch<'a> {
    g: &'a SimpleGraph,
    memo: HashMap<Mask, (usize, Choice)>,
}

impl ComponentSearch<'_> {
    fn upper_bound(&self, mask: &Mask) -> usize {
        (0..self.g.vertex_count())
            .filter(|&v| bit(mask, v) && self.g.neighbors(v).iter().any(|&u| bit(mask, u)))
            .count()
    }

    fn solve(&mut self, mask: &Mask) -> usize {
        let Some(v) = lowest(mask) else {
            return 0;
        };
        if let Some(&(best, _)) = self.memo.get(mask) {
            return best;
        }
        let bound = self.upper_bound(mask);
        let mut rest = mask.clone();
        clear(&mut rest, v);
        let live: Vec<usize> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| bit(mask, u))
            .collect();

        let mut best = (0usize, Choice::Skip);
        let consider = |value: usize, choice: Choice, best: &mut (usize, Choice)| -> bool {
            if value > best.0 {
                *best = (value, choice);
            }
            best.0 == bound
        };

        'options: for (a, &u) in live.iter().enumerate() {
            let mut without_u = rest.clone();
            clear(&mut without_u, u);
            let value = 2 + self.solve(&without_u);
            if consider(value, Choice::Edge(u), &mut best) {
                break 'options;
            }
            for &w in &live[a + 1..] {
                if !self.g.has_edge(u, w) {
                    continue;
                }
                let mut without_uw = without_u.clone();
                clear(&mut without_uw, w);
                let value = 3 + self.solve(&without_uw);
                if consider(value, Choice::Triangle(u, w), &mut best) {
                    break 'options;
                }
            }
        }
        if best.0 < bound {
            let value = self.solve(&rest);
            if value > best.0 {
                best = (value, Choice::Skip);
            }
        }
        self.memo.insert(mask.clone(), best);
        best.0
    }

    fn reconstruct(&mut self, mut mask: Mask) -> Vec<Vec<usize>> {
        let mut parts = Vec::new();
        while let Some(v) = lowest(&mask) {
            self.solve(&mask);
            let (_, choice) = self.memo[&mask];
            clear(&mut mask, v);
            match choice {
                Choice::Skip => {}
                Choice::Edge(u) => {
                    clear(&mut mask, u);
                    parts.push(vec![v, u]);
                }
                Choice::Triangle(u, w) => {
                    clear(&mut mask, u);
                    clear(&mut mask, w);
                    parts.push(vec![v, u, w]);
                }
            }
        }
        parts
    }
}

/// A {K2,K3}-packing covering the maximum number of vertices.
///
/// Among maximum packings the lexicographically smallest list of parts is
/// returned (parts sorted, ordered by smallest vertex).
pub fn max_k2k3_packing(g: &SimpleGraph) -> Packing {
    let mut parts = Vec::new();
    for comp in g.connected_components() {
        if comp.len() < 2 {
            continue;
        }
        let local = g.induced(&comp);
        let mut search = ComponentSearch {
            g: &local,
            memo: HashMap::new(),
        };
        let mut full: Mask = vec![0; comp.len().div_ceil(64)];
        for v in 0..comp.len() {
            full[v / 64] |= 1u64 << (v % 64);
        }
        for part in search.reconstruct(full) {
            parts.push(part.into_iter().map(|v| comp[v]).collect());
        }
    }
    Packing::new(parts)
}

/// Whether some {K2,K3}-packing covers every vertex.
pub fn has_k2k3_factor(g: &SimpleGraph) -> bool {
    max_k2k3_packing(g).is_factor_of(g)
}
