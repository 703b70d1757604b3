use super::SimpleGraph;
use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Signed};
use std::collections::{HashMap, VecDeque};

/// Largest connected component (in vertices) accepted by
/// [`max_product_perfect_matching`]. The search is exact and exponential in
/// the component size.
pub const PRODUCT_MATCHING_CEILING: usize = 24;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, stored as `(u, v)` with `u < v`
/// in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Checks disjointness and that every edge exists in `g`.
    pub fn is_valid_in(&self, g: &SimpleGraph) -> bool {
        let mut used = vec![false; g.vertex_count()];
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) || used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        2 * self.edges.len() == n
    }
}

/// Edmonds' blossom algorithm on an adjacency list; returns the mate array.
fn blossom_matching(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    // Greedy start keeps the number of augmentations small.
    for u in 0..n {
        if mate[u] == NONE {
            if let Some(&v) = adj[u].iter().find(|&&v| mate[v] == NONE) {
                mate[u] = v;
                mate[v] = u;
            }
        }
    }
    let mut search = BlossomSearch::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = search.find_path(adj, &mate, root) {
                let mut v = end;
                while v != NONE {
                    let pv = search.parent[v];
                    let next = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = next;
                }
            }
        }
    }
    mate
}

struct BlossomSearch {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
}

impl BlossomSearch {
    fn new(n: usize) -> Self {
        BlossomSearch {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<usize> {
        let n = adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    self.used[mate[to]] = true;
                    queue.push_back(mate[to]);
                }
            }
        }
        None
    }
}

/// Maximum matching size of `g` restricted to vertices with `alive[v]`.
fn matching_size(g: &SimpleGraph, alive: &[bool]) -> usize {
    let adj: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|u| {
            if alive[u] {
                g.neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&v| alive[v])
                    .collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    blossom_matching(&adj)
        .iter()
        .filter(|&&m| m != NONE)
        .count()
        / 2
}

/// Maximum-cardinality matching.
///
/// Among all maximum matchings, the one whose sorted edge list is
/// lexicographically smallest is returned. This costs one blossom run per
/// candidate edge, which is fine at the sizes this crate targets.
pub fn max_cardinality_matching(g: &SimpleGraph) -> Matching {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut remaining = matching_size(g, &alive);
    let mut edges = Vec::with_capacity(remaining);
    for u in 0..n {
        if remaining == 0 {
            break;
        }
        if !alive[u] {
            continue;
        }
        alive[u] = false;
        let mut chosen = None;
        for &v in g.neighbors(u) {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            if matching_size(g, &alive) + 1 == remaining {
                chosen = Some(v);
                break;
            }
            alive[v] = true;
        }
        if let Some(v) = chosen {
            edges.push((u, v));
            remaining -= 1;
        }
    }
    Matching::new(edges)
}

/// A perfect matching together with the product of its edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedMatching {
    pub matching: Matching,
    pub product: Rational,
}

/// Perfect matching maximizing the product of edge weights, or `None` when
/// `g` has no perfect matching.
///
/// `weights` must hold a strictly positive value for every edge, keyed by
/// `(u, v)` with `u < v`. Ties resolve to the lexicographically smallest
/// edge list. Each connected component is solved independently by an exact
/// memoized search; components above [`PRODUCT_MATCHING_CEILING`] vertices
/// are rejected.
pub fn max_product_perfect_matching(
    g: &SimpleGraph,
    weights: &HashMap<(usize, usize), Rational>,
) -> Result<Option<WeightedMatching>> {
    for (u, v) in g.edges() {
        match weights.get(&(u, v)) {
            None => {
                return Err(Error::InvalidGraph(format!(
                    "missing weight for edge ({u},{v})"
                )))
            }
            Some(w) if !w.is_positive() => return Err(Error::NonPositiveWeight(u, v)),
            Some(_) => {}
        }
    }
    if g.vertex_count() % 2 == 1 {
        return Ok(None);
    }
    let mut edges = Vec::new();
    let mut product = Rational::one();
    for comp in g.connected_components() {
        if comp.len() % 2 == 1 {
            return Ok(None);
        }
        if comp.len() > PRODUCT_MATCHING_CEILING {
            return Err(Error::InstanceTooLarge {
                size: comp.len(),
                ceiling: PRODUCT_MATCHING_CEILING,
            });
        }
        let local = g.induced(&comp);
        let weight = |a: usize, b: usize| {
            let (x, y) = (comp[a].min(comp[b]), comp[a].max(comp[b]));
            weights[&(x, y)].clone()
        };
        let mut solver = ProductSearch {
            g: &local,
            weight: &weight,
            memo: HashMap::new(),
        };
        let full: u64 = if comp.len() == 64 {
            u64::MAX
        } else {
            (1u64 << comp.len()) - 1
        };
        let Some(best) = solver.best(full) else {
            return Ok(None);
        };
        product *= best;
        let mut mask = full;
        while mask != 0 {
            let (_, partner) = solver.memo[&mask].clone().expect("feasible state");
            let v = mask.trailing_zeros() as usize;
            edges.push((comp[v], comp[partner]));
            mask &= !(1u64 << v) & !(1u64 << partner);
        }
    }
    Ok(Some(WeightedMatching {
        matching: Matching::new(edges),
        product,
    }))
}

struct ProductSearch<'a, F: Fn(usize, usize) -> Rational> {
    g: &'a SimpleGraph,
    weight: &'a F,
    memo: HashMap<u64, Option<(Rational, usize)>>,
}

impl<F: Fn(usize, usize) -> Rational> ProductSearch<'_, F> {
    fn best(&mut self, mask: u64) -> Option<Rational> {
        if mask == 0 {
            return Some(Rational::one());
        }
        if let Some(hit) = self.memo.get(&mask) {
            return hit.as_ref().map(|(p, _)| p.clone());
        }
        let v = mask.trailing_zeros() as usize;
        let mut best: Option<(Rational, usize)> = None;
        for &w in self.g.neighbors(v) {
            if mask & (1u64 << w) == 0 {
                continue;
            }
            let rest = mask & !(1u64 << v) & !(1u64 << w);
            if let Some(sub) = self.best(rest) {
                let cand = (self.weight)(v, w) * sub;
                if best.as_ref().is_none_or(|(b, _)| cand > *b) {
                    best = Some((cand, w));
                }
            }
        }
        let out = best.as_ref().map(|(p, _)| p.clone());
        self.memo.insert(mask, best);
        out
    }
}
