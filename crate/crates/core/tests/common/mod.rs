//! Independent brute-force oracles shared by the integration tests. They
//! deliberately avoid the library's enumerators and solvers.
#![allow(dead_code)]

use hedonic_core::graph::SimpleGraph;
use hedonic_core::{HedonicGame, Partition, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::HashMap;

/// Calls `f` on every set partition of `0..n` (blocks in creation order),
/// pruning blocks larger than `max_size` or more than `max_blocks` blocks.
pub fn for_each_partition(
    n: usize,
    max_blocks: usize,
    max_size: usize,
    f: &mut impl FnMut(&[Vec<usize>]),
) {
    fn rec(
        i: usize,
        n: usize,
        k: usize,
        s: usize,
        blocks: &mut Vec<Vec<usize>>,
        f: &mut impl FnMut(&[Vec<usize>]),
    ) {
        if i == n {
            f(blocks);
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].len() < s {
                blocks[b].push(i);
                rec(i + 1, n, k, s, blocks, f);
                blocks[b].pop();
            }
        }
        if blocks.len() < k {
            blocks.push(vec![i]);
            rec(i + 1, n, k, s, blocks, f);
            blocks.pop();
        }
    }
    rec(0, n, max_blocks, max_size, &mut Vec::new(), f);
}

pub fn block_utility(game: &HedonicGame, block: &[usize], i: usize) -> Rational {
    let mut u = Rational::zero();
    for &j in block {
        if j != i {
            u += game.value(i, j);
        }
    }
    u
}

/// Product of utilities, or `None` when some agent is worse off than alone.
pub fn ir_product(game: &HedonicGame, blocks: &[Vec<usize>]) -> Option<Rational> {
    let mut p = Rational::one();
    for b in blocks {
        for &i in b {
            let u = block_utility(game, b, i);
            if u.is_negative() {
                return None;
            }
            p *= u;
        }
    }
    Some(p)
}

/// Optimal product over IR partitions within the bounds; `None` if there is
/// no IR partition.
pub fn oracle_product(
    game: &HedonicGame,
    max_size: Option<usize>,
    max_blocks: Option<usize>,
) -> Option<Rational> {
    let n = game.agent_count();
    let mut best: Option<Rational> = None;
    for_each_partition(
        n,
        max_blocks.unwrap_or(n),
        max_size.unwrap_or(n),
        &mut |blocks| {
            if let Some(p) = ir_product(game, blocks) {
                if best.as_ref().is_none_or(|b| p > *b) {
                    best = Some(p);
                }
            }
        },
    );
    best
}

pub fn to_partition(n: usize, blocks: &[Vec<usize>]) -> Partition {
    Partition::new(n, blocks.to_vec()).unwrap()
}

/// Largest number of vertices covered by disjoint edges and triangles.
pub fn packing_cover(g: &SimpleGraph) -> usize {
    fn rec(g: &SimpleGraph, free: &mut Vec<bool>) -> usize {
        let Some(v) = free.iter().position(|&f| f) else {
            return 0;
        };
        free[v] = false;
        let mut best = rec(g, free);
        let nb: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| free[u])
            .collect();
        for (a, &u) in nb.iter().enumerate() {
            free[u] = false;
            best = best.max(2 + rec(g, free));
            for &w in &nb[a + 1..] {
                if g.has_edge(u, w) {
                    free[w] = false;
                    best = best.max(3 + rec(g, free));
                    free[w] = true;
                }
            }
            free[u] = true;
        }
        free[v] = true;
        best
    }
    rec(g, &mut vec![true; g.vertex_count()])
}

pub fn matching_size(g: &SimpleGraph) -> usize {
    fn rec(g: &SimpleGraph, free: &mut Vec<bool>) -> usize {
        let Some(v) = free.iter().position(|&f| f) else {
            return 0;
        };
        free[v] = false;
        let mut best = rec(g, free);
        for &u in g.neighbors(v) {
            if free[u] {
                free[u] = false;
                best = best.max(1 + rec(g, free));
                free[u] = true;
            }
        }
        free[v] = true;
        best
    }
    rec(g, &mut vec![true; g.vertex_count()])
}

/// Best product over perfect matchings, `None` if there is none.
pub fn perfect_matching_product(
    g: &SimpleGraph,
    w: &HashMap<(usize, usize), Rational>,
) -> Option<Rational> {
    fn rec(
        g: &SimpleGraph,
        w: &HashMap<(usize, usize), Rational>,
        free: &mut Vec<bool>,
    ) -> Option<Rational> {
        let Some(v) = free.iter().position(|&f| f) else {
            return Some(Rational::one());
        };
        free[v] = false;
        let mut best: Option<Rational> = None;
        for &u in g.neighbors(v) {
            if free[u] {
                free[u] = false;
                if let Some(rest) = rec(g, w, free) {
                    let p = rest * &w[&(v.min(u), v.max(u))];
                    if best.as_ref().is_none_or(|b| p > *b) {
                        best = Some(p);
                    }
                }
                free[u] = true;
            }
        }
        free[v] = true;
        best
    }
    rec(g, w, &mut vec![true; g.vertex_count()])
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, &edges).unwrap()
}

/// Whether `h` has a proper coloring with at most `k` colors.
pub fn colorable(h: &SimpleGraph, k: usize) -> bool {
    fn rec(h: &SimpleGraph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == h.vertex_count() {
            return true;
        }
        for c in 0..k {
            if h.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if rec(h, k, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    rec(h, k, 0, &mut vec![0; h.vertex_count()])
}

pub fn proper_coloring(h: &SimpleGraph, k: usize) -> Option<Vec<usize>> {
    fn rec(h: &SimpleGraph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == h.vertex_count() {
            return true;
        }
        for c in 0..k {
            if h.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if rec(h, k, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    let mut colors = vec![0; h.vertex_count()];
    rec(h, k, 0, &mut colors).then_some(colors)
}

/// Random partition of `g` into cliques: agents in random order join a
/// random coalition they are adjacent to entirely, or open a new one.
pub fn random_clique_partition(g: &SimpleGraph, rng: &mut impl Rng) -> Partition {
    use rand::seq::SliceRandom;
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in order {
        let open: Vec<usize> = (0..blocks.len())
            .filter(|&b| blocks[b].iter().all(|&u| g.has_edge(u, v)))
            .collect();
        match open.choose(rng) {
            Some(&b) if rng.gen_bool(0.85) => blocks[b].push(v),
            _ => blocks.push(vec![v]),
        }
    }
    Partition::new(n, blocks).unwrap()
}

/// Uniformly random set partition of `0..n` into at most `k` labelled
/// blocks (empty blocks dropped).
pub fn random_partition(n: usize, k: usize, rng: &mut impl Rng) -> Partition {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k.max(1))).collect();
    let blocks: Vec<Vec<usize>> = (0..k.max(1))
        .map(|b| (0..n).filter(|&i| labels[i] == b).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    Partition::new(n, blocks).unwrap()
}

/// Graph on `m * s` vertices containing `m` disjoint planted `K_s` on a
/// shuffled vertex order, plus each other edge with probability `p`.
pub fn planted_cliques(
    m: usize,
    s: usize,
    p: f64,
    rng: &mut impl Rng,
) -> (SimpleGraph, Vec<Vec<usize>>) {
    use rand::seq::SliceRandom;
    let n = m * s;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let parts: Vec<Vec<usize>> = order.chunks(s).map(<[usize]>::to_vec).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let same = parts.iter().any(|c| c.contains(&u) && c.contains(&v));
            if same || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (SimpleGraph::from_edges(n, &edges).unwrap(), parts)
}

/// Tripartite graph on `3m` vertices with parts given by `v % 3` after a
/// shuffle, `m` planted transversal triangles, and each other cross-part
/// edge with probability `p`.
pub fn planted_tripartite(m: usize, p: f64, rng: &mut impl Rng) -> (SimpleGraph, Vec<Vec<usize>>) {
    use rand::seq::SliceRandom;
    let n = 3 * m;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let part = |v: usize| order.iter().position(|&x| x == v).unwrap() % 3;
    let triangles: Vec<Vec<usize>> = order.chunks(3).map(<[usize]>::to_vec).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part(u) == part(v) {
                continue;
            }
            let planted = triangles.iter().any(|t| t.contains(&u) && t.contains(&v));
            if planted || rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    (SimpleGraph::from_edges(n, &edges).unwrap(), triangles)
}
