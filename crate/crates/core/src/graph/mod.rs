//! Undirected simple graphs and the structural algorithms the welfare
//! solvers rely on: {K2,K3}-packings, matchings, complements, bipartitions
//! and clique tests.

mod matching;
mod packing;

pub use matching::{
    max_cardinality_matching, max_product_perfect_matching, Matching, WeightedMatching,
    PRODUCT_MATCHING_CEILING,
};
pub use packing::{has_k2k3_factor, max_k2k3_packing, Packing};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Undirected graph without self-loops or parallel edges.
///
/// Neighbor lists are kept sorted so iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        if n >= 3 {
            for u in 0..n {
                g.insert(u, (u + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = SimpleGraph::empty(n);
        for u in 1..n {
            g.insert(u - 1, u);
        }
        g
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut g = SimpleGraph::empty(leaves + 1);
        for v in 1..=leaves {
            g.insert(0, v);
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = SimpleGraph::empty(10);
        for i in 0..5 {
            g.insert(i, (i + 1) % 5);
            g.insert(i, i + 5);
            g.insert(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    /// Builds a graph from an edge list, rejecting loops and out-of-range
    /// endpoints. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidGraph(format!("cannot add edge ({u},{v})")));
        }
        self.insert(u, v);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.insert(a, b);
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() {
            return true;
        }
        self.induced(vertices).connected_components().len() == 1
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(a, &u)| {
            vertices[a + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    /// Two-colors every component by BFS.
    ///
    /// Returns `None` when some component contains an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<ComponentSides>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut out = Vec::new();
        for comp in self.connected_components() {
            let root = comp[0];
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored on push");
                for &v in &self.adj[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
            let (first, second): (Vec<usize>, Vec<usize>) =
                comp.iter().partition(|&&v| color[v] == Some(false));
            out.push(ComponentSides::new(first, second));
        }
        Some(out)
    }
}

/// The two color classes of one connected component of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSides {
    /// Side containing the component's smallest vertex.
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl ComponentSides {
    fn new(first: Vec<usize>, second: Vec<usize>) -> Self {
        ComponentSides { first, second }
    }

    pub fn smaller(&self) -> &[usize] {
        if self.first.len() <= self.second.len() {
            &self.first
        } else {
            &self.second
        }
    }

    pub fn larger(&self) -> &[usize] {
        if self.first.len() <= self.second.len() {
            &self.second
        } else {
            &self.first
        }
    }
}

/// Wire form `{ "n": int, "edges": [[i,j], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
}

impl From<&SimpleGraph> for GraphJson {
    fn from(g: &SimpleGraph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        SimpleGraph::from_edges(json.n, &edges)
    }
}
