//! Instance generators: the four hardness constructions, each able to embed
//! a witness partition, and seeded random games.

use crate::error::{Error, Result};
use crate::game::{AgentId, GameClass, HedonicGame};
use crate::graph::SimpleGraph;
use crate::partition::Partition;
use crate::rational::{format_rational, int, pow, Rational};
use crate::welfare::{nash_welfare, WelfareValue};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Names the construction and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub reduction: &'static str,
    pub parameters: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionOutput {
    pub game: HedonicGame,
    pub size_bound: Option<usize>,
    pub count_bound: Option<usize>,
    pub witness: Option<Partition>,
    pub target_welfare: Option<WelfareValue>,
    pub provenance: Provenance,
}

impl ReductionOutput {
    /// Whether the witness reaches the target exactly. `None` when there is
    /// no witness.
    pub fn witness_meets_target(&self) -> Option<Result<bool>> {
        let (w, target) = (self.witness.as_ref()?, self.target_welfare.as_ref()?);
        Some(nash_welfare(&self.game, w).map(|nw| nw == *target))
    }
}

/// Triangle partition instance: an AEG whose friendship graph is `g`. A
/// partition into triangles has Nash welfare exactly 2.
pub fn from_triangle_partition(
    g: &SimpleGraph,
    witness: Option<&[Vec<usize>]>,
) -> Result<ReductionOutput> {
    let n = g.vertex_count();
    if n == 0 || n % 3 != 0 {
        return Err(Error::BadVertexCount(n));
    }
    let game = HedonicGame::aeg_from_graph(g);
    let witness = match witness {
        None => None,
        Some(parts) => {
            if parts.iter().any(|p| p.len() != 3 || !g.is_clique(p)) {
                return Err(Error::InvalidPartition(
                    "witness parts must be triangles of the graph".into(),
                ));
            }
            Some(Partition::new(n, parts.to_vec())?)
        }
    };
    let target = witness
        .as_ref()
        .map(|_| WelfareValue::new(pow(&int(2), n), n));
    Ok(ReductionOutput {
        game,
        size_bound: None,
        count_bound: None,
        witness,
        target_welfare: target,
        provenance: Provenance {
            reduction: "triangles",
            parameters: json!({ "n": n, "edges": g.edges() }),
        },
    })
}

/// Penalty separating firms: `max(2n, ceil(max_f Σ_w U_fw)) + 1`.
pub fn firm_penalty(n: usize, firm_to_worker: &[Vec<Rational>]) -> Rational {
    let heaviest = firm_to_worker
        .iter()
        .map(|row| row.iter().fold(Rational::zero(), |a, u| a + u))
        .max()
        .unwrap_or_else(Rational::zero);
    let bound = int(2 * n as i64).max(heaviest.ceil());
    bound + Rational::one()
}

/// Two-sided matching instance on workers `0..w` followed by firms.
///
/// `worker_to_firm[w][f]` is `U_wf` and `firm_to_worker[f][w]` is `U_fw`.
/// Workers are indifferent to each other and firms strongly dislike each
/// other, so individually rational coalitions hold at most one firm. An
/// `assignment` maps each worker to a firm or to none.
pub fn from_two_sided(
    worker_to_firm: &[Vec<Rational>],
    firm_to_worker: &[Vec<Rational>],
    assignment: Option<&[Option<usize>]>,
) -> Result<ReductionOutput> {
    let workers = worker_to_firm.len();
    let firms = firm_to_worker.len();
    if worker_to_firm.iter().any(|r| r.len() != firms)
        || firm_to_worker.iter().any(|r| r.len() != workers)
    {
        return Err(Error::InvalidGame(
            "utility tables do not match the worker and firm counts".into(),
        ));
    }
    for (side, table) in [("worker", worker_to_firm), ("firm", firm_to_worker)] {
        for (a, row) in table.iter().enumerate() {
            if let Some(b) = row.iter().position(Signed::is_negative) {
                return Err(Error::NegativeUtility(format!("{side} {a} towards {b}")));
            }
        }
    }
    let n = workers + firms;
    let h = firm_penalty(n, firm_to_worker);
    let game = HedonicGame::from_fn(n, GameClass::General, |i, j| {
        match (i < workers, j < workers) {
            (true, true) => Rational::zero(),
            (false, false) => -h.clone(),
            (true, false) => worker_to_firm[i][j - workers].clone(),
            (false, true) => firm_to_worker[i - workers][j].clone(),
        }
    })?;

    let (witness, target) = match assignment {
        None => (None, None),
        Some(a) => {
            if a.len() != workers || a.iter().flatten().any(|&f| f >= firms) {
                return Err(Error::InvalidPartition(
                    "assignment does not match the instance".into(),
                ));
            }
            let mut coalitions: Vec<Vec<AgentId>> = (0..firms).map(|f| vec![workers + f]).collect();
            for (w, f) in a.iter().enumerate() {
                match f {
                    Some(f) => coalitions[*f].push(w),
                    None => coalitions.push(vec![w]),
                }
            }
            let p = Partition::new(n, coalitions)?;
            (
                Some(p),
                Some(assignment_welfare(worker_to_firm, firm_to_worker, a)),
            )
        }
    };
    let table = |t: &[Vec<Rational>]| -> Vec<Vec<String>> {
        t.iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect()
    };
    Ok(ReductionOutput {
        game,
        size_bound: None,
        count_bound: None,
        witness,
        target_welfare: target,
        provenance: Provenance {
            reduction: "two-sided",
            parameters: json!({
                "workers": workers,
                "firms": firms,
                "worker_to_firm": table(worker_to_firm),
                "firm_to_worker": table(firm_to_worker),
                "firm_penalty": format_rational(&h),
            }),
        },
    })
}

/// Nash welfare of an assignment, computed directly on the matching market:
/// a worker gets `U_wf` of its firm (0 without one); a firm gets the sum of
/// `U_fw` over its workers.
pub fn assignment_welfare(
    worker_to_firm: &[Vec<Rational>],
    firm_to_worker: &[Vec<Rational>],
    assignment: &[Option<usize>],
) -> WelfareValue {
    let workers = worker_to_firm.len();
    let firms = firm_to_worker.len();
    let mut product = Rational::one();
    for (w, f) in assignment.iter().enumerate() {
        product *= f.map_or_else(Rational::zero, |f| worker_to_firm[w][f].clone());
    }
    for f in 0..firms {
        let total = (0..workers)
            .filter(|&w| assignment[w] == Some(f))
            .fold(Rational::zero(), |a, w| a + &firm_to_worker[f][w]);
        product *= total;
    }
    WelfareValue::new(product, workers + firms)
}

/// Reads the assignment off a partition of a two-sided instance. `None`
/// when some coalition holds two firms.
pub fn assignment_of(workers: usize, partition: &Partition) -> Option<Vec<Option<usize>>> {
    let mut out = vec![None; workers];
    for c in partition.coalitions() {
        let firms: Vec<usize> = c
            .iter()
            .filter(|&&i| i >= workers)
            .map(|&i| i - workers)
            .collect();
        match firms[..] {
            [] => {}
            [f] => c
                .iter()
                .filter(|&&i| i < workers)
                .for_each(|&w| out[w] = Some(f)),
            _ => return None,
        }
    }
    Some(out)
}

/// Coloring instance: the AEG on the complement of `h` plus `k` mutually
/// hostile agents who are friends with every vertex of `h`, with at most
/// `k` coalitions allowed.
///
/// A proper `k`-coloring (one color in `0..k` per vertex of `h`) becomes a
/// witness with one coalition per color around one hub agent. Positive
/// welfare needs every color used, so empty colors are filled from larger
/// classes; with fewer vertices than colors there is no witness.
pub fn from_k_coloring(
    h: &SimpleGraph,
    k: usize,
    coloring: Option<&[usize]>,
) -> Result<ReductionOutput> {
    if k < 3 {
        return Err(Error::InvalidBound(format!("k = {k} is below 3")));
    }
    let m = h.vertex_count();
    let n = m + k;
    let mut g = SimpleGraph::empty(n);
    for (u, v) in h.complement().edges() {
        g.insert(u, v);
    }
    for hub in m..n {
        for v in 0..m {
            g.insert(v, hub);
        }
    }
    let game = HedonicGame::aeg_from_graph(&g);

    let witness = match coloring {
        None => None,
        Some(colors) => {
            if colors.len() != m || colors.iter().any(|&c| c >= k) {
                return Err(Error::InvalidPartition(format!(
                    "coloring must give each of {m} vertices a color below {k}"
                )));
            }
            if let Some((u, v)) = h.edges().into_iter().find(|&(u, v)| colors[u] == colors[v]) {
                return Err(Error::InvalidPartition(format!(
                    "vertices {u} and {v} share a color"
                )));
            }
            if m < k {
                None
            } else {
                let colors = spread_colors(colors, k);
                let mut coalitions: Vec<Vec<AgentId>> = (0..k).map(|c| vec![m + c]).collect();
                for (v, &c) in colors.iter().enumerate() {
                    coalitions[c].push(v);
                }
                Some(Partition::new(n, coalitions)?)
            }
        }
    };
    let target = match &witness {
        Some(w) => Some(nash_welfare(&game, w)?),
        None => None,
    };
    Ok(ReductionOutput {
        game,
        size_bound: None,
        count_bound: Some(k),
        witness,
        target_welfare: target,
        provenance: Provenance {
            reduction: "k-coloring",
            parameters: json!({ "n": m, "edges": h.edges(), "k": k }),
        },
    })
}

/// Moves vertices from classes with at least two members into empty
/// classes. Requires at least `k` vertices; properness is kept because the
/// receiving class is empty.
fn spread_colors(colors: &[usize], k: usize) -> Vec<usize> {
    let mut colors = colors.to_vec();
    let mut sizes = vec![0usize; k];
    for &c in &colors {
        sizes[c] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let v = (0..colors.len())
            .rev()
            .find(|&v| sizes[colors[v]] >= 2)
            .expect("at least k vertices");
        sizes[colors[v]] -= 1;
        colors[v] = empty;
        sizes[empty] = 1;
    }
    colors
}

/// `K_s`-factor instance: valuation `alpha` on edges of `g`, `beta`
/// elsewhere, coalitions of at most `s` agents. A factor reaches Nash
/// welfare `(s-1)·alpha`.
pub fn from_ks_factor(
    g: &SimpleGraph,
    s: usize,
    alpha: &Rational,
    beta: &Rational,
    factor: Option<&[Vec<usize>]>,
) -> Result<ReductionOutput> {
    if s < 3 {
        return Err(Error::InvalidBound(format!("s = {s} is below 3")));
    }
    if !alpha.is_positive() || beta >= alpha {
        return Err(Error::BadValues(format!(
            "need alpha > 0 and beta < alpha, got {} and {}",
            format_rational(alpha),
            format_rational(beta)
        )));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidGame("empty graph".into()));
    }
    let nn = int(n as i64);
    let class = if *alpha == int(1) && *beta == -nn.clone() {
        GameClass::Aeg
    } else if *alpha == nn && *beta == int(-1) {
        GameClass::Afg
    } else {
        GameClass::Restricted(vec![beta.clone(), alpha.clone()])
    };
    let game = HedonicGame::from_fn(n, class, |i, j| {
        if g.has_edge(i, j) {
            alpha.clone()
        } else {
            beta.clone()
        }
    })?;
    let witness = match factor {
        None => None,
        Some(parts) => {
            if parts.iter().any(|p| p.len() != s || !g.is_clique(p)) {
                return Err(Error::InvalidPartition(format!(
                    "factor parts must be {s}-cliques of the graph"
                )));
            }
            Some(Partition::new(n, parts.to_vec())?)
        }
    };
    let target = witness
        .as_ref()
        .map(|_| WelfareValue::new(pow(&(int(s as i64 - 1) * alpha), n), n));
    Ok(ReductionOutput {
        game,
        size_bound: Some(s),
        count_bound: None,
        witness,
        target_welfare: target,
        provenance: Provenance {
            reduction: "ks-factor",
            parameters: json!({
                "n": n,
                "edges": g.edges(),
                "s": s,
                "alpha": format_rational(alpha),
                "beta": format_rational(beta),
            }),
        },
    })
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert(u, v);
            }
        }
    }
    g
}

/// `{-(2n+1), 0, 1, 2}`.
pub fn default_value_set(n: usize) -> Vec<Rational> {
    vec![int(-(2 * n as i64 + 1)), int(0), int(1), int(2)]
}

/// Seeded random game.
///
/// AEG and AFG games are symmetric with an Erdős–Rényi friendship graph.
/// General and restricted games draw each valuation (each unordered pair
/// when `symmetric`) from the positive values of `value_set` with
/// probability `p`, otherwise from its non-positive values; the default set
/// is [`default_value_set`].
pub fn random_game(
    class: &GameClass,
    n: usize,
    p: f64,
    seed: u64,
    value_set: Option<&[Rational]>,
    symmetric: bool,
) -> Result<HedonicGame> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidBound(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match class {
        GameClass::Aeg => Ok(HedonicGame::aeg_from_graph(&random_graph(n, p, &mut rng))),
        GameClass::Afg => Ok(HedonicGame::afg_from_graph(&random_graph(n, p, &mut rng))),
        GameClass::General | GameClass::Restricted(_) => {
            let set: Vec<Rational> = match (class, value_set) {
                (GameClass::Restricted(s), _) => s.clone(),
                (_, Some(s)) => s.to_vec(),
                _ => default_value_set(n),
            };
            let (pos, rest): (Vec<Rational>, Vec<Rational>) =
                set.into_iter().partition(Signed::is_positive);
            if pos.is_empty() && rest.is_empty() {
                return Err(Error::BadValues("empty value set".into()));
            }
            let draw = |rng: &mut ChaCha8Rng| -> Rational {
                let from = if rest.is_empty() || (!pos.is_empty() && rng.gen_bool(p)) {
                    &pos
                } else {
                    &rest
                };
                from[rng.gen_range(0..from.len())].clone()
            };
            let mut values = vec![Rational::zero(); n * n];
            for i in 0..n {
                for j in 0..n {
                    if i == j || (symmetric && j < i) {
                        continue;
                    }
                    let v = draw(&mut rng);
                    if symmetric {
                        values[j * n + i] = v.clone();
                    }
                    values[i * n + j] = v;
                }
            }
            HedonicGame::with_declared_symmetry(n, class.clone(), symmetric, |i, j| {
                values[i * n + j].clone()
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::welfare::{is_individually_rational, utility};

    #[test]
    fn triangle_witness() {
        let out =
            from_triangle_partition(&SimpleGraph::complete(3), Some(&[vec![0, 1, 2]])).unwrap();
        assert_eq!(out.witness_meets_target(), Some(Ok(true)));
        assert_eq!(out.target_welfare.unwrap().product(), &int(8));
        assert_eq!(
            from_triangle_partition(&SimpleGraph::complete(4), None).unwrap_err(),
            Error::BadVertexCount(4)
        );
        assert!(from_triangle_partition(&SimpleGraph::path(3), Some(&[vec![0, 1, 2]])).is_err());
    }

    #[test]
    fn two_sided_small() {
        let wf = vec![vec![int(1)], vec![int(1)]];
        let fw = vec![vec![int(1), int(1)]];
        let out = from_two_sided(&wf, &fw, Some(&[Some(0), Some(0)])).unwrap();
        let w = out.witness.clone().unwrap();
        assert_eq!(w, Partition::grand(3));
        assert_eq!(utility(&out.game, &w, 2), int(2));
        assert_eq!(utility(&out.game, &w, 0), int(1));
        assert_eq!(out.witness_meets_target(), Some(Ok(true)));
        // H = max(6, 2) + 1.
        assert_eq!(out.game.value(2, 2), &int(0));
        assert_eq!(firm_penalty(3, &fw), int(7));
        assert!(from_two_sided(&[vec![int(-1)]], &[vec![int(0)]], None).is_err());
    }

    #[test]
    fn two_firms_never_ir() {
        let wf = vec![vec![int(3), int(3)]];
        let fw = vec![vec![int(5)], vec![int(5)]];
        let out = from_two_sided(&wf, &fw, None).unwrap();
        assert!(!is_individually_rational(&out.game, &Partition::grand(3)));
        assert_eq!(assignment_of(1, &Partition::grand(3)), None);
    }

    #[test]
    fn coloring_witness() {
        let out = from_k_coloring(&SimpleGraph::empty(3), 3, Some(&[0, 0, 0])).unwrap();
        let w = out.witness.clone().unwrap();
        assert_eq!(w.len(), 3);
        assert!(!out.target_welfare.as_ref().unwrap().is_zero());
        assert_eq!(out.witness_meets_target(), Some(Ok(true)));
        let g = out.game.mutual_friendship_graph().unwrap();
        assert!(!g.has_edge(3, 4) && !g.has_edge(4, 5) && !g.has_edge(3, 5));
        assert!(from_k_coloring(&SimpleGraph::complete(2), 3, Some(&[0, 0])).is_err());
        assert!(from_k_coloring(&SimpleGraph::empty(2), 3, Some(&[0, 1]))
            .unwrap()
            .witness
            .is_none());
    }

    #[test]
    fn ks_factor_witness() {
        let out = from_ks_factor(
            &SimpleGraph::complete(3),
            3,
            &int(1),
            &int(-3),
            Some(&[vec![0, 1, 2]]),
        )
        .unwrap();
        assert_eq!(out.game.class(), &GameClass::Aeg);
        assert_eq!(out.target_welfare.as_ref().unwrap().product(), &int(8));
        assert_eq!(out.witness_meets_target(), Some(Ok(true)));
        let out = from_ks_factor(
            &SimpleGraph::complete(4),
            4,
            &int(4),
            &int(-1),
            Some(&[vec![0, 1, 2, 3]]),
        )
        .unwrap();
        assert_eq!(out.game.class(), &GameClass::Afg);
        assert_eq!(
            out.target_welfare.as_ref().unwrap().nw_approx().round(),
            12.0
        );
        assert_eq!(out.witness_meets_target(), Some(Ok(true)));
        assert!(from_ks_factor(&SimpleGraph::complete(3), 3, &int(1), &int(1), None).is_err());
        assert!(
            from_ks_factor(&SimpleGraph::complete(3), 3, &ratio(-1, 2), &int(-1), None).is_err()
        );
    }

    #[test]
    fn random_games() {
        let g = random_game(&GameClass::Aeg, 6, 1.0, 3, None, true).unwrap();
        assert_eq!(
            g.mutual_friendship_graph().unwrap(),
            SimpleGraph::complete(6)
        );
        let g = random_game(&GameClass::Afg, 6, 0.0, 3, None, true).unwrap();
        assert_eq!(g.mutual_friendship_graph().unwrap().edge_count(), 0);
        let a = random_game(&GameClass::General, 7, 0.5, 11, None, false).unwrap();
        let b = random_game(&GameClass::General, 7, 0.5, 11, None, false).unwrap();
        assert_eq!(a, b);
        let s = random_game(&GameClass::General, 7, 0.5, 11, None, true).unwrap();
        assert!(s.is_symmetric() && s.scan_symmetric());
        assert!(random_game(&GameClass::General, 3, 1.5, 0, None, true).is_err());
    }
}
