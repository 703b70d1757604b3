use super::{Method, SolveResult};
use crate::error::{Error, Result};
use crate::game::{GameClass, HedonicGame};
use crate::graph::{max_product_perfect_matching, ComponentSides, SimpleGraph};
use crate::partition::Partition;
use crate::rational::{int, Rational};
use num_bigint::BigUint;
use num_traits::Signed;
use std::collections::HashMap;

/// `(s-1)^s (n-s-1)^(n-s)`: the welfare product of two friendship cliques
/// of sizes `s` and `n - s` in an AEG.
pub fn two_coalition_f(n: usize, s: usize) -> BigUint {
    let a = BigUint::from(s.saturating_sub(1));
    let b = BigUint::from((n - s).saturating_sub(1));
    a.pow(s as u32) * b.pow((n - s) as u32)
}

/// Optimal partition of an AEG into at most two coalitions.
///
/// Both coalitions must be cliques of the friendship graph, i.e. the two
/// sides of a bipartition of its complement `H`. Each component of `H`
/// contributes one of its two sides to the coalition of agent 0, so the
/// reachable sizes follow from a subset-sum over components. The best size
/// is `0` (grand coalition) when reachable, else the smallest reachable
/// `s ≥ 2` (welfare strictly decreases in `s` on `[2, n/2]`), else `1`, in
/// which case the result has zero welfare and is marked degenerate.
pub fn exact_two_coalitions(game: &HedonicGame) -> Result<SolveResult> {
    game.require_class(GameClass::Aeg)?;
    let n = game.agent_count();
    let h = game.mutual_friendship_graph()?.complement();
    let mut comps = h.bipartition().ok_or(Error::NoFeasiblePartition)?;
    comps.sort_by_key(|c| c.first[0]);

    // suffix[c] bit x: components c.. can put exactly x agents on a side.
    let mut suffix = vec![vec![false; n + 1]; comps.len() + 1];
    suffix[comps.len()][0] = true;
    for (c, comp) in comps.iter().enumerate().rev() {
        for x in 0..=n {
            if suffix[c + 1][x] {
                suffix[c][x + comp.first.len()] = true;
                suffix[c][x + comp.second.len()] = true;
            }
        }
    }
    let reachable = &suffix[0];
    let small = (0..=n / 2)
        .filter(|&s| s != 1 && reachable[s])
        .min()
        .or_else(|| (n >= 2 && reachable[1]).then_some(1))
        .ok_or_else(|| Error::InvariantViolation("no reachable coalition size".into()))?;

    let mut block = vec![1usize; n];
    let mut zero_side = 0usize;
    for (c, comp) in comps.iter().enumerate() {
        let fits = |take: &ComponentSides, first: bool| {
            let add = if first {
                take.first.len()
            } else {
                take.second.len()
            };
            let total = zero_side + add;
            [small, n - small]
                .iter()
                .any(|&t| t >= total && suffix[c + 1][t - total])
        };
        let put_first = fits(comp, true);
        debug_assert!(put_first || fits(comp, false));
        let (mine, _) = if put_first {
            (&comp.first, &comp.second)
        } else {
            (&comp.second, &comp.first)
        };
        for &v in mine {
            block[v] = 0;
        }
        zero_side += mine.len();
    }
    let partition = Partition::from_labels(&block);
    let mut result = SolveResult::new(game, partition, Method::TwoCoalitions, Some(int(1)))?;
    result.degenerate = small == 1;
    Ok(result)
}

/// Optimal partition into coalitions of at most two agents.
///
/// Positive welfare needs every agent in a pair that both members value
/// positively, so the optimum is a maximum-product perfect matching on
/// those pairs with weights `v_ij · v_ji`. Without one the optimum is zero
/// and the lexicographically least individually rational pairing is
/// returned.
pub fn exact_size_two(game: &HedonicGame) -> Result<SolveResult> {
    let n = game.agent_count();
    let positive = game.mutual_graph(Signed::is_positive);
    if n % 2 == 0 {
        let weights: HashMap<(usize, usize), Rational> = positive
            .edges()
            .into_iter()
            .map(|(u, v)| ((u, v), game.value(u, v) * game.value(v, u)))
            .collect();
        if let Some(best) = max_product_perfect_matching(&positive, &weights)? {
            let coalitions = best
                .matching
                .edges
                .iter()
                .map(|&(u, v)| vec![u, v])
                .collect();
            let partition = Partition::new(n, coalitions)?;
            return SolveResult::new(game, partition, Method::SizeTwo, Some(int(1)));
        }
    }
    let partition = least_ir_pairing(n, &game.mutual_graph(|v| !v.is_negative()));
    SolveResult::new(game, partition, Method::SizeTwo, Some(int(1)))
}

/// Each agent joins the earliest open singleton it may share with, else
/// opens a new coalition.
fn least_ir_pairing(n: usize, allowed: &SimpleGraph) -> Partition {
    let mut labels = vec![0usize; n];
    let mut open: Vec<Option<usize>> = Vec::new();
    for i in 0..n {
        match open
            .iter()
            .position(|o| o.is_some_and(|owner| allowed.has_edge(owner, i)))
        {
            Some(k) => {
                labels[i] = k;
                open[k] = None;
            }
            None => {
                labels[i] = open.len();
                open.push(Some(i));
            }
        }
    }
    Partition::from_labels(&labels)
}
