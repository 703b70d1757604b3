use super::{Method, SolveResult};
use crate::error::{Error, Result};
use crate::game::{AgentId, GameClass, HedonicGame};
use crate::graph::{max_k2k3_packing, SimpleGraph};
use crate::partition::Partition;
use crate::rational::{int, Rational};
use crate::stability::{Deviation, Target};
use crate::welfare::{coalition_utility, utilitarian_welfare, utility};
use num_traits::Signed;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Phase2Step {
    pub deviation: Deviation,
    #[serde(with = "crate::rational")]
    pub utilitarian: Rational,
}

/// What the packing-and-deviation algorithm did on one input.
#[derive(Clone, Debug, PartialEq)]
pub struct Algorithm1Trace {
    /// Set when the friendship graph has an agent without friends.
    pub isolated_exit: bool,
    pub phase1: Partition,
    /// Agents allowed to move in the second phase, ascending.
    pub movers: Vec<AgentId>,
    pub initial_utilitarian: Rational,
    pub steps: Vec<Phase2Step>,
}

/// Packing-based partition refined by deviations for symmetric AFGs
/// (a `2n`-approximation).
pub fn afg_algorithm1(game: &HedonicGame) -> Result<SolveResult> {
    afg_algorithm1_traced(game).map(|(r, _)| r)
}

pub fn afg_algorithm1_traced(game: &HedonicGame) -> Result<(SolveResult, Algorithm1Trace)> {
    game.require_class(GameClass::Afg)?;
    if !game.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = game.agent_count();
    let guarantee = Some(int(2 * n as i64));
    let g = game.mutual_friendship_graph()?;

    if g.has_isolated_vertex() {
        let p = Partition::singletons(n);
        let trace = Algorithm1Trace {
            isolated_exit: true,
            phase1: p.clone(),
            movers: Vec::new(),
            initial_utilitarian: int(0),
            steps: Vec::new(),
        };
        return Ok((
            SolveResult::new(game, p, Method::AfgAlg1, guarantee)?,
            trace,
        ));
    }

    let packing = max_k2k3_packing(&g);
    let mut packed = vec![false; n];
    for &v in packing.parts.iter().flatten() {
        packed[v] = true;
    }
    let unpacked: Vec<AgentId> = (0..n).filter(|&v| !packed[v]).collect();
    let mut coalitions = packing.parts.clone();
    coalitions.extend(unpacked.iter().map(|&v| vec![v]));
    let phase1 = Partition::new(n, coalitions)?;

    let mut movers = vec![false; n];
    for &v in &unpacked {
        movers[v] = true;
    }
    let has_unpacked_friend = |i: AgentId| g.neighbors(i).iter().any(|&j| !packed[j]);
    for part in packing.parts.iter().filter(|p| p.len() == 2) {
        let lonely: Vec<AgentId> = part
            .iter()
            .copied()
            .filter(|&i| !has_unpacked_friend(i))
            .collect();
        if let [i] = lonely[..] {
            movers[i] = true;
        }
    }
    let movers: Vec<AgentId> = (0..n).filter(|&i| movers[i]).collect();

    let cap = n.pow(3);
    let mut partition = phase1.clone();
    let mut steps = Vec::new();
    while let Some(d) = next_move(game, &partition, &movers) {
        if steps.len() == cap {
            return Err(Error::StepLimitExceeded(cap));
        }
        let Target::Coalition(t) = d.to else {
            unreachable!("phase 2 only targets coalitions")
        };
        partition = partition.moved(d.agent, Some(t));
        steps.push(Phase2Step {
            deviation: d,
            utilitarian: utilitarian_welfare(game, &partition),
        });
    }

    let trace = Algorithm1Trace {
        isolated_exit: false,
        initial_utilitarian: utilitarian_welfare(game, &phase1),
        phase1,
        movers,
        steps,
    };
    Ok((
        SolveResult::new(game, partition, Method::AfgAlg1, guarantee)?,
        trace,
    ))
}

/// The lowest mover with an admissible move, sent to the coalition with the
/// largest gain (ties to the lowest index).
fn next_move(game: &HedonicGame, partition: &Partition, movers: &[AgentId]) -> Option<Deviation> {
    for &i in movers {
        let source = partition.coalition_of(i);
        if source.len() == 2 {
            continue;
        }
        let rest: Vec<AgentId> = source.iter().copied().filter(|&j| j != i).collect();
        if rest
            .iter()
            .any(|&j| !coalition_utility(game, &rest, j).is_positive())
        {
            continue;
        }
        let current = utility(game, partition, i);
        let from = partition.coalition_index(i);
        let mut best: Option<(Rational, usize)> = None;
        for (t, target) in partition.coalitions().iter().enumerate() {
            if t == from {
                continue;
            }
            let gain = coalition_utility(game, target, i) - &current;
            if gain.is_positive() && best.as_ref().is_none_or(|(g, _)| gain > *g) {
                best = Some((gain, t));
            }
        }
        if let Some((_, t)) = best {
            return Some(Deviation {
                agent: i,
                from,
                to: Target::Coalition(t),
            });
        }
    }
    None
}

fn is_star(g: &SimpleGraph, members: &[AgentId]) -> bool {
    let inside = |v: AgentId| {
        g.neighbors(v)
            .iter()
            .filter(|u| members.contains(u))
            .count()
    };
    let m = members.len();
    let centers = members.iter().filter(|&&v| inside(v) == m - 1).count();
    let leaves = members.iter().filter(|&&v| inside(v) == 1).count();
    match m {
        2 => centers == 2,
        _ => centers == 1 && leaves == m - 1,
    }
}

/// Checks the shape of an output of [`afg_algorithm1`]: every coalition of
/// at least two agents induces a triangle or a star in the friendship graph.
/// Returns a description of the first offending coalition.
pub fn check_algorithm1_structure(game: &HedonicGame, partition: &Partition) -> Result<()> {
    let g = game.mutual_friendship_graph()?;
    for c in partition.coalitions() {
        if c.len() == 1 {
            continue;
        }
        let triangle = c.len() == 3 && g.is_clique(c);
        if !(g.is_connected_subset(c) && (triangle || is_star(&g, c))) {
            return Err(Error::InvariantViolation(format!(
                "coalition {c:?} is neither a triangle nor a star"
            )));
        }
    }
    Ok(())
}
