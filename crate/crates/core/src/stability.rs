//! Single-agent deviations, stability notions and deviation dynamics.

use crate::error::{Error, Result};
use crate::game::{AgentId, GameClass, HedonicGame};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::welfare::{coalition_utility, nash_welfare, utility, WelfareValue};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviationType {
    Nash,
    Individual,
    ContractualNash,
    ContractualIndividual,
}

impl DeviationType {
    fn needs_target_consent(self) -> bool {
        matches!(
            self,
            DeviationType::Individual | DeviationType::ContractualIndividual
        )
    }

    fn needs_source_consent(self) -> bool {
        matches!(
            self,
            DeviationType::ContractualNash | DeviationType::ContractualIndividual
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DeviationKind {
    pub kind: DeviationType,
    pub non_abandoning: bool,
}

impl DeviationKind {
    pub fn new(kind: DeviationType, non_abandoning: bool) -> Self {
        DeviationKind {
            kind,
            non_abandoning,
        }
    }

    pub fn of(kind: DeviationType) -> Self {
        Self::new(kind, false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityNotion {
    Ns,
    Is,
    Cns,
    Cis,
}

impl StabilityNotion {
    pub fn deviation_kind(self) -> DeviationKind {
        DeviationKind::of(match self {
            StabilityNotion::Ns => DeviationType::Nash,
            StabilityNotion::Is => DeviationType::Individual,
            StabilityNotion::Cns => DeviationType::ContractualNash,
            StabilityNotion::Cis => DeviationType::ContractualIndividual,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Coalition(usize),
    NewSingleton,
}

/// Agent `agent` leaves coalition `from` for `to`. Indices refer to the
/// canonical coalition order of the partition the deviation was found in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Deviation {
    pub agent: AgentId,
    pub from: usize,
    pub to: Target,
}

fn target_members<'a>(partition: &'a Partition, to: Target) -> &'a [AgentId] {
    match to {
        Target::Coalition(t) => &partition.coalitions()[t],
        Target::NewSingleton => &[],
    }
}

/// Utility of the mover after the deviation minus its current utility.
pub fn deviation_gain(
    game: &HedonicGame,
    partition: &Partition,
    agent: AgentId,
    to: Target,
) -> Rational {
    coalition_utility(game, target_members(partition, to), agent) - utility(game, partition, agent)
}

/// Whether moving `agent` to `to` is a deviation of the given kind.
pub fn is_deviation(
    game: &HedonicGame,
    partition: &Partition,
    agent: AgentId,
    to: Target,
    kind: DeviationKind,
) -> bool {
    let source = partition.coalition_of(agent);
    if let Target::Coalition(t) = to {
        if t == partition.coalition_index(agent) {
            return false;
        }
    } else if source.len() == 1 {
        return false;
    }
    if kind.non_abandoning && source.len() == 2 {
        return false;
    }
    if !deviation_gain(game, partition, agent, to).is_positive() {
        return false;
    }
    if kind.kind.needs_target_consent()
        && target_members(partition, to)
            .iter()
            .any(|&j| game.value(j, agent).is_negative())
    {
        return false;
    }
    if kind.kind.needs_source_consent()
        && source
            .iter()
            .any(|&j| j != agent && game.value(j, agent).is_positive())
    {
        return false;
    }
    true
}

fn targets(partition: &Partition) -> impl Iterator<Item = Target> + '_ {
    (0..partition.len())
        .map(Target::Coalition)
        .chain(std::iter::once(Target::NewSingleton))
}

/// All deviations of the given kind, by agent, then target coalition
/// index, with the new-singleton move last.
pub fn enumerate_deviations(
    game: &HedonicGame,
    partition: &Partition,
    kind: DeviationKind,
) -> Vec<Deviation> {
    let mut out = Vec::new();
    for agent in 0..game.agent_count() {
        for to in targets(partition) {
            if is_deviation(game, partition, agent, to, kind) {
                out.push(Deviation {
                    agent,
                    from: partition.coalition_index(agent),
                    to,
                });
            }
        }
    }
    out
}

/// First deviation in enumeration order, if any.
pub fn find_deviation(
    game: &HedonicGame,
    partition: &Partition,
    kind: DeviationKind,
) -> Option<Deviation> {
    (0..game.agent_count()).find_map(|agent| {
        targets(partition)
            .find(|&to| is_deviation(game, partition, agent, to, kind))
            .map(|to| Deviation {
                agent,
                from: partition.coalition_index(agent),
                to,
            })
    })
}

/// The lowest agent that has a deviation, moved to its best target (ties
/// to the lowest coalition index, new singleton last).
pub fn best_response_deviation(
    game: &HedonicGame,
    partition: &Partition,
    kind: DeviationKind,
) -> Option<Deviation> {
    for agent in 0..game.agent_count() {
        let mut best: Option<(Rational, Target)> = None;
        for to in targets(partition) {
            if !is_deviation(game, partition, agent, to, kind) {
                continue;
            }
            let gain = deviation_gain(game, partition, agent, to);
            if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                best = Some((gain, to));
            }
        }
        if let Some((_, to)) = best {
            return Some(Deviation {
                agent,
                from: partition.coalition_index(agent),
                to,
            });
        }
    }
    None
}

pub fn is_stable(game: &HedonicGame, partition: &Partition, notion: StabilityNotion) -> bool {
    find_deviation(game, partition, notion.deviation_kind()).is_none()
}

pub fn apply_deviation(partition: &Partition, d: &Deviation) -> Result<Partition> {
    let n = partition.agent_count();
    if d.agent >= n {
        return Err(Error::InvalidDeviation(format!(
            "agent {} out of range",
            d.agent
        )));
    }
    if partition.coalition_index(d.agent) != d.from {
        return Err(Error::InvalidDeviation(format!(
            "agent {} is not in coalition {}",
            d.agent, d.from
        )));
    }
    match d.to {
        Target::Coalition(t) if t >= partition.len() => Err(Error::InvalidDeviation(format!(
            "target coalition {t} does not exist"
        ))),
        Target::Coalition(t) if t == d.from => {
            Err(Error::InvalidDeviation("target equals source".into()))
        }
        Target::Coalition(t) => Ok(partition.moved(d.agent, Some(t))),
        Target::NewSingleton if partition.coalition_of(d.agent).len() == 1 => Err(
            Error::InvalidDeviation(format!("agent {} is already a singleton", d.agent)),
        ),
        Target::NewSingleton => Ok(partition.moved(d.agent, None)),
    }
}

/// Guard for dynamics whose convergence speed is not bounded by a
/// potential argument (the number of partitions of 12 agents).
pub const STEP_GUARD: usize = 4_213_597;

/// `n³` for symmetric games and AFGs, where utilitarian welfare bounds the
/// number of improving moves, and `n · STEP_GUARD` otherwise.
pub fn default_max_steps(game: &HedonicGame) -> usize {
    let n = game.agent_count();
    if game.is_symmetric() || *game.class() == GameClass::Afg {
        n.pow(3).max(1)
    } else {
        n.saturating_mul(STEP_GUARD)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DynamicsStep {
    pub deviation: Deviation,
    /// `None` when the partition after this step is not individually rational.
    pub welfare: Option<WelfareValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DynamicsOutcome {
    #[serde(serialize_with = "serialize_partition")]
    pub partition: Partition,
    pub initial_welfare: Option<WelfareValue>,
    pub trace: Vec<DynamicsStep>,
    pub step_limit_hit: bool,
}

fn serialize_partition<S: serde::Serializer>(
    p: &Partition,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    crate::partition::PartitionJson::from(p).serialize(s)
}

impl DynamicsOutcome {
    pub fn steps(&self) -> usize {
        self.trace.len()
    }
}

/// Applies [`best_response_deviation`] until none exists or `max_steps`
/// moves have been made. Hitting the cap is reported, not an error.
pub fn run_dynamics(
    game: &HedonicGame,
    start: &Partition,
    kind: DeviationKind,
    max_steps: usize,
) -> Result<DynamicsOutcome> {
    if start.agent_count() != game.agent_count() {
        return Err(Error::MismatchedAgentCount {
            left: game.agent_count(),
            right: start.agent_count(),
        });
    }
    let mut partition = start.clone();
    let mut trace = Vec::new();
    let mut step_limit_hit = false;
    while let Some(d) = best_response_deviation(game, &partition, kind) {
        if trace.len() == max_steps {
            step_limit_hit = true;
            break;
        }
        partition = apply_deviation(&partition, &d)?;
        trace.push(DynamicsStep {
            deviation: d,
            welfare: nash_welfare(game, &partition).ok(),
        });
    }
    Ok(DynamicsOutcome {
        initial_welfare: nash_welfare(game, start).ok(),
        partition,
        trace,
        step_limit_hit,
    })
}

/// In a symmetric game an individually rational partition where every agent
/// has positive utility is contractually Nash stable. Returns the CNS check;
/// a failure under the positive-utility hypothesis is an invariant violation.
pub fn verify_cns_from_positive_utilities(
    game: &HedonicGame,
    partition: &Partition,
) -> Result<bool> {
    if !game.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let us: Vec<Rational> = (0..game.agent_count())
        .map(|i| utility(game, partition, i))
        .collect();
    if let Some(agent) = us.iter().position(Signed::is_negative) {
        return Err(Error::NotIndividuallyRational { agent });
    }
    let cns = is_stable(game, partition, StabilityNotion::Cns);
    if !cns && us.iter().all(|u| !u.is_zero()) {
        return Err(Error::InvariantViolation(
            "positive utilities but a contractual Nash deviation exists".into(),
        ));
    }
    Ok(cns)
}
