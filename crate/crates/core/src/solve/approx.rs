use super::{Method, SolveResult};
use crate::error::{Error, Result};
use crate::game::{GameClass, HedonicGame};
use crate::graph::max_k2k3_packing;
use crate::partition::Partition;
use crate::rational::int;

/// Factor of the mutual-friendship graph into edges and triangles as a
/// partition, or `None` when no factor exists.
fn factor_partition(game: &HedonicGame) -> Result<Option<Partition>> {
    let g = game.mutual_friendship_graph()?;
    let packing = max_k2k3_packing(&g);
    if !packing.is_factor_of(&g) {
        return Ok(None);
    }
    Partition::new(game.agent_count(), packing.parts).map(Some)
}

/// Edge/triangle factor of the friendship graph when one exists (an
/// `(n-1)`-approximation), otherwise all singletons, which is then optimal.
pub fn aeg_packing_approx(game: &HedonicGame) -> Result<SolveResult> {
    game.require_class(GameClass::Aeg)?;
    let n = game.agent_count() as i64;
    match factor_partition(game)? {
        Some(p) => SolveResult::new(game, p, Method::AegApprox, Some(int((n - 1).max(1)))),
        None => SolveResult::new(
            game,
            Partition::singletons(game.agent_count()),
            Method::AegApprox,
            Some(int(1)),
        ),
    }
}

/// Same construction under a coalition size bound `s ≥ 3`; the factor is
/// an `(s-1)`-approximation of the size-bounded optimum.
pub fn aeg_size_bounded_approx(game: &HedonicGame, s: usize) -> Result<SolveResult> {
    game.require_class(GameClass::Aeg)?;
    if s < 3 {
        return Err(Error::InvalidBound(format!("size bound {s} is below 3")));
    }
    match factor_partition(game)? {
        Some(p) => SolveResult::new(game, p, Method::AegSizeApprox, Some(int(s as i64 - 1))),
        None => SolveResult::new(
            game,
            Partition::singletons(game.agent_count()),
            Method::AegSizeApprox,
            Some(int(1)),
        ),
    }
}
