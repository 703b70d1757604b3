//! Nash welfare in additively separable hedonic games: exact welfare
//! arithmetic, packing and matching based solvers, stability checks,
//! deviation dynamics and reduction generators.

pub mod bench;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod graph;
pub mod io;
pub mod partition;
pub mod rational;
pub mod reductions;
pub mod solve;
pub mod stability;
pub mod welfare;

pub use error::{Error, Result};
pub use game::{AgentId, GameClass, HedonicGame};
pub use graph::SimpleGraph;
pub use partition::Partition;
pub use rational::Rational;
pub use welfare::WelfareValue;
