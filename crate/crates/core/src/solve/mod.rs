//! Nash-welfare solvers: packing-based approximations, exact algorithms
//! for two coalitions and for coalitions of size two, and a brute-force
//! oracle.

mod afg;
mod approx;
mod exact;
mod oracle;

pub use afg::{
    afg_algorithm1, afg_algorithm1_traced, check_algorithm1_structure, Algorithm1Trace, Phase2Step,
};
pub use approx::{aeg_packing_approx, aeg_size_bounded_approx};
pub use exact::{exact_size_two, exact_two_coalitions, two_coalition_f};
pub use oracle::{brute_force_optimal, OracleOptions, DEFAULT_ORACLE_CEILING};

use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::partition::{Partition, PartitionJson};
use crate::rational::{format_rational, Rational};
use crate::welfare::{nash_welfare, WelfareValue};
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    AegApprox,
    AfgAlg1,
    TwoCoalitions,
    SizeTwo,
    AegSizeApprox,
    Brute,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::AegApprox,
        Method::AfgAlg1,
        Method::TwoCoalitions,
        Method::SizeTwo,
        Method::AegSizeApprox,
        Method::Brute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::AegApprox => "aeg-approx",
            Method::AfgAlg1 => "afg-alg1",
            Method::TwoCoalitions => "two-coalitions",
            Method::SizeTwo => "size-two",
            Method::AegSizeApprox => "aeg-size-approx",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub partition: Partition,
    pub welfare: WelfareValue,
    pub method: Method,
    /// Claimed approximation factor; `1` for exact methods.
    pub guarantee: Option<Rational>,
    /// Set by the two-coalition solver when the only feasible split leaves
    /// a coalition of one agent.
    pub degenerate: bool,
}

impl SolveResult {
    pub(crate) fn new(
        game: &HedonicGame,
        partition: Partition,
        method: Method,
        guarantee: Option<Rational>,
    ) -> Result<Self> {
        let welfare = nash_welfare(game, &partition).map_err(|e| match e {
            Error::NotIndividuallyRational { agent } => Error::InvariantViolation(format!(
                "{method} produced a partition where agent {agent} is worse off than alone"
            )),
            other => other,
        })?;
        Ok(SolveResult {
            partition,
            welfare,
            method,
            guarantee,
            degenerate: false,
        })
    }
}

impl Serialize for SolveResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SolveResult", 6)?;
        st.serialize_field("partition", &PartitionJson::from(&self.partition))?;
        st.serialize_field("product", &format_rational(self.welfare.product()))?;
        st.serialize_field("nw_approx", &self.welfare.nw_approx())?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("guarantee", &self.guarantee.as_ref().map(format_rational))?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.end()
    }
}

/// Dispatches to the solver named by `method`.
pub fn solve(
    game: &HedonicGame,
    method: Method,
    size_bound: Option<usize>,
    count_bound: Option<usize>,
    ceiling: usize,
) -> Result<SolveResult> {
    match method {
        Method::AegApprox => aeg_packing_approx(game),
        Method::AfgAlg1 => afg_algorithm1(game),
        Method::TwoCoalitions => exact_two_coalitions(game),
        Method::SizeTwo => exact_size_two(game),
        Method::AegSizeApprox => {
            let s = size_bound
                .ok_or_else(|| Error::InvalidBound("aeg-size-approx needs a size bound".into()))?;
            aeg_size_bounded_approx(game, s)
        }
        Method::Brute => brute_force_optimal(
            game,
            &OracleOptions {
                size_bound,
                count_bound,
                ceiling,
            },
        ),
    }
}
