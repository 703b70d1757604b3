//! Utilities, individual rationality, and exact Nash welfare.
//!
//! Nash welfare is the geometric mean of the agents' utilities over an
//! individually rational partition. It is carried as the exact product of
//! utilities together with the agent count; every comparison works on the
//! product, which orders identically for a fixed `n`.

use crate::error::{Error, Result};
use crate::game::{AgentId, HedonicGame};
use crate::partition::Partition;
use crate::rational::{format_rational, ln_rational, pow, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

/// `u_i(π)`: sum of `i`'s valuations of the other members of its coalition.
pub fn utility(game: &HedonicGame, partition: &Partition, i: AgentId) -> Rational {
    coalition_utility(game, partition.coalition_of(i), i)
}

/// Utility `i` would get in `coalition` (which may or may not contain `i`).
pub fn coalition_utility(game: &HedonicGame, coalition: &[AgentId], i: AgentId) -> Rational {
    coalition
        .iter()
        .filter(|&&j| j != i)
        .fold(Rational::zero(), |acc, &j| acc + game.value(i, j))
}

pub fn utilities(game: &HedonicGame, partition: &Partition) -> Vec<Rational> {
    (0..game.agent_count())
        .map(|i| utility(game, partition, i))
        .collect()
}

pub fn is_individually_rational(game: &HedonicGame, partition: &Partition) -> bool {
    first_irrational_agent(game, partition).is_none()
}

fn first_irrational_agent(game: &HedonicGame, partition: &Partition) -> Option<AgentId> {
    (0..game.agent_count()).find(|&i| utility(game, partition, i).is_negative())
}

pub fn utilitarian_welfare(game: &HedonicGame, partition: &Partition) -> Rational {
    utilities(game, partition)
        .into_iter()
        .fold(Rational::zero(), |a, u| a + u)
}

/// Exact Nash welfare of an individually rational partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WelfareValue {
    product: Rational,
    n: usize,
}

impl WelfareValue {
    pub fn new(product: Rational, n: usize) -> Self {
        WelfareValue { product, n }
    }

    pub fn product(&self) -> &Rational {
        &self.product
    }

    pub fn agent_count(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.product.is_zero()
    }

    /// `product^(1/n)` as a float, for display only.
    pub fn nw_approx(&self) -> f64 {
        if self.product.is_zero() || self.n == 0 {
            return 0.0;
        }
        (ln_rational(&self.product) / self.n as f64).exp()
    }

    /// Orders by product; errors when the agent counts differ.
    pub fn compare(&self, other: &WelfareValue) -> Result<Ordering> {
        if self.n != other.n {
            return Err(Error::MismatchedAgentCount {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self.product.cmp(&other.product))
    }
}

impl Serialize for WelfareValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("WelfareValue", 3)?;
        s.serialize_field("product", &format_rational(&self.product))?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("nw_approx", &self.nw_approx())?;
        s.end()
    }
}

pub fn nash_welfare(game: &HedonicGame, partition: &Partition) -> Result<WelfareValue> {
    let mut product = Rational::one();
    for i in 0..game.agent_count() {
        let u = utility(game, partition, i);
        if u.is_negative() {
            return Err(Error::NotIndividuallyRational { agent: i });
        }
        product *= u;
    }
    Ok(WelfareValue::new(product, game.agent_count()))
}

pub fn compare_nash_welfare(a: &WelfareValue, b: &WelfareValue) -> Result<Ordering> {
    a.compare(b)
}

/// Whether `alpha · NW(alg) ≥ NW(opt)`, decided exactly as
/// `alpha^n · alg.product ≥ opt.product`.
pub fn check_approximation(
    alg: &WelfareValue,
    opt: &WelfareValue,
    alpha: &Rational,
) -> Result<bool> {
    if alg.n != opt.n {
        return Err(Error::MismatchedAgentCount {
            left: alg.n,
            right: opt.n,
        });
    }
    if *alpha < Rational::one() {
        return Err(Error::InvalidBound(format!(
            "approximation factor {} is below 1",
            format_rational(alpha)
        )));
    }
    Ok(pow(alpha, alg.n) * &alg.product >= opt.product)
}

/// Display helper: `(opt / alg)^(1/n)`, `1` when both are zero and
/// infinity when only `alg` is zero.
pub fn empirical_ratio(alg: &WelfareValue, opt: &WelfareValue) -> f64 {
    match (alg.is_zero(), opt.is_zero()) {
        (_, true) => 1.0,
        (true, false) => f64::INFINITY,
        (false, false) => {
            ((ln_rational(&opt.product) - ln_rational(&alg.product)) / alg.n as f64).exp()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::GameClass;
    use crate::rational::{int, ratio};

    #[test]
    fn fig1_utilities() {
        let game = fixtures::fig1_game();
        let opt = fixtures::fig1_optimal();
        // Agent a has three friends b, d, e inside {a,b,d,e}.
        assert_eq!(utility(&game, &opt, 0), int(3));
        let us: Vec<Rational> = utilities(&game, &opt);
        assert_eq!(us, vec![int(3), int(3), int(1), int(3), int(3), int(1)]);
        assert!(is_individually_rational(&game, &opt));
        assert_eq!(utilitarian_welfare(&game, &opt), int(14));
        assert_eq!(nash_welfare(&game, &opt).unwrap().product(), &int(81));

        let tri = fixtures::fig1_triangles();
        assert_eq!(nash_welfare(&game, &tri).unwrap().product(), &int(64));
        assert_eq!(utilitarian_welfare(&game, &tri), int(12));
        let nw = nash_welfare(&game, &opt).unwrap().nw_approx();
        assert!((nw - 3f64.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!((nw - 2.0801).abs() < 1e-4);
        assert!((nash_welfare(&game, &tri).unwrap().nw_approx() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn singletons_are_zero_and_ir() {
        let game = fixtures::asymmetric_four();
        let p = Partition::singletons(4);
        for i in 0..4 {
            assert_eq!(utility(&game, &p, i), int(0));
        }
        assert!(is_individually_rational(&game, &p));
        assert_eq!(utilitarian_welfare(&game, &p), int(0));
    }

    #[test]
    fn asymmetry_example() {
        let game = fixtures::asymmetric_four();
        let p = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(utility(&game, &p, 1), int(0));
        assert!(is_individually_rational(&game, &p));
        assert!(nash_welfare(&game, &p).unwrap().is_zero());
    }

    #[test]
    fn non_ir_rejected() {
        let game = HedonicGame::aeg_from_graph(&crate::graph::SimpleGraph::path(3));
        let p = Partition::grand(3);
        assert!(!is_individually_rational(&game, &p));
        assert!(matches!(
            nash_welfare(&game, &p),
            Err(Error::NotIndividuallyRational { .. })
        ));
    }

    #[test]
    fn comparisons() {
        let a = WelfareValue::new(int(81), 6);
        let b = WelfareValue::new(int(64), 6);
        assert_eq!(compare_nash_welfare(&a, &b).unwrap(), Ordering::Greater);
        let z = WelfareValue::new(int(0), 4);
        assert_eq!(
            compare_nash_welfare(&z, &z.clone()).unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            compare_nash_welfare(&WelfareValue::new(int(1), 4), &z).unwrap(),
            Ordering::Greater
        );
        assert!(matches!(
            compare_nash_welfare(&a, &z),
            Err(Error::MismatchedAgentCount { .. })
        ));
    }

    #[test]
    fn approximation_checks() {
        let alg = WelfareValue::new(int(64), 6);
        let opt = WelfareValue::new(int(81), 6);
        assert!(check_approximation(&alg, &opt, &int(5)).unwrap());
        assert!(check_approximation(&opt, &opt, &int(1)).unwrap());
        assert!(!check_approximation(&alg, &opt, &int(1)).unwrap());
        let zero = WelfareValue::new(int(0), 6);
        assert!(!check_approximation(&zero, &opt, &int(1_000_000)).unwrap());
        assert!(check_approximation(&alg, &opt, &ratio(1, 2)).is_err());
        assert!(check_approximation(&alg, &WelfareValue::new(int(1), 5), &int(2)).is_err());
        // 64^(1/6) = 2, 81^(1/6) ≈ 2.08: the tight factor lies between.
        assert!(check_approximation(&alg, &opt, &ratio(105, 100)).unwrap());
        assert!(!check_approximation(&alg, &opt, &ratio(103, 100)).unwrap());
    }

    #[test]
    fn symmetric_sum_is_twice_edge_weight() {
        let game =
            HedonicGame::from_fn(4, GameClass::General, |i, j| int((i + j) as i64 - 2)).unwrap();
        let p = Partition::new(4, vec![vec![0, 1, 3], vec![2]]).unwrap();
        let edge_sum = int(-1) + int(1) + int(2);
        assert_eq!(utilitarian_welfare(&game, &p), edge_sum * int(2));
    }

    #[test]
    fn empirical_ratio_display() {
        let alg = WelfareValue::new(int(64), 6);
        let opt = WelfareValue::new(int(81), 6);
        assert!((empirical_ratio(&alg, &opt) - 3f64.powf(2.0 / 3.0) / 2.0).abs() < 1e-12);
        let zero = WelfareValue::new(int(0), 6);
        assert_eq!(empirical_ratio(&zero, &zero), 1.0);
        assert!(empirical_ratio(&zero, &opt).is_infinite());
    }
}
