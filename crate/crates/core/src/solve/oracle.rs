use super::{Method, SolveResult};
use crate::error::{Error, Result};
use crate::game::HedonicGame;
use crate::partition::{Partition, PartitionEnumerator};
use crate::rational::{int, Rational};
use crate::welfare::utility;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Bell(12) is about 4.2 million partitions.
pub const DEFAULT_ORACLE_CEILING: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    pub size_bound: Option<usize>,
    pub count_bound: Option<usize>,
    pub ceiling: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            size_bound: None,
            count_bound: None,
            ceiling: DEFAULT_ORACLE_CEILING,
        }
    }
}

impl OracleOptions {
    pub fn size(s: usize) -> Self {
        OracleOptions {
            size_bound: Some(s),
            ..Self::default()
        }
    }

    pub fn count(k: usize) -> Self {
        OracleOptions {
            count_bound: Some(k),
            ..Self::default()
        }
    }
}

/// Best candidate so far: a comparable product and its labelling.
struct Best<P> {
    product: P,
    rgs: Vec<usize>,
}

/// Exhaustive search over all (bounded) partitions. Among optimal
/// partitions the one with the lexicographically least restricted growth
/// string wins.
pub fn brute_force_optimal(game: &HedonicGame, options: &OracleOptions) -> Result<SolveResult> {
    let n = game.agent_count();
    if options.size_bound == Some(0) || options.count_bound == Some(0) {
        return Err(Error::InvalidBound("bounds must be at least 1".into()));
    }
    if n > options.ceiling {
        return Err(Error::InstanceTooLarge {
            size: n,
            ceiling: options.ceiling,
        });
    }
    let mut rgs_iter = PartitionEnumerator::new(n, options.count_bound, options.size_bound);
    let best = match game.integer_matrix() {
        Some(values) => search_integer(n, &values, &mut rgs_iter),
        None => search_rational(game, &mut rgs_iter),
    };
    let best = best.ok_or(Error::NoFeasiblePartition)?;
    SolveResult::new(
        game,
        Partition::from_labels(&best),
        Method::Brute,
        Some(int(1)),
    )
}

fn search_integer(
    n: usize,
    values: &[i64],
    rgs_iter: &mut PartitionEnumerator,
) -> Option<Vec<usize>> {
    let mut best: Option<Best<BigInt>> = None;
    let mut utilities = vec![0i64; n];
    'outer: while let Some(rgs) = rgs_iter.next_rgs() {
        for i in 0..n {
            let row = &values[i * n..(i + 1) * n];
            let mut u = 0i64;
            for j in 0..n {
                if rgs[j] == rgs[i] {
                    u += row[j];
                }
            }
            if u < 0 {
                continue 'outer;
            }
            utilities[i] = u;
        }
        let product = if utilities.contains(&0) {
            BigInt::zero()
        } else {
            utilities.iter().fold(BigInt::one(), |acc, &u| acc * u)
        };
        if best.as_ref().is_none_or(|b| product > b.product) {
            best = Some(Best {
                product,
                rgs: rgs.to_vec(),
            });
        }
    }
    best.map(|b| b.rgs)
}

fn search_rational(game: &HedonicGame, rgs_iter: &mut PartitionEnumerator) -> Option<Vec<usize>> {
    let n = game.agent_count();
    let mut best: Option<Best<Rational>> = None;
    'outer: while let Some(rgs) = rgs_iter.next_rgs() {
        let partition = Partition::from_labels(rgs);
        let mut product = Rational::one();
        for i in 0..n {
            let u = utility(game, &partition, i);
            if u.is_negative() {
                continue 'outer;
            }
            product *= u;
        }
        if best.as_ref().is_none_or(|b| product > b.product) {
            best = Some(Best {
                product,
                rgs: rgs.to_vec(),
            });
        }
    }
    best.map(|b| b.rgs)
}
