//! Empirical approximation ratios of the solvers against the oracle on
//! seeded random corpora.

use crate::error::{Error, Result};
use crate::game::GameClass;
use crate::rational::{format_rational, int, Rational};
use crate::reductions::random_game;
use crate::solve::{
    brute_force_optimal, solve, Method, OracleOptions, SolveResult, DEFAULT_ORACLE_CEILING,
};
use crate::welfare::{check_approximation, empirical_ratio};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: GameClass,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub p: f64,
    pub methods: Vec<Method>,
    /// Size bound for `aeg-size-approx`.
    pub size_bound: Option<usize>,
    pub ceiling: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            family: GameClass::Aeg,
            n: 8,
            count: 100,
            seed: 0,
            p: 0.5,
            methods: vec![Method::AegApprox],
            size_bound: None,
            ceiling: DEFAULT_ORACLE_CEILING,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub seed: u64,
    pub index: usize,
    pub n: usize,
    pub class: String,
    pub method: Method,
    /// `None` when no feasible partition exists under the method's bounds.
    pub product_alg: Option<String>,
    pub product_opt: Option<String>,
    pub guarantee: Option<String>,
    pub ratio_bound_holds: bool,
    pub empirical_ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Largest empirical ratio over all rows; 1 for an empty report.
    pub worst_ratio: f64,
    pub all_bounds_hold: bool,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,index,n,class,method,product_alg,product_opt,guarantee,ratio_bound_holds,empirical_ratio\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.seed,
                r.index,
                r.n,
                r.class,
                r.method,
                r.product_alg.as_deref().unwrap_or("infeasible"),
                r.product_opt.as_deref().unwrap_or("infeasible"),
                r.guarantee.as_deref().unwrap_or(""),
                r.ratio_bound_holds,
                r.empirical_ratio
            ));
        }
        out
    }
}

fn oracle_options(method: Method, size_bound: Option<usize>, ceiling: usize) -> OracleOptions {
    let (size_bound, count_bound) = match method {
        Method::SizeTwo => (Some(2), None),
        Method::TwoCoalitions => (None, Some(2)),
        Method::AegSizeApprox => (size_bound, None),
        _ => (None, None),
    };
    OracleOptions {
        size_bound,
        count_bound,
        ceiling,
    }
}

fn feasible(r: Result<SolveResult>) -> Result<Option<SolveResult>> {
    match r {
        Ok(r) => Ok(Some(r)),
        Err(Error::NoFeasiblePartition) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs every method on `count` random games seeded `seed, seed+1, ...`
/// and compares each result with the correspondingly bounded oracle.
pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    if config.count > 0 && config.n > config.ceiling {
        return Err(Error::InstanceTooLarge {
            size: config.n,
            ceiling: config.ceiling,
        });
    }
    let mut rows = Vec::new();
    for index in 0..config.count {
        let seed = config.seed.wrapping_add(index as u64);
        let game = random_game(&config.family, config.n, config.p, seed, None, true)?;
        for &method in &config.methods {
            let alg = feasible(solve(
                &game,
                method,
                config.size_bound,
                None,
                config.ceiling,
            ))?;
            let opt = feasible(brute_force_optimal(
                &game,
                &oracle_options(method, config.size_bound, config.ceiling),
            ))?;
            let (holds, ratio, guarantee) = match (&alg, &opt) {
                (Some(a), Some(o)) => {
                    let alpha: Rational = a.guarantee.clone().unwrap_or_else(|| int(1));
                    (
                        check_approximation(&a.welfare, &o.welfare, &alpha)?,
                        empirical_ratio(&a.welfare, &o.welfare),
                        a.guarantee.clone(),
                    )
                }
                (None, None) => (true, 1.0, None),
                _ => (false, f64::INFINITY, None),
            };
            rows.push(BenchRow {
                seed,
                index,
                n: config.n,
                class: config.family.name().to_string(),
                method,
                product_alg: alg.as_ref().map(|r| format_rational(r.welfare.product())),
                product_opt: opt.as_ref().map(|r| format_rational(r.welfare.product())),
                guarantee: guarantee.as_ref().map(format_rational),
                ratio_bound_holds: holds,
                empirical_ratio: ratio,
            });
        }
    }
    let worst_ratio = rows.iter().map(|r| r.empirical_ratio).fold(1.0, f64::max);
    let all_bounds_hold = rows.iter().all(|r| r.ratio_bound_holds);
    Ok(BenchReport {
        rows,
        worst_ratio,
        all_bounds_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = run_bench(&BenchConfig {
            count: 0,
            ..BenchConfig::default()
        })
        .unwrap();
        assert!(r.rows.is_empty());
        assert!(r.all_bounds_hold);
        assert_eq!(r.to_csv().lines().count(), 1);
    }

    #[test]
    fn small_aeg_corpus() {
        let cfg = BenchConfig {
            n: 6,
            count: 10,
            ..BenchConfig::default()
        };
        let r = run_bench(&cfg).unwrap();
        assert_eq!(r.rows.len(), 10);
        assert!(r.all_bounds_hold);
        assert_eq!(run_bench(&cfg).unwrap(), r);
    }

    #[test]
    fn ceiling_enforced() {
        let cfg = BenchConfig {
            n: 13,
            count: 1,
            ..BenchConfig::default()
        };
        assert!(matches!(
            run_bench(&cfg),
            Err(Error::InstanceTooLarge { .. })
        ));
    }
}
