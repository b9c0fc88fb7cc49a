//! Timing and accuracy of every method on a fixed grid.

use std::fmt::Write as _;
use std::time::Instant;

use clap::ValueEnum;

use crate::error::{Error, Result};
use crate::gamma::{recip_gamma, MethodTag};
use crate::oracle::{gamma_lanczos, recip_gamma_product};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Lanczos,
    Product,
}

impl OracleKind {
    fn as_str(self) -> &'static str {
        match self {
            OracleKind::Lanczos => "lanczos",
            OracleKind::Product => "product",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub eps_rel: f64,
    pub method: MethodTag,
    pub mean_time_us: f64,
    pub mean_evaluations: f64,
    pub max_rel_err: f64,
    pub oracle: OracleKind,
}

/// `0.1, 0.3, ..., 9.9`.
pub fn bench_grid() -> Vec<f64> {
    (0..50).map(|i| 0.1 + 0.2 * i as f64).collect()
}

pub fn run_bench(eps_list: &[f64], oracle: OracleKind, terms: usize) -> Result<Vec<BenchRow>> {
    let grid = bench_grid();
    let reference: Vec<f64> = grid
        .iter()
        .map(|&z| match oracle {
            OracleKind::Lanczos => gamma_lanczos(z).map(|g| 1.0 / g),
            OracleKind::Product => Ok(recip_gamma_product(z, terms)),
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for &eps in eps_list {
        let cfg = QuadratureConfig::with_eps_rel(eps);
        cfg.validate()?;
        for method in MethodTag::ALL {
            let mut max_err = 0.0f64;
            let mut evaluations = 0usize;
            let start = Instant::now();
            for (&z, &want) in grid.iter().zip(&reference) {
                let v = recip_gamma(z, &cfg, method)?;
                evaluations += v.evaluations();
                max_err = max_err.max(((v.value - want) / want).abs());
            }
            let elapsed = start.elapsed().as_secs_f64();
            rows.push(BenchRow {
                eps_rel: eps,
                method,
                mean_time_us: elapsed * 1e6 / grid.len() as f64,
                mean_evaluations: evaluations as f64 / grid.len() as f64,
                max_rel_err: max_err,
                oracle,
            });
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument("no tolerances to benchmark".into()));
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut s = String::from("eps_rel,method,mean_time_us,mean_evaluations,max_rel_err,oracle\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{:e},{},{:.3},{:.1},{:.3e},{}",
            r.eps_rel,
            r.method,
            r.mean_time_us,
            r.mean_evaluations,
            r.max_rel_err,
            r.oracle.as_str()
        );
    }
    s
}
