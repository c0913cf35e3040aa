//! Driver behind the `relaygame` binary: config parsing, solver dispatch,
//! reports and sweep tables.

pub mod config;
pub mod error;
pub mod report;
pub mod sweep;

use relaygame::analytic::{self, EquilibriumReport};
use relaygame::informed::{self, InformedOutcome, ZKind};
use relaygame::montecarlo::{self, PlayStats};
use relaygame::regions::{corner_points, CornerPoints};
use relaygame::{compute_snrs, NetworkConfig};

pub use config::{Problem, RunConfig};
pub use error::{CliError, Result};

/// Environment variable holding the default number of worker threads.
pub const JOBS_ENV: &str = "RELAYGAME_JOBS";

/// Deviation-gap allowance on top of the method's error bound.
pub const AUDIT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Uninformed { corners: CornerPoints, report: EquilibriumReport },
    Informed { z_kind: ZKind, outcome: InformedOutcome },
}

impl Solution {
    pub fn value(&self) -> f64 {
        match self {
            Solution::Uninformed { report, .. } => report.value,
            Solution::Informed { outcome, .. } => outcome.value,
        }
    }
}

pub fn corners_of(net: &NetworkConfig) -> Result<CornerPoints> {
    Ok(corner_points(&compute_snrs(net)?))
}

pub fn solve_network(net: &NetworkConfig, problem: Problem, lp_t: usize, grid: usize) -> Result<Solution> {
    Ok(match problem {
        Problem::P1 => {
            let corners = corners_of(net)?;
            Solution::Uninformed { corners, report: analytic::solve_uninformed(&corners, lp_t)? }
        }
        Problem::P1NoCodebook => {
            let corners = corners_of(net)?;
            Solution::Uninformed { corners, report: analytic::solve_unknown_codebook(&corners)? }
        }
        Problem::P2Noise => {
            Solution::Informed { z_kind: ZKind::GaussianNoise, outcome: informed::solve_informed(net, ZKind::GaussianNoise, grid)? }
        }
        Problem::P2Codeword => Solution::Informed {
            z_kind: ZKind::StructuredCodeword,
            outcome: informed::solve_informed(net, ZKind::StructuredCodeword, grid)?,
        },
    })
}

pub fn solve(cfg: &RunConfig) -> Result<Solution> {
    solve_network(&cfg.network, cfg.problem, cfg.lp_t, cfg.grid_resolution)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Validation {
    /// Block simulation plus deviation audit of a mixed equilibrium.
    Played { stats: PlayStats, tolerance: f64, passed: bool },
    /// Informed policy: value recomputed from the reported noises.
    Recomputed { recomputed: f64, passed: bool },
}

impl Validation {
    pub fn passed(&self) -> bool {
        match self {
            Validation::Played { passed, .. } | Validation::Recomputed { passed, .. } => *passed,
        }
    }
}

pub fn validate(sol: &Solution, p_s: f64, blocks: u64, probes: usize, seed: u64) -> Validation {
    match sol {
        Solution::Uninformed { corners, report } => {
            let (src, jam) = (&report.source_strategy, &report.jammer_strategy);
            let mut stats = montecarlo::play(corners, src, jam, blocks.max(1), seed);
            let (gs, gj) = montecarlo::audit_deviations(corners, src, jam, report.value, probes.max(2), seed);
            stats.deviation_gap_source = Some(gs);
            stats.deviation_gap_jammer = Some(gj);
            let tolerance = AUDIT_TOL + report.error_bound;
            let mean_ok = (stats.empirical_mean - report.value).abs() <= 3.0 * stats.std_error + report.error_bound + 1e-12;
            let passed = mean_ok && gs <= tolerance && gj <= tolerance;
            Validation::Played { stats, tolerance, passed }
        }
        Solution::Informed { outcome, .. } => {
            let recomputed = informed::wiretap_rate(p_s, outcome.n_d_eff, outcome.n_e_eff);
            Validation::Recomputed { recomputed, passed: (recomputed - outcome.value).abs() <= 1e-9 }
        }
    }
}

/// Worker pool honoring an explicit job count, or rayon's default.
pub fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    b.build().map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))
}
