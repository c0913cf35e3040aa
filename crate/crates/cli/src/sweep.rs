//! Parameter sweeps producing one CSV row per point.

use rayon::prelude::*;
use relaygame::informed::{self, PolicySlice, ZKind};
use relaygame::NetworkConfig;

use crate::config::{Problem, RunConfig};
use crate::error::{CliError, Result};
use crate::report::rate_text;
use crate::solve_network;

/// Bumped whenever columns change.
pub const SCHEMA_VERSION: u32 = 1;

pub const HEADER: [&str; 13] = [
    "schema",
    "index",
    "parameter",
    "x",
    "p1",
    "p1_method",
    "p1_case",
    "p1_nocodebook",
    "p2_noise",
    "p2_codeword",
    "xr_z_noise",
    "xr_z_codeword",
    "xr_rho_xs",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub index: usize,
    pub x: f64,
    pub p1: f64,
    pub p1_method: String,
    pub p1_case: String,
    pub p1_nocodebook: f64,
    pub p2_noise: f64,
    pub p2_codeword: f64,
    /// Restricted policies; computed when the config's problem is informed.
    pub xr_z_noise: Option<f64>,
    pub xr_z_codeword: Option<f64>,
    pub xr_rho_xs: Option<f64>,
}

fn point(cfg: &RunConfig, index: usize, x: f64, net: &NetworkConfig) -> Result<SweepRow> {
    let (t, g) = (cfg.lp_t, cfg.grid_resolution);
    let p1 = solve_network(net, Problem::P1, t, g)?;
    let (p1_method, p1_case) = match &p1 {
        crate::Solution::Uninformed { report, .. } => {
            (report.method.as_str().to_string(), report.case.map(|c| c.as_str().to_string()).unwrap_or_default())
        }
        crate::Solution::Informed { .. } => unreachable!("p1 is uninformed"),
    };
    let nocb = solve_network(net, Problem::P1NoCodebook, t, g)?.value();
    let p2_noise = solve_network(net, Problem::P2Noise, t, g)?.value();
    let p2_codeword = solve_network(net, Problem::P2Codeword, t, g)?.value();
    let (mut xz_n, mut xz_c, mut xr) = (None, None, None);
    if cfg.problem.is_informed() {
        xz_n = Some(informed::grid_minimize(net, ZKind::GaussianNoise, g, PolicySlice::RhoZero)?.value);
        xz_c = Some(informed::grid_minimize(net, ZKind::StructuredCodeword, g, PolicySlice::RhoZero)?.value);
        xr = Some(informed::grid_minimize(net, ZKind::GaussianNoise, g, PolicySlice::NoiseZero)?.value);
    }
    Ok(SweepRow {
        index,
        x,
        p1: p1.value(),
        p1_method,
        p1_case,
        p1_nocodebook: nocb,
        p2_noise,
        p2_codeword,
        xr_z_noise: xz_n,
        xr_z_codeword: xz_c,
        xr_rho_xs: xr,
    })
}

/// Evaluates every sweep point on `pool`; rows come back in sweep order.
pub fn run_sweep(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Vec<SweepRow>> {
    let spec = cfg.sweep.as_ref().ok_or_else(|| CliError::Config("config has no [sweep] table".into()))?;
    let points = spec.points();
    pool.install(|| {
        points
            .par_iter()
            .enumerate()
            .map(|(i, &x)| {
                let net = spec.param.apply(&cfg.network, x);
                net.validate()?;
                point(cfg, i, x, &net)
            })
            .collect()
    })
}

pub fn write_csv<W: std::io::Write>(cfg: &RunConfig, rows: &[SweepRow], precise: bool, w: W) -> Result<()> {
    let param = cfg.sweep.as_ref().map(|s| s.parameter.as_str()).unwrap_or("");
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(HEADER)?;
    let opt = |v: Option<f64>| v.map(|v| rate_text(v, precise)).unwrap_or_default();
    for r in rows {
        out.write_record([
            SCHEMA_VERSION.to_string(),
            r.index.to_string(),
            param.to_string(),
            format!("{}", r.x),
            rate_text(r.p1, precise),
            r.p1_method.clone(),
            r.p1_case.clone(),
            rate_text(r.p1_nocodebook, precise),
            rate_text(r.p2_noise, precise),
            rate_text(r.p2_codeword, precise),
            opt(r.xr_z_noise),
            opt(r.xr_z_codeword),
            opt(r.xr_rho_xs),
        ])?;
    }
    out.flush()?;
    Ok(())
}
