//! TOML reports. A report embeds its config, so it can be passed back to
//! `solve`.

use relaygame::regions::CornerPoints;
use relaygame::strategy::MixedStrategy;
use toml::{Table, Value};

use crate::config::{format_gain, RunConfig};
use crate::{Solution, Validation};

/// Rates rounded to 6 significant digits unless `precise`.
pub fn rate(x: f64, precise: bool) -> Value {
    Value::Float(round_sig(x, precise))
}

pub fn round_sig(x: f64, precise: bool) -> f64 {
    if precise || !x.is_finite() {
        x
    } else {
        format!("{x:.5e}").parse().unwrap_or(x)
    }
}

/// Text form used in CSV cells.
pub fn rate_text(x: f64, precise: bool) -> String {
    format!("{}", round_sig(x, precise))
}

fn strategy_table(s: &MixedStrategy, precise: bool) -> Table {
    let mut t = Table::new();
    t.insert("support".into(), Value::Array(vec![rate(s.support_lo, precise), rate(s.support_hi, precise)]));
    t.insert("pure".into(), s.is_pure().into());
    let atoms = s.atoms.iter().map(|a| Value::Array(vec![rate(a.location, precise), rate(a.mass, precise)])).collect();
    t.insert("atoms".into(), Value::Array(atoms));
    let segs = s
        .segments
        .iter()
        .map(|g| {
            let mut st = Table::new();
            st.insert("kind".into(), relaygame::strategy::ExpAffineSegment::TAG.into());
            for (k, v) in [("lo", g.lo), ("hi", g.hi), ("origin", g.origin), ("scale", g.scale), ("c0", g.c0), ("c1", g.c1), ("rate", g.rate)] {
                st.insert(k.into(), rate(v, precise));
            }
            Value::Table(st)
        })
        .collect();
    t.insert("segments".into(), Value::Array(segs));
    t
}

fn corners_table(cp: &CornerPoints, precise: bool) -> Table {
    let mut t = Table::new();
    for (prefix, r) in [("dest", &cp.dest), ("eaves", &cp.eaves)] {
        let mut s = Table::new();
        s.insert("src_max".into(), rate(r.src_max, precise));
        s.insert("relay_at_src_max".into(), rate(r.relay_at_src_max, precise));
        s.insert("src_relay_as_noise".into(), rate(r.src_relay_as_noise, precise));
        s.insert("relay_max".into(), rate(r.relay_max, precise));
        s.insert("sum".into(), rate(r.sum, precise));
        t.insert(prefix.into(), s.into());
    }
    t
}

fn result_table(sol: &Solution, precise: bool) -> Table {
    let mut t = Table::new();
    t.insert("value".into(), rate(sol.value(), precise));
    match sol {
        Solution::Uninformed { report, .. } => {
            t.insert("method".into(), report.method.as_str().into());
            t.insert("error_bound".into(), rate(report.error_bound, precise));
            if let Some(c) = report.case {
                t.insert("case".into(), c.as_str().into());
            }
            let pure = report.source_strategy.is_pure() && report.jammer_strategy.is_pure();
            t.insert("equilibrium".into(), if pure { "pure" } else { "mixed" }.into());
            t.insert("non_unique".into(), report.non_unique.into());
            if let Some(it) = report.lp_iterations {
                t.insert("lp_iterations".into(), (it as i64).into());
            }
            t.insert("source_strategy".into(), strategy_table(&report.source_strategy, precise).into());
            t.insert("jammer_strategy".into(), strategy_table(&report.jammer_strategy, precise).into());
        }
        Solution::Informed { z_kind, outcome } => {
            let method = match z_kind {
                relaygame::informed::ZKind::GaussianNoise => relaygame::Method::InformedNoise,
                relaygame::informed::ZKind::StructuredCodeword => relaygame::Method::InformedCodeword,
            };
            t.insert("method".into(), method.as_str().into());
            t.insert("error_bound".into(), rate(0.0, precise));
            t.insert("z_kind".into(), z_kind.as_str().into());
            t.insert("special_case".into(), outcome.special_case.as_str().into());
            let rho = if precise {
                format_gain(outcome.policy.rho)
            } else {
                format!("{},{}", round_sig(outcome.policy.rho.re, false), round_sig(outcome.policy.rho.im, false))
            };
            t.insert("rho".into(), rho.into());
            t.insert("N_Z".into(), rate(outcome.policy.n_z, precise));
            t.insert("N_D_eff".into(), rate(outcome.n_d_eff, precise));
            t.insert("N_E_eff".into(), rate(outcome.n_e_eff, precise));
            if let Some(rz) = outcome.rz_max {
                t.insert("R_Z_max".into(), rate(rz.bound, precise));
                t.insert("R_Z_feasible".into(), rz.feasible.into());
            }
        }
    }
    t
}

fn validation_table(v: &Validation, precise: bool) -> Table {
    let mut t = Table::new();
    t.insert("passed".into(), v.passed().into());
    match v {
        Validation::Played { stats, tolerance, .. } => {
            t.insert("rng".into(), relaygame::montecarlo::RNG_ALGORITHM.into());
            t.insert("blocks".into(), (stats.blocks as i64).into());
            t.insert("empirical_mean".into(), rate(stats.empirical_mean, precise));
            t.insert("std_error".into(), rate(stats.std_error, precise));
            t.insert("mean_source_rate".into(), rate(stats.mean_source_rate, precise));
            if let Some(g) = stats.deviation_gap_source {
                t.insert("deviation_gap_source".into(), rate(g, precise));
            }
            if let Some(g) = stats.deviation_gap_jammer {
                t.insert("deviation_gap_jammer".into(), rate(g, precise));
            }
            t.insert("gap_tolerance".into(), rate(*tolerance, precise));
        }
        Validation::Recomputed { recomputed, .. } => {
            t.insert("recomputed_value".into(), rate(*recomputed, precise));
        }
    }
    t
}

pub fn render(cfg: &RunConfig, sol: &Solution, validation: Option<&Validation>, precise: bool) -> String {
    let mut doc = cfg.to_toml_table();
    if let Solution::Uninformed { corners, .. } = sol {
        doc.insert("corners".into(), corners_table(corners, precise).into());
    }
    doc.insert("result".into(), result_table(sol, precise).into());
    if let Some(v) = validation {
        doc.insert("validation".into(), validation_table(v, precise).into());
    }
    toml::to_string(&doc).expect("report tables serialize")
}

/// `player,rate,cdf` rows for both strategies.
pub fn write_cdf_csv<W: std::io::Write>(sol: &Solution, points: usize, w: W) -> crate::Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(["player", "rate", "cdf"])?;
    if let Solution::Uninformed { report, .. } = sol {
        for (name, s) in [("source", &report.source_strategy), ("jammer", &report.jammer_strategy)] {
            for (r, f) in s.cdf_table(points) {
                out.write_record([name.to_string(), format!("{r}"), format!("{f}")])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// `curve,index,xi,eta` rows: both boundary polylines and, when non-empty,
/// the reduced rectangle.
pub fn write_regions_csv<W: std::io::Write>(cp: &CornerPoints, w: W) -> crate::Result<()> {
    let mut out = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    out.write_record(["curve", "index", "xi", "eta"])?;
    let top = cp.dest.relay_max.max(cp.eaves.relay_max) * 1.1;
    let mut curves = vec![("destination", cp.dest.polyline(top)), ("eavesdropper", cp.eaves.polyline(top))];
    if let Ok(rg) = relaygame::reduction::reduce(cp) {
        let r = rg.rect();
        curves.push((
            "reduced_rectangle",
            vec![(r.xi_lo, r.eta_lo), (r.xi_hi, r.eta_lo), (r.xi_hi, r.eta_hi), (r.xi_lo, r.eta_hi), (r.xi_lo, r.eta_lo)],
        ));
    }
    for (name, pts) in curves {
        for (i, (xi, eta)) in pts.into_iter().enumerate() {
            out.write_record([name.to_string(), i.to_string(), format!("{xi}"), format!("{eta}")])?;
        }
    }
    out.flush()?;
    Ok(())
}
