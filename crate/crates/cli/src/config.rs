//! Run configuration: TOML with a `[network]` table, optional `[sweep]`.
//!
//! Gains are numbers, `"re,im"` pairs or polar `"mag∠deg"` (`"mag@deg"` is
//! accepted as an ASCII spelling).

use num_complex::Complex64;
use serde::Deserialize;

use relaygame::NetworkConfig;

use crate::error::{CliError, Result};

pub const DEFAULT_LP_T: usize = 400;
pub const DEFAULT_GRID: usize = relaygame::informed::DEFAULT_RESOLUTION;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    P1,
    P1NoCodebook,
    P2Noise,
    P2Codeword,
}

impl Problem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Problem::P1 => "p1",
            Problem::P1NoCodebook => "p1-nocodebook",
            Problem::P2Noise => "p2-noise",
            Problem::P2Codeword => "p2-codeword",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "p1" => Ok(Problem::P1),
            "p1-nocodebook" => Ok(Problem::P1NoCodebook),
            "p2-noise" => Ok(Problem::P2Noise),
            "p2-codeword" => Ok(Problem::P2Codeword),
            _ => Err(CliError::Config(format!(
                "unknown problem {s:?}; expected p1, p1-nocodebook, p2-noise or p2-codeword"
            ))),
        }
    }

    pub fn is_informed(&self) -> bool {
        matches!(self, Problem::P2Noise | Problem::P2Codeword)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    Sd,
    Rd,
    Se,
    Re,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainPart {
    Real,
    Imag,
    Magnitude,
    /// Degrees.
    Phase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Gain(Link, GainPart),
    PowerSource,
    PowerRelay,
    Noise,
}

impl SweepParam {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "P_S" => return Ok(SweepParam::PowerSource),
            "P_R" => return Ok(SweepParam::PowerRelay),
            "N0" => return Ok(SweepParam::Noise),
            _ => {}
        }
        let unknown = || {
            CliError::Config(format!(
                "unknown sweep parameter {s:?}; expected h_XY.real|imag|magnitude|phase (XY in SD, RD, SE, RE), P_S, P_R or N0"
            ))
        };
        let (link, part) = s.split_once('.').ok_or_else(unknown)?;
        let link = match link {
            "h_SD" => Link::Sd,
            "h_RD" => Link::Rd,
            "h_SE" => Link::Se,
            "h_RE" => Link::Re,
            _ => return Err(unknown()),
        };
        let part = match part {
            "real" => GainPart::Real,
            "imag" => GainPart::Imag,
            "magnitude" => GainPart::Magnitude,
            "phase" => GainPart::Phase,
            _ => return Err(unknown()),
        };
        Ok(SweepParam::Gain(link, part))
    }

    /// Copy of `net` with this parameter set to `v`.
    pub fn apply(&self, net: &NetworkConfig, v: f64) -> NetworkConfig {
        let mut out = *net;
        match *self {
            SweepParam::PowerSource => out.p_s = v,
            SweepParam::PowerRelay => out.p_r = v,
            SweepParam::Noise => out.n0 = v,
            SweepParam::Gain(link, part) => {
                let h = match link {
                    Link::Sd => &mut out.h_sd,
                    Link::Rd => &mut out.h_rd,
                    Link::Se => &mut out.h_se,
                    Link::Re => &mut out.h_re,
                };
                *h = match part {
                    GainPart::Real => Complex64::new(v, h.im),
                    GainPart::Imag => Complex64::new(h.re, v),
                    GainPart::Magnitude => Complex64::from_polar(v, h.arg()),
                    GainPart::Phase => Complex64::from_polar(h.norm(), v.to_radians()),
                };
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: String,
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n).map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub network: NetworkConfig,
    pub problem: Problem,
    pub lp_t: usize,
    pub grid_resolution: usize,
    pub mc_blocks: Option<u64>,
    pub seed: u64,
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum GainValue {
    Number(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetwork {
    #[serde(rename = "h_SD")]
    h_sd: GainValue,
    #[serde(rename = "h_RD")]
    h_rd: GainValue,
    #[serde(rename = "h_SE")]
    h_se: GainValue,
    #[serde(rename = "h_RE")]
    h_re: GainValue,
    #[serde(rename = "P_S")]
    p_s: f64,
    #[serde(rename = "P_R")]
    p_r: f64,
    #[serde(rename = "N0")]
    n0: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    parameter: String,
    start: f64,
    stop: f64,
    steps: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    problem: String,
    #[serde(rename = "lp_T")]
    lp_t: Option<usize>,
    grid_resolution: Option<usize>,
    mc_blocks: Option<u64>,
    seed: Option<u64>,
    network: RawNetwork,
    sweep: Option<RawSweep>,
    // sections a report adds; ignored so reports can be fed back in
    #[allow(dead_code)]
    result: Option<toml::Value>,
    #[allow(dead_code)]
    validation: Option<toml::Value>,
    #[allow(dead_code)]
    corners: Option<toml::Value>,
}

/// Parses a gain given as `"re,im"`, `"mag∠deg"`, `"mag@deg"` or a plain
/// real number.
pub fn parse_gain(s: &str) -> Result<Complex64> {
    let bad = |why: &str| CliError::Config(format!("cannot parse gain {s:?}: {why}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("expected a number"));
    let s = s.trim();
    let g = if let Some((m, d)) = s.split_once('∠').or_else(|| s.split_once('@')) {
        let mag = num(m)?;
        if mag < 0.0 {
            return Err(bad("negative magnitude"));
        }
        Complex64::from_polar(mag, num(d)?.to_radians())
    } else if let Some((re, im)) = s.split_once(',') {
        Complex64::new(num(re)?, num(im)?)
    } else {
        Complex64::new(num(s)?, 0.0)
    };
    if !(g.re.is_finite() && g.im.is_finite()) {
        return Err(bad("not finite"));
    }
    Ok(g)
}

/// Full-precision `"re,im"` text that [`parse_gain`] reads back exactly.
pub fn format_gain(g: Complex64) -> String {
    format!("{:?},{:?}", g.re, g.im)
}

fn gain(v: &GainValue) -> Result<Complex64> {
    match v {
        GainValue::Number(x) => Ok(Complex64::new(*x, 0.0)),
        GainValue::Text(s) => parse_gain(s),
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
        let n = &raw.network;
        let network = NetworkConfig::new(gain(&n.h_sd)?, gain(&n.h_rd)?, gain(&n.h_se)?, gain(&n.h_re)?, n.p_s, n.p_r, n.n0)?;
        let sweep = match raw.sweep {
            Some(s) => Some(SweepSpec { param: SweepParam::parse(&s.parameter)?, parameter: s.parameter, start: s.start, stop: s.stop, steps: s.steps }),
            None => None,
        };
        let cfg = RunConfig {
            network,
            problem: Problem::parse(&raw.problem)?,
            lp_t: raw.lp_t.unwrap_or(DEFAULT_LP_T),
            grid_resolution: raw.grid_resolution.unwrap_or(DEFAULT_GRID),
            mc_blocks: raw.mc_blocks,
            seed: raw.seed.unwrap_or(0),
            sweep,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lp_t < 2 {
            return Err(CliError::Config(format!("lp_T must be at least 2, got {}", self.lp_t)));
        }
        if self.grid_resolution < 3 {
            return Err(CliError::Config(format!("grid_resolution must be at least 3, got {}", self.grid_resolution)));
        }
        if let Some(s) = &self.sweep {
            if s.steps < 2 {
                return Err(CliError::Config(format!("sweep steps must be at least 2, got {}", s.steps)));
            }
            if !(s.start.is_finite() && s.stop.is_finite()) {
                return Err(CliError::Config("sweep bounds must be finite".into()));
            }
        }
        self.network.validate()?;
        Ok(())
    }

    /// The config as TOML; parsing it back yields an identical config.
    pub fn to_toml_table(&self) -> toml::Table {
        let mut t = toml::Table::new();
        t.insert("problem".into(), self.problem.as_str().into());
        t.insert("lp_T".into(), (self.lp_t as i64).into());
        t.insert("grid_resolution".into(), (self.grid_resolution as i64).into());
        if let Some(b) = self.mc_blocks {
            t.insert("mc_blocks".into(), (b as i64).into());
        }
        t.insert("seed".into(), (self.seed as i64).into());
        let n = &self.network;
        let mut net = toml::Table::new();
        for (k, g) in [("h_SD", n.h_sd), ("h_RD", n.h_rd), ("h_SE", n.h_se), ("h_RE", n.h_re)] {
            net.insert(k.into(), format_gain(g).into());
        }
        net.insert("P_S".into(), n.p_s.into());
        net.insert("P_R".into(), n.p_r.into());
        net.insert("N0".into(), n.n0.into());
        t.insert("network".into(), net.into());
        if let Some(s) = &self.sweep {
            let mut sw = toml::Table::new();
            sw.insert("parameter".into(), s.parameter.clone().into());
            sw.insert("start".into(), s.start.into());
            sw.insert("stop".into(), s.stop.into());
            sw.insert("steps".into(), (s.steps as i64).into());
            t.insert("sweep".into(), sw.into());
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = r#"
problem = "p1"
[network]
h_SD = 1
h_RD = "0.5"
h_SE = "0.6666666666666666,0"
h_RE = "0.6666666666666666∠0"
P_S = 10
P_R = 10
N0 = 1
"#;

    #[test]
    fn gain_formats() {
        assert_eq!(parse_gain("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_gain(" 0.4, -0.4 ").unwrap(), Complex64::new(0.4, -0.4));
        let p = parse_gain("2∠90").unwrap();
        assert!((p - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        assert_eq!(parse_gain("2@90").unwrap(), p);
        assert!(parse_gain("abc").is_err());
        assert!(parse_gain("-1∠0").is_err());
        let g = Complex64::new(0.1 + 0.2, -1.0 / 3.0);
        assert_eq!(parse_gain(&format_gain(g)).unwrap(), g);
    }

    #[test]
    fn defaults_and_round_trip() {
        let cfg = RunConfig::from_toml(REFERENCE).unwrap();
        assert_eq!(cfg.lp_t, 400);
        assert_eq!(cfg.grid_resolution, 201);
        assert_eq!(cfg.problem, Problem::P1);
        let again = RunConfig::from_toml(&toml::to_string(&cfg.to_toml_table()).unwrap()).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn rejections() {
        assert!(RunConfig::from_toml(&REFERENCE.replace("p1", "p3")).is_err());
        assert!(RunConfig::from_toml(&REFERENCE.replace("problem = \"p1\"", "problem = \"p1\"\nlp_T = 1")).is_err());
        assert!(RunConfig::from_toml(&REFERENCE.replace("problem = \"p1\"", "problem = \"p1\"\ngrid_resolution = 2")).is_err());
        assert!(RunConfig::from_toml(&REFERENCE.replace("P_S = 10", "P_S = -1")).is_err());
        assert!(RunConfig::from_toml(&REFERENCE.replace("N0", "N_0")).is_err());
        let bad_sweep = format!("{REFERENCE}\n[sweep]\nparameter = \"h_XX.real\"\nstart = 0\nstop = 1\nsteps = 5\n");
        assert!(RunConfig::from_toml(&bad_sweep).is_err());
        let short = format!("{REFERENCE}\n[sweep]\nparameter = \"h_RE.real\"\nstart = 0\nstop = 1\nsteps = 1\n");
        assert!(RunConfig::from_toml(&short).is_err());
    }

    #[test]
    fn sweep_parameters_apply() {
        let cfg = RunConfig::from_toml(REFERENCE).unwrap();
        let n = SweepParam::parse("h_RE.phase").unwrap().apply(&cfg.network, 180.0);
        assert!((n.h_re - Complex64::new(-2.0 / 3.0, 0.0)).norm() < 1e-15);
        let n = SweepParam::parse("h_RE.magnitude").unwrap().apply(&n, 1.0);
        assert!((n.h_re - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let n = SweepParam::parse("P_R").unwrap().apply(&n, 3.0);
        assert_eq!(n.p_r, 3.0);
    }
}
