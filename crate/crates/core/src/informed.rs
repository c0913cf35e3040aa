//! Informed relay: the relay knows the source codeword and transmits
//! `X_R = rho X_S + Z`, choosing `(rho, N_Z)` to minimize the wiretap
//! secrecy rate.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channel::NetworkConfig;
use crate::error::{GameError, Result};

/// Squared combined gains below this count as exact cancellation.
pub const CANCELLATION_TOL: f64 = 1e-15;

/// Default per-axis grid resolution.
pub const DEFAULT_RESOLUTION: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZKind {
    GaussianNoise,
    StructuredCodeword,
}

impl ZKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZKind::GaussianNoise => "gaussian-noise",
            ZKind::StructuredCodeword => "structured-codeword",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JammerPolicy {
    pub rho: Complex64,
    pub n_z: f64,
    pub z_kind: ZKind,
}

impl JammerPolicy {
    pub fn silent(z_kind: ZKind) -> Self {
        JammerPolicy { rho: Complex64::new(0.0, 0.0), n_z: 0.0, z_kind }
    }

    /// Power used by the policy, `|rho|^2 P_S + N_Z`.
    pub fn power(&self, p_s: f64) -> f64 {
        self.rho.norm_sqr() * p_s + self.n_z
    }

    pub fn is_feasible(&self, cfg: &NetworkConfig) -> bool {
        self.n_z >= 0.0 && self.power(cfg.p_s) <= cfg.p_r * (1.0 + 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    Silent,
    Cancel,
    NoiseOnly,
    None,
}

impl SpecialCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpecialCase::Silent => "silent",
            SpecialCase::Cancel => "cancel",
            SpecialCase::NoiseOnly => "noise-only",
            SpecialCase::None => "none",
        }
    }
}

/// Upper limit on the dummy-codeword rate so the eavesdropper can decode it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RzMax {
    pub bound: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InformedOutcome {
    pub value: f64,
    pub policy: JammerPolicy,
    pub n_d_eff: f64,
    pub n_e_eff: f64,
    /// Structured variant only. When infeasible with `N_Z > 0`, `n_e_eff`
    /// holds the noise the eavesdropper sees treating `Z` as noise.
    pub rz_max: Option<RzMax>,
    pub special_case: SpecialCase,
}

fn noise_over_gain(numerator: f64, gain: Complex64) -> f64 {
    let g = gain.norm_sqr();
    if g < CANCELLATION_TOL {
        f64::INFINITY
    } else {
        numerator / g
    }
}

fn gaussian_eaves_noise(cfg: &NetworkConfig, rho: Complex64, n_z: f64) -> f64 {
    noise_over_gain(cfg.h_re.norm_sqr() * n_z + cfg.n0, cfg.h_se + cfg.h_re * rho)
}

/// Effective noise variances at destination and eavesdropper after each
/// rescales its received signal by the combined source gain.
pub fn effective_noises(cfg: &NetworkConfig, pol: &JammerPolicy) -> (f64, f64) {
    let n_d = noise_over_gain(cfg.h_rd.norm_sqr() * pol.n_z + cfg.n0, cfg.h_sd + cfg.h_rd * pol.rho);
    let n_e = match pol.z_kind {
        ZKind::GaussianNoise => gaussian_eaves_noise(cfg, pol.rho, pol.n_z),
        // the eavesdropper decodes and strips the dummy codeword
        ZKind::StructuredCodeword => noise_over_gain(cfg.n0, cfg.h_se + cfg.h_re * pol.rho),
    };
    (n_d, n_e)
}

fn rate(p_s: f64, noise: f64) -> f64 {
    if noise.is_infinite() {
        0.0
    } else {
        (p_s / noise).ln_1p() / std::f64::consts::LN_2
    }
}

/// `[log2(1 + P_S/N_D) - log2(1 + P_S/N_E)]^+`.
pub fn wiretap_rate(p_s: f64, n_d: f64, n_e: f64) -> f64 {
    (rate(p_s, n_d) - rate(p_s, n_e)).max(0.0)
}

pub fn secrecy_rate(cfg: &NetworkConfig, pol: &JammerPolicy) -> f64 {
    let (n_d, n_e) = effective_noises(cfg, pol);
    wiretap_rate(cfg.p_s, n_d, n_e)
}

/// `log2(|h_RE|^2 N_Z / (N_0 + |h_SE + h_RE rho|^2 P_S))`; infeasible when
/// not positive.
pub fn rz_max(cfg: &NetworkConfig, pol: &JammerPolicy) -> RzMax {
    let interference = cfg.n0 + (cfg.h_se + cfg.h_re * pol.rho).norm_sqr() * cfg.p_s;
    let bound = (cfg.h_re.norm_sqr() * pol.n_z / interference).log2();
    RzMax { bound, feasible: bound > 0.0 }
}

/// Secrecy rate as the grid search scores it: in the structured variant an
/// undecodable dummy codeword is treated as noise by the eavesdropper.
pub fn grid_rate(cfg: &NetworkConfig, pol: &JammerPolicy) -> f64 {
    let (n_d, n_e) = scored_noises(cfg, pol);
    wiretap_rate(cfg.p_s, n_d, n_e)
}

/// Effective noises with the undecodable-codeword fallback applied.
pub fn scored_noises(cfg: &NetworkConfig, pol: &JammerPolicy) -> (f64, f64) {
    let (n_d, n_e) = effective_noises(cfg, pol);
    if pol.z_kind == ZKind::StructuredCodeword && pol.n_z > 0.0 && !rz_max(cfg, pol).feasible {
        return (n_d, gaussian_eaves_noise(cfg, pol.rho, pol.n_z));
    }
    (n_d, n_e)
}

fn outcome(cfg: &NetworkConfig, policy: JammerPolicy, value: f64, special_case: SpecialCase) -> InformedOutcome {
    let (n_d_eff, n_e_eff) = scored_noises(cfg, &policy);
    let rz = match policy.z_kind {
        ZKind::StructuredCodeword => Some(rz_max(cfg, &policy)),
        ZKind::GaussianNoise => None,
    };
    InformedOutcome { value, policy, n_d_eff, n_e_eff, rz_max: rz, special_case }
}

/// Closed-form optima that drive the secrecy rate to zero.
///
/// In the structured variant the noise-only case is reported only when the
/// eavesdropper can actually decode the dummy codeword at the chosen `N_Z`.
pub fn check_special_cases(cfg: &NetworkConfig, z_kind: ZKind) -> Option<InformedOutcome> {
    let sd = cfg.h_sd.norm_sqr();
    let se = cfg.h_se.norm_sqr();
    let rd = cfg.h_rd.norm_sqr();
    let re = cfg.h_re.norm_sqr();

    if se >= sd {
        let pol = JammerPolicy::silent(z_kind);
        return Some(outcome(cfg, pol, secrecy_rate(cfg, &pol), SpecialCase::Silent));
    }
    if rd > 0.0 && rd * cfg.p_r >= cfg.p_s * sd {
        let pol = JammerPolicy { rho: -cfg.h_sd / cfg.h_rd, n_z: 0.0, z_kind };
        return Some(outcome(cfg, pol, secrecy_rate(cfg, &pol), SpecialCase::Cancel));
    }
    let n_star = match z_kind {
        ZKind::GaussianNoise => {
            let den = rd * se - sd * re;
            if den <= 0.0 {
                return None;
            }
            cfg.n0 * (sd - se) / den
        }
        ZKind::StructuredCodeword => {
            let den = se * rd;
            if den <= 0.0 {
                return None;
            }
            cfg.n0 * (sd - se) / den
        }
    };
    if n_star > cfg.p_r {
        return None;
    }
    let pol = JammerPolicy { rho: Complex64::new(0.0, 0.0), n_z: n_star, z_kind };
    if z_kind == ZKind::StructuredCodeword && !rz_max(cfg, &pol).feasible {
        return None;
    }
    Some(outcome(cfg, pol, secrecy_rate(cfg, &pol), SpecialCase::NoiseOnly))
}

/// Which part of the policy set the grid search covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicySlice {
    Full,
    /// `X_R = Z`: pure jamming, `rho = 0`.
    RhoZero,
    /// `X_R = rho X_S`: pure forwarding, `N_Z = 0`.
    NoiseZero,
}

/// Grid point `i / (n - 1)` scaled to `[0, max]`.
fn axis(i: usize, n: usize, max: f64) -> f64 {
    max * i as f64 / (n - 1) as f64
}

/// Exhaustive search over `|rho|`, `theta` and `w = N_Z / P_S`, each on
/// `resolution` points. Refining `n -> 2n - 1` nests the grids, so the
/// reported minimum never increases.
pub fn grid_minimize(
    cfg: &NetworkConfig,
    z_kind: ZKind,
    resolution: usize,
    slice: PolicySlice,
) -> Result<InformedOutcome> {
    if resolution < 3 {
        return Err(GameError::InvalidResolution { got: resolution, min: 3 });
    }
    cfg.validate()?;
    let n = resolution;
    let ratio = cfg.p_r / cfg.p_s;
    let rho_max = ratio.sqrt();
    let (n_mag, n_theta, n_w) = match slice {
        PolicySlice::Full => (n, n - 1, n),
        PolicySlice::RhoZero => (1, 1, n),
        PolicySlice::NoiseZero => (n, n - 1, 1),
    };

    let policy_at = |i: usize, j: usize, k: usize| {
        let mag = axis(i, n, rho_max);
        let theta = axis(j, n, TAU);
        let w_max = (ratio - mag * mag).max(0.0);
        JammerPolicy { rho: Complex64::from_polar(mag, theta), n_z: axis(k, n, w_max) * cfg.p_s, z_kind }
    };

    // (value, i, j, k): lexicographic order gives the tie-breaking rule
    let best = (0..n_mag * n_theta)
        .into_par_iter()
        .map(|ij| {
            let (i, j) = (ij / n_theta, ij % n_theta);
            let mut best = (f64::INFINITY, i, j, 0);
            if i == 0 && j > 0 {
                // theta is irrelevant at rho = 0
                return best;
            }
            for k in 0..n_w {
                let v = grid_rate(cfg, &policy_at(i, j, k));
                if v < best.0 {
                    best = (v, i, j, k);
                }
            }
            best
        })
        .reduce(
            || (f64::INFINITY, usize::MAX, usize::MAX, usize::MAX),
            |a, b| {
                let ka = (a.1, a.2, a.3);
                let kb = (b.1, b.2, b.3);
                match a.0.total_cmp(&b.0) {
                    std::cmp::Ordering::Less => a,
                    std::cmp::Ordering::Greater => b,
                    std::cmp::Ordering::Equal => {
                        if ka <= kb {
                            a
                        } else {
                            b
                        }
                    }
                }
            },
        );
    let pol = policy_at(best.1, best.2, best.3);
    Ok(outcome(cfg, pol, best.0, SpecialCase::None))
}

/// Special cases first, grid search otherwise.
pub fn solve_informed(cfg: &NetworkConfig, z_kind: ZKind, resolution: usize) -> Result<InformedOutcome> {
    if let Some(o) = check_special_cases(cfg, z_kind) {
        return Ok(o);
    }
    grid_minimize(cfg, z_kind, resolution, PolicySlice::Full)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn noise_only_cfg() -> NetworkConfig {
        NetworkConfig::real(1.0, 0.8, 0.5, 0.1, 10.0, 10.0, 1.0).unwrap()
    }

    #[test]
    fn silent_relay_is_plain_wiretap() {
        let cfg = noise_only_cfg();
        let (nd, ne) = effective_noises(&cfg, &JammerPolicy::silent(ZKind::GaussianNoise));
        assert!((nd - 1.0).abs() < 1e-15);
        assert!((ne - 4.0).abs() < 1e-15);
    }

    #[test]
    fn cancellation_gives_infinite_noise() {
        let cfg = NetworkConfig::real(1.0, 1.0, 0.5, 0.3, 10.0, 10.0, 1.0).unwrap();
        let pol = JammerPolicy { rho: c(-1.0, 0.0), n_z: 0.0, z_kind: ZKind::GaussianNoise };
        let (nd, _) = effective_noises(&cfg, &pol);
        assert!(nd.is_infinite());
        assert_eq!(secrecy_rate(&cfg, &pol), 0.0);
    }

    #[test]
    fn gaussian_noise_only_balances_receivers() {
        let cfg = noise_only_cfg();
        let pol = JammerPolicy { rho: c(0.0, 0.0), n_z: 5.0, z_kind: ZKind::GaussianNoise };
        let (nd, ne) = effective_noises(&cfg, &pol);
        assert!((nd - 4.2).abs() < 1e-12 && (ne - 4.2).abs() < 1e-12);
        assert_eq!(secrecy_rate(&cfg, &pol), 0.0);
        let o = check_special_cases(&cfg, ZKind::GaussianNoise).unwrap();
        assert_eq!(o.special_case, SpecialCase::NoiseOnly);
        assert!((o.policy.n_z - 5.0).abs() < 1e-12);
    }

    #[test]
    fn structured_noise_only() {
        let cfg = NetworkConfig::real(1.0, 0.8, 0.5, 1.0, 10.0, 10.0, 1.0).unwrap();
        let o = check_special_cases(&cfg, ZKind::StructuredCodeword).unwrap();
        assert_eq!(o.special_case, SpecialCase::NoiseOnly);
        assert!((o.policy.n_z - 4.6875).abs() < 1e-12);
        assert!((o.n_d_eff - 4.0).abs() < 1e-12 && (o.n_e_eff - 4.0).abs() < 1e-12);
        assert!(o.rz_max.unwrap().feasible);
        assert_eq!(o.value, 0.0);
    }

    #[test]
    fn structured_noise_only_needs_decodable_dummy() {
        // same N_Z*, but |h_RE| too weak for the eavesdropper to decode Z
        assert!(check_special_cases(&noise_only_cfg(), ZKind::StructuredCodeword).is_none());
    }

    #[test]
    fn rz_bounds() {
        let cfg = noise_only_cfg();
        let r = rz_max(&cfg, &JammerPolicy::silent(ZKind::StructuredCodeword));
        assert!(!r.feasible && r.bound == f64::NEG_INFINITY);
        // |h_RE|^2 N_Z = N_0 + |h_SE|^2 P_S
        let cfg = NetworkConfig::real(1.0, 0.8, 0.5, 1.0, 10.0, 10.0, 1.0).unwrap();
        let pol = JammerPolicy { rho: c(0.0, 0.0), n_z: 3.5, z_kind: ZKind::StructuredCodeword };
        let r = rz_max(&cfg, &pol);
        assert!(r.bound.abs() < 1e-12 && !r.feasible);
    }

    #[test]
    fn rz_grows_like_twice_log_gain() {
        let pol = JammerPolicy { rho: c(0.0, 0.0), n_z: 2.0, z_kind: ZKind::StructuredCodeword };
        let at = |h: f64| rz_max(&NetworkConfig::real(1.0, 0.8, 0.5, h, 10.0, 10.0, 1.0).unwrap(), &pol).bound;
        assert!(((at(2000.0) - at(1000.0)) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn special_case_flags() {
        let cfg = NetworkConfig::real(1.0, 0.3, 1.0, 0.3, 10.0, 10.0, 1.0).unwrap();
        assert_eq!(check_special_cases(&cfg, ZKind::GaussianNoise).unwrap().special_case, SpecialCase::Silent);
        let cfg = NetworkConfig::new(c(0.6, 0.8), c(0.0, 1.0), c(0.3, 0.0), c(0.2, 0.0), 10.0, 10.0, 1.0).unwrap();
        let o = check_special_cases(&cfg, ZKind::GaussianNoise).unwrap();
        assert_eq!(o.special_case, SpecialCase::Cancel);
        assert!((o.policy.rho - c(-0.8, 0.6)).norm() < 1e-12);
        assert_eq!(o.value, 0.0);
    }

    #[test]
    fn grid_finds_noise_only_zero() {
        let o = grid_minimize(&noise_only_cfg(), ZKind::GaussianNoise, 21, PolicySlice::Full).unwrap();
        assert!(o.value < 1e-2, "{}", o.value);
    }

    #[test]
    fn slices_upper_bound_full() {
        let cfg = NetworkConfig::new(c(1.0, 0.0), c(0.2, -0.2), c(0.4, 0.4), c(0.5, 0.0), 10.0, 10.0, 1.0).unwrap();
        for kind in [ZKind::GaussianNoise, ZKind::StructuredCodeword] {
            let full = grid_minimize(&cfg, kind, 31, PolicySlice::Full).unwrap().value;
            let rz = grid_minimize(&cfg, kind, 31, PolicySlice::RhoZero).unwrap();
            let nz = grid_minimize(&cfg, kind, 31, PolicySlice::NoiseZero).unwrap();
            assert!(full <= rz.value && full <= nz.value);
            assert_eq!(rz.policy.rho, c(0.0, 0.0));
            assert_eq!(nz.policy.n_z, 0.0);
        }
    }

    #[test]
    fn refinement_never_increases() {
        let cfg = NetworkConfig::new(c(1.0, 0.0), c(0.2, -0.2), c(0.4, 0.4), c(0.3, 0.1), 10.0, 10.0, 1.0).unwrap();
        let mut last = f64::INFINITY;
        for n in [5, 9, 17, 33] {
            let v = grid_minimize(&cfg, ZKind::GaussianNoise, n, PolicySlice::Full).unwrap().value;
            assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn resolution_checked() {
        assert!(matches!(
            grid_minimize(&noise_only_cfg(), ZKind::GaussianNoise, 2, PolicySlice::Full),
            Err(GameError::InvalidResolution { got: 2, min: 3 })
        ));
    }
}
