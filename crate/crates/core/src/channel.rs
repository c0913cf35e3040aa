//! Physical-layer parameters of the four-node network and the received SNRs
//! derived from them.

use num_complex::Complex64;

use crate::error::{GameError, Result};

/// Channel gains, transmit powers and receiver noise level.
///
/// Both receivers see the same noise variance `n0`. Gains may be zero (absent
/// link); powers and noise must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkConfig {
    pub h_sd: Complex64,
    pub h_rd: Complex64,
    pub h_se: Complex64,
    pub h_re: Complex64,
    pub p_s: f64,
    pub p_r: f64,
    pub n0: f64,
}

impl NetworkConfig {
    pub fn new(
        h_sd: Complex64,
        h_rd: Complex64,
        h_se: Complex64,
        h_re: Complex64,
        p_s: f64,
        p_r: f64,
        n0: f64,
    ) -> Result<Self> {
        let cfg = NetworkConfig { h_sd, h_rd, h_se, h_re, p_s, p_r, n0 };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Real-valued gains, the common case in the numerical examples.
    pub fn real(h_sd: f64, h_rd: f64, h_se: f64, h_re: f64, p_s: f64, p_r: f64, n0: f64) -> Result<Self> {
        Self::new(
            Complex64::new(h_sd, 0.0),
            Complex64::new(h_rd, 0.0),
            Complex64::new(h_se, 0.0),
            Complex64::new(h_re, 0.0),
            p_s,
            p_r,
            n0,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, h) in [("h_SD", self.h_sd), ("h_RD", self.h_rd), ("h_SE", self.h_se), ("h_RE", self.h_re)] {
            if !(h.re.is_finite() && h.im.is_finite()) {
                return Err(GameError::InvalidConfig(format!("{name} is not finite")));
            }
        }
        for (name, v) in [("P_S", self.p_s), ("P_R", self.p_r), ("N_0", self.n0)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(GameError::InvalidConfig(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }
}

/// Received SNRs `gamma_kl = |h_kl|^2 P_k / N_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrSet {
    pub gamma_sd: f64,
    pub gamma_rd: f64,
    pub gamma_se: f64,
    pub gamma_re: f64,
}

impl SnrSet {
    /// Builds an SNR set directly, bypassing channel gains.
    pub fn new(gamma_sd: f64, gamma_rd: f64, gamma_se: f64, gamma_re: f64) -> Result<Self> {
        let s = SnrSet { gamma_sd, gamma_rd, gamma_se, gamma_re };
        for g in [gamma_sd, gamma_rd, gamma_se, gamma_re] {
            if !(g.is_finite() && g >= 0.0) {
                return Err(GameError::InvalidConfig(format!("SNR must be finite and non-negative, got {g}")));
            }
        }
        Ok(s)
    }
}

pub fn compute_snrs(cfg: &NetworkConfig) -> Result<SnrSet> {
    cfg.validate()?;
    let snr = |h: Complex64, p: f64| h.norm_sqr() * p / cfg.n0;
    SnrSet::new(
        snr(cfg.h_sd, cfg.p_s),
        snr(cfg.h_rd, cfg.p_r),
        snr(cfg.h_se, cfg.p_s),
        snr(cfg.h_re, cfg.p_r),
    )
}
