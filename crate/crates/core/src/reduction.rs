//! Iterated elimination of dominated rates, shrinking the uninformed game to
//! a rectangle of surviving strategies.
//!
//! The passes, in order:
//! 1. source rates below `Ω_S` are dominated by `Ω_S`;
//! 2. source rates above `Δ_S` never decode at the destination;
//! 3. relay rates above `Ω_R` are dominated by `Ω_R`;
//! 4. relay rates below `δ_R` are dominated by `δ_R`;
//! 5. source rates above `nu_D(δ_R)` pay nothing against the surviving relay
//!    rates.
//!
//! All bounds come straight from the corner points, so a discretization grid
//! built on the rectangle lands on the true corners.

use crate::error::{GameError, Result};
use crate::regions::{self, CornerPoints, GEOM_TOL, RATE_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub xi_lo: f64,
    pub xi_hi: f64,
    pub eta_lo: f64,
    pub eta_hi: f64,
}

impl Rect {
    pub fn xi_width(&self) -> f64 {
        self.xi_hi - self.xi_lo
    }

    pub fn eta_width(&self) -> f64 {
        self.eta_hi - self.eta_lo
    }

    pub fn longest_edge(&self) -> f64 {
        self.xi_width().max(self.eta_width())
    }

    pub fn contains(&self, xi: f64, eta: f64) -> bool {
        xi >= self.xi_lo - RATE_TOL
            && xi <= self.xi_hi + RATE_TOL
            && eta >= self.eta_lo - RATE_TOL
            && eta <= self.eta_hi + RATE_TOL
    }

    pub fn is_point(&self) -> bool {
        self.xi_width() <= GEOM_TOL && self.eta_width() <= GEOM_TOL
    }
}

/// The game restricted to the surviving strategy rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedGame {
    pub corners: CornerPoints,
    pub xi_lo: f64,
    pub xi_hi: f64,
    pub eta_lo: f64,
    pub eta_hi: f64,
    /// Edge length `Ω_R - δ_R`, clamped at zero.
    pub edge: f64,
    /// Normalized offset `(δ_S - Ω_S) / edge`; zero when `edge` is zero.
    pub offset: f64,
}

impl ReducedGame {
    pub fn rect(&self) -> Rect {
        Rect { xi_lo: self.xi_lo, xi_hi: self.xi_hi, eta_lo: self.eta_lo, eta_hi: self.eta_hi }
    }

    /// The full payoff kernel evaluated inside the rectangle.
    pub fn payoff(&self, xi: f64, eta: f64) -> f64 {
        regions::payoff(&self.corners, xi, eta)
    }
}

pub fn reduce(cp: &CornerPoints) -> Result<ReducedGame> {
    if regions::boundaries_meet(cp) {
        return Err(GameError::EmptyReduction);
    }
    let (d, e) = (&cp.dest, &cp.eaves);

    let xi_lo = d.src_relay_as_noise;
    let eta_hi = d.relay_max;
    let eta_lo = e.relay_at_src_max.min(eta_hi);

    let xi_hi = if eta_hi - eta_lo <= GEOM_TOL {
        // the relay is pinned to Ω_R, where only Ω_S still decodes
        xi_lo
    } else if eta_lo >= d.relay_at_src_max {
        // nu_D(eta_lo) lies on the sum-rate diagonal; write it through the
        // corner identity so the rectangle is exactly square
        xi_lo + (eta_hi - eta_lo)
    } else {
        d.src_max
    };
    if !(xi_hi >= xi_lo && eta_hi >= eta_lo) {
        return Err(GameError::EmptyReduction);
    }

    let edge = (d.relay_max - e.relay_at_src_max).max(0.0);
    let offset = if edge > 0.0 { (e.src_max - d.src_relay_as_noise) / edge } else { 0.0 };
    Ok(ReducedGame { corners: *cp, xi_lo, xi_hi, eta_lo, eta_hi, edge, offset })
}

/// Closed-form kernel on the square:
/// `xi + eta - Ω_S - δ_R - aL` strictly above the lower diagonal and up to
/// the upper diagonal, zero elsewhere.
pub fn reduced_kernel(rg: &ReducedGame, xi: f64, eta: f64) -> Result<f64> {
    if !rg.rect().contains(xi, eta) {
        return Err(GameError::OutOfRectangle { xi, eta });
    }
    let base = rg.xi_lo + rg.eta_lo;
    let lower = base + rg.offset * rg.edge;
    let upper = base + rg.edge;
    let s = xi + eta;
    Ok(if s > lower + RATE_TOL && s <= upper + RATE_TOL { s - lower } else { 0.0 })
}
