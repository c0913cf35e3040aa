//! Decodability regions at the destination and the eavesdropper, the payoff
//! kernel of the uninformed game, and the geometric case split.
//!
//! Each receiver sees the source and the jammer relay as a two-user
//! multiple-access channel. A rate pair `(xi, eta)` is decodable for the source
//! if it lies in the MAC region, or if `xi` alone fits under the capacity with
//! the relay treated as noise. The upper boundary of that union, read as a
//! function of the relay rate `eta`, is a flat segment, a 45-degree diagonal on
//! the sum-rate line, and another flat segment.

use crate::channel::SnrSet;
use crate::reduction::{self, Rect};

/// Closed-membership slack for rate comparisons.
pub const RATE_TOL: f64 = 1e-12;

/// Two corner rates closer than this are treated as equal when classifying.
pub const GEOM_TOL: f64 = 1e-9;

/// Corner points of one receiver's decodability region.
///
/// For the destination these are `(Δ_S, Δ_R)`, `(Ω_S, Ω_R)`; for the
/// eavesdropper `(δ_S, δ_R)`, `(ω_S, ω_R)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverCorners {
    /// Single-user source rate, relay decoded first.
    pub src_max: f64,
    /// Relay rate at the corner where the source is at `src_max`.
    pub relay_at_src_max: f64,
    /// Source rate with the relay treated as noise.
    pub src_relay_as_noise: f64,
    /// Single-user relay rate.
    pub relay_max: f64,
    /// Sum rate `log2(1 + gamma_S + gamma_R)`.
    pub sum: f64,
}

impl ReceiverCorners {
    fn from_snrs(gamma_s: f64, gamma_r: f64) -> Self {
        ReceiverCorners {
            src_max: (1.0 + gamma_s).log2(),
            relay_at_src_max: (1.0 + gamma_r / (1.0 + gamma_s)).log2(),
            src_relay_as_noise: (1.0 + gamma_s / (1.0 + gamma_r)).log2(),
            relay_max: (1.0 + gamma_r).log2(),
            sum: (1.0 + gamma_s + gamma_r).log2(),
        }
    }

    /// Largest decodable source rate when the relay sends at `eta`.
    ///
    /// Continuous and non-increasing in `eta`.
    pub fn boundary(&self, eta: f64) -> f64 {
        if eta <= self.relay_at_src_max {
            self.src_max
        } else if eta <= self.relay_max {
            self.sum - eta
        } else {
            self.src_relay_as_noise
        }
    }

    /// Membership built from the raw region inequalities rather than
    /// [`boundary`](Self::boundary): the MAC triple or the noise strip.
    pub fn contains(&self, xi: f64, eta: f64) -> bool {
        let in_mac = xi <= self.src_max + RATE_TOL
            && eta <= self.relay_max + RATE_TOL
            && xi + eta <= self.sum + RATE_TOL;
        let in_strip = xi <= self.src_relay_as_noise + RATE_TOL;
        in_mac || in_strip
    }

    /// Boundary polyline vertices `(xi, eta)` from `eta = 0` up to `eta_max`.
    pub fn polyline(&self, eta_max: f64) -> Vec<(f64, f64)> {
        let top = eta_max.max(self.relay_max);
        vec![
            (self.src_max, 0.0),
            (self.src_max, self.relay_at_src_max),
            (self.src_relay_as_noise, self.relay_max),
            (self.src_relay_as_noise, top),
        ]
    }
}

/// All eight corner rates plus both sum rates, in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerPoints {
    pub dest: ReceiverCorners,
    pub eaves: ReceiverCorners,
}

pub fn corner_points(snr: &SnrSet) -> CornerPoints {
    CornerPoints {
        dest: ReceiverCorners::from_snrs(snr.gamma_sd, snr.gamma_rd),
        eaves: ReceiverCorners::from_snrs(snr.gamma_se, snr.gamma_re),
    }
}

/// `sup { nu : (nu, eta) in R[E] }`.
pub fn eaves_boundary(cp: &CornerPoints, eta: f64) -> f64 {
    cp.eaves.boundary(eta)
}

/// `sup { nu : (nu, eta) in R[D] }`.
pub fn dest_boundary(cp: &CornerPoints, eta: f64) -> f64 {
    cp.dest.boundary(eta)
}

/// Secrecy rate when the source picks rate `xi` and the relay picks `eta`.
///
/// Zero when the eavesdropper can decode (`xi <= nu_E(eta)`) or the
/// destination cannot (`xi > nu_D(eta)`); otherwise the horizontal distance to
/// the eavesdropper boundary.
pub fn payoff(cp: &CornerPoints, xi: f64, eta: f64) -> f64 {
    let eaves = cp.eaves.boundary(eta);
    if xi <= eaves + RATE_TOL || xi > cp.dest.boundary(eta) + RATE_TOL {
        0.0
    } else {
        xi - eaves
    }
}

/// Relay rates at which the kernel `eta -> payoff(xi, eta)` may jump or kink.
pub fn eta_breakpoints(cp: &CornerPoints, xi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = [
        cp.dest.relay_at_src_max,
        cp.dest.relay_max,
        cp.eaves.relay_at_src_max,
        cp.eaves.relay_max,
        cp.dest.sum - xi,
        cp.eaves.sum - xi,
    ]
    .into_iter()
    .filter(|e| e.is_finite() && *e >= 0.0)
    .collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// Source rates at which `xi -> payoff(xi, eta)` may jump or kink.
pub fn xi_breakpoints(cp: &CornerPoints, eta: f64) -> Vec<f64> {
    let mut v = vec![cp.eaves.boundary(eta), cp.dest.boundary(eta)];
    v.sort_by(f64::total_cmp);
    v
}

/// Smallest horizontal gap `nu_D(eta) - nu_E(eta)` over all `eta >= 0`, with
/// the relay rate that attains it.
///
/// Both boundaries are piecewise linear with kinks at the four relay corner
/// rates and constant beyond them, so the minimum sits at one of those kinks
/// or at `eta = 0`.
pub fn min_boundary_gap(cp: &CornerPoints) -> (f64, f64) {
    let candidates = [
        0.0,
        cp.dest.relay_at_src_max,
        cp.dest.relay_max,
        cp.eaves.relay_at_src_max,
        cp.eaves.relay_max,
    ];
    candidates
        .into_iter()
        .map(|eta| (cp.dest.boundary(eta) - cp.eaves.boundary(eta), eta))
        .fold((f64::INFINITY, 0.0), |best, cur| if cur.0 < best.0 { cur } else { best })
}

/// True when the two boundaries touch or cross, or `R[D]` sits inside `R[E]`.
pub fn boundaries_meet(cp: &CornerPoints) -> bool {
    min_boundary_gap(cp).0 <= GEOM_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    A,
    D,
    E,
    L,
    M,
    N,
    GenericReduced,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::A => "A",
            CaseTag::D => "D",
            CaseTag::E => "E",
            CaseTag::L => "L",
            CaseTag::M => "M",
            CaseTag::N => "N",
            CaseTag::GenericReduced => "generic",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseLabel {
    pub tag: CaseTag,
    /// Surviving strategy rectangle; `None` only for case N.
    pub reduced_rect: Option<Rect>,
}

fn le(a: f64, b: f64) -> bool {
    a <= b + GEOM_TOL
}

/// The square-geometry orderings shared by cases A and D, minus the
/// placement of `Ω_S` relative to `δ_S`.
fn square_orderings(cp: &CornerPoints) -> bool {
    let (d, e) = (&cp.dest, &cp.eaves);
    le(e.sum, d.sum)
        && le(e.src_max, d.src_max)
        && le(d.relay_at_src_max, e.relay_at_src_max)
        && le(e.relay_at_src_max, d.relay_max)
        && le(d.relay_max, e.relay_max)
}

/// Case-A orderings: sum rates, corner placements, and
/// `ω_S <= Ω_S <= δ_S`.
pub fn case_a_conditions(cp: &CornerPoints) -> bool {
    let (d, e) = (&cp.dest, &cp.eaves);
    square_orderings(cp) && le(e.src_relay_as_noise, d.src_relay_as_noise) && le(d.src_relay_as_noise, e.src_max)
}

pub fn classify(cp: &CornerPoints) -> CaseLabel {
    if boundaries_meet(cp) {
        return CaseLabel { tag: CaseTag::N, reduced_rect: None };
    }
    let rect = match reduction::reduce(cp) {
        Ok(rg) => rg.rect(),
        Err(_) => return CaseLabel { tag: CaseTag::N, reduced_rect: None },
    };
    let (d, e) = (&cp.dest, &cp.eaves);
    let tag = if le(d.relay_max, e.relay_at_src_max) {
        // relay interval collapses onto Ω_R
        CaseTag::E
    } else if le(e.relay_max, d.relay_at_src_max) {
        // eavesdropper's diagonal ends below the destination's first corner:
        // only the four extreme rates survive
        if le(d.src_relay_as_noise, e.src_max) {
            CaseTag::L
        } else {
            CaseTag::M
        }
    } else if case_a_conditions(cp) {
        CaseTag::A
    } else if square_orderings(cp) && le(e.src_max, d.src_relay_as_noise) {
        CaseTag::D
    } else {
        CaseTag::GenericReduced
    };
    CaseLabel { tag, reduced_rect: Some(rect) }
}
