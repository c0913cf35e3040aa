//! Equilibria of the uninformed game: closed forms where the geometry allows
//! them, the certified LP discretization otherwise.

use std::f64::consts::E;

use crate::error::{GameError, Result};
use crate::matrixgame::{self, MatrixGame};
use crate::reduction::{self, ReducedGame};
use crate::regions::{self, CaseTag, CornerPoints, GEOM_TOL};
use crate::strategy::{Atom, ExpAffineSegment, MixedStrategy};

/// Default grid resolution for the LP route.
pub const DEFAULT_LP_SAMPLES: usize = 400;

/// Values this close to zero are reported as exactly zero.
const ZERO_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    AnalyticK0,
    AnalyticCaseD,
    PureCaseE,
    Matrix2x2L,
    Matrix2x2M,
    ZeroCaseN,
    LpDiscrete,
    UnknownCodebook,
    InformedNoise,
    InformedCodeword,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::AnalyticK0 => "analytic-k0",
            Method::AnalyticCaseD => "analytic-caseD",
            Method::PureCaseE => "pure-caseE",
            Method::Matrix2x2L => "matrix-2x2-L",
            Method::Matrix2x2M => "matrix-2x2-M",
            Method::ZeroCaseN => "zero-caseN",
            Method::LpDiscrete => "lp-discrete",
            Method::UnknownCodebook => "unknown-codebook",
            Method::InformedNoise => "informed-noise",
            Method::InformedCodeword => "informed-codeword",
        }
    }

    /// Whether the reported value is exact (no discretization error).
    pub fn is_exact(&self) -> bool {
        !matches!(self, Method::LpDiscrete)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    /// Equilibrium secrecy rate, bits per channel use.
    pub value: f64,
    pub source_strategy: MixedStrategy,
    pub jammer_strategy: MixedStrategy,
    pub method: Method,
    /// Certified distance to the continuous game value; zero for exact methods.
    pub error_bound: f64,
    pub case: Option<CaseTag>,
    /// Set when the reported strategies are one representative of a family.
    pub non_unique: bool,
    pub lp_iterations: Option<usize>,
}

fn clamp_zero(v: f64) -> f64 {
    if v.abs() < ZERO_CLAMP {
        0.0
    } else {
        v
    }
}

/// `g_0(a) = e^{-1/(1-a)} / (1 - a e^{-1} / (1-a))`, the atom mass for
/// `0 <= a <= 1/2`.
pub fn atom_mass_k0(a: f64) -> f64 {
    (-1.0 / (1.0 - a)).exp() / (1.0 - a / (1.0 - a) / E)
}

/// Equalizing strategy on `[origin, origin + edge]` for the square kernel with
/// offset `a <= 1/2`, together with its atom mass.
///
/// For `a <= 0` a single exponential piece covers the whole edge and the atom
/// is `e^{-1/(1-a)}`; for `0 < a <= 1/2` a second exponential-affine piece
/// starts at `origin + edge (1-a)`.
pub fn equalizing_strategy(origin: f64, edge: f64, a: f64) -> (MixedStrategy, f64) {
    let s = 1.0 - a;
    let (alpha, split) = if a <= 0.0 { ((-1.0 / s).exp(), 1.0) } else { (atom_mass_k0(a), s) };
    let first = ExpAffineSegment {
        lo: origin,
        hi: origin + edge * split,
        origin,
        scale: edge,
        c0: alpha,
        c1: 0.0,
        rate: s,
    };
    let mut segments = vec![first];
    if split < 1.0 {
        segments.push(ExpAffineSegment {
            lo: origin + edge * split,
            hi: origin + edge,
            origin,
            scale: edge,
            c0: alpha * (1.0 + 1.0 / E),
            c1: -alpha / (s * E),
            rate: s,
        });
    }
    let strategy = MixedStrategy {
        support_lo: origin,
        support_hi: origin + edge,
        atoms: vec![Atom { location: origin, mass: alpha }],
        segments,
    };
    (strategy, alpha)
}

/// Case A with `a <= 1/2`: atom `g_0(a)` at the lower corner plus two
/// exponential pieces, value `L alpha (1-a)`.
pub fn solve_case_a_k0(rg: &ReducedGame) -> Result<EquilibriumReport> {
    let a = rg.offset;
    if a > 0.5 {
        return Err(GameError::WrongRegime { a });
    }
    if a < -GEOM_TOL || rg.edge <= 0.0 {
        return Err(GameError::WrongCase { expected: "A".into(), found: format!("edge {} offset {}", rg.edge, a) });
    }
    let a = a.max(0.0);
    let (src, alpha) = equalizing_strategy(rg.xi_lo, rg.edge, a);
    let (jam, _) = equalizing_strategy(rg.eta_lo, rg.edge, a);
    Ok(EquilibriumReport {
        value: clamp_zero(rg.edge * alpha * (1.0 - a)),
        source_strategy: src,
        jammer_strategy: jam,
        method: Method::AnalyticK0,
        error_bound: 0.0,
        case: Some(CaseTag::A),
        non_unique: false,
        lp_iterations: None,
    })
}

/// LP route on the reduced rectangle at `samples` grid steps per axis.
pub fn solve_discrete(rg: &ReducedGame, samples: usize) -> Result<(EquilibriumReport, MatrixGame)> {
    let game = matrixgame::discretize(rg, samples)?;
    let sol = matrixgame::solve_lp(&game)?;
    let (src, jam) = matrixgame::grid_strategies(&game, &sol);
    let report = EquilibriumReport {
        value: clamp_zero(sol.value),
        source_strategy: src,
        jammer_strategy: jam,
        method: Method::LpDiscrete,
        error_bound: matrixgame::error_bound(rg, samples),
        case: None,
        non_unique: false,
        lp_iterations: Some(sol.iterations),
    };
    Ok((report, game))
}

/// Case A for any `a` in `[0, 1)`: closed form up to `a = 1/2`, LP beyond.
pub fn solve_case_a_general(rg: &ReducedGame, samples: usize) -> Result<EquilibriumReport> {
    if rg.offset <= 0.5 {
        return solve_case_a_k0(rg);
    }
    let (mut report, _) = solve_discrete(rg, samples)?;
    report.case = Some(CaseTag::A);
    Ok(report)
}

fn require_case(cp: &CornerPoints, expected: CaseTag) -> Result<()> {
    let found = regions::classify(cp).tag;
    if found == expected {
        Ok(())
    } else {
        Err(GameError::WrongCase { expected: expected.to_string(), found: found.to_string() })
    }
}

/// Case D (`δ_S <= Ω_S`): the square kernel with non-positive offset.
///
/// The equalizing source cdf is a single exponential piece with atom
/// `e^{-1/(1-a)}`, giving value `(L + Ω_S - δ_S) exp(-L / (L + Ω_S - δ_S))`.
pub fn solve_case_d(cp: &CornerPoints) -> Result<EquilibriumReport> {
    require_case(cp, CaseTag::D)?;
    let rg = reduction::reduce(cp)?;
    let lead = cp.dest.src_relay_as_noise - cp.eaves.src_max;
    if rg.edge <= GEOM_TOL {
        // square collapsed: both players pinned to the lower corner
        return Ok(EquilibriumReport {
            value: clamp_zero(lead),
            source_strategy: MixedStrategy::point(rg.xi_lo),
            jammer_strategy: MixedStrategy::point(rg.eta_lo),
            method: Method::AnalyticCaseD,
            error_bound: 0.0,
            case: Some(CaseTag::D),
            non_unique: false,
            lp_iterations: None,
        });
    }
    let a = (-lead / rg.edge).min(0.0);
    let (src, alpha) = equalizing_strategy(rg.xi_lo, rg.edge, a);
    let (jam, _) = equalizing_strategy(rg.eta_lo, rg.edge, a);
    Ok(EquilibriumReport {
        value: clamp_zero(rg.edge * alpha * (1.0 - a)),
        source_strategy: src,
        jammer_strategy: jam,
        method: Method::AnalyticCaseD,
        error_bound: 0.0,
        case: Some(CaseTag::D),
        non_unique: false,
        lp_iterations: None,
    })
}

/// Case E: pure saddle point at `(Ω_S, Ω_R)` with value `Ω_S - δ_S`.
pub fn solve_case_e(cp: &CornerPoints) -> Result<EquilibriumReport> {
    require_case(cp, CaseTag::E)?;
    let xi = cp.dest.src_relay_as_noise;
    let eta = cp.dest.relay_max;
    Ok(EquilibriumReport {
        value: clamp_zero(xi - cp.eaves.src_max),
        source_strategy: MixedStrategy::point(xi),
        jammer_strategy: MixedStrategy::point(eta),
        method: Method::PureCaseE,
        error_bound: 0.0,
        case: Some(CaseTag::E),
        non_unique: false,
        lp_iterations: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoByTwo {
    L,
    M,
}

/// Closed-form mixed equilibrium of `[[p, q], [r, 0]]` with `q, r > 0`,
/// `p < min(q, r)`: returns `(value, P(row 0), P(col 0))`.
pub fn two_by_two(p: f64, q: f64, r: f64) -> (f64, f64, f64) {
    let denom = q + r - p;
    (q * r / denom, r / denom, q / denom)
}

/// Cases L and M: source mixes over `{Ω_S, Δ_S}`, relay over `{δ_R, Ω_R}`.
pub fn solve_2x2(cp: &CornerPoints, variant: TwoByTwo) -> Result<EquilibriumReport> {
    let tag = match variant {
        TwoByTwo::L => CaseTag::L,
        TwoByTwo::M => CaseTag::M,
    };
    require_case(cp, tag)?;
    let (d, e) = (&cp.dest, &cp.eaves);
    // case L has a zero in the top-left corner; case M pays Ω_S - δ_S there
    let top_left = match variant {
        TwoByTwo::L => 0.0,
        TwoByTwo::M => d.src_relay_as_noise - e.src_max,
    };
    let top_right = d.src_relay_as_noise - e.src_relay_as_noise;
    let bottom_left = d.src_max - e.src_max;
    let (value, p_low, q_low) = two_by_two(top_left, top_right, bottom_left);
    Ok(EquilibriumReport {
        value: clamp_zero(value),
        source_strategy: MixedStrategy::discrete([(d.src_relay_as_noise, p_low), (d.src_max, 1.0 - p_low)]),
        jammer_strategy: MixedStrategy::discrete([(e.relay_at_src_max, q_low), (d.relay_max, 1.0 - q_low)]),
        method: match variant {
            TwoByTwo::L => Method::Matrix2x2L,
            TwoByTwo::M => Method::Matrix2x2M,
        },
        error_bound: 0.0,
        case: Some(tag),
        non_unique: false,
        lp_iterations: None,
    })
}

/// Case N: some relay rate closes the gap between the boundaries, so the
/// value is zero.
pub fn solve_case_n(cp: &CornerPoints) -> Result<EquilibriumReport> {
    require_case(cp, CaseTag::N)?;
    let (_, eta) = regions::min_boundary_gap(cp);
    Ok(EquilibriumReport {
        value: 0.0,
        source_strategy: MixedStrategy::point(cp.dest.boundary(eta)),
        jammer_strategy: MixedStrategy::point(eta),
        method: Method::ZeroCaseN,
        error_bound: 0.0,
        case: Some(CaseTag::N),
        non_unique: true,
        lp_iterations: None,
    })
}

/// Destination does not know the relay codebook and always treats the relay
/// as noise: value `(Ω_S - δ_S)^+`.
pub fn solve_unknown_codebook(cp: &CornerPoints) -> Result<EquilibriumReport> {
    let (d, e) = (&cp.dest, &cp.eaves);
    let xi = d.src_relay_as_noise;
    let lead = xi - e.src_max;
    if lead > 0.0 {
        // every (Ω_S, eta) with eta in [0, δ_R] is an equilibrium
        return Ok(EquilibriumReport {
            value: clamp_zero(lead),
            source_strategy: MixedStrategy::point(xi),
            jammer_strategy: MixedStrategy::point(e.relay_at_src_max),
            method: Method::UnknownCodebook,
            error_bound: 0.0,
            case: None,
            non_unique: true,
            lp_iterations: None,
        });
    }
    let slope_den = e.src_relay_as_noise - e.src_max;
    if slope_den.abs() <= GEOM_TOL {
        return Err(GameError::DegenerateGeometry(
            "eavesdropper corner rates coincide; intersection with the source rate is undefined".into(),
        ));
    }
    let eta = ((e.relay_max - e.relay_at_src_max) * xi + e.src_relay_as_noise * e.relay_at_src_max
        - e.relay_max * e.src_max)
        / slope_den;
    Ok(EquilibriumReport {
        value: 0.0,
        source_strategy: MixedStrategy::point(xi),
        jammer_strategy: MixedStrategy::point(eta),
        method: Method::UnknownCodebook,
        error_bound: 0.0,
        case: None,
        non_unique: false,
        lp_iterations: None,
    })
}

/// Classifies the geometry and dispatches to the matching solver.
pub fn solve_uninformed(cp: &CornerPoints, samples: usize) -> Result<EquilibriumReport> {
    let label = regions::classify(cp);
    match label.tag {
        CaseTag::N => solve_case_n(cp),
        CaseTag::E => solve_case_e(cp),
        CaseTag::L => solve_2x2(cp, TwoByTwo::L),
        CaseTag::M => solve_2x2(cp, TwoByTwo::M),
        CaseTag::D => solve_case_d(cp),
        CaseTag::A => solve_case_a_general(&reduction::reduce(cp)?, samples),
        CaseTag::GenericReduced => {
            let rg = reduction::reduce(cp)?;
            let (mut report, _) = solve_discrete(&rg, samples)?;
            report.case = Some(CaseTag::GenericReduced);
            Ok(report)
        }
    }
}
