//! Secrecy-rate games between a source and a jammer relay that helps an
//! eavesdropper.
//!
//! The uninformed relay plays a continuous zero-sum game over rates
//! ([`regions`], [`reduction`], [`analytic`], [`matrixgame`]); the informed
//! relay picks a correlated-jamming policy ([`informed`]). [`montecarlo`]
//! replays equilibria block by block and audits unilateral deviations.

pub mod analytic;
pub mod channel;
pub mod error;
pub mod informed;
pub mod matrixgame;
pub mod montecarlo;
pub mod quadrature;
pub mod reduction;
pub mod regions;
pub mod strategy;

pub use analytic::{solve_uninformed, EquilibriumReport, Method};
pub use channel::{compute_snrs, NetworkConfig, SnrSet};
pub use error::{GameError, Result};
pub use regions::{classify, corner_points, CaseTag, CornerPoints};
pub use strategy::MixedStrategy;
