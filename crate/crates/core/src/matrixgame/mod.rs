//! Finite zero-sum games: discretizing the reduced continuous game on a
//! uniform grid and solving the resulting matrix game by linear programming.

mod simplex;

use std::io::Write;

use rayon::prelude::*;

use crate::error::{GameError, Result};
use crate::reduction::ReducedGame;
use crate::strategy::MixedStrategy;

/// Payoff matrix to the row player (the source); rows are source rates,
/// columns relay rates.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    payoff: Vec<f64>,
    pub row_labels: Vec<f64>,
    pub col_labels: Vec<f64>,
}

impl MatrixGame {
    /// Builds a game from row-major entries. Labels default to indices.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(GameError::LpFailure("payoff matrix must be non-empty and rectangular".into()));
        }
        let payoff: Vec<f64> = rows.into_iter().flatten().collect();
        if payoff.iter().any(|v| !v.is_finite()) {
            return Err(GameError::LpFailure("payoff matrix has non-finite entries".into()));
        }
        Ok(MatrixGame {
            rows: nrows,
            cols: ncols,
            payoff,
            row_labels: (0..nrows).map(|i| i as f64).collect(),
            col_labels: (0..ncols).map(|j| j as f64).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.payoff[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.payoff[i * self.cols..(i + 1) * self.cols]
    }

    /// `min_j (x' A)_j`: what the row mixture guarantees.
    pub fn row_guarantee(&self, x: &[f64]) -> f64 {
        let mut acc = vec![0.0; self.cols];
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0.0 {
                for (a, v) in acc.iter_mut().zip(self.row(i)) {
                    *a += xi * v;
                }
            }
        }
        acc.into_iter().fold(f64::INFINITY, f64::min)
    }

    /// `max_i (A y)_i`: what the column mixture concedes at worst.
    pub fn col_guarantee(&self, y: &[f64]) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Writes the matrix as CSV with rate labels in the header row and first column.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "xi\\eta")?;
        for c in &self.col_labels {
            write!(w, ",{c}")?;
        }
        writeln!(w)?;
        for i in 0..self.rows {
            write!(w, "{}", self.row_labels[i])?;
            for v in self.row(i) {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub row_mixture: Vec<f64>,
    pub col_mixture: Vec<f64>,
    pub iterations: usize,
    /// `min_j (x' A)_j` for the returned row mixture.
    pub row_guarantee: f64,
    /// `max_i (A y)_i` for the returned column mixture.
    pub col_guarantee: f64,
}

impl LpSolution {
    pub fn duality_gap(&self) -> f64 {
        self.col_guarantee - self.row_guarantee
    }
}

/// Samples the reduced rectangle on a `(T+1) x (T+1)` grid, endpoints included.
pub fn discretize(rg: &ReducedGame, samples: usize) -> Result<MatrixGame> {
    if samples < 2 {
        return Err(GameError::InvalidResolution { got: samples, min: 2 });
    }
    let t = samples as f64;
    let row_labels: Vec<f64> =
        (0..=samples).map(|i| rg.xi_lo + (rg.xi_hi - rg.xi_lo) * i as f64 / t).collect();
    let col_labels: Vec<f64> =
        (0..=samples).map(|j| rg.eta_lo + (rg.eta_hi - rg.eta_lo) * j as f64 / t).collect();
    let n = samples + 1;
    let mut payoff = vec![0.0; n * n];
    payoff.par_chunks_mut(n).zip(row_labels.par_iter()).for_each(|(row, &xi)| {
        for (v, &eta) in row.iter_mut().zip(&col_labels) {
            *v = rg.payoff(xi, eta);
        }
    });
    Ok(MatrixGame { rows: n, cols: n, payoff, row_labels, col_labels })
}

/// Exact value and optimal mixtures of a finite zero-sum game.
///
/// Entries are shifted to be at least one, then the column player's problem
/// `max 1'w  s.t.  A w <= 1` is solved; the row mixture comes from the dual
/// prices.
pub fn solve_lp(game: &MatrixGame) -> Result<LpSolution> {
    let min = game.payoff.iter().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 - min;
    let shifted: Vec<f64> = game.payoff.iter().map(|v| v + shift).collect();
    let solved = simplex::maximize_unit_packing(&shifted, game.rows, game.cols)?;

    let dual_sum: f64 = solved.dual.iter().sum();
    if dual_sum <= 0.0 {
        return Err(GameError::LpFailure("dual prices vanished".into()));
    }
    let row_mixture: Vec<f64> = solved.dual.iter().map(|y| y / dual_sum).collect();
    let col_mixture: Vec<f64> = solved.primal.iter().map(|w| w / solved.objective).collect();
    let value = 1.0 / solved.objective - shift;

    let row_guarantee = game.row_guarantee(&row_mixture);
    let col_guarantee = game.col_guarantee(&col_mixture);
    Ok(LpSolution { value, row_mixture, col_mixture, iterations: solved.iterations, row_guarantee, col_guarantee })
}

/// Worst-case gap between the discrete and continuous game values:
/// `2 sqrt(2) L / T`, with `L` the longest rectangle edge.
pub fn error_bound(rg: &ReducedGame, samples: usize) -> f64 {
    2.0 * std::f64::consts::SQRT_2 * rg.rect().longest_edge() / samples as f64
}

/// Converts LP mixtures over the grid into rate distributions.
pub fn grid_strategies(game: &MatrixGame, sol: &LpSolution) -> (MixedStrategy, MixedStrategy) {
    let src = MixedStrategy::discrete(game.row_labels.iter().copied().zip(sol.row_mixture.iter().copied()));
    let jam = MixedStrategy::discrete(game.col_labels.iter().copied().zip(sol.col_mixture.iter().copied()));
    (src, jam)
}
