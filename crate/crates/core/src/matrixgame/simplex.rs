//! Dense simplex on a condensed (Tucker) tableau, used to solve
//! `max 1'w  s.t.  B w <= 1, w >= 0` for a strictly positive matrix `B`.
//!
//! Entering columns follow Dantzig's largest-coefficient rule; after a run of
//! degenerate pivots the solver falls back to Bland's smallest-index rule
//! until the objective moves again, which rules out cycling.

use crate::error::{GameError, Result};

const PIVOT_EPS: f64 = 1e-12;
const DEGENERATE_RUN: usize = 16;

pub(super) struct Solved {
    /// Primal point `w` (one entry per column of `B`).
    pub primal: Vec<f64>,
    /// Dual prices (one per row of `B`).
    pub dual: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

pub(super) fn maximize_unit_packing(b: &[f64], rows: usize, cols: usize) -> Result<Solved> {
    let width = cols + 1;
    // rows 0..rows are constraints, row `rows` is the objective (reduced costs)
    let mut t = vec![0.0; (rows + 1) * width];
    for i in 0..rows {
        t[i * width..i * width + cols].copy_from_slice(&b[i * cols..(i + 1) * cols]);
        t[i * width + cols] = 1.0;
    }
    for j in 0..cols {
        t[rows * width + j] = -1.0;
    }
    // labels < cols are structural variables, cols + i is the slack of row i
    let mut basic: Vec<usize> = (0..rows).map(|i| cols + i).collect();
    let mut nonbasic: Vec<usize> = (0..cols).collect();

    let max_iter = 50 * (rows + cols) + 1000;
    let mut degenerate = 0usize;
    let mut iterations = 0usize;
    let obj = rows * width;

    loop {
        let bland = degenerate >= DEGENERATE_RUN;
        let entering = if bland {
            (0..cols).filter(|&j| t[obj + j] < -PIVOT_EPS).min_by_key(|&j| nonbasic[j])
        } else {
            (0..cols)
                .filter(|&j| t[obj + j] < -PIVOT_EPS)
                .min_by(|&a, &b| t[obj + a].total_cmp(&t[obj + b]).then(nonbasic[a].cmp(&nonbasic[b])))
        };
        let Some(c) = entering else { break };

        let mut leaving: Option<(usize, f64)> = None;
        for i in 0..rows {
            let a = t[i * width + c];
            if a > PIVOT_EPS {
                let ratio = t[i * width + cols] / a;
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - 1e-15 || (ratio <= best + 1e-15 && basic[i] < basic[r]) {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        let Some((r, ratio)) = leaving else {
            return Err(GameError::LpFailure("unbounded direction in a bounded program".into()));
        };

        pivot(&mut t, rows + 1, width, r, c);
        std::mem::swap(&mut basic[r], &mut nonbasic[c]);

        degenerate = if ratio <= 1e-15 { degenerate + 1 } else { 0 };
        iterations += 1;
        if iterations > max_iter {
            return Err(GameError::LpFailure(format!("no convergence after {iterations} pivots")));
        }
    }

    let mut primal = vec![0.0; cols];
    for (i, &label) in basic.iter().enumerate() {
        if label < cols {
            primal[label] = t[i * width + cols].max(0.0);
        }
    }
    let mut dual = vec![0.0; rows];
    for (j, &label) in nonbasic.iter().enumerate() {
        if label >= cols {
            dual[label - cols] = t[obj + j].max(0.0);
        }
    }
    let objective = t[obj + cols];
    if !objective.is_finite() || objective <= 0.0 {
        return Err(GameError::LpFailure(format!("objective {objective} is not positive")));
    }
    Ok(Solved { primal, dual, objective, iterations })
}

fn pivot(t: &mut [f64], nrows: usize, width: usize, r: usize, c: usize) {
    let p = t[r * width + c];
    let inv = 1.0 / p;
    let pivot_row: Vec<f64> = t[r * width..(r + 1) * width].iter().map(|v| v * inv).collect();
    for i in 0..nrows {
        if i == r {
            continue;
        }
        let row = &mut t[i * width..(i + 1) * width];
        let f = row[c];
        if f == 0.0 {
            continue;
        }
        for (x, pr) in row.iter_mut().zip(pivot_row.iter()) {
            *x -= f * pr;
        }
        row[c] = -f * inv;
    }
    let row = &mut t[r * width..(r + 1) * width];
    row.copy_from_slice(&pivot_row);
    row[c] = inv;
}
