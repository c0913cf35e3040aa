//! One-dimensional mixed strategies over rates: point masses plus
//! closed-form cdf segments.

use crate::quadrature;

/// Probability mass placed on a single rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub mass: f64,
}

/// A cdf piece `F(r) = (c0 + c1 x) exp(x / rate)` with `x = (r - origin) / scale`,
/// valid on `[lo, hi]`. Only the increment `F(hi) - F(lo)` carries probability;
/// atoms at the endpoints are stored separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpAffineSegment {
    pub lo: f64,
    pub hi: f64,
    pub origin: f64,
    pub scale: f64,
    pub c0: f64,
    pub c1: f64,
    pub rate: f64,
}

impl ExpAffineSegment {
    pub const TAG: &'static str = "exp-affine";

    pub fn value(&self, r: f64) -> f64 {
        let x = (r - self.origin) / self.scale;
        (self.c0 + self.c1 * x) * (x / self.rate).exp()
    }

    pub fn density(&self, r: f64) -> f64 {
        let x = (r - self.origin) / self.scale;
        (x / self.rate).exp() * (self.c1 + (self.c0 + self.c1 * x) / self.rate) / self.scale
    }

    /// Probability carried on `(lo, min(r, hi)]`.
    pub fn mass_up_to(&self, r: f64) -> f64 {
        if r <= self.lo {
            0.0
        } else {
            self.value(r.min(self.hi)) - self.value(self.lo)
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass_up_to(self.hi)
    }
}

/// Distribution over rates: atoms plus continuous segments.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy {
    pub support_lo: f64,
    pub support_hi: f64,
    pub atoms: Vec<Atom>,
    pub segments: Vec<ExpAffineSegment>,
}

/// Accuracy of cdf inversion, in rate units.
pub const INVERSION_TOL: f64 = 1e-10;

impl MixedStrategy {
    pub fn point(location: f64) -> Self {
        MixedStrategy {
            support_lo: location,
            support_hi: location,
            atoms: vec![Atom { location, mass: 1.0 }],
            segments: Vec::new(),
        }
    }

    /// Finite distribution; zero-mass entries are dropped and atoms sorted.
    pub fn discrete(points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut atoms: Vec<Atom> = points
            .into_iter()
            .filter(|(_, m)| *m > 0.0)
            .map(|(location, mass)| Atom { location, mass })
            .collect();
        atoms.sort_by(|a, b| a.location.total_cmp(&b.location));
        let support_lo = atoms.first().map_or(0.0, |a| a.location);
        let support_hi = atoms.last().map_or(0.0, |a| a.location);
        MixedStrategy { support_lo, support_hi, atoms, segments: Vec::new() }
    }

    pub fn is_pure(&self) -> bool {
        self.segments.is_empty() && self.atoms.len() == 1
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum::<f64>() + self.segments.iter().map(|s| s.mass()).sum::<f64>()
    }

    /// Right-continuous cdf.
    pub fn cdf(&self, r: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().filter(|a| a.location <= r).map(|a| a.mass).sum();
        let cont: f64 = self.segments.iter().map(|s| s.mass_up_to(r)).sum();
        atoms + cont
    }

    /// `lim_{t -> r-} F(t)`.
    pub fn cdf_left(&self, r: f64) -> f64 {
        let atoms: f64 = self.atoms.iter().filter(|a| a.location < r).map(|a| a.mass).sum();
        let cont: f64 = self.segments.iter().map(|s| s.mass_up_to(r)).sum();
        atoms + cont
    }

    pub fn mean(&self) -> f64 {
        self.expect(|r| r, &[])
    }

    /// `E[f(r)]`. `breaks` lists rates where `f` may be discontinuous; the
    /// continuous part is integrated piecewise between them.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F, breaks: &[f64]) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|a| a.mass * f(a.location)).sum();
        let cont: f64 = self
            .segments
            .iter()
            .map(|s| quadrature::integrate_pieces(|r| f(r) * s.density(r), s.lo, s.hi, breaks, 1e-13))
            .sum();
        atoms + cont
    }

    /// Inverse cdf: the smallest rate `r` with `F(r) >= u`, for `u` in
    /// `[0, 1)`. Segments are inverted by bisection to [`INVERSION_TOL`].
    pub fn quantile(&self, u: f64) -> f64 {
        enum Piece<'a> {
            Atom(&'a Atom),
            Seg(&'a ExpAffineSegment),
        }
        let mut pieces: Vec<(f64, u8, Piece)> = self
            .atoms
            .iter()
            .map(|a| (a.location, 0u8, Piece::Atom(a)))
            .chain(self.segments.iter().map(|s| (s.lo, 1u8, Piece::Seg(s))))
            .collect();
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

        let mut cum = 0.0;
        let mut last = self.support_lo;
        for (_, _, piece) in &pieces {
            match piece {
                Piece::Atom(a) => {
                    cum += a.mass;
                    last = a.location;
                    if u < cum {
                        return a.location;
                    }
                }
                Piece::Seg(s) => {
                    let m = s.mass();
                    if u < cum + m {
                        let target = u - cum;
                        let (mut lo, mut hi) = (s.lo, s.hi);
                        while hi - lo > INVERSION_TOL {
                            let mid = 0.5 * (lo + hi);
                            if s.mass_up_to(mid) < target {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        return 0.5 * (lo + hi);
                    }
                    cum += m;
                    last = s.hi;
                }
            }
        }
        // rounding left a sliver of mass past the last piece
        last
    }

    /// `(rate, cdf)` pairs on a uniform grid across the support.
    pub fn cdf_table(&self, points: usize) -> Vec<(f64, f64)> {
        let n = points.max(2);
        (0..n)
            .map(|i| {
                let r = self.support_lo + (self.support_hi - self.support_lo) * i as f64 / (n - 1) as f64;
                (r, self.cdf(r))
            })
            .collect()
    }
}
