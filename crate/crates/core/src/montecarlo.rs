//! Block-by-block simulation of the variable-rate scheme and unilateral
//! deviation audits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::regions::{self, CornerPoints};
use crate::strategy::MixedStrategy;

/// Generator identifier recorded alongside results.
pub const RNG_ALGORITHM: &str = "chacha20 (rand_chacha 0.3, seed_from_u64, stream = chunk index)";

/// Blocks per independently seeded chunk.
pub const CHUNK_BLOCKS: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayStats {
    pub blocks: u64,
    pub empirical_mean: f64,
    /// Sample standard deviation over `sqrt(blocks)`.
    pub std_error: f64,
    /// Average sampled source rate, the empirical `E(xi)`.
    pub mean_source_rate: f64,
    pub deviation_gap_source: Option<f64>,
    pub deviation_gap_jammer: Option<f64>,
}

/// One inverse-transform draw.
pub fn sample_with<R: Rng>(s: &MixedStrategy, rng: &mut R) -> f64 {
    s.quantile(rng.gen::<f64>())
}

/// Single draw from `s`, deterministic in `seed`.
pub fn sample_strategy(s: &MixedStrategy, seed: u64) -> f64 {
    sample_with(s, &mut ChaCha20Rng::seed_from_u64(seed))
}

/// `n` draws from one seeded stream.
pub fn sample_many(s: &MixedStrategy, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_with(s, &mut rng)).collect()
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * self.n as f64 * o.n as f64 / n as f64,
        }
    }
}

/// Plays `blocks` independent blocks. Chunks run in parallel and are merged
/// in index order, so results are identical for any thread count.
pub fn play(cp: &CornerPoints, src: &MixedStrategy, jam: &MixedStrategy, blocks: u64, seed: u64) -> PlayStats {
    let chunks = blocks.div_ceil(CHUNK_BLOCKS);
    let parts: Vec<(Moments, Moments)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let n = CHUNK_BLOCKS.min(blocks - c * CHUNK_BLOCKS);
            let mut pay = Moments::default();
            let mut rate = Moments::default();
            for _ in 0..n {
                let xi = sample_with(src, &mut rng);
                let eta = sample_with(jam, &mut rng);
                pay.push(regions::payoff(cp, xi, eta));
                rate.push(xi);
            }
            (pay, rate)
        })
        .collect();
    let (pay, rate) = parts
        .into_iter()
        .fold((Moments::default(), Moments::default()), |(p, r), (a, b)| (p.merge(a), r.merge(b)));
    let std_error = if pay.n > 1 { (pay.m2 / (pay.n - 1) as f64).sqrt() / (pay.n as f64).sqrt() } else { 0.0 };
    PlayStats {
        blocks: pay.n,
        empirical_mean: pay.mean,
        std_error,
        mean_source_rate: rate.mean,
        deviation_gap_source: None,
        deviation_gap_jammer: None,
    }
}

fn strategy_points(s: &MixedStrategy) -> Vec<f64> {
    let mut v: Vec<f64> = s.atoms.iter().map(|a| a.location).collect();
    for seg in &s.segments {
        v.push(seg.lo);
        v.push(seg.hi);
    }
    v
}

fn probes(lo: f64, hi: f64, count: usize, critical: &[f64], rng: &mut ChaCha20Rng) -> Vec<f64> {
    let n = count.max(2);
    let mut v: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    for &c in critical {
        if c.is_finite() && c >= lo && c <= hi {
            v.extend([c, (c - 1e-9).max(lo), (c + 1e-9).min(hi)]);
        }
    }
    v.extend((0..n).map(|_| rng.gen_range(lo..=hi)));
    v
}

/// Worst unilateral-deviation gains against `(src, jam)` claimed to achieve
/// `value`.
///
/// `gap_source = value - min_eta E_src[payoff(xi, eta)]` and
/// `gap_jammer = max_xi E_jam[payoff(xi, eta)] - value`, over grid, critical
/// and seeded random probes. Expectations integrate the cdf segments with
/// adaptive quadrature split at the kernel discontinuities.
pub fn audit_deviations(
    cp: &CornerPoints,
    src: &MixedStrategy,
    jam: &MixedStrategy,
    value: f64,
    probe_count: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (d, e) = (&cp.dest, &cp.eaves);

    let src_pts = strategy_points(src);
    let jam_pts = strategy_points(jam);

    let mut eta_crit = vec![d.relay_at_src_max, d.relay_max, e.relay_at_src_max, e.relay_max];
    eta_crit.extend(&jam_pts);
    for &x in &src_pts {
        eta_crit.extend([d.sum - x, e.sum - x]);
    }
    let eta_hi = d.relay_max.max(e.relay_max) * 1.05 + 0.1;
    let eta_probes = probes(0.0, eta_hi, probe_count, &eta_crit, &mut rng);

    let mut xi_crit = vec![d.src_max, d.src_relay_as_noise, e.src_max, e.src_relay_as_noise];
    xi_crit.extend(&src_pts);
    for &y in &jam_pts {
        xi_crit.extend([d.boundary(y), e.boundary(y)]);
    }
    let xi_hi = d.sum.max(e.sum) + 0.1;
    let xi_probes = probes(0.0, xi_hi, probe_count, &xi_crit, &mut rng);

    let worst_for_source = eta_probes
        .par_iter()
        .map(|&eta| src.expect(|xi| regions::payoff(cp, xi, eta), &regions::xi_breakpoints(cp, eta)))
        .reduce(|| f64::INFINITY, f64::min);
    let best_for_source = xi_probes
        .par_iter()
        .map(|&xi| jam.expect(|eta| regions::payoff(cp, xi, eta), &regions::eta_breakpoints(cp, xi)))
        .reduce(|| f64::NEG_INFINITY, f64::max);
    (value - worst_for_source, best_for_source - value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use crate::channel::SnrSet;
    use crate::reduction;
    use crate::regions::corner_points;

    fn k0() -> (CornerPoints, analytic::EquilibriumReport) {
        let cp = corner_points(&SnrSet::new(10.0, 2.5, 3.0, 4.0).unwrap());
        let r = analytic::solve_case_a_k0(&reduction::reduce(&cp).unwrap()).unwrap();
        (cp, r)
    }

    #[test]
    fn point_mass_sampling() {
        let s = MixedStrategy::point(1.25);
        for seed in 0..20 {
            assert_eq!(sample_strategy(&s, seed), 1.25);
        }
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.1).collect();
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let (mut a, mut b) = (Moments::default(), Moments::default());
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert!((m.mean - all.mean).abs() < 1e-12);
        assert!((m.m2 - all.m2).abs() < 1e-9 * all.m2);
    }

    #[test]
    fn reproducible() {
        let (cp, r) = k0();
        let a = play(&cp, &r.source_strategy, &r.jammer_strategy, 200_000, 7);
        let b = play(&cp, &r.source_strategy, &r.jammer_strategy, 200_000, 7);
        assert_eq!(a, b);
        let c = play(&cp, &r.source_strategy, &r.jammer_strategy, 200_000, 8);
        assert_ne!(a.empirical_mean, c.empirical_mean);
    }

    #[test]
    fn k0_audit_passes() {
        let (cp, r) = k0();
        let (gs, gj) = audit_deviations(&cp, &r.source_strategy, &r.jammer_strategy, r.value, 200, 1);
        assert!(gs <= 1e-5 && gj <= 1e-5, "{gs} {gj}");
    }
}
