use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use relaygame::informed::{
    check_special_cases, grid_minimize, secrecy_rate, JammerPolicy, PolicySlice, SpecialCase, ZKind,
    DEFAULT_RESOLUTION,
};
use relaygame::NetworkConfig;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sweep_cfg(h_re: Complex64) -> NetworkConfig {
    NetworkConfig::new(c(1.0, 0.0), c(0.2, -0.2), c(0.4, 0.4), h_re, 10.0, 10.0, 1.0).unwrap()
}

fn special_configs() -> Vec<(ZKind, SpecialCase, NetworkConfig)> {
    let silent = NetworkConfig::real(1.0, 0.3, 1.0, 0.3, 10.0, 10.0, 1.0).unwrap();
    let cancel = NetworkConfig::real(1.0, 1.0, 0.5, 0.3, 10.0, 10.0, 1.0).unwrap();
    let noise_g = NetworkConfig::real(1.0, 0.8, 0.5, 0.1, 10.0, 10.0, 1.0).unwrap();
    let noise_s = NetworkConfig::real(1.0, 0.8, 0.5, 1.0, 10.0, 10.0, 1.0).unwrap();
    vec![
        (ZKind::GaussianNoise, SpecialCase::Silent, silent),
        (ZKind::GaussianNoise, SpecialCase::Cancel, cancel),
        (ZKind::GaussianNoise, SpecialCase::NoiseOnly, noise_g),
        (ZKind::StructuredCodeword, SpecialCase::Silent, silent),
        (ZKind::StructuredCodeword, SpecialCase::Cancel, cancel),
        (ZKind::StructuredCodeword, SpecialCase::NoiseOnly, noise_s),
    ]
}

#[test]
fn special_cases_reach_zero_and_grid_agrees() {
    for (kind, case, cfg) in special_configs() {
        let o = check_special_cases(&cfg, kind).unwrap();
        assert_eq!(o.special_case, case);
        assert_eq!(o.value, 0.0);
        assert!(o.policy.is_feasible(&cfg));
        assert!(secrecy_rate(&cfg, &o.policy).abs() < 1e-9);
        let coarse = grid_minimize(&cfg, kind, DEFAULT_RESOLUTION, PolicySlice::Full).unwrap();
        let fine = grid_minimize(&cfg, kind, 2 * DEFAULT_RESOLUTION - 1, PolicySlice::Full).unwrap();
        assert!(coarse.value <= 1e-3, "{case:?} {kind:?} {}", coarse.value);
        assert!(fine.value <= coarse.value);
    }
}

#[test]
fn structured_never_exceeds_gaussian() {
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let g = |rng: &mut ChaCha20Rng| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let cfg = NetworkConfig::new(g(&mut rng), g(&mut rng), g(&mut rng), g(&mut rng), 10.0, 7.0, 1.0).unwrap();
        let mag = rng.gen_range(0.0..(cfg.p_r / cfg.p_s).sqrt());
        let rho = Complex64::from_polar(mag, rng.gen_range(0.0..std::f64::consts::TAU));
        let n_z = rng.gen_range(0.0..cfg.p_r - mag * mag * cfg.p_s);
        let gp = JammerPolicy { rho, n_z, z_kind: ZKind::GaussianNoise };
        let sp = JammerPolicy { z_kind: ZKind::StructuredCodeword, ..gp };
        assert!(secrecy_rate(&cfg, &sp) <= secrecy_rate(&cfg, &gp) + 1e-12);
    }
}

#[test]
fn outcome_value_recomputes_from_policy() {
    for h in [0.0, 0.3, 0.8] {
        let cfg = sweep_cfg(c(h, 0.0));
        let o = grid_minimize(&cfg, ZKind::GaussianNoise, 41, PolicySlice::Full).unwrap();
        assert!((o.value - secrecy_rate(&cfg, &o.policy)).abs() < 1e-9);
    }
}

#[test]
fn large_eavesdropper_gain_drives_rate_to_zero() {
    for kind in [ZKind::GaussianNoise, ZKind::StructuredCodeword] {
        let o = grid_minimize(&sweep_cfg(c(3.0, 0.0)), kind, 101, PolicySlice::Full).unwrap();
        assert!(o.value < 1e-3, "{kind:?} {}", o.value);
    }
}

#[test]
fn informed_value_depends_on_eavesdropper_phase() {
    let values: Vec<f64> = (0..8)
        .map(|k| {
            let h = Complex64::from_polar(0.25, k as f64 * std::f64::consts::PI / 8.0);
            grid_minimize(&sweep_cfg(h), ZKind::GaussianNoise, 61, PolicySlice::Full).unwrap().value
        })
        .collect();
    let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - values.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(spread > 1e-2, "{values:?}");
}
