//! Monte Carlo checks of the sampler and of the digit-deviation formulas.

use benford_gengamma::analysis::{ks_statistic, per_digit_deviation, signed_digit_deviation};
use benford_gengamma::benford::{benford_digit_prob, digit_histogram_from_ln};
use benford_gengamma::gengamma::{cdf, sample};
use benford_gengamma::specfun::ln_gamma_real;
use benford_gengamma::wrapped::{FourierConfig, FourierSeries};
use benford_gengamma::GenGammaParams;

fn gg(a: f64, d: f64, p: f64) -> GenGammaParams {
    GenGammaParams::new(a, d, p, 10).unwrap()
}

#[test]
fn exponential_digit_deviations_match_monte_carlo() {
    let params = gg(1.0, 1.0, 1.0);
    let n = 10_000_000;
    let batch = sample(n, &params, 42).unwrap();
    let hist = digit_histogram_from_ln(batch.ln_values(), 10).unwrap();
    let series = FourierSeries::new(&params, &FourierConfig::with_terms(60));
    for (i, f) in hist.frequencies().into_iter().enumerate() {
        let digit = i as u32 + 1;
        let b = benford_digit_prob(digit, 10).unwrap();
        let predicted = signed_digit_deviation(&series, digit).unwrap();
        let se = (b * (1.0 - b) / n as f64).sqrt();
        assert!(
            (f - b - predicted).abs() < 4.0 * se,
            "digit {digit}: {} vs {predicted}",
            f - b
        );
    }
    assert!((per_digit_deviation(&params, 1, 60).unwrap() - 0.028_626_982_666_653_42).abs() < 1e-12);
}

#[test]
fn power_moments_match_gamma_ratio() {
    // X^p / a^p ~ Gamma(d/p), so E[X^p] = a^p d/p and Var = a^{2p} d/p.
    for (i, (a, d, p)) in [(1.0, 0.5, 0.5), (2.0, 1.0, 0.5), (0.3, 2.0, 3.0), (5.0, 0.1, 0.2)]
        .into_iter()
        .enumerate()
    {
        let params = gg(a, d, p);
        let n = 200_000;
        let batch = sample(n, &params, 77 + i as u64).unwrap();
        let s = d / p;
        let ap = a.powf(p);
        let mean: f64 = batch.ln_values().iter().map(|l| (p * l).exp()).sum::<f64>() / n as f64;
        let se = ap * s.sqrt() / (n as f64).sqrt();
        assert!((mean - ap * s).abs() < 3.0 * se, "{a} {d} {p}: {mean} vs {}", ap * s);
        // E[ln X] = ln a + digamma(s)/p; check via a numeric derivative of ln Γ.
        let h = 1e-5;
        let digamma = (ln_gamma_real(s + h).unwrap() - ln_gamma_real(s - h).unwrap()) / (2.0 * h);
        let mean_ln: f64 = batch.ln_values().iter().sum::<f64>() / n as f64;
        let want = a.ln() + digamma / p;
        let var_ln = {
            let t = 1e-4;
            let tri = (ln_gamma_real(s + t).unwrap() - 2.0 * ln_gamma_real(s).unwrap() + ln_gamma_real(s - t).unwrap())
                / (t * t);
            tri / (p * p)
        };
        assert!(
            (mean_ln - want).abs() < 3.0 * (var_ln / n as f64).sqrt(),
            "{mean_ln} vs {want}"
        );
    }
}

fn ks_against_cdf(values: &[f64], params: &GenGammaParams) -> f64 {
    let u: Vec<f64> = values.iter().map(|&x| cdf(x, params).unwrap()).collect();
    ks_statistic(&u).unwrap()
}

#[test]
fn sampler_passes_ks_against_own_cdf() {
    let n = 10_000;
    let crit = 1.63 / (n as f64).sqrt();
    for params in [
        gg(1.0, 0.5, 0.5),
        gg(2.0, 1.0, 0.5),
        gg(1.0, 0.2, 2.0),
        gg(3.0, 4.0, 1.5),
    ] {
        let passes = (0..10u64)
            .filter(|&seed| ks_against_cdf(sample(n, &params, seed).unwrap().values(), &params) < crit)
            .count();
        assert!(passes >= 9, "{params:?}: {passes}/10");
    }
}

#[test]
fn dkw_inequality_holds_across_seeds() {
    // P(D_n > t) <= 2 exp(-2 n t^2); at t = 0.05 and n = 1000 that is 1.3e-2.
    let params = gg(1.0, 1.0, 0.5);
    let n = 1_000;
    let exceed = (0..100u64)
        .filter(|&seed| ks_against_cdf(sample(n, &params, 500 + seed).unwrap().values(), &params) > 0.05)
        .count();
    assert!(exceed <= 5, "{exceed}/100");
}

#[test]
fn small_shape_sampling_is_close_to_benford() {
    let params = gg(1.0, 0.1, 0.1);
    let batch = sample(1_000_000, &params, 3).unwrap();
    let hist = digit_histogram_from_ln(batch.ln_values(), 10).unwrap();
    for (i, f) in hist.frequencies().into_iter().enumerate() {
        let b = benford_digit_prob(i as u32 + 1, 10).unwrap();
        assert!((f - b).abs() < 3e-3);
    }
}
