//! Density of `U = log_B X mod 1` for generalized gamma `X`.
//!
//! Two closed forms are provided. The direct form sums the density of
//! `log_B X` over every integer shift:
//!
//! ```text
//! f(u) = (p ln B / Γ(s)) Σ_k exp(-w_k) w_k^s,   w_k = (B^(k+u) / a)^p,  s = d/p
//! ```
//!
//! Poisson summation turns it into a Fourier series around the uniform
//! density:
//!
//! ```text
//! f(u) = 1 + (2 / Γ(s)) Σ_{k≥1} Re[ e^(2πik(u - log_B a)) Γ(s - 2πik / (p ln B)) ]
//! ```
//!
//! and truncating after `M` terms costs at most `((d+p) ln B)² / (2π²(M+1))`
//! pointwise. Both forms are periodic in `u` and only see `log_B a mod 1`,
//! so `a` and `a·B^m` give the same density.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gengamma::GenGammaParams;
use crate::specfun::{ln_gamma_complex_pos, ln_gamma_pos};
use crate::{Error, Result};

/// Coefficients with `ln |c_k|` below this are dropped; `|Γ(s + ib)|` is
/// strictly decreasing in `|b|`, so every later one is smaller still.
const LN_NEGLIGIBLE: f64 = -690.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrappedDensityEval {
    pub u: f64,
    pub value: f64,
    pub method: Method,
    /// Direct form: certified bound on the omitted tails. Fourier form: the
    /// truncation bound for the number of retained terms.
    pub error_bound: f64,
    /// Terms actually summed.
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectSumConfig {
    tail_tolerance: f64,
    max_terms_each_side: usize,
}

impl DirectSumConfig {
    pub fn new(tail_tolerance: f64, max_terms_each_side: usize) -> Result<Self> {
        if !tail_tolerance.is_finite() || tail_tolerance <= 0.0 {
            return Err(Error::domain(
                "tail_tolerance",
                format!("must be finite and > 0, got {tail_tolerance}"),
            ));
        }
        if max_terms_each_side == 0 {
            return Err(Error::domain("max_terms_each_side", "must be at least 1"));
        }
        Ok(Self {
            tail_tolerance,
            max_terms_each_side,
        })
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }

    pub fn max_terms_each_side(&self) -> usize {
        self.max_terms_each_side
    }
}

impl Default for DirectSumConfig {
    fn default() -> Self {
        Self {
            tail_tolerance: 1e-12,
            max_terms_each_side: 100_000,
        }
    }
}

/// Number of retained Fourier terms, optionally with the `ε` it came from.
/// `terms = 0` is accepted and yields the constant density 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierConfig {
    pub terms: usize,
    pub epsilon: Option<f64>,
}

impl FourierConfig {
    pub fn with_terms(terms: usize) -> Self {
        Self { terms, epsilon: None }
    }

    /// `M = min_terms(params, epsilon)`.
    pub fn from_epsilon(params: &GenGammaParams, epsilon: f64) -> Result<Self> {
        Ok(Self {
            terms: min_terms(params, epsilon)?,
            epsilon: Some(epsilon),
        })
    }
}

fn check_u(u: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::domain("u", format!("must lie in [0, 1], got {u}")));
    }
    Ok(())
}

/// `((d + p) ln B)²`, the constant shared by the truncation bound and `M`.
fn bound_numerator(params: &GenGammaParams) -> f64 {
    let c = (params.d() + params.p()) * params.ln_base();
    c * c
}

/// Pointwise bound on `|f - f_M|`: `((d+p) ln B)² / (2π²(M+1))`.
pub fn truncation_bound(params: &GenGammaParams, terms: usize) -> f64 {
    bound_numerator(params) / (2.0 * PI * PI * (terms as f64 + 1.0))
}

/// Smallest `M ≥ 1` with `M > ((d+p) ln B)² / (2π²ε) - 1`.
pub fn min_terms(params: &GenGammaParams, epsilon: f64) -> Result<usize> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::domain("epsilon", format!("must be > 0, got {epsilon}")));
    }
    let threshold = bound_numerator(params) / (2.0 * PI * PI * epsilon) - 1.0;
    if threshold >= 1e15 {
        return Err(Error::domain(
            "epsilon",
            format!("{epsilon} needs more than 1e15 Fourier terms"),
        ));
    }
    if threshold < 1.0 {
        return Ok(1);
    }
    Ok(threshold.floor() as usize + 1)
}

/// `f(u)` from the direct bilateral sum.
///
/// Summation starts at the index whose summand is largest (`w_k ≈ d/p`) and
/// walks outward. Past the peak, consecutive summands shrink by at most
///
/// ```text
/// right: r_k = B^d · exp(-w_k (B^p - 1))
/// left:  r_k = B^-d · exp(w_k (1 - B^-p))
/// ```
///
/// and both ratios only decrease further out, so once `r_k < 1` the rest of
/// that side is below the geometric majorant `t_k r_k / (1 - r_k)`. Each side
/// stops when its majorant falls below half the tolerance.
pub fn direct_pdf(u: f64, params: &GenGammaParams, cfg: &DirectSumConfig) -> Result<WrappedDensityEval> {
    check_u(u)?;
    let s = params.shape();
    let p = params.p();
    let d = params.d();
    let ln_b = params.ln_base();
    let ln_a = params.a().ln();
    let ln_prefactor = p.ln() + ln_b.ln() - ln_gamma_pos(s);

    let term = |k: i64| -> (f64, f64) {
        let ln_w = p * ((k as f64 + u) * ln_b - ln_a);
        let w = ln_w.exp();
        ((ln_prefactor - w + s * ln_w).exp(), w)
    };

    let grow_right = (p * ln_b).exp_m1();
    let shrink_left = -(-p * ln_b).exp_m1();
    let half_tol = 0.5 * cfg.tail_tolerance;

    let k0 = ((s.ln() / p + ln_a) / ln_b - u).round() as i64;
    let (t0, w0) = term(k0);
    let mut value = t0;
    let mut terms = 1;
    let mut tail_total = 0.0;

    for (dir, rate) in [(1i64, grow_right), (-1i64, shrink_left)] {
        let (mut t, mut w) = (t0, w0);
        let mut k = k0;
        let mut steps = 0;
        loop {
            let ln_r = if dir > 0 {
                d * ln_b - w * rate
            } else {
                w * rate - d * ln_b
            };
            if ln_r < 0.0 {
                let r = ln_r.exp();
                let tail = t * r / (1.0 - r);
                if tail <= half_tol {
                    tail_total += tail;
                    break;
                }
            }
            if steps == cfg.max_terms_each_side {
                return Err(Error::Truncation {
                    partial: value,
                    terms,
                    tail_bound: f64::INFINITY,
                });
            }
            k += dir;
            (t, w) = term(k);
            value += t;
            terms += 1;
            steps += 1;
        }
    }

    Ok(WrappedDensityEval {
        u,
        value,
        method: Method::Direct,
        error_bound: tail_total,
        terms,
    })
}

/// `f_M` with the gamma factors precomputed; evaluating at a new `u` is a
/// phase rotation of each cached coefficient.
#[derive(Debug, Clone)]
pub struct FourierSeries {
    params: GenGammaParams,
    terms: usize,
    epsilon: Option<f64>,
    // c_k = (2/Γ(s)) Γ(s - 2πik/(p ln B)) e^(-2πik log_B a), k = 1..
    coefficients: Vec<Complex64>,
}

fn unit_phase(turns: f64) -> Complex64 {
    let theta = 2.0 * PI * turns.fract();
    Complex64::new(theta.cos(), theta.sin())
}

/// `ln |(2/Γ(s)) Γ(s - 2πik/(p ln B))|` and the complex ratio itself.
fn gamma_ratio(params: &GenGammaParams, k: usize) -> (f64, Complex64) {
    let s = params.shape();
    let b = 2.0 * PI * k as f64 / (params.p() * params.ln_base());
    let ln = ln_gamma_complex_pos(Complex64::new(s, -b)) - ln_gamma_pos(s) + std::f64::consts::LN_2;
    (ln.re, ln.exp())
}

impl FourierSeries {
    pub fn new(params: &GenGammaParams, cfg: &FourierConfig) -> Self {
        let phase_a = params.scale_phase();
        let mut coefficients = Vec::new();
        for k in 1..=cfg.terms {
            let (ln_mod, ratio) = gamma_ratio(params, k);
            if ln_mod < LN_NEGLIGIBLE {
                break;
            }
            coefficients.push(ratio * unit_phase(-(k as f64) * phase_a));
        }
        Self {
            params: *params,
            terms: cfg.terms,
            epsilon: cfg.epsilon,
            coefficients,
        }
    }

    pub fn params(&self) -> &GenGammaParams {
        &self.params
    }

    /// Nominal `M`.
    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    /// Terms with non-negligible coefficients (`≤ M`).
    pub fn effective_terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn truncation_bound(&self) -> f64 {
        truncation_bound(&self.params, self.terms)
    }

    /// `f_M(u) - 1`. Periodic in `u`.
    pub fn residual(&self, u: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| (c * unit_phase((i + 1) as f64 * u)).re)
            .sum()
    }

    pub fn evaluate(&self, u: f64) -> f64 {
        1.0 + self.residual(u)
    }

    /// `Σ_k 2πk |c_k|`, a Lipschitz constant for `f_M`.
    pub fn derivative_bound(&self) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| 2.0 * PI * (i + 1) as f64 * c.norm())
            .sum()
    }

    /// `∫_lo^hi (f_M(u) - 1) du` from the termwise antiderivatives.
    pub fn residual_integral(&self, lo: f64, hi: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = (i + 1) as f64;
                let delta = unit_phase(k * hi) - unit_phase(k * lo);
                (c * delta / Complex64::new(0.0, 2.0 * PI * k)).re
            })
            .sum()
    }
}

/// `f_M(u)` for the `M` in `cfg`.
pub fn fourier_pdf(u: f64, params: &GenGammaParams, cfg: &FourierConfig) -> Result<WrappedDensityEval> {
    check_u(u)?;
    let series = FourierSeries::new(params, cfg);
    Ok(WrappedDensityEval {
        u,
        value: series.evaluate(u),
        method: Method::Fourier,
        error_bound: series.truncation_bound(),
        terms: series.effective_terms(),
    })
}

/// The `k`-th residue term `(2/Γ(s)) Re[e^(2πik(u - log_B a)) Γ(s - 2πik/(p ln B))]`.
pub fn fourier_term(k: usize, u: f64, params: &GenGammaParams) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("k", "residue terms start at k = 1"));
    }
    if !u.is_finite() {
        return Err(Error::domain("u", format!("must be finite, got {u}")));
    }
    let (_, ratio) = gamma_ratio(params, k);
    let turns = (k as f64 * u).fract() - (k as f64 * params.scale_phase()).fract();
    Ok((ratio * unit_phase(turns)).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gengamma::cdf;
    use crate::quad::integrate;

    fn gg(a: f64, d: f64, p: f64) -> GenGammaParams {
        GenGammaParams::new(a, d, p, 10).unwrap()
    }

    fn nine_triples() -> Vec<GenGammaParams> {
        let mut out = Vec::new();
        for d in [0.5, 1.0, 2.0] {
            for p in [0.5, 1.0, 2.0] {
                out.push(gg(1.0, d, p));
            }
        }
        out
    }

    fn grid(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |j| (j as f64 + 0.5) / n as f64)
    }

    #[test]
    fn min_terms_examples() {
        assert_eq!(min_terms(&gg(1.0, 0.5, 0.5), 0.01).unwrap(), 26);
        assert_eq!(min_terms(&gg(1.0, 1.0, 0.5), 0.01).unwrap(), 60);
        assert_eq!(min_terms(&gg(1.0, 0.5, 0.5), 1e300).unwrap(), 1);
        assert_eq!(min_terms(&gg(1.0, 0.5, 0.5), f64::INFINITY).unwrap(), 1);
        assert!(min_terms(&gg(1.0, 0.5, 0.5), 0.0).is_err());
        assert!(min_terms(&gg(1.0, 0.5, 0.5), -1.0).is_err());
        assert!(min_terms(&gg(1.0, 0.5, 0.5), 1e-300).is_err());
    }

    #[test]
    fn min_terms_meets_epsilon() {
        for params in nine_triples() {
            for eps in [0.1, 0.01, 1e-4] {
                let m = min_terms(&params, eps).unwrap();
                assert!(truncation_bound(&params, m) < eps);
                if m > 1 {
                    assert!(truncation_bound(&params, m - 1) >= eps);
                }
            }
        }
    }

    #[test]
    fn direct_pdf_integrates_to_one() {
        let params = gg(1.0, 0.5, 0.5);
        let cfg = DirectSumConfig::default();
        let r = integrate(
            |u| direct_pdf(u, &params, &cfg).unwrap().value,
            0.0,
            1.0,
            1e-10,
            0.0,
            1000,
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 2e-6, "{}", r.value);
    }

    #[test]
    fn direct_pdf_scale_class() {
        let cfg = DirectSumConfig::default();
        for u in grid(64) {
            let two = direct_pdf(u, &gg(2.0, 1.3, 0.7), &cfg).unwrap().value;
            let twenty = direct_pdf(u, &gg(20.0, 1.3, 0.7), &cfg).unwrap().value;
            assert!((two - twenty).abs() < 1e-10, "u={u}");
        }
    }

    #[test]
    fn direct_pdf_exponential_matches_cdf_differences() {
        let params = gg(1.0, 1.0, 1.0);
        let got = direct_pdf(0.5, &params, &DirectSumConfig::default()).unwrap();
        // 40-digit nsum of the same bilateral series.
        assert!((got.value - 0.917_568_786_799_168_166).abs() < 1e-12);

        // Finite-difference oracle on Prob(log_B X mod 1 ∈ [0, u]).
        let delta = 1e-6;
        let mut fd = 0.0;
        for k in -40..4 {
            let lo = 10f64.powf(k as f64 + 0.5 - delta);
            let hi = 10f64.powf(k as f64 + 0.5 + delta);
            fd += (cdf(hi, &params).unwrap() - cdf(lo, &params).unwrap()) / (2.0 * delta);
        }
        assert!((got.value - fd).abs() < 1e-5, "{} vs {fd}", got.value);
    }

    #[test]
    fn direct_pdf_reports_truncation() {
        let tight = DirectSumConfig::new(1e-14, 2).unwrap();
        match direct_pdf(0.3, &gg(1.0, 0.05, 0.05), &tight) {
            Err(Error::Truncation { partial, terms, .. }) => {
                assert!(partial > 0.0);
                assert!(terms >= 3);
            }
            other => panic!("expected truncation, got {other:?}"),
        }
    }

    #[test]
    fn direct_pdf_validation() {
        let cfg = DirectSumConfig::default();
        assert!(direct_pdf(-0.1, &gg(1.0, 1.0, 1.0), &cfg).is_err());
        assert!(direct_pdf(1.5, &gg(1.0, 1.0, 1.0), &cfg).is_err());
        assert!(direct_pdf(f64::NAN, &gg(1.0, 1.0, 1.0), &cfg).is_err());
        assert!(DirectSumConfig::new(0.0, 10).is_err());
        assert!(DirectSumConfig::new(1e-8, 0).is_err());
    }

    #[test]
    fn endpoints_are_interior_limits() {
        let params = gg(3.0, 0.8, 1.4);
        let cfg = DirectSumConfig::default();
        let at0 = direct_pdf(0.0, &params, &cfg).unwrap().value;
        let at1 = direct_pdf(1.0, &params, &cfg).unwrap().value;
        let near0 = direct_pdf(1e-9, &params, &cfg).unwrap().value;
        assert!((at0 - at1).abs() < 1e-12);
        assert!((at0 - near0).abs() < 1e-6);
    }

    #[test]
    fn fourier_zero_terms_is_uniform() {
        let e = fourier_pdf(0.37, &gg(1.0, 2.0, 2.0), &FourierConfig::with_terms(0)).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.terms, 0);
    }

    #[test]
    fn fourier_matches_direct_at_one_percent() {
        let params = gg(1.0, 0.5, 0.5);
        let cfg = FourierConfig::from_epsilon(&params, 0.01).unwrap();
        assert_eq!(cfg.terms, 26);
        let series = FourierSeries::new(&params, &cfg);
        let direct_cfg = DirectSumConfig::new(1e-8, 100_000).unwrap();
        let worst = (0..1024)
            .map(|j| (j as f64 + 0.5) / 1024.0)
            .map(|u| (series.evaluate(u) - direct_pdf(u, &params, &direct_cfg).unwrap().value).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 0.01 + 1e-8, "{worst}");
    }

    #[test]
    fn fourier_scale_class() {
        let cfg = FourierConfig::with_terms(40);
        for a in [0.3, 1.0, 2.0, 7.0] {
            let s1 = FourierSeries::new(&gg(a, 0.5, 0.5), &cfg);
            let s2 = FourierSeries::new(&gg(a * 10.0, 0.5, 0.5), &cfg);
            for u in grid(128) {
                assert!((s1.evaluate(u) - s2.evaluate(u)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fourier_pdf_reports_bound() {
        let params = gg(1.0, 0.5, 0.5);
        let e = fourier_pdf(0.5, &params, &FourierConfig::from_epsilon(&params, 0.01).unwrap()).unwrap();
        assert_eq!(e.method, Method::Fourier);
        assert!((e.error_bound - truncation_bound(&params, 26)).abs() < 1e-18);
        assert!(e.error_bound < 0.01);
    }

    #[test]
    fn term_magnitude_bound() {
        for params in nine_triples() {
            let c = bound_numerator(&params) / (PI * PI);
            for k in 1..=1000 {
                for u in [0.1, 0.45, 0.8] {
                    let t = fourier_term(k, u, &params).unwrap();
                    assert!(t.abs() <= c / (k * k) as f64, "{params:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn term_periodicity() {
        let params = gg(2.0, 0.7, 0.9);
        let shifted = gg(20.0, 0.7, 0.9);
        for k in 1..20 {
            for u in [0.05, 0.5, 0.93] {
                let t = fourier_term(k, u, &params).unwrap();
                assert!((t - fourier_term(k, u + 1.0, &params).unwrap()).abs() < 1e-13);
                assert!((t - fourier_term(k, u, &shifted).unwrap()).abs() < 1e-13);
            }
        }
        assert!(fourier_term(0, 0.5, &params).is_err());
    }

    #[test]
    fn series_sums_its_terms() {
        let params = gg(3.0, 1.5, 0.6);
        let series = FourierSeries::new(&params, &FourierConfig::with_terms(12));
        for u in [0.1, 0.6] {
            let by_terms: f64 = (1..=12).map(|k| fourier_term(k, u, &params).unwrap()).sum();
            assert!((series.residual(u) - by_terms).abs() < 1e-14);
        }
    }

    #[test]
    fn fourier_normalizes() {
        for params in nine_triples() {
            let series = FourierSeries::new(&params, &FourierConfig::with_terms(30));
            let r = integrate(|u| series.evaluate(u), 0.0, 1.0, 1e-13, 0.0, 2000).unwrap();
            assert!((r.value - 1.0).abs() < 1e-10, "{params:?}: {}", r.value);
            assert!(series.residual_integral(0.0, 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn residual_integral_matches_quadrature() {
        let params = gg(1.0, 2.0, 1.0);
        let series = FourierSeries::new(&params, &FourierConfig::with_terms(50));
        for (lo, hi) in [(0.0, 0.301), (0.2, 0.9), (0.6, 0.61)] {
            let q = integrate(|u| series.residual(u), lo, hi, 1e-14, 0.0, 1000).unwrap();
            assert!((series.residual_integral(lo, hi) - q.value).abs() < 1e-12);
        }
    }

    #[test]
    fn truncation_bound_is_sound() {
        for params in nine_triples() {
            for m in [1usize, 5, 26] {
                let short = FourierSeries::new(&params, &FourierConfig::with_terms(m));
                let long = FourierSeries::new(&params, &FourierConfig::with_terms(m + 512));
                let bound = truncation_bound(&params, m);
                for u in grid(256) {
                    assert!((short.evaluate(u) - long.evaluate(u)).abs() <= bound);
                }
            }
        }
    }

    #[test]
    fn direct_form_is_nonnegative() {
        let cfg = DirectSumConfig::default();
        for (a, d, p) in [(1.0, 5.0, 5.0), (0.01, 4.0, 0.3), (1e6, 0.1, 3.0), (1.0, 0.5, 0.5)] {
            let params = gg(a, d, p);
            for u in grid(200) {
                assert!(direct_pdf(u, &params, &cfg).unwrap().value >= 0.0);
            }
        }
    }

    /// Weibull (d = p) wrapped density, summed by brute force over k.
    fn weibull_wrapped(u: f64, a: f64, p: f64, base: f64) -> f64 {
        let ln_b = base.ln();
        (-400..400)
            .map(|k| {
                let ln_w = p * ((k as f64 + u) * ln_b - a.ln());
                (ln_b * p).ln() + ln_w - ln_w.exp()
            })
            .map(f64::exp)
            .sum()
    }

    #[test]
    fn weibull_consistency() {
        let cfg = DirectSumConfig::new(1e-15, 100_000).unwrap();
        for (a, p, b) in [
            (1.0, 1.0, 10u32),
            (2.5, 0.4, 10),
            (0.1, 2.0, 10),
            (3.0, 0.7, 2),
            (1.0, 1.3, 16),
        ] {
            let params = GenGammaParams::new(a, p, p, b).unwrap();
            for u in grid(50) {
                let got = direct_pdf(u, &params, &cfg).unwrap().value;
                let want = weibull_wrapped(u, a, p, b as f64);
                assert!((got - want).abs() < 1e-12, "a={a} p={p} B={b} u={u}: {got} vs {want}");
            }
        }
    }
}
