//! Deviation from Benford: certified bounds, per-digit integrals, KS sweeps.
//!
//! For every leading digit `δ`,
//!
//! ```text
//! |P(first digit = δ) - log_B((δ+1)/δ)| = |∫_{log_B δ}^{log_B(δ+1)} (f(u) - 1) du|
//!                                        ≤ ε + sup_u |f_M(u) - 1|
//! ```
//!
//! where `M = min_terms(ε)`. The supremum is found on a uniform periodic grid,
//! polished by golden-section search, and certified by adding `L·h/2` with
//! `L` a Lipschitz constant for `f_M`, so the reported bound stays one-sided.

use rayon::prelude::*;

use crate::benford::benford_digit_prob;
use crate::gengamma::{sample, GenGammaParams};
use crate::quad::integrate;
use crate::wrapped::{direct_pdf, DirectSumConfig, FourierConfig, FourierSeries};
use crate::{Error, Result};

pub const DEFAULT_SUP_GRID: usize = 1024;
pub const MIN_SUP_GRID: usize = 64;
/// Sample sizes below this still run, but results are flagged.
pub const LOW_SAMPLE_SIZE: usize = 100;

const GOLDEN_ITERS: usize = 80;
const REFINED_CELLS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupResidual {
    /// Largest `|f_M(u) - 1|` found (grid plus refinement).
    pub sup: f64,
    /// `L·h/2`; `sup + lipschitz_slack` bounds the true supremum.
    pub lipschitz_slack: f64,
    /// Where `sup` was attained.
    pub argmax: f64,
    pub grid_points: usize,
}

impl SupResidual {
    pub fn certified(&self) -> f64 {
        self.sup + self.lipschitz_slack
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_ITERS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `sup_u |f_M(u) - 1|` with its Lipschitz certificate.
pub fn sup_residual_of(series: &FourierSeries, grid_points: usize) -> Result<SupResidual> {
    if grid_points < MIN_SUP_GRID {
        return Err(Error::domain(
            "grid_points",
            format!("need at least {MIN_SUP_GRID}, got {grid_points}"),
        ));
    }
    if series.effective_terms() == 0 {
        return Ok(SupResidual {
            sup: 0.0,
            lipschitz_slack: 0.0,
            argmax: 0.0,
            grid_points,
        });
    }
    let h = 1.0 / grid_points as f64;
    let abs_res = |u: f64| series.residual(u).abs();
    let values: Vec<f64> = (0..grid_points).map(|j| abs_res(j as f64 * h)).collect();

    let mut order: Vec<usize> = (0..grid_points).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));

    let mut best = (order[0] as f64 * h, values[order[0]]);
    for &j in order.iter().take(REFINED_CELLS) {
        let center = j as f64 * h;
        let (u, v) = golden_max(abs_res, center - h, center + h);
        if v > best.1 {
            best = (u.rem_euclid(1.0), v);
        }
    }
    Ok(SupResidual {
        sup: best.1,
        lipschitz_slack: 0.5 * h * series.derivative_bound(),
        argmax: best.0,
        grid_points,
    })
}

pub fn sup_residual(params: &GenGammaParams, terms: usize, grid_points: usize) -> Result<SupResidual> {
    sup_residual_of(
        &FourierSeries::new(params, &FourierConfig::with_terms(terms)),
        grid_points,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub params: GenGammaParams,
    pub epsilon: f64,
    pub terms: usize,
    pub sup_residual: f64,
    pub argmax: f64,
    pub grid_points: usize,
    pub lipschitz_slack: f64,
    /// `epsilon + sup_residual + lipschitz_slack`.
    pub bound: f64,
}

pub fn deviation_bound_with_grid(params: &GenGammaParams, epsilon: f64, grid_points: usize) -> Result<DeviationReport> {
    let cfg = FourierConfig::from_epsilon(params, epsilon)?;
    let series = FourierSeries::new(params, &cfg);
    let sup = sup_residual_of(&series, grid_points)?;
    Ok(DeviationReport {
        params: *params,
        epsilon,
        terms: cfg.terms,
        sup_residual: sup.sup,
        argmax: sup.argmax,
        grid_points,
        lipschitz_slack: sup.lipschitz_slack,
        bound: epsilon + sup.sup + sup.lipschitz_slack,
    })
}

/// Upper bound on every first-digit probability's distance from Benford.
pub fn deviation_bound(params: &GenGammaParams, epsilon: f64) -> Result<DeviationReport> {
    deviation_bound_with_grid(params, epsilon, DEFAULT_SUP_GRID)
}

fn digit_interval(params: &GenGammaParams, digit: u32) -> Result<(f64, f64)> {
    let base = params.base();
    if digit == 0 || digit >= base {
        return Err(Error::domain(
            "digit",
            format!("must lie in 1..={}, got {digit}", base - 1),
        ));
    }
    let ln_b = params.ln_base();
    Ok((f64::from(digit).ln() / ln_b, f64::from(digit + 1).ln() / ln_b))
}

/// `∫ (f_M - 1) du` over `[log_B δ, log_B(δ+1))`, signed.
pub fn signed_digit_deviation(series: &FourierSeries, digit: u32) -> Result<f64> {
    let (lo, hi) = digit_interval(series.params(), digit)?;
    Ok(series.residual_integral(lo, hi))
}

/// `|P_M(first digit = δ) - log_B((δ+1)/δ)|` under the `M`-term density.
pub fn per_digit_deviation(params: &GenGammaParams, digit: u32, terms: usize) -> Result<f64> {
    let series = FourierSeries::new(params, &FourierConfig::with_terms(terms));
    signed_digit_deviation(&series, digit).map(f64::abs)
}

/// First-digit probabilities implied by `f_M`.
pub fn digit_probabilities(series: &FourierSeries) -> Result<Vec<f64>> {
    (1..series.params().base())
        .map(|digit| Ok(benford_digit_prob(digit, series.params().base())? + signed_digit_deviation(series, digit)?))
        .collect()
}

/// Signed per-digit deviation by adaptive quadrature of the direct form.
pub fn signed_digit_deviation_direct(params: &GenGammaParams, digit: u32, cfg: &DirectSumConfig) -> Result<f64> {
    let (lo, hi) = digit_interval(params, digit)?;
    let mut failure = None;
    let r = integrate(
        |u| match direct_pdf(u, params, cfg) {
            Ok(e) => e.value - 1.0,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        1e-12,
        0.0,
        10_000,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub sample_size: usize,
    pub params: GenGammaParams,
    pub seed: u64,
}

impl KsResult {
    pub fn low_sample_size(&self) -> bool {
        self.sample_size < LOW_SAMPLE_SIZE
    }
}

/// One-sample KS statistic against uniform `[0, 1)`.
pub fn ks_statistic(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::domain("values", "need at least one value"));
    }
    if let Some(bad) = values.iter().find(|v| !(0.0..1.0).contains(*v)) {
        return Err(Error::domain(
            "values",
            format!("entries must lie in [0, 1), got {bad}"),
        ));
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    Ok(sorted
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i + 1) as f64 / n - u).max(u - i as f64 / n))
        .fold(0.0, f64::max))
}

/// KS statistic of `n` mantissas drawn with `seed`.
pub fn ks_test(params: &GenGammaParams, n: usize, seed: u64) -> Result<KsResult> {
    let batch = sample(n, params, seed)?;
    Ok(KsResult {
        statistic: ks_statistic(&batch.mantissas())?,
        sample_size: n,
        params: *params,
        seed,
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for sweep cell `index`; independent of evaluation order.
pub fn cell_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    A,
    D,
    P,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::A => "a",
            SweepAxis::D => "d",
            SweepAxis::P => "p",
        }
    }

    fn apply(self, params: &GenGammaParams, value: f64) -> Result<GenGammaParams> {
        match self {
            SweepAxis::A => params.with_a(value),
            SweepAxis::D => params.with_d(value),
            SweepAxis::P => params.with_p(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub values: Vec<f64>,
}

/// Row-major grid of sweep results (last axis fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axes: Vec<GridAxis>,
    pub cells: Vec<f64>,
    pub epsilon: Option<f64>,
    pub sample_size: Option<usize>,
    pub seed: Option<u64>,
}

impl SweepGrid {
    fn new(axes: Vec<GridAxis>, cells: Vec<f64>) -> Self {
        debug_assert_eq!(cells.len(), axes.iter().map(|a| a.values.len()).product::<usize>());
        Self {
            axes,
            cells,
            epsilon: None,
            sample_size: None,
            seed: None,
        }
    }

    /// Cell at one index per axis.
    pub fn cell(&self, index: &[usize]) -> Option<f64> {
        if index.len() != self.axes.len() {
            return None;
        }
        let mut flat = 0;
        for (axis, &i) in self.axes.iter().zip(index) {
            if i >= axis.values.len() {
                return None;
            }
            flat = flat * axis.values.len() + i;
        }
        self.cells.get(flat).copied()
    }

    pub fn low_sample_size(&self) -> bool {
        self.sample_size.is_some_and(|n| n < LOW_SAMPLE_SIZE)
    }
}

fn check_axis(name: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::domain(name, "axis needs at least one value"));
    }
    Ok(())
}

/// KS statistics over a `(d, p)` grid, `n` draws per cell.
pub fn ks_sweep_results(
    d_values: &[f64],
    p_values: &[f64],
    a: f64,
    base: u32,
    n: usize,
    seed: u64,
) -> Result<Vec<KsResult>> {
    check_axis("d", d_values)?;
    check_axis("p", p_values)?;
    if n == 0 {
        return Err(Error::domain("n", "sample size must be at least 1"));
    }
    let cells: Vec<(usize, GenGammaParams)> = d_values
        .iter()
        .flat_map(|&d| p_values.iter().map(move |&p| (d, p)))
        .enumerate()
        .map(|(i, (d, p))| Ok((i, GenGammaParams::new(a, d, p, base)?)))
        .collect::<Result<_>>()?;
    cells
        .par_iter()
        .map(|(i, params)| ks_test(params, n, cell_seed(seed, *i)))
        .collect()
}

pub fn ks_sweep(d_values: &[f64], p_values: &[f64], a: f64, base: u32, n: usize, seed: u64) -> Result<SweepGrid> {
    let results = ks_sweep_results(d_values, p_values, a, base, n, seed)?;
    let mut grid = SweepGrid::new(
        vec![
            GridAxis {
                name: "d".into(),
                values: d_values.to_vec(),
            },
            GridAxis {
                name: "p".into(),
                values: p_values.to_vec(),
            },
        ],
        results.iter().map(|r| r.statistic).collect(),
    );
    grid.sample_size = Some(n);
    grid.seed = Some(seed);
    Ok(grid)
}

/// One [`DeviationReport`] per axis value, other parameters held at `fixed`.
pub fn bound_sweep_reports(
    axis: SweepAxis,
    values: &[f64],
    fixed: &GenGammaParams,
    epsilon: f64,
    grid_points: usize,
) -> Result<Vec<DeviationReport>> {
    check_axis(axis.name(), values)?;
    let params: Vec<GenGammaParams> = values.iter().map(|&v| axis.apply(fixed, v)).collect::<Result<_>>()?;
    params
        .par_iter()
        .map(|p| deviation_bound_with_grid(p, epsilon, grid_points))
        .collect()
}

pub fn bound_sweep(axis: SweepAxis, values: &[f64], fixed: &GenGammaParams, epsilon: f64) -> Result<SweepGrid> {
    let reports = bound_sweep_reports(axis, values, fixed, epsilon, DEFAULT_SUP_GRID)?;
    let mut grid = SweepGrid::new(
        vec![GridAxis {
            name: axis.name().into(),
            values: values.to_vec(),
        }],
        reports.iter().map(|r| r.bound).collect(),
    );
    grid.epsilon = Some(epsilon);
    Ok(grid)
}
