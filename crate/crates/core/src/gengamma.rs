//! The generalized gamma distribution with scale `a`, shape `d` and power `p`:
//!
//! ```text
//! F(x) = γ(d/p, (x/a)^p) / Γ(d/p)
//! f(x) = (p / a^d) x^(d-1) e^(-(x/a)^p) / Γ(d/p),   x > 0
//! ```
//!
//! `d = p` gives the Weibull law and `d = p = 1` the exponential law with
//! mean `a`. The digit base `B` rides along with the shape parameters since
//! every downstream quantity is base dependent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::specfun::{inv_reg_lower_incomplete_gamma, ln_gamma_pos, reg_lower_unchecked};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenGammaParams {
    a: f64,
    d: f64,
    p: f64,
    base: u32,
}

fn positive(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::domain(name, format!("must be finite and > 0, got {v}")))
    }
}

impl GenGammaParams {
    pub fn new(a: f64, d: f64, p: f64, base: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::domain("base", format!("must be an integer >= 2, got {base}")));
        }
        Ok(Self {
            a: positive("a", a)?,
            d: positive("d", d)?,
            p: positive("p", p)?,
            base,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// `d / p`, the shape of the underlying gamma variate `(X/a)^p`.
    pub fn shape(&self) -> f64 {
        self.d / self.p
    }

    pub fn ln_base(&self) -> f64 {
        f64::from(self.base).ln()
    }

    /// `log_B a mod 1`: the only part of the scale the wrapped density sees.
    pub fn scale_phase(&self) -> f64 {
        let r = (self.a.ln() / self.ln_base()).rem_euclid(1.0);
        if r >= 1.0 {
            0.0
        } else {
            r
        }
    }

    pub fn with_a(self, a: f64) -> Result<Self> {
        Self::new(a, self.d, self.p, self.base)
    }

    pub fn with_d(self, d: f64) -> Result<Self> {
        Self::new(self.a, d, self.p, self.base)
    }

    pub fn with_p(self, p: f64) -> Result<Self> {
        Self::new(self.a, self.d, p, self.base)
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("x", format!("support is x > 0, got {x}")));
    }
    Ok(())
}

pub fn ln_pdf(x: f64, params: &GenGammaParams) -> Result<f64> {
    check_x(x)?;
    let GenGammaParams { a, d, p, .. } = *params;
    Ok(p.ln() - d * a.ln() + (d - 1.0) * x.ln() - (x / a).powf(p) - ln_gamma_pos(d / p))
}

pub fn pdf(x: f64, params: &GenGammaParams) -> Result<f64> {
    ln_pdf(x, params).map(f64::exp)
}

pub fn cdf(x: f64, params: &GenGammaParams) -> Result<f64> {
    check_x(x)?;
    reg_lower_unchecked(params.shape(), (x / params.a).powf(params.p))
}

/// Inverse cdf. `quantile(0)` returns 0 even though the support is open there.
pub fn quantile(q: f64, params: &GenGammaParams) -> Result<f64> {
    if !(0.0..1.0).contains(&q) {
        return Err(Error::domain("q", format!("must lie in [0, 1), got {q}")));
    }
    if q == 0.0 {
        return Ok(0.0);
    }
    let g = inv_reg_lower_incomplete_gamma(params.shape(), q)?;
    Ok(params.a * g.powf(1.0 / params.p))
}

/// Draws from a generalized gamma law, kept in log space as well so that
/// extreme lower tails (small `d/p` with small `p`) never round to zero
/// before the mantissa is taken.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    params: GenGammaParams,
    seed: u64,
    ln_values: Vec<f64>,
    values: Vec<f64>,
}

impl SampleBatch {
    pub fn params(&self) -> &GenGammaParams {
        &self.params
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `X_i`. Entries may underflow to zero in tails beyond `1e-308`; use
    /// [`SampleBatch::ln_values`] when that matters.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ln_values(&self) -> &[f64] {
        &self.ln_values
    }

    /// `log_B X_i mod 1` computed from the log-space draws.
    pub fn mantissas(&self) -> Vec<f64> {
        let ln_b = self.params.ln_base();
        self.ln_values
            .iter()
            .map(|&l| crate::benford::wrap_unit(l / ln_b))
            .collect()
    }
}

/// `ln G` for `G ~ Gamma(shape, 1)` (Marsaglia-Tsang, boosted for shape < 1).
pub fn ln_standard_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    if shape < 1.0 {
        // G(shape) = G(shape + 1) · U^(1/shape)
        let u: f64 = 1.0 - rng.random::<f64>();
        return ln_standard_gamma(shape + 1.0, rng) + u.ln() / shape;
    }
    let dd = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * dd).sqrt();
    loop {
        let z: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * z;
        if v <= 0.0 {
            continue;
        }
        let v3 = v * v * v;
        let u: f64 = 1.0 - rng.random::<f64>();
        if u.ln() < 0.5 * z * z + dd - dd * v3 + dd * v3.ln() {
            return dd.ln() + v3.ln();
        }
    }
}

/// Sample with a caller-supplied generator.
pub fn sample_with_rng<R: Rng + ?Sized>(
    n: usize,
    params: &GenGammaParams,
    seed: u64,
    rng: &mut R,
) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::domain("n", "sample size must be at least 1"));
    }
    let shape = params.shape();
    let ln_a = params.a.ln();
    let inv_p = 1.0 / params.p;
    let ln_values: Vec<f64> = (0..n).map(|_| ln_a + inv_p * ln_standard_gamma(shape, rng)).collect();
    let values = ln_values.iter().map(|l| l.exp()).collect();
    Ok(SampleBatch {
        params: *params,
        seed,
        ln_values,
        values,
    })
}

/// `X = a · G^(1/p)` with `G ~ Gamma(d/p, 1)`, driven by a ChaCha8 stream
/// seeded from `seed`. Same `(n, params, seed)` gives the same batch.
pub fn sample(n: usize, params: &GenGammaParams, seed: u64) -> Result<SampleBatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_rng(n, params, seed, &mut rng)
}
