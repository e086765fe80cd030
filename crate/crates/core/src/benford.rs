//! Significands, mantissas and first-digit statistics in an integer base `B ≥ 2`.

use crate::{Error, Result};

/// `|x| = significand · B^exponent` with `1 ≤ significand < B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificandDecomposition {
    pub significand: f64,
    pub exponent: i32,
}

fn check_base(base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::domain("base", format!("must be an integer >= 2, got {base}")));
    }
    Ok(f64::from(base))
}

/// Map a real onto `[0, 1)`; rounding that lands exactly on 1 wraps to 0.
pub(crate) fn wrap_unit(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn scale_by_power(x: f64, b: f64, n: i32) -> f64 {
    // x · B^(-n); multiplying by an exact positive power is more accurate
    // than dividing by an inexact negative one.
    if n >= 0 {
        x / b.powi(n)
    } else {
        x * b.powi(-n)
    }
}

/// `S_B(x)` and its exponent. The exponent comes from `log_B |x|` and is then
/// corrected once by direct comparison so values within rounding distance of
/// `B^k` land on the right side.
pub fn significand(x: f64, base: u32) -> Result<SignificandDecomposition> {
    let b = check_base(base)?;
    if x == 0.0 || !x.is_finite() {
        return Err(Error::domain(
            "x",
            format!("significand needs finite nonzero x, got {x}"),
        ));
    }
    let ax = x.abs();
    let mut n = (ax.ln() / b.ln()).floor() as i32;
    let mut s = scale_by_power(ax, b, n);
    if s >= b {
        n += 1;
        s = scale_by_power(ax, b, n);
    } else if s < 1.0 {
        n -= 1;
        s = scale_by_power(ax, b, n);
    }
    // A second rounding can still leave s a hair outside [1, B).
    if s >= b {
        s = b * (1.0 - f64::EPSILON / 2.0);
    } else if s < 1.0 {
        s = 1.0;
    }
    Ok(SignificandDecomposition {
        significand: s,
        exponent: n,
    })
}

/// `log_B x mod 1`, taken as `log_B` of the significand so exact powers of
/// the base give exactly 0.
pub fn mantissa(x: f64, base: u32) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("x", format!("mantissa needs x > 0, got {x}")));
    }
    let s = significand(x, base)?.significand;
    let m = s.ln() / f64::from(base).ln();
    Ok(if m >= 1.0 { 1.0 - f64::EPSILON / 2.0 } else { m })
}

pub fn leading_digit(x: f64, base: u32) -> Result<u32> {
    let s = significand(x, base)?.significand;
    Ok((s.floor() as u32).min(base - 1))
}

/// `log_B((digit + 1) / digit)`.
pub fn benford_digit_prob(digit: u32, base: u32) -> Result<f64> {
    let b = check_base(base)?;
    if digit == 0 || digit >= base {
        return Err(Error::domain(
            "digit",
            format!("must lie in 1..={}, got {digit}", base - 1),
        ));
    }
    Ok((1.0 / f64::from(digit)).ln_1p() / b.ln())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitHistogram {
    base: u32,
    counts: Vec<u64>,
    total: u64,
}

impl DigitHistogram {
    pub fn empty(base: u32) -> Result<Self> {
        check_base(base)?;
        Ok(Self {
            base,
            counts: vec![0; base as usize - 1],
            total: 0,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Counts indexed by `digit - 1`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, digit: u32) -> u64 {
        if digit == 0 || digit >= self.base {
            0
        } else {
            self.counts[digit as usize - 1]
        }
    }

    pub fn record_digit(&mut self, digit: u32) -> Result<()> {
        if digit == 0 || digit >= self.base {
            return Err(Error::domain(
                "digit",
                format!("must lie in 1..={}, got {digit}", self.base - 1),
            ));
        }
        self.counts[digit as usize - 1] += 1;
        self.total += 1;
        Ok(())
    }

    /// Observed frequency per digit, `counts / total`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.total as f64;
        self.counts.iter().map(|&c| c as f64 / n).collect()
    }

    pub fn merge(&mut self, other: &DigitHistogram) -> Result<()> {
        if other.base != self.base {
            return Err(Error::domain(
                "base",
                format!("cannot merge base {} into base {}", other.base, self.base),
            ));
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.total += other.total;
        Ok(())
    }
}

pub fn digit_histogram(values: &[f64], base: u32) -> Result<DigitHistogram> {
    if values.is_empty() {
        return Err(Error::domain("values", "need at least one value"));
    }
    let mut hist = DigitHistogram::empty(base)?;
    for &v in values {
        if v.is_nan() || v <= 0.0 {
            return Err(Error::domain("values", format!("entries must be > 0, got {v}")));
        }
        hist.record_digit(leading_digit(v, base)?)?;
    }
    Ok(hist)
}

/// First-digit histogram from `ln x` values (digit = `floor(B^mantissa)`).
pub fn digit_histogram_from_ln(ln_values: &[f64], base: u32) -> Result<DigitHistogram> {
    if ln_values.is_empty() {
        return Err(Error::domain("values", "need at least one value"));
    }
    let mut hist = DigitHistogram::empty(base)?;
    let b = f64::from(base);
    let ln_b = b.ln();
    for &l in ln_values {
        if !l.is_finite() {
            return Err(Error::domain("values", format!("log-values must be finite, got {l}")));
        }
        let s = (wrap_unit(l / ln_b) * ln_b).exp();
        let digit = (s.floor() as u32).clamp(1, base - 1);
        hist.record_digit(digit)?;
    }
    Ok(hist)
}

/// `Σ_d (observed_d - benford_d)²`.
pub fn sse_error(hist: &DigitHistogram) -> Result<f64> {
    if hist.total == 0 {
        return Err(Error::domain("hist", "histogram is empty"));
    }
    let mut err = 0.0;
    for (i, f) in hist.frequencies().into_iter().enumerate() {
        let t = benford_digit_prob(i as u32 + 1, hist.base)?;
        err += (f - t) * (f - t);
    }
    Ok(err)
}
