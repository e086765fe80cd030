//! Leading-digit behaviour of the generalized gamma distribution.
//!
//! A random variable `X` with cdf `γ(d/p, (x/a)^p) / Γ(d/p)` is close to
//! Benford in base `B` exactly when `log_B X mod 1` is close to uniform on
//! `[0, 1)`. This crate evaluates the density of that wrapped variable in two
//! equivalent forms (a bilateral direct sum and its Fourier series), bounds
//! the Fourier truncation error, turns the result into a certified bound on
//! every leading-digit probability's distance from Benford, and provides the
//! sampling and Kolmogorov-Smirnov machinery used to check all of it
//! empirically.
//!
//! Modules, bottom-up:
//!
//! - [`specfun`]: real and complex gamma, regularized incomplete gamma and
//!   its inverse, and a product-formula oracle for `|Γ(a + bi)|`.
//! - [`gengamma`]: density, cdf, quantile and an exact seeded sampler.
//! - [`benford`]: significand, mantissa, leading digits, histograms.
//! - [`wrapped`]: the wrapped log-density, direct and Fourier forms.
//! - [`analysis`]: deviation bounds, per-digit deviations, KS sweeps.
//! - [`cli`]: the `benford-gengamma` command-line front end.

#![allow(clippy::excessive_precision)]

pub mod analysis;
pub mod benford;
pub mod cli;
mod error;
pub mod gengamma;
pub mod quad;
pub mod specfun;
pub mod wrapped;

pub use error::{Error, Result};
pub use gengamma::GenGammaParams;
