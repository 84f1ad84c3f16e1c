//! Spectral representation of 2π-periodic complex functions.
//!
//! A [`TorusField`] is one time slice of a complex field on the torus,
//! stored both as grid samples at `x_j = 2πj/N` and as Fourier
//! coefficients indexed by `ξ ∈ {-N/2, …, N/2-1}`. The coefficient
//! normalization follows the convention
//!
//! ```text
//! coeff(ξ) = (2π)^(-1/2) ∫₀^{2π} e^{-i x ξ} f(x) dx
//! ```
//!
//! so that `Σ_ξ |coeff(ξ)|² = ∫ |f|² dx` (Parseval) and the H^s norm is
//! the plain weighted coefficient sum. Both representations are computed
//! eagerly at construction and never mutated, which makes the type safe
//! to share across threads.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const TWO_PI: f64 = 2.0 * PI;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

/// `⟨x⟩ = (1 + |x|²)^(1/2)`, the Japanese bracket.
#[inline]
pub fn bracket(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

fn check_grid(n: usize) -> Result<()> {
    if n >= 4 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::GridSize(n))
    }
}

/// One time slice of a complex periodic function, dual grid/spectral form.
#[derive(Debug, Clone)]
pub struct TorusField {
    values: Vec<Complex64>,
    coeffs: Vec<Complex64>,
}

impl TorusField {
    /// Builds a field from grid samples at `x_j = 2πj/N`.
    pub fn from_samples(values: Vec<Complex64>) -> Result<Self> {
        check_grid(values.len())?;
        let coeffs = samples_to_coeffs(&values);
        Ok(Self { values, coeffs })
    }

    /// Builds a field from centered Fourier coefficients (`ξ = i - N/2`).
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        check_grid(coeffs.len())?;
        let values = coeffs_to_samples(&coeffs);
        Ok(Self { values, coeffs })
    }

    /// Samples `f` at the grid nodes of an `n`-point grid.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        check_grid(n)?;
        let values = (0..n).map(|j| f(TWO_PI * j as f64 / n as f64)).collect();
        Self::from_samples(values)
    }

    /// The zero field on an `n`-point grid.
    pub fn zero(n: usize) -> Result<Self> {
        check_grid(n)?;
        Ok(Self {
            values: vec![Complex64::new(0.0, 0.0); n],
            coeffs: vec![Complex64::new(0.0, 0.0); n],
        })
    }

    /// The plane wave `A e^{ikx}`; `k` must be resolvable.
    pub fn plane_wave(n: usize, amplitude: Complex64, k: i64) -> Result<Self> {
        check_grid(n)?;
        if k.unsigned_abs() as usize >= n / 2 {
            return Err(Error::Unresolvable { n: k, n_modes: n });
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        coeffs[(k + n as i64 / 2) as usize] = amplitude * TWO_PI.sqrt();
        Self::from_coeffs(coeffs)
    }

    pub fn n_modes(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Grid nodes `x_j = 2πj/N`.
    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n_modes();
        (0..n).map(move |j| TWO_PI * j as f64 / n as f64)
    }

    /// The wavenumber for centered coefficient index `i`.
    #[inline]
    pub fn xi_of_index(&self, i: usize) -> i64 {
        i as i64 - self.n_modes() as i64 / 2
    }

    /// Coefficient at wavenumber `ξ` (zero if unresolved).
    pub fn coeff(&self, xi: i64) -> Complex64 {
        let half = self.n_modes() as i64 / 2;
        if xi < -half || xi >= half {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(xi + half) as usize]
        }
    }

    /// Applies a spectral multiplier `m(ξ)`.
    ///
    /// `zero_nyquist` kills the unpaired mode `ξ = -N/2`; it is set for
    /// derivatives and other odd-symbol multipliers.
    pub fn spectral_map(&self, zero_nyquist: bool, m: impl Fn(i64) -> Complex64) -> Self {
        let n = self.n_modes();
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let xi = i as i64 - n as i64 / 2;
                if zero_nyquist && xi == -(n as i64) / 2 {
                    Complex64::new(0.0, 0.0)
                } else {
                    c * m(xi)
                }
            })
            .collect();
        Self {
            values: coeffs_to_samples(&coeffs),
            coeffs,
        }
    }

    /// Spectral derivative `∂_x`: `coeff(ξ) ↦ iξ coeff(ξ)`.
    pub fn derivative(&self) -> Self {
        self.spectral_map(true, |xi| Complex64::new(0.0, xi as f64))
    }

    /// Bessel potential `J^s`: `coeff(ξ) ↦ ⟨ξ⟩^s coeff(ξ)`.
    pub fn bessel_potential(&self, s: f64) -> Self {
        self.spectral_map(false, |xi| Complex64::new(bracket(xi as f64).powf(s), 0.0))
    }

    /// Free Schrödinger propagator `W(t)`: `coeff(ξ) ↦ e^{-itξ²} coeff(ξ)`.
    pub fn free_propagator(&self, t: f64) -> Self {
        self.spectral_map(false, |xi| {
            Complex64::from_polar(1.0, -t * (xi * xi) as f64)
        })
    }

    /// Translation `f(x) ↦ f(x + a)` as the spectral phase `e^{iξa}`.
    pub fn translate(&self, a: f64) -> Self {
        self.spectral_map(false, |xi| Complex64::from_polar(1.0, xi as f64 * a))
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        let values: Vec<Complex64> = self.values.iter().map(|v| v.conj()).collect();
        Self::from_samples(values).expect("grid size preserved")
    }

    /// Pointwise product on the native grid (no dealiasing).
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        if self.n_modes() != other.n_modes() {
            return Err(Error::GridMismatch(self.n_modes(), other.n_modes()));
        }
        let values: Vec<Complex64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Self::from_samples(values)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let coeffs: Vec<Complex64> = self.coeffs.iter().map(|a| a * c).collect();
        Self {
            values: self.values.iter().map(|a| a * c).collect(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_modes() != other.n_modes() {
            return Err(Error::GridMismatch(self.n_modes(), other.n_modes()));
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Resamples onto a `factor`-times finer grid by spectral zero padding.
    pub fn upsample(&self, factor: usize) -> Self {
        let n = self.n_modes();
        let m = n * factor;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for (i, c) in self.coeffs.iter().enumerate() {
            let xi = i as i64 - n as i64 / 2;
            coeffs[(xi + m as i64 / 2) as usize] = *c;
        }
        Self {
            values: coeffs_to_samples(&coeffs),
            coeffs,
        }
    }

    /// Truncates to a coarser grid, dropping unresolved modes.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        check_grid(n)?;
        let m = self.n_modes();
        if n > m {
            return Err(Error::GridMismatch(n, m));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let xi = i as i64 - n as i64 / 2;
            *c = self.coeffs[(xi + m as i64 / 2) as usize];
        }
        Self::from_coeffs(coeffs)
    }

    /// Zeroes all modes with `|ξ| > cut`.
    pub fn band_limit(&self, cut: i64) -> Self {
        self.spectral_map(false, |xi| {
            if xi.abs() > cut {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
    }

    /// Sobolev norm `‖f‖_{H^s} = (Σ_ξ ⟨ξ⟩^{2s} |coeff(ξ)|²)^{1/2}`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        let n = self.n_modes() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| bracket((i as i64 - n / 2) as f64).powf(2.0 * s) * c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Lebesgue norm `‖f‖_{L^p([0,2π])}` by trapezoidal quadrature.
    ///
    /// For `p > 2` (including `p = ∞`) the field is resampled on a 2×
    /// zero-padded grid first, since `|f|^p` is not band-limited.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::LebesgueExponent(p));
        }
        let work;
        let samples = if p > 2.0 {
            work = self.upsample(2);
            work.values()
        } else {
            self.values()
        };
        if p.is_infinite() {
            return Ok(samples
                .iter()
                .map(|v| v.norm())
                .fold(0.0_f64, |a, b| a.max(b)));
        }
        let mean = samples.iter().map(|v| v.norm().powf(p)).sum::<f64>() / samples.len() as f64;
        Ok((TWO_PI * mean).powf(1.0 / p))
    }

    /// Mass `μ(f) = (1/2π) ‖f‖²_{L²}`.
    pub fn mass(&self) -> f64 {
        let l2 = self.lp_norm(2.0).expect("p = 2 is valid");
        l2 * l2 / TWO_PI
    }

    /// Max pointwise distance on the grid.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0_f64, f64::max)
    }
}

/// Grid samples → centered coefficients with the `(2π)^(-1/2)` convention.
fn samples_to_coeffs(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf = values.to_vec();
    plan(n, FftDirection::Forward).process(&mut buf);
    // FFT bin k holds N·a_ξ for ξ ≡ k (mod N); recenter and rescale so that
    // coeff(ξ) = √(2π)·a_ξ.
    let scale = TWO_PI.sqrt() / n as f64;
    let half = n / 2;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (i, c) in coeffs.iter_mut().enumerate() {
        let xi = i as i64 - half as i64;
        let k = xi.rem_euclid(n as i64) as usize;
        *c = buf[k] * scale;
    }
    coeffs
}

/// Centered coefficients → grid samples (exact inverse of `samples_to_coeffs`).
fn coeffs_to_samples(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let half = n / 2;
    let scale = 1.0 / TWO_PI.sqrt();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, c) in coeffs.iter().enumerate() {
        let xi = i as i64 - half as i64;
        let k = xi.rem_euclid(n as i64) as usize;
        buf[k] = c * scale;
    }
    plan(n, FftDirection::Inverse).process(&mut buf);
    buf
}

/// Serializable record: grid size, time tag, interleaved re/im samples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldRecord {
    pub n_modes: usize,
    pub t: f64,
    pub samples: Vec<f64>,
}

impl FieldRecord {
    pub fn new(field: &TorusField, t: f64) -> Self {
        let mut samples = Vec::with_capacity(2 * field.n_modes());
        for v in field.values() {
            samples.push(v.re);
            samples.push(v.im);
        }
        Self {
            n_modes: field.n_modes(),
            t,
            samples,
        }
    }

    pub fn to_field(&self) -> Result<TorusField> {
        if self.samples.len() != 2 * self.n_modes {
            return Err(Error::Config(format!(
                "field record has {} scalars, expected {}",
                self.samples.len(),
                2 * self.n_modes
            )));
        }
        let values = self
            .samples
            .chunks_exact(2)
            .map(|p| Complex64::new(p[0], p[1]))
            .collect();
        TorusField::from_samples(values)
    }
}
