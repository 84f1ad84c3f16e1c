//! Time-indexed sequences of [`TorusField`] slices with a uniform step.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldRecord, TorusField};

/// A field `u(t, x)` sampled on a uniform time grid `t_k = t0 + k·dt`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    t0: f64,
    dt: f64,
    slices: Vec<TorusField>,
}

impl Trajectory {
    pub fn new(t0: f64, dt: f64, slices: Vec<TorusField>) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::Config(format!("trajectory step dt = {dt} must be positive")));
        }
        if slices.is_empty() {
            return Err(Error::Config("trajectory needs at least one slice".into()));
        }
        let n = slices[0].n_modes();
        for s in &slices {
            if s.n_modes() != n {
                return Err(Error::GridMismatch(n, s.n_modes()));
            }
        }
        Ok(Self { t0, dt, slices })
    }

    /// Samples `u(t, x)` on `n_slices` times starting at `t0`.
    pub fn from_fn(
        t0: f64,
        dt: f64,
        n_slices: usize,
        n_modes: usize,
        u: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let slices = (0..n_slices)
            .map(|k| {
                let t = t0 + k as f64 * dt;
                TorusField::from_fn(n_modes, |x| u(t, x))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(t0, dt, slices)
    }

    /// The free evolution `W(t) u0` on the given window.
    pub fn free_wave(u0: &TorusField, t0: f64, dt: f64, n_slices: usize) -> Result<Self> {
        let slices = (0..n_slices)
            .map(|k| u0.free_propagator(t0 + k as f64 * dt))
            .collect();
        Self::new(t0, dt, slices)
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + (self.slices.len() - 1) as f64 * self.dt
    }

    pub fn n_slices(&self) -> usize {
        self.slices.len()
    }

    pub fn n_modes(&self) -> usize {
        self.slices[0].n_modes()
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t0 + k as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.slices.len()).map(move |k| self.time(k))
    }

    pub fn slice(&self, k: usize) -> &TorusField {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[TorusField] {
        &self.slices
    }

    /// Index of the slice at time `t`, if `t` lies on the grid.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let k = (t - self.t0) / self.dt;
        let round = k.round();
        if (k - round).abs() < 1e-9 && round >= 0.0 && (round as usize) < self.slices.len() {
            Some(round as usize)
        } else {
            None
        }
    }

    /// The slice at `t = 0`; errors when the window misses it.
    pub fn slice_at_zero(&self) -> Result<&TorusField> {
        self.index_of(0.0)
            .map(|k| &self.slices[k])
            .ok_or(Error::WindowMissing {
                t_start: self.t0,
                t_end: self.t_end(),
                t: 0.0,
            })
    }

    /// Mass `μ(u) = (1/2π)‖u(0)‖²_{L²}`, taken from the `t = 0` slice.
    pub fn mass(&self) -> Result<f64> {
        Ok(self.slice_at_zero()?.mass())
    }

    /// Applies `f` to every slice, passing the slice time.
    pub fn map_slices(&self, f: impl Fn(f64, &TorusField) -> TorusField) -> Self {
        let slices = self
            .slices
            .iter()
            .enumerate()
            .map(|(k, s)| f(self.time(k), s))
            .collect();
        Self {
            t0: self.t0,
            dt: self.dt,
            slices,
        }
    }

    /// Galilean translation `τ_μ u(t, x) = u(t, x + 2μt)`.
    ///
    /// Realized slice-by-slice as the spectral phase `e^{i 2μ t ξ}`;
    /// `τ_{-μ} ∘ τ_μ = id` and every slice `L^p` norm is preserved.
    pub fn galilean_shift(&self, mu: f64) -> Self {
        self.map_slices(|t, s| s.translate(2.0 * mu * t))
    }

    pub fn conj(&self) -> Self {
        self.map_slices(|_, s| s.conj())
    }

    /// Largest slice distance in the `H^s` norm.
    pub fn sup_sobolev_distance(&self, other: &Self, s: f64) -> Result<f64> {
        if self.n_slices() != other.n_slices() {
            return Err(Error::Config(format!(
                "slice count mismatch: {} vs {}",
                self.n_slices(),
                other.n_slices()
            )));
        }
        let mut sup = 0.0_f64;
        for (a, b) in self.slices.iter().zip(other.slices()) {
            sup = sup.max(a.sub(b)?.sobolev_norm(s));
        }
        Ok(sup)
    }

    /// Largest pointwise grid distance over all slices.
    pub fn sup_grid_distance(&self, other: &Self) -> Result<f64> {
        if self.n_slices() != other.n_slices() {
            return Err(Error::Config(format!(
                "slice count mismatch: {} vs {}",
                self.n_slices(),
                other.n_slices()
            )));
        }
        Ok(self
            .slices
            .iter()
            .zip(other.slices())
            .map(|(a, b)| a.sup_distance(b))
            .fold(0.0_f64, f64::max))
    }
}

/// Serializable trajectory: header plus one record per slice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t0: f64,
    pub dt: f64,
    pub n_slices: usize,
    pub n_modes: usize,
    pub slices: Vec<FieldRecord>,
}

impl TrajectoryRecord {
    pub fn new(traj: &Trajectory) -> Self {
        let slices = traj
            .slices()
            .iter()
            .enumerate()
            .map(|(k, s)| FieldRecord::new(s, traj.time(k)))
            .collect();
        Self {
            t0: traj.t0(),
            dt: traj.dt(),
            n_slices: traj.n_slices(),
            n_modes: traj.n_modes(),
            slices,
        }
    }

    pub fn to_trajectory(&self) -> Result<Trajectory> {
        let slices = self
            .slices
            .iter()
            .map(|r| r.to_field())
            .collect::<Result<Vec<_>>>()?;
        Trajectory::new(self.t0, self.dt, slices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::TWO_PI;
    use std::f64::consts::PI;

    fn plane_wave_traj(n_modes: usize) -> Trajectory {
        Trajectory::from_fn(0.0, PI / 2.0, 3, n_modes, |_, x| Complex64::from_polar(1.0, x))
            .unwrap()
    }

    #[test]
    fn galilean_identity_at_zero_speed() {
        let u = plane_wave_traj(16);
        let v = u.galilean_shift(0.0);
        assert!(u.sup_grid_distance(&v).unwrap() < 1e-14);
    }

    #[test]
    fn galilean_fixes_constants() {
        let u = Trajectory::from_fn(-1.0, 0.5, 5, 16, |_, _| Complex64::new(0.4, -0.3)).unwrap();
        let v = u.galilean_shift(1.7);
        assert!(u.sup_grid_distance(&v).unwrap() < 1e-13);
    }

    #[test]
    fn galilean_phase_on_plane_wave() {
        // τ_1 e^{ix} at t = π/2 shifts by 2·1·(π/2): e^{i(x+π)} = -e^{ix}.
        let u = plane_wave_traj(16);
        let v = u.galilean_shift(1.0);
        let minus = u.slice(1).scale(Complex64::new(-1.0, 0.0));
        assert!(v.slice(1).sup_distance(&minus) < 1e-12);
    }

    #[test]
    fn galilean_inverse_and_lp_invariance() {
        let u = Trajectory::from_fn(-0.5, 0.25, 5, 32, |t, x| {
            Complex64::from_polar((0.3 * x).cos().abs() + 0.2, x + t)
        })
        .unwrap();
        let back = u.galilean_shift(0.9).galilean_shift(-0.9);
        assert!(u.sup_grid_distance(&back).unwrap() < 1e-11);
        let shifted = u.galilean_shift(0.9);
        for p in [1.0, 2.0, 4.0] {
            for (a, b) in u.slices().iter().zip(shifted.slices()) {
                assert!((a.lp_norm(p).unwrap() - b.lp_norm(p).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn mass_needs_time_zero() {
        let u = Trajectory::from_fn(1.0, 0.5, 3, 16, |_, _| Complex64::new(1.0, 0.0)).unwrap();
        assert!(matches!(u.mass(), Err(Error::WindowMissing { .. })));
        let v = Trajectory::from_fn(-1.0, 0.5, 5, 16, |_, x| Complex64::from_polar(1.0, x)).unwrap();
        assert!((v.mass().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn record_roundtrip() {
        let u = plane_wave_traj(16);
        let rec = TrajectoryRecord::new(&u);
        let json = serde_json::to_string(&rec).unwrap();
        let back: TrajectoryRecord = serde_json::from_str(&json).unwrap();
        let v = back.to_trajectory().unwrap();
        assert_eq!(v.n_slices(), 3);
        assert!((v.dt() - PI / 2.0).abs() < 1e-15);
        assert!(u.sup_grid_distance(&v).unwrap() < 1e-12);
    }

    #[test]
    fn free_wave_matches_propagator() {
        let u0 = TorusField::plane_wave(16, Complex64::new(1.0, 0.0), 2).unwrap();
        let traj = Trajectory::free_wave(&u0, -0.4, 0.2, 5).unwrap();
        // W(t) e^{2ix} = e^{-4it} e^{2ix}
        let k (|k: usize| -0.4 + 0.2 * k as f64);
        let _ = k;
        for (k, s) in traj.slices().iter().enumerate() {
            let t = traj.time(k);
            let expect = u0.scale(Complex64::from_polar(1.0, -4.0 * t));
            assert!(s.sup_distance(&expect) < 1e-12);
        }
        let _ = TWO_PI;
    }
}
