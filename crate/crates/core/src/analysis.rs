//! Closed-form limits and fringe fitting.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::channels::LbsParams;
use crate::{Error, Result};

/// Vacuum population after the sample for the `|2+⟩` N00N state at perfect
/// visibility, in terms of the sum and difference port amplitudes.
pub fn ideal_rho00(params: LbsParams) -> f64 {
    let (r, t) = (params.r(), params.t());
    let minus = (r - t).norm_sqr() - 1.0;
    let plus = (r + t).norm_sqr() - 1.0;
    0.5 * (minus * minus + plus * plus)
}

/// Largest vacuum population two independently absorbed photons could give,
/// `2α²`. Only meaningful for `α ≤ 1/2`.
pub fn rho00_bound(alpha: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} is outside [0, 1/2]")));
    }
    Ok(2.0 * alpha * alpha)
}

/// N-photon absorption probabilities for N00N light versus independent photons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnhancementRow {
    pub n: u32,
    pub gamma: f64,
    pub delta: f64,
    pub p_noon_max: f64,
    pub p_noon_min: f64,
    pub p_independent: f64,
}

impl EnhancementRow {
    /// `p_noon_max / p_independent`; infinite when independent absorption vanishes.
    pub fn ratio(&self) -> f64 {
        if self.p_independent == 0.0 {
            f64::INFINITY
        } else {
            self.p_noon_max / self.p_independent
        }
    }
}

pub fn noon_absorption(n: u32, params: LbsParams) -> Result<EnhancementRow> {
    if n == 0 {
        return Err(Error::InvalidArgument("photon number must be at least 1".into()));
    }
    let gamma = params.alpha();
    let delta = params.delta();
    let exp = n as i32;
    let g = gamma.powi(exp);
    let d = delta.abs().powi(exp);
    Ok(EnhancementRow { n, gamma, delta, p_noon_max: g + d, p_noon_min: g - d, p_independent: g })
}

/// `y ≈ a + b cos 2φ + c sin 2φ`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Largest absolute deviation over the samples.
    pub residual: f64,
}

impl FringeFit {
    pub fn eval(&self, phi: f64) -> f64 {
        let (s, c) = (2.0 * phi).sin_cos();
        self.a + self.b * c + self.c * s
    }

    pub fn visibility(&self) -> f64 {
        self.b.hypot(self.c) / self.a.abs()
    }
}

const DISTINCT_TOL: f64 = 1e-9;

fn distinct_phases_mod_pi(phis: &[f64]) -> usize {
    let pi = std::f64::consts::PI;
    let mut reduced: Vec<f64> = phis.iter().map(|p| p.rem_euclid(pi)).collect();
    reduced.sort_by(f64::total_cmp);
    reduced.dedup_by(|b, a| (*b - *a).abs() < DISTINCT_TOL);
    if reduced.len() > 1 && pi - reduced[reduced.len() - 1] + reduced[0] < DISTINCT_TOL {
        reduced.pop();
    }
    reduced.len()
}

/// Least-squares fit of `(φ, y)` samples. Needs three phases distinct mod π.
pub fn fit_fringe(samples: &[(f64, f64)]) -> Result<FringeFit> {
    if samples.iter().any(|(p, y)| !p.is_finite() || !y.is_finite()) {
        return Err(Error::InvalidArgument("fringe samples must be finite".into()));
    }
    let phis: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let distinct = distinct_phases_mod_pi(&phis);
    if distinct < 3 {
        return Err(Error::InvalidArgument(format!("fringe fit needs 3 phases distinct mod pi, got {distinct}")));
    }
    let design = DMatrix::from_fn(samples.len(), 3, |i, j| {
        let (s, c) = (2.0 * samples[i].0).sin_cos();
        [1.0, c, s][j]
    });
    let y = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.1));
    let coef = design
        .clone()
        .svd(true, true)
        .solve(&y, 1e-12)
        .map_err(|e| Error::InvalidArgument(format!("fringe fit failed: {e}")))?;
    let residual = (&design * &coef - &y).amax();
    Ok(FringeFit { a: coef[0], b: coef[1], c: coef[2], residual })
}
