//! Detector model: output-arm loss, two-detector splitting per output mode, and
//! coincidence bookkeeping.
//!
//! Output mode `a` feeds detectors A and B, output mode `b` feeds C and D, each
//! through a 50:50 splitter. Bunched pairs register as AB or CD coincidences;
//! split pairs as any of AC, AD, BC, BD.

use serde::{Deserialize, Serialize};

use crate::channels::{loss_channel, KrausChannel, LossParams};
use crate::fock::{DensityMatrix, A2, AB, B2};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct DetectionConfig {
    output_loss: LossParams,
    output_channel: KrausChannel,
    pub eta_det: f64,
    pub eta_cpl: f64,
    pub include_output_stage: bool,
}

impl DetectionConfig {
    /// `output_loss` acts on output modes `(a, b)` in that order.
    pub fn new(output_loss: LossParams, eta_det: f64, eta_cpl: f64, include_output_stage: bool) -> Result<Self> {
        Error::probability("eta_det", eta_det)?;
        Error::probability("eta_cpl", eta_cpl)?;
        Ok(Self { output_loss, output_channel: loss_channel(output_loss)?, eta_det, eta_cpl, include_output_stage })
    }

    /// Perfect detectors straight after the sample.
    pub fn ideal() -> Self {
        Self::new(LossParams::lossless(), 1.0, 1.0, false).expect("ideal detection is valid")
    }

    pub fn output_loss(&self) -> LossParams {
        self.output_loss
    }

    /// Probability that both photons of a pair are detected and coupled.
    pub fn pair_efficiency(&self) -> f64 {
        (self.eta_det * self.eta_cpl).powi(2)
    }

    pub fn with_unit_efficiency(&self) -> Self {
        Self { eta_det: 1.0, eta_cpl: 1.0, ..self.clone() }
    }
}

/// Per-pair coincidence probabilities from the state after the sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionProbs {
    /// Any one cross-mode detector pair, e.g. AC.
    pub p11: f64,
    /// AB
    pub p20: f64,
    /// CD
    pub p02: f64,
}

pub fn detection_probs(rho: &DensityMatrix, cfg: &DetectionConfig) -> Result<DetectionProbs> {
    rho.validate()?;
    let m = if cfg.include_output_stage { cfg.output_channel.apply_raw(rho.matrix()) } else { *rho.matrix() };
    Ok(DetectionProbs { p11: 0.25 * m[(AB, AB)].re, p20: 0.5 * m[(A2, A2)].re, p02: 0.5 * m[(B2, B2)].re })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceCounts {
    pub ab: f64,
    pub cd: f64,
    pub ac: f64,
    pub ad: f64,
    pub bc: f64,
    pub bd: f64,
}

impl CoincidenceCounts {
    fn named(&self) -> [(&'static str, f64); 6] {
        [("ab", self.ab), ("cd", self.cd), ("ac", self.ac), ("ad", self.ad), ("bc", self.bc), ("bd", self.bd)]
    }
}

/// Bunched pairs count twice: a pair in one mode shows up at either detector
/// ordering, whereas each cross pair is already distinct.
pub fn coincidence_total(c: &CoincidenceCounts) -> Result<f64> {
    for (name, v) in c.named() {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("coincidence count {name} = {v} is not a nonnegative number")));
        }
    }
    Ok(2.0 * (c.ab + c.cd) + c.ac + c.ad + c.bc + c.bd)
}

/// Expected coincidences for `pair_rate` pairs reaching the sample.
pub fn model_coincidences(probs: &DetectionProbs, cfg: &DetectionConfig, pair_rate: f64) -> Result<CoincidenceCounts> {
    if !(pair_rate >= 0.0 && pair_rate.is_finite()) {
        return Err(Error::InvalidArgument(format!("pair rate {pair_rate} must be finite and nonnegative")));
    }
    let s = pair_rate * cfg.pair_efficiency();
    let cross = s * probs.p11;
    Ok(CoincidenceCounts { ab: s * probs.p20, cd: s * probs.p02, ac: cross, ad: cross, bc: cross, bd: cross })
}

/// Fractions of incoming pairs that leave with zero, one or two photons.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonAmplitudes {
    pub n0: f64,
    pub n1: f64,
    pub n2: f64,
}

pub fn infer_photon_amplitudes(two_in: f64, one_out: f64, two_out: f64) -> Result<PhotonAmplitudes> {
    if !(two_in > 0.0 && two_in.is_finite()) {
        return Err(Error::InvalidArgument(format!("input pair rate {two_in} must be positive")));
    }
    Ok(PhotonAmplitudes { n0: (two_in - one_out - two_out) / two_in, n1: one_out / two_in, n2: two_out / two_in })
}
