//! The full interferometer: pair source, HOM beamsplitter, lossy arms, phase
//! shifter and lossy beamsplitter, plus phase sweeps.
//!
//! The stages compose left to right as
//!
//! ```text
//! |11⟩⟨11| → loss(p₁,q₁) → HOM(v) → loss(p₂,q₂) → phase(φ) → LBS
//! ```
//!
//! The phase acts on mode `b` only, so the N00N phase is `2φ`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{
    hom_channel, lbs_channel, loss_channel, phase_shifter, BsConvention, KrausChannel, LbsParams, LossParams,
};
use crate::detection::{self, DetectionConfig, DetectionProbs, PhotonAmplitudes};
use crate::fock::DensityMatrix;
use crate::{Error, Result};

/// How the tabulated arm values become loss probabilities.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransmissionInterpretation {
    /// The tabulated value is the loss probability itself.
    #[default]
    Direct,
    /// The tabulated value is a transmission; loss is `1 - value`.
    Complement,
}

impl TransmissionInterpretation {
    pub fn loss(self, value: f64) -> f64 {
        match self {
            TransmissionInterpretation::Direct => value,
            TransmissionInterpretation::Complement => 1.0 - value,
        }
    }
}

/// Tabulated per-arm values, before interpretation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArmValues {
    pub p1: f64,
    pub q1: f64,
    pub p2: f64,
    pub q2: f64,
    pub p3: f64,
    pub q3: f64,
}

impl ArmValues {
    pub fn measured() -> Self {
        Self { p1: 0.39, q1: 0.19, p2: 0.621, q2: 0.626, p3: 0.7, q3: 0.6 }
    }

    /// Values meaning "no loss" under `interpretation`.
    pub fn lossless(interpretation: TransmissionInterpretation) -> Self {
        let v = interpretation.loss(0.0);
        Self { p1: v, q1: v, p2: v, q2: v, p3: v, q3: v }
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("t_p1", self.p1),
            ("t_q1", self.q1),
            ("t_p2", self.p2),
            ("t_q2", self.q2),
            ("t_p3", self.p3),
            ("t_q3", self.q3),
        ] {
            Error::probability(name, v)?;
        }
        Ok(())
    }
}

/// Nonempty, strictly increasing list of interferometer phases.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid(Vec<f64>);

impl PhaseGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("phase grid is empty".into()));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("phase grid contains a non-finite value".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("phase grid is not strictly increasing".into()));
        }
        Ok(Self(points))
    }

    /// `steps` points `start + k (stop - start) / steps`, stop excluded.
    pub fn uniform(start: f64, stop: f64, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidArgument("phase grid needs at least one step".into()));
        }
        let h = (stop - start) / steps as f64;
        Self::new((0..steps).map(|k| start + k as f64 * h).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub arms: ArmValues,
    pub lbs: LbsParams,
    pub visibility: f64,
    pub eta_det: f64,
    pub eta_cpl: f64,
    pub transmission_interpretation: TransmissionInterpretation,
    /// Apply the arm-3 losses between the sample and the detectors.
    pub include_output_stage: bool,
    /// Arm-3 losses act across: `q₃` on output mode `a`, `p₃` on output mode `b`.
    pub output_ports_crossed: bool,
    pub hom_convention: BsConvention,
    pub phases: PhaseGrid,
}

impl Default for ExperimentConfig {
    /// Measured setup with ideal pair interference.
    fn default() -> Self {
        Self {
            arms: ArmValues::measured(),
            lbs: LbsParams::new(num_complex::Complex64::new(0.2991, -0.2177), num_complex::Complex64::new(0.6625, 0.0))
                .expect("measured beamsplitter is physical"),
            visibility: 1.0,
            eta_det: 0.62,
            eta_cpl: 0.7,
            transmission_interpretation: TransmissionInterpretation::Direct,
            include_output_stage: true,
            output_ports_crossed: true,
            hom_convention: BsConvention::Symmetric,
            phases: PhaseGrid::uniform(0.0, std::f64::consts::TAU, 64).expect("default grid"),
        }
    }
}

impl ExperimentConfig {
    /// No arm loss, perfect detection and interference, `r = t = 1/2`.
    pub fn ideal() -> Self {
        let interpretation = TransmissionInterpretation::Direct;
        Self {
            arms: ArmValues::lossless(interpretation),
            lbs: LbsParams::ideal_cpa(),
            visibility: 1.0,
            eta_det: 1.0,
            eta_cpl: 1.0,
            transmission_interpretation: interpretation,
            include_output_stage: false,
            output_ports_crossed: false,
            hom_convention: BsConvention::Symmetric,
            phases: PhaseGrid::uniform(0.0, std::f64::consts::TAU, 64).expect("default grid"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.arms.validate()?;
        LbsParams::new(self.lbs.r(), self.lbs.t())?;
        Error::probability("visibility", self.visibility)?;
        Error::probability("eta_det", self.eta_det)?;
        Error::probability("eta_cpl", self.eta_cpl)?;
        // interpreted losses must also be probabilities
        self.input_loss()?;
        self.intermediate_loss()?;
        self.output_loss()?;
        Ok(())
    }

    fn interpret(&self, p: f64, q: f64) -> Result<LossParams> {
        let i = self.transmission_interpretation;
        LossParams::new(i.loss(p), i.loss(q))
    }

    /// Loss between the pair source and the HOM beamsplitter.
    pub fn input_loss(&self) -> Result<LossParams> {
        self.interpret(self.arms.p1, self.arms.q1)
    }

    /// Loss between the HOM beamsplitter and the sample.
    pub fn intermediate_loss(&self) -> Result<LossParams> {
        self.interpret(self.arms.p2, self.arms.q2)
    }

    /// Loss after the sample, on output modes `(a, b)`.
    pub fn output_loss(&self) -> Result<LossParams> {
        let loss = self.interpret(self.arms.p3, self.arms.q3)?;
        Ok(if self.output_ports_crossed { loss.swapped() } else { loss })
    }

    pub fn detection(&self) -> Result<DetectionConfig> {
        DetectionConfig::new(self.output_loss()?, self.eta_det, self.eta_cpl, self.include_output_stage)
    }
}

/// The pair source followed by the visibility-weighted HOM beamsplitter.
pub fn prepare_and_hom(visibility: f64) -> Result<DensityMatrix> {
    let hom = hom_channel(visibility, BsConvention::Symmetric)?;
    crate::channels::apply_channel(&hom, &DensityMatrix::fock(1, 1)?)
}

/// State immediately before and after the lossy beamsplitter.
#[derive(Debug, Clone, PartialEq)]
pub struct Stages {
    pub before_lbs: DensityMatrix,
    pub after_lbs: DensityMatrix,
}

/// Prebuilt channels for one configuration.
#[derive(Debug, Clone)]
pub struct Pipeline {
    input_loss: KrausChannel,
    hom: KrausChannel,
    intermediate_loss: KrausChannel,
    lbs: KrausChannel,
    detection: DetectionConfig,
}

impl Pipeline {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            input_loss: loss_channel(cfg.input_loss()?)?,
            hom: hom_channel(cfg.visibility, cfg.hom_convention)?,
            intermediate_loss: loss_channel(cfg.intermediate_loss()?)?,
            lbs: lbs_channel(cfg.lbs)?,
            detection: cfg.detection()?,
        })
    }

    pub fn lbs(&self) -> &KrausChannel {
        &self.lbs
    }

    pub fn detection(&self) -> &DetectionConfig {
        &self.detection
    }

    /// The channels in application order, excluding the phase shifter.
    pub fn channels(&self) -> [&KrausChannel; 4] {
        [&self.input_loss, &self.hom, &self.intermediate_loss, &self.lbs]
    }

    pub fn stages(&self, phi: f64) -> Result<Stages> {
        if !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("phase {phi} is not finite")));
        }
        let rho = DensityMatrix::fock(1, 1)?;
        let rho = self.input_loss.apply_raw(rho.matrix());
        let rho = self.hom.apply_raw(&rho);
        let rho = self.intermediate_loss.apply_raw(&rho);
        let u = *phase_shifter(phi).matrix();
        let before = u * rho * u.adjoint();
        let after = self.lbs.apply_raw(&before);
        Ok(Stages { before_lbs: DensityMatrix::from_raw(before), after_lbs: DensityMatrix::from_raw(after) })
    }

    pub fn evolve(&self, phi: f64) -> Result<DensityMatrix> {
        Ok(self.stages(phi)?.after_lbs)
    }

    /// Photon-number populations attributable to pairs reaching the sample.
    ///
    /// Returns `(two_in, one_out, two_out)`: the two-photon population just
    /// before the sample, and the one- and two-photon populations that the
    /// sample leaves from that two-photon part alone.
    pub fn pair_populations(&self, stages: &Stages) -> (f64, f64, f64) {
        let two_in = stages.before_lbs.sector_population(2);
        let out = DensityMatrix::from_raw(self.lbs.apply_raw(&stages.before_lbs.sector_block(2)));
        (two_in, out.sector_population(1), out.sector_population(2))
    }

    pub fn record(&self, phi: f64) -> Result<SweepRecord> {
        let stages = self.stages(phi)?;
        let probs = detection::detection_probs(&stages.after_lbs, &self.detection)?;
        let unit = self.detection.with_unit_efficiency();
        let c_total_norm = detection::coincidence_total(&detection::model_coincidences(&probs, &unit, 1.0)?)?;
        let (two_in, one_out, two_out) = self.pair_populations(&stages);
        let amplitudes = detection::infer_photon_amplitudes(two_in, one_out, two_out)?;
        let rho00 = stages.after_lbs.population(0);
        Ok(SweepRecord { phi, rho2: stages.after_lbs, probs, c_total_norm, rho00, amplitudes })
    }
}

/// `ρ₂` at phase `phi`.
pub fn evolve_pipeline(cfg: &ExperimentConfig, phi: f64) -> Result<DensityMatrix> {
    Pipeline::new(cfg)?.evolve(phi)
}

/// Outputs at one interferometer phase.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub phi: f64,
    /// State right after the sample.
    pub rho2: DensityMatrix,
    pub probs: DetectionProbs,
    /// Summed coincidence total per input pair at unit efficiency.
    pub c_total_norm: f64,
    /// `⟨00|ρ₂|00⟩`
    pub rho00: f64,
    pub amplitudes: PhotonAmplitudes,
}

/// One record per grid point, in grid order. Points are evaluated in parallel.
pub fn sweep_phase(cfg: &ExperimentConfig) -> Result<Vec<SweepRecord>> {
    let pipeline = Pipeline::new(cfg)?;
    cfg.phases.points().par_iter().map(|&phi| pipeline.record(phi)).collect()
}
