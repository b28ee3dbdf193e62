//! Flat TOML configuration. Every key is optional; missing keys take the
//! measured-setup defaults.

use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::{BsConvention, LbsParams};
use crate::experiment::{ArmValues, ExperimentConfig, PhaseGrid, TransmissionInterpretation};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub t_p1: f64,
    pub t_q1: f64,
    pub t_p2: f64,
    pub t_q2: f64,
    pub t_p3: f64,
    pub t_q3: f64,
    pub lbs_r_re: f64,
    pub lbs_r_im: f64,
    pub lbs_t_re: f64,
    pub lbs_t_im: f64,
    /// Absorption value quoted alongside `r`, `t`; compared against the
    /// derived `1 - |t|² - |r|²` by `verify` but never used in simulation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lbs_alpha_reported: Option<f64>,
    pub visibility: f64,
    pub eta_det: f64,
    pub eta_cpl: f64,
    pub transmission_interpretation: TransmissionInterpretation,
    pub include_output_stage: bool,
    pub output_ports_crossed: bool,
    pub hom_convention: BsConvention,
    pub phase_start: f64,
    pub phase_stop: f64,
    pub phase_steps: usize,
}

impl Default for ConfigFile {
    fn default() -> Self {
        let arms = ArmValues::measured();
        Self {
            t_p1: arms.p1,
            t_q1: arms.q1,
            t_p2: arms.p2,
            t_q2: arms.q2,
            t_p3: arms.p3,
            t_q3: arms.q3,
            lbs_r_re: 0.2991,
            lbs_r_im: -0.2177,
            lbs_t_re: 0.6625,
            lbs_t_im: 0.0,
            lbs_alpha_reported: Some(0.4758),
            visibility: 1.0,
            eta_det: 0.62,
            eta_cpl: 0.7,
            transmission_interpretation: TransmissionInterpretation::Direct,
            include_output_stage: true,
            output_ports_crossed: true,
            hom_convention: BsConvention::Symmetric,
            phase_start: 0.0,
            phase_stop: TAU,
            phase_steps: 64,
        }
    }
}

impl ConfigFile {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn lbs(&self) -> Result<LbsParams> {
        LbsParams::new(Complex64::new(self.lbs_r_re, self.lbs_r_im), Complex64::new(self.lbs_t_re, self.lbs_t_im))
    }

    pub fn to_experiment(&self) -> Result<ExperimentConfig> {
        let cfg = ExperimentConfig {
            arms: ArmValues {
                p1: self.t_p1,
                q1: self.t_q1,
                p2: self.t_p2,
                q2: self.t_q2,
                p3: self.t_p3,
                q3: self.t_q3,
            },
            lbs: self.lbs()?,
            visibility: self.visibility,
            eta_det: self.eta_det,
            eta_cpl: self.eta_cpl,
            transmission_interpretation: self.transmission_interpretation,
            include_output_stage: self.include_output_stage,
            output_ports_crossed: self.output_ports_crossed,
            hom_convention: self.hom_convention,
            phases: PhaseGrid::uniform(self.phase_start, self.phase_stop, self.phase_steps)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
