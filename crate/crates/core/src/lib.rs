//! Density-matrix simulation of coherent two-photon absorption.
//!
//! A two-photon N00N state is prepared by Hong-Ou-Mandel interference, sent
//! through lossy interferometer arms, and absorbed by a thin lossy
//! beamsplitter whose reflection and transmission coefficients are complex.
//! Everything lives in the two-mode Fock space truncated at two photons.
//!
//! Module map:
//!
//! - [`fock`]: basis ordering, density matrices, projectors.
//! - [`channels`]: Kraus channels for arm loss, the lossy beamsplitter, the
//!   HOM beamsplitter and the interferometer phase.
//! - [`oracle`]: brute-force four-mode dilation used as ground truth for the
//!   channels.
//! - [`experiment`]: the full pipeline and phase sweeps.
//! - [`detection`]: output stage, coincidence model and zero-photon inference.
//! - [`analysis`]: closed-form absorption results and fringe fitting.
//! - [`config`]: the flat key-value configuration file.

pub mod analysis;
pub mod channels;
pub mod config;
pub mod detection;
mod error;
pub mod experiment;
pub mod fock;
pub mod oracle;

pub use error::{Error, Inequality, Result};

pub use analysis::{fit_fringe, ideal_rho00, noon_absorption, rho00_bound, EnhancementRow, FringeFit};
pub use channels::{
    apply_channel, cptp_residual, lbs_channel, loss_channel, lossless_bs, phase_shifter, BsConvention, ChannelKind,
    KrausChannel, LbsParams, LossParams, Unitary6,
};
pub use config::ConfigFile;
pub use detection::{
    coincidence_total, detection_probs, infer_photon_amplitudes, model_coincidences, CoincidenceCounts,
    DetectionConfig, DetectionProbs, PhotonAmplitudes,
};
pub use experiment::{
    evolve_pipeline, prepare_and_hom, sweep_phase, ArmValues, ExperimentConfig, PhaseGrid, Pipeline, SweepRecord,
    TransmissionInterpretation,
};
pub use fock::{basis_index, expectation, index_occupation, projector, DensityMatrix, FockIndex, Op6, PureState};
pub use num_complex::Complex64;
pub use oracle::{dilated_mode_map, kraus_from_dilation, loss_mode_map, simulate_dilation, ExtendedState, ModeMap};
