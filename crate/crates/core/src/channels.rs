//! Quantum channels of the interferometer.
//!
//! All channels act on the truncated two-mode space of [`crate::fock`]. Arm
//! losses use the closed-form six-operator set; the lossy beamsplitter is
//! generated from its four-mode dilation (see [`crate::oracle`]) and compared
//! against the closed-form matrices by [`lbs_printed_discrepancy`].

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::fock::{max_abs, DensityMatrix, Op6, A1, A2, AB, B1, B2, DIM, VAC};
use crate::{oracle, Error, Inequality, Result};

/// Completeness tolerance for a trace-preserving Kraus set.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Unitarity tolerance for [`Unitary6`].
pub const UNITARY_TOL: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Independent photon loss on both modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossParams {
    /// Probability that a photon in mode `a` is lost.
    pub p: f64,
    /// Probability that a photon in mode `b` is lost.
    pub q: f64,
}

impl LossParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(Self { p: Error::probability("p", p)?, q: Error::probability("q", q)? })
    }

    pub fn lossless() -> Self {
        Self { p: 0.0, q: 0.0 }
    }

    /// Same losses with the two modes exchanged.
    pub fn swapped(self) -> Self {
        Self { p: self.q, q: self.p }
    }
}

/// Reflection and transmission amplitudes of a lossy beamsplitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbsParams {
    r: Complex64,
    t: Complex64,
}

impl LbsParams {
    /// Slack allowed on the physicality inequalities.
    pub const TOL: f64 = 1e-12;

    pub fn new(r: Complex64, t: Complex64) -> Result<Self> {
        if !(r.re.is_finite() && r.im.is_finite() && t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::InvalidArgument("beamsplitter coefficients must be finite".into()));
        }
        let params = Self { r, t };
        let alpha = params.alpha();
        if alpha < -Self::TOL {
            return Err(Error::Unphysical {
                inequality: Inequality::Passivity,
                detail: format!("|t|^2 + |r|^2 = {:.6}", 1.0 - alpha),
            });
        }
        let delta = params.delta();
        if delta.abs() > alpha + Self::TOL {
            return Err(Error::Unphysical {
                inequality: Inequality::Coherence,
                detail: format!("|t r* + r t*| = {:.6} exceeds alpha = {:.6}", delta.abs(), alpha),
            });
        }
        Ok(params)
    }

    /// Lossless 50:50 splitter `t = 1/√2`, `r = i/√2`.
    pub fn lossless_balanced() -> Self {
        Self { r: Complex64::new(0.0, FRAC_1_SQRT_2), t: c(FRAC_1_SQRT_2) }
    }

    /// Ideal coherent perfect absorber, `r = t = 1/2`.
    pub fn ideal_cpa() -> Self {
        Self { r: c(0.5), t: c(0.5) }
    }

    pub fn r(&self) -> Complex64 {
        self.r
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    /// Single-photon absorption `1 - |t|^2 - |r|^2`.
    pub fn alpha(&self) -> f64 {
        1.0 - self.t.norm_sqr() - self.r.norm_sqr()
    }

    /// Coherence term `t r* + r t*`.
    pub fn delta(&self) -> f64 {
        2.0 * (self.t * self.r.conj()).re
    }

    /// Amplitude of the symmetric noise mode, `√((1 - |t+r|²)/2)`.
    pub fn noise_sum(&self) -> f64 {
        (0.5 * (1.0 - (self.t + self.r).norm_sqr())).max(0.0).sqrt()
    }

    /// Amplitude of the antisymmetric noise mode, `√((1 - |t-r|²)/2)`.
    pub fn noise_diff(&self) -> f64 {
        (0.5 * (1.0 - (self.t - self.r).norm_sqr())).max(0.0).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelKind {
    Loss,
    Lbs,
    Unitary,
    Hom,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ChannelKind::Loss => "loss",
            ChannelKind::Lbs => "lbs",
            ChannelKind::Unitary => "unitary",
            ChannelKind::Hom => "hom",
        };
        f.write_str(s)
    }
}

/// Ordered Kraus representation `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<Op6>,
    kind: ChannelKind,
}

impl KrausChannel {
    /// Builds a channel, rejecting operator sets that are not trace preserving.
    pub fn new(operators: Vec<Op6>, kind: ChannelKind) -> Result<Self> {
        let channel = Self { operators, kind };
        let residual = cptp_residual(&channel);
        if residual > COMPLETENESS_TOL {
            return Err(Error::Incomplete { label: kind.to_string(), residual });
        }
        Ok(channel)
    }

    /// Builds a channel without checking completeness.
    ///
    /// [`apply_channel`] still refuses incomplete sets.
    pub fn new_unchecked(operators: Vec<Op6>, kind: ChannelKind) -> Self {
        Self { operators, kind }
    }

    pub fn identity() -> Self {
        Self { operators: vec![Op6::identity()], kind: ChannelKind::Unitary }
    }

    pub fn operators(&self) -> &[Op6] {
        &self.operators
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub(crate) fn relabel(mut self, kind: ChannelKind) -> Self {
        self.kind = kind;
        self
    }

    /// `Σ K ρ K†` with no completeness check.
    pub(crate) fn apply_raw(&self, rho: &Op6) -> Op6 {
        self.operators.iter().fold(Op6::zeros(), |acc, k| acc + k * rho * k.adjoint())
    }
}

/// `max |Σ K†K - I|`
pub fn cptp_residual(channel: &KrausChannel) -> f64 {
    let sum = channel.operators.iter().fold(Op6::zeros(), |acc, k| acc + k.adjoint() * k);
    max_abs(&(sum - Op6::identity()))
}

/// Applies `channel` to `rho`.
pub fn apply_channel(channel: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let residual = cptp_residual(channel);
    if residual > COMPLETENESS_TOL {
        return Err(Error::Incomplete { label: channel.kind.to_string(), residual });
    }
    Ok(DensityMatrix::from_raw(channel.apply_raw(rho.matrix())))
}

/// Unitary operator on the truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary6(Op6);

impl Unitary6 {
    pub fn new(m: Op6) -> Result<Self> {
        let residual = max_abs(&(m.adjoint() * m - Op6::identity()));
        if residual > UNITARY_TOL {
            return Err(Error::InvalidArgument(format!("matrix is not unitary (residual {residual:.3e})")));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Op6 {
        &self.0
    }

    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_raw(self.0 * rho.matrix() * self.0.adjoint())
    }

    pub fn as_channel(&self) -> KrausChannel {
        KrausChannel { operators: vec![self.0], kind: ChannelKind::Unitary }
    }
}

/// Trivial (incoherent) loss on both arms, as one two-mode channel.
///
/// The six operators are indexed by the noise occupation in basis order, so
/// `E₀` is the no-loss branch and `E₃` loses one photon from each mode.
pub fn loss_channel(params: LossParams) -> Result<KrausChannel> {
    let LossParams { p, q } = LossParams::new(params.p, params.q)?;
    let (sp, sq) = ((1.0 - p).sqrt(), (1.0 - q).sqrt());
    let mut e = [Op6::zeros(); DIM];

    e[0][(VAC, VAC)] = c(1.0);
    e[0][(A1, A1)] = c(sp);
    e[0][(B1, B1)] = c(sq);
    e[0][(AB, AB)] = c(sp * sq);
    e[0][(A2, A2)] = c(1.0 - p);
    e[0][(B2, B2)] = c(1.0 - q);

    e[1][(VAC, A1)] = c(p.sqrt());
    e[1][(A1, A2)] = c((2.0 * p * (1.0 - p)).sqrt());
    e[1][(B1, AB)] = c((p * (1.0 - q)).sqrt());

    e[2][(VAC, B1)] = c(q.sqrt());
    e[2][(A1, AB)] = c((q * (1.0 - p)).sqrt());
    e[2][(B1, B2)] = c((2.0 * q * (1.0 - q)).sqrt());

    e[3][(VAC, AB)] = c((p * q).sqrt());
    e[4][(VAC, A2)] = c(p);
    e[5][(VAC, B2)] = c(q);

    KrausChannel::new(e.to_vec(), ChannelKind::Loss)
}

/// Lossy beamsplitter channel, generated from the four-mode dilation.
pub fn lbs_channel(params: LbsParams) -> Result<KrausChannel> {
    let params = LbsParams::new(params.r, params.t)?;
    let map = oracle::dilated_mode_map(params)?;
    Ok(oracle::kraus_from_dilation(&map)?.relabel(ChannelKind::Lbs))
}

/// Closed-form lossy-beamsplitter operators as commonly tabulated.
///
/// These are kept for comparison only: several entries differ from the
/// dilation by factors of √2 on paths that lose photons into the noise modes,
/// so the set is not trace preserving unless the splitter is lossless.
pub fn lbs_printed_operators(params: LbsParams) -> [Op6; DIM] {
    let (r, t) = (params.r, params.t);
    let u = c(params.noise_sum());
    let v = c(params.noise_diff());
    let u2 = u * u;
    let v2 = v * v;
    let s2 = c(SQRT_2);
    let h = c(0.5);
    let mut f = [Op6::zeros(); DIM];

    f[0][(VAC, VAC)] = c(1.0);
    f[0][(A1, A1)] = t;
    f[0][(A1, B1)] = r;
    f[0][(B1, A1)] = r;
    f[0][(B1, B1)] = t;
    f[0][(AB, AB)] = t * t + r * r;
    f[0][(AB, A2)] = s2 * t * r;
    f[0][(AB, B2)] = s2 * t * r;
    f[0][(A2, AB)] = s2 * t * r;
    f[0][(A2, A2)] = t * t;
    f[0][(A2, B2)] = r * r;
    f[0][(B2, AB)] = s2 * t * r;
    f[0][(B2, A2)] = r * r;
    f[0][(B2, B2)] = t * t;

    f[1][(VAC, A1)] = u;
    f[1][(VAC, B1)] = u;
    f[1][(A1, AB)] = (t + r) * u;
    f[1][(A1, A2)] = t * u;
    f[1][(A1, B2)] = r * u;
    f[1][(B1, AB)] = (t + r) * u;
    f[1][(B1, A2)] = r * u;
    f[1][(B1, B2)] = t * u;

    f[2][(VAC, A1)] = v;
    f[2][(VAC, B1)] = -v;
    f[2][(A1, AB)] = (r - t) * v;
    f[2][(A1, A2)] = t * v;
    f[2][(A1, B2)] = -r * v;
    f[2][(B1, AB)] = -(r - t) * v;
    f[2][(B1, A2)] = r * v;
    f[2][(B1, B2)] = -t * v;

    f[3][(VAC, A2)] = u * v / s2;
    f[3][(VAC, B2)] = -u * v / s2;

    f[4][(VAC, AB)] = u2 / s2;
    f[4][(VAC, A2)] = h * u2;
    f[4][(VAC, B2)] = h * u2;

    f[5][(VAC, AB)] = -v2 / s2;
    f[5][(VAC, A2)] = h * v2;
    f[5][(VAC, B2)] = h * v2;

    f
}

/// Largest entrywise difference between the dilation-generated operators and
/// the closed-form table, per Kraus index.
pub fn lbs_printed_discrepancy(params: LbsParams) -> Result<[f64; DIM]> {
    let channel = lbs_channel(params)?;
    let printed = lbs_printed_operators(params);
    let mut out = [0.0; DIM];
    for (i, (k, p)) in channel.operators().iter().zip(printed.iter()).enumerate() {
        out[i] = max_abs(&(k - p));
    }
    Ok(out)
}

/// Phase convention of the lossless beamsplitter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BsConvention {
    /// `a† → (a† + i b†)/√2`, `b† → (i a† + b†)/√2`.
    #[default]
    Symmetric,
    /// `a† → (a† + b†)/√2`, `b† → (a† - b†)/√2`.
    Real,
}

impl BsConvention {
    /// Columns are the images of `a†` and `b†` over `(a†, b†)`.
    pub fn mode_matrix(self) -> Matrix2<Complex64> {
        let s = c(FRAC_1_SQRT_2);
        let i = Complex64::new(0.0, FRAC_1_SQRT_2);
        match self {
            BsConvention::Symmetric => Matrix2::new(s, i, i, s),
            BsConvention::Real => Matrix2::new(s, s, s, -s),
        }
    }
}

/// Lifts a 2×2 unitary on creation operators to the truncated Fock space.
pub fn lift_mode_unitary(m: &Matrix2<Complex64>) -> Result<Unitary6> {
    // a† -> ka a† + kb b†, b† -> la a† + lb b†
    let (ka, kb) = (m[(0, 0)], m[(1, 0)]);
    let (la, lb) = (m[(0, 1)], m[(1, 1)]);
    let s2 = c(SQRT_2);
    let mut u = Op6::zeros();

    u[(VAC, VAC)] = c(1.0);
    u[(A1, A1)] = ka;
    u[(B1, A1)] = kb;
    u[(A1, B1)] = la;
    u[(B1, B1)] = lb;

    u[(A2, AB)] = s2 * ka * la;
    u[(AB, AB)] = ka * lb + kb * la;
    u[(B2, AB)] = s2 * kb * lb;

    u[(A2, A2)] = ka * ka;
    u[(AB, A2)] = s2 * ka * kb;
    u[(B2, A2)] = kb * kb;

    u[(A2, B2)] = la * la;
    u[(AB, B2)] = s2 * la * lb;
    u[(B2, B2)] = lb * lb;

    Unitary6::new(u)
}

/// The lossless 50:50 HOM beamsplitter in the default convention.
pub fn lossless_bs() -> Unitary6 {
    lossless_bs_with(BsConvention::Symmetric)
}

pub fn lossless_bs_with(convention: BsConvention) -> Unitary6 {
    lift_mode_unitary(&convention.mode_matrix()).expect("balanced beamsplitter is unitary")
}

/// Phase `φ` on mode `b`: `diag(1, 1, e^{iφ}, e^{iφ}, 1, e^{2iφ})`.
///
/// `phi` must be finite.
pub fn phase_shifter(phi: f64) -> Unitary6 {
    let e1 = Complex64::from_polar(1.0, phi);
    let e2 = Complex64::from_polar(1.0, 2.0 * phi);
    let d = nalgebra::Vector6::new(c(1.0), c(1.0), e1, e1, c(1.0), e2);
    Unitary6(Op6::from_diagonal(&d))
}

/// HOM beamsplitter with partially distinguishable photons.
///
/// With weight `visibility` the pair interferes; otherwise the two photons
/// are routed independently, giving `¼|20⟩⟨20| + ¼|02⟩⟨02| + ½|11⟩⟨11|` for
/// a `|11⟩` input. States with fewer than two photons pass through the
/// beamsplitter unitarily in both branches.
pub fn hom_channel(visibility: f64, convention: BsConvention) -> Result<KrausChannel> {
    let v = Error::probability("visibility", visibility)?;
    let u = *lossless_bs_with(convention).matrix();
    let mut off_pair = Op6::identity();
    off_pair[(AB, AB)] = c(0.0);

    let classical = |to: usize, weight: f64| {
        let mut k = Op6::zeros();
        k[(to, AB)] = c(((1.0 - v) * weight).sqrt());
        k
    };
    let ops = vec![
        u * c(v.sqrt()),
        u * off_pair * c((1.0 - v).sqrt()),
        classical(A2, 0.25),
        classical(B2, 0.25),
        classical(AB, 0.5),
    ];
    KrausChannel::new(ops, ChannelKind::Hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{expectation, number_operator, projector, PureState};
    use std::f64::consts::PI;

    fn table_lbs() -> LbsParams {
        LbsParams::new(Complex64::new(0.2991, -0.2177), c(0.6625)).unwrap()
    }

    #[test]
    fn loss_identity_and_certain_loss() {
        let ch = loss_channel(LossParams::new(0.0, 0.0).unwrap()).unwrap();
        assert_eq!(ch.len(), 6);
        assert_eq!(ch.operators()[0], Op6::identity());
        for k in &ch.operators()[1..] {
            assert_eq!(max_abs(k), 0.0);
        }

        let ch = loss_channel(LossParams::new(1.0, 1.0).unwrap()).unwrap();
        let out = apply_channel(&ch, &DensityMatrix::fock(1, 1).unwrap()).unwrap();
        assert!(out.max_abs_diff(&DensityMatrix::fock(0, 0).unwrap()) < 1e-15);
    }

    #[test]
    fn loss_e0_for_measured_transmissions() {
        let ch = loss_channel(LossParams::new(0.61, 0.81).unwrap()).unwrap();
        let e0 = ch.operators()[0];
        let expect = [1.0, 0.39_f64.sqrt(), 0.19_f64.sqrt(), (0.39_f64 * 0.19).sqrt(), 0.39, 0.19];
        for (i, want) in expect.iter().enumerate() {
            assert!((e0[(i, i)].re - want).abs() < 1e-15, "E0[{i},{i}]");
        }
        assert_eq!(max_abs(&(e0 - Op6::from_diagonal(&e0.diagonal()))), 0.0);
    }

    #[test]
    fn loss_rejects_out_of_range() {
        assert!(matches!(LossParams::new(-0.1, 0.5), Err(Error::Probability { name: "p", .. })));
        assert!(matches!(LossParams::new(0.5, 1.2), Err(Error::Probability { name: "q", .. })));
        assert!(loss_channel(LossParams { p: 2.0, q: 0.0 }).is_err());
    }

    #[test]
    fn lossless_lbs_has_no_noise_operators() {
        let ch = lbs_channel(LbsParams::lossless_balanced()).unwrap();
        for k in &ch.operators()[1..] {
            assert!(max_abs(k) < 1e-12);
        }
        assert!(Unitary6::new(ch.operators()[0]).is_ok());
    }

    #[test]
    fn lbs_f0_two_photon_entry() {
        let ch = lbs_channel(LbsParams::ideal_cpa()).unwrap();
        assert!((ch.operators()[0][(AB, AB)] - c(0.5)).norm() < 1e-15);
        assert!(cptp_residual(&ch) <= 1e-12);
    }

    #[test]
    fn lbs_table_values_complete() {
        let ch = lbs_channel(table_lbs()).unwrap();
        assert!(cptp_residual(&ch) <= 1e-10);
    }

    #[test]
    fn lbs_rejects_unphysical() {
        let err = LbsParams::new(c(0.8), c(0.8)).unwrap_err();
        assert!(matches!(err, Error::Unphysical { inequality: Inequality::Passivity, .. }));

        // |t|^2 + |r|^2 = 0.72 but δ = 0.72 > α = 0.28
        let err = LbsParams::new(c(0.6), c(0.6)).unwrap_err();
        assert!(matches!(err, Error::Unphysical { inequality: Inequality::Coherence, .. }));
        assert!(err.to_string().contains("2tr₀|cos θ| ≤ α"));
    }

    #[test]
    fn printed_table_agrees_on_f0_only() {
        let d = lbs_printed_discrepancy(table_lbs()).unwrap();
        assert!(d[0] < 1e-12);
        assert!(d[1..].iter().any(|x| *x > 1e-3));
        let lossless = lbs_printed_discrepancy(LbsParams::lossless_balanced()).unwrap();
        assert!(lossless.iter().all(|x| *x < 1e-12));
    }

    #[test]
    fn hom_bs_examples() {
        let u = lossless_bs();
        let out = u.matrix() * PureState::basis(AB).unwrap().amplitudes();
        let s = FRAC_1_SQRT_2;
        assert!((out[A2] - Complex64::new(0.0, s)).norm() < 1e-15);
        assert!((out[B2] - Complex64::new(0.0, s)).norm() < 1e-15);
        assert!(out[AB].norm() < 1e-15);

        let out = u.matrix() * PureState::basis(A1).unwrap().amplitudes();
        assert!((out[A1] - c(s)).norm() < 1e-15);
        assert!((out[B1] - Complex64::new(0.0, s)).norm() < 1e-15);

        for conv in [BsConvention::Symmetric, BsConvention::Real] {
            let m = *lossless_bs_with(conv).matrix();
            assert!(max_abs(&(m.adjoint() * m - Op6::identity())) <= 1e-12);
        }
    }

    #[test]
    fn hom_null() {
        let rho = lossless_bs().apply(&DensityMatrix::fock(1, 1).unwrap());
        assert!(expectation(&rho, &projector(AB).unwrap()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn phase_shifter_examples() {
        assert!(max_abs(&(phase_shifter(0.0).matrix() - Op6::identity())) < 1e-15);

        let m = *phase_shifter(PI).matrix();
        assert!((m[(B1, B1)] + c(1.0)).norm() < 1e-15);
        assert!((m[(B2, B2)] - c(1.0)).norm() < 1e-15);

        let phi = 0.37;
        let out = phase_shifter(phi).matrix() * PureState::noon(0.0).amplitudes();
        let want = PureState::noon(2.0 * phi);
        assert!((out - want.amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn corrupted_channel_detected() {
        let ch = loss_channel(LossParams::new(0.3, 0.7).unwrap()).unwrap();
        assert!(cptp_residual(&ch) <= 1e-12);
        let mut ops = ch.operators().to_vec();
        ops[1] *= c(1.1);
        let bad = KrausChannel::new_unchecked(ops.clone(), ChannelKind::Loss);
        assert!(cptp_residual(&bad) > 1e-3);
        assert!(matches!(apply_channel(&bad, &DensityMatrix::fock(1, 0).unwrap()), Err(Error::Incomplete { .. })));
        assert!(KrausChannel::new(ops, ChannelKind::Loss).is_err());
    }

    #[test]
    fn identity_channel_is_noop() {
        let rho = PureState::noon(0.3).density();
        let out = apply_channel(&KrausChannel::identity(), &rho).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn hom_visibility_coincidences() {
        let input = DensityMatrix::fock(1, 1).unwrap();
        let out = apply_channel(&hom_channel(0.0, BsConvention::Symmetric).unwrap(), &input).unwrap();
        assert!((out.population(AB) - 0.5).abs() < 1e-15);
        assert!((out.population(A2) - 0.25).abs() < 1e-15);

        let out = apply_channel(&hom_channel(1.0, BsConvention::Symmetric).unwrap(), &input).unwrap();
        assert!(out.population(AB).abs() < 1e-15);
        assert!(hom_channel(1.1, BsConvention::Symmetric).is_err());
    }

    #[test]
    fn composition_order_matters() {
        // witness: one photon in mode a, loss only on mode b
        let loss = loss_channel(LossParams::new(0.0, 1.0).unwrap()).unwrap();
        let bs = lossless_bs().as_channel();
        let rho = DensityMatrix::fock(1, 0).unwrap();
        let loss_then_bs = apply_channel(&bs, &apply_channel(&loss, &rho).unwrap()).unwrap();
        let bs_then_loss = apply_channel(&loss, &apply_channel(&bs, &rho).unwrap()).unwrap();
        assert!((loss_then_bs.mean_photon_number() - 1.0).abs() < 1e-15);
        assert!((bs_then_loss.mean_photon_number() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ideal_cpa_on_minus_noon_gives_single_photon() {
        let ch = lbs_channel(LbsParams::ideal_cpa()).unwrap();
        let out = apply_channel(&ch, &PureState::noon(PI).density()).unwrap();
        assert!((expectation(&out, &number_operator()).unwrap() - 1.0).abs() < 1e-12);
        assert!((out.sector_population(1) - 1.0).abs() < 1e-12);
    }
}
