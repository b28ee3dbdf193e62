//! Brute-force reference for the channels.
//!
//! A linear optical element with loss is a map on creation operators of the
//! two system modes into four modes: the two system modes plus two noise
//! modes. Substituting that map into each basis monomial gives the evolved
//! four-mode state exactly, and tracing the noise modes out gives the channel
//! output. No Kraus operators are involved on the trace path, which is what
//! makes it a useful cross-check for [`crate::channels`].
//!
//! Noise modes always start in vacuum, so only the isometric part of the
//! dilation is needed.

use std::collections::BTreeMap;

use nalgebra::{Matrix2, Matrix4x2, SMatrix, SVector};
use num_complex::Complex64;

use crate::channels::{ChannelKind, KrausChannel, LbsParams, LossParams};
use crate::fock::{DensityMatrix, FockIndex, Op6, PureState, BASIS, DIM};
use crate::{Error, Result};

/// Dimension of the four-mode space with at most two photons.
pub const EXT_DIM: usize = 15;

/// Isometry tolerance on mode maps.
pub const ISOMETRY_TOL: f64 = 1e-12;

type Isometry = SMatrix<Complex64, EXT_DIM, DIM>;

/// Images of `a₁†` and `a₂†` (columns) over `(a₁†, a₂†, C†, D†)` (rows).
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMap(Matrix4x2<Complex64>);

impl ModeMap {
    pub fn new(m: Matrix4x2<Complex64>) -> Result<Self> {
        let map = Self(m);
        let residual = map.isometry_residual();
        if residual > ISOMETRY_TOL {
            return Err(Error::NotIsometry(residual));
        }
        Ok(map)
    }

    /// Noise-free map from a 2×2 mode unitary.
    pub fn from_unitary(m: &Matrix2<Complex64>) -> Result<Self> {
        let mut full = Matrix4x2::zeros();
        full.fixed_view_mut::<2, 2>(0, 0).copy_from(m);
        Self::new(full)
    }

    pub fn matrix(&self) -> &Matrix4x2<Complex64> {
        &self.0
    }

    /// `max |M†M - I₂|`
    pub fn isometry_residual(&self) -> f64 {
        let g = self.0.adjoint() * self.0 - Matrix2::identity();
        g.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
    }
}

/// Dilation of the lossy beamsplitter.
///
/// `a₁† → t a₁† + r a₂† + u C† + v D†` and `a₂† → r a₁† + t a₂† + u C† - v D†`
/// with `u = √((1-|t+r|²)/2)` and `v = √((1-|t-r|²)/2)`; `C†` and `D†` are
/// the normalized symmetric and antisymmetric noise modes.
pub fn dilated_mode_map(params: LbsParams) -> Result<ModeMap> {
    let params = LbsParams::new(params.r(), params.t())?;
    let (r, t) = (params.r(), params.t());
    let u = Complex64::new(params.noise_sum(), 0.0);
    let v = Complex64::new(params.noise_diff(), 0.0);
    ModeMap::new(Matrix4x2::new(
        t, r, //
        r, t, //
        u, u, //
        v, -v,
    ))
}

/// Dilation of independent arm loss: `a₁† → √(1-p) a₁† + √p c†`, and the
/// same with `q` and `d†` for the second mode.
pub fn loss_mode_map(params: LossParams) -> Result<ModeMap> {
    let LossParams { p, q } = LossParams::new(params.p, params.q)?;
    let c = |x: f64| Complex64::new(x, 0.0);
    ModeMap::new(Matrix4x2::new(
        c((1.0 - p).sqrt()),
        c(0.0),
        c(0.0),
        c((1.0 - q).sqrt()),
        c(p.sqrt()),
        c(0.0),
        c(0.0),
        c(q.sqrt()),
    ))
}

/// Four-mode occupation `(n₁, n₂, n_C, n_D)` of each extended basis vector,
/// ordered system-major with both halves in the two-mode basis order.
fn extended_basis() -> &'static [(usize, usize); EXT_DIM] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[(usize, usize); EXT_DIM]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [(0, 0); EXT_DIM];
        let mut k = 0;
        for (s, sys) in BASIS.iter().enumerate() {
            for (e, noise) in BASIS.iter().enumerate() {
                if sys.total() + noise.total() <= 2 {
                    out[k] = (s, e);
                    k += 1;
                }
            }
        }
        debug_assert_eq!(k, EXT_DIM);
        out
    })
}

fn extended_index(system: usize, noise: usize) -> Option<usize> {
    extended_basis().iter().position(|&pair| pair == (system, noise))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Image of basis vector `input` under the substitution, as a four-mode state.
fn evolve_basis(map: &ModeMap, input: FockIndex) -> SVector<Complex64, EXT_DIM> {
    let m = map.matrix();
    let factors: Vec<usize> = std::iter::repeat_n(0, input.n_a).chain(std::iter::repeat_n(1, input.n_b)).collect();

    // monomial exponents over (a1, a2, C, D) -> coefficient
    let mut poly: BTreeMap<[usize; 4], Complex64> = BTreeMap::new();
    poly.insert([0; 4], Complex64::new(1.0, 0.0));
    for col in factors {
        let mut next = BTreeMap::new();
        for (exp, coeff) in &poly {
            for mode in 0..4 {
                let z = m[(mode, col)];
                if z == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut e = *exp;
                e[mode] += 1;
                *next.entry(e).or_insert(Complex64::new(0.0, 0.0)) += coeff * z;
            }
        }
        poly = next;
    }

    let norm_in = (factorial(input.n_a) * factorial(input.n_b)).sqrt();
    let mut out = SVector::<Complex64, EXT_DIM>::zeros();
    for (exp, coeff) in poly {
        // (x†)^k |0⟩ = √(k!) |k⟩
        let weight = exp.iter().map(|&k| factorial(k)).product::<f64>().sqrt() / norm_in;
        let sys = FockIndex::new(exp[0], exp[1]).expect("photon number is conserved").index();
        let noise = FockIndex::new(exp[2], exp[3]).expect("photon number is conserved").index();
        let k = extended_index(sys, noise).expect("total photon number is at most two");
        out[k] += coeff * weight;
    }
    out
}

fn isometry(map: &ModeMap) -> Isometry {
    let mut v = Isometry::zeros();
    for (j, occ) in BASIS.iter().enumerate() {
        v.set_column(j, &evolve_basis(map, *occ));
    }
    v
}

/// Pure state of system plus noise modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedState {
    amplitudes: SVector<Complex64, EXT_DIM>,
}

impl ExtendedState {
    /// Evolves `psi ⊗ |vac⟩_noise` through the dilation.
    pub fn evolve(psi: &PureState, map: &ModeMap) -> Self {
        Self { amplitudes: isometry(map) * psi.amplitudes() }
    }

    pub fn amplitudes(&self) -> &SVector<Complex64, EXT_DIM> {
        &self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Expected photon number over all four modes.
    pub fn photon_number(&self) -> f64 {
        extended_basis()
            .iter()
            .zip(self.amplitudes.iter())
            .map(|(&(s, e), a)| (BASIS[s].total() + BASIS[e].total()) as f64 * a.norm_sqr())
            .sum()
    }

    /// Expected photon number in the noise modes alone.
    pub fn noise_photon_number(&self) -> f64 {
        extended_basis()
            .iter()
            .zip(self.amplitudes.iter())
            .map(|(&(_, e), a)| BASIS[e].total() as f64 * a.norm_sqr())
            .sum()
    }
}

/// `Tr_noise[V (ρ ⊗ |0⟩⟨0|) V†]`, computed on the full four-mode space.
///
/// [`ModeMap`] can only be built as an isometry, so the result is always a
/// valid state for valid input.
pub fn simulate_dilation(rho: &DensityMatrix, map: &ModeMap) -> DensityMatrix {
    let v = isometry(map);
    let extended = v * rho.matrix() * v.adjoint();

    let basis = extended_basis();
    let mut out = Op6::zeros();
    for (i, &(s, e)) in basis.iter().enumerate() {
        for (j, &(s2, e2)) in basis.iter().enumerate() {
            if e == e2 {
                out[(s, s2)] += extended[(i, j)];
            }
        }
    }
    DensityMatrix::from_raw(out)
}

/// Kraus operators `⟨eᵢ|V|vac⟩` over the orthonormal noise basis `eᵢ`, in the
/// two-mode basis order applied to `(C, D)`.
pub fn kraus_from_dilation(map: &ModeMap) -> Result<KrausChannel> {
    let v = isometry(map);
    let mut ops = vec![Op6::zeros(); DIM];
    for (i, &(s, e)) in extended_basis().iter().enumerate() {
        for j in 0..DIM {
            ops[e][(s, j)] = v[(i, j)];
        }
    }
    let noisy = ops[1..].iter().any(|k| k.iter().any(|z| z.norm() > 0.0));
    let kind = if noisy { ChannelKind::Loss } else { ChannelKind::Unitary };
    KrausChannel::new(ops, kind)
}
