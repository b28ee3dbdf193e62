//! Two-mode Fock space truncated at two photons.
//!
//! The basis is ordered `|00⟩, |10⟩, |01⟩, |11⟩, |20⟩, |02⟩` where the first
//! label counts photons in mode `a` and the second in mode `b`. Every matrix in
//! the crate is written in this ordering; the loss and beamsplitter operators
//! only have their familiar block form under it.

use std::ops::{Deref, Index};

use nalgebra::{Matrix6, SymmetricEigen, Vector6};
use num_complex::Complex64;

use crate::{Error, Result};

/// Dimension of the truncated space.
pub const DIM: usize = 6;

/// Linear operator on the truncated space.
pub type Op6 = Matrix6<Complex64>;

/// Hermiticity tolerance used when validating states and observables.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance for density matrices produced by trace-preserving maps.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;

/// Occupation `(n_a, n_b)` of each basis vector, in basis order.
pub const BASIS: [FockIndex; DIM] = [
    FockIndex { n_a: 0, n_b: 0 },
    FockIndex { n_a: 1, n_b: 0 },
    FockIndex { n_a: 0, n_b: 1 },
    FockIndex { n_a: 1, n_b: 1 },
    FockIndex { n_a: 2, n_b: 0 },
    FockIndex { n_a: 0, n_b: 2 },
];

pub const VAC: usize = 0;
pub const A1: usize = 1;
pub const B1: usize = 2;
pub const AB: usize = 3;
pub const A2: usize = 4;
pub const B2: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockIndex {
    pub n_a: usize,
    pub n_b: usize,
}

impl FockIndex {
    pub fn new(n_a: usize, n_b: usize) -> Result<Self> {
        if n_a + n_b > 2 {
            return Err(Error::Truncation { n_a, n_b });
        }
        Ok(Self { n_a, n_b })
    }

    pub fn total(self) -> usize {
        self.n_a + self.n_b
    }

    pub fn index(self) -> usize {
        match (self.n_a, self.n_b) {
            (0, 0) => VAC,
            (1, 0) => A1,
            (0, 1) => B1,
            (1, 1) => AB,
            (2, 0) => A2,
            (0, 2) => B2,
            _ => unreachable!("FockIndex invariant"),
        }
    }
}

/// Position of `|n_a n_b⟩` in the basis ordering.
pub fn basis_index(n_a: usize, n_b: usize) -> Result<usize> {
    FockIndex::new(n_a, n_b).map(FockIndex::index)
}

/// Inverse of [`basis_index`].
pub fn index_occupation(index: usize) -> Result<FockIndex> {
    BASIS.get(index).copied().ok_or(Error::IndexOutOfRange(index))
}

/// Total photon number of basis vector `index`. Panics when out of range.
pub fn photon_number(index: usize) -> usize {
    BASIS[index].total()
}

/// `|i⟩⟨i|`
pub fn projector(index: usize) -> Result<Op6> {
    if index >= DIM {
        return Err(Error::IndexOutOfRange(index));
    }
    let mut p = Op6::zeros();
    p[(index, index)] = Complex64::new(1.0, 0.0);
    Ok(p)
}

/// Photon-number operator `N = Σ (n_a + n_b) |i⟩⟨i|`.
pub fn number_operator() -> Op6 {
    Op6::from_diagonal(&Vector6::from_fn(|i, _| Complex64::new(photon_number(i) as f64, 0.0)))
}

/// Projector onto the subspace with exactly `n` photons.
pub fn sector_projector(n: usize) -> Op6 {
    Op6::from_diagonal(&Vector6::from_fn(|i, _| {
        if photon_number(i) == n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Largest entrywise modulus of `m`.
pub fn max_abs(m: &Op6) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn hermitian_residual(m: &Op6) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// `Tr[P ρ]` for a Hermitian observable `P`.
pub fn expectation(rho: &DensityMatrix, observable: &Op6) -> Result<f64> {
    let res = hermitian_residual(observable);
    if res > HERMITIAN_TOL {
        return Err(Error::NotHermitian(res));
    }
    Ok((observable * rho.matrix()).trace().re)
}

/// Normalized pure state in the truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vector6<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vector6<Complex64>) -> Result<Self> {
        let norm2 = amplitudes.norm_squared();
        if (norm2 - 1.0).abs() > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm2} is not 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vector6<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self { amplitudes: amplitudes / Complex64::new(norm, 0.0) })
    }

    pub fn basis(index: usize) -> Result<Self> {
        if index >= DIM {
            return Err(Error::IndexOutOfRange(index));
        }
        let mut v = Vector6::zeros();
        v[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    /// Two-photon N00N state `(|20⟩ + e^{iθ}|02⟩)/√2`.
    pub fn noon(theta: f64) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = Vector6::zeros();
        v[A2] = Complex64::new(s, 0.0);
        v[B2] = Complex64::from_polar(s, theta);
        Self { amplitudes: v }
    }

    pub fn amplitudes(&self) -> &Vector6<Complex64> {
        &self.amplitudes
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(self.amplitudes * self.amplitudes.adjoint())
    }
}

impl Index<usize> for PureState {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.amplitudes[i]
    }
}

/// Density operator on the truncated space.
///
/// Construction through [`DensityMatrix::new`] checks Hermiticity, unit trace
/// and positivity. Channel outputs are built from validated inputs and keep
/// these properties up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(Op6);

impl DensityMatrix {
    pub fn new(m: Op6) -> Result<Self> {
        let rho = Self(m);
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_raw(m: Op6) -> Self {
        Self(m)
    }

    pub fn basis(index: usize) -> Result<Self> {
        projector(index).map(Self)
    }

    /// `|n_a n_b⟩⟨n_a n_b|`
    pub fn fock(n_a: usize, n_b: usize) -> Result<Self> {
        Self::basis(basis_index(n_a, n_b)?)
    }

    /// Diagonal state with the given populations.
    pub fn diagonal(populations: [f64; DIM]) -> Result<Self> {
        let d = Vector6::from_fn(|i, _| Complex64::new(populations[i], 0.0));
        Self::new(Op6::from_diagonal(&d))
    }

    pub fn matrix(&self) -> &Op6 {
        &self.0
    }

    pub fn into_matrix(self) -> Op6 {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `⟨i|ρ|i⟩`
    pub fn population(&self, index: usize) -> f64 {
        self.0[(index, index)].re
    }

    /// Total population of the `n`-photon sector.
    pub fn sector_population(&self, n: usize) -> f64 {
        (0..DIM).filter(|&i| photon_number(i) == n).map(|i| self.population(i)).sum()
    }

    /// The state restricted to the `n`-photon sector (not renormalized).
    pub fn sector_block(&self, n: usize) -> Op6 {
        let p = sector_projector(n);
        p * self.0 * p
    }

    pub fn mean_photon_number(&self) -> f64 {
        (0..DIM).map(|i| photon_number(i) as f64 * self.population(i)).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (self.0 + self.0.adjoint()) * Complex64::new(0.5, 0.0);
        SymmetricEigen::new(herm).eigenvalues.min()
    }

    pub fn validate(&self) -> Result<()> {
        let h = hermitian_residual(&self.0);
        if h > HERMITIAN_TOL {
            return Err(Error::NotHermitian(h));
        }
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = self.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs(&(self.0 - other.0))
    }
}

impl Deref for DensityMatrix {
    type Target = Op6;

    fn deref(&self) -> &Op6 {
        &self.0
    }
}
