//! Pure states and density-matrix helpers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{fourier, Dimension, Operator};
use crate::error::{Error, Result};

/// Tolerance for Hermiticity, trace and positivity of density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

const NORM_TOL: f64 = 1e-12;

/// Normalized state in the `{|u_γ⟩}` basis, index order `-ℓ, …, ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dim: Dimension,
    amps: DVector<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes that are already unit-norm to `1e-12`.
    pub fn new(dim: Dimension, amps: DVector<Complex64>) -> Result<Self> {
        if amps.len() != dim.n() {
            return Err(Error::DimensionMismatch {
                expected: dim.n(),
                found: amps.len(),
            });
        }
        let dev = (amps.norm() - 1.0).abs();
        if dev > NORM_TOL {
            return Err(Error::Tolerance {
                module: "state",
                check: "unit norm",
                deviation: dev,
                tolerance: NORM_TOL,
            });
        }
        Ok(Self { dim, amps })
    }

    /// Normalize arbitrary non-zero amplitudes.
    pub fn normalized(dim: Dimension, amps: DVector<Complex64>) -> Result<Self> {
        if amps.len() != dim.n() {
            return Err(Error::DimensionMismatch {
                expected: dim.n(),
                found: amps.len(),
            });
        }
        let norm = amps.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::param("amplitudes", "zero or non-finite norm"));
        }
        Ok(Self {
            dim,
            amps: amps / Complex64::new(norm, 0.0),
        })
    }

    /// `|u_α⟩`.
    pub fn basis_u(dim: Dimension, alpha: i64) -> Self {
        let mut amps = DVector::zeros(dim.n());
        amps[dim.index(alpha)] = Complex64::new(1.0, 0.0);
        Self { dim, amps }
    }

    /// `|v_β⟩ = F|u_β⟩`, the eigenvector of `V` with eigenvalue `ω^β`.
    pub fn basis_v(dim: Dimension, beta: i64) -> Self {
        let f = fourier(dim);
        let amps = f.matrix().column(dim.index(beta)).into_owned();
        Self { dim, amps }
    }

    /// Haar-like random state from independent standard normal parts.
    pub fn random(dim: Dimension, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(dim, &mut rng)
    }

    pub fn random_with(dim: Dimension, rng: &mut impl rand::Rng) -> Self {
        let amps = DVector::from_fn(dim.n(), |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        });
        Self::normalized(dim, amps).expect("gaussian vector is non-zero")
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    /// `⟨u_γ|ψ⟩`.
    pub fn amplitude(&self, gamma: i64) -> Complex64 {
        self.amps[self.dim.index(gamma)]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.dim, other.dim, "inner product: dimension mismatch");
        self.amps.dotc(&other.amps)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> Operator {
        let mat = &self.amps * self.amps.adjoint();
        Operator::from_matrix(self.dim, mat).expect("outer product is square")
    }

    /// `O|ψ⟩`, which stays normalized only for unitary `O`.
    pub fn apply(&self, op: &Operator) -> Result<Self> {
        if op.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.n(),
                found: op.dim().n(),
            });
        }
        Self::new(self.dim, op.matrix() * &self.amps)
    }

    /// `max_γ |⟨u_γ|self⟩ - ⟨u_γ|other⟩|`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `I/N`.
pub fn maximally_mixed(dim: Dimension) -> Operator {
    Operator::identity(dim).scale_real(1.0 / dim.n() as f64)
}

/// Random full-rank mixed state `G G† / Tr[G G†]` from a complex Gaussian `G`.
pub fn random_mixed(dim: Dimension, seed: u64) -> Operator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = dim.n();
    let g = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    });
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    Operator::from_matrix(dim, w / Complex64::new(tr, 0.0)).expect("square")
}

/// Validate a density matrix: Hermitian and unit trace to `DENSITY_TOL`, and,
/// when requested, smallest eigenvalue `≥ -DENSITY_TOL`.
pub fn check_density(rho: &Operator, require_positive: bool) -> Result<()> {
    let herm = rho.hermiticity_defect();
    if herm > DENSITY_TOL {
        return Err(Error::Tolerance {
            module: "state",
            check: "density matrix hermiticity",
            deviation: herm,
            tolerance: DENSITY_TOL,
        });
    }
    let tr = rho.trace();
    let dev = (tr - Complex64::new(1.0, 0.0)).norm();
    if dev > DENSITY_TOL {
        return Err(Error::Tolerance {
            module: "state",
            check: "density matrix trace",
            deviation: dev,
            tolerance: DENSITY_TOL,
        });
    }
    if require_positive {
        let h = hermitian_part(rho);
        let min = h
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min < -DENSITY_TOL {
            return Err(Error::Tolerance {
                module: "state",
                check: "density matrix positivity",
                deviation: -min,
                tolerance: DENSITY_TOL,
            });
        }
    }
    Ok(())
}

/// `(O + O†)/2` as a raw matrix.
pub(crate) fn hermitian_part(op: &Operator) -> DMatrix<Complex64> {
    (op.matrix() + op.matrix().adjoint()) * Complex64::new(0.5, 0.0)
}
