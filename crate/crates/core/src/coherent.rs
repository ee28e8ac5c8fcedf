//! The theta-function vacuum, displaced coherent states, their Wigner
//! functions, overlaps and marginal distributions.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::algebra::{displacement, half_phase, half_residue, Dimension};
use crate::error::{Error, Result};
use crate::kernel::{wigner, PhaseFunction};
use crate::state::StateVector;
use crate::theta::{lattice_parameter, m_func, theta, MVariant, Theta};

const MARGINAL_NEG_TOL: f64 = 1e-12;
const MARGINAL_SUM_TOL: f64 = 1e-10;

/// The vacuum `⟨u_γ|0⟩ = [2𝔞/M(0,0)]^{1/2} θ₃(2𝔞γ | 2i𝔞)`, the `+1`
/// eigenvector of the Fourier operator.
pub fn vacuum(dim: Dimension) -> Result<StateVector> {
    let a = lattice_parameter(dim);
    let m00 = m_func(dim, MVariant::Doubled, 0, 0)?;
    let pref = (2.0 * a / m00).sqrt();
    let mut amps = DVector::zeros(dim.n());
    for g in dim.labels() {
        amps[dim.index(g)] = Complex64::new(pref * theta(Theta::Three, 2.0 * a * g as f64, 2.0 * a)?, 0.0);
    }
    StateVector::new(dim, amps)
}

/// `|κ,τ⟩ = D(κ,τ)|0⟩`; `κ` labels momentum and `τ` coordinate.
pub fn coherent_state(dim: Dimension, kappa: i64, tau: i64) -> Result<StateVector> {
    vacuum(dim)?.apply(&displacement(dim, kappa, tau))
}

/// `𝒲_{κ,τ}(μ,ν) = K(2(κ-μ), 2(τ-ν))` with the doubled-argument ratio.
pub fn coherent_wigner_closed(dim: Dimension, kappa: i64, tau: i64, mu: i64, nu: i64) -> Result<f64> {
    let m00 = m_func(dim, MVariant::Doubled, 0, 0)?;
    Ok(m_func(dim, MVariant::Doubled, dim.reduce(kappa - mu), dim.reduce(tau - nu))? / m00)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum WignerMethod {
    /// Closed theta form, `O(N²)` theta evaluations.
    #[default]
    Closed,
    /// `Tr[Δ(μ,ν) |κ,τ⟩⟨κ,τ|]` from dense matrices.
    Trace,
}

/// Full Wigner grid of `|κ,τ⟩`.
pub fn coherent_wigner_grid(dim: Dimension, kappa: i64, tau: i64, method: WignerMethod) -> Result<PhaseFunction> {
    match method {
        WignerMethod::Closed => {
            let m00 = m_func(dim, MVariant::Doubled, 0, 0)?;
            // W depends on (κ-μ, τ-ν) only; evaluate each difference once.
            let n = dim.n();
            let mut table = vec![0.0; n * n];
            for e in dim.labels() {
                for x in dim.labels() {
                    table[dim.index(e) * n + dim.index(x)] = m_func(dim, MVariant::Doubled, e, x)? / m00;
                }
            }
            Ok(PhaseFunction::from_real_fn(dim, |mu, nu| {
                table[dim.index(kappa - mu) * n + dim.index(tau - nu)]
            }))
        }
        WignerMethod::Trace => wigner(&coherent_state(dim, kappa, tau)?.projector()),
    }
}

/// `⟨κ′,τ′|κ,τ⟩` in closed form:
/// `ω^{{2⁻¹(κτ′-κ′τ)}} ω^{½x - {2⁻¹x}} K(κ-κ′, τ-τ′)` with
/// `x = (κ-κ′)(τ+τ′)` and the general-variant `K`.
///
/// Labels are reduced to `[-ℓ,ℓ]` first; `ω^{½x}` is the literal
/// `exp(iπx/N)` of the resulting integer `x`.
pub fn coherent_overlap_closed(dim: Dimension, bra: (i64, i64), ket: (i64, i64)) -> Result<Complex64> {
    let (k1, t1) = (dim.reduce(bra.0), dim.reduce(bra.1));
    let (k, t) = (dim.reduce(ket.0), dim.reduce(ket.1));
    let x = (k - k1) * (t + t1);
    let p1 = half_residue(dim, k * t1 - k1 * t);
    let n = dim.n() as f64;
    let phase = dim.omega_pow(p1 - half_residue(dim, x)) * Complex64::from_polar(1.0, PI * x as f64 / n);
    let m00 = m_func(dim, MVariant::General, 0, 0)?;
    let kv = m_func(dim, MVariant::General, k - k1, t - t1)? / m00;
    Ok(phase * kv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Distribution over `ν` (coordinate-like labels).
    Coordinate,
    /// Distribution over `μ` (momentum-like labels).
    Momentum,
}

/// A probability distribution over the labels `-ℓ, …, ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalDistribution {
    dim: Dimension,
    axis: Axis,
    values: Vec<f64>,
}

impl MarginalDistribution {
    /// Validates non-negativity to `1e-12` and unit sum to `1e-10`.
    pub fn new(dim: Dimension, axis: Axis, values: Vec<f64>) -> Result<Self> {
        if values.len() != dim.n() {
            return Err(Error::DimensionMismatch {
                expected: dim.n(),
                found: values.len(),
            });
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -MARGINAL_NEG_TOL {
            return Err(Error::Tolerance {
                module: "coherent",
                check: "marginal non-negativity",
                deviation: -min,
                tolerance: MARGINAL_NEG_TOL,
            });
        }
        let dev = (values.iter().sum::<f64>() - 1.0).abs();
        if dev > MARGINAL_SUM_TOL {
            return Err(Error::Tolerance {
                module: "coherent",
                check: "marginal normalization",
                deviation: dev,
                tolerance: MARGINAL_SUM_TOL,
            });
        }
        Ok(Self { dim, axis, values })
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, label: i64) -> f64 {
        self.values[self.dim.index(label)]
    }

    pub fn argmax(&self) -> i64 {
        let (i, _) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &v)| if v > best.1 { (i, v) } else { best });
        self.dim.label_at(i)
    }
}

/// Closed-form coordinate marginal `𝒬_τ(ν)` and momentum marginal `ℛ_κ(μ)`.
pub fn marginals_closed(
    dim: Dimension,
    kappa: i64,
    tau: i64,
) -> Result<(MarginalDistribution, MarginalDistribution)> {
    let a = lattice_parameter(dim);
    let t3a = theta(Theta::Three, 0.0, a)?;
    let t4a = theta(Theta::Four, 0.0, a)?;
    let t3b = theta(Theta::Three, 0.0, 4.0 * a)?;
    let t2b = theta(Theta::Two, 0.0, 4.0 * a)?;
    let den = t3a * t3b + t4a * t2b;

    let mut q = vec![0.0; dim.n()];
    let mut p = vec![0.0; dim.n()];
    for l in dim.labels() {
        let z = (dim.reduce(tau - l)) as f64;
        q[dim.index(l)] = (4.0 * a).sqrt()
            * (t3b * theta(Theta::Three, 4.0 * a * z, 4.0 * a)? + t2b * theta(Theta::Two, 4.0 * a * z, 4.0 * a)?)
            / den;
        let z = (dim.reduce(kappa - l)) as f64;
        p[dim.index(l)] = a.sqrt()
            * (t3a * theta(Theta::Three, 2.0 * a * z, a)? + t4a * theta(Theta::Four, 2.0 * a * z, a)?)
            / den;
    }
    Ok((
        MarginalDistribution::new(dim, Axis::Coordinate, q)?,
        MarginalDistribution::new(dim, Axis::Momentum, p)?,
    ))
}

/// Marginals of any Wigner grid by partial sums: `(1/N) Σ_μ` gives the
/// coordinate marginal, `(1/N) Σ_ν` the momentum marginal.
pub fn wigner_marginals(w: &PhaseFunction) -> Result<(MarginalDistribution, MarginalDistribution)> {
    let dim = w.dim();
    let q = w.column_means().iter().map(|z| z.re).collect();
    let p = w.row_means().iter().map(|z| z.re).collect();
    Ok((
        MarginalDistribution::new(dim, Axis::Coordinate, q)?,
        MarginalDistribution::new(dim, Axis::Momentum, p)?,
    ))
}

/// Closed coordinate wavefunction
/// `⟨u_γ|κ,τ⟩ = [2𝔞/M(0,0)]^{1/2} ω^{-{2⁻¹κτ}+γκ} θ₃(2𝔞(γ-τ) | 2i𝔞)`.
///
/// [`coherent_state`] is the production path; this form is a cross-check.
pub fn coherent_amplitude_closed(dim: Dimension, kappa: i64, tau: i64, gamma: i64) -> Result<Complex64> {
    let a = lattice_parameter(dim);
    let m00 = m_func(dim, MVariant::Doubled, 0, 0)?;
    let (k, t) = (dim.reduce(kappa), dim.reduce(tau));
    let phase = dim.omega_pow(-half_phase(dim, k, t) + gamma * k);
    let th = theta(Theta::Three, 2.0 * a * (gamma - t) as f64, 2.0 * a)?;
    Ok(phase * (2.0 * a / m00).sqrt() * th)
}
