//! Mapped von Neumann-Liouville dynamics on the discrete phase space.
//!
//! Rank-4 objects indexed by `(μ,ν | μ′,ν′)` are stored as `N²×N²` matrices
//! whose row is `(μ,ν)` and column `(μ′,ν′)`, each flattened as
//! `index(μ)·N + index(ν)`. Contraction over the primed pair is then a plain
//! matrix product.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{schwinger_pair, Dimension, Operator};
use crate::error::{Error, Result};
use crate::kernel::{kernel, map_operator, PhaseFunction};

const HERMITIAN_TOL: f64 = 1e-10;

/// Reduced Planck constant in the chosen working units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HbarConfig {
    hbar: f64,
}

impl HbarConfig {
    pub fn new(hbar: f64) -> Result<Self> {
        if hbar.is_finite() && hbar > 0.0 {
            Ok(Self { hbar })
        } else {
            Err(Error::param("hbar", format!("must be positive and finite, got {hbar}")))
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }
}

impl Default for HbarConfig {
    fn default() -> Self {
        Self { hbar: 1.0 }
    }
}

/// `H = 2 - ½(U + U†) - ½(V + V†)`.
pub fn harper_hamiltonian(dim: Dimension) -> Operator {
    harper_hamiltonian_with(dim, 2.0, 1.0)
}

/// `H = onsite - (hopping/2)(U + U† + V + V†)`.
pub fn harper_hamiltonian_with(dim: Dimension, onsite: f64, hopping: f64) -> Operator {
    let (u, v) = schwinger_pair(dim);
    let hop = &(&u + &u.adjoint()) + &(&v + &v.adjoint());
    &Operator::identity(dim).scale_real(onsite) - &hop.scale_real(0.5 * hopping)
}

fn flat(dim: Dimension, mu: i64, nu: i64) -> usize {
    dim.index(mu) * dim.n() + dim.index(nu)
}

fn grid_to_vector(f: &PhaseFunction) -> DVector<Complex64> {
    let dim = f.dim();
    let n = dim.n();
    DVector::from_fn(n * n, |k, _| f.values()[(k / n, k % n)])
}

fn vector_to_grid(dim: Dimension, v: &DVector<Complex64>) -> PhaseFunction {
    let n = dim.n();
    PhaseFunction::new(dim, DMatrix::from_fn(n, n, |i, j| v[i * n + j])).expect("square grid")
}

fn check_hermitian_operator(dim: Dimension, h: &Operator) -> Result<()> {
    if h.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim.n(),
            found: h.dim().n(),
        });
    }
    let defect = h.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::Tolerance {
            module: "dynamics",
            check: "hamiltonian hermiticity",
            deviation: defect,
            tolerance: HERMITIAN_TOL,
        });
    }
    Ok(())
}

/// The mapped Liouville operator `ℒ(μ,ν,μ′,ν′)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianKernel {
    dim: Dimension,
    values: DMatrix<Complex64>,
}

impl LiouvillianKernel {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Flattened `N²×N²` matrix.
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    pub fn get(&self, mu: i64, nu: i64, mu1: i64, nu1: i64) -> Complex64 {
        self.values[(flat(self.dim, mu, nu), flat(self.dim, mu1, nu1))]
    }

    /// `Σ_{μ′,ν′} ℒ(μ,ν,μ′,ν′) f(μ′,ν′)`; equals the map of `[H, ρ]` when
    /// `f = 𝒲_ρ`.
    pub fn apply(&self, f: &PhaseFunction) -> Result<PhaseFunction> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.n(),
                found: f.dim().n(),
            });
        }
        Ok(vector_to_grid(self.dim, &(&self.values * grid_to_vector(f))))
    }

    pub fn max_real(&self) -> f64 {
        self.values.iter().map(|z| z.re.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &LiouvillianKernel) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `ℒ(μ,ν,μ′,ν′) = -(2i/N²) Σ_{μ″,ν″} Im[ω^{2[(μ-μ″)(ν-ν′)-(μ-μ′)(ν-ν″)]}] ℋ(μ″,ν″)`.
///
/// `h_map` must be real (the map of a Hermitian operator) to `1e-10`.
pub fn liouvillian(dim: Dimension, h_map: &PhaseFunction) -> Result<LiouvillianKernel> {
    if h_map.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim.n(),
            found: h_map.dim().n(),
        });
    }
    let imag = h_map.max_imag();
    if imag > HERMITIAN_TOL {
        return Err(Error::Tolerance {
            module: "dynamics",
            check: "mapped hamiltonian reality",
            deviation: imag,
            tolerance: HERMITIAN_TOL,
        });
    }
    let n = dim.n();
    let ni = n as i64;
    let omega = dim.omega_table();
    let pref = -2.0 / (n * n) as f64;
    let mut values = DMatrix::zeros(n * n, n * n);
    for mu in dim.labels() {
        for nu in dim.labels() {
            for mu1 in dim.labels() {
                for nu1 in dim.labels() {
                    let mut s = 0.0;
                    for mu2 in dim.labels() {
                        for nu2 in dim.labels() {
                            let e = (2 * ((mu - mu2) * (nu - nu1) - (mu - mu1) * (nu - nu2))).rem_euclid(ni);
                            s += omega[e as usize].im * h_map.get(mu2, nu2).re;
                        }
                    }
                    values[(flat(dim, mu, nu), flat(dim, mu1, nu1))] = Complex64::new(0.0, pref * s);
                }
            }
        }
    }
    Ok(LiouvillianKernel { dim, values })
}

/// Closed Harper Liouvillian:
/// `2i Im[ω^{2(μν′-νμ′)}] [2δ_{μ′μ}δ_{ν′ν} - ½(δ_{μ′,μ+h} + δ_{μ′,μ-h})δ_{ν′ν}
/// - ½δ_{μ′μ}(δ_{ν′,ν+h} + δ_{ν′,ν-h})]` with `h = 2⁻¹ mod N`.
pub fn harper_liouvillian_closed(dim: Dimension, mu: i64, nu: i64, mu1: i64, nu1: i64) -> Complex64 {
    let h = dim.inv2();
    let d = |a: i64, b: i64| if dim.congruent(a, b) { 1.0 } else { 0.0 };
    let bracket = 2.0 * d(mu1, mu) * d(nu1, nu)
        - 0.5 * (d(mu1, mu + h) + d(mu1, mu - h)) * d(nu1, nu)
        - 0.5 * d(mu1, mu) * (d(nu1, nu + h) + d(nu1, nu - h));
    if bracket == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let im = dim.omega_pow(2 * (mu * nu1 - nu * mu1)).im;
    Complex64::new(0.0, 2.0 * im * bracket)
}

/// [`harper_liouvillian_closed`] over every index tuple.
pub fn harper_liouvillian_closed_kernel(dim: Dimension) -> LiouvillianKernel {
    let n = dim.n();
    let mut values = DMatrix::zeros(n * n, n * n);
    for mu in dim.labels() {
        for nu in dim.labels() {
            for mu1 in dim.labels() {
                for nu1 in dim.labels() {
                    values[(flat(dim, mu, nu), flat(dim, mu1, nu1))] = harper_liouvillian_closed(dim, mu, nu, mu1, nu1);
                }
            }
        }
    }
    LiouvillianKernel { dim, values }
}

/// `𝒫(μ,ν;t | α,β;t₀)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePropagator {
    dim: Dimension,
    t: f64,
    t0: f64,
    values: DMatrix<Complex64>,
}

impl PhasePropagator {
    /// `δ_{α,μ} δ_{β,ν}`.
    pub fn identity(dim: Dimension, t0: f64) -> Self {
        let n = dim.n();
        Self {
            dim,
            t: t0,
            t0,
            values: DMatrix::identity(n * n, n * n),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    pub fn get(&self, mu: i64, nu: i64, alpha: i64, beta: i64) -> Complex64 {
        self.values[(flat(self.dim, mu, nu), flat(self.dim, alpha, beta))]
    }

    /// `self ∘ earlier`: propagate from `earlier.t0` to `self.t`.
    pub fn compose(&self, earlier: &PhasePropagator) -> Result<PhasePropagator> {
        if self.dim != earlier.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.n(),
                found: earlier.dim.n(),
            });
        }
        Ok(PhasePropagator {
            dim: self.dim,
            t: self.t,
            t0: earlier.t0,
            values: &self.values * &earlier.values,
        })
    }

    pub fn max_abs_diff(&self, other: &PhasePropagator) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropagatorMode {
    /// Eigendecomposition of `H`.
    Exact,
    /// Iterated-Liouvillian series through the given order.
    Series(u32),
}

/// `exp(-i (t - t₀) H / ħ)` from the Hermitian eigendecomposition of `H`.
pub fn evolution_operator(h: &Operator, dt: f64, cfg: HbarConfig) -> Result<Operator> {
    let dim = h.dim();
    check_hermitian_operator(dim, h)?;
    let herm = (h.matrix() + h.matrix().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let phases = DVector::from_iterator(
        dim.n(),
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -l * dt / cfg.hbar())),
    );
    let v = &eig.eigenvectors;
    let mat = v * DMatrix::from_diagonal(&phases) * v.adjoint();
    Operator::from_matrix(dim, mat)
}

/// The phase-space propagator from `t0` to `t`.
///
/// Exact mode uses `(1/N) Tr[Δ(μ,ν) E Δ(α,β) E†]` with `E = exp(-i(t-t₀)H/ħ)`,
/// the ordering for which `𝒲(t) = Σ 𝒫 𝒲(t₀)` describes `ρ(t) = E ρ E†`.
/// Series mode sums `Σ_k (-i(t-t₀)/ħ)^k/k! ℒ^k` through order `k`.
pub fn propagator(
    dim: Dimension,
    h: &Operator,
    t: f64,
    t0: f64,
    mode: PropagatorMode,
    cfg: HbarConfig,
) -> Result<PhasePropagator> {
    check_hermitian_operator(dim, h)?;
    let n = dim.n();
    let dt = t - t0;
    let values = match mode {
        PropagatorMode::Exact => {
            let e = evolution_operator(h, dt, cfg)?;
            let ed = e.adjoint();
            let mut values = DMatrix::zeros(n * n, n * n);
            let inv_n = 1.0 / n as f64;
            for alpha in dim.labels() {
                for beta in dim.labels() {
                    let moved = &(&e * &kernel(dim, alpha, beta)) * &ed;
                    let col = flat(dim, alpha, beta);
                    let mapped = map_operator(&moved);
                    for mu in dim.labels() {
                        for nu in dim.labels() {
                            values[(flat(dim, mu, nu), col)] = mapped.get(mu, nu) * inv_n;
                        }
                    }
                }
            }
            values
        }
        PropagatorMode::Series(order) => {
            let l = liouvillian(dim, &map_operator(h))?;
            let step = l.matrix() * Complex64::new(0.0, -dt / cfg.hbar());
            let mut term = DMatrix::identity(n * n, n * n);
            let mut values = term.clone();
            for k in 1..=order {
                term = (&step * &term).unscale(k as f64);
                values += &term;
            }
            values
        }
    };
    Ok(PhasePropagator { dim, t, t0, values })
}

/// `𝒲(μ,ν;t) = Σ_{α,β} 𝒫(μ,ν;t|α,β;t₀) 𝒲(α,β;t₀)`.
pub fn evolve_wigner(w0: &PhaseFunction, prop: &PhasePropagator) -> Result<PhaseFunction> {
    if w0.dim() != prop.dim {
        return Err(Error::DimensionMismatch {
            expected: prop.dim.n(),
            found: w0.dim().n(),
        });
    }
    Ok(vector_to_grid(prop.dim, &(&prop.values * grid_to_vector(w0))))
}

/// Finite-difference scheme for time derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Stencil {
    /// `(f(t+dt) - f(t-dt)) / 2dt`.
    #[default]
    Centered,
    /// Richardson extrapolation of the centered difference at `dt` and `dt/2`.
    Richardson,
}

/// Largest deviation of the Harper propagator from its evolution equation,
/// `max |iħ ∂ₜ𝒫 - RHS|`, with
/// `RHS = -i[Im ω^{-ν} 𝒫(μ+h,ν) + Im ω^{ν} 𝒫(μ-h,ν) + Im ω^{μ} 𝒫(μ,ν+h) + Im ω^{-μ} 𝒫(μ,ν-h)]`
/// and `h = 2⁻¹ mod N`.
pub fn harper_ode_residual(
    dim: Dimension,
    prop_fn: impl FnMut(f64) -> Result<PhasePropagator>,
    t: f64,
    dt: f64,
    stencil: Stencil,
    cfg: HbarConfig,
) -> Result<f64> {
    harper_ode_residual_with(dim, prop_fn, t, dt, stencil, cfg, 1.0)
}

/// [`harper_ode_residual`] for `H = c - (hopping/2)(U + U† + V + V†)`; the
/// right-hand side scales with `hopping` and the onsite term drops out.
pub fn harper_ode_residual_with(
    dim: Dimension,
    mut prop_fn: impl FnMut(f64) -> Result<PhasePropagator>,
    t: f64,
    dt: f64,
    stencil: Stencil,
    cfg: HbarConfig,
    hopping: f64,
) -> Result<f64> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::param("dt", format!("must be positive, got {dt}")));
    }
    let mut centered = |h: f64| -> Result<DMatrix<Complex64>> {
        let fwd = prop_fn(t + h)?;
        let bwd = prop_fn(t - h)?;
        Ok((&fwd.values - &bwd.values).unscale(2.0 * h))
    };
    let deriv = match stencil {
        Stencil::Centered => centered(dt)?,
        Stencil::Richardson => {
            let coarse = centered(dt)?;
            let fine = centered(0.5 * dt)?;
            (fine.scale(4.0) - coarse).unscale(3.0)
        }
    };
    let p = prop_fn(t)?;
    if p.dim != dim {
        return Err(Error::DimensionMismatch {
            expected: dim.n(),
            found: p.dim.n(),
        });
    }
    let h = dim.inv2();
    let n = dim.n();
    let mut worst: f64 = 0.0;
    for mu in dim.labels() {
        for nu in dim.labels() {
            let row = flat(dim, mu, nu);
            let w = [
                (flat(dim, mu + h, nu), dim.omega_pow(-nu).im),
                (flat(dim, mu - h, nu), dim.omega_pow(nu).im),
                (flat(dim, mu, nu + h), dim.omega_pow(mu).im),
                (flat(dim, mu, nu - h), dim.omega_pow(-mu).im),
            ];
            for col in 0..n * n {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(r, wt) in &w {
                    acc += p.values[(r, col)] * wt;
                }
                let rhs = acc * Complex64::new(0.0, -hopping);
                let lhs = deriv[(row, col)] * Complex64::new(0.0, cfg.hbar());
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::vacuum;
    use crate::kernel::wigner;
    use crate::state::{random_mixed, StateVector};

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn exact(d: Dimension, h: &Operator, t: f64) -> PhasePropagator {
        propagator(d, h, t, 0.0, PropagatorMode::Exact, HbarConfig::default()).unwrap()
    }

    #[test]
    fn hbar_validation() {
        assert!(HbarConfig::new(0.0).is_err());
        assert!(HbarConfig::new(-1.0).is_err());
        assert!(HbarConfig::new(f64::NAN).is_err());
        assert_eq!(HbarConfig::default().hbar(), 1.0);
    }

    #[test]
    fn harper_examples() {
        for n in [3, 5, 7, 9] {
            let d = dim(n);
            assert!(harper_hamiltonian(d).is_hermitian(1e-14));
        }
        let d = dim(5);
        let m = map_operator(&harper_hamiltonian(d));
        let expect = PhaseFunction::from_real_fn(d, |mu, nu| {
            2.0 - (2.0 * std::f64::consts::PI * mu as f64 / 5.0).cos() - (2.0 * std::f64::consts::PI * nu as f64 / 5.0).cos()
        });
        assert!(m.max_abs_diff(&expect) < 1e-12);

        let h = harper_hamiltonian(dim(3));
        let eig = h.matrix().clone().symmetric_eigen();
        for &l in eig.eigenvalues.iter() {
            assert!((-1e-12..=4.0 + 1e-12).contains(&l));
        }
    }

    #[test]
    fn liouvillian_examples() {
        let d = dim(3);
        let flat_h = PhaseFunction::constant(d, Complex64::new(1.0, 0.0));
        let l = liouvillian(d, &flat_h).unwrap();
        assert!(l.matrix().iter().all(|z| z.norm() < 1e-14));

        let bad = PhaseFunction::constant(d, Complex64::new(1.0, 1.0));
        assert!(liouvillian(d, &bad).is_err());

        for n in [3, 5] {
            let d = dim(n);
            let l = liouvillian(d, &map_operator(&harper_hamiltonian(d))).unwrap();
            assert!(l.max_abs_diff(&harper_liouvillian_closed_kernel(d)) <= 1e-10);
            assert!(l.max_real() <= 1e-12);
        }

        let d = dim(5);
        let h = harper_hamiltonian(d);
        let l = liouvillian(d, &map_operator(&h)).unwrap();
        for seed in 0..3 {
            let rho = random_mixed(d, seed);
            let lw = l.apply(&wigner(&rho).unwrap()).unwrap();
            assert!(lw.max_abs_diff(&map_operator(&h.commutator(&rho))) <= 1e-9);
        }
    }

    #[test]
    fn closed_liouvillian_sparsity() {
        let d = dim(7);
        assert_eq!(harper_liouvillian_closed(d, 1, 2, 1, 2), Complex64::new(0.0, 0.0));
        // Far from the shifted neighbours of (0,0): (μ′,ν′) = (1,1).
        assert_eq!(harper_liouvillian_closed(d, 0, 0, 1, 1), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn propagator_initial_slice_is_delta() {
        let d = dim(5);
        let h = harper_hamiltonian(d);
        let id = PhasePropagator::identity(d, 0.3);
        for mode in [PropagatorMode::Exact, PropagatorMode::Series(4)] {
            let p = propagator(d, &h, 0.3, 0.3, mode, HbarConfig::default()).unwrap();
            assert!(p.max_abs_diff(&id) < 1e-12);
        }
        let (u, _) = schwinger_pair(d);
        assert!(propagator(d, &u, 0.1, 0.0, PropagatorMode::Exact, HbarConfig::default()).is_err());
    }

    #[test]
    fn series_converges_to_exact() {
        let d = dim(5);
        let h = harper_hamiltonian(d);
        let ex = exact(d, &h, 0.1);
        let cfg = HbarConfig::default();
        let err = |k| {
            propagator(d, &h, 0.1, 0.0, PropagatorMode::Series(k), cfg)
                .unwrap()
                .max_abs_diff(&ex)
        };
        // Truncation error of the order-6 sum is 1.07e-8 at this step size;
        // one more order brings it well below 1e-8.
        assert!(err(6) < 1.1e-8, "{}", err(6));
        assert!(err(7) <= 1e-9, "{}", err(7));
        for k in [2, 3, 4, 6] {
            assert!(err(k + 2) * 5.0 <= err(k), "k={k}");
        }
    }

    #[test]
    fn exact_evolution_matches_matrix_evolution() {
        let d = dim(7);
        let h = harper_hamiltonian(d);
        let rho = vacuum(d).unwrap().projector();
        let t = 0.5;
        let p = exact(d, &h, t);
        let w = evolve_wigner(&wigner(&rho).unwrap(), &p).unwrap();
        let e = evolution_operator(&h, t, HbarConfig::default()).unwrap();
        let rho_t = &(&e * &rho) * &e.adjoint();
        assert!(w.max_abs_diff(&map_operator(&rho_t)) <= 1e-9);
        assert!((w.mean().re - 1.0).abs() <= 1e-9);
        let purity: f64 = w.values().iter().map(|z| z.norm_sqr()).sum::<f64>() / d.n() as f64;
        assert!((purity - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn eigenstates_are_stationary() {
        let d = dim(5);
        let h = harper_hamiltonian(d);
        let eig = h.matrix().clone().symmetric_eigen();
        let psi = StateVector::normalized(d, eig.eigenvectors.column(2).into_owned()).unwrap();
        let w0 = wigner(&psi.projector()).unwrap();
        for t in [0.3, 1.7] {
            let w = evolve_wigner(&w0, &exact(d, &h, t)).unwrap();
            assert!(w.max_abs_diff(&w0) <= 1e-9);
        }
        let id = PhasePropagator::identity(d, 0.0);
        assert_eq!(evolve_wigner(&w0, &id).unwrap(), w0);
    }

    #[test]
    fn propagators_compose() {
        let d = dim(5);
        let h = harper_hamiltonian(d);
        let cfg = HbarConfig::default();
        let p10 = propagator(d, &h, 0.4, 0.0, PropagatorMode::Exact, cfg).unwrap();
        let p21 = propagator(d, &h, 1.1, 0.4, PropagatorMode::Exact, cfg).unwrap();
        let p20 = propagator(d, &h, 1.1, 0.0, PropagatorMode::Exact, cfg).unwrap();
        let c = p21.compose(&p10).unwrap();
        assert!(c.max_abs_diff(&p20) <= 1e-8);
        assert_eq!(c.t0(), 0.0);
        assert_eq!(c.t(), 1.1);
    }

    #[test]
    fn ode_residuals() {
        let d = dim(5);
        let h = harper_hamiltonian(d);
        let cfg = HbarConfig::default();
        let pf = |t: f64| propagator(d, &h, t, 0.0, PropagatorMode::Exact, cfg);
        assert!(harper_ode_residual(d, pf, 0.3, 1e-4, Stencil::Centered, cfg).unwrap() <= 1e-6);
        assert!(harper_ode_residual(d, pf, 0.0, 1e-4, Stencil::Centered, cfg).unwrap() <= 1e-5);
        assert!(harper_ode_residual(d, pf, 0.3, 1e-3, Stencil::Richardson, cfg).unwrap() <= 1e-6);

        // With ħ ≠ 1 the equation still holds with iħ on the left.
        let cfg2 = HbarConfig::new(0.5).unwrap();
        let pf2 = |t: f64| propagator(d, &h, t, 0.0, PropagatorMode::Exact, cfg2);
        assert!(harper_ode_residual(d, pf2, 0.2, 1e-4, Stencil::Centered, cfg2).unwrap() <= 1e-6);

        let free = harper_hamiltonian_with(d, 2.0, 0.0);
        let pf3 = |t: f64| propagator(d, &free, t, 0.0, PropagatorMode::Exact, cfg);
        assert!(harper_ode_residual_with(d, pf3, 0.3, 1e-4, Stencil::Centered, cfg, 0.0).unwrap() <= 1e-12);
        assert!(harper_ode_residual(d, pf, 0.3, 0.0, Stencil::Centered, cfg).is_err());
    }

    #[test]
    fn wigner_derivative_follows_liouvillian() {
        let d = dim(5);
        let h = harper_hamiltonian(d);
        let l = liouvillian(d, &map_operator(&h)).unwrap();
        let w0 = wigner(&random_mixed(d, 4)).unwrap();
        let dt = 1e-4;
        for t in [0.2, 0.9] {
            let wp = evolve_wigner(&w0, &exact(d, &h, t + dt)).unwrap();
            let wm = evolve_wigner(&w0, &exact(d, &h, t - dt)).unwrap();
            let wt = evolve_wigner(&w0, &exact(d, &h, t)).unwrap();
            let lw = l.apply(&wt).unwrap();
            for mu in d.labels() {
                for nu in d.labels() {
                    let deriv = (wp.get(mu, nu) - wm.get(mu, nu)) / (2.0 * dt);
                    assert!((deriv * Complex64::new(0.0, 1.0) - lw.get(mu, nu)).norm() <= 1e-6);
                }
            }
        }
    }
}
