//! The mod(N)-invariant kernel `Δ(μ,ν)` and the operator ↔ phase-function
//! mapping built on it.
//!
//! `Δ(μ,ν) = D(μ,ν) 𝐏 D†(μ,ν)` acts on the coordinate basis as
//! `Δ(μ,ν)|u_α⟩ = ω^{2μ(ν-α)}|u_{2ν-α}⟩`, so every trace against it costs
//! `O(N)` and a full grid `O(N³)`.

use std::borrow::Cow;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{Dimension, Operator};
use crate::error::{Error, Result};
use crate::state::check_density;

/// Largest dimension for which [`KernelTable`] stores every kernel.
pub const KERNEL_CACHE_MAX_N: usize = 61;

const RADICAND_CLAMP: f64 = 1e-12;
const FIDELITY_TOL: f64 = 1e-10;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `Δ(μ,ν)`, the displaced parity.
pub fn kernel(dim: Dimension, mu: i64, nu: i64) -> Operator {
    let (mu, nu) = (dim.reduce(mu), dim.reduce(nu));
    let n = dim.n();
    let mut mat = DMatrix::zeros(n, n);
    for alpha in dim.labels() {
        mat[(dim.index(2 * nu - alpha), dim.index(alpha))] = dim.omega_pow(2 * mu * (nu - alpha));
    }
    Operator::from_matrix(dim, mat).expect("square")
}

/// All `N²` kernels of a dimension, stored when `N ≤ KERNEL_CACHE_MAX_N` and
/// generated on demand otherwise.
#[derive(Debug, Clone)]
pub struct KernelTable {
    dim: Dimension,
    cached: Option<Vec<Operator>>,
}

impl KernelTable {
    pub fn new(dim: Dimension) -> Self {
        let cached = (dim.n() <= KERNEL_CACHE_MAX_N).then(|| {
            let mut v = Vec::with_capacity(dim.n() * dim.n());
            for mu in dim.labels() {
                for nu in dim.labels() {
                    v.push(kernel(dim, mu, nu));
                }
            }
            v
        });
        Self { dim, cached }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn is_cached(&self) -> bool {
        self.cached.is_some()
    }

    pub fn get(&self, mu: i64, nu: i64) -> Cow<'_, Operator> {
        match &self.cached {
            Some(v) => Cow::Borrowed(&v[self.dim.index(mu) * self.dim.n() + self.dim.index(nu)]),
            None => Cow::Owned(kernel(self.dim, mu, nu)),
        }
    }
}

/// `N×N` grid over `(μ,ν) ∈ [-ℓ,ℓ]²`; rows are `μ`, columns `ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFunction {
    dim: Dimension,
    values: DMatrix<Complex64>,
}

impl PhaseFunction {
    pub fn new(dim: Dimension, values: DMatrix<Complex64>) -> Result<Self> {
        if values.nrows() != dim.n() || values.ncols() != dim.n() {
            return Err(Error::Shape {
                rows: values.nrows(),
                cols: values.ncols(),
                n: dim.n(),
            });
        }
        Ok(Self { dim, values })
    }

    pub fn from_fn(dim: Dimension, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let n = dim.n();
        let values = DMatrix::from_fn(n, n, |i, j| f(dim.label_at(i), dim.label_at(j)));
        Self { dim, values }
    }

    pub fn from_real_fn(dim: Dimension, mut f: impl FnMut(i64, i64) -> f64) -> Self {
        Self::from_fn(dim, |m, v| Complex64::new(f(m, v), 0.0))
    }

    pub fn constant(dim: Dimension, c: Complex64) -> Self {
        Self {
            dim,
            values: DMatrix::from_element(dim.n(), dim.n(), c),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn values(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    pub fn get(&self, mu: i64, nu: i64) -> Complex64 {
        self.values[(self.dim.index(mu), self.dim.index(nu))]
    }

    /// `(1/N) Σ_{μ,ν} f(μ,ν)`; equals `Tr O` for a mapped operator.
    pub fn mean(&self) -> Complex64 {
        self.values.sum() / self.dim.n() as f64
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn min_real(&self) -> f64 {
        self.values.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_diff(&self, other: &PhaseFunction) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `(1/N) Σ_ν f(μ,ν)` for each `μ`.
    pub fn row_means(&self) -> Vec<Complex64> {
        let n = self.dim.n() as f64;
        (0..self.dim.n())
            .map(|i| self.values.row(i).sum() / n)
            .collect()
    }

    /// `(1/N) Σ_μ f(μ,ν)` for each `ν`.
    pub fn column_means(&self) -> Vec<Complex64> {
        let n = self.dim.n() as f64;
        (0..self.dim.n())
            .map(|j| self.values.column(j).sum() / n)
            .collect()
    }
}

fn same_dim(expected: Dimension, found: Dimension) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: expected.n(),
            found: found.n(),
        })
    }
}

/// `Tr[Δ(μ,ν) O] = Σ_β ω^{2μ(ν-β)} ⟨u_β|O|u_{2ν-β}⟩`.
fn trace_against_kernel(o: &Operator, mu: i64, nu: i64) -> Complex64 {
    let dim = o.dim();
    dim.labels()
        .map(|beta| dim.omega_pow(2 * mu * (nu - beta)) * o.get(beta, 2 * nu - beta))
        .sum()
}

/// `𝒪(μ,ν) = Tr[Δ(μ,ν) O]`.
pub fn map_operator(o: &Operator) -> PhaseFunction {
    PhaseFunction::from_fn(o.dim(), |mu, nu| trace_against_kernel(o, mu, nu))
}

/// `O = (1/N) Σ_{μ,ν} 𝒪(μ,ν) Δ(μ,ν)`.
pub fn reconstruct(f: &PhaseFunction) -> Operator {
    let dim = f.dim();
    let n = dim.n();
    let inv_n = 1.0 / n as f64;
    let mut mat = DMatrix::zeros(n, n);
    for mu in dim.labels() {
        for nu in dim.labels() {
            let c = f.get(mu, nu) * inv_n;
            for alpha in dim.labels() {
                mat[(dim.index(2 * nu - alpha), dim.index(alpha))] +=
                    c * dim.omega_pow(2 * mu * (nu - alpha));
            }
        }
    }
    Operator::from_matrix(dim, mat).expect("square")
}

/// Discrete Wigner function `𝒲_ρ(μ,ν) = Tr[Δ(μ,ν) ρ]`.
///
/// Requires a Hermitian, unit-trace `ρ`; positivity is not checked so that
/// Wigner grids of arbitrary Hermitian unit-trace operators remain available.
pub fn wigner(rho: &Operator) -> Result<PhaseFunction> {
    check_density(rho, false)?;
    Ok(map_operator(rho))
}

/// `Tr[AB]`.
pub fn overlap(a: &Operator, b: &Operator) -> Result<Complex64> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.trace_product(b))
}

/// `(1/N) Σ 𝒜(μ,ν) ℬ(μ,ν)`; equals `Tr[AB]` for mapped operators.
pub fn wigner_overlap(a: &PhaseFunction, b: &PhaseFunction) -> Result<Complex64> {
    same_dim(a.dim(), b.dim())?;
    let s: Complex64 = a
        .values()
        .iter()
        .zip(b.values().iter())
        .map(|(x, y)| x * y)
        .sum();
    Ok(s / a.dim().n() as f64)
}

/// `(1/N) Σ 𝒪(μ,ν) 𝒲(μ,ν)`, the mean value `Tr[Oρ]`.
pub fn mean_value(o_map: &PhaseFunction, w: &PhaseFunction) -> Result<Complex64> {
    wigner_overlap(o_map, w)
}

/// Fidelity between two density matrices, in `[0, 1]` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FidelityValue(f64);

impl FidelityValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

fn clamped_sqrt(x: f64, check: &'static str) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -RADICAND_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::Tolerance {
            module: "kernel",
            check,
            deviation: -x,
            tolerance: RADICAND_CLAMP,
        })
    }
}

/// `Tr[ρσ] + √(1 - Tr ρ²) √(1 - Tr σ²)`.
pub fn fidelity(rho: &Operator, sigma: &Operator) -> Result<FidelityValue> {
    same_dim(rho.dim(), sigma.dim())?;
    check_density(rho, true)?;
    check_density(sigma, true)?;
    let cross = rho.trace_product(sigma).re;
    let pr = rho.trace_product(rho).re;
    let ps = sigma.trace_product(sigma).re;
    let value = cross
        + clamped_sqrt(1.0 - pr, "fidelity purity radicand")?
            * clamped_sqrt(1.0 - ps, "fidelity purity radicand")?;
    if !(-FIDELITY_TOL..=1.0 + FIDELITY_TOL).contains(&value) {
        return Err(Error::Tolerance {
            module: "kernel",
            check: "fidelity range",
            deviation: if value < 0.0 { -value } else { value - 1.0 },
            tolerance: FIDELITY_TOL,
        });
    }
    Ok(FidelityValue(value.max(0.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bracket {
    Commutator,
    Anticommutator,
}

/// Mapped `[A,B]` or `{A,B}` at `(μ,ν)` from the mapped factors.
///
/// Evaluates the quadruple sum
/// `(2i/N²) Σ Im[ω^{2[(μ-μ″)(ν-ν′)-(μ-μ′)(ν-ν″)]}] 𝒜(μ′,ν′) ℬ(μ″,ν″)`
/// (or `Re` with prefactor `2/N²`), costing `O(N⁴)` per point. Mapping the
/// matrix product directly is the scalable route.
pub fn mapped_bracket(
    a_map: &PhaseFunction,
    b_map: &PhaseFunction,
    kind: Bracket,
    mu: i64,
    nu: i64,
) -> Result<Complex64> {
    same_dim(a_map.dim(), b_map.dim())?;
    let dim = a_map.dim();
    let n = dim.n() as i64;
    let omega = dim.omega_table();
    let mut acc = czero();
    for m1 in dim.labels() {
        for n1 in dim.labels() {
            let a = a_map.get(m1, n1);
            for m2 in dim.labels() {
                for n2 in dim.labels() {
                    let e = (2 * ((mu - m2) * (nu - n1) - (mu - m1) * (nu - n2))).rem_euclid(n);
                    let z = omega[e as usize];
                    let w = match kind {
                        Bracket::Commutator => z.im,
                        Bracket::Anticommutator => z.re,
                    };
                    acc += a * b_map.get(m2, n2) * w;
                }
            }
        }
    }
    let n2 = (n * n) as f64;
    Ok(match kind {
        Bracket::Commutator => acc * Complex64::new(0.0, 2.0 / n2),
        Bracket::Anticommutator => acc * (2.0 / n2),
    })
}

/// [`mapped_bracket`] over the full grid (`O(N⁶)`).
pub fn mapped_bracket_grid(
    a_map: &PhaseFunction,
    b_map: &PhaseFunction,
    kind: Bracket,
) -> Result<PhaseFunction> {
    same_dim(a_map.dim(), b_map.dim())?;
    let dim = a_map.dim();
    let mut values = DMatrix::zeros(dim.n(), dim.n());
    for mu in dim.labels() {
        for nu in dim.labels() {
            values[(dim.index(mu), dim.index(nu))] = mapped_bracket(a_map, b_map, kind, mu, nu)?;
        }
    }
    PhaseFunction::new(dim, values)
}

/// `Tr[Δ(μ,ν)Δ(μ′,ν′)Δ(μ″,ν″)] = ω^{2[(μ-μ″)(ν-ν′)-(μ-μ′)(ν-ν″)]}`.
pub fn triple_product_phase(dim: Dimension, a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Complex64 {
    let (mu, nu) = a;
    dim.omega_pow(2 * ((mu - c.0) * (nu - b.1) - (mu - b.0) * (nu - c.1)))
}

/// Largest deviations of the kernels from their defining algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KernelDefects {
    /// `max |Tr Δ - 1|`.
    pub trace: f64,
    pub hermiticity: f64,
    /// `max |Tr[ΔΔ′] - Nδδ′|` over all pairs.
    pub orthonormality: f64,
    /// `‖(1/N)ΣΔ - 1‖_max`.
    pub resolution: f64,
    /// Triple-product deviation over the sampled triples.
    pub triple_product: f64,
}

impl KernelDefects {
    pub fn max(&self) -> f64 {
        [self.trace, self.hermiticity, self.orthonormality, self.resolution, self.triple_product]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Checks every kernel at `dim` plus `triple_samples` random triples.
pub fn kernel_defects(dim: Dimension, triple_samples: usize, rng: &mut impl rand::Rng) -> KernelDefects {
    let table = KernelTable::new(dim);
    let labels: Vec<(i64, i64)> = dim.labels().flat_map(|m| dim.labels().map(move |v| (m, v))).collect();
    let n = dim.n() as f64;
    let mut out = KernelDefects::default();
    let mut sum = Operator::zeros(dim);
    for (i, &(m1, n1)) in labels.iter().enumerate() {
        let k1 = table.get(m1, n1);
        out.trace = out.trace.max((k1.trace() - 1.0).norm());
        out.hermiticity = out.hermiticity.max(k1.hermiticity_defect());
        sum = &sum + &k1;
        for &(m2, n2) in &labels[i..] {
            let expected = if (m1, n1) == (m2, n2) { n } else { 0.0 };
            let t = k1.trace_product(&table.get(m2, n2));
            out.orthonormality = out.orthonormality.max((t - expected).norm());
        }
    }
    out.resolution = sum.scale_real(1.0 / n).max_abs_diff(&Operator::identity(dim));
    let ell = dim.ell();
    for _ in 0..triple_samples {
        let mut pick = || (rng.random_range(-ell..=ell), rng.random_range(-ell..=ell));
        let (a, b, c) = (pick(), pick(), pick());
        let prod = &*table.get(a.0, a.1) * &*table.get(b.0, b.1);
        let t = prod.trace_product(&table.get(c.0, c.1));
        out.triple_product = out.triple_product.max((t - triple_product_phase(dim, a, b, c)).norm());
    }
    out
}
