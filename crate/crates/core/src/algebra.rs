//! Modular arithmetic on symmetric labels and the Schwinger operator family.
//!
//! Every matrix in this crate is written in the coordinate-like basis
//! `{|u_γ⟩}` with rows and columns ordered by label `-ℓ, …, ℓ`. Labels are
//! integers modulo `N` and are stored reduced to the symmetric interval
//! `[-ℓ, ℓ]`; public entry points accept raw integers and reduce them.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Odd Hilbert-space dimension `N ≥ 3` together with `ℓ = (N-1)/2` and the
/// multiplicative inverse of two modulo `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    n: usize,
    ell: i64,
    inv2: i64,
}

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) || n > i32::MAX as usize {
            return Err(Error::InvalidDimension(n as i64));
        }
        let ell = (n as i64 - 1) / 2;
        Ok(Self {
            n,
            ell,
            inv2: (n as i64 + 1) / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// `2⁻¹ mod N`, i.e. `(N+1)/2`.
    pub fn inv2(&self) -> i64 {
        self.inv2
    }

    /// Reduce a raw integer to the symmetric interval `[-ℓ, ℓ]`.
    pub fn reduce(&self, raw: i64) -> i64 {
        (raw + self.ell).rem_euclid(self.n as i64) - self.ell
    }

    pub fn label(&self, raw: i64) -> Label {
        Label(self.reduce(raw))
    }

    /// Row/column index of a (raw) label.
    pub fn index(&self, raw: i64) -> usize {
        (self.reduce(raw) + self.ell) as usize
    }

    /// Label at a row/column index.
    pub fn label_at(&self, index: usize) -> i64 {
        index as i64 - self.ell
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + Clone {
        -self.ell..=self.ell
    }

    /// `true` when `a ≡ b (mod N)`.
    pub fn congruent(&self, a: i64, b: i64) -> bool {
        (a - b).rem_euclid(self.n as i64) == 0
    }

    /// `ω^k` with `ω = exp(2πi/N)`, from the least non-negative residue of `k`.
    pub fn omega_pow(&self, k: i64) -> Complex64 {
        let r = k.rem_euclid(self.n as i64);
        Complex64::from_polar(1.0, 2.0 * PI * r as f64 / self.n as f64)
    }

    /// `ω^r` for every residue `r = 0, …, N-1`.
    pub fn omega_table(&self) -> Vec<Complex64> {
        (0..self.n as i64).map(|r| self.omega_pow(r)).collect()
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}", self.n)
    }
}

/// A label reduced to `[-ℓ, ℓ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(i64);

impl Label {
    pub fn value(self) -> i64 {
        self.0
    }
}

impl From<Label> for i64 {
    fn from(l: Label) -> i64 {
        l.0
    }
}

/// Dense `N×N` complex matrix acting on the `N`-dimensional state space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: Dimension,
    mat: DMatrix<Complex64>,
}

impl Operator {
    pub fn from_matrix(dim: Dimension, mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != dim.n() || mat.ncols() != dim.n() {
            return Err(Error::Shape {
                rows: mat.nrows(),
                cols: mat.ncols(),
                n: dim.n(),
            });
        }
        Ok(Self { dim, mat })
    }

    /// Build from a function of (row label, column label).
    pub fn from_fn(dim: Dimension, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let n = dim.n();
        let mat = DMatrix::from_fn(n, n, |i, j| f(dim.label_at(i), dim.label_at(j)));
        Self { dim, mat }
    }

    pub fn identity(dim: Dimension) -> Self {
        Self {
            dim,
            mat: DMatrix::identity(dim.n(), dim.n()),
        }
    }

    pub fn zeros(dim: Dimension) -> Self {
        Self {
            dim,
            mat: DMatrix::zeros(dim.n(), dim.n()),
        }
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    /// Matrix element `⟨u_row| O |u_col⟩`.
    pub fn get(&self, row: i64, col: i64) -> Complex64 {
        self.mat[(self.dim.index(row), self.dim.index(col))]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dim: self.dim,
            mat: self.mat.adjoint(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// `Tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &Operator) -> Complex64 {
        assert_eq!(self.dim, other.dim, "trace_product: dimension mismatch");
        let n = self.dim.n();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.mat[(i, j)] * other.mat[(j, i)];
            }
        }
        acc
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            mat: self.mat.map(|z| z * c),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn commutator(&self, other: &Operator) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn anticommutator(&self, other: &Operator) -> Self {
        &(self * other) + &(other * self)
    }

    /// Non-negative integer power.
    pub fn pow(&self, k: u32) -> Self {
        let mut out = Operator::identity(self.dim);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff: dimension mismatch");
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |O - O†|` entrywise.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = &self.adjoint() * self;
        prod.max_abs_diff(&Operator::identity(self.dim)) <= tol
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator product: dimension mismatch");
        Operator {
            dim: self.dim,
            mat: &self.mat * &rhs.mat,
        }
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator sum: dimension mismatch");
        Operator {
            dim: self.dim,
            mat: &self.mat + &rhs.mat,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator difference: dimension mismatch");
        Operator {
            dim: self.dim,
            mat: &self.mat - &rhs.mat,
        }
    }
}

/// `{2⁻¹ηξ}`: the least non-negative residue `x` with `2x ≡ ηξ (mod N)`.
pub fn half_phase(dim: Dimension, eta: i64, xi: i64) -> i64 {
    let n = dim.n() as i64;
    let prod = (dim.reduce(eta) * dim.reduce(xi)).rem_euclid(n);
    (dim.inv2() * prod).rem_euclid(n)
}

/// `{2⁻¹k}` for a single integer.
pub(crate) fn half_residue(dim: Dimension, k: i64) -> i64 {
    let n = dim.n() as i64;
    (dim.inv2() * k.rem_euclid(n)).rem_euclid(n)
}

/// The Schwinger pair: `U|u_γ⟩ = ω^γ|u_γ⟩` and `V|u_α⟩ = |u_{α-1}⟩`.
pub fn schwinger_pair(dim: Dimension) -> (Operator, Operator) {
    let u = Operator::from_fn(dim, |r, c| {
        if r == c {
            dim.omega_pow(r)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let v = Operator::from_fn(dim, |r, c| {
        if dim.congruent(r, c - 1) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    (u, v)
}

/// `D(η,ξ) = ω^{-{2⁻¹ηξ}} U^η V^{-ξ}`.
///
/// Built column by column from `D(η,ξ)|u_α⟩ = ω^{-{2⁻¹ηξ}+η(α+ξ)}|u_{α+ξ}⟩`.
pub fn displacement(dim: Dimension, eta: i64, xi: i64) -> Operator {
    let (eta, xi) = (dim.reduce(eta), dim.reduce(xi));
    let h = half_phase(dim, eta, xi);
    let n = dim.n();
    let mut mat = DMatrix::zeros(n, n);
    for alpha in dim.labels() {
        let target = alpha + xi;
        mat[(dim.index(target), dim.index(alpha))] = dim.omega_pow(-h + eta * target);
    }
    Operator { dim, mat }
}

/// Parity `𝐏 = Σ_κ |u_{-κ}⟩⟨u_κ|`.
pub fn parity(dim: Dimension) -> Operator {
    Operator::from_fn(dim, |r, c| {
        if dim.congruent(r, -c) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Discrete Fourier operator with entries `ω^{αβ}/√N`; its columns are the
/// `|v_β⟩` eigenvectors of `V`.
pub fn fourier(dim: Dimension) -> Operator {
    let norm = 1.0 / (dim.n() as f64).sqrt();
    Operator::from_fn(dim, |a, b| dim.omega_pow(a * b) * norm)
}
