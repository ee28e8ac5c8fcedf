//! Physical scaling of the discrete coordinate and momentum spectra.

use std::f64::consts::PI;

use crate::algebra::Dimension;
use crate::error::{Error, Result};

const PRODUCT_TOL: f64 = 1e-12;

/// Unit names attached to a [`ScaleParams`]; values are always expressed in
/// these units, so converting to SI is a presentation-layer rescaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitLabels {
    pub length: &'static str,
    pub momentum: &'static str,
    pub action: &'static str,
}

impl UnitLabels {
    /// Planck units: `L_P = 1`, `ħ = 1`, so momenta are in `M_P c`.
    pub const PLANCK: UnitLabels = UnitLabels {
        length: "L_P",
        momentum: "M_P c",
        action: "hbar",
    };
}

impl Default for UnitLabels {
    fn default() -> Self {
        UnitLabels::PLANCK
    }
}

/// `(δ, q₀, p₀, ħ)` for dimension `N`, with `ε = √(2π/N)`,
/// `D_q = ε^{2-δ} q₀`, `D_p = ε^δ p₀`, `R_q = ℓ D_q`, `R_p = ℓ D_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleParams {
    dim: Dimension,
    delta: f64,
    q0: f64,
    p0: f64,
    hbar: f64,
    units: UnitLabels,
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {v}")))
    }
}

impl ScaleParams {
    /// Validates `δ ∈ [0,2]`, positivity and `q₀p₀ = ħ` to relative `1e-12`.
    pub fn new(dim: Dimension, delta: f64, q0: f64, p0: f64, hbar: f64) -> Result<Self> {
        if !(delta.is_finite() && (0.0..=2.0).contains(&delta)) {
            return Err(Error::param("delta", format!("must lie in [0, 2], got {delta}")));
        }
        positive("q0", q0)?;
        positive("p0", p0)?;
        positive("hbar", hbar)?;
        let rel = (q0 * p0 - hbar).abs() / hbar;
        if rel > PRODUCT_TOL {
            return Err(Error::param(
                "q0, p0",
                format!("q0*p0 must equal hbar (relative deviation {rel:.3e})"),
            ));
        }
        Ok(Self {
            dim,
            delta,
            q0,
            p0,
            hbar,
            units: UnitLabels::default(),
        })
    }

    /// Fix `q₀` and derive `p₀ = ħ/q₀`.
    pub fn from_q0(dim: Dimension, delta: f64, q0: f64, hbar: f64) -> Result<Self> {
        positive("q0", q0)?;
        Self::new(dim, delta, q0, hbar / q0, hbar)
    }

    /// `q₀ = p₀ = ħ = 1`.
    pub fn unit(dim: Dimension, delta: f64) -> Result<Self> {
        Self::new(dim, delta, 1.0, 1.0, 1.0)
    }

    pub fn with_units(mut self, units: UnitLabels) -> Self {
        self.units = units;
        self
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn units(&self) -> UnitLabels {
        self.units
    }

    /// `ε = √(2π/N)`.
    pub fn eps(&self) -> f64 {
        (2.0 * PI / self.dim.n() as f64).sqrt()
    }

    /// Coordinate spacing `D_q = ε^{2-δ} q₀`.
    pub fn d_q(&self) -> f64 {
        self.eps().powf(2.0 - self.delta) * self.q0
    }

    /// Momentum spacing `D_p = ε^δ p₀`.
    pub fn d_p(&self) -> f64 {
        self.eps().powf(self.delta) * self.p0
    }

    pub fn r_q(&self) -> f64 {
        self.dim.ell() as f64 * self.d_q()
    }

    pub fn r_p(&self) -> f64 {
        self.dim.ell() as f64 * self.d_p()
    }

    /// Coordinate eigenvalue `𝔮_α = D_q α`.
    pub fn q_value(&self, alpha: i64) -> f64 {
        self.d_q() * self.dim.reduce(alpha) as f64
    }

    /// Momentum eigenvalue `𝔭_β = D_p β`.
    pub fn p_value(&self, beta: i64) -> f64 {
        self.d_p() * self.dim.reduce(beta) as f64
    }

    /// Relative deviation of `q₀p₀` from `ħ`.
    pub fn action_defect(&self) -> f64 {
        (self.q0 * self.p0 - self.hbar).abs() / self.hbar
    }

    /// Relative deviation of `D_p D_q / 2πħ` from `1/N`.
    pub fn cell_defect(&self) -> f64 {
        let n = self.dim.n() as f64;
        (self.d_p() * self.d_q() / (2.0 * PI * self.hbar) * n - 1.0).abs()
    }
}

/// Planck-unit presets (`L_P = 1`, `ħ = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlanckPreset {
    /// `δ = 0`: `q₀ = L_P/ε`, `p₀ = εħ/L_P`.
    Delta0,
    /// `δ = 1`: `q₀ = L_P`, `p₀ = ħ/L_P`.
    Delta1,
    /// `δ = 2`: `q₀ = εL_P`, `p₀ = ħ/(εL_P)`.
    Delta2,
    /// `q₀ = s L_P`, `p₀ = ħ/(s L_P)` at the given `δ`.
    Scaled { s: f64, delta: f64 },
}

pub fn planck_preset(kind: PlanckPreset, dim: Dimension) -> Result<ScaleParams> {
    let eps = (2.0 * PI / dim.n() as f64).sqrt();
    let (delta, q0) = match kind {
        PlanckPreset::Delta0 => (0.0, 1.0 / eps),
        PlanckPreset::Delta1 => (1.0, 1.0),
        PlanckPreset::Delta2 => (2.0, eps),
        PlanckPreset::Scaled { s, delta } => {
            positive("s", s)?;
            (delta, s)
        }
    };
    Ok(ScaleParams::from_q0(dim, delta, q0, 1.0)?.with_units(UnitLabels::PLANCK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn validation() {
        let d = dim(5);
        assert!(ScaleParams::new(d, -0.1, 1.0, 1.0, 1.0).is_err());
        assert!(ScaleParams::new(d, 2.1, 1.0, 1.0, 1.0).is_err());
        assert!(ScaleParams::new(d, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(ScaleParams::new(d, 1.0, 2.0, 2.0, 1.0).is_err());
        assert!(ScaleParams::new(d, 1.0, 2.0, 0.5, 1.0).is_ok());
        assert!(planck_preset(PlanckPreset::Scaled { s: 0.0, delta: 1.0 }, d).is_err());
        assert!(planck_preset(PlanckPreset::Scaled { s: -1.0, delta: 1.0 }, d).is_err());
    }

    #[test]
    fn presets() {
        let d = dim(7);
        let eps = (2.0 * PI / 7.0).sqrt();
        let p1 = planck_preset(PlanckPreset::Delta1, d).unwrap();
        assert_eq!((p1.q0(), p1.p0()), (1.0, 1.0));
        let p0 = planck_preset(PlanckPreset::Delta0, d).unwrap();
        assert!((p0.q0() - 1.0 / eps).abs() < 1e-15 && (p0.p0() - eps).abs() < 1e-15);
        let p2 = planck_preset(PlanckPreset::Delta2, d).unwrap();
        assert!((p2.q0() - eps).abs() < 1e-15 && (p2.p0() - 1.0 / eps).abs() < 1e-14);
        let s = planck_preset(PlanckPreset::Scaled { s: 2.0, delta: 1.0 }, d).unwrap();
        assert!((s.d_q() - 2.0 * eps).abs() < 1e-14);
        assert!((s.d_p() - eps / 2.0).abs() < 1e-14);
        assert!(s.cell_defect() < 1e-12);
    }

    #[test]
    fn spectra_are_equally_spaced() {
        let sp = ScaleParams::from_q0(dim(9), 0.5, 1.7, 1.3).unwrap();
        for a in -4..4 {
            assert!((sp.q_value(a + 1) - sp.q_value(a) - sp.d_q()).abs() < 1e-14);
            assert!((sp.p_value(a + 1) - sp.p_value(a) - sp.d_p()).abs() < 1e-14);
        }
        assert!((sp.r_q() - 4.0 * sp.d_q()).abs() < 1e-15);
    }
}
