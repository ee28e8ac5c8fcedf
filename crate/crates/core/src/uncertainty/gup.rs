//! Small-`ε` expansion of the unitary variances and the resulting GUP.

use super::{moments, unitary_variances, MomentSet, ScaleParams, UncertaintyReport};
use crate::algebra::Operator;
use crate::error::Result;

/// Truncation order of the variance series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GupOrder {
    Two,
    Four,
}

impl GupOrder {
    pub fn value(self) -> u32 {
        match self {
            GupOrder::Two => 2,
            GupOrder::Four => 4,
        }
    }
}

/// Exact and truncated `𝒱_U`, `𝒱_V` and the GUP right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct GupReport {
    pub order: GupOrder,
    /// `D_p/ħ`, equal to `ε/L_P` when `q₀ = L_P`.
    pub coeff_q: f64,
    /// `D_q/ħ`, equal to `εL_P/ħ` when `q₀ = L_P`.
    pub coeff_p: f64,
    pub var_q: f64,
    pub var_p: f64,
    pub var_u: f64,
    pub var_v: f64,
    pub var_u_series: f64,
    pub var_v_series: f64,
    /// `ħ²/4 {1 - [𝒱_U series + 𝒱_V series]}`.
    pub rhs: f64,
}

impl GupReport {
    pub fn error_u(&self) -> f64 {
        (self.var_u - self.var_u_series).abs()
    }

    pub fn error_v(&self) -> f64 {
        (self.var_v - self.var_v_series).abs()
    }

    /// `𝒱_Q𝒱_P`.
    pub fn lhs(&self) -> f64 {
        self.var_q * self.var_p
    }

    pub fn slack(&self) -> f64 {
        self.lhs() - self.rhs
    }
}

impl From<&GupReport> for UncertaintyReport {
    fn from(g: &GupReport) -> Self {
        UncertaintyReport {
            relation: "gup",
            lhs: g.lhs(),
            rhs: g.rhs,
            quantities: vec![
                ("order", g.order.value() as f64),
                ("coeff_q", g.coeff_q),
                ("coeff_p", g.coeff_p),
                ("var_q", g.var_q),
                ("var_p", g.var_p),
                ("var_u", g.var_u),
                ("var_v", g.var_v),
                ("var_u_series", g.var_u_series),
                ("var_v_series", g.var_v_series),
                ("error_u", g.error_u()),
                ("error_v", g.error_v()),
            ],
        }
    }
}

/// `c²𝒱_X - c⁴(⟨X⁴⟩/12 + ⟨X²⟩²/4 - ⟨X⟩⟨X³⟩/3)` from the moments of `X`.
fn series(c: f64, m: [f64; 5], order: GupOrder) -> f64 {
    let var = m[2] - m[1] * m[1];
    let second = c * c * var;
    match order {
        GupOrder::Two => second,
        GupOrder::Four => second - c.powi(4) * (m[4] / 12.0 + m[2] * m[2] / 4.0 - m[1] * m[3] / 3.0),
    }
}

pub fn gup_expansion(rho: &Operator, scale: &ScaleParams, order: GupOrder) -> Result<GupReport> {
    let m: MomentSet = moments(rho, scale, 4)?;
    let exact = unitary_variances(rho)?;
    let hbar = scale.hbar();
    let coeff_q = scale.d_p() / hbar;
    let coeff_p = scale.d_q() / hbar;
    let mq = [0, 1, 2, 3, 4].map(|k| m.q(k));
    let mp = [0, 1, 2, 3, 4].map(|k| m.p(k));
    let var_u_series = series(coeff_q, mq, order);
    let var_v_series = series(coeff_p, mp, order);
    Ok(GupReport {
        order,
        coeff_q,
        coeff_p,
        var_q: m.var_q(),
        var_p: m.var_p(),
        var_u: exact.get("var_u").unwrap_or_default(),
        var_v: exact.get("var_v").unwrap_or_default(),
        var_u_series,
        var_v_series,
        rhs: hbar * hbar / 4.0 * (1.0 - (var_u_series + var_v_series)),
    })
}
