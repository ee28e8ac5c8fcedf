//! Variances of the Schwinger unitaries and the sine/cosine operator suite.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ScaleParams, UncertaintyReport};
use crate::algebra::{schwinger_pair, Dimension, Operator};
use crate::error::{Error, Result};
use crate::state::check_density;
use crate::theta::{k_func, MVariant};

fn mean(op: &Operator, rho: &Operator) -> Complex64 {
    op.trace_product(rho)
}

/// `𝒱_U = 1 - |⟨U⟩|²` and `𝒱_V = 1 - |⟨V⟩|²`; `lhs` is `𝒱_U𝒱_V`, `rhs` is 0.
pub fn unitary_variances(rho: &Operator) -> Result<UncertaintyReport> {
    check_density(rho, true)?;
    let (u, v) = schwinger_pair(rho.dim());
    let mu = mean(&u, rho);
    let mv = mean(&v, rho);
    let var_u = 1.0 - mu.norm_sqr();
    let var_v = 1.0 - mv.norm_sqr();
    Ok(UncertaintyReport {
        relation: "unitary-variances",
        lhs: var_u * var_v,
        rhs: 0.0,
        quantities: vec![
            ("mean_u_re", mu.re),
            ("mean_u_im", mu.im),
            ("mean_v_re", mv.re),
            ("mean_v_im", mv.im),
            ("var_u", var_u),
            ("var_v", var_v),
        ],
    })
}

/// `𝒰_UV = (1+2A)𝒱_U𝒱_V + A²(𝒱_U + 𝒱_V - 1) ≥ 0` with `A = tan(π/N)`.
pub fn massar_spindel(rho: &Operator) -> Result<UncertaintyReport> {
    let base = unitary_variances(rho)?;
    let var_u = base.get("var_u").unwrap_or_default();
    let var_v = base.get("var_v").unwrap_or_default();
    let a = (PI / rho.dim().n() as f64).tan();
    let u_uv = (1.0 + 2.0 * a) * var_u * var_v + a * a * (var_u + var_v - 1.0);
    Ok(UncertaintyReport {
        relation: "massar-spindel",
        lhs: u_uv,
        rhs: 0.0,
        quantities: vec![("var_u", var_u), ("var_v", var_v), ("a", a), ("u_uv", u_uv)],
    })
}

/// `C_U = (U+U†)/2`, `S_U = (U-U†)/2i` and likewise for `V`.
#[derive(Debug, Clone)]
pub struct SinCosOperators {
    pub cu: Operator,
    pub su: Operator,
    pub cv: Operator,
    pub sv: Operator,
}

impl SinCosOperators {
    /// `[C_U, S_U, C_V, S_V]`.
    pub fn as_array(&self) -> [&Operator; 4] {
        [&self.cu, &self.su, &self.cv, &self.sv]
    }
}

pub fn sincos_operators(dim: Dimension) -> SinCosOperators {
    let (u, v) = schwinger_pair(dim);
    let cos = |w: &Operator| (w + &w.adjoint()).scale_real(0.5);
    let sin = |w: &Operator| (w - &w.adjoint()).scale(Complex64::new(0.0, -0.5));
    SinCosOperators {
        cu: cos(&u),
        su: sin(&u),
        cv: cos(&v),
        sv: sin(&v),
    }
}

/// Names of the four RS pairs, in the order they are reported.
pub const SINCOS_PAIRS: [&str; 4] = ["cu-cv", "cu-sv", "su-cv", "su-sv"];

/// The four RS relations between `{C_U, S_U}` and `{C_V, S_V}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SinCosReport {
    /// `⟨C_U⟩, ⟨S_U⟩, ⟨C_V⟩, ⟨S_V⟩`.
    pub means: [f64; 4],
    /// Variances in the same order.
    pub variances: [f64; 4],
    /// `cu-cv`, `cu-sv`, `su-cv`, `su-sv`.
    pub pairs: [UncertaintyReport; 4],
    pub var_u: f64,
    pub var_v: f64,
}

impl SinCosReport {
    /// `Σ 𝒰` over the four pairs.
    pub fn sum_u(&self) -> f64 {
        self.pairs.iter().map(|r| r.lhs).sum()
    }

    /// `Σ (𝒰 - ¼|⟨[A,B]⟩|²)`; equals `S_𝒰` on coherent states.
    pub fn sum_slack(&self) -> f64 {
        self.pairs.iter().map(UncertaintyReport::slack).sum()
    }

    /// `𝒱_U𝒱_V` minus each of the four variance products.
    pub fn product_slacks(&self) -> [f64; 4] {
        let [vcu, vsu, vcv, vsv] = self.variances;
        let vv = self.var_u * self.var_v;
        [vv - vcu * vcv, vv - vcu * vsv, vv - vsu * vcv, vv - vsu * vsv]
    }

    /// Flattened summary: `lhs` is the sum of the four `𝒰`, `rhs` the sum of
    /// the four commutator bounds.
    pub fn summary(&self) -> UncertaintyReport {
        let names = ["mean_cu", "mean_su", "mean_cv", "mean_sv"];
        let vnames = ["var_cu", "var_su", "var_cv", "var_sv"];
        let mut quantities: Vec<(&'static str, f64)> = names.into_iter().zip(self.means).collect();
        quantities.extend(vnames.into_iter().zip(self.variances));
        let unames = ["u_cu_cv", "u_cu_sv", "u_su_cv", "u_su_sv"];
        let bnames = ["bound_cu_cv", "bound_cu_sv", "bound_su_cv", "bound_su_sv"];
        for (i, r) in self.pairs.iter().enumerate() {
            quantities.push((unames[i], r.lhs));
            quantities.push((bnames[i], r.rhs));
        }
        quantities.push(("var_u", self.var_u));
        quantities.push(("var_v", self.var_v));
        quantities.push(("sum_u", self.sum_u()));
        quantities.push(("sum_slack", self.sum_slack()));
        UncertaintyReport {
            relation: "sincos",
            lhs: self.sum_u(),
            rhs: self.pairs.iter().map(|r| r.rhs).sum(),
            quantities,
        }
    }
}

fn rs_pair(name: &'static str, a: &Operator, b: &Operator, rho: &Operator) -> UncertaintyReport {
    let ma = mean(a, rho).re;
    let mb = mean(b, rho).re;
    let va = mean(&(a * a), rho).re - ma * ma;
    let vb = mean(&(b * b), rho).re - mb * mb;
    let cov = 0.5 * mean(&a.anticommutator(b), rho).re - ma * mb;
    let comm = mean(&a.commutator(b), rho);
    UncertaintyReport {
        relation: name,
        lhs: va * vb - cov * cov,
        rhs: 0.25 * comm.norm_sqr(),
        quantities: vec![
            ("var_a", va),
            ("var_b", vb),
            ("cov", cov),
            ("comm_re", comm.re),
            ("comm_im", comm.im),
        ],
    }
}

/// Means, variances and the four RS relations for the sine and cosine
/// operators, all by direct traces.
pub fn sincos_suite(rho: &Operator) -> Result<SinCosReport> {
    check_density(rho, true)?;
    let ops = sincos_operators(rho.dim());
    let arr = ops.as_array();
    let means = arr.map(|o| mean(o, rho).re);
    let mut variances = [0.0; 4];
    for (i, o) in arr.iter().enumerate() {
        variances[i] = mean(&(*o * *o), rho).re - means[i] * means[i];
    }
    let pairs = [
        rs_pair(SINCOS_PAIRS[0], &ops.cu, &ops.cv, rho),
        rs_pair(SINCOS_PAIRS[1], &ops.cu, &ops.sv, rho),
        rs_pair(SINCOS_PAIRS[2], &ops.su, &ops.cv, rho),
        rs_pair(SINCOS_PAIRS[3], &ops.su, &ops.sv, rho),
    ];
    let uv = unitary_variances(rho)?;
    Ok(SinCosReport {
        means,
        variances,
        pairs,
        var_u: uv.get("var_u").unwrap_or_default(),
        var_v: uv.get("var_v").unwrap_or_default(),
    })
}

/// Closed form of the summed sine/cosine slack on coherent states:
/// `1 - K²(1,0) - K²(0,1) - K²(1,1) + 2cos(π/N) K(1,0)K(0,1)K(1,1)`.
pub fn s_u_closed(dim: Dimension) -> Result<f64> {
    let k10 = k_func(dim, MVariant::General, 1, 0)?;
    let k01 = k_func(dim, MVariant::General, 0, 1)?;
    let k11 = k_func(dim, MVariant::General, 1, 1)?;
    let c = (PI / dim.n() as f64).cos();
    Ok(1.0 - k10 * k10 - k01 * k01 - k11 * k11 + 2.0 * c * k10 * k01 * k11)
}

/// `|⟨½{C_U,C_V}⟩| ≥ √(1-𝒱_U)√(1-𝒱_V) - √(𝒱_U𝒱_V)`; an empirical check only.
pub fn footnote_inequality(rho: &Operator) -> Result<UncertaintyReport> {
    check_density(rho, true)?;
    let ops = sincos_operators(rho.dim());
    let uv = unitary_variances(rho)?;
    let var_u = uv.get("var_u").unwrap_or_default().max(0.0);
    let var_v = uv.get("var_v").unwrap_or_default().max(0.0);
    let lhs = (0.5 * mean(&ops.cu.anticommutator(&ops.cv), rho)).norm();
    let rhs = (1.0 - var_u).max(0.0).sqrt() * (1.0 - var_v).max(0.0).sqrt() - (var_u * var_v).sqrt();
    Ok(UncertaintyReport {
        relation: "footnote",
        lhs,
        rhs,
        quantities: vec![("var_u", var_u), ("var_v", var_v)],
    })
}

/// Closed-form sine/cosine means on the coherent state `|κ,τ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableMeans {
    pub cu: Complex64,
    pub su: Complex64,
    pub cv: Complex64,
    pub sv: Complex64,
    pub cu2: Complex64,
    pub su2: Complex64,
    pub cv2: Complex64,
    pub sv2: Complex64,
    pub comm_cu_cv: Complex64,
    pub comm_cu_sv: Complex64,
    pub comm_su_cv: Complex64,
    pub comm_su_sv: Complex64,
}

impl TableMeans {
    pub fn entries(&self) -> [(&'static str, Complex64); 12] {
        [
            ("cu", self.cu),
            ("su", self.su),
            ("cv", self.cv),
            ("sv", self.sv),
            ("cu2", self.cu2),
            ("su2", self.su2),
            ("cv2", self.cv2),
            ("sv2", self.sv2),
            ("comm_cu_cv", self.comm_cu_cv),
            ("comm_cu_sv", self.comm_cu_sv),
            ("comm_su_cv", self.comm_su_cv),
            ("comm_su_sv", self.comm_su_sv),
        ]
    }
}

/// The twelve tabulated means on `|κ,τ⟩` from theta-function closed forms.
///
/// Phase arguments are `D_p𝔮_τ/ħ` and `D_q𝔭_κ/ħ`; the `K` arguments
/// `(D_p,0), (0,D_q), (2D_p,0), (0,2D_q), (D_p,D_q)` are the lattice labels
/// `(1,0), (0,1), (2,0), (0,2), (1,1)`.
pub fn coherent_table_means(dim: Dimension, kappa: i64, tau: i64, scale: &ScaleParams) -> Result<TableMeans> {
    if scale.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim.n(),
            found: scale.dim().n(),
        });
    }
    let hbar = scale.hbar();
    let a_u = scale.d_p() * scale.q_value(tau) / hbar;
    let a_v = scale.d_q() * scale.p_value(kappa) / hbar;
    let half_cell = scale.d_p() * scale.d_q() / (2.0 * hbar);
    let k = |eta, xi| k_func(dim, MVariant::General, eta, xi);
    let (k10, k01, k20, k02, k11) = (k(1, 0)?, k(0, 1)?, k(2, 0)?, k(0, 2)?, k(1, 1)?);
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    let c = 2.0 * half_cell.sin() * k11;
    Ok(TableMeans {
        cu: re(a_u.cos() * k10),
        su: re(a_u.sin() * k10),
        cv: re(a_v.cos() * k01),
        sv: re(a_v.sin() * k01),
        cu2: re(0.5 * (1.0 + (2.0 * a_u).cos() * k20)),
        su2: re(0.5 * (1.0 - (2.0 * a_u).cos() * k20)),
        cv2: re(0.5 * (1.0 + (2.0 * a_v).cos() * k02)),
        sv2: re(0.5 * (1.0 - (2.0 * a_v).cos() * k02)),
        comm_cu_cv: im(c * a_v.sin() * a_u.sin()),
        comm_cu_sv: im(-c * a_v.cos() * a_u.sin()),
        comm_su_cv: im(-c * a_v.sin() * a_u.cos()),
        comm_su_sv: im(c * a_v.cos() * a_u.cos()),
    })
}
