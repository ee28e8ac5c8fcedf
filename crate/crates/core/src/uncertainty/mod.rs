//! Discrete coordinate and momentum operators and uncertainty relations:
//! the RS relation for `Q`, `P`, unitary-operator variances, the sine and
//! cosine suite, the Massar-Spindel bound and the GUP expansion.
//!
//! Every bound is evaluated from direct matrix traces; mapped-grid routes
//! exist only as cross-checks.

mod gup;
mod scale;
mod unitary;

pub use gup::{gup_expansion, GupOrder, GupReport};
pub use scale::{planck_preset, PlanckPreset, ScaleParams, UnitLabels};
pub use unitary::{
    coherent_table_means, footnote_inequality, massar_spindel, s_u_closed, sincos_operators, sincos_suite,
    unitary_variances, SinCosOperators, SinCosReport, TableMeans, SINCOS_PAIRS,
};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{fourier, Dimension, Operator};
use crate::error::{Error, Result};
use crate::kernel::{Bracket, PhaseFunction};
use crate::state::check_density;

/// Named quantities of one uncertainty relation `lhs ≥ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyReport {
    pub relation: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub quantities: Vec<(&'static str, f64)>,
}

impl UncertaintyReport {
    /// `lhs - rhs`.
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }
}

fn check_scale(dim: Dimension, scale: &ScaleParams) -> Result<()> {
    if scale.dim() == dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: dim.n(),
            found: scale.dim().n(),
        })
    }
}

/// `Q = diag(𝔮_α)` in the coordinate basis and `P = F diag(𝔭_β) F†`.
pub fn qp_operators(dim: Dimension, scale: &ScaleParams) -> Result<(Operator, Operator)> {
    check_scale(dim, scale)?;
    let q = Operator::from_fn(dim, |r, c| {
        if r == c {
            Complex64::new(scale.q_value(r), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let f = fourier(dim);
    let diag = Operator::from_fn(dim, |r, c| {
        if r == c {
            Complex64::new(scale.p_value(r), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let p = &(&f * &diag) * &f.adjoint();
    Ok((q, p))
}

/// `⟨Q^k⟩` and `⟨P^k⟩` for `k = 0..=k_max`, in physical units.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    q: Vec<f64>,
    p: Vec<f64>,
}

impl MomentSet {
    pub fn k_max(&self) -> usize {
        self.q.len() - 1
    }

    pub fn q(&self, k: usize) -> f64 {
        self.q[k]
    }

    pub fn p(&self, k: usize) -> f64 {
        self.p[k]
    }

    pub fn var_q(&self) -> f64 {
        self.q[2] - self.q[1] * self.q[1]
    }

    pub fn var_p(&self) -> f64 {
        self.p[2] - self.p[1] * self.p[1]
    }
}

/// Moments from the coordinate and momentum marginals of `ρ`:
/// `⟨Q^k⟩ = Σ_α 𝔮_α^k ⟨u_α|ρ|u_α⟩`, `⟨P^k⟩ = Σ_β 𝔭_β^k ⟨v_β|ρ|v_β⟩`.
pub fn moments(rho: &Operator, scale: &ScaleParams, k_max: usize) -> Result<MomentSet> {
    let dim = rho.dim();
    check_scale(dim, scale)?;
    check_density(rho, true)?;
    if k_max < 2 {
        return Err(Error::param("k_max", format!("must be at least 2, got {k_max}")));
    }
    let f = fourier(dim);
    let rho_v: DMatrix<Complex64> = f.matrix().adjoint() * rho.matrix() * f.matrix();
    let mut q = vec![0.0; k_max + 1];
    let mut p = vec![0.0; k_max + 1];
    for l in dim.labels() {
        let i = dim.index(l);
        let (wq, wp) = (rho.matrix()[(i, i)].re, rho_v[(i, i)].re);
        let (xq, xp) = (scale.q_value(l), scale.p_value(l));
        let (mut aq, mut ap) = (1.0, 1.0);
        for k in 0..=k_max {
            q[k] += aq * wq;
            p[k] += ap * wp;
            aq *= xq;
            ap *= xp;
        }
    }
    Ok(MomentSet { q, p })
}

fn expect(op: &Operator, rho: &Operator) -> Complex64 {
    op.trace_product(rho)
}

/// `𝒰_QP = 𝒱_Q𝒱_P - 𝒞²_QP ≥ ¼|⟨[Q,P]⟩|²`.
///
/// For `Q`/`P` eigenstates the relation is reported, not guaranteed: the
/// commutator of the finite operators is not a multiple of the identity.
pub fn rs_qp(rho: &Operator, scale: &ScaleParams) -> Result<UncertaintyReport> {
    let dim = rho.dim();
    check_density(rho, true)?;
    let (q, p) = qp_operators(dim, scale)?;
    let mq = expect(&q, rho).re;
    let mp = expect(&p, rho).re;
    let vq = expect(&(&q * &q), rho).re - mq * mq;
    let vp = expect(&(&p * &p), rho).re - mp * mp;
    let cov = 0.5 * expect(&q.anticommutator(&p), rho).re - mq * mp;
    let comm = expect(&q.commutator(&p), rho);
    let lhs = vq * vp - cov * cov;
    let rhs = 0.25 * comm.norm_sqr();
    Ok(UncertaintyReport {
        relation: "rs-qp",
        lhs,
        rhs,
        quantities: vec![
            ("mean_q", mq),
            ("mean_p", mp),
            ("var_q", vq),
            ("var_p", vp),
            ("cov_qp", cov),
            ("comm_re", comm.re),
            ("comm_im", comm.im),
            ("u_qp", lhs),
            ("bound", rhs),
        ],
    })
}

/// Mapped `[Q,P]` or `{Q,P}` at `(𝔭_μ, 𝔮_ν)`:
/// `c Σ_{η,ξ} (D_pD_q/2πħ) 𝔭_η 𝔮_ξ w[(2/ħ)(𝔭_η-𝔭_μ)(𝔮_ξ-𝔮_ν)]`
/// with `(c, w) = (2i, sin)` or `(2, cos)`.
pub fn mapped_qp_bracket(scale: &ScaleParams, kind: Bracket, mu: i64, nu: i64) -> Complex64 {
    let dim = scale.dim();
    let hbar = scale.hbar();
    let cell = scale.d_p() * scale.d_q() / (2.0 * std::f64::consts::PI * hbar);
    let (pm, qn) = (scale.p_value(mu), scale.q_value(nu));
    let mut acc = 0.0;
    for eta in dim.labels() {
        let pe = scale.p_value(eta);
        for xi in dim.labels() {
            let qx = scale.q_value(xi);
            let arg = 2.0 / hbar * (pe - pm) * (qx - qn);
            let w = match kind {
                Bracket::Commutator => arg.sin(),
                Bracket::Anticommutator => arg.cos(),
            };
            acc += cell * pe * qx * w;
        }
    }
    match kind {
        Bracket::Commutator => Complex64::new(0.0, 2.0 * acc),
        Bracket::Anticommutator => Complex64::new(2.0 * acc, 0.0),
    }
}

/// [`mapped_qp_bracket`] over the full grid; rows are `μ`, columns `ν`.
pub fn mapped_qp_bracket_grid(scale: &ScaleParams, kind: Bracket) -> PhaseFunction {
    PhaseFunction::from_fn(scale.dim(), |mu, nu| mapped_qp_bracket(scale, kind, mu, nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::schwinger_pair;
    use crate::coherent::vacuum;
    use crate::kernel::{map_operator, mean_value, wigner};
    use crate::state::{maximally_mixed, random_mixed, StateVector};

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn qp_examples() {
        let d = dim(3);
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        let (q, p) = qp_operators(d, &sc).unwrap();
        let eps = (2.0 * std::f64::consts::PI / 3.0).sqrt();
        assert!((q.get(-1, -1).re + eps).abs() < 1e-15);
        assert!(q.get(0, 0).norm() < 1e-15);
        assert!((q.get(1, 1).re - eps).abs() < 1e-15);
        assert!(q.is_hermitian(1e-15) && p.is_hermitian(1e-14));
        assert!(qp_operators(dim(5), &sc).is_err());
    }

    #[test]
    fn exponentials_recover_schwinger_pair() {
        for (n, delta, q0, hbar) in [(5, 1.0, 1.0, 1.0), (7, 0.3, 2.5, 0.7), (9, 2.0, 0.4, 3.0)] {
            let d = dim(n);
            let sc = ScaleParams::from_q0(d, delta, q0, hbar).unwrap();
            let (q, p) = qp_operators(d, &sc).unwrap();
            let (u, v) = schwinger_pair(d);
            let eu = (q.matrix() * Complex64::new(0.0, sc.d_p() / hbar)).exp();
            let ev = (p.matrix() * Complex64::new(0.0, sc.d_q() / hbar)).exp();
            let eu = Operator::from_matrix(d, eu).unwrap();
            let ev = Operator::from_matrix(d, ev).unwrap();
            assert!(eu.max_abs_diff(&u) <= 1e-12, "n={n}");
            assert!(ev.max_abs_diff(&v) <= 1e-12, "n={n}");
        }
    }

    #[test]
    fn map_of_q_and_p() {
        let d = dim(7);
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        let (q, p) = qp_operators(d, &sc).unwrap();
        let qm = map_operator(&q);
        let pm = map_operator(&p);
        for mu in d.labels() {
            for nu in d.labels() {
                assert!((qm.get(mu, nu).re - sc.q_value(nu)).abs() < 1e-12);
                assert!((pm.get(mu, nu).re - sc.p_value(mu)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn moment_examples() {
        let d = dim(21);
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        let m = moments(&maximally_mixed(d), &sc, 4).unwrap();
        assert!(m.q(1).abs() < 1e-14 && m.p(1).abs() < 1e-14);
        assert!((m.q(0) - 1.0).abs() < 1e-12 && (m.p(0) - 1.0).abs() < 1e-12);

        let v = moments(&vacuum(d).unwrap().projector(), &sc, 4).unwrap();
        for k in [1, 3] {
            assert!(v.q(k).abs() < 1e-12 && v.p(k).abs() < 1e-12);
        }

        let d5 = dim(5);
        let sc5 = ScaleParams::unit(d5, 1.0).unwrap();
        let b = moments(&StateVector::basis_u(d5, 1).projector(), &sc5, 2).unwrap();
        assert!((b.q(1) - sc5.d_q()).abs() < 1e-15);
        assert!((b.q(2) - sc5.d_q().powi(2)).abs() < 1e-15);
        assert!(moments(&maximally_mixed(d5), &sc5, 1).is_err());
    }

    #[test]
    fn moments_match_traces() {
        let d = dim(9);
        let sc = ScaleParams::from_q0(d, 0.5, 1.3, 1.0).unwrap();
        let (q, p) = qp_operators(d, &sc).unwrap();
        let rho = random_mixed(d, 2);
        let m = moments(&rho, &sc, 4).unwrap();
        for k in 0..=4u32 {
            assert!((m.q(k as usize) - q.pow(k).trace_product(&rho).re).abs() <= 1e-9);
            assert!((m.p(k as usize) - p.pow(k).trace_product(&rho).re).abs() <= 1e-9);
        }
        assert!(m.var_q() >= 0.0 && m.var_p() >= 0.0);
    }

    #[test]
    fn rs_qp_examples() {
        let d = dim(3);
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        let r = rs_qp(&StateVector::basis_u(d, 0).projector(), &sc).unwrap();
        assert!(r.get("var_q").unwrap().abs() < 1e-15);
        let cov = r.get("cov_qp").unwrap();
        assert!((r.lhs + cov * cov).abs() < 1e-14);
        assert!(r.rhs >= 0.0);

        let d = dim(21);
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        let r = rs_qp(&vacuum(d).unwrap().projector(), &sc).unwrap();
        assert!(r.slack() >= -1e-10);
        let r = rs_qp(&maximally_mixed(d), &sc).unwrap();
        assert!(r.rhs.abs() < 1e-20);
        assert!(r.lhs >= 0.0);
    }

    #[test]
    fn mapped_qp_brackets_reproduce_traces() {
        let d = dim(5);
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        let (q, p) = qp_operators(d, &sc).unwrap();
        let comm = mapped_qp_bracket_grid(&sc, Bracket::Commutator);
        let anti = mapped_qp_bracket_grid(&sc, Bracket::Anticommutator);
        assert!(comm.values().iter().all(|z| z.re == 0.0));

        let mixed = wigner(&maximally_mixed(d)).unwrap();
        assert!(mean_value(&comm, &mixed).unwrap().norm() < 1e-12);

        let rho = vacuum(d).unwrap().projector();
        let w = wigner(&rho).unwrap();
        let direct = q.anticommutator(&p).trace_product(&rho);
        assert!((mean_value(&anti, &w).unwrap() - direct).norm() <= 1e-8);
        let direct = q.commutator(&p).trace_product(&rho);
        assert!((mean_value(&comm, &w).unwrap() - direct).norm() <= 1e-8);

        let sc2 = ScaleParams::from_q0(d, 0.4, 2.0, 1.5).unwrap();
        let (q2, p2) = qp_operators(d, &sc2).unwrap();
        let g = mapped_qp_bracket_grid(&sc2, Bracket::Commutator);
        assert!(g.max_abs_diff(&map_operator(&q2.commutator(&p2))) <= 1e-10);
    }
}
