use finphase::dynamics::{propagator, PropagatorMode};
use finphase::uncertainty::{footnote_inequality, sincos_operators};
use finphase::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn odd_dim(max_half: usize) -> impl Strategy<Value = Dimension> {
    (1..=max_half).prop_map(|k| Dimension::new(2 * k + 1).unwrap())
}

fn random_hermitian(dim: Dimension, seed: u64) -> Operator {
    let a = StateVector::random(dim, seed).projector();
    let b = StateVector::random(dim, seed.wrapping_add(17)).projector();
    &a.scale_real(2.0) - &b.scale_real(0.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_is_hermitian_with_unit_trace(d in odd_dim(5), mu in -20i64..20, nu in -20i64..20) {
        let k = kernel(d, mu, nu);
        prop_assert!(k.is_hermitian(1e-12));
        prop_assert!((k.trace() - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        let n = d.n() as i64;
        prop_assert!(k.max_abs_diff(&kernel(d, mu + n, nu - n)) <= 1e-12);
    }

    #[test]
    fn kernel_orthogonality(d in odd_dim(4), a in any::<(i64, i64, i64, i64)>()) {
        let (m1, n1, m2, n2) = (a.0 % 50, a.1 % 50, a.2 % 50, a.3 % 50);
        let t = kernel(d, m1, n1).trace_product(&kernel(d, m2, n2));
        let expected = if d.congruent(m1, m2) && d.congruent(n1, n2) { d.n() as f64 } else { 0.0 };
        prop_assert!((t - Complex64::new(expected, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn map_reconstruct_round_trip(d in odd_dim(5), seed in any::<u64>()) {
        let op = random_hermitian(d, seed);
        let back = reconstruct(&map_operator(&op));
        prop_assert!(back.max_abs_diff(&op) <= 1e-10);
    }

    #[test]
    fn wigner_of_random_state(d in odd_dim(5), seed in any::<u64>()) {
        let rho = random_mixed(d, seed);
        let w = wigner(&rho).unwrap();
        prop_assert!(w.max_imag() <= 1e-12);
        prop_assert!((w.mean() - Complex64::new(1.0, 0.0)).norm() <= 1e-10);
        let purity = wigner_overlap(&w, &w).unwrap().re;
        prop_assert!((purity - rho.trace_product(&rho).re).abs() <= 1e-10);
    }

    #[test]
    fn overlap_agrees_with_wigner_overlap(d in odd_dim(4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_mixed(d, s1);
        let b = random_mixed(d, s2);
        let direct = overlap(&a, &b).unwrap();
        let mapped = wigner_overlap(&wigner(&a).unwrap(), &wigner(&b).unwrap()).unwrap();
        prop_assert!((direct - mapped).norm() <= 1e-10);
        let f = fidelity(&a, &b).unwrap().value();
        prop_assert!((-1e-12..=1.0 + 1e-9).contains(&f));
    }

    #[test]
    fn coherent_wigner_closed_matches_trace(d in odd_dim(5), k in -30i64..30, t in -30i64..30) {
        let closed = coherent_wigner_grid(d, k, t, WignerMethod::Closed).unwrap();
        let traced = coherent_wigner_grid(d, k, t, WignerMethod::Trace).unwrap();
        prop_assert!(closed.max_abs_diff(&traced) <= 1e-8);
        let (q, p) = marginals_closed(d, k, t).unwrap();
        let s_q: f64 = q.values().iter().sum();
        let s_p: f64 = p.values().iter().sum();
        prop_assert!((s_q - 1.0).abs() <= 1e-10 && (s_p - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn coherent_overlap_closed_matches_vectors(d in odd_dim(5), a in any::<(i8, i8, i8, i8)>()) {
        let bra = (a.0 as i64, a.1 as i64);
        let ket = (a.2 as i64, a.3 as i64);
        let direct = coherent_state(d, bra.0, bra.1).unwrap().inner(&coherent_state(d, ket.0, ket.1).unwrap());
        let closed = coherent_overlap_closed(d, bra, ket).unwrap();
        prop_assert!((direct - closed).norm() <= 1e-10);
    }

    #[test]
    fn k_function_bounds_and_symmetry(d in odd_dim(15), eta in -40i64..40, xi in -40i64..40) {
        let k = k_func(d, MVariant::General, eta, xi).unwrap();
        prop_assert!(k.abs() <= 1.0 + 1e-12);
        prop_assert!((k - k_func(d, MVariant::General, xi, eta).unwrap()).abs() <= 1e-12);
        prop_assert!((k - k_func(d, MVariant::General, -eta, -xi).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn theta_is_periodic(z in -3.0f64..3.0, a in 0.01f64..4.0) {
        for j in [Theta::Three, Theta::Four] {
            let base = theta(j, z, a).unwrap();
            prop_assert!((theta(j, z + 1.0, a).unwrap() - base).abs() <= 1e-10 * base.abs().max(1.0));
        }
        let t2 = theta(Theta::Two, z, a).unwrap();
        prop_assert!((theta(Theta::Two, z + 1.0, a).unwrap() + t2).abs() <= 1e-10 * t2.abs().max(1.0));
    }

    #[test]
    fn exact_propagation_preserves_norm_and_purity(d in odd_dim(3), seed in any::<u64>(), t in -1.0f64..1.0) {
        let h = harper_hamiltonian(d);
        let cfg = HbarConfig::default();
        let rho = StateVector::random(d, seed).projector();
        let w0 = wigner(&rho).unwrap();
        let p = propagator(d, &h, t, 0.0, PropagatorMode::Exact, cfg).unwrap();
        let w = evolve_wigner(&w0, &p).unwrap();
        prop_assert!((w.mean() - Complex64::new(1.0, 0.0)).norm() <= 1e-9);
        let purity = wigner_overlap(&w, &w).unwrap().re;
        prop_assert!((purity - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn scale_invariants(n in odd_dim(60), delta in 0.0f64..=2.0, q0 in 0.05f64..20.0, hbar in 0.1f64..10.0) {
        let sc = ScaleParams::from_q0(n, delta, q0, hbar).unwrap();
        prop_assert!(sc.action_defect() <= 1e-12);
        prop_assert!(sc.cell_defect() <= 1e-12);
    }

    #[test]
    fn uncertainty_relations_on_random_states(d in odd_dim(4), seed in any::<u64>()) {
        let rho = StateVector::random(d, seed).projector();
        let s = sincos_suite(&rho).unwrap();
        for pair in &s.pairs {
            prop_assert!(pair.slack() >= -1e-10);
        }
        prop_assert!(s.product_slacks().iter().all(|&x| x >= -1e-10));
        let [vcu, vsu, vcv, vsv] = s.variances;
        prop_assert!((s.var_u * s.var_v - (vcu + vsu) * (vcv + vsv)).abs() <= 1e-12);
        let ms = massar_spindel(&rho).unwrap();
        prop_assert!(ms.slack() >= -1e-10);
        let uv = unitary_variances(&rho).unwrap();
        for name in ["var_u", "var_v"] {
            let v = uv.get(name).unwrap();
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        }
        let sc = ScaleParams::unit(d, 1.0).unwrap();
        prop_assert!(rs_qp(&rho, &sc).unwrap().slack() >= -1e-10);
    }

    #[test]
    fn moment_invariants(d in odd_dim(8), seed in any::<u64>(), delta in 0.0f64..=2.0) {
        let sc = ScaleParams::unit(d, delta).unwrap();
        let m = moments(&random_mixed(d, seed), &sc, 4).unwrap();
        prop_assert!((m.q(0) - 1.0).abs() <= 1e-12 && (m.p(0) - 1.0).abs() <= 1e-12);
        prop_assert!(m.var_q() >= -1e-12 && m.var_p() >= -1e-12);
    }
}

#[test]
fn sincos_identities_hold_on_coherent_states() {
    for n in (3..=21).step_by(2) {
        let d = Dimension::new(n).unwrap();
        let ops = sincos_operators(d);
        assert!(ops.cu.is_hermitian(1e-14));
        for (k, t) in [(0, 0), (1, 2), (-2, 1)] {
            let rho = coherent_state(d, k, t).unwrap().projector();
            let r = footnote_inequality(&rho).unwrap();
            assert!(r.lhs.is_finite() && r.rhs.is_finite());
            let uv = unitary_variances(&rho).unwrap();
            assert!((uv.get("var_u").unwrap() - uv.get("var_v").unwrap()).abs() <= 1e-12);
        }
    }
}

#[test]
fn coherent_states_resolve_identity() {
    for n in [3, 5, 9] {
        let d = Dimension::new(n).unwrap();
        let mut acc = Operator::zeros(d);
        for k in d.labels() {
            for t in d.labels() {
                acc = &acc + &coherent_state(d, k, t).unwrap().projector();
            }
        }
        let diff = acc.scale_real(1.0 / n as f64).max_abs_diff(&Operator::identity(d));
        assert!(diff <= 1e-10, "n={n}: {diff:e}");
    }
}
