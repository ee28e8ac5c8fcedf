//! Jacobi theta functions on a purely imaginary lattice and the `M`/`K`
//! combinations built from them.
//!
//! `θ_j(z | i a)` uses nome `q = e^{-π a}`:
//!
//! * `θ₃(z) = Σ_n q^{n²} cos(2πnz)`
//! * `θ₄(z) = Σ_n (-1)^n q^{n²} cos(2πnz)`
//! * `θ₂(z) = Σ_n q^{(n+½)²} cos(2π(n+½)z)`
//!
//! For `a < 1` the nome approaches one and the q-series stalls, so the
//! imaginary transformation to the dual parameter `1/a` is applied first.

use std::f64::consts::PI;

use crate::algebra::Dimension;
use crate::error::{Error, Result};

/// Hard cap on the number of summed terms; exceeding it is an error.
pub const SERIES_TERM_CAP: usize = 512;

const REL_CUTOFF: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theta {
    Two,
    Three,
    Four,
}

impl Theta {
    pub fn from_index(j: u8) -> Option<Self> {
        match j {
            2 => Some(Theta::Two),
            3 => Some(Theta::Three),
            4 => Some(Theta::Four),
            _ => None,
        }
    }
}

fn check_param(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::ThetaDomain(a))
    }
}

/// Sum `f(0) + f(1) + …` where `envelope(k)` bounds `|f(j)|` for all `j ≥ k`.
fn sum_terms(
    a: f64,
    z: f64,
    mut term: impl FnMut(usize) -> f64,
    mut envelope: impl FnMut(usize) -> f64,
) -> Result<f64> {
    let mut acc = 0.0;
    let mut mag = 0.0;
    for k in 0..SERIES_TERM_CAP {
        if k > 0 && envelope(k) < REL_CUTOFF * mag {
            return Ok(acc);
        }
        let t = term(k);
        acc += t;
        mag += t.abs();
    }
    Err(Error::ThetaNotConverged {
        a,
        z,
        cap: SERIES_TERM_CAP,
    })
}

/// Reduce `z` modulo one into `[-½, ½]`.
fn wrap_unit(z: f64) -> (f64, i64) {
    let shift = z.round();
    (z - shift, shift as i64)
}

/// `θ_j(z | i a)` summed directly as a q-series.
pub fn theta_series(j: Theta, z: f64, a: f64) -> Result<f64> {
    check_param(a)?;
    let (z, shift) = wrap_unit(z);
    let q = (-PI * a).exp();
    let lq = -PI * a;
    match j {
        Theta::Three | Theta::Four => {
            let sign = if j == Theta::Four { -1.0 } else { 1.0 };
            sum_terms(
                a,
                z,
                |k| {
                    if k == 0 {
                        1.0
                    } else {
                        let s = if k % 2 == 1 { sign } else { 1.0 };
                        2.0 * s * (lq * (k * k) as f64).exp() * (2.0 * PI * k as f64 * z).cos()
                    }
                },
                |k| 2.0 * (lq * (k * k) as f64).exp() / (1.0 - q),
            )
        }
        Theta::Two => {
            let half = |k: usize| k as f64 + 0.5;
            sum_terms(
                a,
                z,
                |k| 2.0 * (lq * half(k) * half(k)).exp() * (2.0 * PI * half(k) * z).cos(),
                |k| 2.0 * (lq * half(k) * half(k)).exp() / (1.0 - q),
            )
            .map(|v| v * antiperiod_sign(shift))
        }
    }
}

/// Sign picked up by θ₂ after shifting its argument by `shift` periods.
fn antiperiod_sign(shift: i64) -> f64 {
    if shift.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `a^{-1/2} Σ_n s(n) exp(-π (z+n)²/a)` for `z ∈ [-½, ½]`, with `s(n)`
/// either `1` or `(-1)^n`.
fn dual_gaussian_sum(z: f64, a: f64, alternating: bool) -> Result<f64> {
    let inv = 1.0 / a;
    let g = |x: f64| (-PI * x * x * inv).exp();
    let sum = sum_terms(
        a,
        z,
        |k| {
            if k == 0 {
                g(z)
            } else {
                let s = if alternating && k % 2 == 1 { -1.0 } else { 1.0 };
                s * (g(z + k as f64) + g(z - k as f64))
            }
        },
        |k| 2.0 * g(k as f64 - 0.5) / (1.0 - (-PI * inv).exp()).max(f64::MIN_POSITIVE),
    )?;
    Ok(sum / a.sqrt())
}

/// `θ_j(z | i a)` via the imaginary (modular) transformation, summing
/// Gaussians of width `√a`.
pub fn theta_modular(j: Theta, z: f64, a: f64) -> Result<f64> {
    check_param(a)?;
    match j {
        Theta::Three => dual_gaussian_sum(wrap_unit(z).0, a, false),
        Theta::Four => dual_gaussian_sum(wrap_unit(z + 0.5).0, a, false),
        Theta::Two => {
            let (w, shift) = wrap_unit(z);
            Ok(antiperiod_sign(shift) * dual_gaussian_sum(w, a, true)?)
        }
    }
}

/// `θ_j(z | i a)`, choosing the rapidly convergent representation.
pub fn theta(j: Theta, z: f64, a: f64) -> Result<f64> {
    check_param(a)?;
    if a >= 1.0 {
        theta_series(j, z, a)
    } else {
        theta_modular(j, z, a)
    }
}

/// The lattice parameter `𝔞 = 1/(2N)`.
pub fn lattice_parameter(dim: Dimension) -> f64 {
    1.0 / (2.0 * dim.n() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MVariant {
    /// `M(η,ξ)` with the `e^{iπη}`, `e^{iπξ}` sign factors.
    General,
    /// `M(2η,2ξ)` written directly in terms of `(η,ξ)`.
    Doubled,
}

/// `e^{iπk}` for integer `k`, exactly.
fn parity_sign(k: i64) -> f64 {
    antiperiod_sign(k)
}

/// `M(η,ξ)` (general) or `M(2η,2ξ)` (doubled), evaluated at the given
/// integers without label reduction.
///
/// Both variants are real for integer arguments: the general variant's
/// phases `e^{iπη}` are exactly `±1`.
pub fn m_func(dim: Dimension, variant: MVariant, eta: i64, xi: i64) -> Result<f64> {
    let a = lattice_parameter(dim);
    match variant {
        MVariant::General => {
            let (e, x) = (eta as f64, xi as f64);
            let t3e = theta(Theta::Three, a * e, a)?;
            let t4e = theta(Theta::Four, a * e, a)?;
            let t3x = theta(Theta::Three, a * x, a)?;
            let t4x = theta(Theta::Four, a * x, a)?;
            let se = parity_sign(eta);
            let sx = parity_sign(xi);
            Ok(0.5 * a.sqrt() * (t3e * (t3x + se * t4x) + sx * t4e * (t3x - se * t4x)))
        }
        MVariant::Doubled => {
            let (e, x) = (eta as f64, xi as f64);
            let t3 = theta(Theta::Three, 2.0 * a * e, a)?;
            let t4 = theta(Theta::Four, 2.0 * a * e, a)?;
            let u3 = theta(Theta::Three, 4.0 * a * x, 4.0 * a)?;
            let u2 = theta(Theta::Two, 4.0 * a * x, 4.0 * a)?;
            Ok(a.sqrt() * (t3 * u3 + t4 * u2))
        }
    }
}

/// `K = M / M(0,0)`; exactly `1` at the origin.
pub fn k_func(dim: Dimension, variant: MVariant, eta: i64, xi: i64) -> Result<f64> {
    if eta == 0 && xi == 0 {
        return Ok(1.0);
    }
    let num = m_func(dim, variant, eta, xi)?;
    let den = m_func(dim, variant, 0, 0)?;
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: symmetric direct sum over `|n| ≤ terms`.
    fn direct(j: Theta, z: f64, a: f64, terms: i64) -> f64 {
        (-terms..=terms)
            .map(|n| {
                let n = n as f64;
                match j {
                    Theta::Three => (-PI * a * n * n).exp() * (2.0 * PI * n * z).cos(),
                    Theta::Four => {
                        let s = if (n as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                        s * (-PI * a * n * n).exp() * (2.0 * PI * n * z).cos()
                    }
                    Theta::Two => {
                        let m = n + 0.5;
                        (-PI * a * m * m).exp() * (2.0 * PI * m * z).cos()
                    }
                }
            })
            .sum()
    }

    const ALL: [Theta; 3] = [Theta::Two, Theta::Three, Theta::Four];

    #[test]
    fn rejects_bad_parameters() {
        for a in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(theta(Theta::Three, 0.1, a), Err(Error::ThetaDomain(_))));
        }
    }

    #[test]
    fn series_matches_long_direct_sum() {
        for &a in &[1.0, 1.5, 2.0, 5.0] {
            for i in -10..=10 {
                let z = i as f64 * 0.137;
                for j in ALL {
                    let d = direct(j, z, a, 200);
                    assert!((theta(j, z, a).unwrap() - d).abs() <= 1e-13, "{j:?} z={z} a={a}");
                }
            }
        }
    }

    #[test]
    fn modular_matches_series() {
        for &a in &[0.02, 0.1, 0.5, 1.0, 2.0] {
            for i in -20..=20 {
                let z = i as f64 * 0.05;
                for j in ALL {
                    let s = theta_series(j, z, a).unwrap();
                    let m = theta_modular(j, z, a).unwrap();
                    assert!((s - m).abs() <= 1e-12 * s.abs().max(1.0), "{j:?} z={z} a={a}");
                }
            }
        }
    }

    #[test]
    fn periodicity_and_half_shift() {
        for &a in &[0.01, 0.3, 1.0, 3.0] {
            for i in 0..15 {
                let z = -0.9 + 0.13 * i as f64;
                let t3 = theta(Theta::Three, z, a).unwrap();
                assert!((theta(Theta::Three, z + 1.0, a).unwrap() - t3).abs() <= 1e-12 * t3.abs().max(1.0));
                let t4 = theta(Theta::Four, z, a).unwrap();
                assert!((theta(Theta::Three, z + 0.5, a).unwrap() - t4).abs() <= 1e-12 * t4.abs().max(1.0));
                let t2 = theta(Theta::Two, z, a).unwrap();
                assert!((theta(Theta::Two, z + 1.0, a).unwrap() + t2).abs() <= 1e-12 * t2.abs().max(1.0));
            }
        }
    }

    #[test]
    fn jacobi_quartic_identity() {
        let t2 = theta(Theta::Two, 0.0, 1.0).unwrap();
        let t3 = theta(Theta::Three, 0.0, 1.0).unwrap();
        let t4 = theta(Theta::Four, 0.0, 1.0).unwrap();
        assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).abs() <= 1e-12);
        // Also at a small parameter where the modular branch is active.
        let a = 0.05;
        let t2 = theta(Theta::Two, 0.0, a).unwrap();
        let t3 = theta(Theta::Three, 0.0, a).unwrap();
        let t4 = theta(Theta::Four, 0.0, a).unwrap();
        assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).abs() <= 1e-12 * t3.powi(4));
    }

    #[test]
    fn series_cap_is_reported() {
        assert!(matches!(
            theta_series(Theta::Three, 0.2, 1e-6),
            Err(Error::ThetaNotConverged { .. })
        ));
    }

    #[test]
    fn m_at_origin_agrees_between_variants() {
        for n in [3, 5, 21, 101] {
            let d = Dimension::new(n).unwrap();
            let a = lattice_parameter(d);
            let printed = a.sqrt()
                * (theta(Theta::Three, 0.0, a).unwrap() * theta(Theta::Three, 0.0, 4.0 * a).unwrap()
                    + theta(Theta::Four, 0.0, a).unwrap() * theta(Theta::Two, 0.0, 4.0 * a).unwrap());
            let g = m_func(d, MVariant::General, 0, 0).unwrap();
            let dd = m_func(d, MVariant::Doubled, 0, 0).unwrap();
            assert!(g > 0.0);
            assert!((g - dd).abs() <= 1e-12);
            assert!((dd - printed).abs() <= 1e-12);
        }
    }

    #[test]
    fn doubled_m_at_n3_against_direct_series() {
        let d = Dimension::new(3).unwrap();
        let a = lattice_parameter(d);
        let m = m_func(d, MVariant::Doubled, 1, 0).unwrap();
        let oracle = a.sqrt()
            * (direct(Theta::Three, 2.0 * a, a, 100) * direct(Theta::Three, 0.0, 4.0 * a, 100)
                + direct(Theta::Four, 2.0 * a, a, 100) * direct(Theta::Two, 0.0, 4.0 * a, 100));
        assert!(m > 0.0);
        assert!((m - oracle).abs() <= 1e-12, "{m} vs {oracle}");
    }

    #[test]
    fn general_variant_at_even_arguments_is_doubled() {
        for n in [3, 7, 15] {
            let d = Dimension::new(n).unwrap();
            for e in -4..=4 {
                for x in -4..=4 {
                    let g = k_func(d, MVariant::General, 2 * e, 2 * x).unwrap();
                    let h = k_func(d, MVariant::Doubled, e, x).unwrap();
                    assert!((g - h).abs() <= 1e-12, "n={n} ({e},{x})");
                }
            }
        }
    }

    #[test]
    fn k_symmetries_and_bounds() {
        for n in [3, 5, 9, 11, 21] {
            let d = Dimension::new(n).unwrap();
            assert_eq!(k_func(d, MVariant::General, 0, 0).unwrap(), 1.0);
            assert_eq!(k_func(d, MVariant::Doubled, 0, 0).unwrap(), 1.0);
            let k10 = k_func(d, MVariant::General, 1, 0).unwrap();
            let k0m1 = k_func(d, MVariant::General, 0, -1).unwrap();
            assert!((k10 - k0m1).abs() <= 1e-12);
            let ell = d.ell();
            for e in -ell..=ell {
                for x in -ell..=ell {
                    let k = k_func(d, MVariant::General, e, x).unwrap();
                    assert!(k.abs() > 0.0 && k.abs() <= 1.0 + 1e-12, "n={n} ({e},{x}) {k}");
                }
            }
        }
    }

    #[test]
    fn k_decays_along_an_axis() {
        for n in [11, 21] {
            let d = Dimension::new(n).unwrap();
            let mut prev = f64::INFINITY;
            for e in 0..=d.ell() {
                let k = k_func(d, MVariant::General, e, 0).unwrap().abs();
                assert!(k <= prev + 1e-15, "n={n} eta={e}");
                prev = k;
            }
        }
    }

    #[test]
    fn n3_identities() {
        let d = Dimension::new(3).unwrap();
        let k = |e, x| k_func(d, MVariant::General, e, x).unwrap();
        assert!((k(1, 1) + k(2, 0) + 1.0 - 4.0 * k(1, 0).powi(2)).abs() <= 1e-10);
        assert!((1.0 - k(2, 0) - 3f64.sqrt() * k(1, 1)).abs() <= 1e-10);
    }
}
