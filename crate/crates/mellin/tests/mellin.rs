use std::f64::consts::PI;

use mellin::{
    finite_part, mellin_z, mellin_z_with_depth, minimal_depth, pole_scan, tanh_sinh,
    verify_qm_identity, MellinError, Method, RadialProfile,
};
use num_complex::Complex64;
use proptest::prelude::*;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Γ(x) for x a positive or negative multiple of 1/2, from Γ(1) = 1,
/// Γ(1/2) = √π and the recurrence Γ(x+1) = xΓ(x).
fn gamma_half_integer(x: f64) -> f64 {
    let twice = (2.0 * x).round() as i64;
    assert!((2.0 * x - twice as f64).abs() < 1e-12);
    let (mut value, mut at) = if twice % 2 == 0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while at < x - 1e-12 {
        value *= at;
        at += 1.0;
    }
    while at > x + 1e-12 {
        at -= 1.0;
        value /= at;
    }
    value
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(b.abs())
}

#[test]
fn gamma_oracle_at_regular_points() {
    let h = RadialProfile::exponential();
    let z0 = mellin_z(&h, c(0.0, 0.0), 4).unwrap();
    assert!((z0.value.re - 6.0).abs() < 1e-8, "{z0:?}");
    assert_eq!(z0.method, Method::Direct);
    let z1 = mellin_z(&h, c(1.0, 0.0), 4).unwrap();
    assert!((z1.value.re - 120.0).abs() < 1e-8, "{z1:?}");
    for s in [-0.25, -1.75, -2.25, -3.25, -3.75, -4.25, 0.75] {
        let z = mellin_z(&h, c(s, 0.0), 4).unwrap();
        let expected = gamma_half_integer(2.0 * s + 4.0);
        assert!(close(z.value.re, expected, 1e-8), "s = {s}: {} vs {expected}", z.value.re);
        assert!(z.value.im.abs() < 1e-12);
    }
    let z = mellin_z(&h, c(-2.25, 0.0), 4).unwrap();
    assert_eq!(z.method, Method::Ibp { depth: 2 });
}

#[test]
fn gamma_recurrence_off_the_real_axis() {
    let h = RadialProfile::exponential();
    for s in [c(-2.3, 0.4), c(-0.7, -1.1), c(0.3, 2.0), c(-3.6, 0.05)] {
        let z = mellin_z(&h, s, 4).unwrap().value;
        let shifted = mellin_z(&h, s + 0.5, 4).unwrap().value;
        let expected = z * (s * 2.0 + 4.0);
        assert!((shifted - expected).norm() < 1e-8 * expected.norm().max(1.0));
        let conj = mellin_z(&h, s.conj(), 4).unwrap().value;
        assert!((conj - z.conj()).norm() < 1e-10 * z.norm().max(1.0));
    }
}

#[test]
fn normalized_bump_has_unit_moment() {
    let h = RadialProfile::normalized_bump();
    let z = mellin_z(&h, c(0.0, 0.0), 4).unwrap();
    assert!((z.value.re - 1.0).abs() < 1e-6);
}

#[test]
fn finite_part_of_the_exponential() {
    let h = RadialProfile::exponential();
    let fp = finite_part(&h, 2, 4).unwrap();
    assert!((fp.value + EULER_GAMMA).abs() < 1e-6, "{fp:?}");
    assert!((fp.pole_coefficient - 0.5).abs() < 1e-6);
    assert!(fp.order_two_coefficient < 1e-6);
    assert!(!fp.flagged);

    let regular = finite_part(&h, 1, 4).unwrap();
    assert!((regular.value - 1.0).abs() < 1e-8, "{regular:?}");
    assert!(regular.pole_coefficient.abs() < 1e-9);

    let zero = finite_part(&h, 0, 4).unwrap();
    assert!((zero.value - 6.0).abs() < 1e-8);
    assert!(zero.pole_coefficient.abs() < 1e-9);

    let n6 = finite_part(&h, 3, 6).unwrap();
    assert!((n6.value + EULER_GAMMA).abs() < 1e-6);
    assert!((n6.pole_coefficient - 0.5).abs() < 1e-6);
}

#[test]
fn qm_identity_on_the_acceptance_grid() {
    for h in [RadialProfile::bump(), RadialProfile::exponential(), RadialProfile::poly_bump()] {
        for n in [4, 6] {
            for m in 0..=3 {
                let report = verify_qm_identity(&h, m, n).unwrap();
                assert!(report.residual < 1e-6, "{h} N={n} M={m}: {report:?}");
                assert!(!report.finite_part.flagged);
            }
        }
    }
}

#[test]
fn exponential_poles_between_minus_four_and_zero() {
    let poles = pole_scan(&RadialProfile::exponential(), 4, -4.0, 0.0).unwrap();
    let locations: Vec<f64> = poles.iter().map(|p| p.location).collect();
    assert_eq!(locations, vec![-2.0, -2.5, -3.0, -3.5]);
    let mut factorial = 1.0;
    for (k, p) in poles.iter().enumerate() {
        if k > 0 {
            factorial *= k as f64;
        }
        assert_eq!(p.order, 1);
        assert!(p.admissible);
        let residue = if k % 2 == 0 { 0.5 } else { -0.5 } / factorial;
        assert!((p.coefficient - residue).abs() < 1e-6, "{p:?}");
    }
}

#[test]
fn bump_poles_skip_odd_derivatives() {
    let poles = pole_scan(&RadialProfile::bump(), 4, -4.0, 0.0).unwrap();
    assert!(poles.iter().all(|p| p.admissible && p.order == 1));
    let locations: Vec<f64> = poles.iter().map(|p| p.location).collect();
    assert_eq!(locations, vec![-2.0, -3.0]);
    let h0 = (-1.0f64).exp();
    assert!((poles[0].coefficient - h0 / 2.0).abs() < 1e-7);
}

#[test]
fn convergent_half_plane_has_no_poles() {
    for n in [2, 4, 6] {
        let half = -(n as f64) / 2.0;
        for h in [RadialProfile::bump(), RadialProfile::exponential()] {
            assert!(pole_scan(&h, n, half, f64::INFINITY).unwrap().is_empty());
        }
    }
}

#[test]
fn errors_are_reported() {
    let h = RadialProfile::exponential();
    assert_eq!(mellin_z(&h, c(0.0, 0.0), 5), Err(MellinError::InvalidDimension(5)));
    assert!(matches!(
        mellin_z(&h, c(-2.0, 0.0), 4),
        Err(MellinError::PoleProximity { excluded: -1, .. })
    ));
    assert!(matches!(
        mellin_z_with_depth(&h, c(-2.5, 0.0), 4, 1),
        Err(MellinError::DepthTooSmall { .. })
    ));
    assert!(pole_scan(&h, 4, 0.0, -1.0).is_err());
    assert!("gaussian".parse::<mellin::ProfileFamily>().is_err());
}

#[test]
fn quadrature_resolves_endpoint_singularities() {
    let r = tanh_sinh(|x| c(x.powf(-0.5), 0.0), 1.0, 1e-12);
    assert!((r.value.re - 2.0).abs() < 1e-10);
    let a = c(0.3, 1.7);
    let r = tanh_sinh(|x| (a * x.ln()).exp(), 2.0, 1e-12);
    let exact = (a * 2f64.ln()).exp() * 2.0 / (a + 1.0);
    assert!((r.value - exact).norm() < 1e-10);
}

/// Derivatives of the bump from the recurrence
/// `h^{(k)} = P_k(r)·(1−r²)^{−2k}·h`,
/// `P_{k+1} = P_k'(1−r²)² + 4kr(1−r²)P_k − 2rP_k`.
fn bump_derivative_oracle(k: usize, r: f64) -> f64 {
    let mut p: Vec<f64> = vec![1.0];
    for j in 0..k {
        let mut next = vec![0.0; p.len() + 3];
        let one_minus_sq = [1.0, 0.0, -1.0];
        let sq = [1.0, 0.0, -2.0, 0.0, 1.0];
        for (i, &a) in p.iter().enumerate().skip(1) {
            for (l, &b) in sq.iter().enumerate() {
                next[i - 1 + l] += i as f64 * a * b;
            }
        }
        for (i, &a) in p.iter().enumerate() {
            for (l, &b) in one_minus_sq.iter().enumerate() {
                next[i + 1 + l] += 4.0 * j as f64 * a * b;
            }
            next[i + 1] -= 2.0 * a;
        }
        p = next;
    }
    let poly: f64 = p.iter().rev().fold(0.0, |acc, &a| acc * r + a);
    let q = 1.0 - r * r;
    poly * q.powi(-2 * k as i32) * (-1.0 / q).exp()
}

#[test]
fn profile_derivatives_match_closed_forms() {
    let bump = RadialProfile::bump();
    let exp = RadialProfile::exponential();
    let poly = RadialProfile::poly_bump();
    for &r in &[0.0, 0.1, 0.37, 0.5, 0.8, 0.95] {
        for k in 0..=7 {
            let oracle = bump_derivative_oracle(k, r);
            assert!(close(bump.derivative(k, r), oracle, 1e-9), "k={k} r={r}");
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!(close(exp.derivative(k, r), sign * (-r).exp(), 1e-12));
            let expected = (1.0 + r) * oracle
                + if k > 0 { k as f64 * bump_derivative_oracle(k - 1, r) } else { 0.0 };
            assert!(close(poly.derivative(k, r), expected, 1e-9));
        }
    }
    assert_eq!(bump.value(1.0), 0.0);
    assert_eq!(bump.derivative(3, 1.5), 0.0);
    let weighted = exp.times_q_power(2);
    assert!(close(weighted.derivative(1, 0.7), (4.0 * 0.7f64.powi(3) - 0.7f64.powi(4)) * (-0.7f64).exp(), 1e-12));
}

fn sample_s() -> impl Strategy<Value = Complex64> {
    (-3.9f64..1.0, -1.0f64..1.0).prop_filter_map("away from poles", |(re, im)| {
        let s = c(re, im);
        let near_pole = (0..12).any(|k| (s + (2.0 + k as f64 / 2.0)).norm() < 0.05);
        (!near_pole).then_some(s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn shift_identity(s in sample_s(), m in 0u32..=3, bump in any::<bool>()) {
        let h = if bump { RadialProfile::bump() } else { RadialProfile::exponential() };
        let lhs = mellin_z(&h.times_q_power(m), s, 4).unwrap().value;
        let rhs = mellin_z(&h, s + m as f64, 4).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn depths_agree(s in sample_s(), bump in any::<bool>()) {
        let h = if bump { RadialProfile::bump() } else { RadialProfile::exponential() };
        let p = minimal_depth(s, 4);
        let a = mellin_z_with_depth(&h, s, 4, p).unwrap().value;
        let b = mellin_z_with_depth(&h, s, 4, p + 1).unwrap().value;
        prop_assert!((a - b).norm() <= 1e-8 * a.norm().max(1.0), "{a} vs {b}");
        if p > 0 && 2.0 * s.re + 3.0 + (p as f64 - 1.0) > -0.5 {
            let d = mellin_z_with_depth(&h, s, 4, p - 1).unwrap().value;
            prop_assert!((a - d).norm() <= 1e-8 * a.norm().max(1.0), "{a} vs {d}");
        }
    }
}
