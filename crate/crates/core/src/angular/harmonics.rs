//! Orthonormal complex spherical harmonics with the Condon–Shortley phase,
//! their θ-derivatives, and Gauss–Legendre quadrature nodes.

use crate::C64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HarmonicError {
    #[error("order |m| = {m} exceeds degree l = {l}")]
    OrderOutOfRange { l: u32, m: i32 },
}

/// Normalized associated Legendre value
/// P̄_l^m(x) = sqrt((2l+1)/(4π)·(l−m)!/(l+m)!)·P_l^m(x) for m ≥ 0, including
/// the Condon–Shortley (−1)^m.
fn normalized_legendre(l: u32, m: u32, x: f64) -> f64 {
    debug_assert!(m <= l);
    let sin_part = (1.0 - x * x).max(0.0).sqrt();
    // P̄_m^m by upward recursion in m.
    let mut pmm = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt() * sin_part;
    }
    if l == m {
        return pmm;
    }
    // P̄_{m+1}^m.
    let mut p_prev = pmm;
    let mut p_curr = x * ((2 * m + 3) as f64).sqrt() * pmm;
    if l == m + 1 {
        return p_curr;
    }
    for ll in (m + 2)..=l {
        let lf = ll as f64;
        let mf = m as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0)).sqrt();
        let p_next = a * (x * p_curr - b * p_prev);
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

/// Y_{l,m}(θ, φ) in the orthonormal convention on L²(S², dω).
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<C64, HarmonicError> {
    if m.unsigned_abs() > l {
        return Err(HarmonicError::OrderOutOfRange { l, m });
    }
    let x = theta.cos();
    let mag = normalized_legendre(l, m.unsigned_abs(), x);
    let phase = C64::from_polar(1.0, m.abs() as f64 * phi);
    Ok(if m >= 0 {
        mag * phase
    } else {
        // Y_{l,−m} = (−1)^m · conj(Y_{l,m}).
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * mag * phase.conj()
    })
}

/// ∂_θ Y_{l,m} through the ladder identity
/// ∂_θ Y_{l,m} = m·cotθ·Y_{l,m} + sqrt((l−m)(l+m+1))·e^{−iφ}·Y_{l,m+1}.
pub fn spherical_harmonic_dtheta(
    l: u32,
    m: i32,
    theta: f64,
    phi: f64,
) -> Result<C64, HarmonicError> {
    if m.unsigned_abs() > l {
        return Err(HarmonicError::OrderOutOfRange { l, m });
    }
    let cot = theta.cos() / theta.sin();
    let mut out = m as f64 * cot * spherical_harmonic(l, m, theta, phi)?;
    if m < l as i32 {
        let lf = l as f64;
        let mf = m as f64;
        let coeff = ((lf - mf) * (lf + mf + 1.0)).sqrt();
        out += coeff * C64::from_polar(1.0, -phi) * spherical_harmonic(l, m + 1, theta, phi)?;
    }
    Ok(out)
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn low_order_closed_forms() {
        let y00 = spherical_harmonic(0, 0, 1.1, 0.3).unwrap();
        assert_relative_eq!(y00.re, 0.5 / PI.sqrt(), epsilon = 1e-14);
        assert_eq!(y00.im, 0.0);
        for (theta, phi) in [(0.4, 1.2), (2.2, 4.9)] {
            let y10 = spherical_harmonic(1, 0, theta, phi).unwrap();
            assert_relative_eq!(y10.re, (3.0 / (4.0 * PI)).sqrt() * theta.cos(), epsilon = 1e-14);
            let y11 = spherical_harmonic(1, 1, theta, phi).unwrap();
            let expect = -(3.0 / (8.0 * PI)).sqrt() * theta.sin();
            assert_relative_eq!(y11.re, expect * phi.cos(), epsilon = 1e-14);
            assert_relative_eq!(y11.im, expect * phi.sin(), epsilon = 1e-14);
        }
        assert!(spherical_harmonic(1, 2, 0.5, 0.5).is_err());
    }

    #[test]
    fn negative_order_symmetry() {
        let (theta, phi) = (0.9, 2.4);
        for l in 1..6u32 {
            for m in 1..=l as i32 {
                let yp = spherical_harmonic(l, m, theta, phi).unwrap();
                let yn = spherical_harmonic(l, -m, theta, phi).unwrap();
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((yn - sign * yp.conj()).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn dtheta_matches_finite_differences() {
        let h = 1e-6;
        for (l, m) in [(1u32, 0i32), (2, 1), (3, -2), (5, 5), (4, -4)] {
            for (theta, phi) in [(0.7, 0.9), (1.8, 3.3)] {
                let d = spherical_harmonic_dtheta(l, m, theta, phi).unwrap();
                let fd = (spherical_harmonic(l, m, theta + h, phi).unwrap()
                    - spherical_harmonic(l, m, theta - h, phi).unwrap())
                    / (2.0 * h);
                assert!((d - fd).norm() < 1e-8, "l={l} m={m}: {d} vs {fd}");
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(6);
        // Exact for degree <= 11.
        for p in 0..12u32 {
            let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(p as i32)).sum();
            let expect = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
            assert_relative_eq!(got, expect, epsilon = 1e-13);
        }
    }
}
