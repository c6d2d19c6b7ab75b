//! Warp functions φ(r) and the scalar geometry derived from them.
//!
//! The admissible warps are smooth odd functions with φ(0) = 0, φ'(0) = 1,
//! strictly positive on (0, ∞), with φ'/φ bounded away from the origin and
//! φ bounded below on r ≥ 1. The weight σ = r/φ satisfies
//! σ'/σ = 1/r − φ'/φ, and the radial potential picked up by the weighted
//! spinor substitution is V_k(r) = k(1/φ − 1/r), bounded under the
//! assumptions above.

use crate::RadialGrid;
use serde::{Deserialize, Serialize};

/// Evaluation below this radius switches to the series limits forced by the
/// admissibility assumptions (σ → 1, σ'/σ → 0, V → 0): φ = r + O(r³) makes
/// the direct quotients 0/0-prone there.
pub const R_SERIES: f64 = 1e-6;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ManifoldError {
    #[error("warp evaluates to a non-finite value at r = {r}")]
    NonFinite { r: f64 },
    #[error("warp vanishes at r = {r} > 0; geometry undefined there")]
    ZeroWarp { r: f64 },
    #[error("radius must be positive, got r = {r}")]
    NonPositiveRadius { r: f64 },
    #[error("potential index k must be nonzero")]
    ZeroK,
}

/// A warp function with analytically supplied derivatives.
///
/// Derivatives come with the warp rather than from differencing: the
/// potential and the curvatures hinge on cancellations near r = 0 that
/// finite differences cannot resolve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Warp {
    /// φ = r: Euclidean space.
    Flat,
    /// φ = sinh r: hyperbolic space, R_h = −6.
    Hyperbolic,
    /// φ = r + r³/(1 + r²): conical growth, φ/r → 2.
    Conical,
    /// φ = sin r: the unit 3-sphere chart. Fails positivity at r = π and is
    /// kept only as a curvature oracle (R_h = +6).
    SinTest,
    /// φ = Σ c_p r^(2p+1), odd polynomial loaded from configuration.
    OddPolynomial { coeffs: Vec<f64> },
}

impl Warp {
    pub fn phi(&self, r: f64) -> f64 {
        match self {
            Warp::Flat => r,
            Warp::Hyperbolic => r.sinh(),
            Warp::Conical => r + r.powi(3) / (1.0 + r * r),
            Warp::SinTest => r.sin(),
            Warp::OddPolynomial { coeffs } => {
                let r2 = r * r;
                let mut acc = 0.0;
                for &c in coeffs.iter().rev() {
                    acc = acc * r2 + c;
                }
                acc * r
            }
        }
    }

    pub fn dphi(&self, r: f64) -> f64 {
        match self {
            Warp::Flat => 1.0,
            Warp::Hyperbolic => r.cosh(),
            Warp::Conical => {
                let d = 1.0 + r * r;
                1.0 + (3.0 * r * r + r.powi(4)) / (d * d)
            }
            Warp::SinTest => r.cos(),
            Warp::OddPolynomial { coeffs } => {
                let r2 = r * r;
                let mut acc = 0.0;
                for (p, &c) in coeffs.iter().enumerate().rev() {
                    acc += (2 * p + 1) as f64 * c * r2.powi(p as i32);
                }
                acc
            }
        }
    }

    pub fn d2phi(&self, r: f64) -> f64 {
        match self {
            Warp::Flat => 0.0,
            Warp::Hyperbolic => r.sinh(),
            Warp::Conical => {
                let d = 1.0 + r * r;
                (6.0 * r - 2.0 * r.powi(3)) / d.powi(3)
            }
            Warp::SinTest => -r.sin(),
            Warp::OddPolynomial { coeffs } => {
                let mut acc = 0.0;
                for (p, &c) in coeffs.iter().enumerate().skip(1) {
                    let e = (2 * p + 1) as f64;
                    acc += e * (e - 1.0) * c * r.powi(2 * p as i32 - 1);
                }
                acc
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Warp::Flat => "flat".into(),
            Warp::Hyperbolic => "hyperbolic".into(),
            Warp::Conical => "conical".into(),
            Warp::SinTest => "sin".into(),
            Warp::OddPolynomial { .. } => "odd_polynomial".into(),
        }
    }

    /// Whether this warp is expected to satisfy the admissibility assumptions.
    pub fn a1_expected(&self) -> bool {
        !matches!(self, Warp::SinTest)
    }

    fn checked_phi(&self, r: f64) -> Result<f64, ManifoldError> {
        if r <= 0.0 {
            return Err(ManifoldError::NonPositiveRadius { r });
        }
        let p = self.phi(r);
        if !p.is_finite() {
            return Err(ManifoldError::NonFinite { r });
        }
        if p == 0.0 {
            return Err(ManifoldError::ZeroWarp { r });
        }
        Ok(p)
    }
}

/// The built-in warps: flat, hyperbolic, conical growth, and the sin chart
/// kept as a non-admissible curvature oracle.
pub fn builtin_warps() -> Vec<Warp> {
    vec![Warp::Flat, Warp::Hyperbolic, Warp::Conical, Warp::SinTest]
}

pub fn warp_by_name(name: &str) -> Option<Warp> {
    match name {
        "flat" => Some(Warp::Flat),
        "hyperbolic" => Some(Warp::Hyperbolic),
        "conical" => Some(Warp::Conical),
        "sin" => Some(Warp::SinTest),
        _ => None,
    }
}

/// σ(r) = r/φ(r) and its logarithmic derivative σ'/σ = 1/r − φ'/φ.
pub fn sigma_weight(warp: &Warp, r: f64) -> Result<(f64, f64), ManifoldError> {
    if r <= 0.0 {
        return Err(ManifoldError::NonPositiveRadius { r });
    }
    if r < R_SERIES {
        return Ok((1.0, 0.0));
    }
    let phi = warp.checked_phi(r)?;
    let sigma = r / phi;
    let logderiv = 1.0 / r - warp.dphi(r) / phi;
    Ok((sigma, logderiv))
}

/// The weighted-spinor potential V_k(r) = k(1/φ − 1/r); extends by 0 at the
/// origin since φ = r + o(r²).
pub fn potential(warp: &Warp, k: i32, r: f64) -> Result<f64, ManifoldError> {
    if k == 0 {
        return Err(ManifoldError::ZeroK);
    }
    if r <= 0.0 {
        return Err(ManifoldError::NonPositiveRadius { r });
    }
    if r < R_SERIES {
        return Ok(0.0);
    }
    let phi = warp.checked_phi(r)?;
    Ok(k as f64 * (1.0 / phi - 1.0 / r))
}

/// Sectional curvatures and the scalar curvature of the spatial slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curvatures {
    /// Tangential sectional curvature (1 − φ'²)/φ².
    pub sec_tan: f64,
    /// Radial sectional curvature −φ''/φ.
    pub sec_rad: f64,
    /// Scalar curvature 2(2·sec_rad + sec_tan).
    pub scalar: f64,
}

pub fn curvatures(warp: &Warp, r: f64) -> Result<Curvatures, ManifoldError> {
    let phi = warp.checked_phi(r)?;
    let dp = warp.dphi(r);
    let sec_tan = (1.0 - dp * dp) / (phi * phi);
    let sec_rad = -warp.d2phi(r) / phi;
    Ok(Curvatures {
        sec_tan,
        sec_rad,
        scalar: 2.0 * (2.0 * sec_rad + sec_tan),
    })
}

/// Result of checking the admissibility assumptions on a grid.
#[derive(Debug, Clone)]
pub struct AssumptionReport {
    pub passed: bool,
    /// sup over grid nodes r ≥ 1 of |φ'/φ|.
    pub sup_log_derivative: f64,
    /// inf over grid nodes r ≥ 1 of φ.
    pub inf_phi_tail: f64,
    /// sup over grid nodes of |R_h|.
    pub curvature_bound: f64,
    /// inf over grid nodes of φ/r.
    pub inf_phi_over_r: f64,
    pub diagnostics: Vec<String>,
}

/// Caps that make "bounded" checkable on a finite grid.
const LOG_DERIVATIVE_CAP: f64 = 100.0;
const CURVATURE_CAP: f64 = 1000.0;

/// Checks positivity, φ(0) = 0, φ'(0) = 1, boundedness of φ'/φ on r ≥ 1, the
/// tail infimum of φ, and boundedness of the scalar curvature.
///
/// The log-derivative bound is enforced only on r ≥ 1: near the origin
/// φ ~ r forces φ'/φ ~ 1/r, so a global bound would exclude even the flat
/// warp.
pub fn check_assumptions(
    warp: &Warp,
    grid: &RadialGrid,
    tol: f64,
) -> Result<AssumptionReport, ManifoldError> {
    assert!(!grid.is_empty());
    let mut diagnostics = Vec::new();
    let mut passed = true;
    let fail = |diag: &mut Vec<String>, ok: &mut bool, msg: String| {
        diag.push(format!("FAIL: {msg}"));
        *ok = false;
    };

    // Positivity on the whole grid.
    for r in grid.nodes() {
        let p = warp.phi(r);
        if !p.is_finite() {
            return Err(ManifoldError::NonFinite { r });
        }
        if p <= 0.0 {
            fail(
                &mut diagnostics,
                &mut passed,
                format!("phi({r}) = {p} is not strictly positive"),
            );
            break;
        }
    }

    // φ(0) = 0 and φ'(0) = 1, by extrapolation toward the origin.
    let r1 = 1e-4;
    let r2 = 2e-4;
    let dp0 = warp.dphi(r1) - r1 * (warp.dphi(r2) - warp.dphi(r1)) / (r2 - r1);
    if (dp0 - 1.0).abs() > tol.max(1e-6) {
        fail(
            &mut diagnostics,
            &mut passed,
            format!("phi'(0) extrapolates to {dp0}, expected 1"),
        );
    }
    let p0 = warp.phi(r1) - r1 * (warp.phi(r2) - warp.phi(r1)) / (r2 - r1);
    if p0.abs() > tol.max(1e-6) {
        fail(
            &mut diagnostics,
            &mut passed,
            format!("phi(0) extrapolates to {p0}, expected 0"),
        );
    }

    let mut sup_log_derivative = f64::NEG_INFINITY;
    let mut inf_phi_tail = f64::INFINITY;
    let mut curvature_bound: f64 = 0.0;
    let mut inf_phi_over_r = f64::INFINITY;
    for r in grid.nodes() {
        let p = warp.phi(r);
        if p > 0.0 {
            if r >= 1.0 {
                sup_log_derivative = sup_log_derivative.max((warp.dphi(r) / p).abs());
                inf_phi_tail = inf_phi_tail.min(p);
            }
            inf_phi_over_r = inf_phi_over_r.min(p / r);
            if let Ok(c) = curvatures(warp, r) {
                curvature_bound = curvature_bound.max(c.scalar.abs());
            }
        }
    }
    if grid.r_max() < 1.0 {
        diagnostics.push("grid does not reach r = 1; tail checks vacuous".into());
        sup_log_derivative = 0.0;
        inf_phi_tail = 0.0;
    }

    if sup_log_derivative > LOG_DERIVATIVE_CAP {
        fail(
            &mut diagnostics,
            &mut passed,
            format!("sup |phi'/phi| on r >= 1 is {sup_log_derivative}, above cap {LOG_DERIVATIVE_CAP}"),
        );
    }
    if grid.r_max() >= 1.0 && inf_phi_tail <= tol {
        fail(
            &mut diagnostics,
            &mut passed,
            format!("inf phi on r >= 1 is {inf_phi_tail}, not bounded away from zero"),
        );
    }
    if curvature_bound > CURVATURE_CAP {
        fail(
            &mut diagnostics,
            &mut passed,
            format!("sup |R_h| = {curvature_bound} exceeds cap {CURVATURE_CAP}"),
        );
    }
    if passed {
        diagnostics.push("all checks passed".into());
    }

    Ok(AssumptionReport {
        passed,
        sup_log_derivative,
        inf_phi_tail,
        curvature_bound,
        inf_phi_over_r,
        diagnostics,
    })
}

/// sup over grid nodes of |1/φ − 1/r|, the grid bound behind the potential
/// operator norm |k|·sup|1/φ − 1/r|.
pub fn potential_sup(warp: &Warp, grid: &RadialGrid) -> Result<f64, ManifoldError> {
    let mut sup: f64 = 0.0;
    for r in grid.nodes() {
        sup = sup.max(potential(warp, 1, r)?.abs());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid() -> RadialGrid {
        RadialGrid::new(512, 0.02)
    }

    #[test]
    fn builtin_values() {
        assert_eq!(Warp::Flat.phi(2.0), 2.0);
        assert_relative_eq!(Warp::Hyperbolic.phi(1.0), 1.0_f64.sinh(), epsilon = 1e-15);
        assert!(!Warp::SinTest.a1_expected());
    }

    #[test]
    fn flat_passes_with_unit_log_derivative() {
        let rep = check_assumptions(&Warp::Flat, &grid(), 1e-8).unwrap();
        assert!(rep.passed, "{:?}", rep.diagnostics);
        // sup on r >= 1 of 1/r is attained at the first node >= 1.
        let r_first = grid().nodes().find(|&r| r >= 1.0).unwrap();
        assert_relative_eq!(rep.sup_log_derivative, 1.0 / r_first, epsilon = 1e-12);
        assert!(rep.sup_log_derivative <= 1.0);
    }

    #[test]
    fn hyperbolic_passes_with_coth_sup() {
        let rep = check_assumptions(&Warp::Hyperbolic, &grid(), 1e-8).unwrap();
        assert!(rep.passed);
        // coth is decreasing, so the sup sits at the first node past 1.
        let r_first = grid().nodes().find(|&r| r >= 1.0).unwrap();
        assert_relative_eq!(
            rep.sup_log_derivative,
            1.0 / r_first.tanh(),
            epsilon = 1e-12
        );
        assert_relative_eq!(rep.sup_log_derivative, 1.3130, epsilon = 2e-2);
    }

    #[test]
    fn quadratic_warp_fails_slope_check() {
        let warp = Warp::OddPolynomial {
            coeffs: vec![0.0, 1.0],
        };
        // phi = r^3 here: phi'(0) = 0 != 1.
        let rep = check_assumptions(&warp, &grid(), 1e-8).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn sin_warp_fails_positivity() {
        let rep = check_assumptions(&Warp::SinTest, &grid(), 1e-8).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn sigma_values() {
        let (s, ld) = sigma_weight(&Warp::Flat, 3.7).unwrap();
        assert_eq!((s, ld), (1.0, 0.0));
        let (s, _) = sigma_weight(&Warp::Hyperbolic, 1.0).unwrap();
        assert_relative_eq!(s, 1.0 / 1.0_f64.sinh(), epsilon = 1e-15);
        assert_relative_eq!(s, 0.8509, epsilon = 1e-4);
        // Laurent expansion: 1/r - coth r -> 0 as r -> 0.
        let (_, ld) = sigma_weight(&Warp::Hyperbolic, 1e-5).unwrap();
        assert!(ld.abs() < 1e-4);
        let (s, ld) = sigma_weight(&Warp::Hyperbolic, 1e-8).unwrap();
        assert_eq!((s, ld), (1.0, 0.0));
    }

    #[test]
    fn sigma_log_derivative_matches_finite_differences() {
        let warp = Warp::Conical;
        let h = 1e-5;
        for r in [0.5, 1.0, 2.5, 7.0] {
            let (_, ld) = sigma_weight(&warp, r).unwrap();
            let sp = sigma_weight(&warp, r + h).unwrap().0.ln();
            let sm = sigma_weight(&warp, r - h).unwrap().0.ln();
            assert_relative_eq!(ld, (sp - sm) / (2.0 * h), epsilon = 1e-7, max_relative = 1e-6);
        }
    }

    #[test]
    fn potential_values_and_linearity() {
        assert_eq!(potential(&Warp::Flat, 3, 1.7).unwrap(), 0.0);
        let v = potential(&Warp::Hyperbolic, 1, 1.0).unwrap();
        assert_relative_eq!(v, 1.0 / 1.0_f64.sinh() - 1.0, epsilon = 1e-15);
        assert_relative_eq!(v, -0.1491, epsilon = 1e-4);
        let v2 = potential(&Warp::Hyperbolic, -2, 1.0).unwrap();
        assert_eq!(v2, -2.0 * v);
        assert!(potential(&Warp::Flat, 0, 1.0).is_err());
    }

    #[test]
    fn potential_bounded_on_grid() {
        for warp in [Warp::Flat, Warp::Hyperbolic, Warp::Conical] {
            let sup = potential_sup(&warp, &grid()).unwrap();
            assert!(sup.is_finite());
            for r in grid().nodes() {
                let v = potential(&warp, -5, r).unwrap();
                assert!(v.abs() <= 5.0 * sup + 1e-15);
            }
        }
    }

    #[test]
    fn curvature_oracles() {
        let flat = curvatures(&Warp::Flat, 2.0).unwrap();
        assert_eq!((flat.sec_tan, flat.sec_rad, flat.scalar), (0.0, 0.0, 0.0));
        // Unit 3-sphere: R_h = 6 on (0, pi); hyperbolic space: R_h = -6.
        for r in [0.3, 1.0, 2.8] {
            let c = curvatures(&Warp::SinTest, r).unwrap();
            assert_relative_eq!(c.scalar, 6.0, epsilon = 1e-9);
            let c = curvatures(&Warp::Hyperbolic, r).unwrap();
            assert_relative_eq!(c.scalar, -6.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn curvature_matches_finite_difference_second_derivative() {
        let warp = Warp::Conical;
        let h = 1e-4;
        for r in [0.7, 1.9, 4.2] {
            let d2 = (warp.phi(r + h) - 2.0 * warp.phi(r) + warp.phi(r - h)) / (h * h);
            let c = curvatures(&warp, r).unwrap();
            assert_relative_eq!(c.sec_rad, -d2 / warp.phi(r), epsilon = 1e-6, max_relative = 1e-5);
        }
    }
}
