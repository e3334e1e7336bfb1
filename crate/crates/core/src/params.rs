//! Binding of the user-facing model parameters (vertex count, target average
//! degree, power-law exponent) to the disk geometry (dispersion and radius).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Curvature constant. Fixing it to 1 loses no freedom in the model.
pub const ZETA: f64 = 1.0;

/// Relative tolerance of the radius search on the average degree.
pub const CALIBRATION_TOLERANCE: f64 = 1e-6;

const MAX_BISECTION_STEPS: usize = 100;
const BRACKET_SCAN_STEPS: usize = 4096;

/// Dispersion `α = (γ − 1) / 2` of the radial density.
pub fn alpha_from_gamma(gamma: f64) -> Result<f64> {
    if !(gamma > 2.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "power-law exponent must be finite and > 2, got {gamma}"
        )));
    }
    Ok((gamma - 1.0) / 2.0)
}

/// Asymptotic expected average degree of a threshold graph with `n` vertices
/// in a disk of radius `radius`:
///
/// ```text
/// k̄ = (2/π) ξ² n ( e^{−ζR/2} + e^{−αR} ( (αR/2) ( (π/4)(ζ/α)² − (π−1)(ζ/α) + (π−2) ) − 1 ) )
/// ```
///
/// with `ξ = (α/ζ) / (α/ζ − 1/2)`. The squared term is `(ζ/α)²`, which is what
/// the underlying integral produces; the realized-degree tests confirm it.
pub fn expected_avg_degree(n: u64, alpha: f64, radius: f64) -> f64 {
    let a = alpha / ZETA;
    let xi = a / (a - 0.5);
    let inv = ZETA / alpha;
    let poly = (PI / 4.0) * inv * inv - (PI - 1.0) * inv + (PI - 2.0);
    let first = (-ZETA * radius / 2.0).exp();
    let second = (-alpha * radius).exp() * (alpha * radius / 2.0 * poly - 1.0);
    (2.0 / PI) * xi * xi * n as f64 * (first + second)
}

/// Search interval for the disk radius.
pub fn radius_search_bounds(n: u64) -> (f64, f64) {
    (1e-3, 10.0 * (n as f64).ln() + 50.0)
}

/// Disk radius whose expected average degree is `k_bar`.
///
/// The degree formula vanishes at `R = 0`, peaks, then decays, so the search
/// walks down from the upper bound until it first reaches `k_bar` and bisects
/// inside that step. This keeps the solution on the decreasing branch.
pub fn get_target_radius(n: u64, k_bar: f64, alpha: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if !(k_bar > 0.0) || k_bar >= (n - 1) as f64 {
        return Err(Error::InvalidParameter(format!(
            "average degree must lie in (0, n-1) = (0, {}), got {k_bar}",
            n - 1
        )));
    }
    if !(alpha > 0.5) {
        return Err(Error::InvalidParameter(format!(
            "dispersion must be > 1/2, got {alpha}"
        )));
    }
    let fail = |reason: &str| Error::Calibration {
        n,
        k_bar,
        alpha,
        reason: reason.to_string(),
    };
    let f = |r: f64| expected_avg_degree(n, alpha, r) - k_bar;

    let (lo, hi) = radius_search_bounds(n);
    if f(hi) >= 0.0 {
        return Err(fail("degree target below the formula's range"));
    }
    let step = (hi - lo) / BRACKET_SCAN_STEPS as f64;
    let mut outer = hi;
    let mut inner = None;
    for i in 1..=BRACKET_SCAN_STEPS {
        let r = (hi - step * i as f64).max(lo);
        if f(r) >= 0.0 {
            inner = Some(r);
            break;
        }
        outer = r;
    }
    let mut inner = inner.ok_or_else(|| fail("no bracketing interval; degree target too large"))?;

    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (inner + outer);
        let value = f(mid);
        if value.abs() <= CALIBRATION_TOLERANCE * k_bar {
            return Ok(mid);
        }
        if value > 0.0 {
            inner = mid;
        } else {
            outer = mid;
        }
    }
    Err(fail("bisection did not converge"))
}

/// How the disk radius is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RadiusSpec {
    /// Calibrate `R` so the expected average degree matches.
    AvgDegree(f64),
    /// `R = 2 ln n + C`.
    DiskConstant(f64),
    /// Use `R` as given.
    Radius(f64),
}

/// Model parameters tying graph size and density to the disk geometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskParameters {
    n: u64,
    gamma: f64,
    alpha: f64,
    k_bar: f64,
    radius: f64,
}

impl DiskParameters {
    /// Parameters from a power-law exponent.
    pub fn new(n: u64, gamma: f64, spec: RadiusSpec) -> Result<Self> {
        Self::with_alpha(n, alpha_from_gamma(gamma)?, spec)
    }

    /// Parameters from the dispersion directly.
    pub fn with_alpha(n: u64, alpha: f64, spec: RadiusSpec) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("need at least one vertex".into()));
        }
        if !(alpha > 0.5) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "dispersion must be finite and > 1/2, got {alpha}"
            )));
        }
        let (radius, k_bar) = match spec {
            RadiusSpec::AvgDegree(k_bar) => (get_target_radius(n, k_bar, alpha)?, k_bar),
            RadiusSpec::DiskConstant(c) => {
                let r = 2.0 * (n as f64).ln() + c;
                (r, expected_avg_degree(n, alpha, r))
            }
            RadiusSpec::Radius(r) => (r, expected_avg_degree(n, alpha, r)),
        };
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "disk radius must be finite and > 0, got {radius}"
            )));
        }
        Ok(Self {
            n,
            gamma: 2.0 * alpha + 1.0,
            alpha,
            k_bar,
            radius,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Target average degree, or the formula's estimate when the radius was
    /// given directly.
    pub fn k_bar(&self) -> f64 {
        self.k_bar
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn zeta(&self) -> f64 {
        ZETA
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn alpha_values() {
        assert_eq!(alpha_from_gamma(3.0).unwrap(), 1.0);
        assert_abs_diff_eq!(alpha_from_gamma(2.2).unwrap(), 0.6, epsilon = 1e-15);
        assert!(alpha_from_gamma(2.0).is_err());
        assert!(alpha_from_gamma(f64::NAN).is_err());
    }

    #[test]
    fn degree_decreases_with_radius() {
        let mut prev = f64::INFINITY;
        let mut r = 5.0;
        while r <= 25.0 {
            let k = expected_avg_degree(10_000, 1.0, r);
            assert!(k < prev, "not decreasing at R={r}");
            prev = k;
            r += 0.05;
        }
    }

    #[test]
    fn degree_formula_reference_value() {
        // 50-digit evaluation at n = 1e4, α = 1, R = 2 ln 1e4
        let r = 2.0 * 10_000f64.ln();
        assert_abs_diff_eq!(
            expected_avg_degree(10_000, 1.0, r),
            2.545_721_115_719_359,
            epsilon = 1e-11
        );
        assert_abs_diff_eq!(
            expected_avg_degree(10_000, 0.75, 15.0),
            29.612_720_632_574_556,
            epsilon = 1e-10
        );
    }

    #[test]
    fn target_radius_is_fixed_point() {
        let r = get_target_radius(10_000, 6.0, 1.0).unwrap();
        assert!((expected_avg_degree(10_000, 1.0, r) - 6.0).abs() <= 6e-6);
        let ln = 10_000f64.ln();
        assert!((2.0 * ln - 10.0..=2.0 * ln + 10.0).contains(&r));
        // root of the formula found independently at 50 digits
        assert_abs_diff_eq!(r, 16.705_267_886_314_78, epsilon = 1e-5);
    }

    #[test]
    fn target_radius_regression_anchor() {
        // n = 1e6, k̄ = 16, α = 1; independent high-precision root 23.955222114412554
        let r = get_target_radius(1_000_000, 16.0, 1.0).unwrap();
        assert_abs_diff_eq!(r, 23.955_222_114_412_554, epsilon = 1e-5);
        assert!((expected_avg_degree(1_000_000, 1.0, r) - 16.0).abs() <= 16e-6);
    }

    #[test]
    fn target_radius_deterministic() {
        let a = get_target_radius(12_345, 7.5, 0.8).unwrap();
        let b = get_target_radius(12_345, 7.5, 0.8).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn monotone_at_bisection_probes() {
        let (lo, hi) = radius_search_bounds(10_000);
        let r = get_target_radius(10_000, 6.0, 1.0).unwrap();
        // sample the decreasing branch between the solution and the upper bound
        let mut prev = expected_avg_degree(10_000, 1.0, r);
        for i in 1..=1000 {
            let probe = r + (hi - r) * i as f64 / 1000.0;
            let k = expected_avg_degree(10_000, 1.0, probe);
            assert!(k < prev);
            prev = k;
        }
        assert!(lo < r);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(get_target_radius(1, 1.0, 1.0).is_err());
        assert!(get_target_radius(100, 0.0, 1.0).is_err());
        assert!(get_target_radius(100, 99.0, 1.0).is_err());
        assert!(get_target_radius(100, 5.0, 0.5).is_err());
        assert!(matches!(
            get_target_radius(100, 1e-300, 1.0),
            Err(Error::Calibration { .. })
        ));
    }

    #[test]
    fn radius_spec_variants() {
        let p = DiskParameters::new(1000, 3.0, RadiusSpec::DiskConstant(-1.0)).unwrap();
        assert_abs_diff_eq!(p.radius(), 2.0 * 1000f64.ln() - 1.0, epsilon = 1e-12);
        let q = DiskParameters::with_alpha(1000, 1.0, RadiusSpec::Radius(14.0)).unwrap();
        assert_eq!(q.radius(), 14.0);
        assert_eq!(q.gamma(), 3.0);
        assert_eq!(q.zeta(), 1.0);
        assert!(DiskParameters::with_alpha(1000, 1.0, RadiusSpec::Radius(0.0)).is_err());
        let k = DiskParameters::new(1000, 3.0, RadiusSpec::AvgDegree(8.0)).unwrap();
        assert_eq!(k.k_bar(), 8.0);
    }

    proptest! {
        #[test]
        fn gamma_round_trip(gamma in 2.0001..10.0f64) {
            let alpha = alpha_from_gamma(gamma).unwrap();
            prop_assert_eq!(2.0 * alpha + 1.0, gamma);
        }
    }
}
