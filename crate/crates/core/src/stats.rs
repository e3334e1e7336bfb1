//! Small statistics toolkit used by the validation harnesses: one-sample
//! Kolmogorov–Smirnov tests, sample summaries and least-squares fits.

use nalgebra::{DMatrix, DVector};

/// Result of a one-sample Kolmogorov–Smirnov test.
#[derive(Clone, Copy, Debug)]
pub struct KsResult {
    pub statistic: f64,
    pub samples: usize,
    pub p_value: f64,
}

impl KsResult {
    /// True when the null hypothesis is not rejected at `significance`.
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

/// Tests `samples` against the continuous CDF `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> KsResult {
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / nf).max((i + 1) as f64 / nf - f);
    }
    KsResult {
        statistic: d,
        samples: n,
        p_value: kolmogorov_p_value(d, n),
    }
}

/// Asymptotic p-value of the KS statistic `d` for `n` samples, with the
/// Stephens small-sample correction.
pub fn kolmogorov_p_value(d: f64, n: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let sqrt_n = (n as f64).sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=200 {
        let jf = j as f64;
        let term = sign * (-2.0 * jf * jf * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Sample mean and standard error of the mean.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub std_dev: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        if count == 0 {
            return Self::default();
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let var = if count > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1) as f64
        } else {
            0.0
        };
        Self {
            count,
            mean,
            std_dev: var.sqrt(),
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.std_dev / (self.count as f64).sqrt()
        }
    }
}

/// Difference of two means in units of their combined standard error.
///
/// Two identical constant samples compare as 0.
pub fn standardized_difference(a: &Summary, b: &Summary) -> f64 {
    let se = a.std_error().hypot(b.std_error());
    let diff = (a.mean - b.mean).abs();
    if se == 0.0 {
        if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        diff / se
    }
}

/// Ordinary least-squares fit of `y ≈ X β`.
#[derive(Clone, Debug)]
pub struct LinearFit {
    pub coefficients: Vec<f64>,
    pub r_squared: f64,
}

/// Fits `y` against the given design rows (one row per observation). Returns
/// `None` when the system is rank deficient.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Option<LinearFit> {
    let n = rows.len();
    if n == 0 || n != y.len() {
        return None;
    }
    let k = rows[0].len();
    let x = DMatrix::from_fn(n, k, |i, j| rows[i][j]);
    let yv = DVector::from_column_slice(y);
    let svd = x.clone().svd(true, true);
    let beta = svd.solve(&yv, 1e-12).ok()?;
    let fitted = &x * &beta;
    let mean = yv.mean();
    let ss_tot: f64 = yv.iter().map(|v| (v - mean).powi(2)).sum();
    let ss_res: f64 = yv.iter().zip(fitted.iter()).map(|(a, b)| (a - b).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Some(LinearFit {
        coefficients: beta.iter().copied().collect(),
        r_squared,
    })
}
