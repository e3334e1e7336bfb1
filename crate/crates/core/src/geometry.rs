//! Primitives on the hyperbolic plane in native polar coordinates.
//!
//! Points live in a disk of radius `R` around the origin. The angular
//! coordinate is uniform on `[0, 2π)` and the radial coordinate follows the
//! density `α sinh(αr) / (cosh(αR) − 1)`.
//!
//! Distances are evaluated in the form
//! `cosh d = cosh(r_p − r_q) + 2 sinh(r_p) sinh(r_q) sin²(Δφ/2)`, which is the
//! hyperbolic law of cosines rearranged so that no term cancels. The textbook
//! form `cosh r_p cosh r_q − sinh r_p sinh r_q cos Δφ` subtracts two numbers of
//! size `e^{r_p + r_q}` and loses most of its digits for points near the rim
//! of a large disk.

use std::f64::consts::{PI, TAU};

use rand::Rng;

/// A position in the hyperbolic disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint {
    /// Angular coordinate in `[0, 2π)`.
    pub phi: f64,
    /// Radial coordinate (hyperbolic distance from the origin).
    pub r: f64,
}

impl PolarPoint {
    pub const fn new(phi: f64, r: f64) -> Self {
        Self { phi, r }
    }

    /// Whether the point satisfies `0 ≤ φ < 2π` and `0 ≤ r ≤ radius`.
    pub fn is_valid(&self, radius: f64) -> bool {
        (0.0..TAU).contains(&self.phi) && (0.0..=radius).contains(&self.r)
    }
}

/// Hyperbolic distance between two points.
///
/// Symmetric in its arguments and exactly zero for identical points.
pub fn hyperbolic_distance(p: PolarPoint, q: PolarPoint) -> f64 {
    let half = 0.5 * (p.phi - q.phi).abs();
    let s = half.sin();
    let cosh_d = (p.r - q.r).cosh() + (p.r.sinh() * q.r.sinh()) * (2.0 * s * s);
    cosh_d.max(1.0).acosh()
}

/// Uniform angular coordinate in `[0, 2π)`.
pub fn sample_angular<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let phi = rng.gen::<f64>() * TAU;
    // u < 1 but u * 2π can round up to 2π
    if phi >= TAU {
        0.0
    } else {
        phi
    }
}

/// Radial coordinate drawn from `α sinh(αr) / (cosh(αR) − 1)` on `[0, R]`.
pub fn sample_radial<R: Rng + ?Sized>(alpha: f64, radius: f64, rng: &mut R) -> f64 {
    radial_quantile(alpha, radius, rng.gen::<f64>())
}

/// Inverse of [`radial_cdf`]: maps `u ∈ [0, 1]` to a radius in `[0, R]`.
pub fn radial_quantile(alpha: f64, radius: f64, u: f64) -> f64 {
    let r = (1.0 + u * ((alpha * radius).cosh() - 1.0)).acosh() / alpha;
    r.clamp(0.0, radius)
}

/// `F(r) = (cosh(αr) − 1) / (cosh(αR) − 1)`.
pub fn radial_cdf(alpha: f64, radius: f64, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    if r >= radius {
        return 1.0;
    }
    // cosh(x) - 1 = 2 sinh²(x/2), exact near the origin
    let num = (0.5 * alpha * r).sinh();
    let den = (0.5 * alpha * radius).sinh();
    (num / den) * (num / den)
}

/// Set of angles `φ` with `|φ − center| ≤ half_width` (mod 2π).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngularRange {
    FullCircle,
    Empty,
    Arc { center: f64, half_width: f64 },
}

impl AngularRange {
    /// Circular membership test.
    pub fn contains(&self, phi: f64) -> bool {
        match *self {
            AngularRange::FullCircle => true,
            AngularRange::Empty => false,
            AngularRange::Arc { center, half_width } => {
                circular_separation(phi, center) <= half_width
            }
        }
    }

    /// Grows an arc by a relative and an absolute margin.
    pub fn widened(self, relative: f64, absolute: f64) -> Self {
        match self {
            AngularRange::Arc { center, half_width } => {
                let half_width = half_width * (1.0 + relative) + absolute;
                if half_width >= PI {
                    AngularRange::FullCircle
                } else {
                    AngularRange::Arc { center, half_width }
                }
            }
            other => other,
        }
    }

    /// Endpoints `(φ_min, φ_max)` reduced into `[0, 2π)`, for arcs only.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        match *self {
            AngularRange::Arc { center, half_width } => Some((
                (center - half_width).rem_euclid(TAU),
                (center + half_width).rem_euclid(TAU),
            )),
            _ => None,
        }
    }
}

/// Smallest angle between two directions, in `[0, π]`.
pub fn circular_separation(a: f64, b: f64) -> f64 {
    let d = (a - b).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// Angular window around `v` that contains every point `u` with
/// `r_u ≥ c_inner` and `dist(v, u) ≤ radius`.
///
/// The admissible deviation shrinks as `r_u` grows, so the bound at `c_inner`
/// covers the whole slab above it.
pub fn min_max_phi(v: PolarPoint, c_inner: f64, radius: f64) -> AngularRange {
    min_max_phi_cached(v.phi, &RadialTerms::new(v.r), &RadialTerms::new(c_inner), &RadialTerms::new(radius))
}

/// `e^r` and `sinh r` for a radial coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct RadialTerms {
    pub r: f64,
    pub exp: f64,
    pub sinh: f64,
}

impl RadialTerms {
    pub fn new(r: f64) -> Self {
        let exp = r.exp();
        Self {
            r,
            exp,
            sinh: sinh_from_exp(r, exp),
        }
    }

    fn cosh(&self) -> f64 {
        0.5 * (self.exp + 1.0 / self.exp)
    }
}

/// [`min_max_phi`] on precomputed radial terms of `v`, the slab bound and
/// the disk radius.
pub(crate) fn min_max_phi_cached(phi: f64, v: &RadialTerms, c: &RadialTerms, disk: &RadialTerms) -> AngularRange {
    // sin²(Δφ/2) ≤ (cosh R − cosh(r_v − c)) / (2 sinh r_v sinh c)
    //            = sinh((R + d)/2) sinh((R − d)/2) / (sinh r_v sinh c)
    let d = (v.r - c.r).abs();
    let slack = 0.5 * (disk.r - d);
    let den = v.sinh * c.sinh;
    if den == 0.0 {
        return if slack >= 0.0 {
            AngularRange::FullCircle
        } else {
            AngularRange::Empty
        };
    }
    if slack < 0.0 {
        return AngularRange::Empty;
    }
    let numerator = if slack >= 0.5 {
        // the cosine difference cancels by at most a factor 1/(1 − e^−1) here
        let exp_d = if v.r >= c.r { v.exp / c.exp } else { c.exp / v.exp };
        0.5 * (disk.cosh() - 0.5 * (exp_d + 1.0 / exp_d))
    } else {
        fast_sinh(0.5 * (disk.r + d)) * fast_sinh(slack)
    };
    let q = numerator / den;
    if q >= 1.0 {
        return AngularRange::FullCircle;
    }
    let half_width = 2.0 * q.sqrt().asin();
    AngularRange::Arc {
        center: phi,
        half_width,
    }
}

// e^x − e^−x loses digits only for small x
#[inline]
fn sinh_from_exp(x: f64, exp_x: f64) -> f64 {
    if x.abs() >= 0.5 {
        0.5 * (exp_x - 1.0 / exp_x)
    } else {
        x.sinh()
    }
}

#[inline]
pub(crate) fn fast_sinh(x: f64) -> f64 {
    if x.abs() >= 0.5 {
        sinh_from_exp(x, x.exp())
    } else {
        x.sinh()
    }
}

/// Per-point values cached for repeated threshold tests.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PreparedPoint {
    exp_r: f64,
    sinh_r: f64,
    sin_half: f64,
    cos_half: f64,
}

impl PreparedPoint {
    pub fn new(p: PolarPoint) -> Self {
        let (sin_half, cos_half) = (0.5 * p.phi).sin_cos();
        let exp_r = p.r.exp();
        Self {
            exp_r,
            sinh_r: sinh_from_exp(p.r, exp_r),
            sin_half,
            cos_half,
        }
    }

    pub(crate) fn radial_terms(&self, r: f64) -> RadialTerms {
        RadialTerms {
            r,
            exp: self.exp_r,
            sinh: self.sinh_r,
        }
    }

    /// `cosh` of the distance to `other`. Bit-identical when the arguments are
    /// swapped.
    #[inline]
    pub fn cosh_distance(&self, other: &PreparedPoint) -> f64 {
        let s = self.sin_half * other.cos_half - self.cos_half * other.sin_half;
        let cosh_dr = 0.5 * (self.exp_r / other.exp_r + other.exp_r / self.exp_r);
        cosh_dr + (self.sinh_r * other.sinh_r) * (2.0 * s * s)
    }
}

/// The edge rule `dist(u, v) ≤ R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Threshold {
    radius: f64,
    cosh_radius: f64,
}

impl Threshold {
    pub fn new(radius: f64) -> Self {
        Self {
            radius,
            cosh_radius: radius.cosh(),
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[inline]
    pub fn connects(&self, a: &PreparedPoint, b: &PreparedPoint) -> bool {
        a.cosh_distance(b) <= self.cosh_radius
    }
}
