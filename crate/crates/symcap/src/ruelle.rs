//! The Ruelle invariant of toric domains: the closed form `a + b` and an
//! independent line-integral cross-check.
//!
//! For a toric domain whose positive boundary has everywhere negative slope,
//! the Ruelle invariant equals the line integral of the rotation density
//! `(alpha + beta) / (alpha beta)` against `mu1 d mu2 - mu2 d mu1`, where
//! `alpha` and `beta` are the axis intercepts of the tangent line; the
//! fundamental theorem of calculus collapses the integral to `a + b`. The
//! quadrature here evaluates the intercept form node by node, so agreement
//! with `a + b` exercises the tangent geometry rather than the collapsed
//! integrand.
//!
//! Everything in this module is binary64; it feeds no exact cross-checks.

use crate::rational::Rational;
use crate::{Error, Result};

/// Side of the built-in power family: the curve
/// `(mu1/a)^(1/p) + (mu2/b)^(1/p) = 1` (concave domain) or the superellipse
/// `(mu1/a)^p + (mu2/b)^p = 1` (convex domain).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileSide {
    ConcaveDomain,
    ConvexDomain,
}

#[derive(Clone, Debug, PartialEq)]
enum Family {
    /// `p = 1` is the straight line (parametrized linearly); `p > 1` uses a
    /// trigonometric parametrization whose velocity vanishes smoothly at the
    /// endpoints, so composite Gauss-Legendre converges spectrally.
    Power { p: f64, side: ProfileSide },
    /// Cubic Hermite interpolation through user-supplied
    /// `(mu1, mu2, dmu1/dt, dmu2/dt)` samples on a uniform parameter grid.
    Parametric,
}

/// A smooth curve from `(a, 0)` to `(0, b)` with everywhere negative slope,
/// as required by the toric Ruelle closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothProfile {
    family: Family,
    a: f64,
    b: f64,
    samples: Vec<[f64; 4]>,
}

impl SmoothProfile {
    /// Straight-line boundary (the ellipsoid `E(a, b)`).
    pub fn line(a: f64, b: f64) -> Result<Self> {
        SmoothProfile::power(a, b, 1.0, ProfileSide::ConcaveDomain)
    }

    /// Power-family boundary. Requires `p >= 1`; the convex side is limited
    /// to `p <= 2`, where its trigonometric parametrization stays smooth.
    pub fn power(a: f64, b: f64, p: f64, side: ProfileSide) -> Result<Self> {
        if a.is_nan() || a <= 0.0 || b.is_nan() || b <= 0.0 {
            return Err(Error::Parse("profile needs a > 0 and b > 0".into()));
        }
        if p.is_nan() || p < 1.0 {
            return Err(Error::Parse("power profile needs p >= 1".into()));
        }
        if side == ProfileSide::ConvexDomain && p > 2.0 {
            return Err(Error::Parse(
                "convex power profiles support 1 <= p <= 2 only".into(),
            ));
        }
        Ok(SmoothProfile {
            family: Family::Power { p, side },
            a,
            b,
            samples: Vec::new(),
        })
    }

    /// Curve from tabulated positions and velocities at uniform parameter
    /// spacing, oriented from `(a, 0)` to `(0, b)`. The tangent data must be
    /// first-order consistent with the positions and the slope negative at
    /// every sample.
    pub fn from_samples(samples: Vec<[f64; 4]>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Parse("need at least two samples".into()));
        }
        let n = samples.len();
        let h = 1.0 / (n as f64 - 1.0);
        for (i, s) in samples.iter().enumerate() {
            let [_, _, vx, vy] = *s;
            // a vanishing velocity component is tolerated at the two curve
            // ends, where smooth parametrizations often come to rest
            let endpoint = i == 0 || i == n - 1;
            if vx * vy > 0.0 || (vx * vy == 0.0 && !endpoint) {
                return Err(Error::SlopeDegenerate { t: i as f64 * h });
            }
        }
        for (i, w) in samples.windows(2).enumerate() {
            let dx = w[1][0] - w[0][0];
            let dy = w[1][1] - w[0][1];
            let mx = 0.5 * (w[0][2] + w[1][2]) * h;
            let my = 0.5 * (w[0][3] + w[1][3]) * h;
            let scale = (dx * dx + dy * dy).sqrt().max(1e-300);
            let err = ((dx - mx).powi(2) + (dy - my).powi(2)).sqrt();
            if err > 0.5 * scale {
                return Err(Error::Parse(format!(
                    "sample velocities inconsistent with positions near index {i}"
                )));
            }
        }
        let a = samples[0][0];
        let b = samples[n - 1][1];
        if a.is_nan() || a <= 0.0 || b.is_nan() || b <= 0.0 {
            return Err(Error::Parse(
                "sampled curve must run from (a, 0) to (0, b) with a, b > 0".into(),
            ));
        }
        Ok(SmoothProfile {
            family: Family::Parametric,
            a,
            b,
            samples,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Position and velocity at parameter `t` in `[0, 1]`; the curve runs
    /// from `(a, 0)` at `t = 0` to `(0, b)` at `t = 1`.
    pub fn eval(&self, t: f64) -> ((f64, f64), (f64, f64)) {
        match &self.family {
            Family::Power { p, side } => {
                if *p == 1.0 {
                    // linear parametrization keeps the integrand constant
                    let pos = (self.a * (1.0 - t), self.b * t);
                    let vel = (-self.a, self.b);
                    return (pos, vel);
                }
                let u = std::f64::consts::FRAC_PI_2 * t;
                let (s, c) = (u.sin(), u.cos());
                let e = match side {
                    ProfileSide::ConcaveDomain => 2.0 * p,
                    ProfileSide::ConvexDomain => 2.0 / p,
                };
                let pos = (self.a * c.powf(e), self.b * s.powf(e));
                let du = std::f64::consts::FRAC_PI_2;
                let vel = (
                    -self.a * e * c.powf(e - 1.0) * s * du,
                    self.b * e * s.powf(e - 1.0) * c * du,
                );
                (pos, vel)
            }
            Family::Parametric => {
                let n = self.samples.len();
                let h = 1.0 / (n as f64 - 1.0);
                let seg = if t >= 1.0 {
                    n - 2
                } else {
                    ((t / h).floor() as usize).min(n - 2)
                };
                let lt = (t - seg as f64 * h) / h;
                let s0 = self.samples[seg];
                let s1 = self.samples[seg + 1];
                let (h00, h10, h01, h11) = hermite_basis(lt);
                let (d00, d10, d01, d11) = hermite_basis_deriv(lt);
                let pos = (
                    h00 * s0[0] + h10 * h * s0[2] + h01 * s1[0] + h11 * h * s1[2],
                    h00 * s0[1] + h10 * h * s0[3] + h01 * s1[1] + h11 * h * s1[3],
                );
                let vel = (
                    (d00 * s0[0] + d10 * h * s0[2] + d01 * s1[0] + d11 * h * s1[2]) / h,
                    (d00 * s0[1] + d10 * h * s0[3] + d01 * s1[1] + d11 * h * s1[3]) / h,
                );
                (pos, vel)
            }
        }
    }

    /// The same curve traversed from `(0, b)` to `(a, 0)`; used by the
    /// orientation (antisymmetry) checks.
    pub fn reversed(&self) -> SmoothProfile {
        let mut rev = self.clone();
        match &mut rev.family {
            Family::Power { .. } => {
                // realize the reversal by resampling into parametric form
                let n = 1025;
                let mut samples = Vec::with_capacity(n);
                for i in 0..n {
                    let t = i as f64 / (n as f64 - 1.0);
                    let (pos, vel) = self.eval(1.0 - t);
                    samples.push([pos.0, pos.1, -vel.0, -vel.1]);
                }
                rev.family = Family::Parametric;
                rev.samples = samples;
            }
            Family::Parametric => {
                rev.samples.reverse();
                for s in &mut rev.samples {
                    s[2] = -s[2];
                    s[3] = -s[3];
                }
            }
        }
        rev
    }
}

fn hermite_basis(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    let t3 = t2 * t;
    (
        2.0 * t3 - 3.0 * t2 + 1.0,
        t3 - 2.0 * t2 + t,
        -2.0 * t3 + 3.0 * t2,
        t3 - t2,
    )
}

fn hermite_basis_deriv(t: f64) -> (f64, f64, f64, f64) {
    let t2 = t * t;
    (
        6.0 * t2 - 6.0 * t,
        3.0 * t2 - 4.0 * t + 1.0,
        -6.0 * t2 + 6.0 * t,
        3.0 * t2 - 2.0 * t,
    )
}

/// Axis intercepts of the tangent line at a curve point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentIntercepts {
    /// `mu1`-axis intercept.
    pub alpha: f64,
    /// `mu2`-axis intercept.
    pub beta: f64,
}

/// Intercepts `alpha = D / mu2'`, `beta = -D / mu1'` of the tangent line at
/// `point` with velocity `velocity`, where `D = mu1 mu2' - mu1' mu2`.
/// Requires a strictly negative slope and a transverse tangent line.
pub fn tangent_intercepts(point: (f64, f64), velocity: (f64, f64)) -> Result<TangentIntercepts> {
    let (x, y) = point;
    let (vx, vy) = velocity;
    if vx * vy >= 0.0 || !vx.is_finite() || !vy.is_finite() {
        return Err(Error::SlopeDegenerate { t: f64::NAN });
    }
    let delta = x * vy - vx * y;
    if delta == 0.0 {
        return Err(Error::SlopeDegenerate { t: f64::NAN });
    }
    Ok(TangentIntercepts {
        alpha: delta / vy,
        beta: -delta / vx,
    })
}

/// Rotation density `(alpha + beta) / (alpha beta)` of the Reeb flow over
/// the boundary point with the given tangent data.
pub fn rotation_density(point: (f64, f64), velocity: (f64, f64)) -> Result<f64> {
    let t = tangent_intercepts(point, velocity)?;
    Ok((t.alpha + t.beta) / (t.alpha * t.beta))
}

/// Closed form: the Ruelle invariant of a toric domain with negative-slope
/// boundary is `a + b`.
pub fn ruelle_toric(a: &Rational, b: &Rational) -> Rational {
    a + b
}

/// 8-point Gauss-Legendre nodes and weights on `[-1, 1]` (positive half).
const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Residual of the tangent-line identity `beta mu1 + alpha mu2 = alpha beta`
/// at a node; the quadrature asserts it stays at machine scale.
pub fn intercept_residual(point: (f64, f64), t: &TangentIntercepts) -> f64 {
    (t.beta * point.0 + t.alpha * point.1 - t.alpha * t.beta).abs()
}

/// Evaluate the Ruelle line integral by composite 8-point Gauss-Legendre
/// quadrature with roughly `n_nodes` evaluation points (`n_nodes >= 8`).
/// The exact value is `a + b`; the integrand is assembled from the tangent
/// intercepts at every node.
pub fn ruelle_integral(profile: &SmoothProfile, n_nodes: usize) -> Result<f64> {
    if n_nodes < 8 {
        return Err(Error::Parse("quadrature needs at least 8 nodes".into()));
    }
    let panels = n_nodes / 8;
    let h = 1.0 / panels as f64;
    // fixed-order pairwise summation for reproducibility
    let mut panel_sums = Vec::with_capacity(panels);
    for panel in 0..panels {
        let mid = (panel as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut sum = 0.0;
        for i in 0..4 {
            for sign in [-1.0, 1.0] {
                let t = mid + sign * half * GL8_NODES[i];
                let (pos, vel) = profile.eval(t);
                let intercepts =
                    tangent_intercepts(pos, vel).map_err(|_| Error::SlopeDegenerate { t })?;
                debug_assert!(intercept_residual(pos, &intercepts) < 1e-9);
                let density =
                    (intercepts.alpha + intercepts.beta) / (intercepts.alpha * intercepts.beta);
                let form = pos.0 * vel.1 - pos.1 * vel.0;
                sum += GL8_WEIGHTS[i] * density * form;
            }
        }
        panel_sums.push(sum * half);
    }
    Ok(pairwise_sum(&panel_sums))
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rint;

    #[test]
    fn tangent_intercepts_examples() {
        let t = tangent_intercepts((0.5, 0.5), (-1.0, 1.0)).unwrap();
        assert!((t.alpha - 1.0).abs() < 1e-15);
        assert!((t.beta - 1.0).abs() < 1e-15);

        // line through (0, b) with slope s < 0
        let (b, s) = (2.0, -0.5);
        let t = tangent_intercepts((0.0, b), (1.0, s)).unwrap();
        assert!((t.alpha - (-b / s)).abs() < 1e-12);
        assert!((t.beta - b).abs() < 1e-12);

        // symmetric point on a symmetric curve
        let t = tangent_intercepts((0.7, 0.7), (-1.3, 1.3)).unwrap();
        assert!((t.alpha - t.beta).abs() < 1e-12);

        assert!(tangent_intercepts((1.0, 1.0), (1.0, 1.0)).is_err());
        assert!(tangent_intercepts((1.0, 1.0), (0.0, 1.0)).is_err());
    }

    #[test]
    fn rotation_density_examples() {
        // alpha = beta = 1
        let rho = rotation_density((0.5, 0.5), (-1.0, 1.0)).unwrap();
        assert!((rho - 2.0).abs() < 1e-14);
        // tangent line x/2 + y = 1 at (1, 1/2): alpha = 2, beta = 1
        let rho = rotation_density((1.0, 0.5), (-2.0, 1.0)).unwrap();
        assert!((rho - 1.5).abs() < 1e-14);
        // on the diagonal edge of Delta(c) the density is 2/c
        let c = 3.0;
        let rho = rotation_density((1.0, c - 1.0), (-1.0, 1.0)).unwrap();
        assert!((rho - 2.0 / c).abs() < 1e-14);
    }

    #[test]
    fn ruelle_toric_examples() {
        assert_eq!(ruelle_toric(&rint(1), &rint(1)), rint(2));
        assert_eq!(ruelle_toric(&rint(2), &rint(1)), rint(3));
    }

    #[test]
    fn straight_line_integrand_is_exact() {
        for (a, b) in [(1.0, 1.0), (2.0, 1.0), (0.5, 3.0)] {
            let p = SmoothProfile::line(a, b).unwrap();
            for n in [8, 16, 64] {
                let v = ruelle_integral(&p, n).unwrap();
                assert!((v - (a + b)).abs() < 1e-12, "a={a} b={b} n={n} v={v}");
            }
        }
    }

    #[test]
    fn power_profile_converges() {
        let p = SmoothProfile::power(1.0, 1.0, 2.0, ProfileSide::ConcaveDomain).unwrap();
        let v = ruelle_integral(&p, 64).unwrap();
        assert!((v - 2.0).abs() < 1e-8, "v = {v}");

        let e_64 = (ruelle_integral(&p, 64).unwrap() - 2.0).abs();
        let e_128 = (ruelle_integral(&p, 128).unwrap() - 2.0).abs();
        assert!(e_128 <= e_64 + 1e-15);
    }

    #[test]
    fn convex_side_quarter_ellipse() {
        let p = SmoothProfile::power(2.0, 1.0, 2.0, ProfileSide::ConvexDomain).unwrap();
        let v = ruelle_integral(&p, 256).unwrap();
        assert!((v - 3.0).abs() < 1e-8, "v = {v}");
    }

    #[test]
    fn orientation_flip_negates_integral() {
        let p = SmoothProfile::power(1.0, 2.0, 2.0, ProfileSide::ConcaveDomain).unwrap();
        let forward = ruelle_integral(&p, 128).unwrap();
        let backward = ruelle_integral(&p.reversed(), 128).unwrap();
        assert!((forward + backward).abs() < 1e-6, "{forward} vs {backward}");
    }

    #[test]
    fn intercept_identity_residual_at_nodes() {
        // beta mu1 + alpha mu2 = alpha beta must hold to machine scale at
        // every evaluation point
        for p in [1.0, 2.0, 3.0] {
            let prof = SmoothProfile::power(2.0, 1.0, p, ProfileSide::ConcaveDomain).unwrap();
            for i in 1..256 {
                let t = i as f64 / 256.0;
                let (pos, vel) = prof.eval(t);
                let ti = tangent_intercepts(pos, vel).unwrap();
                assert!(intercept_residual(pos, &ti) < 1e-10, "p={p} t={t}");
            }
        }
    }

    #[test]
    fn parametric_samples_validation() {
        // inconsistent velocities are rejected
        let bad = vec![[1.0, 0.0, -1.0, 1.0], [0.0, 1.0, 1.0, -1.0]];
        assert!(SmoothProfile::from_samples(bad).is_err());
        // nonnegative slope is rejected
        let flat = vec![[1.0, 0.0, 1.0, 1.0], [0.0, 1.0, -1.0, 1.0]];
        assert!(SmoothProfile::from_samples(flat).is_err());
    }
}
