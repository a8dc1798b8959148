//! The error term `e_k = c_k - 2 sqrt(k vol)`, its convergence toward
//! `-Ru/2`, ball oscillation extremes, and the volume-constrained embedding
//! obstruction.
//!
//! Convergence of the error term toward `-(a + b)/2` holds for strictly
//! convex/concave toric domains; rational polygons only approximate that
//! regime, so [`conjecture_check`] reports window statistics and never
//! asserts a universal tolerance. Named test cases pin their own tolerances,
//! calibrated by refining the polygonal approximation.

use crate::capacities::{capacity_sequence, ck_ball, ck_polydisk, MethodChoice};
use crate::geom::{region_area, Domain, Point2, Polyline, ProfileKind, ToricProfile};
use crate::rational::{round_to_denominator, to_f64, Rational};
use crate::{Error, Result};
use num_traits::{Signed, Zero};

/// `e_k(X) = c_k(X) - 2 sqrt(k vol(X))` in binary64.
pub fn error_term(c_k: &Rational, k: u64, vol: &Rational) -> f64 {
    to_f64(c_k) - 2.0 * ((k as f64) * to_f64(vol)).sqrt()
}

/// Statistics of `e_k` over a window of indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowStats {
    pub k_lo: u64,
    pub k_hi: u64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// Error-term series with its convergence target.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSeries {
    pub ks: Vec<u64>,
    pub e: Vec<f64>,
    pub vol: Rational,
    /// `-(a + b)/2` when the domain is toric; absent for unions.
    pub ruelle_half: Option<f64>,
    pub window: WindowStats,
}

/// Extremes of `e_k(B(a))` over `k_lo ..= k_hi`; for comparison against the
/// oscillation band `[-3a/2, -a/2]`.
pub fn ball_oscillation(a: &Rational, k_lo: u64, k_hi: u64) -> (f64, f64) {
    assert!(k_lo >= 1 && k_lo <= k_hi);
    let af = to_f64(a);
    let vol = af * af / 2.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for k in k_lo..=k_hi {
        let d = crate::capacities::ball_degree(k);
        let e = d as f64 * af - 2.0 * ((k as f64) * vol).sqrt();
        if e < min {
            min = e;
        }
        if e > max {
            max = e;
        }
    }
    (min, max)
}

fn capacity_values(domain: &Domain, kmax: u64) -> Result<Vec<Rational>> {
    // closed forms avoid materializing full capacity results
    match domain {
        Domain::Ball(a) => Ok((0..=kmax).map(|k| ck_ball(a, k)).collect()),
        Domain::Polydisk(a, b) => Ok((0..=kmax).map(|k| ck_polydisk(a, b, k)).collect()),
        _ => Ok(capacity_sequence(domain, kmax, MethodChoice::Auto)?
            .into_iter()
            .map(|r| r.value)
            .collect()),
    }
}

/// Compute `e_k` for `k <= kmax` and summarize the top `window_fraction` of
/// the index range against the toric target `-(a + b)/2`. Purely a report:
/// for non-generic domains (rational ellipsoids, balls) the series
/// oscillates and no convergence claim is made.
pub fn conjecture_check(domain: &Domain, kmax: u64, window_fraction: f64) -> Result<ErrorSeries> {
    if kmax < 1 {
        return Err(Error::Parse("conjecture_check needs kmax >= 1".into()));
    }
    if !(window_fraction > 0.0 && window_fraction <= 1.0) {
        return Err(Error::Parse("window_fraction must lie in (0, 1]".into()));
    }
    domain.validate()?;
    let vol = domain.volume();
    let values = capacity_values(domain, kmax)?;
    let ks: Vec<u64> = (0..=kmax).collect();
    let e: Vec<f64> = ks
        .iter()
        .map(|&k| error_term(&values[k as usize], k, &vol))
        .collect();
    let ruelle_half = domain.intercept_sum().map(|s| -to_f64(&s) / 2.0);

    let count = ((window_fraction * kmax as f64).floor() as u64).clamp(1, kmax);
    let k_lo = kmax - count + 1;
    let slice = &e[k_lo as usize..=kmax as usize];
    let min = slice.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = slice.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = slice.iter().sum::<f64>() / slice.len() as f64;
    Ok(ErrorSeries {
        ks,
        e,
        vol,
        ruelle_half,
        window: WindowStats {
            k_lo,
            k_hi: kmax,
            min,
            max,
            mean,
        },
    })
}

/// Outcome of the volume-constrained embedding test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `a + b` of the source exceeds the target's: no volume-preserving
    /// embedding of the interior can exist (assuming both domains satisfy
    /// the convergence hypotheses, which the caller asserts).
    Obstructed,
    /// The necessary condition holds; no conclusion.
    NotObstructed,
    /// Areas differ by more than the tolerance, so the test does not apply.
    VolumeMismatch,
}

/// Embedding obstruction for equal-volume toric domains: an embedding
/// `int(X_source) -> X_target` forces
/// `a(source) + b(source) >= a(target) + b(target)`, so the verdict is
/// `Obstructed` when that inequality fails for the reverse direction.
/// The convergence hypotheses on both domains are asserted by the caller.
pub fn embedding_obstruction(
    source: &ToricProfile,
    target: &ToricProfile,
    area_tol: &Rational,
) -> Verdict {
    let da = region_area(source) - region_area(target);
    if da.abs() > *area_tol {
        return Verdict::VolumeMismatch;
    }
    if source.a() + source.b() < target.a() + target.b() {
        Verdict::Obstructed
    } else {
        Verdict::NotObstructed
    }
}

/// Polygonalize a power-family boundary by chords at Chebyshev-spaced
/// abscissae rounded to `1/denominator` rationals. The rounded points are
/// convexified (lower hull for concave profiles, upper hull for convex
/// ones), so the result is always a valid profile within `1/denominator`
/// of the smooth curve.
pub fn polygonalize_power(
    a: f64,
    b: f64,
    p: f64,
    kind: ProfileKind,
    samples: usize,
    denominator: u64,
) -> Result<ToricProfile> {
    if a.is_nan() || a <= 0.0 || b.is_nan() || b <= 0.0 || p.is_nan() || p < 1.0 {
        return Err(Error::Parse(
            "power profile needs a, b > 0 and p >= 1".into(),
        ));
    }
    if samples < 2 || denominator < 2 {
        return Err(Error::Parse(
            "need samples >= 2 and denominator >= 2".into(),
        ));
    }
    let n = samples - 1;
    let height = |x: f64| -> f64 {
        let t = (x / a).clamp(0.0, 1.0);
        match kind {
            ProfileKind::Concave => b * (1.0 - t.powf(1.0 / p)).powf(p),
            ProfileKind::Convex => b * (1.0 - t.powf(p)).powf(1.0 / p),
        }
    };
    let a_r = round_to_denominator(a, denominator);
    let b_r = round_to_denominator(b, denominator);
    if !a_r.is_positive() || !b_r.is_positive() {
        return Err(Error::Parse("profile collapses at this denominator".into()));
    }
    let mut points: Vec<Point2> = Vec::with_capacity(samples);
    points.push(Point2::new(Rational::zero(), b_r.clone()));
    for j in 1..n {
        let x = a * 0.5 * (1.0 - (std::f64::consts::PI * j as f64 / n as f64).cos());
        let mut xr = round_to_denominator(x, denominator);
        let mut yr = round_to_denominator(height(x), denominator);
        if xr.is_negative() {
            xr = Rational::zero();
        }
        if xr >= a_r {
            continue;
        }
        if yr.is_negative() {
            yr = Rational::zero();
        }
        if yr > b_r {
            yr = b_r.clone();
        }
        points.push(Point2::new(xr, yr));
    }
    points.push(Point2::new(a_r, Rational::zero()));
    points.sort();
    points.dedup();

    // convexify: rounding can locally break the slope monotonicity
    let mut hull: Vec<Point2> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let e1 = (
                &hull[hull.len() - 1].mu1 - &hull[hull.len() - 2].mu1,
                &hull[hull.len() - 1].mu2 - &hull[hull.len() - 2].mu2,
            );
            let e2 = (
                &pt.mu1 - &hull[hull.len() - 1].mu1,
                &pt.mu2 - &hull[hull.len() - 1].mu2,
            );
            let cr = &e1.0 * &e2.1 - &e1.1 * &e2.0;
            let pop = match kind {
                ProfileKind::Concave => !cr.is_positive(),
                ProfileKind::Convex => !cr.is_negative(),
            };
            if pop {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    ToricProfile::new(kind, Polyline::new(hull)?)
}
