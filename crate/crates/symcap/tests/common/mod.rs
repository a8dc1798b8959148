//! Shared corpus generators for the integration suites: random rational
//! toric profiles with small-denominator coordinates, built as convex hulls
//! of random point clouds so every draw is a valid profile.

use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symcap::geom::{Point2, ToricProfile};
use symcap::rational::{rat, Rational};
use symcap::weights::weight_expansion;

pub const CORPUS_SEED: u64 = 0x5ca1_ab1e;

fn small_rational(rng: &mut StdRng, max_num: i64) -> Rational {
    let den = rng.gen_range(1..=8);
    let num = rng.gen_range(1..=max_num * den);
    rat(num, den)
}

fn cross(u: (&Rational, &Rational), v: (&Rational, &Rational)) -> Rational {
    u.0 * v.1 - u.1 * v.0
}

/// Concave profile: the lower convex hull over random interior points
/// between random axis intercepts. Coordinates have denominators at most 8.
pub fn random_concave_profile(rng: &mut StdRng) -> ToricProfile {
    loop {
        let a = small_rational(rng, 6).max(rat(1, 2));
        let b = small_rational(rng, 6).max(rat(1, 2));
        let n_mid = rng.gen_range(0..=4usize);
        let mut pts: Vec<Point2> = vec![
            Point2::new(Rational::zero(), b.clone()),
            Point2::new(a.clone(), Rational::zero()),
        ];
        for _ in 0..n_mid {
            let x = small_rational(rng, 6);
            let y = small_rational(rng, 6);
            if x.is_zero() || x >= a {
                continue;
            }
            pts.push(Point2::new(x, y));
        }
        pts.sort();
        // one candidate per abscissa: the lowest
        pts.dedup_by(|second, first| second.mu1 == first.mu1);
        let mut hull: Vec<Point2> = Vec::new();
        for p in pts {
            while hull.len() >= 2 {
                let n = hull.len();
                let e1 = (
                    &hull[n - 1].mu1 - &hull[n - 2].mu1,
                    &hull[n - 1].mu2 - &hull[n - 2].mu2,
                );
                let e2 = (&p.mu1 - &hull[n - 1].mu1, &p.mu2 - &hull[n - 1].mu2);
                if !cross((&e1.0, &e1.1), (&e2.0, &e2.1)).is_positive() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        if let Ok(p) = ToricProfile::concave(hull) {
            return p;
        }
    }
}

/// Convex profile: the upper hull over random points below the bounding
/// rectangle of random intercepts.
pub fn random_convex_profile(rng: &mut StdRng) -> ToricProfile {
    loop {
        let a = small_rational(rng, 6).max(rat(1, 2));
        let b = small_rational(rng, 6).max(rat(1, 2));
        let n_mid = rng.gen_range(0..=4usize);
        let mut pts: Vec<Point2> = vec![
            Point2::new(Rational::zero(), b.clone()),
            Point2::new(a.clone(), Rational::zero()),
        ];
        for _ in 0..n_mid {
            let x = small_rational(rng, 6);
            let y = small_rational(rng, 6).min(b.clone());
            if x.is_zero() || x >= a {
                continue;
            }
            pts.push(Point2::new(x, y));
        }
        pts.sort();
        // one candidate per abscissa: the highest
        let mut by_col: Vec<Point2> = Vec::new();
        for p in pts {
            match by_col.last_mut() {
                Some(last) if last.mu1 == p.mu1 => *last = p,
                _ => by_col.push(p),
            }
        }
        let mut hull: Vec<Point2> = Vec::new();
        for p in by_col {
            while hull.len() >= 2 {
                let n = hull.len();
                let e1 = (
                    &hull[n - 1].mu1 - &hull[n - 2].mu1,
                    &hull[n - 1].mu2 - &hull[n - 2].mu2,
                );
                let e2 = (&p.mu1 - &hull[n - 1].mu1, &p.mu2 - &hull[n - 1].mu2);
                if !cross((&e1.0, &e1.1), (&e2.0, &e2.1)).is_negative() {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        if let Ok(p) = ToricProfile::convex(hull) {
            return p;
        }
    }
}

/// Criterion-3 corpus: concave profiles whose weight expansions terminate
/// within a desk-scale budget.
pub fn concave_corpus(count: usize) -> Vec<ToricProfile> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 40 * count, "corpus generation stalled");
        let p = random_concave_profile(&mut rng);
        let e = weight_expansion(&p, &Rational::zero(), 100_000).expect("concave profile");
        if !e.truncated {
            out.push(p);
        }
    }
    out
}

pub fn convex_corpus(count: usize) -> Vec<ToricProfile> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0xc0ffee);
    (0..count)
        .map(|_| random_convex_profile(&mut rng))
        .collect()
}
