//! Randomized invariant checks (seeded, deterministic): norm axioms, affine
//! invariance, Pick-vs-enumeration count oracles, witness consistency, and
//! monotonicity of the capacity sequences.

mod common;

use common::{concave_corpus, convex_corpus, random_concave_profile, random_convex_profile};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use symcap::capacities::{ball_union_sequence, ck_ball, ck_polydisk};
use symcap::geom::{
    affine_length, anti_norm, apply_affine, dual_norm, region_area, IntegralAffineMap, Point2,
    Polyline, ProfileKind, ToricProfile,
};
use symcap::paths::{
    lattice_count_concave, lattice_count_convex, max_concave_path, min_convex_path, omega_length,
    LatticePath, PathKind,
};
use symcap::rational::{rint, Rational};
use symcap::weights::weight_expansion;

use num_traits::Zero;

fn random_unimodular(rng: &mut StdRng) -> IntegralAffineMap {
    // random word in the two shear generators
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..=6) {
        let s = rng.gen_range(-2..=2i64);
        if rng.gen_bool(0.5) {
            m = [[m[0][0] + s * m[1][0], m[0][1] + s * m[1][1]], m[1]];
        } else {
            m = [m[0], [m[1][0] + s * m[0][0], m[1][1] + s * m[0][1]]];
        }
    }
    let t = [rng.gen_range(-5..=5), rng.gen_range(-5..=5)];
    IntegralAffineMap::new(m, t).expect("shear words stay unimodular")
}

#[test]
fn dual_norm_axioms() {
    let mut rng = StdRng::seed_from_u64(11);
    let profiles = convex_corpus(8);
    for p in &profiles {
        for _ in 0..200 {
            let u = (rng.gen_range(-9..=9i64), rng.gen_range(-9..=9i64));
            let v = (rng.gen_range(-9..=9i64), rng.gen_range(-9..=9i64));
            // positive homogeneity
            let t = rng.gen_range(1..=5i64);
            assert_eq!(
                dual_norm((t * u.0, t * u.1), p).unwrap(),
                dual_norm(u, p).unwrap() * rint(t)
            );
            // triangle inequality
            let sum = (u.0 + v.0, u.1 + v.1);
            assert!(
                dual_norm(sum, p).unwrap() <= dual_norm(u, p).unwrap() + dual_norm(v, p).unwrap()
            );
            // definiteness on the sampled grid
            if u != (0, 0) {
                assert!(dual_norm(u, p).unwrap() > Rational::zero());
            }
        }
    }
}

#[test]
fn anti_norm_homogeneity_and_superadditivity() {
    let mut rng = StdRng::seed_from_u64(12);
    let profiles = concave_corpus(8);
    for p in &profiles {
        for _ in 0..200 {
            let u = (rng.gen_range(0..=9i64), rng.gen_range(0..=9i64));
            let v = (rng.gen_range(0..=9i64), rng.gen_range(0..=9i64));
            let t = rng.gen_range(1..=5i64);
            assert_eq!(
                anti_norm((t * u.0, t * u.1), p).unwrap(),
                anti_norm(u, p).unwrap() * rint(t)
            );
            // superadditive on the nonnegative quadrant
            let sum = (u.0 + v.0, u.1 + v.1);
            assert!(
                anti_norm(sum, p).unwrap() >= anti_norm(u, p).unwrap() + anti_norm(v, p).unwrap()
            );
        }
    }
}

fn random_polyline(rng: &mut StdRng) -> Polyline {
    let n = rng.gen_range(2..=6);
    let mut pts = Vec::with_capacity(n);
    let mut last = (i64::MIN, i64::MIN);
    while pts.len() < n {
        let p = (rng.gen_range(-8..=8i64), rng.gen_range(-8..=8i64));
        if p != last {
            pts.push(Point2::from_ints(p.0, p.1));
            last = p;
        }
    }
    Polyline::new(pts).unwrap()
}

#[test]
fn affine_length_invariance_random() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..500 {
        let path = random_polyline(&mut rng);
        let map = random_unimodular(&mut rng);
        assert_eq!(
            affine_length(&apply_affine(&map, &path)),
            affine_length(&path)
        );
    }
}

#[test]
fn area_invariance_under_unimodular_maps() {
    let mut rng = StdRng::seed_from_u64(14);
    // shoelace area of the closed region (boundary plus axis legs), mapped
    fn closed_area(points: &[Point2]) -> Rational {
        let mut twice = Rational::zero();
        let n = points.len();
        for i in 0..n {
            let a = &points[i];
            let b = &points[(i + 1) % n];
            twice += &a.mu1 * &b.mu2 - &a.mu2 * &b.mu1;
        }
        let half: Rational = twice / rint(2);
        if half < Rational::zero() {
            -half
        } else {
            half
        }
    }
    for _ in 0..100 {
        let p = random_concave_profile(&mut rng);
        let mut loop_pts = vec![Point2::from_ints(0, 0)];
        loop_pts.extend_from_slice(p.boundary().vertices());
        let map = random_unimodular(&mut rng);
        let mapped: Vec<Point2> = loop_pts.iter().map(|q| map.apply_point(q)).collect();
        assert_eq!(closed_area(&mapped), region_area(&p));
    }
}

fn random_convex_lattice_path(rng: &mut StdRng) -> Option<LatticePath> {
    let b = rng.gen_range(0..=12i64);
    let a = rng.gen_range(0..=12i64);
    if a == 0 && b == 0 {
        return LatticePath::new(PathKind::ConvexPath, vec![(0, 0)]).ok();
    }
    let mut cols: Vec<(i64, i64)> = vec![(0, b)];
    for _ in 0..rng.gen_range(0..5) {
        let x = rng.gen_range(0..=a);
        let y = rng.gen_range(0..=12i64);
        cols.push((x, y));
    }
    cols.push((a, 0));
    cols.sort();
    // one point per column, keep the highest
    let mut tops: Vec<(i64, i64)> = Vec::new();
    for c in cols {
        match tops.last_mut() {
            Some(t) if t.0 == c.0 => t.1 = t.1.max(c.1),
            _ => tops.push(c),
        }
    }
    // upper hull with strictly decreasing slopes
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in tops {
        while hull.len() >= 2 {
            let n = hull.len();
            let e1 = (hull[n - 1].0 - hull[n - 2].0, hull[n - 1].1 - hull[n - 2].1);
            let e2 = (p.0 - hull[n - 1].0, p.1 - hull[n - 1].1);
            if e1.0 * e2.1 - e1.1 * e2.0 >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    if hull.last().map(|&(_, y)| y != 0).unwrap_or(true) {
        let x = hull.last().unwrap().0;
        hull.push((x, 0));
    }
    LatticePath::new(PathKind::ConvexPath, hull).ok()
}

fn brute_force_convex_count(path: &LatticePath) -> u64 {
    let vs = path.vertices();
    let a = vs.last().unwrap().0;
    let mut count = 0u64;
    for x in 0..=a {
        let mut top: Option<i64> = None;
        for w in vs.windows(2) {
            let ((x1, y1), (x2, y2)) = (w[0], w[1]);
            if x < x1 || x > x2 {
                continue;
            }
            let h = if x1 == x2 {
                y1.max(y2)
            } else {
                (y1 * (x2 - x1) + (x - x1) * (y2 - y1)).div_euclid(x2 - x1)
            };
            top = Some(top.map_or(h, |t| t.max(h)));
        }
        if vs.len() == 1 {
            top = Some(0);
        }
        count += (top.expect("column covered") + 1) as u64;
    }
    count
}

#[test]
fn pick_count_matches_enumeration() {
    let mut rng = StdRng::seed_from_u64(15);
    let mut checked = 0;
    while checked < 400 {
        if let Some(path) = random_convex_lattice_path(&mut rng) {
            assert_eq!(
                lattice_count_convex(&path).unwrap(),
                brute_force_convex_count(&path),
                "path {:?}",
                path.vertices()
            );
            checked += 1;
        }
    }
}

fn random_concave_lattice_path(rng: &mut StdRng) -> Option<LatticePath> {
    let b = rng.gen_range(0..=10i64);
    let a = rng.gen_range(1..=10i64);
    let mut cols: Vec<(i64, i64)> = vec![(0, b), (a, 0)];
    for _ in 0..rng.gen_range(0..5) {
        cols.push((rng.gen_range(1..a.max(2)), rng.gen_range(0..=10i64)));
    }
    cols.sort();
    let mut bots: Vec<(i64, i64)> = Vec::new();
    for c in cols {
        match bots.last_mut() {
            Some(t) if t.0 == c.0 => t.1 = t.1.min(c.1),
            _ => bots.push(c),
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in bots {
        while hull.len() >= 2 {
            let n = hull.len();
            let e1 = (hull[n - 1].0 - hull[n - 2].0, hull[n - 1].1 - hull[n - 2].1);
            let e2 = (p.0 - hull[n - 1].0, p.1 - hull[n - 1].1);
            if e1.0 * e2.1 - e1.1 * e2.0 <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    LatticePath::new(PathKind::ConcavePath, hull).ok()
}

fn brute_force_concave_count(path: &LatticePath) -> u64 {
    let vs = path.vertices();
    let a = vs.last().unwrap().0;
    let b = vs[0].1;
    let mut count = 0u64;
    for x in 0..=a {
        for y in 0..=b {
            // the path height over x, as an exact fraction
            let mut on_or_under = false;
            let mut on_path = false;
            for w in vs.windows(2) {
                let ((x1, y1), (x2, y2)) = (w[0], w[1]);
                if x < x1 || x > x2 {
                    continue;
                }
                let num = y1 * (x2 - x1) + (x - x1) * (y2 - y1);
                on_or_under = y * (x2 - x1) <= num;
                on_path = y * (x2 - x1) == num;
            }
            if vs.len() == 1 {
                on_or_under = x == 0 && y == 0;
                on_path = on_or_under;
            }
            if on_or_under && !on_path {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn concave_count_matches_enumeration() {
    let mut rng = StdRng::seed_from_u64(16);
    let mut checked = 0;
    while checked < 400 {
        if let Some(path) = random_concave_lattice_path(&mut rng) {
            assert_eq!(
                lattice_count_concave(&path).unwrap(),
                brute_force_concave_count(&path),
                "path {:?}",
                path.vertices()
            );
            checked += 1;
        }
    }
}

#[test]
fn solver_witnesses_are_consistent() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..10 {
        let convex = random_convex_profile(&mut rng);
        let concave = random_concave_profile(&mut rng);
        for k in [0u64, 1, 3, 7, 12] {
            let s = min_convex_path(&convex, k).unwrap();
            assert_eq!(omega_length(&s.path, &convex).unwrap(), s.value);
            assert!(lattice_count_convex(&s.path).unwrap() > k);

            let s = max_concave_path(&concave, k).unwrap();
            assert_eq!(omega_length(&s.path, &concave).unwrap(), s.value);
            assert!(lattice_count_concave(&s.path).unwrap() <= k);
        }
    }
}

#[test]
fn capacity_sequences_monotone() {
    for p in concave_corpus(10) {
        let e = weight_expansion(&p, &Rational::zero(), 41).unwrap();
        let seq = ball_union_sequence(&e, 40);
        assert!(seq.windows(2).all(|w| w[0] <= w[1]));
    }
    for k in 0..400u64 {
        assert!(ck_ball(&rint(3), k) <= ck_ball(&rint(3), k + 1));
        assert!(ck_polydisk(&rint(2), &rint(1), k) <= ck_polydisk(&rint(2), &rint(1), k + 1));
    }
}

#[test]
fn weight_expansion_is_deterministic() {
    let mut rng = StdRng::seed_from_u64(18);
    for _ in 0..10 {
        let p = random_concave_profile(&mut rng);
        let a = weight_expansion(&p, &Rational::zero(), 500).unwrap();
        let b = weight_expansion(&p, &Rational::zero(), 500).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn scaled_profile_scales_path_solver_values() {
    // conformality through the path route as well
    let tri = ToricProfile::triangle(&rint(2), &rint(1), ProfileKind::Concave).unwrap();
    let scaled = tri.scaled(&symcap::rational::rat(3, 2)).unwrap();
    for k in 0..=12u64 {
        let v = max_concave_path(&tri, k).unwrap().value;
        let w = max_concave_path(&scaled, k).unwrap().value;
        assert_eq!(w, v * symcap::rational::rat(3, 2));
    }
}
