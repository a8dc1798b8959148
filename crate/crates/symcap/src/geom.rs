//! Exact rational plane geometry: polygons, integral affine maps, the dual
//! norm and anti-norm of a toric profile, affine length, areas and gauges.
//!
//! A [`ToricProfile`] is the polygonal description of the upper boundary of
//! a plane region `Omega` in the closed nonnegative quadrant, running from
//! `(0, b)` to `(a, 0)`. A `Concave` profile is the graph of a convex
//! function; a `Convex` profile is one whose four-fold reflection closure is
//! convex. The reflection closure itself is never materialized: the norms
//! query sign-reflections of the boundary vertices on the fly.
//!
//! Everything here is a pure function of immutable values and safe to call
//! from any number of threads.

use crate::rational::{rint, Rational};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A point of the `(mu1, mu2)` plane of symplectic-area coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub mu1: Rational,
    pub mu2: Rational,
}

impl Point2 {
    pub fn new(mu1: Rational, mu2: Rational) -> Self {
        Point2 { mu1, mu2 }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rint(x), rint(y))
    }

    fn is_in_quadrant(&self) -> bool {
        !self.mu1.is_negative() && !self.mu2.is_negative()
    }
}

/// `u.mu1 * v.mu2 - u.mu2 * v.mu1` for displacement vectors.
fn cross(ux: &Rational, uy: &Rational, vx: &Rational, vy: &Rational) -> Rational {
    ux * vy - uy * vx
}

/// An ordered polygonal chain with at least two, pairwise consecutive
/// distinct, rational vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyline {
    vertices: Vec<Point2>,
}

impl Polyline {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPolyline("need at least two vertices"));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPolyline(
                "consecutive vertices must be distinct",
            ));
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn first(&self) -> &Point2 {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point2 {
        self.vertices.last().expect("nonempty by construction")
    }
}

/// Whether a profile bounds a concave or a convex toric domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Concave,
    Convex,
}

/// Polygonal description of the positive boundary of a toric domain:
/// a chain from `(0, b)` to `(a, 0)` inside the closed quadrant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricProfile {
    kind: ProfileKind,
    boundary: Polyline,
}

impl ToricProfile {
    /// Validate and build a profile. For `Concave` the boundary must be the
    /// graph of a convex function (`mu1` strictly increasing, edge slopes
    /// nondecreasing); for `Convex` the reflection closure must be convex
    /// (`mu1` nondecreasing, `mu2` nonincreasing, edge slopes nonincreasing).
    pub fn new(kind: ProfileKind, boundary: Polyline) -> Result<Self> {
        let vs = boundary.vertices();
        if vs.iter().any(|p| !p.is_in_quadrant()) {
            return Err(Error::InvalidProfile(
                "boundary leaves the nonnegative quadrant",
            ));
        }
        let first = boundary.first();
        let last = boundary.last();
        if !first.mu1.is_zero() || first.mu2.is_zero() || first.mu2.is_negative() {
            return Err(Error::InvalidProfile(
                "boundary must start at (0, b) with b > 0",
            ));
        }
        if !last.mu2.is_zero() || last.mu1.is_zero() || last.mu1.is_negative() {
            return Err(Error::InvalidProfile(
                "boundary must end at (a, 0) with a > 0",
            ));
        }
        let edges: Vec<(Rational, Rational)> = vs
            .windows(2)
            .map(|w| (&w[1].mu1 - &w[0].mu1, &w[1].mu2 - &w[0].mu2))
            .collect();
        match kind {
            ProfileKind::Concave => {
                for (dx, _) in &edges {
                    if !dx.is_positive() {
                        return Err(Error::InvalidProfile(
                            "concave boundary needs strictly increasing mu1",
                        ));
                    }
                }
                for w in edges.windows(2) {
                    if cross(&w[0].0, &w[0].1, &w[1].0, &w[1].1).is_negative() {
                        return Err(Error::InvalidProfile(
                            "concave boundary must be the graph of a convex function",
                        ));
                    }
                }
            }
            ProfileKind::Convex => {
                for (dx, dy) in &edges {
                    if dx.is_negative() || dy.is_positive() {
                        return Err(Error::InvalidProfile(
                            "convex boundary needs mu1 nondecreasing and mu2 nonincreasing",
                        ));
                    }
                }
                for w in edges.windows(2) {
                    if cross(&w[0].0, &w[0].1, &w[1].0, &w[1].1).is_positive() {
                        return Err(Error::InvalidProfile(
                            "convex boundary needs nonincreasing edge slopes",
                        ));
                    }
                }
            }
        }
        Ok(ToricProfile { kind, boundary })
    }

    /// Concave profile from boundary vertices.
    pub fn concave(vertices: Vec<Point2>) -> Result<Self> {
        ToricProfile::new(ProfileKind::Concave, Polyline::new(vertices)?)
    }

    /// Convex profile from boundary vertices.
    pub fn convex(vertices: Vec<Point2>) -> Result<Self> {
        ToricProfile::new(ProfileKind::Convex, Polyline::new(vertices)?)
    }

    /// Triangle profile `(0, b) -> (a, 0)`; describes the ellipsoid `E(a, b)`.
    /// A triangle is simultaneously a concave and a convex toric domain, so
    /// the kind is the caller's choice.
    pub fn triangle(a: &Rational, b: &Rational, kind: ProfileKind) -> Result<Self> {
        ToricProfile::new(
            kind,
            Polyline::new(vec![
                Point2::new(Rational::zero(), b.clone()),
                Point2::new(a.clone(), Rational::zero()),
            ])?,
        )
    }

    /// Rectangle profile `(0, b) -> (a, b) -> (a, 0)`; describes the
    /// polydisk `P(a, b)`. Always convex.
    pub fn rectangle(a: &Rational, b: &Rational) -> Result<Self> {
        ToricProfile::convex(vec![
            Point2::new(Rational::zero(), b.clone()),
            Point2::new(a.clone(), b.clone()),
            Point2::new(a.clone(), Rational::zero()),
        ])
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn boundary(&self) -> &Polyline {
        &self.boundary
    }

    /// The `mu1`-axis intercept `a(Omega)`.
    pub fn a(&self) -> &Rational {
        &self.boundary.last().mu1
    }

    /// The `mu2`-axis intercept `b(Omega)`.
    pub fn b(&self) -> &Rational {
        &self.boundary.first().mu2
    }

    /// The profile scaled by `r > 0`; capacities scale along with it.
    pub fn scaled(&self, r: &Rational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidProfile("scale factor must be positive"));
        }
        let vertices = self
            .boundary
            .vertices()
            .iter()
            .map(|p| Point2::new(&p.mu1 * r, &p.mu2 * r))
            .collect();
        ToricProfile::new(self.kind, Polyline::new(vertices)?)
    }

    /// Height of the boundary graph above abscissa `x` for a concave
    /// profile; `None` outside `[0, a]`.
    pub fn height_at(&self, x: &Rational) -> Option<Rational> {
        if x.is_negative() || x > self.a() {
            return None;
        }
        let vs = self.boundary.vertices();
        for w in vs.windows(2) {
            if x >= &w[0].mu1 && x <= &w[1].mu1 {
                let dx = &w[1].mu1 - &w[0].mu1;
                if dx.is_zero() {
                    return Some(w[1].mu2.clone());
                }
                let t = (x - &w[0].mu1) / dx;
                return Some(&w[0].mu2 + t * (&w[1].mu2 - &w[0].mu2));
            }
        }
        None
    }

    /// Minkowski gauge: the least `s >= 0` with `p` in `s * Omega`.
    /// Requires `p` in the closed quadrant.
    pub fn gauge(&self, p: &Point2) -> Rational {
        assert!(p.is_in_quadrant(), "gauge is defined on the quadrant");
        if p.mu1.is_zero() && p.mu2.is_zero() {
            return Rational::zero();
        }
        match self.kind {
            ProfileKind::Convex => {
                // max over edge half-planes of <n, p> / <n, v>, with the
                // outward normal n = (-dy, dx) componentwise nonnegative.
                let mut best = Rational::zero();
                for w in self.boundary.vertices().windows(2) {
                    let dx = &w[1].mu1 - &w[0].mu1;
                    let dy = &w[1].mu2 - &w[0].mu2;
                    let nx = -dy;
                    let ny = dx;
                    let denom = &nx * &w[0].mu1 + &ny * &w[0].mu2;
                    debug_assert!(denom.is_positive());
                    let s = (&nx * &p.mu1 + &ny * &p.mu2) / denom;
                    if s > best {
                        best = s;
                    }
                }
                best
            }
            ProfileKind::Concave => {
                // Points on the axes scale against the intercepts.
                if p.mu2.is_zero() {
                    return &p.mu1 / self.a();
                }
                if p.mu1.is_zero() {
                    return &p.mu2 / self.b();
                }
                // The region is star-shaped about the origin, so the ray
                // through p crosses the boundary exactly once.
                for w in self.boundary.vertices().windows(2) {
                    let dx = &w[1].mu1 - &w[0].mu1;
                    let dy = &w[1].mu2 - &w[0].mu2;
                    let denom = cross(&p.mu1, &p.mu2, &dx, &dy);
                    if denom.is_zero() {
                        continue;
                    }
                    let lambda = cross(&w[0].mu1, &w[0].mu2, &p.mu1, &p.mu2) / &denom;
                    if lambda.is_negative() || lambda > Rational::one() {
                        continue;
                    }
                    let bx = &w[0].mu1 + &lambda * dx;
                    let by = &w[0].mu2 + lambda * dy;
                    // s = |p| / |boundary point| along the ray
                    let s = if !bx.is_zero() {
                        &p.mu1 / bx
                    } else {
                        &p.mu2 / by
                    };
                    if s.is_positive() {
                        return s;
                    }
                }
                // Ray leaves through the flat zero tail, if any: fall back
                // to the horizontal intercept.
                &p.mu1 / self.a()
            }
        }
    }

    /// Exact membership test `p` in `Omega` for quadrant points.
    pub fn contains(&self, p: &Point2) -> bool {
        p.is_in_quadrant() && self.gauge(p) <= Rational::one()
    }
}

/// `true` when the concave region of `inner` is contained in the concave
/// region of `outer` (checked at the union of vertex abscissae; exact for
/// piecewise-linear boundaries).
pub fn profile_contains(outer: &ToricProfile, inner: &ToricProfile) -> Result<bool> {
    if outer.kind() != ProfileKind::Concave || inner.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    if inner.a() > outer.a() {
        return Ok(false);
    }
    let mut xs: Vec<Rational> = inner
        .boundary()
        .vertices()
        .iter()
        .chain(outer.boundary().vertices())
        .map(|p| p.mu1.clone())
        .filter(|x| x <= inner.a())
        .collect();
    xs.sort();
    xs.dedup();
    for x in xs {
        let hi = inner.height_at(&x).expect("abscissa within [0, a]");
        let ho = outer.height_at(&x).expect("abscissa within outer [0, a]");
        if hi > ho {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element of SL2(Z) composed with an integer translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralAffineMap {
    matrix: [[i64; 2]; 2],
    translation: [i64; 2],
}

impl IntegralAffineMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: [i64; 2]) -> Result<Self> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if det != 1 {
            return Err(Error::NotUnimodular);
        }
        Ok(IntegralAffineMap {
            matrix,
            translation,
        })
    }

    pub fn identity() -> Self {
        IntegralAffineMap {
            matrix: [[1, 0], [0, 1]],
            translation: [0, 0],
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.matrix
    }

    pub fn translation(&self) -> [i64; 2] {
        self.translation
    }

    pub fn apply_point(&self, p: &Point2) -> Point2 {
        let x = rint(self.matrix[0][0]) * &p.mu1
            + rint(self.matrix[0][1]) * &p.mu2
            + rint(self.translation[0]);
        let y = rint(self.matrix[1][0]) * &p.mu1
            + rint(self.matrix[1][1]) * &p.mu2
            + rint(self.translation[1]);
        Point2::new(x, y)
    }
}

/// Vertex-wise image of a polyline under an integral affine map.
/// Preserves [`affine_length`].
pub fn apply_affine(map: &IntegralAffineMap, p: &Polyline) -> Polyline {
    let vertices = p.vertices().iter().map(|v| map.apply_point(v)).collect();
    Polyline::new(vertices).expect("affine image of a valid polyline is valid")
}

/// Lattice-normalized length of a rational-slope segment: the largest `d`
/// such that `(dx/d, dy/d)` is an integer vector.
fn affine_length_edge(dx: &Rational, dy: &Rational) -> Rational {
    // gcd of two rationals p1/q1, p2/q2 is gcd(p1*q2, p2*q1) / (q1*q2)
    let n1 = dx.numer().abs();
    let n2 = dy.numer().abs();
    let d1 = dx.denom();
    let d2 = dy.denom();
    let g = (n1 * d2).gcd(&(n2 * d1));
    Rational::new(g, d1 * d2)
}

/// Affine length of a polyline: the sum of per-edge lattice lengths.
/// Invariant under [`apply_affine`]. (For irrational-slope segments the
/// affine length would be 0, but rational vertices always give rational
/// slopes, so that branch is unreachable here.)
pub fn affine_length(path: &Polyline) -> Rational {
    let mut total = Rational::zero();
    for w in path.vertices().windows(2) {
        let dx = &w[1].mu1 - &w[0].mu1;
        let dy = &w[1].mu2 - &w[0].mu2;
        total += affine_length_edge(&dx, &dy);
    }
    total
}

/// Dual norm `max { <v, w> : w in the reflection closure of Omega }`,
/// evaluated over the sign-reflected boundary vertices. Requires a convex
/// profile.
pub fn dual_norm(v: (i64, i64), omega: &ToricProfile) -> Result<Rational> {
    if omega.kind() != ProfileKind::Convex {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Convex,
        });
    }
    let ax = rint(v.0.abs());
    let ay = rint(v.1.abs());
    let mut best = Rational::zero();
    for w in omega.boundary().vertices() {
        let val = &ax * &w.mu1 + &ay * &w.mu2;
        if val > best {
            best = val;
        }
    }
    Ok(best)
}

/// Anti-norm `min { <v, w> : w on the positive boundary }`, evaluated over
/// the boundary vertices. Requires a concave profile.
pub fn anti_norm(v: (i64, i64), omega: &ToricProfile) -> Result<Rational> {
    if omega.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    let vx = rint(v.0);
    let vy = rint(v.1);
    let mut best: Option<Rational> = None;
    for w in omega.boundary().vertices() {
        let val = &vx * &w.mu1 + &vy * &w.mu2;
        if best.as_ref().is_none_or(|b| &val < b) {
            best = Some(val);
        }
    }
    Ok(best.expect("profile boundary is nonempty"))
}

/// Exact area of the region `Omega` bounded by the profile and the axis
/// segments; equals the volume of the toric domain `X_Omega`.
pub fn region_area(profile: &ToricProfile) -> Rational {
    let vs = profile.boundary().vertices();
    // shoelace over the closed loop (0,0) -> (0,b) -> ... -> (a,0) -> (0,0);
    // the axis edges through the origin contribute nothing
    let mut twice = Rational::zero();
    for w in vs.windows(2) {
        twice += cross(&w[0].mu1, &w[0].mu2, &w[1].mu1, &w[1].mu2);
    }
    twice.abs() / rint(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Ball(Rational),
    Ellipsoid(Rational, Rational),
    Polydisk(Rational, Rational),
    Toric(ToricProfile),
    Union(Vec<Domain>),
}

impl Domain {
    /// Validate scale parameters and union arity.
    pub fn validate(&self) -> Result<()> {
        match self {
            Domain::Ball(a) => {
                if !a.is_positive() {
                    return Err(Error::InvalidProfile("ball parameter must be positive"));
                }
            }
            Domain::Ellipsoid(a, b) | Domain::Polydisk(a, b) => {
                if !a.is_positive() || !b.is_positive() {
                    return Err(Error::InvalidProfile("scale parameters must be positive"));
                }
            }
            Domain::Toric(_) => {}
            Domain::Union(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidProfile("union must have at least one part"));
                }
                for p in parts {
                    p.validate()?;
                }
            }
        }
        Ok(())
    }

    /// Volume of the 4-dimensional domain (equals the area of `Omega` for
    /// toric domains).
    pub fn volume(&self) -> Rational {
        match self {
            Domain::Ball(a) => a * a / rint(2),
            Domain::Ellipsoid(a, b) => a * b / rint(2),
            Domain::Polydisk(a, b) => a * b,
            Domain::Toric(p) => region_area(p),
            Domain::Union(parts) => parts.iter().map(|p| p.volume()).sum(),
        }
    }

    /// All linear data scaled by `r > 0`; every `c_k` scales by `r`.
    pub fn scaled(&self, r: &Rational) -> Result<Domain> {
        if !r.is_positive() {
            return Err(Error::InvalidProfile("scale factor must be positive"));
        }
        Ok(match self {
            Domain::Ball(a) => Domain::Ball(a * r),
            Domain::Ellipsoid(a, b) => Domain::Ellipsoid(a * r, b * r),
            Domain::Polydisk(a, b) => Domain::Polydisk(a * r, b * r),
            Domain::Toric(p) => Domain::Toric(p.scaled(r)?),
            Domain::Union(parts) => {
                Domain::Union(parts.iter().map(|p| p.scaled(r)).collect::<Result<_>>()?)
            }
        })
    }

    /// `a(Omega) + b(Omega)` when the domain is toric, i.e. its Ruelle
    /// invariant; `None` for unions.
    pub fn intercept_sum(&self) -> Option<Rational> {
        match self {
            Domain::Ball(a) => Some(a + a),
            Domain::Ellipsoid(a, b) | Domain::Polydisk(a, b) => Some(a + b),
            Domain::Toric(p) => Some(p.a() + p.b()),
            Domain::Union(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pl(points: &[(i64, i64)]) -> Polyline {
        Polyline::new(
            points
                .iter()
                .map(|&(x, y)| Point2::from_ints(x, y))
                .collect(),
        )
        .unwrap()
    }

    fn delta(c: i64) -> ToricProfile {
        ToricProfile::triangle(&rint(c), &rint(c), ProfileKind::Concave).unwrap()
    }

    fn unit_square() -> ToricProfile {
        ToricProfile::rectangle(&rint(1), &rint(1)).unwrap()
    }

    #[test]
    fn affine_length_examples() {
        assert_eq!(affine_length(&pl(&[(0, 1), (2, 0)])), rint(1));
        assert_eq!(affine_length(&pl(&[(0, 0), (3, 3)])), rint(3));
        assert_eq!(affine_length(&pl(&[(0, 2), (1, 1), (3, 0)])), rint(2));
        // rational displacements scale the lattice length accordingly
        let p = Polyline::new(vec![
            Point2::new(Rational::zero(), Rational::zero()),
            Point2::new(rat(1, 2), rat(1, 2)),
        ])
        .unwrap();
        assert_eq!(affine_length(&p), rat(1, 2));
    }

    #[test]
    fn dual_norm_examples() {
        assert_eq!(dual_norm((1, 1), &unit_square()).unwrap(), rint(2));
        assert_eq!(dual_norm((0, 0), &unit_square()).unwrap(), rint(0));
        let tri = ToricProfile::triangle(&rint(3), &rint(3), ProfileKind::Convex).unwrap();
        assert_eq!(dual_norm((1, 0), &tri).unwrap(), rint(3));
        assert!(dual_norm((1, 1), &delta(1)).is_err());
    }

    #[test]
    fn anti_norm_examples() {
        assert_eq!(anti_norm((1, 1), &delta(1)).unwrap(), rint(1));
        assert_eq!(anti_norm((1, 0), &delta(1)).unwrap(), rint(0));
        assert_eq!(anti_norm((2, 2), &delta(1)).unwrap(), rint(2));
        assert!(anti_norm((1, 1), &unit_square()).is_err());
    }

    #[test]
    fn apply_affine_examples() {
        let id = IntegralAffineMap::identity();
        let p = pl(&[(0, 2), (1, 1), (3, 0)]);
        assert_eq!(apply_affine(&id, &p), p);

        // the shear (mu1, mu2) -> (mu1 + mu2 - 1, mu2)
        let phi2 = IntegralAffineMap::new([[1, 1], [0, 1]], [-1, 0]).unwrap();
        assert_eq!(
            phi2.apply_point(&Point2::from_ints(2, 0)),
            Point2::from_ints(1, 0)
        );

        // the shear (mu1, mu2) -> (mu1, mu1 + mu2 - 1)
        let phi1 = IntegralAffineMap::new([[1, 0], [1, 1]], [0, -1]).unwrap();
        assert_eq!(
            phi1.apply_point(&Point2::from_ints(0, 1)),
            Point2::from_ints(0, 0)
        );
    }

    #[test]
    fn affine_length_invariance() {
        let map = IntegralAffineMap::new([[2, 1], [1, 1]], [3, -2]).unwrap();
        let p = pl(&[(0, 5), (2, 2), (7, 0)]);
        assert_eq!(affine_length(&apply_affine(&map, &p)), affine_length(&p));
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(IntegralAffineMap::new([[2, 0], [0, 1]], [0, 0]).is_err());
        assert!(IntegralAffineMap::new([[0, 1], [1, 0]], [0, 0]).is_err());
    }

    #[test]
    fn region_area_examples() {
        assert_eq!(region_area(&delta(1)), rat(1, 2));
        assert_eq!(region_area(&unit_square()), rint(1));
        let tri =
            ToricProfile::concave(vec![Point2::from_ints(0, 1), Point2::from_ints(2, 0)]).unwrap();
        assert_eq!(region_area(&tri), rint(1));
    }

    #[test]
    fn area_invariant_under_unimodular_scaling_of_profile() {
        let p = ToricProfile::concave(vec![
            Point2::from_ints(0, 3),
            Point2::from_ints(1, 1),
            Point2::from_ints(4, 0),
        ])
        .unwrap();
        let r = rat(3, 2);
        assert_eq!(
            region_area(&p.scaled(&r).unwrap()),
            region_area(&p) * &r * &r
        );
    }

    #[test]
    fn profile_validation() {
        // not starting on the mu2 axis
        assert!(
            ToricProfile::concave(vec![Point2::from_ints(1, 1), Point2::from_ints(2, 0)]).is_err()
        );
        // concave slopes must be nondecreasing
        assert!(ToricProfile::concave(vec![
            Point2::from_ints(0, 3),
            Point2::from_ints(1, 2),
            Point2::from_ints(2, 0),
        ])
        .is_err());
        // convex slopes must be nonincreasing
        assert!(ToricProfile::convex(vec![
            Point2::from_ints(0, 3),
            Point2::from_ints(1, 1),
            Point2::from_ints(3, 0),
        ])
        .is_err());
        // the same chain is a fine concave profile
        assert!(ToricProfile::concave(vec![
            Point2::from_ints(0, 3),
            Point2::from_ints(1, 1),
            Point2::from_ints(3, 0),
        ])
        .is_ok());
    }

    #[test]
    fn gauge_and_contains() {
        let d = delta(2);
        assert_eq!(d.gauge(&Point2::from_ints(1, 1)), rint(1));
        assert_eq!(d.gauge(&Point2::from_ints(2, 2)), rint(2));
        assert_eq!(d.gauge(&Point2::from_ints(3, 0)), rat(3, 2));
        assert!(d.contains(&Point2::from_ints(1, 1)));
        assert!(!d.contains(&Point2::from_ints(2, 1)));

        let sq = unit_square();
        assert_eq!(sq.gauge(&Point2::from_ints(1, 1)), rint(1));
        assert_eq!(sq.gauge(&Point2::from_ints(3, 1)), rint(3));
        assert!(sq.contains(&Point2::new(rat(1, 2), rint(1))));
        assert!(!sq.contains(&Point2::new(rat(3, 2), rat(1, 2))));
    }

    #[test]
    fn profile_inclusion() {
        let small = delta(1);
        let big = delta(2);
        assert!(profile_contains(&big, &small).unwrap());
        assert!(!profile_contains(&small, &big).unwrap());
        let skew = ToricProfile::concave(vec![
            Point2::from_ints(0, 2),
            Point2::from_ints(1, 1),
            Point2::from_ints(3, 0),
        ])
        .unwrap();
        // skew reaches (3, 0), outside Delta(2) but inside Delta(3)
        assert!(!profile_contains(&big, &skew).unwrap());
        assert!(profile_contains(&delta(3), &skew).unwrap());
        assert!(!profile_contains(&skew, &delta(3)).unwrap());
        assert!(profile_contains(&skew, &small).unwrap());
    }

    #[test]
    fn domain_volume() {
        assert_eq!(Domain::Ball(rint(1)).volume(), rat(1, 2));
        assert_eq!(Domain::Ellipsoid(rint(2), rint(1)).volume(), rint(1));
        assert_eq!(Domain::Polydisk(rint(2), rint(3)).volume(), rint(6));
        let u = Domain::Union(vec![Domain::Ball(rint(1)), Domain::Ball(rint(1))]);
        assert_eq!(u.volume(), rint(1));
    }

    #[test]
    fn height_at_follows_edges() {
        let p = ToricProfile::concave(vec![
            Point2::from_ints(0, 2),
            Point2::from_ints(1, 1),
            Point2::from_ints(3, 0),
        ])
        .unwrap();
        assert_eq!(p.height_at(&rat(1, 2)).unwrap(), rat(3, 2));
        assert_eq!(p.height_at(&rint(2)).unwrap(), rat(1, 2));
        assert_eq!(p.height_at(&rint(3)).unwrap(), rint(0));
        assert!(p.height_at(&rint(4)).is_none());
    }
}
