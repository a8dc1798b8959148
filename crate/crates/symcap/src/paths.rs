//! Convex and concave integral lattice paths, their lattice-point counts and
//! Omega-lengths, and the two branch-and-bound solvers that compute ECH
//! capacities from them.
//!
//! A convex integral path runs from `(0, b)` to `(a, 0)` with edge slopes
//! strictly decreasing from at most 0 down to vertical, so that the
//! reflection closure of the region it bounds with the axes is convex. A
//! concave integral path is the graph of a piecewise-linear convex function
//! between the same endpoints. The capacity of a convex toric domain is the
//! minimum Omega-length over convex paths enclosing at least `k + 1` lattice
//! points; the capacity of a concave toric domain is the maximum Omega-length
//! over concave paths enclosing at most `k` (points on the path itself not
//! counted).
//!
//! Both solvers run on integers: profile vertices are scaled to a common
//! denominator once, and all norms, areas and counts inside the search are
//! `i128` arithmetic. Searches are seeded with the boundary path of the
//! convex hull of a scaled copy of `Omega` intersected with the lattice,
//! which is usually optimal or nearly so, and pruned by norm monotonicity
//! and lattice-count bounds. Among optimal paths the lexicographically
//! smallest vertex sequence is returned, which makes witnesses reproducible.

use crate::geom::{anti_norm, dual_norm, Point2, ProfileKind, ToricProfile};
use crate::rational::{lcm_denominators, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Which family of integral paths a [`LatticePath`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    ConvexPath,
    ConcavePath,
}

/// A lattice polygonal path from `(0, b)` to `(a, 0)` in the nonnegative
/// quadrant, canonical (no collinear consecutive edges).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    kind: PathKind,
    vertices: Vec<(i64, i64)>,
}

impl LatticePath {
    pub fn new(kind: PathKind, vertices: Vec<(i64, i64)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("path needs at least one vertex"));
        }
        if vertices.iter().any(|&(x, y)| x < 0 || y < 0) {
            return Err(Error::InvalidPath(
                "vertices must lie in the nonnegative quadrant",
            ));
        }
        if vertices[0].0 != 0 {
            return Err(Error::InvalidPath("path must start on the mu2 axis"));
        }
        if vertices.last().unwrap().1 != 0 {
            return Err(Error::InvalidPath("path must end on the mu1 axis"));
        }
        if vertices.len() == 1 {
            if vertices[0] != (0, 0) {
                return Err(Error::InvalidPath(
                    "a single-vertex path must be the origin",
                ));
            }
            return Ok(LatticePath { kind, vertices });
        }
        let edges: Vec<(i64, i64)> = vertices
            .windows(2)
            .map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1))
            .collect();
        match kind {
            PathKind::ConvexPath => {
                for &(dx, dy) in &edges {
                    if dx < 0 || dy > 0 || (dx == 0 && dy == 0) {
                        return Err(Error::InvalidPath(
                            "convex path edges must step weakly right and weakly down",
                        ));
                    }
                }
                for w in edges.windows(2) {
                    // strictly decreasing slopes: each turn is strictly clockwise
                    if cross_i64(w[0], w[1]) >= 0 {
                        return Err(Error::InvalidPath(
                            "convex path edge slopes must strictly decrease",
                        ));
                    }
                }
            }
            PathKind::ConcavePath => {
                for &(dx, dy) in &edges {
                    if dx < 1 || dy > 0 {
                        return Err(Error::InvalidPath(
                            "concave path edges must step strictly right and weakly down",
                        ));
                    }
                }
                for w in edges.windows(2) {
                    if cross_i64(w[0], w[1]) <= 0 {
                        return Err(Error::InvalidPath(
                            "concave path edge slopes must strictly increase",
                        ));
                    }
                }
            }
        }
        Ok(LatticePath { kind, vertices })
    }

    /// The trivial path consisting of the origin alone.
    pub fn origin(kind: PathKind) -> Self {
        LatticePath {
            kind,
            vertices: vec![(0, 0)],
        }
    }

    pub fn kind(&self) -> PathKind {
        self.kind
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.vertices
            .windows(2)
            .map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1))
    }
}

fn cross_i64(u: (i64, i64), v: (i64, i64)) -> i128 {
    u.0 as i128 * v.1 as i128 - u.1 as i128 * v.0 as i128
}

/// Number of lattice points in the region bounded by a convex path and the
/// axis segments, boundary included. Computed by Pick's theorem from the
/// shoelace area and the boundary point count; the formula also covers the
/// degenerate zero-area paths (segments along an axis and the origin).
pub fn lattice_count_convex(path: &LatticePath) -> Result<u64> {
    if path.kind() != PathKind::ConvexPath {
        return Err(Error::InvalidPath(
            "lattice_count_convex needs a convex path",
        ));
    }
    let vs = path.vertices();
    let mut shoe: i128 = 0;
    let mut boundary: i128 = 0;
    for w in vs.windows(2) {
        shoe += cross_i64(w[0], w[1]);
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        boundary += dx.abs().gcd(&dy.abs()) as i128;
    }
    let b0 = vs[0].1 as i128;
    let a_end = vs.last().unwrap().0 as i128;
    let count = (-shoe + b0 + a_end + boundary).div_euclid(2) + 1;
    Ok(count as u64)
}

/// Number of lattice points in the region enclosed by a concave path and
/// the axes, excluding points lying on the path itself (points on the axes
/// but not on the path are included). Computed column by column.
pub fn lattice_count_concave(path: &LatticePath) -> Result<u64> {
    if path.kind() != PathKind::ConcavePath {
        return Err(Error::InvalidPath(
            "lattice_count_concave needs a concave path",
        ));
    }
    let vs = path.vertices();
    // column 0 holds (0, 0) .. (0, b-1); (0, b) is on the path
    let mut count = vs[0].1 as i128;
    for w in vs.windows(2) {
        let (y1, dx, dy) = (
            w[0].1 as i128,
            (w[1].0 - w[0].0) as i128,
            (w[1].1 - w[0].1) as i128,
        );
        for s in 1..=dx {
            // height of the path over column w[0].x + s
            let num = y1 * dx + s * dy;
            let on_path = num.rem_euclid(dx) == 0;
            count += num.div_euclid(dx) + 1 - i128::from(on_path);
        }
    }
    Ok(count as u64)
}

/// Omega-length of a lattice path: the sum over edges of the norm of the
/// 90-degree rotation `J e`, with `J(x, y) = (-y, x)`; the dual norm when
/// `omega` is convex and the anti-norm when it is concave.
pub fn omega_length(path: &LatticePath, omega: &ToricProfile) -> Result<Rational> {
    let mut total = Rational::zero();
    for (dx, dy) in path.edges() {
        let v = (-dy, dx);
        total += match omega.kind() {
            ProfileKind::Convex => dual_norm(v, omega)?,
            ProfileKind::Concave => anti_norm(v, omega)?,
        };
    }
    Ok(total)
}

/// A solved extremal-path problem: the optimal Omega-length and the
/// lexicographically smallest witness path attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSolution {
    pub value: Rational,
    pub path: LatticePath,
}

/// Profile boundary vertices on a common integer grid.
struct ScaledProfile {
    verts: Vec<(i128, i128)>,
    scale: BigInt,
    /// a(Omega) and b(Omega) at the grid scale.
    a: i128,
    b: i128,
}

impl ScaledProfile {
    fn new(profile: &ToricProfile) -> Result<Self> {
        let coords = profile
            .boundary()
            .vertices()
            .iter()
            .flat_map(|p| [&p.mu1, &p.mu2]);
        let scale = lcm_denominators(coords);
        let to_scaled = |r: &Rational| -> Result<i128> {
            let v = r.numer() * (&scale / r.denom());
            v.to_i128().ok_or(Error::InvalidProfile(
                "profile coordinates too large for path solver",
            ))
        };
        let verts = profile
            .boundary()
            .vertices()
            .iter()
            .map(|p| Ok((to_scaled(&p.mu1)?, to_scaled(&p.mu2)?)))
            .collect::<Result<Vec<_>>>()?;
        let a = verts.last().unwrap().0;
        let b = verts[0].1;
        Ok(ScaledProfile { verts, scale, a, b })
    }

    /// Dual norm of an integer vector, at the grid scale.
    fn dual(&self, v: (i128, i128)) -> i128 {
        let (ax, ay) = (v.0.abs(), v.1.abs());
        self.verts
            .iter()
            .map(|&(wx, wy)| ax * wx + ay * wy)
            .max()
            .unwrap()
    }

    /// Anti-norm of an integer vector, at the grid scale.
    fn anti(&self, v: (i128, i128)) -> i128 {
        self.verts
            .iter()
            .map(|&(wx, wy)| v.0 * wx + v.1 * wy)
            .min()
            .unwrap()
    }

    fn unscale(&self, value: i128) -> Rational {
        Rational::new(BigInt::from(value), self.scale.clone())
    }
}

/// Primitive step direction with its per-step Omega-length at grid scale.
#[derive(Clone, Copy, Debug)]
struct Dir {
    p: i64,
    q: i64,
    cost: i128,
}

/// Primitive directions `(p, q)` with `0 <= p <= pmax`, `-qmax <= q <= 0`
/// (horizontal and vertical included), sorted by slope descending.
fn convex_dirs(sp: &ScaledProfile, pmax: i64, qmax: i64) -> Vec<Dir> {
    let mut dirs = vec![Dir {
        p: 1,
        q: 0,
        cost: sp.b,
    }];
    for p in 1..=pmax {
        for q in 1..=qmax {
            if p.gcd(&q) != 1 {
                continue;
            }
            let cost = sp.dual((q as i128, p as i128));
            dirs.push(Dir { p, q: -q, cost });
        }
    }
    dirs.push(Dir {
        p: 0,
        q: -1,
        cost: sp.a,
    });
    // slope descending; the horizontal and vertical entries are already
    // pinned at the ends
    dirs[1..].sort_by(|a, b| {
        let c = a.q as i128 * b.p as i128 - b.q as i128 * a.p as i128;
        0.cmp(&c)
    });
    dirs
}

/// Primitive directions `(p, q)` with `p >= 1`, `q <= -1`, sorted by slope
/// ascending, filtered by the minimum lattice count an edge of that shape
/// must enclose.
fn concave_dirs(sp: &ScaledProfile, pmax: i64, qmax: i64, k: u64) -> Vec<Dir> {
    let mut dirs = Vec::new();
    for p in 1..=pmax {
        for q in 1..=qmax {
            if p.gcd(&q) != 1 {
                continue;
            }
            // interior lattice points under a single (p, -q) edge
            if (p as u128 - 1) * (q as u128 - 1) > 2 * k as u128 {
                continue;
            }
            let cost = sp.anti((q as i128, p as i128));
            dirs.push(Dir { p, q: -q, cost });
        }
    }
    dirs.sort_by(|a, b| {
        let c = a.q as i128 * b.p as i128 - b.q as i128 * a.p as i128;
        c.cmp(&0)
    });
    dirs
}

/// Exact `(k+1)`-th smallest Minkowski gauge over quadrant lattice points.
fn kth_gauge(profile: &ToricProfile, k: u64) -> Rational {
    let af = crate::rational::to_f64(profile.a());
    let bf = crate::rational::to_f64(profile.b());
    let area = crate::rational::to_f64(&crate::geom::region_area(profile));
    let mut r_est = ((k as f64 + 1.0) / area).sqrt() * 1.1 + 1.0;
    loop {
        let xmax = (r_est * af).ceil() as i64 + 1;
        let ymax = (r_est * bf).ceil() as i64 + 1;
        let mut gauges = Vec::with_capacity(((xmax + 1) * (ymax + 1)) as usize);
        for x in 0..=xmax {
            for y in 0..=ymax {
                gauges.push(profile.gauge(&Point2::from_ints(x, y)));
            }
        }
        gauges.sort_unstable();
        if gauges.len() <= k as usize {
            r_est *= 1.5;
            continue;
        }
        let r = gauges[k as usize].clone();
        // the box must cover everything with gauge <= r
        let rf = crate::rational::to_f64(&r);
        if (rf * af).ceil() as i64 + 1 > xmax || (rf * bf).ceil() as i64 + 1 > ymax {
            r_est = rf * 1.05 + 2.0;
            continue;
        }
        return r;
    }
}

/// Seed for the convex minimization: the upper-right boundary of the convex
/// hull of the lattice points of the smallest scaled copy of `Omega` that
/// holds at least `k + 1` of them.
fn convex_hull_seed(profile: &ToricProfile, k: u64) -> LatticePath {
    let r = kth_gauge(profile, k);
    if r.is_zero() {
        return LatticePath::origin(PathKind::ConvexPath);
    }
    let rf = crate::rational::to_f64(&r);
    let xcap = (rf * crate::rational::to_f64(profile.a())).ceil() as i64 + 1;
    let ycap = (rf * crate::rational::to_f64(profile.b())).ceil() as i64 + 1;
    let mut amax = 0i64;
    for x in (0..=xcap).rev() {
        if profile.gauge(&Point2::from_ints(x, 0)) <= r {
            amax = x;
            break;
        }
    }
    let mut tops: Vec<(i64, i64)> = Vec::with_capacity(amax as usize + 1);
    let mut y = ycap;
    for x in 0..=amax {
        while y > 0 && profile.gauge(&Point2::from_ints(x, y)) > r {
            y -= 1;
        }
        tops.push((x, y));
    }
    // upper hull with strictly decreasing slopes
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in tops {
        while hull.len() >= 2 {
            let n = hull.len();
            let e1 = (hull[n - 1].0 - hull[n - 2].0, hull[n - 1].1 - hull[n - 2].1);
            let e2 = (p.0 - hull[n - 1].0, p.1 - hull[n - 1].1);
            if cross_i64(e1, e2) >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let last = *hull.last().unwrap();
    if last.1 > 0 {
        hull.push((last.0, 0));
    }
    LatticePath::new(PathKind::ConvexPath, hull).expect("hull seed is a valid convex path")
}

/// Seed for the concave maximization: the boundary of the convex hull of
/// the quadrant lattice points outside the largest scaled copy of `Omega`
/// that keeps at most `k` of them strictly inside.
fn concave_hull_seed(profile: &ToricProfile, k: u64) -> LatticePath {
    let r = kth_gauge(profile, k);
    if r.is_zero() {
        return LatticePath::origin(PathKind::ConcavePath);
    }
    let rf = crate::rational::to_f64(&r);
    let xcap = (rf * crate::rational::to_f64(profile.a())).ceil() as i64 + 2;
    // first column whose axis point has gauge >= r
    let mut a_star = xcap;
    for x in 0..=xcap {
        if profile.gauge(&Point2::from_ints(x, 0)) >= r {
            a_star = x;
            break;
        }
    }
    let mut frontier: Vec<(i64, i64)> = Vec::with_capacity(a_star as usize + 1);
    for x in 0..a_star {
        let mut y = 1;
        while profile.gauge(&Point2::from_ints(x, y)) < r {
            y += 1;
        }
        frontier.push((x, y));
    }
    frontier.push((a_star, 0));
    // lower hull with strictly increasing slopes
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in frontier {
        while hull.len() >= 2 {
            let n = hull.len();
            let e1 = (hull[n - 1].0 - hull[n - 2].0, hull[n - 1].1 - hull[n - 2].1);
            let e2 = (p.0 - hull[n - 1].0, p.1 - hull[n - 1].1);
            if cross_i64(e1, e2) <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    LatticePath::new(PathKind::ConcavePath, hull).expect("hull seed is a valid concave path")
}

fn path_cost_scaled(sp: &ScaledProfile, path: &LatticePath, kind: ProfileKind) -> i128 {
    let mut total = 0i128;
    for (dx, dy) in path.edges() {
        let v = (-(dy as i128), dx as i128);
        total += match kind {
            ProfileKind::Convex => sp.dual(v),
            ProfileKind::Concave => sp.anti(v),
        };
    }
    total
}

struct ConvexSearch {
    sp: ScaledProfile,
    dirs: Vec<Dir>,
    need: i128,
    best_cost: i128,
    best_path: Option<Vec<(i64, i64)>>,
    prefix: Vec<(i64, i64)>,
}

impl ConvexSearch {
    /// `shoe` is the running shoelace sum of the path edges; `bpts` the
    /// number of primitive steps taken (= path boundary points spent).
    fn dfs(&mut self, x: i64, y: i64, last_dir: usize, cost: i128, shoe: i128, bpts: i128) {
        if y == 0 {
            let b0 = self.prefix[0].1 as i128;
            let count = (-shoe + b0 + x as i128 + bpts).div_euclid(2) + 1;
            if count >= self.need {
                if cost < self.best_cost {
                    self.best_cost = cost;
                    self.best_path = Some(self.prefix.clone());
                } else if cost == self.best_cost && self.best_path.is_none() {
                    self.best_path = Some(self.prefix.clone());
                }
            }
            return;
        }
        // any completion still has to bring mu2 down to the axis
        let lb = cost + y as i128 * self.sp.a;
        if lb > self.best_cost || (lb == self.best_cost && self.best_path.is_some()) {
            return;
        }
        let budget = self.best_cost - cost;
        // optimistic bound on the lattice count reachable within the budget:
        // the closed region area is (-shoe + x y)/2 so far, plus at most a
        // y-by-gain rectangle, and the boundary spends one point per step
        let xm = x as i128 + budget / self.sp.b;
        let b0 = self.prefix[0].1 as i128;
        let gain = xm - x as i128;
        let area2 = -shoe + x as i128 * y as i128 + 2 * y as i128 * gain;
        let max_count = (area2 + b0 + xm + bpts + gain + y as i128).div_euclid(2) + 1;
        if max_count < self.need {
            return;
        }
        let mut children: Vec<(i64, i64, usize, i128, i128)> = Vec::new();
        for (idx, d) in self.dirs.iter().enumerate().skip(last_dir.wrapping_add(1)) {
            if d.cost > budget {
                continue;
            }
            let mut m_max = budget / d.cost;
            if d.q < 0 {
                m_max = m_max.min((y / -d.q) as i128);
            }
            for m in 1..=m_max {
                let vx = x + (m * d.p as i128) as i64;
                let vy = y + (m * d.q as i128) as i64;
                children.push((vx, vy, idx, m, cost + m * d.cost));
            }
        }
        children.sort_unstable_by_key(|&(vx, vy, _, _, _)| (vx, vy));
        for (vx, vy, idx, m, ncost) in children {
            // bounds may have tightened while earlier children ran
            if ncost > self.best_cost {
                continue;
            }
            let nshoe = shoe + (x as i128 * vy as i128 - vx as i128 * y as i128);
            self.prefix.push((vx, vy));
            self.dfs(vx, vy, idx, ncost, nshoe, bpts + m);
            self.prefix.pop();
        }
    }
}

/// `min { l_Omega(path) : path convex integral, count(path) >= k + 1 }`,
/// with the lexicographically smallest optimal path as witness.
pub fn min_convex_path(omega: &ToricProfile, k: u64) -> Result<PathSolution> {
    if omega.kind() != ProfileKind::Convex {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Convex,
        });
    }
    let sp = ScaledProfile::new(omega)?;
    let seed = convex_hull_seed(omega, k);
    debug_assert!(lattice_count_convex(&seed).unwrap() > k);
    let seed_cost = path_cost_scaled(&sp, &seed, ProfileKind::Convex);

    let pmax = (seed_cost / sp.b).max(1) as i64;
    let qmax = (seed_cost / sp.a).max(1) as i64;
    let dirs = convex_dirs(&sp, pmax, qmax);
    let mut search = ConvexSearch {
        sp,
        dirs,
        need: k as i128 + 1,
        best_cost: seed_cost,
        best_path: None,
        prefix: Vec::new(),
    };

    // degenerate starts: the origin alone, then a horizontal segment
    if search.need <= 1 {
        search.best_cost = 0;
        search.best_path = Some(vec![(0, 0)]);
    } else {
        let horiz_cost = (k as i128) * search.sp.b;
        if horiz_cost <= search.best_cost {
            search.best_cost = horiz_cost;
            search.best_path = Some(vec![(0, 0), (k as i64, 0)]);
        }
    }

    let bmax = (search.best_cost / search.sp.a) as i64;
    for b in 1..=bmax {
        if b as i128 * search.sp.a > search.best_cost {
            break;
        }
        search.prefix.clear();
        search.prefix.push((0, b));
        search.dfs(0, b, usize::MAX, 0, 0, 0);
    }

    let vertices = search
        .best_path
        .expect("seed path is reachable by the search");
    let path = LatticePath::new(PathKind::ConvexPath, vertices)?;
    let value = search.sp.unscale(search.best_cost);
    Ok(PathSolution { value, path })
}

struct ConcaveSearch<'h> {
    sp: ScaledProfile,
    dirs: Vec<Dir>,
    k: i128,
    xmax: i64,
    /// scaled optima `c_0 .. c_{k-1}` for this profile, already computed by
    /// this same route; used as sound completion bounds
    hints: &'h [i128],
    best_cost: i128,
    best_path: Option<Vec<(i64, i64)>>,
    prefix: Vec<(i64, i64)>,
}

impl ConcaveSearch<'_> {
    fn dfs(&mut self, x: i64, y: i64, last_dir: usize, cost: i128, count: i128) {
        if y == 0 {
            if cost > self.best_cost {
                self.best_cost = cost;
                self.best_path = Some(self.prefix.clone());
            } else if cost == self.best_cost && self.best_path.is_none() {
                self.best_path = Some(self.prefix.clone());
            }
            return;
        }
        // every column strictly between here and the landing point encloses
        // at least its axis point
        let dx_max = (self.k - count + 1).min((self.xmax - x) as i128);
        if dx_max < 1 {
            return;
        }
        let mut optimistic = cost + self.sp.anti((y as i128, dx_max));
        // shifting the completion to the mu2 axis turns it into a concave
        // path enclosing at most y + (k - count) points, so earlier optima
        // bound the remaining length
        let shifted = (y as i128 + self.k - count) as usize;
        if let Some(&h) = self.hints.get(shifted) {
            optimistic = optimistic.min(cost + h);
        }
        if optimistic < self.best_cost || (optimistic == self.best_cost && self.best_path.is_some())
        {
            return;
        }
        let mut children: Vec<(i64, i64, usize, i128, i128)> = Vec::new();
        for (idx, d) in self.dirs.iter().enumerate().skip(last_dir.wrapping_add(1)) {
            let drop = -d.q as i128;
            if drop > y as i128 {
                continue;
            }
            let m_cap = (y as i128 / drop).min(dx_max / d.p as i128);
            let mut add = 0i128;
            let mut m = 1i128;
            while m <= m_cap {
                // columns x + (m-1)p + 1 ..= x + mp
                for s in (m - 1) * d.p as i128 + 1..=m * d.p as i128 {
                    let num = y as i128 * d.p as i128 + s * d.q as i128;
                    let on_path = num.rem_euclid(d.p as i128) == 0;
                    add += num.div_euclid(d.p as i128) + 1 - i128::from(on_path);
                }
                if count + add > self.k {
                    break;
                }
                children.push((
                    x + (m * d.p as i128) as i64,
                    y + (m * d.q as i128) as i64,
                    idx,
                    cost + m * d.cost,
                    count + add,
                ));
                m += 1;
            }
        }
        children.sort_unstable_by_key(|&(vx, vy, _, _, _)| (vx, vy));
        for (vx, vy, idx, ncost, ncount) in children {
            self.prefix.push((vx, vy));
            self.dfs(vx, vy, idx, ncost, ncount);
            self.prefix.pop();
        }
    }
}

fn max_concave_path_hinted(
    omega: &ToricProfile,
    k: u64,
    hints: &[i128],
) -> Result<(PathSolution, i128)> {
    let sp = ScaledProfile::new(omega)?;
    let seed = concave_hull_seed(omega, k);
    debug_assert!(lattice_count_concave(&seed).unwrap() <= k);
    let seed_cost = path_cost_scaled(&sp, &seed, ProfileKind::Concave);

    let xmax = k as i64 + 1;
    let dirs = concave_dirs(&sp, xmax, xmax, k);
    let mut search = ConcaveSearch {
        sp,
        dirs,
        k: k as i128,
        xmax,
        hints,
        best_cost: seed_cost,
        best_path: None,
        prefix: Vec::new(),
    };

    if search.best_cost <= 0 {
        search.best_cost = 0;
        search.best_path = Some(vec![(0, 0)]);
    }

    // column 0 already encloses b axis points, so b can reach at most k
    for b in 1..=(k as i64) {
        search.prefix.clear();
        search.prefix.push((0, b));
        search.dfs(0, b, usize::MAX, 0, b as i128);
    }

    let vertices = search
        .best_path
        .expect("seed path is reachable by the search");
    let path = LatticePath::new(PathKind::ConcavePath, vertices)?;
    let value = search.sp.unscale(search.best_cost);
    Ok((PathSolution { value, path }, search.best_cost))
}

/// `max { l_Omega(path) : path concave integral, enclosed count <= k }`
/// for every `k` up to `kmax`. Computed in ascending order so each search
/// can prune with the optima already established for smaller budgets.
pub fn concave_path_capacities(omega: &ToricProfile, kmax: u64) -> Result<Vec<PathSolution>> {
    if omega.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    let mut hints: Vec<i128> = Vec::with_capacity(kmax as usize + 1);
    let mut out = Vec::with_capacity(kmax as usize + 1);
    for k in 0..=kmax {
        let (sol, scaled) = max_concave_path_hinted(omega, k, &hints)?;
        hints.push(scaled);
        out.push(sol);
    }
    Ok(out)
}

/// `max { l_Omega(path) : path concave integral, enclosed count <= k }`,
/// with the lexicographically smallest optimal path as witness.
pub fn max_concave_path(omega: &ToricProfile, k: u64) -> Result<PathSolution> {
    if omega.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    Ok(concave_path_capacities(omega, k)?
        .pop()
        .expect("sequence is nonempty"))
}
