//! Dyadic cube packings of a 4-dimensional domain through a membership
//! oracle, and the certified error-term lower bounds they induce.
//!
//! Packing level `n` scans the closed cells of the lattice `2^-n Z^4` and
//! accepts those contained in the domain whose parent cell was not already
//! accepted. A cube of side `2^-n` is symplectomorphic to the open polydisk
//! `int(P(4^-n, 4^-n))`, so a packing and the exact polydisk capacities
//! yield, for each `k`, a lower bound on `e_k` that is `O(k^(1/4))` as the
//! depth matches the index scale.
//!
//! Cell containment is decided conservatively: for oracles declared
//! convex-cell-safe, the 16 vertices plus the center are tested (exact for
//! convex domains); otherwise a 3-per-axis subsample must pass, which is
//! only as good as the oracle's granularity. Only cells strictly inside the
//! domain are ever accepted.

use crate::capacities::ck_polydisk;
use crate::geom::{Point2, ProfileKind, ToricProfile};
use crate::rational::{rat, rint, to_f64, Rational};
use crate::Result;
use num_traits::Zero;
use std::collections::{BTreeMap, HashSet};

/// Membership test for a compact region of 4-dimensional Euclidean space.
/// `contains` must be `false` outside the bounding box, and must answer
/// conservatively (never claim containment of an outside point).
pub trait MembershipOracle {
    fn contains(&self, p: &[Rational; 4]) -> bool;
    fn bounding_box(&self) -> [(Rational, Rational); 4];
    /// Declare that the region is convex, making the vertex test on cells
    /// exact.
    fn convex_cell_safe(&self) -> bool {
        false
    }
}

/// Axis-aligned box oracle; exact and convex-cell-safe.
#[derive(Clone, Debug)]
pub struct BoxOracle {
    lo: [Rational; 4],
    hi: [Rational; 4],
}

impl BoxOracle {
    pub fn new(lo: [Rational; 4], hi: [Rational; 4]) -> Result<Self> {
        for i in 0..4 {
            if lo[i] >= hi[i] {
                return Err(crate::Error::Parse("box must have positive extent".into()));
            }
        }
        Ok(BoxOracle { lo, hi })
    }

    /// The cube `[0, side]^4`.
    pub fn cube(side: Rational) -> Result<Self> {
        let lo = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        let hi = [side.clone(), side.clone(), side.clone(), side];
        BoxOracle::new(lo, hi)
    }
}

impl MembershipOracle for BoxOracle {
    fn contains(&self, p: &[Rational; 4]) -> bool {
        (0..4).all(|i| p[i] >= self.lo[i] && p[i] <= self.hi[i])
    }

    fn bounding_box(&self) -> [(Rational, Rational); 4] {
        [
            (self.lo[0].clone(), self.hi[0].clone()),
            (self.lo[1].clone(), self.hi[1].clone()),
            (self.lo[2].clone(), self.hi[2].clone()),
            (self.lo[3].clone(), self.hi[3].clone()),
        ]
    }

    fn convex_cell_safe(&self) -> bool {
        true
    }
}

// Rational bracket of pi, enough digits for any desk-scale grid.
fn pi_hi() -> Rational {
    rat(3_141_592_653_589_793_239, 1_000_000_000_000_000_000)
}

/// Membership oracle of a toric domain `X_Omega`: a 4-point `(u1, v1, u2, v2)`
/// lies inside when `(pi (u1^2 + v1^2), pi (u2^2 + v2^2))` lies in `Omega`.
/// The irrational factor is bracketed by a rational upper bound of pi, so
/// the test is conservative and never accepts an outside point.
#[derive(Clone, Debug)]
pub struct ToricOracle {
    profile: ToricProfile,
    box_half_width: Rational,
}

impl ToricOracle {
    pub fn new(profile: ToricProfile) -> Self {
        // radius bound: pi r^2 <= max(a, b) on each factor
        let m = profile.a().max(profile.b()).clone();
        let r = (to_f64(&m) / std::f64::consts::PI).sqrt() * 1.01 + 1e-9;
        let box_half_width = crate::rational::round_to_denominator(r, 1 << 20);
        ToricOracle {
            profile,
            box_half_width,
        }
    }

    pub fn profile(&self) -> &ToricProfile {
        &self.profile
    }
}

impl MembershipOracle for ToricOracle {
    fn contains(&self, p: &[Rational; 4]) -> bool {
        let q1 = &p[0] * &p[0] + &p[1] * &p[1];
        let q2 = &p[2] * &p[2] + &p[3] * &p[3];
        let hi = pi_hi();
        let mu1 = &hi * q1;
        let mu2 = hi * q2;
        match self.profile.kind() {
            ProfileKind::Concave => {
                if &mu1 > self.profile.a() {
                    return false;
                }
                // the boundary height is nonincreasing, so evaluating at the
                // upper mu1 stays conservative
                match self.profile.height_at(&mu1) {
                    Some(h) => mu2 <= h,
                    None => false,
                }
            }
            ProfileKind::Convex => self.profile.contains(&Point2::new(mu1, mu2)),
        }
    }

    fn bounding_box(&self) -> [(Rational, Rational); 4] {
        let w = &self.box_half_width;
        [
            (-w.clone(), w.clone()),
            (-w.clone(), w.clone()),
            (-w.clone(), w.clone()),
            (-w.clone(), w.clone()),
        ]
    }

    fn convex_cell_safe(&self) -> bool {
        // convex reflection closure, or a single boundary edge (an
        // ellipsoid), makes the 4-dimensional domain convex
        self.profile.kind() == ProfileKind::Convex || self.profile.boundary().vertices().len() == 2
    }
}

/// A dyadic cube packing: per-level counts of accepted cubes and the cell
/// coordinates themselves (at scale `2^n`).
#[derive(Clone, Debug, Default)]
pub struct CubePacking {
    per_level: BTreeMap<u32, u64>,
    cells: BTreeMap<u32, Vec<[i64; 4]>>,
}

impl CubePacking {
    /// Number of cubes accepted at each level.
    pub fn per_level(&self) -> &BTreeMap<u32, u64> {
        &self.per_level
    }

    pub fn count(&self, level: u32) -> u64 {
        self.per_level.get(&level).copied().unwrap_or(0)
    }

    /// Accepted cell coordinates at `level`, in units of `2^-level`.
    pub fn cells(&self, level: u32) -> &[[i64; 4]] {
        self.cells.get(&level).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `sum_n m_n 16^-n`.
    pub fn covered_volume(&self) -> f64 {
        self.per_level
            .iter()
            .map(|(&n, &m)| m as f64 * (16.0f64).powi(-(n as i32)))
            .sum()
    }
}

fn cell_contained(oracle: &dyn MembershipOracle, level: u32, cell: [i64; 4]) -> bool {
    let scale = rint(1) / rint(1i64 << level);
    let corner = |c: i64, o: i64| -> Rational { rint(c + o) * &scale };
    if oracle.convex_cell_safe() {
        // 16 vertices plus the center
        for mask in 0..16u32 {
            let p = [
                corner(cell[0], (mask & 1) as i64),
                corner(cell[1], ((mask >> 1) & 1) as i64),
                corner(cell[2], ((mask >> 2) & 1) as i64),
                corner(cell[3], ((mask >> 3) & 1) as i64),
            ];
            if !oracle.contains(&p) {
                return false;
            }
        }
        let half = &scale / rint(2);
        let center = [
            rint(cell[0]) * &scale + &half,
            rint(cell[1]) * &scale + &half,
            rint(cell[2]) * &scale + &half,
            rint(cell[3]) * &scale + &half,
        ];
        oracle.contains(&center)
    } else {
        // 3-per-axis subsample, corners included
        for i0 in 0..3i64 {
            for i1 in 0..3i64 {
                for i2 in 0..3i64 {
                    for i3 in 0..3i64 {
                        let p = [
                            (rint(2 * cell[0] + i0) * &scale) / rint(2),
                            (rint(2 * cell[1] + i1) * &scale) / rint(2),
                            (rint(2 * cell[2] + i2) * &scale) / rint(2),
                            (rint(2 * cell[3] + i3) * &scale) / rint(2),
                        ];
                        if !oracle.contains(&p) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Pack the domain with dyadic cubes down to `max_level`. Level `n` accepts
/// the `2^-n` cells contained in the domain whose parent cell was not
/// already accepted (equivalently: cells not inside any earlier cube).
pub fn dyadic_pack(oracle: &dyn MembershipOracle, max_level: u32) -> CubePacking {
    assert!(max_level >= 1, "packing starts at the half-integer lattice");
    let bbox = oracle.bounding_box();
    let mut packing = CubePacking::default();
    // cells accepted or inside an accepted ancestor, per level
    let mut covered: Vec<HashSet<[i64; 4]>> = Vec::new();

    for level in 1..=max_level {
        let scale = 1i64 << level;
        let range = |i: usize| -> (i64, i64) {
            let lo = &bbox[i].0 * rint(scale);
            let hi = &bbox[i].1 * rint(scale);
            (to_f64(&lo).floor() as i64, to_f64(&hi).ceil() as i64)
        };
        let (x0, x1) = range(0);
        let (y0, y1) = range(1);
        let (z0, z1) = range(2);
        let (w0, w1) = range(3);
        let mut accepted: Vec<[i64; 4]> = Vec::new();
        let mut level_covered: HashSet<[i64; 4]> = HashSet::new();
        for cx in x0..x1 {
            for cy in y0..y1 {
                for cz in z0..z1 {
                    for cw in w0..w1 {
                        let cell = [cx, cy, cz, cw];
                        let parent = [
                            cx.div_euclid(2),
                            cy.div_euclid(2),
                            cz.div_euclid(2),
                            cw.div_euclid(2),
                        ];
                        let inside_earlier =
                            covered.last().is_some_and(|prev| prev.contains(&parent));
                        if inside_earlier {
                            level_covered.insert(cell);
                            continue;
                        }
                        if cell_contained(oracle, level, cell) {
                            accepted.push(cell);
                            level_covered.insert(cell);
                        }
                    }
                }
            }
        }
        packing.per_level.insert(level, accepted.len() as u64);
        packing.cells.insert(level, accepted);
        covered.push(level_covered);
    }
    packing
}

/// Exact `e_k(P(a, a))` via the polydisk closed form; always at least
/// `-2a`, which is the estimate the cube bounds lean on.
pub fn ek_polydisk_lower(a: &Rational, k: u64) -> f64 {
    let ck = ck_polydisk(a, a, k);
    let af = to_f64(a);
    let e = to_f64(&ck) - 2.0 * af * (k as f64).sqrt();
    debug_assert!(e >= -2.0 * af - 1e-9);
    e
}

/// Certified lower bound for `e_k` of a domain of volume `vol` packed as
/// given: only cubes with `a_i^2 >= vol / k` participate, contributing
/// `-2 sqrt(2) sum a_i + 2 (V_k - vol) / sqrt(vol) * sqrt(k)`.
pub fn basest_lower_bound(packing: &CubePacking, vol: f64, k: u64) -> f64 {
    assert!(vol > 0.0 && k >= 1);
    let mut sum_a = 0.0;
    let mut v_k = 0.0;
    for (&n, &m) in packing.per_level() {
        let a = (4.0f64).powi(-(n as i32));
        if a * a >= vol / k as f64 {
            sum_a += m as f64 * a;
            v_k += m as f64 * a * a;
        }
    }
    -2.0 * 2.0f64.sqrt() * sum_a + 2.0 * (v_k - vol) / vol.sqrt() * (k as f64).sqrt()
}

/// One row of an exponent scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub k: u64,
    /// Level selected by `16^n <= k / vol < 16^(n+1)`.
    pub level: u32,
    pub bound: f64,
    /// `bound / k^(1/4)`.
    pub normalized: f64,
    /// The selected level exceeds the packing depth, so the bound degrades.
    pub depth_limited: bool,
}

/// Evaluate the packing bound across a sweep of indices, normalizing by
/// `k^(1/4)`. (The matching upper-bound construction, packing the
/// complement inside a large cube, is not implemented.)
pub fn exponent_scan(
    oracle: &dyn MembershipOracle,
    vol: f64,
    max_level: u32,
    ks: &[u64],
) -> Vec<ScanRow> {
    let packing = dyadic_pack(oracle, max_level);
    ks.iter()
        .map(|&k| {
            let mut level = 0u32;
            while 16.0f64.powi(level as i32 + 1) <= k as f64 / vol {
                level += 1;
            }
            let bound = basest_lower_bound(&packing, vol, k);
            ScanRow {
                k,
                level,
                bound,
                normalized: bound / (k as f64).powf(0.25),
                depth_limited: level > max_level,
            }
        })
        .collect()
}
