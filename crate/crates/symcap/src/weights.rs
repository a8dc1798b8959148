//! Weight expansion of a concave toric domain by the recursive
//! inscribed-triangle decomposition.
//!
//! The decomposition peels the largest triangle `Delta(c)` contained in
//! `Omega`, shears the two remaining pieces back into concave toric position
//! with the unimodular maps `(x, y) -> (x, x + y - c)` and
//! `(x, y) -> (x + y - c, y)`, and recurses. Harvesting is best-first on the
//! inscribed size, so the weights come out globally nonincreasing and any
//! truncation (by term budget or by a minimum-weight threshold) keeps exactly
//! the largest weights; capacities computed from a truncation are then still
//! exact whenever at least `k` weights were kept, and certified lower bounds
//! otherwise. Abandoned area is tracked exactly in `remainder_area`, so
//! `sum(w_i^2)/2 + remainder_area = area(Omega)` holds on every run.
//!
//! For a rational profile whose vertex denominators divide `D`, every
//! inscribed size is at least `1/D` and the recursion stays on the `1/D`
//! grid, so each harvested triangle removes at least `1/(2 D^2)` of area and
//! the expansion terminates.

use crate::geom::{region_area, Point2, Polyline, ProfileKind, ToricProfile};
use crate::rational::Rational;
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Nonincreasing ball weights of a concave toric domain, together with the
/// exactly-tracked area not covered when the recursion is cut short.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightExpansion {
    pub weights: Vec<Rational>,
    pub remainder_area: Rational,
    pub truncated: bool,
}

impl WeightExpansion {
    /// `true` when the leading `min(k, len)` weights are exactly the `k`
    /// largest weights of the full expansion, making `c_k` from them exact.
    pub fn exact_for(&self, k: u64) -> bool {
        !self.truncated || self.weights.len() as u64 >= k
    }
}

/// Largest `c` such that `Delta(c)` fits inside the concave region: the
/// minimum of `mu1 + mu2` over the boundary vertices (which, for the graph
/// of a convex function, is the minimum over the whole boundary).
pub fn inscribed_triangle_size(omega: &ToricProfile) -> Result<Rational> {
    if omega.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    Ok(omega
        .boundary()
        .vertices()
        .iter()
        .map(|p| &p.mu1 + &p.mu2)
        .min()
        .expect("boundary is nonempty"))
}

/// Remove `Delta(c)` from the region and shear the two remaining pieces
/// back into concave toric position. `c` must be the inscribed size.
/// Either piece is absent when the contact interval reaches the
/// corresponding axis.
pub fn split(
    omega: &ToricProfile,
    c: &Rational,
) -> Result<(Option<ToricProfile>, Option<ToricProfile>)> {
    if omega.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    if c != &inscribed_triangle_size(omega)? {
        return Err(Error::SplitMismatch);
    }
    let vs = omega.boundary().vertices();
    let on_line: Vec<usize> = (0..vs.len())
        .filter(|&i| &vs[i].mu1 + &vs[i].mu2 == *c)
        .collect();
    let i_lo = *on_line
        .first()
        .expect("the minimum is attained at a vertex");
    let i_hi = *on_line.last().unwrap();
    let t_lo = &vs[i_lo].mu1;
    let t_hi = &vs[i_hi].mu1;

    let left = if t_lo.is_positive() {
        let mapped: Vec<Point2> = vs[..=i_lo]
            .iter()
            .map(|p| Point2::new(p.mu1.clone(), &p.mu1 + &p.mu2 - c))
            .collect();
        Some(ToricProfile::new(
            ProfileKind::Concave,
            Polyline::new(mapped)?,
        )?)
    } else {
        None
    };
    let right = if t_hi < c {
        let mapped: Vec<Point2> = vs[i_hi..]
            .iter()
            .map(|p| Point2::new(&p.mu1 + &p.mu2 - c, p.mu2.clone()))
            .collect();
        Some(ToricProfile::new(
            ProfileKind::Concave,
            Polyline::new(mapped)?,
        )?)
    } else {
        None
    };
    Ok((left, right))
}

struct Node {
    c: Rational,
    seq: u64,
    profile: ToricProfile,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.seq == other.seq
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap: larger c first; ties resolved by insertion order so the
        // expansion is deterministic
        self.c.cmp(&other.c).then(other.seq.cmp(&self.seq))
    }
}

/// Run the decomposition best-first, harvesting the largest remaining
/// inscribed triangle at every step. A branch is abandoned (into
/// `remainder_area`) when its inscribed size drops below `min_weight` or
/// when `max_terms` weights have been harvested.
pub fn weight_expansion(
    omega: &ToricProfile,
    min_weight: &Rational,
    max_terms: usize,
) -> Result<WeightExpansion> {
    if omega.kind() != ProfileKind::Concave {
        return Err(Error::KindMismatch {
            expected: ProfileKind::Concave,
        });
    }
    if min_weight.is_negative() {
        return Err(Error::Parse("min_weight must be nonnegative".into()));
    }
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    heap.push(Node {
        c: inscribed_triangle_size(omega)?,
        seq,
        profile: omega.clone(),
    });

    let mut weights: Vec<Rational> = Vec::new();
    let mut remainder = Rational::zero();
    let mut truncated = false;

    while let Some(node) = heap.pop() {
        let below_threshold = min_weight.is_positive() && node.c < *min_weight;
        if weights.len() >= max_terms || below_threshold {
            // best-first order: everything left is at most node.c
            truncated = true;
            remainder += region_area(&node.profile);
            for rest in heap.drain() {
                remainder += region_area(&rest.profile);
            }
            break;
        }
        let (left, right) = split(&node.profile, &node.c)?;
        weights.push(node.c.clone());
        for child in [left, right].into_iter().flatten() {
            if region_area(&child).is_zero() {
                continue;
            }
            let c = inscribed_triangle_size(&child)?;
            debug_assert!(c <= node.c, "child inscribed size exceeds parent");
            seq += 1;
            heap.push(Node {
                c,
                seq,
                profile: child,
            });
        }
    }

    debug_assert!(
        weights.windows(2).all(|w| w[0] >= w[1]),
        "harvest must be nonincreasing"
    );
    Ok(WeightExpansion {
        weights,
        remainder_area: remainder,
        truncated,
    })
}

/// Sum of the weights; for a terminating expansion this equals
/// `a + b - affine_length(boundary)`.
pub fn weight_sum(expansion: &WeightExpansion) -> Rational {
    expansion.weights.iter().sum()
}

/// Default branch cutoff used by the CLI: `a(Omega) * 2^-20`.
pub fn default_min_weight(omega: &ToricProfile) -> Rational {
    omega.a() / Rational::from_integer(num_bigint::BigInt::from(1u64 << 20))
}

/// Default term budget used by the CLI.
pub const DEFAULT_MAX_TERMS: usize = 4096;
