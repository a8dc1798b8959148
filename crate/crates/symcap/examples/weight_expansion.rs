//! The recursive triangle decomposition of a concave toric domain: weights,
//! the exact area identity, and the weight-sum identity.
//!
//! Run with: cargo run --release --example weight_expansion

use num_traits::Zero;
use symcap::geom::{affine_length, region_area, Point2, ProfileKind, ToricProfile};
use symcap::rational::{format_rational, rint, Rational};
use symcap::weights::{weight_expansion, weight_sum};

fn report(name: &str, profile: &ToricProfile) {
    let e = weight_expansion(profile, &Rational::zero(), 1 << 16).unwrap();
    let ws: Vec<String> = e.weights.iter().map(format_rational).collect();
    println!("{name}: weights ({})", ws.join(", "));
    let squares: Rational = e.weights.iter().map(|w| w * w).sum();
    println!(
        "  area identity: sum w^2/2 + remainder = {} + {} = {} (area = {})",
        format_rational(&(&squares / rint(2))),
        format_rational(&e.remainder_area),
        format_rational(&(&squares / rint(2) + &e.remainder_area)),
        format_rational(&region_area(profile)),
    );
    let rhs = profile.a() + profile.b() - affine_length(profile.boundary());
    println!(
        "  weight sum {} = a + b - affine length {}",
        format_rational(&weight_sum(&e)),
        format_rational(&rhs),
    );
    assert_eq!(weight_sum(&e), rhs);
}

fn main() {
    // the continued-fraction expansion of an ellipsoid
    let e53 = ToricProfile::triangle(&rint(5), &rint(3), ProfileKind::Concave).unwrap();
    report("E(5,3)", &e53);

    // a polygonal concave domain
    let skew = ToricProfile::concave(vec![
        Point2::from_ints(0, 2),
        Point2::from_ints(1, 1),
        Point2::from_ints(3, 0),
    ])
    .unwrap();
    report("polygon (0,2)-(1,1)-(3,0)", &skew);

    // truncation keeps the largest weights and tracks the leftover area
    let huge = ToricProfile::triangle(&rint(355), &rint(113), ProfileKind::Concave).unwrap();
    let cut = weight_expansion(&huge, &Rational::zero(), 5).unwrap();
    let ws: Vec<String> = cut.weights.iter().map(format_rational).collect();
    println!(
        "E(355,113) truncated to 5 terms: ({}), remainder area {}",
        ws.join(", "),
        format_rational(&cut.remainder_area),
    );
}
