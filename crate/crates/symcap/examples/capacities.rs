//! Compute ECH capacities by every route the crate knows and watch the
//! routes agree: closed forms, the weight knapsack, both lattice-path
//! solvers, and the complement splitting.
//!
//! Run with: cargo run --release --example capacities

use symcap::capacities::{
    capacity_sequence, ck_ball, ck_concave_path, ck_concave_weights, ck_convex_complement_stable,
    ck_convex_path, ck_polydisk, MethodChoice,
};
use symcap::geom::{Domain, ProfileKind, ToricProfile};
use symcap::rational::{format_rational, rint};

fn main() {
    // closed forms
    let ball: Vec<String> = (0..=10)
        .map(|k| format_rational(&ck_ball(&rint(1), k)))
        .collect();
    println!("c_k(B(1)),  k = 0..10:  {}", ball.join(", "));
    let poly: Vec<String> = (0..=10)
        .map(|k| format_rational(&ck_polydisk(&rint(1), &rint(1), k)))
        .collect();
    println!("c_k(P(1,1)), k = 0..10:  {}", poly.join(", "));

    // the ellipsoid E(2,1) is simultaneously a concave and a convex toric
    // domain; four independent routes must agree exactly
    let concave = ToricProfile::triangle(&rint(2), &rint(1), ProfileKind::Concave).unwrap();
    let convex = ToricProfile::triangle(&rint(2), &rint(1), ProfileKind::Convex).unwrap();
    println!("\nE(2,1) cross-check (weights | concave path | convex path | complement):");
    for k in 0..=12u64 {
        let w = ck_concave_weights(&concave, k).unwrap().value;
        let cp = ck_concave_path(&concave, k).unwrap().value;
        let vp = ck_convex_path(&convex, k).unwrap().value;
        let cm = ck_convex_complement_stable(&convex, k).unwrap().value;
        assert!(
            w == cp && cp == vp && vp == cm,
            "routes disagree at k = {k}"
        );
        println!("  c_{k:<2} = {}", format_rational(&w));
    }

    // disjoint unions compose by the max-plus rule
    let union = Domain::Union(vec![Domain::Ball(rint(1)), Domain::Ball(rint(2))]);
    let seq = capacity_sequence(&union, 8, MethodChoice::Auto).unwrap();
    let vals: Vec<String> = seq.iter().map(|r| format_rational(&r.value)).collect();
    println!("\nc_k(B(1) + B(2)), k = 0..8:  {}", vals.join(", "));
}
