//! The two lattice-path characterizations of toric capacities, with their
//! extremal witnesses: minimal convex paths enclosing at least k+1 points,
//! maximal concave paths enclosing at most k.
//!
//! Run with: cargo run --release --example lattice_paths

use symcap::geom::{ProfileKind, ToricProfile};
use symcap::paths::{
    lattice_count_concave, lattice_count_convex, max_concave_path, min_convex_path,
};
use symcap::rational::{format_rational, rint};

fn main() {
    let square = ToricProfile::rectangle(&rint(1), &rint(1)).unwrap();
    println!("P(1,1), minimal convex paths:");
    for k in 0..=6u64 {
        let s = min_convex_path(&square, k).unwrap();
        println!(
            "  k = {k}: length {} enclosing {} points, witness {:?}",
            format_rational(&s.value),
            lattice_count_convex(&s.path).unwrap(),
            s.path.vertices(),
        );
    }

    let triangle = ToricProfile::triangle(&rint(1), &rint(1), ProfileKind::Concave).unwrap();
    println!("\nB(1), maximal concave paths:");
    for k in 0..=6u64 {
        let s = max_concave_path(&triangle, k).unwrap();
        println!(
            "  k = {k}: length {} enclosing {} points, witness {:?}",
            format_rational(&s.value),
            lattice_count_concave(&s.path).unwrap(),
            s.path.vertices(),
        );
    }
}
