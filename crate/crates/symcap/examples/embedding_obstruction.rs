//! Obstructing volume-preserving symplectic embeddings: among equal-volume
//! toric domains satisfying the error-term convergence, an embedding forces
//! the intercept sum a + b not to increase.
//!
//! Run with: cargo run --release --example embedding_obstruction

use num_traits::Zero;
use symcap::asymptotics::{embedding_obstruction, Verdict};
use symcap::geom::{region_area, ProfileKind, ToricProfile};
use symcap::rational::{format_rational, rat, rint, Rational};

fn describe(name_s: &str, s: &ToricProfile, name_t: &str, t: &ToricProfile) {
    let verdict = embedding_obstruction(s, t, &Rational::zero());
    println!(
        "{name_s} (a+b = {}, area {})  ->  {name_t} (a+b = {}, area {}): {:?}",
        format_rational(&(s.a() + s.b())),
        format_rational(&region_area(s)),
        format_rational(&(t.a() + t.b())),
        format_rational(&region_area(t)),
        verdict,
    );
}

fn main() {
    // same volume 1, intercept sums 2 vs 3: the square cannot embed into
    // the ellipsoid
    let square = ToricProfile::rectangle(&rint(1), &rint(1)).unwrap();
    let e21 = ToricProfile::triangle(&rint(2), &rint(1), ProfileKind::Concave).unwrap();
    describe("P(1,1)", &square, "E(2,1)", &e21);
    // the reverse direction passes the necessary condition (no conclusion)
    describe("E(2,1)", &e21, "P(1,1)", &square);
    // identical domains: reflexive, never obstructed
    describe("P(1,1)", &square, "P(1,1)", &square);
    // mismatched volumes: the test does not apply
    let tall = ToricProfile::triangle(&rat(9, 2), &rint(1), ProfileKind::Concave).unwrap();
    let v = embedding_obstruction(&square, &tall, &rat(1, 100));
    assert_eq!(v, Verdict::VolumeMismatch);
    println!("P(1,1) -> E(9/2,1): {v:?} (areas 1 vs 9/4)");
}
