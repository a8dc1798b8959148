//! The Ruelle invariant of a toric domain: closed form a + b against the
//! rotation-density line integral, quadrature converging under refinement.
//!
//! Run with: cargo run --release --example ruelle_invariant

use symcap::rational::{format_rational, rint};
use symcap::ruelle::{rotation_density, ruelle_integral, ruelle_toric, ProfileSide, SmoothProfile};

fn main() {
    println!(
        "closed forms: Ru(B(1)) = {}, Ru(E(2,1)) = {}, Ru(P(1,1)) = {}",
        format_rational(&ruelle_toric(&rint(1), &rint(1))),
        format_rational(&ruelle_toric(&rint(2), &rint(1))),
        format_rational(&ruelle_toric(&rint(1), &rint(1))),
    );

    // rotation density along the diagonal edge of Delta(c) is constant 2/c
    let rho = rotation_density((1.0, 2.0), (-1.0, 1.0)).unwrap();
    println!("rotation density on the edge of Delta(3): {rho} (= 2/3)");

    for (label, a, b, p) in [
        ("line a=b=1 (ellipsoid)", 1.0, 1.0, 1.0),
        ("power p=2, a=b=1", 1.0, 1.0, 2.0),
        ("power p=3, a=2, b=1", 2.0, 1.0, 3.0),
    ] {
        let profile = SmoothProfile::power(a, b, p, ProfileSide::ConcaveDomain).unwrap();
        println!("{label}: exact {}", a + b);
        for nodes in [8, 32, 128, 256] {
            let v = ruelle_integral(&profile, nodes).unwrap();
            println!(
                "  {nodes:>4} nodes: {v:.15}  (error {:.2e})",
                (v - (a + b)).abs()
            );
        }
    }
}
