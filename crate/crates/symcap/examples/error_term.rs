//! The error term e_k = c_k - 2 sqrt(k vol): the oscillation band of the
//! ball and the drift of a polygonalized strictly concave domain toward
//! -Ru/2.
//!
//! Run with: cargo run --release --example error_term

use symcap::asymptotics::{ball_oscillation, conjecture_check, polygonalize_power};
use symcap::geom::{Domain, ProfileKind};
use symcap::rational::rint;

fn main() {
    // the ball never converges: its e_k oscillates between -3a/2 and -a/2
    for start in [1_000u64, 10_000, 100_000] {
        let (min, max) = ball_oscillation(&rint(1), start, 1_000_000);
        println!("B(1), k in [{start}, 1e6]: e_k in [{min:.5}, {max:.5}]  (band [-1.5, -0.5])");
    }

    // a strictly concave domain converges to -(a+b)/2; at desk scale the
    // window statistics drift toward the target
    let profile = polygonalize_power(1.0, 1.0, 2.0, ProfileKind::Concave, 256, 1 << 20).unwrap();
    let series = conjecture_check(&Domain::Toric(profile), 2000, 0.5).unwrap();
    println!(
        "\npower p=2 profile (256 samples), window k in [{}, {}]:",
        series.window.k_lo, series.window.k_hi
    );
    println!(
        "  e_k min {:.5}, max {:.5}, mean {:.5}; target -Ru/2 = {:.1}",
        series.window.min,
        series.window.max,
        series.window.mean,
        series.ruelle_half.unwrap(),
    );

    // the rational ellipsoid oscillates like the ball: report only
    let series = conjecture_check(&Domain::Ellipsoid(rint(2), rint(1)), 5000, 0.5).unwrap();
    println!(
        "\nE(2,1), window k in [{}, {}]: mean e_k {:.5} vs -Ru/2 = {:.1} (no convergence claim)",
        series.window.k_lo,
        series.window.k_hi,
        series.window.mean,
        series.ruelle_half.unwrap(),
    );
}
