//! Dyadic cube packings through a membership oracle and the certified
//! error-term lower bounds they induce, normalized by k^(1/4).
//!
//! Run with: cargo run --release --example cube_packing

use symcap::asymptotics::error_term;
use symcap::bounds::{basest_lower_bound, dyadic_pack, exponent_scan, BoxOracle, ToricOracle};
use symcap::capacities::ck_ball;
use symcap::geom::{ProfileKind, ToricProfile};
use symcap::rational::{rat, rint};

fn main() {
    // the unit 4-cube packs perfectly at level 1
    let cube = BoxOracle::cube(rint(1)).unwrap();
    let packing = dyadic_pack(&cube, 3);
    println!(
        "[0,1]^4 packing: counts per level {:?}",
        packing.per_level()
    );
    println!("covered volume {:.6}", packing.covered_volume());
    println!(
        "bound at k = 16: {:.6} (= -8 sqrt 2)",
        basest_lower_bound(&packing, 1.0, 16)
    );

    println!("\nexponent scan on [0,1]^4:");
    for row in exponent_scan(&cube, 1.0, 3, &[16, 256, 4096]) {
        println!(
            "  k = {:>4}: level {} bound {:>9.4}  bound/k^(1/4) = {:>8.4}",
            row.k, row.level, row.bound, row.normalized
        );
    }

    // a round domain packs less well; the bound stays below the exact e_k
    let ball =
        ToricOracle::new(ToricProfile::triangle(&rint(1), &rint(1), ProfileKind::Concave).unwrap());
    let packing = dyadic_pack(&ball, 3);
    println!("\nB(1) packing: counts per level {:?}", packing.per_level());
    let vol = rat(1, 2);
    for k in [4u64, 16, 64] {
        let bound = basest_lower_bound(&packing, 0.5, k);
        let exact = error_term(&ck_ball(&rint(1), k), k, &vol);
        println!("  k = {k:>2}: bound {bound:>9.4} <= exact e_k = {exact:>8.4}");
        assert!(bound <= exact);
    }
}
