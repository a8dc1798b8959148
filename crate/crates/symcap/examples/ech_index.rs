//! Evaluating the ECH index and its action-weighted approximation on
//! generator data, including the JSON form the CLI accepts.
//!
//! Run with: cargo run --release --example ech_index

use symcap::ech::{action, approx_index, ech_index, ech_index_rewrite, gap_check, parse_generator};

fn main() {
    let gen = parse_generator(
        r#"{
            "orbits": [
                {"m": 2, "A": "1",   "theta": "6/5",  "sl": -1, "hyperbolic": false},
                {"m": 1, "A": "5/2", "theta": "-7/3", "sl": 2,  "hyperbolic": false}
            ],
            "linking": [[null, 3], [3, null]]
        }"#,
    )
    .unwrap();

    println!("action      = {}", action(&gen));
    println!("I           = {}", ech_index(&gen));
    println!("I (rewrite) = {}", ech_index_rewrite(&gen).unwrap());
    println!("I_approx    = {}", approx_index(&gen));
    let check = gap_check(&gen);
    println!(
        "gap {} <= bound {} (sum of multiplicities): {}",
        check.gap, check.bound, check.ok
    );
    assert!(check.ok);

    // integer rotation numbers collapse the approximation error entirely
    let flat =
        parse_generator(r#"{"orbits":[{"m":3,"A":1.0,"theta":"2","sl":1}],"linking":[[null]]}"#)
            .unwrap();
    println!(
        "\ninteger theta: I = {}, I_approx = {}, gap = {}",
        ech_index(&flat),
        approx_index(&flat),
        gap_check(&flat).gap
    );
}
