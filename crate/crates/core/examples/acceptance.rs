//! Runs the acceptance suite and prints one line per criterion.
//!
//! `cargo run --release --example acceptance -- --skip-slow` leaves out the
//! largest unit check.

use nssets::accept::{run, AcceptOptions};

fn main() {
    let skip_slow = std::env::args().any(|a| a == "--skip-slow");
    let report = run(&AcceptOptions { seed: 0, skip_slow });
    println!("{report}");
    std::process::exit(if report.passed() { 0 } else { 1 });
}
