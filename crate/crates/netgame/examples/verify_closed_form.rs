//! Grid verification: the closed form against the exhaustive oracle on
//! interior parameter lattices.
//!
//! ```sh
//! cargo run --release --example verify_closed_form
//! ```

use netgame::cli::default_verification_grid;
use netgame::oracle::{verify_grid, DEFAULT_LIMIT_N};

fn main() {
    for n in [4usize, 5] {
        let points = default_verification_grid(n);
        let report = verify_grid(&points, 1e-9, DEFAULT_LIMIT_N).unwrap();
        println!("n={n}: {}", report.summary_line());
        assert_eq!(report.mismatch, 0);
    }
    println!("no mismatches; see `netgame verify` for the CSV report");
}
