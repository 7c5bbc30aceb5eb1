//! Closed-form equilibria at a few parameter points.
//!
//! ```sh
//! cargo run --release --example solve_spe
//! ```

use netgame::game::GameParams;
use netgame::rational::{frac, to_f64};
use netgame::spe::{solve, witness, OutcomeRow};

fn main() {
    // A ten-node team with cheap defense and a pricey attacker, at three
    // recovery speeds: secure ring, concede-and-heal, give up.
    for tau_r in [frac(1, 5), frac(9, 20), frac(11, 20)] {
        let p = GameParams::new(10, frac(1, 20), frac(1, 8), frac(3, 10), tau_r).unwrap();
        let outcome = solve(&p).unwrap();
        println!("{}", OutcomeRow::new(&p, &outcome).to_record());

        let w = witness(&outcome, &p).unwrap();
        println!(
            "  witness: |E1|={} |E_A|={} |E2|={}  u_D={:.4} u_A={:.4}",
            w.e1.len(),
            w.e_a.len(),
            w.e2.len(),
            to_f64(outcome.u_d),
            to_f64(outcome.u_a),
        );
    }

    // Attacker too expensive to ever strike: a bare tree stands.
    let p = GameParams::new(5, frac(1, 20), frac(3, 5), frac(1, 2), frac(1, 10)).unwrap();
    let outcome = solve(&p).unwrap();
    println!("{}", OutcomeRow::new(&p, &outcome).to_record());
}
