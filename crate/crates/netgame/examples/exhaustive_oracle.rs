//! Ground-truth equilibria by full enumeration, next to the closed form.
//!
//! ```sh
//! cargo run --release --example exhaustive_oracle
//! ```

use netgame::game::GameParams;
use netgame::oracle::{solve_exhaustive, DEFAULT_LIMIT_N};
use netgame::rational::{frac, to_f64};
use netgame::spe::solve;

fn main() {
    let points = [
        GameParams::new(4, frac(1, 10), frac(1, 5), frac(3, 10), frac(1, 10)).unwrap(),
        GameParams::new(5, frac(1, 20), frac(1, 8), frac(3, 10), frac(1, 5)).unwrap(),
        GameParams::new(5, frac(1, 11), frac(1, 13), frac(3, 7), frac(6, 17)).unwrap(),
        GameParams::new(6, frac(1, 12), frac(2, 11), frac(2, 7), frac(3, 13)).unwrap(),
    ];
    for p in points {
        let oracle = solve_exhaustive(&p, DEFAULT_LIMIT_N).unwrap();
        let closed = solve(&p).unwrap();
        println!(
            "n={} c_D={} c_A={} tau={} tau_R={}",
            p.n,
            netgame::rational::format_frac(p.c_d),
            netgame::rational::format_frac(p.c_a),
            netgame::rational::format_frac(p.tau),
            netgame::rational::format_frac(p.tau_r),
        );
        println!(
            "  oracle: {} counts={:?} u_D={:.4} u_A={:.4} ({} tied triples, {} pairs examined)",
            oracle.situation.token(),
            (oracle.e1_count, oracle.ea_count, oracle.e2_count),
            to_f64(oracle.u_d),
            to_f64(oracle.u_a),
            oracle.best_triples.len(),
            oracle.evaluations,
        );
        println!(
            "  closed: {} counts={:?} u_D={:.4} u_A={:.4}",
            closed.situation.token(),
            closed.counts(),
            to_f64(closed.u_d),
            to_f64(closed.u_a),
        );
        assert_eq!(oracle.u_d, closed.u_d);
        assert_eq!(oracle.u_a, closed.u_a);
    }
    println!("closed form and oracle agree on every point above");
}
