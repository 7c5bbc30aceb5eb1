//! Choosing the recovery delay against a resilience cost.
//!
//! ```sh
//! cargo run --release --example resilience_planning
//! ```

use netgame::planning::{plan_resilience, GameBase, ResilienceCost};
use netgame::rational::{format_frac, frac, to_f64};

fn main() {
    let base = GameBase::new(10, frac(1, 20), frac(1, 8));
    let plan = plan_resilience(&base, frac(3, 10), &ResilienceCost::Quartic, frac(1, 200)).unwrap();

    println!(
        "best tau_R = {}  F_D = {:.6}",
        plan.best_tau_r.map(format_frac).unwrap_or_else(|| "none".into()),
        to_f64(plan.f_d)
    );
    println!("infeasible (F_D <= 0):");
    for (lo, hi) in &plan.infeasible_intervals {
        println!("  [{}, {}]", format_frac(*lo), format_frac(*hi));
    }

    // A few sampled points around the optimum.
    println!("\ntau_R        u_D     f_D   situation");
    for pt in plan.curve.iter().filter(|pt| {
        pt.tau_r >= frac(23, 100) && pt.tau_r <= frac(27, 100)
    }) {
        println!(
            "{:>6}  {:>7.4}  {:>7.4}  {}",
            format_frac(pt.tau_r),
            to_f64(pt.u_d),
            to_f64(pt.f_d),
            pt.situation.token()
        );
    }
}
