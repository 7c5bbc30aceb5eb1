//! Strategic timing of the attack for a fixed recovery delay, plus the
//! joint sweep where the defender re-plans at every attack time.
//!
//! ```sh
//! cargo run --release --example attack_timing
//! ```

use netgame::planning::{
    attack_timing, attacker_optimum, joint_sweep, timing_bound_diagnostic, GameBase,
    ResilienceCost,
};
use netgame::rational::{format_frac, frac, to_f64};

fn main() {
    let base = GameBase::new(10, frac(1, 30), frac(1, 20));

    // Fixed recovery delay: the attacker's payoff curve over the attack time.
    let tau_r = frac(37, 100);
    let timing = attack_timing(&base, tau_r, frac(1, 200)).unwrap();
    println!(
        "fixed tau_R={}: best tau = {}, u_A = {:.4}",
        format_frac(tau_r),
        timing.best_tau.map(format_frac).unwrap_or_else(|| "none".into()),
        to_f64(timing.u_a)
    );
    let diag = timing_bound_diagnostic(&base, tau_r, frac(1, 200)).unwrap();
    println!(
        "  first broken-for-good point on the grid: {} (regime bound {:.4}, ratio-form bound {:.4}, consistent={})",
        diag.grid_first_s3.map(format_frac).unwrap_or_else(|| "none".into()),
        to_f64(diag.regime_bound),
        to_f64(diag.ratio_form_bound),
        diag.consistent
    );

    // Joint: per attack time the defender re-plans the recovery delay, then
    // the attacker picks the time.
    let records = joint_sweep(&base, &ResilienceCost::Quartic, (frac(2, 5), frac(3, 5)), frac(1, 200)).unwrap();
    let best = attacker_optimum(&records).unwrap();
    println!(
        "joint sweep: attacker-optimal tau = {}, u_A = {:.4}, situation = {:?}",
        format_frac(best.tau),
        to_f64(best.u_a),
        best.situation.map(|s| s.token())
    );
}
