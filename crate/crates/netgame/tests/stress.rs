//! Randomized and targeted stress comparison of the closed form against
//! the exhaustive oracle. The default tests keep counts moderate; the
//! ignored test runs a much larger sample (and n = 6):
//!
//! ```sh
//! cargo test --test stress -- --ignored --nocapture
//! ```

use netgame::game::GameParams;
use netgame::oracle::{classify, is_boundary_point, solve_exhaustive, MatchClass};
use netgame::rational::{frac, Frac};
use netgame::spe::{candidates, solve};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn check_point(p: &GameParams, limit_n: usize) {
    let closed = solve(p).unwrap();
    let oracle = solve_exhaustive(p, limit_n).unwrap();
    let boundary = is_boundary_point(p, &frac(1, 1_000_000_000));
    let class = classify(&closed, &oracle, boundary, &candidates(p));
    assert_ne!(
        class,
        MatchClass::Mismatch,
        "mismatch at {p:?}: closed=({:?}, {:?}, {}, {}) oracle=({:?}, {:?}, {}, {})",
        closed.situation,
        closed.counts(),
        closed.u_d,
        closed.u_a,
        oracle.situation,
        (oracle.e1_count, oracle.ea_count, oracle.e2_count),
        oracle.u_d,
        oracle.u_a,
    );
}

fn random_params(rng: &mut StdRng, n: usize) -> Option<GameParams> {
    let den = |rng: &mut StdRng| rng.gen_range(7..60) as i128;
    let d1 = den(rng);
    let c_d = frac(rng.gen_range(1..(d1 / 2).max(2) as u64) as i128, d1);
    let d2 = den(rng);
    let c_a = frac(rng.gen_range(1..(d2 / 2).max(2) as u64) as i128, d2);
    let d3 = den(rng);
    let tau = frac(rng.gen_range(0..(d3 * 3 / 4).max(1) as u64) as i128, d3);
    let d4 = den(rng);
    let tau_r = frac(rng.gen_range(0..(d4 / 2).max(1) as u64) as i128, d4);
    GameParams::new(n, c_d, c_a, tau, tau_r).ok()
}

/// Parameters engineered to land on given floor thresholds: `k_A_R`
/// attacks affordable in the recovery window, a horizon budget `k_A_H`
/// that overshoots the healing capacity `k` by `overshoot`.
fn targeted_params(
    n: usize,
    q: i128,
    k_a_r: i64,
    k: i64,
    overshoot: i64,
    num_jitter: i128,
) -> Option<GameParams> {
    let c_a = frac(1, q);
    // tau_R in (k_A_R, k_A_R + 1) attacker units.
    let tau_r = frac(2 * k_a_r as i128 + 1, 2 * q);
    // 1 - tau in (k+overshoot, k+overshoot+1) attacker units.
    let k_a_h = k + overshoot;
    let one_minus_tau = frac(2 * k_a_h as i128 + 1 + num_jitter, 2 * q);
    let tau = Frac::from_integer(1) - one_minus_tau;
    if tau < Frac::from_integer(0) {
        return None;
    }
    // c_D makes the healing capacity exactly k.
    let fin = Frac::from_integer(1) - tau - tau_r;
    if fin <= Frac::from_integer(0) {
        return None;
    }
    let c_d = fin / frac(2 * k as i128 + 1, 2);
    if c_d <= Frac::from_integer(0) {
        return None;
    }
    GameParams::new(n, c_d, c_a, tau, tau_r).ok()
}

#[test]
fn random_points_never_mismatch() {
    let mut rng = StdRng::seed_from_u64(0xC0FFEE);
    let mut checked = 0;
    while checked < 1500 {
        if let Some(p) = random_params(&mut rng, 4) {
            check_point(&p, 6);
            checked += 1;
        }
    }
    let mut checked = 0;
    while checked < 500 {
        if let Some(p) = random_params(&mut rng, 5) {
            check_point(&p, 6);
            checked += 1;
        }
    }
}

#[test]
fn threshold_collision_corners_never_mismatch() {
    // Sweep the floor-threshold combinations that exercise the secure and
    // sacrificial network ladders hardest: low attacker recovery budgets
    // with horizon budgets at or just past the healing capacity.
    let mut checked = 0;
    for n in [4usize, 5] {
        for q in [8i128, 11, 13, 17, 23, 29] {
            for k in 1..=(n as i64 - 2) {
                for k_a_r in 0..=3i64 {
                    for overshoot in -1..=3i64 {
                        for jitter in [0i128, -1, 1] {
                            if let Some(p) = targeted_params(n, q, k_a_r, k, overshoot, jitter) {
                                check_point(&p, 6);
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 400, "only {checked} corner points generated");
}

#[test]
#[ignore = "large randomized sample; run with --ignored"]
fn big_randomized_sample_including_n6() {
    let mut rng = StdRng::seed_from_u64(0xDEADBEEF);
    let mut checked = 0;
    while checked < 8000 {
        if let Some(p) = random_params(&mut rng, 4) {
            check_point(&p, 6);
            checked += 1;
        }
    }
    let mut checked = 0;
    while checked < 2000 {
        if let Some(p) = random_params(&mut rng, 5) {
            check_point(&p, 6);
            checked += 1;
        }
    }
    let mut checked = 0;
    while checked < 60 {
        if let Some(p) = random_params(&mut rng, 6) {
            check_point(&p, 6);
            checked += 1;
        }
    }
    println!("big sample clean");
}
