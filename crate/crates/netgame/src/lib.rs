//! Solver and verification toolkit for a two-player, three-stage network
//! protection and recovery game.
//!
//! A defender builds a network, an attacker removes links at time `τ`, and
//! the defender may heal at time `τ+τ_R`. Both players pay unit link costs
//! and the defender earns the fraction of time the network is connected.
//! The crate provides:
//!
//! - [`graph`]: graph values, topology constructors (path tree, ring,
//!   Harary, the ring-plus-chords witness), a brute-force edge-cut search,
//!   healing sets and secure-link contraction.
//! - [`game`]: parameters, exact-rational utilities and the stage-3
//!   healing best response.
//! - [`spe`]: closed-form subgame perfect equilibria for both parameter
//!   regimes, with concrete witness strategies.
//! - [`oracle`]: an exhaustive backward-induction solver for small `n`, and
//!   a grid harness comparing it against the closed form.
//! - [`planning`]: resilience planning over the recovery delay, strategic
//!   attack timing, and the joint sweeps behind the case studies.
//! - [`cli`]: the command-line front end used by the `netgame` binary.
//!
//! Start with the runnable programs under `examples/`; each one exercises a
//! single capability end to end.

pub mod cli;
pub mod error;
pub mod game;
pub mod graph;
pub mod oracle;
pub mod planning;
pub mod rational;
pub mod spe;

pub use error::{GameError, GraphError, OracleError, ParseError, PlanError, SpeError};
pub use game::{best_response_stage3, thresholds, utility_a, utility_d, GameParams, StrategyTriple, Thresholds};
pub use graph::{
    case4_witness, contract, harary, heal_edges, min_removals_for_components, ring, tree, Edge,
    EdgeSet, Graph,
};
pub use oracle::{solve_exhaustive, verify_grid, GridReport, MatchClass, OracleResult, DEFAULT_LIMIT_N};
pub use planning::{
    attack_timing, attacker_optimum, cost_ratio_sweep, f_d, joint_sweep, plan_resilience, GameBase,
    PlanResult, RatioRecord, ResilienceCost, SweepRecord, TimingResult,
};
pub use rational::{frac, parse_frac, Frac, EPS};
pub use spe::{
    boundary_rule, candidates, delta, no_threat_check, solve, solve_regime1, solve_regime2,
    witness, OutcomeRow, Regime, Situation, SpeOutcome,
};
