//! Resilience planning over the recovery delay, strategic attack timing,
//! and the joint sweeps behind the case studies.
//!
//! The net defender objective is `F_D = U_D - R_D(τ_R)` where `R_D` is a
//! monotone nonincreasing resilience cost: faster recovery costs more.
//! `F_D` is piecewise smooth with jumps wherever a floor threshold moves,
//! so optimization is grid search with an explicit, reported step. Sweep
//! grids keep `τ + τ_R` strictly below 1; a recovery that lands exactly at
//! the end of the horizon never materializes, so the degenerate endpoint
//! is not a plannable choice.

use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::PlanError;
use crate::game::GameParams;
use crate::rational::{frac, frac_from_f64, to_f64, Frac, EPS};
use crate::spe::{solve, Regime, Situation, SpeOutcome};

/// Fixed part of the parameter set during a planning sweep.
#[derive(Debug, Clone)]
pub struct GameBase {
    pub n: usize,
    pub c_d: Frac,
    pub c_a: Frac,
}

impl GameBase {
    pub fn new(n: usize, c_d: Frac, c_a: Frac) -> GameBase {
        GameBase { n, c_d, c_a }
    }

    fn params(&self, tau: Frac, tau_r: Frac) -> Result<GameParams, PlanError> {
        Ok(GameParams::new(self.n, self.c_d, self.c_a, tau, tau_r)?)
    }
}

/// Normalized resilience cost `R_D: [0,1] -> [0,1]`, monotone nonincreasing
/// in the recovery delay.
#[derive(Clone)]
pub enum ResilienceCost {
    /// No resilience cost; `F_D` reduces to `U_D`.
    Zero,
    /// `(1-τ_R)^4`, the convex cost used in the case studies.
    Quartic,
    /// Arbitrary mapping, validated at construction.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for ResilienceCost {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResilienceCost::Zero => write!(f, "ResilienceCost::Zero"),
            ResilienceCost::Quartic => write!(f, "ResilienceCost::Quartic"),
            ResilienceCost::Custom(_) => write!(f, "ResilienceCost::Custom"),
        }
    }
}

impl ResilienceCost {
    /// Wraps a custom mapping after checking monotonicity and range on a
    /// sampling grid.
    pub fn custom<F>(f: F) -> Result<ResilienceCost, PlanError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let x = i as f64 / 100.0;
            let y = f(x);
            if !(-EPS..=1.0 + EPS).contains(&y) {
                return Err(PlanError::InvalidCost(format!(
                    "cost at τ_R={x} is {y}, outside [0,1]"
                )));
            }
            if y > prev + EPS {
                return Err(PlanError::InvalidCost(format!(
                    "cost increases at τ_R={x}; it must be nonincreasing"
                )));
            }
            prev = y;
        }
        Ok(ResilienceCost::Custom(Arc::new(f)))
    }

    /// Cost at `τ_R`. Exact for the built-in forms.
    pub fn cost(&self, tau_r: &Frac) -> Frac {
        match self {
            ResilienceCost::Zero => Frac::zero(),
            ResilienceCost::Quartic => {
                let base = Frac::from_integer(1) - *tau_r;
                base * base * base * base
            }
            ResilienceCost::Custom(f) => {
                frac_from_f64(f(to_f64(*tau_r))).unwrap_or_else(|_| Frac::zero())
            }
        }
    }
}

/// Net defender payoff at the equilibrium of `p`: `U_D - R_D(τ_R)`, except
/// that the all-empty equilibrium carries no resilience term (a defender
/// who never builds buys no recovery capability).
pub fn f_d(p: &GameParams, r: &ResilienceCost) -> Result<Frac, PlanError> {
    let outcome = solve(p)?;
    Ok(f_d_of_outcome(&outcome, &p.tau_r, r))
}

fn f_d_of_outcome(outcome: &SpeOutcome, tau_r: &Frac, r: &ResilienceCost) -> Frac {
    if outcome.situation == Situation::S5 {
        Frac::zero()
    } else {
        outcome.u_d - r.cost(tau_r)
    }
}

/// One sampled point of a recovery-delay sweep.
#[derive(Debug, Clone)]
pub struct PlanCurvePoint {
    pub tau_r: Frac,
    pub u_d: Frac,
    pub u_a: Frac,
    pub f_d: Frac,
    pub situation: Situation,
    pub regime: Regime,
}

/// Result of optimizing the recovery delay.
#[derive(Debug, Clone)]
pub struct PlanResult {
    /// Best sampled `τ_R` with nonnegative `F_D`; `None` when every sampled
    /// point is infeasible.
    pub best_tau_r: Option<Frac>,
    /// `F_D` at the best point, or the sampled maximum when none is
    /// feasible.
    pub f_d: Frac,
    /// Equilibrium at the best point.
    pub outcome: Option<SpeOutcome>,
    /// Maximal grid runs where `F_D <= 0`, as inclusive `(lo, hi)` pairs.
    pub infeasible_intervals: Vec<(Frac, Frac)>,
    pub curve: Vec<PlanCurvePoint>,
}

fn validate_step(step: &Frac) -> Result<(), PlanError> {
    if *step <= Frac::zero() || *step > frac(1, 100) {
        return Err(PlanError::InvalidStep(format!(
            "step must satisfy 0 < step <= 1/100, got {}",
            crate::rational::format_frac(*step)
        )));
    }
    Ok(())
}

/// Grid of multiples of `step` from `lo` while `tau + value < 1` and
/// `value <= hi`.
fn sweep_grid(lo: &Frac, hi: &Frac, other_time: &Frac, step: &Frac) -> Vec<Frac> {
    let one = Frac::from_integer(1);
    let mut out = Vec::new();
    let mut j = (*lo / *step).ceil().to_integer();
    if j < 0 {
        j = 0;
    }
    loop {
        let v = Frac::from_integer(j) * *step;
        if v > *hi || v + *other_time >= one {
            break;
        }
        out.push(v);
        j += 1;
    }
    out
}

/// Samples `F_D` over the recovery-delay grid and returns the feasible
/// argmax (ties to the smaller delay).
pub fn plan_resilience(
    base: &GameBase,
    tau: Frac,
    r: &ResilienceCost,
    step: Frac,
) -> Result<PlanResult, PlanError> {
    validate_step(&step)?;
    let grid = sweep_grid(&Frac::zero(), &Frac::from_integer(1), &tau, &step);
    let curve: Result<Vec<PlanCurvePoint>, PlanError> = grid
        .par_iter()
        .map(|tau_r| {
            let p = base.params(tau, *tau_r)?;
            let outcome = solve(&p)?;
            let f = f_d_of_outcome(&outcome, tau_r, r);
            Ok(PlanCurvePoint {
                tau_r: *tau_r,
                u_d: outcome.u_d,
                u_a: outcome.u_a,
                f_d: f,
                situation: outcome.situation,
                regime: outcome.regime,
            })
        })
        .collect();
    let curve = curve?;

    let mut best: Option<&PlanCurvePoint> = None;
    for pt in &curve {
        if pt.f_d >= Frac::zero() && best.is_none_or(|b| pt.f_d > b.f_d) {
            best = Some(pt);
        }
    }
    let infeasible_intervals = infeasible_runs(&curve);
    let (best_tau_r, f_best, outcome) = match best {
        Some(pt) => {
            let p = base.params(tau, pt.tau_r)?;
            (Some(pt.tau_r), pt.f_d, Some(solve(&p)?))
        }
        None => {
            let max_f = curve.iter().map(|pt| pt.f_d).max().unwrap_or_else(Frac::zero);
            (None, max_f, None)
        }
    };
    Ok(PlanResult {
        best_tau_r,
        f_d: f_best,
        outcome,
        infeasible_intervals,
        curve,
    })
}

fn infeasible_runs(curve: &[PlanCurvePoint]) -> Vec<(Frac, Frac)> {
    let mut out = Vec::new();
    let mut run_start: Option<Frac> = None;
    let mut last: Option<Frac> = None;
    for pt in curve {
        if pt.f_d <= Frac::zero() {
            if run_start.is_none() {
                run_start = Some(pt.tau_r);
            }
            last = Some(pt.tau_r);
        } else if let (Some(lo), Some(hi)) = (run_start.take(), last.take()) {
            out.push((lo, hi));
        }
    }
    if let (Some(lo), Some(hi)) = (run_start, last) {
        out.push((lo, hi));
    }
    out
}

/// One sampled point of an attack-timing sweep.
#[derive(Debug, Clone)]
pub struct TimingCurvePoint {
    pub tau: Frac,
    pub tau_r: Frac,
    pub u_d: Frac,
    pub u_a: Frac,
    pub situation: Situation,
}

/// Result of optimizing the attack time for a fixed recovery delay.
#[derive(Debug, Clone)]
pub struct TimingResult {
    /// Best sampled `τ`; `None` when the curve is flat (the attack time is
    /// irrelevant to the attacker).
    pub best_tau: Option<Frac>,
    pub u_a: Frac,
    pub situation: Option<Situation>,
    pub curve: Vec<TimingCurvePoint>,
}

/// Samples the attacker's equilibrium payoff over the attack-time grid.
/// A broken-for-good equilibrium rewards attacking early, a build-late
/// equilibrium rewards attacking late, and everything else is flat; the
/// grid argmax realizes all three without hard-coding interval formulas.
pub fn attack_timing(base: &GameBase, tau_r: Frac, step: Frac) -> Result<TimingResult, PlanError> {
    validate_step(&step)?;
    let grid = sweep_grid(&Frac::zero(), &Frac::from_integer(1), &tau_r, &step);
    let curve: Result<Vec<TimingCurvePoint>, PlanError> = grid
        .par_iter()
        .map(|tau| {
            let p = base.params(*tau, tau_r)?;
            let outcome = solve(&p)?;
            Ok(TimingCurvePoint {
                tau: *tau,
                tau_r,
                u_d: outcome.u_d,
                u_a: outcome.u_a,
                situation: outcome.situation,
            })
        })
        .collect();
    let curve = curve?;
    let flat = curve.windows(2).all(|w| w[0].u_a == w[1].u_a);
    if flat || curve.is_empty() {
        return Ok(TimingResult {
            best_tau: None,
            u_a: curve.first().map(|p| p.u_a).unwrap_or_else(Frac::zero),
            situation: None,
            curve,
        });
    }
    let best = curve
        .iter()
        .reduce(|a, b| if b.u_a > a.u_a { b } else { a })
        .expect("nonempty curve");
    Ok(TimingResult {
        best_tau: Some(best.tau),
        u_a: best.u_a,
        situation: Some(best.situation),
        curve,
    })
}

/// The threshold past which the attack leaves the network broken for good
/// can be written as the difference `1 - τ_R - (n-1)·c_D` or as the ratio
/// `(1-τ_R)/((n-1)·c_D)`; the ratio form can leave `[0,1]` entirely. Both
/// are reported next to the grid's empirical first point so sweeps can be
/// sanity-checked against either form.
#[derive(Debug, Clone)]
pub struct TimingDiagnostic {
    /// First sampled `τ` whose equilibrium is the broken-for-good label.
    pub grid_first_s3: Option<Frac>,
    /// `1 - τ_R - (n-1)·c_D`, the bound implied by the regime condition.
    pub regime_bound: Frac,
    /// `(1-τ_R)/((n-1)·c_D)`, the ratio form of the same threshold.
    pub ratio_form_bound: Frac,
    /// Whether the grid's first S3 point is consistent with the regime
    /// bound (within one step).
    pub consistent: bool,
}

pub fn timing_bound_diagnostic(
    base: &GameBase,
    tau_r: Frac,
    step: Frac,
) -> Result<TimingDiagnostic, PlanError> {
    let result = attack_timing(base, tau_r, step)?;
    let grid_first_s3 = result
        .curve
        .iter()
        .find(|pt| pt.situation == Situation::S3)
        .map(|pt| pt.tau);
    let nm1_cd = Frac::from_integer((base.n - 1) as i128) * base.c_d;
    let regime_bound = Frac::from_integer(1) - tau_r - nm1_cd;
    let ratio_form_bound = (Frac::from_integer(1) - tau_r) / nm1_cd;
    let consistent = match &grid_first_s3 {
        None => true,
        Some(first) => *first + step >= regime_bound,
    };
    Ok(TimingDiagnostic { grid_first_s3, regime_bound, ratio_form_bound, consistent })
}

/// One row of a joint sweep: attack time, planned recovery delay, and the
/// equilibrium under that plan.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub tau: Frac,
    pub tau_r_star: Option<Frac>,
    pub regime: Option<Regime>,
    pub situation: Option<Situation>,
    pub e1: usize,
    pub ea: usize,
    pub e2: usize,
    pub u_d: Frac,
    pub u_a: Frac,
    pub f_d: Frac,
}

/// For each attack time in the range, plans the best recovery delay and
/// records the resulting equilibrium.
pub fn joint_sweep(
    base: &GameBase,
    r: &ResilienceCost,
    tau_range: (Frac, Frac),
    step: Frac,
) -> Result<Vec<SweepRecord>, PlanError> {
    validate_step(&step)?;
    let taus = sweep_grid(&tau_range.0, &tau_range.1, &Frac::zero(), &step);
    taus.into_iter()
        .map(|tau| {
            let plan = plan_resilience(base, tau, r, step)?;
            Ok(match (plan.best_tau_r, plan.outcome) {
                (Some(tau_r), Some(outcome)) => SweepRecord {
                    tau,
                    tau_r_star: Some(tau_r),
                    regime: Some(outcome.regime),
                    situation: Some(outcome.situation),
                    e1: outcome.e1_count,
                    ea: outcome.ea_count,
                    e2: outcome.e2_count,
                    u_d: outcome.u_d,
                    u_a: outcome.u_a,
                    f_d: plan.f_d,
                },
                _ => SweepRecord {
                    tau,
                    tau_r_star: None,
                    regime: None,
                    situation: None,
                    e1: 0,
                    ea: 0,
                    e2: 0,
                    u_d: Frac::zero(),
                    u_a: Frac::zero(),
                    f_d: plan.f_d,
                },
            })
        })
        .collect()
}

/// Attacker's favorite row of a joint sweep: highest payoff, earliest
/// attack time on ties. Rows without a feasible plan are skipped.
pub fn attacker_optimum(records: &[SweepRecord]) -> Option<&SweepRecord> {
    records
        .iter()
        .filter(|r| r.tau_r_star.is_some())
        .reduce(|a, b| if b.u_a > a.u_a { b } else { a })
}

/// One row of a cost-ratio sweep: attacker cost swept as a multiple of the
/// defender cost, with the joint optimization rerun per ratio.
#[derive(Debug, Clone)]
pub struct RatioRecord {
    pub ratio: Frac,
    pub c_a: Frac,
    pub tau_star: Option<Frac>,
    pub tau_r_star: Option<Frac>,
    pub situation: Option<Situation>,
    pub u_d: Frac,
    pub u_a: Frac,
}

/// Sweeps `c_A/c_D` and reruns the joint attack-timing/recovery-planning
/// optimization at every ratio.
pub fn cost_ratio_sweep(
    n: usize,
    c_d: Frac,
    ratio_range: (Frac, Frac),
    ratio_step: Frac,
    r: &ResilienceCost,
    tau_range: (Frac, Frac),
    step: Frac,
) -> Result<Vec<RatioRecord>, PlanError> {
    if ratio_step <= Frac::zero() {
        return Err(PlanError::InvalidStep("ratio step must be positive".into()));
    }
    let mut out = Vec::new();
    let mut ratio = ratio_range.0;
    while ratio <= ratio_range.1 {
        let c_a = ratio * c_d;
        let base = GameBase::new(n, c_d, c_a);
        let records = joint_sweep(&base, r, tau_range, step)?;
        let best = attacker_optimum(&records);
        out.push(match best {
            Some(rec) => RatioRecord {
                ratio,
                c_a,
                tau_star: Some(rec.tau),
                tau_r_star: rec.tau_r_star,
                situation: rec.situation,
                u_d: rec.u_d,
                u_a: rec.u_a,
            },
            None => RatioRecord {
                ratio,
                c_a,
                tau_star: None,
                tau_r_star: None,
                situation: None,
                u_d: Frac::zero(),
                u_a: Frac::zero(),
            },
        });
        ratio += ratio_step;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn quartic_cost_is_exact() {
        let r = ResilienceCost::Quartic;
        assert_eq!(r.cost(&frac(1, 4)), frac(81, 256));
        assert_eq!(r.cost(&Frac::from_integer(1)), Frac::zero());
        assert_eq!(ResilienceCost::Zero.cost(&frac(1, 4)), Frac::zero());
    }

    #[test]
    fn custom_cost_validation() {
        assert!(ResilienceCost::custom(|x| (1.0 - x).powi(2)).is_ok());
        assert!(ResilienceCost::custom(|x| x).is_err());
        assert!(ResilienceCost::custom(|_| 2.0).is_err());
    }

    #[test]
    fn f_d_special_cases() {
        // All-empty equilibrium carries no resilience term.
        let p = GameParams::new(10, frac(1, 20), frac(1, 8), frac(3, 10), frac(11, 20)).unwrap();
        assert_eq!(f_d(&p, &ResilienceCost::Quartic).unwrap(), Frac::zero());

        // Zero cost reduces to the raw utility.
        let p = GameParams::new(10, frac(1, 20), frac(1, 8), frac(3, 10), frac(1, 5)).unwrap();
        let outcome = solve(&p).unwrap();
        assert_eq!(f_d(&p, &ResilienceCost::Zero).unwrap(), outcome.u_d);
    }

    #[test]
    fn step_validation() {
        let base = GameBase::new(6, frac(1, 20), frac(1, 8));
        assert!(plan_resilience(&base, frac(3, 10), &ResilienceCost::Zero, frac(1, 10)).is_err());
        assert!(plan_resilience(&base, frac(3, 10), &ResilienceCost::Zero, Frac::zero()).is_err());
    }

    #[test]
    fn planner_grid_excludes_degenerate_endpoint() {
        let base = GameBase::new(6, frac(1, 20), frac(1, 8));
        let plan = plan_resilience(&base, frac(1, 2), &ResilienceCost::Zero, frac(1, 100)).unwrap();
        let max_tau_r = plan.curve.last().unwrap().tau_r;
        assert!(max_tau_r + frac(1, 2) < Frac::from_integer(1));
        assert_eq!(max_tau_r, frac(49, 100));
    }

    #[test]
    fn flat_curve_reports_no_best_time() {
        // Expensive attacks: S1 everywhere, u_A = 0 flat.
        let base = GameBase::new(5, frac(1, 20), frac(9, 10));
        let timing = attack_timing(&base, frac(1, 10), frac(1, 100)).unwrap();
        assert!(timing.best_tau.is_none());
        assert_eq!(timing.u_a, Frac::zero());
    }

    #[test]
    fn s4_stretch_increases_with_slope_one() {
        // Regime 1 with tiny τ: build-late equilibrium; u_A = τ + τ_R.
        let base = GameBase::new(4, frac(1, 5), frac(1, 20));
        let timing = attack_timing(&base, frac(3, 20), frac(1, 100)).unwrap();
        let s4: Vec<_> = timing
            .curve
            .iter()
            .filter(|pt| pt.situation == Situation::S4)
            .collect();
        assert!(s4.len() >= 3);
        for w in s4.windows(2) {
            let dtau = w[1].tau - w[0].tau;
            let dua = w[1].u_a - w[0].u_a;
            if dtau == frac(1, 100) {
                assert_eq!(dua, dtau);
            }
        }
    }

    #[test]
    fn single_point_sweep_reduces_to_planning() {
        let base = GameBase::new(6, frac(1, 20), frac(1, 8));
        let tau = frac(3, 10);
        let records =
            joint_sweep(&base, &ResilienceCost::Zero, (tau.clone(), tau.clone()), frac(1, 100)).unwrap();
        assert_eq!(records.len(), 1);
        let plan = plan_resilience(&base, tau, &ResilienceCost::Zero, frac(1, 100)).unwrap();
        assert_eq!(records[0].tau_r_star, plan.best_tau_r);
        assert_eq!(records[0].f_d, plan.f_d);
    }

    #[test]
    fn infeasible_runs_are_contiguous() {
        let base = GameBase::new(10, frac(1, 20), frac(1, 8));
        let plan =
            plan_resilience(&base, frac(3, 10), &ResilienceCost::Quartic, frac(1, 200)).unwrap();
        for (lo, hi) in &plan.infeasible_intervals {
            assert!(lo <= hi);
        }
        assert!(!plan.infeasible_intervals.is_empty());
    }

    #[test]
    fn planned_optimum_beats_its_grid_neighbors() {
        let base = GameBase::new(10, frac(1, 20), frac(1, 8));
        let plan =
            plan_resilience(&base, frac(3, 10), &ResilienceCost::Quartic, frac(1, 200)).unwrap();
        let best = plan.best_tau_r.clone().unwrap();
        let idx = plan.curve.iter().position(|pt| pt.tau_r == best).unwrap();
        if idx > 0 {
            assert!(plan.f_d >= plan.curve[idx - 1].f_d);
        }
        if idx + 1 < plan.curve.len() {
            assert!(plan.f_d >= plan.curve[idx + 1].f_d);
        }
    }
}
