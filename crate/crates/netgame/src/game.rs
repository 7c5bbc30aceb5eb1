//! Game parameters, the two utility functions, tie-break rules and the
//! stage-3 healing best response.
//!
//! The defender's payoff is the fraction of time the network is connected
//! minus link-creation costs; the attacker's payoff mirrors it with
//! complemented connectivity indicators and removal costs. All arithmetic
//! is exact rational.

use num_traits::Zero;

use crate::error::{GameError, ParseError};
use crate::graph::{heal_edges, EdgeSet, Graph};
use crate::rational::{floor_nonneg, format_frac, parse_frac, Frac};

/// Shared parameters of the three-stage game.
///
/// `tau` is the fraction of the horizon before the attack, `tau_R` the
/// fraction between attack and recovery. `c_D` and `c_A` are the unit costs
/// of creating and removing one link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameParams {
    pub n: usize,
    pub c_d: Frac,
    pub c_a: Frac,
    pub tau: Frac,
    pub tau_r: Frac,
}

impl GameParams {
    pub fn new(n: usize, c_d: Frac, c_a: Frac, tau: Frac, tau_r: Frac) -> Result<GameParams, GameError> {
        let p = GameParams { n, c_d, c_a, tau, tau_r };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), GameError> {
        if self.n < 2 {
            return Err(GameError::InvalidParams(format!("n must be >= 2, got {}", self.n)));
        }
        if self.c_d <= Frac::zero() || self.c_a <= Frac::zero() {
            return Err(GameError::InvalidParams("link costs must be strictly positive".into()));
        }
        let zero = Frac::zero();
        let one = Frac::from_integer(1);
        if self.tau < zero || self.tau > one || self.tau_r < zero || self.tau_r > one {
            return Err(GameError::InvalidParams("time fractions must lie in [0,1]".into()));
        }
        if self.tau + self.tau_r > one {
            return Err(GameError::InvalidParams(format!(
                "tau + tau_R must not exceed 1, got {} + {}",
                format_frac(self.tau),
                format_frac(self.tau_r)
            )));
        }
        Ok(())
    }

    /// Weight of the final phase, `1 - tau - tau_R`.
    pub fn final_phase(&self) -> Frac {
        Frac::from_integer(1) - self.tau - self.tau_r
    }

    /// Flat `key=value` text form, fractions in canonical `p/q` syntax.
    pub fn to_key_value(&self) -> String {
        format!(
            "n={}\nc_D={}\nc_A={}\ntau={}\ntau_R={}\n",
            self.n,
            format_frac(self.c_d),
            format_frac(self.c_a),
            format_frac(self.tau),
            format_frac(self.tau_r)
        )
    }

    /// Structured single-line text form mirroring the same keys.
    pub fn to_record(&self) -> String {
        format!(
            "params {{ n: {}, c_D: {}, c_A: {}, tau: {}, tau_R: {} }}",
            self.n,
            format_frac(self.c_d),
            format_frac(self.c_a),
            format_frac(self.tau),
            format_frac(self.tau_r)
        )
    }

    /// Parses the structured single-line form produced by [`Self::to_record`].
    pub fn from_record(text: &str) -> Result<GameParams, ParseError> {
        let body = text
            .trim()
            .strip_prefix("params {")
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| ParseError::Malformed("expected `params { ... }`".into()))?;
        let flat: Vec<String> = body
            .split(',')
            .map(|part| {
                part.split_once(':')
                    .map(|(k, v)| format!("{}={}", k.trim(), v.trim()))
                    .ok_or_else(|| ParseError::Malformed(format!("expected key: value, got {part:?}")))
            })
            .collect::<Result<_, _>>()?;
        Self::from_key_value(&flat.join("\n"))
    }

    /// Parses the flat `key=value` form. Unknown keys are rejected so typos
    /// in config files surface instead of silently defaulting.
    pub fn from_key_value(text: &str) -> Result<GameParams, ParseError> {
        let mut n = None;
        let mut c_d = None;
        let mut c_a = None;
        let mut tau = None;
        let mut tau_r = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ParseError::Malformed(format!("expected key=value, got {line:?}")))?;
            match key.trim() {
                "n" => {
                    n = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| ParseError::BadNumber(value.to_string()))?,
                    )
                }
                "c_D" => c_d = Some(parse_frac(value)?),
                "c_A" => c_a = Some(parse_frac(value)?),
                "tau" => tau = Some(parse_frac(value)?),
                "tau_R" => tau_r = Some(parse_frac(value)?),
                other => return Err(ParseError::UnknownField(other.to_string())),
            }
        }
        let params = GameParams {
            n: n.ok_or(ParseError::MissingField("n"))?,
            c_d: c_d.ok_or(ParseError::MissingField("c_D"))?,
            c_a: c_a.ok_or(ParseError::MissingField("c_A"))?,
            tau: tau.ok_or(ParseError::MissingField("tau"))?,
            tau_r: tau_r.ok_or(ParseError::MissingField("tau_R"))?,
        };
        params
            .validate()
            .map_err(|e| ParseError::Malformed(e.to_string()))?;
        Ok(params)
    }
}

/// One play of the game: initial links, attacked links, healing links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTriple {
    pub e1: EdgeSet,
    pub e_a: EdgeSet,
    pub e2: EdgeSet,
}

impl StrategyTriple {
    pub fn new(e1: EdgeSet, e_a: EdgeSet, e2: EdgeSet) -> StrategyTriple {
        StrategyTriple { e1, e_a, e2 }
    }

    pub fn empty() -> StrategyTriple {
        StrategyTriple::new(EdgeSet::new(), EdgeSet::new(), EdgeSet::new())
    }

    /// Attacked links must come from the initial set; healing may only add
    /// links absent after the attack (re-creating destroyed ones is fine).
    pub fn validate(&self, n: usize) -> Result<(), GameError> {
        if !self.e_a.is_subset(&self.e1) {
            return Err(GameError::InvalidStrategy("attacked links must be a subset of initial links".into()));
        }
        let survivor: EdgeSet = self.e1.difference(&self.e_a).cloned().collect();
        if self.e2.intersection(&survivor).next().is_some() {
            return Err(GameError::InvalidStrategy("healing links must not duplicate surviving links".into()));
        }
        for e in self.e1.iter().chain(self.e_a.iter()).chain(self.e2.iter()) {
            let (_, b) = e.endpoints();
            if b >= n {
                return Err(GameError::InvalidStrategy(format!("edge {e} endpoint out of range for n={n}")));
            }
        }
        Ok(())
    }
}

/// Connectivity indicators of the three phase graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseIndicators {
    /// Initial network connected.
    pub initial: bool,
    /// Post-attack survivor connected.
    pub after_attack: bool,
    /// Post-healing network connected.
    pub after_heal: bool,
}

pub fn phase_indicators(n: usize, s: &StrategyTriple) -> Result<PhaseIndicators, GameError> {
    s.validate(n)?;
    let g1 = Graph::new(n, s.e1.clone()).map_err(|e| GameError::InvalidStrategy(e.to_string()))?;
    let survivor = g1.without_edges(&s.e_a);
    let healed = survivor
        .with_edges(&s.e2)
        .map_err(|e| GameError::InvalidStrategy(e.to_string()))?;
    Ok(PhaseIndicators {
        initial: g1.is_connected(),
        after_attack: survivor.is_connected(),
        after_heal: healed.is_connected(),
    })
}

fn ind(b: bool) -> Frac {
    Frac::from_integer(b as i128)
}

/// Defender utility:
/// `(1-τ-τ_R)·1[healed] + τ·1[initial] + τ_R·1[survivor] - c_D(|E1|+|E2|)`.
pub fn utility_d(p: &GameParams, s: &StrategyTriple) -> Result<Frac, GameError> {
    let i = phase_indicators(p.n, s)?;
    Ok(utility_d_from_parts(p, i, s.e1.len(), s.e2.len()))
}

/// Attacker utility: complemented indicators, cost `c_A·|E_A|`.
pub fn utility_a(p: &GameParams, s: &StrategyTriple) -> Result<Frac, GameError> {
    let i = phase_indicators(p.n, s)?;
    Ok(utility_a_from_parts(p, i, s.e_a.len()))
}

pub(crate) fn utility_d_from_parts(
    p: &GameParams,
    i: PhaseIndicators,
    e1_len: usize,
    e2_len: usize,
) -> Frac {
    p.final_phase() * ind(i.after_heal) + p.tau * ind(i.initial)
        + p.tau_r * ind(i.after_attack)
        - p.c_d * Frac::from_integer((e1_len + e2_len) as i128)
}

pub(crate) fn utility_a_from_parts(p: &GameParams, i: PhaseIndicators, ea_len: usize) -> Frac {
    p.final_phase() * ind(!i.after_heal) + p.tau * ind(!i.initial)
        + p.tau_r * ind(!i.after_attack)
        - p.c_a * Frac::from_integer(ea_len as i128)
}

/// Stage-3 best response. The defender heals to full connectivity, with the
/// canonical minimal reconnection set, exactly when doing so is strictly
/// profitable: `(1-τ-τ_R) - c_D·(components-1) > 0`. Healing pays only
/// through the final connectivity indicator, so partial healing is never
/// better than none and the decision is binary.
pub fn best_response_stage3(p: &GameParams, e1: &EdgeSet, e_a: &EdgeSet) -> Result<EdgeSet, GameError> {
    if !e_a.is_subset(e1) {
        return Err(GameError::InvalidStrategy("attacked links must be a subset of initial links".into()));
    }
    let g1 = Graph::new(p.n, e1.clone()).map_err(|e| GameError::InvalidStrategy(e.to_string()))?;
    let survivor = g1.without_edges(e_a);
    let comps = survivor.num_components();
    if comps == 1 {
        return Ok(EdgeSet::new());
    }
    let gain = p.final_phase() - p.c_d * Frac::from_integer((comps - 1) as i128);
    if gain > Frac::zero() {
        Ok(heal_edges(&survivor))
    } else {
        Ok(EdgeSet::new())
    }
}

/// The four floor thresholds of the analysis.
///
/// `k_a_r`: attacks affordable against the recovery window.
/// `k_a_h`: attacks affordable against the whole remaining horizon.
/// `k_d_h`: links the defender can fund over the remaining horizon.
/// `k`: links the defender will heal in the final phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub k_a_r: i64,
    pub k_a_h: i64,
    pub k_d_h: i64,
    pub k: i64,
}

pub fn thresholds(p: &GameParams) -> Thresholds {
    let one = Frac::from_integer(1);
    Thresholds {
        k_a_r: floor_nonneg(p.tau_r / p.c_a),
        k_a_h: floor_nonneg((one - p.tau) / p.c_a),
        k_d_h: floor_nonneg((one - p.tau) / p.c_d),
        k: floor_nonneg(p.final_phase() / p.c_d),
    }
}
