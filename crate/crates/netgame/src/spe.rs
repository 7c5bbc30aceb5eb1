//! Closed-form subgame perfect equilibria for both parameter regimes.
//!
//! The solver assembles the candidate equilibria admitted by the situation
//! taxonomy, prices each one exactly, and lets the defender pick. Strict
//! inequalities in the published conditions select candidates away from
//! boundaries; at an exact boundary the candidate sets of the adjacent
//! parameter regions are merged and [`boundary_rule`] arbitrates, so the
//! leader keeps the most favorable feasible equilibrium.
//!
//! Situation labels follow the connectivity pattern across the three
//! phases: S1 connected throughout, S2 broken then healed, S3 broken for
//! good, S4 built only after the attack window, S5 never connected.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{ParseError, SpeError};
use crate::game::{thresholds, utility_a, utility_d, GameParams, StrategyTriple};
use crate::graph::{
    case4_witness, harary, has_cut_within, ring, tree, Edge, EdgeSet, Graph,
    CUT_SEARCH_EDGE_BUDGET,
};
use crate::rational::{format_frac, is_integer, parse_frac, to_f64, Frac};

/// Parameter regime the outcome was derived in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// `1 - τ - τ_R > (n-1)·c_D`: the defender always heals fully.
    Regime1,
    /// `1 - τ - τ_R < (n-1)·c_D`: healing is worth at most `k` links.
    Regime2,
    /// One side has no incentive to play at all.
    NoThreat,
}

impl Regime {
    pub fn token(self) -> &'static str {
        match self {
            Regime::Regime1 => "regime1",
            Regime::Regime2 => "regime2",
            Regime::NoThreat => "no-threat",
        }
    }

    fn from_token(s: &str) -> Option<Regime> {
        match s {
            "regime1" => Some(Regime::Regime1),
            "regime2" => Some(Regime::Regime2),
            "no-threat" => Some(Regime::NoThreat),
            _ => None,
        }
    }
}

/// Feasible connectivity pattern at equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Situation {
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl Situation {
    pub fn token(self) -> &'static str {
        match self {
            Situation::S1 => "S1",
            Situation::S2 => "S2",
            Situation::S3 => "S3",
            Situation::S4 => "S4",
            Situation::S5 => "S5",
        }
    }

    fn from_token(s: &str) -> Option<Situation> {
        match s {
            "S1" => Some(Situation::S1),
            "S2" => Some(Situation::S2),
            "S3" => Some(Situation::S3),
            "S4" => Some(Situation::S4),
            "S5" => Some(Situation::S5),
            _ => None,
        }
    }
}

/// One equilibrium: label, link counts, exact utilities and a concrete
/// witness strategy realizing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeOutcome {
    pub regime: Regime,
    pub situation: Situation,
    pub e1_count: usize,
    pub ea_count: usize,
    pub e2_count: usize,
    pub u_d: Frac,
    pub u_a: Frac,
    /// Secure first-stage link count, populated for regime-2 Situation 1.
    pub delta: Option<usize>,
    pub witness: Option<StrategyTriple>,
}

impl SpeOutcome {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.e1_count, self.ea_count, self.e2_count)
    }

    fn total_links(&self) -> usize {
        self.e1_count + self.e2_count
    }
}

/// Floor thresholds with `m = ⌊(1-τ-τ_R)/c_A⌋` added; one variant per
/// consistent reading of the floors at an exact jump point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct ThresholdSet {
    k_a_r: i64,
    k_a_h: i64,
    k: i64,
    m: i64,
}

/// All floor readings consistent with the parameters. Away from jump
/// points this is a single set; when a ratio is exactly integral both the
/// left and right floor values are admitted, realizing the rule that at a
/// boundary every adjacent equilibrium family stays feasible.
fn threshold_variants(p: &GameParams) -> Vec<ThresholdSet> {
    let one = Frac::from_integer(1);
    let ratios = [
        p.tau_r / p.c_a,
        (one - p.tau) / p.c_a,
        p.final_phase() / p.c_d,
        p.final_phase() / p.c_a,
    ];
    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(4);
    for r in ratios {
        let v = crate::rational::floor_nonneg(r);
        if is_integer(r) && v >= 1 {
            choices.push(vec![v, v - 1]);
        } else {
            choices.push(vec![v]);
        }
    }
    let mut out = Vec::new();
    for &k_a_r in &choices[0] {
        for &k_a_h in &choices[1] {
            for &k in &choices[2] {
                for &m in &choices[3] {
                    out.push(ThresholdSet { k_a_r, k_a_h, k, m });
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Secure first-stage network construction
// ---------------------------------------------------------------------------

/// Security requirements for an unattacked first-stage network: no
/// disconnection within `conn_budget` removals (the attacker would profit
/// against the recovery window), and no split into `comp_target`
/// components within `cut_budget` removals (the attacker would profit
/// against the whole remaining horizon).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SecureSpec {
    n: usize,
    conn_budget: i64,
    comp_target: Option<usize>,
    cut_budget: i64,
}

fn secure_spec(n: usize, t: &ThresholdSet) -> SecureSpec {
    let comp_target = usize::try_from(t.k + 2).ok().filter(|&c| c <= n);
    SecureSpec { n, conn_budget: t.k_a_r, comp_target, cut_budget: t.k_a_h }
}

/// Checks the two cut properties by brute force when the graph is small
/// enough, and trusts the construction with a logged warning above that.
fn secure_verified(g: &Graph, spec: &SecureSpec) -> bool {
    if g.edge_count() > CUT_SEARCH_EDGE_BUDGET {
        warn_once(g.node_count(), g.edge_count());
        return g.is_connected() && (g.min_degree() as i64) > spec.conn_budget;
    }
    if !g.is_connected() {
        return false;
    }
    if spec.conn_budget >= 1 {
        match has_cut_within(g, 2, spec.conn_budget as usize) {
            Ok(true) => return false,
            Ok(false) => {}
            Err(_) => return false,
        }
    }
    if let Some(m) = spec.comp_target {
        if spec.cut_budget >= 1 {
            match has_cut_within(g, m, spec.cut_budget as usize) {
                Ok(true) => return false,
                Ok(false) => {}
                Err(_) => return false,
            }
        }
    }
    true
}

/// Ring plus `count` spread chords `{⌊i·n/count⌋, ⌊i·n/count⌋ + ⌊n/2⌋}`.
/// Fills the gap between the plain ring and the Harary family in the
/// secure-network ladder.
fn ring_with_spread_chords(n: usize, count: usize) -> Option<Graph> {
    let base = ring(n).ok()?;
    let mut es = base.edges().clone();
    let half = n / 2;
    if half < 2 {
        return None;
    }
    for i in 0..count {
        let a = i * n / count.max(1);
        let b = (a + half) % n;
        if a != b {
            es.insert(Edge::new(a, b).ok()?);
        }
    }
    Graph::new(n, es).ok()
}

/// Complete bipartite graph with hub side `{0,1}`. Its degree-two nodes are
/// pairwise nonadjacent, which is what defeats cheap multi-component cuts.
fn two_hub(n: usize) -> Option<Graph> {
    if n < 4 {
        return None;
    }
    let mut es = EdgeSet::new();
    for v in 2..n {
        es.insert(Edge::new(0, v).ok()?);
        es.insert(Edge::new(1, v).ok()?);
    }
    Graph::new(n, es).ok()
}

/// Deterministic escalation ladder for the hard secure-network case,
/// ordered by edge count. Every candidate is verified against the cut
/// requirements before being accepted.
fn secure_ladder(n: usize, k: i64, spec: &SecureSpec) -> Option<Graph> {
    let mut candidates: Vec<(usize, usize, Graph)> = Vec::new();
    let push = |rank: usize, g: Option<Graph>, v: &mut Vec<(usize, usize, Graph)>| {
        if let Some(g) = g {
            if !v.iter().any(|(_, _, other)| *other == g) {
                v.push((g.edge_count(), rank, g));
            }
        }
    };
    if k >= 1 {
        push(0, case4_witness(n, k as usize).ok(), &mut candidates);
    }
    push(1, two_hub(n), &mut candidates);
    for c in 1..=n {
        push(2, ring_with_spread_chords(n, c), &mut candidates);
    }
    for d in 3..n {
        push(3, harary(n, d).ok(), &mut candidates);
    }
    candidates.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| a.2.edges().cmp(b.2.edges())));
    candidates
        .into_iter()
        .find(|(_, _, g)| secure_verified(g, spec))
        .map(|(_, _, g)| g)
}

/// Cheapest first-stage network the attacker leaves alone, or `None` when
/// no simple graph survives the attacker's budget. The case analysis
/// mirrors the published link-count formula but is backed by constructed,
/// verified graphs; where the formula's case split and the constructions
/// disagree, the verified construction wins.
fn secure_plan(n: usize, t: &ThresholdSet) -> Option<Graph> {
    if t.k_a_r > (n as i64) - 2 {
        // Even the complete graph loses a minimum-degree attack.
        return None;
    }
    // Above the cut-search budget the constructions are trusted, which is
    // only sound inside the case analysis' domain.
    let verifiable = ((t.k_a_r + 1) as usize) < n
        && harary(n, ((t.k_a_r + 1) as usize).max(2).min(n - 1))
            .map(|g| g.edge_count() <= CUT_SEARCH_EDGE_BUDGET)
            .unwrap_or(false);
    if !verifiable && t.k_a_h > t.k + t.k_a_r + 1 {
        return None;
    }
    let spec = secure_spec(n, t);
    let need_conn_degree = (t.k_a_r + 1) as usize;

    // With no healing capacity (or none relevant), any disconnection is
    // permanent and only plain edge connectivity matters.
    let only_connectivity = t.k == 0 || spec.comp_target.is_none();
    if only_connectivity {
        let d = if t.k == 0 {
            (t.k_a_h + 1) as usize
        } else {
            need_conn_degree
        };
        if d > n - 1 {
            return None;
        }
        let g = harary(n, d).ok()?;
        return if secure_verified(&g, &spec) { Some(g) } else { secure_ladder(n, t.k, &spec) };
    }

    // 1 <= k <= n-2 from here on.
    let primary = match t.k_a_r {
        0 => {
            if t.k_a_h <= t.k {
                tree(n).ok()
            } else {
                ring(n).ok()
            }
        }
        1 => {
            if t.k_a_h <= t.k + 1 {
                ring(n).ok()
            } else {
                None
            }
        }
        r => {
            let d = (r + 1) as usize;
            if d > n - 1 {
                return None;
            }
            harary(n, d).ok()
        }
    };
    if let Some(g) = primary {
        if secure_verified(&g, &spec) {
            return Some(g);
        }
    }
    secure_ladder(n, t.k, &spec)
}

type SecureCacheKey = (usize, i64, i64, i64);
type PlanCache<K> = OnceLock<Mutex<HashMap<K, Option<Graph>>>>;

fn secure_plan_cached(n: usize, t: &ThresholdSet) -> Option<Graph> {
    static CACHE: PlanCache<SecureCacheKey> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, t.k_a_r, t.k_a_h, t.k);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let plan = secure_plan(n, t);
    cache.lock().unwrap().insert(key, plan.clone());
    plan
}

/// One warning per distinct graph size; sweeps revisit the same
/// constructions thousands of times.
fn warn_once(n: usize, edges: usize) {
    static SEEN: OnceLock<Mutex<std::collections::HashSet<(usize, usize)>>> = OnceLock::new();
    let seen = SEEN.get_or_init(|| Mutex::new(std::collections::HashSet::new()));
    if seen.lock().unwrap().insert((n, edges)) {
        log::warn!(
            "secure network on n={n} with {edges} edges exceeds the cut-search budget; construction trusted unverified"
        );
    }
}

fn has_bridge(g: &Graph) -> bool {
    g.edges().iter().any(|e| {
        let mut s = EdgeSet::new();
        s.insert(*e);
        !g.without_edges(&s).is_connected()
    })
}

fn lowest_bridge(g: &Graph) -> Option<Edge> {
    g.edges()
        .iter()
        .find(|e| {
            let mut s = EdgeSet::new();
            s.insert(**e);
            !g.without_edges(&s).is_connected()
        })
        .copied()
}

/// Core graph on `n-1` nodes plus a pendant bridge to node `n-1`.
fn with_pendant(core: Graph) -> Option<Graph> {
    let n = core.node_count() + 1;
    let mut es = core.edges().clone();
    es.insert(Edge::new(0, n - 1).ok()?);
    Graph::new(n, es).ok()
}

/// Cheapest sacrificial first-stage network: it concedes the one-link
/// healed attack but prices every attack the defender would not heal above
/// the attacker's horizon budget. The tree is the base case; when
/// `⌊(1-τ-τ_R)/c_A⌋` reaches `k` the tree's spanning cut is too cheap and
/// the network needs cycle padding, so candidates escalate through cores
/// with one pendant bridge attached.
fn sacrificial_plan(n: usize, k: i64, m: i64) -> Option<Graph> {
    if k < 1 || k + 2 > n as i64 {
        return None;
    }
    let comp_target = (k + 2) as usize;
    let cut_budget = (m + 1) as usize;
    let verified = |g: &Graph| -> Option<bool> {
        if !g.is_connected() || !has_bridge(g) {
            return Some(false);
        }
        if g.edge_count() > CUT_SEARCH_EDGE_BUDGET {
            // Only the tree's cut structure is known without search.
            return if g.edge_count() == n - 1 { Some(m < k) } else { None };
        }
        match has_cut_within(g, comp_target, cut_budget) {
            Ok(found) => Some(!found),
            Err(_) => None,
        }
    };
    let mut candidates: Vec<(usize, usize, Graph)> = Vec::new();
    let push = |rank: usize, g: Option<Graph>, v: &mut Vec<(usize, usize, Graph)>| {
        if let Some(g) = g {
            if g.node_count() == n && !v.iter().any(|(_, _, other)| *other == g) {
                v.push((g.edge_count(), rank, g));
            }
        }
    };
    push(0, tree(n).ok(), &mut candidates);
    if n >= 4 {
        push(1, ring(n - 1).ok().and_then(with_pendant), &mut candidates);
        push(2, case4_witness(n - 1, k as usize).ok().and_then(with_pendant), &mut candidates);
        push(3, two_hub(n - 1).and_then(with_pendant), &mut candidates);
        for c in 1..n {
            push(4, ring_with_spread_chords(n - 1, c).and_then(with_pendant), &mut candidates);
        }
        for d in 3..n.saturating_sub(1) {
            push(5, harary(n - 1, d).ok().and_then(with_pendant), &mut candidates);
        }
    }
    candidates.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| a.2.edges().cmp(b.2.edges())));
    candidates
        .into_iter()
        .find(|(_, _, g)| verified(g) == Some(true))
        .map(|(_, _, g)| g)
}

fn sacrificial_plan_cached(n: usize, k: i64, m: i64) -> Option<Graph> {
    static CACHE: PlanCache<(usize, i64, i64)> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, k, m);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let plan = sacrificial_plan(n, k, m);
    cache.lock().unwrap().insert(key, plan.clone());
    plan
}

// ---------------------------------------------------------------------------
// Candidate assembly
// ---------------------------------------------------------------------------

fn path_edges(count: usize) -> EdgeSet {
    (0..count)
        .map(|i| Edge::new(i, i + 1).expect("path edge"))
        .collect()
}

fn outcome_s1(p: &GameParams, regime: Regime, g: Graph, delta: Option<usize>) -> SpeOutcome {
    let links = g.edge_count();
    SpeOutcome {
        regime,
        situation: Situation::S1,
        e1_count: links,
        ea_count: 0,
        e2_count: 0,
        u_d: Frac::from_integer(1) - p.c_d * Frac::from_integer(links as i128),
        u_a: Frac::zero(),
        delta,
        witness: Some(StrategyTriple::new(g.edges().clone(), EdgeSet::new(), EdgeSet::new())),
    }
}

fn outcome_s2(p: &GameParams, regime: Regime) -> SpeOutcome {
    outcome_s2_on(p, regime, tree(p.n).expect("n >= 2"))
}

/// One healed attack against a bridge of `g`. With `g` a tree this is the
/// classic one-attack/one-heal equilibrium; padded graphs concede the same
/// attack at a higher link bill.
fn outcome_s2_on(p: &GameParams, regime: Regime, g: Graph) -> SpeOutcome {
    let links = g.edge_count();
    let bridge = lowest_bridge(&g).expect("sacrificial graph has a bridge");
    let mut attacked = EdgeSet::new();
    attacked.insert(bridge);
    SpeOutcome {
        regime,
        situation: Situation::S2,
        e1_count: links,
        ea_count: 1,
        e2_count: 1,
        u_d: Frac::from_integer(1)
            - p.tau_r
            - p.c_d * Frac::from_integer((links + 1) as i128),
        u_a: p.tau_r - p.c_a,
        delta: None,
        witness: Some(StrategyTriple::new(g.edges().clone(), attacked.clone(), attacked)),
    }
}

fn outcome_s3(p: &GameParams, k: i64) -> SpeOutcome {
    let n = p.n;
    let t = tree(n).expect("n >= 2");
    let attacked = path_edges((k + 1) as usize);
    SpeOutcome {
        regime: Regime::Regime2,
        situation: Situation::S3,
        e1_count: n - 1,
        ea_count: (k + 1) as usize,
        e2_count: 0,
        u_d: p.tau - p.c_d * Frac::from_integer((n - 1) as i128),
        u_a: Frac::from_integer(1) - p.tau - p.c_a * Frac::from_integer((k + 1) as i128),
        delta: None,
        witness: Some(StrategyTriple::new(t.edges().clone(), attacked, EdgeSet::new())),
    }
}

fn outcome_s4(p: &GameParams) -> SpeOutcome {
    let n = p.n;
    let t = tree(n).expect("n >= 2");
    SpeOutcome {
        regime: Regime::Regime1,
        situation: Situation::S4,
        e1_count: 0,
        ea_count: 0,
        e2_count: n - 1,
        u_d: p.final_phase() - p.c_d * Frac::from_integer((n - 1) as i128),
        u_a: p.tau + p.tau_r,
        delta: None,
        witness: Some(StrategyTriple::new(EdgeSet::new(), EdgeSet::new(), t.edges().clone())),
    }
}

fn outcome_s5(regime: Regime) -> SpeOutcome {
    SpeOutcome {
        regime,
        situation: Situation::S5,
        e1_count: 0,
        ea_count: 0,
        e2_count: 0,
        u_d: Frac::zero(),
        u_a: Frac::from_integer(1),
        delta: None,
        witness: Some(StrategyTriple::empty()),
    }
}

fn regime1_candidates(p: &GameParams, t: &ThresholdSet, out: &mut Vec<SpeOutcome>) {
    let n = p.n;
    if t.k_a_r == 0 {
        out.push(outcome_s1(p, Regime::Regime1, tree(n).expect("n >= 2"), None));
    } else if t.k_a_r <= (n as i64) - 2 {
        let d = (t.k_a_r + 1) as usize;
        if let Ok(g) = harary(n, d) {
            out.push(outcome_s1(p, Regime::Regime1, g, None));
        }
    }
    if t.k_a_r >= 1 {
        out.push(outcome_s2(p, Regime::Regime1));
    }
    out.push(outcome_s4(p));
}

fn regime2_candidates(p: &GameParams, t: &ThresholdSet, out: &mut Vec<SpeOutcome>) {
    let n = p.n;
    out.push(outcome_s5(Regime::Regime2));
    if t.k_a_h > t.k && t.k < (n as i64) - 1 {
        out.push(outcome_s3(p, t.k));
    }
    if t.k_a_r >= 1 && t.k >= 1 {
        // The tree instance of this family needs k > ⌊(1-τ-τ_R)/c_A⌋;
        // as that floor catches up, the plan pads the tree with cycles.
        if let Some(g) = sacrificial_plan_cached(n, t.k, t.m) {
            out.push(outcome_s2_on(p, Regime::Regime2, g));
        }
    }
    if t.k_a_r <= (n as i64) - 2 {
        if let Some(g) = secure_plan_cached(n, t) {
            let links = g.edge_count();
            out.push(outcome_s1(p, Regime::Regime2, g, Some(links)));
        }
    }
}

fn dedup(candidates: Vec<SpeOutcome>) -> Vec<SpeOutcome> {
    let mut seen: Vec<SpeOutcome> = Vec::with_capacity(candidates.len());
    for c in candidates {
        let key_exists = seen.iter().any(|s| {
            s.situation == c.situation && s.counts() == c.counts() && s.u_d == c.u_d && s.u_a == c.u_a
        });
        if !key_exists {
            seen.push(c);
        }
    }
    seen
}

/// Every equilibrium candidate admitted at `p`, including both readings of
/// any floor threshold that sits exactly on a jump. The solver's answer is
/// always `boundary_rule` applied to this list.
pub fn candidates(p: &GameParams) -> Vec<SpeOutcome> {
    let one = Frac::from_integer(1);
    let mut out = Vec::new();

    let no_connect_gap = p.c_d - one / Frac::from_integer((p.n - 1) as i128);
    if no_connect_gap > Frac::zero() {
        return vec![outcome_s5(Regime::NoThreat)];
    }
    if no_connect_gap.is_zero() {
        out.push(outcome_s5(Regime::NoThreat));
    }
    let no_attack_gap = p.c_a - (one - p.tau);
    if no_attack_gap > Frac::zero() {
        out.push(outcome_s1(p, Regime::NoThreat, tree(p.n).expect("n >= 2"), None));
        return out;
    }
    if no_attack_gap.is_zero() {
        out.push(outcome_s1(p, Regime::NoThreat, tree(p.n).expect("n >= 2"), None));
    }

    let gap = p.final_phase() - p.c_d * Frac::from_integer((p.n - 1) as i128);
    let variants = threshold_variants(p);
    for t in &variants {
        if gap >= Frac::zero() {
            regime1_candidates(p, t, &mut out);
        }
        if gap <= Frac::zero() {
            regime2_candidates(p, t, &mut out);
        }
    }
    dedup(out)
}

/// Defender-led selection: highest `u_D`; ties go to the attacker's
/// preferred candidate, then to fewest total links; any remaining tie keeps
/// the earliest candidate, which makes the pick deterministic.
pub fn boundary_rule(candidates: &[SpeOutcome]) -> Result<SpeOutcome, SpeError> {
    let mut best: Option<&SpeOutcome> = None;
    for c in candidates {
        best = Some(match best {
            None => c,
            Some(b) => {
                if c.u_d > b.u_d
                    || (c.u_d == b.u_d && c.u_a > b.u_a)
                    || (c.u_d == b.u_d && c.u_a == b.u_a && c.total_links() < b.total_links())
                {
                    c
                } else {
                    b
                }
            }
        });
    }
    best.cloned()
        .ok_or_else(|| SpeError::Internal("boundary rule applied to an empty candidate list".into()))
}

/// Short-circuit when one player has no incentive to participate: a
/// defender priced out of connectivity (`c_D > 1/(n-1)`) concedes the
/// empty network; an attacker priced out of the horizon (`c_A > 1-τ`)
/// never attacks and a bare tree is optimal.
pub fn no_threat_check(p: &GameParams) -> Option<SpeOutcome> {
    let one = Frac::from_integer(1);
    if p.c_d > one / Frac::from_integer((p.n - 1) as i128) {
        return Some(outcome_s5(Regime::NoThreat));
    }
    if p.c_a > one - p.tau {
        return Some(outcome_s1(p, Regime::NoThreat, tree(p.n).expect("n >= 2"), None));
    }
    None
}

/// Secure-network link count from the published six-case formula. This is
/// the table value; the solver prices Situation 1 with a verified
/// construction instead, which can be cheaper (see [`solve_regime2`]).
///
/// The fourth case divides by `k`, so `k = 0` there is surfaced as an
/// error rather than masked.
pub fn delta(p: &GameParams) -> Result<usize, SpeError> {
    let gap = p.final_phase() - p.c_d * Frac::from_integer((p.n - 1) as i128);
    if gap >= Frac::zero() {
        return Err(SpeError::WrongRegime(
            "delta is defined in the regime 1-τ-τ_R < (n-1)·c_D".into(),
        ));
    }
    let t = thresholds(p);
    let n = p.n as i64;
    if t.k_a_r > n - 1 {
        return Err(SpeError::InvalidArgument(format!(
            "delta needs ⌊τ_R/c_A⌋ <= n-1, got {}",
            t.k_a_r
        )));
    }
    let count = if t.k_a_r > 1 {
        let budget = if t.k >= 1 { t.k_a_r } else { t.k_a_h };
        ((p.n as i64) * (budget + 1) + 1) / 2
    } else if t.k_a_r == 1 {
        if t.k_a_h == t.k + 1 {
            n
        } else {
            if t.k == 0 {
                return Err(SpeError::UndefinedDeltaCase(
                    "fourth case needs k >= 1 (the formula divides by k)".into(),
                ));
            }
            let hops = n / t.k;
            n + hops + (hops + 1) / 2
        }
    } else if t.k_a_h == t.k {
        n - 1
    } else {
        n
    };
    usize::try_from(count)
        .map_err(|_| SpeError::Internal("delta count does not fit usize".into()))
}

fn regime_gap(p: &GameParams) -> Frac {
    p.final_phase() - p.c_d * Frac::from_integer((p.n - 1) as i128)
}

/// Equilibrium under `1-τ-τ_R > (n-1)·c_D`.
pub fn solve_regime1(p: &GameParams) -> Result<SpeOutcome, SpeError> {
    if regime_gap(p) <= Frac::zero() {
        return Err(SpeError::WrongRegime(format!(
            "1-τ-τ_R ({}) must exceed (n-1)·c_D ({})",
            format_frac(p.final_phase()),
            format_frac(p.c_d * Frac::from_integer((p.n - 1) as i128))
        )));
    }
    let mut out = Vec::new();
    for t in threshold_variants(p) {
        regime1_candidates(p, &t, &mut out);
    }
    let chosen = boundary_rule(&dedup(out))?;
    check_witness(p, &chosen)?;
    Ok(chosen)
}

/// Equilibrium under `1-τ-τ_R < (n-1)·c_D`.
pub fn solve_regime2(p: &GameParams) -> Result<SpeOutcome, SpeError> {
    if regime_gap(p) >= Frac::zero() {
        return Err(SpeError::WrongRegime(format!(
            "1-τ-τ_R ({}) must be below (n-1)·c_D ({})",
            format_frac(p.final_phase()),
            format_frac(p.c_d * Frac::from_integer((p.n - 1) as i128))
        )));
    }
    let mut out = Vec::new();
    for t in threshold_variants(p) {
        regime2_candidates(p, &t, &mut out);
    }
    let chosen = boundary_rule(&dedup(out))?;
    check_witness(p, &chosen)?;
    Ok(chosen)
}

/// Full dispatcher: no-threat short-circuits, then the regime sign, with
/// exact boundaries resolved by merging both regimes' candidates.
pub fn solve(p: &GameParams) -> Result<SpeOutcome, SpeError> {
    let cands = candidates(p);
    let chosen = boundary_rule(&cands)?;
    check_witness(p, &chosen)?;
    Ok(chosen)
}

/// Recomputes the utilities of an outcome's witness and confirms they
/// reproduce the stored values exactly.
fn check_witness(p: &GameParams, outcome: &SpeOutcome) -> Result<(), SpeError> {
    let w = outcome
        .witness
        .as_ref()
        .ok_or_else(|| SpeError::Internal("solver outcome lacks a witness".into()))?;
    let ud = utility_d(p, w)?;
    let ua = utility_a(p, w)?;
    if ud != outcome.u_d || ua != outcome.u_a {
        return Err(SpeError::Internal(format!(
            "witness utilities ({}, {}) disagree with outcome ({}, {})",
            format_frac(ud),
            format_frac(ua),
            format_frac(outcome.u_d),
            format_frac(outcome.u_a)
        )));
    }
    Ok(())
}

/// Concrete strategy triple realizing `outcome` at `p`. Fails when the
/// outcome does not describe an equilibrium of `p`.
pub fn witness(outcome: &SpeOutcome, p: &GameParams) -> Result<StrategyTriple, SpeError> {
    let rebuilt = solve(p)?;
    if rebuilt.situation != outcome.situation
        || rebuilt.counts() != outcome.counts()
        || rebuilt.u_d != outcome.u_d
        || rebuilt.u_a != outcome.u_a
    {
        return Err(SpeError::InvalidArgument(
            "outcome is not the equilibrium of the given parameters".into(),
        ));
    }
    rebuilt
        .witness
        .ok_or_else(|| SpeError::Internal("solver outcome lacks a witness".into()))
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

pub const OUTCOME_CSV_HEADER: &str = "n,c_D,c_A,tau,tau_R,regime,situation,e1,eA,e2,u_D,u_A,delta";

/// Flat serializable view of an outcome together with the parameters that
/// produced it. CSV rows and the structured text record carry exactly
/// these fields, so the two forms round-trip without loss.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRow {
    pub n: usize,
    pub c_d: Frac,
    pub c_a: Frac,
    pub tau: Frac,
    pub tau_r: Frac,
    pub regime: Regime,
    pub situation: Situation,
    pub e1: usize,
    pub ea: usize,
    pub e2: usize,
    pub u_d: f64,
    pub u_a: f64,
    pub delta: Option<usize>,
}

impl OutcomeRow {
    pub fn new(p: &GameParams, o: &SpeOutcome) -> OutcomeRow {
        OutcomeRow {
            n: p.n,
            c_d: p.c_d,
            c_a: p.c_a,
            tau: p.tau,
            tau_r: p.tau_r,
            regime: o.regime,
            situation: o.situation,
            e1: o.e1_count,
            ea: o.ea_count,
            e2: o.e2_count,
            u_d: to_f64(o.u_d),
            u_a: to_f64(o.u_a),
            delta: o.delta,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            format_frac(self.c_d),
            format_frac(self.c_a),
            format_frac(self.tau),
            format_frac(self.tau_r),
            self.regime.token(),
            self.situation.token(),
            self.e1,
            self.ea,
            self.e2,
            self.u_d,
            self.u_a,
            self.delta.map(|d| d.to_string()).unwrap_or_default()
        )
    }

    pub fn from_csv(line: &str) -> Result<OutcomeRow, ParseError> {
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 13 {
            return Err(ParseError::Malformed(format!(
                "expected 13 CSV fields, got {}",
                fields.len()
            )));
        }
        Self::from_fields(&fields)
    }

    /// Structured text record mirroring the CSV fields.
    pub fn to_record(&self) -> String {
        format!(
            "spe {{ n: {}, c_D: {}, c_A: {}, tau: {}, tau_R: {}, regime: {}, situation: {}, e1: {}, eA: {}, e2: {}, u_D: {}, u_A: {}, delta: {} }}",
            self.n,
            format_frac(self.c_d),
            format_frac(self.c_a),
            format_frac(self.tau),
            format_frac(self.tau_r),
            self.regime.token(),
            self.situation.token(),
            self.e1,
            self.ea,
            self.e2,
            self.u_d,
            self.u_a,
            self.delta.map(|d| d.to_string()).unwrap_or_else(|| "-".into())
        )
    }

    pub fn from_record(text: &str) -> Result<OutcomeRow, ParseError> {
        let body = text
            .trim()
            .strip_prefix("spe {")
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| ParseError::Malformed("expected `spe { ... }`".into()))?;
        let mut fields = Vec::new();
        for part in body.split(',') {
            let (_, value) = part
                .split_once(':')
                .ok_or_else(|| ParseError::Malformed(format!("expected key: value, got {part:?}")))?;
            fields.push(value.trim());
        }
        if fields.len() != 13 {
            return Err(ParseError::Malformed(format!(
                "expected 13 record fields, got {}",
                fields.len()
            )));
        }
        let mut owned: Vec<String> = fields.iter().map(|s| s.to_string()).collect();
        if owned[12] == "-" {
            owned[12] = String::new();
        }
        let refs: Vec<&str> = owned.iter().map(|s| s.as_str()).collect();
        Self::from_fields(&refs)
    }

    fn from_fields(fields: &[&str]) -> Result<OutcomeRow, ParseError> {
        let n: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| ParseError::BadNumber(fields[0].to_string()))?;
        let parse_f64 = |s: &str| -> Result<f64, ParseError> {
            s.trim().parse().map_err(|_| ParseError::BadNumber(s.to_string()))
        };
        let parse_count = |s: &str| -> Result<usize, ParseError> {
            s.trim().parse().map_err(|_| ParseError::BadNumber(s.to_string()))
        };
        Ok(OutcomeRow {
            n,
            c_d: parse_frac(fields[1])?,
            c_a: parse_frac(fields[2])?,
            tau: parse_frac(fields[3])?,
            tau_r: parse_frac(fields[4])?,
            regime: Regime::from_token(fields[5].trim())
                .ok_or_else(|| ParseError::Malformed(format!("unknown regime {:?}", fields[5])))?,
            situation: Situation::from_token(fields[6].trim())
                .ok_or_else(|| ParseError::Malformed(format!("unknown situation {:?}", fields[6])))?,
            e1: parse_count(fields[7])?,
            ea: parse_count(fields[8])?,
            e2: parse_count(fields[9])?,
            u_d: parse_f64(fields[10])?,
            u_a: parse_f64(fields[11])?,
            delta: {
                let d = fields[12].trim();
                if d.is_empty() {
                    None
                } else {
                    Some(parse_count(d)?)
                }
            },
        })
    }
}
