//! Exhaustive backward-induction solver over all strategy pairs for small
//! node counts, and the grid harness that compares it against the closed
//! form.
//!
//! Edges of the complete graph are indexed lexicographically and edge sets
//! are bitmasks, so the full scan over every `(E1, E_A)` pair is table
//! lookups and integer arithmetic. Utilities are evaluated as integers
//! over the common denominator of the parameters, which keeps every
//! comparison exact. The three stages:
//!
//! - stage 3 is the binary heal rule: healing pays only through the final
//!   connectivity indicator, so the defender heals fully (canonical
//!   reconnection set) exactly when strictly profitable;
//! - stage 2 maximizes the attacker utility over all subsets of `E1`,
//!   preferring more removals and then the lexicographically smallest set
//!   on ties;
//! - stage 1 maximizes the defender utility over all edge subsets of the
//!   complete graph, preferring fewer initial links and then the
//!   lexicographically smallest set on ties.

use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;

use crate::error::OracleError;
use crate::game::{GameParams, StrategyTriple};
use crate::graph::{Edge, EdgeSet};
use crate::rational::{dist_to_integer, frac_from_f64, to_f64, Frac};
use crate::spe::{candidates, solve, Situation, SpeOutcome};

/// Default node-count ceiling. `n = 6` means `3^15` strategy pairs.
pub const DEFAULT_LIMIT_N: usize = 6;

/// Lexicographic edge indexing for the complete graph on `n` nodes.
#[derive(Debug, Clone)]
struct EdgeIndexer {
    pairs: Vec<(usize, usize)>,
}

impl EdgeIndexer {
    fn new(n: usize) -> EdgeIndexer {
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        EdgeIndexer { pairs }
    }

    fn count(&self) -> usize {
        self.pairs.len()
    }

    fn mask_to_set(&self, mask: u32) -> EdgeSet {
        let mut out = EdgeSet::new();
        let mut m = mask;
        while m != 0 {
            let idx = m.trailing_zeros() as usize;
            let (i, j) = self.pairs[idx];
            out.insert(Edge::new(i, j).expect("indexer pair"));
            m &= m - 1;
        }
        out
    }
}

/// Component counts for every edge mask, built once per call.
fn component_table(n: usize, indexer: &EdgeIndexer) -> Vec<u8> {
    let m = indexer.count();
    let size = 1usize << m;
    (0..size)
        .map(|mask| {
            let mut adj = [0u8; 8];
            let mut mm = mask as u32;
            while mm != 0 {
                let idx = mm.trailing_zeros() as usize;
                let (a, b) = indexer.pairs[idx];
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
                mm &= mm - 1;
            }
            let full: u8 = if n >= 8 { u8::MAX } else { (1u8 << n) - 1 };
            let mut visited: u8 = 0;
            let mut comps = 0u8;
            while visited != full {
                let seed = (!visited & full).trailing_zeros();
                let mut frontier: u8 = 1 << seed;
                let mut reach: u8 = frontier;
                while frontier != 0 {
                    let v = frontier.trailing_zeros() as usize;
                    frontier &= frontier - 1;
                    let new = adj[v] & !reach;
                    reach |= new;
                    frontier |= new;
                }
                visited |= reach;
                comps += 1;
            }
            comps
        })
        .collect()
}

/// For equal-size masks, the set holding the lowest differing edge index is
/// the lexicographically smaller edge list.
fn lex_smaller(a: u32, b: u32) -> bool {
    let x = a ^ b;
    x != 0 && (a & (x & x.wrapping_neg())) != 0
}

/// Exact parameters scaled to a common denominator.
struct Scaled {
    /// Final-phase weight `(1-τ-τ_R)·D`.
    tf: i128,
    tau: i128,
    tau_r: i128,
    c_d: i128,
    c_a: i128,
    denom: i128,
}

impl Scaled {
    fn new(p: &GameParams) -> Scaled {
        let denom = [&p.tau, &p.tau_r, &p.c_d, &p.c_a]
            .iter()
            .fold(1i128, |acc, f| acc.lcm(f.denom()));
        let scale = |f: &Frac| -> i128 { f.numer() * (denom / f.denom()) };
        Scaled {
            tf: denom - scale(&p.tau) - scale(&p.tau_r),
            tau: scale(&p.tau),
            tau_r: scale(&p.tau_r),
            c_d: scale(&p.c_d),
            c_a: scale(&p.c_a),
            denom,
        }
    }

    fn frac(&self, scaled: i128) -> Frac {
        Frac::new(scaled, self.denom)
    }
}

#[derive(Debug, Clone, Copy)]
struct StageOneEntry {
    u_d: i128,
    u_a: i128,
    ea_mask: u32,
    e2_len: u8,
    initial: bool,
    after_attack: bool,
    after_heal: bool,
    evaluations: u64,
}

/// Ground-truth equilibrium from full enumeration.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Every strategy triple tied with the canonical winner on utilities
    /// and link counts. The first entry is the canonical winner.
    pub best_triples: Vec<StrategyTriple>,
    pub u_d: Frac,
    pub u_a: Frac,
    /// Label derived from the winner's connectivity pattern.
    pub situation: Situation,
    /// Connectivity indicators of the three phases.
    pub indicators: (bool, bool, bool),
    pub e1_count: usize,
    pub ea_count: usize,
    pub e2_count: usize,
    /// Number of `(E1, E_A)` pairs examined.
    pub evaluations: u64,
}

fn situation_of(ind: (bool, bool, bool)) -> Option<Situation> {
    match ind {
        (true, true, true) => Some(Situation::S1),
        (true, false, true) => Some(Situation::S2),
        (true, false, false) => Some(Situation::S3),
        (false, false, true) => Some(Situation::S4),
        (false, false, false) => Some(Situation::S5),
        _ => None,
    }
}

/// Solves the game exactly by backward induction over every strategy pair.
/// Refuses node counts above `limit_n` rather than sampling.
pub fn solve_exhaustive(p: &GameParams, limit_n: usize) -> Result<OracleResult, OracleError> {
    if p.n > limit_n {
        return Err(OracleError::TooLarge(format!(
            "exhaustive search supports n <= {limit_n}, got n = {}",
            p.n
        )));
    }
    let n = p.n;
    let indexer = EdgeIndexer::new(n);
    let m = indexer.count();
    let comp = component_table(n, &indexer);
    let sc = Scaled::new(p);

    // Healing profit and final indicator per survivor component count.
    // heal[c] = (heals?, e2 links). Component counts start at 1.
    let mut heal = vec![(false, 0u8); n + 1];
    for (c, entry) in heal.iter_mut().enumerate().take(n + 1).skip(2) {
        let gain = sc.tf - sc.c_d * (c as i128 - 1);
        *entry = (gain > 0, (c - 1) as u8);
    }

    let size: u32 = 1 << m;
    let entries: Vec<StageOneEntry> = (0..size)
        .into_par_iter()
        .map(|e1| {
            let initial = comp[e1 as usize] == 1;
            let i1 = initial as i128;
            let mut best: Option<(i128, u32, u8, bool, bool)> = None;
            let mut evals = 0u64;
            let mut sub = e1;
            loop {
                evals += 1;
                let surv = e1 & !sub;
                let c = comp[surv as usize] as usize;
                let (after_attack, after_heal, e2_len) = if c == 1 {
                    (true, true, 0u8)
                } else {
                    let (heals, links) = heal[c];
                    (false, heals, if heals { links } else { 0 })
                };
                let u_a = sc.tf * (1 - after_heal as i128)
                    + sc.tau * (1 - i1)
                    + sc.tau_r * (1 - after_attack as i128)
                    - sc.c_a * sub.count_ones() as i128;
                let replace = match &best {
                    None => true,
                    Some((bu, bmask, _, _, _)) => {
                        u_a > *bu
                            || (u_a == *bu && sub.count_ones() > bmask.count_ones())
                            || (u_a == *bu
                                && sub.count_ones() == bmask.count_ones()
                                && lex_smaller(sub, *bmask))
                    }
                };
                if replace {
                    best = Some((u_a, sub, e2_len, after_attack, after_heal));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & e1;
            }
            let (u_a, ea_mask, e2_len, after_attack, after_heal) = best.expect("nonempty subset scan");
            let u_d = sc.tf * after_heal as i128 + sc.tau * i1 + sc.tau_r * after_attack as i128
                - sc.c_d * (e1.count_ones() as i128 + e2_len as i128);
            StageOneEntry {
                u_d,
                u_a,
                ea_mask,
                e2_len,
                initial,
                after_attack,
                after_heal,
                evaluations: evals,
            }
        })
        .collect();

    // Stage 1: defender's pick with the documented tie order.
    let mut winner = 0usize;
    for e1 in 1..entries.len() {
        let (a, b) = (&entries[e1], &entries[winner]);
        let better = a.u_d > b.u_d
            || (a.u_d == b.u_d && (e1 as u32).count_ones() < (winner as u32).count_ones())
            || (a.u_d == b.u_d
                && (e1 as u32).count_ones() == (winner as u32).count_ones()
                && lex_smaller(e1 as u32, winner as u32));
        if better {
            winner = e1;
        }
    }
    let w = entries[winner];
    let ind = (w.initial, w.after_attack, w.after_heal);
    let situation = situation_of(ind).ok_or_else(|| {
        OracleError::TooLarge(format!("winner indicator pattern {ind:?} violates the taxonomy"))
    })?;

    let counts = (
        (winner as u32).count_ones() as usize,
        w.ea_mask.count_ones() as usize,
        w.e2_len as usize,
    );
    let mut best_triples = Vec::new();
    let mut evaluations = 0u64;
    for (e1, entry) in entries.iter().enumerate() {
        evaluations += entry.evaluations;
        let tied = entry.u_d == w.u_d
            && entry.u_a == w.u_a
            && (e1 as u32).count_ones() as usize == counts.0
            && entry.ea_mask.count_ones() as usize == counts.1
            && entry.e2_len as usize == counts.2;
        if tied {
            best_triples.push(make_triple(p, &indexer, e1 as u32, entry));
        }
    }
    // Canonical winner first.
    let canonical = make_triple(p, &indexer, winner as u32, &w);
    if let Some(pos) = best_triples.iter().position(|t| *t == canonical) {
        best_triples.swap(0, pos);
    }

    Ok(OracleResult {
        best_triples,
        u_d: sc.frac(w.u_d),
        u_a: sc.frac(w.u_a),
        situation,
        indicators: ind,
        e1_count: counts.0,
        ea_count: counts.1,
        e2_count: counts.2,
        evaluations,
    })
}

fn make_triple(p: &GameParams, indexer: &EdgeIndexer, e1: u32, entry: &StageOneEntry) -> StrategyTriple {
    let e1_set = indexer.mask_to_set(e1);
    let ea_set = indexer.mask_to_set(entry.ea_mask);
    let e2_set = if entry.e2_len > 0 {
        let g = crate::graph::Graph::new(p.n, e1_set.clone())
            .expect("indexer edges valid")
            .without_edges(&ea_set);
        crate::graph::heal_edges(&g)
    } else {
        EdgeSet::new()
    };
    StrategyTriple::new(e1_set, ea_set, e2_set)
}

// ---------------------------------------------------------------------------
// Closed-form vs oracle grid verification
// ---------------------------------------------------------------------------

/// Classification of one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchClass {
    /// Interior point, full agreement on label, counts and exact utilities.
    Exact,
    /// Boundary point whose oracle outcome appears in the closed-form
    /// candidate set.
    BoundaryConsistent,
    Mismatch,
}

impl MatchClass {
    pub fn token(self) -> &'static str {
        match self {
            MatchClass::Exact => "exact",
            MatchClass::BoundaryConsistent => "boundary",
            MatchClass::Mismatch => "MISMATCH",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridRow {
    pub params: GameParams,
    pub closed: SpeOutcome,
    pub oracle_situation: Situation,
    pub oracle_u_d: Frac,
    pub oracle_u_a: Frac,
    pub oracle_counts: (usize, usize, usize),
    pub class: MatchClass,
}

#[derive(Debug, Clone)]
pub struct GridReport {
    pub rows: Vec<GridRow>,
    pub total: usize,
    pub exact: usize,
    pub boundary: usize,
    pub mismatch: usize,
}

impl GridReport {
    pub fn summary_line(&self) -> String {
        format!(
            "total={} exact={} boundary={} mismatch={}",
            self.total, self.exact, self.boundary, self.mismatch
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,c_D,c_A,tau,tau_R,class,closed_situation,closed_e1,closed_eA,closed_e2,closed_u_D,closed_u_A,oracle_situation,oracle_e1,oracle_eA,oracle_e2,oracle_u_D,oracle_u_A\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.params.n,
                crate::rational::format_frac(r.params.c_d),
                crate::rational::format_frac(r.params.c_a),
                crate::rational::format_frac(r.params.tau),
                crate::rational::format_frac(r.params.tau_r),
                r.class.token(),
                r.closed.situation.token(),
                r.closed.e1_count,
                r.closed.ea_count,
                r.closed.e2_count,
                to_f64(r.closed.u_d),
                to_f64(r.closed.u_a),
                r.oracle_situation.token(),
                r.oracle_counts.0,
                r.oracle_counts.1,
                r.oracle_counts.2,
                to_f64(r.oracle_u_d),
                to_f64(r.oracle_u_a),
            ));
        }
        out
    }
}

/// A point is a boundary point when any floor argument is within `eps` of
/// an integer, when a regime or no-threat condition is within `eps` of
/// equality, or when two closed-form candidates are within `eps` of a
/// utility tie. Everything else is interior, where the closed form and
/// oracle must agree exactly.
pub fn is_boundary_point(p: &GameParams, eps: &Frac) -> bool {
    let one = Frac::from_integer(1);
    let ratios = [
        p.tau_r / p.c_a,
        (one - p.tau) / p.c_a,
        (one - p.tau) / p.c_d,
        p.final_phase() / p.c_d,
        p.final_phase() / p.c_a,
    ];
    for r in ratios {
        if dist_to_integer(r) <= *eps {
            return true;
        }
    }
    let gap = p.final_phase() - p.c_d * Frac::from_integer((p.n - 1) as i128);
    if gap.abs() <= *eps {
        return true;
    }
    if (p.c_a - (one - p.tau)).abs() <= *eps {
        return true;
    }
    if (p.c_d - one / Frac::from_integer((p.n - 1) as i128)).abs() <= *eps {
        return true;
    }
    let cands = candidates(p);
    for (i, a) in cands.iter().enumerate() {
        for b in cands.iter().skip(i + 1) {
            if (a.u_d - b.u_d).abs() <= *eps
                || (a.u_a - b.u_a).abs() <= *eps
            {
                return true;
            }
        }
    }
    false
}

/// Agreement classification for one point: interior points must match the
/// oracle exactly on label, counts and utilities; boundary points must
/// have the oracle outcome among the closed-form candidates.
pub fn classify(
    closed: &SpeOutcome,
    oracle: &OracleResult,
    boundary: bool,
    candidate_set: &[SpeOutcome],
) -> MatchClass {
    if !boundary {
        let agree = closed.situation == oracle.situation
            && closed.counts() == (oracle.e1_count, oracle.ea_count, oracle.e2_count)
            && closed.u_d == oracle.u_d
            && closed.u_a == oracle.u_a;
        if agree {
            MatchClass::Exact
        } else {
            MatchClass::Mismatch
        }
    } else {
        let consistent = candidate_set
            .iter()
            .any(|c| c.situation == oracle.situation && c.u_d == oracle.u_d && c.u_a == oracle.u_a);
        if consistent {
            MatchClass::BoundaryConsistent
        } else {
            MatchClass::Mismatch
        }
    }
}

/// Runs the closed form and the oracle on every grid point and classifies
/// the agreement.
pub fn verify_grid(points: &[GameParams], eps: f64, limit_n: usize) -> Result<GridReport, OracleError> {
    let eps = frac_from_f64(eps).map_err(|e| OracleError::TooLarge(e.to_string()))?;
    let rows: Result<Vec<GridRow>, OracleError> = points
        .par_iter()
        .map(|p| {
            let closed = solve(p)?;
            let oracle = solve_exhaustive(p, limit_n)?;
            let boundary = is_boundary_point(p, &eps);
            let class = classify(&closed, &oracle, boundary, &candidates(p));
            Ok(GridRow {
                params: p.clone(),
                closed,
                oracle_situation: oracle.situation,
                oracle_u_d: oracle.u_d,
                oracle_u_a: oracle.u_a,
                oracle_counts: (oracle.e1_count, oracle.ea_count, oracle.e2_count),
                class,
            })
        })
        .collect();
    let rows = rows?;
    let total = rows.len();
    let exact = rows.iter().filter(|r| r.class == MatchClass::Exact).count();
    let boundary = rows.iter().filter(|r| r.class == MatchClass::BoundaryConsistent).count();
    let mismatch = total - exact - boundary;
    Ok(GridReport { rows, total, exact, boundary, mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{utility_a, utility_d};
    use crate::rational::frac;

    fn params(n: usize, c_d: Frac, c_a: Frac, tau: Frac, tau_r: Frac) -> GameParams {
        GameParams::new(n, c_d, c_a, tau, tau_r).unwrap()
    }

    #[test]
    fn quiet_tree_equilibrium() {
        let p = params(4, frac(1, 10), frac(1, 5), frac(3, 10), frac(1, 10));
        let r = solve_exhaustive(&p, DEFAULT_LIMIT_N).unwrap();
        assert_eq!(r.situation, Situation::S1);
        assert_eq!(r.u_d, frac(7, 10));
        assert_eq!(r.u_a, Frac::from_integer(0));
        assert_eq!(r.e1_count, 3);
        assert_eq!(r.evaluations, 3u64.pow(6));
    }

    #[test]
    fn expensive_attacks_never_happen() {
        let p = params(4, frac(1, 10), frac(9, 10), frac(3, 10), frac(1, 5));
        let r = solve_exhaustive(&p, DEFAULT_LIMIT_N).unwrap();
        for t in &r.best_triples {
            assert!(t.e_a.is_empty());
        }
    }

    #[test]
    fn oracle_matches_closed_form_at_an_interior_point() {
        let p = params(5, frac(1, 20), frac(1, 8), frac(3, 10), frac(1, 5));
        let r = solve_exhaustive(&p, DEFAULT_LIMIT_N).unwrap();
        let c = solve(&p).unwrap();
        assert_eq!(r.situation, c.situation);
        assert_eq!(r.u_d, c.u_d);
        assert_eq!(r.u_a, c.u_a);
        assert_eq!((r.e1_count, r.ea_count, r.e2_count), c.counts());
    }

    #[test]
    fn reported_triples_reproduce_utilities() {
        let p = params(4, frac(1, 12), frac(1, 9), frac(2, 7), frac(1, 3));
        let r = solve_exhaustive(&p, DEFAULT_LIMIT_N).unwrap();
        assert!(!r.best_triples.is_empty());
        for t in &r.best_triples {
            assert_eq!(utility_d(&p, t).unwrap(), r.u_d);
            assert_eq!(utility_a(&p, t).unwrap(), r.u_a);
        }
    }

    #[test]
    fn rejects_oversize_problems() {
        let p = params(7, frac(1, 20), frac(1, 8), frac(3, 10), frac(1, 5));
        assert!(matches!(
            solve_exhaustive(&p, DEFAULT_LIMIT_N),
            Err(OracleError::TooLarge(_))
        ));
    }

    #[test]
    fn boundary_classification() {
        let eps = frac_from_f64(1e-9).unwrap();
        // τ_R/c_A integral.
        let p = params(4, frac(1, 10), frac(1, 10), frac(3, 10), frac(1, 5));
        assert!(is_boundary_point(&p, &eps));
        // Clearly interior.
        let p = params(4, frac(1, 10), frac(2, 9), frac(2, 7), frac(1, 11));
        assert!(!is_boundary_point(&p, &eps));
    }

    #[test]
    fn grid_reports_and_detects_corruption() {
        let points = vec![
            params(4, frac(1, 10), frac(2, 9), frac(2, 7), frac(1, 11)),
            params(4, frac(1, 10), frac(1, 10), frac(3, 10), frac(1, 5)),
        ];
        let report = verify_grid(&points, 1e-9, DEFAULT_LIMIT_N).unwrap();
        assert_eq!(report.total, 2);
        assert_eq!(report.mismatch, 0);
        assert!(report.summary_line().starts_with("total=2"));
        assert!(report.to_csv().lines().count() == 3);

        // Harness self-test: an off-by-one in the secure link count must be
        // flagged, not absorbed.
        let p = &points[0];
        let oracle = solve_exhaustive(p, DEFAULT_LIMIT_N).unwrap();
        let mut corrupted = solve(p).unwrap();
        assert_eq!(classify(&corrupted, &oracle, false, &candidates(p)), MatchClass::Exact);
        corrupted.e1_count += 1;
        corrupted.u_d = corrupted.u_d.clone() - p.c_d.clone();
        assert_eq!(
            classify(&corrupted, &oracle, false, &candidates(p)),
            MatchClass::Mismatch
        );
    }
}
