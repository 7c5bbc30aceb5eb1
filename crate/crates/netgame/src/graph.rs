//! Undirected simple graphs on labeled nodes, the topology constructors used
//! by the equilibrium analysis, and a brute-force edge-cut search.
//!
//! Graphs are value objects: edges live in a `BTreeSet` in canonical sorted
//! order, so equality, hashing of derived data and serialization are all
//! deterministic. Everything here is a pure function over immutable values.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GraphError, ParseError};

/// Unordered node pair with the invariant `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    /// Normalizes endpoint order. Self-loops are rejected.
    pub fn new(i: usize, j: usize) -> Result<Edge, GraphError> {
        if i == j {
            return Err(GraphError::InvalidGraph(format!("self-loop at node {i}")));
        }
        Ok(if i < j { Edge { a: i, b: j } } else { Edge { a: j, b: i } })
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Set of unordered node pairs, interpreted relative to some graph's node
/// count. Used for initial links, attacked links and healing links alike.
pub type EdgeSet = BTreeSet<Edge>;

/// Convenience constructor for edge sets in tests and examples.
pub fn edges(pairs: &[(usize, usize)]) -> EdgeSet {
    pairs
        .iter()
        .map(|&(i, j)| Edge::new(i, j).expect("valid edge"))
        .collect()
}

/// Undirected simple graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: EdgeSet,
}

impl Graph {
    /// Validates endpoints against `node_count`. `n = 0` is rejected here,
    /// so every constructed `Graph` supports connectivity queries.
    pub fn new(node_count: usize, edge_set: EdgeSet) -> Result<Graph, GraphError> {
        if node_count == 0 {
            return Err(GraphError::InvalidGraph("graph needs at least one node".into()));
        }
        for e in &edge_set {
            if e.b >= node_count {
                return Err(GraphError::InvalidGraph(format!(
                    "edge {e} endpoint out of range for n={node_count}"
                )));
            }
        }
        Ok(Graph { node_count, edges: edge_set })
    }

    pub fn empty(node_count: usize) -> Result<Graph, GraphError> {
        Graph::new(node_count, EdgeSet::new())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Graph with the given edges removed. Edges absent from the graph are
    /// ignored, matching set difference semantics.
    pub fn without_edges(&self, removed: &EdgeSet) -> Graph {
        Graph {
            node_count: self.node_count,
            edges: self.edges.difference(removed).cloned().collect(),
        }
    }

    pub fn with_edges(&self, added: &EdgeSet) -> Result<Graph, GraphError> {
        let mut es = self.edges.clone();
        es.extend(added.iter().cloned());
        Graph::new(self.node_count, es)
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.a == node || e.b == node).count()
    }

    fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.node_count);
        for e in &self.edges {
            uf.union(e.a, e.b);
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.num_components() == 1
    }

    pub fn num_components(&self) -> usize {
        let labels = self.component_labels();
        labels.iter().max().map(|m| m + 1).unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.node_count).map(|v| self.degree(v)).min().unwrap_or(0)
    }
}

/// Minimal union-find over `0..n`, with canonical component labels assigned
/// in order of each component's smallest member.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            // Smaller index wins so labels come out canonical.
            if rx < ry {
                self.parent[ry] = rx;
            } else {
                self.parent[rx] = ry;
            }
        }
    }

    /// Component labels numbered by smallest member, 0-based.
    fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut label_of_root = vec![usize::MAX; n];
        let mut next = 0;
        for &r in &roots {
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
        }
        roots.into_iter().map(|r| label_of_root[r]).collect()
    }
}

/// Path graph `0-1-…-(n-1)`. The path form is the canonical tree here
/// because the one-attack/one-heal equilibrium argument runs on a line.
pub fn tree(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidParameter("tree needs n >= 1".into()));
    }
    let mut es = EdgeSet::new();
    for i in 0..n.saturating_sub(1) {
        es.insert(Edge::new(i, i + 1)?);
    }
    Graph::new(n, es)
}

/// Cycle on `n >= 3` nodes.
pub fn ring(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!("ring needs n >= 3, got {n}")));
    }
    let mut es = EdgeSet::new();
    for i in 0..n {
        es.insert(Edge::new(i, (i + 1) % n)?);
    }
    Graph::new(n, es)
}

/// Harary graph `H_{d,n}`: the cheapest graph on `n` nodes that stays
/// connected after removal of any `d-1` edges, with exactly `⌈dn/2⌉` edges
/// for `d >= 2`. `d = 1` degenerates to the path tree.
///
/// Construction: circulant offsets `1..⌊d/2⌋`; for odd `d` and even `n` the
/// `n/2` diameter chords are added; for odd `d` and odd `n` the `⌈n/2⌉`
/// near-diameter chords `{i, i+(n-1)/2}` for `i = 0..⌈n/2⌉-1`.
pub fn harary(n: usize, d: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameter(format!("harary needs n >= 2, got {n}")));
    }
    if d < 1 || d > n - 1 {
        return Err(GraphError::InvalidParameter(format!(
            "harary degree must satisfy 1 <= d <= n-1, got d={d} with n={n}"
        )));
    }
    if d == 1 {
        return tree(n);
    }
    let mut es = EdgeSet::new();
    for offset in 1..=(d / 2) {
        for i in 0..n {
            es.insert(Edge::new(i, (i + offset) % n)?);
        }
    }
    if d % 2 == 1 {
        if n.is_multiple_of(2) {
            for i in 0..n / 2 {
                es.insert(Edge::new(i, i + n / 2)?);
            }
        } else {
            let half = (n - 1) / 2;
            for i in 0..n.div_ceil(2) {
                es.insert(Edge::new(i, (i + half) % n)?);
            }
        }
    }
    Graph::new(n, es)
}

/// Witness construction for the hardest secure-network case: a ring plus a
/// chord path visiting every `k`-th node. Chords are `{kj mod n, k(j+1) mod n}`
/// for `j = 1..⌊n/k⌋-1`; if `⌊n/k⌋` is even the chord cycle closes back to
/// node 0, otherwise node 0 is linked to node `⌊n/2⌋` (pinned for
/// reproducibility; any node other than 1 and n-1 works).
pub fn case4_witness(n: usize, k: usize) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(GraphError::InvalidParameter(format!("case4 witness needs n >= 4, got {n}")));
    }
    if k < 1 || k >= n - 1 {
        return Err(GraphError::InvalidParameter(format!(
            "case4 witness needs 1 <= k < n-1, got k={k} with n={n}"
        )));
    }
    let base = ring(n)?;
    let mut es = base.edges().clone();
    let hops = n / k;
    for j in 1..hops {
        let u = (k * j) % n;
        let v = (k * (j + 1)) % n;
        if u != v {
            es.insert(Edge::new(u, v)?);
        }
    }
    if hops.is_multiple_of(2) {
        let u = (k * hops) % n;
        if u != 0 {
            es.insert(Edge::new(u, 0)?);
        }
    } else {
        es.insert(Edge::new(0, n / 2)?);
    }
    Graph::new(n, es)
}

/// Edge count predicted for the case-4 witness by the closed-form link
/// formula, `n + ⌊n/k⌋ + ⌈⌊n/k⌋/2⌉`. The constructed graph usually has
/// fewer edges; both numbers are reported wherever the witness is surfaced
/// so the discrepancy stays visible.
pub fn case4_formula_count(n: usize, k: usize) -> Result<usize, GraphError> {
    if k < 1 {
        return Err(GraphError::InvalidParameter("case4 formula needs k >= 1".into()));
    }
    let hops = n / k;
    Ok(n + hops + hops.div_ceil(2))
}

/// Hard cap on the exhaustive cut search. Above this the subset space is
/// too large to enumerate and the caller gets a resource error instead of a
/// silently truncated answer.
pub const CUT_SEARCH_EDGE_BUDGET: usize = 20;

/// Smallest number of edge removals that splits `g` into at least `m`
/// components, found by exhaustive search over removal sets in increasing
/// cardinality. Never exceeds `|E| - (n - m)`: keeping only `n - m` edges
/// always leaves at least `m` components.
pub fn min_removals_for_components(g: &Graph, m: usize) -> Result<usize, GraphError> {
    let n = g.node_count();
    if m < 2 || m > n {
        return Err(GraphError::InvalidArgument(format!(
            "component target must satisfy 2 <= m <= n, got m={m} with n={n}"
        )));
    }
    let edge_list: Vec<Edge> = g.edges().iter().cloned().collect();
    let e = edge_list.len();
    if e > CUT_SEARCH_EDGE_BUDGET {
        return Err(GraphError::ResourceBudget(format!(
            "cut search over {e} edges exceeds the budget of {CUT_SEARCH_EDGE_BUDGET}"
        )));
    }
    if g.num_components() >= m {
        return Ok(0);
    }
    let sentinel = e.saturating_sub(n - m);
    for r in 1..=sentinel {
        if cut_of_size_exists(g, &edge_list, r, m) {
            return Ok(r);
        }
    }
    Ok(sentinel)
}

/// True iff some removal of at most `max_removals` edges leaves at least
/// `m` components. Same exhaustive search as
/// [`min_removals_for_components`] but stops at the given budget, which is
/// what secure-network verification needs.
pub fn has_cut_within(g: &Graph, m: usize, max_removals: usize) -> Result<bool, GraphError> {
    let n = g.node_count();
    if m < 2 || m > n {
        return Err(GraphError::InvalidArgument(format!(
            "component target must satisfy 2 <= m <= n, got m={m} with n={n}"
        )));
    }
    let edge_list: Vec<Edge> = g.edges().iter().cloned().collect();
    let e = edge_list.len();
    if e > CUT_SEARCH_EDGE_BUDGET {
        return Err(GraphError::ResourceBudget(format!(
            "cut search over {e} edges exceeds the budget of {CUT_SEARCH_EDGE_BUDGET}"
        )));
    }
    if g.num_components() >= m {
        return Ok(true);
    }
    let sentinel = e.saturating_sub(n - m);
    for r in 1..=sentinel.min(max_removals) {
        if cut_of_size_exists(g, &edge_list, r, m) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True iff removing every edge subset of size exactly `r` is checked and
/// some subset yields at least `m` components.
fn cut_of_size_exists(g: &Graph, edge_list: &[Edge], r: usize, m: usize) -> bool {
    let mut chosen = vec![0usize; r];
    combos(g, edge_list, r, m, 0, 0, &mut chosen)
}

fn combos(
    g: &Graph,
    edge_list: &[Edge],
    r: usize,
    m: usize,
    depth: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if depth == r {
        let removed: EdgeSet = chosen.iter().map(|&i| edge_list[i]).collect();
        return g.without_edges(&removed).num_components() >= m;
    }
    for i in start..=edge_list.len() - (r - depth) {
        chosen[depth] = i;
        if combos(g, edge_list, r, m, depth + 1, i + 1, chosen) {
            return true;
        }
    }
    false
}

/// Deterministic minimal reconnection set: the lowest-indexed node of every
/// non-first component (components ordered by lowest member) is linked to
/// the lowest-indexed node of the first component. Size is exactly
/// `num_components - 1` and adding it makes the graph connected.
pub fn heal_edges(g: &Graph) -> EdgeSet {
    let labels = {
        let mut uf = UnionFind::new(g.node_count());
        for e in g.edges() {
            uf.union(e.a, e.b);
        }
        uf.labels()
    };
    let comp_count = labels.iter().max().map(|m| m + 1).unwrap_or(0);
    if comp_count <= 1 {
        return EdgeSet::new();
    }
    let mut min_member = vec![usize::MAX; comp_count];
    for (node, &label) in labels.iter().enumerate() {
        if node < min_member[label] {
            min_member[label] = node;
        }
    }
    let anchor = min_member[0];
    (1..comp_count)
        .map(|c| Edge::new(anchor, min_member[c]).expect("distinct components"))
        .collect()
}

/// Quotient graph after merging the endpoints of each secure edge
/// transitively. Parallel edges collapse, self-loops drop, and supernodes
/// are relabeled in order of their smallest original member. Returns the
/// contracted graph together with the original-node to supernode mapping.
pub fn contract(g: &Graph, secure: &EdgeSet) -> Result<(Graph, Vec<usize>), GraphError> {
    for e in secure {
        if !g.contains_edge(e) {
            return Err(GraphError::InvalidArgument(format!(
                "secure edge {e} is not in the graph"
            )));
        }
    }
    let mut uf = UnionFind::new(g.node_count());
    for e in secure {
        uf.union(e.a, e.b);
    }
    let mapping = uf.labels();
    let super_count = mapping.iter().max().map(|m| m + 1).unwrap_or(0);
    let mut es = EdgeSet::new();
    for e in g.edges() {
        let (u, v) = (mapping[e.a], mapping[e.b]);
        if u != v {
            es.insert(Edge::new(u, v)?);
        }
    }
    Ok((Graph::new(super_count, es)?, mapping))
}

/// DOT rendering, one undirected graph per file. Isolated nodes are listed
/// so node count survives the round trip through graphviz tooling.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph g {\n");
    let mut touched = vec![false; g.node_count()];
    for e in g.edges() {
        touched[e.a] = true;
        touched[e.b] = true;
    }
    for (v, seen) in touched.iter().enumerate() {
        if !seen {
            out.push_str(&format!("  {v};\n"));
        }
    }
    for e in g.edges() {
        out.push_str(&format!("  {} -- {};\n", e.a, e.b));
    }
    out.push_str("}\n");
    out
}

/// Line-based edge-list format: first line `n=<int>`, then one `i j` pair
/// per line with `i < j`.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.node_count());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.a, e.b));
    }
    out
}

/// Parses the edge-list format produced by [`to_edge_list`].
pub fn from_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or(ParseError::MissingField("n"))?;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| ParseError::Malformed(format!("expected n=<int>, got {header:?}")))?
        .parse()
        .map_err(|_| ParseError::BadNumber(header.to_string()))?;
    let mut es = EdgeSet::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let (i, j) = match (it.next(), it.next(), it.next()) {
            (Some(i), Some(j), None) => (i, j),
            _ => return Err(ParseError::Malformed(format!("expected `i j`, got {line:?}"))),
        };
        let i: usize = i.parse().map_err(|_| ParseError::BadNumber(i.to_string()))?;
        let j: usize = j.parse().map_err(|_| ParseError::BadNumber(j.to_string()))?;
        if i >= j {
            return Err(ParseError::Malformed(format!("edge must have i < j, got {line:?}")));
        }
        es.insert(
            Edge::new(i, j).map_err(|e| ParseError::Malformed(e.to_string()))?,
        );
    }
    Graph::new(n, es).map_err(|e| ParseError::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_basics() {
        assert!(tree(5).unwrap().is_connected());
        let two = Graph::empty(2).unwrap();
        assert!(!two.is_connected());
        let mut g = ring(6).unwrap();
        g = g.without_edges(&edges(&[(0, 1), (1, 2)]));
        assert!(!g.is_connected());
        assert_eq!(g.num_components(), 2);
    }

    #[test]
    fn component_counts() {
        assert_eq!(Graph::empty(4).unwrap().num_components(), 4);
        assert_eq!(ring(5).unwrap().num_components(), 1);
    }

    #[test]
    fn degrees() {
        assert_eq!(ring(5).unwrap().min_degree(), 2);
        assert_eq!(tree(4).unwrap().min_degree(), 1);
        assert_eq!(harary(5, 4).unwrap().min_degree(), 4);
    }

    #[test]
    fn tree_shapes() {
        assert_eq!(tree(2).unwrap().edges(), &edges(&[(0, 1)]));
        let t = tree(5).unwrap();
        assert_eq!(t.edge_count(), 4);
        assert!(t.is_connected());
        assert_eq!(tree(10).unwrap().edge_count(), 9);
        // Removing any single edge disconnects a tree.
        for e in t.edges() {
            let mut removed = EdgeSet::new();
            removed.insert(*e);
            assert!(!t.without_edges(&removed).is_connected());
        }
    }

    #[test]
    fn ring_shapes() {
        let r3 = ring(3).unwrap();
        assert_eq!(r3.edge_count(), 3);
        assert_eq!(ring(5).unwrap(), harary(5, 2).unwrap());
        assert_eq!(ring(10).unwrap().edge_count(), 10);
        assert!(ring(2).is_err());
    }

    #[test]
    fn harary_counts_and_resistance() {
        assert_eq!(harary(5, 4).unwrap().edge_count(), 10);
        let h = harary(7, 3).unwrap();
        assert_eq!(h.edge_count(), 11);
        assert!(min_removals_for_components(&h, 2).unwrap() >= 3);
        for n in 4..=8usize {
            for d in 2..n {
                let g = harary(n, d).unwrap();
                assert_eq!(g.edge_count(), (d * n).div_ceil(2), "count H({n},{d})");
                assert!(g.min_degree() >= d, "degree H({n},{d})");
                if g.edge_count() <= CUT_SEARCH_EDGE_BUDGET {
                    assert!(
                        min_removals_for_components(&g, 2).unwrap() >= d,
                        "cut resistance H({n},{d})"
                    );
                }
            }
        }
        assert!(harary(5, 5).is_err());
        assert!(harary(5, 0).is_err());
    }

    #[test]
    fn case4_recipes() {
        let g = case4_witness(6, 2).unwrap();
        let expected = ring(6).unwrap().with_edges(&edges(&[(2, 4), (0, 4), (0, 3)])).unwrap();
        assert_eq!(g, expected);
        // No 3-edge removal splits it into 4 components.
        assert!(min_removals_for_components(&g, 4).unwrap() > 3);

        let g = case4_witness(5, 1).unwrap();
        let expected = ring(5).unwrap().with_edges(&edges(&[(0, 2)])).unwrap();
        assert_eq!(g, expected);

        assert_eq!(case4_formula_count(6, 2).unwrap(), 6 + 3 + 2);
        assert!(case4_witness(5, 4).is_err());
    }

    #[test]
    fn cut_search() {
        assert_eq!(min_removals_for_components(&ring(5).unwrap(), 2).unwrap(), 2);
        assert_eq!(min_removals_for_components(&tree(5).unwrap(), 2).unwrap(), 1);
        assert_eq!(min_removals_for_components(&harary(5, 4).unwrap(), 2).unwrap(), 4);
        // Removing j edges from a cycle leaves j components.
        assert_eq!(min_removals_for_components(&ring(6).unwrap(), 4).unwrap(), 4);
        // Budget guard.
        let big = harary(11, 4).unwrap();
        assert!(big.edge_count() > CUT_SEARCH_EDGE_BUDGET);
        assert!(matches!(
            min_removals_for_components(&big, 2),
            Err(GraphError::ResourceBudget(_))
        ));
    }

    #[test]
    fn healing() {
        assert!(heal_edges(&ring(5).unwrap()).is_empty());
        let h = heal_edges(&Graph::empty(4).unwrap());
        assert_eq!(h, edges(&[(0, 1), (0, 2), (0, 3)]));
        let g = ring(6).unwrap().without_edges(&edges(&[(0, 1), (1, 2)]));
        assert_eq!(heal_edges(&g), edges(&[(0, 1)]));
        // Union restores connectivity, size is components - 1.
        for g in [
            Graph::empty(6).unwrap(),
            tree(7).unwrap().without_edges(&edges(&[(2, 3), (4, 5)])),
        ] {
            let h = heal_edges(&g);
            assert_eq!(h.len(), g.num_components() - 1);
            assert!(g.with_edges(&h).unwrap().is_connected());
        }
    }

    #[test]
    fn contraction() {
        let g = ring(4).unwrap();
        let (same, map) = contract(&g, &EdgeSet::new()).unwrap();
        assert_eq!(same, g);
        assert_eq!(map, vec![0, 1, 2, 3]);

        // Complete graph contracted along a spanning tree collapses fully.
        let k4 = harary(4, 3).unwrap();
        let (point, _) = contract(&k4, tree(4).unwrap().edges()).unwrap();
        assert_eq!(point.node_count(), 1);
        assert_eq!(point.edge_count(), 0);

        // Securing two links around node 0 merges {0,1,2} into one supernode.
        let (g2, map) = contract(&k4, &edges(&[(0, 1), (0, 2)])).unwrap();
        assert_eq!(g2.node_count(), 2);
        assert_eq!(g2.edge_count(), 1);
        assert_eq!(map, vec![0, 0, 0, 1]);

        let bad = contract(&ring(4).unwrap(), &edges(&[(0, 2)]));
        assert!(bad.is_err());
    }

    #[test]
    fn contract_identity_is_isomorphic_under_canonical_labels() {
        for g in [ring(7).unwrap(), harary(6, 3).unwrap(), tree(5).unwrap()] {
            let (h, map) = contract(&g, &EdgeSet::new()).unwrap();
            assert_eq!(h, g);
            assert!(map.iter().enumerate().all(|(i, &l)| i == l));
        }
    }

    #[test]
    fn dot_and_edge_list_round_trip() {
        let g = case4_witness(6, 2).unwrap();
        let dot = to_dot(&g);
        assert!(dot.starts_with("graph g {"));
        assert!(dot.contains("0 -- 1;"));

        let text = to_edge_list(&g);
        let back = from_edge_list(&text).unwrap();
        assert_eq!(back, g);

        let lonely = Graph::empty(3).unwrap();
        assert_eq!(from_edge_list(&to_edge_list(&lonely)).unwrap(), lonely);
        assert!(to_dot(&lonely).contains("  1;\n"));
    }

    #[test]
    fn rejects_invalid_graphs() {
        assert!(Graph::new(0, EdgeSet::new()).is_err());
        assert!(Edge::new(2, 2).is_err());
        assert!(Graph::new(3, edges(&[(0, 3)])).is_err());
    }
}
