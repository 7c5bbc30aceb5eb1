//! Graph-layer properties, including a max-flow cross-check of the
//! brute-force cut search that stays independent of the library's own
//! connectivity code.

use std::collections::{BTreeSet, VecDeque};

use netgame::graph::{
    case4_witness, contract, from_edge_list, harary, heal_edges, min_removals_for_components,
    ring, to_edge_list, tree, Edge, EdgeSet, Graph,
};
use proptest::prelude::*;

/// Edge connectivity by Edmonds-Karp over unit capacities: the minimum over
/// all `t != 0` of the max-flow from node 0 to `t`. Written from scratch on
/// an adjacency matrix so it shares nothing with the library path.
fn edge_connectivity_maxflow(n: usize, edges: &BTreeSet<(usize, usize)>) -> usize {
    let mut best = usize::MAX;
    for t in 1..n {
        let mut cap = vec![vec![0i32; n]; n];
        for &(a, b) in edges {
            cap[a][b] = 1;
            cap[b][a] = 1;
        }
        let mut flow = 0;
        loop {
            // BFS for an augmenting path from 0 to t.
            let mut parent = vec![usize::MAX; n];
            parent[0] = 0;
            let mut queue = VecDeque::from([0usize]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if parent[v] == usize::MAX && cap[u][v] > 0 {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut v = t;
            while v != 0 {
                let u = parent[v];
                cap[u][v] -= 1;
                cap[v][u] += 1;
                v = u;
            }
            flow += 1;
        }
        best = best.min(flow);
    }
    best
}

fn arb_connected_graph(n: usize) -> impl Strategy<Value = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let len = pairs.len();
    proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
        let mut es = EdgeSet::new();
        // Spanning path guarantees connectivity; random extras on top.
        for i in 0..n - 1 {
            es.insert(Edge::new(i, i + 1).unwrap());
        }
        for (bit, &(a, b)) in bits.iter().zip(&pairs) {
            if *bit {
                es.insert(Edge::new(a, b).unwrap());
            }
        }
        Graph::new(n, es).unwrap()
    })
}

fn arb_graph(n: usize) -> impl Strategy<Value = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let len = pairs.len();
    proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
        let es: EdgeSet = bits
            .iter()
            .zip(&pairs)
            .filter(|(bit, _)| **bit)
            .map(|(_, &(a, b))| Edge::new(a, b).unwrap())
            .collect();
        Graph::new(n, es).unwrap()
    })
}

proptest! {
    #[test]
    fn cut_search_agrees_with_maxflow(g in arb_connected_graph(6)) {
        let pairs: BTreeSet<(usize, usize)> = g.edges().iter().map(|e| e.endpoints()).collect();
        let flow = edge_connectivity_maxflow(g.node_count(), &pairs);
        let search = min_removals_for_components(&g, 2).unwrap();
        prop_assert_eq!(search, flow);
    }

    #[test]
    fn healing_reconnects_with_minimal_links(g in arb_graph(7)) {
        let h = heal_edges(&g);
        prop_assert_eq!(h.len(), g.num_components() - 1);
        prop_assert!(g.with_edges(&h).unwrap().is_connected());
    }

    #[test]
    fn contraction_of_nothing_is_identity(g in arb_graph(6)) {
        let (same, map) = contract(&g, &EdgeSet::new()).unwrap();
        prop_assert_eq!(&same, &g);
        prop_assert!(map.iter().enumerate().all(|(i, &l)| i == l));
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(8)) {
        let text = to_edge_list(&g);
        prop_assert_eq!(from_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn contraction_never_grows(g in arb_connected_graph(6), pick in proptest::collection::vec(any::<bool>(), 20)) {
        let secure: EdgeSet = g
            .edges()
            .iter()
            .zip(pick.iter().chain(std::iter::repeat(&false)))
            .filter(|(_, keep)| **keep)
            .map(|(e, _)| *e)
            .collect();
        let (h, map) = contract(&g, &secure).unwrap();
        prop_assert!(h.node_count() <= g.node_count());
        prop_assert!(h.edge_count() <= g.edge_count());
        prop_assert_eq!(map.len(), g.node_count());
        // Contracting every secure edge leaves no secure edge visible.
        for e in &secure {
            let (a, b) = e.endpoints();
            prop_assert_eq!(map[a], map[b]);
        }
    }
}

#[test]
fn named_topologies_are_what_they_claim() {
    // Spec'd invariant sweep: counts, degrees, and cut resistance.
    for n in 4..=8usize {
        for d in 2..n {
            let g = harary(n, d).unwrap();
            assert_eq!(g.edge_count(), (d * n).div_ceil(2));
            assert!(g.min_degree() >= d);
        }
    }
    assert_eq!(tree(6).unwrap().edge_count(), 5);
    assert_eq!(ring(6).unwrap().min_degree(), 2);

    // The ring-plus-chords witness never admits the cheap multi-cut it is
    // built to block.
    for (n, k) in [(5, 1), (6, 2), (7, 2), (8, 3)] {
        let g = case4_witness(n, k).unwrap();
        let needed = min_removals_for_components(&g, k + 2).unwrap();
        assert!(needed > k + 1, "case4({n},{k}) has a {k}+1-cut");
    }
}
