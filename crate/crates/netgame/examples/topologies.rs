//! Named topologies and the brute-force cut search.
//!
//! ```sh
//! cargo run --release --example topologies
//! ```

use netgame::graph::{
    case4_formula_count, case4_witness, harary, min_removals_for_components, ring, to_dot,
    to_edge_list, tree,
};

fn main() {
    let t = tree(6).unwrap();
    println!("tree(6): {} edges, connected = {}", t.edge_count(), t.is_connected());

    let r = ring(6).unwrap();
    println!(
        "ring(6): {} edges, removals to disconnect = {}",
        r.edge_count(),
        min_removals_for_components(&r, 2).unwrap()
    );

    // Harary graphs meet the ceil(d*n/2) bound and survive d-1 removals.
    for (n, d) in [(5, 2), (5, 4), (7, 3)] {
        let h = harary(n, d).unwrap();
        println!(
            "harary({n},{d}): {} edges (bound {}), removals to disconnect = {}",
            h.edge_count(),
            (d * n).div_ceil(2),
            min_removals_for_components(&h, 2).unwrap()
        );
    }

    // The ring-plus-chords witness, with the closed-form link count it is
    // usually cheaper than.
    let g = case4_witness(6, 2).unwrap();
    println!(
        "case4_witness(6,2): {} edges constructed vs {} from the link formula",
        g.edge_count(),
        case4_formula_count(6, 2).unwrap()
    );
    println!(
        "  min removals for 4 components = {}",
        min_removals_for_components(&g, 4).unwrap()
    );

    println!("\nedge list:\n{}", to_edge_list(&g));
    println!("dot:\n{}", to_dot(&g));
}
