//! Secure-link contraction: when some links cannot be attacked, their
//! endpoints merge into supernodes and the protection problem shrinks.
//!
//! ```sh
//! cargo run --release --example contraction
//! ```

use netgame::graph::{contract, edges, harary};

fn main() {
    // Four nodes that must survive two removals: unconstrained, that takes
    // the complete graph's six links.
    let unconstrained = harary(4, 3).unwrap();
    println!("unconstrained: {} links to resist 2 removals", unconstrained.edge_count());

    // Two secure links around node 0 merge {0,1,2} into one supernode.
    let secure = edges(&[(0, 1), (0, 2)]);
    let (contracted, mapping) = contract(&unconstrained, &secure).unwrap();
    println!(
        "contracted: {} supernodes, {} surviving link classes, mapping {:?}",
        contracted.node_count(),
        contracted.edge_count(),
        mapping
    );

    // Joining two supernodes against 2 removals takes 3 parallel links, so
    // the constrained design costs 2 secure + 3 new = 5 links instead of 6.
    let removals = 2;
    let new_links = (removals + 1) * (contracted.node_count() - 1);
    println!(
        "constrained total: {} secure + {} new = {} links (vs {})",
        secure.len(),
        new_links,
        secure.len() + new_links,
        unconstrained.edge_count()
    );
}
