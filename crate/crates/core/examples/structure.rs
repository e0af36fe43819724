//! Structural objects on a small graph: biconnected components, min
//! cycles, a shortest-path tree, the closest-vertex partition and the
//! shopping vertices.

use ncg::game::{build_graph, StrategyProfile};
use ncg::structure::{
    biconnected_components, closest_assignment, cut_vertices, girth, min_cycle_through_edge, shopping_vertices,
    shortest_path_tree, two_degree_paths, TieRule,
};

pub fn main() -> ncg::Result<()> {
    // a directed 5-cycle with a two-vertex tail hanging off vertex 0
    let profile = StrategyProfile::from_purchases(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (6, 5)])?;
    let graph = build_graph(&profile);

    println!("girth {:?}, cut vertices {:?}", girth(&graph), cut_vertices(&graph));
    for h in biconnected_components(&graph) {
        println!("component {:?} average degree {}", h.vertices(), h.average_degree());
        println!("  two-degree paths {:?}", two_degree_paths(&h));
        for &e in h.edges() {
            let c = min_cycle_through_edge(&graph, e)?.expect("component edges lie on cycles");
            println!("  min cycle through {e}: {:?} directed {}", c.vertices, c.directed);
        }
        let s = closest_assignment(&graph, &h)?;
        for &v in h.vertices() {
            println!("  S({v}) = {:?}", s.set(v));
        }
        let shop = shopping_vertices(&graph, &h, 0)?;
        for (u, edges) in &shop.members {
            let edges: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
            println!("  shopping vertex {u} buys non-tree edges {edges:?}");
        }
    }
    let tree = shortest_path_tree(&graph, 0, TieRule::SmallestIndexParent)?;
    println!("tree edges from 0: {:?}", tree.edges().map(|e| e.to_string()).collect::<Vec<_>>());
    Ok(())
}
