//! A ribbon graph given by its rotation system: subgraph statistics,
//! genus and the Bollobás-Riordan polynomial.

use vkbr::{fixtures, SpanningSubgraph};

fn main() {
    let g = fixtures::example_ribbon();
    print!("{}", g.to_text());
    println!("genus {}", g.genus());
    println!("{:>8}  k r n bc", "edges");
    for m in 0..1u64 << g.num_edges() {
        let kept: Vec<&str> = (0..g.num_edges())
            .filter(|&e| m >> e & 1 == 1)
            .map(|e| g.edges()[e].name.as_str())
            .collect();
        let st = g.subgraph_stats(SpanningSubgraph(m));
        println!("{:>8}  {} {} {} {}", format!("{{{}}}", kept.join(",")), st.k, st.r, st.n, st.bc);
    }
    println!("R = {}", g.br_poly().unwrap());
}
