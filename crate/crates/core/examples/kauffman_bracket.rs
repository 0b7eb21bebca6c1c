//! State sum of the 3-crossing virtual knot: every state with its
//! (alpha, beta, delta), then the bracket.

use vkbr::{fixtures, State};

fn main() {
    let d = fixtures::example_knot();
    println!("{}", d.to_text());
    for s in State::all(d.num_crossings()) {
        let t = d.split_stats(s);
        println!("{s}  alpha={} beta={} delta={}", t.alpha, t.beta, t.delta);
    }
    println!("<L> = {}", d.kauffman_bracket().unwrap());
}
