//! Ribbon graph of an alternating diagram from a file (default: the
//! 3-crossing example), with its crossing-to-edge map.
//!
//!     cargo run --example build_ribbon -- path/to/diagram.vkd

use vkbr::{build_ribbon, fixtures, Diagram};

fn main() {
    let d = match std::env::args().nth(1) {
        Some(path) => Diagram::parse(&std::fs::read_to_string(path).unwrap()).unwrap(),
        None => fixtures::example_knot(),
    };
    match build_ribbon(&d) {
        Ok((g, map)) => {
            print!("{}", g.to_text());
            print!("{}", map.to_text(&g));
        }
        Err(e) => eprintln!("{e}"),
    }
}
