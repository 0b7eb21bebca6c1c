//! Tutte polynomials as R(x-1, y-1, 1).

use vkbr::build::build_ribbon;
use vkbr::fixtures;

fn main() {
    println!("example ribbon graph: T = {}", fixtures::example_ribbon().tutte_via_br().unwrap());
    let (g, _) = build_ribbon(&fixtures::trefoil()).unwrap();
    println!("trefoil's ribbon graph: T = {}", g.tutte_via_br().unwrap());
}
