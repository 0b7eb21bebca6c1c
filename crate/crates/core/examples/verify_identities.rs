//! Both routes to the bracket and to the Jones polynomial on a few seeded
//! random colorable diagrams.

use vkbr::random::{random_diagram, DiagramKind, RandomOptions};
use vkbr::verify::{verify_jones, verify_signed};

fn main() {
    let opts = RandomOptions { kind: DiagramKind::Colorable, knot: true };
    for seed in 0..8 {
        let d = random_diagram(5, seed, opts).unwrap();
        let b = verify_signed(&d).unwrap();
        let j = verify_jones(&d).unwrap();
        println!(
            "seed {seed}: switches {:?}, bracket equal {}, jones equal {}, J = {}",
            b.switched, b.equal, j.equal, j.direct
        );
    }
}
