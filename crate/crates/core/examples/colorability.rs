//! Checkerboard colorability as solvability of the switching constraints.

use vkbr::build::{all_switch_sets, find_switch_set};
use vkbr::random::{random_diagram, RandomOptions};
use vkbr::fixtures;

fn main() {
    println!("virtual hopf link: {:?}", find_switch_set(&fixtures::virtual_hopf()));
    println!("3-crossing example: {:?}", find_switch_set(&fixtures::example_knot()));

    let mut colorable = 0;
    for seed in 0..1000 {
        let d = random_diagram(6, seed, RandomOptions::default()).unwrap();
        if let Some(s) = find_switch_set(&d) {
            colorable += 1;
            if colorable == 1 {
                println!("first colorable sample (seed {seed}): all switch sets {:?}",
                    all_switch_sets(&d).iter().map(|s| s.crossings().to_vec()).collect::<Vec<_>>());
                println!("chosen: {:?}", s.crossings());
            }
        }
    }
    println!("{colorable} of 1000 uniform 6-crossing diagrams are colorable");
}
