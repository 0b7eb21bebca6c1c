//! Small diagrams and ribbon graphs used by tests and examples.

use crate::diagram::Diagram;
use crate::ribbon::RibbonGraph;

/// Virtual knot with three classical and two virtual crossings; alternating,
/// with all-A state a single curve.
pub const EXAMPLE_KNOT: &str = include_str!("../fixtures/example_knot.vkd");

/// Two vertices, parallel edges `a`, `b`, loop `c` interleaved with `b`.
pub const EXAMPLE_RIBBON: &str = include_str!("../fixtures/example_ribbon.rib");

/// One classical crossing shared by two components.
pub const VIRTUAL_HOPF: &str = include_str!("../fixtures/virtual_hopf.vkd");

pub const TREFOIL: &str = include_str!("../fixtures/trefoil.vkd");

pub const UNKNOT: &str = include_str!("../fixtures/unknot.vkd");

pub fn example_knot() -> Diagram {
    Diagram::parse(EXAMPLE_KNOT).expect("fixture")
}

pub fn example_ribbon() -> RibbonGraph {
    RibbonGraph::parse(EXAMPLE_RIBBON).expect("fixture")
}

pub fn virtual_hopf() -> Diagram {
    Diagram::parse(VIRTUAL_HOPF).expect("fixture")
}

pub fn trefoil() -> Diagram {
    Diagram::parse(TREFOIL).expect("fixture")
}

pub fn unknot() -> Diagram {
    Diagram::parse(UNKNOT).expect("fixture")
}
