use vkbr::random::{random_diagram, DiagramKind, RandomOptions};

fn main() {
    for kind in [DiagramKind::Any, DiagramKind::Alternating, DiagramKind::Colorable] {
        let d = random_diagram(4, 2024, RandomOptions { kind, knot: false }).unwrap();
        println!("{kind:?}: {} component(s), alternating {}", d.num_components(), d.is_alternating());
        print!("{}", d.to_text());
    }
}
