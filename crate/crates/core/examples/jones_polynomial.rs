use vkbr::fixtures;

fn main() {
    for (name, d) in [
        ("unknot", fixtures::unknot()),
        ("trefoil", fixtures::trefoil()),
        ("mirror trefoil", fixtures::trefoil().mirror()),
        ("3-crossing virtual knot", fixtures::example_knot()),
        ("virtual hopf link", fixtures::virtual_hopf()),
    ] {
        println!("{name:>24}: w = {:>2}, J = {}", d.writhe(), d.jones().unwrap());
    }
}
