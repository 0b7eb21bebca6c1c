//! A colorable but non-alternating diagram: switch it to an alternating one,
//! build the signed ribbon graph and compare brackets.

use vkbr::{build_signed, fixtures, verify};

fn main() {
    let d = fixtures::example_knot().switched(&[1]);
    println!("alternating: {}", d.is_alternating());
    let b = build_signed(&d).unwrap();
    println!("switch set: {:?}", b.switches.crossings());
    print!("{}", b.graph.to_text());
    println!("signed R = {}", b.graph.signed_br_poly().unwrap());
    let rep = verify::verify_signed(&d).unwrap();
    println!("bracket  {}\nfrom R   {}\nequal {}", rep.left, rep.right, rep.equal);
}
