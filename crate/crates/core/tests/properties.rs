use proptest::prelude::*;

use vkbr::build::{build_ribbon, build_signed, find_switch_set};
use vkbr::diagram::{bracket_vars, jones_vars};
use vkbr::random::{random_diagram, DiagramKind, RandomOptions};
use vkbr::verify::bracket_substitution;
use vkbr::{fixtures, Diagram, LaurentPoly, Sign, State};

fn kind() -> impl Strategy<Value = DiagramKind> {
    prop_oneof![
        Just(DiagramKind::Any),
        Just(DiagramKind::Alternating),
        Just(DiagramKind::Colorable)
    ]
}

fn diagram(max: usize) -> impl Strategy<Value = Diagram> {
    (1..=max, any::<u64>(), kind())
        .prop_map(|(n, seed, kind)| random_diagram(n, seed, RandomOptions { kind, knot: false }).unwrap())
}

fn colorable(max: usize) -> impl Strategy<Value = Diagram> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| {
        random_diagram(n, seed, RandomOptions { kind: DiagramKind::Colorable, knot: false }).unwrap()
    })
}

fn swap_ab(p: &LaurentPoly) -> LaurentPoly {
    p.substitute_str(&[("A", "B"), ("B", "A"), ("d", "d")], &bracket_vars())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn toggling_one_crossing_moves_delta_by_one(d in colorable(8), bits in any::<u64>(), i in 0usize..8) {
        let n = d.num_crossings();
        let s = State::from_bits(n, bits);
        let t = s.toggled(i % n);
        let (a, b) = (d.split_stats(s), d.split_stats(t));
        prop_assert_eq!(a.delta.abs_diff(b.delta), 1);
        prop_assert_eq!(a.alpha.abs_diff(b.alpha), 1);
    }

    #[test]
    fn state_count_and_homogeneity(d in diagram(8)) {
        let n = d.num_crossings();
        let hist = d.state_histogram().unwrap();
        prop_assert_eq!(hist.values().sum::<u64>(), 1u64 << n);
        for (alpha, _) in hist.keys() {
            prop_assert!(*alpha <= n);
        }
        let b = d.kauffman_bracket().unwrap();
        for (e, _) in b.terms() {
            prop_assert_eq!(e[0].0 + e[1].0, 4 * n as i64);
        }
    }

    #[test]
    fn switching_the_found_set_alternates(d in colorable(8)) {
        let s = find_switch_set(&d).unwrap();
        let alt = d.switched(s.crossings());
        prop_assert!(alt.is_alternating());
        prop_assert!(find_switch_set(&alt).unwrap().is_empty());
        // each constraint component switches at most half its crossings
        prop_assert!(s.len() * 2 <= d.num_crossings());
    }

    #[test]
    fn uncolorable_iff_no_switch_set_alternates(d in diagram(5)) {
        let n = d.num_crossings();
        let brute = (0..1u32 << n).any(|m| {
            let which: Vec<usize> = (0..n).filter(|c| m >> c & 1 == 1).collect();
            d.switched(&which).is_alternating()
        });
        prop_assert_eq!(find_switch_set(&d).is_some(), brute);
    }

    #[test]
    fn text_round_trip(d in diagram(10)) {
        let back = Diagram::parse(&d.to_text()).unwrap();
        prop_assert_eq!(back.kauffman_bracket().unwrap(), d.kauffman_bracket().unwrap());
        prop_assert_eq!(back.to_text(), d.to_text());
    }

    #[test]
    fn mirror_swaps_a_and_b(d in diagram(7)) {
        let m = d.mirror();
        prop_assert_eq!(m.kauffman_bracket().unwrap(), swap_ab(&d.kauffman_bracket().unwrap()));
        prop_assert_eq!(m.writhe(), -d.writhe());
        let inv = d.jones().unwrap().substitute_str(&[("t", "t^-1")], &jones_vars()).unwrap();
        prop_assert_eq!(m.jones().unwrap(), inv);
    }

    #[test]
    fn ribbon_graph_counts(d in colorable(8)) {
        let b = build_signed(&d).unwrap();
        let g = &b.graph;
        prop_assert_eq!(g.num_edges(), d.num_crossings());
        let negative = g.edges().iter().filter(|e| e.sign == Sign::Negative).count();
        prop_assert_eq!(negative, b.switches.len());
        let alt = d.switched(b.switches.crossings());
        let (plain, _) = build_ribbon(&alt).unwrap();
        prop_assert_eq!(plain.br_poly().unwrap(), g.br_poly().unwrap());
        // vertices are the all-B state circles
        let all_b = State::uniform(alt.num_crossings(), vkbr::Splitting::B);
        prop_assert_eq!(g.num_vertices(), alt.split_stats(all_b).delta);
    }

    #[test]
    fn generation_is_deterministic(n in 0usize..=12, seed in any::<u64>(), k in kind()) {
        let opts = RandomOptions { kind: k, knot: false };
        prop_assert_eq!(random_diagram(n, seed, opts).unwrap(), random_diagram(n, seed, opts).unwrap());
    }
}

#[test]
fn substitution_satisfies_xyz_squared() {
    let s = bracket_substitution();
    let xyzz = s["x"].mul(&s["y"]).unwrap().mul(&s["z"].pow(2)).unwrap();
    assert!(xyzz.is_one());
}

#[test]
fn toggle_can_keep_delta_when_not_colorable() {
    let d = fixtures::virtual_hopf();
    let a = d.split_stats(State::from_bits(1, 0));
    let b = d.split_stats(State::from_bits(1, 1));
    assert_eq!((a.delta, b.delta), (1, 1));
}
