//! From a diagram to its (signed) ribbon graph.
//!
//! Near each crossing the canonical checkerboard coloring blackens the two
//! opposite angles swept by the over strand under counterclockwise rotation,
//! the angles between ports 1,2 and between ports 3,0. Each vertex disc of
//! the ribbon graph is bounded by a curve that runs along the link and turns
//! around these black corners, which is a circle of the all-B state. Every
//! crossing becomes an edge joining its two black corners, so keeping an edge
//! is the same as A-splitting its crossing.

use thiserror::Error;

use crate::diagram::{Diagram, Pass};
use crate::ribbon::{RibbonError, RibbonGraph, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("diagram is not alternating; build the signed ribbon graph instead")]
    NotAlternating,
    #[error("diagram is not checkerboard colorable")]
    NotColorable,
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// Crossings whose over/under must be exchanged to make a diagram alternating.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SwitchSet {
    switched: Vec<usize>,
}

impl SwitchSet {
    pub fn new(mut switched: Vec<usize>) -> Self {
        switched.sort_unstable();
        switched.dedup();
        SwitchSet { switched }
    }

    pub fn crossings(&self) -> &[usize] {
        &self.switched
    }

    pub fn contains(&self, c: usize) -> bool {
        self.switched.binary_search(&c).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.switched.is_empty()
    }

    pub fn len(&self) -> usize {
        self.switched.len()
    }
}

/// Crossing index -> edge index of the constructed ribbon graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingEdgeMap(Vec<usize>);

impl CrossingEdgeMap {
    pub fn edge(&self, crossing: usize) -> usize {
        self.0[crossing]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `crossing-index edge-name` per line.
    pub fn to_text(&self, g: &RibbonGraph) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(c, &e)| format!("{c} {}\n", g.edges()[e].name))
            .collect()
    }
}

/// Parity union-find: `parity[x]` is the xor distance from `x` to its parent.
struct ParityUf {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf {
            parent: (0..n).collect(),
            parity: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (root, up) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= up;
        (root, self.parity[x])
    }

    /// Requires `s[a] ^ s[b] == rel`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa ^ pb ^ rel;
        true
    }
}

/// Constraint components: each is a list of `(crossing, parity to root)`.
fn switch_constraints(d: &Diagram) -> Option<Vec<Vec<(usize, u8)>>> {
    let n = d.num_crossings();
    let mut uf = ParityUf::new(n);
    for comp in d.components() {
        for (i, a) in comp.iter().enumerate() {
            let b: &Pass = &comp[(i + 1) % comp.len()];
            // consecutive passes must differ once switches are applied
            let rel = 1 ^ a.over as u8 ^ b.over as u8;
            if !uf.relate(a.crossing, b.crossing, rel) {
                return None;
            }
        }
    }
    let mut groups: Vec<Vec<(usize, u8)>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for c in 0..n {
        let (root, par) = uf.find(c);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push((c, par));
    }
    Some(groups)
}

/// A set of crossing switches making `d` alternating, or `None` when `d` is
/// not checkerboard colorable.
///
/// Each constraint component has two solutions; the one switching fewer
/// crossings is chosen, and on a tie the one leaving the lowest-indexed
/// crossing alone.
pub fn find_switch_set(d: &Diagram) -> Option<SwitchSet> {
    let groups = switch_constraints(d)?;
    let mut out = Vec::new();
    for g in groups {
        let ones = g.iter().filter(|(_, p)| *p == 1).count();
        let zeros = g.len() - ones;
        // g[0] is the lowest-indexed crossing of the group
        let flip = match ones.cmp(&zeros) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => g[0].1,
        };
        out.extend(g.iter().filter(|(_, p)| p ^ flip == 1).map(|(c, _)| *c));
    }
    Some(SwitchSet::new(out))
}

/// Every switch set that makes `d` alternating.
pub fn all_switch_sets(d: &Diagram) -> Vec<SwitchSet> {
    let Some(groups) = switch_constraints(d) else {
        return Vec::new();
    };
    assert!(groups.len() < 32, "too many constraint components");
    (0..1u32 << groups.len())
        .map(|choice| {
            let mut out = Vec::new();
            for (i, g) in groups.iter().enumerate() {
                let flip = (choice >> i & 1) as u8;
                out.extend(g.iter().filter(|(_, p)| p ^ flip == 1).map(|(c, _)| *c));
            }
            SwitchSet::new(out)
        })
        .collect()
}

pub fn is_colorable(d: &Diagram) -> bool {
    switch_constraints(d).is_some()
}

/// The ribbon graph of an alternating diagram. Edge `e{i}` comes from
/// crossing `i`; its darts `e{i}.0` and `e{i}.1` sit at the black corners
/// between ports 1,2 and between ports 3,0.
pub fn build_ribbon(d: &Diagram) -> Result<(RibbonGraph, CrossingEdgeMap), BuildError> {
    if !d.is_alternating() {
        return Err(BuildError::NotAlternating);
    }
    let n = d.num_crossings();
    // corner 2c: entered from port 2, left through port 1
    // corner 2c+1: entered from port 0, left through port 3
    let next_corner = |corner: usize| -> usize {
        let c = corner / 2;
        let exit = if corner.is_multiple_of(2) { 1 } else { 3 };
        let (c2, q) = d.arc_mate(c, exit);
        debug_assert!(q == 0 || q == 2);
        2 * c2 + if q == 2 { 0 } else { 1 }
    };

    let mut seen = vec![false; 2 * n];
    let mut vertices: Vec<(String, Vec<String>)> = Vec::new();
    for start in 0..2 * n {
        if seen[start] {
            continue;
        }
        let mut rot = Vec::new();
        let mut corner = start;
        while !seen[corner] {
            seen[corner] = true;
            rot.push(format!("e{}.{}", corner / 2, corner % 2));
            corner = next_corner(corner);
        }
        vertices.push((format!("v{}", vertices.len()), rot));
    }
    for _ in 0..d.free_loops() {
        vertices.push((format!("v{}", vertices.len()), Vec::new()));
    }
    let edges = (0..n)
        .map(|c| (format!("e{c}"), [format!("e{c}.0"), format!("e{c}.1")], Sign::Positive))
        .collect();
    let g = RibbonGraph::new(vertices, edges)?;
    Ok((g, CrossingEdgeMap((0..n).collect())))
}

#[derive(Clone, Debug)]
pub struct SignedBuild {
    pub graph: RibbonGraph,
    pub switches: SwitchSet,
    pub map: CrossingEdgeMap,
}

/// The signed ribbon graph: switch to an alternating diagram, build its
/// ribbon graph, and mark the edges of switched crossings negative.
pub fn build_signed(d: &Diagram) -> Result<SignedBuild, BuildError> {
    let switches = find_switch_set(d).ok_or(BuildError::NotColorable)?;
    build_signed_with(d, &switches)
}

/// As [`build_signed`] with a caller-chosen switch set.
pub fn build_signed_with(d: &Diagram, switches: &SwitchSet) -> Result<SignedBuild, BuildError> {
    let alt = d.switched(switches.crossings());
    let (g, map) = build_ribbon(&alt)?;
    let mut signs = vec![Sign::Positive; g.num_edges()];
    for &c in switches.crossings() {
        signs[map.edge(c)] = Sign::Negative;
    }
    Ok(SignedBuild {
        graph: g.with_signs(&signs),
        switches: switches.clone(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::State;
    use crate::fixtures;
    use crate::ribbon::SpanningSubgraph;

    #[test]
    fn switch_set_examples() {
        let d = fixtures::example_knot();
        assert_eq!(find_switch_set(&d), Some(SwitchSet::default()));
        assert_eq!(find_switch_set(&fixtures::virtual_hopf()), None);
        for c in 0..3 {
            let s = d.switched(&[c]);
            assert_eq!(find_switch_set(&s), Some(SwitchSet::new(vec![c])));
        }
    }

    #[test]
    fn switch_sets_agree_with_exhaustive_search() {
        let d = fixtures::example_knot().switched(&[2]);
        let brute: Vec<SwitchSet> = (0..8u32)
            .map(|m| SwitchSet::new((0..3).filter(|i| m >> i & 1 == 1).collect()))
            .filter(|s| d.switched(s.crossings()).is_alternating())
            .collect();
        let mut all = all_switch_sets(&d);
        all.sort_by(|a, b| a.crossings().cmp(b.crossings()));
        let mut brute = brute;
        brute.sort_by(|a, b| a.crossings().cmp(b.crossings()));
        assert_eq!(all, brute);
        assert_eq!(all.len(), 2);

        let hopf = fixtures::virtual_hopf();
        assert!(!hopf.is_alternating() && !hopf.switched(&[0]).is_alternating());
        assert!(all_switch_sets(&hopf).is_empty());
    }

    #[test]
    fn example_ribbon_graph() {
        let (g, map) = build_ribbon(&fixtures::example_knot()).unwrap();
        let st = g.full_stats();
        assert_eq!((st.v, st.e, st.k, st.r, st.n), (2, 3, 1, 1, 2));
        assert_eq!(g.genus(), 1);
        assert_eq!(map.len(), 3);
        assert_eq!(g.br_poly().unwrap(), fixtures::example_ribbon().br_poly().unwrap());
    }

    #[test]
    fn unknot_ribbon_graph() {
        let (g, _) = build_ribbon(&Diagram::unlink(1)).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
    }

    #[test]
    fn classical_trefoil_is_planar() {
        let (g, _) = build_ribbon(&fixtures::trefoil()).unwrap();
        assert_eq!(g.genus(), 0);
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn non_alternating_rejected() {
        let d = fixtures::example_knot().switched(&[0]);
        assert_eq!(build_ribbon(&d).unwrap_err(), BuildError::NotAlternating);
        assert_eq!(
            build_signed(&fixtures::virtual_hopf()).unwrap_err(),
            BuildError::NotColorable
        );
    }

    #[test]
    fn signed_build_marks_switched_edges() {
        let d = fixtures::example_knot();
        let b = build_signed(&d).unwrap();
        assert!(b.switches.is_empty() && !b.graph.is_signed());

        let b = build_signed(&d.switched(&[1])).unwrap();
        assert_eq!(b.switches.crossings(), &[1]);
        let negatives: Vec<usize> = b
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.sign == Sign::Negative)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(negatives, vec![b.map.edge(1)]);
        assert_eq!(b.graph.unsigned().br_poly().unwrap(), fixtures::example_ribbon().br_poly().unwrap());
    }

    #[test]
    fn state_subgraph_correspondence_on_example_knot() {
        let d = fixtures::example_knot();
        let (g, map) = build_ribbon(&d).unwrap();
        for s in State::all(3) {
            let mut mask = 0u64;
            for c in 0..3 {
                if s.get(c) == crate::diagram::Splitting::A {
                    mask |= 1 << map.edge(c);
                }
            }
            let f = SpanningSubgraph(mask);
            assert_eq!(d.split_stats(s).delta, g.subgraph_stats(f).bc, "state {s}");
            assert_eq!(d.split_stats(s).alpha, f.len());
        }
    }

    #[test]
    fn sidecar_format() {
        let (g, map) = build_ribbon(&fixtures::example_knot()).unwrap();
        assert_eq!(map.to_text(&g), "0 e0\n1 e1\n2 e2\n");
    }
}
