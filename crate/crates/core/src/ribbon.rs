//! Ribbon graphs stored as rotation systems.
//!
//! Darts (half-edges) are grouped into vertex cycles, listed counterclockwise,
//! and paired into edges by a fixed-point-free involution. Only orientable
//! surfaces can be described this way.
//!
//! Boundary components of a spanning subgraph `F` are the orbits of
//! `σ_F ∘ ι` on the darts of `F`, where `ι` swaps the two darts of an edge
//! and `σ_F` steps to the next dart of `F` around the same vertex. A vertex
//! left with no darts is a disc with one boundary circle.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::laurent::{Exponent, LaurentPoly, Vars, EXP_UNIT};
use crate::SizeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dart `{0}` appears at two vertices")]
    DartInTwoVertices(String),
    #[error("dart `{0}` is in two edges")]
    DartInTwoEdges(String),
    #[error("dart `{0}` is not paired by any edge")]
    UnpairedDart(String),
    #[error("edge `{edge}` pairs dart `{dart}` with itself")]
    SelfPaired { edge: String, dart: String },
    #[error("edge `{edge}` uses dart `{dart}` which is at no vertex")]
    UnknownDart { edge: String, dart: String },
    #[error("duplicate {kind} name `{name}`")]
    DuplicateName { kind: &'static str, name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub darts: [usize; 2],
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    vertex_names: Vec<String>,
    rotations: Vec<Vec<usize>>,
    dart_names: Vec<String>,
    dart_vertex: Vec<usize>,
    dart_edge: Vec<usize>,
    edges: Vec<Edge>,
}

/// A spanning subgraph as a bitmask over edge indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpanningSubgraph(pub u64);

impl SpanningSubgraph {
    pub fn empty() -> Self {
        SpanningSubgraph(0)
    }

    pub fn full(num_edges: usize) -> Self {
        assert!(num_edges <= 64);
        SpanningSubgraph(if num_edges == 64 { u64::MAX } else { (1 << num_edges) - 1 })
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.0 >> edge & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubgraphStats {
    pub v: usize,
    pub e: usize,
    pub k: usize,
    pub r: usize,
    pub n: usize,
    pub bc: usize,
}

impl SubgraphStats {
    /// `k - bc + n`, twice the genus; the z-exponent of the polynomial.
    pub fn euler_defect(&self) -> i64 {
        self.k as i64 - self.bc as i64 + self.n as i64
    }

    pub fn genus(&self) -> usize {
        let d = self.euler_defect();
        debug_assert!(d >= 0 && d % 2 == 0);
        (d / 2) as usize
    }

    /// The `(k, r, n, bc)` row format.
    pub fn krnbc(&self) -> (usize, usize, usize, usize) {
        (self.k, self.r, self.n, self.bc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedStats {
    pub neg_in: usize,
    pub neg_out: usize,
}

impl SignedStats {
    /// `s(F)` doubled, so it stays an integer.
    pub fn twice_s(&self) -> i64 {
        self.neg_in as i64 - self.neg_out as i64
    }
}

impl RibbonGraph {
    /// Builds a ribbon graph from named vertex rotations and edges.
    pub fn new(
        vertices: Vec<(String, Vec<String>)>,
        edges: Vec<(String, [String; 2], Sign)>,
    ) -> Result<Self, RibbonError> {
        let mut dart_index: HashMap<String, usize> = HashMap::new();
        let mut dart_names = Vec::new();
        let mut dart_vertex = Vec::new();
        let mut vertex_names = Vec::new();
        let mut rotations = Vec::new();
        for (v, (name, darts)) in vertices.into_iter().enumerate() {
            if vertex_names.contains(&name) {
                return Err(RibbonError::DuplicateName { kind: "vertex", name });
            }
            let mut rot = Vec::with_capacity(darts.len());
            for d in darts {
                if dart_index.contains_key(&d) {
                    return Err(RibbonError::DartInTwoVertices(d));
                }
                dart_index.insert(d.clone(), dart_names.len());
                rot.push(dart_names.len());
                dart_names.push(d);
                dart_vertex.push(v);
            }
            vertex_names.push(name);
            rotations.push(rot);
        }

        let mut dart_edge = vec![usize::MAX; dart_names.len()];
        let mut out_edges = Vec::with_capacity(edges.len());
        for (i, (name, [d1, d2], sign)) in edges.into_iter().enumerate() {
            if out_edges.iter().any(|e: &Edge| e.name == name) {
                return Err(RibbonError::DuplicateName { kind: "edge", name });
            }
            if d1 == d2 {
                return Err(RibbonError::SelfPaired { edge: name, dart: d1 });
            }
            let mut ids = [0usize; 2];
            for (slot, d) in ids.iter_mut().zip([d1, d2]) {
                let Some(&id) = dart_index.get(&d) else {
                    return Err(RibbonError::UnknownDart { edge: name, dart: d });
                };
                if dart_edge[id] != usize::MAX {
                    return Err(RibbonError::DartInTwoEdges(d));
                }
                dart_edge[id] = i;
                *slot = id;
            }
            out_edges.push(Edge {
                name,
                darts: ids,
                sign,
            });
        }
        if let Some(d) = dart_edge.iter().position(|&e| e == usize::MAX) {
            return Err(RibbonError::UnpairedDart(dart_names[d].clone()));
        }

        Ok(RibbonGraph {
            vertex_names,
            rotations,
            dart_names,
            dart_vertex,
            dart_edge,
            edges: out_edges,
        })
    }

    /// Parses
    ///
    /// ```text
    /// V u : a1 c1 b1 c2
    /// E a : a1 a2 sign=-
    /// ```
    pub fn parse(text: &str) -> Result<Self, RibbonError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| RibbonError::Parse { line, msg };
            let (head, tail) = body
                .split_once(':')
                .ok_or_else(|| err("expected `:`".into()))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            let tail: Vec<&str> = tail.split_whitespace().collect();
            match head.as_slice() {
                ["V", name] => {
                    vertices.push((name.to_string(), tail.iter().map(|s| s.to_string()).collect()));
                }
                ["E", name] => {
                    let sign = match tail.get(2).copied() {
                        None | Some("sign=+") => Sign::Positive,
                        Some("sign=-") => Sign::Negative,
                        Some(other) => return Err(err(format!("bad sign `{other}`"))),
                    };
                    if tail.len() < 2 || tail.len() > 3 {
                        return Err(err("expected `E <name> : <dart> <dart> [sign=+|-]`".into()));
                    }
                    edges.push((name.to_string(), [tail[0].to_string(), tail[1].to_string()], sign));
                }
                _ => return Err(err(format!("unknown record `{}`", head.join(" ")))),
            }
        }
        Self::new(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, rot) in self.vertex_names.iter().zip(&self.rotations) {
            out.push_str(&format!("V {name} :"));
            for &d in rot {
                out.push(' ');
                out.push_str(&self.dart_names[d]);
            }
            out.push('\n');
        }
        for e in &self.edges {
            let [a, b] = e.darts;
            out.push_str(&format!(
                "E {} : {} {}",
                e.name, self.dart_names[a], self.dart_names[b]
            ));
            if e.sign == Sign::Negative {
                out.push_str(" sign=-");
            }
            out.push('\n');
        }
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_darts(&self) -> usize {
        self.dart_names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn dart_name(&self, d: usize) -> &str {
        &self.dart_names[d]
    }

    pub fn dart_vertex(&self, d: usize) -> usize {
        self.dart_vertex[d]
    }

    pub fn dart_edge(&self, d: usize) -> usize {
        self.dart_edge[d]
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// The other dart of the same edge.
    pub fn mate(&self, d: usize) -> usize {
        let [a, b] = self.edges[self.dart_edge[d]].darts;
        if a == d {
            b
        } else {
            a
        }
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let [a, b] = self.edges[edge].darts;
        (self.dart_vertex[a], self.dart_vertex[b])
    }

    pub fn is_signed(&self) -> bool {
        self.edges.iter().any(|e| e.sign == Sign::Negative)
    }

    pub fn with_signs(&self, signs: &[Sign]) -> Self {
        assert_eq!(signs.len(), self.edges.len());
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(signs) {
            e.sign = s;
        }
        g
    }

    pub fn unsigned(&self) -> Self {
        self.with_signs(&vec![Sign::Positive; self.edges.len()])
    }

    /// Statistics of the spanning subgraph keeping the edges where `keep`
    /// holds.
    pub fn stats_where(&self, keep: impl Fn(usize) -> bool) -> SubgraphStats {
        let v = self.num_vertices();
        let kept: Vec<bool> = (0..self.num_edges()).map(&keep).collect();
        let e = kept.iter().filter(|&&k| k).count();

        let mut uf = UnionFind::new(v);
        for (i, _) in kept.iter().enumerate().filter(|(_, k)| **k) {
            let (a, b) = self.endpoints(i);
            uf.union(a, b);
        }
        let k = uf.count();
        let r = v - k;
        let n = e - r;

        let bc = self.boundary_orbits(&kept).len()
            + self
                .rotations
                .iter()
                .filter(|rot| rot.iter().all(|&d| !kept[self.dart_edge[d]]))
                .count();

        SubgraphStats { v, e, k, r, n, bc }
    }

    pub fn subgraph_stats(&self, f: SpanningSubgraph) -> SubgraphStats {
        self.stats_where(|e| f.contains(e))
    }

    pub fn full_stats(&self) -> SubgraphStats {
        self.stats_where(|_| true)
    }

    pub fn signed_stats(&self, f: SpanningSubgraph) -> SignedStats {
        let mut s = SignedStats { neg_in: 0, neg_out: 0 };
        for (i, e) in self.edges.iter().enumerate() {
            if e.sign == Sign::Negative {
                if f.contains(i) {
                    s.neg_in += 1;
                } else {
                    s.neg_out += 1;
                }
            }
        }
        s
    }

    /// Orbits of `σ_F ∘ ι` on the darts of kept edges, each as a dart list.
    pub fn boundary_orbits(&self, kept: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_darts()];
        let mut orbits = Vec::new();
        for start in 0..self.num_darts() {
            if seen[start] || !kept[self.dart_edge[start]] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                orbit.push(d);
                d = self.next_kept(self.mate(d), kept);
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Next dart after `d` around its vertex whose edge is kept.
    fn next_kept(&self, d: usize, kept: &[bool]) -> usize {
        let rot = &self.rotations[self.dart_vertex[d]];
        let i = rot.iter().position(|&x| x == d).unwrap();
        (1..=rot.len())
            .map(|j| rot[(i + j) % rot.len()])
            .find(|&x| kept[self.dart_edge[x]])
            .unwrap()
    }

    pub fn genus(&self) -> usize {
        self.full_stats().genus()
    }

    fn subset_sum(&self, signed: bool) -> Result<LaurentPoly, SizeError> {
        let m = self.num_edges();
        crate::check_size("edges", m)?;
        let r_g = self.full_stats().r as i64;
        // exponents in quarter units
        let hist = (0..1u64 << m)
            .into_par_iter()
            .fold(HashMap::new, |mut h: HashMap<[i64; 3], u64>, mask| {
                let f = SpanningSubgraph(mask);
                let st = self.subgraph_stats(f);
                let s2 = if signed { self.signed_stats(f).twice_s() } else { 0 };
                let half = EXP_UNIT / 2;
                let key = [
                    (r_g - st.r as i64) * EXP_UNIT + s2 * half,
                    st.n as i64 * EXP_UNIT - s2 * half,
                    st.euler_defect() * EXP_UNIT,
                ];
                *h.entry(key).or_default() += 1;
                h
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        Ok(LaurentPoly::from_terms(
            &br_vars(),
            hist.into_iter()
                .map(|(k, c)| (k.iter().map(|&q| Exponent::quarters(q)).collect(), c)),
        ))
    }

    /// `Σ_F x^(r(G)-r(F)) y^n(F) z^(k(F)-bc(F)+n(F))`. Edge signs are ignored.
    pub fn br_poly(&self) -> Result<LaurentPoly, SizeError> {
        self.subset_sum(false)
    }

    /// The signed version: exponents of `x` and `y` shifted by `±s(F)` with
    /// `s(F) = (e₋(F) - e₋(F̄)) / 2`.
    pub fn signed_br_poly(&self) -> Result<LaurentPoly, SizeError> {
        self.subset_sum(true)
    }

    /// `R_G(x-1, y-1, 1)`, the Tutte polynomial of the underlying graph.
    pub fn tutte_via_br(&self) -> Result<LaurentPoly, SizeError> {
        let r = self.br_poly()?;
        Ok(r.substitute_str(&[("x", "x - 1"), ("y", "y - 1"), ("z", "1")], &tutte_vars())
            .expect("integral exponents"))
    }
}

pub fn br_vars() -> Vars {
    Vars::new(&["x", "y", "z"]).unwrap()
}

pub fn tutte_vars() -> Vars {
    Vars::new(&["x", "y"]).unwrap()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    comps: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            comps: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[a] = b;
        self.comps -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.comps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn xyz(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &br_vars()).unwrap()
    }

    fn xy(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &tutte_vars()).unwrap()
    }

    fn one_loop(sign: &str) -> RibbonGraph {
        RibbonGraph::parse(&format!("V v : a b\nE e : a b sign={sign}\n")).unwrap()
    }

    #[test]
    fn parse_single_vertex() {
        let g = RibbonGraph::parse("V v :\n").unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (1, 0));
    }

    #[test]
    fn parse_example_graph() {
        let g = fixtures::example_ribbon();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 3));
        assert_eq!(RibbonGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            RibbonGraph::parse("V v : a b\nE e : a a\n").unwrap_err(),
            RibbonError::SelfPaired {
                edge: "e".into(),
                dart: "a".into()
            }
        );
        assert_eq!(
            RibbonGraph::parse("V v : a b\nV w : a\nE e : a b\n").unwrap_err(),
            RibbonError::DartInTwoVertices("a".into())
        );
        assert_eq!(
            RibbonGraph::parse("V v : a b c\nE e : a b\n").unwrap_err(),
            RibbonError::UnpairedDart("c".into())
        );
        assert!(matches!(
            RibbonGraph::parse("V v : a b\nE e : a q\n").unwrap_err(),
            RibbonError::UnknownDart { .. }
        ));
        assert_eq!(
            RibbonGraph::parse("V v : a b c d\nE e : a b\nE f : b c\n").unwrap_err(),
            RibbonError::DartInTwoEdges("b".into())
        );
        assert!(RibbonGraph::parse("V v a b\n").is_err());
        assert!(RibbonGraph::parse("V v : a b\nE e : a b sign=?\n").is_err());
    }

    #[test]
    fn example_subgraph_rows() {
        let g = fixtures::example_ribbon();
        assert_eq!(g.full_stats().krnbc(), (1, 1, 2, 1));
        let c = g.edge_index("c").unwrap();
        assert_eq!(g.subgraph_stats(SpanningSubgraph(1 << c)).krnbc(), (2, 0, 1, 3));
        assert_eq!(g.subgraph_stats(SpanningSubgraph::empty()).krnbc(), (2, 0, 0, 2));
    }

    #[test]
    fn br_examples() {
        assert_eq!(
            fixtures::example_ribbon().br_poly().unwrap(),
            xyz("y^2z^2 + 3y + 2 + xy + x")
        );
        assert_eq!(RibbonGraph::parse("V v :\n").unwrap().br_poly().unwrap(), xyz("1"));
        assert_eq!(one_loop("+").br_poly().unwrap(), xyz("1 + y"));
    }

    #[test]
    fn signed_examples() {
        let g = fixtures::example_ribbon();
        assert_eq!(g.signed_br_poly().unwrap(), g.br_poly().unwrap());
        assert_eq!(
            one_loop("-").signed_br_poly().unwrap(),
            xyz("x^(-1/2)*y^(1/2) + x^(1/2)*y^(1/2)")
        );
    }

    #[test]
    fn signed_all_negative_reweights_terms() {
        let g = fixtures::example_ribbon();
        let neg = g.with_signs(&[Sign::Negative; 3]);
        let mut want = LaurentPoly::zero(&br_vars());
        for mask in 0..8u64 {
            let st = g.subgraph_stats(SpanningSubgraph(mask));
            let kept = mask.count_ones() as i64;
            let s2 = kept - (3 - kept);
            let term = LaurentPoly::monomial(
                &br_vars(),
                1,
                &[
                    Exponent::int(1 - st.r as i64) + Exponent::half(s2),
                    Exponent::int(st.n as i64) - Exponent::half(s2),
                    Exponent::int(st.euler_defect()),
                ],
            );
            want = want.add(&term).unwrap();
        }
        assert_eq!(neg.signed_br_poly().unwrap(), want);
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(one_loop("+").tutte_via_br().unwrap(), xy("y"));
        let bridge = RibbonGraph::parse("V u : a\nV v : b\nE e : a b\n").unwrap();
        assert_eq!(bridge.tutte_via_br().unwrap(), xy("x"));
        // two parallel edges plus a loop: T = y(x + y)
        assert_eq!(
            fixtures::example_ribbon().tutte_via_br().unwrap(),
            xy("xy + y^2")
        );
    }

    #[test]
    fn genus_examples() {
        assert_eq!(RibbonGraph::parse("V v :\n").unwrap().genus(), 0);
        assert_eq!(fixtures::example_ribbon().genus(), 1);
        let torus = RibbonGraph::parse("V v : a b c d\nE e : a c\nE f : b d\n").unwrap();
        assert_eq!(torus.genus(), 1);
        let planar = RibbonGraph::parse("V v : a c b d\nE e : a c\nE f : b d\n").unwrap();
        assert_eq!(planar.genus(), 0);
    }

    #[test]
    fn empty_subgraph_boundary_is_vertex_count() {
        let g = fixtures::example_ribbon();
        let kept = vec![false; g.num_edges()];
        assert!(g.boundary_orbits(&kept).is_empty());
        assert_eq!(g.subgraph_stats(SpanningSubgraph::empty()).bc, g.num_vertices());
    }

    #[test]
    fn size_cap() {
        let mut text = String::from("V v :");
        for i in 0..25 {
            text.push_str(&format!(" a{i} b{i}"));
        }
        text.push('\n');
        for i in 0..25 {
            text.push_str(&format!("E e{i} : a{i} b{i}\n"));
        }
        let g = RibbonGraph::parse(&text).unwrap();
        assert!(matches!(g.br_poly(), Err(SizeError { .. })));
    }
}
