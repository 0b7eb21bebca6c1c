//! Virtual link diagrams, their states, the Kauffman bracket and the Jones
//! polynomial.
//!
//! Only classical crossings are stored. A crossing has four ports in
//! counterclockwise order; port 0 is where the under strand comes in and
//! port 2 where it leaves, ports 1 and 3 carry the over strand. Arcs join an
//! outgoing port to an incoming port. Virtual crossings are just arcs passing
//! each other and need no representation.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::laurent::{Exponent, LaurentPoly, Vars};
use crate::SizeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("arc `{arc}` {msg}")]
    Arc { arc: String, msg: String },
    #[error("diagram has no crossings and no closed components")]
    Empty,
    #[error("crossing {crossing}: over strand must enter at port 1 or 3, got {over_in}")]
    OverIn { crossing: usize, over_in: u8 },
}

impl DiagramError {
    fn at(line: Option<usize>, arc: &str, msg: impl Into<String>) -> Self {
        let msg = msg.into();
        match line {
            Some(line) => DiagramError::Parse {
                line,
                msg: format!("arc `{arc}` {msg}"),
            },
            None => DiagramError::Arc {
                arc: arc.to_string(),
                msg,
            },
        }
    }
}

/// A classical crossing. `ports` hold arc indices into the owning diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub ports: [usize; 4],
    pub over_in: u8,
}

impl Crossing {
    pub fn over_out(&self) -> u8 {
        4 - self.over_in
    }

    /// +1 when the over strand enters at port 3, i.e. the over strand's
    /// direction turns a quarter counterclockwise onto the under strand's.
    pub fn sign(&self) -> i64 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    pub fn is_incoming(&self, port: u8) -> bool {
        port == 0 || port == self.over_in
    }

    pub fn is_over(&self, port: u8) -> bool {
        port % 2 == 1
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let [p0, p1, p2, p3] = self.ports;
        if self.over_in == 1 {
            Crossing {
                ports: [p1, p2, p3, p0],
                over_in: 3,
            }
        } else {
            Crossing {
                ports: [p3, p0, p1, p2],
                over_in: 1,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Splitting {
    A,
    B,
}

/// One splitting per crossing. Bit `i` set means crossing `i` is B-split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State {
    bits: u64,
    len: usize,
}

impl State {
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        State {
            bits: bits & mask,
            len,
        }
    }

    pub fn uniform(len: usize, s: Splitting) -> Self {
        match s {
            Splitting::A => Self::from_bits(len, 0),
            Splitting::B => Self::from_bits(len, u64::MAX),
        }
    }

    pub fn from_choices(choices: &[Splitting]) -> Self {
        let bits = choices
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Splitting::B)
            .fold(0u64, |acc, (i, _)| acc | (1 << i));
        Self::from_bits(choices.len(), bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> Splitting {
        if self.bits >> i & 1 == 1 {
            Splitting::B
        } else {
            Splitting::A
        }
    }

    pub fn toggled(&self, i: usize) -> Self {
        Self::from_bits(self.len, self.bits ^ (1 << i))
    }

    /// All `2^len` states in counter order.
    pub fn all(len: usize) -> impl Iterator<Item = State> {
        (0..1u64 << len).map(move |b| State::from_bits(len, b))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(match self.get(i) {
                Splitting::A => "A",
                Splitting::B => "B",
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateStats {
    pub alpha: usize,
    pub beta: usize,
    pub delta: usize,
}

/// One passage of a link component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    arc_names: Vec<String>,
    /// port position `4c + p` -> the position at the other end of its arc
    arc_mate: Vec<usize>,
}

/// Input to [`Diagram::new`]: four arc labels in port order and the
/// over-incoming port.
#[derive(Clone, Debug)]
pub struct CrossingSpec {
    pub arcs: [String; 4],
    pub over_in: u8,
}

impl Diagram {
    pub fn new(crossings: Vec<CrossingSpec>, free_loops: usize) -> Result<Self, DiagramError> {
        let lines = vec![None; crossings.len()];
        Self::build(crossings, free_loops, &lines)
    }

    /// The crossing-free diagram with `k` closed components.
    pub fn unlink(k: usize) -> Self {
        assert!(k > 0, "empty diagram");
        Diagram {
            crossings: Vec::new(),
            free_loops: k,
            arc_names: Vec::new(),
            arc_mate: Vec::new(),
        }
    }

    fn build(
        specs: Vec<CrossingSpec>,
        free_loops: usize,
        lines: &[Option<usize>],
    ) -> Result<Self, DiagramError> {
        if specs.is_empty() && free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut arc_names: Vec<String> = Vec::new();
        // per arc: (outgoing position, incoming position)
        let mut ends: Vec<(Option<usize>, Option<usize>)> = Vec::new();
        let mut crossings = Vec::with_capacity(specs.len());

        for (c, spec) in specs.iter().enumerate() {
            let line = lines[c];
            if spec.over_in != 1 && spec.over_in != 3 {
                return Err(match line {
                    Some(line) => DiagramError::Parse {
                        line,
                        msg: format!("over-in port must be 1 or 3, got {}", spec.over_in),
                    },
                    None => DiagramError::OverIn {
                        crossing: c,
                        over_in: spec.over_in,
                    },
                });
            }
            let mut ports = [0usize; 4];
            for (p, label) in spec.arcs.iter().enumerate() {
                let a = *index.entry(label.clone()).or_insert_with(|| {
                    arc_names.push(label.clone());
                    ends.push((None, None));
                    arc_names.len() - 1
                });
                ports[p] = a;
                let pos = 4 * c + p;
                let incoming = p == 0 || p as u8 == spec.over_in;
                let slot = if incoming { &mut ends[a].1 } else { &mut ends[a].0 };
                if slot.is_some() {
                    let (o, i) = ends[a];
                    let msg = if o.is_some() && i.is_some() {
                        "appears more than twice"
                    } else if incoming {
                        "enters two ports"
                    } else {
                        "leaves two ports"
                    };
                    return Err(DiagramError::at(line, label, msg));
                }
                *slot = Some(pos);
            }
            crossings.push(Crossing {
                ports,
                over_in: spec.over_in,
            });
        }

        let mut arc_mate = vec![0usize; 4 * crossings.len()];
        for (a, (o, i)) in ends.iter().enumerate() {
            match (o, i) {
                (Some(o), Some(i)) => {
                    arc_mate[*o] = *i;
                    arc_mate[*i] = *o;
                }
                _ => {
                    let pos = o.or(*i).unwrap();
                    let msg = if o.is_some() {
                        "is dangling: it never enters a crossing"
                    } else {
                        "is dangling: it never leaves a crossing"
                    };
                    return Err(DiagramError::at(lines[pos / 4], &arc_names[a], msg));
                }
            }
        }

        Ok(Diagram {
            crossings,
            free_loops,
            arc_names,
            arc_mate,
        })
    }

    /// Parses the line format
    ///
    /// ```text
    /// # comment
    /// X a b c d o=3
    /// O 1
    /// ```
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut specs = Vec::new();
        let mut lines = Vec::new();
        let mut free_loops = 0usize;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: String| DiagramError::Parse { line, msg };
            let tokens: Vec<&str> = body.split_whitespace().collect();
            match tokens[0] {
                "X" => {
                    if tokens.len() != 6 {
                        return Err(err(format!(
                            "expected `X p0 p1 p2 p3 o=<1|3>`, got {} fields",
                            tokens.len()
                        )));
                    }
                    let mut arcs: [String; 4] = Default::default();
                    for (slot, tok) in arcs.iter_mut().zip(&tokens[1..5]) {
                        if !tok.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                            return Err(err(format!("bad arc label `{tok}`")));
                        }
                        *slot = tok.to_string();
                    }
                    let over_in = tokens[5]
                        .strip_prefix("o=")
                        .and_then(|s| s.parse::<u8>().ok())
                        .ok_or_else(|| err(format!("expected `o=1` or `o=3`, got `{}`", tokens[5])))?;
                    specs.push(CrossingSpec { arcs, over_in });
                    lines.push(Some(line));
                }
                "O" => {
                    if tokens.len() != 2 {
                        return Err(err("expected `O <count>`".into()));
                    }
                    let k: usize = tokens[1]
                        .parse()
                        .map_err(|_| err(format!("bad loop count `{}`", tokens[1])))?;
                    free_loops += k;
                }
                other => return Err(err(format!("unknown record `{other}`"))),
            }
        }
        Self::build(specs, free_loops, &lines)
    }

    /// Writes the diagram in the format read by [`Diagram::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.crossings {
            let names: Vec<&str> = c.ports.iter().map(|&a| self.arc_names[a].as_str()).collect();
            out.push_str(&format!("X {} o={}\n", names.join(" "), c.over_in));
        }
        if self.free_loops > 0 {
            out.push_str(&format!("O {}\n", self.free_loops));
        }
        out
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn arc_name(&self, arc: usize) -> &str {
        &self.arc_names[arc]
    }

    pub fn num_arcs(&self) -> usize {
        self.arc_names.len()
    }

    /// Position `(crossing, port)` at the other end of the arc leaving or
    /// entering `(crossing, port)`.
    pub fn arc_mate(&self, crossing: usize, port: u8) -> (usize, u8) {
        let m = self.arc_mate[4 * crossing + port as usize];
        (m / 4, (m % 4) as u8)
    }

    /// The diagram with every crossing in `which` switched.
    pub fn switched(&self, which: &[usize]) -> Diagram {
        let mut out = self.clone();
        for &c in which {
            out.crossings[c] = out.crossings[c].switched();
        }
        out.rebuild_mates();
        out
    }

    pub fn mirror(&self) -> Diagram {
        let all: Vec<usize> = (0..self.num_crossings()).collect();
        self.switched(&all)
    }

    fn rebuild_mates(&mut self) {
        let mut ends = vec![(0usize, 0usize); self.arc_names.len()];
        for (c, x) in self.crossings.iter().enumerate() {
            for p in 0..4u8 {
                let a = x.ports[p as usize];
                if x.is_incoming(p) {
                    ends[a].1 = 4 * c + p as usize;
                } else {
                    ends[a].0 = 4 * c + p as usize;
                }
            }
        }
        for (o, i) in ends {
            self.arc_mate[o] = i;
            self.arc_mate[i] = o;
        }
    }

    /// Link components with crossings, each as its cyclic sequence of passes.
    /// Free loops are not included.
    pub fn components(&self) -> Vec<Vec<Pass>> {
        let n = self.num_crossings();
        let mut seen = vec![false; 4 * n];
        let mut out = Vec::new();
        for start in 0..4 * n {
            let (c, p) = (start / 4, (start % 4) as u8);
            if seen[start] || !self.crossings[c].is_incoming(p) {
                continue;
            }
            let mut comp = Vec::new();
            let mut pos = start;
            while !seen[pos] {
                seen[pos] = true;
                let (c, p) = (pos / 4, (pos % 4) as u8);
                let x = &self.crossings[c];
                comp.push(Pass {
                    crossing: c,
                    over: x.is_over(p),
                });
                let exit = if p == 0 { 2 } else { x.over_out() };
                seen[4 * c + exit as usize] = true;
                pos = self.arc_mate[4 * c + exit as usize];
            }
            out.push(comp);
        }
        out
    }

    pub fn num_components(&self) -> usize {
        self.components().len() + self.free_loops
    }

    /// Over and under passes alternate along every component.
    pub fn is_alternating(&self) -> bool {
        self.crossings.iter().enumerate().all(|(c, x)| {
            (0..4u8).filter(|&p| !x.is_incoming(p)).all(|p| {
                let (c2, q) = self.arc_mate(c, p);
                x.is_over(p) != self.crossings[c2].is_over(q)
            })
        })
    }

    pub fn split_stats(&self, s: State) -> StateStats {
        assert_eq!(s.len(), self.num_crossings(), "state length");
        let n = self.num_crossings();
        let mut seen = vec![false; 4 * n];
        let mut delta = self.free_loops;
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            delta += 1;
            let mut pos = start;
            while !seen[pos] {
                seen[pos] = true;
                let c = pos / 4;
                let p = pos % 4;
                let q = match s.get(c) {
                    Splitting::A => p ^ 1,
                    Splitting::B => 3 - p,
                };
                let joined = 4 * c + q;
                seen[joined] = true;
                pos = self.arc_mate[joined];
            }
        }
        let beta = s.bits().count_ones() as usize;
        StateStats {
            alpha: n - beta,
            beta,
            delta,
        }
    }

    /// Multiset of `(alpha, delta)` over all states, as counts.
    pub fn state_histogram(&self) -> Result<HashMap<(usize, usize), u64>, SizeError> {
        let n = self.num_crossings();
        crate::check_size("crossings", n)?;
        let hist = (0..1u64 << n)
            .into_par_iter()
            .fold(HashMap::new, |mut h: HashMap<(usize, usize), u64>, bits| {
                let st = self.split_stats(State::from_bits(n, bits));
                *h.entry((st.alpha, st.delta)).or_default() += 1;
                h
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        Ok(hist)
    }

    /// `Σ_S A^α B^β d^(δ-1)` over all `2^n` states.
    pub fn kauffman_bracket(&self) -> Result<LaurentPoly, SizeError> {
        let n = self.num_crossings() as i64;
        let hist = self.state_histogram()?;
        let vars = bracket_vars();
        Ok(LaurentPoly::from_terms(
            &vars,
            hist.into_iter().map(|((alpha, delta), count)| {
                let alpha = alpha as i64;
                (
                    vec![
                        Exponent::int(alpha),
                        Exponent::int(n - alpha),
                        Exponent::int(delta as i64 - 1),
                    ],
                    count,
                )
            }),
        ))
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn jones(&self) -> Result<LaurentPoly, SizeError> {
        Ok(jones_from_bracket(&self.kauffman_bracket()?, self.writhe()))
    }
}

pub fn bracket_vars() -> Vars {
    Vars::new(&["A", "B", "d"]).unwrap()
}

pub fn jones_vars() -> Vars {
    Vars::new(&["t"]).unwrap()
}

/// `(-1)^w t^(3w/4) <L>(t^(-1/4), t^(1/4), -t^(1/2) - t^(-1/2))`
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let t = jones_vars();
    let sub = bracket
        .substitute_str(
            &[("A", "t^(-1/4)"), ("B", "t^(1/4)"), ("d", "-t^(1/2) - t^(-1/2)")],
            &t,
        )
        .expect("bracket variables");
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    sub.mul_monomial(sign, &[Exponent::quarters(3 * writhe)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn abd(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &bracket_vars()).unwrap()
    }

    fn t(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &jones_vars()).unwrap()
    }

    #[test]
    fn parse_unknot() {
        let d = Diagram::parse("# nothing here\nO 1\n").unwrap();
        assert_eq!(d.num_crossings(), 0);
        assert_eq!(d.free_loops(), 1);
    }

    #[test]
    fn parse_example_knot() {
        let d = fixtures::example_knot();
        assert_eq!(d.num_crossings(), 3);
        assert_eq!(d.num_components(), 1);
        assert!(d.is_alternating());
    }

    #[test]
    fn parse_rejects_triple_arc() {
        let e = Diagram::parse("X a b c d o=1\nX a d c b o=3\nX a e f e o=1\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 2 | 3, .. }), "{e}");
    }

    #[test]
    fn parse_rejects_dangling_and_bad_over() {
        let e = Diagram::parse("X a b c d o=1\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 1, .. }), "{e}");
        let e = Diagram::parse("\n\nX a b a b o=2\n").unwrap_err();
        assert_eq!(
            e,
            DiagramError::Parse {
                line: 3,
                msg: "over-in port must be 1 or 3, got 2".into()
            }
        );
        assert!(Diagram::parse("X a b a\n").is_err());
        assert!(Diagram::parse("Y\n").is_err());
        assert_eq!(Diagram::parse("# empty\n").unwrap_err(), DiagramError::Empty);
        assert!(Diagram::parse("X a b a b o=x\n").is_err());
    }

    #[test]
    fn parse_rejects_two_incoming() {
        // `a` enters at port 0 and at the over-in port 1
        let e = Diagram::parse("X a a b b o=1\n").unwrap_err();
        assert!(e.to_string().contains("enters two ports"), "{e}");
    }

    #[test]
    fn text_round_trip() {
        let d = fixtures::example_knot();
        assert_eq!(Diagram::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn split_stats_examples() {
        let d = fixtures::example_knot();
        let st = d.split_stats(State::uniform(3, Splitting::A));
        assert_eq!((st.alpha, st.beta, st.delta), (3, 0, 1));
        let bba = State::from_choices(&[Splitting::B, Splitting::B, Splitting::A]);
        let st = d.split_stats(bba);
        assert_eq!((st.alpha, st.beta, st.delta), (1, 2, 3));
        let u = Diagram::unlink(1);
        let st = u.split_stats(State::from_bits(0, 0));
        assert_eq!((st.alpha, st.beta, st.delta), (0, 0, 1));
    }

    #[test]
    fn bracket_examples() {
        let d = fixtures::example_knot();
        assert_eq!(
            d.kauffman_bracket().unwrap(),
            abd("A^3 + 3A^2Bd + 2AB^2 + AB^2d^2 + B^3d")
        );
        assert_eq!(Diagram::unlink(1).kauffman_bracket().unwrap(), abd("1"));
        assert_eq!(Diagram::unlink(2).kauffman_bracket().unwrap(), abd("d"));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(Diagram::unlink(1).writhe(), 0);
        let d = fixtures::example_knot();
        assert_eq!(d.writhe(), 1);
        assert_eq!(d.mirror().writhe(), -1);
    }

    #[test]
    fn jones_examples() {
        assert_eq!(fixtures::example_knot().jones().unwrap(), t("1"));
        assert_eq!(Diagram::unlink(1).jones().unwrap(), t("1"));
        assert_eq!(
            Diagram::unlink(2).jones().unwrap(),
            t("-t^(1/2) - t^(-1/2)")
        );
    }

    #[test]
    fn kinks_are_unknots() {
        // a curl in either direction must not change the Jones polynomial
        for over_in in [1u8, 3] {
            let over_out = 4 - over_in;
            let mut arcs: [String; 4] = Default::default();
            arcs[0] = "b".into();
            arcs[2] = "a".into();
            arcs[over_in as usize] = "a".into();
            arcs[over_out as usize] = "b".into();
            let d = Diagram::new(vec![CrossingSpec { arcs, over_in }], 0).unwrap();
            assert_eq!(d.num_components(), 1);
            assert_eq!(d.jones().unwrap(), t("1"), "over_in = {over_in}");
        }
    }

    #[test]
    fn virtual_hopf_link() {
        let d = fixtures::virtual_hopf();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.kauffman_bracket().unwrap(), abd("A + B"));
        assert!(!d.is_alternating());
    }

    #[test]
    fn switching_exchanges_splittings() {
        let d = fixtures::example_knot();
        let s = d.switched(&[1]);
        assert_eq!(s.switched(&[1]), d);
        for st in State::all(3) {
            let a = d.split_stats(st);
            let b = s.split_stats(st.toggled(1));
            assert_eq!(a.delta, b.delta);
        }
    }

    #[test]
    fn state_display() {
        let s = State::from_choices(&[Splitting::A, Splitting::B, Splitting::B]);
        assert_eq!(s.to_string(), "ABB");
        assert_eq!(State::all(4).count(), 16);
    }
}
