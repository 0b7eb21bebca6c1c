//! Seeded random virtual diagrams.
//!
//! A diagram with `n` crossings has `2n` outgoing and `2n` incoming port
//! slots; a bijection between them is a set of directed arcs, and every such
//! bijection closes up into oriented components. Alternating diagrams are
//! drawn by pairing over-outgoing slots only with under-incoming ones and
//! under-outgoing with over-incoming, so every arc runs from an over pass to
//! an under pass or back.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{CrossingSpec, Diagram};

pub const MAX_RANDOM_CROSSINGS: usize = 12;
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DiagramKind {
    #[default]
    Any,
    Alternating,
    /// Alternating, then each crossing switched with probability 1/2.
    Colorable,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RandomOptions {
    pub kind: DiagramKind,
    /// Reject samples with more than one component.
    pub knot: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerationError {
    #[error("crossing count {0} outside 0..={MAX_RANDOM_CROSSINGS}")]
    OutOfRange(usize),
    #[error("no sample met the constraints after {0} attempts")]
    Exhausted(usize),
}

/// Same `(n, seed, options)` gives the same diagram. `n = 0` is the
/// crossing-free unknot.
pub fn random_diagram(n: usize, seed: u64, opts: RandomOptions) -> Result<Diagram, GenerationError> {
    if n > MAX_RANDOM_CROSSINGS {
        return Err(GenerationError::OutOfRange(n));
    }
    if n == 0 {
        return Ok(Diagram::unlink(1));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let d = sample(n, opts.kind, &mut rng);
        if opts.knot && d.num_components() != 1 {
            continue;
        }
        return Ok(d);
    }
    Err(GenerationError::Exhausted(MAX_ATTEMPTS))
}

fn sample(n: usize, kind: DiagramKind, rng: &mut ChaCha8Rng) -> Diagram {
    let over_in: Vec<u8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { 3 }).collect();

    // arc 2c leaves crossing c along the under strand, arc 2c+1 along the over strand
    let mut under_in: Vec<usize> = (0..n).collect();
    let mut over_in_slots: Vec<usize> = (0..n).collect();
    let mut ports: Vec<[usize; 4]> = vec![[0; 4]; n];
    for c in 0..n {
        ports[c][2] = 2 * c;
        ports[c][4 - over_in[c] as usize] = 2 * c + 1;
    }
    match kind {
        DiagramKind::Any => {
            // (crossing, is_over) for every incoming slot
            let mut slots: Vec<(usize, bool)> =
                (0..n).flat_map(|c| [(c, false), (c, true)]).collect();
            slots.shuffle(rng);
            for (arc, (c, over)) in slots.into_iter().enumerate() {
                let p = if over { over_in[c] as usize } else { 0 };
                ports[c][p] = arc;
            }
        }
        DiagramKind::Alternating | DiagramKind::Colorable => {
            under_in.shuffle(rng);
            over_in_slots.shuffle(rng);
            for c in 0..n {
                // over-out of c -> under-in, under-out of c -> over-in
                ports[under_in[c]][0] = 2 * c + 1;
                let target = over_in_slots[c];
                ports[target][over_in[target] as usize] = 2 * c;
            }
        }
    }

    let specs = (0..n)
        .map(|c| CrossingSpec {
            arcs: ports[c].map(|a| (a + 1).to_string()),
            over_in: over_in[c],
        })
        .collect();
    let d = Diagram::new(specs, 0).expect("generated diagram is well formed");
    if kind == DiagramKind::Colorable {
        let flips: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        d.switched(&flips)
    } else {
        d
    }
}
