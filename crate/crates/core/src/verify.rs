//! Two-route checks of the bracket/ribbon-graph identities.
//!
//! The left side of every check is the state sum over the diagram. The right
//! side goes through the ribbon graph: build it, expand its Bollobás-Riordan
//! polynomial over spanning subgraphs, substitute
//! `x = Bd/A, y = Ad/B, z = 1/d` and multiply by `A^r B^n d^(k-1)`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::build::{build_ribbon, build_signed, build_signed_with, BuildError, SwitchSet};
use crate::diagram::{bracket_vars, jones_vars, Diagram};
use crate::laurent::{Exponent, LaurentPoly, PolyError, Vars};
use crate::ribbon::{RibbonGraph, Sign};
use crate::SizeError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Size(#[from] SizeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    /// State-sum bracket.
    pub left: LaurentPoly,
    /// Bracket assembled from the ribbon graph.
    pub right: LaurentPoly,
    pub equal: bool,
    pub r: usize,
    pub n: usize,
    pub k: usize,
    pub switched: Vec<usize>,
}

/// `x → Bd/A`, `y → Ad/B`, `z → 1/d` as polynomials in `A, B, d`.
pub fn bracket_substitution() -> HashMap<String, LaurentPoly> {
    let v = bracket_vars();
    let m = |a: i64, b: i64, d: i64| {
        LaurentPoly::monomial(&v, 1, &[Exponent::int(a), Exponent::int(b), Exponent::int(d)])
    };
    HashMap::from([
        ("x".to_string(), m(-1, 1, 1)),
        ("y".to_string(), m(1, -1, 1)),
        ("z".to_string(), m(0, 0, -1)),
    ])
}

/// `A^r(G) B^n(G) d^(k(G)-1) R(Bd/A, Ad/B, 1/d)` for a (signed) ribbon graph
/// and its already expanded polynomial `R`.
pub fn bracket_from_ribbon(g: &RibbonGraph, r_poly: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    let st = g.full_stats();
    let sub = r_poly.substitute(&bracket_substitution(), &bracket_vars())?;
    Ok(sub.mul_monomial(
        1,
        &[
            Exponent::int(st.r as i64),
            Exponent::int(st.n as i64),
            Exponent::int(st.k as i64 - 1),
        ],
    ))
}

fn report(d: &Diagram, g: &RibbonGraph, r_poly: &LaurentPoly, switched: &SwitchSet) -> Result<VerifyReport, VerifyError> {
    let left = d.kauffman_bracket()?;
    let right = bracket_from_ribbon(g, r_poly)?;
    let st = g.full_stats();
    Ok(VerifyReport {
        equal: left == right,
        left,
        right,
        r: st.r,
        n: st.n,
        k: st.k,
        switched: switched.crossings().to_vec(),
    })
}

/// Bracket of an alternating diagram against its ribbon graph.
pub fn verify_main(d: &Diagram) -> Result<VerifyReport, VerifyError> {
    let (g, _) = build_ribbon(d)?;
    let r = g.br_poly()?;
    report(d, &g, &r, &SwitchSet::default())
}

/// Bracket of a checkerboard colorable diagram against its signed ribbon
/// graph.
pub fn verify_signed(d: &Diagram) -> Result<VerifyReport, VerifyError> {
    let b = build_signed(d)?;
    let r = b.graph.signed_br_poly()?;
    report(d, &b.graph, &r, &b.switches)
}

/// As [`verify_signed`] with an explicit switch set.
pub fn verify_signed_with(d: &Diagram, switches: &SwitchSet) -> Result<VerifyReport, VerifyError> {
    let b = build_signed_with(d, switches)?;
    let r = b.graph.signed_br_poly()?;
    report(d, &b.graph, &r, &b.switches)
}

#[derive(Clone, Debug, Serialize)]
pub struct JonesReport {
    /// Jones polynomial from the bracket.
    pub direct: LaurentPoly,
    /// Ribbon-graph side multiplied by `(-t^(1/2) - t^(-1/2))^denominator_power`.
    pub numerator: LaurentPoly,
    pub denominator_power: u32,
    pub equal: bool,
    /// Thistlethwaite form through `T(-t, -1/t)`, for planar all-positive
    /// graphs only.
    pub tutte: Option<LaurentPoly>,
    pub tutte_equal: Option<bool>,
}

fn loop_value() -> LaurentPoly {
    LaurentPoly::parse("-t^(1/2) - t^(-1/2)", &jones_vars()).unwrap()
}

fn sign_pow(w: i64) -> i64 {
    if w % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Jones polynomial from a signed ribbon graph with the `z = 1/(-t^(1/2) - t^(-1/2))`
/// denominator cleared: returns `(numerator, m)` with
/// `J · (-t^(1/2) - t^(-1/2))^m = numerator`.
pub fn jones_from_ribbon(g: &RibbonGraph, r_signed: &LaurentPoly, writhe: i64) -> Result<(LaurentPoly, u32), PolyError> {
    let st = g.full_stats();
    // D stands for -t^(1/2) - t^(-1/2); x = t^(1/2) D, y = t^(-1/2) D, z = 1/D
    let td = Vars::new(&["t", "D"]).unwrap();
    let sub = r_signed.substitute_str(
        &[("x", "t^(1/2)*D"), ("y", "t^(-1/2)*D"), ("z", "D^-1")],
        &td,
    )?;
    let t_shift = 3 * writhe - st.r as i64 + st.n as i64;
    let scaled = sub.mul_monomial(
        sign_pow(writhe),
        &[Exponent::quarters(t_shift), Exponent::int(st.k as i64 - 1)],
    );
    let lowest = scaled
        .exponent_range("D")
        .map(|(lo, _)| lo)
        .unwrap_or(Exponent::ZERO);
    let m = if lowest < Exponent::ZERO {
        lowest.to_int().ok_or_else(|| PolyError::OffLattice("D".into()))?.unsigned_abs() as u32
    } else {
        0
    };
    let cleared = scaled.mul_monomial(1, &[Exponent::ZERO, Exponent::int(m as i64)]);
    let t = jones_vars();
    let assign = HashMap::from([
        ("t".to_string(), LaurentPoly::var(&t, "t")?),
        ("D".to_string(), loop_value()),
    ]);
    Ok((cleared.substitute(&assign, &t)?, m))
}

/// `(-1)^w t^((3w - r + n)/4) (-t^(1/2) - t^(-1/2))^(k-1) T(-t, -1/t)`.
pub fn jones_from_tutte(g: &RibbonGraph, writhe: i64) -> Result<LaurentPoly, VerifyError> {
    let st = g.full_stats();
    let t = jones_vars();
    let tutte = g.tutte_via_br()?;
    let sub = tutte.substitute_str(&[("x", "-t"), ("y", "-t^-1")], &t)?;
    // k >= 1 for any nonempty diagram
    let loops = loop_value().pow(st.k as u32 - 1);
    Ok(sub.mul(&loops)?.mul_monomial(
        sign_pow(writhe),
        &[Exponent::quarters(3 * writhe - st.r as i64 + st.n as i64)],
    ))
}

/// Jones polynomial from the bracket against the signed ribbon-graph route
/// (and the Tutte route when the graph is planar with positive edges).
pub fn verify_jones(d: &Diagram) -> Result<JonesReport, VerifyError> {
    let direct = d.jones()?;
    let b = build_signed(d)?;
    let w = d.writhe();
    let r = b.graph.signed_br_poly()?;
    let (numerator, m) = jones_from_ribbon(&b.graph, &r, w)?;
    let denom = loop_value().pow(m);
    let equal = direct.mul(&denom)? == numerator;

    let planar_positive =
        b.graph.genus() == 0 && b.graph.edges().iter().all(|e| e.sign == Sign::Positive);
    let tutte = if planar_positive {
        Some(jones_from_tutte(&b.graph, w)?)
    } else {
        None
    };
    let tutte_equal = tutte.as_ref().map(|p| *p == direct);
    Ok(JonesReport {
        direct,
        numerator,
        denominator_power: m,
        equal,
        tutte,
        tutte_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn abd(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, &bracket_vars()).unwrap()
    }

    #[test]
    fn main_theorem_on_example_knot() {
        let rep = verify_main(&fixtures::example_knot()).unwrap();
        assert!(rep.equal);
        assert_eq!((rep.r, rep.n, rep.k), (1, 2, 1));
        assert_eq!(rep.left, abd("A^3 + 3A^2Bd + 2AB^2 + AB^2d^2 + B^3d"));
    }

    #[test]
    fn main_theorem_on_unknot() {
        let rep = verify_main(&fixtures::unknot()).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.right, abd("1"));
    }

    #[test]
    fn substitution_point_satisfies_xyzz() {
        let s = bracket_substitution();
        let prod = s["x"].mul(&s["y"]).unwrap().mul(&s["z"]).unwrap().mul(&s["z"]).unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn signed_reduces_to_main_when_alternating() {
        let d = fixtures::example_knot();
        let a = verify_main(&d).unwrap();
        let b = verify_signed(&d).unwrap();
        assert_eq!(a.right, b.right);
        assert!(b.switched.is_empty());
    }

    #[test]
    fn signed_theorem_with_one_switch() {
        for c in 0..3 {
            let d = fixtures::example_knot().switched(&[c]);
            let rep = verify_signed(&d).unwrap();
            assert!(rep.equal, "switched {c}");
            assert_eq!(rep.switched, vec![c]);
            assert!(matches!(verify_main(&d), Err(VerifyError::Build(BuildError::NotAlternating))));
        }
    }

    #[test]
    fn jones_routes_agree() {
        for d in [fixtures::example_knot(), fixtures::unknot(), fixtures::trefoil()] {
            let rep = verify_jones(&d).unwrap();
            assert!(rep.equal);
        }
        let rep = verify_jones(&fixtures::example_knot()).unwrap();
        assert!(rep.direct.is_one());
        let rep = verify_jones(&fixtures::trefoil()).unwrap();
        assert_eq!(rep.tutte_equal, Some(true));
    }

    #[test]
    fn not_colorable_is_an_error() {
        assert!(matches!(
            verify_signed(&fixtures::virtual_hopf()),
            Err(VerifyError::Build(BuildError::NotColorable))
        ));
        assert!(verify_jones(&fixtures::virtual_hopf()).is_err());
    }
}
