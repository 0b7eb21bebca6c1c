//! Exact sparse multivariate Laurent polynomials with integer coefficients.
//!
//! Exponents live on the lattice `¼ℤ`: every exponent is stored as an integer
//! count of quarter units. That one lattice covers the half-integer powers of
//! the signed Bollobás-Riordan polynomial and the `t^{±1/4}` of the Jones
//! substitution.
//!
//! A polynomial carries its own ordered variable list. Arithmetic between
//! polynomials over different variable lists is an error rather than an
//! implicit unification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Number of lattice steps per unit exponent.
pub const EXP_UNIT: i64 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: [{0}] vs [{1}]")]
    VarMismatch(String, String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("`{var}` is assigned a non-monomial and appears with exponent {exponent}")]
    NotInvertible { var: String, exponent: Exponent },
    #[error("exponent leaves the quarter-integer lattice while substituting `{0}`")]
    OffLattice(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An exponent stored as a count of quarter units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub i64);

impl Exponent {
    pub const ZERO: Exponent = Exponent(0);

    pub fn int(k: i64) -> Self {
        Exponent(k * EXP_UNIT)
    }

    /// `k/2`
    pub fn half(k: i64) -> Self {
        Exponent(k * EXP_UNIT / 2)
    }

    pub fn quarters(q: i64) -> Self {
        Exponent(q)
    }

    pub fn is_integral(self) -> bool {
        self.0 % EXP_UNIT == 0
    }

    /// The integer value, if the exponent is integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / EXP_UNIT)
    }
}

impl std::ops::Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 - rhs.0)
    }
}

impl std::ops::Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.to_int() {
            return write!(f, "{k}");
        }
        let g = gcd(self.0.unsigned_abs(), EXP_UNIT as u64) as i64;
        write!(f, "({}/{})", self.0 / g, EXP_UNIT / g)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An ordered, duplicate-free list of variable names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut list: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if list.iter().any(|m| m == n) {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
            list.push(n.to_string());
        }
        Ok(Vars(list.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn describe(&self) -> String {
        self.0.join(", ")
    }
}

/// Sparse Laurent polynomial in canonical form: no zero coefficients, one
/// entry per exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Vec<Exponent>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Vars, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, c, &vec![Exponent::ZERO; vars.len()])
    }

    /// `c · Π vars[i]^exps[i]`. Panics if `exps` has the wrong length.
    pub fn monomial(vars: &Vars, c: impl Into<BigInt>, exps: &[Exponent]) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps.to_vec(), c.into());
        p
    }

    /// The variable `name` to the power one.
    pub fn var(vars: &Vars, name: &str) -> Result<Self, PolyError> {
        Self::var_pow(vars, name, Exponent::int(1))
    }

    pub fn var_pow(vars: &Vars, name: &str, e: Exponent) -> Result<Self, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        let mut exps = vec![Exponent::ZERO; vars.len()];
        exps[i] = e;
        Ok(Self::monomial(vars, 1, &exps))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I, C>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<Exponent>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c.into());
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|x| *x == Exponent::ZERO))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[Exponent], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[Exponent]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The single term, if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&[Exponent], &BigInt)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Smallest and largest exponent of `var` over all terms.
    pub fn exponent_range(&self, var: &str) -> Option<(Exponent, Exponent)> {
        let i = self.vars.index_of(var)?;
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    fn add_term(&mut self, exps: Vec<Exponent>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(
                self.vars.describe(),
                other.vars.describe(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| Exponent(a.0 + b.0)).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut out = Self::zero(&self.vars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * &c);
        }
        out
    }

    /// Multiplies by `c · Π vars[i]^shift[i]`.
    pub fn mul_monomial(&self, c: impl Into<BigInt>, shift: &[Exponent]) -> Self {
        assert_eq!(shift.len(), self.vars.len(), "exponent vector length");
        let c = c.into();
        let mut out = Self::zero(&self.vars);
        for (e, x) in &self.terms {
            let e = e.iter().zip(shift).map(|(a, b)| Exponent(a.0 + b.0)).collect();
            out.add_term(e, x * &c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same vars");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same vars");
            }
        }
        acc
    }

    /// Replaces every variable by the polynomial assigned to it, producing a
    /// polynomial over `target`.
    ///
    /// A variable occurring with a negative or fractional exponent must be
    /// assigned a monomial; fractional powers additionally need coefficient 1.
    pub fn substitute(
        &self,
        assignments: &HashMap<String, LaurentPoly>,
        target: &Vars,
    ) -> Result<Self, PolyError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let v = assignments
                .get(name)
                .ok_or_else(|| PolyError::MissingAssignment(name.clone()))?;
            if v.vars != *target {
                return Err(PolyError::VarMismatch(
                    v.vars.describe(),
                    target.describe(),
                ));
            }
            values.push(v);
        }

        let mut cache: HashMap<(usize, Exponent), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(target);
        for (exps, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == Exponent::ZERO {
                    continue;
                }
                let factor = match cache.get(&(i, e)) {
                    Some(f) => f,
                    None => {
                        let f = power(values[i], e, &self.vars.names()[i])?;
                        cache.entry((i, e)).or_insert(f)
                    }
                };
                term = term.mul(factor)?;
            }
            for (e, x) in term.terms {
                out.add_term(e, x);
            }
        }
        Ok(out)
    }

    /// Substitution where every assignment is given as a string over `target`.
    pub fn substitute_str(&self, assignments: &[(&str, &str)], target: &Vars) -> Result<Self, PolyError> {
        let map = assignments
            .iter()
            .map(|(k, v)| Ok((k.to_string(), LaurentPoly::parse(v, target)?)))
            .collect::<Result<HashMap<_, _>, PolyError>>()?;
        self.substitute(&map, target)
    }

    /// Parses the text format produced by `Display`. Products may be written
    /// with `*` or by juxtaposition (`3A^2Bd`); juxtaposed names are split by
    /// longest match against `vars`.
    pub fn parse(text: &str, vars: &Vars) -> Result<Self, PolyError> {
        Parser::new(text, vars).parse()
    }
}

/// `value^e` for a rational exponent `e` on the quarter lattice.
fn power(value: &LaurentPoly, e: Exponent, name: &str) -> Result<LaurentPoly, PolyError> {
    if let Some((mexp, mc)) = value.as_monomial() {
        let coeff = match e.to_int() {
            Some(k) if k >= 0 => mc.pow(k as u32),
            Some(k) if mc.abs().is_one() => mc.pow(k.unsigned_abs() as u32),
            _ if mc.is_one() => BigInt::one(),
            _ => {
                return Err(PolyError::NotInvertible {
                    var: name.to_string(),
                    exponent: e,
                })
            }
        };
        let mut exps = Vec::with_capacity(mexp.len());
        for m in mexp {
            let q = m.0 * e.0;
            if q % EXP_UNIT != 0 {
                return Err(PolyError::OffLattice(name.to_string()));
            }
            exps.push(Exponent(q / EXP_UNIT));
        }
        return Ok(LaurentPoly::monomial(&value.vars, coeff, &exps));
    }
    match e.to_int() {
        Some(k) if k >= 0 => Ok(value.pow(k as u32)),
        _ => Err(PolyError::NotInvertible {
            var: name.to_string(),
            exponent: e,
        }),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, e) in self.vars.names().iter().zip(exps) {
                match e.0 {
                    0 => {}
                    EXP_UNIT => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a Vars) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64, PolyError> {
        let neg = self.eat(b'-');
        let v: i64 = match self.integer()?.try_into() {
            Ok(v) => v,
            Err(_) => return self.err("exponent too large"),
        };
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exponent, PolyError> {
        if self.eat(b'(') {
            let num = self.small_int()?;
            let den = if self.eat(b'/') { self.small_int()? } else { 1 };
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            if den == 0 || (num * EXP_UNIT) % den != 0 {
                return self.err("exponent not a multiple of 1/4");
            }
            Ok(Exponent(num * EXP_UNIT / den))
        } else {
            Ok(Exponent::int(self.small_int()?))
        }
    }

    fn parse(mut self) -> Result<LaurentPoly, PolyError> {
        let mut out = LaurentPoly::zero(self.vars);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                None if !first => break,
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None => return self.err("empty polynomial"),
                _ if first => false,
                _ => return self.err("expected `+` or `-`"),
            };
            first = false;
            let (exps, c) = self.term()?;
            out.add_term(exps, if neg { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Vec<Exponent>, BigInt), PolyError> {
        let mut exps = vec![Exponent::ZERO; self.vars.len()];
        let mut coeff = BigInt::one();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coeff *= self.integer()?,
                Some(b) if b.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                        self.pos += 1;
                    }
                    let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let names = split_word(word, self.vars).ok_or_else(|| PolyError::Parse {
                        pos: start,
                        msg: format!("unknown variable in `{word}`"),
                    })?;
                    let last = *names.last().unwrap();
                    for &i in &names[..names.len() - 1] {
                        exps[i].0 += EXP_UNIT;
                    }
                    let e = if self.eat(b'^') {
                        self.exponent()?
                    } else {
                        Exponent::int(1)
                    };
                    exps[last].0 += e.0;
                }
                _ if !any => return self.err("expected term"),
                _ => break,
            }
            any = true;
            self.eat(b'*');
        }
        Ok((exps, coeff))
    }
}

/// Splits an identifier into variable indices, longest name first.
fn split_word(word: &str, vars: &Vars) -> Option<Vec<usize>> {
    if let Some(i) = vars.index_of(word) {
        return Some(vec![i]);
    }
    let mut out = Vec::new();
    let mut rest = word;
    while !rest.is_empty() {
        let (i, len) = vars
            .names()
            .iter()
            .enumerate()
            .filter(|(_, n)| rest.starts_with(n.as_str()))
            .map(|(i, n)| (i, n.len()))
            .max_by_key(|&(_, len)| len)?;
        out.push(i);
        rest = &rest[len..];
    }
    Some(out)
}
