//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Variables come from a fixed set of families `a, b, s, t, u, v, x, y, z`
//! with 1-based indices; `s`, `t` and `z` are scalars (index 1 only). The
//! canonical term order is graded lexicographic: total degree first, ties
//! broken by exponents along the variable order. All arithmetic is exact.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Variable family, ordered alphabetically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    B,
    S,
    T,
    U,
    V,
    X,
    Y,
    Z,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::S => 's',
            Family::T => 't',
            Family::U => 'u',
            Family::V => 'v',
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c {
            'a' => Family::A,
            'b' => Family::B,
            's' => Family::S,
            't' => Family::T,
            'u' => Family::U,
            'v' => Family::V,
            'x' => Family::X,
            'y' => Family::Y,
            'z' => Family::Z,
            _ => return None,
        })
    }

    /// Scalar families carry no index in their serialized form.
    pub fn is_scalar(self) -> bool {
        matches!(self, Family::S | Family::T | Family::Z)
    }
}

/// A variable: family plus 1-based index, e.g. `x1`, `y3`, `t`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variable {
    family: Family,
    index: u32,
}

impl Variable {
    pub fn new(family: Family, index: u32) -> Result<Variable> {
        if index == 0 {
            return Err(Error::InvalidParameters(
                "variable index must be at least 1".into(),
            ));
        }
        if family.is_scalar() && index != 1 {
            return Err(Error::InvalidParameters(format!(
                "scalar variable `{}` only admits index 1",
                family.letter()
            )));
        }
        Ok(Variable { family, index })
    }

    pub fn a(i: u32) -> Variable {
        Variable { family: Family::A, index: i }
    }
    pub fn b(i: u32) -> Variable {
        Variable { family: Family::B, index: i }
    }
    pub fn u(i: u32) -> Variable {
        Variable { family: Family::U, index: i }
    }
    pub fn v(i: u32) -> Variable {
        Variable { family: Family::V, index: i }
    }
    pub fn x(i: u32) -> Variable {
        Variable { family: Family::X, index: i }
    }
    pub fn y(i: u32) -> Variable {
        Variable { family: Family::Y, index: i }
    }
    pub fn s() -> Variable {
        Variable { family: Family::S, index: 1 }
    }
    pub fn t() -> Variable {
        Variable { family: Family::T, index: 1 }
    }
    pub fn z() -> Variable {
        Variable { family: Family::Z, index: 1 }
    }

    pub fn family(self) -> Family {
        self.family
    }
    pub fn index(self) -> u32 {
        self.index
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.is_scalar() {
            write!(f, "{}", self.family.letter())
        } else {
            write!(f, "{}{}", self.family.letter(), self.index)
        }
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variable> {
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::Json("empty variable name".into()))?;
        let family = Family::from_letter(letter)
            .ok_or_else(|| Error::Json(format!("unknown variable family in `{s}`")))?;
        let rest: String = chars.collect();
        let index = if rest.is_empty() {
            if family.is_scalar() {
                1
            } else {
                return Err(Error::Json(format!("variable `{s}` is missing its index")));
            }
        } else {
            rest.parse::<u32>()
                .map_err(|_| Error::Json(format!("bad variable index in `{s}`")))?
        };
        Variable::new(family, index).map_err(|e| Error::Json(e.to_string()))
    }
}

/// Exponent vector with nonzero (possibly negative) entries, sorted by
/// variable. The `Ord` impl is the canonical graded-lex term order,
/// ascending; reverse iteration yields the leading term first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Variable, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Build from arbitrary pairs: sorts, merges repeats, drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, i32)>) -> Monomial {
        let mut v: Vec<(Variable, i32)> = pairs.into_iter().filter(|&(_, e)| e != 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut merged: Vec<(Variable, i32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match merged.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => merged.push((var, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Monomial(merged)
    }

    pub fn var(v: Variable, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.0
            .binary_search_by_key(&v, |&(var, _)| var)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Scale every exponent, e.g. `scale(-1)` inverts a unit monomial.
    pub fn scale(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.0.iter().any(|&(_, e)| e < 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // Lexicographic along the variable order; a missing variable is
        // exponent zero.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        if ea != 0 {
                            return ea.cmp(&0);
                        }
                        i += 1;
                    }
                    Ordering::Greater => {
                        if eb != 0 {
                            return 0.cmp(&eb);
                        }
                        j += 1;
                    }
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A sparse Laurent polynomial: a map from monomials to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> LaurentPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentPoly { terms }
    }

    pub fn variable(v: Variable) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(v, 1), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// `v - 1`, the shift used throughout the Tutte forms.
    pub fn var_minus_one(v: Variable) -> LaurentPoly {
        &LaurentPoly::variable(v) - &LaurentPoly::one()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The single term `(monomial, coefficient)` if the polynomial is a unit
    /// of the Laurent ring (one term, coefficient plus or minus one).
    pub fn as_unit(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if c.magnitude().is_one() {
            Some((m, c))
        } else {
            None
        }
    }

    /// Simultaneous substitution. Every variable of `self` that appears with
    /// a negative exponent must be bound to a unit (or left unbound).
    pub fn substitute(&self, bindings: &BTreeMap<Variable, LaurentPoly>) -> Result<LaurentPoly> {
        // precompute every required power of a bound variable once
        let mut pow_cache: HashMap<(Variable, i32), LaurentPoly> = HashMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.iter() {
                let Some(p) = bindings.get(&v) else { continue };
                if pow_cache.contains_key(&(v, e)) {
                    continue;
                }
                let piece = if e >= 0 {
                    p.pow(e as u32)
                } else {
                    let (um, uc) = p
                        .as_unit()
                        .ok_or_else(|| Error::NonUnitSubstitution(v.to_string()))?;
                    let coeff = if uc.is_negative() && e % 2 != 0 {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    };
                    LaurentPoly::monomial(um.scale(e), coeff)
                };
                pow_cache.insert((v, e), piece);
            }
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            // fold constant and single-term pieces straight into the term;
            // only genuine polynomial pieces need multiplication
            let mut residual: Vec<(Variable, i32)> = Vec::new();
            let mut coeff = c.clone();
            let mut factors: Vec<&LaurentPoly> = Vec::new();
            let mut vanished = false;
            for (v, e) in m.iter() {
                if bindings.contains_key(&v) {
                    let piece = &pow_cache[&(v, e)];
                    match piece.terms.len() {
                        0 => {
                            vanished = true;
                            break;
                        }
                        1 => {
                            let (pm, pc) = piece.terms.iter().next().unwrap();
                            coeff *= pc;
                            residual.extend(pm.iter());
                        }
                        _ => factors.push(piece),
                    }
                } else {
                    residual.push((v, e));
                }
            }
            if vanished {
                continue;
            }
            let base = LaurentPoly::monomial(Monomial::from_pairs(residual), coeff);
            if factors.is_empty() {
                out.add_assign(&base);
            } else {
                let mut acc = base;
                for f in factors {
                    acc = &acc * f;
                }
                out.add_assign(&acc);
            }
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point. All variables must be bound;
    /// zero may not be raised to a negative power.
    pub fn evaluate(&self, point: &BTreeMap<Variable, BigRational>) -> Result<BigRational> {
        let mut pow_cache: HashMap<(Variable, i32), BigRational> = HashMap::new();
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut acc = BigRational::from(c.clone());
            let mut vanished = false;
            for (v, e) in m.iter() {
                let cached = match pow_cache.get(&(v, e)) {
                    Some(value) => value.clone(),
                    None => {
                        let val = point
                            .get(&v)
                            .ok_or_else(|| Error::UnboundVariable(v.to_string()))?;
                        let value = rational_pow(val, e)?;
                        pow_cache.insert((v, e), value.clone());
                        value
                    }
                };
                if cached.is_zero() {
                    vanished = true;
                    break;
                }
                acc *= cached;
            }
            if !vanished {
                total += acc;
            }
        }
        Ok(total)
    }

    /// Formal partial derivative; `d/dv v^n = n v^(n-1)` for all integers n.
    pub fn partial_derivative(&self, v: Variable) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let pairs: Vec<(Variable, i32)> = m
                .iter()
                .map(|(var, exp)| if var == v { (var, exp - 1) } else { (var, exp) })
                .collect();
            out.add_term(Monomial::from_pairs(pairs), c * BigInt::from(e));
        }
        out
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exponent vectors present, leading term first.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().rev().cloned().collect()
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut vars = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.iter() {
                vars.insert(v);
            }
        }
        vars
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|m| m.has_negative_exponent())
    }

    /// Canonical human-readable form, leading term first, `0` when empty.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.magnitude();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{mag}*{m}"));
            }
        }
        out
    }

    /// `{"terms":[{"exp":{"x1":2},"coeff":"36478"},...]}` with terms in
    /// canonical order (leading term first) and decimal-string coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut exp = serde_json::Map::new();
                for (v, e) in m.iter() {
                    exp.insert(v.to_string(), serde_json::json!(e));
                }
                serde_json::json!({ "exp": exp, "coeff": c.to_string() })
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<LaurentPoly> {
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Json("polynomial json needs a `terms` array".into()))?;
        let mut out = LaurentPoly::zero();
        for term in terms {
            let exp = term
                .get("exp")
                .and_then(|e| e.as_object())
                .ok_or_else(|| Error::Json("term needs an `exp` object".into()))?;
            let mut pairs = Vec::with_capacity(exp.len());
            for (name, e) in exp {
                let v: Variable = name.parse()?;
                let e = e
                    .as_i64()
                    .ok_or_else(|| Error::Json(format!("bad exponent for `{name}`")))?;
                pairs.push((v, e as i32));
            }
            let coeff = match term.get("coeff") {
                Some(serde_json::Value::String(s)) => BigInt::from_str(s)
                    .map_err(|_| Error::Json(format!("bad coefficient `{s}`")))?,
                Some(serde_json::Value::Number(n)) => BigInt::from_str(&n.to_string())
                    .map_err(|_| Error::Json(format!("bad coefficient `{n}`")))?,
                _ => return Err(Error::Json("term needs a `coeff` string".into())),
            };
            out.add_term(Monomial::from_pairs(pairs), coeff);
        }
        Ok(out)
    }
}

fn rational_pow(v: &BigRational, e: i32) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if v.is_zero() {
        if e < 0 {
            return Err(Error::ZeroToNegativePower);
        }
        return Ok(BigRational::zero());
    }
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= v;
    }
    if e < 0 {
        acc = acc.recip();
    }
    Ok(acc)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
