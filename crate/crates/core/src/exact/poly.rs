//! Sparse multivariate polynomials over the exact rationals.
//!
//! # Design Notes
//!
//! Variables are interned process-wide; a `Sym` is a small copyable handle.
//! Monomials store `(symbol, exponent)` pairs sorted by symbol id, which
//! makes equality, hashing, and merging cheap. Everything order-sensitive
//! that leaks outside the process (rendering) sorts by variable *name*, so
//! output never depends on interning order.
//!
//! There is no public polynomial division. The one internal division,
//! `div_exact`, exists solely because fraction-free elimination divides by
//! previous pivots, and those divisions are exact by construction.

use super::{ExactError, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

struct Registry {
    names: Vec<String>,
    by_name: HashMap<String, u32>,
}

fn registry() -> &'static Mutex<Registry> {
    static REG: OnceLock<Mutex<Registry>> = OnceLock::new();
    REG.get_or_init(|| {
        Mutex::new(Registry {
            names: Vec::new(),
            by_name: HashMap::new(),
        })
    })
}

/// Interned polynomial variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sym(u32);

impl Sym {
    /// Interns `name` and returns its handle. Repeated calls with the same
    /// name return the same handle.
    pub fn new(name: &str) -> Sym {
        let mut reg = registry().lock().expect("symbol registry poisoned");
        if let Some(&id) = reg.by_name.get(name) {
            return Sym(id);
        }
        let id = u32::try_from(reg.names.len()).expect("symbol registry overflow");
        reg.names.push(name.to_owned());
        reg.by_name.insert(name.to_owned(), id);
        Sym(id)
    }

    /// The variable's name.
    pub fn name(self) -> String {
        let reg = registry().lock().expect("symbol registry poisoned");
        reg.names[self.0 as usize].clone()
    }
}

/// Power product of variables, e.g. x^2*y. The constant monomial is empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Box<[(Sym, u32)]>);

impl Monomial {
    /// The constant monomial 1.
    pub fn unit() -> Monomial {
        Monomial(Box::new([]))
    }

    /// Single-variable monomial sym^exp.
    pub fn var_pow(sym: Sym, exp: u32) -> Monomial {
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial(Box::new([(sym, exp)]))
        }
    }

    /// Builds a monomial from (symbol, exponent) pairs; zero exponents are
    /// dropped and repeats are merged.
    pub fn from_pairs(pairs: &[(Sym, u32)]) -> Monomial {
        let mut map: BTreeMap<Sym, u32> = BTreeMap::new();
        for &(s, e) in pairs {
            if e > 0 {
                *map.entry(s).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    /// True for the constant monomial.
    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Exponent of `sym` in this monomial.
    pub fn degree_in(&self, sym: Sym) -> u32 {
        self.0
            .iter()
            .find(|&&(s, _)| s == sym)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Sym, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out.into_boxed_slice())
    }

    /// Componentwise quotient if `other` divides `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: Vec<(Sym, u32)> = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in self.0.iter() {
            let mut rem = e;
            if j < other.0.len() && other.0[j].0 == s {
                if other.0[j].1 > e {
                    return None;
                }
                rem = e - other.0[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((s, rem));
            }
        }
        if j == other.0.len() {
            Some(Monomial(out.into_boxed_slice()))
        } else {
            None
        }
    }

    /// Graded-lexicographic comparison (by symbol id), a genuine monomial
    /// order: total degree first, then lexicographic on exponents.
    pub fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => return std::cmp::Ordering::Greater,
                std::cmp::Ordering::Greater => return std::cmp::Ordering::Less,
                std::cmp::Ordering::Equal => match self.0[i].1.cmp(&other.0[j].1) {
                    std::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        match (i < self.0.len(), j < other.0.len()) {
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }

    fn pairs(&self) -> &[(Sym, u32)] {
        &self.0
    }
}

/// Variable assignment for exact evaluation.
#[derive(Clone, Debug, Default)]
pub struct Assignment(BTreeMap<Sym, Rational>);

impl Assignment {
    /// Empty assignment.
    pub fn new() -> Assignment {
        Assignment(BTreeMap::new())
    }

    /// Binds `name` to `value`, returning self for chaining.
    pub fn set(mut self, name: &str, value: Rational) -> Assignment {
        self.0.insert(Sym::new(name), value);
        self
    }

    /// Looks up a binding.
    pub fn get(&self, sym: Sym) -> Option<&Rational> {
        self.0.get(&sym)
    }
}

/// Variable assignment for floating-point evaluation.
#[derive(Clone, Debug, Default)]
pub struct AssignmentF64(BTreeMap<Sym, f64>);

impl AssignmentF64 {
    /// Empty assignment.
    pub fn new() -> AssignmentF64 {
        AssignmentF64(BTreeMap::new())
    }

    /// Binds `name` to `value`, returning self for chaining.
    pub fn set(mut self, name: &str, value: f64) -> AssignmentF64 {
        self.0.insert(Sym::new(name), value);
        self
    }

    /// Looks up a binding.
    pub fn get(&self, sym: Sym) -> Option<f64> {
        self.0.get(&sym).copied()
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    /// The zero polynomial.
    pub fn zero() -> MultiPoly {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rational::one())
    }

    /// Constant polynomial.
    pub fn constant(c: Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(), c);
        }
        MultiPoly { terms }
    }

    /// Integer constant polynomial.
    pub fn from_int(n: i64) -> MultiPoly {
        MultiPoly::constant(super::rat_int(n))
    }

    /// The variable `name`.
    pub fn var(name: &str) -> MultiPoly {
        MultiPoly::var_pow(name, 1)
    }

    /// The power `name^exp`.
    pub fn var_pow(name: &str, exp: u32) -> MultiPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var_pow(Sym::new(name), exp), Rational::one());
        MultiPoly { terms }
    }

    /// Builds a polynomial from explicit (monomial, coefficient) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// True if this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if this is the constant polynomial 1.
    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterator over (monomial, coefficient) terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    /// Additive inverse.
    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in other.terms.iter() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Scales every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Integer power by repeated squaring.
    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut result = MultiPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact evaluation. Every variable occurring in the polynomial must be
    /// bound in the assignment.
    pub fn eval(&self, at: &Assignment) -> Result<Rational, ExactError> {
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut term = c.clone();
            for &(s, e) in m.pairs() {
                let v = at
                    .get(s)
                    .ok_or_else(|| ExactError::UnboundVariable(s.name()))?;
                for _ in 0..e {
                    term *= v;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating-point evaluation. Every variable occurring in the polynomial
    /// must be bound in the assignment.
    pub fn eval_f64(&self, at: &AssignmentF64) -> Result<f64, ExactError> {
        let mut acc = 0.0;
        for (m, c) in self.terms.iter() {
            let mut term = rational_to_f64(c);
            for &(s, e) in m.pairs() {
                let v = at
                    .get(s)
                    .ok_or_else(|| ExactError::UnboundVariable(s.name()))?;
                term *= v.powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes the polynomial `value` for the variable `name`.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> MultiPoly {
        let sym = Sym::new(name);
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms.iter() {
            let e = m.degree_in(sym);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let rest = Monomial::from_pairs(
                &m.pairs()
                    .iter()
                    .copied()
                    .filter(|&(s, _)| s != sym)
                    .collect::<Vec<_>>(),
            );
            let mut piece = value.pow(e);
            piece = piece.mul(&MultiPoly {
                terms: BTreeMap::from([(rest, c.clone())]),
            });
            out = out.add(&piece);
        }
        out
    }

    /// Total degree; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in a single variable (0 for the zero polynomial).
    pub fn degree_in(&self, name: &str) -> u32 {
        let sym = Sym::new(name);
        self.terms
            .keys()
            .map(|m| m.degree_in(sym))
            .max()
            .unwrap_or(0)
    }

    /// True if every term has the same total degree. The zero polynomial
    /// counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// True if the polynomial has at most one term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    /// The set of variables occurring with nonzero exponent.
    pub fn vars(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for &(s, _) in m.pairs() {
                out.insert(s);
            }
        }
        out
    }

    /// Leading term under graded-lex order; None for zero.
    fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.grlex_cmp(b))
    }

    /// Exact quotient self / divisor, or None when the division is not
    /// exact. Internal: exists only to support fraction-free elimination,
    /// where divisions are exact by construction.
    pub(crate) fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&(Rational::one() / c)));
        }
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while !rem.is_zero() {
            let (lm, lc) = rem.leading_term().expect("nonzero remainder");
            let qm = lm.try_div(&dm)?;
            let qc = lc / &dc;
            let step = MultiPoly {
                terms: BTreeMap::from([(qm, qc)]),
            };
            quot = quot.add(&step);
            rem = rem.sub(&step.mul(divisor));
        }
        Some(quot)
    }

    /// Canonical text form: terms in descending total degree, ties broken
    /// lexicographically by variable name; variables within a term sorted by
    /// name. Stable across processes.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_owned();
        }
        let mut named: Vec<(Vec<(String, u32)>, &Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut pairs: Vec<(String, u32)> =
                    m.pairs().iter().map(|&(s, e)| (s.name(), e)).collect();
                pairs.sort();
                (pairs, c)
            })
            .collect();
        named.sort_by(|(ma, _), (mb, _)| {
            let da: u32 = ma.iter().map(|&(_, e)| e).sum();
            let db: u32 = mb.iter().map(|&(_, e)| e).sum();
            db.cmp(&da).then_with(|| cmp_named_lex(ma, mb))
        });
        let mut out = String::new();
        for (i, (pairs, c)) in named.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = render_monomial(pairs);
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Formats a nonnegative rational as "n" or "n/d".
fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_monomial(pairs: &[(String, u32)]) -> String {
    pairs
        .iter()
        .map(|(n, e)| {
            if *e == 1 {
                n.clone()
            } else {
                format!("{n}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Lexicographic compare of name-sorted exponent vectors: the term with the
/// higher exponent on the alphabetically earliest differing variable sorts
/// first.
fn cmp_named_lex(a: &[(String, u32)], b: &[(String, u32)]) -> std::cmp::Ordering {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => return std::cmp::Ordering::Less,
            std::cmp::Ordering::Greater => return std::cmp::Ordering::Greater,
            std::cmp::Ordering::Equal => match b[j].1.cmp(&a[i].1) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                ord => return ord,
            },
        }
    }
    a.len().cmp(&b.len()).reverse()
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var("x")
    }
    fn y() -> MultiPoly {
        MultiPoly::var("y")
    }

    #[test]
    fn construction_and_rendering() {
        let p = &(&x() * &x()) - &(&y() * &MultiPoly::from_int(2));
        assert_eq!(p.render(), "x^2 - 2*y");
        assert_eq!(MultiPoly::zero().render(), "0");
        assert_eq!(MultiPoly::constant(rat(-3, 4)).render(), "-3/4");
        let q = &(&x() * &y()) + &MultiPoly::one();
        assert_eq!(q.render(), "x*y + 1");
    }

    #[test]
    fn render_orders_same_degree_terms_by_name() {
        let a11 = MultiPoly::var("a11");
        let a33 = MultiPoly::var("a33");
        let a13 = MultiPoly::var("a13");
        let p = &(&a11 * &a33) - &(&a13 * &a13);
        assert_eq!(p.render(), "a11*a33 - a13^2");
    }

    #[test]
    fn arithmetic_identities() {
        let p = &(&x() + &y()) * &(&x() - &y());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(p, q);
        assert!((&p - &q).is_zero());
        let cube = (&x() + &y()).pow(3);
        let expanded = &(&(&x() * &x()) * &x())
            + &(&(&(&x() * &x()) * &y()).scale(&rat_int(3))
                + &(&(&(&x() * &y()) * &y()).scale(&rat_int(3)) + &(&(&y() * &y()) * &y())));
        assert_eq!(cube, expanded);
    }

    #[test]
    fn evaluation_exact_and_unbound() {
        let p = &(&x() * &x()) + &y().scale(&rat(1, 2));
        let a = Assignment::new().set("x", rat_int(3)).set("y", rat_int(4));
        assert_eq!(p.eval(&a), Ok(rat_int(11)));
        let partial = Assignment::new().set("x", rat_int(3));
        assert_eq!(
            p.eval(&partial),
            Err(ExactError::UnboundVariable("y".to_owned()))
        );
    }

    #[test]
    fn substitution_replaces_variable() {
        let p = &(&x() * &x()) + &y();
        let sub = p.substitute("x", &(&y() + &MultiPoly::one()));
        let expect = &(&(&y() * &y()) + &y().scale(&rat_int(3))) + &MultiPoly::one();
        assert_eq!(sub, expect);
        let killed = p.substitute("x", &MultiPoly::zero());
        assert_eq!(killed, y());
    }

    #[test]
    fn degree_and_homogeneity() {
        let p = &(&x() * &y()) + &(&x() * &x());
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.is_homogeneous());
        let q = &p + &MultiPoly::one();
        assert!(!q.is_homogeneous());
        assert!(MultiPoly::zero().is_homogeneous());
        assert_eq!(p.degree_in("x"), 2);
        assert_eq!(p.degree_in("z"), 0);
    }

    #[test]
    fn exact_division_roundtrip() {
        let p = &(&x() + &y()) * &(&(&x() * &x()) - &y().scale(&rat(5, 3)));
        let q = p.div_exact(&(&x() + &y())).expect("exact quotient");
        assert_eq!(q, &(&x() * &x()) - &y().scale(&rat(5, 3)));
        assert!(x().div_exact(&y()).is_none());
        let c = p.div_exact(&MultiPoly::from_int(2)).expect("constant div");
        assert_eq!(c.scale(&rat_int(2)), p);
    }

    #[test]
    fn eval_f64_matches_exact() {
        let p = &(&x() * &y()).scale(&rat(7, 2)) - &MultiPoly::from_int(1);
        let af = AssignmentF64::new().set("x", 2.0).set("y", -1.5);
        let v = p.eval_f64(&af).expect("bound");
        assert!((v - (7.0 / 2.0 * 2.0 * -1.5 - 1.0)).abs() < 1e-12);
    }
}
