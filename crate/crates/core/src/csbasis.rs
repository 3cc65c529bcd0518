//! The function algebra generated by r and the generalized sine/cosine
//! pairs of the two curvature parameters, with exact differentiation,
//! numeric evaluation, and graded projection.
//!
//! # Design Notes
//!
//! For a parameter tau, the generalized pair (s, c) solves f'' = tau f
//! with s(0) = 0, s'(0) = 1, c(0) = 1, c'(0) = 0, so s' = c, c' = tau s,
//! and c^2 - tau s^2 = 1. A degenerate slot (tau identically zero) drops
//! its pair entirely: there s collapses to r and c to 1, so atoms carry no
//! powers for that slot and the r exponent absorbs them.
//!
//! Elements are finite sums of atoms r^a c1^b s1^e c2^f s2^g with
//! polynomial coefficients. Differentiation is the formal derivation
//! induced by r' = 1 and the pair rules; evaluation sends the atoms to
//! their analytic values.

use crate::exact::{MultiPoly, RingOps};
use std::collections::BTreeMap;
use std::fmt;

/// Errors raised by the function-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CsError {
    /// Two operands live over different degeneracy modes.
    #[error("degeneracy modes differ: {0:?} vs {1:?}")]
    ModeMismatch(CsMode, CsMode),
    /// An atom breaks a mode invariant (powers in a degenerate slot).
    #[error("atom {0:?} carries powers in a degenerate slot")]
    DegenerateSlot(Atom),
    /// A coefficient variable was missing from an evaluation assignment.
    #[error("unbound variable `{0}` in evaluation assignment")]
    UnboundVariable(String),
    /// An atom violates the grading required by a projection.
    #[error("atom {0:?} violates the requested grading")]
    GradingViolation(Atom),
    /// A projection was requested for an unsupported degeneracy mode.
    #[error("projection is not defined for mode {0:?}")]
    UnsupportedMode(CsMode),
}

/// Which of the two parameter slots are degenerate (identically zero).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, PartialOrd, Ord)]
pub struct CsMode {
    /// First slot degenerate: no c1/s1 powers, s1 has collapsed to r.
    pub tau1_degenerate: bool,
    /// Second slot degenerate: no c2/s2 powers, s2 has collapsed to r.
    pub tau2_degenerate: bool,
}

impl CsMode {
    /// Both parameters nonzero.
    pub fn mixed() -> CsMode {
        CsMode::default()
    }

    /// First parameter identically zero.
    pub fn flat_first() -> CsMode {
        CsMode {
            tau1_degenerate: true,
            tau2_degenerate: false,
        }
    }
}

/// Power product r^a c1^b s1^e c2^f s2^g.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Atom {
    /// Exponent of r.
    pub r_pow: u32,
    /// Exponent of the first cosine.
    pub c1_pow: u32,
    /// Exponent of the first sine.
    pub s1_pow: u32,
    /// Exponent of the second cosine.
    pub c2_pow: u32,
    /// Exponent of the second sine.
    pub s2_pow: u32,
}

impl Atom {
    /// The unit atom.
    pub fn unit() -> Atom {
        Atom::default()
    }

    /// Componentwise product of two atoms.
    pub fn mul(&self, other: &Atom) -> Atom {
        Atom {
            r_pow: self.r_pow + other.r_pow,
            c1_pow: self.c1_pow + other.c1_pow,
            s1_pow: self.s1_pow + other.s1_pow,
            c2_pow: self.c2_pow + other.c2_pow,
            s2_pow: self.s2_pow + other.s2_pow,
        }
    }

    fn respects(&self, mode: CsMode) -> bool {
        (!mode.tau1_degenerate || (self.c1_pow == 0 && self.s1_pow == 0))
            && (!mode.tau2_degenerate || (self.c2_pow == 0 && self.s2_pow == 0))
    }
}

/// Finite sum of atoms with polynomial coefficients, tagged with the
/// degeneracy mode its atoms respect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSPoly {
    mode: CsMode,
    terms: BTreeMap<Atom, MultiPoly>,
}

impl CSPoly {
    /// The zero element of the given mode.
    pub fn zero(mode: CsMode) -> CSPoly {
        CSPoly {
            mode,
            terms: BTreeMap::new(),
        }
    }

    /// Embeds a coefficient polynomial on the unit atom.
    pub fn from_coeff(mode: CsMode, coeff: MultiPoly) -> CSPoly {
        let mut out = CSPoly::zero(mode);
        out.add_term(Atom::unit(), coeff);
        out
    }

    /// A single atom with coefficient 1. Errors when the atom carries
    /// powers in a degenerate slot.
    pub fn atom(mode: CsMode, atom: Atom) -> Result<CSPoly, CsError> {
        CSPoly::term(mode, atom, MultiPoly::one())
    }

    /// A single atom with an explicit coefficient.
    pub fn term(mode: CsMode, atom: Atom, coeff: MultiPoly) -> Result<CSPoly, CsError> {
        if !atom.respects(mode) {
            return Err(CsError::DegenerateSlot(atom));
        }
        let mut out = CSPoly::zero(mode);
        out.add_term(atom, coeff);
        Ok(out)
    }

    /// The element's degeneracy mode.
    pub fn mode(&self) -> CsMode {
        self.mode
    }

    /// True when no terms remain.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterator over (atom, coefficient) terms.
    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &MultiPoly)> {
        self.terms.iter()
    }

    /// Coefficient of an atom (zero when absent).
    pub fn coeff(&self, atom: &Atom) -> MultiPoly {
        self.terms.get(atom).cloned().unwrap_or_else(MultiPoly::zero)
    }

    fn add_term(&mut self, atom: Atom, coeff: MultiPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(atom) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_mode(&self, other: &CSPoly) -> Result<(), CsError> {
        if self.mode != other.mode {
            return Err(CsError::ModeMismatch(self.mode, other.mode));
        }
        Ok(())
    }

    /// Sum. Panics on mode mismatch; the checked entry point is `cs_mul`'s
    /// sibling `cs_add`.
    pub fn add(&self, other: &CSPoly) -> CSPoly {
        self.check_mode(other)
            .expect("mode mismatch in function-algebra sum");
        let mut out = self.clone();
        for (a, c) in other.terms.iter() {
            out.add_term(*a, c.clone());
        }
        out
    }

    /// Difference. Panics on mode mismatch.
    pub fn sub(&self, other: &CSPoly) -> CSPoly {
        self.add(&other.neg())
    }

    /// Additive inverse.
    pub fn neg(&self) -> CSPoly {
        CSPoly {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (*a, c.neg()))
                .collect(),
        }
    }

    /// Scales every coefficient by a polynomial.
    pub fn scale(&self, p: &MultiPoly) -> CSPoly {
        if p.is_zero() {
            return CSPoly::zero(self.mode);
        }
        CSPoly {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (*a, c.mul(p)))
                .collect(),
        }
    }

    /// Product. Panics on mode mismatch; `cs_mul` is the checked entry
    /// point.
    pub fn mul(&self, other: &CSPoly) -> CSPoly {
        self.check_mode(other)
            .expect("mode mismatch in function-algebra product");
        let mut out = CSPoly::zero(self.mode);
        for (a1, c1) in self.terms.iter() {
            for (a2, c2) in other.terms.iter() {
                out.add_term(a1.mul(a2), c1.mul(c2));
            }
        }
        out
    }
}

impl RingOps for CSPoly {
    fn ring_zero() -> Self {
        CSPoly::zero(CsMode::mixed())
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    // The zero of any mode acts as a universal zero here, so the generic
    // determinant can seed its accumulator without knowing the mode.
    fn ring_add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.add(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return CSPoly::zero(if self.is_zero() { other.mode } else { self.mode });
        }
        self.mul(other)
    }
}

impl fmt::Display for CSPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let mut factors = Vec::new();
                for (name, e) in [
                    ("r", a.r_pow),
                    ("c1", a.c1_pow),
                    ("s1", a.s1_pow),
                    ("c2", a.c2_pow),
                    ("s2", a.s2_pow),
                ] {
                    if e == 1 {
                        factors.push(name.to_owned());
                    } else if e > 1 {
                        factors.push(format!("{name}^{e}"));
                    }
                }
                let atom_str = if factors.is_empty() {
                    "1".to_owned()
                } else {
                    factors.join("*")
                };
                format!("({})*{}", c.render(), atom_str)
            })
            .collect();
        f.write_str(&rendered.join(" + "))
    }
}

/// Checked product: errors on mode mismatch instead of panicking.
pub fn cs_mul(f: &CSPoly, g: &CSPoly) -> Result<CSPoly, CsError> {
    f.check_mode(g)?;
    Ok(f.mul(g))
}

/// Checked sum: errors on mode mismatch instead of panicking.
pub fn cs_add(f: &CSPoly, g: &CSPoly) -> Result<CSPoly, CsError> {
    f.check_mode(g)?;
    Ok(f.add(g))
}

/// Formal derivative in r: r' = 1, s' = c, c' = tau s per live slot.
///
/// The parameters are the coefficient polynomials of the two slots; a
/// degenerate slot's parameter is ignored (its pair is absent from atoms).
pub fn cs_derivative(f: &CSPoly, tau1: &MultiPoly, tau2: &MultiPoly) -> CSPoly {
    let mode = f.mode();
    let mut out = CSPoly::zero(mode);
    for (a, coeff) in f.terms() {
        if a.r_pow > 0 {
            let mut b = *a;
            b.r_pow -= 1;
            out.add_term(b, coeff.scale(&crate::exact::rat_int(a.r_pow as i64)));
        }
        if a.c1_pow > 0 {
            let mut b = *a;
            b.c1_pow -= 1;
            b.s1_pow += 1;
            out.add_term(
                b,
                coeff
                    .mul(tau1)
                    .scale(&crate::exact::rat_int(a.c1_pow as i64)),
            );
        }
        if a.s1_pow > 0 {
            let mut b = *a;
            b.s1_pow -= 1;
            b.c1_pow += 1;
            out.add_term(b, coeff.scale(&crate::exact::rat_int(a.s1_pow as i64)));
        }
        if a.c2_pow > 0 {
            let mut b = *a;
            b.c2_pow -= 1;
            b.s2_pow += 1;
            out.add_term(
                b,
                coeff
                    .mul(tau2)
                    .scale(&crate::exact::rat_int(a.c2_pow as i64)),
            );
        }
        if a.s2_pow > 0 {
            let mut b = *a;
            b.s2_pow -= 1;
            b.c2_pow += 1;
            out.add_term(b, coeff.scale(&crate::exact::rat_int(a.s2_pow as i64)));
        }
    }
    out
}

/// Sends every atom of a mixed-mode element to its first-slot
/// specialization at tau1 = 0: c1 collapses to 1, s1 to r, and coefficient
/// occurrences of the named first parameter are set to zero.
pub fn specialize_tau1_zero(f: &CSPoly, tau1_name: &str) -> Result<CSPoly, CsError> {
    if f.mode().tau1_degenerate {
        return Ok(f.clone());
    }
    let mode = CsMode {
        tau1_degenerate: true,
        tau2_degenerate: f.mode().tau2_degenerate,
    };
    let mut out = CSPoly::zero(mode);
    for (a, coeff) in f.terms() {
        let specialized = coeff.substitute(tau1_name, &MultiPoly::zero());
        let b = Atom {
            r_pow: a.r_pow + a.s1_pow,
            c1_pow: 0,
            s1_pow: 0,
            c2_pow: a.c2_pow,
            s2_pow: a.s2_pow,
        };
        out.add_term(b, specialized);
    }
    Ok(out)
}

/// Analytic value of the generalized (sine, cosine) pair at parameter tau
/// and argument r.
pub fn sc_value(tau: f64, r: f64) -> (f64, f64) {
    if tau > 0.0 {
        let q = tau.sqrt();
        ((q * r).sinh() / q, (q * r).cosh())
    } else if tau < 0.0 {
        let q = (-tau).sqrt();
        ((q * r).sin() / q, (q * r).cos())
    } else {
        (r, 1.0)
    }
}

/// Numeric evaluation at argument r, parameters tau1, tau2, and an
/// assignment binding every coefficient variable.
pub fn cs_eval(
    f: &CSPoly,
    r: f64,
    tau1: f64,
    tau2: f64,
    at: &crate::exact::AssignmentF64,
) -> Result<f64, CsError> {
    let (s1, c1) = sc_value(tau1, r);
    let (s2, c2) = sc_value(tau2, r);
    let mut acc = 0.0;
    for (a, coeff) in f.terms() {
        let base = coeff.eval_f64(at).map_err(|e| match e {
            crate::exact::ExactError::UnboundVariable(name) => CsError::UnboundVariable(name),
            other => panic!("unexpected evaluation failure: {other}"),
        })?;
        let mut v = base;
        v *= r.powi(a.r_pow as i32);
        v *= c1.powi(a.c1_pow as i32);
        v *= s1.powi(a.s1_pow as i32);
        v *= c2.powi(a.c2_pow as i32);
        v *= s2.powi(a.s2_pow as i32);
        acc += v;
    }
    Ok(acc)
}

/// Symbolic value at argument 0: sines and the radial variable vanish,
/// cosines collapse to 1, so only atoms free of r and sine powers survive.
pub fn cs_value_at_zero(f: &CSPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for (a, coeff) in f.terms() {
        if a.r_pow == 0 && a.s1_pow == 0 && a.s2_pow == 0 {
            acc = acc.add(coeff);
        }
    }
    acc
}

/// Graded coefficient extraction for the determinant expansion.
///
/// Mixed mode: every atom must satisfy c1 + s1 = n1 - 1, c2 + s2 = n2 - 1,
/// r <= 1; the output stacks the r^0 coefficients (indexed by sine powers,
/// first slot major) and then the r^1 coefficients, 2 n1 n2 entries total.
///
/// First-slot-degenerate mode: every atom must satisfy r <= n1 and
/// c2 + s2 = n2 - 1; the output has (n1 + 1) n2 entries indexed by (r
/// power, second sine power).
pub fn project_graded(f: &CSPoly, n1: usize, n2: usize) -> Result<Vec<MultiPoly>, CsError> {
    let mode = f.mode();
    if mode.tau2_degenerate {
        return Err(CsError::UnsupportedMode(mode));
    }
    if mode.tau1_degenerate {
        let mut out = vec![MultiPoly::zero(); (n1 + 1) * n2];
        for (a, coeff) in f.terms() {
            let grading_ok =
                a.r_pow <= n1 as u32 && (a.c2_pow + a.s2_pow) as usize == n2 - 1;
            if !grading_ok {
                return Err(CsError::GradingViolation(*a));
            }
            out[a.r_pow as usize * n2 + a.s2_pow as usize] =
                out[a.r_pow as usize * n2 + a.s2_pow as usize].add(coeff);
        }
        Ok(out)
    } else {
        let mut out = vec![MultiPoly::zero(); 2 * n1 * n2];
        for (a, coeff) in f.terms() {
            let grading_ok = a.r_pow <= 1
                && (a.c1_pow + a.s1_pow) as usize == n1 - 1
                && (a.c2_pow + a.s2_pow) as usize == n2 - 1;
            if !grading_ok {
                return Err(CsError::GradingViolation(*a));
            }
            let slot =
                a.r_pow as usize * n1 * n2 + a.s1_pow as usize * n2 + a.s2_pow as usize;
            out[slot] = out[slot].add(coeff);
        }
        Ok(out)
    }
}

/// Rebuilds the element of the expansion grading from its coefficient
/// stack; inverse of `project_graded` on its image.
pub fn reconstruct_graded(
    coeffs: &[MultiPoly],
    n1: usize,
    n2: usize,
    mode: CsMode,
) -> Result<CSPoly, CsError> {
    if mode.tau2_degenerate {
        return Err(CsError::UnsupportedMode(mode));
    }
    let mut out = CSPoly::zero(mode);
    if mode.tau1_degenerate {
        assert_eq!(coeffs.len(), (n1 + 1) * n2, "coefficient stack length");
        for u in 0..=n1 {
            for v in 0..n2 {
                let atom = Atom {
                    r_pow: u as u32,
                    c1_pow: 0,
                    s1_pow: 0,
                    c2_pow: (n2 - 1 - v) as u32,
                    s2_pow: v as u32,
                };
                out.add_term(atom, coeffs[u * n2 + v].clone());
            }
        }
    } else {
        assert_eq!(coeffs.len(), 2 * n1 * n2, "coefficient stack length");
        for r_pow in 0..2u32 {
            for u in 0..n1 {
                for v in 0..n2 {
                    let atom = Atom {
                        r_pow,
                        c1_pow: (n1 - 1 - u) as u32,
                        s1_pow: u as u32,
                        c2_pow: (n2 - 1 - v) as u32,
                        s2_pow: v as u32,
                    };
                    out.add_term(atom, coeffs[r_pow as usize * n1 * n2 + u * n2 + v].clone());
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, AssignmentF64};

    fn tau1() -> MultiPoly {
        MultiPoly::var("tau1")
    }
    fn tau2() -> MultiPoly {
        MultiPoly::var("tau2")
    }

    fn s1() -> CSPoly {
        CSPoly::atom(
            CsMode::mixed(),
            Atom {
                s1_pow: 1,
                ..Atom::default()
            },
        )
        .expect("mixed atom")
    }

    fn c1() -> CSPoly {
        CSPoly::atom(
            CsMode::mixed(),
            Atom {
                c1_pow: 1,
                ..Atom::default()
            },
        )
        .expect("mixed atom")
    }

    #[test]
    fn derivative_rules() {
        let ds = cs_derivative(&s1(), &tau1(), &tau2());
        assert_eq!(ds, c1());
        let dc = cs_derivative(&c1(), &tau1(), &tau2());
        assert_eq!(dc, s1().scale(&tau1()));
        let r = CSPoly::atom(
            CsMode::mixed(),
            Atom {
                r_pow: 2,
                ..Atom::default()
            },
        )
        .expect("mixed atom");
        let dr = cs_derivative(&r, &tau1(), &tau2());
        let expect = CSPoly::term(
            CsMode::mixed(),
            Atom {
                r_pow: 1,
                ..Atom::default()
            },
            MultiPoly::from_int(2),
        )
        .expect("mixed atom");
        assert_eq!(dr, expect);
    }

    #[test]
    fn pythagorean_combination_is_constant_under_derivative() {
        let c_sq = c1().mul(&c1());
        let s_sq_tau = s1().mul(&s1()).scale(&tau1());
        let inv = c_sq.sub(&s_sq_tau);
        let d = cs_derivative(&inv, &tau1(), &tau2());
        assert!(d.is_zero());
    }

    #[test]
    fn mode_mismatch_is_reported() {
        let mixed = s1();
        let flat = CSPoly::from_coeff(CsMode::flat_first(), MultiPoly::one());
        assert!(matches!(
            cs_mul(&mixed, &flat),
            Err(CsError::ModeMismatch(_, _))
        ));
        assert!(cs_add(&mixed, &mixed.clone()).is_ok());
    }

    #[test]
    fn degenerate_slot_atoms_rejected() {
        let bad = CSPoly::atom(
            CsMode::flat_first(),
            Atom {
                s1_pow: 1,
                ..Atom::default()
            },
        );
        assert!(matches!(bad, Err(CsError::DegenerateSlot(_))));
    }

    #[test]
    fn numeric_evaluation_matches_closed_forms() {
        let at = AssignmentF64::new();
        let f = s1();
        let tau = 0.49;
        let r = 0.8;
        let direct = cs_eval(&f, r, tau, 1.0, &at).expect("no coeff vars");
        let expect = (tau.sqrt() * r).sinh() / tau.sqrt();
        assert!((direct - expect).abs() < 1e-14);
        let neg = cs_eval(&f, r, -tau, 1.0, &at).expect("no coeff vars");
        let expect_neg = (tau.sqrt() * r).sin() / tau.sqrt();
        assert!((neg - expect_neg).abs() < 1e-14);
        let zero_atom = CSPoly::atom(
            CsMode::mixed(),
            Atom {
                s1_pow: 1,
                c1_pow: 1,
                ..Atom::default()
            },
        )
        .expect("mixed atom");
        let at_zero = cs_eval(&zero_atom, r, 0.0, 1.0, &at).expect("no coeff vars");
        assert!((at_zero - r).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let f = {
            let a = CSPoly::term(
                CsMode::mixed(),
                Atom {
                    r_pow: 1,
                    c1_pow: 2,
                    s2_pow: 1,
                    ..Atom::default()
                },
                MultiPoly::from_int(3),
            )
            .expect("mixed atom");
            let b = CSPoly::term(
                CsMode::mixed(),
                Atom {
                    s1_pow: 1,
                    c2_pow: 2,
                    ..Atom::default()
                },
                MultiPoly::from_int(-2),
            )
            .expect("mixed atom");
            a.add(&b)
        };
        let df = cs_derivative(&f, &tau1(), &tau2());
        let at = AssignmentF64::new().set("tau1", 0.7).set("tau2", -1.3);
        let (t1, t2) = (0.7, -1.3);
        let h = 1e-5;
        for r in [0.0, 0.4, 1.1] {
            let num = (cs_eval(&f, r + h, t1, t2, &at).expect("bound")
                - cs_eval(&f, r - h, t1, t2, &at).expect("bound"))
                / (2.0 * h);
            let sym = cs_eval(&df, r, t1, t2, &at).expect("bound");
            assert!((num - sym).abs() < 1e-6, "r={r}: {num} vs {sym}");
        }
    }

    #[test]
    fn specialization_commutes_with_differentiation() {
        let f = CSPoly::term(
            CsMode::mixed(),
            Atom {
                r_pow: 1,
                c1_pow: 1,
                s1_pow: 2,
                c2_pow: 1,
                ..Atom::default()
            },
            tau1().add(&tau2()),
        )
        .expect("mixed atom");
        let spec_then_diff = cs_derivative(
            &specialize_tau1_zero(&f, "tau1").expect("mixed input"),
            &MultiPoly::zero(),
            &tau2(),
        );
        let diff_then_spec =
            specialize_tau1_zero(&cs_derivative(&f, &tau1(), &tau2()), "tau1")
                .expect("mixed input");
        assert_eq!(spec_then_diff, diff_then_spec);
    }

    #[test]
    fn projection_roundtrip_mixed() {
        let atom = Atom {
            r_pow: 1,
            c1_pow: 1,
            s1_pow: 0,
            c2_pow: 0,
            s2_pow: 1,
        };
        let f = CSPoly::term(CsMode::mixed(), atom, tau2()).expect("mixed atom");
        let coeffs = project_graded(&f, 2, 2).expect("graded");
        assert_eq!(coeffs.len(), 8);
        assert_eq!(coeffs[4 + 0 * 2 + 1], tau2());
        let back = reconstruct_graded(&coeffs, 2, 2, CsMode::mixed()).expect("mixed");
        assert_eq!(back, f);
        let bad = CSPoly::atom(CsMode::mixed(), Atom::default()).expect("atom");
        assert!(matches!(
            project_graded(&bad, 2, 2),
            Err(CsError::GradingViolation(_))
        ));
    }

    #[test]
    fn projection_roundtrip_flat() {
        let atom = Atom {
            r_pow: 2,
            c2_pow: 1,
            ..Atom::default()
        };
        let f = CSPoly::term(CsMode::flat_first(), atom, MultiPoly::var("a11"))
            .expect("flat atom");
        let coeffs = project_graded(&f, 2, 2).expect("graded");
        assert_eq!(coeffs.len(), 6);
        assert_eq!(coeffs[2 * 2 + 0], MultiPoly::var("a11"));
        let back = reconstruct_graded(&coeffs, 2, 2, CsMode::flat_first()).expect("flat");
        assert_eq!(back, f);
    }

    #[test]
    fn scaling_and_rational_coefficients() {
        let f = s1().scale(&MultiPoly::constant(rat_int(4)));
        let g = f.sub(&s1().scale(&MultiPoly::constant(rat_int(4))));
        assert!(g.is_zero());
    }
}
