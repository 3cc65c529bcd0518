//! Elements of a quadratic extension of the polynomial ring.
//!
//! # Design Notes
//!
//! An element is `base + radical_part * w` where `w` is a formal square
//! root of the `radicand` polynomial: products reduce via `w^2 = radicand`.
//! Mixing elements with different radicands is a programming error and
//! panics; the callers that need two radicals at once work in an explicit
//! biquadratic representation instead.

use super::poly::MultiPoly;
use super::Rational;
use std::fmt;

/// `base + radical_part * sqrt(radicand)` with polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadExtElem {
    /// Rational-part polynomial.
    pub base: MultiPoly,
    /// Coefficient of the formal square root.
    pub radical_part: MultiPoly,
    /// The polynomial whose square root is adjoined.
    pub radicand: MultiPoly,
}

impl QuadExtElem {
    /// Builds an element from its three components.
    pub fn new(base: MultiPoly, radical_part: MultiPoly, radicand: MultiPoly) -> QuadExtElem {
        QuadExtElem {
            base,
            radical_part,
            radicand,
        }
    }

    /// Embeds a plain polynomial (radical part zero).
    pub fn from_poly(base: MultiPoly, radicand: MultiPoly) -> QuadExtElem {
        QuadExtElem {
            base,
            radical_part: MultiPoly::zero(),
            radicand,
        }
    }

    /// The pure radical `sqrt(radicand)`.
    pub fn radical(radicand: MultiPoly) -> QuadExtElem {
        QuadExtElem {
            base: MultiPoly::zero(),
            radical_part: MultiPoly::one(),
            radicand,
        }
    }

    /// The zero element over the given radicand.
    pub fn zero(radicand: MultiPoly) -> QuadExtElem {
        QuadExtElem::from_poly(MultiPoly::zero(), radicand)
    }

    /// True if both components vanish.
    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.radical_part.is_zero()
    }

    fn check_same_radicand(&self, other: &QuadExtElem) {
        assert_eq!(
            self.radicand, other.radicand,
            "quadratic-extension elements have different radicands"
        );
    }

    /// Sum. Panics if the radicands differ.
    pub fn add(&self, other: &QuadExtElem) -> QuadExtElem {
        self.check_same_radicand(other);
        QuadExtElem {
            base: &self.base + &other.base,
            radical_part: &self.radical_part + &other.radical_part,
            radicand: self.radicand.clone(),
        }
    }

    /// Difference. Panics if the radicands differ.
    pub fn sub(&self, other: &QuadExtElem) -> QuadExtElem {
        self.add(&other.neg())
    }

    /// Additive inverse.
    pub fn neg(&self) -> QuadExtElem {
        QuadExtElem {
            base: self.base.neg(),
            radical_part: self.radical_part.neg(),
            radicand: self.radicand.clone(),
        }
    }

    /// Product, reducing `w^2` to the radicand. Panics if the radicands
    /// differ.
    pub fn mul(&self, other: &QuadExtElem) -> QuadExtElem {
        self.check_same_radicand(other);
        let cross = &(&self.base * &other.radical_part) + &(&self.radical_part * &other.base);
        let rad_sq = &(&self.radical_part * &other.radical_part) * &self.radicand;
        QuadExtElem {
            base: &(&self.base * &other.base) + &rad_sq,
            radical_part: cross,
            radicand: self.radicand.clone(),
        }
    }

    /// Scales both components by a polynomial.
    pub fn scale_poly(&self, p: &MultiPoly) -> QuadExtElem {
        QuadExtElem {
            base: &self.base * p,
            radical_part: &self.radical_part * p,
            radicand: self.radicand.clone(),
        }
    }

    /// Scales both components by a rational.
    pub fn scale(&self, c: &Rational) -> QuadExtElem {
        QuadExtElem {
            base: self.base.scale(c),
            radical_part: self.radical_part.scale(c),
            radicand: self.radicand.clone(),
        }
    }

    /// Conjugate: flips the sign of the radical part.
    pub fn conj(&self) -> QuadExtElem {
        QuadExtElem {
            base: self.base.clone(),
            radical_part: self.radical_part.neg(),
            radicand: self.radicand.clone(),
        }
    }

    /// Norm form `base^2 - radical_part^2 * radicand`, a plain polynomial.
    pub fn norm_form(&self) -> MultiPoly {
        &(&self.base * &self.base)
            - &(&(&self.radical_part * &self.radical_part) * &self.radicand)
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical_part.is_zero() {
            return f.write_str(&self.base.render());
        }
        write!(
            f,
            "({}) + ({})*sqrt({})",
            self.base.render(),
            self.radical_part.render(),
            self.radicand.render()
        )
    }
}
