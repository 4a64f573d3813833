//! The degree-breadth monomial order on bracketed words.
//!
//! Words compare by `(deg, breadth, u_1, …, u_n)` lexicographically. Primes
//! compare generator-by-generator in declaration order, every generator is
//! below every bracket, and brackets compare by `(operator, inner word)`
//! with the inner word compared recursively. Operators are ordered by Omega
//! declaration order first and then `R < S`.

use std::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::terms::{Polynomial, Prime, Rational, Word};

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| self.breadth().cmp(&other.breadth()))
            .then_with(|| self.primes().cmp(other.primes()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `wt(u) = (deg(u), |u|, u_1, …, u_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightTuple {
    pub deg: u32,
    pub breadth: usize,
    pub primes: Vec<Prime>,
}

pub fn weight(u: &Word) -> WeightTuple {
    WeightTuple {
        deg: u.deg(),
        breadth: u.breadth(),
        primes: u.primes().to_vec(),
    }
}

pub fn compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

pub fn leading_monomial(p: &Polynomial) -> Result<(Word, Rational)> {
    p.leading()
        .map(|(w, c)| (w.clone(), c.clone()))
        .ok_or(Error::ZeroPolynomial)
}

/// Divide by the leading coefficient.
pub fn make_monic(p: &Polynomial) -> Result<Polynomial> {
    let (_, c) = leading_monomial(p)?;
    if c.is_one() {
        return Ok(p.clone());
    }
    Ok(p.scale(&c.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{GenId, OmegaId, Operator, Tag};
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }
    fn x() -> Word {
        Word::gen(GenId(0))
    }
    fn y() -> Word {
        Word::gen(GenId(1))
    }
    fn br(tag: Tag, w: u32, inner: Word) -> Word {
        Word::wrap(Operator::new(tag, OmegaId(w)), inner)
    }

    #[test]
    fn degree_dominates() {
        assert_eq!(compare(&x(), &x().concat(&x())), Ordering::Less);
    }

    #[test]
    fn breadth_breaks_degree_ties() {
        // ⌊⌊x⌋_a y⌋_b < ⌊x⌋_a ⌊y⌋_b
        let a = 0;
        let b = 1;
        let nested = br(Tag::R, b, br(Tag::R, a, x()).concat(&y()));
        let flat = br(Tag::R, a, x()).concat(&br(Tag::R, b, y()));
        assert_eq!(nested.deg(), flat.deg());
        assert_eq!(compare(&nested, &flat), Ordering::Less);
    }

    #[test]
    fn generator_below_bracket() {
        assert_eq!(compare(&x(), &br(Tag::R, 0, Word::one())), Ordering::Less);
    }

    #[test]
    fn operator_order_is_omega_then_tag() {
        let r0 = br(Tag::R, 0, x());
        let s0 = br(Tag::S, 0, x());
        let r1 = br(Tag::R, 1, x());
        assert!(r0 < s0);
        assert!(s0 < r1);
    }

    #[test]
    fn leading_monomial_of_rule_shape() {
        let lead = br(Tag::R, 0, x()).concat(&br(Tag::R, 0, y()));
        let t1 = br(Tag::R, 0, br(Tag::R, 0, x()).concat(&y()));
        let t2 = br(Tag::R, 0, x().concat(&br(Tag::S, 0, y())));
        let mut p = Polynomial::monomial(lead.clone());
        p.add_term(t1, -Rational::one());
        p.add_term(t2, -Rational::one());
        assert_eq!(leading_monomial(&p).unwrap(), (lead, Rational::one()));
    }

    #[test]
    fn leading_monomial_simple_cases() {
        let p = Polynomial::term(x(), q(5, 1));
        assert_eq!(leading_monomial(&p).unwrap(), (x(), q(5, 1)));
        let mut p = Polynomial::monomial(x().concat(&y()));
        p.add_term(y().concat(&x()), q(1, 1));
        assert_eq!(leading_monomial(&p).unwrap().0, y().concat(&x()));
        assert!(matches!(
            leading_monomial(&Polynomial::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn make_monic_scales() {
        // 3y − 3x with y > x
        let mut p = Polynomial::term(y(), q(3, 1));
        p.add_term(x(), q(-3, 1));
        let m = make_monic(&p).unwrap();
        let mut expected = Polynomial::monomial(y());
        expected.add_term(x(), q(-1, 1));
        assert_eq!(m, expected);
        assert_eq!(make_monic(&m).unwrap(), m);

        let lead = br(Tag::R, 0, x()).concat(&br(Tag::R, 0, y()));
        let low = br(Tag::R, 0, x().concat(&y()));
        let mut p = Polynomial::term(lead.clone(), q(-1, 2));
        p.add_term(low.clone(), q(1, 1));
        let mut expected = Polynomial::monomial(lead);
        expected.add_term(low, q(-2, 1));
        assert_eq!(make_monic(&p).unwrap(), expected);
        assert!(make_monic(&Polynomial::zero()).is_err());
    }

    #[test]
    fn weight_tuple_matches_word_order() {
        let a = br(Tag::R, 0, x());
        let b = x().concat(&y());
        assert_eq!(weight(&a).cmp(&weight(&b)), a.cmp(&b));
    }
}
