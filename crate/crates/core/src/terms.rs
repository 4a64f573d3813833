//! Bracketed words of the free operated monoid over two tagged copies of
//! an index set Omega, one-hole contexts, and bracketed polynomials with
//! exact rational coefficients.
//!
//! Words are plain structural values: generators and Omega elements are
//! referred to by their declaration index, and a [`Signature`] maps indices
//! back to names.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Which of the two operator families a bracket belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    R,
    S,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::R => f.write_str("R"),
            Tag::S => f.write_str("S"),
        }
    }
}

/// Index of a generator in the alphabet; declaration order is the
/// generator order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenId(pub u32);

/// Index of an element of the Omega carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaId(pub u32);

impl OmegaId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A bracket operator `⌊·⌋_ω^tag`.
///
/// The derived order (Omega element first, then `R < S`) is the operator
/// order used by the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operator {
    pub omega: OmegaId,
    pub tag: Tag,
}

impl Operator {
    pub fn new(tag: Tag, omega: OmegaId) -> Self {
        Operator { omega, tag }
    }
}

/// A single factor of a word. `Hole` only occurs inside star words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prime {
    Hole,
    Gen(GenId),
    Bracket(Operator, Arc<Word>),
}

impl Prime {
    fn deg(&self) -> u32 {
        match self {
            Prime::Hole | Prime::Gen(_) => 1,
            Prime::Bracket(_, inner) => inner.deg + 1,
        }
    }

    fn holes(&self) -> u32 {
        match self {
            Prime::Hole => 1,
            Prime::Gen(_) => 0,
            Prime::Bracket(_, inner) => inner.holes,
        }
    }

    pub fn bracket(&self) -> Option<(Operator, &Word)> {
        match self {
            Prime::Bracket(op, inner) => Some((*op, inner)),
            _ => None,
        }
    }
}

/// An element of the free operated monoid: a finite sequence of primes.
/// The empty sequence is the identity `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    primes: Vec<Prime>,
    deg: u32,
    holes: u32,
}

impl Word {
    pub fn one() -> Self {
        Word::default()
    }

    pub fn gen(g: GenId) -> Self {
        Word::from_primes(vec![Prime::Gen(g)])
    }

    pub(crate) fn hole() -> Self {
        Word::from_primes(vec![Prime::Hole])
    }

    pub fn from_primes(primes: Vec<Prime>) -> Self {
        let deg = primes.iter().map(Prime::deg).sum();
        let holes = primes.iter().map(Prime::holes).sum();
        Word { primes, deg, holes }
    }

    /// `⌊u⌋_ω^tag` as a single-prime word.
    pub fn wrap(op: Operator, inner: Word) -> Self {
        Word::from_primes(vec![Prime::Bracket(op, Arc::new(inner))])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut primes = Vec::with_capacity(self.primes.len() + other.primes.len());
        primes.extend_from_slice(&self.primes);
        primes.extend_from_slice(&other.primes);
        Word {
            primes,
            deg: self.deg + other.deg,
            holes: self.holes + other.holes,
        }
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn into_primes(self) -> Vec<Prime> {
        self.primes
    }

    pub fn is_one(&self) -> bool {
        self.primes.is_empty()
    }

    /// Generator occurrences plus operator occurrences, at all depths.
    pub fn deg(&self) -> u32 {
        self.deg
    }

    /// Number of prime factors; `|1| = 0`.
    pub fn breadth(&self) -> usize {
        self.primes.len()
    }

    pub fn depth(&self) -> usize {
        self.primes
            .iter()
            .map(|p| match p {
                Prime::Bracket(_, inner) => inner.depth() + 1,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn hole_count(&self) -> u32 {
        self.holes
    }

    /// Replace the (unique) hole by `filler`. Words without a hole are
    /// returned unchanged.
    pub(crate) fn fill(&self, filler: &Word) -> Word {
        if self.holes == 0 {
            return self.clone();
        }
        let mut primes = Vec::with_capacity(self.primes.len() + filler.primes.len());
        for p in &self.primes {
            match p {
                Prime::Hole => primes.extend_from_slice(&filler.primes),
                Prime::Bracket(op, inner) if inner.holes > 0 => {
                    primes.push(Prime::Bracket(*op, Arc::new(inner.fill(filler))))
                }
                other => primes.push(other.clone()),
            }
        }
        Word::from_primes(primes)
    }

    /// Apply `f` to every generator occurrence, rebuilding the word.
    pub fn map_generators(&self, f: &impl Fn(GenId) -> GenId) -> Word {
        let primes = self
            .primes
            .iter()
            .map(|p| match p {
                Prime::Gen(g) => Prime::Gen(f(*g)),
                Prime::Bracket(op, inner) => {
                    Prime::Bracket(*op, Arc::new(inner.map_generators(f)))
                }
                Prime::Hole => Prime::Hole,
            })
            .collect();
        Word::from_primes(primes)
    }

    /// Visit every operator occurrence.
    pub fn for_each_operator(&self, f: &mut impl FnMut(Operator)) {
        for p in &self.primes {
            if let Prime::Bracket(op, inner) = p {
                f(*op);
                inner.for_each_operator(f);
            }
        }
    }

    /// Visit every generator occurrence.
    pub fn for_each_generator(&self, f: &mut impl FnMut(GenId)) {
        for p in &self.primes {
            match p {
                Prime::Gen(g) => f(*g),
                Prime::Bracket(_, inner) => inner.for_each_generator(f),
                Prime::Hole => {}
            }
        }
    }
}

/// A word with exactly one hole `★`, used as a substitution context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarWord(Word);

impl StarWord {
    pub fn new(w: Word) -> Result<Self> {
        match w.hole_count() {
            1 => Ok(StarWord(w)),
            n => Err(Error::HoleCount(n)),
        }
    }

    /// The bare context `★`.
    pub fn hole() -> Self {
        StarWord(Word::hole())
    }

    pub fn is_hole(&self) -> bool {
        self.0.primes.len() == 1 && self.0.primes[0] == Prime::Hole
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    /// `q|_u`.
    pub fn substitute_word(&self, u: &Word) -> Word {
        self.0.fill(u)
    }

    /// `q|_s = Σ c_i q|_{u_i}` for `s = Σ c_i u_i`.
    pub fn substitute(&self, s: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, c) in s.iter() {
            out.add_term(self.substitute_word(w), c.clone());
        }
        out
    }

    /// The context `q|_{q'}`: plug another context into this one's hole.
    pub fn compose(&self, inner: &StarWord) -> StarWord {
        StarWord(self.0.fill(&inner.0))
    }

    /// `left q right`.
    pub fn flank(&self, left: &Word, right: &Word) -> StarWord {
        StarWord(left.concat(&self.0).concat(right))
    }

    /// `⌊q⌋_ω^tag`.
    pub fn wrap(&self, op: Operator) -> StarWord {
        StarWord(Word::wrap(op, self.0.clone()))
    }
}

/// A finite formal sum of words with nonzero rational coefficients.
///
/// Terms are kept in ascending monomial order, so the last entry is the
/// leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Word, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn monomial(w: Word) -> Self {
        Polynomial::term(w, Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(Word::one(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Rational> {
        self.terms.get(w)
    }

    /// Terms in ascending monomial order.
    pub fn iter(&self) -> btree_map::Iter<'_, Word, Rational> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    /// The largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, Rational)> {
        self.terms.pop_last()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, d) in other.iter() {
            self.add_term(w.clone(), d * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Concatenation product extended bilinearly.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (u, a) in self.iter() {
            for (v, b) in other.iter() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn mul_word_right(&self, w: &Word) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(u, c)| (u.concat(w), c.clone())).collect(),
        }
    }

    pub fn mul_word_left(&self, w: &Word) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(u, c)| (w.concat(u), c.clone())).collect(),
        }
    }

    /// Apply the bracket operator linearly.
    pub fn wrap(&self, op: Operator) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(u, c)| (Word::wrap(op, u.clone()), c.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(Word, Rational)> for Polynomial {
    fn from_iter<I: IntoIterator<Item = (Word, Rational)>>(iter: I) -> Self {
        let mut p = Polynomial::zero();
        for (w, c) in iter {
            p.add_term(w, c);
        }
        p
    }
}

impl From<Word> for Polynomial {
    fn from(w: Word) -> Self {
        Polynomial::monomial(w)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

/// Names for generators and Omega elements, and the operator tags a
/// system admits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub generators: Vec<String>,
    pub omega: Vec<String>,
    pub tags: Vec<Tag>,
}

impl Signature {
    pub fn new(generators: Vec<String>, omega: Vec<String>, tags: Vec<Tag>) -> Result<Self> {
        check_unique(&generators)?;
        check_unique(&omega)?;
        Ok(Signature {
            generators,
            omega,
            tags,
        })
    }

    pub fn generator(&self, name: &str) -> Result<GenId> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| GenId(i as u32))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn omega_id(&self, name: &str) -> Result<OmegaId> {
        self.omega
            .iter()
            .position(|g| g == name)
            .map(|i| OmegaId(i as u32))
            .ok_or_else(|| Error::UnknownOmega(name.to_string()))
    }

    pub fn operator(&self, tag: Tag, omega: &str) -> Result<Operator> {
        if !self.tags.contains(&tag) {
            return Err(Error::TagNotAvailable(tag));
        }
        Ok(Operator::new(tag, self.omega_id(omega)?))
    }

    /// `wrap` by name: rejects Omega names outside the carrier.
    pub fn wrap(&self, tag: Tag, omega: &str, u: Word) -> Result<Word> {
        Ok(Word::wrap(self.operator(tag, omega)?, u))
    }

    pub fn generator_name(&self, g: GenId) -> &str {
        &self.generators[g.0 as usize]
    }

    pub fn omega_name(&self, w: OmegaId) -> &str {
        &self.omega[w.index()]
    }

    /// Append `count` generators whose names do not clash with existing
    /// ones, returning their ids.
    pub fn add_fresh_generators(&mut self, count: usize) -> Vec<GenId> {
        (1..=count)
            .map(|i| {
                let mut name = format!("x{i}");
                while self.generators.contains(&name) {
                    name.push('\'');
                }
                self.generators.push(name);
                GenId(self.generators.len() as u32 - 1)
            })
            .collect()
    }
}

fn check_unique(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// All words with `deg ≤ max_deg` over `generators` generators and the
/// operators `⌊·⌋_ω^t` for `ω < omega_count`, `t ∈ tags`, sorted by the
/// monomial order. Fails once more than `cap` words would be produced.
pub fn enumerate_words(
    generators: u32,
    omega_count: u32,
    tags: &[Tag],
    max_deg: usize,
    cap: usize,
) -> Result<Vec<Word>> {
    // by_deg[d]: all words of degree exactly d
    let mut by_deg: Vec<Vec<Word>> = vec![vec![Word::one()]];
    // primes_by_deg[d]: all prime words of degree exactly d
    let mut primes_by_deg: Vec<Vec<Prime>> = vec![Vec::new()];
    let mut total = 1usize;
    for d in 1..=max_deg {
        let mut primes = Vec::new();
        if d == 1 {
            primes.extend((0..generators).map(|g| Prime::Gen(GenId(g))));
        }
        for w in 0..omega_count {
            for &tag in tags {
                let op = Operator::new(tag, OmegaId(w));
                for inner in &by_deg[d - 1] {
                    primes.push(Prime::Bracket(op, Arc::new(inner.clone())));
                }
            }
        }
        primes_by_deg.push(primes);

        // unique factorisation: first prime of degree k, then a word of degree d-k
        let mut words = Vec::new();
        for k in 1..=d {
            for first in &primes_by_deg[k] {
                for rest in &by_deg[d - k] {
                    if total + words.len() >= cap {
                        return Err(Error::EnumerationOverflow { degree: d, cap });
                    }
                    let mut primes = Vec::with_capacity(rest.breadth() + 1);
                    primes.push(first.clone());
                    primes.extend_from_slice(rest.primes());
                    words.push(Word::from_primes(primes));
                }
            }
        }
        total += words.len();
        by_deg.push(words);
    }
    let mut all: Vec<Word> = by_deg.into_iter().flatten().collect();
    all.sort();
    Ok(all)
}
