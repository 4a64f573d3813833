//! Seeded random words, contexts and polynomials.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::terms::{GenId, OmegaId, Operator, Polynomial, Prime, Rational, StarWord, Tag, Word};

pub struct Sampler {
    rng: StdRng,
    generators: u32,
    omega: u32,
    tags: Vec<Tag>,
    bracket_bias: f64,
}

impl Sampler {
    pub fn new(seed: u64, generators: u32, omega: u32, tags: &[Tag]) -> Self {
        assert!(generators > 0 && omega > 0 && !tags.is_empty());
        Sampler {
            rng: StdRng::seed_from_u64(seed),
            generators,
            omega,
            tags: tags.to_vec(),
            bracket_bias: 0.5,
        }
    }

    /// Probability that a new prime is a bracket rather than a generator.
    pub fn with_bracket_bias(mut self, p: f64) -> Self {
        self.bracket_bias = p;
        self
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    pub fn operator(&mut self) -> Operator {
        let tag = self.tags[self.rng.gen_range(0..self.tags.len())];
        Operator::new(tag, OmegaId(self.rng.gen_range(0..self.omega)))
    }

    /// A word of degree at most `max_deg`.
    pub fn word(&mut self, max_deg: u32) -> Word {
        self.word_between(0, max_deg)
    }

    /// A word whose degree lies in `min_deg..=max_deg`.
    pub fn word_between(&mut self, min_deg: u32, max_deg: u32) -> Word {
        let target = self.rng.gen_range(min_deg..=max_deg);
        self.word_of_budget(target)
    }

    fn word_of_budget(&mut self, mut budget: u32) -> Word {
        let mut primes = Vec::new();
        while budget > 0 {
            if !self.rng.gen_bool(self.bracket_bias) {
                primes.push(Prime::Gen(GenId(self.rng.gen_range(0..self.generators))));
                budget -= 1;
            } else {
                let inner_budget = self.rng.gen_range(0..budget);
                let inner = self.word_of_budget(inner_budget);
                let used = 1 + inner.deg();
                primes.push(Prime::Bracket(self.operator(), Arc::new(inner)));
                budget -= used;
            }
        }
        Word::from_primes(primes)
    }

    /// A context whose filled-in hole has degree at most `max_deg`.
    pub fn star_word(&mut self, max_deg: u32) -> StarWord {
        let w = self.word(max_deg.saturating_sub(1));
        let holed = self.insert_hole(&w);
        StarWord::new(holed).expect("exactly one hole")
    }

    fn insert_hole(&mut self, w: &Word) -> Word {
        let mut primes = w.primes().to_vec();
        let brackets: Vec<usize> = (0..primes.len())
            .filter(|&i| matches!(primes[i], Prime::Bracket(..)))
            .collect();
        if !brackets.is_empty() && self.rng.gen_bool(0.5) {
            let i = brackets[self.rng.gen_range(0..brackets.len())];
            if let Prime::Bracket(op, inner) = &primes[i] {
                primes[i] = Prime::Bracket(*op, Arc::new(self.insert_hole(inner)));
            }
        } else {
            let at = self.rng.gen_range(0..=primes.len());
            primes.insert(at, Prime::Hole);
        }
        Word::from_primes(primes)
    }

    /// A small nonzero rational such as `-3`, `2/5` or `1`.
    pub fn coefficient(&mut self) -> Rational {
        let mut n: i64 = self.rng.gen_range(1..=5);
        if self.rng.gen_bool(0.4) {
            n = -n;
        }
        let d: i64 = self.rng.gen_range(1..=3);
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Up to `max_terms` terms of degree at most `max_deg`; may be zero
    /// when terms cancel.
    pub fn polynomial(&mut self, max_terms: usize, max_deg: u32) -> Polynomial {
        self.polynomial_between(max_terms, 0, max_deg)
    }

    /// As [`Sampler::polynomial`], with term degrees in `min_deg..=max_deg`.
    pub fn polynomial_between(&mut self, max_terms: usize, min_deg: u32, max_deg: u32) -> Polynomial {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let mut p = Polynomial::zero();
        for _ in 0..n {
            let w = self.word_between(min_deg, max_deg);
            let c = self.coefficient();
            p.add_term(w, c);
        }
        p
    }
}
