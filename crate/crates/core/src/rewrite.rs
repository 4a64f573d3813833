//! Reduction of bracketed polynomials modulo a rule system.
//!
//! Every rule has leading monomial `⌊u⌋_α^Q ⌊v⌋_β^Q`, so a redex is any pair
//! of adjacent brackets carrying the same tag, at any depth. A step
//! replaces `c·q|_{lead}` by `c·q|_{lead − rule}`, which only introduces
//! strictly smaller monomials.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::systems::{RuleId, RuleSystem};
use crate::terms::{OmegaId, Polynomial, Prime, Rational, StarWord, Tag, Word};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Rewrite inside the largest reducible monomial, outermost-leftmost
    /// redex first.
    #[default]
    MaxMonomial,
    /// Rewrite inside the smallest reducible monomial, at the deepest redex
    /// (leftmost among the deepest).
    LeftmostInnermost,
    /// Pick the monomial and the redex uniformly at random.
    SeededRandom(u64),
}

impl Strategy {
    pub fn from_name(name: &str, seed: u64) -> std::result::Result<Self, String> {
        match name {
            "max-monomial" => Ok(Strategy::MaxMonomial),
            "leftmost-innermost" => Ok(Strategy::LeftmostInnermost),
            "random" | "seeded-random" => Ok(Strategy::SeededRandom(seed)),
            other => Err(format!(
                "unknown strategy `{other}` (expected max-monomial, leftmost-innermost or random)"
            )),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Strategy::from_name(s, 0)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::MaxMonomial => f.write_str("max-monomial"),
            Strategy::LeftmostInnermost => f.write_str("leftmost-innermost"),
            Strategy::SeededRandom(seed) => write!(f, "random(seed {seed})"),
        }
    }
}

/// An occurrence of a rule's leading monomial inside a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    /// The word with the matched pair replaced by `★`.
    pub context: StarWord,
    pub tag: Tag,
    pub alpha: OmegaId,
    pub beta: OmegaId,
    pub u: Word,
    pub v: Word,
    /// Number of enclosing brackets.
    pub depth: usize,
}

impl Redex {
    pub fn rule_id(&self, sys: &RuleSystem) -> RuleId {
        sys.rule_id(self.alpha, self.beta, self.tag)
    }

    /// `⌊u⌋_α^Q ⌊v⌋_β^Q`
    pub fn matched(&self) -> Word {
        use crate::terms::Operator;
        Word::wrap(Operator::new(self.tag, self.alpha), self.u.clone())
            .concat(&Word::wrap(Operator::new(self.tag, self.beta), self.v.clone()))
    }
}

/// Location of a redex: bracket indices to descend through, then the index
/// of the left prime of the pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Site {
    path: Vec<usize>,
    index: usize,
}

fn collect_sites(w: &Word, sys: &RuleSystem, path: &mut Vec<usize>, out: &mut Vec<Site>) {
    let primes = w.primes();
    for i in 0..primes.len() {
        if i + 1 < primes.len() {
            if let (Some((a, _)), Some((b, _))) = (primes[i].bracket(), primes[i + 1].bracket()) {
                if a.tag == b.tag && sys.has_tag(a.tag) {
                    out.push(Site {
                        path: path.to_vec(),
                        index: i,
                    });
                }
            }
        }
    }
    for (i, p) in primes.iter().enumerate() {
        if let Prime::Bracket(_, inner) = p {
            path.push(i);
            collect_sites(inner, sys, path, out);
            path.pop();
        }
    }
}

/// Sites sorted outermost first, then left to right.
fn sites(w: &Word, sys: &RuleSystem) -> Vec<Site> {
    let mut out = Vec::new();
    collect_sites(w, sys, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.path.len().cmp(&b.path.len()).then_with(|| a.cmp(b)));
    out
}

/// Leftmost redex among the top-level primes of `w`, which sits at `path`.
fn first_site(w: &Word, sys: &RuleSystem, path: &[usize]) -> Option<Site> {
    let primes = w.primes();
    for i in 0..primes.len().saturating_sub(1) {
        if let (Some((a, _)), Some((b, _))) = (primes[i].bracket(), primes[i + 1].bracket()) {
            if a.tag == b.tag && sys.has_tag(a.tag) {
                return Some(Site {
                    path: path.to_vec(),
                    index: i,
                });
            }
        }
    }
    None
}

fn has_redex(w: &Word, sys: &RuleSystem) -> bool {
    let primes = w.primes();
    for i in 0..primes.len() {
        if let Some((a, inner)) = primes[i].bracket() {
            if let Some((b, _)) = primes.get(i + 1).and_then(Prime::bracket) {
                if a.tag == b.tag && sys.has_tag(a.tag) {
                    return true;
                }
            }
            if has_redex(inner, sys) {
                return true;
            }
        }
    }
    false
}

/// Outermost-leftmost redex without materialising all of them.
fn outermost_site(w: &Word, sys: &RuleSystem) -> Option<Site> {
    let mut level: Vec<(Vec<usize>, &Word)> = vec![(Vec::new(), w)];
    while !level.is_empty() {
        let mut found: Option<Site> = None;
        for (path, word) in &level {
            if let Some(s) = first_site(word, sys, path) {
                if found.as_ref().is_none_or(|f| s < *f) {
                    found = Some(s);
                }
            }
        }
        if found.is_some() {
            return found;
        }
        let mut next = Vec::new();
        for (path, word) in &level {
            for (i, p) in word.primes().iter().enumerate() {
                if let Prime::Bracket(_, inner) = p {
                    let mut np = path.clone();
                    np.push(i);
                    next.push((np, &**inner));
                }
            }
        }
        level = next;
    }
    None
}

fn build_redex(w: &Word, site: &Site) -> Redex {
    fn go(w: &Word, path: &[usize], index: usize) -> (Word, Prime, Prime) {
        let primes = w.primes();
        match path.split_first() {
            None => {
                let mut ctx = Vec::with_capacity(primes.len() - 1);
                ctx.extend_from_slice(&primes[..index]);
                ctx.push(Prime::Hole);
                ctx.extend_from_slice(&primes[index + 2..]);
                (
                    Word::from_primes(ctx),
                    primes[index].clone(),
                    primes[index + 1].clone(),
                )
            }
            Some((&i, rest)) => {
                let Prime::Bracket(op, inner) = &primes[i] else {
                    unreachable!("site path runs through brackets")
                };
                let (inner_ctx, a, b) = go(inner, rest, index);
                let mut ctx = primes.to_vec();
                ctx[i] = Prime::Bracket(*op, Arc::new(inner_ctx));
                (Word::from_primes(ctx), a, b)
            }
        }
    }
    let (ctx, a, b) = go(w, &site.path, site.index);
    let (Prime::Bracket(op_a, u), Prime::Bracket(op_b, v)) = (a, b) else {
        unreachable!("a site is a pair of brackets")
    };
    Redex {
        context: StarWord::new(ctx).expect("one hole"),
        tag: op_a.tag,
        alpha: op_a.omega,
        beta: op_b.omega,
        u: (*u).clone(),
        v: (*v).clone(),
        depth: site.path.len(),
    }
}

/// Every redex of `w`, outermost first and left to right within a depth.
pub fn find_redexes(w: &Word, sys: &RuleSystem) -> Vec<Redex> {
    sites(w, sys).iter().map(|s| build_redex(w, s)).collect()
}

/// Whether `w` contains no leading monomial of any rule.
pub fn is_irreducible(w: &Word, sys: &RuleSystem) -> bool {
    !has_redex(w, sys)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The monomial `q|_{s̄}` that was rewritten.
    pub monomial: Word,
    pub coeff: Rational,
    pub redex: Redex,
    pub rule: RuleId,
}

impl TraceStep {
    /// `coeff · q|_s` for the step's rule `s`: the amount removed from the
    /// polynomial.
    pub fn removed(&self, sys: &RuleSystem) -> Polynomial {
        let r = &self.redex;
        let rule = sys.rule(r.alpha, r.beta, r.tag, &r.u, &r.v);
        r.context.substitute(&rule).scale(&self.coeff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub input: Polynomial,
    pub steps: Vec<TraceStep>,
    pub normal_form: Polynomial,
}

impl ReductionTrace {
    /// Subtract every step's removed term from the input.
    pub fn replay(&self, sys: &RuleSystem) -> Polynomial {
        let mut p = self.input.clone();
        for s in &self.steps {
            p = &p - &s.removed(sys);
        }
        p
    }
}

fn apply_step(p: &mut Polynomial, w: &Word, c: &Rational, redex: &Redex, sys: &RuleSystem) {
    let tail = sys.rule_tail(redex.alpha, redex.beta, redex.tag, &redex.u, &redex.v);
    p.add_scaled(&redex.context.substitute(&tail), c);
    p.add_term(w.clone(), -c.clone());
}

/// Reduction driver: strategy, step budget, and whether to keep a trace.
#[derive(Clone, Debug)]
pub struct Reducer<'a> {
    sys: &'a RuleSystem,
    strategy: Strategy,
    budget: usize,
}

impl<'a> Reducer<'a> {
    pub fn new(sys: &'a RuleSystem) -> Self {
        Reducer {
            sys,
            strategy: Strategy::MaxMonomial,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn system(&self) -> &RuleSystem {
        self.sys
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        self.run(p, false).map(|t| t.normal_form)
    }

    pub fn normal_form_traced(&self, p: &Polynomial) -> Result<ReductionTrace> {
        self.run(p, true)
    }

    /// Normal form of the concatenation product.
    pub fn product(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        self.normal_form(&a.mul(b))
    }

    fn run(&self, p: &Polynomial, record: bool) -> Result<ReductionTrace> {
        match self.strategy {
            Strategy::MaxMonomial => self.run_max(p, record),
            _ => self.run_general(p, record),
        }
    }

    fn over_budget(&self, input: &Polynomial, steps: Vec<TraceStep>, current: Polynomial) -> Error {
        Error::BudgetExceeded {
            budget: self.budget,
            partial: Box::new(ReductionTrace {
                input: input.clone(),
                steps,
                normal_form: current,
            }),
        }
    }

    // Monomials are taken from `todo` in descending order. A rewrite only
    // adds monomials below the one being rewritten, so anything already
    // moved to `done` is final and larger than all later additions.
    fn run_max(&self, p: &Polynomial, record: bool) -> Result<ReductionTrace> {
        let mut todo = p.clone();
        let mut done = Polynomial::zero();
        let mut steps = Vec::new();
        let mut count = 0usize;
        while let Some((w, c)) = todo.pop_leading() {
            let Some(site) = outermost_site(&w, self.sys) else {
                done.add_term(w, c);
                continue;
            };
            if count == self.budget {
                todo.add_term(w, c);
                let current = &todo + &done;
                return Err(self.over_budget(p, steps, current));
            }
            count += 1;
            let redex = build_redex(&w, &site);
            let tail = self
                .sys
                .rule_tail(redex.alpha, redex.beta, redex.tag, &redex.u, &redex.v);
            todo.add_scaled(&redex.context.substitute(&tail), &c);
            if record {
                steps.push(TraceStep {
                    rule: redex.rule_id(self.sys),
                    monomial: w,
                    coeff: c,
                    redex,
                });
            }
        }
        Ok(ReductionTrace {
            input: p.clone(),
            steps,
            normal_form: done,
        })
    }

    fn run_general(&self, p: &Polynomial, record: bool) -> Result<ReductionTrace> {
        let mut rng = match self.strategy {
            Strategy::SeededRandom(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        };
        let mut cur = p.clone();
        let mut steps = Vec::new();
        let mut count = 0usize;
        while let Some((w, c, redex)) = self.select(&cur, rng.as_mut()) {
            if count == self.budget {
                return Err(self.over_budget(p, steps, cur));
            }
            count += 1;
            apply_step(&mut cur, &w, &c, &redex, self.sys);
            if record {
                steps.push(TraceStep {
                    rule: redex.rule_id(self.sys),
                    monomial: w,
                    coeff: c,
                    redex,
                });
            }
        }
        Ok(ReductionTrace {
            input: p.clone(),
            steps,
            normal_form: cur,
        })
    }

    fn select(&self, p: &Polynomial, rng: Option<&mut StdRng>) -> Option<(Word, Rational, Redex)> {
        let sys = self.sys;
        match self.strategy {
            Strategy::MaxMonomial => {
                let (w, c) = p.iter().rev().find(|(w, _)| has_redex(w, sys))?;
                let site = outermost_site(w, sys)?;
                Some((w.clone(), c.clone(), build_redex(w, &site)))
            }
            Strategy::LeftmostInnermost => {
                let (w, c) = p.iter().find(|(w, _)| has_redex(w, sys))?;
                let all = sites(w, sys);
                let deepest = all.iter().map(|s| s.path.len()).max()?;
                let site = all.iter().find(|s| s.path.len() == deepest)?;
                Some((w.clone(), c.clone(), build_redex(w, site)))
            }
            Strategy::SeededRandom(_) => {
                let rng = rng.expect("random strategy carries an rng");
                let candidates: Vec<_> = p.iter().filter(|(w, _)| has_redex(w, sys)).collect();
                if candidates.is_empty() {
                    return None;
                }
                let (w, c) = candidates[rng.gen_range(0..candidates.len())];
                let all = sites(w, sys);
                let site = &all[rng.gen_range(0..all.len())];
                Some((w.clone(), c.clone(), build_redex(w, site)))
            }
        }
    }

    /// One rewrite step, or `None` if `p` is already normal.
    pub fn reduce_once(&self, p: &Polynomial) -> Option<(Polynomial, TraceStep)> {
        let mut rng = match self.strategy {
            Strategy::SeededRandom(seed) => Some(StdRng::seed_from_u64(seed)),
            _ => None,
        };
        let (w, c, redex) = self.select(p, rng.as_mut())?;
        let mut out = p.clone();
        apply_step(&mut out, &w, &c, &redex, self.sys);
        let step = TraceStep {
            rule: redex.rule_id(self.sys),
            monomial: w,
            coeff: c,
            redex,
        };
        Some((out, step))
    }
}

pub fn reduce_once(
    p: &Polynomial,
    sys: &RuleSystem,
    strategy: Strategy,
) -> Option<(Polynomial, TraceStep)> {
    Reducer::new(sys).with_strategy(strategy).reduce_once(p)
}

/// Normal form with the default step budget, and its trace.
pub fn normal_form(
    p: &Polynomial,
    sys: &RuleSystem,
    strategy: Strategy,
) -> Result<(Polynomial, ReductionTrace)> {
    let trace = Reducer::new(sys).with_strategy(strategy).normal_form_traced(p)?;
    Ok((trace.normal_form.clone(), trace))
}

/// The product of the quotient algebra, realised on irreducible words.
pub fn product(a: &Polynomial, b: &Polynomial, sys: &RuleSystem, strategy: Strategy) -> Result<Polynomial> {
    Reducer::new(sys).with_strategy(strategy).product(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCensus {
    /// `counts[d]` = number of irreducible words of degree `d`.
    pub counts: Vec<u128>,
    /// The same counts obtained by enumerating and filtering, if requested.
    pub enumerated: Option<Vec<u128>>,
}

impl BasisCensus {
    pub fn agrees(&self) -> bool {
        self.enumerated.as_ref().is_none_or(|e| *e == self.counts)
    }
}

/// Count irreducible words per degree by a recurrence over the last prime.
///
/// A word is irreducible iff every bracket content is irreducible and no
/// two adjacent brackets share a tag.
pub fn irreducible_counts(generators: u32, sys: &RuleSystem, max_deg: usize) -> Result<Vec<u128>> {
    let omega = sys.omega().size() as u128;
    let tags = sys.tags();
    // ending[d][0] = ends in a generator or is empty; ending[d][1 + t] = ends in a tag-t bracket
    let mut ending: Vec<Vec<u128>> = Vec::with_capacity(max_deg + 1);
    let mut total: Vec<u128> = Vec::with_capacity(max_deg + 1);
    let mut first = vec![0u128; tags.len() + 1];
    first[0] = 1;
    ending.push(first);
    total.push(1);
    let overflow = |d: usize| Error::CountOverflow(d);
    for d in 1..=max_deg {
        let mut row = vec![0u128; tags.len() + 1];
        row[0] = total[d - 1]
            .checked_mul(generators as u128)
            .ok_or_else(|| overflow(d))?;
        for (t, _) in tags.iter().enumerate() {
            let mut acc = 0u128;
            for k in 1..=d {
                let brackets = omega.checked_mul(total[k - 1]).ok_or_else(|| overflow(d))?;
                let compatible = total[d - k] - ending[d - k][1 + t];
                let add = brackets.checked_mul(compatible).ok_or_else(|| overflow(d))?;
                acc = acc.checked_add(add).ok_or_else(|| overflow(d))?;
            }
            row[1 + t] = acc;
        }
        let sum = row
            .iter()
            .try_fold(0u128, |a, &b| a.checked_add(b))
            .ok_or_else(|| overflow(d))?;
        ending.push(row);
        total.push(sum);
    }
    Ok(total)
}

pub const DEFAULT_ENUMERATION_CAP: usize = 5_000_000;

pub fn basis_census(
    generators: u32,
    sys: &RuleSystem,
    max_deg: usize,
    cross_check: bool,
) -> Result<BasisCensus> {
    let counts = irreducible_counts(generators, sys, max_deg)?;
    let enumerated = if cross_check {
        let words = crate::terms::enumerate_words(
            generators,
            sys.omega().size() as u32,
            sys.tags(),
            max_deg,
            DEFAULT_ENUMERATION_CAP,
        )?;
        let mut tally = vec![0u128; max_deg + 1];
        for w in words.iter().filter(|w| is_irreducible(w, sys)) {
            tally[w.deg() as usize] += 1;
        }
        Some(tally)
    } else {
        None
    };
    Ok(BasisCensus { counts, enumerated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::matching_structure;
    use crate::terms::{GenId, Operator};
    use num_bigint::BigInt;
    use num_traits::One;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn x() -> Word {
        Word::gen(GenId(0))
    }
    fn y() -> Word {
        Word::gen(GenId(1))
    }
    fn z() -> Word {
        Word::gen(GenId(2))
    }
    fn br(tag: Tag, w: u32, inner: Word) -> Word {
        Word::wrap(Operator::new(tag, OmegaId(w)), inner)
    }
    fn r(inner: Word) -> Word {
        br(Tag::R, 0, inner)
    }
    fn s(inner: Word) -> Word {
        br(Tag::S, 0, inner)
    }
    fn poly(terms: &[(Word, i64)]) -> Polynomial {
        terms.iter().map(|(w, c)| (w.clone(), q(*c))).collect()
    }

    #[test]
    fn no_redexes_in_plain_or_mixed_words() {
        let sys = RuleSystem::rbs();
        assert!(find_redexes(&x().concat(&y()), &sys).is_empty());
        assert!(find_redexes(&r(x()).concat(&s(y())), &sys).is_empty());
        assert!(is_irreducible(&r(x()).concat(&s(y())), &sys));
        assert!(!is_irreducible(&r(x()).concat(&r(y())), &sys));
        assert!(!is_irreducible(&r(s(x()).concat(&s(y()))), &sys));
    }

    #[test]
    fn nested_redex_context() {
        let sys = RuleSystem::rbs();
        let w = s(r(Word::one()).concat(&r(Word::one())).concat(&z()));
        let found = find_redexes(&w, &sys);
        assert_eq!(found.len(), 1);
        let rd = &found[0];
        assert_eq!(rd.depth, 1);
        assert_eq!(rd.tag, Tag::R);
        let expected_ctx = s(Word::hole().concat(&z()));
        assert_eq!(rd.context.as_word(), &expected_ctx);
        assert_eq!(rd.context.substitute_word(&rd.matched()), w);
    }

    #[test]
    fn single_rbs_step() {
        let sys = RuleSystem::rbs();
        let p = Polynomial::monomial(r(x()).concat(&r(y())));
        let (out, step) = reduce_once(&p, &sys, Strategy::MaxMonomial).unwrap();
        assert_eq!(out, poly(&[(r(r(x()).concat(&y())), 1), (r(x().concat(&s(y()))), 1)]));
        assert_eq!(step.coeff, Rational::one());
        assert!(reduce_once(&Polynomial::monomial(x()), &sys, Strategy::MaxMonomial).is_none());

        let p = poly(&[(s(x()).concat(&s(y())), 2)]);
        let (out, _) = reduce_once(&p, &sys, Strategy::MaxMonomial).unwrap();
        assert_eq!(out, poly(&[(s(r(x()).concat(&y())), 2), (s(x().concat(&s(y()))), 2)]));
    }

    #[test]
    fn normal_form_of_rbs_product() {
        let sys = RuleSystem::rbs();
        let (nf, trace) =
            normal_form(&Polynomial::monomial(r(x()).concat(&r(y()))), &sys, Strategy::MaxMonomial)
                .unwrap();
        assert_eq!(nf, poly(&[(r(r(x()).concat(&y())), 1), (r(x().concat(&s(y()))), 1)]));
        assert_eq!(trace.steps.len(), 1);

        let w = r(x()).concat(&s(y()));
        let (nf, trace) = normal_form(&Polynomial::monomial(w.clone()), &sys, Strategy::MaxMonomial).unwrap();
        assert_eq!(nf, Polynomial::monomial(w));
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn triple_unit_product_agrees_across_strategies() {
        let sys = RuleSystem::rbs();
        let one = r(Word::one());
        let p = Polynomial::monomial(one.concat(&one).concat(&one));
        let a = normal_form(&p, &sys, Strategy::MaxMonomial).unwrap().0;
        let b = normal_form(&p, &sys, Strategy::LeftmostInnermost).unwrap().0;
        let c = normal_form(&p, &sys, Strategy::SeededRandom(7)).unwrap().0;
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(a.len() >= 5);
        assert!(a.monomials().all(|w| is_irreducible(w, &sys)));
    }

    #[test]
    fn budget_overflow_is_an_error() {
        let sys = RuleSystem::rbs();
        let one = r(Word::one());
        let p = Polynomial::monomial(one.concat(&one).concat(&one));
        let err = Reducer::new(&sys).with_budget(1).normal_form_traced(&p).unwrap_err();
        match err {
            Error::BudgetExceeded { budget, partial } => {
                assert_eq!(budget, 1);
                assert_eq!(partial.steps.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = Reducer::new(&sys)
            .with_budget(1)
            .with_strategy(Strategy::LeftmostInnermost)
            .normal_form(&p);
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn products() {
        let sys = RuleSystem::rbs();
        let px = Polynomial::monomial(x());
        let py = Polynomial::monomial(y());
        assert_eq!(product(&px, &py, &sys, Strategy::MaxMonomial).unwrap(), Polynomial::monomial(x().concat(&y())));
        let rx = Polynomial::monomial(r(x()));
        let ry = Polynomial::monomial(r(y()));
        assert_eq!(
            product(&rx, &ry, &sys, Strategy::MaxMonomial).unwrap(),
            poly(&[(r(r(x()).concat(&y())), 1), (r(x().concat(&s(y()))), 1)])
        );

        let names = vec!["a".to_string(), "b".to_string()];
        let m = RuleSystem::mrbs(names).unwrap();
        let ax = Polynomial::monomial(br(Tag::R, 0, x()));
        let by = Polynomial::monomial(br(Tag::R, 1, y()));
        let expected = poly(&[
            (br(Tag::R, 1, br(Tag::R, 0, x()).concat(&y())), 1),
            (br(Tag::R, 0, x().concat(&br(Tag::S, 1, y()))), 1),
        ]);
        assert_eq!(product(&ax, &by, &m, Strategy::MaxMonomial).unwrap(), expected);
    }

    #[test]
    fn trace_replays_to_normal_form() {
        let sys = RuleSystem::orbs(matching_structure(vec!["a".into(), "b".into()]).unwrap()).unwrap();
        let w = br(Tag::R, 0, x())
            .concat(&br(Tag::R, 1, y()))
            .concat(&br(Tag::R, 0, Word::one()));
        let p = poly(&[(w, 3), (br(Tag::S, 1, x()).concat(&br(Tag::S, 0, x())), -2)]);
        let (nf, trace) = normal_form(&p, &sys, Strategy::MaxMonomial).unwrap();
        assert_eq!(trace.replay(&sys), nf);
        for pair in trace.steps.windows(2) {
            assert!(pair[0].monomial > pair[1].monomial);
        }
    }

    #[test]
    fn census_small_degrees() {
        let sys = RuleSystem::rbs();
        let c = basis_census(1, &sys, 4, true).unwrap();
        assert_eq!(&c.counts[..3], &[1, 3, 13]);
        assert!(c.agrees());
    }

    #[test]
    fn strategy_names() {
        assert_eq!(Strategy::from_name("random", 9).unwrap(), Strategy::SeededRandom(9));
        assert_eq!("max-monomial".parse::<Strategy>().unwrap(), Strategy::MaxMonomial);
        assert!("fastest".parse::<Strategy>().is_err());
    }
}
