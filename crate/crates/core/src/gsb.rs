//! Compositions (critical pairs) of a rule system and the Gröbner-Shirshov
//! check.
//!
//! Rule schemas are instantiated with fresh generators `x1, x2, x3`
//! standing for the metavariables. Intersection ambiguities are the
//! overlaps `⌊x1⌋_α^Q ⌊x2⌋_β^Q ⌊x3⌋_γ^Q`; including ambiguities place one
//! leading monomial inside a bracket of another through a sampled context
//! `q`. A composition counts as trivial when its normal form is zero.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rewrite::{Reducer, ReductionTrace, Strategy, DEFAULT_BUDGET};
use crate::systems::RuleSystem;
use crate::terms::{GenId, OmegaId, Operator, Polynomial, Signature, StarWord, Tag, Word};

/// `f ū = v̄ g` on an overlap, per `max(|f̄|,|ḡ|) < |w| < |f̄| + |ḡ|`.
pub fn compose_intersection(
    f: &Polynomial,
    g: &Polynomial,
    right: &Word,
    left: &Word,
    w: &Word,
) -> Result<Polynomial> {
    let (fl, fc) = f.leading().ok_or(Error::ZeroPolynomial)?;
    let (gl, gc) = g.leading().ok_or(Error::ZeroPolynomial)?;
    if !num_traits::One::is_one(fc) || !num_traits::One::is_one(gc) {
        return Err(Error::Composition("f and g must be monic".into()));
    }
    if fl.concat(right) != *w || left.concat(gl) != *w {
        return Err(Error::Composition(
            "leading monomials do not factor the ambiguity word".into(),
        ));
    }
    let (bf, bg, bw) = (fl.breadth(), gl.breadth(), w.breadth());
    if !(bf.max(bg) < bw && bw < bf + bg) {
        return Err(Error::Composition(format!(
            "breadth condition fails: max({bf}, {bg}) < {bw} < {}",
            bf + bg
        )));
    }
    Ok(&f.mul_word_right(right) - &g.mul_word_left(left))
}

/// `f − q|_g` where `f̄ = q|_{ḡ} = w` and `q ≠ ★`.
pub fn compose_including(
    f: &Polynomial,
    g: &Polynomial,
    q: &StarWord,
    w: &Word,
) -> Result<Polynomial> {
    if q.is_hole() {
        return Err(Error::Composition(
            "the context `★` would compare a rule with itself".into(),
        ));
    }
    let (fl, fc) = f.leading().ok_or(Error::ZeroPolynomial)?;
    let (gl, gc) = g.leading().ok_or(Error::ZeroPolynomial)?;
    if !num_traits::One::is_one(fc) || !num_traits::One::is_one(gc) {
        return Err(Error::Composition("f and g must be monic".into()));
    }
    if fl != w || q.substitute_word(gl) != *w {
        return Err(Error::Composition(
            "leading monomials do not match the ambiguity word".into(),
        ));
    }
    Ok(f - &q.substitute(g))
}

/// The ten ambiguity families. `W1`/`W2` are the overlaps for tags `R`/`S`;
/// `W3..W10` nest a tag-`T` leading monomial inside the left (odd) or right
/// (even) bracket of a tag-`Q` one, for `(Q, T)` = `(R,R)`, `(R,S)`,
/// `(S,R)`, `(S,S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family(pub u8);

impl Family {
    fn intersection(tag: Tag) -> Family {
        match tag {
            Tag::R => Family(1),
            Tag::S => Family(2),
        }
    }

    fn including(outer: Tag, inner: Tag, right_side: bool) -> Family {
        let base = match (outer, inner) {
            (Tag::R, Tag::R) => 3,
            (Tag::R, Tag::S) => 5,
            (Tag::S, Tag::R) => 7,
            (Tag::S, Tag::S) => 9,
        };
        Family(base + right_side as u8)
    }

    pub fn is_intersection(self) -> bool {
        self.0 <= 2
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

/// One instantiated rule `(α, β, Q, u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleRef {
    pub alpha: OmegaId,
    pub beta: OmegaId,
    pub tag: Tag,
    pub u: Word,
    pub v: Word,
}

impl RuleRef {
    pub fn polynomial(&self, sys: &RuleSystem) -> Polynomial {
        sys.rule(self.alpha, self.beta, self.tag, &self.u, &self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbiguityKind {
    /// `w = f̄ · right = left · ḡ`
    Intersection { right: Word, left: Word },
    /// `w = f̄ = context|_{ḡ}`
    Including { context: StarWord },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub family: Family,
    /// `(α,β,γ)` for overlaps, `(α,β,γ,δ)` for inclusions.
    pub indices: Vec<OmegaId>,
    /// Index into the context sample list, for inclusions.
    pub sample: Option<usize>,
    pub w: Word,
    pub f: RuleRef,
    pub g: RuleRef,
    pub kind: AmbiguityKind,
}

impl Ambiguity {
    pub fn composition(&self, sys: &RuleSystem) -> Result<Polynomial> {
        let f = self.f.polynomial(sys);
        let g = self.g.polynomial(sys);
        match &self.kind {
            AmbiguityKind::Intersection { right, left } => compose_intersection(&f, &g, right, left, &self.w),
            AmbiguityKind::Including { context } => compose_including(&f, &g, context, &self.w),
        }
    }
}

/// The fresh generators standing for the rule metavariables.
#[derive(Clone, Copy, Debug)]
pub struct Fresh {
    pub x1: GenId,
    pub x2: GenId,
    pub x3: GenId,
}

impl Fresh {
    /// Append three fresh generators to `sig`.
    pub fn extend(sig: &mut Signature) -> Fresh {
        let ids = sig.add_fresh_generators(3);
        Fresh {
            x1: ids[0],
            x2: ids[1],
            x3: ids[2],
        }
    }
}

fn triples(n: usize) -> impl Iterator<Item = [OmegaId; 3]> {
    let n = n as u32;
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| (0..n).map(move |c| [OmegaId(a), OmegaId(b), OmegaId(c)]))
    })
}

/// Every overlap `⌊x1⌋_α^Q ⌊x2⌋_β^Q ⌊x3⌋_γ^Q`, for each tag and triple.
pub fn intersection_ambiguities(sys: &RuleSystem, fresh: &Fresh) -> Vec<Ambiguity> {
    let (x1, x2, x3) = (Word::gen(fresh.x1), Word::gen(fresh.x2), Word::gen(fresh.x3));
    let mut out = Vec::new();
    for &tag in sys.tags() {
        for [a, b, c] in triples(sys.omega().size()) {
            let left = Word::wrap(Operator::new(tag, a), x1.clone());
            let mid = Word::wrap(Operator::new(tag, b), x2.clone());
            let right = Word::wrap(Operator::new(tag, c), x3.clone());
            out.push(Ambiguity {
                family: Family::intersection(tag),
                indices: vec![a, b, c],
                sample: None,
                w: left.concat(&mid).concat(&right),
                f: RuleRef {
                    alpha: a,
                    beta: b,
                    tag,
                    u: x1.clone(),
                    v: x2.clone(),
                },
                g: RuleRef {
                    alpha: b,
                    beta: c,
                    tag,
                    u: x2.clone(),
                    v: x3.clone(),
                },
                kind: AmbiguityKind::Intersection { right, left },
            });
        }
    }
    out
}

/// Inclusions of an inner leading monomial, through each sampled context,
/// into the left or right bracket of an outer one.
pub fn including_ambiguities(sys: &RuleSystem, fresh: &Fresh, contexts: &[StarWord]) -> Vec<Ambiguity> {
    let (x1, x2, x3) = (Word::gen(fresh.x1), Word::gen(fresh.x2), Word::gen(fresh.x3));
    let n = sys.omega().size() as u32;
    let mut out = Vec::new();
    for &outer in sys.tags() {
        for &inner in sys.tags() {
            for right_side in [false, true] {
                let family = Family::including(outer, inner, right_side);
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            for d in 0..n {
                                let (a, b, c, d) = (OmegaId(a), OmegaId(b), OmegaId(c), OmegaId(d));
                                for (k, q) in contexts.iter().enumerate() {
                                    out.push(if right_side {
                                        // f_{α,δ}(x1, q|_{⌊x2⌋_β^T ⌊x3⌋_γ^T}) against g_{β,γ}(x2, x3)
                                        let g = RuleRef { alpha: b, beta: c, tag: inner, u: x2.clone(), v: x3.clone() };
                                        let g_lead = Word::wrap(Operator::new(inner, b), x2.clone())
                                            .concat(&Word::wrap(Operator::new(inner, c), x3.clone()));
                                        let v = q.substitute_word(&g_lead);
                                        let outer_ctx = q
                                            .wrap(Operator::new(outer, d))
                                            .flank(&Word::wrap(Operator::new(outer, a), x1.clone()), &Word::one());
                                        Ambiguity {
                                            family,
                                            indices: vec![a, b, c, d],
                                            sample: Some(k),
                                            w: outer_ctx.substitute_word(&g_lead),
                                            f: RuleRef { alpha: a, beta: d, tag: outer, u: x1.clone(), v },
                                            g,
                                            kind: AmbiguityKind::Including { context: outer_ctx },
                                        }
                                    } else {
                                        // f_{γ,δ}(q|_{⌊x1⌋_α^T ⌊x2⌋_β^T}, x3) against g_{α,β}(x1, x2)
                                        let g = RuleRef { alpha: a, beta: b, tag: inner, u: x1.clone(), v: x2.clone() };
                                        let g_lead = Word::wrap(Operator::new(inner, a), x1.clone())
                                            .concat(&Word::wrap(Operator::new(inner, b), x2.clone()));
                                        let u = q.substitute_word(&g_lead);
                                        let outer_ctx = q
                                            .wrap(Operator::new(outer, c))
                                            .flank(&Word::one(), &Word::wrap(Operator::new(outer, d), x3.clone()));
                                        Ambiguity {
                                            family,
                                            indices: vec![a, b, c, d],
                                            sample: Some(k),
                                            w: outer_ctx.substitute_word(&g_lead),
                                            f: RuleRef { alpha: c, beta: d, tag: outer, u, v: x3.clone() },
                                            g,
                                            kind: AmbiguityKind::Including { context: outer_ctx },
                                        }
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `{★, ⌊★⌋_ω^R, ⌊★⌋_ω^S, x★, ★x, ⌊x★⌋_ω^R | ω ∈ Ω}`; the `S` contexts only
/// when the system has tag `S`, and the `x` contexts only when `x` is given.
pub fn default_contexts(sys: &RuleSystem, x: Option<GenId>) -> Vec<StarWord> {
    let hole = StarWord::hole();
    let mut out = vec![hole.clone()];
    for w in sys.omega().elements() {
        for &tag in sys.tags() {
            out.push(hole.wrap(Operator::new(tag, w)));
        }
    }
    if let Some(x) = x {
        let xw = Word::gen(x);
        out.push(hole.flank(&xw, &Word::one()));
        out.push(hole.flank(&Word::one(), &xw));
        for w in sys.omega().elements() {
            out.push(hole.flank(&xw, &Word::one()).wrap(Operator::new(Tag::R, w)));
        }
    }
    out
}

/// Contexts of bracket depth at most `depth`: level 0 is `{★, x★, ★x}`, and
/// each further level wraps the previous level's contexts in every operator,
/// optionally flanked by `x` on either side.
pub fn contexts_up_to_depth(sys: &RuleSystem, x: Option<GenId>, depth: usize) -> Vec<StarWord> {
    let flanks = |c: &StarWord| -> Vec<StarWord> {
        let mut v = vec![c.clone()];
        if let Some(x) = x {
            let xw = Word::gen(x);
            v.push(c.flank(&xw, &Word::one()));
            v.push(c.flank(&Word::one(), &xw));
        }
        v
    };
    let mut level = flanks(&StarWord::hole());
    let mut out = level.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for c in &level {
            for w in sys.omega().elements() {
                for &tag in sys.tags() {
                    next.extend(flanks(&c.wrap(Operator::new(tag, w))));
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    IntersectionOnly,
    WithContexts(Vec<StarWord>),
}

#[derive(Clone, Debug)]
pub struct GsbConfig {
    pub coverage: Coverage,
    pub strategy: Strategy,
    pub budget: usize,
    /// Reduce compositions in parallel on the current rayon pool.
    pub parallel: bool,
}

impl Default for GsbConfig {
    fn default() -> Self {
        GsbConfig {
            coverage: Coverage::IntersectionOnly,
            strategy: Strategy::MaxMonomial,
            budget: DEFAULT_BUDGET,
            parallel: false,
        }
    }
}

impl GsbConfig {
    pub fn with_contexts(contexts: Vec<StarWord>) -> Self {
        GsbConfig {
            coverage: Coverage::WithContexts(contexts),
            ..GsbConfig::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTally {
    pub family: Family,
    pub checked: usize,
    pub nontrivial: usize,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub ambiguity: Ambiguity,
    pub composition: Polynomial,
    pub trace: ReductionTrace,
}

#[derive(Clone, Debug)]
pub struct GsbVerdict {
    pub consistent: bool,
    pub tallies: Vec<FamilyTally>,
    /// In generation order: by family, then index tuple, then context.
    pub counterexamples: Vec<Counterexample>,
    pub coverage: String,
    /// The signature extended by the fresh generators.
    pub signature: Signature,
    pub contexts: Vec<StarWord>,
}

/// Reduce every composition of the requested ambiguities and report those
/// with a nonzero normal form.
///
/// Contexts must be built over `sig`'s generators; the fresh generators are
/// appended after them.
pub fn check_gsb(sys: &RuleSystem, sig: &Signature, config: &GsbConfig) -> Result<GsbVerdict> {
    let mut signature = sig.clone();
    let fresh = Fresh::extend(&mut signature);
    let mut ambiguities = intersection_ambiguities(sys, &fresh);
    let (contexts, coverage) = match &config.coverage {
        Coverage::IntersectionOnly => (Vec::new(), "intersection ambiguities only".to_string()),
        Coverage::WithContexts(ctx) => {
            for q in ctx {
                let mut ok = true;
                q.as_word().for_each_generator(&mut |g| ok &= (g.0 as usize) < sig.generators.len());
                if !ok {
                    return Err(Error::Composition(
                        "context samples may only use the base alphabet".into(),
                    ));
                }
            }
            ambiguities.extend(including_ambiguities(sys, &fresh, ctx));
            (
                ctx.clone(),
                format!(
                    "intersection ambiguities and inclusions over {} sampled context(s)",
                    ctx.len()
                ),
            )
        }
    };

    let reducer = Reducer::new(sys)
        .with_strategy(config.strategy)
        .with_budget(config.budget);
    let reduce = |amb: &Ambiguity| -> Result<Option<Polynomial>> {
        let comp = amb.composition(sys)?;
        let nf = reducer.normal_form(&comp)?;
        Ok(if nf.is_zero() { None } else { Some(comp) })
    };
    let results: Vec<Result<Option<Polynomial>>> = if config.parallel {
        ambiguities.par_iter().map(reduce).collect()
    } else {
        ambiguities.iter().map(reduce).collect()
    };

    let mut tallies: Vec<FamilyTally> = Vec::new();
    let mut counterexamples = Vec::new();
    for (amb, res) in ambiguities.into_iter().zip(results) {
        let nontrivial = res?;
        let tally = match tallies.iter_mut().find(|t| t.family == amb.family) {
            Some(t) => t,
            None => {
                tallies.push(FamilyTally {
                    family: amb.family,
                    checked: 0,
                    nontrivial: 0,
                });
                tallies.last_mut().expect("just pushed")
            }
        };
        tally.checked += 1;
        if let Some(composition) = nontrivial {
            tally.nontrivial += 1;
            let trace = reducer.normal_form_traced(&composition)?;
            counterexamples.push(Counterexample {
                ambiguity: amb,
                composition,
                trace,
            });
        }
    }
    tallies.sort_by_key(|t| t.family);
    Ok(GsbVerdict {
        consistent: counterexamples.is_empty(),
        tallies,
        counterexamples,
        coverage,
        signature,
        contexts,
    })
}
