//! Rewrite-rule families for Omega-Rota-Baxter systems and the related
//! algebras, the map eliminating `S` in favour of `R + λ id`, and the two
//! derived dendriform products.
//!
//! Every family is an instance of one schema. For operator tag `Q`,
//!
//! ```text
//! ⌊u⌋_α^Q ⌊v⌋_β^Q − ⌊⌊u⌋_{α▷β}^R v⌋_{α→β}^Q − ⌊u ⌊v⌋_{α◁β}^T⌋_{α←β}^Q − μ(α,β) ⌊uv⌋_{ν(α,β)}^Q
//! ```
//!
//! where `T = S` for two-tag systems and `T = R` for single-tag algebras,
//! and the last term is present only for weighted algebras.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::eds::{check_semigroup, family_structure, matching_structure, OmegaStructure, OpTable};
use crate::error::{Error, Result};
use crate::rewrite::{normal_form, Strategy};
use crate::terms::{OmegaId, Operator, Polynomial, Prime, Rational, Tag, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// Omega-Rota-Baxter system, tags `R` and `S`.
    Orbs,
    /// Omega-Rota-Baxter algebra of weight zero.
    Orba0,
    /// Rota-Baxter system (one-element Omega).
    Rbs,
    /// Rota-Baxter system family algebra over a semigroup.
    Rbsf,
    /// Rota-Baxter family algebra of scalar weight λ.
    Rbf,
    /// Matching Rota-Baxter system.
    Mrbs,
    /// Matching Rota-Baxter algebra with weights `λ_ω`.
    Mrba,
    /// Omega-Rota-Baxter algebra with weights `λ_{α,β}` and a fifth product.
    OrbaWeighted,
}

impl SystemKind {
    pub const ALL: [SystemKind; 8] = [
        SystemKind::Orbs,
        SystemKind::Orba0,
        SystemKind::Rbs,
        SystemKind::Rbsf,
        SystemKind::Rbf,
        SystemKind::Mrbs,
        SystemKind::Mrba,
        SystemKind::OrbaWeighted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Orbs => "orbs",
            SystemKind::Orba0 => "orba0",
            SystemKind::Rbs => "rbs",
            SystemKind::Rbsf => "rbsf",
            SystemKind::Rbf => "rbf",
            SystemKind::Mrbs => "mrbs",
            SystemKind::Mrba => "mrba",
            SystemKind::OrbaWeighted => "orba-weighted",
        }
    }

    pub fn tags(self) -> &'static [Tag] {
        if self.has_s() {
            &[Tag::R, Tag::S]
        } else {
            &[Tag::R]
        }
    }

    pub fn has_s(self) -> bool {
        matches!(
            self,
            SystemKind::Orbs | SystemKind::Rbs | SystemKind::Rbsf | SystemKind::Mrbs
        )
    }

    /// Kinds for which a Gröbner-Shirshov result is known when Omega is an
    /// extended diassociative semigroup.
    pub fn expects_gsb(self) -> bool {
        self != SystemKind::OrbaWeighted
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SystemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let known: Vec<_> = SystemKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown system `{s}` (expected one of {})", known.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Weights {
    #[default]
    None,
    Scalar(Rational),
    PerElement(Vec<Rational>),
    Matrix(Vec<Vec<Rational>>),
}

impl Weights {
    fn describe(&self) -> &'static str {
        match self {
            Weights::None => "no weights",
            Weights::Scalar(_) => "a scalar weight",
            Weights::PerElement(_) => "per-element weights",
            Weights::Matrix(_) => "a weight matrix",
        }
    }
}

/// Identifies one instantiated rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleId {
    pub kind: SystemKind,
    pub alpha: OmegaId,
    pub beta: OmegaId,
    pub tag: Tag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSystem {
    kind: SystemKind,
    omega: OmegaStructure,
    weights: Weights,
}

impl RuleSystem {
    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn omega(&self) -> &OmegaStructure {
        &self.omega
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn tags(&self) -> &'static [Tag] {
        self.kind.tags()
    }

    pub fn has_tag(&self, tag: Tag) -> bool {
        tag == Tag::R || self.kind.has_s()
    }

    /// `μ(α,β)` and `ν(α,β)` of the weight term, if the kind has one.
    fn weight_term(&self, a: OmegaId, b: OmegaId) -> Option<(&Rational, OmegaId)> {
        match (&self.kind, &self.weights) {
            (SystemKind::Rbf, Weights::Scalar(l)) => Some((l, self.omega.right(a, b))),
            (SystemKind::Mrba, Weights::PerElement(l)) => Some((&l[b.index()], a)),
            (SystemKind::OrbaWeighted, Weights::Matrix(m)) => {
                let dot = self.omega.dot().expect("validated at build time");
                Some((&m[a.index()][b.index()], dot.get(a, b)))
            }
            _ => None,
        }
    }

    /// The rule for `(α, β, Q, u, v)`, validating the parameters.
    pub fn instantiate_rule(
        &self,
        alpha: OmegaId,
        beta: OmegaId,
        tag: Tag,
        u: &Word,
        v: &Word,
    ) -> Result<Polynomial> {
        let n = self.omega.size();
        for w in [alpha, beta] {
            if w.index() >= n {
                return Err(Error::UnknownOmega(format!("#{}", w.0)));
            }
        }
        if !self.has_tag(tag) {
            return Err(Error::TagNotAvailable(tag));
        }
        Ok(self.rule(alpha, beta, tag, u, v))
    }

    /// The rule polynomial; parameters are assumed valid.
    pub fn rule(&self, alpha: OmegaId, beta: OmegaId, tag: Tag, u: &Word, v: &Word) -> Polynomial {
        let lead = Word::wrap(Operator::new(tag, alpha), u.clone())
            .concat(&Word::wrap(Operator::new(tag, beta), v.clone()));
        let mut p = Polynomial::monomial(lead);
        p.add_scaled(&self.rule_tail(alpha, beta, tag, u, v), &-Rational::one());
        p
    }

    /// `lead − rule`: what the leading monomial rewrites to.
    pub fn rule_tail(
        &self,
        alpha: OmegaId,
        beta: OmegaId,
        tag: Tag,
        u: &Word,
        v: &Word,
    ) -> Polynomial {
        let om = &self.omega;
        let inner_tag = if self.kind.has_s() { Tag::S } else { Tag::R };
        let t1 = Word::wrap(
            Operator::new(tag, om.right(alpha, beta)),
            Word::wrap(Operator::new(Tag::R, om.rtri(alpha, beta)), u.clone()).concat(v),
        );
        let t2 = Word::wrap(
            Operator::new(tag, om.left(alpha, beta)),
            u.concat(&Word::wrap(Operator::new(inner_tag, om.ltri(alpha, beta)), v.clone())),
        );
        let mut tail = Polynomial::monomial(t1);
        tail.add_term(t2, Rational::one());
        if let Some((mu, nu)) = self.weight_term(alpha, beta) {
            tail.add_term(Word::wrap(Operator::new(tag, nu), u.concat(v)), mu.clone());
        }
        tail
    }

    pub fn rule_id(&self, alpha: OmegaId, beta: OmegaId, tag: Tag) -> RuleId {
        RuleId {
            kind: self.kind,
            alpha,
            beta,
            tag,
        }
    }
}

/// Bind a rule family to an Omega-structure and weights, checking that the
/// structure has the shape the family needs.
pub fn build_system(kind: SystemKind, omega: OmegaStructure, weights: Weights) -> Result<RuleSystem> {
    let n = omega.size();
    let mismatch = |detail: String| Error::WeightMismatch {
        kind: kind.name(),
        detail,
    };
    match kind {
        SystemKind::Orbs | SystemKind::Orba0 | SystemKind::Rbs | SystemKind::Rbsf | SystemKind::Mrbs => {
            if weights != Weights::None {
                return Err(mismatch(format!("expected no weights, got {}", weights.describe())));
            }
        }
        SystemKind::Rbf => {
            if !matches!(weights, Weights::Scalar(_)) {
                return Err(mismatch(format!("expected a scalar weight, got {}", weights.describe())));
            }
        }
        SystemKind::Mrba => match &weights {
            Weights::PerElement(l) if l.len() == n => {}
            Weights::PerElement(l) => {
                return Err(mismatch(format!("expected {n} per-element weights, got {}", l.len())))
            }
            other => {
                return Err(mismatch(format!("expected per-element weights, got {}", other.describe())))
            }
        },
        SystemKind::OrbaWeighted => {
            match &weights {
                Weights::Matrix(m) if m.len() == n && m.iter().all(|r| r.len() == n) => {}
                Weights::Matrix(_) => return Err(mismatch(format!("expected a {n}×{n} weight matrix"))),
                other => {
                    return Err(mismatch(format!("expected a weight matrix, got {}", other.describe())))
                }
            }
            if omega.dot().is_none() {
                return Err(Error::SystemRequirement {
                    kind: kind.name(),
                    requirement: "a `dot` table".into(),
                });
            }
        }
    }
    match kind {
        SystemKind::Rbs if n != 1 => {
            return Err(Error::SystemRequirement {
                kind: kind.name(),
                requirement: format!("a one-element Omega, got {n} elements"),
            })
        }
        SystemKind::Rbsf | SystemKind::Rbf => {
            if !omega.is_family() {
                return Err(Error::SystemRequirement {
                    kind: kind.name(),
                    requirement: "a family structure (← = →, α◁β = β, α▷β = α)".into(),
                });
            }
            if let Err([a, b, c]) = check_semigroup(omega.table(crate::eds::OmegaOp::Right)) {
                return Err(Error::NotAssociative(
                    omega.name(a).into(),
                    omega.name(b).into(),
                    omega.name(c).into(),
                ));
            }
        }
        SystemKind::Mrbs | SystemKind::Mrba if !omega.is_matching() => {
            return Err(Error::SystemRequirement {
                kind: kind.name(),
                requirement: "a matching structure (α→β = α◁β = β, α←β = α▷β = α)".into(),
            })
        }
        _ => {}
    }
    Ok(RuleSystem { kind, omega, weights })
}

impl RuleSystem {
    pub fn orbs(omega: OmegaStructure) -> Result<Self> {
        build_system(SystemKind::Orbs, omega, Weights::None)
    }

    pub fn orba0(omega: OmegaStructure) -> Result<Self> {
        build_system(SystemKind::Orba0, omega, Weights::None)
    }

    pub fn rbs() -> Self {
        build_system(SystemKind::Rbs, OmegaStructure::trivial("e"), Weights::None)
            .expect("trivial Omega")
    }

    pub fn rbsf(names: Vec<String>, product: OpTable) -> Result<Self> {
        build_system(SystemKind::Rbsf, family_structure(names, product)?, Weights::None)
    }

    pub fn rbf(names: Vec<String>, product: OpTable, lambda: Rational) -> Result<Self> {
        build_system(SystemKind::Rbf, family_structure(names, product)?, Weights::Scalar(lambda))
    }

    pub fn mrbs(names: Vec<String>) -> Result<Self> {
        build_system(SystemKind::Mrbs, matching_structure(names)?, Weights::None)
    }

    pub fn mrba(names: Vec<String>, lambdas: Vec<Rational>) -> Result<Self> {
        build_system(SystemKind::Mrba, matching_structure(names)?, Weights::PerElement(lambdas))
    }
}

/// Per-element weights `λ_ω` for [`eliminate_s`]; entries may be missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElimWeights {
    names: Vec<String>,
    lambdas: Vec<Option<Rational>>,
}

impl ElimWeights {
    pub fn uniform(names: &[String], lambda: Rational) -> Self {
        ElimWeights {
            names: names.to_vec(),
            lambdas: vec![Some(lambda); names.len()],
        }
    }

    pub fn per_element(names: &[String], lambdas: Vec<Rational>) -> Self {
        ElimWeights {
            names: names.to_vec(),
            lambdas: lambdas.into_iter().map(Some).collect(),
        }
    }

    pub fn partial(names: &[String], lambdas: Vec<Option<Rational>>) -> Self {
        ElimWeights {
            names: names.to_vec(),
            lambdas,
        }
    }

    fn get(&self, w: OmegaId) -> Result<&Rational> {
        self.lambdas
            .get(w.index())
            .and_then(Option::as_ref)
            .ok_or_else(|| {
                Error::MissingWeight(
                    self.names
                        .get(w.index())
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", w.0)),
                )
            })
    }
}

/// The algebra map fixing generators and `R`-brackets and sending
/// `⌊w⌋_ω^S` to `⌊φ(w)⌋_ω^R + λ_ω φ(w)`. The result uses tag `R` only;
/// on polynomials without `S`-brackets it is the identity.
pub fn eliminate_s(p: &Polynomial, weights: &ElimWeights) -> Result<Polynomial> {
    let mut out = Polynomial::zero();
    for (w, c) in p.iter() {
        out.add_scaled(&eliminate_word(w, weights)?, c);
    }
    Ok(out)
}

fn eliminate_word(w: &Word, weights: &ElimWeights) -> Result<Polynomial> {
    let mut acc = Polynomial::monomial(Word::one());
    for prime in w.primes() {
        let image = match prime {
            Prime::Gen(_) | Prime::Hole => Polynomial::monomial(Word::from_primes(vec![prime.clone()])),
            Prime::Bracket(op, inner) => {
                let inner_image = eliminate_word(inner, weights)?;
                let mut img = inner_image.wrap(Operator::new(Tag::R, op.omega));
                if op.tag == Tag::S {
                    img.add_scaled(&inner_image, weights.get(op.omega)?);
                }
                img
            }
        };
        acc = acc.mul(&image);
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DendriformSide {
    /// `a ≺_α b = a S_α(b)`
    Prec,
    /// `a ≻_α b = R_α(a) b`
    Succ,
}

/// The derived products `≺_α`, `≻_α`, computed in the quotient.
pub fn dendriform(
    a: &Polynomial,
    b: &Polynomial,
    alpha: OmegaId,
    side: DendriformSide,
    sys: &RuleSystem,
    strategy: Strategy,
) -> Result<Polynomial> {
    if !sys.kind().has_s() {
        return Err(Error::MissingSTag);
    }
    let raw = match side {
        DendriformSide::Prec => a.mul(&b.wrap(Operator::new(Tag::S, alpha))),
        DendriformSide::Succ => a.wrap(Operator::new(Tag::R, alpha)).mul(b),
    };
    Ok(normal_form(&raw, sys, strategy)?.0)
}
