//! Acceptance criteria, one line of output per criterion.
//!
//! Run with `cargo test -p orbs --test acceptance`. Set `ORBS_ONLY=1,5` to
//! run a subset.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use orbs::eds::{all_structures, check_eds, check_semigroup, family_structure, matching_structure, OpTable};
use orbs::gsb::{check_gsb, Fresh, GsbConfig};
use orbs::rewrite::{basis_census, is_irreducible, normal_form, product, Strategy};
use orbs::sample::Sampler;
use orbs::systems::{eliminate_s, ElimWeights, RuleSystem};
use orbs::terms::enumerate_words;
use orbs::{OmegaId, Polynomial, Prime, Rational, Signature, StarWord, Tag, Word};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Every associative product on `n` elements.
fn semigroups(n: usize) -> Vec<OpTable> {
    let cells = n * n;
    (0..(n as u64).pow(cells as u32))
        .map(|mut code| {
            let entries: Vec<u32> = (0..cells)
                .map(|_| {
                    let e = (code % n as u64) as u32;
                    code /= n as u64;
                    e
                })
                .collect();
            OpTable::new(n, entries).unwrap()
        })
        .filter(naive_associative)
        .collect()
}

fn naive_associative(t: &OpTable) -> bool {
    let n = t.size() as u32;
    let m = |a: u32, b: u32| t.get(OmegaId(a), OmegaId(b)).0;
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))))
}

fn cyclic(n: usize) -> OpTable {
    OpTable::from_fn(n, |a, b| OmegaId((a.0 + b.0) % n as u32))
}

fn sampler_for(sys: &RuleSystem, seed: u64) -> Sampler {
    Sampler::new(seed, 2, sys.omega().size() as u32, sys.tags()).with_bracket_bias(0.75)
}

/// Criterion 1: EDS iff intersection compositions of ORBS reduce to 0,
/// over all 2-element structures.
fn criterion_1() -> Outcome {
    let sig = Signature::new(vec!["x".into()], names(2), vec![Tag::R, Tag::S]).unwrap();
    let config = GsbConfig::default();
    let mut total = 0usize;
    let mut eds = 0usize;
    let mut mismatches = Vec::new();
    for s in all_structures(names(2)) {
        total += 1;
        let passed = check_eds(&s).passed;
        eds += passed as usize;
        let sys = RuleSystem::orbs(s.clone()).unwrap();
        let verdict = check_gsb(&sys, &sig, &config).map_err(|e| format!("structure {total}: {e}"))?;
        if verdict.consistent != passed {
            mismatches.push(total);
        }
    }
    if total != 65_536 {
        return Err(format!("expected 65536 structures, enumerated {total}"));
    }
    if mismatches.is_empty() {
        Ok(format!("{total} structures, {eds} EDS, 0 mismatches"))
    } else {
        Err(format!(
            "{} mismatches among {total} structures (first: #{})",
            mismatches.len(),
            mismatches[0]
        ))
    }
}

/// Criterion 2: family and matching constructors produce EDS; a
/// non-associative product fails axiom 1.
fn criterion_2() -> Outcome {
    let products = semigroups(2);
    for t in &products {
        let s = family_structure(names(2), t.clone()).map_err(|e| e.to_string())?;
        if !check_eds(&s).passed {
            return Err(format!("family over {:?} fails", t.entries()));
        }
    }
    for n in 1..=4 {
        if !check_eds(&matching_structure(names(n)).unwrap()).passed {
            return Err(format!("matching structure of size {n} fails"));
        }
    }
    let bad = OpTable::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
    if naive_associative(&bad) || check_semigroup(&bad).is_ok() {
        return Err("the witness table is associative".into());
    }
    let report = check_eds(&family_structure(names(2), bad).unwrap());
    let witness = report.violations.iter().find(|v| v.axiom == 1);
    match witness {
        Some(v) if !report.passed => Ok(format!(
            "{} associative products and matching sizes 1-4 pass; non-associative table fails axiom 1 at {:?}",
            products.len(),
            v.triple.map(|x| x.0)
        )),
        _ => Err("non-associative family did not fail axiom 1".into()),
    }
}

/// Systems over EDS structures used by criteria 3, 4 and 8.
fn eds_systems() -> Vec<(String, RuleSystem)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("orbs/matching{n}"), RuleSystem::orbs(matching_structure(names(n)).unwrap()).unwrap()));
    }
    for n in 2..=3 {
        out.push((
            format!("orbs/family-Z{n}"),
            RuleSystem::orbs(family_structure(names(n), cyclic(n)).unwrap()).unwrap(),
        ));
    }
    out.push(("rbs".into(), RuleSystem::rbs()));
    out.push(("rbsf/Z2".into(), RuleSystem::rbsf(names(2), cyclic(2)).unwrap()));
    // left-zero band: a·b = a
    let left_zero = OpTable::from_fn(3, |a, _| a);
    out.push(("rbsf/left-zero3".into(), RuleSystem::rbsf(names(3), left_zero.clone()).unwrap()));
    for n in 2..=3 {
        out.push((format!("mrbs/{n}"), RuleSystem::mrbs(names(n)).unwrap()));
    }
    out.push(("orba0/matching2".into(), RuleSystem::orba0(matching_structure(names(2)).unwrap()).unwrap()));
    out.push((
        "orba0/family-Z3".into(),
        RuleSystem::orba0(family_structure(names(3), cyclic(3)).unwrap()).unwrap(),
    ));
    out.push(("rbf/Z2,1".into(), RuleSystem::rbf(names(2), cyclic(2), q(1, 1)).unwrap()));
    out.push(("rbf/left-zero3,-2/3".into(), RuleSystem::rbf(names(3), left_zero, q(-2, 3)).unwrap()));
    out.push(("mrba/(0,1)".into(), RuleSystem::mrba(names(2), vec![q(0, 1), q(1, 1)]).unwrap()));
    out.push((
        "mrba/(2/3,1,-1)".into(),
        RuleSystem::mrba(names(3), vec![q(2, 3), q(1, 1), q(-1, 1)]).unwrap(),
    ));
    out
}

/// Criterion 3: Normal forms agree across strategies.
fn criterion_3() -> Outcome {
    let strategies = [Strategy::MaxMonomial, Strategy::LeftmostInnermost, Strategy::SeededRandom(7)];
    let systems = eds_systems();
    let mut checked = 0;
    let mut reducible = 0;
    for (k, (label, sys)) in systems.iter().enumerate() {
        let mut sm = sampler_for(sys, 3000 + k as u64);
        for i in 0..200 {
            let p = sm.polynomial_between(4, 3, 6);
            let nfs: Vec<Polynomial> = strategies
                .iter()
                .map(|&s| normal_form(&p, sys, s).map(|r| r.0))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("{label} sample {i}: {e}"))?;
            reducible += (nfs[0] != p) as usize;
            if nfs.iter().any(|n| *n != nfs[0]) {
                return Err(format!("{label} sample {i}: strategies disagree"));
            }
            if nfs[0].monomials().any(|w| !is_irreducible(w, sys)) {
                return Err(format!("{label} sample {i}: normal form is reducible"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} polynomials ({reducible} reducible) over {} systems, 3 strategies agree",
        systems.len()
    ))
}

/// Criterion 4: The quotient product is associative and bilinear.
fn criterion_4() -> Outcome {
    let st = Strategy::MaxMonomial;
    let systems = eds_systems();
    for (k, (label, sys)) in systems.iter().enumerate() {
        let mut sm = sampler_for(sys, 4000 + k as u64);
        let m = |a: &Polynomial, b: &Polynomial| product(a, b, sys, st).map_err(|e| format!("{label}: {e}"));
        for i in 0..100 {
            let a = sm.polynomial_between(2, 1, 3);
            let b = sm.polynomial_between(2, 1, 3);
            let c = sm.polynomial_between(2, 1, 3);
            let lam = sm.coefficient();
            if m(&m(&a, &b)?, &c)? != m(&a, &m(&b, &c)?)? {
                return Err(format!("{label} triple {i}: not associative"));
            }
            let a_lb = &a + &b.scale(&lam);
            let expected = &m(&a, &c)? + &m(&b, &c)?.scale(&lam);
            if m(&a_lb, &c)? != expected {
                return Err(format!("{label} triple {i}: not linear on the left"));
            }
            let b_lc = &b + &c.scale(&lam);
            let expected = &m(&a, &b)? + &m(&a, &c)?.scale(&lam);
            if m(&a, &b_lc)? != expected {
                return Err(format!("{label} triple {i}: not linear on the right"));
            }
        }
    }
    Ok(format!("100 triples over each of {} systems", systems.len()))
}

/// Brute-force irreducible counts for RBS over one generator: a word is
/// irreducible iff no two adjacent primes are brackets with the same tag,
/// at any level. Words are built as strings over `x`, `R(`, `S(`, `)`.
fn brute_force_rbs_counts(max_deg: usize) -> Vec<u128> {
    // words[d] = all words of degree exactly d, as (text, last-tag) pairs
    let mut words: Vec<Vec<(String, Option<char>, bool)>> = vec![vec![(String::new(), None, true)]];
    for d in 1..=max_deg {
        let mut next = Vec::new();
        // last prime is a generator
        for (w, _, ok) in &words[d - 1] {
            next.push((format!("{w}x"), None, *ok));
        }
        // last prime is a bracket of degree k around a word of degree k-1
        for k in 1..=d {
            for (inner, _, inner_ok) in &words[k - 1] {
                for tag in ['R', 'S'] {
                    for (w, last, ok) in &words[d - k] {
                        let fine = *ok && *inner_ok && *last != Some(tag);
                        next.push((format!("{w}{tag}({inner})"), Some(tag), fine));
                    }
                }
            }
        }
        words.push(next);
    }
    words
        .iter()
        .map(|ws| ws.iter().filter(|(_, _, ok)| *ok).count() as u128)
        .collect()
}

/// Criterion 5: Irreducible word counts for RBS over `{x}`.
fn criterion_5() -> Outcome {
    let sys = RuleSystem::rbs();
    let census = basis_census(1, &sys, 4, true).map_err(|e| e.to_string())?;
    let words = enumerate_words(1, 1, sys.tags(), 4, 1_000_000).map_err(|e| e.to_string())?;
    let mut filtered = vec![0u128; 5];
    for w in words.iter().filter(|w| is_irreducible(w, &sys)) {
        filtered[w.deg() as usize] += 1;
    }
    let brute = brute_force_rbs_counts(4);
    if census.counts != filtered {
        return Err(format!("census {:?} vs enumeration {:?}", census.counts, filtered));
    }
    if census.counts != brute || !census.agrees() {
        return Err(format!("census {:?} vs brute force {:?}", census.counts, brute));
    }
    if census.counts[..3] != [1, 3, 13] {
        return Err(format!("anchors {:?} differ from [1, 3, 13]", &census.counts[..3]));
    }
    Ok(format!("counts by degree 0-4: {:?}", census.counts))
}

/// Criterion 6: Eliminating `S` maps rules to zero in the weighted algebra.
fn criterion_6() -> Outcome {
    let mut sig = Signature::new(vec![], names(2), vec![Tag::R, Tag::S]).unwrap();
    let fresh = Fresh::extend(&mut sig);
    let (u, v) = (Word::gen(fresh.x1), Word::gen(fresh.x2));
    let pairs = || {
        [0u32, 1].into_iter().flat_map(|a| {
            [0u32, 1]
                .into_iter()
                .flat_map(move |b| [Tag::R, Tag::S].map(move |t| (OmegaId(a), OmegaId(b), t)))
        })
    };
    let mut checked = 0;
    let zero_nf = |p: &Polynomial, sys: &RuleSystem, what: &str| -> Result<(), String> {
        let nf = normal_form(p, sys, Strategy::MaxMonomial).map_err(|e| e.to_string())?.0;
        if nf.is_zero() {
            Ok(())
        } else {
            Err(format!("{what}: nonzero normal form"))
        }
    };
    for lam in [q(0, 1), q(1, 1), q(2, 3)] {
        for t in semigroups(2) {
            let src = RuleSystem::rbsf(names(2), t.clone()).unwrap();
            let dst = RuleSystem::rbf(names(2), t.clone(), lam.clone()).unwrap();
            let w = ElimWeights::uniform(&names(2), lam.clone());
            for (a, b, tag) in pairs() {
                let img = eliminate_s(&src.rule(a, b, tag, &u, &v), &w).map_err(|e| e.to_string())?;
                zero_nf(&img, &dst, &format!("rbsf {:?} λ={lam} ({},{},{tag})", t.entries(), a.0, b.0))?;
                checked += 1;
            }
        }
    }
    for lambdas in [vec![q(0, 1), q(1, 1)], vec![q(2, 3), q(0, 1)], vec![q(1, 1), q(2, 3)]] {
        let src = RuleSystem::mrbs(names(2)).unwrap();
        let dst = RuleSystem::mrba(names(2), lambdas.clone()).unwrap();
        let w = ElimWeights::per_element(&names(2), lambdas.clone());
        for (a, b, tag) in pairs() {
            let img = eliminate_s(&src.rule(a, b, tag, &u, &v), &w).map_err(|e| e.to_string())?;
            zero_nf(&img, &dst, &format!("mrbs {lambdas:?} ({},{},{tag})", a.0, b.0))?;
            checked += 1;
        }
    }
    let mut eds_count = 0;
    for s in all_structures(names(2)).filter(|s| check_eds(s).passed) {
        eds_count += 1;
        let src = RuleSystem::orbs(s.clone()).unwrap();
        let dst = RuleSystem::orba0(s).unwrap();
        let w = ElimWeights::uniform(&names(2), q(0, 1));
        for (a, b, tag) in pairs() {
            let img = eliminate_s(&src.rule(a, b, tag, &u, &v), &w).map_err(|e| e.to_string())?;
            zero_nf(&img, &dst, &format!("orbs ({},{},{tag})", a.0, b.0))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} rule images reduce to 0 (rbsf->rbf at 0, 1, 2/3; mrbs->mrba; orbs->orba0 over {eds_count} EDS)"
    ))
}

/// Reference order: degree, then breadth, then primes left to right, with
/// generators before brackets and brackets by (omega, tag, inner).
fn reference_cmp(u: &Word, v: &Word) -> Ordering {
    fn deg(w: &Word) -> u32 {
        w.primes()
            .iter()
            .map(|p| match p {
                Prime::Bracket(_, inner) => 1 + deg(inner),
                _ => 1,
            })
            .sum()
    }
    fn prime_cmp(a: &Prime, b: &Prime) -> Ordering {
        match (a, b) {
            (Prime::Hole, Prime::Hole) => Ordering::Equal,
            (Prime::Hole, _) => Ordering::Less,
            (_, Prime::Hole) => Ordering::Greater,
            (Prime::Gen(x), Prime::Gen(y)) => x.0.cmp(&y.0),
            (Prime::Gen(_), Prime::Bracket(..)) => Ordering::Less,
            (Prime::Bracket(..), Prime::Gen(_)) => Ordering::Greater,
            (Prime::Bracket(o1, i1), Prime::Bracket(o2, i2)) => {
                let t = |t: Tag| if t == Tag::R { 0 } else { 1 };
                (o1.omega.0, t(o1.tag)).cmp(&(o2.omega.0, t(o2.tag))).then_with(|| reference_cmp(i1, i2))
            }
        }
    }
    deg(u)
        .cmp(&deg(v))
        .then(u.primes().len().cmp(&v.primes().len()))
        .then_with(|| {
            u.primes()
                .iter()
                .zip(v.primes())
                .map(|(a, b)| prime_cmp(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// Criterion 7: Order laws on random words and contexts.
fn criterion_7() -> Outcome {
    let mut sm = Sampler::new(7, 3, 2, &[Tag::R, Tag::S]);
    for i in 0..10_000 {
        let u = sm.word(6);
        let v = sm.word(6);
        let w = sm.word(3);
        let ctx: StarWord = sm.star_word(4);
        let o = u.cmp(&v);
        if o != reference_cmp(&u, &v) {
            return Err(format!("sample {i}: order differs from the reference comparison"));
        }
        if v.cmp(&u) != o.reverse() || (o == Ordering::Equal) != (u == v) {
            return Err(format!("sample {i}: trichotomy fails"));
        }
        if o == Ordering::Less && ctx.substitute_word(&u) >= ctx.substitute_word(&v) {
            return Err(format!("sample {i}: not compatible with substitution"));
        }
        if o != Ordering::Greater && (w.concat(&u) > w.concat(&v) || u.concat(&w) > v.concat(&w)) {
            return Err(format!("sample {i}: not compatible with multiplication"));
        }
    }
    Ok("10000 samples, 0 failures".into())
}

/// Criterion 8: Traces account for the whole reduction and descend strictly.
fn criterion_8() -> Outcome {
    let systems = eds_systems();
    for i in 0..100 {
        let (label, sys) = &systems[i % systems.len()];
        let mut sm = sampler_for(sys, 8000 + i as u64);
        let p = sm.polynomial_between(4, 3, 6);
        let (nf, trace) = normal_form(&p, sys, Strategy::MaxMonomial).map_err(|e| format!("{label}: {e}"))?;
        let mut removed = Polynomial::zero();
        for s in &trace.steps {
            removed = &removed + &s.removed(sys);
        }
        if &p - &nf != removed || trace.replay(sys) != nf {
            return Err(format!("{label} sample {i}: input - NF differs from the trace sum"));
        }
        if trace.steps.windows(2).any(|w| w[0].monomial <= w[1].monomial) {
            return Err(format!("{label} sample {i}: trace does not descend"));
        }
        for s in &trace.steps {
            if s.redex.context.substitute_word(&s.redex.matched()) != s.monomial || s.coeff.is_zero() {
                return Err(format!("{label} sample {i}: step does not match its monomial"));
            }
        }
    }
    Ok("100 reductions sound and strictly descending".into())
}

fn main() {
    let only: Option<Vec<usize>> = std::env::var("ORBS_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let criteria: [Criterion; 8] = [
        (1, "EDS iff intersection compositions trivial (|Ω| = 2)", criterion_1),
        (2, "constructors vs EDS checker", criterion_2),
        (3, "confluence across strategies", criterion_3),
        (4, "associativity and bilinearity", criterion_4),
        (5, "basis census", criterion_5),
        (6, "elimination maps", criterion_6),
        (7, "monomial order laws", criterion_7),
        (8, "trace soundness", criterion_8),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&n)) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {n}: {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

