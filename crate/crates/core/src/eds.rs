//! Finite Omega-structures: a carrier with the four operations
//! `←`, `→`, `◁`, `▷` (and optionally a fifth product `·`), the
//! fifteen-identity extended-diassociative-semigroup check, and the
//! matching and family constructors.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::terms::OmegaId;

/// A total binary operation on `{0, …, n-1}`, row-major with the row
/// indexed by the first argument.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpTable {
    size: usize,
    entries: Vec<u32>,
}

impl OpTable {
    pub fn new(size: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::MalformedTable(format!(
                "expected {} entries for a carrier of size {size}, got {}",
                size * size,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&e| e as usize >= size) {
            return Err(Error::MalformedTable(format!(
                "entry {bad} is outside the carrier"
            )));
        }
        Ok(OpTable { size, entries })
    }

    pub fn from_fn(size: usize, f: impl Fn(OmegaId, OmegaId) -> OmegaId) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                entries.push(f(OmegaId(a as u32), OmegaId(b as u32)).0);
            }
        }
        OpTable { size, entries }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(Error::MalformedTable("table is not square".into()));
        }
        OpTable::new(size, rows.concat())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: OmegaId, b: OmegaId) -> OmegaId {
        OmegaId(self.entries[a.index() * self.size + b.index()])
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

/// One of the four routing operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaOp {
    /// `←`
    Left,
    /// `→`
    Right,
    /// `◁`
    LTri,
    /// `▷`
    RTri,
}

impl OmegaOp {
    fn symbol(self) -> &'static str {
        match self {
            OmegaOp::Left => "←",
            OmegaOp::Right => "→",
            OmegaOp::LTri => "◁",
            OmegaOp::RTri => "▷",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaStructure {
    names: Vec<String>,
    left: OpTable,
    right: OpTable,
    ltri: OpTable,
    rtri: OpTable,
    dot: Option<OpTable>,
}

impl OmegaStructure {
    pub fn new(
        names: Vec<String>,
        left: OpTable,
        right: OpTable,
        ltri: OpTable,
        rtri: OpTable,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        for (label, t) in [("left", &left), ("right", &right), ("ltri", &ltri), ("rtri", &rtri)] {
            if t.size() != names.len() {
                return Err(Error::MalformedTable(format!(
                    "{label} table has size {} but the carrier has {} elements",
                    t.size(),
                    names.len()
                )));
            }
        }
        Ok(OmegaStructure {
            names,
            left,
            right,
            ltri,
            rtri,
            dot: None,
        })
    }

    /// Attach the fifth product used by the weighted algebra variant.
    pub fn with_dot(mut self, dot: OpTable) -> Result<Self> {
        if dot.size() != self.names.len() {
            return Err(Error::MalformedTable("dot table size mismatch".into()));
        }
        self.dot = Some(dot);
        Ok(self)
    }

    /// The one-element structure `{e}`.
    pub fn trivial(name: &str) -> Self {
        matching_structure(vec![name.to_string()]).expect("nonempty carrier")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = OmegaId> {
        (0..self.names.len() as u32).map(OmegaId)
    }

    pub fn name(&self, w: OmegaId) -> &str {
        &self.names[w.index()]
    }

    pub fn table(&self, op: OmegaOp) -> &OpTable {
        match op {
            OmegaOp::Left => &self.left,
            OmegaOp::Right => &self.right,
            OmegaOp::LTri => &self.ltri,
            OmegaOp::RTri => &self.rtri,
        }
    }

    pub fn dot(&self) -> Option<&OpTable> {
        self.dot.as_ref()
    }

    pub fn apply(&self, op: OmegaOp, a: OmegaId, b: OmegaId) -> OmegaId {
        self.table(op).get(a, b)
    }

    /// `α ← β`
    pub fn left(&self, a: OmegaId, b: OmegaId) -> OmegaId {
        self.left.get(a, b)
    }

    /// `α → β`
    pub fn right(&self, a: OmegaId, b: OmegaId) -> OmegaId {
        self.right.get(a, b)
    }

    /// `α ◁ β`
    pub fn ltri(&self, a: OmegaId, b: OmegaId) -> OmegaId {
        self.ltri.get(a, b)
    }

    /// `α ▷ β`
    pub fn rtri(&self, a: OmegaId, b: OmegaId) -> OmegaId {
        self.rtri.get(a, b)
    }

    /// Whether the four tables have the shape produced by
    /// [`family_structure`] for some product.
    pub fn is_family(&self) -> bool {
        self.left == self.right
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| self.ltri(a, b) == b && self.rtri(a, b) == a)
            })
    }

    /// Whether the four tables are those of [`matching_structure`].
    pub fn is_matching(&self) -> bool {
        self.elements().all(|a| {
            self.elements().all(|b| {
                self.right(a, b) == b
                    && self.ltri(a, b) == b
                    && self.left(a, b) == a
                    && self.rtri(a, b) == a
            })
        })
    }
}

/// `α ← β = α → β = α·β`, `α ◁ β = β`, `α ▷ β = α`.
pub fn family_structure(names: Vec<String>, product: OpTable) -> Result<OmegaStructure> {
    let n = names.len();
    if product.size() != n {
        return Err(Error::MalformedTable(format!(
            "product table has size {} but the carrier has {n} elements",
            product.size()
        )));
    }
    OmegaStructure::new(
        names,
        product.clone(),
        product,
        OpTable::from_fn(n, |_, b| b),
        OpTable::from_fn(n, |a, _| a),
    )
}

/// `α → β = α ◁ β = β`, `α ← β = α ▷ β = α`.
pub fn matching_structure(names: Vec<String>) -> Result<OmegaStructure> {
    let n = names.len();
    let first = OpTable::from_fn(n, |a, _| a);
    let second = OpTable::from_fn(n, |_, b| b);
    OmegaStructure::new(names, first.clone(), second.clone(), second, first)
}

/// `Err((a, b, c))` when `(ab)c ≠ a(bc)`.
pub fn check_semigroup(product: &OpTable) -> std::result::Result<(), [OmegaId; 3]> {
    let n = product.size() as u32;
    for a in (0..n).map(OmegaId) {
        for b in (0..n).map(OmegaId) {
            for c in (0..n).map(OmegaId) {
                let ab = product.get(a, b);
                let bc = product.get(b, c);
                if product.get(ab, c) != product.get(a, bc) {
                    return Err([a, b, c]);
                }
            }
        }
    }
    Ok(())
}

/// A term built from the three variables and the four operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomTerm {
    Var(usize),
    Op(OmegaOp, Box<AxiomTerm>, Box<AxiomTerm>),
}

impl AxiomTerm {
    pub fn eval(&self, s: &OmegaStructure, vars: &[OmegaId; 3]) -> OmegaId {
        match self {
            AxiomTerm::Var(i) => vars[*i],
            AxiomTerm::Op(op, l, r) => s.apply(*op, l.eval(s, vars), r.eval(s, vars)),
        }
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            AxiomTerm::Var(i) => f.write_str(["α", "β", "γ"][*i]),
            AxiomTerm::Op(op, l, r) => {
                if !top {
                    f.write_str("(")?;
                }
                l.fmt_inner(f, false)?;
                write!(f, " {} ", op.symbol())?;
                r.fmt_inner(f, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for AxiomTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f, true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    /// 1-based position in the list.
    pub index: usize,
    pub lhs: AxiomTerm,
    pub rhs: AxiomTerm,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:>2}) {} = {}", self.index, self.lhs, self.rhs)
    }
}

// ASCII notation: `<-` is ←, `->` is →, `<|` is ◁, `|>` is ▷.
const AXIOM_SOURCE: [&str; 15] = [
    "(a->b)->c = a->(b->c)",
    "(a->b)|>c = (a|>(b->c))->(b|>c)",
    "a|>b = (a|>(b->c))|>(b|>c)",
    "(a->b)<-c = a->(b<-c)",
    "a|>(b<-c) = a|>b",
    "(a->b)<|c = b<|c",
    "(a<-b)->c = a->(b->c)",
    "(a|>(b->c))<-(b|>c) = (a<-b)|>c",
    "(a|>(b->c))<|(b|>c) = a<|b",
    "(a<-b)<-c = a<-(b->c)",
    "(a<|b)->((a<-b)<|c) = a<|(b->c)",
    "(a<|b)|>((a<-b)<|c) = b|>c",
    "(a<-b)<-c = a<-(b<-c)",
    "(a<|b)<-((a<-b)<|c) = a<|(b<-c)",
    "(a<|b)<|((a<-b)<|c) = b<|c",
];

/// The fifteen identities of an extended diassociative semigroup.
pub fn axioms() -> &'static [Axiom] {
    static AXIOMS: OnceLock<Vec<Axiom>> = OnceLock::new();
    AXIOMS.get_or_init(|| {
        AXIOM_SOURCE
            .iter()
            .enumerate()
            .map(|(i, src)| {
                let (l, r) = src.split_once('=').expect("axiom has `=`");
                Axiom {
                    index: i + 1,
                    lhs: AxiomParser::parse(l),
                    rhs: AxiomParser::parse(r),
                }
            })
            .collect()
    })
}

struct AxiomParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> AxiomParser<'a> {
    fn parse(text: &'a str) -> AxiomTerm {
        let mut p = AxiomParser {
            src: text.as_bytes(),
            pos: 0,
        };
        let t = p.expr();
        p.skip_ws();
        assert_eq!(p.pos, p.src.len(), "trailing input in axiom `{text}`");
        t
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos] == b' ' {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> AxiomTerm {
        let lhs = self.atom();
        self.skip_ws();
        let op = match self.src.get(self.pos..self.pos + 2) {
            Some(b"<-") => OmegaOp::Left,
            Some(b"->") => OmegaOp::Right,
            Some(b"<|") => OmegaOp::LTri,
            Some(b"|>") => OmegaOp::RTri,
            _ => return lhs,
        };
        self.pos += 2;
        let rhs = self.atom();
        AxiomTerm::Op(op, Box::new(lhs), Box::new(rhs))
    }

    fn atom(&mut self) -> AxiomTerm {
        self.skip_ws();
        let c = self.src[self.pos];
        self.pos += 1;
        match c {
            b'a' => AxiomTerm::Var(0),
            b'b' => AxiomTerm::Var(1),
            b'c' => AxiomTerm::Var(2),
            b'(' => {
                let t = self.expr();
                self.skip_ws();
                assert_eq!(self.src[self.pos], b')');
                self.pos += 1;
                t
            }
            other => panic!("unexpected `{}` in axiom", other as char),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: usize,
    pub triple: [OmegaId; 3],
    pub lhs: OmegaId,
    pub rhs: OmegaId,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub passed: bool,
    /// Sorted by axiom index, then by triple.
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn render(&self, s: &OmegaStructure) -> String {
        if self.passed {
            return "extended diassociative semigroup: all 15 identities hold\n".to_string();
        }
        let mut out = format!(
            "not an extended diassociative semigroup: {} violation(s)\n",
            self.violations.len()
        );
        let ax = axioms();
        for v in &self.violations {
            let [a, b, c] = v.triple;
            out.push_str(&format!(
                "axiom {} [{} = {}] fails at (α,β,γ) = ({}, {}, {}): {} ≠ {}\n",
                v.axiom,
                ax[v.axiom - 1].lhs,
                ax[v.axiom - 1].rhs,
                s.name(a),
                s.name(b),
                s.name(c),
                s.name(v.lhs),
                s.name(v.rhs)
            ));
        }
        out
    }
}

/// Evaluate all fifteen identities on all triples. The dot table, if any,
/// is not consulted.
pub fn check_eds(s: &OmegaStructure) -> AxiomReport {
    let mut violations = Vec::new();
    for ax in axioms() {
        for a in s.elements() {
            for b in s.elements() {
                for c in s.elements() {
                    let vars = [a, b, c];
                    let lhs = ax.lhs.eval(s, &vars);
                    let rhs = ax.rhs.eval(s, &vars);
                    if lhs != rhs {
                        violations.push(Violation {
                            axiom: ax.index,
                            triple: vars,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    AxiomReport {
        passed: violations.is_empty(),
        violations,
    }
}

/// Whether all fifteen identities hold; stops at the first failure.
pub fn is_eds(s: &OmegaStructure) -> bool {
    let ax = axioms();
    s.elements().all(|a| {
        s.elements().all(|b| {
            s.elements().all(|c| {
                let vars = [a, b, c];
                ax.iter().all(|x| x.lhs.eval(s, &vars) == x.rhs.eval(s, &vars))
            })
        })
    })
}

/// Every structure with four operations on a carrier of `n` elements, in
/// a fixed order. There are `n^(4n²)` of them.
pub fn all_structures(names: Vec<String>) -> impl Iterator<Item = OmegaStructure> {
    let n = names.len();
    let cells = n * n;
    let tables: Vec<OpTable> = (0..(n as u64).pow(cells as u32))
        .map(|mut code| {
            let mut entries = vec![0u32; cells];
            for e in entries.iter_mut() {
                *e = (code % n as u64) as u32;
                code /= n as u64;
            }
            OpTable { size: n, entries }
        })
        .collect();
    let t = tables.len();
    (0..t.pow(4)).map(move |mut code| {
        let mut pick = || {
            let i = code % t;
            code /= t;
            tables[i].clone()
        };
        let (left, right, ltri, rtri) = (pick(), pick(), pick(), pick());
        OmegaStructure {
            names: names.clone(),
            left,
            right,
            ltri,
            rtri,
            dot: None,
        }
    })
}
