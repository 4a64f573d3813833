//! Line-oriented Omega-structure files.
//!
//! ```text
//! # comments run to the end of the line
//! elements: a b
//! left:
//! a a
//! b b
//! right:
//! ...
//! ltri:   rtri:   dot:      (same shape; dot is optional)
//! weights:
//! scalar 2/3                | lambda a 1        | 1 0
//!                           | lambda b 1/2      | 0 1
//! ```
//!
//! Table rows are indexed by the first argument. Which tables and weights
//! are needed depends on the system kind; see [`OmegaDecl::system`].

use std::collections::BTreeMap;

use crate::eds::{family_structure, matching_structure, OmegaOp, OmegaStructure, OpTable};
use crate::error::{Error, Result};
use crate::systems::{build_system, ElimWeights, RuleSystem, SystemKind, Weights};
use crate::terms::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightDecl {
    Scalar(Rational),
    /// `lambda ω q` lines; elements without a line are `None`.
    PerElement(Vec<Option<Rational>>),
    Matrix(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDecl {
    pub names: Vec<String>,
    /// Keyed by block name: `left`, `right`, `ltri`, `rtri`, `dot`.
    pub tables: BTreeMap<String, OpTable>,
    pub weights: Option<WeightDecl>,
}

const TABLES: [&str; 5] = ["left", "right", "ltri", "rtri", "dot"];

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_rational(text: &str, line: usize) -> Result<Rational> {
    text.parse::<Rational>()
        .map_err(|_| syntax(line, 1, format!("`{text}` is not a rational number")))
}

impl OmegaDecl {
    /// The one-element carrier `{e}` with no tables or weights.
    pub fn trivial() -> Self {
        OmegaDecl {
            names: vec!["e".into()],
            tables: BTreeMap::new(),
            weights: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        // (line number, content) with comments and blank lines removed
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut names: Option<Vec<String>> = None;
        let mut tables = BTreeMap::new();
        let mut weights = None;
        let mut i = 0;
        while i < lines.len() {
            let (ln, line) = lines[i];
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| syntax(ln, 1, format!("expected a `key:` line, got `{line}`")))?;
            let key = key.trim();
            let rest = rest.trim();
            i += 1;
            match key {
                "elements" => {
                    if names.is_some() {
                        return Err(syntax(ln, 1, "`elements:` given twice"));
                    }
                    let list: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if list.is_empty() {
                        return Err(Error::EmptyCarrier);
                    }
                    for (k, n) in list.iter().enumerate() {
                        if list[..k].contains(n) {
                            return Err(Error::DuplicateName(n.clone()));
                        }
                    }
                    names = Some(list);
                }
                k if TABLES.contains(&k) => {
                    let names = names
                        .as_ref()
                        .ok_or_else(|| syntax(ln, 1, "`elements:` must come before tables"))?;
                    if !rest.is_empty() {
                        return Err(syntax(ln, key.len() + 2, "table rows go on the following lines"));
                    }
                    if tables.contains_key(k) {
                        return Err(syntax(ln, 1, format!("`{k}:` given twice")));
                    }
                    let n = names.len();
                    let mut entries = Vec::with_capacity(n * n);
                    for r in 0..n {
                        let &(rl, row) = lines
                            .get(i + r)
                            .ok_or_else(|| syntax(ln, 1, format!("`{k}:` needs {n} rows")))?;
                        let cells: Vec<&str> = row.split_whitespace().collect();
                        if cells.len() != n || row.contains(':') {
                            return Err(syntax(rl, 1, format!("`{k}:` rows need {n} entries")));
                        }
                        for c in cells {
                            let idx = names
                                .iter()
                                .position(|x| x == c)
                                .ok_or_else(|| Error::UnknownOmega(c.to_string()))?;
                            entries.push(idx as u32);
                        }
                    }
                    i += n;
                    tables.insert(k.to_string(), OpTable::new(n, entries)?);
                }
                "weights" => {
                    if weights.is_some() {
                        return Err(syntax(ln, 1, "`weights:` given twice"));
                    }
                    let names = names
                        .as_ref()
                        .ok_or_else(|| syntax(ln, 1, "`elements:` must come before weights"))?;
                    let start = i;
                    while i < lines.len() && !lines[i].1.contains(':') {
                        i += 1;
                    }
                    let mut block: Vec<(usize, &str)> = lines[start..i].to_vec();
                    if !rest.is_empty() {
                        block.insert(0, (ln, rest));
                    }
                    weights = Some(parse_weights(&block, names, ln)?);
                }
                other => return Err(syntax(ln, 1, format!("unknown block `{other}:`"))),
            }
        }
        let names = names.ok_or_else(|| syntax(1, 1, "missing `elements:` line"))?;
        Ok(OmegaDecl { names, tables, weights })
    }

    fn table(&self, key: &str) -> Option<&OpTable> {
        self.tables.get(key)
    }

    fn four_tables(&self, kind: SystemKind) -> Result<OmegaStructure> {
        if self.names.len() == 1 && self.tables.is_empty() {
            return Ok(OmegaStructure::trivial(&self.names[0]));
        }
        let get = |k: &str| {
            self.table(k).cloned().ok_or_else(|| Error::SystemRequirement {
                kind: kind.name(),
                requirement: format!("a `{k}:` table"),
            })
        };
        let s = OmegaStructure::new(self.names.clone(), get("left")?, get("right")?, get("ltri")?, get("rtri")?)?;
        match self.table("dot") {
            Some(d) => s.with_dot(d.clone()),
            None => Ok(s),
        }
    }

    /// The structure a kind reads from this declaration: family kinds take
    /// their product from `dot:` (else `right:`), matching kinds use only
    /// the carrier, and the rest use the four tables as given.
    pub fn structure(&self, kind: SystemKind) -> Result<OmegaStructure> {
        match kind {
            SystemKind::Rbsf | SystemKind::Rbf => {
                let product = match self.table("dot").or_else(|| self.table("right")) {
                    Some(t) => t.clone(),
                    None if self.names.len() == 1 => OpTable::from_fn(1, |a, _| a),
                    None => {
                        return Err(Error::SystemRequirement {
                            kind: kind.name(),
                            requirement: "a `dot:` or `right:` product table".into(),
                        })
                    }
                };
                family_structure(self.names.clone(), product)
            }
            SystemKind::Mrbs | SystemKind::Mrba | SystemKind::Rbs => matching_structure(self.names.clone()),
            SystemKind::Orbs | SystemKind::Orba0 | SystemKind::OrbaWeighted => self.four_tables(kind),
        }
    }

    /// The weights a kind's rules use; other kinds ignore the block.
    pub fn system_weights(&self, kind: SystemKind) -> Result<Weights> {
        let missing = |what: &str| Error::WeightMismatch {
            kind: kind.name(),
            detail: format!("expected {what} in the `weights:` block"),
        };
        Ok(match kind {
            SystemKind::Rbf => match &self.weights {
                Some(WeightDecl::Scalar(q)) => Weights::Scalar(q.clone()),
                _ => return Err(missing("`scalar <q>`")),
            },
            SystemKind::Mrba => match &self.weights {
                Some(WeightDecl::PerElement(l)) => {
                    let mut out = Vec::with_capacity(l.len());
                    for (k, q) in l.iter().enumerate() {
                        out.push(q.clone().ok_or_else(|| Error::MissingWeight(self.names[k].clone()))?);
                    }
                    Weights::PerElement(out)
                }
                Some(WeightDecl::Scalar(q)) => Weights::PerElement(vec![q.clone(); self.names.len()]),
                _ => return Err(missing("`lambda <ω> <q>` lines")),
            },
            SystemKind::OrbaWeighted => match &self.weights {
                Some(WeightDecl::Matrix(m)) => Weights::Matrix(m.clone()),
                _ => return Err(missing("a weight matrix")),
            },
            _ => Weights::None,
        })
    }

    pub fn system(&self, kind: SystemKind) -> Result<RuleSystem> {
        build_system(kind, self.structure(kind)?, self.system_weights(kind)?)
    }

    /// `λ_ω` for eliminating `S`: a scalar applies to every element;
    /// `lambda` lines may leave elements unset.
    pub fn elimination_weights(&self) -> ElimWeights {
        match &self.weights {
            Some(WeightDecl::Scalar(q)) => ElimWeights::uniform(&self.names, q.clone()),
            Some(WeightDecl::PerElement(l)) => ElimWeights::partial(&self.names, l.clone()),
            _ => ElimWeights::partial(&self.names, vec![None; self.names.len()]),
        }
    }
}

fn parse_weights(block: &[(usize, &str)], names: &[String], header: usize) -> Result<WeightDecl> {
    let Some(&(first_ln, first)) = block.first() else {
        return Err(syntax(header, 1, "empty `weights:` block"));
    };
    let words: Vec<&str> = first.split_whitespace().collect();
    match words[0] {
        "scalar" => {
            if block.len() != 1 || words.len() != 2 {
                return Err(syntax(first_ln, 1, "expected a single `scalar <q>` line"));
            }
            Ok(WeightDecl::Scalar(parse_rational(words[1], first_ln)?))
        }
        "lambda" => {
            let mut out = vec![None; names.len()];
            for &(ln, line) in block {
                let w: Vec<&str> = line.split_whitespace().collect();
                if w.len() != 3 || w[0] != "lambda" {
                    return Err(syntax(ln, 1, "expected `lambda <ω> <q>`"));
                }
                let k = names
                    .iter()
                    .position(|n| n == w[1])
                    .ok_or_else(|| Error::UnknownOmega(w[1].to_string()))?;
                if out[k].is_some() {
                    return Err(syntax(ln, 1, format!("weight for `{}` given twice", w[1])));
                }
                out[k] = Some(parse_rational(w[2], ln)?);
            }
            Ok(WeightDecl::PerElement(out))
        }
        _ => {
            let n = names.len();
            if block.len() != n {
                return Err(syntax(first_ln, 1, format!("a weight matrix needs {n} rows")));
            }
            let mut m = Vec::with_capacity(n);
            for &(ln, line) in block {
                let row = line
                    .split_whitespace()
                    .map(|c| parse_rational(c, ln))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != n {
                    return Err(syntax(ln, 1, format!("weight matrix rows need {n} entries")));
                }
                m.push(row);
            }
            Ok(WeightDecl::Matrix(m))
        }
    }
}

/// The carrier with the table for `op` rendered in file syntax.
pub fn render_table(s: &OmegaStructure, op: OmegaOp) -> String {
    let t = s.table(op);
    let mut out = String::new();
    for a in s.elements() {
        let row: Vec<&str> = s.elements().map(|b| s.name(t.get(a, b))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
