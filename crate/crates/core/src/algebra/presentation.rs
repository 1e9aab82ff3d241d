//! Ring presentation files.
//!
//! ```text
//! # the cusp, with the ideal (x, y)^2
//! char: 32003
//! vars: x, y
//! relations: x^2 - y^3
//! dim: 1
//! cm: true
//! ideal: x^2, x*y,
//!        y^2
//! ```
//!
//! Each field is `key: value`. Lists are comma separated and may continue on
//! indented lines. `#` starts a comment. `char` defaults to 32003, `relations`
//! to the empty list and `cm` to `false`; the others are required.
//!
//! [`RingPresentation::to_text`] writes the canonical form: one line per field
//! in the order above. Parsing canonical text and writing it again reproduces
//! it byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::poly::{parse_located, Expr, Located, Polynomial};
use crate::error::{Error, Result};
use crate::kernel::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub relations: Vec<Expr>,
    pub dimension: usize,
    pub cohen_macaulay: bool,
    pub ideal: Vec<Expr>,
}

const KEYS: [&str; 6] = ["char", "vars", "relations", "dim", "cm", "ideal"];

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Field {
    key_line: usize,
    key_column: usize,
    value: Vec<Located>,
}

impl Field {
    fn trimmed(&self) -> (String, usize, usize) {
        let s: String = self.value.iter().map(|c| c.ch).collect();
        let first = self.value.iter().find(|c| !c.ch.is_whitespace());
        let (l, c) = first.map_or((self.key_line, self.key_column), |c| (c.line, c.column));
        (s.trim().to_string(), l, c)
    }

    fn items(&self) -> Result<Vec<&[Located]>> {
        if self.value.iter().all(|c| c.ch.is_whitespace()) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in self.value.iter().enumerate() {
            match c.ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(&self.value[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(&self.value[start..]);
        for (k, item) in out.iter().enumerate() {
            if item.iter().all(|c| c.ch.is_whitespace()) {
                let (l, c) = if k == 0 {
                    (self.key_line, self.key_column)
                } else {
                    let prev = out[k - 1];
                    prev.last().map_or((self.key_line, self.key_column), |c| {
                        (c.line, c.column + 1)
                    })
                };
                return Err(perr(l, c, "empty list item"));
            }
        }
        Ok(out)
    }

    fn end(&self) -> (usize, usize) {
        self.value
            .last()
            .map_or((self.key_line, self.key_column), |c| (c.line, c.column + 1))
    }
}

impl RingPresentation {
    pub fn parse(text: &str) -> Result<RingPresentation> {
        let mut fields: BTreeMap<&'static str, Field> = BTreeMap::new();
        let mut current: Option<&'static str> = None;
        for (li, raw) in text.lines().enumerate() {
            let line_no = li + 1;
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let located = |offset_chars: usize, s: &str| -> Vec<Located> {
                s.chars()
                    .enumerate()
                    .map(|(i, ch)| Located {
                        ch,
                        line: line_no,
                        column: offset_chars + i + 1,
                    })
                    .collect()
            };
            if line.starts_with(char::is_whitespace) {
                let Some(key) = current else {
                    return Err(perr(line_no, 1, "continuation line without a field"));
                };
                let f = fields.get_mut(key).unwrap();
                f.value.push(Located {
                    ch: ' ',
                    line: line_no,
                    column: 1,
                });
                f.value.extend(located(0, line));
                continue;
            }
            let Some(colon) = line.find(':') else {
                return Err(perr(line_no, 1, "expected `key: value`"));
            };
            let key_text = line[..colon].trim();
            let Some(&key) = KEYS.iter().find(|k| **k == key_text) else {
                return Err(perr(line_no, 1, format!("unknown field `{key_text}`")));
            };
            if fields.contains_key(key) {
                return Err(perr(line_no, 1, format!("duplicate field `{key}`")));
            }
            let offset = line[..colon + 1].chars().count();
            fields.insert(
                key,
                Field {
                    key_line: line_no,
                    key_column: 1,
                    value: located(offset, &line[colon + 1..]),
                },
            );
            current = Some(key);
        }

        let last_line = text.lines().count().max(1);
        let missing = |k: &str| perr(last_line, 1, format!("missing field `{k}`"));

        let characteristic = match fields.get("char") {
            None => PrimeField::DEFAULT_PRIME,
            Some(f) => {
                let (s, l, c) = f.trimmed();
                s.parse::<u32>()
                    .map_err(|_| perr(l, c, format!("invalid characteristic `{s}`")))?
            }
        };
        PrimeField::new(characteristic)?;

        let vars_field = fields.get("vars").ok_or_else(|| missing("vars"))?;
        let mut variables = Vec::new();
        for item in vars_field.items()? {
            let name: String = item.iter().map(|c| c.ch).collect::<String>().trim().to_string();
            let pos = item.iter().find(|c| !c.ch.is_whitespace()).unwrap();
            let valid = name.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(perr(pos.line, pos.column, format!("invalid variable name `{name}`")));
            }
            if variables.contains(&name) {
                return Err(perr(pos.line, pos.column, format!("duplicate variable `{name}`")));
            }
            variables.push(name);
        }
        if variables.is_empty() {
            return Err(perr(vars_field.key_line, 1, "at least one variable is required"));
        }

        let exprs = |key: &str| -> Result<Vec<Expr>> {
            match fields.get(key) {
                None => Ok(Vec::new()),
                Some(f) => {
                    let end = f.end();
                    f.items()?
                        .into_iter()
                        .map(|item| {
                            let e = parse_located(item, end)?;
                            let mut used = Vec::new();
                            e.variables(&mut used);
                            if let Some(u) = used.iter().find(|u| !variables.contains(u)) {
                                let pos = item.iter().find(|c| !c.ch.is_whitespace()).unwrap();
                                return Err(perr(
                                    pos.line,
                                    pos.column,
                                    format!("undeclared variable `{u}`"),
                                ));
                            }
                            Ok(e)
                        })
                        .collect()
                }
            }
        };
        let relations = exprs("relations")?;
        if !fields.contains_key("ideal") {
            return Err(missing("ideal"));
        }
        let ideal = exprs("ideal")?;

        let dim_field = fields.get("dim").ok_or_else(|| missing("dim"))?;
        let (s, l, c) = dim_field.trimmed();
        let dimension = s
            .parse::<usize>()
            .map_err(|_| perr(l, c, format!("invalid dimension `{s}`")))?;

        let cohen_macaulay = match fields.get("cm") {
            None => false,
            Some(f) => {
                let (s, l, c) = f.trimmed();
                match s.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return Err(perr(l, c, format!("expected `true` or `false`, found `{s}`"))),
                }
            }
        };

        let p = RingPresentation {
            characteristic,
            variables,
            relations,
            dimension,
            cohen_macaulay,
            ideal,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks the invariants that do not depend on file positions.
    pub fn validate(&self) -> Result<()> {
        let field = PrimeField::new(self.characteristic)?;
        if self.dimension > self.variables.len() {
            return Err(Error::domain(format!(
                "dimension {} exceeds the number of variables {}",
                self.dimension,
                self.variables.len()
            )));
        }
        for (i, r) in self.relation_polynomials_in(field)?.iter().enumerate() {
            if r.constant_term() != 0 {
                return Err(Error::domain(format!(
                    "relation {} has a nonzero constant term modulo {}",
                    i + 1,
                    self.characteristic
                )));
            }
        }
        Ok(())
    }

    /// Same characteristic, variables and relations; the ideal may differ.
    pub fn same_ring(&self, other: &RingPresentation) -> bool {
        self.characteristic == other.characteristic
            && self.variables == other.variables
            && self.relations == other.relations
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.characteristic).expect("validated characteristic")
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Cohen-Macaulay either by assertion or because there are no relations.
    pub fn is_cohen_macaulay(&self) -> bool {
        self.cohen_macaulay || self.relations.is_empty()
    }

    fn relation_polynomials_in(&self, field: PrimeField) -> Result<Vec<Polynomial>> {
        self.relations
            .iter()
            .map(|e| e.to_polynomial(field, &self.variables))
            .collect()
    }

    pub fn relation_polynomials(&self) -> Result<Vec<Polynomial>> {
        self.relation_polynomials_in(self.field())
    }

    pub fn ideal_polynomials(&self) -> Result<Vec<Polynomial>> {
        self.ideal
            .iter()
            .map(|e| e.to_polynomial(self.field(), &self.variables))
            .collect()
    }

    /// Same ring and ideal over a different prime.
    pub fn with_characteristic(&self, p: u32) -> Result<RingPresentation> {
        let mut out = self.clone();
        out.characteristic = p;
        out.validate()?;
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[Expr]| {
            v.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let line = |k: &str, v: String| {
            if v.is_empty() {
                format!("{k}:\n")
            } else {
                format!("{k}: {v}\n")
            }
        };
        let mut s = String::new();
        s.push_str(&line("char", self.characteristic.to_string()));
        s.push_str(&line("vars", self.variables.join(", ")));
        s.push_str(&line("relations", join(&self.relations)));
        s.push_str(&line("dim", self.dimension.to_string()));
        s.push_str(&line("cm", self.cohen_macaulay.to_string()));
        s.push_str(&line("ideal", join(&self.ideal)));
        s
    }
}

impl FromStr for RingPresentation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RingPresentation::parse(s)
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = "\
# the cusp
char: 32003
vars: x, y
relations: x^2 - y^3
dim: 1
cm: true
ideal: x^2, x*y,
       y^2   # continued
";

    #[test]
    fn parse_cusp() {
        let p = RingPresentation::parse(CUSP).unwrap();
        assert_eq!(p.variables, vec!["x", "y"]);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.ideal.len(), 3);
        assert_eq!(p.dimension, 1);
        assert!(p.cohen_macaulay);
        let text = p.to_text();
        assert_eq!(
            text,
            "char: 32003\nvars: x, y\nrelations: x^2 - y^3\ndim: 1\ncm: true\nideal: x^2, x*y, y^2\n"
        );
        assert_eq!(RingPresentation::parse(&text).unwrap().to_text(), text);
    }

    #[test]
    fn defaults_and_empty_relations() {
        let p = RingPresentation::parse("vars: x\ndim: 1\nideal: x^3\n").unwrap();
        assert_eq!(p.characteristic, 32003);
        assert!(p.relations.is_empty());
        assert!(!p.cohen_macaulay);
        assert!(p.is_cohen_macaulay());
        assert!(p.to_text().contains("relations:\n"));
    }

    #[test]
    fn errors() {
        let bad_const = "vars: x, y\nrelations: x - 1\ndim: 1\nideal: x\n";
        assert!(matches!(RingPresentation::parse(bad_const), Err(Error::Domain(_))));
        let composite = "char: 32001\nvars: x\ndim: 1\nideal: x\n";
        assert!(matches!(RingPresentation::parse(composite), Err(Error::Domain(_))));
        match RingPresentation::parse("vars: x, y\ndim: 2\nideal: x, y +* x\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 14)),
            other => panic!("{other:?}"),
        }
        match RingPresentation::parse("vars: x\ndim: 1\nideal: z\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 8)),
            other => panic!("{other:?}"),
        }
        assert!(RingPresentation::parse("vars: x\ndim: 2\nideal: x\n").is_err());
        assert!(RingPresentation::parse("vars: x\ndim: 1\n").is_err());
        assert!(RingPresentation::parse("vars: x\nbogus: 1\ndim: 1\nideal: x\n").is_err());
        // constant term that vanishes modulo p is fine
        assert!(RingPresentation::parse("char: 5\nvars: x\nrelations: x^2 + 5\ndim: 0\nideal: x\n").is_ok());
    }
}
