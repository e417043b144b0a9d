//! Text format for model files.
//!
//! ```text
//! # S^2 x S^2 minus a disk
//! name: s2xs2
//! generators: a:1, b:1
//! differential:
//!   # symbol: bracket expression
//! pairing:
//!   a, b, 1
//! ambient_dim: 4
//! minimal: true
//! ```
//!
//! Expressions are sums of terms `[coef[*]] atom`, where an atom is a symbol, a bracket
//! `[u,v]` or a parenthesized expression and coefficients are integers or `p/q`. Pairing
//! entries listed in one order only are completed by graded anti-symmetry.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Zero};
use thiserror::Error;

use super::model::{Generator, ModelSpec, Pairing};
use super::tensor::Tensor;
use crate::ratlinalg::{sign, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Generators,
    Differential,
    Pairing,
}

struct Line<'a> {
    number: usize,
    indent: usize,
    text: &'a str,
}

fn parse_rational(s: &str, line: usize, column: usize) -> Result<Scalar, ParseError> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, ParseError> {
        t.trim()
            .parse::<BigInt>()
            .or_else(|_| err(line, column, format!("invalid rational literal `{s}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return err(line, column, "zero denominator");
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn parse_degree(s: &str, line: usize, column: usize) -> Result<i64, ParseError> {
    s.trim()
        .parse::<i64>()
        .or_else(|_| err(line, column, format!("invalid degree `{}`", s.trim())))
}

/// Parses a model file. Structural validation (degrees, `d² = 0`, pairing rules) is separate.
pub fn parse_model(src: &str) -> Result<ModelSpec, ParseError> {
    let lines: Vec<Line> = src
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let trimmed = body.trim_end();
            let text = trimmed.trim_start();
            (!text.is_empty()).then(|| Line {
                number: i + 1,
                indent: trimmed.len() - text.len(),
                text,
            })
        })
        .collect();

    let mut name: Option<String> = None;
    let mut generators: Vec<(Generator, usize, usize)> = Vec::new();
    let mut differential_src: Vec<(String, String, usize, usize)> = Vec::new();
    let mut pairing_src: Vec<(String, String, Scalar, usize, usize)> = Vec::new();
    let mut ambient_dim: Option<i64> = None;
    let mut minimal = true;
    let mut section = Section::None;

    let mut add_generator = |item: &str, line: usize, column: usize| -> Result<(), ParseError> {
        let Some((sym, deg)) = item.split_once(':') else {
            return err(line, column, format!("expected `symbol:degree`, found `{item}`"));
        };
        let sym = sym.trim();
        check_symbol(sym, line, column)?;
        let degree = parse_degree(deg, line, column + sym.len() + 1)?;
        generators.push((
            Generator {
                symbol: sym.to_string(),
                degree,
            },
            line,
            column,
        ));
        Ok(())
    };

    for l in &lines {
        let col0 = l.indent + 1;
        if l.indent > 0 {
            match section {
                Section::None => return err(l.number, col0, "indented line outside a section"),
                Section::Generators => add_generator(l.text, l.number, col0)?,
                Section::Differential => {
                    let Some((sym, expr)) = l.text.split_once(':') else {
                        return err(l.number, col0, "expected `symbol: expression`");
                    };
                    let offset = l.text.len() - l.text[sym.len() + 1..].trim_start().len();
                    differential_src.push((sym.trim().to_string(), expr.trim().to_string(), l.number, col0 + offset));
                }
                Section::Pairing => {
                    for entry in l.text.split(';').filter(|e| !e.trim().is_empty()) {
                        pairing_src.push(parse_pairing_entry(entry, l.number, col0)?);
                    }
                }
            }
            continue;
        }
        let Some((key, value)) = l.text.split_once(':') else {
            return err(l.number, col0, format!("expected `key: value`, found `{}`", l.text));
        };
        let value = value.trim();
        let vcol = col0 + key.len() + 1 + (l.text[key.len() + 1..].len() - l.text[key.len() + 1..].trim_start().len());
        section = Section::None;
        match key.trim() {
            "name" => {
                if value.is_empty() {
                    return err(l.number, vcol, "empty model name");
                }
                name = Some(value.to_string());
            }
            "generators" => {
                section = Section::Generators;
                for item in value.split(',').filter(|s| !s.trim().is_empty()) {
                    add_generator(item.trim(), l.number, vcol)?;
                }
            }
            "differential" => {
                section = Section::Differential;
                if !value.is_empty() {
                    return err(l.number, vcol, "differential entries go on indented lines");
                }
            }
            "pairing" => {
                section = Section::Pairing;
                for entry in value.split(';').filter(|e| !e.trim().is_empty()) {
                    pairing_src.push(parse_pairing_entry(entry, l.number, vcol)?);
                }
            }
            "ambient_dim" => ambient_dim = Some(parse_degree(value, l.number, vcol)?),
            "minimal" => {
                minimal = match value {
                    "true" => true,
                    "false" => false,
                    _ => return err(l.number, vcol, "expected `true` or `false`"),
                }
            }
            other => return err(l.number, col0, format!("unknown key `{other}`")),
        }
    }

    let Some(name) = name else {
        return err(1, 1, "missing `name`");
    };
    let symbols: BTreeMap<String, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, (g, _, _))| (g.symbol.clone(), i))
        .collect();
    let gens: Vec<Generator> = generators.into_iter().map(|(g, _, _)| g).collect();
    let degrees: Vec<i64> = gens.iter().map(|g| g.degree).collect();

    let mut differential = BTreeMap::new();
    for (sym, expr, line, column) in differential_src {
        let Some(&i) = symbols.get(&sym) else {
            return err(line, column, format!("differential of unknown generator `{sym}`"));
        };
        if differential.contains_key(&i) {
            return err(line, column, format!("differential of `{sym}` given twice"));
        }
        let mut p = ExprParser {
            src: expr.as_bytes(),
            pos: 0,
            line,
            column,
            symbols: &symbols,
            degrees: &degrees,
        };
        let (t, _) = p.parse_all()?;
        if !t.is_zero() {
            differential.insert(i, t);
        }
    }

    let pairing = if pairing_src.is_empty() {
        None
    } else {
        let m = gens.len();
        let mut matrix: Vec<Vec<Option<Scalar>>> = vec![vec![None; m]; m];
        for (a, b, v, line, column) in &pairing_src {
            let (Some(&i), Some(&j)) = (symbols.get(a), symbols.get(b)) else {
                return err(*line, *column, format!("pairing mentions unknown symbol in ({a}, {b})"));
            };
            if matrix[i][j].is_some() {
                return err(*line, *column, format!("pairing ⟨{a},{b}⟩ given twice"));
            }
            matrix[i][j] = Some(v.clone());
        }
        let mut full = vec![vec![Scalar::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                full[i][j] = match (&matrix[i][j], &matrix[j][i]) {
                    (Some(v), _) => v.clone(),
                    (None, Some(w)) => -(sign((degrees[i] * degrees[j]).unsigned_abs()) * w),
                    (None, None) => Scalar::zero(),
                };
            }
        }
        Some(Pairing { matrix: full })
    };

    Ok(ModelSpec {
        name,
        generators: gens,
        differential,
        pairing,
        ambient_dim,
        minimal,
    })
}

fn check_symbol(sym: &str, line: usize, column: usize) -> Result<(), ParseError> {
    let ok = !sym.is_empty()
        && sym.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && sym.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        err(line, column, format!("invalid symbol `{sym}`"))
    }
}

fn parse_pairing_entry(
    entry: &str,
    line: usize,
    column: usize,
) -> Result<(String, String, Scalar, usize, usize), ParseError> {
    let cleaned = entry.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = cleaned.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return err(
            line,
            column,
            format!("expected `symbol, symbol, rational`, found `{}`", entry.trim()),
        );
    }
    check_symbol(parts[0], line, column)?;
    check_symbol(parts[1], line, column)?;
    let v = parse_rational(parts[2], line, column)?;
    Ok((parts[0].to_string(), parts[1].to_string(), v, line, column))
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column: usize,
    symbols: &'a BTreeMap<String, usize>,
    degrees: &'a [i64],
}

impl ExprParser<'_> {
    fn col(&self) -> usize {
        self.column + self.pos
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col(), message)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected `{}`", c as char))
        }
    }

    fn parse_all(&mut self) -> Result<(Tensor, Option<i64>), ParseError> {
        let out = self.expr()?;
        if self.peek().is_some() {
            return self.fail("unexpected trailing input");
        }
        Ok(out)
    }

    /// Returns the tensor and its degree (`None` for zero).
    fn expr(&mut self) -> Result<(Tensor, Option<i64>), ParseError> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        } else if self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let (mut acc, mut degree) = self.term()?;
        if negate {
            acc = acc.scaled(&-crate::ratlinalg::one());
        }
        while let Some(c) = self.peek() {
            if c != b'+' && c != b'-' {
                break;
            }
            self.pos += 1;
            let at = self.col();
            let (t, d) = self.term()?;
            degree = self.merge_degree(degree, d, at)?;
            let s = if c == b'+' {
                crate::ratlinalg::one()
            } else {
                -crate::ratlinalg::one()
            };
            acc.add_scaled(&s, &t);
        }
        Ok((acc, degree))
    }

    fn merge_degree(&self, a: Option<i64>, b: Option<i64>, at: usize) -> Result<Option<i64>, ParseError> {
        match (a, b) {
            (Some(x), Some(y)) if x != y => err(self.line, at, format!("inhomogeneous sum: degrees {x} and {y}")),
            (Some(x), _) | (None, Some(x)) => Ok(Some(x)),
            (None, None) => Ok(None),
        }
    }

    fn term(&mut self) -> Result<(Tensor, Option<i64>), ParseError> {
        let start = self.pos;
        let mut coeff = crate::ratlinalg::one();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let s = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/') {
                self.pos += 1;
            }
            let lit = std::str::from_utf8(&self.src[s..self.pos]).expect("ascii");
            coeff = parse_rational(lit, self.line, self.column + s)?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            }
            if matches!(
                self.peek(),
                None | Some(b'+') | Some(b'-') | Some(b',') | Some(b']') | Some(b')')
            ) {
                self.pos = start;
                return self.fail("a coefficient must multiply a symbol or bracket");
            }
        }
        let (t, d) = self.atom()?;
        Ok((t.scaled(&coeff), if coeff.is_zero() { None } else { d }))
    }

    fn atom(&mut self) -> Result<(Tensor, Option<i64>), ParseError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let (u, du) = self.expr()?;
                self.expect(b',')?;
                let (v, dv) = self.expr()?;
                self.expect(b']')?;
                match (du, dv) {
                    (Some(a), Some(b)) => Ok((u.commutator(a as u32, &v, b as u32), Some(a + b))),
                    _ => Ok((Tensor::zero(), None)),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let out = self.expr()?;
                self.expect(b')')?;
                Ok(out)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let s = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let sym = std::str::from_utf8(&self.src[s..self.pos]).expect("ascii");
                match self.symbols.get(sym) {
                    Some(&i) => Ok((Tensor::word(vec![i as u8]), Some(self.degrees[i]))),
                    None => err(self.line, self.column + s, format!("unknown symbol `{sym}`")),
                }
            }
            Some(b'0') => {
                self.pos += 1;
                Ok((Tensor::zero(), None))
            }
            _ => self.fail("expected a symbol, `[` or `(`"),
        }
    }
}
