use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exceptional::GluedPair;
use crate::superfield::SuperField;
use crate::superpoly::{Chart, Parity, SuperPolynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Int(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((pos, Tok::Ident(s.replace('ξ', "x"))));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Value {
    Poly(SuperPolynomial),
    Field(SuperField),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    chart: Arc<Chart>,
    fields: Option<&'a HashMap<String, SuperField>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos, msg: msg.into() })
    }

    fn add(&self, pos: usize, a: Value, b: Value, negate: bool) -> Result<Value> {
        let sign = Rational::from_integer(if negate { (-1).into() } else { 1.into() });
        match (a, b) {
            (Value::Poly(a), Value::Poly(b)) => Ok(Value::Poly(&a + &b.scale(&sign))),
            (Value::Field(a), Value::Field(b)) => Ok(Value::Field(&a + &b.scale(&sign))),
            (Value::Poly(a), Value::Field(b)) if a.is_zero() => Ok(Value::Field(b.scale(&sign))),
            (Value::Field(a), Value::Poly(b)) if b.is_zero() => Ok(Value::Field(a)),
            _ => self.err(pos, "cannot add a polynomial and a field"),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut negate = false;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            negate = *c == '-';
            self.at += 1;
        }
        let pos = self.pos();
        let first = self.term()?;
        let mut acc = self.add(pos, Value::Poly(SuperPolynomial::zero(&self.chart)), first, negate)?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let negate = *c == '-';
            self.at += 1;
            let pos = self.pos();
            let rhs = self.term()?;
            acc = self.add(pos, acc, rhs, negate)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek() {
            let op = *c;
            self.at += 1;
            let pos = self.pos();
            let rhs = self.factor()?;
            acc = match (op, acc, rhs) {
                ('*', Value::Poly(a), Value::Poly(b)) => Value::Poly(&a * &b),
                ('*', Value::Poly(a), Value::Field(b)) => Value::Field(b.left_mul(&a)?),
                ('*', Value::Field(_), _) => return self.err(pos, "a derivation must be the last factor of a term"),
                ('/', lhs, Value::Poly(b)) => {
                    let c = b.constant_term();
                    if b.n_terms() > 1 || (b.n_terms() == 1 && c.is_zero()) {
                        return self.err(pos, "division is only defined by nonzero constants");
                    }
                    if c.is_zero() {
                        return self.err(pos, "division by zero");
                    }
                    let inv = c.recip();
                    match lhs {
                        Value::Poly(a) => Value::Poly(a.scale(&inv)),
                        Value::Field(a) => Value::Field(a.scale(&inv)),
                    }
                }
                _ => return self.err(pos, "division by a field"),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let pos = self.pos();
        let bare_odd = match self.peek() {
            Some(Tok::Ident(name)) => self.chart.find(name).map(|v| self.chart.parity(v) == Parity::Odd).unwrap_or(false),
            _ => false,
        };
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.at += 1;
            let epos = self.pos();
            let exp = match self.peek() {
                Some(Tok::Int(n)) => n.to_u32().ok_or(Error::Syntax { pos: epos, msg: "exponent too large".into() })?,
                _ => return self.err(epos, "expected an integer exponent"),
            };
            self.at += 1;
            if bare_odd && exp > 1 {
                let var = match &self.toks[self.at - 3].1 {
                    Tok::Ident(n) => n.clone(),
                    _ => String::new(),
                };
                return Err(Error::OddExponent { var, exp, pos });
            }
            return match base {
                Value::Poly(p) => {
                    let mut acc = SuperPolynomial::one(&self.chart);
                    for _ in 0..exp {
                        acc = &acc * &p;
                    }
                    Ok(Value::Poly(acc))
                }
                Value::Field(_) => self.err(epos, "fields cannot be raised to a power"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Value::Poly(SuperPolynomial::constant(&self.chart, Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(v) = self.chart.find(&name) {
                    return Ok(Value::Poly(SuperPolynomial::var(&self.chart, v)));
                }
                if let Some(fields) = self.fields {
                    if let Some(d) = fields.get(&name) {
                        return Ok(Value::Field(d.clone()));
                    }
                    if let Some(v) = name.strip_prefix('D').and_then(|rest| self.chart.find(rest)) {
                        return Ok(Value::Field(SuperField::partial(&self.chart, v)));
                    }
                }
                self.err(pos, format!("unknown identifier `{name}`"))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => self.err(self.pos(), "expected `)`"),
                }
            }
            Some(Tok::Op(c)) => self.err(pos, format!("unexpected `{c}`")),
            None => self.err(pos, "unexpected end of input"),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.toks.len() {
            self.err(self.pos(), "trailing input")
        } else {
            Ok(())
        }
    }
}

fn run(text: &str, chart: &Arc<Chart>, fields: Option<&HashMap<String, SuperField>>) -> Result<Value> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len(), chart: chart.clone(), fields };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Parses a polynomial on `chart`. Odd variables admit exponent 1 only.
pub fn parse_poly(text: &str, chart: &Arc<Chart>) -> Result<SuperPolynomial> {
    match run(text, chart, None)? {
        Value::Poly(p) => Ok(p),
        Value::Field(_) => Err(Error::Syntax { pos: 0, msg: "expected a polynomial".into() }),
    }
}

/// Parses a field on `chart`; `named` supplies symbols such as `d` or `F`.
pub fn parse_field(text: &str, chart: &Arc<Chart>, named: &HashMap<String, SuperField>) -> Result<SuperField> {
    match run(text, chart, Some(named))? {
        Value::Field(d) => Ok(d),
        Value::Poly(p) if p.is_zero() => Ok(SuperField::zero(chart)),
        Value::Poly(_) => Err(Error::Syntax { pos: 0, msg: "expected a field (use D<var> for derivations)".into() }),
    }
}

/// Parses a glued pair `(f, g)` of generating functions in `u1..u3, x1..x3`.
pub fn parse_pair(text: &str) -> Result<GluedPair> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or(Error::Syntax { pos: offset, msg: "a pair is written `(f, g)`".into() })?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return Err(Error::Syntax { pos: offset + 1 + i, msg: "a pair has exactly two slots".into() });
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    let i = split.ok_or(Error::Syntax { pos: offset, msg: "missing `,` between the slots".into() })?;
    let chart = Chart::periplectic();
    let shift = |e: Error, by: usize| match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        Error::OddExponent { var, exp, pos } => Error::OddExponent { var, exp, pos: pos + by },
        other => other,
    };
    let f = parse_poly(&inner[..i], &chart).map_err(|e| shift(e, offset + 1))?;
    let g = parse_poly(&inner[i + 1..], &chart).map_err(|e| shift(e, offset + 2 + i))?;
    Ok(GluedPair::new(f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{format_field, format_poly};

    #[test]
    fn parse_examples() {
        let c = Chart::standard();
        let p = parse_poly("x2*x1", &c).unwrap();
        assert_eq!(p, -(&SuperPolynomial::named(&c, "x1").unwrap() * &SuperPolynomial::named(&c, "x2").unwrap()));
        let p = parse_poly("u1^2*x3 - 1/2*y", &c).unwrap();
        assert_eq!(p.n_terms(), 2);
        assert!(matches!(parse_poly("x1^2", &c), Err(Error::OddExponent { exp: 2, pos: 0, .. })));
        assert!(matches!(parse_poly("u1 + * y", &c), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("u1 + z", &c), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("(u1", &c), Err(Error::Syntax { pos: 3, .. })));
        assert!(parse_poly("(x1)^2", &c).unwrap().is_zero());
        assert_eq!(parse_poly("-(u1 - y)", &c).unwrap(), parse_poly("y - u1", &c).unwrap());
    }

    #[test]
    fn fields_round_trip() {
        let c = Chart::standard();
        let named = HashMap::new();
        let d = parse_field("y*x1*Dx1 + (u1 - 1/2*y)*Dy - x1*x2*Du3 + Dx2", &c, &named).unwrap();
        let text = format_field(&d);
        assert_eq!(parse_field(&text, &c, &named).unwrap(), d);
        assert!(parse_field("Du1*u1", &c, &named).is_err());
    }

    #[test]
    fn pairs() {
        let p = parse_pair("(0,u1)").unwrap();
        assert!(p.f().is_zero());
        assert_eq!(format_poly(p.g()), "u1");
        assert!(parse_pair("(u1)").is_err());
        assert!(parse_pair("(y, 0)").is_err());
    }
}
