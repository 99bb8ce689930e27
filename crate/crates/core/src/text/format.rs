use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use crate::exceptional::GluedPair;
use crate::superfield::SuperField;
use crate::superpoly::{Chart, Monomial, Parity, SuperPolynomial, Var};
use crate::Rational;

fn monomial_text(chart: &Chart, m: &Monomial, unicode: bool) -> String {
    let mut factors = Vec::new();
    for (i, &e) in m.even_exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(chart.even_names()[i].clone()),
            _ => factors.push(format!("{}^{}", chart.even_names()[i], e)),
        }
    }
    for j in 0..chart.n_odd() {
        if m.odd_mask() & (1 << j) != 0 {
            let name = &chart.odd_names()[j];
            if unicode {
                factors.push(name.replacen('x', "ξ", 1));
            } else {
                factors.push(name.clone());
            }
        }
    }
    factors.join("*")
}

fn rational_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `|c|·m` without sign, or `None` for the empty product.
fn abs_term(chart: &Chart, m: &Monomial, c: &Rational, unicode: bool) -> String {
    let a = c.abs();
    let mono = monomial_text(chart, m, unicode);
    if mono.is_empty() {
        rational_text(&a)
    } else if a.is_one() {
        mono
    } else {
        format!("{}*{}", rational_text(&a), mono)
    }
}

fn poly_text(p: &SuperPolynomial, unicode: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let body = abs_term(p.chart(), m, c, unicode);
        match (k, c.is_negative()) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Canonical text: terms in descending graded-lexicographic order.
pub fn format_poly(p: &SuperPolynomial) -> String {
    poly_text(p, false)
}

/// Display variant spelling odd variables as `ξ`.
pub fn format_poly_unicode(p: &SuperPolynomial) -> String {
    poly_text(p, true)
}

pub fn format_field(d: &SuperField) -> String {
    let chart = d.chart();
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (v, c) in d.components() {
        if c.is_zero() {
            continue;
        }
        let dir = format!("D{}", chart.name(v));
        if c.n_terms() == 1 {
            let (m, k) = c.terms().next().unwrap();
            let mono = monomial_text(chart, m, false);
            let a = k.abs();
            let body = match (mono.is_empty(), a.is_one()) {
                (true, true) => dir,
                (true, false) => format!("{}*{}", rational_text(&a), dir),
                (false, true) => format!("{mono}*{dir}"),
                (false, false) => format!("{}*{mono}*{dir}", rational_text(&a)),
            };
            pieces.push((k.is_negative(), body));
        } else {
            pieces.push((false, format!("({})*{}", format_poly(c), dir)));
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

pub fn format_pair(p: &GluedPair) -> String {
    format!("({}, {})", format_poly(p.f()), format_poly(p.g()))
}

/// Structured record of a polynomial: canonical text, parity when homogeneous,
/// and the term list with exact-rational coefficient strings.
pub fn poly_record(p: &SuperPolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| json!({ "coeff": rational_text(c), "monomial": monomial_text(p.chart(), m, false) }))
        .collect();
    let parity = p.parity().ok().map(|x: Parity| x.to_string());
    json!({ "poly": format_poly(p), "parity": parity, "terms": terms })
}

/// Structured record of a field. On the standard `(4|3)` chart the components are
/// grouped as `P` (on `∂ξ_i`), `Q` (on `∂u_i`) and `R` (on `∂y`).
pub fn field_record(d: &SuperField) -> Value {
    let chart = d.chart();
    if chart.same_vars(&Chart::standard()) {
        let get = |name: &str| format_poly(d.component(chart.var(name).unwrap()));
        json!({
            "P": [get("x1"), get("x2"), get("x3")],
            "Q": [get("u1"), get("u2"), get("u3")],
            "R": get("y"),
            "text": format_field(d),
        })
    } else {
        let mut comps = Map::new();
        for v in chart.vars() {
            comps.insert(chart.name(v).to_string(), Value::String(format_poly(d.component(Var(v.index())))));
        }
        json!({ "components": comps, "text": format_field(d) })
    }
}

pub fn pair_record(p: &GluedPair) -> Value {
    json!({ "f": format_poly(p.f()), "g": format_poly(p.g()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    #[test]
    fn prints_canonical_forms() {
        let c = Chart::standard();
        let p = parse_poly("x2*x1", &c).unwrap();
        assert_eq!(format_poly(&p), "-x1*x2");
        let p = parse_poly("u1^2*x3 - 1/2*y", &c).unwrap();
        assert_eq!(format_poly(&p), "u1^2*x3 - 1/2*y");
        assert_eq!(format_poly_unicode(&p), "u1^2*ξ3 - 1/2*y");
        assert_eq!(format_poly(&SuperPolynomial::zero(&c)), "0");
    }

    #[test]
    fn records() {
        let d = crate::exceptional::euler_field();
        let r = field_record(&d);
        assert_eq!(r["Q"], json!(["u1", "u2", "u3"]));
        assert_eq!(r["P"], json!(["x1", "x2", "x3"]));
        assert_eq!(r["R"], json!("y"));
        let c = Chart::periplectic();
        let pair = GluedPair::new(SuperPolynomial::var(&c, c.even_var(0)), SuperPolynomial::zero(&c));
        assert_eq!(pair_record(&pair), json!({ "f": "u1", "g": "0" }));
        let p = parse_poly("-2/5*u1*x2 + 3", &c).unwrap();
        let r = poly_record(&p);
        assert_eq!(r["terms"][0]["coeff"], json!("-2/5"));
    }
}
