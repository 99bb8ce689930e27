use std::collections::HashMap;

use crate::superfield::SuperField;
use crate::superpoly::Chart;
use crate::text::parse_field;

/// One row of the η-notation table: a parser-friendly name, the η symbol and its field.
#[derive(Clone, Debug)]
pub struct DictionaryEntry {
    pub name: &'static str,
    pub symbol: &'static str,
    pub field: SuperField,
}

const G_MINUS1: [(&str, &str, &str); 7] = [
    ("eta123", "η1η2η3", "-Dy"),
    ("eta1", "η1", "-Du1"),
    ("eta2", "η2", "-Du2"),
    ("eta3", "η3", "-Du3"),
    ("eta23", "η2η3", "-Dx1"),
    ("eta31", "η3η1", "-Dx2"),
    ("eta12", "η1η2", "-Dx3"),
];

const G0: [(&str, &str, &str); 24] = [
    ("deta1", "∂η1", "-y*Dx1 - x2*Du3 + x3*Du2"),
    ("deta2", "∂η2", "-y*Dx2 - x3*Du1 + x1*Du3"),
    ("deta3", "∂η3", "-y*Dx3 - x1*Du2 + x2*Du1"),
    ("eta1deta1", "η1∂η1", "-u1*Du1 - x2*Dx2 - x3*Dx3 - y*Dy"),
    ("eta2deta2", "η2∂η2", "-u2*Du2 - x1*Dx1 - x3*Dx3 - y*Dy"),
    ("eta3deta3", "η3∂η3", "-u3*Du3 - x1*Dx1 - x2*Dx2 - y*Dy"),
    ("eta1deta2", "η1∂η2", "-u2*Du1 + x1*Dx2"),
    ("eta2deta3", "η2∂η3", "-u3*Du2 + x2*Dx3"),
    ("eta3deta1", "η3∂η1", "-u1*Du3 + x3*Dx1"),
    ("eta2deta1", "η2∂η1", "-u1*Du2 + x2*Dx1"),
    ("eta3deta2", "η3∂η2", "-u2*Du3 + x3*Dx2"),
    ("eta1deta3", "η1∂η3", "-u3*Du1 + x1*Dx3"),
    ("eta123deta1", "η1η2η3∂η1", "-u1*Dy"),
    ("eta123deta2", "η1η2η3∂η2", "-u2*Dy"),
    ("eta123deta3", "η1η2η3∂η3", "-u3*Dy"),
    ("eta12deta3", "η1η2∂η3", "-u3*Dx3"),
    ("eta23deta1", "η2η3∂η1", "-u1*Dx1"),
    ("eta31deta2", "η3η1∂η2", "-u2*Dx2"),
    ("eta12deta1", "η1η2∂η1", "-u1*Dx3 - x2*Dy"),
    ("eta23deta2", "η2η3∂η2", "-u2*Dx1 - x3*Dy"),
    ("eta31deta3", "η3η1∂η3", "-u3*Dx2 - x1*Dy"),
    ("eta12deta2", "η1η2∂η2", "-u2*Dx3 + x1*Dy"),
    ("eta23deta3", "η2η3∂η3", "-u3*Dx1 + x2*Dy"),
    ("eta31deta1", "η3η1∂η1", "-u1*Dx2 + x3*Dy"),
];

const EULER: &str = "u1*Du1 + u2*Du2 + u3*Du3 + x1*Dx1 + x2*Dx2 + x3*Dx3 + y*Dy";

const WITNESS: &str =
    "y*x1*Dx1 + y*x2*Dx2 + y*x3*Dx3 + y^2*Dy + x2*x3*Du1 + x3*x1*Du2 + x1*x2*Du3";

fn build(rows: &[(&'static str, &'static str, &str)]) -> Vec<DictionaryEntry> {
    let chart = Chart::standard();
    rows.iter()
        .map(|&(name, symbol, text)| DictionaryEntry {
            name,
            symbol,
            field: parse_field(text, &chart, &HashMap::new()).expect("dictionary entry parses"),
        })
        .collect()
}

/// The seven constant fields realizing the degree `-1` part.
pub fn g_minus1_basis() -> Vec<DictionaryEntry> {
    build(&G_MINUS1)
}

/// The 24 linear fields realizing the degree `0` part, twelve even and twelve odd.
pub fn g0_basis() -> Vec<DictionaryEntry> {
    build(&G0)
}

/// The grading element `d = Σ u_i∂_{u_i} + Σ ξ_i∂_{ξ_i} + y∂_y`.
pub fn euler_field() -> SuperField {
    parse_field(EULER, &Chart::standard(), &HashMap::new()).unwrap()
}

/// The degree 1 element `F` with `[∂_{u_i}, F] = 0` and `[∂_{ξ_i}, F] = -∂_{η_i}`.
///
/// Under left odd derivatives this is `i₂(-ξ1ξ2ξ3)`.
pub fn simplicity_witness() -> SuperField {
    parse_field(WITNESS, &Chart::standard(), &HashMap::new()).unwrap()
}

/// The full η-table together with `d` and `F`.
#[derive(Clone, Debug)]
pub struct BasisDictionary {
    pub g_minus1: Vec<DictionaryEntry>,
    pub g0: Vec<DictionaryEntry>,
    pub d: SuperField,
    pub witness: SuperField,
}

impl BasisDictionary {
    pub fn new() -> Self {
        BasisDictionary {
            g_minus1: g_minus1_basis(),
            g0: g0_basis(),
            d: euler_field(),
            witness: simplicity_witness(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &DictionaryEntry> {
        self.g_minus1.iter().chain(self.g0.iter())
    }

    pub fn get(&self, name: &str) -> Option<&SuperField> {
        match name {
            "d" => Some(&self.d),
            "F" => Some(&self.witness),
            _ => self.entries().find(|e| e.name == name).map(|e| &e.field),
        }
    }
}

impl Default for BasisDictionary {
    fn default() -> Self {
        Self::new()
    }
}

/// Name table for the field parser: every dictionary entry plus `d` and `F`.
pub fn named_fields() -> HashMap<String, SuperField> {
    let dict = BasisDictionary::new();
    let mut out: HashMap<String, SuperField> =
        dict.entries().map(|e| (e.name.to_string(), e.field.clone())).collect();
    out.insert("d".into(), dict.d);
    out.insert("F".into(), dict.witness);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{i1_field, i2_field, membership, Variant};
    use crate::superpoly::Parity;
    use crate::text::parse_poly;

    #[test]
    fn sizes_and_parities() {
        let d = BasisDictionary::new();
        assert_eq!(d.g_minus1.len(), 7);
        assert_eq!(d.g0.len(), 24);
        let odd = d.g0.iter().filter(|e| e.field.parity().unwrap() == Parity::Odd).count();
        assert_eq!(odd, 12);
    }

    #[test]
    fn every_entry_is_a_member() {
        let d = BasisDictionary::new();
        for e in d.entries() {
            let report = membership(&e.field, Variant::Vect).unwrap();
            assert!(report.is_member(), "{}: {}", e.name, report);
        }
    }

    #[test]
    fn witness_is_i2_of_minus_top_form() {
        let f = parse_poly("-x1*x2*x3", &Chart::periplectic()).unwrap();
        assert_eq!(i2_field(&f).unwrap(), simplicity_witness());
    }

    #[test]
    fn deta1_is_i1_of_u1() {
        let u1 = parse_poly("u1", &Chart::periplectic()).unwrap();
        assert_eq!(BasisDictionary::new().get("deta1").unwrap(), &i1_field(&u1).unwrap());
    }
}
