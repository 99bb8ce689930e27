//! Cartan prolongation of a pair `(g₋₁, g₀)` of vector fields.
//!
//! `g_i` is the space of weight `i` fields `D` with `[D, X] ∈ g_{i-1}` for every
//! `X ∈ g₋₁`. Each step is one exact nullspace computation: the unknowns are the
//! coefficients of `D` on the monomial fields of weight `i`, and the constraints are
//! the coordinates of `[X, D]` left over after reduction modulo `g_{i-1}`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exceptional::{euler_field, g0_basis, g_minus1_basis};
use crate::linalg::{nullspace, Echelon, Indexer, SparseVec};
use crate::superfield::SuperField;
use crate::superpoly::{check_chart, monomials_of_weight, Chart, Monomial, Parity, SuperPolynomial, Var};

/// Coordinates of fields with respect to the monomial fields `m·∂_v`.
#[derive(Default)]
pub struct FieldCoords {
    index: Indexer<(usize, Monomial)>,
}

impl FieldCoords {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vector(&mut self, d: &SuperField) -> SparseVec {
        let mut v = SparseVec::new();
        for (var, comp) in d.components() {
            for (m, c) in comp.terms() {
                v.insert(self.index.get_or_insert(&(var.index(), m.clone())), c.clone());
            }
        }
        v
    }

    pub fn field(&self, v: &SparseVec, chart: &Arc<Chart>) -> SuperField {
        let mut comps: HashMap<usize, Vec<(Monomial, crate::Rational)>> = HashMap::new();
        for (&k, c) in v {
            let (var, m) = self.index.key(k);
            comps.entry(*var).or_default().push((m.clone(), c.clone()));
        }
        let parts = comps.into_iter().map(|(var, terms)| (Var(var), SuperPolynomial::from_terms(chart, terms)));
        SuperField::from_components(chart, parts).expect("coordinates come from this chart")
    }
}

/// Rank of the span of a list of fields.
pub fn span_rank(fields: &[SuperField]) -> usize {
    let mut coords = FieldCoords::new();
    let vs: Vec<SparseVec> = fields.iter().map(|d| coords.vector(d)).collect();
    crate::linalg::rank(vs.iter())
}

/// The data the prolongation starts from.
#[derive(Clone, Debug)]
pub struct ProlongationInput {
    pub name: String,
    pub chart: Arc<Chart>,
    pub g_minus1: Vec<SuperField>,
    pub g0: Vec<SuperField>,
}

impl ProlongationInput {
    /// The 7 constant fields and the 24 linear fields of the η-table.
    pub fn vect03() -> Self {
        ProlongationInput {
            name: "vect03".into(),
            chart: Chart::standard(),
            g_minus1: g_minus1_basis().into_iter().map(|e| e.field).collect(),
            g0: g0_basis().into_iter().map(|e| e.field).collect(),
        }
    }

    /// [`ProlongationInput::vect03`] with the Euler field `d` adjoined to `g₀`.
    pub fn cvect03() -> Self {
        let mut input = Self::vect03();
        input.name = "cvect03".into();
        input.g0.push(euler_field());
        input
    }

    /// `⟨∂_x⟩`, `⟨x∂_x⟩` on a `(1|0)` chart.
    pub fn toy_vect1() -> Self {
        let chart = Chart::new(&["x"], &[] as &[&str]).unwrap();
        let x = SuperPolynomial::named(&chart, "x").unwrap();
        let v = chart.var("x").unwrap();
        ProlongationInput {
            name: "vect1".into(),
            chart: chart.clone(),
            g_minus1: vec![SuperField::partial(&chart, v)],
            g0: vec![SuperField::term(x, v)],
        }
    }

    /// `⟨∂_ξ⟩`, `⟨ξ∂_ξ⟩` on a `(0|1)` chart.
    pub fn toy_odd1() -> Self {
        let chart = Chart::new(&[] as &[&str], &["x"]).unwrap();
        let x = SuperPolynomial::named(&chart, "x").unwrap();
        let v = chart.var("x").unwrap();
        ProlongationInput {
            name: "odd1".into(),
            chart: chart.clone(),
            g_minus1: vec![SuperField::partial(&chart, v)],
            g0: vec![SuperField::term(x, v)],
        }
    }

    pub const NAMES: [&'static str; 4] = ["vect03", "cvect03", "vect1", "odd1"];

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "vect03" => Some(Self::vect03()),
            "cvect03" => Some(Self::cvect03()),
            "vect1" => Some(Self::toy_vect1()),
            "odd1" => Some(Self::toy_odd1()),
            _ => None,
        }
    }
}

/// One graded piece `g_i` with an independent, parity-homogeneous basis.
#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub degree: i64,
    pub basis: Vec<SuperField>,
    /// `(even, odd)` dimensions.
    pub dims: (usize, usize),
}

impl GradedComponent {
    fn new(degree: i64, basis: Vec<SuperField>) -> Result<Self> {
        let mut dims = (0, 0);
        for d in &basis {
            match d.parity()? {
                Parity::Even => dims.0 += 1,
                Parity::Odd => dims.1 += 1,
            }
        }
        Ok(GradedComponent { degree, basis, dims })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

impl fmt::Display for GradedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.dims.0, self.dims.1)
    }
}

fn weight_of(d: &SuperField) -> Option<i64> {
    d.degree()
}

fn check_weight(fields: &[SuperField], chart: &Arc<Chart>, w: i64, what: &str) -> Result<()> {
    for d in fields {
        check_chart(chart, d.chart())?;
        if !d.is_zero() && weight_of(d) != Some(w) {
            return Err(Error::Inconsistent(format!("{what} element {d} does not have weight {w}")));
        }
        d.parity()?;
    }
    Ok(())
}

/// The monomial fields `m·∂_v` of weight `w`, ordered by direction then monomial.
fn field_space(chart: &Arc<Chart>, w: i64) -> Vec<(Var, Monomial)> {
    let mut out = Vec::new();
    for v in chart.vars() {
        let target = w + chart.weight(v);
        if target < 0 {
            continue;
        }
        out.extend(monomials_of_weight(chart, target).into_iter().map(|m| (v, m)));
    }
    out
}

fn independent_basis(degree: i64, fields: &[SuperField]) -> Result<GradedComponent> {
    let rank = span_rank(fields);
    if rank != fields.len() {
        return Err(Error::Inconsistent(format!("the degree {degree} input is linearly dependent (rank {rank} of {})", fields.len())));
    }
    GradedComponent::new(degree, fields.to_vec())
}

fn in_span(coords: &mut FieldCoords, echelon: &Echelon, d: &SuperField) -> bool {
    echelon.contains(&coords.vector(d))
}

fn validate(input: &ProlongationInput) -> Result<()> {
    let chart = &input.chart;
    if chart.weights().iter().any(|&w| w <= 0) {
        return Err(Error::Inconsistent("prolongation needs positive weights".into()));
    }
    check_weight(&input.g_minus1, chart, -1, "g_-1")?;
    check_weight(&input.g0, chart, 0, "g_0")?;
    let full = field_space(chart, -1).len();
    if span_rank(&input.g_minus1) != full {
        return Err(Error::Inconsistent(format!("g_-1 does not span the {full}-dimensional weight -1 space")));
    }
    let mut coords = FieldCoords::new();
    let g0: Vec<SparseVec> = input.g0.iter().map(|d| coords.vector(d)).collect();
    let g0_span = Echelon::from_vectors(g0.iter());
    for a in &input.g0 {
        for b in &input.g0 {
            if !in_span(&mut coords, &g0_span, &a.commutator(b)?) {
                return Err(Error::Inconsistent(format!("g_0 is not closed: [{a}, {b}]")));
            }
        }
    }
    Ok(())
}

/// Computes `g_i` from `g_{i-1}`.
pub fn prolong_step(prev: &GradedComponent, input: &ProlongationInput, i: i64) -> Result<GradedComponent> {
    if i < 1 || prev.degree != i - 1 {
        return Err(Error::Inconsistent(format!("step {i} needs the degree {} component", i - 1)));
    }
    let chart = &input.chart;
    let unknowns = field_space(chart, i);
    if unknowns.len() > crate::linalg::MAX_COLUMNS {
        return Err(Error::DimensionGuard { rows: 0, cols: unknowns.len(), limit: crate::linalg::MAX_COLUMNS });
    }
    let mut coords = FieldCoords::new();
    let prev_vs: Vec<SparseVec> = prev.basis.iter().map(|d| coords.vector(d)).collect();
    let prev_span = Echelon::from_vectors(prev_vs.iter());
    let mut rows: HashMap<(usize, usize), SparseVec> = HashMap::new();
    for (j, (v, m)) in unknowns.iter().enumerate() {
        let b = SuperField::term(SuperPolynomial::monomial(chart, m.clone(), crate::qi(1)), *v);
        for (k, x) in input.g_minus1.iter().enumerate() {
            let r = prev_span.reduce(&coords.vector(&x.commutator(&b)?));
            for (c, val) in r {
                rows.entry((k, c)).or_default().insert(j, val);
            }
        }
    }
    let mut keys: Vec<(usize, usize)> = rows.keys().copied().collect();
    keys.sort_unstable();
    let constraints: Vec<SparseVec> = keys.into_iter().map(|k| rows.remove(&k).unwrap()).collect();
    let kernel = nullspace(&constraints, unknowns.len())?;
    let basis = kernel
        .iter()
        .map(|x| {
            let parts = x.iter().map(|(&j, c)| {
                let (v, m) = &unknowns[j];
                (*v, SuperPolynomial::monomial(chart, m.clone(), c.clone()))
            });
            SuperField::from_components(chart, parts)
        })
        .collect::<Result<Vec<_>>>()?;
    GradedComponent::new(i, basis)
}

/// Components `g_{-1}, g_0, …, g_max`, after checking `[g_i, g_j] ⊆ g_{i+j}`.
pub fn prolong_to(input: &ProlongationInput, max_degree: i64) -> Result<Vec<GradedComponent>> {
    if max_degree < 0 {
        return Err(Error::Inconsistent("max degree must be at least 0".into()));
    }
    validate(input)?;
    let mut comps = vec![independent_basis(-1, &input.g_minus1)?, independent_basis(0, &input.g0)?];
    for i in 1..=max_degree {
        let next = prolong_step(comps.last().unwrap(), input, i)?;
        comps.push(next);
    }
    check_closure(&comps)?;
    Ok(comps)
}

fn check_closure(comps: &[GradedComponent]) -> Result<()> {
    let max = comps.last().map_or(-1, |c| c.degree);
    let mut coords = FieldCoords::new();
    let spans: Vec<Echelon> = comps
        .iter()
        .map(|c| {
            let vs: Vec<SparseVec> = c.basis.iter().map(|d| coords.vector(d)).collect();
            Echelon::from_vectors(vs.iter())
        })
        .collect();
    for (a, ca) in comps.iter().enumerate() {
        for cb in &comps[a..] {
            let target = ca.degree + cb.degree;
            if target > max {
                continue;
            }
            for x in &ca.basis {
                for y in &cb.basis {
                    let z = x.commutator(y)?;
                    let ok = if target < -1 { z.is_zero() } else { in_span(&mut coords, &spans[(target + 1) as usize], &z) };
                    if !ok {
                        return Err(Error::Inconsistent(format!(
                            "[g_{}, g_{}] is not inside g_{target}: [{x}, {y}] = {z}",
                            ca.degree, cb.degree
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// How two spans relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AInB,
    BInA,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "equal",
            Relation::AInB => "A_in_B",
            Relation::BInA => "B_in_A",
            Relation::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceComparison {
    pub relation: Relation,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_intersection: usize,
}

/// Exact comparison of `span A` and `span B`.
pub fn subspace_compare(a: &[SuperField], b: &[SuperField]) -> Result<SubspaceComparison> {
    if let Some(first) = a.first().or(b.first()) {
        for d in a.iter().chain(b) {
            check_chart(first.chart(), d.chart())?;
        }
    }
    let mut coords = FieldCoords::new();
    let va: Vec<SparseVec> = a.iter().map(|d| coords.vector(d)).collect();
    let vb: Vec<SparseVec> = b.iter().map(|d| coords.vector(d)).collect();
    let dim_a = crate::linalg::rank(va.iter());
    let dim_b = crate::linalg::rank(vb.iter());
    let dim_sum = crate::linalg::rank(va.iter().chain(vb.iter()));
    let relation = match (dim_sum == dim_b, dim_sum == dim_a) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::AInB,
        (false, true) => Relation::BInA,
        (false, false) => Relation::Incomparable,
    };
    Ok(SubspaceComparison { relation, dim_a, dim_b, dim_intersection: dim_a + dim_b - dim_sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{i1_field, simplicity_witness};
    use crate::superpoly::monomials_of_bidegree;

    #[test]
    fn toy_scaling_algebra() {
        let comps = prolong_to(&ProlongationInput::toy_vect1(), 3).unwrap();
        for c in &comps {
            assert_eq!(c.dims, (1, 0));
        }
        let x = comps[2].basis[0].to_string();
        assert_eq!(x, "x^2*Dx");
    }

    #[test]
    fn toy_odd_line_stops() {
        let comps = prolong_to(&ProlongationInput::toy_odd1(), 1).unwrap();
        assert_eq!(comps[2].dims, (0, 0));
    }

    #[test]
    fn degree_zero_dimensions() {
        let v = prolong_to(&ProlongationInput::vect03(), 0).unwrap();
        assert_eq!((v[0].dims, v[1].dims), ((4, 3), (12, 12)));
        let c = prolong_to(&ProlongationInput::cvect03(), 0).unwrap();
        assert_eq!(c[1].dims, (13, 12));
    }

    #[test]
    fn witness_in_first_prolong() {
        let c = prolong_to(&ProlongationInput::cvect03(), 1).unwrap();
        let cmp = subspace_compare(&[simplicity_witness()], &c[2].basis).unwrap();
        assert_eq!(cmp.relation, Relation::AInB);
    }

    #[test]
    fn compare_examples() {
        let chart = Chart::standard();
        let dy = SuperField::partial_named(&chart, "y").unwrap();
        assert_eq!(subspace_compare(std::slice::from_ref(&dy), std::slice::from_ref(&dy)).unwrap().relation, Relation::Equal);
        let du1 = SuperField::partial_named(&chart, "u1").unwrap();
        let du2 = SuperField::partial_named(&chart, "u2").unwrap();
        assert_eq!(subspace_compare(std::slice::from_ref(&du1), &[du1.clone(), du2]).unwrap().relation, Relation::AInB);
    }

    #[test]
    fn i1_images_of_degree_zero_match_table() {
        let pc = Chart::periplectic();
        let mut images = Vec::new();
        for dx in 0..=3 {
            for m in monomials_of_bidegree(&pc, 1, dx) {
                images.push(i1_field(&SuperPolynomial::monomial(&pc, m, crate::qi(1))).unwrap());
            }
        }
        let table: Vec<SuperField> = g0_basis().into_iter().map(|e| e.field).collect();
        assert_eq!(subspace_compare(&images, &table).unwrap().relation, Relation::Equal);
    }
}
