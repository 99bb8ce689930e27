use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::buttin::{d3xi, delta, delta_inv, sle_classify, GeneratingFunction, SleClass};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, Echelon, Indexer, SparseVec};
use crate::superfield::SuperField;
use crate::superpoly::{monomials_of_bidegree, Chart, Monomial, Parity, SuperPolynomial, Var};
use crate::Rational;

use super::embed::{i1_field, i2_field, realize, to_periplectic, CYCLIC};

/// An element `i₁(f) + i₂(g)` of the exceptional algebra.
///
/// Both slots live on the periplectic chart without constant term. Equality is
/// semantic: two pairs are equal when they realize the same field, which is
/// decided on canonical forms.
#[derive(Clone, Debug)]
pub struct GluedPair {
    f: SuperPolynomial,
    g: SuperPolynomial,
}

impl GluedPair {
    /// Panics if a slot uses a variable outside `u1..u3, x1..x3`; see [`GluedPair::try_new`].
    pub fn new(f: SuperPolynomial, g: SuperPolynomial) -> Self {
        Self::try_new(f, g).expect("slots must be functions of u and x only")
    }

    pub fn try_new(f: SuperPolynomial, g: SuperPolynomial) -> Result<Self> {
        Ok(GluedPair {
            f: GeneratingFunction::new(f)?.into_poly(),
            g: GeneratingFunction::new(g)?.into_poly(),
        })
    }

    pub fn zero() -> Self {
        let z = SuperPolynomial::zero(&Chart::periplectic());
        GluedPair { f: z.clone(), g: z }
    }

    pub fn from_f(f: SuperPolynomial) -> Self {
        Self::new(f, SuperPolynomial::zero(&Chart::periplectic()))
    }

    pub fn from_g(g: SuperPolynomial) -> Self {
        Self::new(SuperPolynomial::zero(&Chart::periplectic()), g)
    }

    pub fn f(&self) -> &SuperPolynomial {
        &self.f
    }

    pub fn g(&self) -> &SuperPolynomial {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GluedPair { f: self.f.scale(c), g: self.g.scale(c) }
    }

    /// Parity of the realized field, which is opposite to the parity of the slots.
    pub fn parity(&self) -> Result<Parity> {
        let mut found: Option<Parity> = None;
        for slot in [&self.f, &self.g] {
            if slot.is_zero() {
                continue;
            }
            let p = slot.parity()?.flip();
            match found {
                Some(q) if q != p => return Err(Error::MixedParity(format!("pair {self}"))),
                _ => found = Some(p),
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    /// Slot-wise comparison without the gluing.
    pub fn same_slots(&self, other: &Self) -> bool {
        self.f == other.f && self.g == other.g
    }
}

impl PartialEq for GluedPair {
    fn eq(&self, other: &Self) -> bool {
        canonicalize(self).same_slots(&canonicalize(other))
    }
}

impl fmt::Display for GluedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::format_pair(self))
    }
}

impl Add for &GluedPair {
    type Output = GluedPair;
    fn add(self, rhs: &GluedPair) -> GluedPair {
        GluedPair { f: &self.f + &rhs.f, g: &self.g + &rhs.g }
    }
}

impl Add for GluedPair {
    type Output = GluedPair;
    fn add(self, rhs: GluedPair) -> GluedPair {
        &self + &rhs
    }
}

impl Sub for &GluedPair {
    type Output = GluedPair;
    fn sub(self, rhs: &GluedPair) -> GluedPair {
        GluedPair { f: &self.f - &rhs.f, g: &self.g - &rhs.g }
    }
}

impl Sub for GluedPair {
    type Output = GluedPair;
    fn sub(self, rhs: GluedPair) -> GluedPair {
        &self - &rhs
    }
}

impl Neg for &GluedPair {
    type Output = GluedPair;
    fn neg(self) -> GluedPair {
        GluedPair { f: -&self.f, g: -&self.g }
    }
}

impl Neg for GluedPair {
    type Output = GluedPair;
    fn neg(self) -> GluedPair {
        -&self
    }
}

fn sign(p: Parity) -> Rational {
    Rational::from_integer(p.sign().into())
}

fn xi123(chart: &Arc<Chart>) -> SuperPolynomial {
    (0..3).fold(SuperPolynomial::one(chart), |acc, j| &acc * &SuperPolynomial::var(chart, chart.odd_var(j)))
}

/// The regrading automorphism of `sle°(3)`.
pub fn regrade(f: &SuperPolynomial) -> Result<SuperPolynomial> {
    let f = to_periplectic(f)?.without_constant();
    if sle_classify(&f)? != SleClass::SleDegree {
        return Err(Error::NotSleDegree(format!("{f}")));
    }
    let chart = f.chart().clone();
    let mut out = SuperPolynomial::zero(&chart);
    for (deg, part) in f.odd_degree_components() {
        let r = match deg {
            0 => delta(&(&part * &xi123(&chart)))?,
            1 => part,
            2 => d3xi(&delta_inv(&part)?)?,
            _ => return Err(Error::NotSleDegree(format!("{f} has a component of odd degree {deg}"))),
        };
        out += &r;
    }
    Ok(out)
}

/// `φ(f, g) = (g, (-1)^{p(f)+1} f)`.
pub fn phi_auto(p: &GluedPair) -> Result<GluedPair> {
    let pf = p.f.parity()?;
    p.g.parity()?;
    Ok(GluedPair { f: p.g.clone(), g: p.f.scale(&-sign(pf)) })
}

/// Echelon basis of `sle°` in one bidegree, columns in ascending monomial order.
struct SleBasis {
    columns: Indexer<Monomial>,
    echelon: Echelon,
}

fn to_vec(p: &SuperPolynomial, cols: &Indexer<Monomial>) -> SparseVec {
    p.terms().map(|(m, c)| (cols.get(m).expect("monomial in bidegree"), c.clone())).collect()
}

fn from_vec(v: &SparseVec, cols: &Indexer<Monomial>, chart: &Arc<Chart>) -> SuperPolynomial {
    SuperPolynomial::from_terms(chart, v.iter().map(|(&k, c)| (cols.key(k).clone(), c.clone())))
}

type SleCache = Mutex<HashMap<(u32, u32), Arc<SleBasis>>>;

fn sle_basis(du: u32, dx: u32) -> Arc<SleBasis> {
    static CACHE: OnceLock<SleCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(du, dx)) {
        return b.clone();
    }
    let chart = Chart::periplectic();
    let columns = Indexer::from_keys(monomials_of_bidegree(&chart, du, dx));
    let mut rows: HashMap<(u8, Monomial), SparseVec> = HashMap::new();
    for j in 0..columns.len() {
        let m = SuperPolynomial::monomial(&chart, columns.key(j).clone(), Rational::from_integer(1.into()));
        for (tag, image) in [(0u8, delta(&m).unwrap()), (1u8, d3xi(&m).unwrap())] {
            for (mm, c) in image.terms() {
                rows.entry((tag, mm.clone())).or_default().insert(j, c.clone());
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().collect();
    let kernel = if du == 0 && dx == 0 { Vec::new() } else { nullspace(&rows, columns.len()).unwrap() };
    let basis = Arc::new(SleBasis { columns, echelon: Echelon::from_vectors(kernel.iter()) });
    cache.lock().unwrap().insert((du, dx), basis.clone());
    basis
}

/// Canonical basis of `sle°(3)` in bidegree `(deg_u, deg_ξ)`.
pub fn sle_degree_basis(du: u32, dx: u32) -> Vec<SuperPolynomial> {
    let b = sle_basis(du, dx);
    let chart = Chart::periplectic();
    b.echelon.basis().map(|v| from_vec(v, &b.columns, &chart)).collect()
}

/// Moves the `sle°` part of the `g` slot into the `f` slot.
///
/// In each bidegree the `sle°` component is the part of `g` read off on the pivot
/// monomials of the reduced echelon basis, so the remaining `g` has no pivot terms.
pub fn canonicalize(p: &GluedPair) -> GluedPair {
    let chart = Chart::periplectic();
    let mut f = p.f.clone();
    let mut g = SuperPolynomial::zero(&chart);
    for ((du, dx), part) in p.g.bihomogeneous_components() {
        let basis = sle_basis(du, dx);
        let v = to_vec(&part, &basis.columns);
        let mut s = SparseVec::new();
        for pivot in basis.echelon.pivots() {
            if let Some(c) = v.get(&pivot) {
                crate::linalg::axpy(&mut s, c, basis.echelon.row(pivot).unwrap());
            }
        }
        if s.is_empty() {
            g += &part;
            continue;
        }
        let s = from_vec(&s, &basis.columns, &chart);
        let r = regrade(&s).expect("projection lands in sle°");
        let sgn = -sign(Parity::from_count(dx as usize));
        f += &r.scale(&sgn);
        g += &(&part - &s);
    }
    GluedPair { f, g }
}

/// Inverts the realization: finds a pair with `realize(pair) = d`, in canonical form.
pub fn decompose(d: &SuperField) -> Result<GluedPair> {
    let d = d.embed(&Chart::standard())?;
    let (even, odd) = d.parity_parts();
    let mut out = GluedPair::zero();
    for part in [even, odd] {
        if part.is_zero() {
            continue;
        }
        let found = match closed_form(&part) {
            Some(p) if realize(&p)? == part => p,
            _ => solve_pair(&part)?,
        };
        out = &out + &found;
    }
    Ok(canonicalize(&out))
}

/// Same contract as [`decompose`], always through an exact linear solve.
pub fn decompose_by_solve(d: &SuperField) -> Result<GluedPair> {
    let d = d.embed(&Chart::standard())?;
    Ok(canonicalize(&solve_pair(&d)?))
}

/// Reads off `f` from the `∂_u` part, then `g` from the remainder `α_g`, then
/// rewrites `α_g` through `i₁` and `i₂`.
fn closed_form(d: &SuperField) -> Option<GluedPair> {
    let chart = Chart::standard();
    let pc = Chart::periplectic();
    let parity = d.parity().ok()?;
    let s = sign(parity);
    let eps = -s.clone();
    let y = chart.var("y").ok()?;

    let mut f = SuperPolynomial::zero(&pc);
    for i in 0..3 {
        let q = to_periplectic(&d.component(chart.even_var(i)).scale(&eps)).ok()?;
        let xi = SuperPolynomial::var(&pc, pc.odd_var(i));
        for (deg, part) in q.odd_degree_components() {
            f += &(&xi * &part).scale(&Rational::new(1.into(), (deg as i64 + 1).into()));
        }
    }
    f.parity().ok()?;
    let rest = if f.is_zero() { d.clone() } else { d - &i2_field(&f).ok()? };

    let at_y0 = |v: Var| to_periplectic(&rest.component(v).at_zero(y));
    let xi = |j: usize| SuperPolynomial::var(&pc, pc.odd_var(j));
    let mut g1 = SuperPolynomial::zero(&pc);
    for (i, j, k) in CYCLIC {
        let psi = at_y0(chart.odd_var(i)).ok()?.filter(|m| m.deg_odd() == 0);
        g1 -= &(&psi * &(&xi(j) * &xi(k)));
    }
    let p1 = at_y0(chart.odd_var(0)).ok()?;
    let phi = p1.partial(pc.odd_var(0)).ok()?.filter(|m| m.deg_odd() == 0);
    g1 -= &(&phi * &xi123(&pc));
    let psi0 = &at_y0(y).ok()?.scale(&s) - &delta(&g1).ok()?;
    let g = &g1 + &delta_inv(&psi0).ok()?;

    let mut slot_f = SuperPolynomial::zero(&pc);
    let mut slot_g = f;
    for (deg, part) in g.odd_degree_components() {
        match deg {
            1 => slot_f -= &(&delta(&part).ok()? * &xi123(&pc)),
            2 => slot_f += &part,
            3 => {
                let t = delta_inv(&d3xi(&part).ok()?).ok()?;
                slot_f -= &t;
                slot_g += &t;
            }
            _ => {}
        }
    }
    GluedPair::try_new(slot_f, slot_g).ok()
}

/// Candidate `f`-slot monomials realize in degree `deg_u - 1`, `g`-slot ones in `deg - 2`.
fn solve_pair(d: &SuperField) -> Result<GluedPair> {
    let pc = Chart::periplectic();
    let mut keys: Indexer<(usize, Monomial)> = Indexer::new();
    let field_vec = |fd: &SuperField, keys: &mut Indexer<(usize, Monomial)>| -> SparseVec {
        let mut v = SparseVec::new();
        for (var, comp) in fd.components() {
            for (m, c) in comp.terms() {
                v.insert(keys.get_or_insert(&(var.index(), m.clone())), c.clone());
            }
        }
        v
    };
    let mut out = GluedPair::zero();
    for (deg, part) in d.graded_components(&[1; 7]) {
        let target = field_vec(&part, &mut keys);
        let mut unknowns: Vec<(bool, Monomial)> = Vec::new();
        if deg + 1 >= 0 {
            for dx in 0..=3 {
                unknowns.extend(monomials_of_bidegree(&pc, (deg + 1) as u32, dx).into_iter().map(|m| (true, m)));
            }
        }
        for dx in 0..=3i64 {
            let du = deg + 2 - dx;
            if du >= 0 {
                unknowns.extend(monomials_of_bidegree(&pc, du as u32, dx as u32).into_iter().map(|m| (false, m)));
            }
        }
        unknowns.retain(|(_, m)| !m.is_one());
        let mut columns = Vec::with_capacity(unknowns.len());
        for (is_f, m) in &unknowns {
            let poly = SuperPolynomial::monomial(&pc, m.clone(), Rational::from_integer(1.into()));
            let fd = if *is_f { i1_field(&poly)? } else { i2_field(&poly)? };
            columns.push(field_vec(&fd, &mut keys));
        }
        let x = solve(&columns, &target).ok_or_else(|| Error::NotInCvect(format!("{part}")))?;
        for (k, c) in x {
            if c.is_zero() {
                continue;
            }
            let (is_f, m) = &unknowns[k];
            let t = SuperPolynomial::monomial(&pc, m.clone(), c);
            out = if *is_f { &out + &GluedPair::from_f(t) } else { &out + &GluedPair::from_g(t) };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exceptional::{euler_field, simplicity_witness};
    use crate::text::{parse_field, parse_poly};

    fn p(s: &str) -> SuperPolynomial {
        parse_poly(s, &Chart::periplectic()).unwrap()
    }

    fn field(s: &str) -> SuperField {
        parse_field(s, &Chart::standard(), &Default::default()).unwrap()
    }

    fn pair(f: &str, g: &str) -> GluedPair {
        GluedPair::new(p(f), p(g))
    }

    #[test]
    fn regrade_examples() {
        assert_eq!(regrade(&p("x1")).unwrap(), p("x1"));
        assert_eq!(regrade(&p("u1")).unwrap(), p("x2*x3"));
        assert_eq!(regrade(&p("x2*x3")).unwrap(), p("-u1"));
        assert_eq!(regrade(&regrade(&p("u1")).unwrap()).unwrap(), p("-u1"));
        assert!(matches!(regrade(&p("u1*x1")), Err(Error::NotSleDegree(_))));
    }

    #[test]
    fn phi_examples() {
        let a = phi_auto(&pair("u1", "0")).unwrap();
        assert!(a.same_slots(&pair("0", "-u1")));
        let b = phi_auto(&pair("0", "x1")).unwrap();
        assert!(b.same_slots(&pair("x1", "0")));
        let c = pair("u1*x1", "u2^2");
        let twice = phi_auto(&phi_auto(&c).unwrap()).unwrap();
        assert!(twice.same_slots(&pair("u1*x1", "-u2^2")));
    }

    #[test]
    fn canonicalize_examples() {
        assert!(canonicalize(&pair("0", "x1")).same_slots(&pair("x1", "0")));
        assert!(canonicalize(&pair("0", "u1*x1")).same_slots(&pair("0", "u1*x1")));
        assert!(canonicalize(&pair("u1^2", "0")).same_slots(&pair("u1^2", "0")));
        let q = pair("u2*x3", "u1*u2*x3 + x1*x2 + u3");
        let c = canonicalize(&q);
        assert!(canonicalize(&c).same_slots(&c));
        assert_eq!(realize(&c).unwrap(), realize(&q).unwrap());
    }

    #[test]
    fn sle_dimensions_small() {
        assert_eq!(sle_degree_basis(1, 0).len(), 3);
        assert_eq!(sle_degree_basis(0, 1).len(), 3);
        assert_eq!(sle_degree_basis(0, 2).len(), 3);
        assert_eq!(sle_degree_basis(1, 1).len(), 8);
        assert_eq!(sle_degree_basis(0, 3).len(), 0);
    }

    #[test]
    fn decompose_examples() {
        let dy = decompose(&field("Dy")).unwrap();
        assert!(dy.same_slots(&pair("-x1*x2*x3", "0")));
        let d = euler_field();
        assert_eq!(realize(&decompose(&d).unwrap()).unwrap(), d);
        assert_eq!(realize(&decompose_by_solve(&d).unwrap()).unwrap(), d);
        let w = simplicity_witness();
        assert_eq!(decompose(&w).unwrap(), pair("0", "-x1*x2*x3"));
        assert!(matches!(decompose(&field("x1*Du1")), Err(Error::NotInCvect(_))));
    }

    #[test]
    fn decompose_round_trip() {
        let q = pair("u1*u2*x3 + u3^2*x1*x2*x3", "u1*x2 + u2^2*x1*x3");
        let back = decompose(&realize(&q).unwrap()).unwrap();
        assert_eq!(back, q);
        assert_eq!(decompose_by_solve(&realize(&q).unwrap()).unwrap(), q);
    }
}
