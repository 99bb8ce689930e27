//! Exact identity checks shared by the `selftest` command and the test suites.
//!
//! Every check returns a [`CheckOutcome`]; nothing here panics on a failed identity.

use std::fmt;
use std::time::{Duration, Instant};

use crate::buttin::{buttin_bracket_raw, d3xi, delta, delta_inv, le_field, sle_classify, SleClass};
use crate::error::Result;
use crate::exceptional::{
    a_field, alpha_field, bracket_pair, decompose, g0_basis, g_minus1_basis, i1_field, i2_field, lift,
    membership, mixed_bracket, phi_auto, realize, regrade, simplicity_witness, sle_degree_basis, to_periplectic,
    BasisDictionary, Equation, GluedPair, Variant,
};
use crate::prolong::{prolong_to, span_rank, subspace_compare, ProlongationInput, Relation};
use crate::random::Sampler;
use crate::superfield::SuperField;
use crate::superpoly::{monomials_of_bidegree, Chart, Parity, SuperPolynomial};
use crate::{qi, Rational};

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Collects failure messages, keeping only the first few in the report.
struct Tally {
    name: String,
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally { name: name.into(), cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 3 {
                self.failures.push(msg());
            }
        }
    }

    fn result<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", context()));
                None
            }
        }
    }

    fn finish(self) -> CheckOutcome {
        let detail = if self.failed == 0 {
            format!("{} cases", self.cases)
        } else {
            format!("{} of {} cases failed; {}", self.failed, self.cases, self.failures.join(" | "))
        };
        CheckOutcome { name: self.name, passed: self.failed == 0 && self.cases > 0, detail }
    }
}

fn sign(p: Parity) -> Rational {
    qi(p.sign())
}

fn sign2(a: Parity, b: Parity) -> Rational {
    qi(a.koszul(b))
}

fn unit(m: crate::Monomial) -> SuperPolynomial {
    SuperPolynomial::monomial(&Chart::periplectic(), m, qi(1))
}

/// Generating-function monomials whose `i₁` image has degree `d`.
pub fn i1_monomials(d: i64) -> Vec<SuperPolynomial> {
    if d + 1 < 0 {
        return Vec::new();
    }
    let pc = Chart::periplectic();
    (0..=3)
        .flat_map(|dx| monomials_of_bidegree(&pc, (d + 1) as u32, dx))
        .filter(|m| !m.is_one())
        .map(unit)
        .collect()
}

/// Generating-function monomials whose `i₂` image has degree `d`.
pub fn i2_monomials(d: i64) -> Vec<SuperPolynomial> {
    let pc = Chart::periplectic();
    (0..=3i64)
        .filter(|dx| d + 2 - dx >= 0)
        .flat_map(|dx| monomials_of_bidegree(&pc, (d + 2 - dx) as u32, dx as u32))
        .filter(|m| !m.is_one())
        .map(unit)
        .collect()
}

fn images(fs: &[SuperPolynomial], embed: fn(&SuperPolynomial) -> Result<SuperField>) -> Result<Vec<SuperField>> {
    fs.iter().map(embed).collect()
}

/// Dimensions of `g₋₁` and `g₀` with and without `d`, within a time budget.
pub fn prolongation_dimensions() -> CheckOutcome {
    let mut t = Tally::new("prolongation dimensions");
    let start = Instant::now();
    if let Some(v) = t.result(prolong_to(&ProlongationInput::vect03(), 0), || "vect03".into()) {
        t.check(v[0].dims == (4, 3), || format!("g_-1 is {}", v[0]));
        t.check(v[1].dims == (12, 12), || format!("g_0 is {}", v[1]));
    }
    if let Some(c) = t.result(prolong_to(&ProlongationInput::cvect03(), 0), || "cvect03".into()) {
        t.check(c[1].dims == (13, 12), || format!("g_0 with d is {}", c[1]));
    }
    let elapsed = start.elapsed();
    t.check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"));
    let mut out = t.finish();
    if out.passed {
        out.detail = format!("g_-1 (4|3), g_0 (12|12), with d (13|12) in {elapsed:.2?}");
    }
    out
}

/// The η-table, `d` and `F` against the membership system.
pub fn membership_ground_truth() -> CheckOutcome {
    let mut t = Tally::new("membership ground truth");
    let dict = BasisDictionary::new();
    for e in dict.entries() {
        if let Some(r) = t.result(membership(&e.field, Variant::Vect), || e.name.to_string()) {
            t.check(r.is_member(), || format!("{}: {r}", e.name));
        }
    }
    if let Some(r) = t.result(membership(&dict.d, Variant::Cvect), || "d".into()) {
        t.check(r.is_member(), || format!("d: {r}"));
    }
    if let Some(r) = t.result(membership(&dict.d, Variant::Vect), || "d".into()) {
        t.check(r.violated() == vec![Equation::Trace], || format!("d in vect: {r}"));
    }
    if let Some(r) = t.result(membership(&dict.witness, Variant::Cvect), || "F".into()) {
        t.check(r.is_member(), || format!("F: {r}"));
    }
    t.finish()
}

/// For each degree, the span of realized pairs equals the prolongation component.
pub fn completeness(max_degree: i64) -> CheckOutcome {
    let mut t = Tally::new("realization completeness");
    let comps = match t.result(prolong_to(&ProlongationInput::cvect03(), max_degree), || "prolong".into()) {
        Some(c) => c,
        None => return t.finish(),
    };
    let mut dims = Vec::new();
    for comp in &comps {
        let d = comp.degree;
        let mut fields = Vec::new();
        if let Some(a) = t.result(images(&i1_monomials(d), i1_field), || format!("i1 degree {d}")) {
            fields.extend(a);
        }
        if let Some(b) = t.result(images(&i2_monomials(d), i2_field), || format!("i2 degree {d}")) {
            fields.extend(b);
        }
        if let Some(cmp) = t.result(subspace_compare(&fields, &comp.basis), || format!("compare degree {d}")) {
            t.check(cmp.relation == Relation::Equal, || {
                format!("degree {d}: realized {} vs prolonged {} ({})", cmp.dim_a, cmp.dim_b, cmp.relation)
            });
        }
        for x in &comp.basis {
            if let Some(r) = t.result(membership(x, Variant::Cvect), || format!("degree {d} basis")) {
                t.check(r.is_member(), || format!("degree {d} basis element {x}: {r}"));
            }
        }
        dims.push(format!("{d}:{}", comp));
    }
    let mut out = t.finish();
    if out.passed {
        out.detail = format!("degrees {}", dims.join(" "));
    }
    out
}

/// `[A_f, ·]`-style identities behind the homomorphism property of `i₂`, plus `Le`, `i₁`, `i₂` themselves.
pub fn homomorphism_suite(samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let names = [
        "Le bracket",
        "A of bracket",
        "A commutator",
        "Laplacian of bracket",
        "D3 of bracket",
        "i2 homomorphism",
        "i1 homomorphism",
    ];
    let mut tallies: Vec<Tally> = names.iter().map(|n| Tally::new(n)).collect();
    let mut s = Sampler::new(seed).with_max_terms(3);
    let std = Chart::standard();
    for _ in 0..samples {
        let f = s.generating_function(3);
        let g = s.generating_function(3);
        let ctx = || format!("f = {f}, g = {g}");
        let r = identities(&f, &g, &std);
        match r {
            Ok(results) => {
                for (t, ok) in tallies.iter_mut().zip(results) {
                    t.check(ok, ctx);
                }
            }
            Err(e) => tallies[0].check(false, || format!("{}: {e}", ctx())),
        }
    }
    tallies.into_iter().map(Tally::finish).collect()
}

fn identities(f: &SuperPolynomial, g: &SuperPolynomial, std: &std::sync::Arc<Chart>) -> Result<Vec<bool>> {
    let (pf, pg) = (f.parity()?, g.parity()?);
    let br = buttin_bracket_raw(f, g)?;
    let le = |h: &SuperPolynomial| -> Result<SuperField> { le_field(h)?.embed(std) };
    let (af, ag) = (a_field(f)?, a_field(g)?);
    let (df, dg) = (delta(f)?, delta(g)?);
    let (tf, tg) = (d3xi(f)?, d3xi(g)?);

    let le_ok = le_field(&br)? == le_field(f)?.commutator(&le_field(g)?)?;

    let rhs3 = &(&le(f)?.commutator(&ag)? + &af.commutator(&le(g)?)?)
        - &(&ag.left_mul(&lift(&df)?)? + &af.left_mul(&lift(&dg)?)?.scale(&sign2(pf, pg))).scale(&sign(pf));
    let a_ok = a_field(&br)? == rhs3;

    let rhs4 = (&ag.left_mul(&lift(&tf)?)? + &af.left_mul(&lift(&tg)?)?.scale(&sign2(pf, pg))).scale(&sign(pf));
    let aa_ok = af.commutator(&ag)? == rhs4;

    let rhs5 = &buttin_bracket_raw(&df, g)? - &buttin_bracket_raw(f, &dg)?.scale(&sign(pf));
    let lap_ok = delta(&br)? == rhs5;

    let apply = |a: &SuperField, h: &SuperPolynomial| -> Result<SuperPolynomial> { to_periplectic(&a.apply(&lift(h)?)?) };
    let rhs6 = &(&(&buttin_bracket_raw(&tf, g)? - &buttin_bracket_raw(f, &tg)?.scale(&sign(pf)))
        - &(&apply(&af, &dg)? + &apply(&ag, &df)?.scale(&sign2(pf, pg))).scale(&sign(pf)))
        + &(&(&df * &tg) - &(&tf * &dg));
    let d3_ok = d3xi(&br)? == rhs6;

    let i2_ok = i2_field(&br)? == i2_field(f)?.commutator(&i2_field(g)?)?;
    let i1_ok = i1_field(&br)? == i1_field(f)?.commutator(&i1_field(g)?)?;
    Ok(vec![le_ok, a_ok, aa_ok, lap_ok, d3_ok, i2_ok, i1_ok])
}

/// Every cell of the `[i₂f, i₁h]` table against the decomposed commutator.
pub fn table_vs_oracle(samples: usize, seed: u64) -> CheckOutcome {
    let mut t = Tally::new("bracket table vs oracle");
    let mut s = Sampler::new(seed).with_max_terms(3);
    for a in 0..=3 {
        for b in 0..=3 {
            for _ in 0..samples {
                let f = s.with_odd_degree(3, a);
                let h = s.with_odd_degree(3, b);
                let ok = cell_matches(&f, &h);
                match ok {
                    Ok(true) => t.check(true, String::new),
                    Ok(false) => t.check(false, || format!("cell ({a},{b}) f = {f}, h = {h}")),
                    Err(e) => t.check(false, || format!("cell ({a},{b}) f = {f}, h = {h}: {e}")),
                }
            }
        }
    }
    t.finish()
}

/// `mixed_bracket(f, h)` equals the decomposition of `[i₂f, i₁h]` computed by composition.
pub fn cell_matches(f: &SuperPolynomial, h: &SuperPolynomial) -> Result<bool> {
    let oracle = i2_field(f)?.commutator_by_action(&i1_field(h)?)?;
    let table = mixed_bracket(f, h)?;
    Ok(realize(&table)? == oracle && table == decompose(&oracle)?)
}

/// `R² = (-1)^{p+1}` on the `sle°` basis and `φ` on random brackets.
pub fn regrading_and_phi(samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut r = Tally::new("regrading square law");
    for du in 0..=3 {
        for dx in 0..=3 {
            for f in sle_degree_basis(du, dx) {
                let p = Parity::from_count(dx as usize);
                let twice = regrade(&f).and_then(|x| regrade(&x));
                if let Some(twice) = r.result(twice, || format!("R(R({f}))")) {
                    r.check(twice == f.scale(&-sign(p)), || format!("R(R({f})) = {twice}"));
                }
            }
        }
    }
    let mut t = Tally::new("phi automorphism");
    let mut s = Sampler::new(seed).with_max_terms(2);
    for _ in 0..samples {
        let (pa, pb) = (s.parity(), s.parity());
        let (x, y) = (s.pair(pa, 2), s.pair(pb, 2));
        let lhs = bracket_pair(&x, &y).and_then(|b| phi_auto(&b));
        let rhs = phi_auto(&x).and_then(|px| phi_auto(&y).and_then(|py| bracket_pair(&px, &py)));
        match (lhs, rhs) {
            (Ok(l), Ok(rr)) => t.check(l == rr, || format!("x = {x}, y = {y}: {l} vs {rr}")),
            (Err(e), _) | (_, Err(e)) => t.check(false, || format!("x = {x}, y = {y}: {e}")),
        }
    }
    vec![r.finish(), t.finish()]
}

/// `i₂(f)` lies in the divergence-free part exactly when `Δf = 0` and `D³f = 0`.
pub fn vect_criterion() -> CheckOutcome {
    let mut t = Tally::new("vect criterion for i2");
    let pc = Chart::periplectic();
    for du in 0..=3 {
        for dx in 0..=3 {
            for m in monomials_of_bidegree(&pc, du, dx) {
                if m.is_one() {
                    continue;
                }
                let f = unit(m);
                let class = sle_classify(&f);
                let report = i2_field(&f).and_then(|d| membership(&d, Variant::Vect));
                if let (Some(c), Some(r)) = (t.result(class, || f.to_string()), t.result(report, || f.to_string())) {
                    t.check(r.is_member() == (c == SleClass::SleDegree), || format!("{f}: {c:?} but {r}"));
                }
            }
        }
    }
    for du in 0..=3 {
        for dx in 0..=3 {
            for f in sle_degree_basis(du, dx) {
                if let Some(r) = t.result(i2_field(&f).and_then(|d| membership(&d, Variant::Vect)), || f.to_string()) {
                    t.check(r.is_member(), || format!("{f}: {r}"));
                }
            }
        }
    }
    t.finish()
}

/// The span of `i₁` images equals the prolongation of the table without `d`.
pub fn i1_onto_vect(max_degree: i64) -> CheckOutcome {
    let mut t = Tally::new("i1 onto vect prolongation");
    let comps = match t.result(prolong_to(&ProlongationInput::vect03(), max_degree), || "prolong".into()) {
        Some(c) => c,
        None => return t.finish(),
    };
    for comp in &comps {
        let d = comp.degree;
        if let Some(fields) = t.result(images(&i1_monomials(d), i1_field), || format!("degree {d}")) {
            if let Some(cmp) = t.result(subspace_compare(&fields, &comp.basis), || format!("degree {d}")) {
                t.check(cmp.relation == Relation::Equal, || format!("degree {d}: {} vs {}", cmp.dim_a, cmp.dim_b));
            }
        }
    }
    t.finish()
}

/// Degree-0 closure of `{F} ∪ g₋₁` and the brackets of `F` with the constant fields.
pub fn simplicity_evidence() -> CheckOutcome {
    let mut t = Tally::new("generation from F");
    let f = simplicity_witness();
    let minus: Vec<SuperField> = g_minus1_basis().into_iter().map(|e| e.field).collect();
    let mut v0: Vec<SuperField> = Vec::new();
    let mut v1: Vec<SuperField> = vec![f.clone()];
    let mut vm: Vec<SuperField> = minus.clone();
    let add = |set: &mut Vec<SuperField>, x: SuperField| -> bool {
        if x.is_zero() {
            return false;
        }
        let before = span_rank(set);
        set.push(x);
        if span_rank(set) == before {
            set.pop();
            false
        } else {
            true
        }
    };
    loop {
        let mut grew = false;
        let (c0, c1, cm) = (v0.clone(), v1.clone(), vm.clone());
        for a in &cm {
            for b in &c1 {
                grew |= a.commutator(b).map(|x| add(&mut v0, x)).unwrap_or(false);
            }
        }
        for a in &c0 {
            for b in &c0 {
                grew |= a.commutator(b).map(|x| add(&mut v0, x)).unwrap_or(false);
            }
            for b in &c1 {
                grew |= a.commutator(b).map(|x| add(&mut v1, x)).unwrap_or(false);
            }
            for b in &cm {
                grew |= a.commutator(b).map(|x| add(&mut vm, x)).unwrap_or(false);
            }
        }
        if !grew {
            break;
        }
    }
    let mut target: Vec<SuperField> = g0_basis().into_iter().map(|e| e.field).collect();
    target.push(crate::exceptional::euler_field());
    t.check(v0.len() == 25, || {
        let killed = minus.iter().filter(|a| a.commutator(&f).map(|c| c.is_zero()).unwrap_or(false)).count();
        let flat = v0.iter().filter(|a| a.commutator(&f).map(|c| c.is_zero()).unwrap_or(false)).count();
        format!(
            "degree 0 rank {}; F commutes with {killed} of {} degree -1 generators and {flat} of the degree 0 fields reached, so the closure stops",
            v0.len(),
            minus.len()
        )
    });
    if let Some(cmp) = t.result(subspace_compare(&v0, &target), || "compare".into()) {
        t.check(cmp.relation == Relation::Equal, || format!("degree 0 span relation {}", cmp.relation));
    }
    let std = Chart::standard();
    let dict = BasisDictionary::new();
    for i in 1..=3 {
        let dxi = SuperField::partial_named(&std, &format!("x{i}")).unwrap();
        let deta = dict.get(&format!("deta{i}")).unwrap().clone();
        if let Some(c) = t.result(dxi.commutator(&f), || format!("[Dx{i}, F]")) {
            t.check(c == -deta, || format!("[Dx{i}, F] = {c}"));
        }
        let du = SuperField::partial_named(&std, &format!("u{i}")).unwrap();
        if let Some(c) = t.result(du.commutator(&f), || format!("[Du{i}, F]")) {
            t.check(c.is_zero(), || format!("[Du{i}, F] = {c}"));
        }
    }
    let mut out = t.finish();
    if out.passed {
        out.detail = format!("degree 0 rank {}; {}", v0.len(), out.detail);
    }
    out
}

/// `[g₋₁, cvect₁]` spans exactly `g₀ ⊕ C·d`.
pub fn degree_one_brackets() -> CheckOutcome {
    let mut t = Tally::new("g_-1 against degree 1");
    let input = ProlongationInput::cvect03();
    if let Some(comps) = t.result(prolong_to(&input, 1), || "prolongation".into()) {
        let mut span = Vec::new();
        for a in &comps[0].basis {
            for b in &comps[2].basis {
                if let Some(c) = t.result(a.commutator(b), || "bracket".into()) {
                    span.push(c);
                }
            }
        }
        let mut target: Vec<SuperField> = g0_basis().into_iter().map(|e| e.field).collect();
        target.push(crate::exceptional::euler_field());
        let rank = span_rank(&span);
        t.check(rank == 25, || format!("rank {rank}"));
        if let Some(cmp) = t.result(subspace_compare(&span, &target), || "compare".into()) {
            t.check(cmp.relation == Relation::Equal, || format!("relation {}", cmp.relation));
        }
    }
    t.finish()
}

/// `dim(i₁ image ∩ i₂ image)` per degree against `dim sle°(3;3)` from the classifier.
pub fn intersection_dimensions(max_degree: i64) -> CheckOutcome {
    let mut t = Tally::new("image intersection dimensions");
    let mut dims = Vec::new();
    for d in -1..=max_degree {
        let a = t.result(images(&i1_monomials(d), i1_field), || format!("i1 degree {d}"));
        let b = t.result(images(&i2_monomials(d), i2_field), || format!("i2 degree {d}"));
        if let (Some(a), Some(b)) = (a, b) {
            if let Some(cmp) = t.result(subspace_compare(&a, &b), || format!("degree {d}")) {
                let expected: usize = if d + 1 < 0 { 0 } else { (0..=3).map(|dx| sle_degree_basis((d + 1) as u32, dx).len()).sum() };
                t.check(cmp.dim_intersection == expected, || {
                    format!("degree {d}: intersection {} but sle° has {expected}", cmp.dim_intersection)
                });
                dims.push(format!("{d}:{}", cmp.dim_intersection));
            }
        }
    }
    let mut out = t.finish();
    if out.passed {
        out.detail = format!("intersections {}", dims.join(" "));
    }
    out
}

/// Graded Jacobi on random fields and random pairs.
pub fn jacobi(field_triples: usize, pair_triples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut s = Sampler::new(seed).with_max_terms(2);
    let std = Chart::standard();
    let mut t = Tally::new("Jacobi for fields");
    for _ in 0..field_triples {
        let ps = [s.parity(), s.parity(), s.parity()];
        let [a, b, c] = ps.map(|p| s.field(&std, p, 2));
        let r = field_jacobi(&a, &b, &c);
        match r {
            Ok(ok) => t.check(ok, || format!("{a} ; {b} ; {c}")),
            Err(e) => t.check(false, || e.to_string()),
        }
    }
    let mut u = Tally::new("Jacobi for pairs");
    for _ in 0..pair_triples {
        let ps = [s.parity(), s.parity(), s.parity()];
        let [a, b, c] = ps.map(|p| s.pair(p, 2));
        let r = pair_jacobi(&a, &b, &c);
        match r {
            Ok(ok) => u.check(ok, || format!("{a} ; {b} ; {c}")),
            Err(e) => u.check(false, || e.to_string()),
        }
    }
    vec![t.finish(), u.finish()]
}

fn field_jacobi(a: &SuperField, b: &SuperField, c: &SuperField) -> Result<bool> {
    let (pa, pb) = (a.parity()?, b.parity()?);
    let lhs = a.commutator(&b.commutator(c)?)?;
    let rhs = &a.commutator(b)?.commutator(c)? + &b.commutator(&a.commutator(c)?)?.scale(&sign2(pa, pb));
    Ok(lhs == rhs)
}

fn pair_jacobi(a: &GluedPair, b: &GluedPair, c: &GluedPair) -> Result<bool> {
    let (pa, pb) = (a.parity()?, b.parity()?);
    let lhs = bracket_pair(a, &bracket_pair(b, c)?)?;
    let rhs = &bracket_pair(&bracket_pair(a, b)?, c)? + &bracket_pair(b, &bracket_pair(a, c)?)?.scale(&sign2(pa, pb));
    Ok(lhs == rhs)
}

/// `α_g` rewritten through `i₁` and `i₂`, per `deg_ξ g`.
pub fn alpha_cases(samples: usize, seed: u64) -> CheckOutcome {
    let mut t = Tally::new("alpha through the embeddings");
    let mut s = Sampler::new(seed).with_max_terms(3);
    let x = xi123();
    for dx in 0..=3 {
        for _ in 0..samples {
            let g = s.with_odd_degree(3, dx);
            let r = (|| -> Result<bool> {
                let pair = match dx {
                    0 => GluedPair::zero(),
                    1 => GluedPair::from_f(-(&delta(&g)? * &x)),
                    2 => GluedPair::from_f(g.clone()),
                    _ => {
                        let t = delta_inv(&d3xi(&g)?)?;
                        GluedPair::new(-t.clone(), t)
                    }
                };
                Ok(alpha_field(&g)? == realize(&pair)?)
            })();
            match r {
                Ok(ok) => t.check(ok, || format!("g = {g}")),
                Err(e) => t.check(false, || format!("g = {g}: {e}")),
            }
        }
    }
    t.finish()
}

/// `i₁h = i₂a(h) + α_{b(h)}`, per `deg_ξ h`.
pub fn i1_through_alpha(samples: usize, seed: u64) -> CheckOutcome {
    let mut t = Tally::new("i1 through i2 and alpha");
    let mut s = Sampler::new(seed).with_max_terms(3);
    let x = xi123();
    let pc = Chart::periplectic();
    for dx in 0..=3 {
        for _ in 0..samples {
            let h = s.with_odd_degree(3, dx);
            let r = (|| -> Result<bool> {
                let zero = SuperPolynomial::zero(&pc);
                let (a, b) = match dx {
                    0 => (delta(&(&h * &x))?, zero),
                    1 => (h.clone(), &delta(&h)? * &x),
                    2 => (zero, h.clone()),
                    _ => (zero, delta_inv(&d3xi(&h)?)?),
                };
                Ok(i1_field(&h)? == &i2_field(&a)? + &alpha_field(&b)?)
            })();
            match r {
                Ok(ok) => t.check(ok, || format!("h = {h}")),
                Err(e) => t.check(false, || format!("h = {h}: {e}")),
            }
        }
    }
    t.finish()
}

/// `[i₂f, α_g] = i₂F + α_G` with `F = f·D³g - (-1)^{(p(f)+1)(p(g)+1)} A_g f` and `G = -fΔg`.
pub fn i2_alpha_bracket(samples: usize, seed: u64) -> CheckOutcome {
    let mut t = Tally::new("i2 against alpha");
    let mut s = Sampler::new(seed).with_max_terms(3);
    for _ in 0..samples {
        let f = s.generating_function(3);
        let g = s.generating_function(3);
        let r = (|| -> Result<bool> {
            let (pf, pg) = (f.parity()?, g.parity()?);
            let ag_f = to_periplectic(&a_field(&g)?.apply(&lift(&f)?)?)?;
            let big_f = &(&f * &d3xi(&g)?) - &ag_f.scale(&sign2(pf.flip(), pg.flip()));
            let big_g = -(&f * &delta(&g)?);
            let lhs = i2_field(&f)?.commutator(&alpha_field(&g)?)?;
            Ok(lhs == &i2_field(&big_f)? + &alpha_field(&big_g)?)
        })();
        match r {
            Ok(ok) => t.check(ok, || format!("f = {f}, g = {g}")),
            Err(e) => t.check(false, || format!("f = {f}, g = {g}: {e}")),
        }
    }
    t.finish()
}

/// Fast commutator against composition, and closure of membership under brackets.
pub fn commutator_and_closure(samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut s = Sampler::new(seed).with_max_terms(3);
    let std = Chart::standard();
    let mut fast = Tally::new("commutator paths agree");
    for _ in 0..samples {
        let (pa, pb) = (s.parity(), s.parity());
        let (a, b) = (s.field(&std, pa, 3), s.field(&std, pb, 3));
        match (a.commutator(&b), a.commutator_by_action(&b)) {
            (Ok(x), Ok(y)) => fast.check(x == y, || format!("{a} ; {b}")),
            (Err(e), _) | (_, Err(e)) => fast.check(false, || e.to_string()),
        }
    }
    let mut closed = Tally::new("membership closed under brackets");
    for _ in 0..samples {
        let (pa, pb) = (s.parity(), s.parity());
        let r = (|| -> Result<bool> {
            let a = realize(&s.pair(pa, 2))?;
            let b = realize(&s.pair(pb, 2))?;
            Ok(membership(&a.commutator(&b)?, Variant::Cvect)?.is_member())
        })();
        match r {
            Ok(ok) => closed.check(ok, || "random realized pair".into()),
            Err(e) => closed.check(false, || e.to_string()),
        }
    }
    vec![fast.finish(), closed.finish()]
}

fn xi123() -> SuperPolynomial {
    let c = Chart::periplectic();
    (0..3).fold(SuperPolynomial::one(&c), |acc, j| &acc * &SuperPolynomial::var(&c, c.odd_var(j)))
}

fn merge(name: &str, parts: Vec<CheckOutcome>) -> CheckOutcome {
    let passed = parts.iter().all(|c| c.passed);
    let detail = parts.iter().map(|c| format!("{} [{}]", c.name, c.detail)).collect::<Vec<_>>().join("; ");
    CheckOutcome { name: name.into(), passed, detail }
}

fn renamed(name: &str, mut c: CheckOutcome) -> CheckOutcome {
    c.name = name.into();
    c
}

/// The ten acceptance criteria, in order, each as one outcome.
pub fn acceptance() -> Vec<CheckOutcome> {
    vec![
        renamed("1 prolongation dimensions", prolongation_dimensions()),
        renamed("2 membership ground truth", membership_ground_truth()),
        renamed("3 realization completeness", completeness(3)),
        merge("4 homomorphism identities", homomorphism_suite(200, 4)),
        renamed("5 table against oracle", table_vs_oracle(20, 5)),
        merge("6 regrading and phi", regrading_and_phi(100, 6)),
        renamed("7 vect criterion", vect_criterion()),
        renamed("8 generation from F", simplicity_evidence()),
        renamed("9 image intersections", intersection_dimensions(2)),
        merge("10 Jacobi", jacobi(200, 100, 10)),
    ]
}

/// Identities beyond the acceptance list.
pub fn supplementary() -> Vec<CheckOutcome> {
    let mut out = vec![
        alpha_cases(20, 11),
        i1_through_alpha(20, 12),
        i2_alpha_bracket(100, 13),
        i1_onto_vect(3),
        degree_one_brackets(),
    ];
    out.extend(commutator_and_closure(100, 14));
    out
}

/// Everything the `selftest` command runs.
pub fn selftest() -> Vec<CheckOutcome> {
    let mut out = acceptance();
    out.extend(supplementary());
    out
}
