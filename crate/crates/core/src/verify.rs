//! Verification reports: automorphism well-definedness, the identity suite
//! for the distinguished elements, and the named suites driven by the CLI.

use num_traits::One;

use crate::distinguished::{build_distinguished, c_quadric, Distinguished};
use crate::freealg::{NcPoly, Word};
use crate::groebner::{complete, GroebnerError, RewriteSystem};
use crate::linalg;
use crate::nakayama::{
    self, compare_frobenius, conjugation_of_normal, frobenius_nakayama, require_conditions, FrobeniusBranch,
    LinearGeneratorMap, NakayamaError, Span,
};
use crate::presentations::{build, omega, AlgebraKind, Params, Presentation};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationItem {
    pub item: String,
    /// `None` when the item passed.
    pub residue: Option<NcPoly>,
}

impl VerificationItem {
    pub fn passed(&self) -> bool {
        self.residue.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub items: Vec<VerificationItem>,
}

impl VerificationReport {
    /// Records `residue`; a zero residue is a pass.
    pub fn push(&mut self, item: impl Into<String>, residue: NcPoly) {
        let residue = (!residue.is_zero()).then_some(residue);
        self.items.push(VerificationItem { item: item.into(), residue });
    }

    pub fn push_result(&mut self, item: impl Into<String>, residue: Option<NcPoly>) {
        self.items.push(VerificationItem { item: item.into(), residue });
    }

    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        for it in other.items {
            self.items.push(VerificationItem { item: format!("{prefix}{}", it.item), residue: it.residue });
        }
    }

    pub fn all_pass(&self) -> bool {
        self.items.iter().all(VerificationItem::passed)
    }

    pub fn get(&self, item: &str) -> Option<&VerificationItem> {
        self.items.iter().find(|i| i.item == item)
    }

    pub fn failing(&self) -> impl Iterator<Item = &VerificationItem> {
        self.items.iter().filter(|i| !i.passed())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.items
                .iter()
                .map(|i| {
                    serde_json::json!({
                        "item": i.item,
                        "status": if i.passed() { "pass" } else { "fail" },
                        "residue": i.residue.as_ref().map(NcPoly::to_text),
                    })
                })
                .collect(),
        )
    }
}

/// Checks that `m` is invertible and maps every relation into the span of
/// the relations.
pub fn verify_graded_automorphism(
    pres: &Presentation,
    m: &LinearGeneratorMap,
) -> Result<VerificationReport, NakayamaError> {
    let n = pres.generator_count();
    if m.size() != n {
        return Err(NakayamaError::SizeMismatch { expected: n, found: m.size() });
    }
    let mut report = VerificationReport::default();
    let kernel = linalg::kernel_vector(m.matrix())
        .map(|v| NcPoly::from_terms(n, v.into_iter().enumerate().map(|(i, c)| (Word::letter(i), c))));
    report.push_result("invertible", kernel);
    let span = Span::new(pres.relations());
    for (k, r) in pres.relations().iter().enumerate() {
        report.push(format!("relation-{}", k + 1), span.reduce(&m.apply(r)));
    }
    Ok(report)
}

/// Rewrite systems for the quotients a suite touches.
struct Quotients {
    t1: RewriteSystem,
    t2: RewriteSystem,
    dual: RewriteSystem,
}

impl Quotients {
    fn new(p: &Params, d: usize) -> Result<Self, GroebnerError> {
        Ok(Quotients {
            t1: complete(&build(p, AlgebraKind::T1), d)?,
            t2: complete(&build(p, AlgebraKind::T2), d)?,
            dual: complete(&build(p, AlgebraKind::Dual), d)?,
        })
    }
}

/// Smallest truncation the identity suite accepts.
pub fn lemma_truncation(n: usize) -> usize {
    5.max(n + 2)
}

/// The identity suite, after checking the parameter conditions.
pub fn verify_lemmas(p: &Params, d: usize) -> Result<VerificationReport, NakayamaError> {
    require_conditions(p, None)?;
    verify_lemmas_unchecked(p, d)
}

/// The identity suite without the condition gate, for exploring parameter
/// sets that violate some condition.
pub fn verify_lemmas_unchecked(p: &Params, d: usize) -> Result<VerificationReport, NakayamaError> {
    let need = lemma_truncation(p.n());
    if d < need {
        return Err(GroebnerError::DegreeExceedsTruncation { degree: need, limit: d }.into());
    }
    let qs = Quotients::new(p, d)?;
    let (n, s) = (p.n(), p.s());
    let el = |w: Distinguished| build_distinguished(p, w).expect("indices in range");
    let x = |i: usize| NcPoly::generator(n, i);
    let sq = |i: usize| NcPoly::monomial(n, Word::from_letters(&[i, i]), GaussianRational::one());
    let mut report = VerificationReport::default();

    // skew polynomial ring
    let t1 = |f: NcPoly| qs.t1.normal_form(&f);
    for a in 0..s {
        let (y, w) = (el(Distinguished::Y(a)), el(Distinguished::W(a)));
        report.push(format!("T1:x-y-anticommute:{}", a + 1), t1(&(&x(a) * &y) + &(&y * &x(a)))?);
        report.push(format!("T1:x-W-anticommute:{}", a + 1), t1(&(&x(a) * &w) + &(&w * &x(a)))?);
    }
    for a in 0..n {
        let m = el(Distinguished::M(a));
        let f = p.q(0, a).square().invert().expect("nonzero");
        report.push(format!("T1:x-M-skew:{}", a + 1), t1(&(&x(a) * &m) - &(&m * &x(a)).scale(&f))?);
        if a < s {
            report.push(format!("T1:x-M-commute:{}", a + 1), t1(&(&x(a) * &m) - &(&m * &x(a)))?);
        }
    }
    let mu_t1 = LinearGeneratorMap::diagonal(
        &(0..n).map(|j| (0..n).fold(GaussianRational::one(), |acc, w| acc * &p.p(w, j))).collect::<Vec<_>>(),
    );
    let row_sq = (0..n).fold(GaussianRational::one(), |acc, w| acc * p.q(0, w)).square();
    for i in 1..s {
        let z = &sq(i) - &sq(0);
        report.push(format!("T1:nakayama-scalar-square-diff:{}", i + 1), t1(&mu_t1.apply(&z) - &z.scale(&row_sq))?);
    }

    // T2
    let t2 = |f: NcPoly| qs.t2.normal_form(&f);
    for i in s..n {
        let w = el(Distinguished::W(i));
        report.push(format!("T2:W-x-vanish:{}", i + 1), t2(&w * &x(i))?);
        report.push(format!("T2:x-W-vanish:{}", i + 1), t2(&x(i) * &w)?);
    }
    let ms: Vec<NcPoly> = (0..n).map(|j| el(Distinguished::M(j))).collect();
    for a in 0..s {
        let mut left = NcPoly::zero(n);
        let mut right = NcPoly::zero(n);
        for (j, m) in ms.iter().enumerate() {
            left.add_scaled(&(&x(j) * m), p.c(a, j));
            right.add_scaled(&(m * &x(j)), p.c(a, j));
        }
        report.push(format!("T2:c-x-M-sum:{}", a + 1), t2(left)?);
        report.push(format!("T2:c-M-x-sum:{}", a + 1), t2(right)?);
    }
    let phi = el(Distinguished::Phi);
    for i in 0..n {
        if i >= s {
            let f = p.q(0, i).square().invert().expect("nonzero");
            report.push(format!("T2:x-phi-skew:{}", i + 1), t2(&(&x(i) * &phi) - &(&phi * &x(i)).scale(&f))?);
        } else {
            let y = el(Distinguished::Y(i));
            let lhs = &(&x(i) + &y) * &phi;
            let rhs = &phi * &(&x(i) - &y);
            report.push(format!("T2:phi-exchange:{}", i + 1), t2(&lhs - &rhs)?);
        }
    }
    report.push_result("T2:phi-normal", normal_residue(&qs.t2, &phi)?);
    let mu_t2 = nakayama_t2_unchecked(p);
    let col_sq = p.column_product(0).square();
    report.push("T2:nakayama-scalar-phi", t2(&mu_t2.apply(&phi) - &phi.scale(&col_sq))?);

    // Koszul dual
    let du = |f: NcPoly| qs.dual.normal_form(&f);
    let ws: Vec<NcPoly> = (0..n).map(|a| el(Distinguished::W(a))).collect();
    for (a, w) in ws.iter().enumerate() {
        report.push(format!("dual:W-x-vanish:{}", a + 1), du(w * &x(a))?);
        report.push(format!("dual:x-W-vanish:{}", a + 1), du(&x(a) * w)?);
    }
    let total = ws.iter().fold(NcPoly::zero(n), |acc, w| &acc + w);
    let big_w = el(Distinguished::BigW);
    report.push("dual:W-sum", du(&total - &c_quadric(p, None).scale(&GaussianRational::from(2)))?);
    let low = ws[..s].iter().fold(NcPoly::zero(n), |acc, w| &acc + w);
    report.push("dual:W-split", du(&total - &(&low + &big_w))?);
    for (a, w) in ws.iter().enumerate().skip(s) {
        report.push(format!("dual:W-square:{}", a + 1), du(w * w)?);
    }
    let m = n - s + 1;
    report.push("dual:bigW-power", power_in(&qs.dual, &big_w, m)?);
    let x1sq = sq(0);
    let x1four = &x1sq * &x1sq;
    let half = GaussianRational::from_ratio(1, 2);
    report.push("dual:x1-fourth-left", du(&x1four + &(&big_w * &x1sq).scale(&half))?);
    report.push("dual:x1-fourth-right", du(&x1four + &(&x1sq * &big_w).scale(&half))?);
    report.push("dual:x1-power", power_in(&qs.dual, &x(0), 4 * m)?);
    let dims = qs.dual.hilbert().dims;
    let top = (n + 1..dims.len()).find(|&e| dims[e] != 0);
    let residue = match top {
        Some(e) => Some(NcPoly::monomial(n, qs.dual.basis_at_degree(e)?.remove(0), GaussianRational::one())),
        None => None,
    };
    report.push_result("dual:vanish-above-top-degree", residue);
    Ok(report)
}

fn nakayama_t2_unchecked(p: &Params) -> LinearGeneratorMap {
    let n = p.n();
    let sg = if n.is_multiple_of(2) { GaussianRational::one() } else { -GaussianRational::one() };
    LinearGeneratorMap::diagonal(&(0..n).map(|j| &sg * &(&p.q(j, 0).square() * &p.column_product(j))).collect::<Vec<_>>())
}

/// `z^m` in the quotient, multiplying one factor at a time and stopping at
/// zero, so the computation never leaves the completed range.
fn power_in(rs: &RewriteSystem, z: &NcPoly, m: usize) -> Result<NcPoly, NakayamaError> {
    let mut acc = NcPoly::one(z.gens());
    for _ in 0..m {
        if acc.is_zero() {
            break;
        }
        acc = rs.normal_form(&(&acc * z))?;
    }
    Ok(acc)
}

fn normal_residue(rs: &RewriteSystem, z: &NcPoly) -> Result<Option<NcPoly>, NakayamaError> {
    match conjugation_of_normal(rs, z) {
        Ok(_) => Ok(None),
        Err(NakayamaError::NotNormal { residue, .. }) => Ok(Some(residue)),
        Err(NakayamaError::ZeroInQuotient) => Ok(Some(z.clone())),
        Err(e) => Err(e),
    }
}

fn map_item(report: &mut VerificationReport, item: &str, left: &LinearGeneratorMap, right: &LinearGeneratorMap) {
    report.push_result(item, left.difference(right));
}

/// Well-definedness of the four closed-form maps plus the consistency
/// relations between them.
pub fn automorphism_suite(p: &Params, d: usize) -> Result<VerificationReport, NakayamaError> {
    require_conditions(p, None)?;
    let n = p.n();
    let maps = [
        (AlgebraKind::A, nakayama::nakayama_a(p)?),
        (AlgebraKind::Dual, nakayama::nakayama_dual(p)?),
        (AlgebraKind::T1, nakayama::nakayama_t1(p)?),
        (AlgebraKind::T2, nakayama::nakayama_t2(p)?),
    ];
    let mut report = VerificationReport::default();
    for (kind, m) in &maps {
        let sub = verify_graded_automorphism(&build(p, *kind), m)?;
        report.extend_prefixed(&format!("{}:nakayama:", kind.name()), sub);
    }
    let (mu_a, mu_e, _, mu_t2) = (&maps[0].1, &maps[1].1, &maps[2].1, &maps[3].1);
    let sg = if n.is_multiple_of(2) { GaussianRational::one() } else { -GaussianRational::one() };
    let dual_from_a = LinearGeneratorMap::new(mu_a.matrix().transpose().scale(&sg))?;
    map_item(&mut report, "duality", mu_e, &dual_from_a);
    map_item(&mut report, "T2:composed-formula", mu_t2, &nakayama::nakayama_t2_composed(p)?);

    let qs = Quotients::new(p, d)?;
    let mut composed = nakayama::nakayama_t1(p)?;
    for z in 1..n {
        let elt = if z < p.s() {
            let mut e = NcPoly::monomial(n, Word::from_letters(&[z, z]), GaussianRational::one());
            e.add_term(Word::from_letters(&[0, 0]), &-GaussianRational::one());
            e
        } else {
            NcPoly::monomial(n, Word::from_letters(&[z, z]), GaussianRational::one())
        };
        composed = composed.compose(&conjugation_of_normal(&qs.t1, &elt)?);
    }
    map_item(&mut report, "T2:composed-from-conjugation", mu_t2, &composed);
    let tau_phi = conjugation_of_normal(&qs.t2, &nakayama::phi(p))?;
    map_item(&mut report, "dual:from-T2-and-phi", mu_e, &mu_t2.compose(&tau_phi));
    report.push_result("restriction", nakayama::restriction_difference(p)?);
    Ok(report)
}

/// Normality of the elements the construction relies on.
pub fn normal_suite(p: &Params, d: usize) -> Result<VerificationReport, NakayamaError> {
    require_conditions(p, None)?;
    let n = p.n();
    let qs = Quotients::new(p, d)?;
    let rs_a = complete(&build(p, AlgebraKind::A), d)?;
    let mut report = VerificationReport::default();
    report.push_result("A:omega-normal", normal_residue(&rs_a, &omega(p))?);
    for z in 1..n {
        let mut e = NcPoly::monomial(n, Word::from_letters(&[z, z]), GaussianRational::one());
        if z < p.s() {
            e.add_term(Word::from_letters(&[0, 0]), &-GaussianRational::one());
        }
        report.push_result(format!("T1:square-normal:{}", z + 1), normal_residue(&qs.t1, &e)?);
    }
    let phi = nakayama::phi(p);
    report.push_result("T2:phi-normal", normal_residue(&qs.t2, &phi)?);
    if report.get("T2:phi-normal").is_some_and(VerificationItem::passed) {
        let solved = conjugation_of_normal(&qs.t2, &phi)?;
        map_item(&mut report, "T2:phi-conjugation-formula", &solved, &nakayama::tau_phi_formula(p)?);
    }
    Ok(report)
}

/// The conjugation by `Omega` in `A`, reported without a closed form.
pub fn omega_conjugation(p: &Params, d: usize) -> Result<LinearGeneratorMap, NakayamaError> {
    let rs = complete(&build(p, AlgebraKind::A), d)?;
    conjugation_of_normal(&rs, &omega(p))
}

/// Frobenius oracle on the Koszul dual against the closed-form dual map.
pub fn frobenius_suite(
    p: &Params,
    d: usize,
) -> Result<(VerificationReport, Option<FrobeniusBranch>), NakayamaError> {
    require_conditions(p, None)?;
    let rs = complete(&build(p, AlgebraKind::Dual), d)?;
    let mu_e = nakayama::nakayama_dual(p)?;
    let mut report = VerificationReport::default();
    let nu = match frobenius_nakayama(&rs) {
        Ok(nu) => nu,
        Err(NakayamaError::NotFrobenius { degree }) => {
            let residue = NcPoly::monomial(p.n(), Word::from_letters(&vec![0; degree]), GaussianRational::one());
            report.push_result("frobenius:pairing-nondegenerate", Some(residue));
            return Ok((report, None));
        }
        Err(e) => return Err(e),
    };
    report.push_result("frobenius:pairing-nondegenerate", None);
    let branch = compare_frobenius(&mu_e, &nu);
    let residue = match branch {
        Some(_) => None,
        None => Some(
            nu.inverse()
                .and_then(|inv| inv.difference(&mu_e))
                .unwrap_or_else(|| NcPoly::one(p.n())),
        ),
    };
    report.push_result("frobenius:matches-dual", residue);
    Ok((report, branch))
}
