//! Closed-form Nakayama automorphisms and the independent routes used to
//! check them: conjugation by normal elements and the Frobenius pairing on
//! the Koszul dual.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::distinguished::{build_distinguished, Distinguished};
use crate::freealg::{NcPoly, Word};
use crate::groebner::{binomial, GroebnerError, RewriteSystem};
use crate::linalg::{self, Matrix};
use crate::presentations::{check_conditions, Condition, ConditionReport, Params};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NakayamaError {
    #[error("parameter conditions fail: {}", failing_ids(.0))]
    ConditionsFailed(Box<ConditionReport>),
    #[error("map is {found}x{found}, expected {expected}x{expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is zero in the quotient")]
    ZeroInQuotient,
    #[error("not normal: g{} * z is not in z * V, residue {residue}", .generator + 1)]
    NotNormal { generator: usize, residue: NcPoly },
    #[error("pairing between degrees {degree} and its complement is degenerate")]
    NotFrobenius { degree: usize },
    #[error("Hilbert function {found:?} differs from {expected:?}")]
    HilbertMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

fn failing_ids(r: &ConditionReport) -> String {
    r.failing().map(|e| e.condition.id()).collect::<Vec<_>>().join(", ")
}

/// A degree-preserving map on generators; column `j` is the image of `g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearGeneratorMap {
    matrix: Matrix,
}

impl LinearGeneratorMap {
    pub fn new(matrix: Matrix) -> Result<Self, NakayamaError> {
        if !matrix.is_square() {
            return Err(NakayamaError::SizeMismatch { expected: matrix.rows(), found: matrix.cols() });
        }
        Ok(LinearGeneratorMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearGeneratorMap { matrix: Matrix::identity(n) }
    }

    pub fn diagonal(values: &[GaussianRational]) -> Self {
        LinearGeneratorMap { matrix: Matrix::diagonal(values) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn image(&self, j: usize) -> NcPoly {
        let n = self.size();
        NcPoly::from_terms(n, (0..n).map(|i| (Word::letter(i), self.matrix[(i, j)].clone())))
    }

    /// The induced algebra map on the free algebra.
    pub fn apply(&self, p: &NcPoly) -> NcPoly {
        p.apply_linear(&self.matrix)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearGeneratorMap) -> LinearGeneratorMap {
        LinearGeneratorMap { matrix: &self.matrix * &inner.matrix }
    }

    pub fn inverse(&self) -> Option<LinearGeneratorMap> {
        self.matrix.inverse().ok().map(|matrix| LinearGeneratorMap { matrix })
    }

    pub fn scale(&self, k: &GaussianRational) -> LinearGeneratorMap {
        LinearGeneratorMap { matrix: self.matrix.scale(k) }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// First generator whose images differ, with `self(g) - other(g)`.
    pub fn difference(&self, other: &LinearGeneratorMap) -> Option<NcPoly> {
        (0..self.size()).find_map(|j| {
            let d = &self.image(j) - &other.image(j);
            (!d.is_zero()).then_some(d)
        })
    }

    /// Row-major matrix of canonical scalar strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .matrix
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

/// The auxiliary data of the closed formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NakayamaData {
    /// `(I - C_s)^{-1}`
    pub a: Matrix,
    /// `(I - C_s)^{-1} (I + C_s)`
    pub b: Matrix,
    /// `prod_w q_wj`
    pub prod_q: Vec<GaussianRational>,
    /// `q_j1^2`
    pub sq: Vec<GaussianRational>,
}

impl NakayamaData {
    pub fn new(p: &Params) -> Result<Self, NakayamaError> {
        let s = p.s();
        let cs = p.c_block();
        let id = Matrix::identity(s);
        let a = id.sub(&cs).and_then(|m| m.inverse()).map_err(|_| conditions_error(p))?;
        let b = &a * &id.add(&cs).expect("same shape");
        let prod_q = (0..p.n()).map(|j| p.column_product(j)).collect();
        let sq = (0..p.n()).map(|j| p.q(j, 0).square()).collect();
        Ok(NakayamaData { a, b, prod_q, sq })
    }
}

fn conditions_error(p: &Params) -> NakayamaError {
    NakayamaError::ConditionsFailed(Box::new(check_conditions(p)))
}

pub(crate) fn require_conditions(p: &Params, only: Option<&[Condition]>) -> Result<(), NakayamaError> {
    let report = check_conditions(p);
    let ok = match only {
        None => report.all_hold(),
        Some(cs) => cs.iter().all(|&c| report.entry(c).holds),
    };
    if ok {
        Ok(())
    } else {
        Err(NakayamaError::ConditionsFailed(Box::new(report)))
    }
}

fn sign(n: usize) -> GaussianRational {
    if n.is_multiple_of(2) {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    }
}

/// Nakayama automorphism of `A(Q,C,s)` on the generators `t_j`.
pub fn nakayama_a(p: &Params) -> Result<LinearGeneratorMap, NakayamaError> {
    require_conditions(p, None)?;
    let d = NakayamaData::new(p)?;
    let (n, s) = (p.n(), p.s());
    let one = GaussianRational::one();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        if j < s {
            let f = &d.sq[j] * &d.prod_q[j];
            for i in 0..s {
                m[(i, j)] = &d.b[(i, j)] * &f;
            }
        } else {
            let f = &(&one + &d.sq[j]) * &d.prod_q[j];
            for i in 0..s {
                let mut acc = GaussianRational::zero();
                for l in 0..s {
                    acc += &(&d.a[(i, l)] * p.c(l, j));
                }
                m[(i, j)] = &acc * &f;
            }
            m[(j, j)] = d.prod_q[j].clone();
        }
    }
    LinearGeneratorMap::new(m)
}

/// Nakayama automorphism of the Koszul dual, from its own closed formula.
pub fn nakayama_dual(p: &Params) -> Result<LinearGeneratorMap, NakayamaError> {
    require_conditions(p, None)?;
    let d = NakayamaData::new(p)?;
    let (n, s) = (p.n(), p.s());
    let sg = sign(n);
    let one = GaussianRational::one();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        if j >= s {
            m[(j, j)] = &sg * &d.prod_q[j];
            continue;
        }
        for l in 0..s {
            m[(l, j)] = &sg * &(&d.b[(j, l)] * &(&d.sq[l] * &d.prod_q[l]));
        }
        for i in s..n {
            let mut acc = GaussianRational::zero();
            for l in 0..s {
                acc += &(&d.a[(j, l)] * p.c(l, i));
            }
            m[(i, j)] = &sg * &(&acc * &(&(&one + &d.sq[i]) * &d.prod_q[i]));
        }
    }
    LinearGeneratorMap::new(m)
}

/// `x_j -> (prod_w p_wj) x_j` on the skew polynomial ring.
pub fn nakayama_t1(p: &Params) -> Result<LinearGeneratorMap, NakayamaError> {
    require_conditions(p, Some(&[Condition::QUnitReciprocal]))?;
    let n = p.n();
    let diag: Vec<_> =
        (0..n).map(|j| (0..n).fold(GaussianRational::one(), |acc, w| acc * &p.p(w, j))).collect();
    Ok(LinearGeneratorMap::diagonal(&diag))
}

/// `x_j -> (-1)^n q_j1^2 (prod_w q_wj) x_j`.
pub fn nakayama_t2(p: &Params) -> Result<LinearGeneratorMap, NakayamaError> {
    require_conditions(p, Some(&[Condition::QUnitReciprocal, Condition::QSquareColumns]))?;
    let sg = sign(p.n());
    let diag: Vec<_> = (0..p.n()).map(|j| &sg * &(&p.q(j, 0).square() * &p.column_product(j))).collect();
    Ok(LinearGeneratorMap::diagonal(&diag))
}

/// `x_j -> q_zj^2 x_j`, the conjugation by `x_z^2` (or by `x_z^2 - x_1^2`) in `T1`.
pub fn tau_square(p: &Params, z: usize) -> LinearGeneratorMap {
    LinearGeneratorMap::diagonal(&(0..p.n()).map(|j| p.q(z, j).square()).collect::<Vec<_>>())
}

/// The nakayama automorphism of `T2` assembled from that of `T1` and the
/// conjugations by the normal sequence `x_i^2 - x_1^2`, `x_p^2`.
pub fn nakayama_t2_composed(p: &Params) -> Result<LinearGeneratorMap, NakayamaError> {
    require_conditions(p, Some(&[Condition::QUnitReciprocal, Condition::QSquareColumns]))?;
    let mut m = nakayama_t1(p)?;
    for z in 1..p.n() {
        m = m.compose(&tau_square(p, z));
    }
    Ok(m)
}

/// Closed form of the conjugation by `phi` in `T2`.
pub fn tau_phi_formula(p: &Params) -> Result<LinearGeneratorMap, NakayamaError> {
    require_conditions(p, None)?;
    let d = NakayamaData::new(p)?;
    let (n, s) = (p.n(), p.s());
    let one = GaussianRational::one();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        if j >= s {
            m[(j, j)] = p.q(0, j).square();
            continue;
        }
        for l in 0..s {
            m[(l, j)] = d.b[(j, l)].clone();
        }
        for i in s..n {
            let mut acc = GaussianRational::zero();
            for l in 0..s {
                acc += &(&d.a[(j, l)] * p.c(l, i));
            }
            m[(i, j)] = &acc * &(&one + &p.q(0, i).square());
        }
    }
    LinearGeneratorMap::new(m)
}

pub fn calabi_yau_test(p: &Params) -> Result<bool, NakayamaError> {
    Ok(nakayama_a(p)?.is_identity())
}

/// Reduction modulo the span of a family of polynomials.
#[derive(Debug, Clone, Default)]
pub(crate) struct Span {
    basis: BTreeMap<Word, NcPoly>,
}

impl Span {
    pub(crate) fn new<'a>(polys: impl IntoIterator<Item = &'a NcPoly>) -> Self {
        let mut span = Span::default();
        for p in polys {
            let r = span.reduce(p);
            if let Some((w, c)) = r.leading_term() {
                let w = w.clone();
                let inv = c.invert().expect("nonzero");
                span.basis.insert(w, r.scale(&inv));
            }
        }
        span
    }

    pub(crate) fn reduce(&self, p: &NcPoly) -> NcPoly {
        let mut r = p.clone();
        for (w, b) in self.basis.iter().rev() {
            let c = r.coefficient(w);
            if !c.is_zero() {
                r.add_scaled(b, &-c);
            }
        }
        r
    }
}

/// Solves `z g_j = sigma(g_j) z` in the quotient for every generator.
pub fn conjugation_of_normal(rs: &RewriteSystem, z: &NcPoly) -> Result<LinearGeneratorMap, NakayamaError> {
    let n = rs.generator_count();
    let e = z.homogeneous_degree().ok_or(NakayamaError::NotHomogeneous)?;
    if e + 1 > rs.complete_to() {
        return Err(GroebnerError::DegreeExceedsTruncation { degree: e + 1, limit: rs.complete_to() }.into());
    }
    if rs.normal_form(z)?.is_zero() {
        return Err(NakayamaError::ZeroInQuotient);
    }
    let gen = |i: usize| NcPoly::generator(n, i);
    let left: Vec<NcPoly> = (0..n).map(|i| rs.normal_form(&(&gen(i) * z))).collect::<Result<_, _>>()?;
    let span = Span::new(&left);
    let words: Vec<Word> = left.iter().flat_map(|p| p.terms().keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut system = Matrix::zeros(words.len(), n);
    for (i, p) in left.iter().enumerate() {
        for (r, w) in words.iter().enumerate() {
            system[(r, i)] = p.coefficient(w);
        }
    }
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let target = rs.normal_form(&(z * &gen(j)))?;
        let residue = span.reduce(&target);
        if !residue.is_zero() {
            return Err(NakayamaError::NotNormal { generator: j, residue });
        }
        let rhs: Vec<_> = words.iter().map(|w| target.coefficient(w)).collect();
        let x = linalg::solve(&system, &rhs).expect("shapes agree").expect("target lies in the span");
        for (i, v) in x.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    LinearGeneratorMap::new(m)
}

/// The Frobenius Nakayama automorphism `nu` of a finite-dimensional quotient
/// with Hilbert function `(1+t)^n`: `lambda(x_j v) = lambda(v nu(x_j))`,
/// where `lambda` reads the coefficient of the unique top normal word.
pub fn frobenius_nakayama(rs: &RewriteSystem) -> Result<LinearGeneratorMap, NakayamaError> {
    let n = rs.generator_count();
    if rs.truncation_degree() < n + 2 {
        return Err(GroebnerError::DegreeExceedsTruncation { degree: n + 1, limit: rs.truncation_degree() - 1 }.into());
    }
    let found = rs.hilbert().dims;
    let expected: Vec<usize> = (0..found.len()).map(|d| binomial(n, d)).collect();
    if found != expected {
        return Err(NakayamaError::HilbertMismatch { expected, found });
    }
    let top = rs.basis_at_degree(n)?.remove(0);
    let lambda = |u: &[u8], v: &[u8]| -> Result<GaussianRational, NakayamaError> {
        let w = NcPoly::monomial(n, Word::splice(u, v, &[]), GaussianRational::one());
        Ok(rs.normal_form(&w)?.coefficient(&top))
    };
    let bases: Vec<Vec<Word>> = (0..=n).map(|k| rs.basis_at_degree(k)).collect::<Result<_, _>>()?;
    for k in 0..=n {
        let (bk, bc) = (&bases[k], &bases[n - k]);
        let mut pairing = Matrix::zeros(bk.len(), bc.len());
        for (r, u) in bk.iter().enumerate() {
            for (c, v) in bc.iter().enumerate() {
                pairing[(r, c)] = lambda(u.as_slice(), v.as_slice())?;
            }
        }
        if !pairing.is_square() || pairing.rank() < bk.len() {
            return Err(NakayamaError::NotFrobenius { degree: k });
        }
    }
    let low = &bases[n - 1];
    let mut system = Matrix::zeros(low.len(), n);
    for (r, v) in low.iter().enumerate() {
        for i in 0..n {
            system[(r, i)] = lambda(v.as_slice(), &[i as u8])?;
        }
    }
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        let rhs: Vec<_> = low.iter().map(|v| lambda(&[j as u8], v.as_slice())).collect::<Result<_, _>>()?;
        let x = linalg::solve(&system, &rhs)
            .expect("shapes agree")
            .ok_or(NakayamaError::NotFrobenius { degree: n - 1 })?;
        for (i, v) in x.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    LinearGeneratorMap::new(m)
}

/// How the inverse of the Frobenius `nu` matched the closed-form dual map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusBranch {
    Exact,
    /// Equal after composing with `x -> -x` on degree 1.
    SignTwist,
}

impl FrobeniusBranch {
    pub fn name(self) -> &'static str {
        match self {
            FrobeniusBranch::Exact => "exact",
            FrobeniusBranch::SignTwist => "sign-twist",
        }
    }
}

pub fn compare_frobenius(mu_dual: &LinearGeneratorMap, nu: &LinearGeneratorMap) -> Option<FrobeniusBranch> {
    let inv = nu.inverse()?;
    if &inv == mu_dual {
        Some(FrobeniusBranch::Exact)
    } else if &inv.scale(&-GaussianRational::one()) == mu_dual {
        Some(FrobeniusBranch::SignTwist)
    } else {
        None
    }
}

/// Top-left `s x s` block of the nakayama map of `p` against the map of the
/// truncated parameters, rescaled by `prod_{w > s} q_wj` on column `j`.
pub fn restriction_difference(p: &Params) -> Result<Option<NcPoly>, NakayamaError> {
    let s = p.s();
    let full = nakayama_a(p)?;
    let sub = nakayama_a(&crate::presentations::restrict_params(p))?;
    let scale: Vec<_> = (0..s).map(|j| (s..p.n()).fold(GaussianRational::one(), |acc, w| acc * p.q(w, j))).collect();
    let expected = LinearGeneratorMap::new(&sub.matrix * &Matrix::diagonal(&scale))?;
    let block = LinearGeneratorMap::new(full.matrix.leading_block(s))?;
    Ok(block.difference(&expected))
}

/// `phi` for the given parameters.
pub fn phi(p: &Params) -> NcPoly {
    build_distinguished(p, Distinguished::Phi).expect("no index")
}
