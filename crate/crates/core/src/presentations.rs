//! Parameters `(n, s, Q, C)`, their admissibility conditions, and the four
//! quadratic presentations built from them: the algebra `A(Q,C,s)`, its
//! Koszul dual, the skew polynomial ring `T1` and its quotient `T2`.
//!
//! All indices in this module are 0-based; reports and text output shift
//! them to 1-based.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freealg::{NcPoly, Word};
use crate::linalg::{self, Matrix};
use crate::scalar::{parse_scalar, GaussianRational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("n must be at least 1")]
    EmptyGenerators,
    #[error("s = {s} must satisfy 1 <= s <= n = {n}")]
    BadS { n: usize, s: usize },
    #[error("{name} is {rows}x{cols}, expected {n}x{n}")]
    BadShape { name: &'static str, rows: usize, cols: usize, n: usize },
    #[error("q[{i}][{j}] is zero", i = .i + 1, j = .j + 1)]
    ZeroQ { i: usize, j: usize },
    #[error("{name}[{i}][{j}]: {error}", i = .i + 1, j = .j + 1)]
    Scalar { name: &'static str, i: usize, j: usize, error: ScalarError },
    #[error("fixture JSON at byte {offset}: {message}")]
    Json { offset: usize, message: String },
}

/// The data defining `A(Q,C,s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    n: usize,
    s: usize,
    q: Matrix,
    c: Matrix,
}

impl Params {
    pub fn new(n: usize, s: usize, q: Matrix, c: Matrix) -> Result<Self, ParamsError> {
        if n == 0 {
            return Err(ParamsError::EmptyGenerators);
        }
        if s == 0 || s > n {
            return Err(ParamsError::BadS { n, s });
        }
        for (name, m) in [("Q", &q), ("C", &c)] {
            if m.rows() != n || m.cols() != n {
                return Err(ParamsError::BadShape { name, rows: m.rows(), cols: m.cols(), n });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if q[(i, j)].is_zero() {
                    return Err(ParamsError::ZeroQ { i, j });
                }
            }
        }
        Ok(Params { n, s, q, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn q_matrix(&self) -> &Matrix {
        &self.q
    }

    pub fn c_matrix(&self) -> &Matrix {
        &self.c
    }

    pub fn q(&self, i: usize, j: usize) -> &GaussianRational {
        &self.q[(i, j)]
    }

    pub fn c(&self, i: usize, j: usize) -> &GaussianRational {
        &self.c[(i, j)]
    }

    pub fn q_inv(&self, i: usize, j: usize) -> GaussianRational {
        self.q[(i, j)].invert().expect("q entries are nonzero")
    }

    /// `p_ij = -1/q_ij`, the parameters of `T1`.
    pub fn p(&self, i: usize, j: usize) -> GaussianRational {
        -self.q_inv(i, j)
    }

    /// Column product `prod_w q_wj`.
    pub fn column_product(&self, j: usize) -> GaussianRational {
        (0..self.n).fold(GaussianRational::one(), |acc, w| acc * &self.q[(w, j)])
    }

    /// `C_s`, the leading `s x s` block of `C`.
    pub fn c_block(&self) -> Matrix {
        self.c.leading_block(self.s)
    }

    pub fn with_q(&self, q: Matrix) -> Result<Params, ParamsError> {
        Params::new(self.n, self.s, q, self.c.clone())
    }

    pub fn with_c(&self, c: Matrix) -> Result<Params, ParamsError> {
        Params::new(self.n, self.s, self.q.clone(), c)
    }

    pub fn from_fixture_json(text: &str) -> Result<Params, ParamsError> {
        let raw: FixtureJson = serde_json::from_str(text).map_err(|e| ParamsError::Json {
            offset: byte_offset(text, e.line(), e.column()),
            message: e.to_string(),
        })?;
        raw.to_params()
    }

    pub fn to_fixture_json(&self) -> FixtureJson {
        FixtureJson::from_params(self)
    }
}

// serde_json reports 1-based lines and columns; column 0 means "before the
// first character of the line".
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// `{"n": int, "s": int, "Q": [[scalar]], "C": [[scalar]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureJson {
    pub n: usize,
    pub s: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
}

impl FixtureJson {
    pub fn from_params(p: &Params) -> Self {
        let text = |m: &Matrix| m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        FixtureJson { n: p.n, s: p.s, q: text(&p.q), c: text(&p.c) }
    }

    pub fn to_params(&self) -> Result<Params, ParamsError> {
        let parse = |name: &'static str, rows: &[Vec<String>]| -> Result<Matrix, ParamsError> {
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| parse_scalar(x).map_err(|error| ParamsError::Scalar { name, i, j, error }))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cols = parsed.first().map_or(0, Vec::len);
            Matrix::from_rows(parsed).map_err(|_| ParamsError::BadShape { name, rows: rows.len(), cols, n: self.n })
        };
        Params::new(self.n, self.s, parse("Q", &self.q)?, parse("C", &self.c)?)
    }
}

/// The eight admissibility conditions on `(Q, C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `q_ii = 1`, `q_ji = 1/q_ij`.
    QUnitReciprocal,
    /// `c_ii = 0`, `c_ji = -c_ij/q_ij = -q_ji c_ij`.
    CSkewQSymmetric,
    /// `q_ja^2 = q_j1^2` for every `j` and `2 <= a <= s`.
    QSquareColumns,
    /// `q_ia q_ja c_ij = q_1a^2 c_ij` for every `a` and `i != j`, both `!= a`.
    QcBalance,
    /// `q_ia c_ia = c_ia` for `a <= s`.
    CFixedByQ,
    /// `c_aj c_kl - q_jl c_al c_kj + q_lk q_jk c_ak c_lj = 0`, `a <= s`, `j < l < k`.
    PluckerRight,
    /// `c_ak c_lj - q_lk c_al c_kj + q_jl q_jk c_aj c_kl = 0`, `a <= s`, `j < l < k`.
    PluckerLeft,
    /// `det(I - C_s) != 0`.
    DetNonzero,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::QUnitReciprocal,
        Condition::CSkewQSymmetric,
        Condition::QSquareColumns,
        Condition::QcBalance,
        Condition::CFixedByQ,
        Condition::PluckerRight,
        Condition::PluckerLeft,
        Condition::DetNonzero,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Condition::QUnitReciprocal => "q-unit-reciprocal",
            Condition::CSkewQSymmetric => "c-skew-q-symmetric",
            Condition::QSquareColumns => "q-square-columns",
            Condition::QcBalance => "qc-balance",
            Condition::CFixedByQ => "c-fixed-by-q",
            Condition::PluckerRight => "c-plucker-right",
            Condition::PluckerLeft => "c-plucker-left",
            Condition::DetNonzero => "det-i-minus-cs-nonzero",
        }
    }

    /// Names of the entries of a witness index tuple.
    pub fn index_names(self) -> &'static [&'static str] {
        match self {
            Condition::QUnitReciprocal | Condition::CSkewQSymmetric => &["i", "j"],
            Condition::QSquareColumns => &["j", "alpha"],
            Condition::QcBalance => &["alpha", "i", "j"],
            Condition::CFixedByQ => &["alpha", "i"],
            Condition::PluckerRight | Condition::PluckerLeft => &["alpha", "j", "l", "k"],
            Condition::DetNonzero => &[],
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// An index tuple (0-based) at which a condition fails, with both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub lhs: GaussianRational,
    pub rhs: GaussianRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionEntry {
    pub condition: Condition,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub entries: Vec<ConditionEntry>,
    /// `det(I + C_s)`, nonzero whenever all conditions hold.
    pub det_i_plus_cs: GaussianRational,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }

    pub fn entry(&self, c: Condition) -> &ConditionEntry {
        self.entries.iter().find(|e| e.condition == c).expect("every condition is reported")
    }

    pub fn failing(&self) -> impl Iterator<Item = &ConditionEntry> {
        self.entries.iter().filter(|e| !e.holds)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                let witness = e.witness.as_ref().map(|w| {
                    let idx: serde_json::Map<_, _> = e
                        .condition
                        .index_names()
                        .iter()
                        .zip(&w.indices)
                        .map(|(name, &i)| (name.to_string(), serde_json::json!(i + 1)))
                        .collect();
                    serde_json::json!({ "indices": idx, "lhs": w.lhs.to_string(), "rhs": w.rhs.to_string() })
                });
                serde_json::json!({ "condition": e.condition.id(), "holds": e.holds, "witness": witness })
            })
            .collect();
        serde_json::json!({
            "all_hold": self.all_hold(),
            "conditions": entries,
            "det_i_plus_cs": self.det_i_plus_cs.to_string(),
            "det_i_plus_cs_nonzero": !self.det_i_plus_cs.is_zero(),
        })
    }
}

/// The equations a condition imposes at one index tuple, as `(lhs, rhs)`
/// pairs. For [`Condition::DetNonzero`] the single pair is `(det, 0)` and
/// the condition is violated when they are *equal*.
pub fn condition_equations(p: &Params, cond: Condition, idx: &[usize]) -> Vec<(GaussianRational, GaussianRational)> {
    let q = |i: usize, j: usize| p.q(i, j).clone();
    let c = |i: usize, j: usize| p.c(i, j).clone();
    match (cond, idx) {
        (Condition::QUnitReciprocal, &[i, j]) if i == j => vec![(q(i, i), GaussianRational::one())],
        (Condition::QUnitReciprocal, &[i, j]) => vec![(q(j, i), p.q_inv(i, j))],
        (Condition::CSkewQSymmetric, &[i, j]) if i == j => vec![(c(i, i), GaussianRational::zero())],
        (Condition::CSkewQSymmetric, &[i, j]) => {
            vec![(c(j, i), -(p.q_inv(i, j) * c(i, j))), (c(j, i), -(q(j, i) * c(i, j)))]
        }
        (Condition::QSquareColumns, &[j, a]) => vec![(q(j, a).square(), q(j, 0).square())],
        (Condition::QcBalance, &[a, i, j]) => vec![(q(i, a) * q(j, a) * c(i, j), q(0, a).square() * c(i, j))],
        (Condition::CFixedByQ, &[a, i]) => vec![(q(i, a) * c(i, a), c(i, a))],
        (Condition::PluckerRight, &[a, j, l, k]) => {
            let lhs = c(a, j) * c(k, l) - q(j, l) * c(a, l) * c(k, j) + q(l, k) * q(j, k) * c(a, k) * c(l, j);
            vec![(lhs, GaussianRational::zero())]
        }
        (Condition::PluckerLeft, &[a, j, l, k]) => {
            let lhs = c(a, k) * c(l, j) - q(l, k) * c(a, l) * c(k, j) + q(j, l) * q(j, k) * c(a, j) * c(k, l);
            vec![(lhs, GaussianRational::zero())]
        }
        (Condition::DetNonzero, &[]) => {
            let s = p.s();
            let m = Matrix::identity(s).sub(&p.c_block()).expect("square block");
            vec![(linalg::determinant(&m).expect("square"), GaussianRational::zero())]
        }
        _ => panic!("index tuple {idx:?} does not fit condition {cond}"),
    }
}

fn violated(cond: Condition, eqs: &[(GaussianRational, GaussianRational)]) -> Option<(GaussianRational, GaussianRational)> {
    if cond == Condition::DetNonzero {
        return eqs.iter().find(|(l, r)| l == r).cloned();
    }
    eqs.iter().find(|(l, r)| l != r).cloned()
}

/// Every index tuple a condition quantifies over, in lexicographic order.
pub fn condition_index_tuples(p: &Params, cond: Condition) -> Vec<Vec<usize>> {
    let (n, s) = (p.n(), p.s());
    let mut out = Vec::new();
    match cond {
        Condition::QUnitReciprocal | Condition::CSkewQSymmetric => {
            for i in 0..n {
                for j in 0..n {
                    out.push(vec![i, j]);
                }
            }
        }
        Condition::QSquareColumns => {
            for j in 0..n {
                for a in 1..s {
                    out.push(vec![j, a]);
                }
            }
        }
        Condition::QcBalance => {
            for a in 0..n {
                for i in (0..n).filter(|&i| i != a) {
                    for j in (0..n).filter(|&j| j != a && j != i) {
                        out.push(vec![a, i, j]);
                    }
                }
            }
        }
        Condition::CFixedByQ => {
            for a in 0..s {
                for i in 0..n {
                    out.push(vec![a, i]);
                }
            }
        }
        Condition::PluckerRight | Condition::PluckerLeft => {
            for a in 0..s {
                for j in 0..n {
                    for l in j + 1..n {
                        for k in l + 1..n {
                            out.push(vec![a, j, l, k]);
                        }
                    }
                }
            }
        }
        Condition::DetNonzero => out.push(vec![]),
    }
    out
}

/// Evaluates all eight conditions literally; failures are reported with the
/// first violating index tuple.
pub fn check_conditions(p: &Params) -> ConditionReport {
    let entries = Condition::ALL
        .iter()
        .map(|&cond| {
            let witness = condition_index_tuples(p, cond).into_iter().find_map(|idx| {
                violated(cond, &condition_equations(p, cond, &idx)).map(|(lhs, rhs)| Witness { indices: idx, lhs, rhs })
            });
            ConditionEntry { condition: cond, holds: witness.is_none(), witness }
        })
        .collect();
    let plus = Matrix::identity(p.s()).add(&p.c_block()).expect("square block");
    ConditionReport { entries, det_i_plus_cs: linalg::determinant(&plus).expect("square") }
}

/// Which algebra a presentation describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraKind {
    A,
    Dual,
    T1,
    T2,
    Custom,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::A => "A",
            AlgebraKind::Dual => "dual",
            AlgebraKind::T1 => "T1",
            AlgebraKind::T2 => "T2",
            AlgebraKind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("relation {0} is not homogeneous of degree 2")]
    NotQuadratic(usize),
    #[error("relation {0} has the wrong generator count")]
    GeneratorMismatch(usize),
    #[error("relations are linearly dependent")]
    Dependent,
}

/// Generators plus homogeneous quadratic relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relations: Vec<NcPoly>,
    kind: AlgebraKind,
}

impl Presentation {
    /// Validated constructor for hand-written presentations.
    pub fn new(generator_names: Vec<String>, relations: Vec<NcPoly>, kind: AlgebraKind) -> Result<Self, PresentationError> {
        let n = generator_names.len();
        for (k, r) in relations.iter().enumerate() {
            if r.gens() != n {
                return Err(PresentationError::GeneratorMismatch(k));
            }
            if r.is_zero() {
                return Err(PresentationError::ZeroRelation(k));
            }
            if r.homogeneous_degree() != Some(2) {
                return Err(PresentationError::NotQuadratic(k));
            }
        }
        if relation_rank(n, &relations) < relations.len() {
            return Err(PresentationError::Dependent);
        }
        Ok(Presentation { generator_names, relations, kind })
    }

    /// The free algebra on `n` generators.
    pub fn free(n: usize) -> Self {
        Presentation { generator_names: names("g", n), relations: Vec::new(), kind: AlgebraKind::Custom }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Rank of a family of degree-2 polynomials in the `n^2`-dimensional space.
pub(crate) fn relation_rank(n: usize, rels: &[NcPoly]) -> usize {
    let mut m = Matrix::zeros(rels.len(), n * n);
    for (r, rel) in rels.iter().enumerate() {
        for (w, c) in rel.terms() {
            let l: Vec<usize> = w.letters().collect();
            m[(r, l[0] * n + l[1])] = c.clone();
        }
    }
    linalg::rank(&m)
}

fn quad(n: usize, terms: &[(usize, usize, GaussianRational)]) -> NcPoly {
    NcPoly::from_terms(n, terms.iter().map(|(a, b, c)| (Word::from_letters(&[*a, *b]), c.clone())))
}

/// `Omega = sum_{i<s} g_i^2`.
pub fn omega(p: &Params) -> NcPoly {
    quad(p.n(), &(0..p.s()).map(|i| (i, i, GaussianRational::one())).collect::<Vec<_>>())
}

/// Relations `t_j t_i - q_ij t_i t_j - c_ij Omega` for `i < j`.
pub fn build_a(p: &Params) -> Presentation {
    let n = p.n();
    let om = omega(p);
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = quad(n, &[(j, i, GaussianRational::one()), (i, j, -p.q(i, j).clone())]);
            r.add_scaled(&om, &-p.c(i, j).clone());
            relations.push(r);
        }
    }
    Presentation { generator_names: names("t", n), relations, kind: AlgebraKind::A }
}

/// The Koszul dual: `x_j x_i + x_i x_j / q_ij` (`i < j`), `x_i^2` (`i >= s`),
/// `x_i^2 - x_1^2` (`1 < i <= s`) and `x_1^2 - sum_{i<j} c_ij/q_ij x_i x_j`.
pub fn build_dual(p: &Params) -> Presentation {
    let n = p.n();
    let one = GaussianRational::one();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(quad(n, &[(j, i, one.clone()), (i, j, p.q_inv(i, j))]));
        }
    }
    for i in p.s()..n {
        relations.push(quad(n, &[(i, i, one.clone())]));
    }
    for i in 1..p.s() {
        relations.push(quad(n, &[(i, i, one.clone()), (0, 0, -one.clone())]));
    }
    let mut last = vec![(0, 0, one.clone())];
    for i in 0..n {
        for j in i + 1..n {
            last.push((i, j, -(p.q_inv(i, j) * p.c(i, j))));
        }
    }
    relations.push(quad(n, &last));
    Presentation { generator_names: names("x", n), relations, kind: AlgebraKind::Dual }
}

fn t1_relations(p: &Params) -> Vec<NcPoly> {
    let n = p.n();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(quad(n, &[(j, i, GaussianRational::one()), (i, j, -p.p(i, j))]));
        }
    }
    relations
}

/// The skew polynomial ring with `x_j x_i = p_ij x_i x_j`, `p_ij = -1/q_ij`.
pub fn build_t1(p: &Params) -> Presentation {
    Presentation { generator_names: names("x", p.n()), relations: t1_relations(p), kind: AlgebraKind::T1 }
}

/// `T1` modulo `x_1^2 - x_i^2` (`1 < i <= s`) and `x_p^2` (`p > s`).
pub fn build_t2(p: &Params) -> Presentation {
    let n = p.n();
    let one = GaussianRational::one();
    let mut relations = t1_relations(p);
    for i in 1..p.s() {
        relations.push(quad(n, &[(0, 0, one.clone()), (i, i, -one.clone())]));
    }
    for q in p.s()..n {
        relations.push(quad(n, &[(q, q, one.clone())]));
    }
    Presentation { generator_names: names("x", n), relations, kind: AlgebraKind::T2 }
}

pub fn build(p: &Params, kind: AlgebraKind) -> Presentation {
    match kind {
        AlgebraKind::A => build_a(p),
        AlgebraKind::Dual => build_dual(p),
        AlgebraKind::T1 => build_t1(p),
        AlgebraKind::T2 => build_t2(p),
        AlgebraKind::Custom => Presentation::free(p.n()),
    }
}

/// The `s x s` truncation `(Q_s, C_s)` with `n' = s' = s`.
pub fn restrict_params(p: &Params) -> Params {
    let s = p.s();
    Params::new(s, s, p.q.leading_block(s), p.c.leading_block(s)).expect("leading blocks of valid params")
}
