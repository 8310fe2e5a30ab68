//! Words and noncommutative polynomials in the free algebra `k<g1,...,gn>`.
//!
//! Words are ordered degree-lexicographically with `gn > ... > g1`, so
//! `g2 g1 > g1 g2` and every skew-commutation relation `gj gi - q gi gj`
//! (`j > i`) has `gj gi` as its leading word. Nothing downstream relies on
//! that, though: squares can lead as soon as a relation involves them.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{format_scalar, GaussianRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A word in the generators; letters are 0-based generator indices.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Word(SmallVec<[u8; 12]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(SmallVec::from_slice(&[g as u8]))
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&g| g as u8).collect())
    }

    pub fn from_slice(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&g| g as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn push(&mut self, g: usize) {
        self.0.push(g as u8);
    }

    /// `prefix + middle + suffix` without intermediate allocations.
    pub fn splice(prefix: &[u8], middle: &[u8], suffix: &[u8]) -> Word {
        let mut w = SmallVec::with_capacity(prefix.len() + middle.len() + suffix.len());
        w.extend_from_slice(prefix);
        w.extend_from_slice(middle);
        w.extend_from_slice(suffix);
        Word(w)
    }

    /// `g1.g2.g2` style, `1` for the empty word.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.letters().map(|g| format!("g{}", g + 1)).collect::<Vec<_>>().join(".")
    }
}

/// Degree first, then lexicographic with larger generator indices larger.
pub fn compare_words(u: &Word, v: &Word) -> Ordering {
    u.0.len().cmp(&v.0.len()).then_with(|| u.0.as_slice().cmp(v.0.as_slice()))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_words(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Hash as the letter slice so lookups by `&[u8]` work.
impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.as_slice().hash(state)
    }
}

impl Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A noncommutative polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPoly {
    gens: usize,
    terms: BTreeMap<Word, GaussianRational>,
}

impl NcPoly {
    pub fn zero(gens: usize) -> Self {
        NcPoly { gens, terms: BTreeMap::new() }
    }

    pub fn one(gens: usize) -> Self {
        NcPoly::monomial(gens, Word::empty(), GaussianRational::one())
    }

    pub fn monomial(gens: usize, word: Word, coef: GaussianRational) -> Self {
        let mut p = NcPoly::zero(gens);
        p.add_term(word, &coef);
        p
    }

    /// The generator `g_index` (0-based).
    pub fn generator(gens: usize, index: usize) -> Self {
        assert!(index < gens, "generator index out of range");
        NcPoly::monomial(gens, Word::letter(index), GaussianRational::one())
    }

    pub fn from_terms(gens: usize, terms: impl IntoIterator<Item = (Word, GaussianRational)>) -> Self {
        let mut p = NcPoly::zero(gens);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, GaussianRational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, GaussianRational> {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> GaussianRational {
        self.terms.get(w).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Largest word and its coefficient.
    pub fn leading_term(&self) -> Option<(&Word, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    /// Degree when all words share it; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Word::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, word: Word, coef: &GaussianRational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, k: &GaussianRational) {
        if k.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), &(c * k));
        }
    }

    pub fn scale(&self, k: &GaussianRational) -> NcPoly {
        if k.is_zero() {
            return NcPoly::zero(self.gens);
        }
        NcPoly { gens: self.gens, terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect() }
    }

    /// Exact product; errors when the generator counts differ.
    pub fn multiply(&self, other: &NcPoly) -> Result<NcPoly, FreeAlgError> {
        if self.gens != other.gens {
            return Err(FreeAlgError::GeneratorMismatch { left: self.gens, right: other.gens });
        }
        let mut out = NcPoly::zero(self.gens);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// `u * self * v` for words `u`, `v`.
    pub fn sandwich(&self, u: &[u8], v: &[u8]) -> NcPoly {
        NcPoly {
            gens: self.gens,
            terms: self.terms.iter().map(|(w, c)| (Word::splice(u, w.as_slice(), v), c.clone())).collect(),
        }
    }

    pub fn pow(&self, m: usize) -> NcPoly {
        (0..m).fold(NcPoly::one(self.gens), |acc, _| &acc * self)
    }

    /// Image under the algebra map sending `g_j` to `sum_i m[i][j] g_i`.
    pub fn apply_linear(&self, m: &Matrix) -> NcPoly {
        assert_eq!(m.cols(), self.gens, "map size");
        let images: Vec<NcPoly> = (0..self.gens)
            .map(|j| {
                NcPoly::from_terms(m.rows(), (0..m.rows()).map(|i| (Word::letter(i), m[(i, j)].clone())))
            })
            .collect();
        let mut out = NcPoly::zero(m.rows());
        for (w, c) in &self.terms {
            let img = w.letters().fold(NcPoly::one(m.rows()), |acc, g| &acc * &images[g]);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Coefficients of a degree-1 polynomial on `g1..gn`.
    pub fn linear_coefficients(&self) -> Vec<GaussianRational> {
        (0..self.gens).map(|g| self.coefficient(&Word::letter(g))).collect()
    }

    /// Terms in descending word order as `coef*word`, joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| format!("{}*{}", format_scalar(c), w.to_text()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn multiply(p: &NcPoly, q: &NcPoly) -> Result<NcPoly, FreeAlgError> {
    p.multiply(q)
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        assert_eq!(self.gens, rhs.gens, "generator count mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &GaussianRational::one());
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        assert_eq!(self.gens, rhs.gens, "generator count mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &-GaussianRational::one());
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-GaussianRational::one())
    }
}

/// Panics when the generator counts differ; see [`NcPoly::multiply`].
impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.multiply(rhs).expect("generator count mismatch")
    }
}
