//! Degree-truncated noncommutative Buchberger completion for homogeneous
//! presentations, with normal forms, graded bases and Hilbert functions.
//!
//! Completion runs degree by degree. At degree `d` every overlap ambiguity of
//! two existing rules whose ambiguity word has length `d` is formed, reduced
//! by the current system, and any nonzero remainder becomes a new monic rule.
//! Ambiguities are processed in ascending word order, so the output is a
//! deterministic function of the input.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::freealg::{NcPoly, Word};
use crate::presentations::Presentation;
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("truncation degree {truncation} is below the relation degree {relation_degree}")]
    TruncationTooSmall { truncation: usize, relation_degree: usize },
    #[error("completion produced more than {cap} new rules at degree {degree}")]
    Diverged { degree: usize, cap: usize },
    #[error("degree {degree} exceeds the completed degree {limit}")]
    DegreeExceedsTruncation { degree: usize, limit: usize },
}

/// `lead -> rhs`; every word of `rhs` is smaller than `lead`.
#[derive(Clone, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub rhs: NcPoly,
}

impl Rule {
    pub fn to_text(&self) -> String {
        format!("{} -> {}", self.lead.to_text(), self.rhs.to_text())
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    pub dims: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    source: Presentation,
    truncation_degree: usize,
    complete_to: usize,
    rules: Vec<Rule>,
    index: HashMap<Word, usize>,
    lead_lengths: Vec<usize>,
}

/// Default truncation used when none is requested: `max(6, n + 2)`.
pub fn default_truncation(n: usize) -> usize {
    6.max(n + 2)
}

pub fn complete(pres: &Presentation, d: usize) -> Result<RewriteSystem, GroebnerError> {
    let n = pres.generator_count();
    complete_with_cap(pres, d, 10 * n * n)
}

/// Completion with an explicit cap on the number of rules created per degree.
pub fn complete_with_cap(pres: &Presentation, d: usize, cap: usize) -> Result<RewriteSystem, GroebnerError> {
    let relation_degree = pres.relations().iter().filter_map(NcPoly::degree).max().unwrap_or(2);
    if d < relation_degree {
        return Err(GroebnerError::TruncationTooSmall { truncation: d, relation_degree });
    }
    let mut rs = RewriteSystem {
        source: pres.clone(),
        truncation_degree: d,
        complete_to: 0,
        rules: Vec::new(),
        index: HashMap::new(),
        lead_lengths: Vec::new(),
    };
    for deg in 1..=d {
        let candidates: Vec<NcPoly> = if deg <= relation_degree {
            pres.relations().iter().filter(|r| r.degree() == Some(deg)).cloned().collect()
        } else {
            rs.overlaps_at(deg).into_iter().map(|(_, s)| s).collect()
        };
        let mut added = 0;
        for cand in candidates {
            let r = rs.reduce(&cand);
            if r.is_zero() {
                continue;
            }
            added += 1;
            if deg > relation_degree && added > cap {
                return Err(GroebnerError::Diverged { degree: deg, cap });
            }
            rs.insert_rule(r);
        }
        rs.sort_rules();
        rs.complete_to = deg;
    }
    Ok(rs)
}

impl RewriteSystem {
    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn generator_count(&self) -> usize {
        self.source.generator_count()
    }

    pub fn truncation_degree(&self) -> usize {
        self.truncation_degree
    }

    pub fn complete_to(&self) -> usize {
        self.complete_to
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Whether `w` contains no leading word as a subword.
    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_reducible(w).is_none()
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, GroebnerError> {
        if let Some(deg) = p.degree() {
            if deg > self.complete_to {
                return Err(GroebnerError::DegreeExceedsTruncation { degree: deg, limit: self.complete_to });
            }
        }
        Ok(self.reduce(p))
    }

    /// Dimensions of degrees `0..truncation_degree`.
    pub fn hilbert(&self) -> HilbertFunction {
        let mut dims = Vec::with_capacity(self.truncation_degree);
        let mut layer = vec![Word::empty()];
        for d in 0..self.truncation_degree {
            if d > 0 {
                layer = self.extend(&layer);
            }
            dims.push(layer.len());
        }
        HilbertFunction { dims }
    }

    /// Normal words of degree `d`, largest first.
    pub fn basis_at_degree(&self, d: usize) -> Result<Vec<Word>, GroebnerError> {
        if d >= self.truncation_degree {
            return Err(GroebnerError::DegreeExceedsTruncation { degree: d, limit: self.truncation_degree - 1 });
        }
        let mut layer = vec![Word::empty()];
        for _ in 0..d {
            layer = self.extend(&layer);
        }
        layer.reverse();
        Ok(layer)
    }

    /// Re-checks that every overlap of degree at most `complete_to` reduces
    /// to zero; returns the first offending ambiguity word.
    pub fn check_confluence(&self) -> Result<(), Word> {
        for deg in 3..=self.complete_to {
            for (w, s) in self.overlaps_at(deg) {
                if !self.reduce(&s).is_zero() {
                    return Err(w);
                }
            }
        }
        Ok(())
    }

    // Ascending normal words one letter longer, given ascending `layer`.
    fn extend(&self, layer: &[Word]) -> Vec<Word> {
        let n = self.generator_count();
        let mut out = Vec::new();
        for w in layer {
            for g in 0..n {
                let mut v = w.clone();
                v.push(g);
                if !self.suffix_reducible(v.as_slice()) {
                    out.push(v);
                }
            }
        }
        out
    }

    fn suffix_reducible(&self, w: &[u8]) -> bool {
        self.lead_lengths.iter().any(|&l| l <= w.len() && self.index.contains_key(&w[w.len() - l..]))
    }

    fn find_reducible(&self, w: &[u8]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &l in &self.lead_lengths {
                if start + l > w.len() {
                    break;
                }
                if let Some(&r) = self.index.get(&w[start..start + l]) {
                    return Some((start, r));
                }
            }
        }
        None
    }

    fn reduce(&self, p: &NcPoly) -> NcPoly {
        let n = p.gens();
        let mut work: BTreeMap<Word, GaussianRational> = p.terms().clone();
        let mut out = NcPoly::zero(n);
        while let Some((w, c)) = work.pop_last() {
            let Some((start, r)) = self.find_reducible(w.as_slice()) else {
                out.add_term(w, &c);
                continue;
            };
            let rule = &self.rules[r];
            let s = w.as_slice();
            let (pre, post) = (&s[..start], &s[start + rule.lead.degree()..]);
            for (v, k) in rule.rhs.terms() {
                let word = Word::splice(pre, v.as_slice(), post);
                let add = &c * k;
                match work.entry(word) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(add);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &add;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        out
    }

    /// Ambiguity words of length `deg` with their S-polynomials, in ascending
    /// word order.
    fn overlaps_at(&self, deg: usize) -> Vec<(Word, NcPoly)> {
        let mut found: Vec<(Word, usize, usize, usize)> = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            let l1 = r1.lead.as_slice();
            for (j, r2) in self.rules.iter().enumerate() {
                let l2 = r2.lead.as_slice();
                if l1.len() + l2.len() <= deg {
                    continue;
                }
                let k = l1.len() + l2.len() - deg;
                if k >= l1.len() || k >= l2.len() {
                    continue;
                }
                if l1[l1.len() - k..] == l2[..k] {
                    found.push((Word::splice(l1, &l2[k..], &[]), i, j, k));
                }
            }
        }
        found.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        found
            .into_iter()
            .map(|(w, i, j, k)| {
                let (r1, r2) = (&self.rules[i], &self.rules[j]);
                let l1 = r1.lead.as_slice();
                let l2 = r2.lead.as_slice();
                // (L1 - rhs1) v - u (L2 - rhs2) = u rhs2 - rhs1 v
                let mut s = r2.rhs.sandwich(&l1[..l1.len() - k], &[]);
                s.add_scaled(&r1.rhs.sandwich(&[], &l2[k..]), &-GaussianRational::from(1));
                (w, s)
            })
            .collect()
    }

    // `r` must be nonzero and fully reduced.
    fn insert_rule(&mut self, r: NcPoly) {
        let (lead, lc) = {
            let (w, c) = r.leading_term().expect("nonzero");
            (w.clone(), c.clone())
        };
        let inv = lc.invert().expect("nonzero coefficient");
        let mut rhs = r.scale(&-inv);
        rhs.add_term(lead.clone(), &GaussianRational::from(1));
        let deg = lead.degree();
        let idx = self.rules.len();
        self.rules.push(Rule { lead: lead.clone(), rhs });
        self.index.insert(lead, idx);
        if let Err(pos) = self.lead_lengths.binary_search(&deg) {
            self.lead_lengths.insert(pos, deg);
        }
        for k in 0..idx {
            if self.rules[k].lead.degree() != deg {
                continue;
            }
            let old = &self.rules[k].rhs;
            if old.terms().keys().any(|w| !self.is_normal(w.as_slice())) {
                let reduced = self.reduce(old);
                self.rules[k].rhs = reduced;
            }
        }
    }

    fn sort_rules(&mut self) {
        self.rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        self.index = self.rules.iter().enumerate().map(|(i, r)| (r.lead.clone(), i)).collect();
    }
}

/// Expansion coefficients of `(1+t)^(n-1) / (1-t)` for degrees `0..len`.
pub fn t2_series(n: usize, len: usize) -> Vec<usize> {
    let mut acc = 0;
    (0..len)
        .map(|d| {
            acc += binomial(n.saturating_sub(1), d);
            acc
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
