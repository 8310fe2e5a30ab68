//! Distinguished free-algebra elements attached to a parameter set.
//!
//! With `x_i` the generators (0-based here):
//!
//! * `y_a = sum_i c_ai x_i`
//! * `W_a = sum_{i<a} c_ai x_i x_a + sum_{j>a} c_ja x_a x_j`
//! * `M_a = sum_{i<j; i,j != a} c_ji x_i x_j`
//! * `bigW = sum_{a >= s} W_a`
//! * `phi = x_1^2 + sum_{i<j} c_ji x_i x_j`
//! * `Omega = sum_{i<s} x_i^2`

use num_traits::One;

use crate::freealg::{FreeAlgError, NcPoly, Word};
use crate::presentations::{self, Params};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distinguished {
    Y(usize),
    W(usize),
    M(usize),
    BigW,
    Phi,
    Omega,
}

fn check_index(p: &Params, a: usize) -> Result<(), FreeAlgError> {
    if a >= p.n() {
        Err(FreeAlgError::IndexOutOfRange { index: a + 1, n: p.n() })
    } else {
        Ok(())
    }
}

fn pair(n: usize, i: usize, j: usize, c: &GaussianRational) -> NcPoly {
    NcPoly::monomial(n, Word::from_letters(&[i, j]), c.clone())
}

fn y(p: &Params, a: usize) -> NcPoly {
    NcPoly::from_terms(p.n(), (0..p.n()).map(|i| (Word::letter(i), p.c(a, i).clone())))
}

fn w(p: &Params, a: usize) -> NcPoly {
    let n = p.n();
    let mut out = NcPoly::zero(n);
    for i in 0..a {
        out.add_scaled(&pair(n, i, a, p.c(a, i)), &GaussianRational::one());
    }
    for j in a + 1..n {
        out.add_scaled(&pair(n, a, j, p.c(j, a)), &GaussianRational::one());
    }
    out
}

/// `sum_{i<j} c_ji x_i x_j`, skipping index `skip` when given.
pub fn c_quadric(p: &Params, skip: Option<usize>) -> NcPoly {
    let n = p.n();
    let mut out = NcPoly::zero(n);
    for i in (0..n).filter(|&i| Some(i) != skip) {
        for j in (i + 1..n).filter(|&j| Some(j) != skip) {
            out.add_scaled(&pair(n, i, j, p.c(j, i)), &GaussianRational::one());
        }
    }
    out
}

pub fn build_distinguished(p: &Params, which: Distinguished) -> Result<NcPoly, FreeAlgError> {
    let n = p.n();
    Ok(match which {
        Distinguished::Y(a) => {
            check_index(p, a)?;
            y(p, a)
        }
        Distinguished::W(a) => {
            check_index(p, a)?;
            w(p, a)
        }
        Distinguished::M(a) => {
            check_index(p, a)?;
            c_quadric(p, Some(a))
        }
        Distinguished::BigW => (p.s()..n).fold(NcPoly::zero(n), |acc, a| &acc + &w(p, a)),
        Distinguished::Phi => {
            let mut phi = c_quadric(p, None);
            phi.add_term(Word::from_letters(&[0, 0]), &GaussianRational::one());
            phi
        }
        Distinguished::Omega => presentations::omega(p),
    })
}
