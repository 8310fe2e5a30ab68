//! Bundled parameter sets with their free parameters instantiated.
//!
//! Each fixture documents the instantiation it uses and carries the Nakayama
//! matrix expected from the closed formula (column `j` = image of `t_j`).

use num_traits::{One, Zero};
use serde_json::json;

use crate::linalg::Matrix;
use crate::presentations::Params;
use crate::scalar::{parse_scalar, GaussianRational};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub params: Params,
    /// Parameter name and value, e.g. `("q", "2")`.
    pub instantiations: Vec<(&'static str, String)>,
    pub expected_nakayama: Option<Matrix>,
}

impl Fixture {
    /// The fixture file format plus the documentation fields.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self.params.to_fixture_json()).expect("serializable");
        let obj = v.as_object_mut().expect("object");
        obj.insert("name".into(), json!(self.name));
        let inst: serde_json::Map<_, _> = self.instantiations.iter().map(|(k, x)| (k.to_string(), json!(x))).collect();
        obj.insert("instantiations".into(), serde_json::Value::Object(inst));
        if let Some(m) = &self.expected_nakayama {
            let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            obj.insert("expected_nakayama".into(), json!(rows));
        }
        v
    }
}

fn k(x: &str) -> GaussianRational {
    parse_scalar(x).expect("literal scalar")
}

fn mat(rows: Vec<Vec<GaussianRational>>) -> Matrix {
    Matrix::from_rows(rows).expect("square literal")
}

/// `n = 3`, `s = 1`: `t3 t2 - q t2 t3 - t1^2` with `t1` central.
pub fn ex2_1_with(q: GaussianRational) -> Params {
    let one = GaussianRational::one;
    let zero = GaussianRational::zero;
    let qi = q.invert().expect("q != 0");
    let qm = mat(vec![vec![one(), one(), one()], vec![one(), one(), q.clone()], vec![one(), qi.clone(), one()]]);
    let cm = mat(vec![vec![zero(), zero(), zero()], vec![zero(), zero(), one()], vec![zero(), -qi, zero()]]);
    Params::new(3, 1, qm, cm).expect("valid shape")
}

pub fn ex2_1() -> Fixture {
    let q = k("2");
    let qi = q.invert().unwrap();
    Fixture {
        name: "ex2.1",
        params: ex2_1_with(q.clone()),
        instantiations: vec![("q", q.to_string())],
        expected_nakayama: Some(Matrix::diagonal(&[GaussianRational::one(), qi, q])),
    }
}

/// `n = 4`, `s = 2`, a single `c_24 = a`; needs `b != 0`.
pub fn ex2_2_with(a: GaussianRational, b: GaussianRational) -> Params {
    let one = GaussianRational::one;
    let m1 = -one();
    let bi = b.invert().expect("b != 0");
    let qm = mat(vec![
        vec![one(), m1.clone(), bi.clone(), m1.clone()],
        vec![m1.clone(), one(), bi.clone(), one()],
        vec![b.clone(), b.clone(), one(), b.clone()],
        vec![m1, one(), bi, one()],
    ]);
    let mut cm = Matrix::zeros(4, 4);
    cm[(1, 3)] = a.clone();
    cm[(3, 1)] = -a;
    Params::new(4, 2, qm, cm).expect("valid shape")
}

pub fn ex2_2() -> Fixture {
    let (a, b) = (k("1"), k("2"));
    let b3 = &b * &b * &b;
    let mut expected = Matrix::zeros(4, 4);
    expected[(0, 0)] = b.clone();
    expected[(1, 1)] = -b.clone();
    expected[(2, 2)] = b3.invert().unwrap();
    expected[(1, 3)] = -(k("2") * &a * &b);
    expected[(3, 3)] = -b.clone();
    Fixture {
        name: "ex2.2",
        params: ex2_2_with(a.clone(), b.clone()),
        instantiations: vec![("a", a.to_string()), ("b", b.to_string())],
        expected_nakayama: Some(expected),
    }
}

/// `n = 4`, `s = 3`, a single `c_13 = a`; needs `1 + a^2 != 0` and `b != 0`.
pub fn ex2_3_with(a: GaussianRational, b: GaussianRational) -> Params {
    let one = GaussianRational::one;
    let m1 = -one();
    let bi = b.invert().expect("b != 0");
    let qm = mat(vec![
        vec![one(), m1.clone(), one(), bi.clone()],
        vec![m1.clone(), one(), m1.clone(), bi.clone()],
        vec![one(), m1, one(), bi],
        vec![b.clone(), b.clone(), b, one()],
    ]);
    let mut cm = Matrix::zeros(4, 4);
    cm[(0, 2)] = a.clone();
    cm[(2, 0)] = -a;
    Params::new(4, 3, qm, cm).expect("valid shape")
}

pub fn ex2_3() -> Fixture {
    let (a, b) = (k("1"), k("2"));
    let one = GaussianRational::one();
    let den = (&one + &a * &a).invert().unwrap();
    let diag = (&a * &a * &b - &b) * &den;
    let off = k("2") * &a * &b * &den;
    let mut expected = Matrix::zeros(4, 4);
    expected[(0, 0)] = diag.clone();
    expected[(2, 0)] = off.clone();
    expected[(1, 1)] = b.clone();
    expected[(0, 2)] = -off;
    expected[(2, 2)] = diag;
    expected[(3, 3)] = (&b * &b * &b).invert().unwrap();
    Fixture {
        name: "ex2.3",
        params: ex2_3_with(a.clone(), b.clone()),
        instantiations: vec![("a", a.to_string()), ("b", b.to_string())],
        expected_nakayama: Some(expected),
    }
}

/// `s = n = 4`, all `q_ij = 1`, skew-symmetric `C` with a single `c_12 = a`.
pub fn ex2_4a_with(a: GaussianRational) -> Params {
    let mut cm = Matrix::zeros(4, 4);
    cm[(0, 1)] = a.clone();
    cm[(1, 0)] = -a;
    Params::new(4, 4, Matrix::from_i64(&[&[1; 4], &[1; 4], &[1; 4], &[1; 4]]), cm).expect("valid shape")
}

pub fn ex2_4a() -> Fixture {
    let a = k("1");
    let one = GaussianRational::one();
    let den = (&one + &a * &a).invert().unwrap();
    // (I - C)^{-1} (I + C) on the leading 2x2 block
    let mut expected = Matrix::identity(4);
    expected[(0, 0)] = (&one - &a * &a) * &den;
    expected[(1, 1)] = (&one - &a * &a) * &den;
    expected[(0, 1)] = k("2") * &a * &den;
    expected[(1, 0)] = -(k("2") * &a * &den);
    Fixture {
        name: "ex2.4a",
        params: ex2_4a_with(a.clone()),
        instantiations: vec![("a", a.to_string())],
        expected_nakayama: Some(expected),
    }
}

pub fn bundled() -> Vec<Fixture> {
    vec![ex2_1(), ex2_2(), ex2_3(), ex2_4a()]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    bundled().into_iter().find(|f| f.name == name)
}
