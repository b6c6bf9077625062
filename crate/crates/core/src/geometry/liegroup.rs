//! Left-invariant metrics on Lie groups.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{fmt_q, parse_q, qr, Q};
use crate::liealg::{commutator, Closure, MatrixLieAlgebra, MetricStructure};
use crate::linalg::{dot, Matrix};

/// A Lie algebra with structure constants `[e_i, e_j] = Σ c^k_{ij} e_k` and a metric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieGroupData {
    dim: usize,
    gram: Matrix,
    c: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieGroupJson {
    pub dim: usize,
    pub gram: Matrix,
    pub brackets: Vec<BracketJson>,
}

impl LieGroupData {
    /// `brackets` lists `[e_i, e_j]` for the pairs that are nonzero; the rest follows by antisymmetry.
    pub fn new(gram: Matrix, brackets: Vec<((usize, usize), Vec<Q>)>) -> Result<Self> {
        let dim = gram.rows();
        if !gram.is_symmetric() {
            return Err(Error::Invalid("gram must be square and symmetric".into()));
        }
        if gram.inverse().is_none() {
            return Err(Error::DegenerateGram);
        }
        let mut c = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        let mut set = vec![vec![false; dim]; dim];
        for ((i, j), v) in brackets {
            if i >= dim || j >= dim || v.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket ({i},{j}) has wrong shape"
                )));
            }
            if i == j && v.iter().any(|x| !x.is_zero()) {
                return Err(Error::Invalid(format!("[e_{i}, e_{i}] must vanish")));
            }
            let neg: Vec<Q> = v.iter().map(|x| -x.clone()).collect();
            if set[i][j] && c[i][j] != v {
                return Err(Error::Invalid(format!(
                    "bracket ({i},{j}) given inconsistently"
                )));
            }
            set[i][j] = true;
            set[j][i] = true;
            c[i][j] = v;
            c[j][i] = neg;
        }
        let d = LieGroupData { dim, gram, c };
        if !d.jacobi_holds() {
            return Err(Error::Invalid("Jacobi identity fails".into()));
        }
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut r = vec![Q::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        r[k] += &s * c;
                    }
                }
            }
        }
        r
    }

    fn unit(&self, i: usize) -> Vec<Q> {
        crate::liealg::unit(self.dim, i)
    }

    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let s1 = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let s2 = self.bracket_vec(&eb, &self.bracket_vec(&ec, &ea));
                    let s3 = self.bracket_vec(&ec, &self.bracket_vec(&ea, &eb));
                    if (0..n).any(|k| !(&s1[k] + &s2[k] + &s3[k]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Q] {
        &self.c[i][j]
    }

    pub fn to_json(&self) -> LieGroupJson {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.c[i][j].iter().any(|x| !x.is_zero()) {
                    brackets.push(BracketJson {
                        i,
                        j,
                        coeffs: self.c[i][j].iter().map(fmt_q).collect(),
                    });
                }
            }
        }
        LieGroupJson {
            dim: self.dim,
            gram: self.gram.clone(),
            brackets,
        }
    }

    pub fn from_json(j: &LieGroupJson) -> Result<Self> {
        if j.gram.rows() != j.dim {
            return Err(Error::Dimension("gram does not match dim".into()));
        }
        let br = j
            .brackets
            .iter()
            .map(|b| {
                Ok((
                    (b.i, b.j),
                    b.coeffs
                        .iter()
                        .map(|s| parse_q(s))
                        .collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        LieGroupData::new(j.gram.clone(), br)
    }
}

/// Matrices of `∇_{e_i}`; column `j` holds `∇_{e_i} e_j`.
pub fn lg_nabla(d: &LieGroupData) -> Result<Vec<Matrix>> {
    let n = d.dim;
    let ginv = d.gram.inverse().ok_or(Error::DegenerateGram)?;
    let g = |x: &[Q], y: &[Q]| dot(x, &d.gram.mul_vec(y));
    let half = qr(1, 2);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let ei = d.unit(i);
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let ej = d.unit(j);
            let low: Vec<Q> = (0..n)
                .map(|k| {
                    let ek = d.unit(k);
                    let s = g(&d.bracket_vec(&ei, &ej), &ek)
                        + g(&d.bracket_vec(&ek, &ei), &ej)
                        + g(&ei, &d.bracket_vec(&ek, &ej));
                    s * &half
                })
                .collect();
            let v = ginv.mul_vec(&low);
            for (r, x) in v.into_iter().enumerate() {
                m[(r, j)] = x;
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// `R(e_i, e_j) = [∇_i, ∇_j] − ∇_{[e_i, e_j]}` for `i < j`.
pub fn lg_curvature(d: &LieGroupData, nabla: &[Matrix]) -> Vec<((usize, usize), Matrix)> {
    let n = d.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = commutator(&nabla[i], &nabla[j]);
            for (k, c) in d.c[i][j].iter().enumerate() {
                if !c.is_zero() {
                    r = &r - &nabla[k].scale(c);
                }
            }
            out.push(((i, j), r));
        }
    }
    out
}

/// `m₀ + [m₁, m₀] + [m₁, [m₁, m₀]] + …` with `m₀` the curvature span and `m₁` the span of `∇`.
pub fn lg_holonomy(d: &LieGroupData) -> Result<MatrixLieAlgebra> {
    let n = d.dim;
    let nabla = lg_nabla(d)?;
    let ambient = MetricStructure::new(d.gram.clone(), None)?;
    let mut acc = Closure::new(n);
    let mut frontier: Vec<Matrix> = Vec::new();
    for (_, r) in lg_curvature(d, &nabla) {
        if acc.push(r.clone()) {
            frontier.push(r);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for v in &frontier {
            for x in &nabla {
                let b = commutator(x, v);
                if acc.push(b.clone()) {
                    next.push(b);
                }
            }
        }
        frontier = next;
    }
    Ok(acc.algebra(ambient))
}
