//! Dense exact linear algebra over the rationals.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{fmt_q, parse_q, qi, Q};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Matrix> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Dimension(format!(
                "matrix entries do not match declared shape {}x{}",
                j.rows, j.cols
            )));
        }
        let data = j
            .entries
            .iter()
            .flatten()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: j.rows,
            cols: j.cols,
            data,
        })
    }
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> MatrixJson {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(fmt_q).collect())
                .collect(),
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| qi(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    /// Square matrix from a row-major flat vector.
    pub fn from_flat(n: usize, v: &[Q]) -> Self {
        assert_eq!(v.len(), n * n, "flat length");
        Matrix {
            rows: n,
            cols: n,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut r = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        r[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Q, &Q) -> Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Matrix {
        let mut rows = self.to_rows();
        rref_rows(&mut rows, self.cols);
        let mut data: Vec<Q> = rows.into_iter().flatten().collect();
        data.resize(self.rows * self.cols, Q::zero());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref_rows(&mut rows, self.cols).len()
    }

    pub fn nullspace(&self) -> Subspace {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let mut rows: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(rows.into_iter().map(|r| r[n..].to_vec()).collect()).unwrap())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Block-embeds `self` at `(r0, c0)` inside `target`.
    pub fn place_into(&self, target: &mut Matrix, r0: usize, c0: usize) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                target[(r0 + i, c0 + j)] = self[(i, j)].clone();
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference shape")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(fmt_q).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

/// In-place RREF on a list of rows. Zero rows are dropped; returns pivot columns.
pub fn rref_rows(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            eliminate(other, prow, c);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// `row -= row[c] * pivot_row`, pivot_row having 1 at column c.
fn eliminate(row: &mut [Q], prow: &[Q], c: usize) {
    if row[c].is_zero() {
        return;
    }
    let f = row[c].clone();
    for (x, p) in row[c..].iter_mut().zip(&prow[c..]) {
        if !p.is_zero() {
            *x -= &f * p;
        }
    }
}

fn kernel_from_rref(rows: &[Vec<Q>], pivots: &[usize], ncols: usize) -> Subspace {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &p) in rows.iter().zip(pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    Subspace::span(ncols, basis).expect("kernel vectors have ambient length")
}

/// Solves `m x = b`; free variables are set to zero.
pub fn solve(m: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    if b.len() != m.rows {
        return None;
    }
    let n = m.cols;
    let mut rows: Vec<Vec<Q>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Some(x)
}

/// Linear subspace stored as its unique RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Q>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient dimension {ambient}",
                v.len()
            )));
        }
        let mut rows = vectors;
        let pivots = rref_rows(&mut rows, ambient);
        Ok(Subspace {
            ambient,
            basis: rows,
            pivots,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let coeffs: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= c * y;
                }
            }
        }
        r.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        Ok(self.coords(v).is_some())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.coords(v).is_some())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(
                "intersection of different ambients".into(),
            ));
        }
        // a·A = b·B, solved as a nullspace in the combined coefficients
        let (k, l) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.ambient, k + l);
        for (j, v) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, j)] = v[i].clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, k + j)] = -v[i].clone();
            }
        }
        let ns = m.nullspace();
        let vecs = ns
            .basis
            .iter()
            .map(|c| combine(&self.basis, &c[..k], self.ambient))
            .collect();
        Subspace::span(self.ambient, vecs)
    }
}

/// Linear combination `Σ c_i v_i`.
pub fn combine(vectors: &[Vec<Q>], coeffs: &[Q], ambient: usize) -> Vec<Q> {
    let mut r = vec![Q::zero(); ambient];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in r.iter_mut().zip(v) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }
    r
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Incrementally maintained RREF basis.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    ambient: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize) -> Self {
        EchelonBasis {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &mut [Q]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            eliminate(v, row, p);
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::one() / &w[p];
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            eliminate(row, &w, p);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn to_subspace(&self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            basis: self.rows.clone(),
            pivots: self.pivots.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qr;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| qi(a)).collect()
    }

    #[test]
    fn empty_matrix_is_invertible() {
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn rref_examples() {
        assert_eq!(Matrix::identity(3).rref(), Matrix::identity(3));
        let m = Matrix::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(m.rref(), Matrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(Matrix::zeros(3, 3).nullspace().dim(), 3);
        assert_eq!(Matrix::identity(3).nullspace().dim(), 0);
        let m = Matrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.basis(), &[v(&[1, -1, 0])]);
    }

    #[test]
    fn span_and_contains() {
        assert_eq!(Subspace::span(3, vec![]).unwrap().dim(), 0);
        assert_eq!(
            Subspace::span(2, vec![v(&[1, 2]), v(&[2, 4])])
                .unwrap()
                .dim(),
            1
        );
        let s = Subspace::span(3, vec![v(&[1, 0, 1]), v(&[0, 1, 1])]).unwrap();
        assert!(s.contains(&v(&[1, 3, 4])).unwrap());
        assert!(!Subspace::zero(2).contains(&v(&[0, 1])).unwrap());
        assert!(Subspace::full(2).contains(&v(&[5, -7])).unwrap());
        assert!(s.contains(&v(&[1, 2])).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = vec![qr(1, 2), qi(3)];
        assert_eq!(solve(&Matrix::identity(2), &b), Some(b.clone()));
        let m = Matrix::from_i64(&[&[1, 1]]);
        let x = solve(&m, &[qi(2)]).unwrap();
        assert_eq!(&x[0] + &x[1], qi(2));
        let m = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(solve(&m, &[qi(1), qi(2)]).is_none());
    }

    #[test]
    fn inverse_and_intersection() {
        let m = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.inverse().unwrap(), m);
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap().basis(), &[v(&[0, 1, 0])]);
    }

    #[test]
    fn echelon_matches_batch_span() {
        let vs = vec![v(&[0, 2, 4]), v(&[1, 1, 1]), v(&[1, 2, 3]), v(&[3, 1, -1])];
        let mut e = EchelonBasis::new(3);
        let grew: Vec<bool> = vs.iter().map(|x| e.insert(x)).collect();
        assert_eq!(grew, vec![true, true, false, false]);
        assert_eq!(e.to_subspace(), Subspace::span(3, vs).unwrap());
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = Matrix::from_rows(vec![vec![qr(1, 2), qi(0)], vec![qi(-3), qr(5, 7)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"rows":2,"cols":2,"entries":[["1/2","0"],["-3","5/7"]]}"#
        );
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), m);
        assert!(
            serde_json::from_str::<Matrix>(r#"{"rows":1,"cols":2,"entries":[["1"]]}"#).is_err()
        );
    }
}
