//! Matrix Lie algebras inside so(eta), commutants and invariant subspaces.

mod upoly;
mod weakirr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Q;
use crate::linalg::{EchelonBasis, Matrix, Subspace};

pub use weakirr::{
    weak_irreducibility, weak_irreducibility_seeded, Heuristic, WeakIrrReport, WeakIrreducibility,
};

/// A symmetric non-degenerate form, optionally with a compatible complex structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricStructure {
    dim: usize,
    eta: Matrix,
    j: Option<Matrix>,
}

impl MetricStructure {
    pub fn new(eta: Matrix, j: Option<Matrix>) -> Result<Self> {
        if !eta.is_symmetric() {
            return Err(Error::Invalid("eta must be square and symmetric".into()));
        }
        if eta.inverse().is_none() {
            return Err(Error::DegenerateGram);
        }
        let dim = eta.rows();
        if let Some(j) = &j {
            if j.rows() != dim || j.cols() != dim {
                return Err(Error::Dimension("J and eta have different sizes".into()));
            }
            if j * j != Matrix::identity(dim).scale(&-Q::from_integer(1.into())) {
                return Err(Error::Invalid("J^2 != -I".into()));
            }
            if &(&j.transpose() * &eta) * j != eta {
                return Err(Error::Invalid("eta is not J-invariant".into()));
            }
        }
        Ok(MetricStructure { dim, eta, j })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eta(&self) -> &Matrix {
        &self.eta
    }

    pub fn j(&self) -> Option<&Matrix> {
        self.j.as_ref()
    }

    pub fn without_j(&self) -> MetricStructure {
        MetricStructure {
            dim: self.dim,
            eta: self.eta.clone(),
            j: None,
        }
    }

    /// `eta(u, v)`
    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        crate::linalg::dot(u, &self.eta.mul_vec(v))
    }

    pub fn is_skew(&self, x: &Matrix) -> bool {
        let a = &self.eta * x;
        a.transpose() == -&a
    }

    pub fn is_self_adjoint(&self, x: &Matrix) -> bool {
        let a = &self.eta * x;
        a.transpose() == a
    }

    /// The bivector `u∧v` acting by `w ↦ eta(u,w) v − eta(v,w) u`.
    pub fn wedge(&self, u: &[Q], v: &[Q]) -> Matrix {
        let eu = self.eta.mul_vec(u);
        let ev = self.eta.mul_vec(v);
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                let x = &v[i] * &eu[k] - &u[i] * &ev[k];
                if !x.is_zero() {
                    m[(i, k)] = x;
                }
            }
        }
        m
    }

    /// Wedge of two frame vectors given by index.
    pub fn wedge_e(&self, a: usize, b: usize) -> Matrix {
        self.wedge(&unit(self.dim, a), &unit(self.dim, b))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::from_integer(1.into());
    v
}

/// A linear span of square matrices, stored by the RREF of the flattened basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixLieAlgebra {
    ambient: MetricStructure,
    basis: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub ambient_dim: usize,
    pub eta: Matrix,
    #[serde(rename = "J")]
    pub j: Option<Matrix>,
    pub basis: Vec<Matrix>,
}

impl MatrixLieAlgebra {
    /// Span of `gens`, canonicalized. No bracket closure is taken.
    pub fn from_span(ambient: MetricStructure, gens: &[Matrix]) -> Result<Self> {
        let n = ambient.dim;
        if let Some(g) = gens.iter().find(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::Dimension(format!(
                "{}x{} generator in dimension {n}",
                g.rows(),
                g.cols()
            )));
        }
        let s = Subspace::span(n * n, gens.iter().map(Matrix::flatten).collect())?;
        Ok(Self::from_subspace(ambient, &s))
    }

    pub fn from_subspace(ambient: MetricStructure, s: &Subspace) -> Self {
        let n = ambient.dim;
        assert_eq!(s.ambient(), n * n, "flattened ambient");
        let basis = s.basis().iter().map(|v| Matrix::from_flat(n, v)).collect();
        MatrixLieAlgebra { ambient, basis }
    }

    pub fn zero(ambient: MetricStructure) -> Self {
        MatrixLieAlgebra {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn ambient(&self) -> &MetricStructure {
        &self.ambient
    }

    pub fn n(&self) -> usize {
        self.ambient.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn subspace(&self) -> Subspace {
        let n = self.n();
        Subspace::span(n * n, self.basis.iter().map(Matrix::flatten).collect()).unwrap()
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        self.subspace().coords(&x.flatten()).is_some()
    }

    pub fn is_subalgebra_of(&self, other: &MatrixLieAlgebra) -> bool {
        other.subspace().contains_subspace(&self.subspace())
    }

    /// Same span as `other` (ambient forms are not compared).
    pub fn same_span(&self, other: &MatrixLieAlgebra) -> bool {
        self.basis == other.basis
    }

    pub fn is_bracket_closed(&self) -> bool {
        let s = self.subspace();
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if s.coords(&commutator(a, b).flatten()).is_none() {
                    return false;
                }
            }
        }
        true
    }

    pub fn with_ambient(&self, ambient: MetricStructure) -> Result<Self> {
        if ambient.dim != self.n() {
            return Err(Error::Dimension("ambient size changed".into()));
        }
        Ok(MatrixLieAlgebra {
            ambient,
            basis: self.basis.clone(),
        })
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            ambient_dim: self.n(),
            eta: self.ambient.eta.clone(),
            j: self.ambient.j.clone(),
            basis: self.basis.clone(),
        }
    }

    pub fn from_json(j: AlgebraJson) -> Result<Self> {
        if j.eta.rows() != j.ambient_dim {
            return Err(Error::Dimension("eta does not match ambient_dim".into()));
        }
        let ms = MetricStructure::new(j.eta, j.j)?;
        MatrixLieAlgebra::from_span(ms, &j.basis)
    }
}

/// `a b − b a` for matrices known to be square of equal size.
pub fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

pub fn bracket(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "bracket of {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(commutator(a, b))
}

/// Smallest bracket-closed span containing `seed`.
pub fn lie_closure(seed: &[Matrix], ambient: &MetricStructure) -> Result<MatrixLieAlgebra> {
    let mut c = Closure::new(ambient.dim);
    for s in seed {
        if s.rows() != ambient.dim || s.cols() != ambient.dim {
            return Err(Error::Dimension("seed matrix has wrong size".into()));
        }
        c.push(s.clone());
    }
    c.close();
    Ok(c.algebra(ambient.clone()))
}

/// Incremental Lie closure, reused by the holonomy engines.
#[derive(Clone, Debug)]
pub struct Closure {
    n: usize,
    echelon: EchelonBasis,
    elems: Vec<Matrix>,
    done: usize,
}

impl Closure {
    pub fn new(n: usize) -> Self {
        Closure {
            n,
            echelon: EchelonBasis::new(n * n),
            elems: Vec::new(),
            done: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.echelon.contains(&m.flatten())
    }

    /// Adds to the span without closing; true if the span grew.
    pub fn push(&mut self, m: Matrix) -> bool {
        if self.echelon.insert(&m.flatten()) {
            self.elems.push(m);
            true
        } else {
            false
        }
    }

    /// Brackets every pending element with all earlier ones until stable.
    pub fn close(&mut self) {
        while self.done < self.elems.len() {
            let i = self.done;
            for j in 0..i {
                let b = commutator(&self.elems[i], &self.elems[j]);
                self.push(b);
            }
            self.done += 1;
        }
    }

    pub fn subspace(&self) -> Subspace {
        self.echelon.to_subspace()
    }

    pub fn algebra(&self, ambient: MetricStructure) -> MatrixLieAlgebra {
        assert_eq!(ambient.dim, self.n, "ambient size");
        MatrixLieAlgebra::from_subspace(ambient, &self.echelon.to_subspace())
    }
}

pub fn is_in_so(alg: &MatrixLieAlgebra) -> bool {
    alg.basis.iter().all(|b| alg.ambient.is_skew(b))
}

pub fn commutes_with_j(alg: &MatrixLieAlgebra) -> Result<bool> {
    let j = alg.ambient.j.as_ref().ok_or(Error::NoComplexStructure)?;
    Ok(alg.basis.iter().all(|b| commutator(b, j).is_zero()))
}

/// Rows expressing `[X, b] = 0` in the flattened unknown `X`.
fn commutant_rows(n: usize, b: &Matrix, out: &mut Vec<Vec<Q>>) {
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![Q::zero(); n * n];
            for k in 0..n {
                if !b[(k, j)].is_zero() {
                    row[i * n + k] += &b[(k, j)];
                }
                if !b[(i, k)].is_zero() {
                    row[k * n + j] -= &b[(i, k)];
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                out.push(row);
            }
        }
    }
}

/// All matrices commuting with every basis element, flattened.
pub fn commutant(alg: &MatrixLieAlgebra) -> Subspace {
    let n = alg.n();
    let mut rows = Vec::new();
    for b in &alg.basis {
        commutant_rows(n, b, &mut rows);
    }
    nullspace_of_rows(rows, n * n)
}

/// Commutant elements that are also eta-self-adjoint.
pub fn self_adjoint_commutant(alg: &MatrixLieAlgebra) -> Subspace {
    let n = alg.n();
    let eta = alg.ambient.eta();
    let mut rows = Vec::new();
    for b in &alg.basis {
        commutant_rows(n, b, &mut rows);
    }
    // (eta X)_{ij} − (eta X)_{ji} = 0
    for i in 0..n {
        for j in i + 1..n {
            let mut row = vec![Q::zero(); n * n];
            for k in 0..n {
                row[k * n + j] += &eta[(i, k)];
                row[k * n + i] -= &eta[(j, k)];
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    nullspace_of_rows(rows, n * n)
}

pub(crate) fn nullspace_of_rows(rows: Vec<Vec<Q>>, ncols: usize) -> Subspace {
    if rows.is_empty() {
        return Subspace::full(ncols);
    }
    let r = rows.len();
    Matrix::from_vec(r, ncols, rows.into_iter().flatten().collect())
        .unwrap()
        .nullspace()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum InvariantVerdict {
    NotInvariant,
    InvariantNonDegenerate,
    InvariantDegenerate,
    InvariantIsotropic,
}

/// Gram matrix of eta restricted to the basis of `s`.
pub fn restricted_gram(ambient: &MetricStructure, s: &Subspace) -> Matrix {
    let k = s.dim();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = ambient.inner(&s.basis()[i], &s.basis()[j]);
        }
    }
    g
}

pub fn check_invariant_subspace(
    alg: &MatrixLieAlgebra,
    candidate: &Subspace,
) -> Result<InvariantVerdict> {
    if candidate.ambient() != alg.n() {
        return Err(Error::Dimension(format!(
            "candidate lives in dimension {}, algebra in {}",
            candidate.ambient(),
            alg.n()
        )));
    }
    for b in &alg.basis {
        for v in candidate.basis() {
            if candidate.coords(&b.mul_vec(v)).is_none() {
                return Ok(InvariantVerdict::NotInvariant);
            }
        }
    }
    let g = restricted_gram(&alg.ambient, candidate);
    let r = g.rank();
    Ok(if r == candidate.dim() {
        InvariantVerdict::InvariantNonDegenerate
    } else if r == 0 {
        InvariantVerdict::InvariantIsotropic
    } else {
        InvariantVerdict::InvariantDegenerate
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;

    fn euclid(n: usize) -> MetricStructure {
        MetricStructure::new(Matrix::identity(n), None).unwrap()
    }

    fn e(n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        m[(i, j)] = qi(1);
        m[(j, i)] = qi(-1);
        m
    }

    #[test]
    fn bracket_basics() {
        let a = e(3, 0, 1);
        assert!(bracket(&a, &a).unwrap().is_zero());
        assert!(bracket(&a, &Matrix::identity(2)).is_err());
    }

    #[test]
    fn closure_examples() {
        let amb = euclid(3);
        assert_eq!(lie_closure(&[], &amb).unwrap().dim(), 0);
        let mut x = Matrix::zeros(3, 3);
        x[(0, 1)] = qi(1);
        assert_eq!(lie_closure(&[x], &amb).unwrap().dim(), 1);
        let so3 = lie_closure(&[e(3, 0, 1), e(3, 1, 2)], &amb).unwrap();
        assert_eq!(so3.dim(), 3);
        assert!(so3.is_bracket_closed());
        assert!(is_in_so(&so3));
    }

    #[test]
    fn so_membership() {
        let amb = euclid(2);
        assert!(is_in_so(&MatrixLieAlgebra::zero(amb.clone())));
        let id = MatrixLieAlgebra::from_span(amb, &[Matrix::identity(2)]).unwrap();
        assert!(!is_in_so(&id));
    }

    #[test]
    fn commutant_of_so3_is_scalars() {
        let so3 = lie_closure(&[e(3, 0, 1), e(3, 1, 2)], &euclid(3)).unwrap();
        let c = commutant(&so3);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&Matrix::identity(3).flatten()).unwrap());
        assert_eq!(commutant(&MatrixLieAlgebra::zero(euclid(2))).dim(), 4);
    }

    #[test]
    fn commutes_with_j_needs_j() {
        let so3 = lie_closure(&[e(3, 0, 1)], &euclid(3)).unwrap();
        assert_eq!(commutes_with_j(&so3), Err(Error::NoComplexStructure));
    }

    #[test]
    fn wedge_is_skew() {
        let eta = Matrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]);
        let ms = MetricStructure::new(eta, None).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert!(ms.is_skew(&ms.wedge_e(a, b)));
        }
        // (p∧q) p = eta(p,p) q − eta(q,p) p = −p
        assert_eq!(
            ms.wedge_e(0, 2).mul_vec(&unit(3, 0)),
            vec![qi(-1), qi(0), qi(0)]
        );
    }

    #[test]
    fn full_space_is_nondegenerate() {
        let so3 = lie_closure(&[e(3, 0, 1)], &euclid(3)).unwrap();
        let v = check_invariant_subspace(&so3, &Subspace::full(3)).unwrap();
        assert_eq!(v, InvariantVerdict::InvariantNonDegenerate);
        let line = Subspace::span(3, vec![unit(3, 0)]).unwrap();
        assert_eq!(
            check_invariant_subspace(&so3, &line).unwrap(),
            InvariantVerdict::NotInvariant
        );
    }
}
