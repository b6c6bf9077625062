//! Algebraic curvature tensors with values in a matrix Lie algebra.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Q;
use crate::liealg::{commutator, is_in_so, nullspace_of_rows, MatrixLieAlgebra, MetricStructure};
use crate::linalg::{combine, Matrix, Subspace};

/// Frame bivector pairs `(a, b)`, `a < b`, in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect()
}

/// Position of `(a, b)` in [`pairs`], `a < b`.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Index and sign with which `e_c ∧ e_d` refers to a stored pair.
fn oriented(n: usize, c: usize, d: usize) -> Option<(usize, i64)> {
    match c.cmp(&d) {
        std::cmp::Ordering::Less => Some((pair_index(n, c, d), 1)),
        std::cmp::Ordering::Greater => Some((pair_index(n, d, c), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

/// A linear map from bivectors to endomorphisms satisfying the first Bianchi identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureTensor {
    dim: usize,
    values: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TensorEntryJson {
    pub a: usize,
    pub b: usize,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureTensorJson {
    pub dim: usize,
    pub values: Vec<TensorEntryJson>,
}

impl CurvatureTensor {
    pub fn zero(dim: usize) -> Self {
        CurvatureTensor {
            dim,
            values: vec![Matrix::zeros(dim, dim); dim * dim.saturating_sub(1) / 2],
        }
    }

    /// Builds from values on frame bivectors; `(b, a)` entries are negated.
    /// Entries given twice are summed.
    pub fn from_values(dim: usize, values: Vec<((usize, usize), Matrix)>) -> Result<Self> {
        let mut t = CurvatureTensor::zero(dim);
        for ((a, b), m) in values {
            if a >= dim || b >= dim || m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!("bad curvature entry ({a},{b})")));
            }
            let Some((i, s)) = oriented(dim, a, b) else {
                return Err(Error::Invalid(format!("R(e_{a}∧e_{a}) must vanish")));
            };
            let m = if s < 0 { -&m } else { m };
            t.values[i] = &t.values[i] + &m;
        }
        if !t.bianchi_holds() {
            return Err(Error::Invalid("first Bianchi identity fails".into()));
        }
        Ok(t)
    }

    fn from_flat(dim: usize, v: &[Q]) -> Self {
        let nn = dim * dim;
        CurvatureTensor {
            dim,
            values: v.chunks(nn).map(|c| Matrix::from_flat(dim, c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.values
            .iter()
            .flat_map(|m| m.data().iter().cloned())
            .collect()
    }

    /// `R(e_a ∧ e_b)` for any ordered pair.
    pub fn value(&self, a: usize, b: usize) -> Matrix {
        match oriented(self.dim, a, b) {
            Some((i, 1)) => self.values[i].clone(),
            Some((i, _)) => -&self.values[i],
            None => Matrix::zeros(self.dim, self.dim),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = ((usize, usize), &Matrix)> {
        pairs(self.dim).into_iter().zip(self.values.iter())
    }

    /// `R(u ∧ v)` for arbitrary vectors.
    pub fn apply(&self, u: &[Q], v: &[Q]) -> Matrix {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for ((a, b), m) in self.values() {
            let c = &u[a] * &v[b] - &u[b] * &v[a];
            if !c.is_zero() {
                acc = &acc + &m.scale(&c);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Matrix::is_zero)
    }

    pub fn add(&self, other: &CurvatureTensor) -> CurvatureTensor {
        CurvatureTensor {
            dim: self.dim,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> CurvatureTensor {
        CurvatureTensor {
            dim: self.dim,
            values: self.values.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn bianchi_holds(&self) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s = self.value(a, b).col(c);
                    let t = self.value(b, c).col(a);
                    let u = self.value(c, a).col(b);
                    if (0..n).any(|i| !(&s[i] + &t[i] + &u[i]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn values_in(&self, alg: &MatrixLieAlgebra) -> bool {
        let s = alg.subspace();
        self.values.iter().all(|m| s.coords(&m.flatten()).is_some())
    }

    pub fn image_span(&self) -> Subspace {
        let nn = self.dim * self.dim;
        Subspace::span(nn, self.values.iter().map(Matrix::flatten).collect()).unwrap()
    }

    pub fn to_json(&self) -> CurvatureTensorJson {
        CurvatureTensorJson {
            dim: self.dim,
            values: self
                .values()
                .filter(|(_, m)| !m.is_zero())
                .map(|((a, b), m)| TensorEntryJson {
                    a,
                    b,
                    matrix: m.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: CurvatureTensorJson) -> Result<Self> {
        CurvatureTensor::from_values(
            j.dim,
            j.values
                .into_iter()
                .map(|e| ((e.a, e.b), e.matrix))
                .collect(),
        )
    }
}

/// `η(R(u∧v)z, w) = η(R(z∧w)u, v)` on all frame quadruples.
pub fn pair_symmetry_check(r: &CurvatureTensor, ambient: &MetricStructure) -> bool {
    let n = r.dim;
    let eta = ambient.eta();
    let lowered: Vec<Matrix> = r.values.iter().map(|m| eta * m).collect();
    let low = |a: usize, b: usize, d: usize, c: usize| -> Q {
        match oriented(n, a, b) {
            Some((i, s)) => &lowered[i][(d, c)] * Q::from_integer(s.into()),
            None => Q::zero(),
        }
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if low(a, b, d, c) != low(c, d, b, a) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A space of curvature tensors with values in `target`.
#[derive(Clone, Debug)]
pub struct CurvatureSpace {
    target: MatrixLieAlgebra,
    basis: Vec<CurvatureTensor>,
}

impl CurvatureSpace {
    fn canonical(target: MatrixLieAlgebra, tensors: Vec<Vec<Q>>) -> Self {
        let n = target.n();
        let len = pairs(n).len() * n * n;
        let s = Subspace::span(len, tensors).unwrap();
        let basis = s
            .basis()
            .iter()
            .map(|v| CurvatureTensor::from_flat(n, v))
            .collect();
        CurvatureSpace { target, basis }
    }

    pub fn target(&self) -> &MatrixLieAlgebra {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CurvatureTensor] {
        &self.basis
    }

    pub fn subspace(&self) -> Subspace {
        let n = self.target.n();
        Subspace::span(
            pairs(n).len() * n * n,
            self.basis.iter().map(CurvatureTensor::flatten).collect(),
        )
        .unwrap()
    }

    pub fn contains(&self, r: &CurvatureTensor) -> bool {
        r.dim == self.target.n() && self.subspace().coords(&r.flatten()).is_some()
    }

    /// Tensors `Σ t_s R_s` subject to linear rows in `t`.
    fn cut(&self, rows: Vec<Vec<Q>>, target: MatrixLieAlgebra) -> CurvatureSpace {
        let d = self.basis.len();
        let ns = nullspace_of_rows(rows, d);
        let flat: Vec<Vec<Q>> = self.basis.iter().map(CurvatureTensor::flatten).collect();
        let len = flat.first().map_or(0, Vec::len);
        let tensors = ns.basis().iter().map(|t| combine(&flat, t, len)).collect();
        CurvatureSpace::canonical(target, tensors)
    }
}

/// The space R(g): Bianchi-compatible maps from bivectors into g.
pub fn curvature_space(g: &MatrixLieAlgebra) -> Result<CurvatureSpace> {
    if !is_in_so(g) {
        return Err(Error::NotInSo("curvature space needs g ⊂ so(eta)".into()));
    }
    let n = g.n();
    let k = g.dim();
    let pr = pairs(n);
    let nunk = pr.len() * k;
    if k == 0 || n < 2 {
        return Ok(CurvatureSpace {
            target: g.clone(),
            basis: Vec::new(),
        });
    }
    let var = |a: usize, b: usize, s: usize| pair_index(n, a, b) * k + s;
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                // R(a∧b)e_c + R(b∧c)e_a − R(a∧c)e_b
                for i in 0..n {
                    let mut row = vec![Q::zero(); nunk];
                    for (s, bs) in g.basis().iter().enumerate() {
                        row[var(a, b, s)] += &bs[(i, c)];
                        row[var(b, c, s)] += &bs[(i, a)];
                        row[var(a, c, s)] -= &bs[(i, b)];
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let ns = nullspace_of_rows(rows, nunk);
    let flat_basis: Vec<Vec<Q>> = g.basis().iter().map(Matrix::flatten).collect();
    let tensors = ns
        .basis()
        .iter()
        .map(|v| {
            v.chunks(k)
                .flat_map(|c| combine(&flat_basis, c, n * n))
                .collect()
        })
        .collect();
    Ok(CurvatureSpace::canonical(g.clone(), tensors))
}

/// Span of all values of all tensors in the space.
pub fn image_span(cs: &CurvatureSpace) -> Subspace {
    let n = cs.target.n();
    let mut v = Vec::new();
    for r in &cs.basis {
        v.extend(r.values.iter().map(Matrix::flatten));
    }
    Subspace::span(n * n, v).unwrap()
}

pub fn is_berger(g: &MatrixLieAlgebra) -> Result<bool> {
    let cs = curvature_space(g)?;
    Ok(image_span(&cs) == g.subspace())
}

/// Rows expressing `Σ t_s R_s(pair) ∈ sub` through annihilators of `sub`.
fn value_rows(cs: &CurvatureSpace, sub: &Subspace) -> Vec<Vec<Q>> {
    let nn = sub.ambient();
    let ann = Matrix::from_vec(
        sub.dim(),
        nn,
        sub.basis().iter().flatten().cloned().collect(),
    )
    .unwrap()
    .nullspace();
    let npairs = cs.basis.first().map_or(0, |r| r.values.len());
    let mut rows = Vec::new();
    for p in 0..npairs {
        let vals: Vec<Vec<Q>> = cs.basis.iter().map(|r| r.values[p].flatten()).collect();
        for w in ann.basis() {
            let row: Vec<Q> = vals.iter().map(|v| crate::linalg::dot(w, v)).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}

/// Tensors of `cs` whose values all lie in `sub`.
pub fn restrict_space(cs: &CurvatureSpace, sub: &MatrixLieAlgebra) -> Result<CurvatureSpace> {
    if sub.n() != cs.target.n() || !sub.is_subalgebra_of(&cs.target) {
        return Err(Error::Containment(
            "subalgebra is not contained in the target".into(),
        ));
    }
    let rows = value_rows(cs, &sub.subspace());
    Ok(cs.cut(rows, sub.clone()))
}

/// R₀(h): tensors in R(h) annihilated by the action of h.
pub fn invariant_curvature_space(h: &MatrixLieAlgebra) -> Result<CurvatureSpace> {
    let cs = curvature_space(h)?;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for a_mat in h.basis() {
        // for each basis tensor, the matrix-valued R_A on every pair, flattened
        let images: Vec<Vec<Q>> = cs
            .basis
            .iter()
            .map(|r| {
                annihilation(r, a_mat)
                    .into_iter()
                    .flat_map(|m| m.flatten())
                    .collect()
            })
            .collect();
        let len = images.first().map_or(0, Vec::len);
        for e in 0..len {
            let row: Vec<Q> = images.iter().map(|v| v[e].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Ok(cs.cut(rows, h.clone()))
}

/// `R_A(x∧y) = [R(x∧y), A] + R(Ax∧y) + R(x∧Ay)` on frame pairs.
pub fn annihilation(r: &CurvatureTensor, a: &Matrix) -> Vec<Matrix> {
    let n = r.dim;
    pairs(n)
        .into_iter()
        .map(|(x, y)| {
            let mut m = commutator(&r.value(x, y), a);
            for c in 0..n {
                if !a[(c, x)].is_zero() {
                    m = &m + &r.value(c, y).scale(&a[(c, x)]);
                }
                if !a[(c, y)].is_zero() {
                    m = &m + &r.value(x, c).scale(&a[(c, y)]);
                }
            }
            m
        })
        .collect()
}

/// Weak-curvature tensors `P: R^n → h` with the cyclic identity.
#[derive(Clone, Debug)]
pub struct WeakCurvatureSpace {
    target: MatrixLieAlgebra,
    basis: Vec<Vec<Matrix>>,
}

impl WeakCurvatureSpace {
    pub fn target(&self) -> &MatrixLieAlgebra {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Matrix>] {
        &self.basis
    }

    pub fn subspace(&self) -> Subspace {
        let n = self.target.n();
        Subspace::span(
            n * n * n,
            self.basis
                .iter()
                .map(|p| p.iter().flat_map(Matrix::flatten).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Whether the map `e_i ↦ p[i]` lies in the space.
    pub fn contains(&self, p: &[Matrix]) -> bool {
        let v: Vec<Q> = p.iter().flat_map(Matrix::flatten).collect();
        v.len() == self.target.n().pow(3) && self.subspace().coords(&v).is_some()
    }

    pub fn image_span(&self) -> Subspace {
        let n = self.target.n();
        Subspace::span(
            n * n,
            self.basis.iter().flatten().map(Matrix::flatten).collect(),
        )
        .unwrap()
    }
}

/// `η(P(u)v,w) + η(P(v)w,u) + η(P(w)u,v) = 0` for a list `P(e_i)`.
pub fn cyclic_identity_holds(p: &[Matrix], ambient: &MetricStructure) -> bool {
    let n = ambient.dim();
    let low: Vec<Matrix> = p.iter().map(|m| ambient.eta() * m).collect();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let s = &low[i][(l, j)] + &low[j][(i, l)] + &low[l][(j, i)];
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

pub fn weak_curvature_space(h: &MatrixLieAlgebra) -> Result<WeakCurvatureSpace> {
    if !is_in_so(h) {
        return Err(Error::NotInSo(
            "weak curvature space needs h ⊂ so(n)".into(),
        ));
    }
    let n = h.n();
    let k = h.dim();
    if k == 0 {
        return Ok(WeakCurvatureSpace {
            target: h.clone(),
            basis: Vec::new(),
        });
    }
    let low: Vec<Matrix> = h.basis().iter().map(|b| h.ambient().eta() * b).collect();
    let nunk = n * k;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let mut row = vec![Q::zero(); nunk];
                for (s, lb) in low.iter().enumerate() {
                    row[i * k + s] += &lb[(l, j)];
                    row[j * k + s] += &lb[(i, l)];
                    row[l * k + s] += &lb[(j, i)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = nullspace_of_rows(rows, nunk);
    let flat_basis: Vec<Vec<Q>> = h.basis().iter().map(Matrix::flatten).collect();
    let maps: Vec<Vec<Q>> = ns
        .basis()
        .iter()
        .map(|v| {
            v.chunks(k)
                .flat_map(|c| combine(&flat_basis, c, n * n))
                .collect()
        })
        .collect();
    let s = Subspace::span(n * n * n, maps).unwrap();
    let basis = s
        .basis()
        .iter()
        .map(|v| v.chunks(n * n).map(|c| Matrix::from_flat(n, c)).collect())
        .collect();
    Ok(WeakCurvatureSpace {
        target: h.clone(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::lie_closure;

    fn euclid(n: usize) -> MetricStructure {
        MetricStructure::new(Matrix::identity(n), None).unwrap()
    }

    #[test]
    fn pair_indexing() {
        let n = 5;
        for (i, (a, b)) in pairs(n).into_iter().enumerate() {
            assert_eq!(pair_index(n, a, b), i);
        }
    }

    #[test]
    fn zero_algebra_has_no_curvature() {
        let z = MatrixLieAlgebra::zero(euclid(3));
        assert_eq!(curvature_space(&z).unwrap().dim(), 0);
        assert!(is_berger(&z).unwrap());
        assert_eq!(weak_curvature_space(&z).unwrap().dim(), 0);
    }

    #[test]
    fn so3_has_constant_curvature_line() {
        // R(so(3)) is 6-dimensional: symmetric maps on Λ² R^3 (all satisfy Bianchi in dim 3)
        let ms = euclid(3);
        let so3 = lie_closure(&[ms.wedge_e(0, 1), ms.wedge_e(1, 2)], &ms).unwrap();
        let cs = curvature_space(&so3).unwrap();
        assert_eq!(cs.dim(), 6);
        for r in cs.basis() {
            assert!(r.bianchi_holds());
            assert!(pair_symmetry_check(r, &ms));
        }
        assert!(is_berger(&so3).unwrap());
        // only the round curvature R(x∧y) = x∧y is so(3)-invariant
        let r0 = invariant_curvature_space(&so3).unwrap();
        assert_eq!(r0.dim(), 1);
    }

    #[test]
    fn bianchi_violation_rejected() {
        let ms = euclid(3);
        let bad = CurvatureTensor::from_values(3, vec![((0, 1), ms.wedge_e(0, 2))]);
        assert!(bad.is_err());
        let ok = CurvatureTensor::from_values(3, vec![((0, 1), ms.wedge_e(0, 1))]).unwrap();
        assert!(pair_symmetry_check(&ok, &ms));
        assert_eq!(ok.value(1, 0), ms.wedge_e(1, 0));
    }

    #[test]
    fn restrict_to_zero_and_self() {
        let ms = euclid(3);
        let so3 = lie_closure(&[ms.wedge_e(0, 1), ms.wedge_e(1, 2)], &ms).unwrap();
        let cs = curvature_space(&so3).unwrap();
        assert_eq!(restrict_space(&cs, &so3).unwrap().dim(), cs.dim());
        let z = MatrixLieAlgebra::zero(ms.clone());
        assert_eq!(restrict_space(&cs, &z).unwrap().dim(), 0);
        let so2 = MatrixLieAlgebra::from_span(
            ms,
            &[Matrix::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])],
        )
        .unwrap();
        assert_eq!(
            restrict_space(&cs, &so2).unwrap().subspace(),
            curvature_space(&so2).unwrap().subspace()
        );
    }

    #[test]
    fn cyclic_identity_on_weak_basis() {
        let ms = euclid(3);
        let so3 = lie_closure(&[ms.wedge_e(0, 1), ms.wedge_e(1, 2)], &ms).unwrap();
        let p = weak_curvature_space(&so3).unwrap();
        for b in p.basis() {
            assert!(cyclic_identity_holds(b, &ms));
        }
        assert_eq!(p.image_span().dim(), 3);
    }
}
