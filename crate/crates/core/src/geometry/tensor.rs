use super::christoffel::ChristoffelField;
use crate::exactnum::{Polynomial, Q};
use crate::linalg::Matrix;

/// A (1, k) tensor field `T^a_{i_1…i_k}` with polynomial components.
///
/// For the curvature, the lower slots are `(b, c, d)` with
/// `R(∂_c, ∂_d) ∂_b = R^a_{bcd} ∂_a`; every covariant derivative appends one slot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorField {
    dim: usize,
    lower: usize,
    comps: Vec<Polynomial>,
}

impl TensorField {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    /// Number of covariant derivatives beyond the curvature itself.
    pub fn order(&self) -> usize {
        self.lower.saturating_sub(3)
    }

    fn offset(&self, upper: usize, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.lower);
        idx.iter().fold(upper, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, upper: usize, idx: &[usize]) -> &Polynomial {
        &self.comps[self.offset(upper, idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// All lower multi-indices in row-major order.
    pub fn lower_indices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.lower {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..self.dim).map(move |i| {
                        let mut w = v.clone();
                        w.push(i);
                        w
                    })
                })
                .collect();
        }
        out
    }

    /// Endomorphism `X^a_b = T^a_{b, rest}` evaluated at `point`.
    pub fn endomorphism_at(&self, rest: &[usize], point: &[Q]) -> Matrix {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        let mut idx = vec![0];
        idx.extend_from_slice(rest);
        for a in 0..n {
            for b in 0..n {
                idx[0] = b;
                m[(a, b)] = self.get(a, &idx).evaluate(point).expect("point length");
            }
        }
        m
    }

    /// `R^a_{bcd} = −R^a_{bdc}`.
    pub fn is_antisymmetric_in_cd(&self) -> bool {
        self.lower_indices().iter().all(|idx| {
            let mut sw = idx.clone();
            sw.swap(1, 2);
            (0..self.dim).all(|a| (self.get(a, idx) + self.get(a, &sw)).is_zero())
        })
    }

    /// `R^a_{bcd…} + R^a_{cdb…} + R^a_{dbc…} = 0` in the first three slots.
    pub fn first_bianchi_holds(&self) -> bool {
        if self.lower < 3 {
            return true;
        }
        self.lower_indices().iter().all(|idx| {
            let mut r1 = idx.clone();
            r1[..3].rotate_left(1);
            let mut r2 = r1.clone();
            r2[..3].rotate_left(1);
            (0..self.dim)
                .all(|a| (&(self.get(a, idx) + self.get(a, &r1)) + self.get(a, &r2)).is_zero())
        })
    }
}

/// `R^a_{bcd} = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce} Γ^e_{db} − Γ^a_{de} Γ^e_{cb}`.
pub fn curvature(c: &ChristoffelField) -> TensorField {
    let n = c.dim();
    let nvars = c.get(0, 0, 0).nvars();
    let mut comps = vec![Polynomial::zero(nvars); n.pow(4)];
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in cc + 1..n {
                    let mut s = &c.get(a, d, b).d(cc) - &c.get(a, cc, b).d(d);
                    for e in 0..n {
                        s = &s + &(c.get(a, cc, e) * c.get(e, d, b));
                        s = &s - &(c.get(a, d, e) * c.get(e, cc, b));
                    }
                    let i = ((a * n + b) * n + cc) * n + d;
                    let j = ((a * n + b) * n + d) * n + cc;
                    comps[j] = -&s;
                    comps[i] = s;
                }
            }
        }
    }
    TensorField {
        dim: n,
        lower: 3,
        comps,
    }
}

/// `(∇_e T)^a_{i…} = ∂_e T^a_{i…} + Γ^a_{ef} T^f_{i…} − Σ_s Γ^f_{e i_s} T^a_{…f…}`, `e` appended last.
pub fn covariant_derivative(t: &TensorField, c: &ChristoffelField) -> TensorField {
    let n = t.dim;
    let k = t.lower;
    let nvars = t.comps.first().map_or(n, Polynomial::nvars);
    let mut comps = vec![Polynomial::zero(nvars); n.pow(k as u32 + 2)];
    let lows = t.lower_indices();
    for a in 0..n {
        for idx in &lows {
            for e in 0..n {
                let mut s = t.get(a, idx).d(e);
                for f in 0..n {
                    let g = c.get(a, e, f);
                    if !g.is_zero() {
                        s = &s + &(g * t.get(f, idx));
                    }
                }
                let mut j = idx.clone();
                for slot in 0..k {
                    let orig = idx[slot];
                    for f in 0..n {
                        let g = c.get(f, e, orig);
                        if g.is_zero() {
                            continue;
                        }
                        j[slot] = f;
                        s = &s - &(g * t.get(a, &j));
                    }
                    j[slot] = orig;
                }
                let mut full = idx.clone();
                full.push(e);
                let off = full.iter().fold(a, |acc, &i| acc * n + i);
                comps[off] = s;
            }
        }
    }
    TensorField {
        dim: n,
        lower: k + 1,
        comps,
    }
}
