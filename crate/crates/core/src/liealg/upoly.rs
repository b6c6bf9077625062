//! Dense univariate polynomials over Q, only what the spectral splitting needs.

use num_traits::{One, Zero};

use crate::exactnum::Q;
use crate::linalg::Matrix;

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly(pub Vec<Q>);

impl UPoly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn one() -> Self {
        UPoly(vec![Q::one()])
    }

    /// `x - r`
    pub fn linear(r: &Q) -> Self {
        UPoly(vec![-r.clone(), Q::one()])
    }

    /// `x^2 - s x + p`
    pub fn quadratic(s: &Q, p: &Q) -> Self {
        UPoly(vec![p.clone(), -s.clone(), Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &Q {
        self.0
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    pub fn monic(&self) -> Self {
        let l = self.lead().clone();
        UPoly(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(vec![]);
        }
        let mut r = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        UPoly::new(r)
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return (UPoly(vec![]), self.clone());
        }
        let dl = d.lead().clone();
        let mut q = vec![Q::zero(); r.len() - d.0.len() + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + d.0.len() - 1] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Returns `s` with `s*self ≡ 1 (mod m)`, assuming coprimality.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (mut r0, mut r1) = (m.clone(), self.divrem(m).1);
        let (mut s0, mut s1) = (UPoly(vec![]), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        if r0.degree() != 0 {
            return None;
        }
        let inv = Q::one() / r0.lead();
        Some(
            UPoly::new(s0.0.iter().map(|c| c * &inv).collect())
                .divrem(m)
                .1,
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, x: &Matrix) -> Matrix {
        let n = x.rows();
        let mut acc = Matrix::zeros(n, n);
        let id = Matrix::identity(n);
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + &id.scale(c);
        }
        acc
    }

    pub fn squarefree(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.divrem(&g).0.monic()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1]).mul(&p(&[2, 1]))), p(&[-1, 1]));
        let sq = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[-2, 1]));
        assert_eq!(sq.squarefree(), p(&[1, 1]).mul(&p(&[-2, 1])));
    }

    #[test]
    fn modular_inverse() {
        let m = p(&[1, 0, 1]);
        let a = p(&[-3, 1]);
        let s = a.inverse_mod(&m).unwrap();
        assert_eq!(s.mul(&a).divrem(&m).1, UPoly::one());
    }
}
