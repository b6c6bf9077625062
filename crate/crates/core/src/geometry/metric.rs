use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::polymat::PolyMat;
use crate::error::{Error, Result};
use crate::exactnum::{fmt_q, parse_q, Polynomial, TermJson, Q};
use crate::linalg::Matrix;

/// A symmetric matrix of polynomials with a basepoint.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolynomialMetric {
    g: PolyMat,
    basepoint: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricJson {
    pub dim: usize,
    pub basepoint: Vec<String>,
    pub g: Vec<Vec<Vec<TermJson>>>,
}

impl PolynomialMetric {
    pub fn new(g: PolyMat, basepoint: Vec<Q>) -> Result<Self> {
        let n = g.n();
        if g.nvars() != n {
            return Err(Error::Dimension(format!(
                "metric of size {n} over {} variables",
                g.nvars()
            )));
        }
        if basepoint.len() != n {
            return Err(Error::Dimension("basepoint length".into()));
        }
        if !g.is_symmetric() {
            return Err(Error::Invalid("metric is not symmetric".into()));
        }
        if g.eval(&basepoint).inverse().is_none() {
            return Err(Error::UnsupportedMetric(
                "metric is degenerate at the basepoint".into(),
            ));
        }
        Ok(PolynomialMetric { g, basepoint })
    }

    /// Builds from the upper triangle, `upper[i][j-i] = g_{ij}`.
    pub fn from_upper(n: usize, upper: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut g = PolyMat::zeros(n, n);
        for (i, row) in upper.into_iter().enumerate() {
            for (k, p) in row.into_iter().enumerate() {
                g.set(i, i + k, p.clone());
                g.set(i + k, i, p);
            }
        }
        PolynomialMetric::new(g, vec![Q::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.g.n()
    }

    pub fn g(&self) -> &PolyMat {
        &self.g
    }

    pub fn component(&self, i: usize, j: usize) -> &Polynomial {
        self.g.get(i, j)
    }

    pub fn basepoint(&self) -> &[Q] {
        &self.basepoint
    }

    pub fn eta(&self) -> Matrix {
        self.g.eval(&self.basepoint)
    }

    /// The same metric in coordinates centred at the basepoint.
    pub fn centred(&self) -> PolynomialMetric {
        PolynomialMetric {
            g: self.g.shift(&self.basepoint),
            basepoint: vec![Q::zero(); self.dim()],
        }
    }

    /// Exact polynomial inverse. Exists iff det g is a nonzero constant.
    pub fn inverse(&self) -> Result<PolyMat> {
        let n = self.dim();
        let c = self.centred();
        let g = &c.g;
        let g0 = g.at_zero();
        let inv0 = g0.inverse().ok_or_else(|| {
            Error::UnsupportedMetric("metric is degenerate at the basepoint".into())
        })?;
        let id2 = PolyMat::constant(&Matrix::identity(n).scale(&Q::from_integer(2.into())), n);
        let bound = (n.saturating_sub(1) as u32) * g.degree();
        let mut inv = PolyMat::constant(&inv0, n);
        let mut prec: u32 = 1;
        loop {
            if g.mul_trunc(&inv, u32::MAX).is_identity() {
                let back: Vec<Q> = self.basepoint.iter().map(|x| -x.clone()).collect();
                return Ok(inv.shift(&back));
            }
            if prec > bound {
                return Err(Error::UnsupportedMetric(
                    "determinant is not a nonzero constant, so the inverse is not polynomial"
                        .into(),
                ));
            }
            let target = 2 * prec - 1;
            let gi = g.mul_trunc(&inv, target);
            inv = inv.mul_trunc(&id2.sub(&gi), target);
            prec *= 2;
        }
    }

    pub fn to_json(&self) -> MetricJson {
        let n = self.dim();
        MetricJson {
            dim: n,
            basepoint: self.basepoint.iter().map(fmt_q).collect(),
            g: (0..n)
                .map(|i| (0..n).map(|j| self.g.get(i, j).to_json()).collect())
                .collect(),
        }
    }

    /// Accepts full rows or upper-triangle rows (row `i` of length `dim - i`).
    pub fn from_json(j: &MetricJson) -> Result<Self> {
        let n = j.dim;
        if j.g.len() != n {
            return Err(Error::Dimension(format!(
                "metric has {} rows, expected {n}",
                j.g.len()
            )));
        }
        let basepoint = if j.basepoint.is_empty() {
            vec![Q::zero(); n]
        } else {
            j.basepoint
                .iter()
                .map(|s| parse_q(s))
                .collect::<Result<Vec<_>>>()?
        };
        let mut g = PolyMat::zeros(n, n);
        let mut seen = vec![false; n * n];
        for (i, row) in j.g.iter().enumerate() {
            let offset = if row.len() == n {
                0
            } else if row.len() == n - i {
                i
            } else {
                return Err(Error::Dimension(format!(
                    "metric row {i} has {} entries",
                    row.len()
                )));
            };
            for (k, terms) in row.iter().enumerate() {
                let col = offset + k;
                let p = Polynomial::from_json(n, terms)?;
                let (a, b) = (i.min(col), i.max(col));
                if seen[a * n + b] {
                    if g.get(a, b) != &p && !p.is_zero() {
                        return Err(Error::Invalid(format!(
                            "g[{i}][{col}] disagrees with its mirror entry"
                        )));
                    }
                    continue;
                }
                if col < i && p.is_zero() {
                    continue;
                }
                seen[a * n + b] = true;
                g.set(a, b, p.clone());
                g.set(b, a, p);
            }
        }
        PolynomialMetric::new(g, basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, qi(v))
    }

    #[test]
    fn inverse_of_unimodular_metric() {
        // 2 dx0 dx2 + 2 dx1 dx3 + (x3)^2 dx2^2
        let n = 4;
        let z = Polynomial::zero(n);
        let f = &x(n, 3) * &x(n, 3);
        let m = PolynomialMetric::from_upper(
            n,
            vec![
                vec![z.clone(), z.clone(), c(n, 1), z.clone()],
                vec![z.clone(), z.clone(), c(n, 1)],
                vec![f, z.clone()],
                vec![z.clone()],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.g().mul_trunc(&inv, u32::MAX).is_identity());
    }

    #[test]
    fn non_constant_determinant_rejected() {
        let n = 2;
        let m = PolynomialMetric::from_upper(
            n,
            vec![
                vec![&c(n, 1) + &x(n, 0), Polynomial::zero(n)],
                vec![c(n, 1)],
            ],
        )
        .unwrap();
        assert!(matches!(m.inverse(), Err(Error::UnsupportedMetric(_))));
    }

    #[test]
    fn json_upper_triangle_is_mirrored() {
        let n = 2;
        let m =
            PolynomialMetric::from_upper(n, vec![vec![c(n, 1), x(n, 1)], vec![c(n, -1)]]).unwrap();
        let j = m.to_json();
        assert_eq!(PolynomialMetric::from_json(&j).unwrap(), m);
        let upper = MetricJson {
            dim: 2,
            basepoint: vec![],
            g: vec![j.g[0].clone(), vec![j.g[1][1].clone()]],
        };
        assert_eq!(PolynomialMetric::from_json(&upper).unwrap(), m);
    }

    #[test]
    fn inverse_respects_basepoint() {
        let n = 2;
        let m = PolynomialMetric::new(
            PolyMat::from_entries(
                n,
                n,
                vec![&x(n, 0) * &x(n, 0), c(n, 1), c(n, 1), Polynomial::zero(n)],
            ),
            vec![qi(0), qi(0)],
        )
        .unwrap();
        let moved = PolynomialMetric::new(m.g().clone(), vec![qi(3), qi(-1)]).unwrap();
        assert_eq!(m.inverse().unwrap(), moved.inverse().unwrap());
    }
}
