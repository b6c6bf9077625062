use super::metric::PolynomialMetric;
use super::polymat::PolyMat;
use crate::error::Result;
use crate::exactnum::{qr, Polynomial, Q};

/// Christoffel symbols `Γ^a_{bc}`, stored as `[a][b][c]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChristoffelField {
    dim: usize,
    gamma: Vec<Polynomial>,
}

impl ChristoffelField {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Polynomial {
        &self.gamma[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Polynomial::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| (0..n).all(|b| (b + 1..n).all(|c| self.get(a, b, c) == self.get(a, c, b))))
    }

    /// `∂_c g_{ab} − Γ^e_{ca} g_{eb} − Γ^e_{cb} g_{ae} = 0` identically.
    pub fn is_metric_compatible(&self, m: &PolynomialMetric) -> bool {
        let n = self.dim;
        for a in 0..n {
            for b in a..n {
                for c in 0..n {
                    let mut s = m.component(a, b).d(c);
                    for e in 0..n {
                        s = &s - &(self.get(e, c, a) * m.component(e, b));
                        s = &s - &(self.get(e, c, b) * m.component(a, e));
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Connection matrices `(Γ_e)^a_b = Γ^a_{eb}`.
    pub fn connection_matrices(&self) -> Vec<PolyMat> {
        let n = self.dim;
        let nvars = self.gamma.first().map_or(n, Polynomial::nvars);
        (0..n)
            .map(|e| {
                let mut m = PolyMat::zeros(n, nvars);
                for a in 0..n {
                    for b in 0..n {
                        m.set(a, b, self.get(a, e, b).clone());
                    }
                }
                m
            })
            .collect()
    }
}

/// Levi-Civita connection of a metric with constant determinant.
pub fn christoffel(m: &PolynomialMetric) -> Result<ChristoffelField> {
    let inv = m.inverse()?;
    Ok(assemble(m, &inv, u32::MAX))
}

/// `Γ^a_{bc} = ½ g^{ae}(∂_b g_{ec} + ∂_c g_{eb} − ∂_e g_{bc})`, dropping degrees above `max_deg`.
pub(crate) fn assemble(m: &PolynomialMetric, inv: &PolyMat, max_deg: u32) -> ChristoffelField {
    let n = m.dim();
    let nvars = n;
    let half: Q = qr(1, 2);
    let dg: Vec<PolyMat> = (0..n).map(|e| m.g().d(e)).collect();
    // first kind: [e][b][c]
    let mut first = vec![Polynomial::zero(nvars); n * n * n];
    for e in 0..n {
        for b in 0..n {
            for c in b..n {
                let s = &(dg[b].get(e, c) + dg[c].get(e, b)) - dg[e].get(b, c);
                let s = s.scale(&half).truncate(max_deg);
                first[(e * n + b) * n + c] = s.clone();
                first[(e * n + c) * n + b] = s;
            }
        }
    }
    let mut gamma = vec![Polynomial::zero(nvars); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let mut acc = Polynomial::zero(nvars);
                for e in 0..n {
                    let gi = inv.get(a, e);
                    let f = &first[(e * n + b) * n + c];
                    if !gi.is_zero() && !f.is_zero() {
                        acc.add_scaled(&gi.mul_trunc(f, max_deg), &Q::from_integer(1.into()));
                    }
                }
                gamma[(a * n + b) * n + c] = acc.clone();
                gamma[(a * n + c) * n + b] = acc;
            }
        }
    }
    ChristoffelField { dim: n, gamma }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;

    #[test]
    fn flat_metric_has_no_christoffels() {
        let n = 4;
        let one = Polynomial::constant(n, qi(1));
        let z = Polynomial::zero(n);
        let m = PolynomialMetric::from_upper(
            n,
            vec![
                vec![z.clone(), z.clone(), one.clone(), z.clone()],
                vec![z.clone(), z.clone(), one],
                vec![z.clone(), z.clone()],
                vec![z],
            ],
        )
        .unwrap();
        assert!(christoffel(&m).unwrap().is_zero());
    }
}
