//! Lorentzian metrics on `ℝ^{n+2}` with prescribed holonomy of types 1–4.

use num_traits::{One, Zero};

use super::families::{build_algebra, FamilyId, FamilySpec};
use crate::curvspace::weak_curvature_space;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, qi, Polynomial, Q};
use crate::geometry::{PolyMat, PolynomialMetric};
use crate::liealg::{lie_closure, MatrixLieAlgebra, MetricStructure};
use crate::linalg::{Matrix, Subspace};

/// `a^k_{α j i}` indexed as `a[α][k][j][i]`, with `P_α(e_i) e_j = Σ_k P^k_{α j i} e_k`.
pub fn lorentz_coefficients(p: &[Vec<Matrix>]) -> Vec<Vec<Vec<Vec<Q>>>> {
    p.iter()
        .enumerate()
        .map(|(a, pa)| {
            let n = pa.len();
            let s = Q::one() / (qi(3) * factorial(a as u32));
            (0..n)
                .map(|k| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .map(|i| (&pa[i][(k, j)] + &pa[j][(k, i)]) * &s)
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// The `h`-part of a Lorentz family together with the `P_α`.
struct HData {
    n: usize,
    n0: usize,
    eta_e: Matrix,
    h_coords: Subspace,
}

impl HData {
    /// Coordinates of `x ∈ h` in the given `h` basis.
    fn coords(&self, x: &Matrix) -> Result<Vec<Q>> {
        self.h_coords
            .coords(&x.flatten())
            .ok_or_else(|| Error::Containment("P value outside h".into()))
    }
}

fn largest_support(ms: &[&Matrix], n: usize) -> usize {
    let mut top = 0;
    for m in ms {
        for i in 0..n {
            for j in 0..n {
                if !m[(i, j)].is_zero() {
                    top = top.max(i + 1).max(j + 1);
                }
            }
        }
    }
    top
}

fn h_data(spec: &FamilySpec, p: &[Vec<Matrix>]) -> Result<HData> {
    let frame = spec.frame()?;
    let n = spec.n;
    let eta_e = frame.eta_e();
    let ms = MetricStructure::new(eta_e.clone(), None)?;
    let h = MatrixLieAlgebra::from_span(ms.clone(), &spec.h_basis)?;
    if h.dim() != spec.h_basis.len() {
        return Err(Error::Invalid("h basis is linearly dependent".into()));
    }
    let wcs = weak_curvature_space(&h)?;
    let mut images = Vec::new();
    for (a, pa) in p.iter().enumerate() {
        if pa.len() != n || pa.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Dimension(format!(
                "P_{} must list n matrices of size n × n",
                a + 1
            )));
        }
        if !wcs.contains(pa) {
            return Err(Error::Containment(format!("P_{} is not in P(h)", a + 1)));
        }
        images.extend(pa.iter().cloned());
    }
    let gen = lie_closure(&images, &ms)?;
    if !gen.same_span(&h) {
        return Err(Error::Containment(
            "the values of the P_α do not generate h".into(),
        ));
    }
    let refs: Vec<&Matrix> = spec.h_basis.iter().collect();
    let n0 = largest_support(&refs, n);
    for pa in p {
        for m in &pa[n0..] {
            if !m.is_zero() {
                return Err(Error::Invalid(
                    "P_α must vanish on the vectors annihilated by h".into(),
                ));
            }
        }
    }
    let h_coords = Subspace::span(n * n, spec.h_basis.iter().map(Matrix::flatten).collect())?;
    Ok(HData {
        n,
        n0,
        eta_e,
        h_coords,
    })
}

/// Metric `2dx⁰dx^{n+1} + Σ η_E dx dx + 2 Σ g_{i,n+1} dx^i dx^{n+1} + f (dx^{n+1})²` with
/// `g_{i,n+1} = (η_E u)_i` and `u^k = Σ a^k_{α j i} x^j x^i (x^{n+1})^{α−1}`.
///
/// The family fixes `f`; `p` lists the `P_α` as their values on `e_1, …, e_n`.
pub fn build_lorentz_metric(spec: &FamilySpec, p: &[Vec<Matrix>]) -> Result<PolynomialMetric> {
    if !spec.family.is_lorentz() {
        return Err(Error::Invalid(format!(
            "{} is not a Lorentz family",
            spec.family.name()
        )));
    }
    // validates the family parameters
    build_algebra(spec)?;
    let hd = h_data(spec, p)?;
    let n = hd.n;
    let d = n + 2;
    let x = |i: usize| Polynomial::var(d, i);
    let t_pow = |a: u32| {
        let mut e = vec![0; d];
        e[n + 1] = a;
        Polynomial::term(d, e, Q::one())
    };

    let a = lorentz_coefficients(p);
    let mut u = vec![Polynomial::zero(d); n];
    for (al, aa) in a.iter().enumerate() {
        let tp = t_pow(al as u32);
        for (k, uk) in u.iter_mut().enumerate() {
            let mut q = Polynomial::zero(d);
            for j in 0..n {
                for i in 0..n {
                    if !aa[k][j][i].is_zero() {
                        q = &q + &(&x(1 + j) * &x(1 + i)).scale(&aa[k][j][i]);
                    }
                }
            }
            *uk = &*uk + &(&q * &tp);
        }
    }

    let mut f = Polynomial::zero(d);
    let sq_range = |lo: usize, hi: usize| {
        (lo..hi).fold(Polynomial::zero(d), |acc, i| {
            &acc + &(&x(1 + i) * &x(1 + i))
        })
    };
    match spec.family {
        FamilyId::Lorentz1 => {
            f = &(&x(0) * &x(0)) + &sq_range(hd.n0, n);
        }
        FamilyId::Lorentz2 => f = sq_range(hd.n0, n),
        FamilyId::Lorentz3 => {
            for (al, pa) in p.iter().enumerate() {
                let inv = Q::one() / factorial(al as u32);
                for i in 0..hd.n0 {
                    let c = hd.coords(&pa[i])?;
                    let phi: Q = c.iter().zip(&spec.phi).map(|(a, b)| a * b).sum::<Q>() * &inv;
                    if !phi.is_zero() {
                        let term = &(&x(0) * &x(1 + i)) * &t_pow(al as u32);
                        f = &f + &term.scale(&(qi(2) * phi));
                    }
                }
            }
            f = &f + &sq_range(hd.n0, n);
        }
        FamilyId::Lorentz4 => {
            let m = spec.m;
            if hd.n0 > m {
                return Err(Error::Constraint("h ⊂ so(m)".into()));
            }
            for (al, pa) in p.iter().enumerate() {
                let inv = Q::one() / factorial(al as u32);
                for i in 0..hd.n0 {
                    let c = hd.coords(&pa[i])?;
                    for (s, col) in (m..n).enumerate() {
                        let psi: Q =
                            c.iter().zip(&spec.psi).map(|(a, v)| a * &v[s]).sum::<Q>() * &inv;
                        if !psi.is_zero() {
                            let term = &(&x(1 + i) * &x(1 + col)) * &t_pow(al as u32);
                            f = &f + &term.scale(&(qi(2) * psi));
                        }
                    }
                }
            }
            f = &f + &sq_range(hd.n0, m);
        }
        _ => unreachable!(),
    }

    let mut g = PolyMat::zeros(d, d);
    g.set(0, n + 1, Polynomial::one(d));
    g.set(n + 1, 0, Polynomial::one(d));
    for i in 0..n {
        for j in 0..n {
            g.set(
                1 + i,
                1 + j,
                Polynomial::constant(d, hd.eta_e[(i, j)].clone()),
            );
        }
        let mut low = Polynomial::zero(d);
        for j in 0..n {
            if !hd.eta_e[(i, j)].is_zero() {
                low = &low + &u[j].scale(&hd.eta_e[(i, j)]);
            }
        }
        g.set(1 + i, n + 1, low.clone());
        g.set(n + 1, 1 + i, low);
    }
    g.set(n + 1, n + 1, f);
    PolynomialMetric::new(g, vec![Q::zero(); d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::generators::{g2_p, rho_so3_p, rho_so3_rational};
    use crate::exactnum::qr;

    fn rho_spec(family: FamilyId) -> FamilySpec {
        let (eta_e, h) = rho_so3_rational();
        let mut s = FamilySpec::new(family, 5);
        s.eta_e = Some(eta_e);
        s.h_basis = h;
        s
    }

    fn poly(d: usize, terms: &[(&[(usize, u32)], Q)]) -> Polynomial {
        terms.iter().fold(Polynomial::zero(d), |acc, (vars, c)| {
            let mut e = vec![0; d];
            for &(v, k) in vars.iter() {
                e[v] = k;
            }
            &acc + &Polynomial::term(d, e, c.clone())
        })
    }

    #[test]
    fn coefficients_satisfy_symmetry_and_cyclic_identities() {
        let p = vec![g2_p()];
        let a = lorentz_coefficients(&p);
        let n = 7;
        for aa in &a {
            for k in 0..n {
                for j in 0..n {
                    for i in 0..n {
                        assert_eq!(aa[k][j][i], aa[k][i][j]);
                        let cyc = &aa[k][j][i] + &aa[i][k][j] + &aa[j][i][k];
                        assert!(cyc.is_zero());
                        // P^k_{ji} = a^k_{ji} − a^j_{ki}
                        assert_eq!(p[0][i][(k, j)], &aa[k][j][i] - &aa[j][k][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn so3_type2_off_diagonal_terms_match_the_lm2a_oracle() {
        // With y = √3 x², the printed u are u¹ = −⅔((x³)²+4(x⁴)²+(x⁵)²), u² = (2/3)((x³)²−(x⁵)²)·√3,
        // u³ = ⅔(x¹x³ − √3x²x³ − 3x⁴x⁵), u⁴ = (8/3)x¹x⁴, u⁵ = ⅔(x¹x⁵ + √3x²x⁵ + 3x³x⁴)
        // (without the terms caused by the misprinted (3,5) entry of A₃).
        // In y coordinates g_{2,6} = u²/√3 and √3 x² = y.
        let g = build_lorentz_metric(&rho_spec(FamilyId::Lorentz2), &[rho_so3_p()]).unwrap();
        let d = 7;
        let two3 = qr(2, 3);
        let expect = [
            poly(
                d,
                &[
                    (&[(3, 2)], -two3.clone()),
                    (&[(4, 2)], qr(-8, 3)),
                    (&[(5, 2)], -two3.clone()),
                ],
            ),
            poly(d, &[(&[(3, 2)], qr(2, 3)), (&[(5, 2)], qr(-2, 3))]),
            poly(
                d,
                &[
                    (&[(1, 1), (3, 1)], two3.clone()),
                    (&[(2, 1), (3, 1)], -two3.clone()),
                    (&[(4, 1), (5, 1)], qi(-2)),
                ],
            ),
            poly(d, &[(&[(1, 1), (4, 1)], qr(8, 3))]),
            poly(
                d,
                &[
                    (&[(1, 1), (5, 1)], two3.clone()),
                    (&[(2, 1), (5, 1)], two3.clone()),
                    (&[(3, 1), (4, 1)], qi(2)),
                ],
            ),
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(g.component(1 + i, 6), e, "u^{}", i + 1);
        }
        assert!(g.component(6, 6).is_zero());
    }

    #[test]
    fn type1_f_carries_the_x0_square() {
        let mut s = FamilySpec::new(FamilyId::Lorentz1, 2);
        let j = super::super::families::e_ij(2, 1, 2);
        s.h_basis = vec![j.clone()];
        let p = vec![vec![j, Matrix::zeros(2, 2)]];
        let g = build_lorentz_metric(&s, &p).unwrap();
        assert_eq!(g.component(3, 3), &poly(4, &[(&[(0, 2)], qi(1))]));
        assert_eq!(
            g.eta(),
            crate::catalog::StandardFrame::lorentz(2).eta().clone()
        );
    }

    #[test]
    fn trivial_recipe_is_flat() {
        let s = FamilySpec::new(FamilyId::Lorentz2, 0);
        let g = build_lorentz_metric(&s, &[]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(g.component(i, j).is_constant());
            }
        }
    }

    #[test]
    fn p_outside_the_weak_curvature_space_is_rejected() {
        let mut s = FamilySpec::new(FamilyId::Lorentz2, 3);
        let e = super::super::families::e_ij(3, 1, 2);
        s.h_basis = vec![e.clone()];
        let p = vec![vec![Matrix::zeros(3, 3), Matrix::zeros(3, 3), e]];
        assert!(build_lorentz_metric(&s, &p).is_err());
    }
}
