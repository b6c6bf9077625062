//! Pseudo-Kähler metrics of signature `(2, 2n+2)` realizing the `hol` families.
//!
//! Coordinates are `x¹, …, x^{2n+4}` stored as variables `0, …, 2n+3`; `x^{i+2}` and
//! `x^{n+i+2}` belong to `e_i` and `f_i`, and `t = x^{2n+3}`.

use num_traits::{One, Zero};

use super::families::{build_algebra, FamilyId, FamilySpec, Structure, UElem};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, qi, Polynomial, Q};
use crate::geometry::{PolyMat, PolynomialMetric};
use crate::linalg::{Matrix, Subspace};

/// The data entering the f-functions: an adapted basis `A_1, …, A_N` of `u` with
/// `A_1, …, A_{N₁}` spanning `u'`, and the maps evaluated on it.
#[derive(Clone, Debug)]
pub struct PkData {
    pub n: usize,
    pub m: usize,
    pub n0: usize,
    pub big_n: usize,
    pub n1: usize,
    pub basis: Vec<UElem>,
    pub phi: Vec<Q>,
    pub phi_hat: Vec<Q>,
    pub psi: Vec<Vec<Q>>,
}

fn combine_u(rows: &[Vec<Q>], us: &[UElem], n: usize) -> Vec<UElem> {
    rows.iter()
        .map(|r| {
            let mut b = Matrix::zeros(n, n);
            let mut c = Matrix::zeros(n, n);
            for (x, u) in r.iter().zip(us) {
                if !x.is_zero() {
                    b = &b + &u.b.scale(x);
                    c = &c + &u.c.scale(x);
                }
            }
            UElem { b, c }
        })
        .collect()
}

fn combine_vals(rows: &[Vec<Q>], vals: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let t = vals.first().map_or(0, Vec::len);
    rows.iter()
        .map(|r| {
            (0..t)
                .map(|s| r.iter().zip(vals).map(|(x, v)| x * &v[s]).sum())
                .collect()
        })
        .collect()
}

fn pad(v: &[Q], len: usize) -> Vec<Vec<Q>> {
    (0..len)
        .map(|i| vec![v.get(i).cloned().unwrap_or_else(Q::zero)])
        .collect()
}

impl PkData {
    pub fn new(spec: &FamilySpec) -> Result<Self> {
        let n = spec.n;
        let us: Vec<UElem> = spec
            .u_basis
            .iter()
            .map(|u| u.embed(n))
            .collect::<Result<_>>()?;
        let st = Structure::new(us.iter().map(UElem::real).collect())?;
        let (rows, n1) = st.adapted_rows()?;
        let big_n = us.len();
        let basis = combine_u(&rows, &us, n);
        let n0 = (0..n)
            .rev()
            .find(|&i| basis.iter().any(|u| !u.supported_in(i)))
            .map_or(0, |i| i + 1);
        // u must not annihilate any vector of E_{1..n0}
        if n > 0 {
            let mut stacked = Vec::new();
            for u in &basis {
                stacked.extend(u.real().to_rows());
            }
            let ker = if stacked.is_empty() {
                Subspace::full(2 * n)
            } else {
                Matrix::from_rows(stacked)?.nullspace()
            };
            if ker.dim() != 2 * (n - n0) {
                return Err(Error::Invalid(
                    "reorder the basis of E so that the vectors annihilated by u come last".into(),
                ));
            }
        }
        let phi = combine_vals(&rows, &pad(&spec.phi, big_n))
            .into_iter()
            .map(|v| v[0].clone())
            .collect();
        let phi_hat = combine_vals(&rows, &pad(&spec.phi_hat, big_n))
            .into_iter()
            .map(|v| v[0].clone())
            .collect();
        let psi = if spec.psi.is_empty() {
            vec![Vec::new(); big_n]
        } else {
            combine_vals(&rows, &spec.psi)
        };
        Ok(PkData {
            n,
            m: spec.m,
            n0,
            big_n,
            n1,
            basis,
            phi,
            phi_hat,
            psi,
        })
    }
}

/// Polynomial helpers in the coordinates `x¹ … x^{2n+4}`.
struct Coords {
    n: usize,
    nv: usize,
}

type F3 = [Polynomial; 3];

impl Coords {
    fn new(n: usize) -> Self {
        Coords { n, nv: 2 * n + 4 }
    }

    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nv)
    }

    fn zero3(&self) -> F3 {
        [self.zero(), self.zero(), self.zero()]
    }

    /// `c · Π (x^k)^e` for paper indices `k`.
    fn mono(&self, c: Q, factors: &[(usize, u32)]) -> Polynomial {
        let mut e = vec![0; self.nv];
        for &(k, p) in factors {
            e[k - 1] += p;
        }
        Polynomial::term(self.nv, e, c)
    }

    fn t(&self) -> usize {
        2 * self.n + 3
    }

    fn e(&self, i: usize) -> usize {
        i + 2
    }

    fn f(&self, i: usize) -> usize {
        self.n + i + 2
    }
}

fn add3(a: &mut F3, b: &F3) {
    for i in 0..3 {
        a[i] = &a[i] + &b[i];
    }
}

fn inv_fact(k: u32) -> Q {
    Q::one() / factorial(k)
}

/// `u^{i+2}` and `u^{n+i+2}` of `u` itself, `i = 1 … n₀`.
fn base_u(x: &Coords, d: &PkData) -> Vec<(Polynomial, Polynomial)> {
    let t = x.t();
    (1..=d.n0)
        .map(|i| {
            let mut v1 = x.zero();
            let mut v2 = x.zero();
            for (al, a) in d.basis.iter().enumerate() {
                let k = al as u32 + 1;
                let s = inv_fact(k);
                for j in 1..=d.n0 {
                    let b = &a.b[(i - 1, j - 1)];
                    let c = &a.c[(i - 1, j - 1)];
                    if !b.is_zero() {
                        v1 = &v1 + &x.mono(b * &s, &[(x.e(j), 1), (t, k)]);
                        v2 = &v2 + &x.mono(b * &s, &[(x.f(j), 1), (t, k)]);
                    }
                    if !c.is_zero() {
                        v1 = &v1 - &x.mono(c * &s, &[(x.f(j), 1), (t, k)]);
                        v2 = &v2 + &x.mono(c * &s, &[(x.e(j), 1), (t, k)]);
                    }
                }
            }
            (v1, v2)
        })
        .collect()
}

fn f_zero(x: &Coords, d: &PkData) -> F3 {
    let t = x.t();
    let half = Q::one() / qi(2);
    let mut f1 = x.zero();
    for (al, a) in d.basis.iter().enumerate() {
        let k = al as u32;
        let s = inv_fact(k);
        for i in 1..=d.n0 {
            for j in 1..=d.n0 {
                let b = &a.b[(i - 1, j - 1)];
                let c = &a.c[(i - 1, j - 1)];
                if !b.is_zero() {
                    f1 = &f1 + &x.mono(b * &s, &[(x.e(i), 1), (x.f(j), 1), (t, k)]);
                }
                if !c.is_zero() {
                    let h = c * &half * &s;
                    f1 = &f1 + &x.mono(h.clone(), &[(x.e(i), 1), (x.e(j), 1), (t, k)]);
                    f1 = &f1 + &x.mono(h, &[(x.f(i), 1), (x.f(j), 1), (t, k)]);
                }
            }
        }
    }
    let mut f2 = f1.clone();
    for (v1, v2) in base_u(x, d) {
        f2 = &f2 + &(&v1 * &v1);
        f2 = &f2 + &(&v2 * &v2);
    }
    [f1, f2, x.zero()]
}

fn f_phi(x: &Coords, d: &PkData) -> F3 {
    let t = x.t();
    let mut f = x.zero3();
    for al in d.n1..d.big_n {
        let k = al as u32 + 1;
        let c = &d.phi[al] * &inv_fact(k) * qi(2);
        f[0] = &f[0] - &x.mono(c.clone(), &[(2, 1), (t, k)]);
        f[2] = &f[2] + &x.mono(c, &[(1, 1), (t, k)]);
    }
    f[1] = -&f[0];
    f
}

/// `(x^t)^{K−1}/(K−1)! · (…)`, the common shape of `f^φ̂` and `f^{Ã²,K}`.
fn a2_shape(x: &Coords, d: &PkData, k: u32, weight: &Q) -> F3 {
    let t = x.t();
    let w = weight * &inv_fact(k - 1);
    let two_k = qi(2) / qi(k as i64);
    let tail = qi(1) / (qi(k as i64 + 1) * qi(k as i64));
    let mut f = x.zero3();
    f[0] = &f[0] - &x.mono(&w * &two_k, &[(1, 1), (t, k)]);
    f[1] = &f[1] + &x.mono(&w * &two_k, &[(1, 1), (t, k)]);
    f[2] = &f[2] - &x.mono(&w * &two_k, &[(2, 1), (t, k)]);
    for i in d.m + 1..=d.n {
        let (e, fi) = (x.e(i), x.f(i));
        f[0] = &f[0] + &x.mono(w.clone(), &[(e, 2), (t, k - 1)]);
        f[1] = &f[1] + &x.mono(w.clone(), &[(fi, 2), (t, k - 1)]);
        f[1] = &f[1] + &x.mono(&w * &tail, &[(e, 2), (t, k + 1)]);
        f[1] = &f[1] + &x.mono(&w * &tail, &[(fi, 2), (t, k + 1)]);
        f[2] = &f[2] + &x.mono(w.clone(), &[(e, 1), (fi, 1), (t, k - 1)]);
    }
    f
}

fn f_phi_hat(x: &Coords, d: &PkData) -> F3 {
    let mut f = x.zero3();
    for al in d.n1..d.big_n {
        if !d.phi_hat[al].is_zero() {
            add3(&mut f, &a2_shape(x, d, al as u32 + 1, &d.phi_hat[al]));
        }
    }
    f
}

fn f_a1(x: &Coords, k: u32) -> F3 {
    let t = x.t();
    let c = qi(2) * inv_fact(k);
    let f1 = -&x.mono(c.clone(), &[(2, 1), (t, k)]);
    [f1.clone(), -&f1, x.mono(c, &[(1, 1), (t, k)])]
}

fn f_tilde(x: &Coords, m1: usize, m2: usize) -> F3 {
    let mut f = x.zero3();
    for i in m1.max(1)..=m2 {
        let (e, fi) = (x.e(i), x.f(i));
        f[0] = &f[0] + &x.mono(qi(1), &[(e, 2)]);
        f[0] = &f[0] - &x.mono(qi(1), &[(fi, 2)]);
        f[2] = &f[2] + &x.mono(qi(2), &[(e, 1), (fi, 1)]);
    }
    f[1] = -&f[0];
    f
}

fn f_breve(x: &Coords, m1: usize, k: u32, m2: usize) -> F3 {
    let t = x.t();
    let mut f = x.zero3();
    for i in m1..=m2 {
        let p = k + (i - m1) as u32;
        let c = qi(2) * inv_fact(p);
        f[0] = &f[0] - &x.mono(c.clone(), &[(x.f(i), 1), (t, p)]);
        f[2] = &f[2] + &x.mono(c, &[(x.e(i), 1), (t, p)]);
    }
    f[1] = -&f[0];
    f
}

/// `f^{n,ψ}` (`r = None`, `ψ3` on `l+1 … n`) or `f^{m,ψ}` (`ψ3` on `l+1 … m`, `ψ4` on `r+1 … n`).
fn f_psi(x: &Coords, d: &PkData, k: usize, l: usize, m3: usize, r: Option<usize>) -> F3 {
    let t = x.t();
    let mut f1 = x.zero();
    let mut f3 = x.zero();
    for al in d.n1..d.big_n {
        let a = al as u32 + 1;
        let s = qi(2) * inv_fact(a);
        let mut it = d.psi[al].iter();
        let mut ps = Vec::new();
        for i in k + 1..=l {
            ps.push((1, i, it.next().unwrap().clone()));
        }
        for i in k + 1..=l {
            ps.push((2, i, it.next().unwrap().clone()));
        }
        for i in l + 1..=m3 {
            ps.push((3, i, it.next().unwrap().clone()));
        }
        if let Some(r) = r {
            for i in r + 1..=d.n {
                ps.push((4, i, it.next().unwrap().clone()));
            }
        }
        for (which, i, c) in ps {
            if c.is_zero() {
                continue;
            }
            let c = &c * &s;
            let (e, fi) = (x.e(i), x.f(i));
            match which {
                1 | 4 => {
                    f1 = &f1 + &x.mono(c.clone(), &[(fi, 1), (t, a)]);
                    f3 = &f3 - &x.mono(c, &[(e, 1), (t, a)]);
                }
                _ => {
                    f1 = &f1 - &x.mono(c.clone(), &[(e, 1), (t, a)]);
                    f3 = &f3 - &x.mono(c, &[(fi, 1), (t, a)]);
                }
            }
        }
    }
    [f1.clone(), -&f1, f3]
}

/// Extra `u^{i+2} = −c x^{n+i+2}`, `u^{n+i+2} = c x^{i+2}` for `i = m+1 … n`, with `c` a polynomial in `t`.
fn u_extra(x: &Coords, d: &PkData, c: &Polynomial, u: &mut [Polynomial]) {
    for i in d.m + 1..=d.n {
        let (e, fi) = (x.e(i), x.f(i));
        u[e - 1] = &u[e - 1] - &(c * &x.mono(qi(1), &[(fi, 1)]));
        u[fi - 1] = &u[fi - 1] + &(c * &x.mono(qi(1), &[(e, 1)]));
    }
}

/// The row of the metric tables that realizes the family.
pub fn table_row(spec: &FamilySpec) -> Result<usize> {
    use FamilyId::*;
    Ok(match spec.family {
        HolN0One => 1,
        HolN0Two => 2,
        HolN0Gamma if spec.gamma1.is_zero() && spec.gamma2.is_zero() => 4,
        HolN0Gamma => 3,
        HolA1A2Tilde => 1,
        HolA1PhiHat => 2,
        HolPhiA2Tilde => 3,
        HolPhiPhiHat => 4,
        HolLambda => 5,
        HolPsiKL => 6,
        HolPsiKLR => 7,
        other => {
            return Err(Error::Invalid(format!(
                "no metric recipe for {}; only the hol families are realized",
                other.name()
            )))
        }
    })
}

/// The three functions `f₁, f₂, f₃` for `n = 0`.
fn n0_table(x: &Coords, spec: &FamilySpec) -> Result<F3> {
    let one = qi(1);
    Ok(match table_row(spec)? {
        1 => {
            let f1 =
                &(-&x.mono(qi(2), &[(2, 1), (3, 1)])) - &x.mono(one.clone(), &[(1, 1), (3, 2)]);
            let f3 = &x.mono(qi(2), &[(1, 1), (3, 1)]) - &x.mono(one, &[(2, 1), (3, 2)]);
            [f1.clone(), -&f1, f3]
        }
        2 => {
            let f1 = &x.mono(one.clone(), &[(1, 2)]) - &x.mono(one, &[(2, 2)]);
            [f1.clone(), -&f1, x.mono(qi(2), &[(1, 1), (2, 1)])]
        }
        3 => {
            let (g1, g2) = (&spec.gamma1 * qi(2), &spec.gamma2 * qi(2));
            let f1 =
                &(-&x.mono(g1.clone(), &[(2, 1), (3, 1)])) - &x.mono(g2.clone(), &[(1, 1), (3, 1)]);
            let f3 = &x.mono(g1, &[(1, 1), (3, 1)]) - &x.mono(g2, &[(2, 1), (3, 1)]);
            [f1.clone(), -&f1, f3]
        }
        _ => [x.mono(one, &[(4, 2)]), x.zero(), x.zero()],
    })
}

/// The metric `g` of the table row realizing `spec`.
pub fn build_pk_metric(spec: &FamilySpec) -> Result<PolynomialMetric> {
    build_algebra(spec)?;
    let row = table_row(spec)?;
    let n = spec.n;
    let x = Coords::new(n);
    let nv = x.nv;
    let mut u = vec![x.zero(); nv];
    let f: F3 = if n == 0 {
        n0_table(&x, spec)?
    } else {
        let d = PkData::new(spec)?;
        if d.n0 > d.m && row <= 5 {
            return Err(Error::Constraint("u ⊂ u(m)".into()));
        }
        let big = d.big_n as u32;
        let t = x.t();
        for (i, (v1, v2)) in base_u(&x, &d).into_iter().enumerate() {
            u[x.e(i + 1) - 1] = v1;
            u[x.f(i + 1) - 1] = v2;
        }
        let mut f = f_zero(&x, &d);
        let (m, k, l, r) = (d.m, spec.k, spec.l, spec.r);
        match row {
            1 => {
                add3(&mut f, &f_a1(&x, big + 1));
                add3(&mut f, &a2_shape(&x, &d, big + 2, &qi(1)));
                add3(&mut f, &f_tilde(&x, d.n0 + 1, m));
                add3(&mut f, &f_breve(&x, m + 1, big + 3, n));
                u_extra(&x, &d, &x.mono(inv_fact(big + 2), &[(t, big + 2)]), &mut u);
            }
            2 => {
                add3(&mut f, &f_a1(&x, big + 1));
                add3(&mut f, &f_phi_hat(&x, &d));
                add3(&mut f, &f_tilde(&x, d.n0 + 1, m));
                add3(&mut f, &f_breve(&x, m + 1, big + 2, n));
                u_extra(&x, &d, &phi_hat_series(&x, &d), &mut u);
            }
            3 => {
                add3(&mut f, &f_phi(&x, &d));
                add3(&mut f, &a2_shape(&x, &d, big + 1, &qi(1)));
                add3(&mut f, &f_tilde(&x, d.n0 + 1, m));
                add3(&mut f, &f_breve(&x, m + 1, big + 2, n));
                u_extra(
                    &x,
                    &d,
                    &x.mono(inv_fact(row3_u_exp(big)), &[(t, row3_u_exp(big))]),
                    &mut u,
                );
            }
            4 => {
                add3(&mut f, &f_phi(&x, &d));
                add3(&mut f, &f_phi_hat(&x, &d));
                add3(&mut f, &f_tilde(&x, d.n0 + 1, m));
                add3(&mut f, &f_breve(&x, m + 1, row4_breve(big), n));
                u_extra(&x, &d, &phi_hat_series(&x, &d), &mut u);
            }
            5 => {
                add3(&mut f, &f_a1(&x, big + 1));
                let a2 = a2_shape(&x, &d, big + 1, &qi(1));
                add3(
                    &mut f,
                    &[
                        a2[0].scale(&spec.lambda),
                        a2[1].scale(&spec.lambda),
                        a2[2].scale(&spec.lambda),
                    ],
                );
                add3(&mut f, &f_tilde(&x, d.n0 + 1, m));
                add3(&mut f, &f_breve(&x, m + 1, big + 2, n));
                let c = x.mono(&spec.lambda * &inv_fact(big + 1), &[(t, big + 1)]);
                u_extra(&x, &d, &c, &mut u);
            }
            6 => {
                if d.n0 > k {
                    return Err(Error::Constraint("u ⊂ u(k)".into()));
                }
                add3(&mut f, &f_tilde(&x, d.n0 + 1, k));
                add3(&mut f, &f_psi(&x, &d, k, l, n, None));
                add3(&mut f, &f_breve(&x, l + 1, big + 1, n));
            }
            _ => {
                if d.n0 > k {
                    return Err(Error::Constraint("u ⊂ u(k)".into()));
                }
                add3(&mut f, &f_tilde(&x, d.n0 + 1, k));
                add3(&mut f, &f_psi(&x, &d, k, l, m, Some(r)));
                add3(&mut f, &f_breve(&x, l + 1, big + 1, r));
            }
        }
        f
    };
    assemble(&x, &u, f)
}

/// Exponent of `t` in the extra `u` terms of the `φ, Ã²` row.
fn row3_u_exp(big: u32) -> u32 {
    big + 2
}

/// Order `K` of `f̆` in the `φ, φ̂` row.
fn row4_breve(big: u32) -> u32 {
    big + 2
}

fn phi_hat_series(x: &Coords, d: &PkData) -> Polynomial {
    let t = x.t();
    (0..d.big_n).fold(x.zero(), |acc, al| {
        let k = al as u32 + 1;
        &acc + &x.mono(&d.phi_hat[al] * &inv_fact(k), &[(t, k)])
    })
}

fn assemble(x: &Coords, u: &[Polynomial], f: F3) -> Result<PolynomialMetric> {
    let n = x.n;
    let nv = x.nv;
    let one = Polynomial::one(nv);
    let mut g = PolyMat::zeros(nv, nv);
    let mut set = |a: usize, b: usize, p: Polynomial| {
        g.set(a - 1, b - 1, p.clone());
        g.set(b - 1, a - 1, p);
    };
    set(1, 2 * n + 3, one.clone());
    set(2, 2 * n + 4, one.clone());
    for i in 3..=2 * n + 2 {
        set(i, i, one.clone());
        set(i, 2 * n + 4, u[i - 1].clone());
    }
    let [f1, f2, f3] = f;
    set(2 * n + 3, 2 * n + 3, f1);
    set(2 * n + 4, 2 * n + 4, f2);
    set(2 * n + 3, 2 * n + 4, f3);
    PolynomialMetric::new(g, vec![Q::zero(); nv])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::StandardFrame;

    fn p(nv: usize, terms: &[(&[(usize, u32)], i64)]) -> Polynomial {
        terms.iter().fold(Polynomial::zero(nv), |acc, (f, c)| {
            let mut e = vec![0; nv];
            for &(k, q) in f.iter() {
                e[k - 1] = q;
            }
            &acc + &Polynomial::term(nv, e, qi(*c))
        })
    }

    #[test]
    fn n0_row4_is_the_printed_metric() {
        let mut s = FamilySpec::new(FamilyId::HolN0Gamma, 0);
        s.gamma1 = qi(0);
        let g = build_pk_metric(&s).unwrap();
        assert_eq!(g.component(2, 2), &p(4, &[(&[(4, 2)], 1)]));
        assert!(g.component(3, 3).is_zero() && g.component(2, 3).is_zero());
        assert_eq!(g.eta(), StandardFrame::pseudo_kaehler(0).eta().clone());
    }

    #[test]
    fn n0_row2_functions() {
        let g = build_pk_metric(&FamilySpec::new(FamilyId::HolN0Two, 0)).unwrap();
        let f1 = p(4, &[(&[(1, 2)], 1), (&[(2, 2)], -1)]);
        assert_eq!(g.component(2, 2), &f1);
        assert_eq!(g.component(3, 3), &-&f1);
        assert_eq!(g.component(2, 3), &p(4, &[(&[(1, 1), (2, 1)], 2)]));
    }

    #[test]
    fn metrics_start_at_eta() {
        let mut s = FamilySpec::new(FamilyId::HolA1A2Tilde, 1);
        s.m = 1;
        s.u_basis = vec![UElem::j_range(1, 1, 1)];
        let g = build_pk_metric(&s).unwrap();
        assert_eq!(g.eta(), StandardFrame::pseudo_kaehler(1).eta().clone());
        // u¹ for J₁: u^3 = −x⁴ t, u^4 = x³ t
        assert_eq!(g.component(2, 5), &p(6, &[(&[(4, 1), (5, 1)], -1)]));
        assert_eq!(g.component(3, 5), &p(6, &[(&[(3, 1), (5, 1)], 1)]));
    }

    #[test]
    fn twir_families_have_no_recipe() {
        let s = FamilySpec::new(FamilyId::TwirC, 0);
        assert!(build_pk_metric(&s).is_err());
    }

    #[test]
    fn annihilated_vectors_must_come_last() {
        let mut s = FamilySpec::new(FamilyId::HolA1A2Tilde, 2);
        s.m = 2;
        let mut c = Matrix::zeros(2, 2);
        c[(1, 1)] = qi(1);
        s.u_basis = vec![UElem {
            b: Matrix::zeros(2, 2),
            c,
        }];
        assert!(matches!(build_pk_metric(&s), Err(Error::Invalid(_))));
    }
}
