//! Named subalgebras of `so(1,n+1)_{ℝp}` and `u(1,n+1)_{<p1,p2>}` in the standard frames.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::frame::StandardFrame;
use crate::error::{Error, Result};
use crate::exactnum::{q0, qr, serde_q, serde_qvec, serde_qvecvec, Q};
use crate::liealg::{commutator, MatrixLieAlgebra, MetricStructure};
use crate::linalg::{solve, Matrix, Subspace};

/// A pair `(B, C)` standing for the unitary block `[[B, −C], [C, B]]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UElem {
    #[serde(rename = "B")]
    pub b: Matrix,
    #[serde(rename = "C")]
    pub c: Matrix,
}

impl UElem {
    pub fn new(b: Matrix, c: Matrix) -> Result<Self> {
        if !b.is_square() || !c.is_square() || b.rows() != c.rows() {
            return Err(Error::Dimension(
                "B and C must be square of equal size".into(),
            ));
        }
        Ok(UElem { b, c })
    }

    /// `J_{k..l}` inside `u(n)`, 1-based inclusive.
    pub fn j_range(n: usize, k: usize, l: usize) -> Self {
        let mut c = Matrix::zeros(n, n);
        for i in k..=l {
            c[(i - 1, i - 1)] = Q::one();
        }
        UElem {
            b: Matrix::zeros(n, n),
            c,
        }
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    /// Zero-padded to `n × n`.
    pub fn embed(&self, n: usize) -> Result<UElem> {
        let s = self.size();
        if s > n {
            return Err(Error::Dimension(format!("u element of size {s} in u({n})")));
        }
        let mut b = Matrix::zeros(n, n);
        let mut c = Matrix::zeros(n, n);
        self.b.place_into(&mut b, 0, 0);
        self.c.place_into(&mut c, 0, 0);
        Ok(UElem { b, c })
    }

    /// The `2n × 2n` real matrix on `E = E¹ ⊕ E²`.
    pub fn real(&self) -> Matrix {
        let n = self.size();
        let mut m = Matrix::zeros(2 * n, 2 * n);
        self.b.place_into(&mut m, 0, 0);
        self.b.place_into(&mut m, n, n);
        self.c.place_into(&mut m, n, 0);
        (-&self.c).place_into(&mut m, 0, n);
        m
    }

    pub fn from_real(m: &Matrix) -> Result<UElem> {
        if !m.is_square() || !m.rows().is_multiple_of(2) {
            return Err(Error::Dimension("expected an even square matrix".into()));
        }
        let n = m.rows() / 2;
        let mut b = Matrix::zeros(n, n);
        let mut c = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = m[(i, j)].clone();
                c[(i, j)] = m[(n + i, j)].clone();
            }
        }
        let u = UElem { b, c };
        if &u.real() != m {
            return Err(Error::Containment("matrix does not commute with J".into()));
        }
        Ok(u)
    }

    pub fn is_unitary(&self) -> bool {
        self.b.transpose() == -&self.b && self.c.is_symmetric()
    }

    /// Zero outside the leading `m × m` block.
    pub fn supported_in(&self, m: usize) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n)
                .all(|j| (i < m && j < m) || (self.b[(i, j)].is_zero() && self.c[(i, j)].is_zero()))
        })
    }

    pub fn bracket(&self, o: &UElem) -> UElem {
        UElem::from_real(&commutator(&self.real(), &o.real())).expect("u(n) is closed")
    }
}

/// Coordinates `(a1, a2, B, C, z1, z2, c)` of an element of `u(1,n+1)_{<p1,p2>}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UParts {
    pub a1: Q,
    pub a2: Q,
    pub u: UElem,
    pub z1: Vec<Q>,
    pub z2: Vec<Q>,
    pub c: Q,
}

impl UParts {
    pub fn zero(n: usize) -> Self {
        UParts {
            a1: q0(),
            a2: q0(),
            u: UElem {
                b: Matrix::zeros(n, n),
                c: Matrix::zeros(n, n),
            },
            z1: vec![q0(); n],
            z2: vec![q0(); n],
            c: q0(),
        }
    }

    pub fn n(&self) -> usize {
        self.z1.len()
    }

    pub fn matrix(&self) -> Matrix {
        u_element(self)
    }
}

/// Realizes `(a1, a2, B, C, z1, z2, c)` in the basis `p1, p2, e, f, q1, q2`.
pub fn u_element(x: &UParts) -> Matrix {
    let n = x.n();
    let d = 2 * n + 4;
    let (p1, p2, q1, q2) = (0, 1, 2 * n + 2, 2 * n + 3);
    let e = |i: usize| 2 + i;
    let f = |i: usize| 2 + n + i;
    let mut m = Matrix::zeros(d, d);
    m[(p1, p1)] = x.a1.clone();
    m[(p1, p2)] = -x.a2.clone();
    m[(p2, p1)] = x.a2.clone();
    m[(p2, p2)] = x.a1.clone();
    m[(q1, q1)] = -x.a1.clone();
    m[(q1, q2)] = -x.a2.clone();
    m[(q2, q1)] = x.a2.clone();
    m[(q2, q2)] = -x.a1.clone();
    m[(p1, q2)] = -x.c.clone();
    m[(p2, q1)] = x.c.clone();
    for i in 0..n {
        m[(p1, e(i))] = -x.z1[i].clone();
        m[(p1, f(i))] = -x.z2[i].clone();
        m[(p2, e(i))] = x.z2[i].clone();
        m[(p2, f(i))] = -x.z1[i].clone();
        m[(e(i), q1)] = x.z1[i].clone();
        m[(e(i), q2)] = -x.z2[i].clone();
        m[(f(i), q1)] = x.z2[i].clone();
        m[(f(i), q2)] = x.z1[i].clone();
        for j in 0..n {
            m[(e(i), e(j))] = x.u.b[(i, j)].clone();
            m[(f(i), f(j))] = x.u.b[(i, j)].clone();
            m[(f(i), e(j))] = x.u.c[(i, j)].clone();
            m[(e(i), f(j))] = -x.u.c[(i, j)].clone();
        }
    }
    m
}

/// `[[a, (η_E X)ᵀ, 0], [0, A, −X], [0, 0, −a]]` in the basis `p, e, q`.
pub fn lorentz_element(eta_e: &Matrix, a: &Q, h: &Matrix, x: &[Q]) -> Matrix {
    let n = eta_e.rows();
    let mut m = Matrix::zeros(n + 2, n + 2);
    m[(0, 0)] = a.clone();
    m[(n + 1, n + 1)] = -a.clone();
    let low = eta_e.mul_vec(x);
    for i in 0..n {
        m[(0, 1 + i)] = low[i].clone();
        m[(1 + i, n + 1)] = -x[i].clone();
    }
    h.place_into(&mut m, 1, 1);
    m
}

// Generators of the named subspaces of u(1,n+1)_{<p1,p2>}; indices are 1-based.

pub fn gen_a1(n: usize) -> Matrix {
    UParts {
        a1: Q::one(),
        ..UParts::zero(n)
    }
    .matrix()
}

pub fn gen_a2(n: usize) -> Matrix {
    UParts {
        a2: Q::one(),
        ..UParts::zero(n)
    }
    .matrix()
}

pub fn gen_c(n: usize) -> Matrix {
    UParts {
        c: Q::one(),
        ..UParts::zero(n)
    }
    .matrix()
}

pub fn gen_n1(n: usize, i: usize) -> Matrix {
    let mut x = UParts::zero(n);
    x.z1[i - 1] = Q::one();
    x.matrix()
}

pub fn gen_n2(n: usize, i: usize) -> Matrix {
    let mut x = UParts::zero(n);
    x.z2[i - 1] = Q::one();
    x.matrix()
}

/// `(0, 1, 0, 0, 0, 0, 0) + J_{m+1..n}`.
pub fn gen_a2_tilde(n: usize, m: usize) -> Matrix {
    let mut x = UParts {
        a2: Q::one(),
        ..UParts::zero(n)
    };
    if m < n {
        x.u = UElem::j_range(n, m + 1, n);
    }
    x.matrix()
}

pub fn gen_u(n: usize, u: &UElem) -> Result<Matrix> {
    Ok(UParts {
        u: u.embed(n)?,
        ..UParts::zero(n)
    }
    .matrix())
}

/// `I₀` spanning the centre of `u(1,n+1)_{<p1,p2>}` modulo the nilradical.
pub fn gen_i0(n: usize) -> Matrix {
    let nn = n as i64;
    let mut c = Matrix::identity(n).scale(&qr(2, nn + 2));
    if n == 0 {
        c = Matrix::zeros(0, 0);
    }
    UParts {
        a2: qr(-nn, nn + 2),
        u: UElem {
            b: Matrix::zeros(n, n),
            c,
        },
        ..UParts::zero(n)
    }
    .matrix()
}

fn range_gens(n: usize, lo: usize, hi: usize, f: fn(usize, usize) -> Matrix) -> Vec<Matrix> {
    (lo..=hi).map(|i| f(n, i)).collect()
}

/// Basis of `so(s)` as elementary skew matrices `E_ij`, `i < j`.
pub fn so_basis(s: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            out.push(e_ij(s, i + 1, j + 1));
        }
    }
    out
}

/// `E_ij` with `(i,j) = 1`, `(j,i) = −1`, 1-based.
pub fn e_ij(s: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(s, s);
    m[(i - 1, j - 1)] = Q::one();
    m[(j - 1, i - 1)] = -Q::one();
    m
}

fn sym_basis(s: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..s {
        for j in i..s {
            let mut m = Matrix::zeros(s, s);
            m[(i, j)] = Q::one();
            m[(j, i)] = Q::one();
            out.push(m);
        }
    }
    out
}

/// Basis of `u(m)` as `(B, C)` pairs of size `m`.
pub fn u_m_basis(m: usize) -> Vec<UElem> {
    let mut out: Vec<UElem> = so_basis(m)
        .into_iter()
        .map(|b| UElem {
            b,
            c: Matrix::zeros(m, m),
        })
        .collect();
    out.extend(sym_basis(m).into_iter().map(|c| UElem {
        b: Matrix::zeros(m, m),
        c,
    }));
    out
}

/// Basis of `su(m)`: `u(m)` with `tr C = 0`.
pub fn su_m_basis(m: usize) -> Vec<UElem> {
    let mut out: Vec<UElem> = so_basis(m)
        .into_iter()
        .map(|b| UElem {
            b,
            c: Matrix::zeros(m, m),
        })
        .collect();
    for i in 0..m {
        for j in i + 1..m {
            let mut c = Matrix::zeros(m, m);
            c[(i, j)] = Q::one();
            c[(j, i)] = Q::one();
            out.push(UElem {
                b: Matrix::zeros(m, m),
                c,
            });
        }
    }
    for i in 1..m {
        let mut c = Matrix::zeros(m, m);
        c[(0, 0)] = Q::one();
        c[(i, i)] = -Q::one();
        out.push(UElem {
            b: Matrix::zeros(m, m),
            c,
        });
    }
    out
}

/// `sod(k..l) ⊂ u(n)`: the same `B ∈ so(l−k+1)` on `E¹_{k..l}` and `E²_{k..l}`.
pub fn sod_basis(n: usize, k: usize, l: usize) -> Vec<UElem> {
    so_basis(l + 1 - k)
        .into_iter()
        .map(|small| {
            let mut b = Matrix::zeros(n, n);
            small.place_into(&mut b, k - 1, k - 1);
            UElem {
                b,
                c: Matrix::zeros(n, n),
            }
        })
        .collect()
}

/// `sod(k..l)` acting on `E = ℝ^{2n}` with the Euclidean form and `J`.
pub fn sod_on_e(n: usize, k: usize, l: usize) -> Result<MatrixLieAlgebra> {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(n + i, i)] = Q::one();
        j[(i, n + i)] = -Q::one();
    }
    let ms = MetricStructure::new(Matrix::identity(2 * n), Some(j))?;
    let gens: Vec<Matrix> = sod_basis(n, k, l).iter().map(UElem::real).collect();
    MatrixLieAlgebra::from_span(ms, &gens)
}

pub fn pk_algebra(n: usize, gens: &[Matrix]) -> Result<MatrixLieAlgebra> {
    MatrixLieAlgebra::from_span(StandardFrame::pseudo_kaehler(n).metric().clone(), gens)
}

/// `u(1,n+1)_{<p1,p2>}`.
pub fn u1n1(n: usize) -> Result<MatrixLieAlgebra> {
    let mut g = vec![gen_a1(n), gen_a2(n), gen_c(n)];
    for u in u_m_basis(n) {
        g.push(gen_u(n, &u)?);
    }
    g.extend(range_gens(n, 1, n, gen_n1));
    g.extend(range_gens(n, 1, n, gen_n2));
    pk_algebra(n, &g)
}

/// `su(1,n+1)_{<p1,p2>}`: the elements with `2 a2 + tr C = 0`.
pub fn su1n1(n: usize) -> Result<MatrixLieAlgebra> {
    let mut g = vec![gen_a1(n), gen_c(n)];
    for u in su_m_basis(n) {
        g.push(gen_u(n, &u)?);
    }
    if n > 0 {
        let mut x = UParts::zero(n);
        x.a2 = qr(-1, 2);
        x.u.c[(0, 0)] = Q::one();
        g.push(x.matrix());
    }
    g.extend(range_gens(n, 1, n, gen_n1));
    g.extend(range_gens(n, 1, n, gen_n2));
    pk_algebra(n, &g)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FamilyId {
    Lorentz1,
    Lorentz2,
    Lorentz3,
    Lorentz4,
    TwirC,
    TwirSu11,
    TwirA1,
    TwirPhi,
    TwirPsiKL,
    TwirPsiKLR,
    TwirZeroPsiK,
    TwirZeroZeta,
    TwirZeroPsiKZeta,
    HolN0One,
    HolN0Two,
    HolN0Gamma,
    HolA1A2Tilde,
    HolA1PhiHat,
    HolPhiPhiHat,
    HolPhiA2Tilde,
    HolLambda,
    HolPsiKL,
    HolPsiKLR,
}

const NAMES: &[(FamilyId, &str, &str)] = &[
    (FamilyId::Lorentz1, "lorentz1", "g^{1,h} = (R + h) ⋉ R^n"),
    (FamilyId::Lorentz2, "lorentz2", "g^{2,h} = h ⋉ R^n"),
    (FamilyId::Lorentz3, "lorentz3", "g^{3,h,phi}"),
    (FamilyId::Lorentz4, "lorentz4", "g^{4,h,m,psi}"),
    (FamilyId::TwirC, "twir-c", "C ⊂ su(1,1)"),
    (FamilyId::TwirSu11, "twir-su11", "su(1,1)_{<p1,p2>}"),
    (FamilyId::TwirA1, "twir-m-h-a1", "g^{m,h,A1}"),
    (FamilyId::TwirPhi, "twir-m-h-phi", "g^{m,h,phi}"),
    (FamilyId::TwirPsiKL, "twir-n-h-psi-k-l", "g^{n,h,psi,k,l}"),
    (
        FamilyId::TwirPsiKLR,
        "twir-m-h-psi-k-l-r",
        "g^{m,h,psi,k,l,r}",
    ),
    (FamilyId::TwirZeroPsiK, "twir-0-h-psi-k", "g^{0,h,psi,k}"),
    (FamilyId::TwirZeroZeta, "twir-0-h-zeta", "g^{0,h,zeta}"),
    (
        FamilyId::TwirZeroPsiKZeta,
        "twir-0-h-psi-k-zeta",
        "g^{0,h,psi,k,zeta}",
    ),
    (FamilyId::HolN0One, "hol-n0-1", "hol^1_{n=0} = u(1,1)"),
    (FamilyId::HolN0Two, "hol-n0-2", "hol^2_{n=0} = A1 + A2"),
    (
        FamilyId::HolN0Gamma,
        "hol-n0-gamma",
        "hol^{gamma1,gamma2}_{n=0}",
    ),
    (
        FamilyId::HolA1A2Tilde,
        "hol-m-u-a1-a2tilde",
        "hol^{m,u,A1,A2~}",
    ),
    (
        FamilyId::HolA1PhiHat,
        "hol-m-u-a1-phihat",
        "hol^{m,u,A1,phi^}",
    ),
    (
        FamilyId::HolPhiPhiHat,
        "hol-m-u-phi-phihat",
        "hol^{m,u,phi,phi^}",
    ),
    (
        FamilyId::HolPhiA2Tilde,
        "hol-m-u-phi-a2tilde",
        "hol^{m,u,phi,A2~}",
    ),
    (FamilyId::HolLambda, "hol-m-u-lambda", "hol^{m,u,lambda}"),
    (FamilyId::HolPsiKL, "hol-n-u-psi-k-l", "hol^{n,u,psi,k,l}"),
    (
        FamilyId::HolPsiKLR,
        "hol-m-u-psi-k-l-r",
        "hol^{m,u,psi,k,l,r}",
    ),
];

impl FamilyId {
    pub fn all() -> impl Iterator<Item = FamilyId> {
        NAMES.iter().map(|t| t.0)
    }

    pub fn name(self) -> &'static str {
        NAMES.iter().find(|t| t.0 == self).map(|t| t.1).unwrap()
    }

    pub fn description(self) -> &'static str {
        NAMES.iter().find(|t| t.0 == self).map(|t| t.2).unwrap()
    }

    /// Accepts the kebab-case id, optionally without the `hol-` prefix.
    pub fn parse(s: &str) -> Result<FamilyId> {
        let s = s.trim().to_ascii_lowercase();
        NAMES
            .iter()
            .find(|t| t.1 == s || t.1.strip_prefix("hol-") == Some(s.as_str()))
            .map(|t| t.0)
            .ok_or_else(|| Error::Parse(format!("unknown family id '{s}'")))
    }

    pub fn is_lorentz(self) -> bool {
        matches!(
            self,
            FamilyId::Lorentz1 | FamilyId::Lorentz2 | FamilyId::Lorentz3 | FamilyId::Lorentz4
        )
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FamilyId::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A family id with its parameters. Linear maps are given by their values on the
/// basis of `u` (or `h`); `psi` values are concatenated in the order `ψ1, ψ2, ψ3, ψ4`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: FamilyId,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub m: usize,
    #[serde(default)]
    pub k: usize,
    #[serde(default)]
    pub l: usize,
    #[serde(default)]
    pub r: usize,
    #[serde(default = "q0", with = "serde_q")]
    pub lambda: Q,
    #[serde(default = "q0", with = "serde_q")]
    pub gamma1: Q,
    #[serde(default = "q0", with = "serde_q")]
    pub gamma2: Q,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub u_basis: Vec<UElem>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h_basis: Vec<Matrix>,
    #[serde(default, with = "serde_qvec", skip_serializing_if = "Vec::is_empty")]
    pub phi: Vec<Q>,
    #[serde(default, with = "serde_qvec", skip_serializing_if = "Vec::is_empty")]
    pub phi_hat: Vec<Q>,
    #[serde(default, with = "serde_qvecvec", skip_serializing_if = "Vec::is_empty")]
    pub psi: Vec<Vec<Q>>,
    #[serde(default, with = "serde_qvec", skip_serializing_if = "Vec::is_empty")]
    pub zeta: Vec<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_e: Option<Matrix>,
}

impl FamilySpec {
    pub fn new(family: FamilyId, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            m: 0,
            k: 0,
            l: 0,
            r: 0,
            lambda: q0(),
            gamma1: q0(),
            gamma2: q0(),
            u_basis: Vec::new(),
            h_basis: Vec::new(),
            phi: Vec::new(),
            phi_hat: Vec::new(),
            psi: Vec::new(),
            zeta: Vec::new(),
            eta_e: None,
        }
    }

    pub fn frame(&self) -> Result<StandardFrame> {
        if self.family.is_lorentz() {
            match &self.eta_e {
                Some(e) => {
                    if e.rows() != self.n {
                        return Err(Error::Dimension("eta_e must be n × n".into()));
                    }
                    StandardFrame::lorentz_with(e.clone())
                }
                None => Ok(StandardFrame::lorentz(self.n)),
            }
        } else {
            Ok(StandardFrame::pseudo_kaehler(self.n))
        }
    }

    /// Short label such as `hol-m-u-lambda[n=1,m=0,N=0,lambda=2]`.
    pub fn label(&self) -> String {
        let mut s = format!("{}[n={}", self.family.name(), self.n);
        use FamilyId::*;
        match self.family {
            HolN0Gamma => s += &format!(",gamma=({},{})", self.gamma1, self.gamma2),
            HolLambda => s += &format!(",m={},lambda={}", self.m, self.lambda),
            Lorentz4 | TwirA1 | TwirPhi | HolA1A2Tilde | HolA1PhiHat | HolPhiPhiHat
            | HolPhiA2Tilde => s += &format!(",m={}", self.m),
            HolPsiKL | TwirPsiKL => s += &format!(",k={},l={}", self.k, self.l),
            HolPsiKLR | TwirPsiKLR => {
                s += &format!(",m={},k={},l={},r={}", self.m, self.k, self.l, self.r)
            }
            TwirZeroPsiK | TwirZeroPsiKZeta => s += &format!(",k={}", self.k),
            _ => {}
        }
        let dim_u = if self.family.is_lorentz() {
            self.h_basis.len()
        } else {
            self.u_basis.len()
        };
        if dim_u > 0 {
            s += &format!(",dim u={dim_u}");
        }
        s + "]"
    }
}

fn constraint(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Constraint(what.to_string()))
    }
}

/// Structure of a small Lie algebra given by an independent list of matrices.
pub(crate) struct Structure {
    basis: Vec<Matrix>,
    derived: Subspace,
    centre: Subspace,
    center_dim: usize,
}

impl Structure {
    pub(crate) fn new(basis: Vec<Matrix>) -> Result<Self> {
        let big = basis.len();
        if big == 0 {
            return Ok(Structure {
                basis,
                derived: Subspace::zero(0),
                centre: Subspace::zero(0),
                center_dim: 0,
            });
        }
        let cols = columns(&basis);
        if cols.rank() != big {
            return Err(Error::Invalid(
                "basis elements are linearly dependent".into(),
            ));
        }
        let mut der = Vec::new();
        for i in 0..big {
            for j in i + 1..big {
                let v = commutator(&basis[i], &basis[j]).flatten();
                let c = solve(&cols, &v)
                    .ok_or_else(|| Error::Containment("basis does not span a subalgebra".into()))?;
                der.push(c);
            }
        }
        let derived = Subspace::span(big, der)?;
        // centre: x with [x, b_j] = 0 for all j
        let n2 = basis[0].rows() * basis[0].cols();
        let mut rows = vec![vec![Q::zero(); big]; n2 * big];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                for (t, x) in commutator(bi, bj).flatten().into_iter().enumerate() {
                    rows[j * n2 + t][i] = x;
                }
            }
        }
        let centre = Matrix::from_rows(rows).expect("rectangular").nullspace();
        Ok(Structure {
            basis,
            derived,
            center_dim: centre.dim(),
            centre,
        })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Checks that the values `vals[i] ∈ ℝ^t` define a map vanishing on the derived algebra.
    fn kills_derived(&self, vals: &[Vec<Q>]) -> bool {
        self.derived.basis().iter().all(|d| {
            let t = vals.first().map_or(0, Vec::len);
            (0..t).all(|s| {
                let mut acc = Q::zero();
                for (i, c) in d.iter().enumerate() {
                    acc += c * &vals[i][s];
                }
                acc.is_zero()
            })
        })
    }
}

fn columns(basis: &[Matrix]) -> Matrix {
    let n2 = basis[0].rows() * basis[0].cols();
    let mut m = Matrix::zeros(n2, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.flatten().into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    m
}

fn scalar_map(vals: &[Q], dim: usize, what: &str) -> Result<Vec<Vec<Q>>> {
    if vals.len() != dim {
        return Err(Error::Dimension(format!(
            "{what} needs {dim} values, got {}",
            vals.len()
        )));
    }
    Ok(vals.iter().map(|x| vec![x.clone()]).collect())
}

fn vector_map(vals: &[Vec<Q>], dim: usize, target: usize, what: &str) -> Result<()> {
    if vals.len() != dim || vals.iter().any(|v| v.len() != target) {
        return Err(Error::Dimension(format!(
            "{what} needs {dim} vectors of length {target}"
        )));
    }
    Ok(())
}

fn rank_of(vals: &[Vec<Q>], target: usize) -> usize {
    if target == 0 {
        return 0;
    }
    Subspace::span(target, vals.to_vec())
        .map(|s| s.dim())
        .unwrap_or(0)
}

/// Checks the `u` basis, embeds it into `u(n)` and returns it with its structure.
fn u_structure(spec: &FamilySpec, inside: usize, name: &str) -> Result<(Vec<UElem>, Structure)> {
    let n = spec.n;
    let mut us = Vec::new();
    for u in &spec.u_basis {
        let e = u.embed(n)?;
        constraint(
            e.is_unitary(),
            "u elements need B skew-symmetric and C symmetric",
        )?;
        constraint(e.supported_in(inside), &format!("u ⊂ u({inside}) ({name})"))?;
        us.push(e);
    }
    let st = Structure::new(us.iter().map(UElem::real).collect())?;
    Ok((us, st))
}

fn h_structure(spec: &FamilySpec, frame: &StandardFrame, inside: usize) -> Result<Structure> {
    let n = spec.n;
    let eta_e = frame.eta_e();
    let ms = MetricStructure::new(eta_e, None)?;
    for h in &spec.h_basis {
        if h.rows() != n || h.cols() != n {
            return Err(Error::Dimension("h elements must be n × n".into()));
        }
        constraint(ms.is_skew(h), "h ⊂ so(n)")?;
        let ok = (0..n).all(|i| (0..n).all(|j| (i < inside && j < inside) || h[(i, j)].is_zero()));
        constraint(ok, &format!("h ⊂ so({inside})"))?;
    }
    Structure::new(spec.h_basis.clone())
}

/// Membership of `x` in the span of `gens`, all as `(B, C)` pairs of size `n`.
fn in_span(x: &UElem, gens: &[UElem]) -> bool {
    let n = x.size();
    let s = Subspace::span(4 * n * n, gens.iter().map(|g| g.real().flatten()).collect()).unwrap();
    s.coords(&x.real().flatten()).is_some()
}

fn embed_all(gens: Vec<UElem>, n: usize) -> Vec<UElem> {
    gens.into_iter().map(|g| g.embed(n).unwrap()).collect()
}

/// `J_k − k/(n+2) J_n`.
pub fn twisted_j(n: usize, k: usize) -> UElem {
    let mut c = UElem::j_range(n, 1, k.max(1)).c;
    if k == 0 {
        c = Matrix::zeros(n, n);
    }
    let s = qr(k as i64, n as i64 + 2);
    for i in 0..n {
        c[(i, i)] = &c[(i, i)] - &s;
    }
    UElem {
        b: Matrix::zeros(n, n),
        c,
    }
}

fn z_vec(n: usize, z1: &[(usize, Q)], z2: &[(usize, Q)]) -> (Vec<Q>, Vec<Q>) {
    let mut a = vec![q0(); n];
    let mut b = vec![q0(); n];
    for (i, x) in z1 {
        a[i - 1] = x.clone();
    }
    for (i, x) in z2 {
        b[i - 1] = x.clone();
    }
    (a, b)
}

/// `ψ` coordinates mapped onto `E¹` and `E²`: `ψ1 → E¹_{k+1..l}`, `ψ2 → E²_{k+1..l}`,
/// `ψ3 → E²_{l+1..m3}`, `ψ4 → E¹_{r+1..n}`.
fn psi_to_z(
    n: usize,
    k: usize,
    l: usize,
    m3: usize,
    r: Option<usize>,
    v: &[Q],
) -> (Vec<Q>, Vec<Q>) {
    let mut z1 = Vec::new();
    let mut z2 = Vec::new();
    let mut it = v.iter();
    for i in k + 1..=l {
        z1.push((i, it.next().unwrap().clone()));
    }
    for i in k + 1..=l {
        z2.push((i, it.next().unwrap().clone()));
    }
    for i in l + 1..=m3 {
        z2.push((i, it.next().unwrap().clone()));
    }
    if let Some(r) = r {
        for i in r + 1..=n {
            z1.push((i, it.next().unwrap().clone()));
        }
    }
    z_vec(n, &z1, &z2)
}

/// The named algebra, realized in the standard frame.
pub fn build_algebra(spec: &FamilySpec) -> Result<MatrixLieAlgebra> {
    use FamilyId::*;
    let n = spec.n;
    let frame = spec.frame()?;
    let gens: Vec<Matrix> = match spec.family {
        Lorentz1 | Lorentz2 | Lorentz3 | Lorentz4 => return build_lorentz(spec, &frame),
        TwirC | TwirSu11 | HolN0One | HolN0Two | HolN0Gamma => {
            constraint(n == 0, "n = 0")?;
            match spec.family {
                TwirC => vec![gen_c(0)],
                TwirSu11 => vec![gen_a1(0), gen_c(0)],
                HolN0One => vec![gen_a1(0), gen_a2(0), gen_c(0)],
                HolN0Two => vec![gen_a1(0), gen_a2(0)],
                _ => {
                    let g = &gen_a1(0).scale(&spec.gamma1) + &gen_a2(0).scale(&spec.gamma2);
                    vec![g, gen_c(0)]
                }
            }
        }
        HolA1A2Tilde | HolA1PhiHat | HolPhiPhiHat | HolPhiA2Tilde | HolLambda => {
            let m = spec.m;
            constraint(n >= 1, "n ≥ 1")?;
            constraint(m <= n, "0 ≤ m ≤ n")?;
            let (us, st) = u_structure(spec, m, "u ⊂ u(m)")?;
            let big = st.dim();
            let a2t = gen_a2_tilde(n, m);
            let a1 = gen_a1(n);
            let phi = if matches!(spec.family, HolPhiPhiHat | HolPhiA2Tilde) {
                let v = scalar_map(&spec.phi, big, "phi")?;
                constraint(st.kills_derived(&v), "phi vanishes on u'")?;
                spec.phi.clone()
            } else {
                vec![q0(); big]
            };
            let phi_hat = if matches!(spec.family, HolA1PhiHat | HolPhiPhiHat) {
                let v = scalar_map(&spec.phi_hat, big, "phi_hat")?;
                constraint(st.kills_derived(&v), "phi_hat vanishes on u'")?;
                spec.phi_hat.clone()
            } else {
                vec![q0(); big]
            };
            let mut g = Vec::new();
            match spec.family {
                HolA1A2Tilde => {
                    g.push(a1.clone());
                    g.push(a2t.clone());
                }
                HolA1PhiHat => g.push(a1.clone()),
                HolPhiA2Tilde => g.push(a2t.clone()),
                HolLambda => {
                    constraint(!spec.lambda.is_zero(), "lambda ≠ 0")?;
                    g.push(&a1 + &a2t.scale(&spec.lambda));
                }
                _ => {}
            }
            for (i, u) in us.iter().enumerate() {
                let x = &(&gen_u(n, u)? + &a1.scale(&phi[i])) + &a2t.scale(&phi_hat[i]);
                g.push(x);
            }
            g.extend(range_gens(n, 1, n, gen_n1));
            g.extend(range_gens(n, 1, m, gen_n2));
            g.push(gen_c(n));
            g
        }
        HolPsiKL | HolPsiKLR | TwirPsiKL | TwirPsiKLR => {
            let (k, l, m, r) = (spec.k, spec.l, spec.m, spec.r);
            let with_r = matches!(spec.family, HolPsiKLR | TwirPsiKLR);
            if with_r {
                constraint(
                    0 < k && k <= l && l <= m && m <= r && r <= n,
                    "0 < k ≤ l ≤ m ≤ r ≤ n",
                )?;
                constraint(0 < m && m < n, "0 < m < n")?;
            } else {
                constraint(0 < k && k <= l && l <= n, "0 < k ≤ l ≤ n")?;
            }
            let twir = matches!(spec.family, TwirPsiKL | TwirPsiKLR);
            let (us, st) = if twir {
                twir_h(spec, k, if with_r { Some((m + 1, r)) } else { None })?
            } else {
                u_structure(spec, k, "u ⊂ u(k)")?
            };
            let need = if with_r {
                n + m + l - 2 * k - r
            } else {
                n + l - 2 * k
            };
            let name = if with_r {
                "dim z(u) ≥ n+m+l−2k−r"
            } else {
                "dim z(u) ≥ n+l−2k"
            };
            constraint(st.center_dim >= need, name)?;
            let m3 = if with_r { m } else { n };
            let target = 2 * (l - k) + (m3 - l) + if with_r { n - r } else { 0 };
            vector_map(&spec.psi, st.dim(), target, "psi")?;
            constraint(rank_of(&spec.psi, target) == target, "psi is surjective")?;
            constraint(st.kills_derived(&spec.psi), "psi vanishes on u'")?;
            let mut g = Vec::new();
            for (i, u) in us.iter().enumerate() {
                let (z1, z2) = psi_to_z(
                    n,
                    k,
                    l,
                    m3,
                    if with_r { Some(r) } else { None },
                    &spec.psi[i],
                );
                let a2 = if twir {
                    -u.c.trace() / Q::from_integer(2.into())
                } else {
                    q0()
                };
                g.push(
                    UParts {
                        a2,
                        u: u.clone(),
                        z1,
                        z2,
                        ..UParts::zero(n)
                    }
                    .matrix(),
                );
            }
            g.extend(range_gens(n, 1, k, gen_n1));
            g.extend(range_gens(n, 1, k, gen_n2));
            g.extend(range_gens(n, l + 1, if with_r { r } else { n }, gen_n1));
            g.push(gen_c(n));
            g
        }
        TwirA1 | TwirPhi => {
            let m = spec.m;
            constraint(n >= 1, "n ≥ 1")?;
            constraint(m <= n, "0 ≤ m ≤ n")?;
            let (us, st) = twir_h_m(spec, m)?;
            let phi = if spec.family == TwirPhi {
                let v = scalar_map(&spec.phi, st.dim(), "phi")?;
                constraint(st.kills_derived(&v), "phi vanishes on h'")?;
                spec.phi.clone()
            } else {
                vec![q0(); st.dim()]
            };
            let mut g = Vec::new();
            if spec.family == TwirA1 {
                g.push(gen_a1(n));
            }
            for (i, u) in us.iter().enumerate() {
                g.push(
                    UParts {
                        a1: phi[i].clone(),
                        a2: -u.c.trace() / Q::from_integer(2.into()),
                        u: u.clone(),
                        ..UParts::zero(n)
                    }
                    .matrix(),
                );
            }
            g.extend(range_gens(n, 1, n, gen_n1));
            g.extend(range_gens(n, 1, m, gen_n2));
            g.push(gen_c(n));
            g
        }
        TwirZeroPsiK | TwirZeroZeta | TwirZeroPsiKZeta => {
            let k = if spec.family == TwirZeroZeta {
                n
            } else {
                spec.k
            };
            match spec.family {
                TwirZeroPsiK => constraint(0 < k && k < n, "0 < k < n")?,
                TwirZeroPsiKZeta => constraint(1 <= k && k < n, "1 ≤ k < n")?,
                _ => constraint(n >= 1, "n ≥ 1")?,
            }
            let sod = sod_basis(n, 1, k.max(1));
            let mut us = Vec::new();
            for u in &spec.u_basis {
                let e = u.embed(n)?;
                constraint(k > 0 && in_span(&e, &sod), &format!("h ⊂ sod(1..{k})"))?;
                us.push(e);
            }
            let st = Structure::new(us.iter().map(UElem::real).collect())?;
            let has_psi = spec.family != TwirZeroZeta;
            let has_zeta = spec.family != TwirZeroPsiK;
            if has_psi {
                constraint(st.center_dim >= n - k, "dim z(h) ≥ n−k")?;
                vector_map(&spec.psi, st.dim(), n - k, "psi")?;
                constraint(rank_of(&spec.psi, n - k) == n - k, "psi is surjective")?;
                constraint(st.kills_derived(&spec.psi), "psi vanishes on h'")?;
            }
            if has_zeta {
                let v = scalar_map(&spec.zeta, st.dim(), "zeta")?;
                constraint(spec.zeta.iter().any(|x| !x.is_zero()), "zeta ≠ 0")?;
                if spec.family == TwirZeroZeta {
                    constraint(st.center_dim > 0, "z(h) ≠ 0")?;
                    constraint(!st.kills_centre_of(&v), "zeta does not vanish on z(h)")?;
                } else {
                    constraint(st.kills_derived(&v), "zeta vanishes on h'")?;
                }
            }
            let mut g = Vec::new();
            for (i, u) in us.iter().enumerate() {
                let mut x = UParts {
                    u: u.clone(),
                    ..UParts::zero(n)
                };
                if has_psi {
                    for (t, v) in spec.psi[i].iter().enumerate() {
                        x.z1[k + t] = v.clone();
                    }
                }
                if has_zeta {
                    x.c = spec.zeta[i].clone();
                }
                g.push(x.matrix());
            }
            g.extend(range_gens(n, 1, k, gen_n1));
            if spec.family == TwirZeroPsiK {
                g.push(gen_c(n));
            }
            g
        }
    };
    MatrixLieAlgebra::from_span(frame.metric().clone(), &gens)
}

impl Structure {
    /// Whether a scalar map vanishes on the centre.
    fn kills_centre_of(&self, vals: &[Vec<Q>]) -> bool {
        self.centre.basis().iter().all(|z| {
            let mut acc = Q::zero();
            for (i, c) in z.iter().enumerate() {
                acc += c * &vals[i][0];
            }
            acc.is_zero()
        })
    }

    /// Coefficient rows of a basis of `𝔤' ⊕ 𝔷(𝔤)` in terms of the given basis, derived part first.
    /// Returns the rows and the dimension of the derived algebra.
    pub(crate) fn adapted_rows(&self) -> Result<(Vec<Vec<Q>>, usize)> {
        let mut rows: Vec<Vec<Q>> = self.derived.basis().to_vec();
        rows.extend(self.centre.basis().iter().cloned());
        let n1 = self.derived.dim();
        if rows.len() != self.dim() || Subspace::span(self.dim(), rows.clone())?.dim() != self.dim()
        {
            return Err(Error::Invalid(
                "algebra is not the direct sum of its derived algebra and centre".into(),
            ));
        }
        Ok((rows, n1))
    }
}

/// `h ⊂ su(m) ⊕ ℝ(J_m − m/(n+2) J_n) ⊕ sod(m+1..n)`.
fn twir_h_m(spec: &FamilySpec, m: usize) -> Result<(Vec<UElem>, Structure)> {
    let n = spec.n;
    let mut amb = embed_all(su_m_basis(m), n);
    amb.push(twisted_j(n, m));
    if m < n {
        amb.extend(sod_basis(n, m + 1, n));
    }
    twir_check(spec, &amb, "h ⊂ su(m) ⊕ R(J_m − m/(n+2) J_n) ⊕ sod(m+1..n)")
}

/// `h ⊂ su(k) ⊕ ℝ(J_k − k/(n+2) J_n) [⊕ sod(a..b)]`.
fn twir_h(
    spec: &FamilySpec,
    k: usize,
    sod: Option<(usize, usize)>,
) -> Result<(Vec<UElem>, Structure)> {
    let n = spec.n;
    let mut amb = embed_all(su_m_basis(k), n);
    amb.push(twisted_j(n, k));
    if let Some((a, b)) = sod {
        if a <= b {
            amb.extend(sod_basis(n, a, b));
        }
    }
    twir_check(spec, &amb, "h ⊂ su(k) ⊕ R(J_k − k/(n+2) J_n) ⊕ sod(m+1..r)")
}

fn twir_check(spec: &FamilySpec, amb: &[UElem], what: &str) -> Result<(Vec<UElem>, Structure)> {
    let mut us = Vec::new();
    for u in &spec.u_basis {
        let e = u.embed(spec.n)?;
        constraint(in_span(&e, amb), what)?;
        us.push(e);
    }
    let st = Structure::new(us.iter().map(UElem::real).collect())?;
    Ok((us, st))
}

fn build_lorentz(spec: &FamilySpec, frame: &StandardFrame) -> Result<MatrixLieAlgebra> {
    use FamilyId::*;
    let n = spec.n;
    let eta_e = frame.eta_e();
    let inside = if spec.family == Lorentz4 { spec.m } else { n };
    if spec.family == Lorentz4 {
        constraint(0 < spec.m && spec.m < n, "0 < m < n")?;
    }
    let st = h_structure(spec, frame, inside)?;
    let mut g = Vec::new();
    let zero_x = vec![q0(); n];
    match spec.family {
        Lorentz1 => {
            g.push(lorentz_element(
                &eta_e,
                &Q::one(),
                &Matrix::zeros(n, n),
                &zero_x,
            ));
            for h in &spec.h_basis {
                g.push(lorentz_element(&eta_e, &q0(), h, &zero_x));
            }
        }
        Lorentz2 => {
            for h in &spec.h_basis {
                g.push(lorentz_element(&eta_e, &q0(), h, &zero_x));
            }
        }
        Lorentz3 => {
            constraint(st.center_dim > 0, "z(h) ≠ 0")?;
            let v = scalar_map(&spec.phi, st.dim(), "phi")?;
            constraint(spec.phi.iter().any(|x| !x.is_zero()), "phi ≠ 0")?;
            constraint(st.kills_derived(&v), "phi vanishes on h'")?;
            for (h, a) in spec.h_basis.iter().zip(&spec.phi) {
                g.push(lorentz_element(&eta_e, a, h, &zero_x));
            }
        }
        _ => {
            let m = spec.m;
            constraint(st.center_dim >= n - m, "dim z(h) ≥ n−m")?;
            vector_map(&spec.psi, st.dim(), n - m, "psi")?;
            constraint(rank_of(&spec.psi, n - m) == n - m, "psi is surjective")?;
            constraint(st.kills_derived(&spec.psi), "psi vanishes on h'")?;
            for (h, p) in spec.h_basis.iter().zip(&spec.psi) {
                let mut x = zero_x.clone();
                x[m..].clone_from_slice(p);
                g.push(lorentz_element(&eta_e, &q0(), h, &x));
            }
        }
    }
    let xmax = if spec.family == Lorentz4 { spec.m } else { n };
    for i in 0..xmax {
        let mut x = zero_x.clone();
        x[i] = Q::one();
        g.push(lorentz_element(&eta_e, &q0(), &Matrix::zeros(n, n), &x));
    }
    MatrixLieAlgebra::from_span(frame.metric().clone(), &g)
}

/// Closed-form dimension of the family for the given parameters.
pub fn expected_dim(spec: &FamilySpec) -> usize {
    use FamilyId::*;
    let (n, m, k, l, r) = (spec.n, spec.m, spec.k, spec.l, spec.r);
    let du = spec.u_basis.len();
    let dh = spec.h_basis.len();
    match spec.family {
        Lorentz1 => 1 + dh + n,
        Lorentz2 | Lorentz3 => dh + n,
        Lorentz4 => dh + m,
        TwirC => 1,
        HolN0Gamma if spec.gamma1.is_zero() && spec.gamma2.is_zero() => 1,
        TwirSu11 | HolN0Two | HolN0Gamma => 2,
        HolN0One => 3,
        TwirA1 => 1 + du + n + m + 1,
        TwirPhi => du + n + m + 1,
        HolA1A2Tilde => 2 + du + n + m + 1,
        HolA1PhiHat | HolPhiA2Tilde | HolLambda => 1 + du + n + m + 1,
        HolPhiPhiHat => du + n + m + 1,
        HolPsiKL | TwirPsiKL => du + 2 * k + (n - l) + 1,
        HolPsiKLR | TwirPsiKLR => du + 2 * k + (r - l) + 1,
        TwirZeroPsiK => du + k + 1,
        TwirZeroZeta => du + n,
        TwirZeroPsiKZeta => du + k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;
    use crate::liealg::{commutes_with_j, is_in_so};

    fn j1() -> UElem {
        UElem::j_range(1, 1, 1)
    }

    #[test]
    fn u11_has_dimension_three() {
        let g = u1n1(0).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(is_in_so(&g) && commutes_with_j(&g).unwrap() && g.is_bracket_closed());
    }

    #[test]
    fn u1n1_and_su1n1_dimensions() {
        for n in 0..=3 {
            let u = u1n1(n).unwrap();
            let su = su1n1(n).unwrap();
            assert_eq!(u.dim(), n * n + 2 * n + 3);
            assert_eq!(su.dim(), n * n + 2 * n + 2);
            assert!(u.is_bracket_closed() && su.is_bracket_closed());
            assert!(su.is_subalgebra_of(&u));
            assert!(is_in_so(&u) && commutes_with_j(&u).unwrap());
            assert!(u.contains(&gen_i0(n)));
            assert!(su.contains(&gen_i0(n)));
        }
    }

    #[test]
    fn n0_hol2_matches_block_form() {
        let g = build_algebra(&FamilySpec::new(FamilyId::HolN0Two, 0)).unwrap();
        let x = Matrix::from_i64(&[
            &[1, -2, 0, 0],
            &[2, 1, 0, 0],
            &[0, 0, -1, -2],
            &[0, 0, 2, -1],
        ]);
        assert_eq!(g.dim(), 2);
        assert!(g.contains(&x));
    }

    #[test]
    fn lorentz2_with_rho_so3_has_dimension_eight() {
        let mut s = FamilySpec::new(FamilyId::Lorentz2, 5);
        let (eta_e, h) = super::super::generators::rho_so3_rational();
        s.eta_e = Some(eta_e);
        s.h_basis = h;
        let g = build_algebra(&s).unwrap();
        assert_eq!(g.dim(), 8);
        assert!(is_in_so(&g) && g.is_bracket_closed());
    }

    #[test]
    fn violated_k_le_l_is_reported() {
        let mut s = FamilySpec::new(FamilyId::HolPsiKLR, 3);
        s.k = 2;
        s.l = 1;
        s.m = 2;
        s.r = 2;
        match build_algebra(&s) {
            Err(Error::Constraint(msg)) => assert!(msg.contains("k ≤ l")),
            other => panic!("expected a constraint error, got {other:?}"),
        }
    }

    #[test]
    fn hol_families_are_closed_unitary_and_of_expected_dimension() {
        let mut specs = Vec::new();
        for n in 1..=2usize {
            for m in 0..=n {
                let mut us: Vec<Vec<UElem>> = vec![vec![]];
                if m >= 1 {
                    us.push(vec![UElem::j_range(m, 1, m)]);
                }
                if m == 1 {
                    us.push(u_m_basis(1));
                }
                for u in us {
                    for fam in [
                        FamilyId::HolA1A2Tilde,
                        FamilyId::HolA1PhiHat,
                        FamilyId::HolPhiPhiHat,
                        FamilyId::HolPhiA2Tilde,
                        FamilyId::HolLambda,
                    ] {
                        let mut s = FamilySpec::new(fam, n);
                        s.m = m;
                        s.u_basis = u.clone();
                        s.phi = vec![qi(1); u.len()];
                        s.phi_hat = vec![qi(-2); u.len()];
                        s.lambda = qi(3);
                        specs.push(s);
                    }
                }
            }
        }
        for s in specs {
            let g = build_algebra(&s).unwrap();
            assert_eq!(g.dim(), expected_dim(&s), "{}", s.label());
            assert!(g.is_bracket_closed(), "{}", s.label());
            assert!(
                is_in_so(&g) && commutes_with_j(&g).unwrap(),
                "{}",
                s.label()
            );
            assert!(g.is_subalgebra_of(&u1n1(s.n).unwrap()));
        }
    }

    #[test]
    fn psi_families_build() {
        let mut s = FamilySpec::new(FamilyId::HolPsiKL, 2);
        s.k = 1;
        s.l = 1;
        s.u_basis = vec![j1()];
        s.psi = vec![vec![qi(1)]];
        let g = build_algebra(&s).unwrap();
        assert_eq!(g.dim(), expected_dim(&s));
        assert!(g.is_bracket_closed());

        let mut s = FamilySpec::new(FamilyId::HolPsiKLR, 2);
        s.k = 1;
        s.l = 1;
        s.m = 1;
        s.r = 1;
        s.u_basis = vec![j1()];
        s.psi = vec![vec![qi(2)]];
        let g = build_algebra(&s).unwrap();
        assert_eq!(g.dim(), expected_dim(&s));
        assert!(g.is_bracket_closed() && commutes_with_j(&g).unwrap());

        s.psi = vec![vec![qi(0)]];
        assert!(matches!(build_algebra(&s), Err(Error::Constraint(_))));
    }

    #[test]
    fn twir_families_lie_in_su() {
        let su = su1n1(1).unwrap();
        let mut a1 = FamilySpec::new(FamilyId::TwirA1, 1);
        a1.m = 1;
        a1.u_basis = vec![twisted_j(1, 1)];
        let g = build_algebra(&a1).unwrap();
        assert!(g.is_subalgebra_of(&su) && g.is_bracket_closed());
        assert_eq!(g.dim(), expected_dim(&a1));

        let mut z = FamilySpec::new(FamilyId::TwirZeroZeta, 2);
        z.u_basis = sod_basis(2, 1, 2);
        z.zeta = vec![qi(1)];
        let g = build_algebra(&z).unwrap();
        assert!(g.is_subalgebra_of(&su1n1(2).unwrap()) && g.is_bracket_closed());
        assert_eq!(g.dim(), expected_dim(&z));
    }

    #[test]
    fn family_ids_round_trip() {
        for f in FamilyId::all() {
            assert_eq!(FamilyId::parse(f.name()).unwrap(), f);
        }
        assert_eq!(FamilyId::parse("n0-gamma").unwrap(), FamilyId::HolN0Gamma);
        let s = FamilySpec::new(FamilyId::HolLambda, 1);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&j).unwrap(), s);
    }
}
