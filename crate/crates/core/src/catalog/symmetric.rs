//! Symmetric pairs `(hol, R)` of pseudo-Kähler symmetric spaces of index 2.

use serde::Serialize;

use crate::curvspace::{annihilation, CurvatureTensor};
use crate::error::{Error, Result};
use crate::exactnum::{qi, qr, Q};
use crate::liealg::MatrixLieAlgebra;
use crate::linalg::Matrix;

use super::families::{build_algebra, FamilyId, FamilySpec};
use super::frame::{FrameCase, StandardFrame};

/// Curvature tensors named after their defining parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum SymTensor {
    /// `R(q₁∧q₂) = λ₅ p₁∧p₂`, any `n`.
    Lambda5(Q),
    /// `n = 0` only.
    Lambda1(Q),
    /// `n = 0` only.
    Lambda2(Q),
    /// `n = 1` only.
    M3E1,
    /// `R₁` with `0 ≤ m ≤ n`.
    R1 { m: usize },
}

fn pk_n(frame: &StandardFrame) -> Result<usize> {
    match frame.case() {
        FrameCase::PseudoKaehler(n) => Ok(*n),
        FrameCase::Lorentz(_) => Err(Error::Invalid(
            "symmetric pairs need a pseudo-Kähler frame".into(),
        )),
    }
}

fn need_n(frame: &StandardFrame, n: usize, what: &str) -> Result<()> {
    if pk_n(frame)? != n {
        return Err(Error::Invalid(format!(
            "{what} is defined for n = {n} only"
        )));
    }
    Ok(())
}

/// The listed nonzero values; the rest follow by antisymmetry.
pub fn theorem_sym_tensor(name: &SymTensor, frame: &StandardFrame) -> Result<CurvatureTensor> {
    let n = pk_n(frame)?;
    let w = |a: usize, b: usize| frame.metric().wedge_e(a, b);
    let (p1, p2, q1, q2) = (frame.p1(), frame.p2(), frame.q1(), frame.q2());
    let mut v: Vec<((usize, usize), Matrix)> = Vec::new();
    match name {
        SymTensor::Lambda5(l) => v.push(((q1, q2), w(p1, p2).scale(l))),
        SymTensor::Lambda1(l) => {
            need_n(frame, 0, "R_λ1")?;
            let s = (&w(p1, q1) + &w(p2, q2)).scale(l);
            let d = (&w(p1, q2) - &w(p2, q1)).scale(l);
            v.extend([
                ((p1, q1), s.clone()),
                ((p2, q2), s),
                ((p1, q2), d.clone()),
                ((p2, q1), -&d),
            ]);
        }
        SymTensor::Lambda2(l) => {
            need_n(frame, 0, "R_λ2")?;
            let s = (&w(p1, q1) + &w(p2, q2)).scale(l);
            let d = (&w(p1, q2) - &w(p2, q1)).scale(l);
            v.extend([
                ((p1, q1), d.clone()),
                ((p2, q2), d),
                ((p1, q2), -&s),
                ((p2, q1), s),
            ]);
        }
        SymTensor::M3E1 => {
            need_n(frame, 1, "R_M3(1)=e1")?;
            let (e, f) = (frame.e(1), frame.f(1));
            v.push(((q1, q2), &w(p1, e) + &w(p2, f)));
            v.push(((q1, e), w(p1, p2)));
            v.push(((q2, f), w(p1, p2)));
        }
        SymTensor::R1 { m } => {
            let m = *m;
            if m > n {
                return Err(Error::Constraint(format!(
                    "m ≤ n violated (m = {m}, n = {n})"
                )));
            }
            let pp = w(p1, p2);
            v.push(((p1, q2), pp.scale(&qi(-2))));
            v.push(((p2, q1), pp.scale(&qi(2))));
            let j = frame.j().expect("pseudo-Kähler frame has J");
            let mut jm = Matrix::zeros(frame.dim(), frame.dim());
            for i in 1..=m {
                let (e, f) = (frame.e(i), frame.f(i));
                jm[(f, e)] = qi(1);
                jm[(e, f)] = qi(-1);
            }
            v.push(((q1, q2), &jm - &j.scale(&qi(2))));
            let half = qr(1, 2);
            for i in 1..=n {
                let (e, f) = (frame.e(i), frame.f(i));
                let n1 = &w(p1, e) + &w(p2, f);
                if i <= m {
                    let n2 = &w(p1, f) - &w(p2, e);
                    v.push(((e, f), -&pp));
                    v.push(((q1, e), n1.scale(&-&half)));
                    v.push(((q2, f), n1.scale(&-&half)));
                    v.push(((q2, e), n2.scale(&half)));
                    v.push(((q1, f), n2.scale(&-&half)));
                } else {
                    v.push(((e, f), pp.scale(&qi(-2))));
                    v.push(((q1, e), n1.scale(&qi(-2))));
                    v.push(((q2, f), n1.scale(&qi(-2))));
                }
            }
        }
    }
    CurvatureTensor::from_values(frame.dim(), v)
}

/// `Ric(X, Y) = −½ tr(J ∘ R(X, JY))` on frame vectors.
pub fn ricci(r: &CurvatureTensor, frame: &StandardFrame) -> Result<Matrix> {
    let j = frame.j().ok_or(Error::NoComplexStructure)?;
    let d = frame.dim();
    if r.dim() != d {
        return Err(Error::Dimension(
            "tensor and frame differ in dimension".into(),
        ));
    }
    let mut ric = Matrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let jb: Vec<Q> = (0..d).map(|i| j[(i, b)].clone()).collect();
            let t = (j * &r.apply(&frame.vector(a), &jb)).trace();
            ric[(a, b)] = -(t * qr(1, 2));
        }
    }
    Ok(ric)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricPairReport {
    /// `R` takes values in `hol` and is annihilated by it.
    pub in_r0: bool,
    /// The span of the values of `R` equals `hol`.
    pub image_is_hol: bool,
    pub hol_dim: usize,
    pub image_dim: usize,
    /// First bivector whose value leaves `hol`.
    pub value_outside: Option<(usize, usize)>,
    /// First basis element of `hol` (by index) that does not annihilate `R`.
    pub not_annihilating: Option<usize>,
}

pub fn verify_symmetric_pair(
    hol: &MatrixLieAlgebra,
    r: &CurvatureTensor,
) -> Result<SymmetricPairReport> {
    if hol.n() != r.dim() {
        return Err(Error::Dimension(
            "algebra and tensor differ in dimension".into(),
        ));
    }
    let value_outside = r.values().find(|(_, m)| !hol.contains(m)).map(|(p, _)| p);
    let not_annihilating = hol
        .basis()
        .iter()
        .position(|a| annihilation(r, a).iter().any(|m| !m.is_zero()));
    let image = r.image_span();
    Ok(SymmetricPairReport {
        in_r0: value_outside.is_none() && not_annihilating.is_none(),
        image_is_hol: image == hol.subspace(),
        hol_dim: hol.dim(),
        image_dim: image.dim(),
        value_outside,
        not_annihilating,
    })
}

/// `hol₁ = ℝ p₁∧p₂` for `n = 0`.
pub fn hol1() -> Result<MatrixLieAlgebra> {
    build_algebra(&FamilySpec::new(FamilyId::HolN0Gamma, 0))
}

/// `𝒜¹ ⊕ 𝒜²` for `n = 0`.
pub fn hol1c() -> Result<MatrixLieAlgebra> {
    build_algebra(&FamilySpec::new(FamilyId::HolN0Two, 0))
}

/// `ℝ(p₁∧e₁ + p₂∧f₁) ⊕ ℝ p₁∧p₂` for `n = 1`.
pub fn hol2() -> Result<MatrixLieAlgebra> {
    let mut s = FamilySpec::new(FamilyId::HolPhiPhiHat, 1);
    s.m = 0;
    build_algebra(&s)
}

/// `ℝ(2J − J_m) ⋉ (N¹ + N²_{1..m} + ℝ p₁∧p₂)`.
pub fn hol3(m: usize, n: usize) -> Result<MatrixLieAlgebra> {
    if m > n {
        return Err(Error::Constraint(format!(
            "m ≤ n violated (m = {m}, n = {n})"
        )));
    }
    let frame = StandardFrame::pseudo_kaehler(n);
    let w = |a: usize, b: usize| frame.metric().wedge_e(a, b);
    let (p1, p2) = (frame.p1(), frame.p2());
    let mut rot = frame.j().expect("pseudo-Kähler frame has J").scale(&qi(2));
    for i in 1..=m {
        let (e, f) = (frame.e(i), frame.f(i));
        rot[(f, e)] = qi(1);
        rot[(e, f)] = qi(-1);
    }
    let mut gens = vec![rot, w(p1, p2)];
    for i in 1..=n {
        let (e, f) = (frame.e(i), frame.f(i));
        gens.push(&w(p1, e) + &w(p2, f));
        if i <= m {
            gens.push(&w(p1, f) - &w(p2, e));
        }
    }
    MatrixLieAlgebra::from_span(frame.metric().clone(), &gens)
}

/// The pairs listed in the classification, by item label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymPair {
    P1a,
    P1b,
    P1c,
    P1d,
    P1e,
    P2,
    P3,
    P4,
}

impl SymPair {
    pub const ALL: [SymPair; 8] = [
        SymPair::P1a,
        SymPair::P1b,
        SymPair::P1c,
        SymPair::P1d,
        SymPair::P1e,
        SymPair::P2,
        SymPair::P3,
        SymPair::P4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SymPair::P1a => "1a",
            SymPair::P1b => "1b",
            SymPair::P1c => "1c",
            SymPair::P1d => "1d",
            SymPair::P1e => "1e",
            SymPair::P2 => "2",
            SymPair::P3 => "3",
            SymPair::P4 => "4",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown symmetric pair '{s}' (expected 1a … 1e, 2, 3, 4)"
                ))
            })
    }

    /// Builds `(frame, hol, R)`; `m`, `n`, `λ₅` are used by items 3 and 4 only.
    pub fn build(
        self,
        m: usize,
        n: usize,
        lambda5: &Q,
    ) -> Result<(StandardFrame, MatrixLieAlgebra, CurvatureTensor)> {
        let f0 = StandardFrame::pseudo_kaehler(0);
        let t = theorem_sym_tensor;
        Ok(match self {
            SymPair::P1a => (f0.clone(), hol1()?, t(&SymTensor::Lambda5(qi(1)), &f0)?),
            SymPair::P1b => (f0.clone(), hol1()?, t(&SymTensor::Lambda5(qi(-1)), &f0)?),
            SymPair::P1c => (
                f0.clone(),
                hol1c()?,
                t(&SymTensor::Lambda1(qr(-1, 2)), &f0)?,
            ),
            SymPair::P1d => (f0.clone(), hol1c()?, t(&SymTensor::Lambda1(qi(1)), &f0)?),
            SymPair::P1e => (f0.clone(), hol1c()?, t(&SymTensor::Lambda2(qi(1)), &f0)?),
            SymPair::P2 => {
                let f1 = StandardFrame::pseudo_kaehler(1);
                let r = t(&SymTensor::M3E1, &f1)?;
                (f1, hol2()?, r)
            }
            SymPair::P3 | SymPair::P4 => {
                let f = StandardFrame::pseudo_kaehler(n);
                let r =
                    t(&SymTensor::R1 { m }, &f)?.add(&t(&SymTensor::Lambda5(lambda5.clone()), &f)?);
                let r = if self == SymPair::P4 {
                    r.scale(&qi(-1))
                } else {
                    r
                };
                (f, hol3(m, n)?, r)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvspace::invariant_curvature_space;

    #[test]
    fn lambda5_has_a_single_value() {
        let f = StandardFrame::pseudo_kaehler(0);
        let r = theorem_sym_tensor(&SymTensor::Lambda5(qi(1)), &f).unwrap();
        let nonzero: Vec<_> = r
            .values()
            .filter(|(_, m)| !m.is_zero())
            .map(|(p, _)| p)
            .collect();
        assert_eq!(nonzero, vec![(2, 3)]);
        assert_eq!(r.value(2, 3), f.metric().wedge_e(0, 1));
    }

    #[test]
    fn r1_with_m_n_zero_lives_on_p1q2_and_q1q2() {
        let f = StandardFrame::pseudo_kaehler(0);
        let r = theorem_sym_tensor(&SymTensor::R1 { m: 0 }, &f).unwrap();
        let nonzero: Vec<_> = r
            .values()
            .filter(|(_, m)| !m.is_zero())
            .map(|(p, _)| p)
            .collect();
        assert_eq!(nonzero, vec![(0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn every_listed_pair_is_symmetric() {
        for p in SymPair::ALL {
            for (m, n) in [(0, 0), (0, 1), (1, 1), (1, 2)] {
                let (_, hol, r) = p.build(m, n, &qi(3)).unwrap();
                let rep = verify_symmetric_pair(&hol, &r).unwrap();
                assert!(
                    rep.in_r0 && rep.image_is_hol,
                    "{} (m={m}, n={n}): {rep:?}",
                    p.name()
                );
            }
        }
    }

    #[test]
    fn invariant_space_dimensions() {
        assert_eq!(
            invariant_curvature_space(&hol1().unwrap()).unwrap().dim(),
            1
        );
        assert_eq!(
            invariant_curvature_space(&hol2().unwrap()).unwrap().dim(),
            2
        );
        assert_eq!(
            invariant_curvature_space(&hol1c().unwrap()).unwrap().dim(),
            2
        );
    }

    #[test]
    fn ricci_values() {
        for (m, n) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)] {
            let f = StandardFrame::pseudo_kaehler(n);
            let r = theorem_sym_tensor(&SymTensor::R1 { m }, &f).unwrap();
            let ric = ricci(&r, &f).unwrap();
            let want = qi(m as i64 - 2 * n as i64 - 4);
            assert_eq!(ric[(f.q1(), f.q1())], want);
            assert_eq!(ric[(f.q2(), f.q2())], want);
            assert_eq!(ric.transpose(), ric);
        }
        let f = StandardFrame::pseudo_kaehler(0);
        let r = theorem_sym_tensor(&SymTensor::Lambda1(qr(3, 4)), &f).unwrap();
        let ric = ricci(&r, &f).unwrap();
        assert_eq!(ric[(0, 2)], qr(3, 2));
        assert_eq!(ric[(1, 3)], qr(3, 2));
        let r = theorem_sym_tensor(&SymTensor::Lambda2(qi(1)), &f).unwrap();
        let ric = ricci(&r, &f).unwrap();
        assert_eq!((ric[(1, 2)].clone(), ric[(0, 3)].clone()), (qi(2), qi(-2)));
        assert!(ricci(&CurvatureTensor::zero(4), &f).unwrap().is_zero());
    }

    #[test]
    fn hol3_matches_the_phi_phi_hat_family() {
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let mut s = FamilySpec::new(FamilyId::HolPhiPhiHat, n);
            s.m = m;
            s.u_basis = vec![crate::catalog::UElem::j_range(m, 1, m)];
            s.phi = vec![qi(0)];
            s.phi_hat = vec![qi(2)];
            assert_eq!(
                hol3(m, n).unwrap().subspace(),
                build_algebra(&s).unwrap().subspace()
            );
        }
    }

    #[test]
    fn zero_tensor_does_not_generate_hol1() {
        let rep = verify_symmetric_pair(&hol1().unwrap(), &CurvatureTensor::zero(4)).unwrap();
        assert!(rep.in_r0);
        assert!(!rep.image_is_hol);
    }

    #[test]
    fn frame_mismatch_is_an_error() {
        let f = StandardFrame::pseudo_kaehler(1);
        assert!(theorem_sym_tensor(&SymTensor::Lambda1(qi(1)), &f).is_err());
        assert!(theorem_sym_tensor(&SymTensor::M3E1, &StandardFrame::pseudo_kaehler(0)).is_err());
        assert!(theorem_sym_tensor(&SymTensor::R1 { m: 2 }, &f).is_err());
    }

    #[test]
    fn pair_names_round_trip() {
        for p in SymPair::ALL {
            assert_eq!(SymPair::parse(p.name()).unwrap(), p);
        }
        assert!(SymPair::parse("5").is_err());
    }

    #[test]
    fn ricci_needs_j() {
        let f = StandardFrame::lorentz(1);
        assert!(ricci(&CurvatureTensor::zero(3), &f).is_err());
    }
}
