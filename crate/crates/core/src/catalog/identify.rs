//! Identification of a computed algebra with a catalog family, by exact equality in the
//! standard frame.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{qi, Q};
use crate::liealg::MatrixLieAlgebra;
use crate::linalg::{solve, Matrix, Subspace};

use super::families::{build_algebra, so_basis, twisted_j, u_m_basis, FamilyId, FamilySpec, UElem};
use super::frame::{FrameCase, StandardFrame};
use super::generators::{g2_generators, spin7_generators};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Identification {
    Exact { family: FamilySpec, label: String },
    Unknown { candidates_tried: usize },
}

impl Identification {
    pub fn family(&self) -> Option<&FamilySpec> {
        match self {
            Identification::Exact { family, .. } => Some(family),
            Identification::Unknown { .. } => None,
        }
    }
}

const SCALARS: [i64; 4] = [1, -1, 2, 0];

/// `u ∈ {0, ℝJ_m, u(m)}`; `u(1) = ℝJ₁`.
fn u_choices(m: usize) -> Vec<Vec<UElem>> {
    let mut out = vec![vec![]];
    if m >= 1 {
        out.push(vec![UElem::j_range(m, 1, m)]);
    }
    if m >= 2 {
        out.push(u_m_basis(m));
    }
    out
}

fn with(family: FamilyId, n: usize, f: impl FnOnce(&mut FamilySpec)) -> FamilySpec {
    let mut s = FamilySpec::new(family, n);
    f(&mut s);
    s
}

/// Scalar maps on a `len`-dimensional `u`: every value in `SCALARS` when `len = 1`,
/// otherwise zero, the all-ones map and the coordinate functionals.
fn scalar_vectors(len: usize) -> Vec<Vec<Q>> {
    match len {
        0 => vec![vec![]],
        1 => SCALARS.iter().map(|&s| vec![qi(s)]).collect(),
        _ => {
            let mut out = vec![vec![Q::zero(); len], vec![Q::one(); len]];
            out.extend((0..len).map(|i| {
                (0..len)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            }));
            out
        }
    }
}

fn pk_sweep(n: usize) -> Vec<FamilySpec> {
    use FamilyId::*;
    let mut out = Vec::new();
    if n == 0 {
        out.push(FamilySpec::new(HolN0One, 0));
        out.push(FamilySpec::new(HolN0Two, 0));
        for g1 in -2..=2 {
            for g2 in -2..=2 {
                out.push(with(HolN0Gamma, 0, |s| {
                    s.gamma1 = qi(g1);
                    s.gamma2 = qi(g2);
                }));
            }
        }
        out.push(FamilySpec::new(TwirC, 0));
        out.push(FamilySpec::new(TwirSu11, 0));
        return out;
    }
    for m in 0..=n {
        for u in u_choices(m) {
            let d = u.len();
            out.push(with(HolA1A2Tilde, n, |s| {
                s.m = m;
                s.u_basis = u.clone();
            }));
            for phi_hat in scalar_vectors(d) {
                out.push(with(HolA1PhiHat, n, |s| {
                    s.m = m;
                    s.u_basis = u.clone();
                    s.phi_hat = phi_hat.clone();
                }));
            }
            for phi in scalar_vectors(d) {
                out.push(with(HolPhiA2Tilde, n, |s| {
                    s.m = m;
                    s.u_basis = u.clone();
                    s.phi = phi.clone();
                }));
                for phi_hat in scalar_vectors(d) {
                    out.push(with(HolPhiPhiHat, n, |s| {
                        s.m = m;
                        s.u_basis = u.clone();
                        s.phi = phi.clone();
                        s.phi_hat = phi_hat.clone();
                    }));
                }
            }
            for l in [-2, -1, 1, 2] {
                out.push(with(HolLambda, n, |s| {
                    s.m = m;
                    s.u_basis = u.clone();
                    s.lambda = qi(l);
                }));
            }
        }
    }
    for k in 1..=n {
        for l in k..=n {
            for u in u_choices(k) {
                let target = 2 * (l - k) + (n - l);
                for psi in psi_values(u.len(), target) {
                    out.push(with(HolPsiKL, n, |s| {
                        (s.k, s.l) = (k, l);
                        s.u_basis = u.clone();
                        s.psi = psi.clone();
                    }));
                }
            }
        }
    }
    for m in 0..=n {
        out.push(with(TwirA1, n, |s| s.m = m));
        if m >= 1 {
            let h = vec![twisted_j(n, m)];
            out.push(with(TwirA1, n, |s| {
                s.m = m;
                s.u_basis = h.clone();
            }));
            for phi in scalar_vectors(1) {
                out.push(with(TwirPhi, n, |s| {
                    s.m = m;
                    s.u_basis = h.clone();
                    s.phi = phi.clone();
                }));
            }
        }
    }
    out
}

/// Values of `ψ` on a `d`-dimensional `u` for a target of dimension `target ≤ d`.
fn psi_values(d: usize, target: usize) -> Vec<Vec<Vec<Q>>> {
    if target > d || d == 0 {
        return if target == 0 && d == 0 {
            vec![vec![]]
        } else {
            vec![]
        };
    }
    let units: Vec<Vec<Q>> = (0..=target)
        .map(|i| {
            (0..target)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    (0..d).fold(vec![vec![]], |acc: Vec<Vec<Vec<Q>>>, _| {
        acc.into_iter()
            .flat_map(|v| {
                units.iter().map(move |u| {
                    let mut w = v.clone();
                    w.push(u.clone());
                    w
                })
            })
            .collect()
    })
}

fn lorentz_sweep(n: usize) -> Vec<FamilySpec> {
    let mut hs: Vec<Vec<Matrix>> = vec![vec![]];
    if n >= 2 {
        hs.push(so_basis(n));
    }
    if n == 7 {
        hs.push(g2_generators());
    }
    if n == 8 {
        hs.push(spin7_generators());
    }
    let mut out = Vec::new();
    for h in hs {
        for fam in [FamilyId::Lorentz1, FamilyId::Lorentz2] {
            out.push(with(fam, n, |s| s.h_basis = h.clone()));
        }
    }
    out
}

/// The bounded default sweep: `n ≤ 2` for pseudo-Kähler frames (every `hol` family,
/// `u ∈ {0, ℝJ_m, u(m)}`, `γ ∈ [−2, 2]²`, small maps), and `h ∈ {0, so(n), g₂, spin(7)}`
/// for Lorentzian frames.
pub fn default_sweep(frame: &StandardFrame) -> Vec<FamilySpec> {
    match frame.case() {
        FrameCase::PseudoKaehler(n) if *n <= 2 => pk_sweep(*n),
        FrameCase::PseudoKaehler(_) => Vec::new(),
        FrameCase::Lorentz(n) => lorentz_sweep(*n),
    }
}

/// Lorentzian candidates built from the algebra itself: `h = pr_{so(n)} g`, and for type 3
/// the map `φ` read off the `p`-diagonal.
pub fn projection_candidates(alg: &MatrixLieAlgebra) -> Vec<FamilySpec> {
    let d = alg.n();
    if d < 2 {
        return Vec::new();
    }
    let n = d - 2;
    let eta = alg.ambient().eta();
    let mut eta_e = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            eta_e[(i, j)] = eta[(1 + i, 1 + j)].clone();
        }
    }
    let projs: Vec<Vec<Q>> = alg
        .basis()
        .iter()
        .map(|b| {
            (0..n)
                .flat_map(|i| (0..n).map(move |j| b[(1 + i, 1 + j)].clone()))
                .collect()
        })
        .collect();
    let Ok(h_span) = Subspace::span(n * n, projs.clone()) else {
        return Vec::new();
    };
    let h: Vec<Matrix> = h_span
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(n, v))
        .collect();
    let eta_e = (eta_e != Matrix::identity(n)).then_some(eta_e);
    let mut out = Vec::new();
    for fam in [FamilyId::Lorentz1, FamilyId::Lorentz2] {
        out.push(with(fam, n, |s| {
            s.h_basis = h.clone();
            s.eta_e = eta_e.clone();
        }));
    }
    if !h.is_empty() && !alg.basis().is_empty() {
        let cols = Matrix::from_rows(projs.clone()).map(|m| m.transpose());
        if let Ok(cols) = cols {
            let a: Vec<Q> = alg.basis().iter().map(|b| b[(0, 0)].clone()).collect();
            let phi: Option<Vec<Q>> = h_span
                .basis()
                .iter()
                .map(|v| solve(&cols, v).map(|c| c.iter().zip(&a).map(|(x, y)| x * y).sum()))
                .collect();
            if let Some(phi) = phi {
                out.push(with(FamilyId::Lorentz3, n, |s| {
                    s.h_basis = h.clone();
                    s.eta_e = eta_e.clone();
                    s.phi = phi.clone();
                }));
            }
        }
    }
    out
}

/// First candidate whose algebra equals `alg`; Lorentzian frames also try
/// [`projection_candidates`] after the sweep.
pub fn identify(
    alg: &MatrixLieAlgebra,
    frame: &StandardFrame,
    sweep: &[FamilySpec],
) -> Result<Identification> {
    if alg.ambient().eta() != frame.eta() {
        return Err(Error::Dimension(
            "algebra ambient does not match the frame".into(),
        ));
    }
    let extra = match frame.case() {
        FrameCase::Lorentz(_) => projection_candidates(alg),
        FrameCase::PseudoKaehler(_) => Vec::new(),
    };
    let target = alg.subspace();
    let mut tried = 0;
    for spec in sweep.iter().chain(extra.iter()) {
        let Ok(cand) = build_algebra(spec) else {
            continue;
        };
        tried += 1;
        if cand.ambient().eta() == frame.eta()
            && cand.dim() == alg.dim()
            && cand.subspace() == target
        {
            return Ok(Identification::Exact {
                family: spec.clone(),
                label: spec.label(),
            });
        }
    }
    Ok(Identification::Unknown {
        candidates_tried: tried,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::generators::rho_so3_rational;

    #[test]
    fn catalog_members_identify_as_themselves() {
        let f = StandardFrame::pseudo_kaehler(1);
        let sweep = default_sweep(&f);
        for fam in [
            FamilyId::HolA1A2Tilde,
            FamilyId::HolLambda,
            FamilyId::HolPhiPhiHat,
        ] {
            let mut s = FamilySpec::new(fam, 1);
            s.m = 1;
            s.lambda = qi(2);
            let alg = build_algebra(&s).unwrap();
            let id = identify(&alg, &f, &sweep).unwrap();
            let got = build_algebra(id.family().expect("identified")).unwrap();
            assert_eq!(got.subspace(), alg.subspace());
        }
    }

    #[test]
    fn n0_hol2_is_found() {
        let f = StandardFrame::pseudo_kaehler(0);
        let alg = build_algebra(&FamilySpec::new(FamilyId::HolN0Two, 0)).unwrap();
        let id = identify(&alg, &f, &default_sweep(&f)).unwrap();
        assert_eq!(id.family().unwrap().family, FamilyId::HolN0Two);
    }

    #[test]
    fn lorentz_projection_recovers_rho_so3() {
        let (eta_e, h) = rho_so3_rational();
        let mut s = FamilySpec::new(FamilyId::Lorentz2, 5);
        s.eta_e = Some(eta_e);
        s.h_basis = h;
        let alg = build_algebra(&s).unwrap();
        let f = s.frame().unwrap();
        let id = identify(&alg, &f, &default_sweep(&f)).unwrap();
        assert_eq!(id.family().unwrap().family, FamilyId::Lorentz2);
    }

    #[test]
    fn lorentz3_phi_is_read_off() {
        let mut s = FamilySpec::new(FamilyId::Lorentz3, 2);
        s.h_basis = so_basis(2);
        s.phi = vec![qi(3)];
        let alg = build_algebra(&s).unwrap();
        let f = s.frame().unwrap();
        let id = identify(&alg, &f, &[]).unwrap();
        let got = id.family().unwrap();
        assert_eq!(got.family, FamilyId::Lorentz3);
        assert_eq!(build_algebra(got).unwrap().subspace(), alg.subspace());
    }

    #[test]
    fn a_random_line_is_unknown() {
        let f = StandardFrame::pseudo_kaehler(1);
        let w = f.metric().wedge_e(f.p1(), f.e(1));
        let x = &w + &f.metric().wedge_e(f.e(1), f.f(1)).scale(&qi(3));
        let alg = MatrixLieAlgebra::from_span(f.metric().clone(), &[x]).unwrap();
        assert!(matches!(
            identify(&alg, &f, &default_sweep(&f)).unwrap(),
            Identification::Unknown { .. }
        ));
    }

    #[test]
    fn frame_mismatch_is_rejected() {
        let f0 = StandardFrame::pseudo_kaehler(0);
        let alg = build_algebra(&FamilySpec::new(FamilyId::HolN0Two, 0)).unwrap();
        assert!(identify(&alg, &StandardFrame::pseudo_kaehler(1), &[]).is_err());
        assert!(identify(&alg, &f0, &[]).is_ok());
    }
}
