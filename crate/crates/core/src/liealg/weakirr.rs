//! Weak irreducibility via eta-self-adjoint idempotents of the commutant.
//!
//! A proper non-degenerate invariant subspace is the image of an
//! eta-orthogonal projector lying in the commutant. Such projectors are
//! found as spectral projectors of self-adjoint commutant elements, whose
//! minimal polynomial is split into coprime factors over Q.

use nalgebra::DMatrix;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::upoly::UPoly;
use super::{is_in_so, self_adjoint_commutant, MatrixLieAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{to_f64, Q};
use crate::linalg::{combine, EchelonBasis, Matrix, Subspace};

const RANDOM_TRIES: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub enum WeakIrreducibility {
    WeaklyIrreducible,
    ReducibleWitness(Subspace),
    Inconclusive(Heuristic),
}

/// Floating-point annotation for inconclusive runs. Never authoritative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Heuristic {
    pub eigenvalues: Vec<(f64, f64)>,
    pub distinct_clusters: usize,
    pub suggests_reducible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeakIrrReport {
    pub verdict: WeakIrreducibility,
    pub seed: u64,
    pub self_adjoint_commutant_dim: usize,
    pub candidates_tried: usize,
    /// True when the verdict does not rest on a random choice.
    pub certified: bool,
}

pub fn weak_irreducibility(alg: &MatrixLieAlgebra) -> Result<WeakIrreducibility> {
    weak_irreducibility_seeded(alg, 0).map(|r| r.verdict)
}

pub fn weak_irreducibility_seeded(alg: &MatrixLieAlgebra, seed: u64) -> Result<WeakIrrReport> {
    if !is_in_so(alg) {
        return Err(Error::NotInSo(
            "weak irreducibility needs an eta-skew algebra".into(),
        ));
    }
    let n = alg.n();
    let s = self_adjoint_commutant(alg);
    let report = |verdict, tried, certified| WeakIrrReport {
        verdict,
        seed,
        self_adjoint_commutant_dim: s.dim(),
        candidates_tried: tried,
        certified,
    };
    if s.dim() <= 1 {
        return Ok(report(WeakIrreducibility::WeaklyIrreducible, 0, true));
    }
    let mut tried = 0;
    for v in s.basis() {
        tried += 1;
        if let Split::Witness(w) = split(&Matrix::from_flat(n, v)) {
            return Ok(report(WeakIrreducibility::ReducibleWitness(w), tried, true));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..RANDOM_TRIES {
        tried += 1;
        let coeffs: Vec<Q> = (0..s.dim())
            .map(|_| Q::from_integer(rng.gen_range(-7i64..=7).into()))
            .collect();
        let x = Matrix::from_flat(n, &combine(s.basis(), &coeffs, n * n));
        match split(&x) {
            Split::Witness(w) => {
                return Ok(report(WeakIrreducibility::ReducibleWitness(w), tried, true));
            }
            Split::PrimaryLinear => {
                return Ok(report(WeakIrreducibility::WeaklyIrreducible, tried, false));
            }
            Split::Unresolved => last = Some(x),
        }
    }
    let h = heuristic(last.as_ref().expect("at least one random try"));
    Ok(report(WeakIrreducibility::Inconclusive(h), tried, false))
}

enum Split {
    Witness(Subspace),
    /// Single eigenvalue, rational.
    PrimaryLinear,
    /// Primary with an irreducible factor of degree ≥ 2, or no factor found.
    Unresolved,
}

fn split(x: &Matrix) -> Split {
    let m = minimal_polynomial(x);
    let sf = m.squarefree();
    let factors = rational_factors(&sf);
    // factor the minimal polynomial into coprime primary blocks
    let mut blocks: Vec<UPoly> = Vec::new();
    let mut rest = m.clone();
    for f in &factors {
        let mut block = UPoly::one();
        loop {
            let (q, r) = rest.divrem(f);
            if !r.is_zero() {
                break;
            }
            rest = q;
            block = block.mul(f);
        }
        blocks.push(block);
    }
    if rest.degree() > 0 {
        blocks.push(rest.monic());
    }
    if blocks.len() < 2 {
        return if sf.degree() == 1 {
            Split::PrimaryLinear
        } else {
            Split::Unresolved
        };
    }
    let n = x.rows();
    let mut best: Option<Subspace> = None;
    for (i, a) in blocks.iter().enumerate() {
        let b = blocks
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(UPoly::one(), |acc, (_, p)| acc.mul(p));
        let Some(h) = b.inverse_mod(a) else { continue };
        let p = b.mul(&h).divrem(&m).1.eval_matrix(x);
        let img = Subspace::span(n, p.transpose().to_rows()).unwrap();
        let better = match &best {
            None => true,
            Some(cur) => (img.dim(), img.pivots()) < (cur.dim(), cur.pivots()),
        };
        if better {
            best = Some(img);
        }
    }
    match best {
        Some(w) => Split::Witness(w),
        None => Split::Unresolved,
    }
}

/// Minimal polynomial by the first linear dependency among powers of `x`.
fn minimal_polynomial(x: &Matrix) -> UPoly {
    let n = x.rows();
    let mut powers = vec![Matrix::identity(n)];
    let mut ech = EchelonBasis::new(n * n);
    ech.insert(&powers[0].flatten());
    loop {
        let next = powers.last().unwrap() * x;
        if !ech.insert(&next.flatten()) {
            // next = Σ c_k x^k
            let k = powers.len();
            let mut a = Matrix::zeros(n * n, k);
            for (j, p) in powers.iter().enumerate() {
                for (i, v) in p.data().iter().enumerate() {
                    a[(i, j)] = v.clone();
                }
            }
            let c = crate::linalg::solve(&a, next.data()).expect("dependent power");
            let mut coeffs: Vec<Q> = c.into_iter().map(|v| -v).collect();
            coeffs.push(Q::one());
            return UPoly::new(coeffs);
        }
        powers.push(next);
    }
}

/// Linear and quadratic rational factors of a squarefree polynomial,
/// located numerically and confirmed by exact division.
fn rational_factors(sf: &UPoly) -> Vec<UPoly> {
    let d = sf.degree();
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![sf.monic()];
    }
    let roots = numeric_roots(sf);
    let mut found: Vec<UPoly> = Vec::new();
    let mut rest = sf.clone();
    let mut used = vec![false; roots.len()];
    for (i, &(re, im)) in roots.iter().enumerate() {
        if im.abs() > 1e-7 {
            continue;
        }
        if let Some(r) = rationalize(re) {
            let f = UPoly::linear(&r);
            if rest.eval(&r).is_zero() {
                rest = rest.divrem(&f).0;
                found.push(f);
                used[i] = true;
            }
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if used[i] || used[j] || rest.degree() < 2 {
                continue;
            }
            let (a, b) = (roots[i], roots[j]);
            let s = rationalize(a.0 + b.0);
            let p = rationalize(a.0 * b.0 - a.1 * b.1);
            let (Some(s), Some(p)) = (s, p) else { continue };
            if (a.1 + b.1).abs() > 1e-6 {
                continue;
            }
            let f = UPoly::quadratic(&s, &p);
            let (q, r) = rest.divrem(&f);
            if r.is_zero() {
                rest = q;
                found.push(f);
                used[i] = true;
                used[j] = true;
            }
        }
    }
    found
}

fn numeric_roots(p: &UPoly) -> Vec<(f64, f64)> {
    let m = p.monic();
    let d = m.degree();
    let mut c = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        c[(i, d - 1)] = -to_f64(&m.0[i]);
    }
    c.complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect()
}

/// Continued-fraction approximation with a bounded denominator.
fn rationalize(x: f64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        let ai = a.to_i128()?;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2.abs() > 1_000_000 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() < 1e-9 * x.abs().max(1.0) {
            return Some(Q::new(h1.into(), k1.into()));
        }
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0 && ((h1 as f64) / (k1 as f64) - x).abs() < 1e-9 * x.abs().max(1.0))
        .then(|| Q::new(h1.into(), k1.into()))
}

fn heuristic(x: &Matrix) -> Heuristic {
    let n = x.rows();
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| to_f64(&x[(i, j)]));
    let eig: Vec<(f64, f64)> = m
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    let mut clusters: Vec<(f64, f64)> = Vec::new();
    for &(re, im) in &eig {
        if !clusters
            .iter()
            .any(|&(a, b)| (a - re).abs() < 1e-6 && (b - im.abs()).abs() < 1e-6)
        {
            clusters.push((re, im.abs()));
        }
    }
    Heuristic {
        distinct_clusters: clusters.len(),
        suggests_reducible: clusters.len() > 1,
        eigenvalues: eig,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::qi;
    use crate::liealg::{check_invariant_subspace, unit, InvariantVerdict, MetricStructure};

    #[test]
    fn rationalize_recovers_fractions() {
        assert_eq!(rationalize(0.75), Some(Q::new(3.into(), 4.into())));
        assert_eq!(rationalize(-2.0), Some(qi(-2)));
        assert_eq!(rationalize(1.0 / 3.0), Some(Q::new(1.into(), 3.into())));
    }

    #[test]
    fn minimal_polynomial_of_projector() {
        let mut p = Matrix::zeros(3, 3);
        p[(0, 0)] = qi(1);
        let m = minimal_polynomial(&p);
        assert_eq!(m, UPoly::new(vec![qi(0), qi(-1), qi(1)]));
    }

    #[test]
    fn block_rotation_is_reducible() {
        // so(2) acting on the first two coordinates of R^3
        let ms = MetricStructure::new(Matrix::identity(3), None).unwrap();
        let r = ms.wedge_e(0, 1);
        let alg = MatrixLieAlgebra::from_span(ms, &[r]).unwrap();
        let WeakIrreducibility::ReducibleWitness(w) = weak_irreducibility(&alg).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(w.basis(), &[unit(3, 2)]);
        assert_eq!(
            check_invariant_subspace(&alg, &w).unwrap(),
            InvariantVerdict::InvariantNonDegenerate
        );
    }

    #[test]
    fn rejects_non_skew() {
        let ms = MetricStructure::new(Matrix::identity(2), None).unwrap();
        let alg = MatrixLieAlgebra::from_span(ms, &[Matrix::identity(2)]).unwrap();
        assert!(weak_irreducibility(&alg).is_err());
    }
}
