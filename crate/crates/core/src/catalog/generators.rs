//! Explicit matrix data: `g₂ ⊂ so(7)`, `spin(7) ⊂ so(8)` and an irreducible `so(3) ⊂ so(5)`,
//! together with elements of their weak curvature spaces.

use crate::exactnum::{qr, Q};
use crate::linalg::Matrix;

use super::families::e_ij;

/// `Σ s·E_ij` for a list of `(sign, i, j)` in dimension `d`, 1-based.
fn combo(d: usize, terms: &[(i64, usize, usize)]) -> Matrix {
    terms.iter().fold(Matrix::zeros(d, d), |acc, &(s, i, j)| {
        &acc + &e_ij(d, i, j).scale(&Q::from_integer(s.into()))
    })
}

/// Basis `A_1 … A_14` of `g₂ ⊂ so(7)`.
pub fn g2_generators() -> Vec<Matrix> {
    let t: [[(i64, usize, usize); 2]; 14] = [
        [(1, 1, 2), (-1, 3, 4)],
        [(1, 1, 2), (-1, 5, 6)],
        [(1, 1, 3), (1, 2, 4)],
        [(1, 1, 3), (-1, 6, 7)],
        [(1, 1, 4), (-1, 2, 3)],
        [(1, 1, 4), (-1, 5, 7)],
        [(1, 1, 5), (1, 2, 6)],
        [(1, 1, 5), (1, 4, 7)],
        [(1, 1, 6), (-1, 2, 5)],
        [(1, 1, 6), (1, 3, 7)],
        [(1, 1, 7), (-1, 3, 6)],
        [(1, 1, 7), (-1, 4, 5)],
        [(1, 2, 7), (-1, 3, 5)],
        [(1, 2, 7), (1, 4, 6)],
    ];
    t.iter().map(|x| combo(7, x)).collect()
}

/// `P(e_1) … P(e_7)` for a nonzero element of the weak curvature space of `g₂`.
pub fn g2_p() -> Vec<Matrix> {
    let a = g2_generators();
    let z = Matrix::zeros(7, 7);
    let at = |i: usize| a[i - 1].clone();
    let _ = z;
    vec![
        at(6),
        &at(4) + &at(5),
        &at(1) + &at(7),
        at(1),
        at(4),
        &at(6) - &at(5),
        at(7),
    ]
}

/// Basis `A_1 … A_21` of `spin(7) ⊂ so(8)`.
pub fn spin7_generators() -> Vec<Matrix> {
    let t: [[(i64, usize, usize); 2]; 21] = [
        [(1, 1, 2), (1, 3, 4)],
        [(1, 1, 3), (-1, 2, 4)],
        [(1, 1, 4), (1, 2, 3)],
        [(1, 5, 6), (1, 7, 8)],
        [(-1, 5, 7), (1, 6, 8)],
        [(1, 5, 8), (1, 6, 7)],
        [(-1, 1, 5), (1, 2, 6)],
        [(1, 1, 2), (1, 5, 6)],
        [(1, 1, 6), (1, 2, 5)],
        [(1, 3, 7), (-1, 4, 8)],
        [(1, 3, 8), (1, 4, 7)],
        [(1, 1, 7), (1, 2, 8)],
        [(1, 1, 8), (-1, 2, 7)],
        [(1, 3, 5), (1, 4, 6)],
        [(1, 3, 6), (-1, 4, 5)],
        [(1, 1, 8), (1, 3, 6)],
        [(1, 1, 7), (1, 3, 5)],
        [(1, 2, 6), (-1, 4, 8)],
        [(1, 2, 5), (1, 3, 8)],
        [(1, 2, 3), (1, 6, 7)],
        [(1, 2, 4), (1, 5, 7)],
    ];
    t.iter().map(|x| combo(8, x)).collect()
}

/// `P(e_1) … P(e_8)` for a nonzero element of the weak curvature space of `spin(7)`.
pub fn spin7_p() -> Vec<Matrix> {
    let a = spin7_generators();
    let at = |i: usize| a[i - 1].clone();
    let z = Matrix::zeros(8, 8);
    vec![
        z.clone(),
        -&at(14),
        z,
        at(21),
        at(20),
        &at(21) - &at(18),
        &at(15) - &at(16),
        &at(14) - &at(17),
    ]
}

/// The irreducible `so(3) ⊂ so(5)` in coordinates where every entry is rational.
///
/// The Euclidean form becomes `diag(1, 1/3, 1, 1, 1)` after rescaling the second
/// coordinate by `√3`; the matrices are conjugated accordingly. The third matrix has
/// no `(3,5)` entry: with it the span is not closed under the bracket.
pub fn rho_so3_rational() -> (Matrix, Vec<Matrix>) {
    let mut eta_e = Matrix::identity(5);
    eta_e[(1, 1)] = qr(1, 3);
    let a1 = Matrix::from_i64(&[
        &[0, 0, -1, 0, 0],
        &[0, 0, 3, 0, 0],
        &[1, -1, 0, 0, 0],
        &[0, 0, 0, 0, -1],
        &[0, 0, 0, 1, 0],
    ]);
    let a2 = Matrix::from_i64(&[
        &[0, 0, 0, -4, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 0, 0, -2],
        &[4, 0, 0, 0, 0],
        &[0, 0, 2, 0, 0],
    ]);
    let a3 = Matrix::from_i64(&[
        &[0, 0, 0, 0, -1],
        &[0, 0, 0, 0, -3],
        &[0, 0, 0, -1, 0],
        &[0, 0, 1, 0, 0],
        &[1, 1, 0, 0, 0],
    ]);
    (eta_e, vec![a1, a2, a3])
}

/// `P(e_1) … P(e_5)` for the rescaled `so(3) ⊂ so(5)`; the first two values vanish.
pub fn rho_so3_p() -> Vec<Matrix> {
    let (_, a) = rho_so3_rational();
    let z = Matrix::zeros(5, 5);
    vec![z.clone(), z, a[0].clone(), a[1].clone(), a[2].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvspace::weak_curvature_space;
    use crate::liealg::{MatrixLieAlgebra, MetricStructure};

    fn euclid(d: usize) -> MetricStructure {
        MetricStructure::new(Matrix::identity(d), None).unwrap()
    }

    #[test]
    fn g2_is_a_14_dimensional_subalgebra() {
        let g = MatrixLieAlgebra::from_span(euclid(7), &g2_generators()).unwrap();
        assert_eq!(g.dim(), 14);
        assert!(g.is_bracket_closed());
    }

    #[test]
    fn spin7_is_a_21_dimensional_subalgebra() {
        let g = MatrixLieAlgebra::from_span(euclid(8), &spin7_generators()).unwrap();
        assert_eq!(g.dim(), 21);
        assert!(g.is_bracket_closed());
    }

    #[test]
    fn rho_so3_is_so3_in_the_rescaled_form() {
        let (eta_e, a) = rho_so3_rational();
        let ms = MetricStructure::new(eta_e, None).unwrap();
        for x in &a {
            assert!(ms.is_skew(x));
        }
        let g = MatrixLieAlgebra::from_span(ms, &a).unwrap();
        assert_eq!(g.dim(), 3);
        assert!(g.is_bracket_closed());
    }

    #[test]
    fn listed_p_maps_lie_in_the_weak_curvature_spaces() {
        let g2 = MatrixLieAlgebra::from_span(euclid(7), &g2_generators()).unwrap();
        assert!(weak_curvature_space(&g2).unwrap().contains(&g2_p()));
        let s7 = MatrixLieAlgebra::from_span(euclid(8), &spin7_generators()).unwrap();
        assert!(weak_curvature_space(&s7).unwrap().contains(&spin7_p()));
        let (eta_e, a) = rho_so3_rational();
        let h =
            MatrixLieAlgebra::from_span(MetricStructure::new(eta_e, None).unwrap(), &a).unwrap();
        assert!(weak_curvature_space(&h).unwrap().contains(&rho_so3_p()));
    }
}
