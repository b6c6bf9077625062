use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Q;
use crate::liealg::MetricStructure;
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "case", content = "n")]
pub enum FrameCase {
    /// Basis `p, e_1…e_n, q`.
    Lorentz(usize),
    /// Basis `p_1, p_2, e_1…e_n, f_1…f_n, q_1, q_2`.
    PseudoKaehler(usize),
}

/// The standard isotropic frame with its Gram matrix and complex structure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StandardFrame {
    case: FrameCase,
    metric: MetricStructure,
}

impl StandardFrame {
    pub fn lorentz(n: usize) -> Self {
        Self::lorentz_with(Matrix::identity(n)).expect("identity is a valid Euclidean form")
    }

    /// Lorentz frame whose `e`-block carries the Gram matrix `eta_e`.
    pub fn lorentz_with(eta_e: Matrix) -> Result<Self> {
        if !eta_e.is_symmetric() {
            return Err(Error::Invalid("eta_e must be square and symmetric".into()));
        }
        let n = eta_e.rows();
        let mut eta = Matrix::zeros(n + 2, n + 2);
        eta[(0, n + 1)] = Q::from_integer(1.into());
        eta[(n + 1, 0)] = Q::from_integer(1.into());
        eta_e.place_into(&mut eta, 1, 1);
        Ok(StandardFrame {
            case: FrameCase::Lorentz(n),
            metric: MetricStructure::new(eta, None)?,
        })
    }

    pub fn pseudo_kaehler(n: usize) -> Self {
        let d = 2 * n + 4;
        let one = Q::from_integer(1.into());
        let mut eta = Matrix::zeros(d, d);
        let mut j = Matrix::zeros(d, d);
        let (q1, q2) = (2 * n + 2, 2 * n + 3);
        for (a, b) in [(0, q1), (1, q2)] {
            eta[(a, b)] = one.clone();
            eta[(b, a)] = one.clone();
        }
        for i in 2..2 * n + 2 {
            eta[(i, i)] = one.clone();
        }
        // J p1 = p2, J e_i = f_i, J q1 = q2
        let mut pairs = vec![(0, 1), (q1, q2)];
        pairs.extend((0..n).map(|i| (2 + i, 2 + n + i)));
        for (a, b) in pairs {
            j[(b, a)] = one.clone();
            j[(a, b)] = -one.clone();
        }
        StandardFrame {
            case: FrameCase::PseudoKaehler(n),
            metric: MetricStructure::new(eta, Some(j)).expect("standard frame is valid"),
        }
    }

    pub fn build(case: &FrameCase) -> Self {
        match *case {
            FrameCase::Lorentz(n) => Self::lorentz(n),
            FrameCase::PseudoKaehler(n) => Self::pseudo_kaehler(n),
        }
    }

    /// The standard frame whose `η` is `eta`: pseudo-Kähler if `eta` is exactly the
    /// pseudo-Kähler form, otherwise Lorentzian if `p = 0` and `q = dim − 1` are null with
    /// `η(p, q) = 1` and orthogonal to the middle block.
    pub fn recognize(eta: &Matrix) -> Option<Self> {
        let d = eta.rows();
        if d >= 4 && d.is_multiple_of(2) {
            let f = Self::pseudo_kaehler((d - 4) / 2);
            if f.eta() == eta {
                return Some(f);
            }
        }
        if d < 2 || !eta.is_symmetric() {
            return None;
        }
        let last = d - 1;
        let border_ok = (0..d).all(|i| {
            let want = |k: usize| {
                if i == last - k {
                    Q::from_integer(1.into())
                } else {
                    Q::zero()
                }
            };
            eta[(0, i)] == want(0) && eta[(last, i)] == want(last)
        });
        if !border_ok {
            return None;
        }
        let mut eta_e = Matrix::zeros(d - 2, d - 2);
        for i in 0..d - 2 {
            for j in 0..d - 2 {
                eta_e[(i, j)] = eta[(1 + i, 1 + j)].clone();
            }
        }
        Self::lorentz_with(eta_e).ok()
    }

    pub fn case(&self) -> &FrameCase {
        &self.case
    }

    /// The `n` of the frame case.
    pub fn n(&self) -> usize {
        match self.case {
            FrameCase::Lorentz(n) | FrameCase::PseudoKaehler(n) => n,
        }
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn eta(&self) -> &Matrix {
        self.metric.eta()
    }

    pub fn j(&self) -> Option<&Matrix> {
        self.metric.j()
    }

    pub fn metric(&self) -> &MetricStructure {
        &self.metric
    }

    pub fn is_pseudo_kaehler(&self) -> bool {
        matches!(self.case, FrameCase::PseudoKaehler(_))
    }

    /// Gram matrix of the `e`-block (Lorentz) or of `E = span{e, f}` (pseudo-Kähler).
    pub fn eta_e(&self) -> Matrix {
        let (off, len) = match self.case {
            FrameCase::Lorentz(n) => (1, n),
            FrameCase::PseudoKaehler(n) => (2, 2 * n),
        };
        let mut m = Matrix::zeros(len, len);
        for i in 0..len {
            for j in 0..len {
                m[(i, j)] = self.eta()[(off + i, off + j)].clone();
            }
        }
        m
    }

    // Index helpers. `e` and `f` take 1-based labels as in e_1…e_n.

    pub fn p(&self) -> usize {
        0
    }

    pub fn p1(&self) -> usize {
        0
    }

    pub fn p2(&self) -> usize {
        1
    }

    pub fn e(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "e_{i} out of range");
        match self.case {
            FrameCase::Lorentz(_) => i,
            FrameCase::PseudoKaehler(_) => 1 + i,
        }
    }

    pub fn f(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "f_{i} out of range");
        1 + self.n() + i
    }

    pub fn q(&self) -> usize {
        self.n() + 1
    }

    pub fn q1(&self) -> usize {
        2 * self.n() + 2
    }

    pub fn q2(&self) -> usize {
        2 * self.n() + 3
    }

    /// Unit vector of basis index `i`.
    pub fn vector(&self, i: usize) -> Vec<Q> {
        crate::liealg::unit(self.dim(), i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognize_finds_both_cases() {
        for n in 0..3 {
            let f = StandardFrame::pseudo_kaehler(n);
            assert_eq!(
                StandardFrame::recognize(f.eta()).unwrap().case(),
                &FrameCase::PseudoKaehler(n)
            );
        }
        let mut e = Matrix::identity(3);
        e[(1, 1)] = Q::new(1.into(), 3.into());
        let f = StandardFrame::lorentz_with(e.clone()).unwrap();
        let got = StandardFrame::recognize(f.eta()).unwrap();
        assert_eq!((got.case(), got.eta_e()), (&FrameCase::Lorentz(3), e));
        assert!(StandardFrame::recognize(&Matrix::identity(4)).is_none());
    }

    #[test]
    fn pseudo_kaehler_zero_matches_blocks() {
        let f = StandardFrame::pseudo_kaehler(0);
        let eta = Matrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let j = Matrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
        assert_eq!(f.eta(), &eta);
        assert_eq!(f.j(), Some(&j));
    }

    #[test]
    fn lorentz_one_is_antidiagonal() {
        let f = StandardFrame::lorentz(1);
        assert_eq!(
            f.eta(),
            &Matrix::from_i64(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
        );
        assert!(f.j().is_none());
    }

    #[test]
    fn j_squares_to_minus_one() {
        for n in 0..=4 {
            let f = StandardFrame::pseudo_kaehler(n);
            let j = f.j().unwrap();
            let d = f.dim();
            assert_eq!(
                j * j,
                Matrix::identity(d).scale(&Q::from_integer((-1).into()))
            );
            assert!(f.eta().is_symmetric());
            for i in 1..=n {
                assert_eq!(j.mul_vec(&f.vector(f.e(i))), f.vector(f.f(i)));
            }
        }
    }
}
