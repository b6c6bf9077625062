use num_traits::Zero;

use crate::exactnum::{Polynomial, Q};
use crate::linalg::Matrix;

/// Square matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMat {
    n: usize,
    nvars: usize,
    e: Vec<Polynomial>,
}

impl PolyMat {
    pub fn zeros(n: usize, nvars: usize) -> Self {
        PolyMat {
            n,
            nvars,
            e: vec![Polynomial::zero(nvars); n * n],
        }
    }

    pub fn from_entries(n: usize, nvars: usize, e: Vec<Polynomial>) -> Self {
        assert_eq!(e.len(), n * n, "entry count");
        PolyMat { n, nvars, e }
    }

    pub fn constant(m: &Matrix, nvars: usize) -> Self {
        let n = m.rows();
        PolyMat {
            n,
            nvars,
            e: m.data()
                .iter()
                .map(|c| Polynomial::constant(nvars, c.clone()))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.e[i * self.n + j] = p;
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    pub fn mul_trunc(&self, o: &PolyMat, max_deg: u32) -> PolyMat {
        let n = self.n;
        let mut r = PolyMat::zeros(n, self.nvars);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.e[i * n + j]
                            .add_scaled(&a.mul_trunc(b, max_deg), &Q::from_integer(1.into()));
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &PolyMat) -> PolyMat {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &PolyMat) -> PolyMat {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &PolyMat, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> PolyMat {
        PolyMat {
            n: self.n,
            nvars: self.nvars,
            e: self.e.iter().zip(&o.e).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMat {
        PolyMat {
            n: self.n,
            nvars: self.nvars,
            e: self.e.iter().map(f).collect(),
        }
    }

    pub fn d(&self, var: usize) -> PolyMat {
        self.map(|p| p.d(var))
    }

    pub fn truncate(&self, max_deg: u32) -> PolyMat {
        self.map(|p| p.truncate(max_deg))
    }

    pub fn shift(&self, point: &[Q]) -> PolyMat {
        self.map(|p| p.shift(point))
    }

    /// `[self, o]` truncated.
    pub fn commutator_trunc(&self, o: &PolyMat, max_deg: u32) -> PolyMat {
        self.mul_trunc(o, max_deg).sub(&o.mul_trunc(self, max_deg))
    }

    pub fn at_zero(&self) -> Matrix {
        Matrix::from_vec(
            self.n,
            self.n,
            self.e.iter().map(Polynomial::constant_term).collect(),
        )
        .unwrap()
    }

    pub fn eval(&self, point: &[Q]) -> Matrix {
        Matrix::from_vec(
            self.n,
            self.n,
            self.e
                .iter()
                .map(|p| p.evaluate(point).expect("point length"))
                .collect(),
        )
        .unwrap()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let p = self.get(i, j);
                if i == j {
                    p.is_constant() && p.constant_term() == Q::from_integer(1.into())
                } else {
                    p.is_zero()
                }
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn scale(&self, c: &Q) -> PolyMat {
        if c.is_zero() {
            return PolyMat::zeros(self.n, self.nvars);
        }
        self.map(|p| p.scale(c))
    }
}
