use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_q, parse_q, Q};
use crate::error::{Error, Result};

/// Exponent vector with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms live in a map keyed by graded-lex monomials and zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Q::one())
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial::term(nvars, e, Q::one())
    }

    pub fn term(nvars: usize, exps: Vec<u32>, c: Q) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Q)>>(nvars: usize, it: I) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in it {
            if e.len() != nvars {
                return Err(Error::Dimension(format!(
                    "monomial has {} exponents, expected {nvars}",
                    e.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree; the zero polynomial has degree 0 here.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut r = self.clone();
        r.add_scaled(other, &Q::one());
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut r = self.clone();
        r.add_scaled(other, &-Q::one());
        Ok(r)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.mul_trunc(other, u32::MAX))
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Q) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Product with every term of total degree above `max_deg` dropped.
    pub fn mul_trunc(&self, other: &Polynomial, max_deg: u32) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut r = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_deg {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > max_deg {
                    continue;
                }
                r.add_term(ma.times(mb), ca * cb);
            }
        }
        r
    }

    pub fn truncate(&self, max_deg: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_deg)
                .map(|(m, v)| (m.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut r = Polynomial::one(self.nvars);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn partial(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::Dimension(format!(
                "variable index {var} out of range for {} variables",
                self.nvars
            )));
        }
        Ok(self.d(var))
    }

    /// Unchecked partial derivative, used on hot paths.
    pub fn d(&self, var: usize) -> Polynomial {
        let mut r = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            r.terms.insert(m2, c * Q::from_integer(e.into()));
        }
        r
    }

    /// Direct term-by-term substitution.
    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Nested Horner evaluation, variable by variable from the last one.
    pub fn evaluate_horner(&self, point: &[Q]) -> Result<Q> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, expected {}",
                point.len(),
                self.nvars
            )));
        }
        let items: Vec<(Vec<u32>, Q)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.0.clone(), c.clone()))
            .collect();
        Ok(horner(&items, point, 0))
    }

    /// Substitutes `x_i -> x_i + shift_i`.
    pub fn shift(&self, shift: &[Q]) -> Polynomial {
        assert_eq!(shift.len(), self.nvars, "shift length");
        if shift.iter().all(Zero::is_zero) {
            return self.clone();
        }
        let lin: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                let mut p = Polynomial::var(self.nvars, i);
                p.add_term(Monomial::one(self.nvars), shift[i].clone());
                p
            })
            .collect();
        let mut r = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(self.nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &lin[i].pow(e);
                }
            }
            r.add_scaled(&t, &Q::one());
        }
        r
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                coef: fmt_q(c),
                exps: m.0.clone(),
            })
            .collect()
    }

    pub fn from_json(nvars: usize, terms: &[TermJson]) -> Result<Polynomial> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.exps.clone(), parse_q(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(nvars, parsed)
    }
}

fn horner(items: &[(Vec<u32>, Q)], point: &[Q], var: usize) -> Q {
    if var == point.len() {
        return items
            .iter()
            .map(|(_, c)| c.clone())
            .fold(Q::zero(), |a, b| a + b);
    }
    let max_e = items.iter().map(|(e, _)| e[var]).max().unwrap_or(0);
    let mut acc = Q::zero();
    for k in (0..=max_e).rev() {
        let slice: Vec<(Vec<u32>, Q)> =
            items.iter().filter(|(e, _)| e[var] == k).cloned().collect();
        acc = acc * &point[var] + horner(&slice, point, var + 1);
    }
    acc
}

/// JSON form of one polynomial term.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coef: String,
    pub exps: Vec<u32>,
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_q(c))?;
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_scaled(rhs, &Q::one());
        r
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut r = self.clone();
        r.add_scaled(rhs, &-Q::one());
        r
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_trunc(rhs, u32::MAX)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{qi, qr};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn add_cases() {
        let one = Polynomial::one(2);
        let p = &x(2, 0) + &one;
        assert_eq!(&p + &(-&x(2, 0)), one);
        assert_eq!(&p + &Polynomial::zero(2), p);
        let sq = &x(2, 0) * &x(2, 0);
        assert_eq!(&sq + &sq.scale(&qi(2)), sq.scale(&qi(3)));
        assert!(p.checked_add(&Polynomial::zero(3)).is_err());
    }

    #[test]
    fn mul_cases() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let want = &(&x(2, 0) * &x(2, 0)) - &(&x(2, 1) * &x(2, 1));
        assert_eq!(&a * &b, want);
        assert_eq!(&a * &Polynomial::one(2), a);
        let l = x(2, 0).scale(&qr(1, 2));
        let r = x(2, 1).scale(&qr(2, 3));
        assert_eq!(&l * &r, (&x(2, 0) * &x(2, 1)).scale(&qr(1, 3)));
    }

    #[test]
    fn partial_cases() {
        let p = &x(4, 3) * &x(4, 3);
        assert_eq!(p.partial(3).unwrap(), x(4, 3).scale(&qi(2)));
        assert!(Polynomial::constant(4, qi(7)).partial(0).unwrap().is_zero());
        let q = &x(2, 0) * &(&x(2, 1) * &x(2, 1));
        let a = q.d(0).d(1);
        let b = q.d(1).d(0);
        assert_eq!(a, b);
        assert_eq!(a, x(2, 1).scale(&qi(2)));
        assert!(p.partial(4).is_err());
    }

    #[test]
    fn evaluate_cases() {
        let p = &x(4, 3) * &x(4, 3);
        assert_eq!(p.evaluate(&vec![qi(0); 4]).unwrap(), qi(0));
        let s = &x(3, 0) + &x(3, 1);
        assert_eq!(s.evaluate(&[qr(1, 2), qr(1, 3), qi(9)]).unwrap(), qr(5, 6));
        assert!(s.evaluate(&[qi(1)]).is_err());
    }

    #[test]
    fn graded_lex_order() {
        let m = |v: Vec<u32>| Monomial(v);
        assert!(m(vec![0, 2]) > m(vec![1, 0]));
        assert!(m(vec![1, 0]) > m(vec![0, 1]));
        assert!(m(vec![0, 0]) < m(vec![0, 1]));
    }

    #[test]
    fn shift_matches_substitution() {
        let p = &(&x(2, 0) * &x(2, 0)) + &x(2, 1);
        let s = p.shift(&[qi(1), qi(-2)]);
        let at = |q: &Polynomial, a: i64, b: i64| q.evaluate(&[qi(a), qi(b)]).unwrap();
        for (a, b) in [(0, 0), (1, 3), (-2, 5)] {
            assert_eq!(at(&s, a, b), at(&p, a + 1, b - 2));
        }
    }

    #[test]
    fn json_round_trip() {
        let p = &(&x(3, 0) * &x(3, 2)).scale(&qr(-2, 3)) + &Polynomial::constant(3, qi(4));
        let j = p.to_json();
        assert_eq!(j[0].exps, vec![0, 0, 0]);
        assert_eq!(Polynomial::from_json(3, &j).unwrap(), p);
        assert!(Polynomial::zero(3).to_json().is_empty());
    }
}
