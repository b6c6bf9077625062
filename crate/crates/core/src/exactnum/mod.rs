//! Rational scalars and sparse multivariate polynomials.

mod poly;
mod rational;

pub use poly::{Monomial, Polynomial, TermJson};
pub use rational::{
    factorial, fmt_q, is_positive, parse_q, q0, q1, qi, qr, serde_q, serde_qvec, serde_qvecvec,
    to_f64, Q,
};
