//! Holonomy algebra at the basepoint from the curvature and its derivatives.
//!
//! The curvature is handled as endomorphism-valued fields `F_{cd} = R(∂_c, ∂_d)`
//! and differentiated with `D_e F = ∂_e F + [Γ_e, F]`. Components of `∇^r R`
//! at the basepoint span the same space as the values of words `D_{e_r}…D_{e_1} F_{cd}`
//! of length at most `r`, and words whose letters are not non-decreasing differ
//! from sorted ones by brackets of shorter words, so only sorted words are
//! generated; the Lie closure is unchanged.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::christoffel::{assemble, christoffel};
use super::metric::PolynomialMetric;
use super::polymat::PolyMat;
use super::tensor::{covariant_derivative, curvature};
use crate::error::{Error, Result};
use crate::exactnum::{Monomial, Q};
use crate::liealg::{Closure, MatrixLieAlgebra, MetricStructure};
use crate::linalg::{EchelonBasis, Matrix};

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorLogEntry {
    pub order: usize,
    pub pair: (usize, usize),
    /// Derivative directions in the order they were applied.
    pub word: Vec<usize>,
    #[serde(skip)]
    pub matrix: Matrix,
}

#[derive(Clone, Debug)]
pub struct HolonomyReport {
    pub algebra: MatrixLieAlgebra,
    /// Last derivative order that was evaluated.
    pub max_order_used: usize,
    pub stabilized: bool,
    /// Last order at which the algebra grew (0 if it never did).
    pub stable_from_order: usize,
    pub generator_log: Vec<GeneratorLogEntry>,
    /// Dimension of the plain span of all evaluated generators.
    pub span_dim: usize,
    /// Whether taking brackets added elements beyond that span.
    pub closure_added: bool,
}

#[derive(Clone)]
struct Field {
    pair: (usize, usize),
    word: Vec<usize>,
    mat: PolyMat,
}

impl Field {
    fn last(&self) -> usize {
        self.word.last().copied().unwrap_or(0)
    }
}

/// Row-echelon basis over sparse keys; used to prune linearly dependent fields.
struct SparseEchelon {
    rows: Vec<(Key, BTreeMap<Key, Q>)>,
}

type Key = (usize, Monomial);

impl SparseEchelon {
    fn new() -> Self {
        SparseEchelon { rows: Vec::new() }
    }

    fn insert(&mut self, mut v: BTreeMap<Key, Q>) -> bool {
        for (p, row) in &self.rows {
            let Some(c) = v.get(p).cloned() else { continue };
            for (k, x) in row {
                let e = v.entry(k.clone()).or_insert_with(Q::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        let Some((p, lead)) = v.iter().next().map(|(k, x)| (k.clone(), x.clone())) else {
            return false;
        };
        let inv = Q::one() / lead;
        for x in v.values_mut() {
            *x *= &inv;
        }
        let at = self.rows.partition_point(|(q, _)| q < &p);
        self.rows.insert(at, (p, v));
        true
    }
}

fn sparse(m: &PolyMat) -> BTreeMap<Key, Q> {
    let mut v = BTreeMap::new();
    for (i, p) in m.entries().iter().enumerate() {
        for (mono, c) in p.terms() {
            v.insert((i, mono.clone()), c.clone());
        }
    }
    v
}

/// Keeps a subset of `fields` spanning the same real vector space.
fn prune(fields: Vec<Field>) -> Vec<Field> {
    let mut ech = SparseEchelon::new();
    fields
        .into_iter()
        .filter(|f| !f.mat.is_zero() && ech.insert(sparse(&f.mat)))
        .collect()
}

pub fn holonomy(m: &PolynomialMetric, max_order: usize, window: usize) -> Result<HolonomyReport> {
    if max_order < 1 || window < 1 {
        return Err(Error::Invalid(
            "max_order and window must be at least 1".into(),
        ));
    }
    let n = m.dim();
    let eta = m.eta();
    let ambient = MetricStructure::new(eta, None)?;
    let c = m.centred();
    let inv = c.inverse()?.truncate(max_order as u32 + 1);
    let k = max_order as u32;
    let gamma = assemble(&c, &inv, k + 1).connection_matrices();

    let mut fields = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let f = gamma[b]
                .d(a)
                .sub(&gamma[a].d(b))
                .truncate(k)
                .add(&gamma[a].commutator_trunc(&gamma[b], k));
            fields.push(Field {
                pair: (a, b),
                word: Vec::new(),
                mat: f,
            });
        }
    }
    let mut fields = prune(fields);

    let mut closure = Closure::new(n);
    let mut span = EchelonBasis::new(n * n);
    let mut log = Vec::new();
    let mut last_growth = 0;
    let mut quiet = 0;
    let mut stabilized = false;
    let mut order = 0;
    loop {
        let before = closure.dim();
        for f in &fields {
            let x = f.mat.at_zero();
            if x.is_zero() {
                continue;
            }
            span.insert(&x.flatten());
            if closure.push(x.clone()) {
                log.push(GeneratorLogEntry {
                    order,
                    pair: f.pair,
                    word: f.word.clone(),
                    matrix: x,
                });
            }
        }
        closure.close();
        if closure.dim() > before {
            last_growth = order;
            quiet = 0;
        } else {
            quiet += 1;
        }
        if quiet >= window {
            stabilized = true;
            break;
        }
        if order == max_order {
            break;
        }
        let deg = k - order as u32 - 1;
        let mut groups: BTreeMap<usize, Vec<Field>> = BTreeMap::new();
        for f in &fields {
            for e in f.last()..n {
                let d = f
                    .mat
                    .d(e)
                    .truncate(deg)
                    .add(&gamma[e].commutator_trunc(&f.mat, deg));
                let mut word = f.word.clone();
                word.push(e);
                groups.entry(e).or_default().push(Field {
                    pair: f.pair,
                    word,
                    mat: d,
                });
            }
        }
        fields = groups.into_values().flat_map(prune).collect();
        order += 1;
    }
    let span_dim = span.dim();
    Ok(HolonomyReport {
        algebra: closure.algebra(ambient),
        max_order_used: order,
        stabilized,
        stable_from_order: last_growth,
        closure_added: closure.dim() > span_dim,
        span_dim,
        generator_log: log,
    })
}

/// Holonomy from the full tensors `∇^r R`, `r ≤ max_order`. Exponential in `max_order`.
pub fn holonomy_from_tensors(m: &PolynomialMetric, max_order: usize) -> Result<MatrixLieAlgebra> {
    let n = m.dim();
    let ambient = MetricStructure::new(m.eta(), None)?;
    let c = m.centred();
    let gamma = christoffel(&c)?;
    let zero = vec![Q::zero(); n];
    let mut t = curvature(&gamma);
    let mut cl = Closure::new(n);
    for r in 0..=max_order {
        if r > 0 {
            t = covariant_derivative(&t, &gamma);
        }
        let mut rests = vec![Vec::new()];
        for _ in 0..t.lower() - 1 {
            rests = rests
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    (0..n).map(move |i| {
                        let mut w = v.clone();
                        w.push(i);
                        w
                    })
                })
                .collect();
        }
        for rest in rests {
            let x = t.endomorphism_at(&rest, &zero);
            if !x.is_zero() {
                cl.push(x);
            }
        }
    }
    cl.close();
    Ok(cl.algebra(ambient))
}
