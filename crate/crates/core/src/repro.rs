//! Reproduction checks for the published examples and tables. Each criterion returns a list
//! of exact comparisons; the expected values are transcribed constants, never recomputed by
//! the code under test.

use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::families::{gen_a1, gen_a2, gen_c, gen_n1, pk_algebra, sod_on_e, u1n1};
use crate::catalog::generators::{g2_generators, g2_p, spin7_generators, spin7_p};
use crate::catalog::identify::{default_sweep, identify};
use crate::catalog::lorentz::build_lorentz_metric;
use crate::catalog::pk::build_pk_metric;
use crate::catalog::symmetric::{
    hol1, hol1c, hol2, ricci, theorem_sym_tensor, verify_symmetric_pair, SymPair, SymTensor,
};
use crate::catalog::{build_algebra, FamilyId, FamilySpec, MetricRecipe, StandardFrame, UElem};
use crate::curvspace::{
    curvature_space, invariant_curvature_space, is_berger, pair_symmetry_check,
    weak_curvature_space, CurvatureTensor,
};
use crate::error::Result;
use crate::exactnum::{qi, qr, Polynomial, Q};
use crate::geometry::{
    christoffel, curvature, holonomy, lg_curvature, lg_holonomy, lg_nabla, LieGroupData, PolyMat,
    PolynomialMetric,
};
use crate::liealg::{
    check_invariant_subspace, commutator, weak_irreducibility, InvariantVerdict, MatrixLieAlgebra,
    MetricStructure, WeakIrreducibility,
};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    pub fn eq<T: PartialEq + Debug>(name: impl Into<String>, expected: T, computed: T) -> Self {
        Check {
            name: name.into(),
            pass: expected == computed,
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check::eq(name, true, ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ReproOptions {
    /// Seed of the random metrics in the property suite.
    pub seed: u64,
}

pub const TITLES: [&str; 10] = [
    "Lie-group oracle",
    "Ikemakhen reproduction",
    "n = 0 metric table",
    "Curvature-space claims",
    "Symmetric pairs",
    "Pseudo-Kähler metrics, n = 1",
    "Lorentzian metrics, so(2)",
    "g2 / spin(7) metrics",
    "Property suites",
    "Weak-irreducibility regressions",
];

pub fn run_criterion(id: usize, opts: &ReproOptions) -> Result<CriterionReport> {
    let Some(&title) = id.checked_sub(1).and_then(|i| TITLES.get(i)) else {
        return Err(crate::Error::Invalid(format!("no criterion {id}")));
    };
    let checks = match id {
        1 => criterion_1()?,
        2 => criterion_2()?,
        3 => criterion_3()?,
        4 => criterion_4()?,
        5 => criterion_5()?,
        6 => criterion_6()?,
        7 => criterion_7()?,
        8 => criterion_8()?,
        9 => criterion_9(opts.seed)?,
        10 => criterion_10()?,
        _ => return Err(crate::Error::Invalid(format!("no criterion {id}"))),
    };
    Ok(CriterionReport { id, title, checks })
}

fn m(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

fn diag(v: &[i64]) -> Matrix {
    let mut d = Matrix::zeros(v.len(), v.len());
    for (i, x) in v.iter().enumerate() {
        d[(i, i)] = qi(*x);
    }
    d
}

/// `Σ c · Π x_v^e` over `nvars` variables; variables are 0-based.
pub fn poly(nvars: usize, terms: &[(Q, &[(usize, u32)])]) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for (c, vars) in terms {
        let mut e = vec![0; nvars];
        for &(v, k) in vars.iter() {
            e[v] += k;
        }
        p = &p + &Polynomial::term(nvars, e, c.clone());
    }
    p
}

fn metric(n: usize, entries: Vec<((usize, usize), Polynomial)>) -> Result<PolynomialMetric> {
    let mut g = PolyMat::zeros(n, n);
    for ((i, j), p) in entries {
        let s = g.get(i, j) + &p;
        g.set(i, j, s.clone());
        g.set(j, i, s);
    }
    PolynomialMetric::new(g, vec![Q::from_integer(0.into()); n])
}

fn lie_group(brackets: &[((usize, usize), [i64; 4])]) -> Result<LieGroupData> {
    let gram = m(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]);
    LieGroupData::new(
        gram,
        brackets
            .iter()
            .map(|(ij, c)| (*ij, c.iter().map(|&x| qi(x)).collect()))
            .collect(),
    )
}

/// Basis `p₁, p₂, q₁, q₂`: `[p₁,q₁]=p₁+q₂`, `[p₁,q₂]=−p₂−q₁`, `[p₂,q₁]=p₂+q₁`, `[p₂,q₂]=p₁+q₂`.
pub fn lie_algebra_g1() -> Result<LieGroupData> {
    lie_group(&[
        ((0, 2), [1, 0, 0, 1]),
        ((0, 3), [0, -1, -1, 0]),
        ((1, 2), [0, 1, 1, 0]),
        ((1, 3), [1, 0, 0, 1]),
    ])
}

/// `[p₁,q₂]=p₁`, `[p₂,q₁]=−p₁`, `[q₁,q₂]=p₁+q₁`.
pub fn lie_algebra_g2() -> Result<LieGroupData> {
    lie_group(&[
        ((0, 3), [1, 0, 0, 0]),
        ((1, 2), [-1, 0, 0, 0]),
        ((2, 3), [1, 0, 1, 0]),
    ])
}

fn curvature_map(d: &LieGroupData) -> Result<(Vec<Matrix>, CurvatureTensor)> {
    let nabla = lg_nabla(d)?;
    let r = CurvatureTensor::from_values(d.dim(), lg_curvature(d, &nabla))?;
    Ok((nabla, r))
}

/// `[∇_X, ∇_Y] − ∇_{[X,Y]}` from a given list of `∇` matrices.
fn curvature_from_nabla(d: &LieGroupData, nabla: &[Matrix], i: usize, j: usize) -> Matrix {
    let mut r = commutator(&nabla[i], &nabla[j]);
    for (k, c) in d.structure(i, j).iter().enumerate() {
        r = &r - &nabla[k].scale(c);
    }
    r
}

fn criterion_1() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f0 = StandardFrame::pseudo_kaehler(0);

    let g1 = lie_algebra_g1()?;
    let (nabla, r) = curvature_map(&g1)?;
    let rot = m(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let dil = diag(&[-1, -1, 1, 1]);
    let printed_nabla = [rot.clone(), dil.clone(), dil, rot];
    for (i, name) in ["p1", "p2", "q1", "q2"].iter().enumerate() {
        out.push(Check::eq(
            format!("g1 nabla_{name}"),
            &printed_nabla[i],
            &nabla[i],
        ));
    }
    let r13 = m(&[&[0, 2, 0, 0], &[-2, 0, 0, 0], &[0, 0, 0, 2], &[0, 0, -2, 0]]);
    // sign-corrected: the printed value is diag(2,2,−2,−2)
    let r14 = diag(&[-2, -2, 2, 2]);
    let zero = Matrix::zeros(4, 4);
    for (name, (a, b), want) in [
        ("R(p1,p2)", (0, 1), &zero),
        ("R(q1,q2)", (2, 3), &zero),
        ("R(p1,q1)", (0, 2), &r13),
        ("R(p2,q2)", (1, 3), &r13),
        ("R(p1,q2)", (0, 3), &r14),
        ("R(q1,p2)", (2, 1), &r14),
    ] {
        out.push(Check::eq(format!("g1 {name}"), want, &r.value(a, b)));
        let from_printed = curvature_from_nabla(&g1, &printed_nabla, a, b);
        out.push(Check::eq(
            format!("g1 {name} from printed nabla"),
            want,
            &from_printed,
        ));
    }
    out.push(Check::eq(
        "g1 printed R(p1,q2) = diag(2,2,-2,-2) reproduced",
        false,
        r.value(0, 3) == diag(&[2, 2, -2, -2]),
    ));

    let g2 = lie_algebra_g2()?;
    let (nabla, r) = curvature_map(&g2)?;
    let n_p1 = m(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    let n_q1 = m(&[
        &[0, 1, 0, 1],
        &[-1, 0, -1, 0],
        &[0, 0, 0, 1],
        &[0, 0, -1, 0],
    ]);
    let printed_nabla = [n_p1, zero.clone(), n_q1, zero.clone()];
    for (i, name) in ["p1", "p2", "q1", "q2"].iter().enumerate() {
        out.push(Check::eq(
            format!("g2 nabla_{name}"),
            &printed_nabla[i],
            &nabla[i],
        ));
    }
    let r14 = m(&[&[0, 0, 0, -1], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
    let r34 = m(&[
        &[0, -1, 0, -2],
        &[1, 0, 2, 0],
        &[0, 0, 0, -1],
        &[0, 0, 1, 0],
    ]);
    let r23 = r14.scale(&qi(-1));
    for (name, (a, b), want) in [
        ("R(p1,p2)", (0, 1), &zero),
        ("R(p1,q1)", (0, 2), &zero),
        ("R(p2,q2)", (1, 3), &zero),
        ("R(p1,q2)", (0, 3), &r14),
        ("R(p2,q1)", (1, 2), &r23),
        ("R(q1,q2)", (2, 3), &r34),
    ] {
        out.push(Check::eq(format!("g2 {name}"), want, &r.value(a, b)));
        out.push(Check::eq(
            format!("g2 {name} from printed nabla"),
            want,
            &curvature_from_nabla(&g2, &printed_nabla, a, b),
        ));
    }

    let hol2 = build_algebra(&FamilySpec::new(FamilyId::HolN0Two, 0))?;
    out.push(Check::eq(
        "hol(g1) = hol^2_{n=0}",
        hol2.subspace(),
        lg_holonomy(&g1)?.subspace(),
    ));
    let mut s = FamilySpec::new(FamilyId::HolN0Gamma, 0);
    s.gamma2 = qi(1);
    out.push(Check::eq(
        "hol(g2) = hol^{0,1}_{n=0}",
        build_algebra(&s)?.subspace(),
        lg_holonomy(&g2)?.subspace(),
    ));
    out.push(Check::eq(
        "g1 ambient is the standard frame",
        f0.eta(),
        lg_holonomy(&g1)?.ambient().eta(),
    ));
    Ok(out)
}

/// `S A S⁻¹` with `S = diag(1, √3, 1, 1, 1)`, for `A` given by entries `r + s√3`. Only row
/// and column 2 may carry `√3`, and there the rational part must vanish.
fn rescale(a: &[[(i64, i64); 5]; 5]) -> Matrix {
    let mut out = Matrix::zeros(5, 5);
    for i in 0..5 {
        for j in 0..5 {
            let (r, s) = a[i][j];
            out[(i, j)] = match (i == 1, j == 1) {
                (true, false) => {
                    assert_eq!(r, 0, "entry ({i},{j}) would become irrational");
                    qi(3 * s)
                }
                (false, true) => {
                    assert_eq!(r, 0, "entry ({i},{j}) would become irrational");
                    qi(s)
                }
                _ => {
                    assert_eq!(s, 0, "entry ({i},{j}) is irrational");
                    qi(r)
                }
            };
        }
    }
    out
}

/// `ρ(so(3))` from the printed generators, in the coordinates `y = √3 x²`. `A₃` is taken
/// without its `(3,5)`, `(5,3)` entries.
pub fn ikemakhen_generators() -> [Matrix; 3] {
    let z = (0, 0);
    let o = |x: i64| (x, 0);
    let s = |x: i64| (0, x);
    let a1 = [
        [z, z, o(-1), z, z],
        [z, z, s(1), z, z],
        [o(1), s(-1), z, z, z],
        [z, z, z, z, o(-1)],
        [z, z, z, o(1), z],
    ];
    let a2 = [
        [z, z, z, o(-4), z],
        [z, z, z, z, z],
        [z, z, z, z, o(-2)],
        [o(4), z, z, z, z],
        [z, z, o(2), z, z],
    ];
    let a3 = [
        [z, z, z, z, o(-1)],
        [z, z, z, z, s(-1)],
        [z, z, z, o(-1), z],
        [z, z, o(1), z, z],
        [o(1), s(1), z, z, z],
    ];
    [rescale(&a1), rescale(&a2), rescale(&a3)]
}

/// Ikemakhen's metric on `ℝ⁷` in the coordinates `x⁰, x¹, y = √3 x², x³, x⁴, x⁵, x⁶`.
pub fn ikemakhen_metric() -> Result<PolynomialMetric> {
    let v = 7;
    let one = qi(1);
    let mut e = vec![((0, 6), poly(v, &[(one.clone(), &[])]))];
    for i in 1..=5 {
        let c = if i == 2 { qr(1, 3) } else { one.clone() };
        e.push(((i, i), poly(v, &[(c, &[])])));
    }
    let u1 = poly(
        v,
        &[
            (qi(-1), &[(3, 2)]),
            (qi(-4), &[(4, 2)]),
            (qi(-1), &[(5, 2)]),
        ],
    );
    let u3 = poly(
        v,
        &[(qi(-2), &[(2, 1), (3, 1)]), (qi(-2), &[(4, 1), (5, 1)])],
    );
    let u5 = poly(v, &[(qi(2), &[(2, 1), (5, 1)]), (qi(2), &[(3, 1), (4, 1)])]);
    e.push(((1, 6), u1));
    e.push(((3, 6), u3));
    e.push(((5, 6), u5));
    metric(v, e)
}

fn so_block(x: &Matrix, n: usize) -> Matrix {
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = x[(1 + i, 1 + j)].clone();
        }
    }
    out
}

fn criterion_2() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = ikemakhen_metric()?;
    let r = curvature(&christoffel(&g)?);
    let zero7 = vec![qi(0); 7];
    let a = ikemakhen_generators();
    let z = Matrix::zeros(5, 5);
    let want = [z.clone(), z, a[0].clone(), a[1].clone(), a[2].clone()];
    for i in 1..=5 {
        let got = so_block(&r.endomorphism_at(&[i, 6], &zero7), 5);
        out.push(Check::eq(
            format!("pr_so(5) R(d{i}, d6)_0"),
            &want[i - 1],
            &got,
        ));
    }
    let mut s = FamilySpec::new(FamilyId::Lorentz2, 5);
    s.eta_e = Some(m(&[
        &[1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1],
    ]));
    if let Some(e) = s.eta_e.as_mut() {
        e[(1, 1)] = qr(1, 3);
    }
    s.h_basis = a.to_vec();
    let cat = build_algebra(&s)?;
    let rep = holonomy(&g, 4, 2)?;
    out.push(Check::eq("holonomy dim", 8, rep.algebra.dim()));
    out.push(Check::holds("holonomy stabilized", rep.stabilized));
    out.push(Check::eq(
        "holonomy = g^{2, rho(so(3))}",
        cat.subspace(),
        rep.algebra.subspace(),
    ));
    let frame = s.frame()?;
    let id = identify(&rep.algebra, &frame, &default_sweep(&frame))?;
    out.push(Check::eq(
        "identified family",
        Some(FamilyId::Lorentz2),
        id.family().map(|f| f.family),
    ));
    Ok(out)
}

/// The `n = 0` metric `2dx¹dx³ + 2dx²dx⁴ + f₁(dx³)² + f₂(dx⁴)² + 2f₃dx³dx⁴`.
pub fn n0_metric(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> Result<PolynomialMetric> {
    let one = poly(4, &[(qi(1), &[])]);
    metric(
        4,
        vec![
            ((0, 2), one.clone()),
            ((1, 3), one),
            ((2, 2), f1),
            ((3, 3), f2),
            ((2, 3), f3),
        ],
    )
}

/// The four rows of the `n = 0` table with their catalog algebras.
pub fn n0_table_rows() -> Result<Vec<(&'static str, PolynomialMetric, FamilySpec)>> {
    let p = |t: &[(i64, &[(usize, u32)])]| {
        let t: Vec<(Q, &[(usize, u32)])> = t.iter().map(|(c, v)| (qi(*c), *v)).collect();
        poly(4, &t)
    };
    let neg = |x: &Polynomial| -x;
    // variables x¹…x⁴ are 0…3
    let f1 = p(&[(-2, &[(1, 1), (2, 1)]), (-1, &[(0, 1), (2, 2)])]);
    let row1 = n0_metric(
        f1.clone(),
        neg(&f1),
        p(&[(2, &[(0, 1), (2, 1)]), (-1, &[(1, 1), (2, 2)])]),
    )?;
    let f1 = p(&[(1, &[(0, 2)]), (-1, &[(1, 2)])]);
    let row2 = n0_metric(f1.clone(), neg(&f1), p(&[(2, &[(0, 1), (1, 1)])]))?;
    // γ₁ = 0, γ₂ = 1
    let f1 = p(&[(-2, &[(0, 1), (2, 1)])]);
    let row3 = n0_metric(f1.clone(), neg(&f1), p(&[(-2, &[(1, 1), (2, 1)])]))?;
    let row4 = n0_metric(p(&[(1, &[(3, 2)])]), p(&[]), p(&[]))?;
    let mut g01 = FamilySpec::new(FamilyId::HolN0Gamma, 0);
    g01.gamma2 = qi(1);
    Ok(vec![
        ("row 1", row1, FamilySpec::new(FamilyId::HolN0One, 0)),
        ("row 2", row2, FamilySpec::new(FamilyId::HolN0Two, 0)),
        ("row 3", row3, g01),
        ("row 4", row4, FamilySpec::new(FamilyId::HolN0Gamma, 0)),
    ])
}

fn criterion_3() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f0 = StandardFrame::pseudo_kaehler(0);
    let sweep = default_sweep(&f0);
    for ((name, g, spec), dim) in n0_table_rows()?.into_iter().zip([3, 2, 2, 1]) {
        let rep = holonomy(&g, 6, 2)?;
        out.push(Check::eq(format!("{name} dim"), dim, rep.algebra.dim()));
        out.push(Check::eq(
            format!("{name} = {}", spec.label()),
            build_algebra(&spec)?.subspace(),
            rep.algebra.subspace(),
        ));
        let id = identify(&rep.algebra, &f0, &sweep)?;
        out.push(Check::eq(
            format!("{name} identified"),
            Some(spec.family),
            id.family().map(|f| f.family),
        ));
    }
    Ok(out)
}

fn criterion_4() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.push(Check::eq(
        "dim R(u(1,1)_<p1,p2>)",
        5,
        curvature_space(&u1n1(0)?)?.dim(),
    ));
    for k in [2, 3] {
        let sod = sod_on_e(k, 1, k)?;
        out.push(Check::eq(
            format!("dim R(sod({k}))"),
            0,
            curvature_space(&sod)?.dim(),
        ));
        out.push(Check::eq(
            format!("dim P(sod({k}))"),
            0,
            weak_curvature_space(&sod)?.dim(),
        ));
    }
    let g = &gen_a1(0) + &gen_a2(0);
    let line = pk_algebra(0, &[g])?;
    out.push(Check::eq("is_berger {(a, a, 0)}", false, is_berger(&line)?));
    for fam in [FamilyId::HolN0One, FamilyId::HolN0Two] {
        out.push(Check::eq(
            format!("is_berger {}", fam.name()),
            true,
            is_berger(&build_algebra(&FamilySpec::new(fam, 0))?)?,
        ));
    }
    let mut all = true;
    for g1 in -3..=3 {
        for g2 in -3..=3 {
            let mut s = FamilySpec::new(FamilyId::HolN0Gamma, 0);
            s.gamma1 = qi(g1);
            s.gamma2 = qi(g2);
            all &= is_berger(&build_algebra(&s)?)?;
        }
    }
    let mut s = FamilySpec::new(FamilyId::HolN0Gamma, 0);
    s.gamma1 = qr(1, 2);
    s.gamma2 = qr(-7, 3);
    all &= is_berger(&build_algebra(&s)?)?;
    out.push(Check::eq(
        "is_berger hol^{gamma1,gamma2}_{n=0} on the sweep",
        true,
        all,
    ));
    Ok(out)
}

fn criterion_5() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.push(Check::eq(
        "dim R0(hol_1)",
        1,
        invariant_curvature_space(&hol1()?)?.dim(),
    ));
    out.push(Check::eq(
        "dim R0(hol_2)",
        2,
        invariant_curvature_space(&hol2()?)?.dim(),
    ));
    out.push(Check::eq(
        "dim R0(hol^2_{n=0})",
        2,
        invariant_curvature_space(&hol1c()?)?.dim(),
    ));
    for (m_, n) in [(0, 0), (0, 1), (1, 1)] {
        for pair in [SymPair::P1a, SymPair::P2, SymPair::P3] {
            let (_, hol, r) = pair.build(m_, n, &qi(1))?;
            let rep = verify_symmetric_pair(&hol, &r)?;
            out.push(Check::eq(
                format!("pair {} at (m,n)=({m_},{n})", pair.name()),
                (true, true),
                (rep.in_r0, rep.image_is_hol),
            ));
        }
        let f = StandardFrame::pseudo_kaehler(n);
        let ric = ricci(&theorem_sym_tensor(&SymTensor::R1 { m: m_ }, &f)?, &f)?;
        out.push(Check::eq(
            format!("Ric(R1)(q1,q1) at (m,n)=({m_},{n})"),
            qi(m_ as i64 - 2 * n as i64 - 4),
            ric[(f.q1(), f.q1())].clone(),
        ));
    }
    let f0 = StandardFrame::pseudo_kaehler(0);
    for l in [qr(-1, 2), qi(1), qi(3)] {
        let ric = ricci(
            &theorem_sym_tensor(&SymTensor::Lambda1(l.clone()), &f0)?,
            &f0,
        )?;
        out.push(Check::eq(
            format!("Ric(R_lambda1={l})(p1,q1)"),
            &l * qi(2),
            ric[(f0.p1(), f0.q1())].clone(),
        ));
    }
    Ok(out)
}

fn hol_matches(spec: &FamilySpec, g: &PolynomialMetric, order: usize) -> Result<Vec<Check>> {
    let rep = holonomy(g, order, 2)?;
    let cat = build_algebra(spec)?;
    let label = spec.label();
    Ok(vec![
        Check::holds(format!("{label} stabilized"), rep.stabilized),
        Check::eq(format!("{label} dim"), cat.dim(), rep.algebra.dim()),
        Check::eq(
            format!("{label} holonomy = catalog"),
            cat.subspace(),
            rep.algebra.subspace(),
        ),
    ])
}

fn criterion_6() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let j1 = UElem::j_range(1, 1, 1);
    for fam in [
        FamilyId::HolA1A2Tilde,
        FamilyId::HolA1PhiHat,
        FamilyId::HolLambda,
    ] {
        for u in [vec![], vec![j1.clone()]] {
            let mut s = FamilySpec::new(fam, 1);
            s.m = 1;
            s.phi_hat = vec![qi(1); u.len()];
            s.lambda = qi(2);
            s.u_basis = u;
            out.extend(hol_matches(&s, &build_pk_metric(&s)?, 8)?);
        }
    }
    Ok(out)
}

fn criterion_7() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let j = m(&[&[0, -1], &[1, 0]]);
    let p = vec![vec![j.clone(), Matrix::zeros(2, 2)]];
    for (fam, dim) in [(FamilyId::Lorentz1, 4), (FamilyId::Lorentz2, 3)] {
        let mut s = FamilySpec::new(fam, 2);
        s.h_basis = vec![j.clone()];
        let g = build_lorentz_metric(&s, &p)?;
        out.push(Check::eq(
            format!("{} catalog dim", fam.name()),
            dim,
            build_algebra(&s)?.dim(),
        ));
        out.extend(hol_matches(&s, &g, 6)?);
    }
    Ok(out)
}

fn stretch_case(name: &str, p: Vec<Matrix>, h: Vec<Matrix>, n: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = MetricRecipe::builtin(name)?.build()?;
    let r = curvature(&christoffel(&g)?);
    let zero = vec![qi(0); n + 2];
    for (i, pi) in p.iter().enumerate() {
        let got = so_block(&r.endomorphism_at(&[i + 1, n + 1], &zero), n);
        out.push(Check::eq(
            format!(
                "{name}: pr_so({n}) R(d{}, d{})_0 = P(e{})",
                i + 1,
                n + 1,
                i + 1
            ),
            pi,
            &got,
        ));
    }
    let rep = holonomy(&g, 2, 1)?;
    let mut s = FamilySpec::new(FamilyId::Lorentz2, n);
    s.h_basis = h;
    let cat = build_algebra(&s)?;
    out.push(Check::holds(
        format!(
            "{name}: holonomy at order {} lies in g^(2,h)",
            rep.max_order_used
        ),
        cat.subspace().contains_subspace(&rep.algebra.subspace()),
    ));
    if rep.stabilized {
        out.push(Check::eq(
            format!("{name}: holonomy = g^(2,h)"),
            cat.subspace(),
            rep.algebra.subspace(),
        ));
    }
    Ok(out)
}

fn criterion_8() -> Result<Vec<Check>> {
    let mut out = stretch_case("g2", g2_p(), g2_generators(), 7)?;
    out.extend(stretch_case("spin7", spin7_p(), spin7_generators(), 8)?);
    Ok(out)
}

/// A metric `Cᵀ [[0,0,I_a],[0,I_b,U],[I_a,Uᵀ,F]] C` with `U`, `F` of degree ≤ 2 and `C`
/// constant unipotent, so `det g` is constant.
pub fn random_metric(rng: &mut impl Rng, dim: usize) -> Result<PolynomialMetric> {
    let a = rng.gen_range(1..=dim / 2);
    let b = dim - 2 * a;
    let rand_poly = |rng: &mut dyn rand::RngCore| {
        let mut p = Polynomial::zero(dim);
        for _ in 0..3 {
            let mut e = vec![0u32; dim];
            for _ in 0..rng.gen_range(1..=2) {
                e[rng.gen_range(0..dim)] += 1;
            }
            p = &p + &Polynomial::term(dim, e, qi(rng.gen_range(-2..=2)));
        }
        p
    };
    let mut g = PolyMat::zeros(dim, dim);
    let one = Polynomial::one(dim);
    for i in 0..a {
        g.set(i, a + b + i, one.clone());
        g.set(a + b + i, i, one.clone());
    }
    for i in 0..b {
        g.set(a + i, a + i, one.clone());
        for j in 0..a {
            let u = rand_poly(rng);
            g.set(a + i, a + b + j, u.clone());
            g.set(a + b + j, a + i, u);
        }
    }
    for i in 0..a {
        for j in i..a {
            let f = rand_poly(rng);
            g.set(a + b + i, a + b + j, f.clone());
            g.set(a + b + j, a + b + i, f);
        }
    }
    let mut c = Matrix::identity(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            c[(i, j)] = qi(rng.gen_range(-1..=1));
        }
    }
    let c = PolyMat::constant(&c, dim);
    let ct = PolyMat::constant(&c.at_zero().transpose(), dim);
    let g = ct.mul_trunc(&g, u32::MAX).mul_trunc(&c, u32::MAX);
    PolynomialMetric::new(g, vec![qi(0); dim])
}

/// Exact identities for one metric: Γ symmetric, `∇g = 0`, `R` antisymmetric in its last
/// pair, first Bianchi, pair symmetry at the basepoint, holonomy generators η-skew.
pub fn metric_identities(g: &PolynomialMetric) -> Result<Vec<(&'static str, bool)>> {
    let c = christoffel(g)?;
    let r = curvature(&c);
    let n = g.dim();
    let bp = g.basepoint().to_vec();
    let mut values = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            values.push(((a, b), r.endomorphism_at(&[a, b], &bp)));
        }
    }
    let ambient = MetricStructure::new(g.eta(), None)?;
    let pair_sym = match CurvatureTensor::from_values(n, values) {
        Ok(t) => pair_symmetry_check(&t, &ambient),
        Err(_) => false,
    };
    let rep = holonomy(g, 1, 1)?;
    Ok(vec![
        ("christoffel symmetric", c.is_symmetric()),
        ("nabla g = 0", c.is_metric_compatible(g)),
        ("R antisymmetric", r.is_antisymmetric_in_cd()),
        ("first Bianchi", r.first_bianchi_holds()),
        ("pair symmetry at basepoint", pair_sym),
        (
            "holonomy generators eta-skew",
            rep.algebra.basis().iter().all(|x| ambient.is_skew(x)),
        ),
    ])
}

fn commutes_with_j(alg: &MatrixLieAlgebra, j: &Matrix) -> bool {
    alg.basis().iter().all(|x| x * j == j * x)
}

fn criterion_9(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fails: Vec<String> = Vec::new();
    for k in 0..20 {
        let dim = 3 + k % 4;
        let g = random_metric(&mut rng, dim)?;
        for (name, ok) in metric_identities(&g)? {
            if !ok {
                fails.push(format!("metric {k} (dim {dim}): {name}"));
            }
        }
    }
    let mut out = vec![Check::eq(
        "20 random metrics, dim 3..6: failed identities",
        Vec::<String>::new(),
        fails,
    )];
    let mut specs: Vec<FamilySpec> = n0_table_rows()?.into_iter().map(|r| r.2).collect();
    let mut s = FamilySpec::new(FamilyId::HolLambda, 1);
    s.m = 1;
    s.lambda = qi(2);
    s.u_basis = vec![UElem::j_range(1, 1, 1)];
    specs.push(s);
    for s in specs {
        let g = build_pk_metric(&s)?;
        let rep = holonomy(&g, 6, 2)?;
        let j = StandardFrame::pseudo_kaehler(s.n)
            .j()
            .cloned()
            .expect("pseudo-Kähler frame has J");
        out.push(Check::holds(
            format!("{}: generators commute with J", s.label()),
            commutes_with_j(&rep.algebra, &j),
        ));
    }
    Ok(out)
}

fn criterion_10() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f1 = StandardFrame::pseudo_kaehler(1);
    let ex = pk_algebra(1, &[gen_n1(1, 1), gen_c(1)])?;
    out.push(Check::eq(
        "N1 + C in u(1,2) weakly irreducible",
        true,
        matches!(
            weak_irreducibility(&ex)?,
            WeakIrreducibility::WeaklyIrreducible
        ),
    ));
    let n1 = pk_algebra(1, &[gen_n1(1, 1)])?;
    let unit = |i: usize| f1.vector(i);
    let add = |a: Vec<Q>, b: Vec<Q>| a.iter().zip(&b).map(|(x, y)| x + y).collect::<Vec<Q>>();
    let witness = Subspace::span(
        6,
        vec![
            add(unit(f1.p1()), unit(f1.p2())),
            add(unit(f1.e(1)), unit(f1.f(1))),
            add(unit(f1.q1()), unit(f1.q2())),
        ],
    )?;
    out.push(Check::eq(
        "N1 printed witness",
        InvariantVerdict::InvariantNonDegenerate,
        check_invariant_subspace(&n1, &witness)?,
    ));
    out.push(Check::holds(
        "N1 verdict is ReducibleWitness",
        matches!(
            weak_irreducibility(&n1)?,
            WeakIrreducibility::ReducibleWitness(_)
        ),
    ));
    let f0 = StandardFrame::pseudo_kaehler(0);
    let a1 = pk_algebra(0, &[gen_a1(0)])?;
    let span_pq = Subspace::span(4, vec![f0.vector(f0.p1()), f0.vector(f0.q1())])?;
    let verdict = weak_irreducibility(&a1)?;
    out.push(Check::eq(
        "A1 in su(1,1) witness",
        Some(span_pq.clone()),
        match verdict {
            WeakIrreducibility::ReducibleWitness(w) => Some(w),
            _ => None,
        },
    ));
    out.push(Check::eq(
        "A1 span{p1,q1} invariant and non-degenerate",
        InvariantVerdict::InvariantNonDegenerate,
        check_invariant_subspace(&a1, &span_pq)?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Identification;

    #[test]
    fn ikemakhen_generators_close_to_so3() {
        let a = ikemakhen_generators();
        let mut eta = Matrix::identity(5);
        eta[(1, 1)] = qr(1, 3);
        let ms = MetricStructure::new(eta, None).unwrap();
        let alg = MatrixLieAlgebra::from_span(ms.clone(), &a).unwrap();
        assert!(a.iter().all(|x| ms.is_skew(x)));
        assert!(alg.is_bracket_closed());
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn random_metrics_have_constant_determinant_and_identity_eta_signature() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 3..=6 {
            let g = random_metric(&mut rng, dim).unwrap();
            assert_eq!(g.dim(), dim);
            assert!(g.g().is_symmetric());
        }
    }

    #[test]
    fn unknown_criterion_is_an_error() {
        assert!(run_criterion(0, &ReproOptions::default()).is_err());
        assert!(run_criterion(11, &ReproOptions::default()).is_err());
    }

    #[test]
    fn n0_metric_is_flat_without_f() {
        let z = Polynomial::zero(4);
        let g = n0_metric(z.clone(), z.clone(), z).unwrap();
        assert!(curvature(&christoffel(&g).unwrap()).is_zero());
        assert!(matches!(
            identify(
                &holonomy(&g, 2, 1).unwrap().algebra,
                &StandardFrame::pseudo_kaehler(0),
                &[]
            )
            .unwrap(),
            Identification::Unknown { .. }
        ));
    }
}
