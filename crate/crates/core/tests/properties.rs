use holokit::catalog::{build_algebra, expected_dim, FamilyId, FamilySpec, StandardFrame};
use holokit::curvspace::{curvature_space, is_berger};
use holokit::exactnum::{qi, qr, Polynomial, Q};
use holokit::liealg::{commutator, MatrixLieAlgebra};
use holokit::linalg::{Matrix, Subspace};
use holokit::repro::{metric_identities, random_metric};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NVARS: usize = 3;

fn rational() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qr(n, d))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, NVARS), rational()), 0..5).prop_map(
        |terms| {
            terms
                .into_iter()
                .fold(Polynomial::zero(NVARS), |p, (e, c)| {
                    &p + &Polynomial::term(NVARS, e, c)
                })
        },
    )
}

fn point() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(rational(), NVARS)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(qi).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(p in polynomial(), q in polynomial(), r in polynomial()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in polynomial(), q in polynomial(), x in point()) {
        let (px, qx) = (p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!((&p * &q).evaluate(&x).unwrap(), &px * &qx);
        prop_assert_eq!((&p + &q).evaluate(&x).unwrap(), &px + &qx);
        prop_assert_eq!(p.evaluate_horner(&x).unwrap(), px);
    }

    #[test]
    fn derivative_obeys_leibniz(p in polynomial(), q in polynomial(), i in 0..NVARS) {
        prop_assert_eq!((&p * &q).d(i), &(&p.d(i) * &q) + &(&p * &q.d(i)));
    }

    #[test]
    fn shift_recenters_evaluation(p in polynomial(), x in point(), s in point()) {
        let moved: Vec<Q> = x.iter().zip(&s).map(|(a, b)| a + b).collect();
        prop_assert_eq!(p.shift(&s).evaluate(&x).unwrap(), p.evaluate(&moved).unwrap());
    }

    #[test]
    fn rank_nullity(m in matrix(3, 5)) {
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.dim(), 5);
        for v in ns.basis() {
            prop_assert!(m.mul_vec(v).iter().all(|c| *c == qi(0)));
        }
    }

    #[test]
    fn square_inverse_when_full_rank(m in matrix(3, 3)) {
        match m.inverse() {
            Some(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(3)),
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(2, 4), b in matrix(2, 4)) {
        let sa = Subspace::span(4, a.to_rows()).unwrap();
        let sb = Subspace::span(4, b.to_rows()).unwrap();
        let sum = sa.sum(&sb).unwrap();
        let meet = sa.intersect(&sb).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(sa.contains_subspace(&meet) && sum.contains_subspace(&sb));
    }

    #[test]
    fn jacobi_identity(a in matrix(3, 3), b in matrix(3, 3), c in matrix(3, 3)) {
        let t1 = commutator(&a, &commutator(&b, &c));
        let t2 = commutator(&b, &commutator(&c, &a));
        let t3 = commutator(&c, &commutator(&a, &b));
        prop_assert!((&(&t1 + &t2) + &t3).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn n0_gamma_family_is_berger_and_closed(g1 in -3i64..=3, g2 in -3i64..=3) {
        let mut s = FamilySpec::new(FamilyId::HolN0Gamma, 0);
        (s.gamma1, s.gamma2) = (qi(g1), qi(g2));
        let alg = build_algebra(&s).unwrap();
        prop_assert_eq!(alg.dim(), expected_dim(&s));
        prop_assert!(alg.is_bracket_closed());
        prop_assert!(is_berger(&alg).unwrap());
        let j = StandardFrame::pseudo_kaehler(0).j().unwrap().clone();
        for x in alg.basis() {
            prop_assert_eq!(x * &j, &j * x);
        }
    }

    #[test]
    fn curvature_space_elements_are_algebraic_curvature_tensors(pick in 0usize..4, lambda in prop::sample::select(vec![-2i64, -1, 1, 2])) {
        let spec = match pick {
            0 => FamilySpec::new(FamilyId::HolN0One, 0),
            1 => FamilySpec::new(FamilyId::HolN0Two, 0),
            2 => FamilySpec::new(FamilyId::TwirC, 0),
            _ => {
                let mut s = FamilySpec::new(FamilyId::HolLambda, 1);
                (s.m, s.lambda) = (1, qi(lambda));
                s
            }
        };
        let alg = build_algebra(&spec).unwrap();
        let cs = curvature_space(&alg).unwrap();
        for r in cs.basis() {
            prop_assert!(r.bianchi_holds());
            prop_assert!(r.values_in(&alg));
        }
        let image = MatrixLieAlgebra::from_subspace(alg.ambient().clone(), &holokit::curvspace::image_span(&cs));
        prop_assert!(image.is_subalgebra_of(&alg));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn random_metrics_satisfy_curvature_identities(seed in any::<u64>(), dim in 3usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_metric(&mut rng, dim).unwrap();
        for (name, ok) in metric_identities(&g).unwrap() {
            prop_assert!(ok, "{} fails for seed {} dim {}", name, seed, dim);
        }
    }
}
