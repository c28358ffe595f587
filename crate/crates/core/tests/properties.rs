use hopfind::algebra::Algebra;
use hopfind::duality::{rho_f, theorem_injective, theorem_surjective};
use hopfind::frobenius::FrobeniusSystem;
use hopfind::group::FiniteGroup;
use hopfind::hopf::{CoinvariantDual, HopfAlgebra, HopfEmbedding, NormalHopfQuotient};
use hopfind::linalg::{Matrix, Vector};
use hopfind::smash::{turull_induction, ModuleAlgebra, SmashProduct};
use hopfind::Field;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn q() -> Field {
    Field::Rational
}

/// `(n, d)` with `d | n`, for `C_d ≤ C_n`.
fn cyclic_pair() -> impl Strategy<Value = (usize, usize)> {
    (1usize..7).prop_flat_map(|n| {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        (Just(n), prop::sample::select(divisors))
    })
}

fn cyclic_embedding(n: usize, d: usize) -> HopfEmbedding {
    let g = FiniteGroup::cyclic(n);
    let h: Vec<usize> = (0..d).map(|i| i * (n / d)).collect();
    HopfEmbedding::subgroup(q(), &g, &h).unwrap()
}

fn vector(f: Field, coeffs: &[i64]) -> Vector {
    coeffs.iter().map(|&c| f.from_i64(c)).collect()
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn tensor_and_matrix_algebras_verify(n in 1usize..4, m in 1usize..3) {
        let a = HopfAlgebra::group_algebra(q(), &FiniteGroup::cyclic(n)).alg;
        let mat = Algebra::matrix_algebra(m, &Algebra::ground(q())).unwrap();
        let t = a.tensor(&mat);
        prop_assert_eq!(t.dim(), n * m * m);
        prop_assert!(t.verify().is_ok());
        prop_assert!(mat.verify().is_ok());
        prop_assert_eq!(t.opposite().opposite(), t);
    }

    #[test]
    fn group_algebras_and_duals_are_hopf(n in 1usize..7) {
        let h = HopfAlgebra::group_algebra(q(), &FiniteGroup::cyclic(n));
        prop_assert!(h.verify().is_ok());
        prop_assert!(h.dual().verify().is_ok());
        prop_assert_eq!(h.as_group(), Some(FiniteGroup::cyclic(n)));
    }

    #[test]
    fn embeddings_have_free_bases_and_frobenius_systems((n, d) in cyclic_pair()) {
        let e = cyclic_embedding(n, d);
        prop_assert_eq!(e.index() * d, n);
        prop_assert!(e.verify().is_ok());
        let f = CoinvariantDual::build(&e).unwrap();
        prop_assert_eq!(f.dim() * e.sub.dim(), e.ambient.dim());
        prop_assert!(f.verify().is_ok());
        let sys = FrobeniusSystem::build(&e).unwrap();
        prop_assert!(sys.verify().is_ok());
        prop_assert_eq!(&sys.beta, &Matrix::identity(q(), d));
        let r = rho_f(&e).unwrap();
        prop_assert_eq!(r.smash.dim(), n * n / d);
    }

    #[test]
    fn adjoint_action_is_multiplicative_on_combinations(
        n in 2usize..5,
        h in prop::collection::vec(-2i64..3, 4),
        x in prop::collection::vec(-2i64..3, 4),
        y in prop::collection::vec(-2i64..3, 4),
    ) {
        let hopf = HopfAlgebra::group_algebra(q(), &FiniteGroup::cyclic(n));
        let ma = ModuleAlgebra::adjoint(&hopf);
        let (h, x, y) = (vector(q(), &h[..n]), vector(q(), &x[..n]), vector(q(), &y[..n]));
        let c = &ma.algebra;
        let lhs = ma.act(&h).apply(&c.mul(&x, &y));
        let mut rhs = vec![q().zero(); n];
        let delta = hopf.coproduct(&h);
        for (pq, coef) in delta.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (p, r) = (pq / n, pq % n);
            let term = c.mul(&ma.act(&hopf.alg.basis_vector(p)).apply(&x), &ma.act(&hopf.alg.basis_vector(r)).apply(&y));
            for (acc, t) in rhs.iter_mut().zip(term) {
                *acc += &(coef * &t);
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smash_and_turull_dimensions((n, d) in cyclic_pair(), adjoint in any::<bool>()) {
        let e = cyclic_embedding(n, d);
        let ma = if adjoint {
            ModuleAlgebra::adjoint(&e.sub)
        } else {
            ModuleAlgebra::translation(q(), &e.sub.as_group().unwrap())
        };
        let smash = SmashProduct::build(&ma).unwrap();
        prop_assert_eq!(smash.dim(), d * d);
        prop_assert!(smash.algebra().verify().is_ok());
        let t = turull_induction(&e, &ma).unwrap();
        prop_assert_eq!(t.induced.dim(), (n / d) * d);
        prop_assert!(t.induced.verify().is_ok());
    }

    #[test]
    fn surjective_theorem_for_cyclic_quotients((n, d) in cyclic_pair()) {
        let e = cyclic_embedding(n, d);
        let qt = NormalHopfQuotient::new(e.clone()).unwrap();
        prop_assert!(qt.bbar.verify().is_ok());
        let ma = ModuleAlgebra::translation(q(), &FiniteGroup::cyclic(n));
        let th = theorem_surjective(&qt, &ma).unwrap();
        prop_assert_eq!(th.iso.dims(), ((n / d) * (n / d), (n / d) * (n / d)));
        prop_assert!(th.turull.k_actions_coincide(&th.smash).is_ok());
        prop_assert!(th.iso.verify().is_ok());
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn injective_theorem_for_cyclic_pairs((n, d) in cyclic_pair().prop_filter("small", |(n, _)| *n <= 4)) {
        let e = cyclic_embedding(n, d);
        let sys = FrobeniusSystem::build(&e).unwrap();
        let ma = ModuleAlgebra::trivial(&e.sub, &Algebra::ground(q()));
        let th = theorem_injective(&sys, &ma).unwrap();
        let m = n / d;
        prop_assert_eq!(th.expected_dim(), m * m * d);
        prop_assert_eq!(th.composite.dims(), (m * m * d, m * m * d));
        let id = Matrix::identity(q(), m * m * d);
        prop_assert_eq!(th.composite.forward.mul(&th.composite.backward), id.clone());
        prop_assert_eq!(th.composite.backward.mul(&th.composite.forward), id);
    }
}
