use hopfind::algebra::Algebra;
use hopfind::duality::{corollary_injective, rho_op, theorem_injective, theorem_surjective};
use hopfind::frobenius::FrobeniusSystem;
use hopfind::group::FiniteGroup;
use hopfind::hopf::{HopfAlgebra, HopfEmbedding, NormalHopfQuotient};
use hopfind::interior::{psi_isomorphism, InteriorAlgebra, PuigInduction};
use hopfind::linalg::Matrix;
use hopfind::smash::{turull_group_comparison, ModuleAlgebra};
use hopfind::{Error, Field};

fn taft3() -> (Field, HopfAlgebra) {
    let f = Field::prime(7).unwrap();
    let q = f.primitive_root_of_unity(3).unwrap();
    (f, HopfAlgebra::taft(f, 3, &q).unwrap())
}

/// The grouplikes `{1, g, g²}` of `T_3`, with `β(g^i) = q^{ki} g^i` as hint.
fn taft_grouplikes_twisted(k: u64) -> HopfEmbedding {
    let (f, t) = taft3();
    let q = f.primitive_root_of_unity(3).unwrap();
    let c3 = HopfAlgebra::group_algebra(f, &FiniteGroup::cyclic(3));
    let mut incl = Matrix::zeros(f, 9, 3);
    for i in 0..3 {
        incl.set(i, i, f.one());
    }
    let mut beta = Matrix::zeros(f, 3, 3);
    for i in 0..3u64 {
        beta.set(i as usize, i as usize, q.pow(k * i));
    }
    HopfEmbedding::new(c3, t, incl).unwrap().with_beta_hint(beta)
}

fn taft_grouplikes() -> HopfEmbedding {
    taft_grouplikes_twisted(TWIST)
}

const TWIST: u64 = 1;

#[test]
fn taft_needs_the_twist() {
    for k in [0, 2] {
        assert!(matches!(FrobeniusSystem::build(&taft_grouplikes_twisted(k)), Err(Error::NoFrobeniusSystem(_))));
    }
    let sys = FrobeniusSystem::build(&taft_grouplikes_twisted(1)).unwrap();
    assert_eq!(Some(&sys.beta), sys.embedding.beta_hint.as_ref());
}

#[test]
fn taft_algebra_over_f7() {
    let (_, t) = taft3();
    assert!(t.verify().is_ok());
    assert!(t.dual().verify().is_ok());
    assert_eq!(t.as_group(), None);
    let rho = rho_op(&t).unwrap();
    assert!(rho.factorization(true).is_ok());
}

#[test]
fn taft_frobenius_and_puig_induction() {
    let e = taft_grouplikes();
    assert_eq!(e.index(), 3);
    let sys = FrobeniusSystem::build(&e).unwrap();
    assert!(sys.verify().is_ok());
    let p = PuigInduction::build(&sys, &InteriorAlgebra::regular(&e.sub.alg)).unwrap();
    assert_eq!(p.dim(), 27);
    assert!(p.induced.verify().is_ok());
    let psi = psi_isomorphism(&p).unwrap();
    assert_eq!(psi.linckelmann.induced.dim(), 27);
}

#[test]
fn taft_injective_theorem_with_trivial_coefficients() {
    let e = taft_grouplikes();
    let sys = FrobeniusSystem::build(&e).unwrap();
    let ma = ModuleAlgebra::trivial(&e.sub, &Algebra::ground(e.sub.field()));
    let th = theorem_injective(&sys, &ma).unwrap();
    assert_eq!(th.expected_dim(), 27);
    assert_eq!(th.composite.dims(), (27, 27));
    let cor = corollary_injective(&sys, &th).unwrap();
    assert_eq!(cor.iso.dims(), (27, 27));
}

#[test]
fn grouplikes_of_taft_are_not_normal() {
    let e = taft_grouplikes();
    assert!(matches!(NormalHopfQuotient::new(e), Err(Error::NotNormal(_))));
}

#[test]
fn surjective_endpoints() {
    let f = Field::Rational;
    let g = FiniteGroup::symmetric3();
    let ma = ModuleAlgebra::adjoint(&HopfAlgebra::group_algebra(f, &g));
    // K = 1: nothing is divided out
    let q = NormalHopfQuotient::new(HopfEmbedding::subgroup(f, &g, &[0]).unwrap()).unwrap();
    assert_eq!(theorem_surjective(&q, &ma).unwrap().iso.dims(), (36, 36));
    // K = B: the quotient is k and C^K is the centre of kS3
    let q = NormalHopfQuotient::new(HopfEmbedding::subgroup(f, &g, &(0..6).collect::<Vec<_>>()).unwrap()).unwrap();
    assert_eq!(theorem_surjective(&q, &ma).unwrap().iso.dims(), (3, 3));
}

#[test]
fn group_comparison_for_trivial_actions() {
    let f = Field::Rational;
    let g = FiniteGroup::symmetric3();
    let e = HopfEmbedding::subgroup(f, &g, &[0, 3]).unwrap();
    let c = Algebra::matrix_algebra(2, &Algebra::ground(f)).unwrap();
    let ma = ModuleAlgebra::trivial(&e.sub, &c);
    let cmp = turull_group_comparison(&g, &[0, 3], &ma).unwrap();
    assert_eq!(cmp.coset_algebra.dim(), 12);
}
