//! Interior algebras and their induction: the endomorphism form, the tensor
//! form over a Frobenius system, and the variants through augmented morphisms.

mod puig;
mod surjective;

pub use puig::{psi_isomorphism, twisted_bimodule, PsiIsomorphism, PuigInduction};
pub use surjective::{
    general_induction, surjective_induction_lemma, surjective_puig_induction, AugmentedMorphism, GeneralInduction,
    LemmaIsomorphism, Sandwich, SurjectivePuig,
};

use crate::algebra::{verify_algebra_morphism, Algebra, AugmentedAlgebra, EndomorphismAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{FiniteDimSpace, Matrix};
use crate::modules::{tensor_over, Bimodule, Module, Side, TensorOverB};
use crate::report::Report;

/// An algebra `C` with a structural morphism `σ: B → C`.
#[derive(Clone, Debug)]
pub struct InteriorAlgebra {
    pub base: Algebra,
    pub algebra: Algebra,
    /// `dim C × dim B`.
    pub sigma: Matrix,
}

impl InteriorAlgebra {
    pub fn new(base: Algebra, algebra: Algebra, sigma: Matrix) -> Result<InteriorAlgebra> {
        let c = InteriorAlgebra { base, algebra, sigma };
        c.verify().into_result()?;
        Ok(c)
    }

    /// `k` with `σ = α`.
    pub fn trivial(base: &AugmentedAlgebra) -> InteriorAlgebra {
        let field = base.algebra.field();
        let sigma = Matrix::from_rows(field, base.algebra.dim(), &[base.aug.clone()]).expect("row");
        InteriorAlgebra { base: base.algebra.clone(), algebra: Algebra::ground(field), sigma }
    }

    /// `B` itself with `σ = id`.
    pub fn regular(base: &Algebra) -> InteriorAlgebra {
        InteriorAlgebra {
            base: base.clone(),
            algebra: base.clone(),
            sigma: Matrix::identity(base.field(), base.dim()),
        }
    }

    /// `End_k(V)` for a left `B`-module `V`, with `σ` the representation.
    pub fn endomorphisms(v: &Module) -> Result<InteriorAlgebra> {
        if v.side != Side::Left {
            return Err(Error::Shape("endomorphism interior algebra needs a left module".into()));
        }
        let field = v.field();
        let c = Algebra::matrix_algebra(v.dim(), &Algebra::ground(field))?;
        let cols: Vec<_> = v.ops.iter().map(Matrix::to_flat).collect();
        let sigma = Matrix::from_columns(field, c.dim(), &cols);
        InteriorAlgebra::new(v.algebra.clone(), c, sigma)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn verify(&self) -> Report {
        let mut r = self.algebra.verify();
        r.merge(verify_algebra_morphism(&self.base, &self.algebra, &self.sigma));
        r
    }

    /// `C` as a left `B`-module, `b·c = σ(b)c`.
    pub fn left_module(&self) -> Module {
        Module::regular(&self.algebra, Side::Left).restrict(&self.base, &self.sigma)
    }

    /// `C` as a right `B`-module, `c·b = cσ(b)`.
    pub fn right_module(&self) -> Module {
        Module::regular(&self.algebra, Side::Right).restrict(&self.base, &self.sigma)
    }

    /// Right multiplication operators of `C` on itself.
    pub fn right_regular_ops(&self) -> Vec<Matrix> {
        Module::regular(&self.algebra, Side::Right).ops
    }

    /// Restriction of the structure along `map: B' → B`.
    pub fn restrict(&self, sub: &Algebra, map: &Matrix) -> InteriorAlgebra {
        InteriorAlgebra { base: sub.clone(), algebra: self.algebra.clone(), sigma: self.sigma.mul(map) }
    }
}

/// An algebra with a structural morphism from `source`.
#[derive(Clone, Debug)]
pub struct InducedInteriorAlgebra {
    pub source: Algebra,
    pub carrier: Algebra,
    /// `dim carrier × dim source`.
    pub structural: Matrix,
}

impl InducedInteriorAlgebra {
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn verify(&self) -> Report {
        let mut r = self.carrier.verify();
        r.merge(verify_algebra_morphism(&self.source, &self.carrier, &self.structural));
        r
    }
}

/// `Ind_M(C) = End_{C^op}(M ⊗_B C)` with `a ↦ (left multiplication by a)`.
#[derive(Clone, Debug)]
pub struct LinckelmannInduction {
    pub tensor: TensorOverB,
    /// Right action of each basis vector of `C` on `M ⊗_B C`.
    pub right_c: Vec<Matrix>,
    /// Left action of each basis vector of `A` on `M ⊗_B C`.
    pub left_a: Vec<Matrix>,
    pub end: EndomorphismAlgebra,
    pub induced: InducedInteriorAlgebra,
}

pub fn linckelmann_induction(m: &Bimodule, c: &InteriorAlgebra) -> Result<LinckelmannInduction> {
    if m.right.algebra != c.base {
        return Err(Error::Shape("bimodule and interior algebra are over different algebras".into()));
    }
    let tensor = tensor_over(&m.right, &c.left_module())?;
    let right_c = tensor.transport_right_all(&c.right_regular_ops(), "right C-action on M⊗_B C")?;
    let left_a = tensor.transport_left_all(&m.left.ops, "left A-action on M⊗_B C")?;
    crate::modules::assert_commuting(&left_a, &right_c, "M⊗_B C")?;
    let field = c.algebra.field();
    let end = EndomorphismAlgebra::commutant(field, tensor.dim(), &right_c, "E")?;
    let cols = left_a
        .iter()
        .enumerate()
        .map(|(i, op)| {
            end.coords_of(op)
                .ok_or_else(|| Error::check("left multiplication commutes with C", m.left.algebra.label(i).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = InducedInteriorAlgebra {
        source: m.left.algebra.clone(),
        carrier: end.algebra.clone(),
        structural: Matrix::from_columns(field, end.dim(), &cols),
    };
    induced.verify().into_result()?;
    Ok(LinckelmannInduction { tensor, right_c, left_a, end, induced })
}

/// Labels `x⊗c⊗y` for pure-tensor quotient bases.
pub(crate) fn triple_space(labels: impl IntoIterator<Item = String>) -> Result<FiniteDimSpace> {
    FiniteDimSpace::new(labels.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_bijective;
    use crate::group::FiniteGroup;
    use crate::hopf::HopfAlgebra;
    use crate::scalar::Field;

    fn kg(g: &FiniteGroup) -> HopfAlgebra {
        HopfAlgebra::group_algebra(Field::Rational, g)
    }

    fn subgroup(g: &FiniteGroup, h: &[usize]) -> (HopfAlgebra, Matrix) {
        let f = Field::Rational;
        let (sub, idx) = g.subgroup(h).unwrap();
        let mut incl = Matrix::zeros(f, g.order(), sub.order());
        for (j, &x) in idx.iter().enumerate() {
            incl.set(x, j, f.one());
        }
        (kg(&sub), incl)
    }

    #[test]
    fn unit_bimodule_gives_c() {
        let a = kg(&FiniteGroup::cyclic(3)).alg;
        let m = Bimodule::regular(&a, &a, &Matrix::identity(Field::Rational, 3));
        let c = InteriorAlgebra::regular(&a);
        let ind = linckelmann_induction(&m, &c).unwrap();
        assert_eq!(ind.induced.dim(), 3);
        assert!(is_bijective(&ind.induced.structural));
    }

    #[test]
    fn s3_over_c3_dimensions() {
        let g = FiniteGroup::symmetric3();
        let a = kg(&g);
        let (b, incl) = subgroup(&g, &[0, 1, 2]);
        let m = Bimodule::regular(&a.alg, &b.alg, &incl);
        let ind = linckelmann_induction(&m, &InteriorAlgebra::regular(&b.alg)).unwrap();
        assert_eq!(ind.induced.dim(), 12);
        let ind = linckelmann_induction(&m, &InteriorAlgebra::trivial(&b.augmented())).unwrap();
        assert_eq!(ind.induced.dim(), 4);
        assert!(ind.induced.verify().is_ok());
    }

    #[test]
    fn endomorphism_interior_algebra() {
        let c2 = kg(&FiniteGroup::cyclic(2)).alg;
        let v = Module::regular(&c2, Side::Left);
        let c = InteriorAlgebra::endomorphisms(&v).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.sigma.apply(c2.unit()), c.algebra.unit().clone());
    }
}
