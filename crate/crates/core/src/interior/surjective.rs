use super::{linckelmann_induction, InducedInteriorAlgebra, InteriorAlgebra, LinckelmannInduction};
use crate::algebra::{is_bijective, verify_algebra_morphism, Algebra, AugmentedAlgebra};
use crate::error::{Error, Result};
use crate::hopf::NormalHopfQuotient;
use crate::linalg::{kernel_basis, solve_linear, Coordinates, Matrix, Subspace, Vector};
use crate::modules::{invariants, tensor_over, Bimodule, Module, Side, TensorOverB};
use crate::report::Report;

/// A morphism `φ: B → A` of augmented algebras together with a subalgebra `K ≤ B`.
#[derive(Clone, Debug)]
pub struct AugmentedMorphism {
    pub source: AugmentedAlgebra,
    pub target: AugmentedAlgebra,
    /// `dim A × dim B`.
    pub phi: Matrix,
    pub k: Algebra,
    /// `dim B × dim K`.
    pub k_incl: Matrix,
}

/// Which of the inclusions `Ker α_B ∩ K ⊆ Ker φ ⊆ (Ker α_B ∩ K)B` hold, plus the
/// variant with `B(Ker α_B ∩ K)` on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub lower: bool,
    pub upper: bool,
    pub upper_left_product: bool,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower && self.upper
    }
}

impl AugmentedMorphism {
    pub fn new(
        source: AugmentedAlgebra,
        target: AugmentedAlgebra,
        phi: Matrix,
        k: Algebra,
        k_incl: Matrix,
    ) -> Result<AugmentedMorphism> {
        let m = AugmentedMorphism { source, target, phi, k, k_incl };
        m.verify().into_result()?;
        Ok(m)
    }

    /// `B → B/BK⁺` with `K` the normal Hopf subalgebra.
    pub fn from_normal_quotient(q: &NormalHopfQuotient) -> Result<AugmentedMorphism> {
        AugmentedMorphism::new(
            q.embedding.ambient.augmented(),
            q.bbar.augmented(),
            q.proj.clone(),
            q.embedding.sub.alg.clone(),
            q.embedding.incl.clone(),
        )
    }

    pub fn verify(&self) -> Report {
        let (b, a) = (&self.source.algebra, &self.target.algebra);
        let mut r = verify_algebra_morphism(b, a, &self.phi);
        if let Some(i) = (0..b.dim()).find(|&i| self.target.eval(&self.phi.column(i)) != self.source.aug[i]) {
            r.fail("α_A∘φ = α_B", b.label(i).to_string());
        }
        r.merge(verify_algebra_morphism(&self.k, b, &self.k_incl));
        if self.k_incl.rank() != self.k.dim() {
            r.fail("K → B is injective", format!("rank {}", self.k_incl.rank()));
        }
        r
    }

    pub fn is_surjective(&self) -> bool {
        self.phi.rank() == self.target.algebra.dim()
    }

    /// `α_B` restricted to `K`.
    pub fn k_augmentation(&self) -> Vector {
        self.k_incl.columns().iter().map(|c| self.source.eval(c)).collect()
    }

    /// `Ker α_B ∩ K` inside `B`.
    pub fn k_plus(&self) -> Vec<Vector> {
        let field = self.k.field();
        crate::linalg::kernel_of_rows(field, self.k.dim(), std::iter::once(self.k_augmentation()))
            .iter()
            .map(|v| self.k_incl.apply(v))
            .collect()
    }

    pub fn sandwich(&self) -> Sandwich {
        let b = &self.source.algebra;
        let field = b.field();
        let n = b.dim();
        let kp = self.k_plus();
        let ker = Subspace::span(field, n, kernel_basis(&self.phi));
        let kp_space = Subspace::span(field, n, kp.clone());
        let right = Subspace::span(field, n, kp.iter().flat_map(|m| (0..n).map(move |i| b.mul(m, &b.basis_vector(i)))));
        let left = Subspace::span(field, n, kp.iter().flat_map(|m| (0..n).map(move |i| b.mul(&b.basis_vector(i), m))));
        Sandwich {
            lower: kp_space.is_subspace_of(&ker),
            upper: ker.is_subspace_of(&right),
            upper_left_product: ker.is_subspace_of(&left),
        }
    }

    /// A preimage of every basis vector of `A`.
    fn lifts(&self) -> Result<Vec<Vector>> {
        let a = &self.target.algebra;
        (0..a.dim())
            .map(|i| {
                solve_linear(&self.phi, &a.basis_vector(i))?
                    .ok_or_else(|| Error::Hypothesis(format!("φ is not surjective: {} has no preimage", a.label(i))))
            })
            .collect()
    }

    fn require_sandwich(&self) -> Result<Sandwich> {
        let s = self.sandwich();
        if !s.lower {
            return Err(Error::Hypothesis("Ker α_B ∩ K ⊄ Ker φ".into()));
        }
        if !s.upper {
            return Err(Error::Hypothesis("Ker φ ⊄ (Ker α_B ∩ K)B".into()));
        }
        Ok(s)
    }
}

/// `k_{α_B} ⊗_K C`.
fn k_tensor(data: &AugmentedMorphism, c: &InteriorAlgebra) -> Result<TensorOverB> {
    let k = Module::trivial(&data.k, &data.k_augmentation(), Side::Right);
    tensor_over(&k, &c.restrict(&data.k, &data.k_incl).left_module())
}

/// The isomorphism `A_φ ⊗_B C ≅ k_{α_B} ⊗_K C` of right `C`-modules.
#[derive(Clone, Debug)]
pub struct LemmaIsomorphism {
    pub lhs: TensorOverB,
    pub rhs: TensorOverB,
    pub psi: Matrix,
    pub psi_inv: Matrix,
    pub sandwich: Sandwich,
}

pub fn surjective_induction_lemma(data: &AugmentedMorphism, c: &InteriorAlgebra) -> Result<LemmaIsomorphism> {
    if !data.is_surjective() {
        return Err(Error::Hypothesis("φ is not surjective".into()));
    }
    let sandwich = data.sandwich();
    if !sandwich.upper {
        return Err(Error::Hypothesis("Ker φ ⊄ (Ker α_B ∩ K)B".into()));
    }
    let a = &data.target.algebra;
    let cc = &c.algebra;
    let field = a.field();
    let nc = cc.dim();
    let lhs = tensor_over(&Module::regular(a, Side::Right).restrict(&data.source.algebra, &data.phi), &c.left_module())?;
    let rhs = k_tensor(data, c)?;
    let lifts = data.lifts()?;

    let mut amb_cols = Vec::with_capacity(a.dim() * nc);
    for l in &lifts {
        let s = c.sigma.apply(l);
        for j in 0..nc {
            amb_cols.push(rhs.quotient.project(&cc.mul(&s, &cc.basis_vector(j))));
        }
    }
    let amb = Matrix::from_columns(field, rhs.dim(), &amb_cols);
    for r in lhs.quotient.relation_basis() {
        if !crate::linalg::is_zero_vector(&amb.apply(&r)) {
            return Err(Error::check("ψ(b̄⊗c) = 1⊗σ(b)c is well defined", lhs.quotient.proj.domain.render(&r)));
        }
    }
    let psi = amb.mul(&lhs.quotient.section.matrix);
    let inv_cols: Vec<Vector> = (0..nc).map(|j| lhs.class(a.unit(), &cc.basis_vector(j))).collect();
    let inv_amb = Matrix::from_columns(field, lhs.dim(), &inv_cols);
    for r in rhs.quotient.relation_basis() {
        if !crate::linalg::is_zero_vector(&inv_amb.apply(&r)) {
            return Err(Error::check("1⊗c ↦ 1̄⊗c is well defined", rhs.quotient.proj.domain.render(&r)));
        }
    }
    let psi_inv = inv_amb.mul(&rhs.quotient.section.matrix);
    let mut rep = Report::new();
    if psi.mul(&psi_inv) != Matrix::identity(field, rhs.dim()) || psi_inv.mul(&psi) != Matrix::identity(field, lhs.dim()) {
        rep.fail("ψ and ψ⁻¹ are mutually inverse", format!("{} vs {}", lhs.dim(), rhs.dim()));
    }
    let right_ops = c.right_regular_ops();
    let l_ops = lhs.transport_right_all(&right_ops, "right C-action")?;
    let r_ops = rhs.transport_right_all(&right_ops, "right C-action")?;
    if let Some(j) = (0..nc).find(|&j| psi.mul(&l_ops[j]) != r_ops[j].mul(&psi)) {
        rep.fail("ψ is right C-linear", cc.label(j).to_string());
    }
    rep.into_result()?;
    Ok(LemmaIsomorphism { lhs, rhs, psi, psi_inv, sandwich })
}

/// `IndP_φ(C) = (k_{α_B} ⊗_K C)^K` with `(1⊗c)(1⊗d) = 1⊗cd` and `σ'(b̄) = 1⊗σ(b)`.
#[derive(Clone, Debug)]
pub struct SurjectivePuig {
    pub space: TensorOverB,
    /// Right action of the basis of `K` on `k ⊗_K C`.
    pub right_k: Vec<Matrix>,
    /// Basis of the invariants, as vectors of `k ⊗_K C`.
    pub basis: Vec<Vector>,
    pub coords: Coordinates,
    pub induced: InducedInteriorAlgebra,
    pub sandwich: Sandwich,
}

impl SurjectivePuig {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The interior algebra over the target of `φ`.
    pub fn interior(&self) -> InteriorAlgebra {
        InteriorAlgebra {
            base: self.induced.source.clone(),
            algebra: self.induced.carrier.clone(),
            sigma: self.induced.structural.clone(),
        }
    }
}

pub fn surjective_puig_induction(data: &AugmentedMorphism, c: &InteriorAlgebra) -> Result<SurjectivePuig> {
    if !data.is_surjective() {
        return Err(Error::Hypothesis("φ is not surjective".into()));
    }
    let sandwich = data.require_sandwich()?;
    let cc = &c.algebra;
    let field = cc.field();
    let space = k_tensor(data, c)?;
    let ck = c.restrict(&data.k, &data.k_incl);
    let right_k = space.transport_right_all(&ck.right_module().ops, "right K-action on k⊗_K C")?;
    let basis = invariants(field, space.dim(), &right_k, &data.k_augmentation());
    let coords = Coordinates::new(field, space.dim(), basis.clone())?;
    let lifted: Vec<Vector> = basis.iter().map(|v| space.quotient.lift(v)).collect();
    for (i, v) in lifted.iter().enumerate() {
        for r in space.quotient.relation_basis() {
            if !space.quotient.vanishes(&cc.mul(v, &r)) || !space.quotient.vanishes(&cc.mul(&r, v)) {
                return Err(Error::check("product is well defined on invariants", format!("v{i}")));
            }
        }
    }
    let d = basis.len();
    let products = (0..d * d)
        .map(|ij| {
            let p = space.quotient.project(&cc.mul(&lifted[ij / d], &lifted[ij % d]));
            coords.coords(&p).ok_or_else(|| Error::check("invariants are closed under the product", format!("(v{}, v{})", ij / d, ij % d)))
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = coords
        .coords(&space.quotient.project(cc.unit()))
        .ok_or_else(|| Error::check("1⊗1 is invariant", "1"))?;
    let carrier = Algebra::new(field, crate::linalg::FiniteDimSpace::indexed("v", d), products, unit)?;
    let a = &data.target.algebra;
    let cols = data
        .lifts()?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            coords
                .coords(&space.quotient.project(&c.sigma.apply(b)))
                .ok_or_else(|| Error::check("σ' lands in the invariants", a.label(i).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = InducedInteriorAlgebra {
        source: a.clone(),
        carrier,
        structural: Matrix::from_columns(field, d, &cols),
    };
    induced.verify().into_result()?;
    Ok(SurjectivePuig { space, right_k, basis, coords, induced, sandwich })
}

/// `Ind_{A_φ}(C)` computed directly and as `Ind_{M₁}(IndP_φ̄(C))` through the
/// image `φ(B)`, with an explicit isomorphism between the two.
#[derive(Clone, Debug)]
pub struct GeneralInduction {
    pub direct: LinckelmannInduction,
    pub image: Algebra,
    /// `dim A × dim φ(B)`.
    pub image_incl: Matrix,
    pub surjective: SurjectivePuig,
    pub factored: LinckelmannInduction,
    /// `dim direct × dim factored`.
    pub iso: Matrix,
}

pub fn general_induction(data: &AugmentedMorphism, c: &InteriorAlgebra) -> Result<GeneralInduction> {
    let a = &data.target.algebra;
    let b = &data.source.algebra;
    let field = a.field();
    let basis = Subspace::span(field, a.dim(), data.phi.columns()).basis();
    let labels = basis.iter().map(|v| format!("φ({})", a.render(v))).collect();
    let (image, image_coords) = a.restrict(basis.clone(), labels)?;
    let image_incl = Matrix::from_columns(field, a.dim(), &basis);
    let phibar_cols = data
        .phi
        .columns()
        .iter()
        .map(|v| image_coords.coords(v).ok_or_else(|| Error::check("φ lands in its image", "φ")))
        .collect::<Result<Vec<_>>>()?;
    let image_aug: Vector = basis.iter().map(|v| data.target.eval(v)).collect();
    let bar = AugmentedMorphism::new(
        data.source.clone(),
        AugmentedAlgebra::new(image.clone(), image_aug)?,
        Matrix::from_columns(field, image.dim(), &phibar_cols),
        data.k.clone(),
        data.k_incl.clone(),
    )?;
    let surjective = surjective_puig_induction(&bar, c)?;

    let m = Bimodule {
        left: Module::regular(a, Side::Left),
        right: Module::regular(a, Side::Right).restrict(b, &data.phi),
    };
    let direct = linckelmann_induction(&m, c)?;
    let dint = surjective.interior();
    let factored = linckelmann_induction(&Bimodule::regular(a, &image, &image_incl), &dint)?;

    // Y = (A ⊗_{φ(B)} D) ⊗_D R with R = k ⊗_K C a left D-module.
    let r = &surjective.space;
    let d_alg = &dint.algebra;
    let r_ops = surjective
        .basis
        .iter()
        .map(|u| r.quotient.transport(&c.algebra.left_mult(&r.quotient.lift(u)), "left D-action on k⊗_K C"))
        .collect::<Result<Vec<_>>>()?;
    let x = &factored.tensor;
    let y = tensor_over(
        &Module::right(d_alg.clone(), x.space().clone(), factored.right_c.clone())?,
        &Module::left(d_alg.clone(), r.space().clone(), r_ops)?,
    )?;
    let nc = c.dim();
    let mut omega_cols = Vec::with_capacity(a.dim() * nc);
    for i in 0..a.dim() {
        let xi = x.class(&a.basis_vector(i), d_alg.unit());
        for j in 0..nc {
            omega_cols.push(y.class(&xi, &r.quotient.project(&c.algebra.basis_vector(j))));
        }
    }
    let omega_amb = Matrix::from_columns(field, y.dim(), &omega_cols);
    for rel in direct.tensor.quotient.relation_basis() {
        if !crate::linalg::is_zero_vector(&omega_amb.apply(&rel)) {
            return Err(Error::check("a⊗c ↦ (a⊗1)⊗[c] is balanced", direct.tensor.quotient.proj.domain.render(&rel)));
        }
    }
    let omega = omega_amb.mul(&direct.tensor.quotient.section.matrix);
    let omega_inv = omega
        .inverse()
        .ok_or_else(|| Error::check("A⊗_B C ≅ (A⊗_{φ(B)} D)⊗_D R", format!("rank {}", omega.rank())))?;
    let cols = factored
        .end
        .basis
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let lifted = y.transport_left(f, "F ⊗ id_R")?;
            direct
                .end
                .coords_of(&omega_inv.mul(&lifted).mul(&omega))
                .ok_or_else(|| Error::check("conjugated endomorphism is C-linear", format!("E{i}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = Matrix::from_columns(field, direct.end.dim(), &cols);
    let mut rep = verify_algebra_morphism(&factored.end.algebra, &direct.end.algebra, &iso);
    if !is_bijective(&iso) {
        rep.fail("two routes are isomorphic", format!("rank {} of {}", iso.rank(), direct.end.dim()));
    }
    let lhs = iso.mul(&factored.induced.structural);
    if let Some(i) = (0..a.dim()).find(|&i| lhs.column(i) != direct.induced.structural.column(i)) {
        rep.fail("isomorphism respects the structural maps", a.label(i).to_string());
    }
    rep.into_result()?;
    Ok(GeneralInduction { direct, image, image_incl, surjective, factored, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hopf::{HopfAlgebra, HopfEmbedding};
    use crate::scalar::Field;

    fn normal(g: &FiniteGroup, h: &[usize]) -> NormalHopfQuotient {
        let f = Field::Rational;
        let (sub, idx) = g.subgroup(h).unwrap();
        let mut incl = Matrix::zeros(f, g.order(), sub.order());
        for (j, &x) in idx.iter().enumerate() {
            incl.set(x, j, f.one());
        }
        let e = HopfEmbedding::new(HopfAlgebra::group_algebra(f, &sub), HopfAlgebra::group_algebra(f, g), incl).unwrap();
        NormalHopfQuotient::new(e).unwrap()
    }

    #[test]
    fn lemma_for_s3_mod_c3() {
        let q = normal(&FiniteGroup::symmetric3(), &[0, 1, 2]);
        let data = AugmentedMorphism::from_normal_quotient(&q).unwrap();
        let c = InteriorAlgebra::regular(&data.source.algebra);
        let iso = surjective_induction_lemma(&data, &c).unwrap();
        assert_eq!(iso.lhs.dim(), 2);
        assert_eq!(iso.rhs.dim(), 2);
        assert!(iso.sandwich.upper && iso.sandwich.upper_left_product);
    }

    #[test]
    fn lemma_identity_case() {
        let q = normal(&FiniteGroup::cyclic(2), &[0]);
        let data = AugmentedMorphism::from_normal_quotient(&q).unwrap();
        let c = InteriorAlgebra::trivial(&data.source);
        let iso = surjective_induction_lemma(&data, &c).unwrap();
        assert_eq!(iso.lhs.dim(), 1);
    }

    #[test]
    fn surjective_puig_cases() {
        let g = FiniteGroup::symmetric3();
        let q = normal(&g, &[0, 1, 2]);
        let data = AugmentedMorphism::from_normal_quotient(&q).unwrap();
        let s = surjective_puig_induction(&data, &InteriorAlgebra::regular(&data.source.algebra)).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.induced.verify().is_ok());
        // K = k: carrier is C itself
        let q = normal(&g, &[0]);
        let data = AugmentedMorphism::from_normal_quotient(&q).unwrap();
        let s = surjective_puig_induction(&data, &InteriorAlgebra::regular(&data.source.algebra)).unwrap();
        assert_eq!(s.dim(), 6);
        // K = B, φ = α: invariants of C under conjugation-free right action
        let q = normal(&g, &[0, 1, 2, 3, 4, 5]);
        let data = AugmentedMorphism::from_normal_quotient(&q).unwrap();
        let s = surjective_puig_induction(&data, &InteriorAlgebra::regular(&data.source.algebra)).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn sandwich_failure_is_reported() {
        let g = FiniteGroup::symmetric3();
        let q = normal(&g, &[0, 1, 2]);
        let mut data = AugmentedMorphism::from_normal_quotient(&q).unwrap();
        // K = k makes Ker φ ⊄ (Ker α ∩ K)B
        data.k = Algebra::ground(Field::Rational);
        data.k_incl = Matrix::from_columns(Field::Rational, 6, &[data.source.algebra.unit().clone()]);
        let err = surjective_puig_induction(&data, &InteriorAlgebra::regular(&data.source.algebra)).unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn two_routes_agree() {
        let f = Field::Rational;
        let s3 = FiniteGroup::symmetric3();
        let c4 = FiniteGroup::cyclic(4);
        let b = HopfAlgebra::group_algebra(f, &s3);
        let a = HopfAlgebra::group_algebra(f, &c4);
        // sign character S3 → {1, g2} ⊂ C4
        let mut phi = Matrix::zeros(f, 4, 6);
        for x in 0..6 {
            phi.set(if x < 3 { 0 } else { 2 }, x, f.one());
        }
        let (k, idx) = s3.subgroup(&[0, 1, 2]).unwrap();
        let mut k_incl = Matrix::zeros(f, 6, 3);
        for (j, &x) in idx.iter().enumerate() {
            k_incl.set(x, j, f.one());
        }
        let data = AugmentedMorphism::new(
            b.augmented(),
            a.augmented(),
            phi,
            HopfAlgebra::group_algebra(f, &k).alg,
            k_incl,
        )
        .unwrap();
        let c = InteriorAlgebra::regular(&b.alg);
        let gi = general_induction(&data, &c).unwrap();
        assert_eq!(gi.direct.induced.dim(), 8);
        assert_eq!(gi.factored.induced.dim(), 8);
        assert_eq!(gi.image.dim(), 2);
    }
}
