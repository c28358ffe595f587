//! Duality isomorphisms between smash products and induced algebras.

use rayon::prelude::*;

use crate::algebra::{dot, is_bijective, verify_morphism, Algebra, EndomorphismAlgebra};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusSystem;
use crate::group::FiniteGroup;
use crate::hopf::{CoinvariantDual, HopfAlgebra, HopfEmbedding, NormalHopfQuotient};
use crate::interior::{
    linckelmann_induction, psi_isomorphism, surjective_puig_induction, twisted_bimodule, AugmentedMorphism,
    LinckelmannInduction, PsiIsomorphism, PuigInduction, SurjectivePuig,
};
use crate::linalg::{add_scaled, kernel_of_rows, tensor_vectors, unit_vector, zero_vector, Matrix, Vector};
use crate::modules::{Bimodule, HomOverB, Module, Side};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::smash::{surjective_turull, turull_induction, ModuleAlgebra, SmashProduct, SurjectiveTurull, TurullInduction};

/// Structural maps `base → source` and `base → target` an isomorphism must intertwine.
#[derive(Clone, Debug)]
pub struct InteriorPair {
    pub base: Algebra,
    pub source: Matrix,
    pub target: Matrix,
}

/// A bijective (anti-)morphism with its inverse, checked on construction.
#[derive(Clone, Debug)]
pub struct VerifiedIsomorphism {
    pub name: String,
    pub source: Algebra,
    pub target: Algebra,
    /// `dim target × dim source`.
    pub forward: Matrix,
    pub backward: Matrix,
    pub anti: bool,
    pub interior: Option<InteriorPair>,
}

impl VerifiedIsomorphism {
    pub fn new(
        name: impl Into<String>,
        source: Algebra,
        target: Algebra,
        forward: Matrix,
        anti: bool,
        interior: Option<InteriorPair>,
    ) -> Result<VerifiedIsomorphism> {
        let name = name.into();
        if forward.rows() != target.dim() || forward.cols() != source.dim() {
            return Err(Error::check(
                format!("{name}: dimensions agree"),
                format!("{} → {}", source.dim(), target.dim()),
            ));
        }
        let backward = forward
            .inverse()
            .ok_or_else(|| Error::check(format!("{name} is bijective"), format!("rank {}", forward.rank())))?;
        let iso = VerifiedIsomorphism { name, source, target, forward, backward, anti, interior };
        iso.verify().into_result()?;
        Ok(iso)
    }

    pub fn verify(&self) -> Report {
        let mut r = verify_morphism(&self.source, &self.target, &self.forward, self.anti);
        let field = self.source.field();
        if !is_bijective(&self.forward) {
            r.fail(format!("{} is bijective", self.name), format!("rank {}", self.forward.rank()));
        }
        if self.backward.mul(&self.forward) != Matrix::identity(field, self.source.dim()) {
            r.fail(format!("{}: backward∘forward = id", self.name), "source");
        }
        if self.forward.mul(&self.backward) != Matrix::identity(field, self.target.dim()) {
            r.fail(format!("{}: forward∘backward = id", self.name), "target");
        }
        if let Some(p) = &self.interior {
            let lhs = self.forward.mul(&p.source);
            if let Some(i) = (0..p.base.dim()).find(|&i| lhs.column(i) != p.target.column(i)) {
                r.fail(format!("{} intertwines the structural maps", self.name), p.base.label(i).to_string());
            }
        }
        r
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.source.dim(), self.target.dim())
    }

    /// `next ∘ self`, verified again from scratch.
    pub fn then(&self, next: &VerifiedIsomorphism, name: impl Into<String>) -> Result<VerifiedIsomorphism> {
        let interior = match (&self.interior, &next.interior) {
            (Some(a), Some(b)) => {
                Some(InteriorPair { base: a.base.clone(), source: a.source.clone(), target: b.target.clone() })
            }
            _ => None,
        };
        VerifiedIsomorphism::new(
            name,
            self.source.clone(),
            next.target.clone(),
            next.forward.mul(&self.forward),
            self.anti ^ next.anti,
            interior,
        )
    }
}

fn smash_of_dual(f: &CoinvariantDual) -> Result<SmashProduct> {
    SmashProduct::build(&ModuleAlgebra::new(f.hopf.clone(), f.algebra.clone(), f.action.clone())?)
}

/// `ρ^op(f#a)` as a matrix on `A`: `x ↦ Σ f(S(x_(1))) x_(2) a`.
fn rho_matrix(h: &HopfAlgebra, f: &[Scalar], a: usize) -> Matrix {
    let alg = &h.alg;
    let n = h.dim();
    let field = h.field();
    let cols: Vec<Vector> = (0..n)
        .map(|x| {
            let mut v = zero_vector(field, n);
            for (c, p, q) in h.sweedler(x) {
                let fs = dot(f, &h.antipode.column(p));
                if !fs.is_zero() {
                    add_scaled(&mut v, &(c * fs), &alg.basis_product(q, a));
                }
            }
            v
        })
        .collect();
    Matrix::from_columns(field, n, &cols)
}

/// `ρ^op: (A^×)^op # A → End_k(A)`, an anti-isomorphism.
#[derive(Clone, Debug)]
pub struct RhoOp {
    pub dual: CoinvariantDual,
    pub smash: SmashProduct,
    pub iso: VerifiedIsomorphism,
}

pub fn rho_op(h: &HopfAlgebra) -> Result<RhoOp> {
    let field = h.field();
    let unit = Matrix::from_columns(field, h.dim(), &[h.alg.unit().clone()]);
    let emb = HopfEmbedding::new(HopfAlgebra::ground(field), h.clone(), unit)?;
    let dual = CoinvariantDual::build(&emb)?;
    let smash = smash_of_dual(&dual)?;
    let n = h.dim();
    let target = Algebra::matrix_algebra(n, &Algebra::ground(field))?;
    let cols: Vec<Vector> = (0..smash.dim()).map(|k| rho_matrix(h, &dual.basis[k / n], k % n).to_flat()).collect();
    let forward = Matrix::from_columns(field, n * n, &cols);
    let iso = VerifiedIsomorphism::new("ρ^op", smash.algebra().clone(), target, forward, true, None)?;
    Ok(RhoOp { dual, smash, iso })
}

impl RhoOp {
    /// Checks `ρ'(f#a) = ψ(ρ^op(f#a))` on every basis pair, where
    /// `ρ'(f#a)(x) = f(S(x))a` and `ψ(ζ)(x) = Σ T(x_(2)) ζ(x_(1))` with `T = S`,
    /// or `T = S⁻¹` when `inverse_antipode` is set.
    pub fn factorization(&self, inverse_antipode: bool) -> Report {
        let h = &self.dual.hopf;
        let alg = &h.alg;
        let n = h.dim();
        let field = h.field();
        let mut r = Report::new();
        let t = if inverse_antipode {
            match h.antipode.inverse() {
                Some(m) => m,
                None => {
                    r.fail("antipode is invertible", format!("rank {}", h.antipode.rank()));
                    return r;
                }
            }
        } else {
            h.antipode.clone()
        };
        let name = if inverse_antipode { "ρ' = ψ∘ρ^op with ψ through S⁻¹" } else { "ρ' = ψ∘ρ^op" };
        let bad = (0..self.smash.dim()).into_par_iter().find_map_first(|k| {
            let (f, a) = (&self.dual.basis[k / n], k % n);
            let zeta = rho_matrix(h, f, a);
            (0..n).find_map(|x| {
                let mut psi = zero_vector(field, n);
                for (c, p, q) in h.sweedler(x) {
                    add_scaled(&mut psi, &c, &alg.mul(&t.column(q), &zeta.column(p)));
                }
                let fsx = dot(f, &h.antipode.column(x));
                let rho_prime: Vector = alg.basis_vector(a).iter().map(|v| v * &fsx).collect();
                (psi != rho_prime).then_some((k, x))
            })
        });
        if let Some((k, x)) = bad {
            r.fail(name, format!("(f{}, {}, x = {})", k / n, alg.label(k % n), alg.label(x)));
        }
        r
    }
}

/// `End_B(A)`, the left `B`-linear endomorphisms of `A`.
fn left_linear_endomorphisms(emb: &HopfEmbedding) -> Result<EndomorphismAlgebra> {
    let a = &emb.ambient.alg;
    let ops: Vec<Matrix> = emb.incl.columns().iter().map(|b| a.left_mult(b)).collect();
    EndomorphismAlgebra::commutant(a.field(), a.dim(), &ops, "η")
}

fn right_mult_coords(emb: &HopfEmbedding, end_b: &EndomorphismAlgebra) -> Result<Matrix> {
    let a = &emb.ambient.alg;
    let cols = (0..a.dim())
        .map(|i| {
            end_b
                .coords_of(&a.right_mult(&a.basis_vector(i)))
                .ok_or_else(|| Error::check("right multiplication is left B-linear", a.label(i).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(a.field(), end_b.dim(), &cols))
}

/// `ρ_F^op: F#A → (End_B(A))^op`, interior over `A`.
#[derive(Clone, Debug)]
pub struct RhoF {
    pub f: CoinvariantDual,
    pub smash: SmashProduct,
    pub end_b: EndomorphismAlgebra,
    pub iso: VerifiedIsomorphism,
}

pub fn rho_f(emb: &HopfEmbedding) -> Result<RhoF> {
    let h = &emb.ambient;
    let a = &h.alg;
    let n = h.dim();
    let f = CoinvariantDual::build(emb)?;
    let smash = smash_of_dual(&f)?;
    let end_b = left_linear_endomorphisms(emb)?;
    let expected = n * n / emb.sub.dim();
    if smash.dim() != expected || end_b.dim() != expected {
        return Err(Error::check(
            "dim F#A = dim End_B(A) = (dim A)²/dim B",
            format!("{}, {}, {expected}", smash.dim(), end_b.dim()),
        ));
    }
    let bs: Vec<Matrix> = emb.incl.columns().iter().map(|b| a.left_mult(b)).collect();
    let mut cols = Vec::with_capacity(smash.dim());
    for k in 0..smash.dim() {
        let rho = rho_matrix(h, &f.basis[k / n], k % n);
        for (j, lb) in bs.iter().enumerate() {
            let (l, r) = (rho.mul(lb), lb.mul(&rho));
            if let Some(x) = (0..n).find(|&x| l.column(x) != r.column(x)) {
                return Err(Error::check(
                    "ρ^op(F#A) ⊆ End_B(A)",
                    format!("(f{}, {}, {}, {})", k / n, a.label(k % n), emb.sub.label(j), a.label(x)),
                ));
            }
        }
        cols.push(end_b.coords_of(&rho).ok_or_else(|| Error::check("ρ^op(F#A) ⊆ End_B(A)", format!("f{}#{}", k / n, a.label(k % n))))?);
    }
    let forward = Matrix::from_columns(a.field(), end_b.dim(), &cols);
    let interior = InteriorPair {
        base: a.clone(),
        source: smash.interior.sigma.clone(),
        target: right_mult_coords(emb, &end_b)?,
    };
    let iso = VerifiedIsomorphism::new(
        "ρ_F^op",
        smash.algebra().clone(),
        end_b.algebra.opposite(),
        forward,
        false,
        Some(interior),
    )?;
    Ok(RhoF { f, smash, end_b, iso })
}

/// `(End_B(A))^op → End_{B^op}(A*)`, `f ↦ (θ ↦ θ∘f)`, interior over `A`.
#[derive(Clone, Debug)]
pub struct DualTranspose {
    pub end_b: EndomorphismAlgebra,
    pub hom: HomOverB,
    pub end_dual: EndomorphismAlgebra,
    pub iso: VerifiedIsomorphism,
}

pub fn dual_transpose(emb: &HopfEmbedding) -> Result<DualTranspose> {
    dual_transpose_on(emb, left_linear_endomorphisms(emb)?)
}

fn dual_transpose_on(emb: &HopfEmbedding, end_b: EndomorphismAlgebra) -> Result<DualTranspose> {
    let a = &emb.ambient.alg;
    let field = a.field();
    let hom = HomOverB::build(a, &emb.sub.alg, &emb.incl)?;
    let d = hom.dim();
    let end_dual = EndomorphismAlgebra::commutant(field, d, &hom.bimodule.right.ops, "ξ")?;
    let cols = end_b
        .basis
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let img: Vec<Vector> = hom
                .basis
                .iter()
                .map(|t| hom.coords_of(&t.mul(f)).ok_or_else(|| Error::check("θ∘f is left B-linear", format!("η{k}"))))
                .collect::<Result<_>>()?;
            end_dual
                .coords_of(&Matrix::from_columns(field, d, &img))
                .ok_or_else(|| Error::check("f* is right B-linear", format!("η{k}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let forward = Matrix::from_columns(field, end_dual.dim(), &cols);
    let target_structural = structural_coords(&end_dual, &hom.bimodule.left.ops, a)?;
    let interior = InteriorPair { base: a.clone(), source: right_mult_coords(emb, &end_b)?, target: target_structural };
    let iso = VerifiedIsomorphism::new(
        "f ↦ f*",
        end_b.algebra.opposite(),
        end_dual.algebra.clone(),
        forward,
        false,
        Some(interior),
    )?;
    Ok(DualTranspose { end_b, hom, end_dual, iso })
}

fn structural_coords(end: &EndomorphismAlgebra, ops: &[Matrix], a: &Algebra) -> Result<Matrix> {
    let cols = ops
        .iter()
        .enumerate()
        .map(|(i, op)| {
            end.coords_of(op).ok_or_else(|| Error::check("structural operator lies in the endomorphism algebra", a.label(i).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(a.field(), end.dim(), &cols))
}

/// `X` with `X·P_i = Q_i·X` for all `i`, as a basis of the solution space.
fn intertwiners(src: &[Matrix], dst: &[Matrix], rows: usize, cols: usize) -> Vec<Matrix> {
    let field = src[0].field();
    let width = rows * cols;
    let eqs = src.iter().zip(dst).flat_map(|(p, q)| {
        (0..rows * cols).map(move |ij| {
            let (i, j) = (ij / cols, ij % cols);
            let mut row = zero_vector(field, width);
            for k in 0..cols {
                let pkj = &p[(k, j)];
                if !pkj.is_zero() {
                    row[i * cols + k] += pkj;
                }
            }
            for k in 0..rows {
                let qik = &q[(i, k)];
                if !qik.is_zero() {
                    row[k * cols + j] -= qik;
                }
            }
            row
        })
    });
    kernel_of_rows(field, width, eqs)
        .into_iter()
        .map(|v| Matrix::from_flat(field, rows, cols, v))
        .collect()
}

/// First bijective element among basis vectors, then pairwise and triple sums.
fn first_bijective(sols: &[Matrix]) -> Option<Matrix> {
    let k = sols.len();
    let mut candidates: Vec<Matrix> = sols.to_vec();
    for i in 0..k {
        for j in i + 1..k {
            candidates.push(sols[i].add(&sols[j]));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                candidates.push(sols[i].add(&sols[j]).add(&sols[l]));
            }
        }
    }
    candidates.into_iter().find(is_bijective)
}

fn bimodule_iso(from: &Bimodule, to: &Bimodule) -> Option<Matrix> {
    let mut src = from.left.ops.clone();
    src.extend(from.right.ops.iter().cloned());
    let mut dst = to.left.ops.clone();
    dst.extend(to.right.ops.iter().cloned());
    first_bijective(&intertwiners(&src, &dst, to.dim(), from.dim()))
}

/// The injective duality `(F⊗C)#A ≅ Ind_{A_β}(C#B)` as four verified steps and
/// their verified composite.
#[derive(Clone, Debug)]
pub struct InjectiveTheorem {
    pub turull: TurullInduction,
    /// `(F⊗C)#A`.
    pub lhs: SmashProduct,
    /// `C#B`.
    pub smash: SmashProduct,
    pub rho: RhoF,
    pub dual: DualTranspose,
    /// `End_{(C#B)^op}(A*⊗_B C#B)`.
    pub dual_induction: LinckelmannInduction,
    /// `End_{(C#B)^op}(A_β⊗_B C#B)`.
    pub induction: LinckelmannInduction,
    /// `A_β → A*` as an `(A, B)`-bimodule map.
    pub bimodule_iso: Matrix,
    pub steps: Vec<VerifiedIsomorphism>,
    pub composite: VerifiedIsomorphism,
}

impl InjectiveTheorem {
    /// `[A:B]`.
    pub fn index(&self) -> usize {
        self.rho.f.dim()
    }

    /// `n²·dim B·dim C`.
    pub fn expected_dim(&self) -> usize {
        let n = self.index();
        n * n * self.smash.module_algebra.hopf.dim() * self.smash.module_algebra.dim()
    }
}

pub fn theorem_injective(sys: &FrobeniusSystem, ma: &ModuleAlgebra) -> Result<InjectiveTheorem> {
    let emb = &sys.embedding;
    let a = &emb.ambient.alg;
    let field = a.field();
    let na = a.dim();
    let nc = ma.dim();
    let turull = turull_induction(emb, ma)?;
    let lhs = SmashProduct::build(&turull.induced)?;
    let smash = SmashProduct::build(ma)?;
    let c = &ma.algebra;
    let nf = turull.f.dim();
    let expected = nf * nf * emb.sub.dim() * nc;
    if lhs.dim() != expected {
        return Err(Error::check("dim (F⊗C)#A = n²·dim B·dim C", format!("{} ≠ {expected}", lhs.dim())));
    }

    // Step 1: (f⊗c)#a ↦ ρ_F^op(f#a)⊗c.
    let rho = rho_f(emb)?;
    let end_op = rho.iso.target.clone();
    let step1_target = end_op.tensor(c);
    let cols: Vec<Vector> = (0..lhs.dim())
        .map(|k| {
            let (fc, x) = (k / na, k % na);
            let (f, ci) = (fc / nc, fc % nc);
            tensor_vectors(&rho.iso.forward.column(f * na + x), &unit_vector(field, nc, ci))
        })
        .collect();
    let with_unit = |m: &Matrix| -> Matrix {
        let cols: Vec<Vector> = m.columns().iter().map(|v| tensor_vectors(v, c.unit())).collect();
        Matrix::from_columns(field, m.rows() * nc, &cols)
    };
    let s1_struct = with_unit(&rho.iso.interior.as_ref().expect("interior").target);
    let step1 = VerifiedIsomorphism::new(
        "Step 1: (f⊗c)#a ↦ ρ_F^op(f#a)⊗c",
        lhs.algebra().clone(),
        step1_target.clone(),
        Matrix::from_columns(field, step1_target.dim(), &cols),
        false,
        Some(InteriorPair { base: a.clone(), source: lhs.interior.sigma.clone(), target: s1_struct.clone() }),
    )?;

    // Step 2: f⊗c ↦ f*⊗c.
    let dual = dual_transpose_on(emb, rho.end_b.clone())?;
    let step2_target = dual.end_dual.algebra.tensor(c);
    let s2_struct = with_unit(&dual.iso.interior.as_ref().expect("interior").target);
    let step2 = VerifiedIsomorphism::new(
        "Step 2: f⊗c ↦ f*⊗c",
        step1_target,
        step2_target.clone(),
        dual.iso.forward.kronecker(&Matrix::identity(field, nc)),
        false,
        Some(InteriorPair { base: a.clone(), source: s1_struct, target: s2_struct.clone() }),
    )?;

    // Step 3: Ψ(f*⊗c)(θ⊗z) = f*(θ)⊗(c#1)z.
    let dual_induction = linckelmann_induction(&dual.hom.bimodule, &smash.interior)?;
    let t3 = &dual_induction.tensor;
    let one_b = emb.sub.alg.unit().clone();
    let cols = (0..step2_target.dim())
        .map(|k| {
            let (e, ci) = (k / nc, k % nc);
            let lc = smash.algebra().left_mult(&smash.element(&c.basis_vector(ci), &one_b));
            let op = dual.end_dual.basis[e].kronecker(&lc);
            let witness = format!("ξ{e}⊗{}", c.label(ci));
            let m = t3.quotient.transport(&op, "Ψ").map_err(|_| {
                Error::check("Ψ(f*⊗c)(θ⊗c'#b') = f*(θ)⊗cc'#b' is well defined on A*⊗_B C#B", witness.clone())
            })?;
            dual_induction
                .end
                .coords_of(&m)
                .ok_or_else(|| Error::check("Ψ lands in End_{(C#B)^op}(A*⊗_B C#B)", witness))
        })
        .collect::<Result<Vec<_>>>()?;
    if dual_induction.end.dim() != expected {
        return Err(Error::check(
            "dim End_{(C#B)^op}(A*⊗_B C#B) = n²·dim B·dim C",
            format!("{} ≠ {expected}", dual_induction.end.dim()),
        ));
    }
    let step3 = VerifiedIsomorphism::new(
        "Step 3: Ψ",
        step2_target,
        dual_induction.end.algebra.clone(),
        Matrix::from_columns(field, dual_induction.end.dim(), &cols),
        false,
        Some(InteriorPair {
            base: a.clone(),
            source: s2_struct,
            target: dual_induction.induced.structural.clone(),
        }),
    )?;

    // Step 4: transport along an (A, B)-bimodule isomorphism A_β ≅ A*.
    let twisted = twisted_bimodule(sys);
    let t = match bimodule_iso(&twisted, &dual.hom.bimodule) {
        Some(t) => t,
        None => {
            let inverse = Bimodule {
                left: twisted.left.clone(),
                right: Module::regular(a, Side::Right).restrict(&emb.sub.alg, &emb.incl.mul(&sys.beta_inv)),
            };
            return Err(if bimodule_iso(&inverse, &dual.hom.bimodule).is_some() {
                Error::TwistMismatch("A* ≅ A_{β⁻¹} but A* ≇ A_β as (A, B)-bimodules".into())
            } else {
                Error::check("(A, B)-bimodule isomorphism A_β ≅ A*", "no bijective solution")
            });
        }
    };
    let induction = linckelmann_induction(&twisted, &smash.interior)?;
    let ncb = smash.dim();
    let tt = induction.tensor.quotient.transport_between(
        &t3.quotient,
        &t.kronecker(&Matrix::identity(field, ncb)),
        "A_β⊗_B C#B → A*⊗_B C#B",
    )?;
    let tt_inv = tt.inverse().ok_or_else(|| Error::check("A_β⊗_B C#B ≅ A*⊗_B C#B", "singular"))?;
    let cols = dual_induction
        .end
        .basis
        .iter()
        .enumerate()
        .map(|(k, eta)| {
            induction
                .end
                .coords_of(&tt_inv.mul(eta).mul(&tt))
                .ok_or_else(|| Error::check("conjugation lands in End_{(C#B)^op}(A_β⊗_B C#B)", format!("E{k}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let step4 = VerifiedIsomorphism::new(
        "Step 4: A* ≅ A_β",
        dual_induction.end.algebra.clone(),
        induction.end.algebra.clone(),
        Matrix::from_columns(field, induction.end.dim(), &cols),
        false,
        Some(InteriorPair {
            base: a.clone(),
            source: dual_induction.induced.structural.clone(),
            target: induction.induced.structural.clone(),
        }),
    )?;

    let composite = step1
        .then(&step2, "Steps 1-2")?
        .then(&step3, "Steps 1-3")?
        .then(&step4, "(F⊗C)#A → Ind_{A_β}(C#B)")?;
    Ok(InjectiveTheorem {
        turull,
        lhs,
        smash,
        rho,
        dual,
        dual_induction,
        induction,
        bimodule_iso: t,
        steps: vec![step1, step2, step3, step4],
        composite,
    })
}

/// `(F⊗C)#A ≅ A_β⊗_B C#B⊗_B A`, through `Ψ⁻¹` of the tensor form.
#[derive(Clone, Debug)]
pub struct InjectiveCorollary {
    pub puig: PuigInduction,
    pub psi: PsiIsomorphism,
    pub iso: VerifiedIsomorphism,
}

pub fn corollary_injective(sys: &FrobeniusSystem, theorem: &InjectiveTheorem) -> Result<InjectiveCorollary> {
    let puig = PuigInduction::build(sys, &theorem.smash.interior)?;
    let psi = psi_isomorphism(&puig)?;
    if psi.linckelmann.end.basis != theorem.induction.end.basis {
        return Err(Error::check("Ψ and the theorem share End_{(C#B)^op}(A_β⊗_B C#B)", "basis"));
    }
    let iso = VerifiedIsomorphism::new(
        "(F⊗C)#A → A_β⊗_B C#B⊗_B A",
        theorem.lhs.algebra().clone(),
        puig.carrier().clone(),
        psi.backward.mul(&theorem.composite.forward),
        false,
        Some(InteriorPair {
            base: sys.embedding.ambient.alg.clone(),
            source: theorem.lhs.interior.sigma.clone(),
            target: puig.tau().clone(),
        }),
    )?;
    Ok(InjectiveCorollary { puig, psi, iso })
}

/// `Φ: C^K#B̄ → (k_ε⊗_K C#B)^K`, `c#b̄ ↦ 1⊗c#b`.
#[derive(Clone, Debug)]
pub struct SurjectiveTheorem {
    pub turull: SurjectiveTurull,
    /// `C^K#B̄`.
    pub lhs: SmashProduct,
    /// `C#B`.
    pub smash: SmashProduct,
    pub data: AugmentedMorphism,
    pub rhs: SurjectivePuig,
    pub iso: VerifiedIsomorphism,
}

impl SurjectiveTheorem {
    /// `Φ(c#b̄)` for `c ∈ C^K` and any `b ∈ B`, in the basis of the invariants.
    pub fn phi(&self, c: &[Scalar], b: &[Scalar]) -> Option<Vector> {
        let z = self.smash.element(c, b);
        self.rhs.coords.coords(&self.rhs.space.quotient.project(&z))
    }
}

pub fn theorem_surjective(q: &NormalHopfQuotient, ma: &ModuleAlgebra) -> Result<SurjectiveTheorem> {
    let turull = surjective_turull(q, ma)?;
    let lhs = SmashProduct::build(&turull.induced)?;
    let smash = SmashProduct::build(ma)?;
    turull.k_actions_coincide(&smash).into_result()?;
    let data = AugmentedMorphism::from_normal_quotient(q)?;
    let rhs = surjective_puig_induction(&data, &smash.interior)?;
    let field = ma.field();
    let b = &q.embedding.ambient.alg;
    for r in &q.ideal_basis {
        if let Some(c) = turull.basis.iter().find(|c| !rhs.space.quotient.vanishes(&smash.element(c, r))) {
            return Err(Error::check(
                "Φ is independent of the lift",
                format!("{}#{}", ma.algebra.render(c), b.render(r)),
            ));
        }
    }
    let nbar = q.bbar.dim();
    let partial = SurjectiveTheorem {
        turull,
        lhs,
        smash,
        data,
        rhs,
        iso: VerifiedIsomorphism {
            name: String::new(),
            source: Algebra::ground(field),
            target: Algebra::ground(field),
            forward: Matrix::identity(field, 1),
            backward: Matrix::identity(field, 1),
            anti: false,
            interior: None,
        },
    };
    let cols = (0..partial.lhs.dim())
        .map(|k| {
            let (i, j) = (k / nbar, k % nbar);
            let lift = q.lift(&unit_vector(field, nbar, j));
            partial.phi(&partial.turull.basis[i], &lift).ok_or_else(|| {
                Error::check(
                    "Φ lands in the K-invariants",
                    format!("{}#{}", partial.turull.induced.algebra.label(i), q.bbar.label(j)),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let iso = VerifiedIsomorphism::new(
        "Φ: C^K#B̄ → (k⊗_K C#B)^K",
        partial.lhs.algebra().clone(),
        partial.rhs.induced.carrier.clone(),
        Matrix::from_columns(field, partial.rhs.dim(), &cols),
        false,
        Some(InteriorPair {
            base: q.bbar.alg.clone(),
            source: partial.lhs.interior.sigma.clone(),
            target: partial.rhs.induced.structural.clone(),
        }),
    )?;
    Ok(SurjectiveTheorem { iso, ..partial })
}

/// `C*G` on `c_i*g` at index `i·|G| + g`, `(c*g)(c'*g') = c(g·c')*gg'`.
pub fn skew_group_algebra(c: &Algebra, g: &FiniteGroup, action: &[Matrix]) -> Result<Algebra> {
    let field = c.field();
    let (nc, ng) = (c.dim(), g.order());
    if action.len() != ng {
        return Err(Error::Shape(format!("need {ng} action matrices")));
    }
    let labels = (0..nc * ng).map(|k| format!("{}*{}", c.label(k / ng), g.label(k % ng))).collect();
    let mut unit = zero_vector(field, nc * ng);
    for (i, u) in c.unit().iter().enumerate() {
        unit[i * ng + g.identity()] = u.clone();
    }
    Algebra::from_fn(field, crate::linalg::FiniteDimSpace::new(labels)?, unit, |x, y| {
        let (ci, gx) = (x / ng, x % ng);
        let (cj, gy) = (y / ng, y % ng);
        let prod = c.mul(&c.basis_vector(ci), &action[gx].column(cj));
        let mut out = zero_vector(field, nc * ng);
        let gg = g.mul(gx, gy);
        for (k, v) in prod.into_iter().enumerate() {
            out[k * ng + gg] = v;
        }
        out
    })
}

/// The group form `C^K*Ḡ ≅ (k⊗_{kK} C*G)^K`, cross-checked against skew group
/// algebras built directly from the group data.
#[derive(Clone, Debug)]
pub struct GroupSkewCorollary {
    pub theorem: SurjectiveTheorem,
    pub quotient_group: FiniteGroup,
    /// For each element of `Ḡ`, the basis index of `B̄` it corresponds to.
    pub bbar_index: Vec<usize>,
    pub skew: Algebra,
    pub skew_bar: Algebra,
}

/// `ma` is a `G`-algebra, i.e. a module algebra over `kG`; `normal` lists `K`.
pub fn corollary_group_skew(g: &FiniteGroup, normal: &[usize], ma: &ModuleAlgebra) -> Result<GroupSkewCorollary> {
    let field = ma.field();
    if ma.hopf != HopfAlgebra::group_algebra(field, g) {
        return Err(Error::Shape("module algebra is not over kG".into()));
    }
    let q = NormalHopfQuotient::new(HopfEmbedding::subgroup(field, g, normal)?)?;
    let theorem = theorem_surjective(&q, ma)?;
    let (gbar, proj) = g.quotient(normal)?;
    let nbar = gbar.order();
    let mut bbar_index = vec![usize::MAX; nbar];
    for x in 0..g.order() {
        let img = q.project(&unit_vector(field, g.order(), x));
        let j = img.iter().position(|v| !v.is_zero());
        let is_basis = j.is_some_and(|j| img[j].is_one() && img.iter().filter(|v| !v.is_zero()).count() == 1);
        if !is_basis {
            return Err(Error::check("group elements map to basis vectors of B̄", g.label(x).to_string()));
        }
        let j = j.expect("checked");
        if bbar_index[proj[x]] != usize::MAX && bbar_index[proj[x]] != j {
            return Err(Error::check("B̄ basis matches G/K", g.label(x).to_string()));
        }
        bbar_index[proj[x]] = j;
    }

    let mut report = Report::new();
    let skew = skew_group_algebra(&ma.algebra, g, &ma.action)?;
    compare_tables(&skew, theorem.smash.algebra(), &(0..skew.dim()).collect::<Vec<_>>(), "C#kG = C*G", &mut report);

    let st = &theorem.turull;
    let reps: Vec<usize> = (0..nbar).map(|y| (0..g.order()).find(|&x| proj[x] == y).expect("surjective")).collect();
    let bar_action = reps
        .iter()
        .map(|&x| {
            let cols = st
                .basis
                .iter()
                .map(|v| st.coords.coords(&ma.action[x].apply(v)).ok_or_else(|| Error::check("C^K is G-stable", g.label(x).to_string())))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(field, st.dim(), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let skew_bar = skew_group_algebra(&st.induced.algebra, &gbar, &bar_action)?;
    let perm: Vec<usize> = (0..skew_bar.dim()).map(|k| (k / nbar) * nbar + bbar_index[k % nbar]).collect();
    compare_tables(&skew_bar, theorem.lhs.algebra(), &perm, "C^K#kḠ = C^K*Ḡ", &mut report);

    for x in 0..g.order() {
        for (i, c) in st.basis.iter().enumerate() {
            let expect = theorem.iso.forward.column(i * nbar + bbar_index[proj[x]]);
            if theorem.phi(c, &unit_vector(field, g.order(), x)).as_ref() != Some(&expect) {
                report.fail("c*ḡ ↦ 1⊗c*g agrees with Φ", format!("({}, {})", st.induced.algebra.label(i), g.label(x)));
            }
        }
    }
    report.into_result()?;
    Ok(GroupSkewCorollary { theorem, quotient_group: gbar, bbar_index, skew, skew_bar })
}

/// `other` has the structure constants of `alg` after renaming basis `k` to `perm[k]`.
fn compare_tables(alg: &Algebra, other: &Algebra, perm: &[usize], what: &str, r: &mut Report) {
    let n = alg.dim();
    if other.dim() != n {
        r.fail(what, format!("dim {} ≠ {}", n, other.dim()));
        return;
    }
    let permute = |v: &Vector| {
        let mut out = zero_vector(alg.field(), n);
        for (k, x) in v.iter().enumerate() {
            out[perm[k]] = x.clone();
        }
        out
    };
    if permute(alg.unit()) != *other.unit() {
        r.fail(what, "unit");
    }
    if let Some(ij) = (0..n * n).find(|&ij| permute(&alg.basis_product(ij / n, ij % n)) != other.basis_product(perm[ij / n], perm[ij % n])) {
        r.fail(what, format!("({}, {})", alg.label(ij / n), alg.label(ij % n)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn s3_c3() -> HopfEmbedding {
        HopfEmbedding::subgroup(q(), &FiniteGroup::symmetric3(), &[0, 1, 2]).unwrap()
    }

    fn h4_c2() -> HopfEmbedding {
        let h4 = HopfAlgebra::sweedler_h4();
        let c2 = HopfAlgebra::group_algebra(q(), &FiniteGroup::cyclic(2));
        let mut incl = Matrix::zeros(q(), 4, 2);
        incl.set(0, 0, q().one());
        incl.set(1, 1, q().one());
        let mut beta = Matrix::identity(q(), 2);
        beta.set(1, 1, q().from_i64(-1));
        HopfEmbedding::new(c2, h4, incl).unwrap().with_beta_hint(beta)
    }

    #[test]
    fn rho_op_small_cases() {
        let k = rho_op(&HopfAlgebra::ground(q())).unwrap();
        assert_eq!(k.iso.dims(), (1, 1));
        let c2 = rho_op(&HopfAlgebra::group_algebra(q(), &FiniteGroup::cyclic(2))).unwrap();
        assert_eq!(c2.iso.dims(), (4, 4));
        assert!(c2.factorization(false).is_ok());
        let h4 = rho_op(&HopfAlgebra::sweedler_h4()).unwrap();
        assert_eq!(h4.iso.dims(), (16, 16));
        assert!(h4.factorization(true).is_ok());
    }

    #[test]
    fn factorization_through_s_needs_involutive_antipode() {
        let s3 = rho_op(&HopfAlgebra::group_algebra(q(), &FiniteGroup::symmetric3())).unwrap();
        assert!(s3.factorization(false).is_ok());
        let h4 = rho_op(&HopfAlgebra::sweedler_h4()).unwrap();
        assert!(h4.factorization(false).has("ρ' = ψ∘ρ^op"));
    }

    #[test]
    fn rho_f_dimensions() {
        assert_eq!(rho_f(&s3_c3()).unwrap().iso.dims(), (12, 12));
        assert_eq!(rho_f(&h4_c2()).unwrap().iso.dims(), (8, 8));
        let full = HopfEmbedding::subgroup(q(), &FiniteGroup::cyclic(2), &[0, 1]).unwrap();
        assert_eq!(rho_f(&full).unwrap().iso.dims(), (2, 2));
    }

    #[test]
    fn dual_transpose_cases() {
        assert_eq!(dual_transpose(&s3_c3()).unwrap().iso.dims(), (12, 12));
        let trivial = HopfEmbedding::subgroup(q(), &FiniteGroup::cyclic(2), &[0]).unwrap();
        let d = dual_transpose(&trivial).unwrap();
        assert_eq!(d.iso.dims(), (4, 4));
    }

    #[test]
    fn injective_theorem_group_trivial_coefficients() {
        let emb = s3_c3();
        let sys = FrobeniusSystem::build(&emb).unwrap();
        let ma = ModuleAlgebra::trivial(&emb.sub, &Algebra::ground(q()));
        let th = theorem_injective(&sys, &ma).unwrap();
        assert_eq!(th.composite.dims(), (12, 12));
        assert_eq!(th.expected_dim(), 12);
        let cor = corollary_injective(&sys, &th).unwrap();
        assert_eq!(cor.iso.dims(), (12, 12));
    }

    #[test]
    fn injective_theorem_h4() {
        let emb = h4_c2();
        let sys = FrobeniusSystem::build(&emb).unwrap();
        let ma = ModuleAlgebra::adjoint(&emb.sub);
        let th = theorem_injective(&sys, &ma).unwrap();
        assert_eq!(th.composite.dims(), (16, 16));
        assert!(corollary_injective(&sys, &th).is_ok());
    }

    #[test]
    fn injective_theorem_b_equals_a() {
        let emb = HopfEmbedding::subgroup(q(), &FiniteGroup::cyclic(2), &[0, 1]).unwrap();
        let sys = FrobeniusSystem::build(&emb).unwrap();
        let th = theorem_injective(&sys, &ModuleAlgebra::trivial(&emb.sub, &Algebra::ground(q()))).unwrap();
        assert_eq!(th.composite.dims(), (2, 2));
    }

    #[test]
    fn injective_theorem_fails_for_nontrivial_action() {
        // kC2 swapping the idempotents of k×k: (F⊗C)#A is commutative, C#B ≅ M2(k)
        let g = FiniteGroup::cyclic(2);
        let emb = HopfEmbedding::subgroup(q(), &g, &[0, 1]).unwrap();
        let sys = FrobeniusSystem::build(&emb).unwrap();
        let ma = ModuleAlgebra::translation(q(), &g);
        match theorem_injective(&sys, &ma) {
            Err(Error::Check { check, .. }) => assert!(check.starts_with("Ψ(f*⊗c)")),
            other => panic!("unexpected {other:?}"),
        }
        let t = turull_induction(&emb, &ma).unwrap();
        assert!(SmashProduct::build(&t.induced).unwrap().algebra().is_commutative());
        assert!(!SmashProduct::build(&ma).unwrap().algebra().is_commutative());
    }

    #[test]
    fn surjective_theorem_cases() {
        let g = FiniteGroup::symmetric3();
        let quot = NormalHopfQuotient::new(s3_c3()).unwrap();
        let b = quot.embedding.ambient.clone();
        for (ma, dim) in [
            (ModuleAlgebra::trivial(&b, &Algebra::ground(q())), 2),
            (ModuleAlgebra::adjoint(&b), 8),
            (ModuleAlgebra::translation(q(), &g), 4),
        ] {
            let th = theorem_surjective(&quot, &ma).unwrap();
            assert_eq!(th.iso.dims(), (dim, dim));
        }
        let none = NormalHopfQuotient::new(HopfEmbedding::subgroup(q(), &g, &[0]).unwrap()).unwrap();
        let th = theorem_surjective(&none, &ModuleAlgebra::adjoint(&b)).unwrap();
        assert_eq!(th.iso.dims(), (36, 36));
        let all = NormalHopfQuotient::new(HopfEmbedding::subgroup(q(), &g, &[0, 1, 2, 3, 4, 5]).unwrap()).unwrap();
        let th = theorem_surjective(&all, &ModuleAlgebra::adjoint(&b)).unwrap();
        assert_eq!(th.iso.dims(), (3, 3));
    }

    #[test]
    fn group_corollary() {
        let c4 = FiniteGroup::cyclic(4);
        let triv = ModuleAlgebra::trivial(&HopfAlgebra::group_algebra(q(), &c4), &Algebra::ground(q()));
        let cor = corollary_group_skew(&c4, &[0, 2], &triv).unwrap();
        assert_eq!(cor.theorem.iso.dims(), (2, 2));
        let s3 = FiniteGroup::symmetric3();
        let cor = corollary_group_skew(&s3, &[0, 1, 2], &ModuleAlgebra::translation(q(), &s3)).unwrap();
        assert_eq!(cor.skew.dim(), 36);
        assert_eq!(cor.skew_bar.dim(), 4);
        assert!(corollary_group_skew(&s3, &[0], &ModuleAlgebra::adjoint(&HopfAlgebra::group_algebra(q(), &s3))).is_ok());
    }
}
