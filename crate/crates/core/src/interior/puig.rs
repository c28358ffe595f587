use rayon::prelude::*;

use super::{linckelmann_induction, triple_space, InducedInteriorAlgebra, InteriorAlgebra, LinckelmannInduction};
use crate::algebra::{is_bijective, verify_algebra_morphism, Algebra};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusSystem;
use crate::linalg::{add_scaled, is_zero_vector, zero_vector, Matrix, Vector};
use crate::modules::{tensor_over, Bimodule, Module, Side, TensorOverB};
use crate::scalar::Scalar;

type Sparse = Vec<(usize, Scalar)>;

/// `A_β ⊗_B C ⊗_B A` with product
/// `(a₁⊗c₁⊗a₁')(a₂⊗c₂⊗a₂') = a₁ ⊗ c₁ σβ⁻¹φ(a₁'a₂) c₂ ⊗ a₂'`.
#[derive(Clone, Debug)]
pub struct PuigInduction {
    pub system: FrobeniusSystem,
    pub coeff: InteriorAlgebra,
    /// `A_β ⊗_B C`.
    pub first: TensorOverB,
    /// `(A_β ⊗_B C) ⊗_B A`.
    pub second: TensorOverB,
    /// Projection from `A ⊗ C ⊗ A` onto the carrier.
    pub proj: Matrix,
    /// Pure tensor `(x, c, y)` behind each carrier basis vector.
    pub triples: Vec<(usize, usize, usize)>,
    pub induced: InducedInteriorAlgebra,
    proj_cols: Vec<Vector>,
    /// `σβ⁻¹φ(e_y e_x)` at `y * dim A + x`.
    weights: Vec<Vector>,
}

impl PuigInduction {
    pub fn build(system: &FrobeniusSystem, coeff: &InteriorAlgebra) -> Result<PuigInduction> {
        let emb = &system.embedding;
        if coeff.base != emb.sub.alg {
            return Err(Error::Shape("interior algebra is not over the Frobenius subalgebra".into()));
        }
        let a = &emb.ambient.alg;
        let b = &emb.sub.alg;
        let c = &coeff.algebra;
        let field = a.field();
        let (na, nc) = (a.dim(), c.dim());

        let a_beta = Module::regular(a, Side::Right).restrict(b, &emb.incl.mul(&system.beta));
        let first = tensor_over(&a_beta, &coeff.left_module())?;
        let first_right = Module::right(
            b.clone(),
            first.space().clone(),
            first.transport_right_all(&coeff.right_module().ops, "right B-action on A_β⊗_B C")?,
        )?;
        let second = tensor_over(&first_right, &Module::regular(a, Side::Left).restrict(b, &emb.incl))?;
        let proj = second.quotient.proj.matrix.mul(&first.quotient.proj.matrix.kronecker(&Matrix::identity(field, na)));
        let proj_cols = proj.columns();
        let triples: Vec<_> = second
            .quotient
            .representatives
            .iter()
            .map(|&r2| {
                let r1 = first.quotient.representatives[r2 / na];
                (r1 / nc, r1 % nc, r2 % na)
            })
            .collect();
        let weights = (0..na * na)
            .map(|yx| {
                let prod = a.basis_product(yx / na, yx % na);
                coeff.sigma.apply(&system.phi_twisted(&prod))
            })
            .collect();
        let space = triple_space(
            triples.iter().map(|&(x, j, y)| format!("{}⊗{}⊗{}", a.label(x), c.label(j), a.label(y))),
        )?;
        let mut p = PuigInduction {
            system: system.clone(),
            coeff: coeff.clone(),
            first,
            second,
            proj,
            triples,
            induced: InducedInteriorAlgebra {
                source: a.clone(),
                carrier: Algebra::ground(field),
                structural: Matrix::zeros(field, 1, na),
            },
            proj_cols,
            weights,
        };
        let d = p.triples.len();
        let products: Vec<Vector> = (0..d * d)
            .into_par_iter()
            .map(|ij| {
                let (s, t) = (p.triples[ij / d], p.triples[ij % d]);
                p.project(&p.pure_product(s, t))
            })
            .collect();
        let one_c = c.unit().clone();
        let mut unit = zero_vector(field, d);
        for (ri, li) in system.r.iter().zip(&system.l) {
            add_scaled(&mut unit, &field.one(), &p.class(ri, &one_c, li));
        }
        let carrier = Algebra::new(field, space, products, unit)?;
        let tau_cols: Vec<Vector> = (0..na)
            .map(|i| {
                let ai = a.basis_vector(i);
                let mut v = zero_vector(field, d);
                for (ri, li) in system.r.iter().zip(&system.l) {
                    add_scaled(&mut v, &field.one(), &p.class(&a.mul(&ai, ri), &one_c, li));
                }
                v
            })
            .collect();
        p.induced = InducedInteriorAlgebra {
            source: a.clone(),
            carrier,
            structural: Matrix::from_columns(field, d, &tau_cols),
        };
        p.check_well_defined()?;
        p.induced.verify().into_result()?;
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.triples.len()
    }

    pub fn carrier(&self) -> &Algebra {
        &self.induced.carrier
    }

    /// `τ(a) = Σ a r_i ⊗ 1 ⊗ l_i`, as a `dim × dim A` matrix.
    pub fn tau(&self) -> &Matrix {
        &self.induced.structural
    }

    fn dims(&self) -> (usize, usize) {
        (self.system.embedding.ambient.dim(), self.coeff.dim())
    }

    fn index(&self, x: usize, m: usize, y: usize) -> usize {
        let (na, nc) = self.dims();
        (x * nc + m) * na + y
    }

    fn project(&self, v: &Sparse) -> Vector {
        let field = self.coeff.algebra.field();
        let mut out = zero_vector(field, self.triples.len());
        for (i, c) in v {
            add_scaled(&mut out, c, &self.proj_cols[*i]);
        }
        out
    }

    /// Class of `x ⊗ c ⊗ y`.
    pub fn class(&self, x: &[Scalar], c: &[Scalar], y: &[Scalar]) -> Vector {
        let mut sparse = Vec::new();
        for (i, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for (m, v) in c.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let uv = u * v;
                for (k, w) in y.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                    sparse.push((self.index(i, m, k), &uv * w));
                }
            }
        }
        self.project(&sparse)
    }

    /// `σβ⁻¹φ(e_y e_x)`.
    pub fn weight(&self, y: usize, x: usize) -> &Vector {
        &self.weights[y * self.dims().0 + x]
    }

    /// Product of two pure basis triples in `A ⊗ C ⊗ A`, before projecting.
    fn pure_product(&self, s: (usize, usize, usize), t: (usize, usize, usize)) -> Sparse {
        let c = &self.coeff.algebra;
        let w = self.weight(s.2, t.0);
        if is_zero_vector(w) {
            return Vec::new();
        }
        let mid = c.mul_all(&[&c.basis_vector(s.1), w, &c.basis_vector(t.1)]);
        mid.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, v)| (self.index(s.0, m, t.2), v))
            .collect()
    }

    fn sparse_product(&self, u: &Sparse, v: &Sparse) -> Sparse {
        let mut out = Vec::new();
        for (i, x) in u {
            for (j, y) in v {
                let xy = x * y;
                for (k, z) in self.pure_product(self.split(*i), self.split(*j)) {
                    out.push((k, &xy * &z));
                }
            }
        }
        out
    }

    fn split(&self, idx: usize) -> (usize, usize, usize) {
        let (na, nc) = self.dims();
        (idx / (nc * na), (idx / na) % nc, idx % na)
    }

    /// Spanning relations of `A ⊗ C ⊗ A → A_β⊗_B C⊗_B A`.
    pub(crate) fn relations(&self) -> Vec<Sparse> {
        let emb = &self.system.embedding;
        let (a, b, c) = (&emb.ambient.alg, &emb.sub.alg, &self.coeff.algebra);
        let (na, nc) = self.dims();
        let mut out = Vec::new();
        for s in 0..b.dim() {
            let bs = emb.image(&b.basis_vector(s));
            let beta_bs = emb.image(&self.system.beta.column(s));
            let sig = self.coeff.sigma.column(s);
            for x in 0..na {
                let xb = a.mul(&a.basis_vector(x), &beta_bs);
                for j in 0..nc {
                    let cj = c.basis_vector(j);
                    let sc = c.mul(&sig, &cj);
                    let cs = c.mul(&cj, &sig);
                    for y in 0..na {
                        let by = a.mul(&bs, &a.basis_vector(y));
                        let mut r1 = Vec::new();
                        for (i, u) in xb.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                            r1.push((self.index(i, j, y), u.clone()));
                        }
                        for (m, v) in sc.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            r1.push((self.index(x, m, y), -v));
                        }
                        let mut r2 = Vec::new();
                        for (m, v) in cs.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            r2.push((self.index(x, m, y), v.clone()));
                        }
                        for (k, w) in by.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                            r2.push((self.index(x, j, k), -w));
                        }
                        out.push(r1);
                        out.push(r2);
                    }
                }
            }
        }
        out
    }

    /// Every spanning relation multiplies to zero against every pure basis
    /// triple, on both sides.
    fn check_well_defined(&self) -> Result<()> {
        let rels = self.relations();
        let (na, nc) = self.dims();
        let field = self.coeff.algebra.field();
        let n = na * nc * na;
        let bad = rels.par_iter().find_map_first(|r| {
            if !is_zero_vector(&self.project(r)) {
                return Some(("relation projects to zero", r.clone(), 0));
            }
            (0..n).find_map(|t| {
                let e = vec![(t, field.one())];
                if !is_zero_vector(&self.project(&self.sparse_product(r, &e))) {
                    Some(("product is well defined in the left factor", r.clone(), t))
                } else if !is_zero_vector(&self.project(&self.sparse_product(&e, r))) {
                    Some(("product is well defined in the right factor", r.clone(), t))
                } else {
                    None
                }
            })
        });
        if let Some((what, r, t)) = bad {
            let (a, c) = (&self.system.embedding.ambient.alg, &self.coeff.algebra);
            let show = |i: usize| {
                let (x, m, y) = self.split(i);
                format!("{}⊗{}⊗{}", a.label(x), c.label(m), a.label(y))
            };
            let rel: Vec<String> = r.iter().map(|(i, v)| format!("{v}·{}", show(*i))).collect();
            return Err(Error::check(what, format!("{} against {}", rel.join(" + "), show(t))));
        }
        Ok(())
    }
}

/// `Ψ: A_β⊗_B C⊗_B A → Ind_{A_β}(C)`, `Ψ_{a⊗c⊗a'}(b⊗d) = a ⊗ c σβ⁻¹φ(a'b) d`,
/// with inverse `f ↦ Σ f(r_i⊗1) ⊗ l_i`.
#[derive(Clone, Debug)]
pub struct PsiIsomorphism {
    pub linckelmann: LinckelmannInduction,
    /// `dim End × dim carrier`.
    pub forward: Matrix,
    pub backward: Matrix,
}

/// The `(A, B)`-bimodule `A_β`.
pub fn twisted_bimodule(sys: &FrobeniusSystem) -> Bimodule {
    let emb = &sys.embedding;
    let a = &emb.ambient.alg;
    Bimodule {
        left: Module::regular(a, Side::Left),
        right: Module::regular(a, Side::Right).restrict(&emb.sub.alg, &emb.incl.mul(&sys.beta)),
    }
}

pub fn psi_isomorphism(p: &PuigInduction) -> Result<PsiIsomorphism> {
    let lk = linckelmann_induction(&twisted_bimodule(&p.system), &p.coeff)?;
    let nc = p.coeff.dim();
    let a = &p.system.embedding.ambient.alg;
    let c = &p.coeff.algebra;
    let field = a.field();
    let t = &lk.tensor;
    let pure: Vec<(usize, usize)> = t.quotient.representatives.iter().map(|&r| (r / nc, r % nc)).collect();
    let tproj = t.quotient.proj.matrix.columns();

    // Ψ of the pure ambient triple (x, m, y) as an operator on A_β ⊗_B C.
    let psi_pure = |x: usize, m: usize, y: usize| -> Matrix {
        let cols: Vec<Vector> = pure
            .iter()
            .map(|&(s, dd)| {
                let mid = c.mul_all(&[&c.basis_vector(m), p.weight(y, s), &c.basis_vector(dd)]);
                let mut v = zero_vector(field, t.dim());
                for (k, coef) in mid.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    add_scaled(&mut v, coef, &tproj[x * nc + k]);
                }
                v
            })
            .collect();
        Matrix::from_columns(field, t.dim(), &cols)
    };
    let psi_sparse = |v: &Sparse| -> Matrix {
        let mut m = Matrix::zeros(field, t.dim(), t.dim());
        for (i, coef) in v {
            let (x, k, y) = p.split(*i);
            m.add_scaled(coef, &psi_pure(x, k, y));
        }
        m
    };
    if let Some(r) = p.relations().par_iter().find_first(|r| !psi_sparse(r).is_zero()) {
        let (x, m, y) = p.split(r[0].0);
        return Err(Error::check("Ψ is balanced", format!("{}⊗{}⊗{}", a.label(x), c.label(m), a.label(y))));
    }
    let fwd_cols = p
        .triples
        .iter()
        .map(|&(x, m, y)| {
            lk.end.coords_of(&psi_pure(x, m, y)).ok_or_else(|| {
                Error::check("Ψ lands in End_{C^op}", format!("{}⊗{}⊗{}", a.label(x), c.label(m), a.label(y)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let forward = Matrix::from_columns(field, lk.end.dim(), &fwd_cols);
    let one_c = c.unit().clone();
    let starts: Vec<Vector> = p.system.r.iter().map(|ri| t.class(ri, &one_c)).collect();
    let bwd_cols: Vec<Vector> = lk
        .end
        .basis
        .iter()
        .map(|f| {
            let mut v = zero_vector(field, p.dim());
            for (s, li) in starts.iter().zip(&p.system.l) {
                let img = t.quotient.lift(&f.apply(s));
                let mut sparse = Vec::new();
                for (ik, u) in img.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                    for (y, w) in li.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
                        sparse.push((p.index(ik / nc, ik % nc, y), u * w));
                    }
                }
                add_scaled(&mut v, &field.one(), &p.project(&sparse));
            }
            v
        })
        .collect();
    let backward = Matrix::from_columns(field, p.dim(), &bwd_cols);

    let mut report = verify_algebra_morphism(p.carrier(), &lk.end.algebra, &forward);
    if !is_bijective(&forward) {
        report.fail("Ψ is bijective", format!("rank {}", forward.rank()));
    }
    if backward.mul(&forward) != Matrix::identity(field, p.dim()) {
        report.fail("Ψ⁻¹∘Ψ = id", "carrier");
    }
    if forward.rows() == backward.cols() && forward.mul(&backward) != Matrix::identity(field, lk.end.dim()) {
        report.fail("Ψ∘Ψ⁻¹ = id", "End");
    }
    let lhs = forward.mul(p.tau());
    if let Some(i) = (0..a.dim()).find(|&i| lhs.column(i) != lk.induced.structural.column(i)) {
        report.fail("Ψ∘τ = structural map of Ind", a.label(i).to_string());
    }
    report.into_result()?;
    Ok(PsiIsomorphism { linckelmann: lk, forward, backward })
}
