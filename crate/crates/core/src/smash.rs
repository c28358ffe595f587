//! Hopf module algebras, smash products and Turull induction.

use rayon::prelude::*;

use crate::algebra::{is_bijective, verify_algebra_morphism, Algebra};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hopf::{CoinvariantDual, HopfAlgebra, HopfEmbedding, NormalHopfQuotient};
use crate::interior::InteriorAlgebra;
use crate::linalg::{add_scaled, unit_vector, zero_vector, Coordinates, FiniteDimSpace, Matrix, Vector};
use crate::modules::{combine_ops, invariants, Module, Side};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

/// An algebra `C` with a left action of a Hopf algebra `H` by `action[i]`, the
/// operator of the `i`-th basis vector of `H`.
#[derive(Clone, Debug)]
pub struct ModuleAlgebra {
    pub hopf: HopfAlgebra,
    pub algebra: Algebra,
    pub action: Vec<Matrix>,
}

impl ModuleAlgebra {
    /// Checks shapes and the module-algebra axioms.
    pub fn new(hopf: HopfAlgebra, algebra: Algebra, action: Vec<Matrix>) -> Result<ModuleAlgebra> {
        let d = algebra.dim();
        if action.len() != hopf.dim() || action.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::Shape(format!("need {} action matrices of size {d}", hopf.dim())));
        }
        let ma = ModuleAlgebra { hopf, algebra, action };
        ma.verify().into_result()?;
        Ok(ma)
    }

    /// `h·c = ε(h)c`.
    pub fn trivial(hopf: &HopfAlgebra, algebra: &Algebra) -> ModuleAlgebra {
        let id = Matrix::identity(algebra.field(), algebra.dim());
        let action = hopf.counit.iter().map(|e| id.scale(e)).collect();
        ModuleAlgebra { hopf: hopf.clone(), algebra: algebra.clone(), action }
    }

    /// `H` acting on itself by `h·c = Σ h_(1) c S(h_(2))`.
    pub fn adjoint(hopf: &HopfAlgebra) -> ModuleAlgebra {
        let a = &hopf.alg;
        let n = a.dim();
        let field = a.field();
        let action = (0..n)
            .map(|i| {
                let mut m = Matrix::zeros(field, n, n);
                for (coef, p, q) in hopf.sweedler(i) {
                    let left = a.left_mult(&a.basis_vector(p));
                    let right = a.right_mult(&hopf.s(&a.basis_vector(q)));
                    m.add_scaled(&coef, &left.mul(&right));
                }
                m
            })
            .collect();
        ModuleAlgebra { hopf: hopf.clone(), algebra: a.clone(), action }
    }

    /// `k^G` (basis `δ_x`, pointwise product) with `g·δ_x = δ_{gx}`.
    /// For `C₂` this is `k×k` with the swap.
    pub fn translation(field: Field, group: &FiniteGroup) -> ModuleAlgebra {
        let n = group.order();
        let labels = group.labels().iter().map(|l| format!("δ_{l}")).collect();
        let space = FiniteDimSpace::new(labels).expect("group labels are distinct");
        let algebra = Algebra::from_fn(field, space, vec![field.one(); n], |x, y| {
            if x == y {
                unit_vector(field, n, x)
            } else {
                zero_vector(field, n)
            }
        })
        .expect("shape");
        let action = (0..n)
            .map(|g| {
                let mut m = Matrix::zeros(field, n, n);
                for x in 0..n {
                    m.set(group.mul(g, x), x, field.one());
                }
                m
            })
            .collect();
        ModuleAlgebra { hopf: HopfAlgebra::group_algebra(field, group), algebra, action }
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Operator of an arbitrary element of `H`.
    pub fn act(&self, h: &[Scalar]) -> Matrix {
        combine_ops(self.field(), self.dim(), &self.action, h)
    }

    /// Algebra and module axioms, `h·(cc') = Σ (h_(1)·c)(h_(2)·c')` and `h·1 = ε(h)1`.
    pub fn verify(&self) -> Report {
        let mut r = self.algebra.verify();
        let module = Module {
            side: Side::Left,
            algebra: self.hopf.alg.clone(),
            space: self.algebra.space().clone(),
            ops: self.action.clone(),
        };
        r.merge(module.verify());
        let c = &self.algebra;
        let h = &self.hopf;
        let d = c.dim();
        if let Some(i) = (0..h.dim()).find(|&i| {
            let expect: Vector = c.unit().iter().map(|u| u * &h.counit[i]).collect();
            self.action[i].apply(c.unit()) != expect
        }) {
            r.fail("h·1 = ε(h)1", h.label(i).to_string());
        }
        let bad = (0..h.dim() * d * d).into_par_iter().find_first(|&t| {
            let (i, p, q) = (t / (d * d), (t / d) % d, t % d);
            let lhs = self.action[i].apply(&c.basis_product(p, q));
            let mut rhs = c.zero();
            for (coef, s, u) in h.sweedler(i) {
                let x = self.action[s].column(p);
                let y = self.action[u].column(q);
                add_scaled(&mut rhs, &coef, &c.mul(&x, &y));
            }
            lhs != rhs
        });
        if let Some(t) = bad {
            let (i, p, q) = (t / (d * d), (t / d) % d, t % d);
            r.fail("h·(cc') = Σ (h_(1)·c)(h_(2)·c')", format!("({}, {}, {})", h.label(i), c.label(p), c.label(q)));
        }
        r
    }

    /// Restriction to a Hopf subalgebra.
    pub fn restrict(&self, emb: &HopfEmbedding) -> Result<ModuleAlgebra> {
        if emb.ambient != self.hopf {
            return Err(Error::Shape("module algebra is not over the ambient Hopf algebra".into()));
        }
        let action = emb.incl.columns().iter().map(|b| self.act(b)).collect();
        Ok(ModuleAlgebra { hopf: emb.sub.clone(), algebra: self.algebra.clone(), action })
    }
}

/// `C#B` on `C⊗B`, basis `c_i#b_j` at index `i·dim B + j`, with
/// `(c#b)(c'#b') = Σ c(b_(1)·c')#b_(2)b'` and interior structure `b ↦ 1#b`.
#[derive(Clone, Debug)]
pub struct SmashProduct {
    pub module_algebra: ModuleAlgebra,
    pub interior: InteriorAlgebra,
}

impl SmashProduct {
    pub fn build(ma: &ModuleAlgebra) -> Result<SmashProduct> {
        let c = &ma.algebra;
        let b = &ma.hopf;
        let field = ma.field();
        let (nc, nb) = (c.dim(), b.dim());
        let labels = (0..nc * nb).map(|k| format!("{}#{}", c.label(k / nb), b.label(k % nb))).collect();
        let space = FiniteDimSpace::new(labels)?;
        let unit = crate::linalg::tensor_vectors(c.unit(), b.alg.unit());
        let carrier = Algebra::from_fn(field, space, unit, |x, y| {
            let (i, j) = (x / nb, x % nb);
            let (k, l) = (y / nb, y % nb);
            let ci = c.basis_vector(i);
            let mut out = zero_vector(field, nc * nb);
            for (coef, p, q) in b.sweedler(j) {
                let left = c.mul(&ci, &ma.action[p].column(k));
                let right = b.alg.basis_product(q, l);
                add_scaled(&mut out, &coef, &crate::linalg::tensor_vectors(&left, &right));
            }
            out
        })?;
        let sigma = Matrix::identity(field, nb);
        let sigma = Matrix::from_columns(
            field,
            nc * nb,
            &sigma.columns().iter().map(|v| crate::linalg::tensor_vectors(c.unit(), v)).collect::<Vec<_>>(),
        );
        let interior = InteriorAlgebra::new(b.alg.clone(), carrier, sigma)?;
        Ok(SmashProduct { module_algebra: ma.clone(), interior })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.interior.algebra
    }

    pub fn dim(&self) -> usize {
        self.interior.dim()
    }

    /// `c#b` as a vector of the carrier.
    pub fn element(&self, c: &[Scalar], b: &[Scalar]) -> Vector {
        crate::linalg::tensor_vectors(c, b)
    }

    /// `C#B → End_k(C)`, `c#b ↦ (c' ↦ c(b·c'))`, landing in `M_{dim C}(k)`.
    pub fn regular_representation(&self) -> Result<Matrix> {
        let ma = &self.module_algebra;
        let c = &ma.algebra;
        let nb = ma.hopf.dim();
        let cols: Vec<Vector> = (0..self.dim())
            .map(|k| c.left_mult(&c.basis_vector(k / nb)).mul(&ma.action[k % nb]).to_flat())
            .collect();
        let target = Algebra::matrix_algebra(c.dim(), &Algebra::ground(ma.field()))?;
        let m = Matrix::from_columns(ma.field(), target.dim(), &cols);
        verify_algebra_morphism(self.algebra(), &target, &m).into_result()?;
        Ok(m)
    }
}

/// `IndT_B^A(C) = F⊗C` with componentwise product and `a(f⊗c) = af⊗c`.
#[derive(Clone, Debug)]
pub struct TurullInduction {
    pub f: CoinvariantDual,
    pub coeff: ModuleAlgebra,
    pub induced: ModuleAlgebra,
}

pub fn turull_induction(emb: &HopfEmbedding, ma: &ModuleAlgebra) -> Result<TurullInduction> {
    if ma.hopf != emb.sub {
        return Err(Error::Shape("module algebra is not over the subalgebra of the embedding".into()));
    }
    let f = CoinvariantDual::build(emb)?;
    f.verify().into_result()?;
    let algebra = f.algebra.tensor(&ma.algebra);
    let id = Matrix::identity(ma.field(), ma.dim());
    let action = f.action.iter().map(|op| op.kronecker(&id)).collect();
    let induced = ModuleAlgebra::new(emb.ambient.clone(), algebra, action)?;
    Ok(TurullInduction { f, coeff: ma.clone(), induced })
}

/// `kG⊗_{kH}C` on the basis `r⊗c` over the smallest coset representatives `r`,
/// with `(r⊗c)(r'⊗c') = δ_{r,r'} r⊗cc'` and `g(r⊗c) = r'⊗h·c` where `gr = r'h`,
/// together with the map `χ_{rH}⊗c ↦ r⊗c` from `F⊗C`.
#[derive(Clone, Debug)]
pub struct TurullGroupComparison {
    pub turull: TurullInduction,
    pub coset_algebra: ModuleAlgebra,
    /// `dim × dim`, from `F⊗C` to `kG⊗_{kH}C`.
    pub map: Matrix,
}

/// `ma` must be over `kH` with the basis order of [`FiniteGroup::subgroup`].
pub fn turull_group_comparison(g: &FiniteGroup, h: &[usize], ma: &ModuleAlgebra) -> Result<TurullGroupComparison> {
    let field = ma.field();
    let emb = HopfEmbedding::subgroup(field, g, h)?;
    let (_, sub) = g.subgroup(h)?;
    let turull = turull_induction(&emb, ma)?;
    let c = &ma.algebra;
    let nc = c.dim();
    let cosets = g.left_cosets(&sub);
    let reps: Vec<usize> = cosets.iter().map(|k| k[0]).collect();
    let m = reps.len();
    let coset_of = |x: usize| cosets.iter().position(|k| k.contains(&x)).expect("cosets cover G");
    let labels = (0..m * nc).map(|k| format!("{}⊗{}", g.label(reps[k / nc]), c.label(k % nc))).collect();
    let mut unit = zero_vector(field, m * nc);
    for k in 0..m {
        for (j, u) in c.unit().iter().enumerate() {
            unit[k * nc + j] = u.clone();
        }
    }
    let algebra = Algebra::from_fn(field, FiniteDimSpace::new(labels)?, unit, |x, y| {
        let mut out = zero_vector(field, m * nc);
        if x / nc == y / nc {
            let p = c.basis_product(x % nc, y % nc);
            out[(x / nc) * nc..(x / nc + 1) * nc].clone_from_slice(&p);
        }
        out
    })?;
    let action = (0..g.order())
        .map(|x| {
            let mut op = Matrix::zeros(field, m * nc, m * nc);
            for (k, &r) in reps.iter().enumerate() {
                let gr = g.mul(x, r);
                let l = coset_of(gr);
                let hh = g.mul(g.inv(reps[l]), gr);
                let hj = sub.iter().position(|&s| s == hh).expect("r'^{-1}gr lies in H");
                for j in 0..nc {
                    let col = ma.action[hj].column(j);
                    for (i, v) in col.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                        op.set(l * nc + i, k * nc + j, v.clone());
                    }
                }
            }
            op
        })
        .collect();
    let coset_algebra = ModuleAlgebra::new(emb.ambient.clone(), algebra, action)?;

    let chi_cols = cosets
        .iter()
        .map(|k| {
            let mut chi = zero_vector(field, g.order());
            for &x in k {
                chi[x] = field.one();
            }
            turull.f.coords.coords(&chi).ok_or_else(|| Error::check("coset indicator lies in F", g.label(k[0]).to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let chi = Matrix::from_columns(field, m, &chi_cols);
    let to_chi = chi.inverse().ok_or_else(|| Error::check("coset indicators span F", "rank"))?;
    let map = to_chi.kronecker(&Matrix::identity(field, nc));

    let mut report = verify_algebra_morphism(&turull.induced.algebra, &coset_algebra.algebra, &map);
    if !is_bijective(&map) {
        report.fail("F⊗C → kG⊗_{kH}C is bijective", format!("rank {}", map.rank()));
    }
    if let Some(x) = (0..g.order()).find(|&x| map.mul(&turull.induced.action[x]) != coset_algebra.action[x].mul(&map)) {
        report.fail("F⊗C → kG⊗_{kH}C is G-equivariant", g.label(x).to_string());
    }
    report.into_result()?;
    Ok(TurullGroupComparison { turull, coset_algebra, map })
}

/// `IndT_φ(C) = C^K` as a `B̄`-module algebra, `b̄·c = b·c` for any lift `b`.
#[derive(Clone, Debug)]
pub struct SurjectiveTurull {
    pub quotient: NormalHopfQuotient,
    pub coeff: ModuleAlgebra,
    /// Basis of `C^K` inside `C`.
    pub basis: Vec<Vector>,
    pub coords: Coordinates,
    pub induced: ModuleAlgebra,
}

pub fn surjective_turull(q: &NormalHopfQuotient, ma: &ModuleAlgebra) -> Result<SurjectiveTurull> {
    let emb = &q.embedding;
    if ma.hopf != emb.ambient {
        return Err(Error::Shape("module algebra is not over the Hopf algebra being divided".into()));
    }
    let field = ma.field();
    let c = &ma.algebra;
    let k_ops: Vec<Matrix> = emb.incl.columns().iter().map(|x| ma.act(x)).collect();
    let basis = invariants(field, c.dim(), &k_ops, &emb.sub.counit);
    let labels = basis.iter().map(|v| c.render(v)).collect();
    let (algebra, coords) = c.restrict(basis.clone(), labels)?;
    for r in &q.ideal_basis {
        let op = ma.act(r);
        if let Some(v) = basis.iter().find(|v| !op.apply(v).iter().all(Scalar::is_zero)) {
            return Err(Error::check("B̄-action on C^K is independent of lifts", format!("{} · {}", ma.hopf.alg.render(r), c.render(v))));
        }
    }
    let action = (0..q.bbar.dim())
        .map(|i| {
            let op = ma.act(&q.lift(&unit_vector(field, q.bbar.dim(), i)));
            let cols = basis
                .iter()
                .map(|v| {
                    coords.coords(&op.apply(v)).ok_or_else(|| {
                        Error::check("C^K is stable under B", format!("{} · {}", q.bbar.label(i), c.render(v)))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(field, basis.len(), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = ModuleAlgebra::new(q.bbar.clone(), algebra, action)?;
    Ok(SurjectiveTurull { quotient: q.clone(), coeff: ma.clone(), basis, coords, induced })
}

impl SurjectiveTurull {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// On `C^K#B`, `Σ x_(1)c#x_(2)b = c#xb` for basis `c ∈ C^K`, `x ∈ K`, `b ∈ B`.
    pub fn k_actions_coincide(&self, smash: &SmashProduct) -> Report {
        let mut r = Report::new();
        let emb = &self.quotient.embedding;
        let b = &emb.ambient.alg;
        let s = smash.algebra();
        let xs = emb.incl.columns();
        let triples: Vec<(usize, usize, usize)> = (0..self.basis.len())
            .flat_map(|ci| (0..xs.len()).flat_map(move |xi| (0..b.dim()).map(move |bi| (ci, xi, bi))))
            .collect();
        let bad = triples.par_iter().find_first(|&&(ci, xi, bi)| {
            let c = &self.basis[ci];
            let one_c = self.coeff.algebra.unit();
            let lhs = s.mul(&smash.element(one_c, &xs[xi]), &smash.element(c, &b.basis_vector(bi)));
            let rhs = smash.element(c, &b.mul(&xs[xi], &b.basis_vector(bi)));
            lhs != rhs
        });
        if let Some(&(ci, xi, bi)) = bad {
            r.fail(
                "Σ x_(1)c#x_(2)b = c#xb on C^K#B",
                format!("({}, {}, {})", self.coeff.algebra.render(&self.basis[ci]), emb.sub.label(xi), b.label(bi)),
            );
        }
        r
    }
}
