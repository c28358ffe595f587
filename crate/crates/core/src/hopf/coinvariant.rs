use super::{HopfAlgebra, HopfEmbedding};
use crate::algebra::{dot, is_bijective, verify_algebra_morphism, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, quotient_space, Coordinates, FiniteDimSpace, Matrix, Quotient, Vector};
use crate::report::Report;
use crate::scalar::Scalar;

/// `F = { f ∈ A^× : f(ab) = f(a)ε(b) }` with `(f·f')(a) = Σ f(a_(2)) f'(a_(1))`,
/// unit `ε`, and the left `A`-action `(af)(a') = f(S(a)a')`.
#[derive(Clone, Debug)]
pub struct CoinvariantDual {
    /// Functionals on `A`, as value vectors on the basis of `A`.
    pub basis: Vec<Vector>,
    pub coords: Coordinates,
    pub algebra: Algebra,
    /// `action[i]` is the operator of the `i`-th basis vector of `A` on `F`.
    pub action: Vec<Matrix>,
    pub hopf: HopfAlgebra,
}

impl CoinvariantDual {
    pub fn build(emb: &HopfEmbedding) -> Result<CoinvariantDual> {
        let a = &emb.ambient;
        let field = a.field();
        let n = a.dim();
        let bimg = emb.image_basis();
        let rows = (0..n).flat_map(|i| {
            let ai = a.alg.basis_vector(i);
            bimg.iter()
                .zip(&emb.sub.counit)
                .map(move |(b, eb)| {
                    let mut row = a.alg.mul(&ai, b);
                    row[i] -= eb;
                    row
                })
                .collect::<Vec<_>>()
        });
        let basis = kernel_of_rows(field, n, rows);
        if basis.len() * emb.sub.dim() != n {
            return Err(Error::check(
                "dim F · dim B = dim A",
                format!("{} · {} ≠ {n}", basis.len(), emb.sub.dim()),
            ));
        }
        let coords = Coordinates::new(field, n, basis.clone())?;
        let d = basis.len();
        let space = FiniteDimSpace::indexed("f", d);
        let mut products = Vec::with_capacity(d * d);
        for f in &basis {
            for g in &basis {
                let fg = dual_product(a, f, g);
                products.push(coords.coords(&fg).ok_or_else(|| Error::check("F is closed under product", "f·f'"))?);
            }
        }
        let unit = coords
            .coords(&a.counit)
            .ok_or_else(|| Error::check("counit lies in F", "ε"))?;
        let algebra = Algebra::new(field, space, products, unit)?;
        let mut action = Vec::with_capacity(n);
        for i in 0..n {
            let t = a.alg.left_mult(&a.s(&a.alg.basis_vector(i))).transpose();
            let cols = basis
                .iter()
                .map(|f| coords.coords(&t.apply(f)).ok_or_else(|| Error::check("F is an A-submodule", a.label(i))))
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_columns(field, d, &cols));
        }
        Ok(CoinvariantDual { basis, coords, algebra, action, hopf: a.clone() })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The functional on `A` represented by coordinates `c`.
    pub fn functional(&self, c: &[Scalar]) -> Vector {
        self.coords.combine(c)
    }

    /// Action of an arbitrary element of `A` on `F`.
    pub fn act(&self, a: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.algebra.field(), d, d);
        for (c, op) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                m.add_scaled(c, op);
            }
        }
        m
    }

    /// Algebra axioms plus the module-algebra identities
    /// `a·(ff') = Σ (a_(1)f)(a_(2)f')` and `a·ε = ε(a)ε`.
    pub fn verify(&self) -> Report {
        let mut r = self.algebra.verify();
        let a = &self.hopf;
        let d = self.dim();
        let unit = self.algebra.unit();
        'outer: for i in 0..a.dim() {
            let au: Vector = self.action[i].apply(unit);
            let expect: Vector = unit.iter().map(|u| u * &a.counit[i]).collect();
            if au != expect {
                r.fail("A acts on the unit of F through ε", a.label(i).to_string());
                break;
            }
            for p in 0..d {
                for q in 0..d {
                    let lhs = self.action[i].apply(&self.algebra.basis_product(p, q));
                    let mut rhs = self.algebra.zero();
                    for (c, s, t) in a.sweedler(i) {
                        let x = self.action[s].column(p);
                        let y = self.action[t].column(q);
                        crate::linalg::add_scaled(&mut rhs, &c, &self.algebra.mul(&x, &y));
                    }
                    if lhs != rhs {
                        r.fail("F is a left A-module algebra", format!("({}, f{p}, f{q})", a.label(i)));
                        break 'outer;
                    }
                }
            }
        }
        r
    }
}

/// `(f·f')(e_k) = Σ Δ_k^{pq} f(e_q) f'(e_p)`.
pub(crate) fn dual_product(h: &HopfAlgebra, f: &[Scalar], g: &[Scalar]) -> Vector {
    let n = h.dim();
    (0..n)
        .map(|k| {
            let mut acc = h.field().zero();
            for (c, p, q) in h.sweedler(k) {
                let t = &f[q] * &g[p];
                if !t.is_zero() {
                    acc.add_mul(&c, &t);
                }
            }
            acc
        })
        .collect()
}

/// `C₁ = A ⊗_B k = A / A·B⁺` with the induced coalgebra structure, its dual
/// algebra taken opposite, and the isomorphism onto `F` given by `ξ ↦ ξ∘P`.
#[derive(Clone, Debug)]
pub struct InducedCoalgebra {
    pub quotient: Quotient,
    /// `dim² × dim`.
    pub delta: Matrix,
    pub counit: Vector,
    pub dual_op: Algebra,
    /// Columns are the images of the dual basis in `F`-coordinates.
    pub iso: Matrix,
}

impl InducedCoalgebra {
    pub fn build(emb: &HopfEmbedding, f: &CoinvariantDual) -> Result<InducedCoalgebra> {
        let a = &emb.ambient;
        let field = a.field();
        let n = a.dim();
        let relations: Vec<Vector> = emb
            .sub
            .augmented()
            .kernel()
            .iter()
            .flat_map(|b| {
                let ib = emb.image(b);
                (0..n).map(move |i| a.alg.mul(&a.alg.basis_vector(i), &ib)).collect::<Vec<_>>()
            })
            .collect();
        let quotient = quotient_space(field, a.alg.space(), relations);
        let d = quotient.dim();
        let p = quotient.proj.matrix.clone();
        let s = quotient.section.matrix.clone();
        let pp = p.kronecker(&p);
        for r in quotient.relation_basis() {
            if !crate::linalg::is_zero_vector(&pp.apply(&a.coproduct(&r))) {
                return Err(Error::check("coproduct descends to A⊗_B k", a.alg.render(&r)));
            }
            if !dot(&a.counit, &r).is_zero() {
                return Err(Error::check("counit descends to A⊗_B k", a.alg.render(&r)));
            }
        }
        let delta = pp.mul(&a.delta).mul(&s);
        let counit: Vector = s.columns().iter().map(|c| dot(&a.counit, c)).collect();
        let labels = quotient.space.labels().iter().map(|l| format!("δ_{l}")).collect();
        let products = (0..d * d)
            .map(|ij| {
                let (i, j) = (ij / d, ij % d);
                delta.row(j * d + i).to_vec()
            })
            .collect();
        let dual_op = Algebra::new(field, FiniteDimSpace::new(labels)?, products, counit.clone())?;
        let cols = (0..d)
            .map(|i| {
                f.coords
                    .coords(p.row(i))
                    .ok_or_else(|| Error::check("ξ∘P lies in F", dual_op.label(i).to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let iso = Matrix::from_columns(field, f.dim(), &cols);
        let mut report = dual_op.verify();
        report.merge(verify_algebra_morphism(&dual_op, &f.algebra, &iso));
        if !is_bijective(&iso) {
            report.fail("F ≅ (C₁^×)^op is bijective", format!("rank {}", iso.rank()));
        }
        report.into_result()?;
        Ok(InducedCoalgebra { quotient, delta, counit, dual_op, iso })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::Field;

    fn group_embedding(g: &FiniteGroup, h: &[usize]) -> HopfEmbedding {
        let f = Field::Rational;
        let (sub, idx) = g.subgroup(h).unwrap();
        let mut incl = Matrix::zeros(f, g.order(), sub.order());
        for (j, &x) in idx.iter().enumerate() {
            incl.set(x, j, f.one());
        }
        HopfEmbedding::new(HopfAlgebra::group_algebra(f, &sub), HopfAlgebra::group_algebra(f, g), incl).unwrap()
    }

    #[test]
    fn f_for_s3_over_c3() {
        let e = group_embedding(&FiniteGroup::symmetric3(), &[0, 1, 2]);
        let f = CoinvariantDual::build(&e).unwrap();
        assert_eq!(f.dim(), 2);
        assert!(f.verify().is_ok());
        // pointwise product in the group case
        for x in &f.basis {
            for y in &f.basis {
                let xy = dual_product(&e.ambient, x, y);
                let pointwise: Vector = x.iter().zip(y).map(|(a, b)| a * b).collect();
                assert_eq!(xy, pointwise);
            }
        }
    }

    #[test]
    fn f_for_b_equal_a() {
        let e = group_embedding(&FiniteGroup::cyclic(3), &[0, 1, 2]);
        let f = CoinvariantDual::build(&e).unwrap();
        assert_eq!(f.basis, vec![e.ambient.counit.clone()]);
        let c1 = InducedCoalgebra::build(&e, &f).unwrap();
        assert_eq!(c1.dim(), 1);
    }

    #[test]
    fn c1_dimension_is_index() {
        let g = FiniteGroup::symmetric3();
        for h in [vec![0], vec![0, 3], vec![0, 1, 2]] {
            let e = group_embedding(&g, &h);
            let f = CoinvariantDual::build(&e).unwrap();
            let c1 = InducedCoalgebra::build(&e, &f).unwrap();
            assert_eq!(c1.dim(), 6 / h.len());
            assert!(f.verify().is_ok());
        }
    }

    #[test]
    fn h4_over_kc2() {
        let q = Field::Rational;
        let mut incl = Matrix::zeros(q, 4, 2);
        incl.set(0, 0, q.one());
        incl.set(1, 1, q.one());
        let e = HopfEmbedding::new(
            HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(2)),
            HopfAlgebra::sweedler_h4(),
            incl,
        )
        .unwrap();
        let f = CoinvariantDual::build(&e).unwrap();
        assert_eq!(f.dim(), 2);
        assert!(f.verify().is_ok());
        let c1 = InducedCoalgebra::build(&e, &f).unwrap();
        assert_eq!(c1.dim(), 2);
    }
}
