//! Hopf algebras by structure constants, their sub-objects and quotients.
//!
//! Coproducts are stored as `n² × n` matrices on the lexicographic basis of
//! `A⊗A`, so column `i` lists the Sweedler terms `Σ e_(1) ⊗ e_(2)` of `e_i`.

mod coinvariant;
mod embedding;
mod quotient;

pub use coinvariant::{CoinvariantDual, InducedCoalgebra};
pub use embedding::{compute_free_basis, HopfEmbedding};
pub use quotient::NormalHopfQuotient;

use crate::algebra::{dot, Algebra, AugmentedAlgebra};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{add_scaled, tensor_vectors, unit_vector, zero_vector, FiniteDimSpace, Matrix, Vector};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub alg: Algebra,
    pub delta: Matrix,
    pub counit: Vector,
    pub antipode: Matrix,
}

impl HopfAlgebra {
    pub fn new(alg: Algebra, delta: Matrix, counit: Vector, antipode: Matrix) -> Result<HopfAlgebra> {
        let n = alg.dim();
        if delta.rows() != n * n || delta.cols() != n || counit.len() != n || antipode.rows() != n || antipode.cols() != n
        {
            return Err(Error::Shape(format!("Hopf structure maps do not match dimension {n}")));
        }
        Ok(HopfAlgebra { alg, delta, counit, antipode })
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.alg.label(i)
    }

    pub fn coproduct(&self, x: &[Scalar]) -> Vector {
        self.delta.apply(x)
    }

    /// Nonzero Sweedler terms `(c, p, q)` of `Δ(e_i) = Σ c e_p ⊗ e_q`.
    pub fn sweedler(&self, i: usize) -> Vec<(Scalar, usize, usize)> {
        let n = self.dim();
        (0..n * n)
            .filter(|&pq| !self.delta[(pq, i)].is_zero())
            .map(|pq| (self.delta[(pq, i)].clone(), pq / n, pq % n))
            .collect()
    }

    pub fn eps(&self, x: &[Scalar]) -> Scalar {
        dot(&self.counit, x)
    }

    pub fn s(&self, x: &[Scalar]) -> Vector {
        self.antipode.apply(x)
    }

    pub fn augmented(&self) -> AugmentedAlgebra {
        AugmentedAlgebra { algebra: self.alg.clone(), aug: self.counit.clone() }
    }

    /// Product in `A⊗A`, `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn tensor_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        tensor_square_mul(&self.alg, x, y)
    }

    /// Checks algebra axioms, coassociativity, counit laws, multiplicativity of
    /// `Δ` and `ε`, and both antipode laws. Each failed family reports one witness.
    pub fn verify(&self) -> Report {
        let mut r = self.alg.verify();
        let field = self.field();
        let n = self.dim();
        let id = Matrix::identity(field, n);
        let eps_row = Matrix::from_rows(field, n, &[self.counit.clone()]).expect("counit row");

        let left = id.kronecker(&self.delta).mul(&self.delta);
        let right = self.delta.kronecker(&id).mul(&self.delta);
        if let Some(i) = (0..n).find(|&i| left.column(i) != right.column(i)) {
            r.fail("coassociativity", self.label(i).to_string());
        }

        let l = eps_row.kronecker(&id).mul(&self.delta);
        let rr = id.kronecker(&eps_row).mul(&self.delta);
        if let Some(i) = (0..n).find(|&i| l.column(i) != id.column(i) || rr.column(i) != id.column(i)) {
            r.fail("counit law", self.label(i).to_string());
        }

        let one = self.alg.unit();
        if self.coproduct(one) != tensor_vectors(one, one) {
            r.fail("coproduct is unital", "1");
        }
        if !self.eps(one).is_one() {
            r.fail("counit is unital", "1");
        }
        'mult: for i in 0..n {
            for j in 0..n {
                let eij = self.alg.basis_product(i, j);
                let di = self.delta.column(i);
                let dj = self.delta.column(j);
                if self.coproduct(&eij) != self.tensor_mul(&di, &dj) {
                    r.fail("coproduct is multiplicative", format!("({}, {})", self.label(i), self.label(j)));
                    break 'mult;
                }
            }
        }
        'eps: for i in 0..n {
            for j in 0..n {
                if self.eps(&self.alg.basis_product(i, j)) != &self.counit[i] * &self.counit[j] {
                    r.fail("counit is multiplicative", format!("({}, {})", self.label(i), self.label(j)));
                    break 'eps;
                }
            }
        }
        for i in 0..n {
            let target: Vector = one.iter().map(|u| u * &self.counit[i]).collect();
            let mut left = self.alg.zero();
            let mut right = self.alg.zero();
            for (c, p, q) in self.sweedler(i) {
                let sp = self.s(&self.alg.basis_vector(p));
                let sq = self.s(&self.alg.basis_vector(q));
                add_scaled(&mut left, &c, &self.alg.mul(&sp, &self.alg.basis_vector(q)));
                add_scaled(&mut right, &c, &self.alg.mul(&self.alg.basis_vector(p), &sq));
            }
            if left != target || right != target {
                r.fail("antipode law", self.label(i).to_string());
                break;
            }
        }
        r
    }

    /// The one-dimensional Hopf algebra `k`.
    pub fn ground(field: Field) -> HopfAlgebra {
        let one = field.one();
        HopfAlgebra {
            alg: Algebra::ground(field),
            delta: Matrix::scalar(one.clone()),
            counit: vec![one.clone()],
            antipode: Matrix::scalar(one),
        }
    }

    /// `kG` with `Δg = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
    pub fn group_algebra(field: Field, group: &FiniteGroup) -> HopfAlgebra {
        let n = group.order();
        let space = FiniteDimSpace::new(group.labels().to_vec()).expect("group labels are distinct");
        let alg = Algebra::from_fn(field, space, unit_vector(field, n, group.identity()), |i, j| {
            unit_vector(field, n, group.mul(i, j))
        })
        .expect("shape");
        let mut delta = Matrix::zeros(field, n * n, n);
        let mut antipode = Matrix::zeros(field, n, n);
        for g in 0..n {
            delta.set(g * n + g, g, field.one());
            antipode.set(group.inv(g), g, field.one());
        }
        HopfAlgebra { alg, delta, counit: vec![field.one(); n], antipode }
    }

    /// The group behind a Hopf algebra whose basis is grouplike and closed under
    /// products, as with [`HopfAlgebra::group_algebra`].
    pub fn as_group(&self) -> Option<FiniteGroup> {
        let n = self.dim();
        let basis_index = |v: &[Scalar]| -> Option<usize> {
            let mut nz = v.iter().enumerate().filter(|(_, x)| !x.is_zero());
            let (i, x) = nz.next()?;
            (x.is_one() && nz.next().is_none()).then_some(i)
        };
        for i in 0..n {
            if basis_index(&self.delta.column(i)) != Some(i * n + i) {
                return None;
            }
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| basis_index(&self.alg.basis_product(i, j))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let labels = (0..n).map(|i| self.label(i).to_string()).collect();
        let g = FiniteGroup::from_table(labels, table).ok()?;
        (HopfAlgebra::group_algebra(self.field(), &g) == *self).then_some(g)
    }

    /// Group algebra straight from a Cayley table; rejects non-groups with a witness.
    pub fn from_cayley_table(field: Field, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<HopfAlgebra> {
        let group = FiniteGroup::from_table(labels, table)?;
        Ok(HopfAlgebra::group_algebra(field, &group))
    }

    /// Taft algebra `T_n(q)`: `g^n = 1`, `x^n = 0`, `xg = q gx`, `Δg = g⊗g`,
    /// `Δx = x⊗1 + g⊗x`, `S(g) = g⁻¹`, `S(x) = -g⁻¹x`.
    /// Basis `g^i x^j` at index `j·n + i`; `T_2(-1)` is Sweedler's algebra.
    pub fn taft(field: Field, n: usize, q: &Scalar) -> Result<HopfAlgebra> {
        if n < 2 {
            return Err(Error::Input("Taft algebra needs n >= 2".into()));
        }
        let is_primitive = q.pow(n as u64).is_one() && (1..n).all(|d| !q.pow(d as u64).is_one());
        if !is_primitive {
            return Err(Error::Input(format!("{q} is not a primitive {n}-th root of unity in {field}")));
        }
        let dim = n * n;
        let idx = |i: usize, j: usize| j * n + i;
        let labels = (0..dim)
            .map(|k| {
                let (i, j) = (k % n, k / n);
                let g = match i {
                    0 => String::new(),
                    1 => "g".into(),
                    _ => format!("g{i}"),
                };
                let x = match j {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x{j}"),
                };
                if i == 0 && j == 0 {
                    "1".into()
                } else {
                    g + &x
                }
            })
            .collect();
        let alg = Algebra::from_fn(field, FiniteDimSpace::new(labels)?, unit_vector(field, dim, 0), |a, b| {
            let (i, j) = (a % n, a / n);
            let (k, l) = (b % n, b / n);
            let mut v = zero_vector(field, dim);
            if j + l < n {
                // x^j g^k = q^{jk} g^k x^j
                v[idx((i + k) % n, j + l)] = q.pow((j * k) as u64);
            }
            v
        })?;
        let g = alg.basis_vector(idx(1, 0));
        let x = alg.basis_vector(idx(0, 1));
        let ginv = alg.basis_vector(idx(n - 1, 0));
        let one = alg.unit().clone();
        let dg = tensor_vectors(&g, &g);
        let dx = {
            let mut v = tensor_vectors(&x, &one);
            add_scaled(&mut v, &field.one(), &tensor_vectors(&g, &x));
            v
        };
        let sx: Vector = alg.mul(&ginv, &x).iter().map(|c| -c).collect();
        let mut delta_cols = Vec::with_capacity(dim);
        let mut s_cols = Vec::with_capacity(dim);
        let mut counit = Vec::with_capacity(dim);
        for k in 0..dim {
            let (i, j) = (k % n, k / n);
            let mut d = tensor_vectors(&one, &one);
            for _ in 0..i {
                d = tensor_square_mul(&alg, &d, &dg);
            }
            for _ in 0..j {
                d = tensor_square_mul(&alg, &d, &dx);
            }
            delta_cols.push(d);
            // S(g^i x^j) = S(x)^j S(g)^i
            let mut s = one.clone();
            for _ in 0..j {
                s = alg.mul(&s, &sx);
            }
            for _ in 0..i {
                s = alg.mul(&s, &ginv);
            }
            s_cols.push(s);
            counit.push(if j == 0 { field.one() } else { field.zero() });
        }
        let delta = Matrix::from_columns(field, dim * dim, &delta_cols);
        let antipode = Matrix::from_columns(field, dim, &s_cols);
        HopfAlgebra::new(alg, delta, counit, antipode)
    }

    /// Sweedler's four-dimensional algebra `H_4 = T_2(-1)` over `Q`.
    pub fn sweedler_h4() -> HopfAlgebra {
        let f = Field::Rational;
        HopfAlgebra::taft(f, 2, &f.from_i64(-1)).expect("H4")
    }

    /// Linear dual `H^×` with the transposed structure; basis labels `δ_<label>`.
    pub fn dual(&self) -> HopfAlgebra {
        let field = self.field();
        let n = self.dim();
        let labels = self.alg.space().labels().iter().map(|l| format!("δ_{l}")).collect();
        let space = FiniteDimSpace::new(labels).expect("distinct");
        let alg = Algebra::from_fn(field, space, self.counit.clone(), |i, j| self.delta.row(i * n + j).to_vec())
            .expect("shape");
        let mut delta = Matrix::zeros(field, n * n, n);
        for i in 0..n {
            for j in 0..n {
                let p = self.alg.basis_product(i, j);
                for (k, c) in p.iter().enumerate() {
                    if !c.is_zero() {
                        delta.set(i * n + j, k, c.clone());
                    }
                }
            }
        }
        HopfAlgebra { alg, delta, counit: self.alg.unit().clone(), antipode: self.antipode.transpose() }
    }
}

/// Product in `A⊗A` for an algebra `A`.
pub fn tensor_square_mul(alg: &Algebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    let n = alg.dim();
    let field = alg.field();
    let mut out = zero_vector(field, n * n);
    for (s, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (t, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            let left = alg.basis_product(s / n, t / n);
            let right = alg.basis_product(s % n, t % n);
            for (k, u) in left.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                let c = &ab * u;
                for (l, v) in right.iter().enumerate() {
                    if !v.is_zero() {
                        out[k * n + l].add_mul(&c, v);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_algebras_pass() {
        let q = Field::Rational;
        assert!(HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(1)).verify().is_ok());
        let c2 = HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(2));
        assert!(c2.verify().is_ok());
        assert_eq!(c2.antipode, Matrix::identity(q, 2));
        assert!(HopfAlgebra::group_algebra(q, &FiniteGroup::symmetric3()).verify().is_ok());
    }

    #[test]
    fn cayley_table_rejects_non_group() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let err = HopfAlgebra::from_cayley_table(Field::Rational, labels, vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::Check { .. }));
    }

    #[test]
    fn sweedler_h4_structure() {
        let h = HopfAlgebra::sweedler_h4();
        let f = h.field();
        assert_eq!(h.alg.space().labels(), &["1", "g", "x", "gx"]);
        // xg = -gx
        assert_eq!(h.alg.basis_product(2, 1), vec![f.zero(), f.zero(), f.zero(), f.from_i64(-1)]);
        // S(x) = -gx
        assert_eq!(h.antipode.column(2), vec![f.zero(), f.zero(), f.zero(), f.from_i64(-1)]);
        assert!(h.verify().is_ok(), "{:?}", h.verify());
    }

    #[test]
    fn perturbed_antipode_fails_at_x() {
        let mut h = HopfAlgebra::sweedler_h4();
        let f = h.field();
        h.antipode.set(3, 2, f.one());
        let r = h.verify();
        assert!(r.has("antipode law"));
        assert_eq!(r.failures.iter().find(|x| x.check == "antipode law").unwrap().witness, "x");
    }

    #[test]
    fn taft_over_f7() {
        let f = Field::prime(7).unwrap();
        let q = f.primitive_root_of_unity(3).unwrap();
        let t = HopfAlgebra::taft(f, 3, &q).unwrap();
        assert_eq!(t.dim(), 9);
        assert!(t.verify().is_ok(), "{:?}", t.verify());
        assert!(HopfAlgebra::taft(f, 3, &f.one()).is_err());
    }

    #[test]
    fn duals_pass() {
        let q = Field::Rational;
        for n in [2, 3] {
            let d = HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(n)).dual();
            assert!(d.verify().is_ok());
            assert!(d.alg.is_commutative());
        }
        let h = HopfAlgebra::sweedler_h4();
        assert!(h.dual().verify().is_ok());
        assert_eq!(h.dual().dual(), h.dual().dual().clone());
    }

    #[test]
    fn group_recognition() {
        let q = Field::Rational;
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(HopfAlgebra::group_algebra(q, &s3).as_group(), Some(s3));
        assert!(HopfAlgebra::sweedler_h4().as_group().is_none());
        assert!(HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(2)).dual().as_group().is_none());
    }
}
