//! Associative unital algebras given by structure constants.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{
    add_scaled, is_zero_vector, kernel_of_rows, unit_vector, zero_vector, Coordinates, FiniteDimSpace, Matrix, Vector,
};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

type SparseVec = Vec<(usize, Scalar)>;

fn sparsify(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// An algebra on a labelled basis. `e_i e_j` is stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    space: FiniteDimSpace,
    table: Vec<SparseVec>,
    unit: Vector,
}

impl Algebra {
    /// Builds an algebra from dense products `products[i * n + j] = e_i e_j`.
    /// No axioms are checked here; see [`Algebra::verify`].
    pub fn new(field: Field, space: FiniteDimSpace, products: Vec<Vector>, unit: Vector) -> Result<Algebra> {
        let n = space.dim();
        if products.len() != n * n || unit.len() != n || products.iter().any(|p| p.len() != n) {
            return Err(Error::Shape(format!("structure constants do not match dimension {n}")));
        }
        let table = products.iter().map(|p| sparsify(p)).collect();
        Ok(Algebra { field, space, table, unit })
    }

    /// Builds an algebra from a product rule on basis pairs.
    pub fn from_fn(
        field: Field,
        space: FiniteDimSpace,
        unit: Vector,
        product: impl Fn(usize, usize) -> Vector + Sync,
    ) -> Result<Algebra> {
        let n = space.dim();
        let products: Vec<Vector> =
            (0..n * n).into_par_iter().map(|ij| product(ij / n, ij % n)).collect();
        Algebra::new(field, space, products, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Algebra {
        let space = FiniteDimSpace::new(vec!["1".into()]).expect("single label");
        Algebra::new(field, space, vec![vec![field.one()]], vec![field.one()]).expect("shape")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &FiniteDimSpace {
        &self.space
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim())
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        let mut v = self.zero();
        for (k, x) in &self.table[i * self.dim() + j] {
            v[*k] = x.clone();
        }
        v
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * n + j] {
                    out[*k].add_mul(&ab, c);
                }
            }
        }
        out
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, factors: &[&[Scalar]]) -> Vector {
        factors.iter().fold(self.unit.clone(), |acc, f| self.mul(&acc, f))
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    pub fn render(&self, v: &[Scalar]) -> String {
        self.space.render(v)
    }

    pub fn label(&self, i: usize) -> &str {
        self.space.label(i)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }

    /// Checks associativity on all basis triples and the unit law on all basis
    /// vectors, reporting the first witness of each failure.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let n = self.dim();
        let witness = (0..n * n).into_par_iter().find_map_first(|ij| {
            let (i, j) = (ij / n, ij % n);
            let eij = self.basis_product(i, j);
            (0..n).find_map(|l| {
                let left = self.mul(&eij, &self.basis_vector(l));
                let right = self.mul(&self.basis_vector(i), &self.basis_product(j, l));
                (left != right).then(|| (i, j, l))
            })
        });
        if let Some((i, j, l)) = witness {
            report.fail(
                "associativity",
                format!("({}, {}, {})", self.label(i), self.label(j), self.label(l)),
            );
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                report.fail("unit", self.label(i).to_string());
                break;
            }
        }
        report
    }

    /// `A^op`: `e_i ∘ e_j = e_j e_i`, same unit.
    pub fn opposite(&self) -> Algebra {
        let n = self.dim();
        let table = (0..n * n).map(|ij| self.table[(ij % n) * n + ij / n].clone()).collect();
        Algebra { field: self.field, space: self.space.clone(), table, unit: self.unit.clone() }
    }

    /// `A ⊗ B` with `(a⊗b)(a'⊗b') = aa'⊗bb'` on the lexicographic basis.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim(), other.dim());
        let space = self.space.tensor(&other.space);
        let mut table = Vec::with_capacity(n * m * n * m);
        for i in 0..n * m {
            let (a, b) = (i / m, i % m);
            for j in 0..n * m {
                let (c, d) = (j / m, j % m);
                let mut entry = Vec::new();
                for (k, x) in &self.table[a * n + c] {
                    for (l, y) in &other.table[b * m + d] {
                        entry.push((k * m + l, x * y));
                    }
                }
                table.push(entry);
            }
        }
        let unit = crate::linalg::tensor_vectors(&self.unit, &other.unit);
        Algebra { field: self.field, space, table, unit }
    }

    /// `M_n(R)` on the basis `e_st ⊗ r`.
    pub fn matrix_algebra(n: usize, ring: &Algebra) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::Input("matrix algebra needs n >= 1".into()));
        }
        let field = ring.field;
        let labels: Vec<String> = (0..n * n).map(|st| format!("e{}{}", st / n + 1, st % n + 1)).collect();
        let units = Algebra::new(
            field,
            FiniteDimSpace::new(labels).expect("distinct"),
            (0..n * n * n * n)
                .map(|ij| {
                    let (st, uv) = (ij / (n * n), ij % (n * n));
                    let (s, t, u, v) = (st / n, st % n, uv / n, uv % n);
                    if t == u {
                        unit_vector(field, n * n, s * n + v)
                    } else {
                        zero_vector(field, n * n)
                    }
                })
                .collect(),
            {
                let mut one = zero_vector(field, n * n);
                for s in 0..n {
                    one[s * n + s] = field.one();
                }
                one
            },
        )?;
        Ok(if ring.dim() == 1 && ring.unit[0].is_one() { units } else { units.tensor(ring) })
    }

    /// The algebra on a basis of a subspace closed under the product.
    /// Returns the new algebra and the coordinate system of the basis inside `self`.
    pub fn restrict(&self, basis: Vec<Vector>, labels: Vec<String>) -> Result<(Algebra, Coordinates)> {
        let coords = Coordinates::new(self.field, self.dim(), basis)?;
        let d = coords.dim();
        let unit = coords
            .coords(&self.unit)
            .ok_or_else(|| Error::check("subalgebra contains the unit", self.render(&self.unit)))?;
        let mut products = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let p = self.mul(&coords.basis()[i], &coords.basis()[j]);
                let c = coords.coords(&p).ok_or_else(|| {
                    Error::check("closure of subalgebra under the product", format!("{} · {}", labels[i], labels[j]))
                })?;
                products.push(c);
            }
        }
        let alg = Algebra::new(self.field, FiniteDimSpace::new(labels)?, products, unit)?;
        Ok((alg, coords))
    }
}

/// An algebra with an augmentation `α: A → k`.
#[derive(Clone, Debug)]
pub struct AugmentedAlgebra {
    pub algebra: Algebra,
    /// `α` as a row of values on the basis.
    pub aug: Vector,
}

impl AugmentedAlgebra {
    pub fn new(algebra: Algebra, aug: Vector) -> Result<AugmentedAlgebra> {
        if aug.len() != algebra.dim() {
            return Err(Error::Shape("augmentation length".into()));
        }
        let a = AugmentedAlgebra { algebra, aug };
        a.verify().into_result()?;
        Ok(a)
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        dot(&self.aug, x)
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let alg = &self.algebra;
        if !self.eval(alg.unit()).is_one() {
            r.fail("augmentation is unital", "1");
        }
        let n = alg.dim();
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = self.eval(&alg.basis_product(i, j));
                if lhs != &self.aug[i] * &self.aug[j] {
                    r.fail("augmentation is multiplicative", format!("({}, {})", alg.label(i), alg.label(j)));
                    break 'outer;
                }
            }
        }
        r
    }

    /// Basis of `Ker α`.
    pub fn kernel(&self) -> Vec<Vector> {
        kernel_of_rows(self.algebra.field(), self.algebra.dim(), std::iter::once(self.aug.clone()))
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let field = a.first().map(Scalar::field).unwrap_or(Field::Rational);
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

/// Checks that `map` (columns = images of source basis vectors) is unital and
/// multiplicative, or anti-multiplicative when `anti` is set.
pub fn verify_morphism(source: &Algebra, target: &Algebra, map: &Matrix, anti: bool) -> Report {
    let mut r = Report::new();
    if map.rows() != target.dim() || map.cols() != source.dim() {
        r.fail("shape", format!("{}x{} map for {} -> {}", map.rows(), map.cols(), source.dim(), target.dim()));
        return r;
    }
    if &map.apply(source.unit()) != target.unit() {
        r.fail("unitality", format!("1 ↦ {}", target.render(&map.apply(source.unit()))));
    }
    let images: Vec<Vector> = map.columns();
    let n = source.dim();
    let witness = (0..n * n).into_par_iter().find_map_first(|ij| {
        let (i, j) = (ij / n, ij % n);
        let lhs = map.apply(&source.basis_product(i, j));
        let rhs = if anti { target.mul(&images[j], &images[i]) } else { target.mul(&images[i], &images[j]) };
        (lhs != rhs).then_some((i, j))
    });
    if let Some((i, j)) = witness {
        let what = if anti { "anti-multiplicativity" } else { "multiplicativity" };
        r.fail(what, format!("({}, {})", source.label(i), source.label(j)));
    }
    r
}

pub fn verify_algebra_morphism(source: &Algebra, target: &Algebra, map: &Matrix) -> Report {
    verify_morphism(source, target, map, false)
}

pub fn verify_anti_morphism(source: &Algebra, target: &Algebra, map: &Matrix) -> Report {
    verify_morphism(source, target, map, true)
}

pub fn is_bijective(map: &Matrix) -> bool {
    map.is_square() && map.rank() == map.rows()
}

/// A concrete subalgebra of `End_k(V)`, the commutant of a family of operators.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: Algebra,
    /// The endomorphism behind each basis vector of `algebra`.
    pub basis: Vec<Matrix>,
    space_dim: usize,
    coords: Coordinates,
}

impl EndomorphismAlgebra {
    /// `{X : X R = R X for all R in ops}` with composition as product.
    pub fn commutant(field: Field, dim: usize, ops: &[Matrix], prefix: &str) -> Result<EndomorphismAlgebra> {
        for op in ops {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::Shape("commutant operator shape".into()));
            }
        }
        let width = dim * dim;
        let rows = ops.iter().flat_map(|op| {
            (0..dim * dim).filter_map(move |ij| {
                let (i, j) = (ij / dim, ij % dim);
                // (X R - R X)[i][j] = Σ_k X[i][k] R[k][j] - Σ_k R[i][k] X[k][j]
                let mut row = zero_vector(field, width);
                for k in 0..dim {
                    let rkj = &op[(k, j)];
                    if !rkj.is_zero() {
                        row[i * dim + k] += rkj;
                    }
                    let rik = &op[(i, k)];
                    if !rik.is_zero() {
                        row[k * dim + j] -= rik;
                    }
                }
                (!is_zero_vector(&row)).then_some(row)
            })
        });
        let kernel = kernel_of_rows(field, width, rows);
        EndomorphismAlgebra::from_basis(field, dim, kernel, prefix)
    }

    /// Builds the algebra on a composition-closed family of flattened endomorphisms.
    pub fn from_basis(field: Field, dim: usize, flat: Vec<Vector>, prefix: &str) -> Result<EndomorphismAlgebra> {
        let coords = Coordinates::new(field, dim * dim, flat)?;
        let basis: Vec<Matrix> =
            coords.basis().iter().map(|v| Matrix::from_flat(field, dim, dim, v.clone())).collect();
        let d = basis.len();
        let unit = coords
            .coords(&Matrix::identity(field, dim).to_flat())
            .ok_or_else(|| Error::check("endomorphism family contains the identity", prefix.to_string()))?;
        let products: Result<Vec<Vector>> = (0..d * d)
            .into_par_iter()
            .map(|ij| {
                let p = basis[ij / d].mul(&basis[ij % d]);
                coords.coords(&p.to_flat()).ok_or_else(|| {
                    Error::check("closure of endomorphisms under composition", format!("({}, {})", ij / d, ij % d))
                })
            })
            .collect();
        let algebra = Algebra::new(field, FiniteDimSpace::indexed(prefix, d), products?, unit)?;
        Ok(EndomorphismAlgebra { algebra, basis, space_dim: dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    /// Coordinates of an endomorphism, or `None` if it is not in the family.
    pub fn coords_of(&self, m: &Matrix) -> Option<Vector> {
        self.coords.coords(&m.to_flat())
    }

    pub fn element(&self, c: &[Scalar]) -> Matrix {
        let field = self.algebra.field();
        let mut m = Matrix::zeros(field, self.space_dim, self.space_dim);
        for (x, b) in c.iter().zip(&self.basis) {
            m.add_scaled(x, b);
        }
        m
    }
}

/// Sum `Σ c_i v_i`.
pub fn combine(field: Field, n: usize, terms: impl IntoIterator<Item = (Scalar, Vector)>) -> Vector {
    let mut acc = zero_vector(field, n);
    for (c, v) in terms {
        add_scaled(&mut acc, &c, &v);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    /// kC_n from its Cayley table, written out independently of the hopf module.
    fn cyclic(n: usize) -> Algebra {
        let f = q();
        Algebra::from_fn(f, FiniteDimSpace::indexed("g", n), unit_vector(f, n, 0), |i, j| {
            unit_vector(f, n, (i + j) % n)
        })
        .unwrap()
    }

    #[test]
    fn ground_field_passes() {
        assert!(Algebra::ground(q()).verify().is_ok());
    }

    #[test]
    fn non_associative_table_detected() {
        // Unit e0; e1 e1 = e2, e1 e2 = e0, e2 e1 = 0. Then (e1 e1) e1 = 0 but e1 (e1 e1) = e0.
        let f = q();
        let mut prods = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                prods.push(match (i, j) {
                    (0, k) | (k, 0) => unit_vector(f, 3, k),
                    (1, 1) => unit_vector(f, 3, 2),
                    (1, 2) => unit_vector(f, 3, 0),
                    _ => zero_vector(f, 3),
                });
            }
        }
        let alg = Algebra::new(f, FiniteDimSpace::indexed("e", 3), prods, unit_vector(f, 3, 0)).unwrap();
        let report = alg.verify();
        assert!(report.has("associativity"));
        assert_eq!(report.first().unwrap().witness, "(e1, e1, e1)");
    }

    #[test]
    fn group_algebra_c2_passes() {
        assert!(cyclic(2).verify().is_ok());
    }

    #[test]
    fn opposite_is_involution() {
        let m2 = Algebra::matrix_algebra(2, &Algebra::ground(q())).unwrap();
        assert_eq!(m2.opposite().opposite(), m2);
        let c3 = cyclic(3);
        assert_eq!(c3.opposite(), c3);
        // e12 ∘ e21 in M2^op is e21 e12 = e22.
        let op = m2.opposite();
        assert_eq!(op.basis_product(1, 2), unit_vector(q(), 4, 3));
        assert_eq!(m2.basis_product(1, 2), unit_vector(q(), 4, 0));
    }

    #[test]
    fn tensor_products() {
        let c2 = cyclic(2);
        let k = Algebra::ground(q());
        let t = c2.tensor(&k);
        assert_eq!(t.dim(), 2);
        assert!(verify_algebra_morphism(&c2, &t, &Matrix::identity(q(), 2)).is_ok());
        let c2c2 = c2.tensor(&c2);
        assert_eq!(c2c2.dim(), 4);
        assert!(c2c2.verify().is_ok());
        // (g⊗1)(1⊗g) = g⊗g, (g⊗g)(g⊗g) = 1⊗1, computed by hand on the 4-element table.
        assert_eq!(c2c2.basis_product(2, 1), unit_vector(q(), 4, 3));
        assert_eq!(c2c2.basis_product(3, 3), unit_vector(q(), 4, 0));
    }

    #[test]
    fn matrix_algebras() {
        let k = Algebra::ground(q());
        let c2 = cyclic(2);
        assert_eq!(Algebra::matrix_algebra(1, &c2).unwrap().dim(), 2);
        let m2 = Algebra::matrix_algebra(2, &k).unwrap();
        assert_eq!(m2.basis_product(1, 2), unit_vector(q(), 4, 0));
        let m2c2 = Algebra::matrix_algebra(2, &c2).unwrap();
        assert_eq!(m2c2.dim(), 8);
        assert!(m2c2.verify().is_ok());
    }

    #[test]
    fn morphism_checks() {
        let c3 = cyclic(3);
        assert!(verify_algebra_morphism(&c3, &c3, &Matrix::identity(q(), 3)).is_ok());
        let m2 = Algebra::matrix_algebra(2, &Algebra::ground(q())).unwrap();
        // transpose: e11 e12 e21 e22 -> e11 e21 e12 e22
        let mut t = Matrix::zeros(q(), 4, 4);
        for (a, b) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            t.set(b, a, q().one());
        }
        assert!(verify_anti_morphism(&m2, &m2, &t).is_ok());
        assert!(!verify_algebra_morphism(&m2, &m2, &t).is_ok());
        let zero = Matrix::zeros(q(), 3, 3);
        assert!(verify_algebra_morphism(&c3, &c3, &zero).has("unitality"));
    }

    #[test]
    fn commutant_of_nothing_is_full_matrix_algebra() {
        let e = EndomorphismAlgebra::commutant(q(), 2, &[Matrix::identity(q(), 2)], "E").unwrap();
        assert_eq!(e.dim(), 4);
        assert!(e.algebra.verify().is_ok());
    }

    #[test]
    fn commutant_of_regular_right_action() {
        // End of kC2 as a right kC2-module: solve X R_g = R_g X, giving left multiplications.
        let c2 = cyclic(2);
        let ops: Vec<Matrix> = (0..2).map(|i| c2.right_mult(&c2.basis_vector(i))).collect();
        let e = EndomorphismAlgebra::commutant(q(), 2, &ops, "E").unwrap();
        assert_eq!(e.dim(), 2);
        assert!(e.coords_of(&c2.left_mult(&c2.basis_vector(1))).is_some());
        for b in &e.basis {
            for op in &ops {
                assert_eq!(b.mul(op), op.mul(b));
            }
        }
    }

    #[test]
    fn restrict_to_subalgebra() {
        let c4 = cyclic(4);
        let f = q();
        let (sub, _) = c4
            .restrict(vec![unit_vector(f, 4, 0), unit_vector(f, 4, 2)], vec!["1".into(), "g2".into()])
            .unwrap();
        assert_eq!(sub, cyclic(2).clone().tap_relabel(&["1", "g2"]));
        assert!(c4.restrict(vec![unit_vector(f, 4, 0), unit_vector(f, 4, 1)], vec!["a".into(), "b".into()]).is_err());
    }

    impl Algebra {
        fn tap_relabel(mut self, labels: &[&str]) -> Algebra {
            self.space = FiniteDimSpace::new(labels.iter().map(|s| s.to_string()).collect()).unwrap();
            self
        }
    }
}
