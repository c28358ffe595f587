//! Dense exact matrices plus the echelon machinery behind solving, kernels,
//! subspace arithmetic and quotients.
//!
//! Pivoting is fixed: columns are scanned left to right and the reduced row
//! echelon form of a row space is canonical, so every basis produced here is
//! a deterministic function of the input.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_mul(coeff, x);
        }
    }
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Coordinates of `a ⊗ b` in the lexicographic (left factor major) tensor basis.
pub fn tensor_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    let field = a.first().or(b.first()).map(Scalar::field).unwrap_or(Field::Rational);
    let mut out = zero_vector(field, a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

/// Renders a vector as a sparse combination of labels, e.g. `2·g + -1·x`.
pub fn render_vector(v: &[Scalar], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let l = labels.get(i).cloned().unwrap_or_else(|| format!("e{i}"));
            if c.is_one() {
                l
            } else {
                format!("{c}·{l}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A finite-dimensional space with an ordered basis of distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteDimSpace {
    labels: Vec<String>,
}

impl FiniteDimSpace {
    pub fn new(labels: Vec<String>) -> Result<FiniteDimSpace> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::Input(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(FiniteDimSpace { labels })
    }

    /// Labels `prefix0, prefix1, ...`.
    pub fn indexed(prefix: &str, dim: usize) -> FiniteDimSpace {
        FiniteDimSpace { labels: (0..dim).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn tensor(&self, other: &FiniteDimSpace) -> FiniteDimSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}⊗{b}"));
            }
        }
        FiniteDimSpace { labels }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn render(&self, v: &[Scalar]) -> String {
        render_vector(v, &self.labels)
    }
}

/// Row-major exact matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vector]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    /// The 1×1 matrix `(a)`.
    pub fn scalar(a: Scalar) -> Matrix {
        Matrix { field: a.field(), rows: 1, cols: 1, data: vec![a] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Flattened row-major entries, the coordinates of the matrix in `End_k`.
    pub fn to_flat(&self) -> Vector {
        self.data.clone()
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vector) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "apply: vector length mismatch");
        let mut out = zero_vector(self.field, self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    out[r].add_mul(a, x);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        add_scaled(&mut self.data, c, &other.data);
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        out
    }

    /// Kronecker product on the lexicographic tensor basis:
    /// `(f⊗g)(v⊗w) = f(v)⊗g(w)`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Matrix::zeros(self.field, self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out.set(i * r2 + k, j * c2 + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Block row `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self[(r, c)].clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other[(r, c)].clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rs = RowSpace::new(self.field, self.cols);
        for r in 0..self.rows {
            rs.insert(self.row(r).to_vec());
        }
        rs.rank()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let mut rs = RowSpace::new(self.field, 2 * n);
        for r in 0..n {
            rs.insert(aug.row(r).to_vec());
        }
        if rs.pivots().iter().take(n).cloned().collect::<Vec<_>>() != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for (i, row) in rs.dense_rows().into_iter().enumerate().take(n) {
            for c in 0..n {
                inv.set(i, c, row[n + c].clone());
            }
        }
        Some(inv)
    }
}

/// The fixed-pivot reduced echelon form of a growing row space.
///
/// Rows are stored sparsely; each pivot column is zero in every other row.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    width: usize,
    rows: BTreeMap<usize, Vec<(usize, Scalar)>>,
}

impl RowSpace {
    pub fn new(field: Field, width: usize) -> RowSpace {
        RowSpace { field, width, rows: BTreeMap::new() }
    }

    pub fn from_vectors(field: Field, width: usize, vecs: impl IntoIterator<Item = Vector>) -> RowSpace {
        let mut rs = RowSpace::new(field, width);
        for v in vecs {
            rs.insert(v);
        }
        rs
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduces `v` against the current rows in place. Returns the residual.
    pub fn reduce(&self, mut v: Vector) -> Vector {
        assert_eq!(v.len(), self.width, "row space width mismatch");
        for (&pc, row) in &self.rows {
            if v[pc].is_zero() {
                continue;
            }
            let c = -&v[pc];
            for (j, x) in row {
                v[*j].add_mul(&c, x);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv();
        let row: Vec<(usize, Scalar)> = v
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, &x * &inv))
            .collect();
        for other in self.rows.values_mut() {
            let Some(pos) = other.iter().position(|(j, _)| *j == pc) else {
                continue;
            };
            let c = -&other[pos].1;
            let mut dense: BTreeMap<usize, Scalar> = other.drain(..).collect();
            for (j, x) in &row {
                let e = dense.entry(*j).or_insert_with(|| self.field.zero());
                e.add_mul(&c, x);
            }
            *other = dense.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        self.rows.insert(pc, row);
        true
    }

    pub fn dense_rows(&self) -> Vec<Vector> {
        self.rows
            .values()
            .map(|row| {
                let mut v = zero_vector(self.field, self.width);
                for (j, x) in row {
                    v[*j] = x.clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the annihilated space `{x : r·x = 0 for every row r}`,
    /// one vector per free column with a 1 there and 0 at the other free columns.
    pub fn null_space(&self) -> Vec<Vector> {
        let free: Vec<usize> = (0..self.width).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = unit_vector(self.field, self.width, fc);
                for (&pc, row) in &self.rows {
                    if let Some((_, x)) = row.iter().find(|(j, _)| *j == fc) {
                        v[pc] = -x;
                    }
                }
                v
            })
            .collect()
    }
}

/// Solves `a·x = b`. Returns `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vector>> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!("right-hand side of length {} for {} equations", b.len(), a.rows())));
    }
    let n = a.cols();
    let mut rs = RowSpace::new(a.field(), n + 1);
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.push(b[r].clone());
        rs.insert(row);
    }
    if rs.rows.contains_key(&n) {
        return Ok(None);
    }
    let mut x = zero_vector(a.field(), n);
    for (&pc, row) in &rs.rows {
        if let Some((_, v)) = row.iter().find(|(j, _)| *j == n) {
            x[pc] = v.clone();
        }
    }
    Ok(Some(x))
}

/// Basis of `{x : a·x = 0}`.
pub fn kernel_basis(a: &Matrix) -> Vec<Vector> {
    let mut rs = RowSpace::new(a.field(), a.cols());
    for r in 0..a.rows() {
        rs.insert(a.row(r).to_vec());
    }
    rs.null_space()
}

/// Kernel of the linear conditions produced row by row, without materializing
/// the full equation matrix.
pub fn kernel_of_rows(field: Field, width: usize, rows: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    RowSpace::from_vectors(field, width, rows).null_space()
}

/// Coordinates with respect to a fixed independent family.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: Field,
    basis: Vec<Vector>,
    echelon: RowSpace,
    /// `transform · basis = dense_rows(echelon)`.
    transform: Vec<Vector>,
}

impl Coordinates {
    pub fn new(field: Field, width: usize, basis: Vec<Vector>) -> Result<Coordinates> {
        let d = basis.len();
        let mut rs = RowSpace::new(field, width + d);
        for (i, b) in basis.iter().enumerate() {
            if b.len() != width {
                return Err(Error::Shape("basis vector width mismatch".into()));
            }
            let mut row = b.clone();
            row.extend(unit_vector(field, d, i));
            rs.insert(row);
        }
        let pivots = rs.pivots();
        if pivots.len() != d || pivots.iter().any(|&p| p >= width) {
            return Err(Error::Shape("coordinate family is not linearly independent".into()));
        }
        let dense = rs.dense_rows();
        let echelon = RowSpace::from_vectors(field, width, dense.iter().map(|r| r[..width].to_vec()));
        let transform = dense.iter().map(|r| r[width..].to_vec()).collect();
        Ok(Coordinates { field, basis, echelon, transform })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Coefficients `c` with `v = Σ c_i basis_i`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.echelon.contains(v) {
            return None;
        }
        let mut c = zero_vector(self.field, self.basis.len());
        for (k, pc) in self.echelon.pivots().into_iter().enumerate() {
            if !v[pc].is_zero() {
                add_scaled(&mut c, &v[pc], &self.transform[k]);
            }
        }
        Some(c)
    }

    pub fn combine(&self, c: &[Scalar]) -> Vector {
        let width = self.echelon.width();
        let mut v = zero_vector(self.field, width);
        for (x, b) in c.iter().zip(&self.basis) {
            add_scaled(&mut v, x, b);
        }
        v
    }
}

/// A subspace of `k^n`, held in canonical echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    rows: RowSpace,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vecs: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace { rows: RowSpace::from_vectors(field, ambient, vecs) }
    }

    pub fn dim(&self) -> usize {
        self.rows.rank()
    }

    pub fn ambient(&self) -> usize {
        self.rows.width()
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.dense_rows()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.rows.contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }

    /// First basis vector of `self` not contained in `other`.
    pub fn escape_witness(&self, other: &Subspace) -> Option<Vector> {
        self.basis().into_iter().find(|v| !other.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        for v in other.basis() {
            rows.insert(v);
        }
        Subspace { rows }
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let field = self.rows.field();
        let n = self.ambient();
        let u = self.basis();
        let w = other.basis();
        // Σ a_i u_i - Σ b_j w_j = 0, one equation per ambient coordinate.
        let width = u.len() + w.len();
        let eqs = (0..n).map(|c| {
            let mut row: Vector = u.iter().map(|v| v[c].clone()).collect();
            row.extend(w.iter().map(|v| -&v[c]));
            row
        });
        let kernel = kernel_of_rows(field, width, eqs);
        let vecs = kernel.into_iter().map(|k| {
            let mut v = zero_vector(field, n);
            for (a, ui) in k.iter().zip(&u) {
                add_scaled(&mut v, a, ui);
            }
            v
        });
        Subspace::span(field, n, vecs)
    }
}

/// A linear map between labelled spaces; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub domain: FiniteDimSpace,
    pub codomain: FiniteDimSpace,
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(domain: FiniteDimSpace, codomain: FiniteDimSpace, matrix: Matrix) -> Result<LinearMap> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for a map of dimension {} -> {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(LinearMap { domain, codomain, matrix })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.apply(v)
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.codomain.dim() != self.domain.dim() {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        LinearMap::new(inner.domain.clone(), self.codomain.clone(), self.matrix.mul(&inner.matrix))
    }
}

/// Kronecker product of linear maps with `u⊗v` labels.
pub fn kronecker_product(f: &LinearMap, g: &LinearMap) -> LinearMap {
    LinearMap {
        domain: f.domain.tensor(&g.domain),
        codomain: f.codomain.tensor(&g.codomain),
        matrix: f.matrix.kronecker(&g.matrix),
    }
}

/// `V / span(relations)` with its projection and a section.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub space: FiniteDimSpace,
    pub proj: LinearMap,
    pub section: LinearMap,
    /// Indices of the ambient basis vectors chosen as quotient basis.
    pub representatives: Vec<usize>,
    relations: RowSpace,
}

impl Quotient {
    pub fn relation_basis(&self) -> Vec<Vector> {
        self.relations.dense_rows()
    }

    /// Is `v` zero in the quotient?
    pub fn vanishes(&self, v: &[Scalar]) -> bool {
        self.relations.contains(v)
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        self.proj.apply(v)
    }

    pub fn lift(&self, q: &[Scalar]) -> Vector {
        self.section.apply(q)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Induces `op: V -> V` on the quotient, checking that relations stay relations.
    pub fn transport(&self, op: &Matrix, what: &str) -> Result<Matrix> {
        self.transport_between(self, op, what)
    }

    /// Induces `op: V -> W` as a map between quotients.
    pub fn transport_between(&self, target: &Quotient, op: &Matrix, what: &str) -> Result<Matrix> {
        for r in self.relation_basis() {
            let img = op.apply(&r);
            if !target.vanishes(&img) {
                return Err(Error::check(
                    format!("well-definedness of {what} on quotient"),
                    format!("relation {} maps to {}", self.proj.domain.render(&r), target.proj.domain.render(&img)),
                ));
            }
        }
        Ok(target.proj.matrix.mul(op).mul(&self.section.matrix))
    }
}

/// Quotient of `space` by the span of `relations`. The quotient basis is the
/// set of ambient basis vectors at non-pivot columns of the relation echelon form.
pub fn quotient_space(field: Field, space: &FiniteDimSpace, relations: impl IntoIterator<Item = Vector>) -> Quotient {
    let n = space.dim();
    let rs = RowSpace::from_vectors(field, n, relations);
    let reps: Vec<usize> = (0..n).filter(|c| !rs.rows.contains_key(c)).collect();
    let pos: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let q = reps.len();
    let mut proj = Matrix::zeros(field, q, n);
    for (&c, &k) in &pos {
        proj.set(k, c, field.one());
    }
    for (&pc, row) in &rs.rows {
        for (j, x) in row {
            if let Some(&k) = pos.get(j) {
                proj.set(k, pc, -x);
            }
        }
    }
    let mut section = Matrix::zeros(field, n, q);
    for (k, &c) in reps.iter().enumerate() {
        section.set(c, k, field.one());
    }
    let qspace = FiniteDimSpace { labels: reps.iter().map(|&c| format!("[{}]", space.label(c))).collect() };
    assert!(proj.mul(&section) == Matrix::identity(field, q), "proj∘section must be the identity");
    for r in rs.dense_rows() {
        assert!(is_zero_vector(&proj.apply(&r)), "relations must project to zero");
    }
    Quotient {
        proj: LinearMap { domain: space.clone(), codomain: qspace.clone(), matrix: proj },
        section: LinearMap { domain: qspace.clone(), codomain: space.clone(), matrix: section },
        space: qspace,
        representatives: reps,
        relations: rs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn ints(f: Field, v: &[i64]) -> Vector {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    fn mat(f: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(f, cols, &rows.iter().map(|r| ints(f, r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn solve_identity_and_zero() {
        let x = solve_linear(&Matrix::identity(q(), 3), &ints(q(), &[1, 2, 3])).unwrap();
        assert_eq!(x, Some(ints(q(), &[1, 2, 3])));
        let x = solve_linear(&Matrix::zeros(q(), 2, 2), &ints(q(), &[0, 0])).unwrap();
        assert_eq!(x, Some(ints(q(), &[0, 0])));
    }

    #[test]
    fn solve_back_substitution() {
        // x + y = 3, y = 1  =>  (2, 1)
        let a = mat(q(), &[&[1, 1], &[0, 1]]);
        assert_eq!(solve_linear(&a, &ints(q(), &[3, 1])).unwrap(), Some(ints(q(), &[2, 1])));
    }

    #[test]
    fn solve_inconsistent_and_shape() {
        let a = mat(q(), &[&[1, 1], &[1, 1]]);
        assert_eq!(solve_linear(&a, &ints(q(), &[1, 2])).unwrap(), None);
        assert!(matches!(solve_linear(&a, &ints(q(), &[1])), Err(Error::Shape(_))));
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&Matrix::identity(q(), 4)).is_empty());
        assert_eq!(kernel_basis(&Matrix::zeros(q(), 1, 2)).len(), 2);
        let f2 = Field::prime(2).unwrap();
        let k = kernel_basis(&mat(f2, &[&[1, 1]]));
        // Enumerating the four vectors of F_2^2 leaves only (0,0) and (1,1).
        assert_eq!(k, vec![ints(f2, &[1, 1])]);
    }

    #[test]
    fn quotients() {
        let v3 = FiniteDimSpace::indexed("e", 3);
        assert_eq!(quotient_space(q(), &v3, vec![ints(q(), &[1, 0, 0])]).dim(), 2);
        let all = (0..3).map(|i| unit_vector(q(), 3, i));
        assert_eq!(quotient_space(q(), &v3, all).dim(), 0);
        let v4 = FiniteDimSpace::indexed("e", 4);
        let quo = quotient_space(q(), &v4, vec![ints(q(), &[1, -1, 0, 0]), ints(q(), &[0, 1, -1, 0])]);
        assert_eq!(quo.dim(), 2);
        // e1, e2, e3 are identified.
        assert_eq!(quo.project(&unit_vector(q(), 4, 0)), quo.project(&unit_vector(q(), 4, 2)));
    }

    #[test]
    fn kronecker_cases() {
        let id2 = Matrix::identity(q(), 2);
        let id3 = Matrix::identity(q(), 3);
        assert_eq!(id2.kronecker(&id3), Matrix::identity(q(), 6));
        assert!(id2.kronecker(&Matrix::zeros(q(), 2, 2)).is_zero());
        let ab = Matrix::scalar(q().from_i64(3)).kronecker(&Matrix::scalar(q().from_i64(5)));
        assert_eq!(ab, Matrix::scalar(q().from_i64(15)));
    }

    #[test]
    fn inverse_and_rank() {
        let a = mat(q(), &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(q(), 2));
        assert!(mat(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(mat(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn subspace_ops() {
        let f = q();
        let u = Subspace::span(f, 3, vec![ints(f, &[1, 0, 0]), ints(f, &[0, 1, 0])]);
        let w = Subspace::span(f, 3, vec![ints(f, &[0, 1, 0]), ints(f, &[0, 0, 1])]);
        let i = u.intersect(&w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&ints(f, &[0, 5, 0])));
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(!u.is_subspace_of(&w));
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = q();
        let basis = vec![ints(f, &[1, 1, 0]), ints(f, &[0, 1, 1])];
        let c = Coordinates::new(f, 3, basis).unwrap();
        let v = ints(f, &[2, 5, 3]);
        assert_eq!(c.coords(&v), Some(ints(f, &[2, 3])));
        assert_eq!(c.coords(&ints(f, &[1, 0, 0])), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
            (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
        }

        proptest! {
            #[test]
            fn rank_nullity((r, c, data) in small_matrix()) {
                let f = Field::Rational;
                let m = Matrix::from_flat(f, r, c, data.iter().map(|&x| f.from_i64(x)).collect());
                let k = kernel_basis(&m);
                prop_assert_eq!(m.rank() + k.len(), c);
                for v in &k {
                    prop_assert!(is_zero_vector(&m.apply(v)));
                }
            }

            #[test]
            fn solutions_satisfy_system((r, c, data) in small_matrix(), xs in prop::collection::vec(-3i64..4, 5)) {
                let f = Field::prime(7).unwrap();
                let m = Matrix::from_flat(f, r, c, data.iter().map(|&x| f.from_i64(x)).collect());
                let x0: Vector = xs[..c].iter().map(|&x| f.from_i64(x)).collect();
                let b = m.apply(&x0);
                let x = solve_linear(&m, &b).unwrap().expect("consistent by construction");
                prop_assert_eq!(m.apply(&x), b);
            }

            #[test]
            fn quotient_projection_kills_relations((r, c, data) in small_matrix()) {
                let f = Field::Rational;
                let rels: Vec<Vector> = data.chunks(c).map(|ch| ch.iter().map(|&x| f.from_i64(x)).collect()).collect();
                let space = FiniteDimSpace::indexed("v", c);
                let quo = quotient_space(f, &space, rels.clone());
                let rank = Matrix::from_rows(f, c, &rels).unwrap().rank();
                prop_assert_eq!(quo.dim(), c - rank);
                prop_assert_eq!(quo.proj.matrix.mul(&quo.section.matrix), Matrix::identity(f, quo.dim()));
                for rel in &rels {
                    prop_assert!(is_zero_vector(&quo.project(rel)));
                }
                let _ = r;
            }
        }
    }
}
