//! Modules and bimodules given by action matrices, tensor products over a
//! subalgebra, `B`-valued duals and invariants.
//!
//! Left actions satisfy `L_{ab} = L_a L_b`; right actions `m·b = R_b m`
//! satisfy `R_{ab} = R_b R_a`.

use crate::algebra::{is_bijective, verify_algebra_morphism, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{
    kernel_of_rows, quotient_space, zero_vector, Coordinates, FiniteDimSpace, Matrix, Quotient, Vector,
};
use crate::report::Report;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `Σ c_i ops_i`, the operator of an arbitrary algebra element.
pub fn combine_ops(field: Field, dim: usize, ops: &[Matrix], c: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(field, dim, dim);
    for (x, op) in c.iter().zip(ops) {
        if !x.is_zero() {
            m.add_scaled(x, op);
        }
    }
    m
}

fn check_ops(algebra: &Algebra, space: &FiniteDimSpace, ops: &[Matrix]) -> Result<()> {
    let d = space.dim();
    if ops.len() != algebra.dim() || ops.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::Shape(format!("need {} operators of size {d}", algebra.dim())));
    }
    Ok(())
}

fn verify_action(algebra: &Algebra, ops: &[Matrix], side: Side, what: &str) -> Report {
    let mut r = Report::new();
    let field = algebra.field();
    let d = ops.first().map(Matrix::rows).unwrap_or(0);
    if combine_ops(field, d, ops, algebra.unit()) != Matrix::identity(field, d) {
        r.fail(format!("{what}: unit acts as identity"), "1");
    }
    let n = algebra.dim();
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = combine_ops(field, d, ops, &algebra.basis_product(i, j));
            let rhs = match side {
                Side::Left => ops[i].mul(&ops[j]),
                Side::Right => ops[j].mul(&ops[i]),
            };
            if lhs != rhs {
                r.fail(format!("{what}: action respects products"), format!("({}, {})", algebra.label(i), algebra.label(j)));
                break 'outer;
            }
        }
    }
    r
}

/// Checks `β` is a bijective algebra endomorphism.
pub fn verify_automorphism(algebra: &Algebra, beta: &Matrix) -> Report {
    let mut r = verify_algebra_morphism(algebra, algebra, beta);
    if !is_bijective(beta) {
        r.fail("automorphism is bijective", format!("rank {}", beta.rank()));
    }
    r
}

#[derive(Clone, Debug)]
pub struct Module {
    pub side: Side,
    pub algebra: Algebra,
    pub space: FiniteDimSpace,
    pub ops: Vec<Matrix>,
}

pub type LeftModule = Module;
pub type RightModule = Module;

impl Module {
    pub fn new(side: Side, algebra: Algebra, space: FiniteDimSpace, ops: Vec<Matrix>) -> Result<Module> {
        check_ops(&algebra, &space, &ops)?;
        Ok(Module { side, algebra, space, ops })
    }

    pub fn left(algebra: Algebra, space: FiniteDimSpace, ops: Vec<Matrix>) -> Result<Module> {
        Module::new(Side::Left, algebra, space, ops)
    }

    pub fn right(algebra: Algebra, space: FiniteDimSpace, ops: Vec<Matrix>) -> Result<Module> {
        Module::new(Side::Right, algebra, space, ops)
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(algebra: &Algebra, side: Side) -> Module {
        let ops = (0..algebra.dim())
            .map(|i| {
                let e = algebra.basis_vector(i);
                match side {
                    Side::Left => algebra.left_mult(&e),
                    Side::Right => algebra.right_mult(&e),
                }
            })
            .collect();
        Module { side, algebra: algebra.clone(), space: algebra.space().clone(), ops }
    }

    /// The one-dimensional module on which `x` acts by `aug(x)`.
    pub fn trivial(algebra: &Algebra, aug: &[Scalar], side: Side) -> Module {
        let ops = aug.iter().map(|a| Matrix::scalar(a.clone())).collect();
        Module {
            side,
            algebra: algebra.clone(),
            space: FiniteDimSpace::new(vec!["1".into()]).expect("label"),
            ops,
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn op(&self, x: &[Scalar]) -> Matrix {
        combine_ops(self.field(), self.dim(), &self.ops, x)
    }

    pub fn verify(&self) -> Report {
        verify_action(&self.algebra, &self.ops, self.side, "module")
    }

    /// Restriction along `map: sub → algebra` (columns are images of the basis of `sub`).
    pub fn restrict(&self, sub: &Algebra, map: &Matrix) -> Module {
        let ops = map.columns().iter().map(|c| self.op(c)).collect();
        Module { side: self.side, algebra: sub.clone(), space: self.space.clone(), ops }
    }

    /// `b·m = β(b)m` (left) or `m·b = mβ(b)` (right).
    pub fn twist(&self, beta: &Matrix) -> Result<Module> {
        verify_automorphism(&self.algebra, beta).into_result()?;
        let t = Module { ops: beta.columns().iter().map(|c| self.op(c)).collect(), ..self.clone() };
        t.verify().into_result()?;
        Ok(t)
    }

    /// `{m : x·m = α(x)m for every basis x}`.
    pub fn invariants(&self, alpha: &[Scalar]) -> Vec<Vector> {
        invariants(self.field(), self.dim(), &self.ops, alpha)
    }
}

/// Kernel of the stacked operators `op_i − α_i·I`.
pub fn invariants(field: Field, dim: usize, ops: &[Matrix], alpha: &[Scalar]) -> Vec<Vector> {
    let id = Matrix::identity(field, dim);
    let rows = ops.iter().zip(alpha).flat_map(|(op, a)| op.sub(&id.scale(a)).row_vectors());
    kernel_of_rows(field, dim, rows)
}

/// An `(A, B)`-bimodule.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: Module,
    pub right: Module,
}

impl Bimodule {
    pub fn new(left: Module, right: Module) -> Result<Bimodule> {
        if left.side != Side::Left || right.side != Side::Right || left.space != right.space {
            return Err(Error::Shape("bimodule needs a left and a right action on one space".into()));
        }
        Ok(Bimodule { left, right })
    }

    /// `A` as an `(A, B)`-bimodule for `B → A` given by `incl`.
    pub fn regular(a: &Algebra, b: &Algebra, incl: &Matrix) -> Bimodule {
        Bimodule {
            left: Module::regular(a, Side::Left),
            right: Module::regular(a, Side::Right).restrict(b, incl),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.dim()
    }

    pub fn space(&self) -> &FiniteDimSpace {
        &self.left.space
    }

    pub fn verify(&self) -> Report {
        let mut r = self.left.verify();
        r.merge(self.right.verify());
        if let Some(w) = first_noncommuting(&self.left, &self.right) {
            r.fail("left and right actions commute", w);
        }
        r
    }
}

fn first_noncommuting(left: &Module, right: &Module) -> Option<String> {
    for (i, l) in left.ops.iter().enumerate() {
        for (j, r) in right.ops.iter().enumerate() {
            if l.mul(r) != r.mul(l) {
                return Some(format!("({}, {})", left.algebra.label(i), right.algebra.label(j)));
            }
        }
    }
    None
}

/// `M ⊗_B N`, realised as a quotient of `M ⊗ N`.
#[derive(Clone, Debug)]
pub struct TensorOverB {
    pub quotient: Quotient,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl TensorOverB {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn space(&self) -> &FiniteDimSpace {
        &self.quotient.space
    }

    /// Class of `m ⊗ n`.
    pub fn class(&self, m: &[Scalar], n: &[Scalar]) -> Vector {
        self.quotient.project(&crate::linalg::tensor_vectors(m, n))
    }

    /// Induces `op ⊗ id` for an operator on the left factor.
    pub fn transport_left(&self, op: &Matrix, what: &str) -> Result<Matrix> {
        let id = Matrix::identity(op.field(), self.right_dim);
        self.quotient.transport(&op.kronecker(&id), what)
    }

    /// Induces `id ⊗ op` for an operator on the right factor.
    pub fn transport_right(&self, op: &Matrix, what: &str) -> Result<Matrix> {
        let id = Matrix::identity(op.field(), self.left_dim);
        self.quotient.transport(&id.kronecker(op), what)
    }

    /// Transports a whole family of outer operators on the left factor.
    pub fn transport_left_all(&self, ops: &[Matrix], what: &str) -> Result<Vec<Matrix>> {
        ops.iter().map(|op| self.transport_left(op, what)).collect()
    }

    pub fn transport_right_all(&self, ops: &[Matrix], what: &str) -> Result<Vec<Matrix>> {
        ops.iter().map(|op| self.transport_right(op, what)).collect()
    }
}

/// `M ⊗_B N` for a right `B`-module `M` and a left `B`-module `N`.
pub fn tensor_over(m: &Module, n: &Module) -> Result<TensorOverB> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::Shape("tensor over B needs a right module and a left module".into()));
    }
    if m.algebra != n.algebra {
        return Err(Error::Shape("tensor factors are modules over different algebras".into()));
    }
    let field = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let mut relations = Vec::new();
    for (rb, lb) in m.ops.iter().zip(&n.ops) {
        for i in 0..dm {
            for j in 0..dn {
                let mut v = zero_vector(field, dm * dn);
                for (k, c) in rb.column(i).iter().enumerate() {
                    if !c.is_zero() {
                        v[k * dn + j] += c;
                    }
                }
                for (k, c) in lb.column(j).iter().enumerate() {
                    if !c.is_zero() {
                        v[i * dn + k] -= c;
                    }
                }
                relations.push(v);
            }
        }
    }
    let quotient = quotient_space(field, &m.space.tensor(&n.space), relations);
    Ok(TensorOverB { quotient, left_dim: dm, right_dim: dn })
}

/// Checks that transported left and right operators still commute.
pub fn assert_commuting(left: &[Matrix], right: &[Matrix], what: &str) -> Result<()> {
    for (i, l) in left.iter().enumerate() {
        for (j, r) in right.iter().enumerate() {
            if l.mul(r) != r.mul(l) {
                return Err(Error::check(format!("{what}: actions commute"), format!("({i}, {j})")));
            }
        }
    }
    Ok(())
}

/// The canonical map `B ⊗_B N → N`, `b ⊗ n ↦ bn`, checked to be bijective.
pub fn regular_tensor_iso(n: &Module) -> Result<(TensorOverB, Matrix)> {
    let b = Module::regular(&n.algebra, Side::Right);
    let t = tensor_over(&b, n)?;
    let field = n.field();
    let mut full = Matrix::zeros(field, n.dim(), n.algebra.dim() * n.dim());
    for i in 0..n.algebra.dim() {
        for j in 0..n.dim() {
            for (k, c) in n.ops[i].column(j).iter().enumerate() {
                if !c.is_zero() {
                    full.set(k, i * n.dim() + j, c.clone());
                }
            }
        }
    }
    for r in t.quotient.relation_basis() {
        if !crate::linalg::is_zero_vector(&full.apply(&r)) {
            return Err(Error::check("b⊗n ↦ bn is balanced", t.quotient.proj.domain.render(&r)));
        }
    }
    let iso = full.mul(&t.quotient.section.matrix);
    if !is_bijective(&iso) {
        return Err(Error::check("B ⊗_B N ≅ N", format!("rank {}", iso.rank())));
    }
    Ok((t, iso))
}

/// `A* = Hom_B(A, B)`, the left `B`-linear maps, with `(aθ)(x) = θ(xa)` and
/// `(θ·b)(a) = θ(a)b`.
#[derive(Clone, Debug)]
pub struct HomOverB {
    /// Each `θ` as a `dim B × dim A` matrix.
    pub basis: Vec<Matrix>,
    pub coords: Coordinates,
    pub bimodule: Bimodule,
}

impl HomOverB {
    pub fn build(a: &Algebra, b: &Algebra, incl: &Matrix) -> Result<HomOverB> {
        let field = a.field();
        let (na, nb) = (a.dim(), b.dim());
        let width = nb * na;
        // θ(incl(b_s) e_x) − b_s θ(e_x) = 0, θ flattened row-major.
        let mut rows = Vec::new();
        for s in 0..nb {
            let bs_a = a.left_mult(&incl.column(s));
            let bs_b = b.left_mult(&b.basis_vector(s));
            for x in 0..na {
                let v = bs_a.column(x);
                for r in 0..nb {
                    let mut row = zero_vector(field, width);
                    for (c, vc) in v.iter().enumerate() {
                        if !vc.is_zero() {
                            row[r * na + c] += vc;
                        }
                    }
                    for t in 0..nb {
                        let m = &bs_b[(r, t)];
                        if !m.is_zero() {
                            row[t * na + x] -= m;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let flat = kernel_of_rows(field, width, rows);
        let coords = Coordinates::new(field, width, flat)?;
        let basis: Vec<Matrix> = coords.basis().iter().map(|v| Matrix::from_flat(field, nb, na, v.clone())).collect();
        let d = basis.len();
        let express = |m: Matrix, what: &str| -> Result<Vector> {
            coords.coords(&m.to_flat()).ok_or_else(|| Error::check(format!("A* is closed under {what}"), "θ"))
        };
        let mut left_ops = Vec::with_capacity(na);
        for i in 0..na {
            let ra = a.right_mult(&a.basis_vector(i));
            let cols = basis.iter().map(|t| express(t.mul(&ra), "the A-action")).collect::<Result<Vec<_>>>()?;
            left_ops.push(Matrix::from_columns(field, d, &cols));
        }
        let mut right_ops = Vec::with_capacity(nb);
        for s in 0..nb {
            let rb = b.right_mult(&b.basis_vector(s));
            let cols = basis.iter().map(|t| express(rb.mul(t), "the B-action")).collect::<Result<Vec<_>>>()?;
            right_ops.push(Matrix::from_columns(field, d, &cols));
        }
        let space = FiniteDimSpace::indexed("θ", d);
        let bimodule = Bimodule::new(
            Module::left(a.clone(), space.clone(), left_ops)?,
            Module::right(b.clone(), space, right_ops)?,
        )?;
        bimodule.verify().into_result()?;
        Ok(HomOverB { basis, coords, bimodule })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a `dim B × dim A` matrix, if it is left `B`-linear.
    pub fn coords_of(&self, theta: &Matrix) -> Option<Vector> {
        self.coords.coords(&theta.to_flat())
    }

    pub fn element(&self, c: &[Scalar]) -> Matrix {
        let m = &self.basis[0];
        Matrix::from_flat(m.field(), m.rows(), m.cols(), self.coords.combine(c))
    }
}
