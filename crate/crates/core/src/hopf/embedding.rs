use super::HopfAlgebra;
use crate::algebra::{dot, verify_algebra_morphism};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace, Vector};
use crate::report::Report;

/// A Hopf subalgebra `B ≤ A` together with a certificate that `A` is a free
/// right `B`-module: `A = ⊕ e_i·B`.
#[derive(Clone, Debug)]
pub struct HopfEmbedding {
    pub sub: HopfAlgebra,
    pub ambient: HopfAlgebra,
    /// `dim A × dim B`, columns are the images of the basis of `B`.
    pub incl: Matrix,
    pub free_basis: Vec<Vector>,
    /// Optional automorphism of `B` to try when constructing a Frobenius system.
    pub beta_hint: Option<Matrix>,
}

impl HopfEmbedding {
    /// Verifies the embedding and searches for a free basis.
    pub fn new(sub: HopfAlgebra, ambient: HopfAlgebra, incl: Matrix) -> Result<HopfEmbedding> {
        if incl.rows() != ambient.dim() || incl.cols() != sub.dim() {
            return Err(Error::Shape(format!(
                "inclusion is {}x{}, expected {}x{}",
                incl.rows(),
                incl.cols(),
                ambient.dim(),
                sub.dim()
            )));
        }
        let mut emb = HopfEmbedding { sub, ambient, incl, free_basis: Vec::new(), beta_hint: None };
        emb.verify_maps().into_result()?;
        emb.free_basis = compute_free_basis(&emb.ambient, &emb.incl)?;
        Ok(emb)
    }

    /// `kH ≤ kG` for the subgroup on `h`; `kH` uses the sorted order of `h`.
    pub fn subgroup(field: crate::Field, g: &crate::group::FiniteGroup, h: &[usize]) -> Result<HopfEmbedding> {
        let (sub, idx) = g.subgroup(h)?;
        let mut incl = Matrix::zeros(field, g.order(), sub.order());
        for (j, &x) in idx.iter().enumerate() {
            incl.set(x, j, field.one());
        }
        HopfEmbedding::new(HopfAlgebra::group_algebra(field, &sub), HopfAlgebra::group_algebra(field, g), incl)
    }

    pub fn with_beta_hint(mut self, beta: Matrix) -> HopfEmbedding {
        self.beta_hint = Some(beta);
        self
    }

    /// The index `[A:B] = dim A / dim B`.
    pub fn index(&self) -> usize {
        self.free_basis.len()
    }

    pub fn image(&self, b: &[crate::Scalar]) -> Vector {
        self.incl.apply(b)
    }

    pub fn image_basis(&self) -> Vec<Vector> {
        self.incl.columns()
    }

    fn verify_maps(&self) -> Report {
        let mut r = Report::new();
        let (a, b) = (&self.ambient, &self.sub);
        if self.incl.rank() != b.dim() {
            r.fail("inclusion is injective", format!("rank {} < {}", self.incl.rank(), b.dim()));
            return r;
        }
        r.merge(verify_algebra_morphism(&b.alg, &a.alg, &self.incl));
        let ii = self.incl.kronecker(&self.incl);
        let lhs = a.delta.mul(&self.incl);
        let rhs = ii.mul(&b.delta);
        if let Some(j) = (0..b.dim()).find(|&j| lhs.column(j) != rhs.column(j)) {
            r.fail("inclusion commutes with coproduct", b.label(j).to_string());
        }
        if let Some(j) = (0..b.dim()).find(|&j| dot(&a.counit, &self.incl.column(j)) != b.counit[j]) {
            r.fail("inclusion commutes with counit", b.label(j).to_string());
        }
        let lhs = a.antipode.mul(&self.incl);
        let rhs = self.incl.mul(&b.antipode);
        if let Some(j) = (0..b.dim()).find(|&j| lhs.column(j) != rhs.column(j)) {
            r.fail("inclusion commutes with antipode", b.label(j).to_string());
        }
        r
    }

    /// Structure-map compatibility plus the freeness certificate.
    pub fn verify(&self) -> Report {
        let mut r = self.verify_maps();
        let a = &self.ambient.alg;
        let rows: Vec<Vector> = self
            .free_basis
            .iter()
            .flat_map(|e| self.image_basis().into_iter().map(move |b| a.mul(e, &b)))
            .collect();
        if rows.len() != a.dim() || RowSpace::from_vectors(a.field(), a.dim(), rows).rank() != a.dim() {
            r.fail("free basis certificate", format!("{} generators", self.free_basis.len()));
        }
        r
    }
}

/// Greedy search over `1_A` followed by the basis of `A` for elements whose
/// right `B`-translates extend the span by a full copy of `B`.
pub fn compute_free_basis(ambient: &HopfAlgebra, incl: &Matrix) -> Result<Vec<Vector>> {
    let a = &ambient.alg;
    let (n, m) = (a.dim(), incl.cols());
    if m == 0 || n % m != 0 {
        return Err(Error::Freeness(format!("dim B = {m} does not divide dim A = {n}")));
    }
    let images = incl.columns();
    let mut span = RowSpace::new(a.field(), n);
    let mut basis = Vec::new();
    let candidates = std::iter::once(a.unit().clone()).chain((0..n).map(|i| a.basis_vector(i)));
    for e in candidates {
        if span.rank() == n {
            break;
        }
        let mut trial = span.clone();
        let grew = images.iter().filter(|b| trial.insert(a.mul(&e, b))).count();
        if grew == m {
            span = trial;
            basis.push(e);
        }
    }
    if span.rank() != n {
        return Err(Error::Freeness(format!("greedy scan reached rank {} of {n}", span.rank())));
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::scalar::Field;

    fn group_embedding(g: &FiniteGroup, h: &[usize]) -> HopfEmbedding {
        let f = Field::Rational;
        let (sub, incl_idx) = g.subgroup(h).unwrap();
        let mut incl = Matrix::zeros(f, g.order(), sub.order());
        for (j, &x) in incl_idx.iter().enumerate() {
            incl.set(x, j, f.one());
        }
        HopfEmbedding::new(HopfAlgebra::group_algebra(f, &sub), HopfAlgebra::group_algebra(f, g), incl).unwrap()
    }

    #[test]
    fn free_basis_extremes() {
        let g = FiniteGroup::symmetric3();
        let whole = group_embedding(&g, &(0..6).collect::<Vec<_>>());
        assert_eq!(whole.free_basis, vec![whole.ambient.alg.unit().clone()]);
        let trivial = group_embedding(&g, &[0]);
        assert_eq!(trivial.index(), 6);
        assert!(trivial.verify().is_ok());
    }

    #[test]
    fn coset_representatives() {
        let g = FiniteGroup::symmetric3();
        let e = group_embedding(&g, &[0, 1, 2]);
        assert_eq!(e.index(), 2);
        // 1 and s represent the two cosets of C3
        assert_eq!(e.free_basis[1], e.ambient.alg.basis_vector(3));
        assert!(e.verify().is_ok());
        let e = group_embedding(&g, &[0, 3]);
        assert_eq!(e.index(), 3);
        for (i, x) in e.free_basis.iter().enumerate() {
            for y in &e.free_basis[..i] {
                let (gx, gy) = (x.iter().position(|c| c.is_one()).unwrap(), y.iter().position(|c| c.is_one()).unwrap());
                assert!(!g.left_cosets(&[0, 3]).iter().any(|c| c.contains(&gx) && c.contains(&gy)));
            }
        }
    }

    #[test]
    fn h4_over_kc2() {
        let f = Field::Rational;
        let h = HopfAlgebra::sweedler_h4();
        let c2 = HopfAlgebra::group_algebra(f, &FiniteGroup::cyclic(2));
        let mut incl = Matrix::zeros(f, 4, 2);
        incl.set(0, 0, f.one());
        incl.set(1, 1, f.one());
        let e = HopfEmbedding::new(c2, h, incl).unwrap();
        assert_eq!(e.index(), 2);
        assert!(e.verify().is_ok());
    }

    #[test]
    fn rejects_non_hopf_map() {
        let f = Field::Rational;
        let h = HopfAlgebra::sweedler_h4();
        let c2 = HopfAlgebra::group_algebra(f, &FiniteGroup::cyclic(2));
        let mut incl = Matrix::zeros(f, 4, 2);
        incl.set(0, 0, f.one());
        incl.set(2, 1, f.one());
        assert!(HopfEmbedding::new(c2, h, incl).is_err());
    }
}
