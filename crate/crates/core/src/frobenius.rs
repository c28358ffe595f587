//! `β`-Frobenius systems `(β, φ, {r_i}, {l_i})` for Hopf subalgebra embeddings.

use crate::error::{Error, Result};
use crate::hopf::HopfEmbedding;
use crate::linalg::{kernel_of_rows, solve_linear, zero_vector, Coordinates, Matrix, Vector};
use crate::modules::verify_automorphism;
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    pub embedding: HopfEmbedding,
    pub beta: Matrix,
    pub beta_inv: Matrix,
    /// `dim B × dim A`.
    pub phi: Matrix,
    pub r: Vec<Vector>,
    pub l: Vec<Vector>,
}

/// Basis of the forms `φ: A → B` with `φ(ba) = β(b)φ(a)` and `φ(ab) = φ(a)b`.
pub fn solve_frobenius_form(emb: &HopfEmbedding, beta: &Matrix) -> Result<Vec<Matrix>> {
    let b = &emb.sub.alg;
    verify_automorphism(b, beta).into_result()?;
    Ok(kernel_of_rows(emb.ambient.field(), emb.sub.dim() * emb.ambient.dim(), form_conditions(emb, beta))
        .into_iter()
        .map(|v| Matrix::from_flat(b.field(), b.dim(), emb.ambient.dim(), v))
        .collect())
}

/// Linear conditions on `φ` flattened row-major.
fn form_conditions(emb: &HopfEmbedding, beta: &Matrix) -> Vec<Vector> {
    let (a, b) = (&emb.ambient.alg, &emb.sub.alg);
    let (na, nb) = (a.dim(), b.dim());
    let field = a.field();
    let mut rows = Vec::new();
    for s in 0..nb {
        let bs = emb.image(&b.basis_vector(s));
        let left_a = a.left_mult(&bs);
        let right_a = a.right_mult(&bs);
        let left_b = b.left_mult(&beta.column(s));
        let right_b = b.right_mult(&b.basis_vector(s));
        for x in 0..na {
            for (amat, bmat) in [(&left_a, &left_b), (&right_a, &right_b)] {
                let v = amat.column(x);
                for r in 0..nb {
                    let mut row = zero_vector(field, nb * na);
                    for (c, vc) in v.iter().enumerate() {
                        if !vc.is_zero() {
                            row[r * na + c] += vc;
                        }
                    }
                    for t in 0..nb {
                        let m = &bmat[(r, t)];
                        if !m.is_zero() {
                            row[t * na + x] -= m;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Projection `A = ⊕ e_i B → e_0 B = B` along the free basis.
fn free_basis_projection(emb: &HopfEmbedding) -> Result<Matrix> {
    let a = &emb.ambient.alg;
    let nb = emb.sub.dim();
    let gens: Vec<Vector> =
        emb.free_basis.iter().flat_map(|e| emb.image_basis().into_iter().map(move |b| a.mul(e, &b))).collect();
    let coords = Coordinates::new(a.field(), a.dim(), gens)?;
    let cols = (0..a.dim())
        .map(|i| {
            let c = coords.coords(&a.basis_vector(i)).ok_or_else(|| Error::Freeness("free basis does not span".into()))?;
            Ok(c[..nb].to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(a.field(), nb, &cols))
}

/// Candidate forms in a fixed order: the free-basis projection when admissible,
/// then the solution basis, then sums of two and of three basis forms.
fn candidates(emb: &HopfEmbedding, beta: &Matrix, sols: &[Matrix]) -> Vec<Matrix> {
    let mut out = Vec::new();
    if let Ok(p0) = free_basis_projection(emb) {
        let flat = p0.to_flat();
        let ok = form_conditions(emb, beta).iter().all(|row| crate::algebra::dot(row, &flat).is_zero());
        if ok {
            out.push(p0);
        }
    }
    out.extend(sols.iter().cloned());
    let n = sols.len();
    for i in 0..n {
        for j in i + 1..n {
            out.push(sols[i].add(&sols[j]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(sols[i].add(&sols[j]).add(&sols[k]));
            }
        }
    }
    out
}

impl FrobeniusSystem {
    /// `r_i` is the free basis; solves `φ(l_i r_j) = δ_ij 1_B` and verifies the result.
    pub fn with_form(emb: &HopfEmbedding, beta: &Matrix, phi: &Matrix) -> Result<FrobeniusSystem> {
        let a = &emb.ambient.alg;
        let b = &emb.sub.alg;
        let field = a.field();
        let r = emb.free_basis.clone();
        let n = r.len();
        let beta_inv = beta.inverse().ok_or_else(|| Error::check("β is invertible", "β"))?;
        let mut system_rows = Vec::with_capacity(n * b.dim());
        for rj in &r {
            system_rows.extend(phi.mul(&a.right_mult(rj)).row_vectors());
        }
        let system = Matrix::from_rows(field, a.dim(), &system_rows)?;
        let mut l = Vec::with_capacity(n);
        for i in 0..n {
            let mut rhs = Vec::with_capacity(n * b.dim());
            for j in 0..n {
                if i == j {
                    rhs.extend(b.unit().iter().cloned());
                } else {
                    rhs.extend(b.zero());
                }
            }
            let li = solve_linear(&system, &rhs)?
                .ok_or_else(|| Error::DegenerateForm(format!("no l_{i} with φ(l_{i} r_j) = δ_{i}j")))?;
            l.push(li);
        }
        let sys = FrobeniusSystem {
            embedding: emb.clone(),
            beta: beta.clone(),
            beta_inv,
            phi: phi.clone(),
            r,
            l,
        };
        let rep = sys.verify();
        if let Some(f) = rep.first() {
            return Err(Error::DegenerateForm(format!("{} failed at {}", f.check, f.witness)));
        }
        Ok(sys)
    }

    /// Tries `β = id`, then the embedding's hint, over the deterministic candidate sequence.
    pub fn build(emb: &HopfEmbedding) -> Result<FrobeniusSystem> {
        let id = Matrix::identity(emb.sub.field(), emb.sub.dim());
        let mut betas = vec![id];
        if let Some(h) = &emb.beta_hint {
            if !betas.contains(h) {
                betas.push(h.clone());
            }
        }
        let mut tried = Vec::new();
        for beta in betas {
            let sols = solve_frobenius_form(emb, &beta)?;
            if sols.is_empty() {
                tried.push("empty form space".to_string());
                continue;
            }
            let found = candidates(emb, &beta, &sols).iter().find_map(|phi| FrobeniusSystem::with_form(emb, &beta, phi).ok());
            match found {
                Some(sys) => return Ok(sys),
                None => tried.push(format!("{} forms degenerate", sols.len())),
            }
        }
        Err(Error::NoFrobeniusSystem(tried.join("; ")))
    }

    pub fn index(&self) -> usize {
        self.r.len()
    }

    /// `φ(a)` as an element of `B`.
    pub fn phi_b(&self, a: &[Scalar]) -> Vector {
        self.phi.apply(a)
    }

    /// `β⁻¹(φ(a))` as an element of `B`.
    pub fn phi_twisted(&self, a: &[Scalar]) -> Vector {
        self.beta_inv.apply(&self.phi.apply(a))
    }

    pub fn incl(&self, b: &[Scalar]) -> Vector {
        self.embedding.image(b)
    }

    /// Bimodule property over all basis triples and both dual-basis identities.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let emb = &self.embedding;
        let (a, b) = (&emb.ambient.alg, &emb.sub.alg);
        r.merge(verify_automorphism(b, &self.beta));
        if self.r.len() != self.l.len() {
            r.fail("dual bases have equal length", format!("{} vs {}", self.r.len(), self.l.len()));
            return r;
        }
        'outer: for s in 0..b.dim() {
            let bs = emb.image(&b.basis_vector(s));
            let beta_bs = self.beta.column(s);
            for x in 0..a.dim() {
                let phix = self.phi.column(x);
                for t in 0..b.dim() {
                    let bt = emb.image(&b.basis_vector(t));
                    let lhs = self.phi.apply(&a.mul_all(&[&bs, &a.basis_vector(x), &bt]));
                    let rhs = b.mul_all(&[&beta_bs, &phix, &b.basis_vector(t)]);
                    if lhs != rhs {
                        r.fail(
                            "φ(b a b') = β(b) φ(a) b'",
                            format!("({}, {}, {})", b.label(s), a.label(x), b.label(t)),
                        );
                        break 'outer;
                    }
                }
            }
        }
        for x in 0..a.dim() {
            let ax = a.basis_vector(x);
            let mut first = a.zero();
            let mut second = a.zero();
            for (ri, li) in self.r.iter().zip(&self.l) {
                let c = self.incl(&self.phi_b(&a.mul(li, &ax)));
                crate::linalg::add_scaled(&mut first, &a.field().one(), &a.mul(ri, &c));
                let d = self.incl(&self.phi_twisted(&a.mul(&ax, ri)));
                crate::linalg::add_scaled(&mut second, &a.field().one(), &a.mul(&d, li));
            }
            if first != ax {
                r.fail("a = Σ r_i φ(l_i a)", a.label(x).to_string());
                break;
            }
            if second != ax {
                r.fail("a = Σ β⁻¹φ(a r_i) l_i", a.label(x).to_string());
                break;
            }
        }
        if self.beta.mul(&self.beta_inv) != Matrix::identity(b.field(), b.dim()) {
            r.fail("β⁻¹ inverts β", "β");
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::hopf::HopfAlgebra;
    use crate::scalar::Field;

    fn group_embedding(g: &FiniteGroup, h: &[usize]) -> (HopfEmbedding, Vec<usize>) {
        let f = Field::Rational;
        let (sub, idx) = g.subgroup(h).unwrap();
        let mut incl = Matrix::zeros(f, g.order(), sub.order());
        for (j, &x) in idx.iter().enumerate() {
            incl.set(x, j, f.one());
        }
        let e = HopfEmbedding::new(HopfAlgebra::group_algebra(f, &sub), HopfAlgebra::group_algebra(f, g), incl).unwrap();
        (e, idx)
    }

    fn coset_projection(g: &FiniteGroup, idx: &[usize]) -> Matrix {
        let f = Field::Rational;
        let mut m = Matrix::zeros(f, idx.len(), g.order());
        for (j, &x) in idx.iter().enumerate() {
            m.set(j, x, f.one());
        }
        m
    }

    fn h4_embedding() -> HopfEmbedding {
        let f = Field::Rational;
        let mut incl = Matrix::zeros(f, 4, 2);
        incl.set(0, 0, f.one());
        incl.set(1, 1, f.one());
        HopfEmbedding::new(HopfAlgebra::group_algebra(f, &FiniteGroup::cyclic(2)), HopfAlgebra::sweedler_h4(), incl)
            .unwrap()
    }

    #[test]
    fn b_equals_a() {
        let (e, _) = group_embedding(&FiniteGroup::cyclic(3), &[0, 1, 2]);
        let s = FrobeniusSystem::build(&e).unwrap();
        assert_eq!(s.phi, Matrix::identity(Field::Rational, 3));
        assert_eq!(s.r, vec![e.ambient.alg.unit().clone()]);
        assert_eq!(s.l, s.r);
    }

    #[test]
    fn group_pairs_use_coset_projection() {
        let g = FiniteGroup::symmetric3();
        for h in [vec![0], vec![0, 3], vec![0, 1, 2]] {
            let (e, idx) = group_embedding(&g, &h);
            let forms = solve_frobenius_form(&e, &Matrix::identity(Field::Rational, h.len())).unwrap();
            let proj = coset_projection(&g, &idx);
            let span = crate::linalg::Subspace::span(Field::Rational, proj.rows() * proj.cols(), forms.iter().map(Matrix::to_flat));
            assert!(span.contains(&proj.to_flat()));
            let s = FrobeniusSystem::build(&e).unwrap();
            assert_eq!(s.beta, Matrix::identity(Field::Rational, h.len()));
            assert_eq!(s.phi, proj);
            // l_i = r_i^{-1}
            for (ri, li) in s.r.iter().zip(&s.l) {
                let gi = ri.iter().position(|c| c.is_one()).unwrap();
                assert_eq!(li, &e.ambient.alg.basis_vector(g.inv(gi)));
            }
        }
    }

    #[test]
    fn c2_in_c4() {
        let (e, _) = group_embedding(&FiniteGroup::cyclic(4), &[0, 2]);
        let s = FrobeniusSystem::build(&e).unwrap();
        assert_eq!(s.index(), 2);
        let a = &e.ambient.alg;
        assert_eq!(s.r, vec![a.basis_vector(0), a.basis_vector(1)]);
        assert_eq!(s.l, vec![a.basis_vector(0), a.basis_vector(3)]);
    }

    #[test]
    fn h4_needs_twist() {
        let f = Field::Rational;
        let e = h4_embedding();
        let err = FrobeniusSystem::build(&e).unwrap_err();
        assert!(matches!(err, Error::NoFrobeniusSystem(_)));
        let mut beta = Matrix::identity(f, 2);
        beta.set(1, 1, f.from_i64(-1));
        let s = FrobeniusSystem::build(&e.with_beta_hint(beta.clone())).unwrap();
        assert_eq!(s.beta, beta);
        assert!(s.verify().is_ok());
    }

    #[test]
    fn perturbed_phi_fails() {
        let (e, _) = group_embedding(&FiniteGroup::symmetric3(), &[0, 1, 2]);
        let mut s = FrobeniusSystem::build(&e).unwrap();
        s.phi.set(0, 3, Field::Rational.one());
        let rep = s.verify();
        assert!(!rep.is_ok());
        assert!(rep.first().unwrap().witness.contains('s'));
    }

    #[test]
    fn mismatched_pairing_fails() {
        let g = FiniteGroup::symmetric3();
        let (e, _) = group_embedding(&g, &[0, 3]);
        let a = &e.ambient.alg;
        let mut s = FrobeniusSystem::build(&e).unwrap();
        // explicit representatives 1, r, r2s with inverse pairing pass
        let reps = [0usize, 1, 5];
        s.r = reps.iter().map(|&x| a.basis_vector(x)).collect();
        s.l = reps.iter().map(|&x| a.basis_vector(g.inv(x))).collect();
        assert!(s.verify().is_ok());
        std::mem::swap(&mut s.r, &mut s.l);
        assert!(!s.verify().is_ok());
    }
}
