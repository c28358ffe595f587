use super::{HopfAlgebra, HopfEmbedding};
use crate::algebra::{dot, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{quotient_space, tensor_vectors, Matrix, Quotient, Subspace, Vector};

/// `B̄ = B / BK⁺` for a normal Hopf subalgebra `K ≤ B`.
#[derive(Clone, Debug)]
pub struct NormalHopfQuotient {
    pub embedding: HopfEmbedding,
    pub bbar: HopfAlgebra,
    /// `dim B̄ × dim B`.
    pub proj: Matrix,
    pub ideal_basis: Vec<Vector>,
    pub quotient: Quotient,
}

impl NormalHopfQuotient {
    pub fn new(embedding: HopfEmbedding) -> Result<NormalHopfQuotient> {
        let b = &embedding.ambient;
        let field = b.field();
        let n = b.dim();
        let kplus: Vec<Vector> =
            embedding.sub.augmented().kernel().iter().map(|k| embedding.image(k)).collect();
        let left = Subspace::span(
            field,
            n,
            (0..n).flat_map(|i| kplus.iter().map(move |k| b.alg.mul(&b.alg.basis_vector(i), k))),
        );
        let right = Subspace::span(
            field,
            n,
            (0..n).flat_map(|i| kplus.iter().map(move |k| b.alg.mul(k, &b.alg.basis_vector(i)))),
        );
        if !left.same_as(&right) {
            let (w, side) = match left.escape_witness(&right) {
                Some(w) => (w, "BK⁺ ⊄ K⁺B"),
                None => (right.escape_witness(&left).expect("subspaces differ"), "K⁺B ⊄ BK⁺"),
            };
            return Err(Error::NotNormal(format!("{side}, witness {}", b.alg.render(&w))));
        }
        let ideal = left.basis();

        // Hopf ideal: Δ(I) ⊆ I⊗B + B⊗I, S(I) ⊆ I, ε(I) = 0.
        let coideal = Subspace::span(
            field,
            n * n,
            ideal.iter().flat_map(|v| {
                (0..n).flat_map(move |j| {
                    let e = b.alg.basis_vector(j);
                    [tensor_vectors(v, &e), tensor_vectors(&e, v)]
                })
            }),
        );
        for v in &ideal {
            if !coideal.contains(&b.coproduct(v)) {
                return Err(Error::check("coproduct preserves BK⁺", b.alg.render(v)));
            }
            if !left.contains(&b.s(v)) {
                return Err(Error::check("antipode preserves BK⁺", b.alg.render(v)));
            }
            if !b.eps(v).is_zero() {
                return Err(Error::check("counit vanishes on BK⁺", b.alg.render(v)));
            }
        }

        let quotient = quotient_space(field, b.alg.space(), ideal.clone());
        let d = quotient.dim();
        let p = quotient.proj.matrix.clone();
        let s = quotient.section.matrix.clone();
        let products = (0..d * d)
            .map(|ij| {
                let x = b.alg.mul(&s.column(ij / d), &s.column(ij % d));
                p.apply(&x)
            })
            .collect();
        let alg = Algebra::new(field, quotient.space.clone(), products, p.apply(b.alg.unit()))?;
        for r in &ideal {
            for j in 0..n {
                let e = b.alg.basis_vector(j);
                if !quotient.vanishes(&b.alg.mul(r, &e)) || !quotient.vanishes(&b.alg.mul(&e, r)) {
                    return Err(Error::check("BK⁺ is a two-sided ideal", b.alg.render(r)));
                }
            }
        }
        let delta = p.kronecker(&p).mul(&b.delta).mul(&s);
        let counit: Vector = s.columns().iter().map(|c| dot(&b.counit, c)).collect();
        let antipode = quotient.transport(&b.antipode, "antipode")?;
        let bbar = HopfAlgebra::new(alg, delta, counit, antipode)?;
        bbar.verify().into_result()?;
        Ok(NormalHopfQuotient { embedding, bbar, proj: p, ideal_basis: ideal, quotient })
    }

    pub fn project(&self, b: &[crate::Scalar]) -> Vector {
        self.proj.apply(b)
    }

    /// Any preimage of `x ∈ B̄`.
    pub fn lift(&self, x: &[crate::Scalar]) -> Vector {
        self.quotient.lift(x)
    }
}
