//! Built-in instances: single Hopf algebras and Hopf subalgebra pairs `A/B`.

use hopfind::group::FiniteGroup;
use hopfind::hopf::HopfAlgebra;
use hopfind::linalg::Matrix;
use hopfind::{Error, Field, Result};

use crate::instance::{EmbeddingData, Instance};

pub const HOPF: &[&str] = &["k", "kC2", "kC3", "kC4", "kS3", "H4", "T3", "kC2*", "kC3*"];

pub const PAIRS: &[&str] = &["kC4/kC2", "kS3/kC3", "kS3/kC2", "H4/kC2", "kC2/kC2", "kS3/kS3", "H4/H4"];

pub fn names() -> Vec<&'static str> {
    HOPF.iter().chain(PAIRS).copied().collect()
}

fn group(name: &str) -> Option<FiniteGroup> {
    match name {
        "kC2" => Some(FiniteGroup::cyclic(2)),
        "kC3" => Some(FiniteGroup::cyclic(3)),
        "kC4" => Some(FiniteGroup::cyclic(4)),
        "kS3" => Some(FiniteGroup::symmetric3()),
        _ => None,
    }
}

fn hopf(name: &str) -> Result<HopfAlgebra> {
    let q = Field::Rational;
    if let Some(g) = group(name) {
        return Ok(HopfAlgebra::group_algebra(q, &g));
    }
    match name {
        "k" => Ok(HopfAlgebra::ground(q)),
        "H4" => Ok(HopfAlgebra::sweedler_h4()),
        "T3" => {
            let f7 = Field::prime(7)?;
            HopfAlgebra::taft(f7, 3, &f7.from_i64(2))
        }
        "kC2*" => Ok(HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(2)).dual()),
        "kC3*" => Ok(HopfAlgebra::group_algebra(q, &FiniteGroup::cyclic(3)).dual()),
        _ => Err(Error::UnknownInstance(name.to_string())),
    }
}

/// Subgroup elements for group pairs, as indices into the ambient group.
fn subgroup(pair: &str) -> Option<(&'static str, Vec<usize>)> {
    match pair {
        "kC4/kC2" => Some(("kC4", vec![0, 2])),
        "kS3/kC3" => Some(("kS3", vec![0, 1, 2])),
        "kS3/kC2" => Some(("kS3", vec![0, 3])),
        _ => None,
    }
}

pub fn instance(name: &str) -> Result<Instance> {
    if HOPF.contains(&name) {
        let h = hopf(name)?;
        let mut inst = Instance::new(name, h.field());
        inst.hopf.insert(name.to_string(), h);
        return Ok(inst);
    }
    if !PAIRS.contains(&name) {
        return Err(Error::UnknownInstance(name.to_string()));
    }
    let (a_name, b_name) = name.split_once('/').expect("pair names contain '/'");
    let a = hopf(a_name)?;
    let field = a.field();
    let mut inst = Instance::new(name, field);
    let data = if a_name == b_name {
        EmbeddingData {
            sub: a_name.to_string(),
            ambient: a_name.to_string(),
            incl: Matrix::identity(field, a.dim()),
            beta: None,
            phi: None,
        }
    } else if let Some((g_name, elems)) = subgroup(name) {
        let g = group(g_name).expect("catalog group");
        let (sub, idx) = g.subgroup(&elems)?;
        let mut incl = Matrix::zeros(field, g.order(), sub.order());
        for (j, &x) in idx.iter().enumerate() {
            incl.set(x, j, field.one());
        }
        inst.hopf.insert(b_name.to_string(), HopfAlgebra::group_algebra(field, &sub));
        EmbeddingData { sub: b_name.to_string(), ambient: a_name.to_string(), incl, beta: None, phi: None }
    } else {
        // kC2 = span{1, g} inside H4, with the sign twist as β hint.
        let mut incl = Matrix::zeros(field, 4, 2);
        incl.set(0, 0, field.one());
        incl.set(1, 1, field.one());
        let mut beta = Matrix::identity(field, 2);
        beta.set(1, 1, field.from_i64(-1));
        inst.hopf.insert(b_name.to_string(), hopf(b_name)?);
        EmbeddingData { sub: b_name.to_string(), ambient: a_name.to_string(), incl, beta: Some(beta), phi: None }
    };
    inst.hopf.insert(a_name.to_string(), a);
    inst.embeddings.insert(name.to_string(), data);
    Ok(inst)
}
