//! JSON instance files (`"schema": 1`) with sparse, exact entries.

use std::collections::BTreeMap;

use hopfind::algebra::Algebra;
use hopfind::frobenius::FrobeniusSystem;
use hopfind::hopf::{HopfAlgebra, HopfEmbedding};
use hopfind::linalg::{zero_vector, FiniteDimSpace, Matrix, Vector};
use hopfind::smash::ModuleAlgebra;
use hopfind::{Error, Field, Result, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: u64 = 1;

/// A scalar as written in a file: an integer or a string `"a"`, `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            Coeff::Int(v) => Ok(field.from_i64(*v)),
            Coeff::Text(t) => field.parse(t),
        }
    }

    fn of(s: &Scalar) -> Coeff {
        let t = s.to_text();
        match t.parse::<i64>() {
            Ok(v) => Coeff::Int(v),
            Err(_) => Coeff::Text(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rational: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
}

/// `product` entries `[i, j, k, c]`: `e_i e_j` has coefficient `c` at `e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Vec<String>,
    pub unit: Vec<(usize, Coeff)>,
    pub product: Vec<(usize, usize, usize, Coeff)>,
}

/// `coproduct` entries `[i, j, k, c]`: `Δ(e_i)` contains `c·e_j⊗e_k`;
/// `antipode` entries `[i, j, c]`: `S(e_i)` contains `c·e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopfSpec {
    pub basis: Vec<String>,
    pub unit: Vec<(usize, Coeff)>,
    pub product: Vec<(usize, usize, usize, Coeff)>,
    pub coproduct: Vec<(usize, usize, usize, Coeff)>,
    pub counit: Vec<(usize, Coeff)>,
    pub antipode: Vec<(usize, usize, Coeff)>,
}

/// `map` entries `[i, j, c]`: the `i`-th basis vector of `sub` maps to a vector
/// with coefficient `c` at the `j`-th basis vector of `ambient`. `beta` uses
/// the same layout on `sub`; `phi` entries `[i, j, c]` put `c·b_j` in `φ(a_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingSpec {
    pub sub: String,
    pub ambient: String,
    pub map: Vec<(usize, usize, Coeff)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<(usize, usize, Coeff)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<(usize, usize, Coeff)>>,
}

/// `action` entries `[h, i, j, c]`: `h·c_i` has coefficient `c` at `c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleAlgebraSpec {
    pub hopf: String,
    pub algebra: String,
    pub action: Vec<(usize, usize, usize, Coeff)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub schema: u64,
    pub name: String,
    pub field: FieldSpec,
    pub hopf_algebras: BTreeMap<String, HopfSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub embeddings: BTreeMap<String, EmbeddingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub module_algebras: BTreeMap<String, ModuleAlgebraSpec>,
}

/// Raw embedding data; verification happens in [`Instance::embedding`].
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    pub sub: String,
    pub ambient: String,
    pub incl: Matrix,
    pub beta: Option<Matrix>,
    pub phi: Option<Matrix>,
}

/// Parsed objects, shape-checked but not yet verified.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub field: Field,
    pub hopf: BTreeMap<String, HopfAlgebra>,
    pub algebras: BTreeMap<String, Algebra>,
    pub embeddings: BTreeMap<String, EmbeddingData>,
    pub module_algebras: BTreeMap<String, (String, ModuleAlgebra)>,
}

impl Instance {
    pub fn new(name: impl Into<String>, field: Field) -> Instance {
        Instance {
            name: name.into(),
            field,
            hopf: BTreeMap::new(),
            algebras: BTreeMap::new(),
            embeddings: BTreeMap::new(),
            module_algebras: BTreeMap::new(),
        }
    }

    pub fn hopf(&self, name: &str) -> Result<&HopfAlgebra> {
        self.hopf.get(name).ok_or_else(|| Error::Input(format!("no Hopf algebra named {name:?}")))
    }

    /// The named embedding, or the only one when `name` is `None`.
    pub fn embedding_name(&self, name: Option<&str>) -> Result<String> {
        match name {
            Some(n) if self.embeddings.contains_key(n) => Ok(n.to_string()),
            Some(n) => Err(Error::Input(format!("no embedding named {n:?}"))),
            None if self.embeddings.len() == 1 => Ok(self.embeddings.keys().next().expect("one").clone()),
            None => Err(Error::Input(format!("{} embeddings; pass --embedding", self.embeddings.len()))),
        }
    }

    /// Verifies the named embedding and attaches its `β` hint.
    pub fn embedding(&self, name: &str) -> Result<HopfEmbedding> {
        let d = self.embeddings.get(name).ok_or_else(|| Error::Input(format!("no embedding named {name:?}")))?;
        let e = HopfEmbedding::new(self.hopf(&d.sub)?.clone(), self.hopf(&d.ambient)?.clone(), d.incl.clone())?;
        Ok(match &d.beta {
            Some(b) => e.with_beta_hint(b.clone()),
            None => e,
        })
    }

    /// The Frobenius system of an embedding: the file's `φ` if given, else a search.
    pub fn frobenius(&self, name: &str) -> Result<FrobeniusSystem> {
        let emb = self.embedding(name)?;
        let d = &self.embeddings[name];
        match &d.phi {
            Some(phi) => {
                let beta = d.beta.clone().unwrap_or_else(|| Matrix::identity(self.field, emb.sub.dim()));
                FrobeniusSystem::with_form(&emb, &beta, phi)
            }
            None => FrobeniusSystem::build(&emb),
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        let field = match self.field {
            Field::Rational => FieldSpec { rational: Some(true), prime: None },
            Field::Prime(p) => FieldSpec { rational: None, prime: Some(p) },
        };
        let hopf_algebras = self.hopf.iter().map(|(k, h)| (k.clone(), hopf_spec(h))).collect();
        let algebras = self.algebras.iter().map(|(k, a)| (k.clone(), algebra_spec(a))).collect();
        let embeddings = self
            .embeddings
            .iter()
            .map(|(k, d)| {
                let spec = EmbeddingSpec {
                    sub: d.sub.clone(),
                    ambient: d.ambient.clone(),
                    map: sparse_columns(&d.incl),
                    beta: d.beta.as_ref().map(sparse_columns),
                    phi: d.phi.as_ref().map(sparse_columns),
                };
                (k.clone(), spec)
            })
            .collect();
        let module_algebras = self
            .module_algebras
            .iter()
            .map(|(k, (alg_name, ma))| {
                let hopf_name = self
                    .hopf
                    .iter()
                    .find(|(_, h)| **h == ma.hopf)
                    .map(|(n, _)| n.clone())
                    .unwrap_or_default();
                let mut action = Vec::new();
                for (hi, op) in ma.action.iter().enumerate() {
                    for (i, j, c) in sparse_columns(op) {
                        action.push((hi, i, j, c));
                    }
                }
                (k.clone(), ModuleAlgebraSpec { hopf: hopf_name, algebra: alg_name.clone(), action })
            })
            .collect();
        InstanceFile {
            schema: SCHEMA,
            name: self.name.clone(),
            field,
            hopf_algebras,
            algebras,
            embeddings,
            module_algebras,
        }
    }

    pub fn from_file(file: &InstanceFile) -> Result<Instance> {
        if file.schema != SCHEMA {
            return Err(Error::Input(format!("unsupported schema {}, expected {SCHEMA}", file.schema)));
        }
        let field = match (&file.field.rational, &file.field.prime) {
            (Some(true), None) => Field::Rational,
            (None, Some(p)) => Field::prime(*p)?,
            _ => return Err(Error::Input("field must be {\"rational\": true} or {\"prime\": p}".into())),
        };
        let mut inst = Instance::new(file.name.clone(), field);
        for (name, h) in &file.hopf_algebras {
            let ctx = |e: Error| with_context(e, &format!("hopf_algebras.{name}"));
            let alg = build_algebra(field, &h.basis, &h.unit, &h.product).map_err(ctx)?;
            let n = alg.dim();
            let mut delta = Matrix::zeros(field, n * n, n);
            for (i, j, k, c) in &h.coproduct {
                check_index(&[(*i, n), (*j, n), (*k, n)]).map_err(ctx)?;
                delta.add_at(j * n + k, *i, &c.parse(field).map_err(ctx)?);
            }
            let mut counit = zero_vector(field, n);
            for (i, c) in &h.counit {
                check_index(&[(*i, n)]).map_err(ctx)?;
                counit[*i] += &c.parse(field).map_err(ctx)?;
            }
            let antipode = sparse_matrix(field, n, n, &h.antipode).map_err(ctx)?;
            inst.hopf.insert(name.clone(), HopfAlgebra::new(alg, delta, counit, antipode).map_err(ctx)?);
        }
        for (name, a) in &file.algebras {
            let alg = build_algebra(field, &a.basis, &a.unit, &a.product)
                .map_err(|e| with_context(e, &format!("algebras.{name}")))?;
            inst.algebras.insert(name.clone(), alg);
        }
        for (name, e) in &file.embeddings {
            let ctx = |err: Error| with_context(err, &format!("embeddings.{name}"));
            let sub = inst.hopf(&e.sub).map_err(ctx)?.dim();
            let amb = inst.hopf(&e.ambient).map_err(ctx)?.dim();
            let incl = sparse_matrix(field, amb, sub, &e.map).map_err(ctx)?;
            let beta = e.beta.as_ref().map(|b| sparse_matrix(field, sub, sub, b)).transpose().map_err(ctx)?;
            let phi = e.phi.as_ref().map(|p| sparse_matrix(field, sub, amb, p)).transpose().map_err(ctx)?;
            inst.embeddings.insert(
                name.clone(),
                EmbeddingData { sub: e.sub.clone(), ambient: e.ambient.clone(), incl, beta, phi },
            );
        }
        for (name, m) in &file.module_algebras {
            let ctx = |err: Error| with_context(err, &format!("module_algebras.{name}"));
            let h = inst.hopf(&m.hopf).map_err(ctx)?.clone();
            let c = inst
                .algebras
                .get(&m.algebra)
                .cloned()
                .ok_or_else(|| ctx(Error::Input(format!("no algebra named {:?}", m.algebra))))?;
            let d = c.dim();
            let mut action = vec![Matrix::zeros(field, d, d); h.dim()];
            for (hi, i, j, coef) in &m.action {
                check_index(&[(*hi, h.dim()), (*i, d), (*j, d)]).map_err(ctx)?;
                action[*hi].add_at(*j, *i, &coef.parse(field).map_err(ctx)?);
            }
            inst.module_algebras
                .insert(name.clone(), (m.algebra.clone(), ModuleAlgebra { hopf: h, algebra: c, action }));
        }
        Ok(inst)
    }

    pub fn parse(text: &str) -> Result<Instance> {
        Instance::from_file(&parse_file(text)?)
    }

    pub fn render(&self) -> String {
        render_file(&self.to_file())
    }
}

pub fn parse_file(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Pretty JSON with scalar-only arrays kept on one line, newline-terminated.
pub fn render_file(file: &InstanceFile) -> String {
    let value = serde_json::to_value(file).expect("instance files serialize");
    let mut out = String::new();
    write_value(&value, 0, &mut out);
    out.push('\n');
    out
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(val, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (k, val) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(val, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn with_context(e: Error, ctx: &str) -> Error {
    match e {
        Error::Shape(m) => Error::Shape(format!("{ctx}: {m}")),
        Error::Input(m) => Error::Input(format!("{ctx}: {m}")),
        other => other,
    }
}

fn check_index(pairs: &[(usize, usize)]) -> Result<()> {
    match pairs.iter().find(|(i, n)| i >= n) {
        Some((i, n)) => Err(Error::Shape(format!("index {i} out of range 0..{n}"))),
        None => Ok(()),
    }
}

fn build_algebra(
    field: Field,
    basis: &[String],
    unit: &[(usize, Coeff)],
    product: &[(usize, usize, usize, Coeff)],
) -> Result<Algebra> {
    let n = basis.len();
    let mut u = zero_vector(field, n);
    for (i, c) in unit {
        check_index(&[(*i, n)])?;
        u[*i] += &c.parse(field)?;
    }
    let mut products: Vec<Vector> = vec![zero_vector(field, n); n * n];
    for (i, j, k, c) in product {
        check_index(&[(*i, n), (*j, n), (*k, n)])?;
        products[i * n + j][*k] += &c.parse(field)?;
    }
    Algebra::new(field, FiniteDimSpace::new(basis.to_vec())?, products, u)
}

/// Entries `[i, j, c]` put `c` in row `j` of column `i`.
fn sparse_matrix(field: Field, rows: usize, cols: usize, entries: &[(usize, usize, Coeff)]) -> Result<Matrix> {
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, j, c) in entries {
        check_index(&[(*i, cols), (*j, rows)])?;
        m.add_at(*j, *i, &c.parse(field)?);
    }
    Ok(m)
}

fn sparse_columns(m: &Matrix) -> Vec<(usize, usize, Coeff)> {
    let mut out = Vec::new();
    for i in 0..m.cols() {
        for j in 0..m.rows() {
            let v = &m[(j, i)];
            if !v.is_zero() {
                out.push((i, j, Coeff::of(v)));
            }
        }
    }
    out
}

fn algebra_spec(a: &Algebra) -> AlgebraSpec {
    let n = a.dim();
    let unit = a.unit().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, Coeff::of(c))).collect();
    let mut product = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in a.basis_product(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                product.push((i, j, k, Coeff::of(c)));
            }
        }
    }
    AlgebraSpec { basis: a.space().labels().to_vec(), unit, product }
}

fn hopf_spec(h: &HopfAlgebra) -> HopfSpec {
    let n = h.dim();
    let AlgebraSpec { basis, unit, product } = algebra_spec(&h.alg);
    let mut coproduct = Vec::new();
    for i in 0..n {
        for (c, p, q) in h.sweedler(i) {
            coproduct.push((i, p, q, Coeff::of(&c)));
        }
    }
    let counit = h.counit.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, Coeff::of(c))).collect();
    HopfSpec { basis, unit, product, coproduct, counit, antipode: sparse_columns(&h.antipode) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const TINY: &str = r#"{
  "schema": 1,
  "name": "kC2 by hand",
  "field": {"rational": true},
  "hopf_algebras": {
    "kC2": {
      "basis": ["1", "g"],
      "unit": [[0, 1]],
      "product": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1]],
      "coproduct": [[0, 0, 0, 1], [1, 1, 1, 1]],
      "counit": [[0, 1], [1, 1]],
      "antipode": [[0, 0, 1], [1, 1, "1"]]
    }
  }
}"#;

    #[test]
    fn hand_written_file_matches_catalog() {
        let inst = Instance::parse(TINY).unwrap();
        let h = inst.hopf("kC2").unwrap();
        assert!(h.verify().is_ok());
        assert_eq!(h, catalog::instance("kC2").unwrap().hopf("kC2").unwrap());
    }

    #[test]
    fn catalog_exports_round_trip() {
        for name in catalog::names() {
            let text = catalog::instance(name).unwrap().render();
            let again = Instance::parse(&text).unwrap().render();
            assert_eq!(text, again, "{name}");
        }
    }

    #[test]
    fn fractions_and_prime_fields() {
        let text = TINY.replace("[1, 1, \"1\"]", "[1, 1, \"3/3\"]");
        assert!(Instance::parse(&text).unwrap().hopf("kC2").unwrap().verify().is_ok());
        let f5 = TINY.replace("{\"rational\": true}", "{\"prime\": 5}").replace("\"1\"]", "6]");
        let inst = Instance::parse(&f5).unwrap();
        assert_eq!(inst.field, Field::Prime(5));
        assert!(inst.hopf("kC2").unwrap().verify().is_ok());
    }

    #[test]
    fn errors_carry_position_or_context() {
        let e = Instance::parse("{\n  \"schema\": 1,\n  oops").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        let e = Instance::parse(&TINY.replace("\"schema\": 1", "\"schema\": 2")).unwrap_err();
        assert!(e.is_input_error());
        let e = Instance::parse(&TINY.replace("[1, 1, 0, 1]]", "[1, 1, 2, 1]]")).unwrap_err();
        assert!(e.to_string().contains("hopf_algebras.kC2"), "{e}");
        let e = Instance::parse(&TINY.replace("\"basis\"", "\"basis\": [], \"extra\"")).unwrap_err();
        assert!(e.is_input_error());
    }

    #[test]
    fn module_algebras_and_embeddings_round_trip() {
        let mut inst = catalog::instance("kS3/kC3").unwrap();
        let h = inst.hopf("kC3").unwrap().clone();
        let ma = ModuleAlgebra::adjoint(&h);
        inst.algebras.insert("C".into(), ma.algebra.clone());
        inst.module_algebras.insert("adj".into(), ("C".into(), ma.clone()));
        let text = inst.render();
        let back = Instance::parse(&text).unwrap();
        assert_eq!(back.render(), text);
        let (_, ma2) = &back.module_algebras["adj"];
        assert_eq!(ma2.action, ma.action);
        assert!(ma2.verify().is_ok());
    }
}
