//! Subcommands and their execution.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopfind::algebra::Algebra;
use hopfind::duality::{
    corollary_group_skew, corollary_injective, rho_f, theorem_injective, theorem_surjective, VerifiedIsomorphism,
};
use hopfind::hopf::{HopfAlgebra, HopfEmbedding, NormalHopfQuotient};
use hopfind::interior::{
    general_induction, psi_isomorphism, surjective_induction_lemma, surjective_puig_induction, AugmentedMorphism,
    PuigInduction,
};
use hopfind::linalg::Matrix;
use hopfind::smash::{surjective_turull, turull_induction, ModuleAlgebra, SmashProduct};
use hopfind::{Error, Result};

use crate::catalog;
use crate::instance::Instance;
use crate::report::CommandReport;

#[derive(Debug, Parser)]
#[command(name = "hopfind", version, about = "Induction of Hopf module algebras and interior algebras")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check Hopf, algebra, embedding, Frobenius and module-algebra axioms.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Build an induced algebra.
    Induce {
        #[arg(long, value_enum)]
        kind: InduceKind,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coeff: Coeff,
    },
    /// Verify an isomorphism theorem on an instance.
    Theorem {
        #[arg(long, value_enum)]
        which: Which,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coeff: Coeff,
    },
    /// List or export the built-in instances.
    Catalog {
        #[arg(long, conflicts_with = "export", required_unless_present = "export")]
        list: bool,
        #[arg(long, value_name = "NAME")]
        export: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Built-in instance name, e.g. kS3/kC3.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub instance: Option<String>,
    /// Instance file (JSON, "schema": 1).
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Embedding to use when the instance has several.
    #[arg(long)]
    pub embedding: Option<String>,
}

#[derive(Debug, Args)]
pub struct Coeff {
    /// trivial (C = k), adjoint, translation (k^G), or a module algebra named in the instance.
    #[arg(long = "coeff-alg", default_value = "trivial")]
    pub coeff_alg: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InduceKind {
    Puig,
    PuigSurj,
    PuigGeneral,
    Turull,
    TurullSurj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Inj,
    Surj,
    CorollaryInj,
    CorollaryGroup,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped values").get_name().to_string()
}

impl Source {
    fn label(&self) -> String {
        match (&self.instance, &self.input) {
            (Some(name), _) => name.clone(),
            (None, Some(path)) => path.display().to_string(),
            (None, None) => String::new(),
        }
    }

    fn load(&self) -> Result<Instance> {
        match (&self.instance, &self.input) {
            (Some(name), _) => catalog::instance(name),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
                Instance::parse(&text)
            }
            (None, None) => Err(Error::Input("pass --instance or --input".into())),
        }
    }
}

/// Runs a report-producing subcommand; catalog commands are handled by the caller.
pub fn execute(command: &Command) -> CommandReport {
    let (task, result) = match command {
        Command::Verify { source } => {
            let mut r = CommandReport::new(format!("verify {}", source.label()));
            let res = source.load().and_then(|inst| verify(&inst, source.embedding.as_deref(), &mut r));
            (r, res)
        }
        Command::Induce { kind, source, coeff } => {
            let mut r = CommandReport::new(format!(
                "induce {} {} coeff={}",
                value_name(*kind),
                source.label(),
                coeff.coeff_alg
            ));
            let res = source.load().and_then(|inst| induce(*kind, &inst, source, &coeff.coeff_alg, &mut r));
            (r, res)
        }
        Command::Theorem { which, source, coeff } => {
            let mut r = CommandReport::new(format!(
                "theorem {} {} coeff={}",
                value_name(*which),
                source.label(),
                coeff.coeff_alg
            ));
            let res = source.load().and_then(|inst| theorem(*which, &inst, source, &coeff.coeff_alg, &mut r));
            (r, res)
        }
        Command::Catalog { .. } => {
            let mut r = CommandReport::new("catalog");
            r.error(&Error::Input("catalog does not produce a report".into()));
            return r;
        }
    };
    let mut report = task;
    if let Err(e) = result {
        report.error(&e);
    }
    report
}

fn verify(inst: &Instance, only: Option<&str>, r: &mut CommandReport) -> Result<()> {
    for (name, h) in &inst.hopf {
        r.dim(name.clone(), h.dim());
        r.absorb(&format!("{name}: "), "Hopf axioms", h.verify());
    }
    for (name, a) in &inst.algebras {
        r.dim(name.clone(), a.dim());
        r.absorb(&format!("{name}: "), "algebra axioms", a.verify());
    }
    let embeddings: Vec<String> = match only {
        Some(e) => vec![inst.embedding_name(Some(e))?],
        None => inst.embeddings.keys().cloned().collect(),
    };
    for name in embeddings {
        let prefix = format!("{name}: ");
        let emb = inst.embedding(&name)?;
        r.dim(format!("{name}: [A:B]"), emb.index());
        r.absorb(&prefix, "Hopf subalgebra with free basis", emb.verify());
        let sys = inst.frobenius(&name)?;
        r.absorb(&prefix, "a = Σ r_i φ(l_i a) = Σ (β⁻¹∘φ)(a r_i) l_i", sys.verify());
        let rho = rho_f(&emb)?;
        r.pass(format!("{prefix}ρ^op(F#A) ⊆ End_B(A)"));
        r.dim(format!("{name}: F#A"), rho.smash.dim());
    }
    for (name, (_, ma)) in &inst.module_algebras {
        r.dim(name.clone(), ma.dim());
        r.absorb(&format!("{name}: "), "module algebra axioms", ma.verify());
    }
    Ok(())
}

/// The embedding with both Hopf algebras checked first. `None` if an axiom failed.
fn checked_embedding(inst: &Instance, source: &Source, r: &mut CommandReport) -> Result<Option<(String, HopfEmbedding)>> {
    let name = inst.embedding_name(source.embedding.as_deref())?;
    let data = &inst.embeddings[&name];
    let mut ok = true;
    let names: &[&String] = if data.sub == data.ambient { &[&data.sub] } else { &[&data.sub, &data.ambient] };
    for h in names {
        ok &= r.absorb(&format!("{h}: "), "Hopf axioms", inst.hopf(h)?.verify());
    }
    if !ok {
        return Ok(None);
    }
    let emb = inst.embedding(&name)?;
    r.dim("A".to_string(), emb.ambient.dim());
    r.dim("B".to_string(), emb.sub.dim());
    Ok(Some((name, emb)))
}

fn coefficient(inst: &Instance, h: &HopfAlgebra, spec: &str, r: &mut CommandReport) -> Result<Option<ModuleAlgebra>> {
    let field = h.field();
    let ma = match spec {
        "trivial" => ModuleAlgebra::trivial(h, &Algebra::ground(field)),
        "adjoint" => ModuleAlgebra::adjoint(h),
        "translation" => {
            let g = h.as_group().ok_or_else(|| Error::Input("translation needs a group algebra".into()))?;
            ModuleAlgebra::translation(field, &g)
        }
        name => {
            let (_, ma) = inst
                .module_algebras
                .get(name)
                .ok_or_else(|| Error::Input(format!("unknown coefficient algebra {name:?}")))?;
            if ma.hopf != *h {
                return Err(Error::Input(format!("{name} is a module algebra over a different Hopf algebra")));
            }
            ma.clone()
        }
    };
    r.dim("C".to_string(), ma.dim());
    if !r.absorb("C: ", "module algebra axioms", ma.verify()) {
        return Ok(None);
    }
    Ok(Some(ma))
}

fn quotient(emb: &HopfEmbedding, r: &mut CommandReport) -> Result<NormalHopfQuotient> {
    let q = NormalHopfQuotient::new(emb.clone())?;
    r.pass("BK⁺ = K⁺B");
    r.absorb("B̄: ", "Hopf axioms", q.bbar.verify());
    r.dim("B̄".to_string(), q.bbar.dim());
    Ok(q)
}

fn induce(kind: InduceKind, inst: &Instance, source: &Source, coeff: &str, r: &mut CommandReport) -> Result<()> {
    let Some((name, emb)) = checked_embedding(inst, source, r)? else { return Ok(()) };
    let over_sub = matches!(kind, InduceKind::Puig | InduceKind::PuigGeneral | InduceKind::Turull);
    let h = if over_sub { &emb.sub } else { &emb.ambient };
    let Some(ma) = coefficient(inst, h, coeff, r)? else { return Ok(()) };
    match kind {
        InduceKind::Turull => {
            let t = turull_induction(&emb, &ma)?;
            r.absorb("", "F⊗C is an A-module algebra", t.induced.verify());
            r.dim("F".to_string(), t.f.dim());
            r.dim("F⊗C".to_string(), t.induced.dim());
        }
        InduceKind::TurullSurj => {
            let q = quotient(&emb, r)?;
            let t = surjective_turull(&q, &ma)?;
            r.absorb("", "C^K is a B̄-module algebra", t.induced.verify());
            r.dim("C^K".to_string(), t.dim());
        }
        InduceKind::Puig => {
            let sys = inst.frobenius(&name)?;
            let smash = SmashProduct::build(&ma)?;
            let p = PuigInduction::build(&sys, &smash.interior)?;
            r.absorb("", "A_β⊗_B C⊗_B A is an interior A-algebra", p.induced.verify());
            let psi = psi_isomorphism(&p)?;
            r.pass("Ψ: A_β⊗_B C⊗_B A ≅ Ind_{A_β}(C)");
            r.dim("C#B".to_string(), smash.dim());
            r.dim("A_β⊗_B C⊗_B A".to_string(), p.dim());
            r.dim("Ind_{A_β}(C)".to_string(), psi.linckelmann.induced.dim());
        }
        InduceKind::PuigSurj => {
            let q = quotient(&emb, r)?;
            let data = AugmentedMorphism::from_normal_quotient(&q)?;
            let smash = SmashProduct::build(&ma)?;
            surjective_induction_lemma(&data, &smash.interior)?;
            r.pass("A_φ⊗_B C ≅ k⊗_K C");
            let s = surjective_puig_induction(&data, &smash.interior)?;
            r.absorb("", "(k⊗_K C)^K is an interior B̄-algebra", s.induced.verify());
            r.dim("C#B".to_string(), smash.dim());
            r.dim("k⊗_K C".to_string(), s.space.dim());
            r.dim("(k⊗_K C)^K".to_string(), s.dim());
        }
        InduceKind::PuigGeneral => {
            let field = emb.sub.field();
            let mut unit = Matrix::zeros(field, emb.sub.dim(), 1);
            for (i, c) in emb.sub.alg.unit().iter().enumerate() {
                unit.set(i, 0, c.clone());
            }
            let data = AugmentedMorphism::new(
                emb.sub.augmented(),
                emb.ambient.augmented(),
                emb.incl.clone(),
                Algebra::ground(field),
                unit,
            )?;
            let smash = SmashProduct::build(&ma)?;
            let g = general_induction(&data, &smash.interior)?;
            r.pass("Ind_{A_φ}(C) ≅ Ind_{M₁}(IndP_φ̄(C))");
            r.dim("C#B".to_string(), smash.dim());
            r.dim("Ind_{A_φ}(C)".to_string(), g.direct.induced.dim());
        }
    }
    Ok(())
}

fn record(r: &mut CommandReport, iso: &VerifiedIsomorphism) {
    r.pass(iso.name.clone());
}

fn theorem(which: Which, inst: &Instance, source: &Source, coeff: &str, r: &mut CommandReport) -> Result<()> {
    let Some((name, emb)) = checked_embedding(inst, source, r)? else { return Ok(()) };
    let over_sub = matches!(which, Which::Inj | Which::CorollaryInj);
    let h = if over_sub { &emb.sub } else { &emb.ambient };
    let Some(ma) = coefficient(inst, h, coeff, r)? else { return Ok(()) };
    match which {
        Which::Inj | Which::CorollaryInj => {
            let sys = inst.frobenius(&name)?;
            let th = theorem_injective(&sys, &ma)?;
            for step in &th.steps {
                record(r, step);
            }
            record(r, &th.composite);
            let (lhs, rhs) = th.composite.dims();
            let expected = th.expected_dim();
            if lhs == expected && rhs == expected {
                r.pass("dim (F⊗C)#A = dim Ind_{A_β}(C#B) = n²·dim B·dim C");
            } else {
                r.fail("dim (F⊗C)#A = dim Ind_{A_β}(C#B) = n²·dim B·dim C", format!("{lhs}, {rhs}, {expected}"));
            }
            r.dim("n".to_string(), th.index());
            r.dim("(F⊗C)#A".to_string(), lhs);
            r.dim("Ind_{A_β}(C#B)".to_string(), rhs);
            if which == Which::CorollaryInj {
                let cor = corollary_injective(&sys, &th)?;
                record(r, &cor.iso);
                r.dim("A_β⊗_B C#B⊗_B A".to_string(), cor.puig.dim());
            }
        }
        Which::Surj => {
            let q = quotient(&emb, r)?;
            let th = theorem_surjective(&q, &ma)?;
            record(r, &th.iso);
            r.absorb("", "Σ x_(1)c#x_(2)b = c#xb on C^K#B", th.turull.k_actions_coincide(&th.smash));
            let (lhs, rhs) = th.iso.dims();
            r.dim("C^K#B̄".to_string(), lhs);
            r.dim("(k⊗_K C#B)^K".to_string(), rhs);
        }
        Which::CorollaryGroup => {
            let g = emb
                .ambient
                .as_group()
                .ok_or_else(|| Error::Unsupported("the ambient Hopf algebra is not a group algebra".into()))?;
            let normal = emb
                .incl
                .columns()
                .iter()
                .map(|col| {
                    let mut nz = col.iter().enumerate().filter(|(_, c)| !c.is_zero());
                    match (nz.next(), nz.next()) {
                        (Some((i, c)), None) if c.is_one() => Ok(i),
                        _ => Err(Error::Unsupported("the subalgebra is not spanned by group elements".into())),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let cor = corollary_group_skew(&g, &normal, &ma)?;
            r.pass("BK⁺ = K⁺B");
            record(r, &cor.theorem.iso);
            r.pass("C#kG = C*G");
            r.pass("C^K#kḠ = C^K*Ḡ");
            r.pass("c*ḡ ↦ 1⊗c*g agrees with Φ");
            r.dim("C*G".to_string(), cor.skew.dim());
            r.dim("C^K*Ḡ".to_string(), cor.skew_bar.dim());
        }
    }
    Ok(())
}
