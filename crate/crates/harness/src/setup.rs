//! Turning a parsed instance into live objects: algebras, the bimodule,
//! backends and named samples.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};

use wakkit_core::algmod::{path_algebra, Algebra, Bimodule, Module};
use wakkit_core::cotorsion::CotorsionBackend;
use wakkit_core::exactlin::Mat;
use wakkit_core::trivext::{module_to_pair, PairModule, Ses};
use wakkit_core::wakfun::{PairSes, WakamatsuFunctor};
use wakkit_core::Limits;

use crate::instance::{AlgebraSpec, BackendSpec, InstanceFile, SesSpec};

pub struct Setup {
    pub name: String,
    pub p: u64,
    pub functor: WakamatsuFunctor,
    pub backend_b: CotorsionBackend,
    pub a_modules: BTreeMap<String, Arc<Module>>,
    pub b_modules: BTreeMap<String, Arc<Module>>,
    pub pairs: BTreeMap<String, Arc<PairModule>>,
    pub pairs_b: BTreeMap<String, Arc<Module>>,
    pub ses: BTreeMap<String, Ses>,
    pub pair_ses: BTreeMap<String, PairSes>,
    pub file: InstanceFile,
    pub limits: Limits,
}

fn mat(p: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Mat> {
    Mat::from_signed(p, rows, cols, entries).map_err(|e| anyhow!("matrix: {}", e))
}

fn build_algebra(p: u64, spec: &AlgebraSpec) -> Result<Algebra> {
    match spec {
        AlgebraSpec::Table { dim, table, unit } => {
            let pi = p as i64;
            let t: Vec<u64> = table.iter().map(|&e| e.rem_euclid(pi) as u64).collect();
            let u: Vec<u64> = unit.iter().map(|&e| e.rem_euclid(pi) as u64).collect();
            Algebra::new(p, *dim, t, u).map_err(|e| anyhow!("algebra: {}", e))
        }
        AlgebraSpec::Quiver { quiver } => path_algebra(p, quiver.vertices, &quiver.arrows)
            .map_err(|e| anyhow!("quiver algebra: {}", e)),
    }
}

fn build_module(p: u64, alg: &Arc<Algebra>, spec: &crate::instance::ModuleSpec) -> Result<Module> {
    if spec.action.len() != alg.dim() {
        bail!("module needs one action matrix per algebra basis vector");
    }
    let action = spec
        .action
        .iter()
        .map(|a| mat(p, spec.dim, spec.dim, a))
        .collect::<Result<Vec<_>>>()?;
    Module::new(alg.clone(), spec.dim, action).map_err(|e| anyhow!("module: {}", e))
}

fn build_backend(
    spec: &BackendSpec,
    default_t: &Arc<Module>,
    named: &BTreeMap<String, Arc<Module>>,
    keyword: &str,
) -> Result<CotorsionBackend> {
    let resolve = |name: &str| -> Result<Arc<Module>> {
        if name == keyword {
            return Ok(default_t.clone());
        }
        named
            .get(name)
            .cloned()
            .ok_or_else(|| anyhow!("backend references unknown module {:?}", name))
    };
    let t = match &spec.t {
        None => default_t.clone(),
        Some(name) => resolve(name)?,
    };
    let t_summands = spec
        .t_summands
        .iter()
        .map(|n| resolve(n))
        .collect::<Result<Vec<_>>>()?;
    let mut backend = match spec.variant.as_str() {
        "classical_tilting" => CotorsionBackend::classical_tilting(t, t_summands, spec.ext_bound),
        "finite_type" => {
            let w0 = resolve(
                spec.w0
                    .as_deref()
                    .ok_or_else(|| anyhow!("finite_type backend needs w0"))?,
            )?;
            let v0 = resolve(
                spec.v0
                    .as_deref()
                    .ok_or_else(|| anyhow!("finite_type backend needs v0"))?,
            )?;
            let w0_summands = spec
                .w0_summands
                .iter()
                .map(|n| resolve(n))
                .collect::<Result<Vec<_>>>()?;
            CotorsionBackend::finite_type(t, t_summands, w0, w0_summands, v0, spec.ext_bound)
        }
        other => bail!("unknown backend variant {:?}", other),
    };
    if let Some(r) = spec.max_preenv_rounds {
        backend.max_rounds = r;
    }
    Ok(backend)
}

/// The natural right action of `End_A(T)^op` on a left module, used when
/// the instance does not spell out `B`: the basis of `B` is the computed
/// hom basis, and the right action is evaluation.
fn derived_endo_bimodule(a: Arc<Algebra>, t_left: &Module) -> Result<Bimodule> {
    let (endo_alg, basis) = wakkit_core::algmod::endo_algebra(t_left)
        .map_err(|e| anyhow!("End(T) structure: {}", e))?;
    let b = Arc::new(endo_alg.opposite());
    Bimodule::new(a, b, t_left.dim, t_left.action.clone(), basis)
        .map_err(|e| anyhow!("derived bimodule: {}", e))
}

pub fn build(file: InstanceFile, limits: Limits) -> Result<Setup> {
    let p = file.field;
    let a = Arc::new(build_algebra(p, &file.algebra).context("left algebra")?);
    // bimodule
    let left_action = file
        .bimodule
        .left_action
        .iter()
        .map(|m| mat(p, file.bimodule.dim, file.bimodule.dim, m))
        .collect::<Result<Vec<_>>>()?;
    let t = match (&file.bimodule.right_algebra, &file.bimodule.right_action) {
        (Some(balg), Some(ract)) => {
            let b = Arc::new(build_algebra(p, balg).context("right algebra")?);
            let right = ract
                .iter()
                .map(|m| mat(p, file.bimodule.dim, file.bimodule.dim, m))
                .collect::<Result<Vec<_>>>()?;
            Bimodule::new(a.clone(), b, file.bimodule.dim, left_action, right)
                .map_err(|e| anyhow!("bimodule: {}", e))?
        }
        _ => {
            let t_left = Module::new(a.clone(), file.bimodule.dim, left_action)
                .map_err(|e| anyhow!("bimodule left module: {}", e))?;
            derived_endo_bimodule(a.clone(), &t_left)?
        }
    };
    let b_alg = t.right_alg.clone();
    if let Some(expected) = file.expect.dim_b {
        if b_alg.dim() != expected {
            bail!("expected dim B = {}, got {}", expected, b_alg.dim());
        }
    }
    // named modules
    let mut a_modules: BTreeMap<String, Arc<Module>> = BTreeMap::new();
    for (name, spec) in &file.modules {
        a_modules.insert(
            name.clone(),
            Arc::new(build_module(p, &a, spec).with_context(|| format!("module {}", name))?),
        );
    }
    let mut b_modules: BTreeMap<String, Arc<Module>> = BTreeMap::new();
    for (name, spec) in &file.modules_b {
        b_modules.insert(
            name.clone(),
            Arc::new(build_module(p, &b_alg, spec).with_context(|| format!("module {}", name))?),
        );
    }
    let t_left = Arc::new(t.as_left_module());
    let backend = build_backend(&file.backend, &t_left, &a_modules, "T")
        .context("cotorsion backend")?;
    let functor = WakamatsuFunctor::new(t, backend, limits)
        .map_err(|e| anyhow!("functor construction: {}", e))?;
    let dt_left = Arc::new(functor.dt.as_left_module());
    let backend_b = match &file.backend_b {
        Some(spec) => build_backend(spec, &dt_left, &b_modules, "DT").context("B-side backend")?,
        None => CotorsionBackend::classical_tilting(dt_left.clone(), vec![], file.backend.ext_bound),
    };
    // pairs over the trivial extensions
    let mut pairs: BTreeMap<String, Arc<PairModule>> = BTreeMap::new();
    for (name, spec) in &file.pairs {
        let module = build_module(p, &functor.te_a.total, spec)
            .with_context(|| format!("pair {}", name))?;
        let pair = module_to_pair(&functor.te_a, &module)
            .map_err(|e| anyhow!("pair {}: {}", name, e))?;
        pairs.insert(name.clone(), Arc::new(pair));
    }
    let mut pairs_b: BTreeMap<String, Arc<Module>> = BTreeMap::new();
    for (name, spec) in &file.pairs_b {
        let module = build_module(p, &functor.te_b.total, spec)
            .with_context(|| format!("T(B)-module {}", name))?;
        pairs_b.insert(name.clone(), Arc::new(module));
    }
    // sequences
    let build_ses = |spec: &SesSpec,
                     lookup: &dyn Fn(&str) -> Result<Arc<Module>>|
     -> Result<Ses> {
        let x = lookup(&spec.parts[0])?;
        let y = lookup(&spec.parts[1])?;
        let z = lookup(&spec.parts[2])?;
        let f = mat(p, y.dim, x.dim, &spec.f)?;
        let g = mat(p, z.dim, y.dim, &spec.g)?;
        Ses::new(x, y, z, f, g).map_err(|e| anyhow!("sequence: {}", e))
    };
    let mut ses: BTreeMap<String, Ses> = BTreeMap::new();
    for (name, spec) in &file.ses {
        let look = |n: &str| -> Result<Arc<Module>> {
            if n == "T" {
                return Ok(t_left.clone());
            }
            a_modules
                .get(n)
                .cloned()
                .ok_or_else(|| anyhow!("sequence references unknown module {:?}", n))
        };
        ses.insert(
            name.clone(),
            build_ses(spec, &look).with_context(|| format!("sequence {}", name))?,
        );
    }
    let mut pair_ses: BTreeMap<String, PairSes> = BTreeMap::new();
    for (name, spec) in &file.pair_ses {
        let look = |n: &str| -> Result<Arc<PairModule>> {
            pairs
                .get(n)
                .cloned()
                .ok_or_else(|| anyhow!("pair sequence references unknown pair {:?}", n))
        };
        let x1 = look(&spec.parts[0])?;
        let x2 = look(&spec.parts[1])?;
        let x3 = look(&spec.parts[2])?;
        let f = mat(p, x2.dim(), x1.dim(), &spec.f)?;
        let g = mat(p, x3.dim(), x2.dim(), &spec.g)?;
        let ps = PairSes { x1, x2, x3, f, g };
        ps.underlying(&functor.te_a)
            .map_err(|e| anyhow!("pair sequence {}: {}", name, e))?;
        pair_ses.insert(name.clone(), ps);
    }
    Ok(Setup {
        name: file.name.clone(),
        p,
        functor,
        backend_b,
        a_modules,
        b_modules,
        pairs,
        pairs_b,
        ses,
        pair_ses,
        file,
        limits,
    })
}

impl Setup {
    pub fn a_module(&self, name: &str) -> Result<Arc<Module>> {
        if name == "T" {
            return Ok(self.functor.t_left.clone());
        }
        self.a_modules
            .get(name)
            .cloned()
            .ok_or_else(|| anyhow!("unknown A-module {:?}", name))
    }

    pub fn pair(&self, name: &str) -> Result<Arc<PairModule>> {
        self.pairs
            .get(name)
            .cloned()
            .ok_or_else(|| anyhow!("unknown pair {:?}", name))
    }
}
