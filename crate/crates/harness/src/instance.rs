//! The instance file format: JSON describing a field, an algebra, a
//! bimodule, cotorsion backends and named sample objects.
//!
//! All matrices are row-major integer lists, reduced mod `p` (negative
//! entries allowed). Modules over the trivial extensions are given by
//! their full action-matrix lists in the basis order `A`-part then
//! dual-part.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub field: u64,
    pub algebra: AlgebraSpec,
    pub bimodule: BimoduleSpec,
    pub backend: BackendSpec,
    #[serde(default)]
    pub backend_b: Option<BackendSpec>,
    /// named modules over `A`
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    /// named modules over `B`
    #[serde(default)]
    pub modules_b: BTreeMap<String, ModuleSpec>,
    /// named modules over `T(A)` (pairs)
    #[serde(default)]
    pub pairs: BTreeMap<String, ModuleSpec>,
    /// named modules over `T(B)`
    #[serde(default)]
    pub pairs_b: BTreeMap<String, ModuleSpec>,
    /// short exact sequences of `A`-modules
    #[serde(default)]
    pub ses: BTreeMap<String, SesSpec>,
    /// short exact sequences of pairs over `T(A)`
    #[serde(default)]
    pub pair_ses: BTreeMap<String, SesSpec>,
    #[serde(default)]
    pub ses_morphisms: BTreeMap<String, SesMorphismSpec>,
    #[serde(default)]
    pub pair_ses_morphisms: BTreeMap<String, SesMorphismSpec>,
    #[serde(default)]
    pub samples: Samples,
    #[serde(default)]
    pub controls: Controls,
    #[serde(default)]
    pub expect: Expect,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Table { dim: usize, table: Vec<i64>, unit: Vec<i64> },
    Quiver { quiver: QuiverSpec },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub dim: usize,
    pub left_action: Vec<Vec<i64>>,
    #[serde(default)]
    pub right_algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub right_action: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BackendSpec {
    pub variant: String,
    pub ext_bound: usize,
    #[serde(default)]
    pub max_preenv_rounds: Option<usize>,
    /// module name, or the keywords "T" / "DT"
    #[serde(default)]
    pub t: Option<String>,
    #[serde(default)]
    pub t_summands: Vec<String>,
    #[serde(default)]
    pub w0: Option<String>,
    #[serde(default)]
    pub w0_summands: Vec<String>,
    #[serde(default)]
    pub v0: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim: usize,
    pub action: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesSpec {
    /// names of the three modules `x → y → z`
    pub parts: [String; 3],
    pub f: Vec<i64>,
    pub g: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesMorphismSpec {
    pub from: String,
    pub to: String,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Samples {
    /// A-module names expected in W
    #[serde(default)]
    pub w: Vec<String>,
    /// A-module names expected in V
    #[serde(default)]
    pub v: Vec<String>,
    /// all A-module names used in duality/oracle checks (defaults to all)
    #[serde(default)]
    pub modules: Vec<String>,
    /// indecomposable pairs over T(A)
    #[serde(default)]
    pub indecomposable_pairs: Vec<String>,
    /// the projective ones among them
    #[serde(default)]
    pub projective_pairs: Vec<String>,
    /// indecomposable non-projective modules over T(B)
    #[serde(default)]
    pub indecomposable_pairs_b: Vec<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Controls {
    /// negate the structure-map sign in the functor constructions;
    /// equivariance checks are expected to fail
    #[serde(default)]
    pub flip_sign: bool,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default)]
    pub dim_b: Option<usize>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let inst: InstanceFile =
            serde_json::from_str(text).context("instance file is not valid JSON of the schema")?;
        inst.semantic_checks()?;
        Ok(inst)
    }

    fn semantic_checks(&self) -> Result<()> {
        if !wakkit_core::exactlin::is_prime(self.field) || self.field >= (1 << 31) {
            bail!("field characteristic {} is not a supported prime", self.field);
        }
        match &self.algebra {
            AlgebraSpec::Table { dim, table, unit } => {
                if table.len() != dim * dim * dim {
                    bail!("algebra table must have dim^3 entries");
                }
                if unit.len() != *dim {
                    bail!("algebra unit must have dim entries");
                }
            }
            AlgebraSpec::Quiver { quiver } => {
                if quiver.vertices == 0 {
                    bail!("quiver needs at least one vertex");
                }
                for &(s, t) in &quiver.arrows {
                    if s >= quiver.vertices || t >= quiver.vertices {
                        bail!("arrow ({}, {}) out of range", s, t);
                    }
                }
            }
        }
        if self.bimodule.right_algebra.is_some() != self.bimodule.right_action.is_some() {
            bail!("bimodule right_algebra and right_action must be given together");
        }
        for (name, spec) in self.modules.iter().chain(&self.modules_b) {
            for (i, a) in spec.action.iter().enumerate() {
                if a.len() != spec.dim * spec.dim {
                    bail!("module {}: action matrix {} has wrong size", name, i);
                }
            }
        }
        for (name, spec) in self.pairs.iter().chain(&self.pairs_b) {
            for (i, a) in spec.action.iter().enumerate() {
                if a.len() != spec.dim * spec.dim {
                    bail!("pair {}: action matrix {} has wrong size", name, i);
                }
            }
        }
        Ok(())
    }
}
