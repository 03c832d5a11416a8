//! Finite-dimensional algebras over `F_p` and their module theory.
//!
//! Algebras are given by structure constants; modules by one action matrix
//! per algebra basis vector. On top of that sit Hom spaces, tensor products
//! over the algebra, vector-space duality, radicals and projective covers,
//! and Ext/Tor computed from projective resolutions.

mod algebra;
mod cover;
mod hom;
mod module;
mod radical;
mod resolution;
mod tensor;

pub use algebra::{path_algebra, Algebra};
pub use cover::{is_local_algebra, primitive_idempotents, Cover, Envelope};
pub use hom::{
    endo_algebra, hom_basis, intertwines, solve_hom, solve_hom_affine, unvec_hom, HomConstraint,
    ModuleHom,
};
pub use module::{DirectSum, Module, Submodule};
pub use radical::{composition_factors, module_radical, proper_submodule, radical_of_algebra};
pub use resolution::{
    ExtClass, ExtensionData, Resolution, ResolutionKind, UniversalExt,
};
pub use tensor::{tensor_modules, tensor_over, Bimodule, TensorSpace};

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::Mat;
use crate::{Limits, Result};

/// Homological context for one algebra: caches the radical, primitive
/// idempotents, projective covers and resolutions.
///
/// Build-once discipline: `&mut self` methods only fill caches. A context
/// that has computed everything it needs can be shared behind `&`.
pub struct AlgCtx {
    pub alg: Arc<Algebra>,
    pub limits: Limits,
    rad: Option<Arc<Mat>>,
    idempotents: Option<Arc<Vec<Vec<u64>>>>,
    covers: BTreeMap<Vec<u64>, Arc<Cover>>,
    resolutions: BTreeMap<(Vec<u64>, u8), Arc<Resolution>>,
    op_ctx: Option<Box<AlgCtx>>,
}

impl AlgCtx {
    pub fn new(alg: Arc<Algebra>, limits: Limits) -> AlgCtx {
        AlgCtx {
            alg,
            limits,
            rad: None,
            idempotents: None,
            covers: BTreeMap::new(),
            resolutions: BTreeMap::new(),
            op_ctx: None,
        }
    }

    pub fn p(&self) -> u64 {
        self.alg.p()
    }

    /// Context for the opposite algebra, built once.
    pub fn op_ctx(&mut self) -> &mut AlgCtx {
        if self.op_ctx.is_none() {
            let op = Arc::new(self.alg.opposite());
            self.op_ctx = Some(Box::new(AlgCtx::new(op, self.limits)));
        }
        self.op_ctx.as_mut().unwrap()
    }

    /// The opposite algebra (shared with [`AlgCtx::op_ctx`]).
    pub fn opposite(&mut self) -> Arc<Algebra> {
        self.op_ctx().alg.clone()
    }

    /// Basis of the Jacobson radical as columns.
    pub fn radical(&mut self) -> Result<Arc<Mat>> {
        if self.rad.is_none() {
            let r = radical::radical_of_algebra(&self.alg, &self.limits)?;
            self.rad = Some(Arc::new(r));
        }
        Ok(self.rad.as_ref().unwrap().clone())
    }

    /// A complete set of primitive orthogonal idempotents.
    pub fn primitive_idempotents(&mut self) -> Result<Arc<Vec<Vec<u64>>>> {
        if self.idempotents.is_none() {
            let rad = self.radical()?;
            let idems = cover::primitive_idempotents(&self.alg, &rad, &self.limits)?;
            self.idempotents = Some(Arc::new(idems));
        }
        Ok(self.idempotents.as_ref().unwrap().clone())
    }
}
