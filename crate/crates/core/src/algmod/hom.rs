//! Hom spaces and constrained homomorphism solving.
//!
//! `hom_basis` computes a basis of `Hom_A(M, N)` as the kernel of the
//! intertwining system. `solve_hom` solves for a homomorphism subject to
//! additional linear constraints (`P·F = Q`, `F·R = S`); nearly every
//! lifting step in the crate reduces to it.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::{AffineSolutions, Mat};
use crate::{Error, Result};

use super::Module;

/// A homomorphism of left modules; `mat` has shape `tgt.dim × src.dim`.
#[derive(Clone)]
pub struct ModuleHom {
    pub src: Arc<Module>,
    pub tgt: Arc<Module>,
    pub mat: Mat,
}

impl core::fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "ModuleHom({} -> {})", self.src.dim, self.tgt.dim)
    }
}

impl ModuleHom {
    pub fn new(src: Arc<Module>, tgt: Arc<Module>, mat: Mat) -> Result<ModuleHom> {
        let h = ModuleHom { src, tgt, mat };
        h.validate()?;
        Ok(h)
    }

    pub fn identity(m: Arc<Module>) -> ModuleHom {
        let mat = Mat::identity(m.p(), m.dim);
        ModuleHom { src: m.clone(), tgt: m, mat }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mat.rows != self.tgt.dim || self.mat.cols != self.src.dim {
            return Err(Error::DimMismatch("hom matrix shape"));
        }
        if self.src.alg.as_ref() != self.tgt.alg.as_ref() {
            return Err(Error::FieldMismatch);
        }
        if !intertwines(&self.src, &self.tgt, &self.mat) {
            return Err(Error::InvalidModule("matrix does not intertwine the actions"));
        }
        Ok(())
    }

    pub fn compose(&self, inner: &ModuleHom) -> Result<ModuleHom> {
        if inner.tgt.as_ref() != self.src.as_ref() {
            return Err(Error::DimMismatch("compose"));
        }
        Ok(ModuleHom {
            src: inner.src.clone(),
            tgt: self.tgt.clone(),
            mat: self.mat.mul(&inner.mat)?,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.mat.rank() == self.src.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.mat.rank() == self.tgt.dim
    }

    pub fn is_isomorphism(&self) -> bool {
        self.src.dim == self.tgt.dim && self.mat.rank() == self.src.dim
    }
}

/// Whether `f` commutes with every basis action.
pub fn intertwines(src: &Module, tgt: &Module, f: &Mat) -> bool {
    src.action.iter().zip(&tgt.action).all(|(sa, ta)| {
        f.mul(sa).ok() == ta.mul(f).ok()
    })
}

/// A basis of `Hom_A(src, tgt)` under the fixed elimination order.
pub fn hom_basis(src: &Module, tgt: &Module) -> Result<Vec<Mat>> {
    if src.alg.as_ref() != tgt.alg.as_ref() {
        return Err(Error::FieldMismatch);
    }
    let p = src.p();
    let (m, n) = (src.dim, tgt.dim);
    if m == 0 || n == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Mat> = Vec::new();
    for (sa, ta) in src.action.iter().zip(&tgt.action) {
        // vec(F·sa − ta·F) = (sa^T ⊗ I − I ⊗ ta) vec(F)
        let block = sa
            .transpose()
            .kron(&Mat::identity(p, n))
            .sub(&Mat::identity(p, m).kron(ta))?;
        rows.push(block);
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    let system = Mat::vstack_all(p, m * n, &refs)?;
    let kernel = system.kernel_basis();
    (0..kernel.cols)
        .map(|j| {
            let col = Mat::col_vec(p, &kernel.col(j));
            Mat::unvec_cols(p, n, m, &col)
        })
        .collect()
}

/// One linear side condition on the unknown homomorphism `F`.
pub enum HomConstraint<'a> {
    /// `P · F = Q`
    Left(&'a Mat, &'a Mat),
    /// `F · R = S`
    Right(&'a Mat, &'a Mat),
}

/// Solves for `F ∈ Hom_A(src, tgt)` with the given side conditions,
/// returning the full affine solution set (or `None` if inconsistent).
pub fn solve_hom_affine(
    src: &Module,
    tgt: &Module,
    constraints: &[HomConstraint<'_>],
) -> Result<Option<AffineSolutions>> {
    if src.alg.as_ref() != tgt.alg.as_ref() {
        return Err(Error::FieldMismatch);
    }
    let p = src.p();
    let (m, n) = (src.dim, tgt.dim);
    let unknowns = m * n;
    let mut sys_blocks: Vec<Mat> = Vec::new();
    let mut rhs_blocks: Vec<Mat> = Vec::new();
    for (sa, ta) in src.action.iter().zip(&tgt.action) {
        let block = sa
            .transpose()
            .kron(&Mat::identity(p, n))
            .sub(&Mat::identity(p, m).kron(ta))?;
        rhs_blocks.push(Mat::zeros(p, block.rows, 1));
        sys_blocks.push(block);
    }
    for c in constraints {
        match c {
            HomConstraint::Left(pm, q) => {
                if pm.cols != n {
                    return Err(Error::DimMismatch("hom constraint P·F"));
                }
                // vec(P F) = (I_m ⊗ P) vec F
                sys_blocks.push(Mat::identity(p, m).kron(pm));
                rhs_blocks.push(q.vec_cols());
            }
            HomConstraint::Right(r, s) => {
                if r.rows != m {
                    return Err(Error::DimMismatch("hom constraint F·R"));
                }
                // vec(F R) = (R^T ⊗ I_n) vec F
                sys_blocks.push(r.transpose().kron(&Mat::identity(p, n)));
                rhs_blocks.push(s.vec_cols());
            }
        }
    }
    let sys_refs: Vec<&Mat> = sys_blocks.iter().collect();
    let rhs_refs: Vec<&Mat> = rhs_blocks.iter().collect();
    let system = Mat::vstack_all(p, unknowns, &sys_refs)?;
    let rhs = Mat::vstack_all(p, 1, &rhs_refs)?;
    system.solve_affine(&rhs)
}

/// First solution of [`solve_hom_affine`], as a matrix.
pub fn solve_hom(
    src: &Module,
    tgt: &Module,
    constraints: &[HomConstraint<'_>],
) -> Result<Option<Mat>> {
    let n = tgt.dim;
    let m = src.dim;
    let p = src.p();
    Ok(match solve_hom_affine(src, tgt, constraints)? {
        None => None,
        Some(sols) => Some(Mat::unvec_cols(p, n, m, &sols.particular)?),
    })
}

/// Turns a vectorized hom solution back into a matrix.
pub fn unvec_hom(src: &Module, tgt: &Module, v: &Mat) -> Result<Mat> {
    Mat::unvec_cols(src.p(), tgt.dim, src.dim, v)
}

/// The endomorphism algebra of a module, with the hom basis realizing it.
/// Indecomposability of small modules is decided by checking this algebra
/// is local.
pub fn endo_algebra(m: &Module) -> Result<(super::Algebra, Vec<Mat>)> {
    let basis = hom_basis(m, m)?;
    let p = m.p();
    let n = basis.len();
    if n == 0 {
        return Err(Error::InvalidModule("zero module has no endomorphism algebra"));
    }
    let cols: Vec<Mat> = basis.iter().map(|b| b.vec_cols()).collect();
    let refs: Vec<&Mat> = cols.iter().collect();
    let stack = Mat::hstack_all(p, m.dim * m.dim, &refs)?;
    let mut table = alloc::vec![0u64; n * n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = basis[i].mul(&basis[j])?;
            let coords = stack
                .solve(&prod.vec_cols())?
                .ok_or(Error::Internal("endomorphism composition escapes the hom space"))?;
            for k in 0..n {
                table[(i * n + j) * n + k] = coords.at(k, 0);
            }
        }
    }
    let id = Mat::identity(p, m.dim);
    let unit = stack
        .solve(&id.vec_cols())?
        .ok_or(Error::Internal("identity escapes the hom space"))?;
    let alg = super::Algebra::new(p, n, table, unit.col(0))?;
    Ok((alg, basis))
}
