//! Left modules as tuples of action matrices.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::{quotient, Mat};
use crate::{Error, Result};

use super::Algebra;

/// A finitely generated left module: one `dim × dim` action matrix per
/// algebra basis vector. Right `A`-modules are left modules over `A^op`.
#[derive(Clone, PartialEq, Eq)]
pub struct Module {
    pub alg: Arc<Algebra>,
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl core::fmt::Debug for Module {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Module(dim {} over dim-{} algebra)", self.dim, self.alg.dim())
    }
}

/// A submodule presented by an inclusion of an invariant subspace.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub module: Arc<Module>,
    /// Columns: a basis of the subspace inside the ambient module.
    pub incl: Mat,
}

/// A direct sum with its canonical injections and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Arc<Module>,
    pub injections: Vec<Mat>,
    pub projections: Vec<Mat>,
}

impl Module {
    pub fn new(alg: Arc<Algebra>, dim: usize, action: Vec<Mat>) -> Result<Module> {
        let m = Module { alg, dim, action };
        m.validate()?;
        Ok(m)
    }

    /// Checks the action respects the multiplication table and the unit.
    pub fn validate(&self) -> Result<()> {
        let d = self.alg.dim();
        if self.action.len() != d {
            return Err(Error::InvalidModule("one action matrix per algebra basis vector"));
        }
        for m in &self.action {
            if m.rows != self.dim || m.cols != self.dim || m.p() != self.alg.p() {
                return Err(Error::InvalidModule("action matrix shape"));
            }
        }
        let p = self.alg.p();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j])?;
                let mut rhs = Mat::zeros(p, self.dim, self.dim);
                for k in 0..d {
                    let c = self.alg.structure_constant(i, j, k);
                    if c != 0 {
                        rhs = rhs.add(&self.action[k].scale(c))?;
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule("action does not respect multiplication"));
                }
            }
        }
        if self.act_by(self.alg.unit())? != Mat::identity(p, self.dim) {
            return Err(Error::InvalidModule("unit does not act as identity"));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.alg.p()
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act_by(&self, x: &[u64]) -> Result<Mat> {
        if x.len() != self.alg.dim() {
            return Err(Error::DimMismatch("act_by"));
        }
        let mut out = Mat::zeros(self.p(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if c % self.p() != 0 {
                out = out.add(&self.action[i].scale(c))?;
            }
        }
        Ok(out)
    }

    pub fn zero(alg: Arc<Algebra>) -> Module {
        let p = alg.p();
        let d = alg.dim();
        Module { alg, dim: 0, action: (0..d).map(|_| Mat::zeros(p, 0, 0)).collect() }
    }

    /// The left regular module.
    pub fn regular(alg: Arc<Algebra>) -> Module {
        let action = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis_vec(i))).collect();
        Module { dim: alg.dim(), alg, action }
    }

    /// Free module of the given rank.
    pub fn free(alg: Arc<Algebra>, rank: usize) -> Module {
        let reg = Module::regular(alg.clone());
        let p = alg.p();
        let action = reg
            .action
            .iter()
            .map(|m| Mat::identity(p, rank).kron(m))
            .collect();
        Module { dim: alg.dim() * rank, alg, action }
    }

    pub fn direct_sum(parts: &[&Module]) -> Result<DirectSum> {
        let alg = parts.first().map(|m| m.alg.clone()).ok_or(Error::DimMismatch("empty sum"))?;
        if parts.iter().any(|m| m.alg.as_ref() != alg.as_ref()) {
            return Err(Error::FieldMismatch);
        }
        let p = alg.p();
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let action = (0..alg.dim())
            .map(|i| {
                let blocks: Vec<&Mat> = parts.iter().map(|m| &m.action[i]).collect();
                Mat::block_diag(p, &blocks)
            })
            .collect();
        let module = Arc::new(Module { alg, dim, action });
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut offset = 0usize;
        for m in parts {
            let mut inj = Mat::zeros(p, dim, m.dim);
            let mut proj = Mat::zeros(p, m.dim, dim);
            for r in 0..m.dim {
                inj.set(offset + r, r, 1);
                proj.set(r, offset + r, 1);
            }
            injections.push(inj);
            projections.push(proj);
            offset += m.dim;
        }
        Ok(DirectSum { module, injections, projections })
    }

    /// Vector-space dual as a left module over the opposite algebra:
    /// the action matrices are transposed.
    pub fn dual(&self, op: Arc<Algebra>) -> Result<Module> {
        if op.as_ref() != &self.alg.opposite() {
            return Err(Error::DimMismatch("dual expects the opposite algebra"));
        }
        let action = self.action.iter().map(|m| m.transpose()).collect();
        Ok(Module { alg: op, dim: self.dim, action })
    }

    /// Smallest invariant subspace containing the given columns.
    pub fn span_closure(&self, seed: &Mat) -> Result<Mat> {
        if seed.rows != self.dim {
            return Err(Error::DimMismatch("span_closure"));
        }
        let mut basis = seed.column_space_basis();
        loop {
            let mut grew = basis.clone();
            for act in &self.action {
                grew = grew.hstack(&act.mul(&basis)?)?;
            }
            let new_basis = grew.column_space_basis();
            if new_basis.cols == basis.cols {
                return Ok(basis);
            }
            basis = new_basis;
        }
    }

    /// The module structure on an invariant subspace; errors if the given
    /// columns are dependent or not invariant.
    pub fn submodule(&self, incl: &Mat) -> Result<Module> {
        if incl.rank() != incl.cols {
            return Err(Error::DependentColumns);
        }
        let mut action = Vec::with_capacity(self.action.len());
        for act in &self.action {
            let image = act.mul(incl)?;
            let coords = incl
                .solve(&image)?
                .ok_or(Error::InvalidModule("subspace not invariant"))?;
            action.push(coords);
        }
        Module::new(self.alg.clone(), incl.cols, action)
    }

    /// Quotient by the column span of `sub` (closed under the action),
    /// returning the quotient module with projection and a section.
    pub fn quotient_module(&self, sub: &Mat) -> Result<(Module, Mat, Mat)> {
        let basis = sub.column_space_basis();
        let q = quotient(self.p(), self.dim, &basis)?;
        let mut action = Vec::with_capacity(self.action.len());
        for act in &self.action {
            let induced = q.proj.mul(&act.mul(&q.sect)?)?;
            action.push(induced);
        }
        let m = Module::new(self.alg.clone(), q.proj.rows, action).map_err(|_| {
            Error::InvalidModule("quotient by a non-invariant subspace")
        })?;
        Ok((m, q.proj, q.sect))
    }

    /// Kernel of a homomorphism matrix out of this module, as a submodule.
    pub fn kernel_submodule(&self, map: &Mat) -> Result<(Module, Mat)> {
        if map.cols != self.dim {
            return Err(Error::DimMismatch("kernel_submodule"));
        }
        let incl = map.kernel_basis();
        let sub = self.submodule(&incl)?;
        Ok((sub, incl))
    }

    /// Restriction along an algebra map given by images of basis vectors:
    /// used for viewing a `T(A)`-module as an `A`-module.
    pub fn restrict(&self, alg: Arc<Algebra>, embed: &[Vec<u64>]) -> Result<Module> {
        if embed.len() != alg.dim() {
            return Err(Error::DimMismatch("restrict"));
        }
        let mut action = Vec::with_capacity(alg.dim());
        for x in embed {
            action.push(self.act_by(x)?);
        }
        Module::new(alg, self.dim, action)
    }

    /// Cache key: stable encoding of the whole structure.
    pub fn fingerprint(&self) -> Vec<u64> {
        let mut v = alloc::vec![self.p(), self.dim as u64, self.alg.dim() as u64];
        for m in &self.action {
            v.extend_from_slice(m.entries());
        }
        v
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algmod::path_algebra;
    use crate::algmod::Algebra;
    use alloc::vec;

    fn a2() -> Arc<Algebra> {
        Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap())
    }

    /// Simple at vertex v of the A2 path algebra.
    pub(crate) fn simple_a2(alg: &Arc<Algebra>, v: usize) -> Module {
        let p = alg.p();
        let mut action = vec![Mat::zeros(p, 1, 1); 3];
        action[v] = Mat::identity(p, 1);
        Module::new(alg.clone(), 1, action).unwrap()
    }

    /// The projective cover of the vertex-0 simple: dim 2, arrow acts.
    pub(crate) fn proj_a2(alg: &Arc<Algebra>) -> Module {
        let p = alg.p();
        let e0 = Mat::from_entries(p, 2, 2, &[1, 0, 0, 0]).unwrap();
        let e1 = Mat::from_entries(p, 2, 2, &[0, 0, 0, 1]).unwrap();
        let a = Mat::from_entries(p, 2, 2, &[0, 0, 1, 0]).unwrap();
        Module::new(alg.clone(), 2, vec![e0, e1, a]).unwrap()
    }

    #[test]
    fn regular_module_is_valid() {
        let alg = a2();
        assert!(Module::regular(alg).validate().is_ok());
    }

    #[test]
    fn free_module_dim() {
        let alg = a2();
        assert_eq!(Module::free(alg, 3).dim, 9);
    }

    #[test]
    fn dual_of_dual_is_original() {
        let alg = a2();
        let m = proj_a2(&alg);
        let op = Arc::new(alg.opposite());
        let d = m.dual(op.clone()).unwrap();
        let back_alg = Arc::new(op.opposite());
        assert_eq!(back_alg.as_ref(), alg.as_ref());
        let dd = d.dual(back_alg).unwrap();
        assert_eq!(dd.action, m.action);
    }

    #[test]
    fn dual_preserves_dim() {
        let alg = a2();
        let reg = Module::regular(alg.clone());
        let d = reg.dual(Arc::new(alg.opposite())).unwrap();
        assert_eq!(d.dim, reg.dim);
        assert!(d.validate().is_ok());
    }

    #[test]
    fn quotient_of_projective_by_socle() {
        let alg = a2();
        let m = proj_a2(&alg);
        // socle = span of the vertex-1 coordinate
        let sub = Mat::from_entries(2, 2, 1, &[0, 1]).unwrap();
        let (q, proj, _) = m.quotient_module(&sub).unwrap();
        assert_eq!(q.dim, 1);
        assert!(proj.mul(&sub).unwrap().is_zero());
        // quotient is the vertex-0 simple
        assert_eq!(q.action[0], Mat::identity(2, 1));
        assert_eq!(q.action[1], Mat::zeros(2, 1, 1));
    }

    #[test]
    fn span_closure_generates_submodule() {
        let alg = a2();
        let m = proj_a2(&alg);
        // the top generator generates everything
        let seed = Mat::from_entries(2, 2, 1, &[1, 0]).unwrap();
        assert_eq!(m.span_closure(&seed).unwrap().cols, 2);
        // the socle generates itself only
        let seed = Mat::from_entries(2, 2, 1, &[0, 1]).unwrap();
        assert_eq!(m.span_closure(&seed).unwrap().cols, 1);
    }
}
