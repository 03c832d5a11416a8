//! Tensor products over an algebra, and bimodules.
//!
//! `M ⊗_A N` is realized as the quotient of `M ⊗_k N` by the balancing
//! relations `(m·a) ⊗ n − m ⊗ (a·n)`. The [`TensorSpace`] keeps the
//! projection from the plain tensor product and a section back into it;
//! induced maps between tensor products are computed by lift–map–project.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::{quotient, Mat};
use crate::{Error, Result};

use super::{Algebra, Module};

/// A quotient of `F_p^(left_dim · right_dim)` presenting a balanced tensor
/// product, with basis index `(i, j) ↦ i · right_dim + j` upstairs.
#[derive(Debug, Clone)]
pub struct TensorSpace {
    pub left_dim: usize,
    pub right_dim: usize,
    pub dim: usize,
    /// `big → quotient`
    pub proj: Mat,
    /// section `quotient → big`; `proj ∘ lift = id`
    pub lift: Mat,
}

impl TensorSpace {
    /// The class of the pure tensor `e_i ⊗ e_j`.
    pub fn pure(&self, i: usize, j: usize) -> Vec<u64> {
        self.proj.col(i * self.right_dim + j)
    }

    /// The matrix `big → big` of `a ⊗ b` descended to the quotients:
    /// `other.proj ∘ (a ⊗ b) ∘ self.lift`. The caller must pass maps that
    /// respect the balancing relations.
    pub fn induced(&self, target: &TensorSpace, on_left: &Mat, on_right: &Mat) -> Result<Mat> {
        if on_left.cols != self.left_dim
            || on_right.cols != self.right_dim
            || on_left.rows != target.left_dim
            || on_right.rows != target.right_dim
        {
            return Err(Error::DimMismatch("induced tensor map"));
        }
        let big = on_left.kron(on_right);
        target.proj.mul(&big.mul(&self.lift)?)
    }
}

/// Balanced tensor product over `mid`: `right_on_left[i]` is the right
/// action of basis vector `e_i` on the left factor, `left_on_right[i]`
/// its left action on the right factor.
pub fn tensor_over(
    mid: &Algebra,
    right_on_left: &[Mat],
    left_dim: usize,
    left_on_right: &[Mat],
    right_dim: usize,
) -> Result<TensorSpace> {
    let p = mid.p();
    if right_on_left.len() != mid.dim() || left_on_right.len() != mid.dim() {
        return Err(Error::DimMismatch("tensor_over actions"));
    }
    let big = left_dim * right_dim;
    let mut rel_blocks: Vec<Mat> = Vec::new();
    let idl = Mat::identity(p, left_dim);
    let idr = Mat::identity(p, right_dim);
    for i in 0..mid.dim() {
        // columns of (r(e_i) ⊗ I − I ⊗ l(e_i)) span the e_i-relations
        let rel = right_on_left[i].kron(&idr).sub(&idl.kron(&left_on_right[i]))?;
        rel_blocks.push(rel);
    }
    let refs: Vec<&Mat> = rel_blocks.iter().collect();
    let stacked = Mat::hstack_all(p, big, &refs)?;
    let basis = stacked.column_space_basis();
    let q = quotient(p, big, &basis)?;
    Ok(TensorSpace {
        left_dim,
        right_dim,
        dim: q.proj.rows,
        proj: q.proj,
        lift: q.sect,
    })
}

/// Tensor product `M ⊗_A N` of a right module (given as a left module over
/// `A^op`) with a left module, without outer actions.
pub fn tensor_modules(mid: &Algebra, m_right: &Module, n_left: &Module) -> Result<TensorSpace> {
    tensor_over(mid, &m_right.action, m_right.dim, &n_left.action, n_left.dim)
}

/// An `A`-`B`-bimodule. The right action is stored as an anti-homomorphism
/// (`right[i] · right[j] = right of e_j e_i`), i.e. as the left action of
/// `B^op` on the same space.
#[derive(Clone)]
pub struct Bimodule {
    pub left_alg: Arc<Algebra>,
    pub right_alg: Arc<Algebra>,
    pub dim: usize,
    pub left: Vec<Mat>,
    pub right: Vec<Mat>,
}

impl core::fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Bimodule(dim {}, {}-{})",
            self.dim,
            self.left_alg.dim(),
            self.right_alg.dim()
        )
    }
}

impl Bimodule {
    pub fn new(
        left_alg: Arc<Algebra>,
        right_alg: Arc<Algebra>,
        dim: usize,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Result<Bimodule> {
        let b = Bimodule { left_alg, right_alg, dim, left, right };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        self.as_left_module().validate()?;
        self.as_right_module(Arc::new(self.right_alg.opposite())).validate()?;
        for l in &self.left {
            for r in &self.right {
                if l.mul(r)? != r.mul(l)? {
                    return Err(Error::InvalidModule("bimodule actions do not commute"));
                }
            }
        }
        Ok(())
    }

    /// The regular bimodule `A` over itself.
    pub fn regular(alg: Arc<Algebra>) -> Bimodule {
        let left = (0..alg.dim()).map(|i| alg.left_mult(&alg.basis_vec(i))).collect();
        let right = (0..alg.dim()).map(|i| alg.right_mult(&alg.basis_vec(i))).collect();
        Bimodule { left_alg: alg.clone(), right_alg: alg.clone(), dim: alg.dim(), left, right }
    }

    pub fn p(&self) -> u64 {
        self.left_alg.p()
    }

    pub fn as_left_module(&self) -> Module {
        Module { alg: self.left_alg.clone(), dim: self.dim, action: self.left.clone() }
    }

    /// The underlying right module, as a left module over the given
    /// opposite algebra (which must equal `right_alg.opposite()`).
    pub fn as_right_module(&self, op: Arc<Algebra>) -> Module {
        debug_assert!(op.as_ref() == &self.right_alg.opposite());
        Module { alg: op, dim: self.dim, action: self.right.clone() }
    }

    /// The dual bimodule: for an `A`-`B`-bimodule `T`, `D(T)` is a
    /// `B`-`A`-bimodule with `(b·f·a)(t) = f(a t b)`. On dual-basis
    /// coordinates the actions are the transposes.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            left_alg: self.right_alg.clone(),
            right_alg: self.left_alg.clone(),
            dim: self.dim,
            left: self.right.iter().map(|m| m.transpose()).collect(),
            right: self.left.iter().map(|m| m.transpose()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::module::tests::{proj_a2, simple_a2};
    use crate::algmod::{path_algebra, Algebra};
    use alloc::vec;

    #[test]
    fn unit_constraint_makes_a_tensor_n_canonical() {
        // A ⊗_A N ≅ N
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let reg = Bimodule::regular(alg.clone());
        let op = Arc::new(alg.opposite());
        let n = proj_a2(&alg);
        let t = tensor_modules(&alg, &reg.as_right_module(op), &n).unwrap();
        assert_eq!(t.dim, n.dim);
    }

    #[test]
    fn dim_of_m_tensor_regular() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let op = Arc::new(alg.opposite());
        // right module: dual of a left module is a left A^op-module
        let m = proj_a2(&alg).dual(op.clone()).unwrap();
        let reg_left = Module::regular(alg.clone());
        let t = tensor_modules(&alg, &m, &reg_left).unwrap();
        assert_eq!(t.dim, m.dim);
    }

    #[test]
    fn simple_tensor_simple_over_dual_numbers() {
        // over F_2[x]/(x^2): k ⊗_A k has dim 1
        let alg = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        let simple = Module::new(
            alg.clone(),
            1,
            vec![Mat::identity(2, 1), Mat::zeros(2, 1, 1)],
        )
        .unwrap();
        // k as right module over the commutative algebra: same matrices
        let t = tensor_modules(&alg, &simple_as_op(&alg, &simple), &simple).unwrap();
        assert_eq!(t.dim, 1);
    }

    fn simple_as_op(alg: &Arc<Algebra>, m: &Module) -> Module {
        Module {
            alg: Arc::new(alg.opposite()),
            dim: m.dim,
            action: m.action.clone(),
        }
    }

    #[test]
    fn regular_bimodule_validates() {
        let alg = Arc::new(path_algebra(3, 2, &[(0, 1)]).unwrap());
        assert!(Bimodule::regular(alg).validate().is_ok());
    }

    #[test]
    fn dual_bimodule_validates_and_is_involutive_on_actions() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let t = Bimodule::regular(alg);
        let dt = t.dual();
        assert!(dt.validate().is_ok());
        let ddt = dt.dual();
        assert_eq!(ddt.left, t.left);
        assert_eq!(ddt.right, t.right);
    }

    #[test]
    fn simple_tensor_nonadjacent_vanishes() {
        // over A2: D(S0) ⊗_A S0 has dim 1, D(S0) ⊗_A S1 has dim 0
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let op = Arc::new(alg.opposite());
        let s0 = simple_a2(&alg, 0);
        let s1 = simple_a2(&alg, 1);
        let ds0 = s0.dual(op).unwrap();
        assert_eq!(tensor_modules(&alg, &ds0, &s0).unwrap().dim, 1);
        assert_eq!(tensor_modules(&alg, &ds0, &s1).unwrap().dim, 0);
    }
}
