//! Jacobson radicals via composition factors.
//!
//! The radical of a finite-dimensional algebra is the intersection of the
//! annihilators of the simple modules, and every simple occurs among the
//! composition factors of the regular module. Submodules are found by
//! exhaustive closure over canonical vector representatives, which is
//! exact and deterministic at the dimensions this crate targets; the
//! enumeration budget is guarded by [`crate::Limits`].

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::exactlin::Mat;
use crate::{Error, Limits, Result};

use super::{Algebra, Module};

/// Iterates canonical representatives of lines in `F_p^dim`: vectors whose
/// first nonzero coordinate is 1, in lexicographic order.
struct LineReps {
    p: u64,
    dim: usize,
    current: Vec<u64>,
    done: bool,
}

impl LineReps {
    fn new(p: u64, dim: usize) -> LineReps {
        LineReps { p, dim, current: alloc::vec![0; dim], done: dim == 0 }
    }
}

impl Iterator for LineReps {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        loop {
            if self.done {
                return None;
            }
            // odometer step
            let mut i = 0;
            loop {
                if i == self.dim {
                    self.done = true;
                    return None;
                }
                self.current[i] += 1;
                if self.current[i] < self.p {
                    break;
                }
                self.current[i] = 0;
                i += 1;
            }
            let first_nonzero = self.current.iter().find(|&&c| c != 0);
            if first_nonzero == Some(&1) {
                return Some(self.current.clone());
            }
        }
    }
}

/// Finds a proper nonzero submodule, or certifies simplicity by
/// exhausting all cyclic submodules.
pub fn proper_submodule(m: &Module, limits: &Limits) -> Result<Option<Mat>> {
    if m.dim <= 1 {
        return Ok(None);
    }
    let p = m.p();
    let mut budget = 1u64;
    for _ in 0..m.dim {
        budget = budget.saturating_mul(p);
        if budget > limits.max_enum {
            return Err(Error::EnumerationTooLarge);
        }
    }
    for v in LineReps::new(p, m.dim) {
        let seed = Mat::col_vec(p, &v);
        let closure = m.span_closure(&seed)?;
        if closure.cols < m.dim {
            return Ok(Some(closure));
        }
    }
    Ok(None)
}

/// Composition factors of a module (with multiplicity, unordered).
pub fn composition_factors(m: &Module, limits: &Limits) -> Result<Vec<Module>> {
    if m.dim == 0 {
        return Ok(Vec::new());
    }
    match proper_submodule(m, limits)? {
        None => Ok(alloc::vec![m.clone()]),
        Some(incl) => {
            let sub = m.submodule(&incl)?;
            let (quo, _, _) = m.quotient_module(&incl)?;
            let mut factors = composition_factors(&sub, limits)?;
            factors.extend(composition_factors(&quo, limits)?);
            Ok(factors)
        }
    }
}

/// Basis (as columns) of the Jacobson radical.
///
/// Postconditions are re-verified before returning: the computed space is
/// a two-sided ideal and is nilpotent; a failure indicates a bug and is
/// reported as such rather than silently accepted.
pub fn radical_of_algebra(alg: &Arc<Algebra>, limits: &Limits) -> Result<Mat> {
    let p = alg.p();
    let d = alg.dim();
    let regular = Module::regular(alg.clone());
    let factors = composition_factors(&regular, limits)?;
    // annihilator conditions: for each simple S, Σ_i x_i ρ_S(e_i) = 0
    let mut blocks: Vec<Mat> = Vec::new();
    for s in &factors {
        let mut block = Mat::zeros(p, s.dim * s.dim, d);
        for i in 0..d {
            for r in 0..s.dim {
                for c in 0..s.dim {
                    block.set(r * s.dim + c, i, s.action[i].at(r, c));
                }
            }
        }
        blocks.push(block);
    }
    let refs: Vec<&Mat> = blocks.iter().collect();
    let system = Mat::vstack_all(p, d, &refs)?;
    let rad = system.kernel_basis();
    verify_nilpotent_ideal(alg, &rad)?;
    Ok(rad)
}

fn verify_nilpotent_ideal(alg: &Arc<Algebra>, rad: &Mat) -> Result<()> {
    let d = alg.dim();
    // closed under left and right multiplication by basis vectors
    for i in 0..d {
        let l = alg.left_mult(&alg.basis_vec(i)).mul(rad)?;
        let r = alg.right_mult(&alg.basis_vec(i)).mul(rad)?;
        if !rad.spans(&l) || !rad.spans(&r) {
            return Err(Error::Internal("computed radical is not an ideal"));
        }
    }
    // nilpotency: powers of the subspace shrink to zero
    let mut power = rad.clone();
    for _ in 0..=d {
        if power.cols == 0 {
            return Ok(());
        }
        let mut products: Vec<Mat> = Vec::new();
        for j in 0..power.cols {
            let x = power.col(j);
            let lx = alg.left_mult(&x);
            products.push(lx.mul(rad)?);
        }
        let refs: Vec<&Mat> = products.iter().collect();
        power = Mat::hstack_all(alg.p(), d, &refs)?.column_space_basis();
    }
    Err(Error::Internal("computed radical is not nilpotent"))
}

/// Radical of a module: `rad(A) · M`, as a column basis.
pub fn module_radical(m: &Module, rad_of_alg: &Mat) -> Result<Mat> {
    let p = m.p();
    let mut cols: Vec<Mat> = Vec::new();
    for j in 0..rad_of_alg.cols {
        let x = rad_of_alg.col(j);
        cols.push(m.act_by(&x)?);
    }
    if cols.is_empty() {
        return Ok(Mat::zeros(p, m.dim, 0));
    }
    let refs: Vec<&Mat> = cols.iter().collect();
    Ok(Mat::hstack_all(p, m.dim, &refs)?.column_space_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::{path_algebra, Algebra};
    use alloc::vec;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn radical_of_field_is_zero() {
        let alg = Arc::new(Algebra::ground_field(2).unwrap());
        assert_eq!(radical_of_algebra(&alg, &limits()).unwrap().cols, 0);
    }

    #[test]
    fn radical_of_dual_numbers() {
        let alg = Arc::new(Algebra::truncated_polynomial(3, 2).unwrap());
        let rad = radical_of_algebra(&alg, &limits()).unwrap();
        assert_eq!(rad.cols, 1);
        assert_eq!(rad.col(0), vec![0, 1]);
    }

    #[test]
    fn radical_of_path_algebra_is_arrow_span() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let rad = radical_of_algebra(&alg, &limits()).unwrap();
        assert_eq!(rad.cols, 1);
        assert_eq!(rad.col(0), vec![0, 0, 1]);
    }

    #[test]
    fn radical_of_two_by_two_matrices_over_f2() {
        // M_2(F_2) as an abstract 4-dimensional algebra: semisimple.
        // This is the case where plain trace forms degenerate, so it guards
        // the enumeration-based method.
        let p = 2;
        // basis E11, E12, E21, E22; E_ab · E_cd = δ_bc E_ad
        let mut table = vec![0u64; 64];
        let idx = |a: usize, b: usize| a * 2 + b;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        if b == c {
                            table[(idx(a, b) * 4 + idx(c, d)) * 4 + idx(a, d)] = 1;
                        }
                    }
                }
            }
        }
        let unit = vec![1, 0, 0, 1];
        let alg = Arc::new(Algebra::new(p, 4, table, unit).unwrap());
        assert_eq!(radical_of_algebra(&alg, &limits()).unwrap().cols, 0);
    }

    #[test]
    fn composition_factors_of_regular_a2() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let factors = composition_factors(&Module::regular(alg), &limits()).unwrap();
        // A2 regular module has three composition factors, all 1-dimensional
        assert_eq!(factors.len(), 3);
        assert!(factors.iter().all(|f| f.dim == 1));
    }

    #[test]
    fn brute_force_radical_cross_check() {
        // rad = set of x whose two-sided ideal is nilpotent; enumerate all
        // elements of a small algebra and compare with the computed space.
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let rad = radical_of_algebra(&alg, &limits()).unwrap();
        let d = alg.dim();
        let p = alg.p();
        let mut members = Vec::new();
        for bits in 0..(p.pow(d as u32)) {
            let mut x = vec![0u64; d];
            let mut b = bits;
            for c in x.iter_mut() {
                *c = b % p;
                b /= p;
            }
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            // two-sided ideal generated by x
            let reg = Module::regular(alg.clone());
            let seed = Mat::col_vec(p, &x);
            let left_closed = reg.span_closure(&seed).unwrap();
            // close under right multiplication as well
            let mut ideal = left_closed;
            loop {
                let mut bigger = ideal.clone();
                for i in 0..d {
                    bigger = bigger
                        .hstack(&alg.right_mult(&alg.basis_vec(i)).mul(&ideal).unwrap())
                        .unwrap();
                }
                let nb = bigger.column_space_basis();
                if nb.cols == ideal.cols {
                    break;
                }
                ideal = nb;
            }
            // nilpotency of the ideal
            let mut power = ideal.clone();
            let mut nilpotent = false;
            for _ in 0..=d {
                if power.cols == 0 {
                    nilpotent = true;
                    break;
                }
                let mut prod: Vec<Mat> = Vec::new();
                for j in 0..power.cols {
                    prod.push(alg.left_mult(&power.col(j)).mul(&ideal).unwrap());
                }
                let refs: Vec<&Mat> = prod.iter().collect();
                power = Mat::hstack_all(p, d, &refs).unwrap().column_space_basis();
            }
            if nilpotent {
                members.push(x);
            }
        }
        // the nilpotent-ideal elements must be exactly the radical vectors
        for x in &members {
            assert!(rad.spans(&Mat::col_vec(p, x)));
        }
        let count = p.pow(rad.cols as u32) - 1;
        assert_eq!(members.len() as u64, count);
    }
}
