//! Projective resolutions, Ext and Tor.
//!
//! Resolutions come in two kinds: `FreeTop` resolves by free modules on
//! top generators (always available, never minimal), `MinimalCover` uses
//! projective covers. Ext and Tor are resolution-independent; the test
//! suite checks the two kinds agree. A separate degree-one Ext oracle
//! counts extension classes directly as cocycles-modulo-coboundaries of
//! action matrices, with no resolution involved.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::Mat;
use crate::{Error, Result};

use super::hom::{hom_basis, solve_hom, HomConstraint};
use super::radical::module_radical;
use super::tensor::tensor_modules;
use super::{AlgCtx, Module};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolutionKind {
    /// Free modules on generators lifting a top basis.
    FreeTop,
    /// Minimal projective covers at every stage.
    MinimalCover,
}

impl ResolutionKind {
    pub(super) fn key(self) -> u8 {
        match self {
            ResolutionKind::FreeTop => 0,
            ResolutionKind::MinimalCover => 1,
        }
    }
}

/// A partial projective resolution `… → P_1 → P_0 → M → 0`.
///
/// `maps[0]` is the augmentation `P_0 → M`; `maps[i]` is `P_i → P_{i-1}`.
/// Exactness at every computed inner stage holds by construction and is
/// asserted through rank bookkeeping.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub target: Arc<Module>,
    pub stages: Vec<Arc<Module>>,
    pub maps: Vec<Mat>,
    pub kind: ResolutionKind,
}

impl Resolution {
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

/// A universal extension `0 → X → E → T^(r) → 0` realizing a basis of
/// `Ext^1(T, X)`.
#[derive(Debug, Clone)]
pub struct UniversalExt {
    pub middle: Arc<Module>,
    pub incl: Mat,
    pub copies: usize,
}

impl AlgCtx {
    /// A projective resolution of `m` with at least `len` stages.
    pub fn resolution(
        &mut self,
        m: &Module,
        len: usize,
        kind: ResolutionKind,
    ) -> Result<Arc<Resolution>> {
        let key = (m.fingerprint(), kind.key());
        let cached_len = self.resolutions.get(&key).map(|r| r.len()).unwrap_or(0);
        if cached_len >= len {
            return Ok(self.resolutions.get(&key).unwrap().clone());
        }
        let mut res = match self.resolutions.get(&key) {
            Some(r) => (**r).clone(),
            None => Resolution {
                target: Arc::new(m.clone()),
                stages: Vec::new(),
                maps: Vec::new(),
                kind,
            },
        };
        while res.len() < len {
            self.extend_resolution(&mut res)?;
        }
        let arc = Arc::new(res);
        self.resolutions.insert(key, arc.clone());
        Ok(arc)
    }

    fn extend_resolution(&mut self, res: &mut Resolution) -> Result<()> {
        // current kernel to resolve, as a subspace of the previous stage
        let (ambient, ker_incl): (Arc<Module>, Mat) = if res.stages.is_empty() {
            let id = Mat::identity(self.p(), res.target.dim);
            (res.target.clone(), id)
        } else {
            let last = res.stages.last().unwrap().clone();
            let prev_map = res.maps.last().unwrap();
            (last, prev_map.kernel_basis())
        };
        let kernel_mod = if ker_incl.cols == ambient.dim {
            (*ambient).clone()
        } else {
            ambient.submodule(&ker_incl)?
        };
        let (stage, into_kernel): (Arc<Module>, Mat) = match res.kind {
            ResolutionKind::MinimalCover => {
                let cover = self.projective_cover(&kernel_mod)?;
                (cover.source.clone(), cover.map.clone())
            }
            ResolutionKind::FreeTop => self.free_top_cover(&kernel_mod)?,
        };
        self.limits.check_dim(stage.dim)?;
        let map = ker_incl.mul(&into_kernel)?;
        // exactness bookkeeping: the new map hits exactly the kernel
        if map.rank() != ker_incl.cols {
            return Err(Error::Internal("resolution stage does not cover the kernel"));
        }
        res.stages.push(stage);
        res.maps.push(map);
        Ok(())
    }

    /// Free cover on generators lifting a top basis.
    fn free_top_cover(&mut self, m: &Module) -> Result<(Arc<Module>, Mat)> {
        let p = self.p();
        let alg = self.alg.clone();
        if m.dim == 0 {
            return Ok((Arc::new(Module::zero(alg)), Mat::zeros(p, 0, 0)));
        }
        let rad = self.radical()?;
        let rad_m = module_radical(m, &rad)?;
        let q = crate::exactlin::quotient(p, m.dim, &rad_m)?;
        let gens: Vec<Mat> = (0..q.proj.rows)
            .map(|j| {
                let mut top = vec![0u64; q.proj.rows];
                top[j] = 1;
                q.sect.mul(&Mat::col_vec(p, &top)).unwrap()
            })
            .collect();
        let rank = gens.len();
        let free = Module::free(alg.clone(), rank);
        // basis of A^rank is (copy s, algebra basis i) ↦ s·dim(A) + i
        let mut map = Mat::zeros(p, m.dim, free.dim);
        for (s, g) in gens.iter().enumerate() {
            for i in 0..alg.dim() {
                let img = m.act_by(&alg.basis_vec(i))?.mul(g)?;
                for r in 0..m.dim {
                    map.set(r, s * alg.dim() + i, img.at(r, 0));
                }
            }
        }
        if map.rank() != m.dim {
            return Err(Error::Internal("top generators do not generate"));
        }
        Ok((Arc::new(free), map))
    }

    /// Dimension of `Ext^i(m, n)`.
    pub fn ext_dim(&mut self, m: &Module, n: &Module, i: usize, kind: ResolutionKind) -> Result<usize> {
        if i == 0 {
            return Ok(hom_basis(m, n)?.len());
        }
        if m.dim == 0 || n.dim == 0 {
            return Ok(0);
        }
        let res = self.resolution(m, i + 2, kind)?;
        let (z, b) = self.cocycle_spaces(&res, n, i)?;
        Ok(z.cols - b.rank())
    }

    /// Cocycles and coboundaries of `Hom(P_•, n)` in degree `i ≥ 1`, in
    /// vectorized hom coordinates of stage `i`.
    fn cocycle_spaces(&mut self, res: &Resolution, n: &Module, i: usize) -> Result<(Mat, Mat)> {
        let p = self.p();
        let stage_i = &res.stages[i];
        let dims = stage_i.dim * n.dim;
        // cocycles: h with h ∘ d_{i+1} = 0, h a homomorphism
        let hom_i = hom_basis(stage_i, n)?;
        let basis_cols: Vec<Mat> = hom_i.iter().map(|h| h.vec_cols()).collect();
        let refs: Vec<&Mat> = basis_cols.iter().collect();
        let hom_span = Mat::hstack_all(p, dims, &refs)?;
        let d_next = &res.maps[i + 1];
        // coords c such that (Σ c_k h_k) ∘ d_{i+1} = 0
        let comp_cols: Vec<Mat> = hom_i.iter().map(|h| h.mul(d_next).unwrap().vec_cols()).collect();
        let crefs: Vec<&Mat> = comp_cols.iter().collect();
        let comp = Mat::hstack_all(p, res.stages[i + 1].dim * n.dim, &crefs)?;
        let z_coords = comp.kernel_basis();
        // expand back to vectorized hom matrices
        let z = hom_span.mul(&z_coords)?;
        // coboundaries: g ∘ d_i for g ∈ Hom(stage_{i-1}, n)
        let prev = if i == 1 { res.stages[0].clone() } else { res.stages[i - 1].clone() };
        let hom_prev = hom_basis(&prev, n)?;
        let d_i = &res.maps[i];
        let b_cols: Vec<Mat> = hom_prev.iter().map(|g| g.mul(d_i).unwrap().vec_cols()).collect();
        let brefs: Vec<&Mat> = b_cols.iter().collect();
        let b = if b_cols.is_empty() {
            Mat::zeros(p, dims, 0)
        } else {
            Mat::hstack_all(p, dims, &brefs)?
        };
        Ok((z, b))
    }

    /// Representatives of a basis of `Ext^i(m, n)` as cocycle matrices
    /// `stage_i → n`, together with the resolution they live on.
    pub fn ext_basis(
        &mut self,
        m: &Module,
        n: &Module,
        i: usize,
        kind: ResolutionKind,
    ) -> Result<(Vec<ExtClass>, Arc<Resolution>)> {
        if i == 0 {
            return Err(Error::DimMismatch("ext_basis needs degree >= 1"));
        }
        let res = self.resolution(m, i + 2, kind)?;
        if m.dim == 0 || n.dim == 0 {
            return Ok((Vec::new(), res));
        }
        let p = self.p();
        let (z, b) = self.cocycle_spaces(&res, n, i)?;
        // coset representatives: pivot columns of [B | Z] beyond B
        let bz = b.hstack(&z)?;
        let (_, pivots) = bz.rref();
        let chosen: Vec<usize> = pivots.iter().filter(|&&c| c >= b.cols).map(|&c| c - b.cols).collect();
        let classes = chosen
            .iter()
            .map(|&j| {
                let col = Mat::col_vec(p, &z.col(j));
                let mat = Mat::unvec_cols(p, n.dim, res.stages[i].dim, &col)?;
                Ok(ExtClass { degree: i, cocycle: mat })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((classes, res))
    }

    /// Realizes a degree-one class as an extension `0 → n → E → m → 0`;
    /// the zero class yields the split extension.
    pub fn extension_from_class(
        &mut self,
        res: &Resolution,
        n: &Module,
        cocycle: &Mat,
    ) -> Result<ExtensionData> {
        let f0 = res.stages[0].clone();
        let f1 = res.stages[1].clone();
        if cocycle.rows != n.dim || cocycle.cols != f1.dim {
            return Err(Error::DimMismatch("extension cocycle shape"));
        }
        // cocycle condition z ∘ d_2 = 0
        if !cocycle.mul(&res.maps[2])?.is_zero() {
            return Err(Error::Unsolvable("not a cocycle"));
        }
        let sum = Module::direct_sum(&[n, &f0])?;
        let rel_top = cocycle.clone();
        let rel_bot = res.maps[1].neg();
        let rel = rel_top.vstack(&rel_bot)?;
        let (e, proj, sect) = sum.module.quotient_module(&rel)?;
        self.limits.check_dim(e.dim)?;
        let incl = proj.mul(&sum.injections[0])?;
        // projection to m induced by the augmentation on the F_0 part
        let aug_part = res.maps[0].mul(&sum.projections[1])?;
        let onto = aug_part.mul(&sect)?;
        // postconditions: exactness of 0 → n → E → m → 0
        if incl.rank() != n.dim
            || onto.rank() != res.target.dim
            || !onto.mul(&incl)?.is_zero()
            || e.dim != n.dim + res.target.dim
        {
            return Err(Error::Internal("extension middle term not exact"));
        }
        Ok(ExtensionData { middle: Arc::new(e), incl, onto })
    }

    /// Yoneda class of an extension `0 → n → E → m → 0` on the fixed
    /// resolution of `m`, as a cocycle `stage_1 → n`.
    pub fn class_of_extension(
        &mut self,
        res: &Resolution,
        incl: &Mat,
        e: &Module,
        onto: &Mat,
    ) -> Result<Mat> {
        let f0 = res.stages[0].clone();
        // lift the augmentation through the epi: q ∘ u0 = aug
        let u0 = solve_hom(&f0, e, &[HomConstraint::Left(onto, &res.maps[0])])?
            .ok_or(Error::Unsolvable("lift of augmentation through extension"))?;
        let w = u0.mul(&res.maps[1])?;
        // w lands in the image of n; pull back
        let z = incl.solve(&w)?.ok_or(Error::Internal("extension class pullback"))?;
        Ok(z)
    }

    /// Universal extension of `x` by copies of `t`, realizing a basis of
    /// `Ext^1(t, x)`; `None` when that Ext group vanishes.
    pub fn universal_extension(
        &mut self,
        x: &Module,
        t: &Module,
        kind: ResolutionKind,
    ) -> Result<Option<UniversalExt>> {
        let (classes, res) = self.ext_basis(t, x, 1, kind)?;
        if classes.is_empty() {
            return Ok(None);
        }
        let p = self.p();
        let r = classes.len();
        let f0 = res.stages[0].clone();
        let f1 = res.stages[1].clone();
        let mut parts: Vec<&Module> = vec![x];
        let copies: Vec<Module> = (0..r).map(|_| (*f0).clone()).collect();
        for c in &copies {
            parts.push(c);
        }
        let sum = Module::direct_sum(&parts)?;
        self.limits.check_dim(sum.module.dim)?;
        // relations: one block of columns per class j: (z_j(w), -d1(w) in copy j)
        let mut rel_cols: Vec<Mat> = Vec::new();
        for (j, class) in classes.iter().enumerate() {
            let mut block = Mat::zeros(p, sum.module.dim, f1.dim);
            let top = class.cocycle.clone();
            let bot = res.maps[1].neg();
            // embed via injections: x-part and copy j
            let via_x = sum.injections[0].mul(&top)?;
            let via_j = sum.injections[j + 1].mul(&bot)?;
            for c in 0..f1.dim {
                for rrow in 0..sum.module.dim {
                    let v = (via_x.at(rrow, c) + via_j.at(rrow, c)) % p;
                    block.set(rrow, c, v);
                }
            }
            rel_cols.push(block);
        }
        let refs: Vec<&Mat> = rel_cols.iter().collect();
        let rel = Mat::hstack_all(p, sum.module.dim, &refs)?;
        let (e, proj, _sect) = sum.module.quotient_module(&rel)?;
        let incl = proj.mul(&sum.injections[0])?;
        if incl.rank() != x.dim {
            return Err(Error::Internal("universal extension does not embed x"));
        }
        // the quotient by x is t^r: check dimensions only; the structure
        // is exercised by the Ext-vanishing tests downstream
        if e.dim != x.dim + r * t.dim {
            return Err(Error::Internal("universal extension dimension"));
        }
        Ok(Some(UniversalExt { middle: Arc::new(e), incl, copies: r }))
    }

    /// Dimension of `Tor_i(m, n)` for a right module `m` (as a module
    /// over the opposite algebra) and a left module `n`.
    pub fn tor_dim(
        &mut self,
        m_right: &Module,
        n: &Module,
        i: usize,
        kind: ResolutionKind,
    ) -> Result<usize> {
        if m_right.dim == 0 || n.dim == 0 {
            return Ok(0);
        }
        let res = self.resolution(n, i + 2, kind)?;
        let alg = self.alg.clone();
        let spaces: Vec<_> = (0..=i + 1)
            .map(|j| tensor_modules(&alg, m_right, &res.stages[j]))
            .collect::<Result<Vec<_>>>()?;
        let id_m = Mat::identity(self.p(), m_right.dim);
        let mut ranks = vec![0usize; i + 2];
        for j in 1..=i + 1 {
            let d = spaces[j].induced(&spaces[j - 1], &id_m, &res.maps[j])?;
            ranks[j] = d.rank();
        }
        // H_i = ker(d_i) / im(d_{i+1}); d_0 = 0
        let dim_i = spaces[i].dim;
        let rank_in = ranks[i];
        let rank_out = ranks[i + 1];
        Ok(dim_i - rank_in - rank_out)
    }

    /// Degree-one Ext oracle: counts extensions of `m` by `n` directly.
    ///
    /// An extension corresponds to an upper-triangular action
    /// `[[ρ_n, C], [0, ρ_m]]`; the module law makes the `C`-blocks a
    /// cocycle space, and conjugating by `[[1, B], [0, 1]]` sweeps out
    /// coboundaries. The quotient dimension is `dim Ext^1` and never
    /// touches a resolution.
    pub fn ext1_dim_by_cocycles(&mut self, m: &Module, n: &Module) -> Result<usize> {
        let p = self.p();
        let d = self.alg.dim();
        let (mm, nn) = (m.dim, n.dim);
        if mm == 0 || nn == 0 {
            return Ok(0);
        }
        let block = nn * mm;
        let unknowns = d * block;
        let mut rows: Vec<Mat> = Vec::new();
        let id_m = Mat::identity(p, mm);
        let id_n = Mat::identity(p, nn);
        for i in 0..d {
            for j in 0..d {
                // ρ_n(e_i) C_j + C_i ρ_m(e_j) − Σ_k c_ijk C_k = 0
                let mut row = Mat::zeros(p, block, unknowns);
                let t1 = id_m.kron(&n.action[i]); // acts on vec(C_j)
                let t2 = m.action[j].transpose().kron(&id_n); // on vec(C_i)
                add_block(&mut row, &t1, j * block);
                add_block(&mut row, &t2, i * block);
                for k in 0..d {
                    let c = self.alg.structure_constant(i, j, k);
                    if c != 0 {
                        let neg = Mat::identity(p, block).scale(p - (c % p)).clone();
                        add_block(&mut row, &neg, k * block);
                    }
                }
                rows.push(row);
            }
        }
        // unit acts as identity: Σ_i unit_i C_i = 0
        {
            let mut row = Mat::zeros(p, block, unknowns);
            for (i, &u) in self.alg.unit().iter().enumerate() {
                if u % p != 0 {
                    let sc = Mat::identity(p, block).scale(u);
                    add_block(&mut row, &sc, i * block);
                }
            }
            rows.push(row);
        }
        let refs: Vec<&Mat> = rows.iter().collect();
        let system = Mat::vstack_all(p, unknowns, &refs)?;
        let z_dim = unknowns - system.rank();
        // coboundary map B ↦ (ρ_n(e_i) B − B ρ_m(e_i))_i
        let mut cob = Mat::zeros(p, unknowns, block);
        for i in 0..d {
            let part = id_m
                .kron(&n.action[i])
                .sub(&m.action[i].transpose().kron(&id_n))?;
            for r in 0..block {
                for c in 0..block {
                    cob.set(i * block + r, c, part.at(r, c));
                }
            }
        }
        let b_dim = cob.rank();
        Ok(z_dim - b_dim)
    }

    /// Lifts `f: X → Y` to the first two stages of resolutions of `X`
    /// and `Y`: returns `(u0, u1)` with `aug_Y ∘ u0 = f ∘ aug_X` and
    /// `d1_Y ∘ u1 = u0 ∘ d1_X`.
    pub fn chain_lift_two(
        &mut self,
        res_x: &Resolution,
        res_y: &Resolution,
        f: &Mat,
    ) -> Result<(Mat, Mat)> {
        let rhs0 = f.mul(&res_x.maps[0])?;
        let u0 = solve_hom(&res_x.stages[0], &res_y.stages[0], &[HomConstraint::Left(&res_y.maps[0], &rhs0)])?
            .ok_or(Error::Unsolvable("chain lift stage 0"))?;
        let rhs1 = u0.mul(&res_x.maps[1])?;
        let u1 = solve_hom(&res_x.stages[1], &res_y.stages[1], &[HomConstraint::Left(&res_y.maps[1], &rhs1)])?
            .ok_or(Error::Unsolvable("chain lift stage 1"))?;
        Ok((u0, u1))
    }
}

fn add_block(row: &mut Mat, block: &Mat, col_offset: usize) {
    let p = row.p();
    for r in 0..block.rows {
        for c in 0..block.cols {
            let v = (row.at(r, col_offset + c) + block.at(r, c)) % p;
            row.set(r, col_offset + c, v);
        }
    }
}

/// A degree-one Ext class: a cocycle on a fixed resolution. Classes from
/// different resolutions must never be mixed; the owner keeps the
/// resolution alongside.
#[derive(Debug, Clone)]
pub struct ExtClass {
    pub degree: usize,
    pub cocycle: Mat,
}

/// An extension `0 → n → middle → m → 0` realized from a class.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub middle: Arc<Module>,
    pub incl: Mat,
    pub onto: Mat,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::module::tests::{proj_a2, simple_a2};
    use crate::algmod::{path_algebra, Algebra};
    use crate::Limits;

    fn ctx(alg: Arc<Algebra>) -> AlgCtx {
        AlgCtx::new(alg, Limits::default())
    }

    fn dual_numbers_simple(alg: &Arc<Algebra>) -> Module {
        Module::new(alg.clone(), 1, vec![Mat::identity(2, 1), Mat::zeros(2, 1, 1)]).unwrap()
    }

    #[test]
    fn resolution_of_zero_module() {
        let alg = Arc::new(Algebra::ground_field(2).unwrap());
        let mut c = ctx(alg.clone());
        let z = Module::zero(alg);
        let res = c.resolution(&z, 3, ResolutionKind::FreeTop).unwrap();
        assert!(res.stages.iter().all(|s| s.dim == 0));
    }

    #[test]
    fn minimal_resolution_of_simple_is_periodic() {
        // F_2[x]/(x^2): minimal resolution of k has all stages of rank 1
        let alg = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        let mut c = ctx(alg.clone());
        let k = dual_numbers_simple(&alg);
        let res = c.resolution(&k, 4, ResolutionKind::MinimalCover).unwrap();
        assert!(res.stages.iter().all(|s| s.dim == 2));
        for i in 1..res.maps.len() {
            assert!(res.maps[i - 1].mul(&res.maps[i]).unwrap().is_zero());
            // exactness by ranks
            let rank_i = res.maps[i].rank();
            let ker_prev = res.stages[i - 1].dim - res.maps[i - 1].rank();
            assert_eq!(rank_i, ker_prev);
        }
    }

    #[test]
    fn ext_of_projective_vanishes() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let p1 = proj_a2(&alg);
        let s0 = simple_a2(&alg, 0);
        for i in 1..=3 {
            assert_eq!(c.ext_dim(&p1, &s0, i, ResolutionKind::FreeTop).unwrap(), 0);
        }
    }

    #[test]
    fn ext_one_of_simples_counts_arrows() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s0 = simple_a2(&alg, 0);
        let s1 = simple_a2(&alg, 1);
        // one arrow 0 → 1: Ext^1(S0, S1) = k, Ext^1(S1, S0) = 0
        assert_eq!(c.ext_dim(&s0, &s1, 1, ResolutionKind::MinimalCover).unwrap(), 1);
        assert_eq!(c.ext_dim(&s1, &s0, 1, ResolutionKind::MinimalCover).unwrap(), 0);
    }

    #[test]
    fn ext_periodic_over_dual_numbers() {
        let alg = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        let mut c = ctx(alg.clone());
        let k = dual_numbers_simple(&alg);
        for i in 0..=3 {
            assert_eq!(c.ext_dim(&k, &k, i, ResolutionKind::MinimalCover).unwrap(), 1);
        }
    }

    #[test]
    fn resolution_kinds_agree_on_ext() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let mods = [simple_a2(&alg, 0), simple_a2(&alg, 1), proj_a2(&alg), Module::regular(alg.clone())];
        for m in &mods {
            for n in &mods {
                for i in 0..=2 {
                    let a = c.ext_dim(m, n, i, ResolutionKind::FreeTop).unwrap();
                    let b = c.ext_dim(m, n, i, ResolutionKind::MinimalCover).unwrap();
                    assert_eq!(a, b, "ext^{} mismatch between resolution kinds", i);
                }
            }
        }
    }

    #[test]
    fn cocycle_oracle_agrees_with_resolutions() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let mods = [simple_a2(&alg, 0), simple_a2(&alg, 1), proj_a2(&alg)];
        for m in &mods {
            for n in &mods {
                let by_res = c.ext_dim(m, n, 1, ResolutionKind::MinimalCover).unwrap();
                let by_cocycles = c.ext1_dim_by_cocycles(m, n).unwrap();
                assert_eq!(by_res, by_cocycles);
            }
        }
        let dn = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        let mut c2 = ctx(dn.clone());
        let k = dual_numbers_simple(&dn);
        assert_eq!(c2.ext1_dim_by_cocycles(&k, &k).unwrap(), 1);
    }

    #[test]
    fn zero_class_gives_split_extension() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s0 = simple_a2(&alg, 0);
        let s1 = simple_a2(&alg, 1);
        let res = c.resolution(&s0, 3, ResolutionKind::MinimalCover).unwrap();
        let z = Mat::zeros(2, 1, res.stages[1].dim);
        let ext = c.extension_from_class(&res, &s1, &z).unwrap();
        assert_eq!(ext.middle.dim, 2);
        // split: the inclusion has a retraction
        let id = Mat::identity(2, 1);
        let retr = solve_hom(&ext.middle, &s1, &[HomConstraint::Right(&ext.incl, &id)]).unwrap();
        assert!(retr.is_some());
    }

    #[test]
    fn generator_class_gives_projective_middle() {
        // the nonsplit extension of S0 by S1 over A2 is the projective P0
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s0 = simple_a2(&alg, 0);
        let s1 = simple_a2(&alg, 1);
        let (classes, res) = c.ext_basis(&s0, &s1, 1, ResolutionKind::MinimalCover).unwrap();
        assert_eq!(classes.len(), 1);
        let ext = c.extension_from_class(&res, &s1, &classes[0].cocycle).unwrap();
        assert_eq!(ext.middle.dim, 2);
        assert!(c.is_projective(&ext.middle).unwrap());
        // the Yoneda class maps back to the cocycle (up to coboundary; here
        // we check it reproduces a nonzero class)
        let back = c
            .class_of_extension(&res, &ext.incl, &ext.middle, &ext.onto)
            .unwrap();
        assert!(!back.is_zero());
    }

    #[test]
    fn scaled_class_gives_isomorphic_middle() {
        // over F_3 scaling a class by a unit keeps the middle isomorphic
        let alg = Arc::new(path_algebra(3, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let p = 3;
        let s0 = {
            let mut action = vec![Mat::zeros(p, 1, 1); 3];
            action[0] = Mat::identity(p, 1);
            Module::new(alg.clone(), 1, action).unwrap()
        };
        let s1 = {
            let mut action = vec![Mat::zeros(p, 1, 1); 3];
            action[1] = Mat::identity(p, 1);
            Module::new(alg.clone(), 1, action).unwrap()
        };
        let (classes, res) = c.ext_basis(&s0, &s1, 1, ResolutionKind::MinimalCover).unwrap();
        let e1 = c.extension_from_class(&res, &s1, &classes[0].cocycle).unwrap();
        let e2 = c
            .extension_from_class(&res, &s1, &classes[0].cocycle.scale(2))
            .unwrap();
        // explicit isomorphism between the middles
        let homs = hom_basis(&e1.middle, &e2.middle).unwrap();
        let found = (0..p.pow(homs.len() as u32)).any(|code| {
            let mut acc = Mat::zeros(p, e2.middle.dim, e1.middle.dim);
            let mut cc = code;
            for h in &homs {
                let coeff = cc % p;
                cc /= p;
                if coeff != 0 {
                    acc = acc.add(&h.scale(coeff)).unwrap();
                }
            }
            acc.rank() == e1.middle.dim
        });
        assert!(found, "no isomorphism between scaled extension middles");
    }

    #[test]
    fn tor_of_free_vanishes() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let op = Arc::new(alg.opposite());
        let m_right = Module::regular(alg.clone()).dual(op).unwrap();
        let free = Module::regular(alg.clone());
        for i in 1..=2 {
            assert_eq!(c.tor_dim(&m_right, &free, i, ResolutionKind::MinimalCover).unwrap(), 0);
        }
    }

    #[test]
    fn tor_periodic_over_dual_numbers() {
        let alg = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        let mut c = ctx(alg.clone());
        let k = dual_numbers_simple(&alg);
        let k_right = Module { alg: Arc::new(alg.opposite()), dim: 1, action: k.action.clone() };
        assert_eq!(c.tor_dim(&k_right, &k, 1, ResolutionKind::MinimalCover).unwrap(), 1);
        assert_eq!(c.tor_dim(&k_right, &k, 2, ResolutionKind::MinimalCover).unwrap(), 1);
    }

    #[test]
    fn universal_extension_kills_ext() {
        // A2 with t = S0: Ext^1(S0, S1) = k; the universal extension of S1
        // has middle P0 and Ext^1(S0, middle) = 0
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s0 = simple_a2(&alg, 0);
        let s1 = simple_a2(&alg, 1);
        let ue = c
            .universal_extension(&s1, &s0, ResolutionKind::MinimalCover)
            .unwrap()
            .unwrap();
        assert_eq!(ue.copies, 1);
        assert_eq!(ue.middle.dim, 2);
        assert_eq!(c.ext_dim(&s0, &ue.middle, 1, ResolutionKind::MinimalCover).unwrap(), 0);
    }
}
