//! Projective covers, injective envelopes and projectivity tests.
//!
//! Covers are built classically: lift primitive orthogonal idempotents
//! from the semisimple quotient, split the top of the module into
//! corner pieces, and map one indecomposable projective per corner
//! generator. Minimality (`ker ⊆ rad`) is asserted on every cover.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{quotient, Mat};
use crate::{Error, Limits, Result};

use super::hom::{solve_hom, HomConstraint};
use super::radical::module_radical;
use super::{AlgCtx, Algebra, Module};

/// A projective (pre)cover `source → target`; minimal by construction.
#[derive(Debug, Clone)]
pub struct Cover {
    pub source: Arc<Module>,
    pub map: Mat,
}

/// An injective embedding `m → target` with `target` injective; minimal
/// (an envelope) because it is the dual of a projective cover.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub target: Arc<Module>,
    pub emb: Mat,
}

/// Lifts a complete set of primitive orthogonal idempotents from `A/rad`.
pub fn primitive_idempotents(
    alg: &Arc<Algebra>,
    rad: &Mat,
    limits: &Limits,
) -> Result<Vec<Vec<u64>>> {
    let p = alg.p();
    let d = alg.dim();
    if rad.cols == d {
        return Err(Error::InvalidAlgebra(alloc::string::String::from(
            "radical is everything; no unit",
        )));
    }
    let q = quotient(p, d, rad)?;
    let bar = quotient_algebra(alg, &q.proj, &q.sect)?;
    let bar_arc = Arc::new(bar);
    // decompose the semisimple regular module into simple left ideals
    let regular = Module::regular(bar_arc.clone());
    let ideals = decompose_semisimple(&regular, limits)?;
    // components of the unit along the decomposition
    let refs: Vec<&Mat> = ideals.iter().collect();
    let stacked = Mat::hstack_all(p, regular.dim, &refs)?;
    let unit_bar = Mat::col_vec(p, &q.proj.apply_to_col(alg.unit())?);
    let coords = stacked
        .solve(&unit_bar)?
        .ok_or(Error::Internal("unit not in span of left ideals"))?;
    let mut fs: Vec<Vec<u64>> = Vec::new();
    let mut offset = 0usize;
    for ideal in &ideals {
        let mut f = vec![0u64; regular.dim];
        for j in 0..ideal.cols {
            let c = coords.at(offset + j, 0);
            for r in 0..regular.dim {
                f[r] = (f[r] + c * ideal.at(r, j)) % p;
            }
        }
        offset += ideal.cols;
        fs.push(f);
    }
    // nilpotency exponent: smallest p^k ≥ dim bounds rad^k = 0
    let mut pk = 1u64;
    let mut reps = 0u32;
    while pk < d as u64 {
        pk *= p;
        reps += 1;
    }
    let fp = alg.field();
    let one: Vec<u64> = alg.unit().to_vec();
    let mut lifted: Vec<Vec<u64>> = Vec::new();
    let mut partial = vec![0u64; d];
    for f in &fs {
        let a0 = q.sect.apply_to_col(f)?;
        // corner correction (1 - s) a (1 - s) keeps orthogonality
        let mut corner = vec![0u64; d];
        let one_minus_s: Vec<u64> =
            one.iter().zip(&partial).map(|(&u, &s)| fp.sub(u, s)).collect();
        let t1 = alg.mul_vec(&one_minus_s, &a0);
        let t2 = alg.mul_vec(&t1, &one_minus_s);
        corner.copy_from_slice(&t2);
        // e := corner^(p^k) is idempotent since corner^2 - corner ∈ rad
        let mut e = corner;
        for _ in 0..reps {
            let mut acc = e.clone();
            for _ in 1..p {
                acc = alg.mul_vec(&acc, &e);
            }
            e = acc;
        }
        let e2 = alg.mul_vec(&e, &e);
        if e2 != e {
            return Err(Error::Internal("idempotent lifting failed"));
        }
        partial = partial
            .iter()
            .zip(&e)
            .map(|(&s, &x)| fp.add(s, x))
            .collect();
        lifted.push(e);
    }
    if partial != one {
        return Err(Error::Internal("lifted idempotents do not sum to 1"));
    }
    Ok(lifted)
}

/// Structure constants of `A/I` along a fixed projection/section pair.
fn quotient_algebra(alg: &Algebra, proj: &Mat, sect: &Mat) -> Result<Algebra> {
    let p = alg.p();
    let dbar = proj.rows;
    let mut table = vec![0u64; dbar * dbar * dbar];
    for i in 0..dbar {
        let ei = sect.col(i);
        for j in 0..dbar {
            let ej = sect.col(j);
            let prod = proj.apply_to_col(&alg.mul_vec(&ei, &ej))?;
            for k in 0..dbar {
                table[(i * dbar + j) * dbar + k] = prod[k];
            }
        }
    }
    let unit = proj.apply_to_col(alg.unit())?;
    Algebra::new(p, dbar, table, unit)
}

/// Splits a semisimple module into simple submodules (inclusion columns).
fn decompose_semisimple(m: &Module, limits: &Limits) -> Result<Vec<Mat>> {
    if m.dim == 0 {
        return Ok(Vec::new());
    }
    match super::radical::proper_submodule(m, limits)? {
        None => Ok(vec![Mat::identity(m.p(), m.dim)]),
        Some(incl) => {
            let sub = m.submodule(&incl)?;
            // semisimple: a module-hom projection onto the submodule exists
            let id = Mat::identity(m.p(), incl.cols);
            let pi = solve_hom(m, &sub, &[HomConstraint::Right(&incl, &id)])?
                .ok_or(Error::Internal("no complement in semisimple module"))?;
            let compl_incl = pi.kernel_basis();
            let compl = m.submodule(&compl_incl)?;
            let mut parts = Vec::new();
            for part in decompose_semisimple(&sub, limits)? {
                parts.push(incl.mul(&part)?);
            }
            for part in decompose_semisimple(&compl, limits)? {
                parts.push(compl_incl.mul(&part)?);
            }
            Ok(parts)
        }
    }
}

impl AlgCtx {
    /// Minimal projective cover of `m`.
    pub fn projective_cover(&mut self, m: &Module) -> Result<Arc<Cover>> {
        let key = m.fingerprint();
        if let Some(c) = self.covers.get(&key) {
            return Ok(c.clone());
        }
        let cover = self.build_cover(m)?;
        let arc = Arc::new(cover);
        self.covers.insert(key, arc.clone());
        Ok(arc)
    }

    fn build_cover(&mut self, m: &Module) -> Result<Cover> {
        let p = self.p();
        let alg = self.alg.clone();
        if m.dim == 0 {
            return Ok(Cover {
                source: Arc::new(Module::zero(alg)),
                map: Mat::zeros(p, 0, 0),
            });
        }
        let rad = self.radical()?;
        let idems = self.primitive_idempotents()?;
        let rad_m = module_radical(m, &rad)?;
        let q = quotient(p, m.dim, &rad_m)?;
        let top_dim = q.proj.rows;
        // A acts on the top through the quotient
        let top_act = |x: &[u64]| -> Result<Mat> {
            q.proj.mul(&m.act_by(x)?.mul(&q.sect)?)
        };
        let regular = Module::regular(alg.clone());
        let mut sources: Vec<Module> = Vec::new();
        let mut blocks: Vec<Mat> = Vec::new();
        for e in idems.iter() {
            let e_on_top = top_act(e)?;
            let corner_part = e_on_top.column_space_basis();
            if corner_part.cols == 0 {
                continue;
            }
            // corner division algebra e·(A/rad)·e acting on e·top
            let corner_ops = corner_operators(&alg, &rad, e, &top_act)?;
            let gens = corner_basis(&corner_part, &corner_ops, top_dim, p)?;
            // the summand A·e of the regular module
            let incl_ae = alg.right_mult(e).column_space_basis();
            let ae = regular.submodule(&incl_ae)?;
            for gtop in gens {
                // lift the top generator into e·m
                let lifted = m.act_by(e)?.mul(&q.sect.mul(&Mat::col_vec(p, &gtop))?)?;
                // map A·e → m, w ↦ w · v
                let mut block = Mat::zeros(p, m.dim, ae.dim);
                for s in 0..ae.dim {
                    let w = incl_ae.col(s);
                    let img = m.act_by(&w)?.mul(&lifted)?;
                    for r in 0..m.dim {
                        block.set(r, s, img.at(r, 0));
                    }
                }
                sources.push(ae.clone());
                blocks.push(block);
            }
        }
        let (source, map) = if sources.is_empty() {
            (Module::zero(alg), Mat::zeros(p, m.dim, 0))
        } else {
            let refs: Vec<&Module> = sources.iter().collect();
            let sum = Module::direct_sum(&refs)?;
            let brefs: Vec<&Mat> = blocks.iter().collect();
            let map = Mat::hstack_all(p, m.dim, &brefs)?;
            (Arc::try_unwrap(sum.module).unwrap_or_else(|a| (*a).clone()), map)
        };
        self.limits.check_dim(source.dim)?;
        // minimality: epi with kernel inside rad·source
        if map.rank() != m.dim {
            return Err(Error::Internal("projective cover map not surjective"));
        }
        let ker = map.kernel_basis();
        let rad_src = module_radical(&source, &rad)?;
        if !rad_src.spans(&ker) {
            return Err(Error::Internal("projective cover not minimal"));
        }
        Ok(Cover { source: Arc::new(source), map })
    }

    /// Tests whether the projective cover splits.
    pub fn is_projective(&mut self, m: &Module) -> Result<bool> {
        if m.dim == 0 {
            return Ok(true);
        }
        let cover = self.projective_cover(m)?;
        let id = Mat::identity(self.p(), m.dim);
        let sect = solve_hom(m, &cover.source, &[HomConstraint::Left(&cover.map, &id)])?;
        Ok(sect.is_some())
    }

    /// Injective envelope: the dual of the projective cover of the dual.
    pub fn injective_envelope(&mut self, m: &Module) -> Result<Envelope> {
        let alg = self.alg.clone();
        let op_alg = self.opposite();
        let md = m.dual(op_alg)?;
        let cover = self.op_ctx().projective_cover(&md)?;
        let target = cover.source.dual(alg)?;
        Ok(Envelope { target: Arc::new(target), emb: cover.map.transpose() })
    }

    /// Injectivity via duality: `m` is injective iff `D(m)` is projective.
    pub fn is_injective(&mut self, m: &Module) -> Result<bool> {
        let op_alg = self.opposite();
        let md = m.dual(op_alg)?;
        self.op_ctx().is_projective(&md)
    }
}

fn corner_operators(
    alg: &Arc<Algebra>,
    rad: &Mat,
    e: &[u64],
    top_act: &impl Fn(&[u64]) -> Result<Mat>,
) -> Result<Vec<Mat>> {
    // operators on the top coming from e·A·e (spanning the corner algebra
    // of A/rad up to radical terms, which act as zero on the top)
    let _ = rad;
    let mut ops = Vec::new();
    for i in 0..alg.dim() {
        let exe = alg.mul_vec(e, &alg.mul_vec(&alg.basis_vec(i), e));
        ops.push(top_act(&exe)?);
    }
    Ok(ops)
}

/// Greedy basis of a corner piece of the top over the corner division
/// algebra: picks vectors not yet in the D-span of the chosen ones.
fn corner_basis(
    corner_part: &Mat,
    corner_ops: &[Mat],
    top_dim: usize,
    p: u64,
) -> Result<Vec<Vec<u64>>> {
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    let mut d_span = Mat::zeros(p, top_dim, 0);
    for j in 0..corner_part.cols {
        let v = corner_part.col(j);
        let vm = Mat::col_vec(p, &v);
        if d_span.cols > 0 && d_span.spans(&vm) {
            continue;
        }
        // extend the D-span by D·v
        let mut cols: Vec<Mat> = vec![d_span.clone(), vm.clone()];
        for op in corner_ops {
            cols.push(op.mul(&vm)?);
        }
        let refs: Vec<&Mat> = cols.iter().collect();
        d_span = Mat::hstack_all(p, top_dim, &refs)?.column_space_basis();
        chosen.push(v);
    }
    Ok(chosen)
}

/// Whether the algebra is local: every element of `A/rad` is zero or
/// invertible. Used for indecomposability checks via endomorphism rings.
pub fn is_local_algebra(alg: &Arc<Algebra>, limits: &Limits) -> Result<bool> {
    let rad = super::radical::radical_of_algebra(alg, limits)?;
    let p = alg.p();
    let d = alg.dim();
    let q = quotient(p, d, &rad)?;
    let bar = Arc::new(quotient_algebra(alg, &q.proj, &q.sect)?);
    let dbar = bar.dim();
    let mut count = 1u64;
    for _ in 0..dbar {
        count = count.saturating_mul(p);
        if count > limits.max_enum {
            return Err(Error::EnumerationTooLarge);
        }
    }
    for code in 1..count {
        let mut x = vec![0u64; dbar];
        let mut c = code;
        for coord in x.iter_mut() {
            *coord = c % p;
            c /= p;
        }
        if bar.left_mult(&x).inverse().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::module::tests::{proj_a2, simple_a2};
    use crate::algmod::{path_algebra, Algebra};

    fn ctx(alg: Arc<Algebra>) -> AlgCtx {
        AlgCtx::new(alg, Limits::default())
    }

    #[test]
    fn cover_of_free_module_is_identity_sized() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let reg = Module::regular(alg);
        let cover = c.projective_cover(&reg).unwrap();
        assert_eq!(cover.source.dim, reg.dim);
        assert!(c.is_projective(&reg).unwrap());
    }

    #[test]
    fn cover_of_simple_over_dual_numbers_is_regular() {
        let alg = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        let mut c = ctx(alg.clone());
        let simple = Module::new(
            alg,
            1,
            alloc::vec![Mat::identity(2, 1), Mat::zeros(2, 1, 1)],
        )
        .unwrap();
        let cover = c.projective_cover(&simple).unwrap();
        assert_eq!(cover.source.dim, 2);
        assert!(!c.is_projective(&simple).unwrap());
    }

    #[test]
    fn cover_of_s1_over_a2_is_one_dimensional() {
        // S at the sink vertex is projective with cover of dim 1
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s1 = simple_a2(&alg, 1);
        let cover = c.projective_cover(&s1).unwrap();
        assert_eq!(cover.source.dim, 1);
        assert!(c.is_projective(&s1).unwrap());
    }

    #[test]
    fn cover_of_s0_over_a2_is_p0() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s0 = simple_a2(&alg, 0);
        let cover = c.projective_cover(&s0).unwrap();
        assert_eq!(cover.source.dim, 2);
        assert!(!c.is_projective(&s0).unwrap());
    }

    #[test]
    fn envelope_of_sink_simple_is_the_big_injective() {
        // over A2 (arrow 0 → 1) the source simple S0 is injective; the
        // sink simple S1 has the dim-2 projective-injective as envelope
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let s0 = simple_a2(&alg, 0);
        let s1 = simple_a2(&alg, 1);
        assert!(c.is_injective(&s0).unwrap());
        assert!(!c.is_injective(&s1).unwrap());
        let env = c.injective_envelope(&s1).unwrap();
        assert_eq!(env.target.dim, 2);
        assert_eq!(env.emb.rank(), 1);
        assert!(c.is_injective(&env.target).unwrap());
        // envelopes of injectives are identities up to iso
        let env0 = c.injective_envelope(&s0).unwrap();
        assert_eq!(env0.target.dim, 1);
    }

    #[test]
    fn dual_of_projective_is_injective() {
        let alg = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        let mut c = ctx(alg.clone());
        let p1 = proj_a2(&alg);
        assert!(c.is_projective(&p1).unwrap());
        let dual = p1.dual(c.opposite()).unwrap();
        let mut op_ctx = ctx(c.opposite());
        assert!(op_ctx.is_injective(&dual).unwrap());
    }

    #[test]
    fn idempotents_of_matrix_algebra() {
        // M_2(F_2): two primitive idempotents E11, E22 (up to conjugacy)
        let p = 2;
        let mut table = alloc::vec![0u64; 64];
        let idx = |a: usize, b: usize| a * 2 + b;
        for a in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    for d in 0..2 {
                        if b == cc {
                            table[(idx(a, b) * 4 + idx(cc, d)) * 4 + idx(a, d)] = 1;
                        }
                    }
                }
            }
        }
        let alg = Arc::new(Algebra::new(p, 4, table, alloc::vec![1, 0, 0, 1]).unwrap());
        let mut c = ctx(alg);
        let idems = c.primitive_idempotents().unwrap();
        assert_eq!(idems.len(), 2);
    }

    #[test]
    fn local_algebra_detection() {
        let dual_numbers = Arc::new(Algebra::truncated_polynomial(2, 2).unwrap());
        assert!(is_local_algebra(&dual_numbers, &Limits::default()).unwrap());
        let a2 = Arc::new(path_algebra(2, 2, &[(0, 1)]).unwrap());
        assert!(!is_local_algebra(&a2, &Limits::default()).unwrap());
    }
}
