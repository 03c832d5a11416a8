//! End-to-end exercise of the functor on the APR-tilt instance:
//! `A` the path algebra of the two-vertex quiver, `T = P(0) ⊕ S(0)` with
//! its natural right action of `B = End(T)^op`, the cotorsion pair
//! `(mod A, add T)`, and all six indecomposable `T(A)`-modules.

use std::sync::Arc;

use wakkit_core::algmod::{
    endo_algebra, is_local_algebra, path_algebra, Bimodule, Module, ResolutionKind,
};
use wakkit_core::choice::Chooser;
use wakkit_core::cotorsion::{CotorsionBackend, SesMorphism};
use wakkit_core::exactlin::Mat;
use wakkit_core::trivext::{module_to_pair, PairModule, TrivExt};
use wakkit_core::wakfun::{
    check_faithful_balance, check_good_conditions, find_isomorphism, rigidity_defects,
    stably_isomorphic, PairSes, WakamatsuFunctor,
};
use wakkit_core::Limits;

const P: u64 = 2;

fn m(rows: usize, cols: usize, e: &[u64]) -> Mat {
    Mat::from_entries(P, rows, cols, e).unwrap()
}

struct Instance {
    f: WakamatsuFunctor,
    backend_b: CotorsionBackend,
    /// indecomposable pairs over T(A): s0, s1, m0, m1, p0, p1
    pairs: Vec<Arc<PairModule>>,
    /// non-projective indecomposable T(B)-modules
    b_side: Vec<Arc<Module>>,
    /// A-side modules: s0, s1, p0, t
    a_mods: Vec<Arc<Module>>,
}

fn ta_module(te: &TrivExt, dim: usize, mats: [Mat; 6]) -> Arc<PairModule> {
    let module = Module::new(te.total.clone(), dim, mats.to_vec()).unwrap();
    Arc::new(module_to_pair(te, &module).unwrap())
}

fn instance() -> Instance {
    let a = Arc::new(path_algebra(P, 2, &[(0, 1)]).unwrap());
    let b = Arc::new(path_algebra(P, 2, &[(1, 0)]).unwrap());
    // T = P(0) ⊕ S(0), basis u1 = top of P(0), u2 = arrow part, u3 = S(0)
    let left = vec![
        m(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]),
        m(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 0]),
        m(3, 3, &[0, 0, 0, 1, 0, 0, 0, 0, 0]),
    ];
    let right = vec![
        m(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
        m(3, 3, &[0, 0, 0, 0, 0, 0, 0, 0, 1]),
        m(3, 3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]),
    ];
    let t = Bimodule::new(a.clone(), b.clone(), 3, left, right).unwrap();
    // T's summands as left modules
    let p0 = Arc::new(
        Module::new(
            a.clone(),
            2,
            vec![
                m(2, 2, &[1, 0, 0, 0]),
                m(2, 2, &[0, 0, 0, 1]),
                m(2, 2, &[0, 0, 1, 0]),
            ],
        )
        .unwrap(),
    );
    let s0 = Arc::new(
        Module::new(
            a.clone(),
            1,
            vec![m(1, 1, &[1]), m(1, 1, &[0]), m(1, 1, &[0])],
        )
        .unwrap(),
    );
    let s1 = Arc::new(
        Module::new(
            a.clone(),
            1,
            vec![m(1, 1, &[0]), m(1, 1, &[1]), m(1, 1, &[0])],
        )
        .unwrap(),
    );
    let t_left = Arc::new(t.as_left_module());
    let backend = CotorsionBackend::classical_tilting(t_left.clone(), vec![p0.clone(), s0.clone()], 6);
    let f = WakamatsuFunctor::new(t, backend, Limits::default()).unwrap();
    // the B-side pair (proj B, mod B); its intersection class is DT ≅ B
    let dt_left = Arc::new(f.dt.as_left_module());
    let backend_b = CotorsionBackend::classical_tilting(dt_left, vec![], 6);

    let te = f.te_a.clone();
    let zero1 = m(1, 1, &[0]);
    let one1 = m(1, 1, &[1]);
    let s0t = ta_module(
        &te,
        1,
        [one1.clone(), zero1.clone(), zero1.clone(), zero1.clone(), zero1.clone(), zero1.clone()],
    );
    let s1t = ta_module(
        &te,
        1,
        [zero1.clone(), one1.clone(), zero1.clone(), zero1.clone(), zero1.clone(), zero1.clone()],
    );
    let z2 = m(2, 2, &[0, 0, 0, 0]);
    let m0t = ta_module(
        &te,
        2,
        [
            m(2, 2, &[1, 0, 0, 0]),
            m(2, 2, &[0, 0, 0, 1]),
            m(2, 2, &[0, 0, 1, 0]),
            z2.clone(),
            z2.clone(),
            z2.clone(),
        ],
    );
    let m1t = ta_module(
        &te,
        2,
        [
            m(2, 2, &[0, 0, 0, 1]),
            m(2, 2, &[1, 0, 0, 0]),
            z2.clone(),
            z2.clone(),
            z2.clone(),
            m(2, 2, &[0, 0, 1, 0]),
        ],
    );
    let z3 = m(3, 3, &[0; 9]);
    let p0t = ta_module(
        &te,
        3,
        [
            m(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]),
            m(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 0]),
            m(3, 3, &[0, 0, 0, 1, 0, 0, 0, 0, 0]),
            m(3, 3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]),
            z3.clone(),
            m(3, 3, &[0, 0, 0, 0, 0, 0, 0, 1, 0]),
        ],
    );
    let p1t = ta_module(
        &te,
        3,
        [
            m(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 0]),
            m(3, 3, &[1, 0, 0, 0, 0, 0, 0, 0, 1]),
            m(3, 3, &[0, 0, 0, 0, 0, 0, 0, 1, 0]),
            z3.clone(),
            m(3, 3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]),
            m(3, 3, &[0, 0, 0, 1, 0, 0, 0, 0, 0]),
        ],
    );
    // T(B)-side non-projective indecomposables, over the basis
    // (g1, g2, arrow, duals)
    let teb = f.te_b.clone();
    let mk_b = |dim: usize, mats: Vec<Mat>| -> Arc<Module> {
        Arc::new(Module::new(teb.total.clone(), dim, mats).unwrap())
    };
    let u0t = mk_b(
        1,
        vec![one1.clone(), zero1.clone(), zero1.clone(), zero1.clone(), zero1.clone(), zero1.clone()],
    );
    let u1t = mk_b(
        1,
        vec![zero1.clone(), one1.clone(), zero1.clone(), zero1.clone(), zero1.clone(), zero1.clone()],
    );
    let n0t = mk_b(
        2,
        vec![
            m(2, 2, &[1, 0, 0, 0]),
            m(2, 2, &[0, 0, 0, 1]),
            z2.clone(),
            z2.clone(),
            z2.clone(),
            m(2, 2, &[0, 0, 1, 0]),
        ],
    );
    let n1t = mk_b(
        2,
        vec![
            m(2, 2, &[0, 0, 0, 1]),
            m(2, 2, &[1, 0, 0, 0]),
            m(2, 2, &[0, 0, 1, 0]),
            z2.clone(),
            z2.clone(),
            z2.clone(),
        ],
    );
    Instance {
        f,
        backend_b,
        pairs: vec![s0t, s1t, m0t, m1t, p0t, p1t],
        b_side: vec![u0t, u1t, n0t, n1t],
        a_mods: vec![s0, s1, p0, t_left],
    }
}

#[test]
fn pairs_validate_and_are_indecomposable() {
    let inst = instance();
    let te = &inst.f.te_a;
    for pair in &inst.pairs {
        assert!(pair.square_zero_witness(te).unwrap().is_none());
        let module = wakkit_core::trivext::pair_to_module(te, pair).unwrap();
        let (endo, _) = endo_algebra(&module).unwrap();
        assert!(is_local_algebra(&Arc::new(endo), &Limits::default()).unwrap());
    }
    for bm in &inst.b_side {
        let (endo, _) = endo_algebra(bm).unwrap();
        assert!(is_local_algebra(&Arc::new(endo), &Limits::default()).unwrap());
    }
}

#[test]
fn bimodule_is_faithfully_balanced_and_rigid() {
    let mut inst = instance();
    let report = check_faithful_balance(&mut inst.f.ctx_b, &inst.f.t).unwrap();
    assert_eq!(report.end_over_bop_dim, 3);
    assert_eq!(report.end_over_a_dim, 3);
    assert!(report.left_map_bijective);
    assert!(report.right_map_bijective);
    let defects = rigidity_defects(&mut inst.f.ctx_a, &mut inst.f.ctx_b, &inst.f.t.clone(), 6).unwrap();
    assert!(defects.is_empty());
}

#[test]
fn backend_is_valid_and_preenvelopes_match_hand_computation() {
    let mut inst = instance();
    let backend = inst.f.backend.clone();
    assert!(backend.validate(&mut inst.f.ctx_a).is_ok());
    // the sink simple has 0 → S1 → P0 → S0 → 0 as its preenvelope
    let s1 = inst.a_mods[1].clone();
    let pre = inst.f.fixed_preenvelope(&s1).unwrap();
    assert_eq!(pre.v.dim, 2);
    assert_eq!(pre.w.dim, 1);
}

#[test]
fn tor_ext_duality_on_samples() {
    let mut inst = instance();
    let op_a = inst.f.ctx_a.opposite();
    let dt_right = inst.f.dt.as_right_module(op_a);
    let t_left = inst.f.t_left.clone();
    for mref in &inst.a_mods {
        for i in 1..=2 {
            let tor = inst
                .f
                .ctx_a
                .tor_dim(&dt_right, mref, i, ResolutionKind::MinimalCover)
                .unwrap();
            let ext = inst
                .f
                .ctx_a
                .ext_dim(mref, &t_left, i, ResolutionKind::MinimalCover)
                .unwrap();
            assert_eq!(tor, ext, "Tor/Ext duality at degree {}", i);
        }
    }
}

#[test]
fn column_module_of_t_is_the_regular_module() {
    let mut inst = instance();
    let t_left = inst.f.t_left.clone();
    let col = inst.f.column_module(&t_left).unwrap();
    assert_eq!(col.module.dim, 6);
    let reg = Module::regular(inst.f.te_b.total.clone());
    let iso = find_isomorphism(&col.module, &reg, &Limits::default()).unwrap();
    assert!(iso.is_some(), "L(T) must be isomorphic to the regular T(B)-module");
}

#[test]
fn functor_kills_projectives() {
    let mut inst = instance();
    for pair in &inst.pairs[4..6] {
        let s = inst.f.s_of(pair).unwrap();
        assert!(inst.f.stable_b.ctx.is_projective(&s.module).unwrap());
    }
}

#[test]
fn images_of_nonprojectives_are_nonzero_stably() {
    let mut inst = instance();
    for pair in &inst.pairs[0..4] {
        let s = inst.f.s_of(pair).unwrap();
        assert!(!inst.f.stable_b.ctx.is_projective(&s.module).unwrap());
    }
}

fn pair_ses_list(inst: &Instance) -> Vec<PairSes> {
    let s0t = inst.pairs[0].clone();
    let s1t = inst.pairs[1].clone();
    let m0t = inst.pairs[2].clone();
    let m1t = inst.pairs[3].clone();
    let p0t = inst.pairs[4].clone();
    let p1t = inst.pairs[5].clone();
    let mut out = Vec::new();
    // 0 → S0 → P0 → M0/soc with soc = dual-part coordinate 3
    out.push(PairSes {
        x1: s0t.clone(),
        x2: p0t.clone(),
        x3: m0t.clone(),
        f: m(3, 1, &[0, 0, 1]),
        g: m(2, 3, &[1, 0, 0, 0, 1, 0]),
    });
    // 0 → S1 → P1 → M1 → 0
    out.push(PairSes {
        x1: s1t.clone(),
        x2: p1t.clone(),
        x3: m1t.clone(),
        f: m(3, 1, &[0, 0, 1]),
        g: m(2, 3, &[1, 0, 0, 0, 1, 0]),
    });
    // 0 → M1 → P0 → S0 → 0 (radical inclusion)
    out.push(PairSes {
        x1: m1t.clone(),
        x2: p0t.clone(),
        x3: s0t.clone(),
        f: m(3, 2, &[0, 0, 1, 0, 0, 1]),
        g: m(1, 3, &[1, 0, 0]),
    });
    // 0 → M0 → P1 → S1 → 0
    out.push(PairSes {
        x1: m0t.clone(),
        x2: p1t.clone(),
        x3: s1t.clone(),
        f: m(3, 2, &[0, 0, 1, 0, 0, 1]),
        g: m(1, 3, &[1, 0, 0]),
    });
    // 0 → S1 → M0 → S0 → 0
    out.push(PairSes {
        x1: s1t.clone(),
        x2: m0t.clone(),
        x3: s0t.clone(),
        f: m(2, 1, &[0, 1]),
        g: m(1, 2, &[1, 0]),
    });
    // 0 → S0 → M1 → S1 → 0
    out.push(PairSes {
        x1: s0t.clone(),
        x2: m1t.clone(),
        x3: s1t.clone(),
        f: m(2, 1, &[0, 1]),
        g: m(1, 2, &[1, 0]),
    });
    // split 0 → S0 → S0 ⊕ S1 → S1 → 0: the middle as a pair
    let te = inst.f.te_a.clone();
    let ms0 = wakkit_core::trivext::pair_to_module(&te, &s0t).unwrap();
    let ms1 = wakkit_core::trivext::pair_to_module(&te, &s1t).unwrap();
    let sum = Module::direct_sum(&[&ms0, &ms1]).unwrap();
    let mid = Arc::new(module_to_pair(&te, &sum.module).unwrap());
    out.push(PairSes {
        x1: s0t.clone(),
        x2: mid,
        x3: s1t.clone(),
        f: sum.injections[0].clone(),
        g: sum.projections[1].clone(),
    });
    // AR-type: 0 → M1 → S1 ⊕ P0 → M0 → 0
    let mp0 = wakkit_core::trivext::pair_to_module(&te, &p0t).unwrap();
    let sum2 = Module::direct_sum(&[&ms1, &mp0]).unwrap();
    let mid2 = Arc::new(module_to_pair(&te, &sum2.module).unwrap());
    out.push(PairSes {
        x1: m1t.clone(),
        x2: mid2,
        x3: m0t.clone(),
        f: m(4, 2, &[1, 0, 0, 0, 1, 0, 0, 1]),
        g: m(2, 4, &[0, 1, 0, 0, 1, 0, 1, 0]),
    });
    out
}

#[test]
fn triangles_have_exact_rows_and_choice_independent_connectings() {
    let mut inst = instance();
    let sess = pair_ses_list(&inst);
    assert!(sess.len() >= 8);
    for (i, ses) in sess.iter().enumerate() {
        // validates exactness over T(A) and over A
        ses.underlying(&inst.f.te_a.clone()).unwrap();
        let tri1 = inst.f.s_triangle(ses, &mut Chooser::First).unwrap();
        // image row exactness is checked inside; recompute with seeds
        for seed in [1u64, 5u64] {
            let tri2 = inst.f.s_triangle(ses, &mut Chooser::seeded(seed)).unwrap();
            let idm = SesMorphism {
                a: Mat::identity(P, ses.x1.dim()),
                b: Mat::identity(P, ses.x2.dim()),
                c: Mat::identity(P, ses.x3.dim()),
            };
            let w = inst
                .f
                .naturality_witness(&tri1, &tri2, &idm, &mut Chooser::First)
                .unwrap();
            assert!(w.is_none(), "sequence {} seed {}: connecting depends on choices", i, seed);
        }
    }
}

#[test]
fn split_sequence_has_stably_zero_connecting() {
    let mut inst = instance();
    let sess = pair_ses_list(&inst);
    let split = &sess[6];
    let tri = inst.f.s_triangle(split, &mut Chooser::First).unwrap();
    let s3 = tri.s3.module.clone();
    let sigma = tri.sigma_s1.clone();
    let sh = inst.f.stable_b.stable_hom(&s3, &sigma).unwrap();
    assert!(sh.is_stably_zero(&tri.connecting).unwrap());
}

#[test]
fn naturality_on_a_nonzero_morphism_of_sequences() {
    let mut inst = instance();
    let sess = pair_ses_list(&inst);
    // from 0 → S0 → P0 → M0 → 0 to 0 → S1 → M0 → S0 → 0:
    // b kills the socle of P0, c is the top projection of M0
    let from = &sess[0];
    let to = &sess[4];
    let a = m(1, 1, &[0]);
    let b = m(2, 3, &[1, 0, 0, 0, 1, 0]);
    let c = m(1, 2, &[1, 0]);
    // check it is a morphism of sequences over T(A)
    let (from_ta, _) = from.underlying(&inst.f.te_a.clone()).unwrap();
    let (to_ta, _) = to.underlying(&inst.f.te_a.clone()).unwrap();
    let morphism = SesMorphism { a, b, c };
    morphism.validate(&from_ta, &to_ta).unwrap();
    let tri_from = inst.f.s_triangle(from, &mut Chooser::First).unwrap();
    let tri_to = inst.f.s_triangle(to, &mut Chooser::First).unwrap();
    let w = inst
        .f
        .naturality_witness(&tri_from, &tri_to, &morphism, &mut Chooser::seeded(3))
        .unwrap();
    assert!(w.is_none());
}

#[test]
fn stable_hom_comparison_is_bijective_on_all_pairs() {
    let mut inst = instance();
    let pairs = inst.pairs.clone();
    for x in &pairs {
        for y in &pairs {
            let cmp = inst.f.stable_hom_comparison(x, y).unwrap();
            assert!(cmp.kills_projective_part);
            assert!(
                cmp.bijective,
                "stable hom comparison fails at dims {} x {}: {} vs {}",
                x.dim(),
                y.dim(),
                cmp.source_dim,
                cmp.target_dim
            );
        }
    }
}

#[test]
fn density_on_b_side_indecomposables() {
    let mut inst = instance();
    let pairs = inst.pairs.clone();
    let limits = Limits::default();
    for target in &inst.b_side {
        let mut hit = false;
        for x in &pairs[0..4] {
            let s = inst.f.s_of(x).unwrap();
            let sm = s.module.clone();
            if stably_isomorphic(&mut inst.f.stable_b, &sm, target, &limits).unwrap() {
                hit = true;
                break;
            }
        }
        assert!(hit, "a T(B)-indecomposable of dim {} is not in the image", target.dim);
    }
}

#[test]
fn additivity_of_the_functor() {
    let mut inst = instance();
    let pairs = inst.pairs.clone();
    let w = inst.f.additivity_witness(&pairs[0], &pairs[1]).unwrap();
    assert!(w.is_none());
    let w2 = inst.f.additivity_witness(&pairs[2], &pairs[3]).unwrap();
    assert!(w2.is_none());
}

#[test]
fn canonical_iso_between_presentations() {
    let mut inst = instance();
    // build a second (non-fixed) preenvelope of S1 by composing the fixed
    // one with an extra split summand of T
    let s1 = inst.a_mods[1].clone();
    let pre = inst.f.fixed_preenvelope(&s1).unwrap();
    let t_left = inst.f.t_left.clone();
    let vsum = Module::direct_sum(&[pre.v.as_ref(), t_left.as_ref()]).unwrap();
    let wsum = Module::direct_sum(&[pre.w.as_ref(), t_left.as_ref()]).unwrap();
    let alpha2 = vsum.injections[0].mul(&pre.alpha).unwrap();
    let wproj2 = Mat::block_diag(P, &[&pre.w_proj, &Mat::identity(P, t_left.dim)]);
    let pre2 = Arc::new(wakkit_core::cotorsion::PreenvelopeData {
        alpha: alpha2,
        v: vsum.module.clone(),
        w: wsum.module.clone(),
        w_proj: wproj2,
        rounds: 0,
    });
    let s1t = inst.pairs[1].clone();
    let s_fixed = inst.f.s_of(&s1t).unwrap();
    let s_alt = inst.f.s_object_with(&s1t, pre2, false).unwrap();
    let can = inst.f.canonical_iso(&s_alt, &s_fixed, &mut Chooser::First).unwrap();
    let can_rev = inst.f.canonical_iso(&s_fixed, &s_alt, &mut Chooser::seeded(11)).unwrap();
    // the two composites are stably the identities
    let alt_m = s_alt.module.clone();
    let fix_m = s_fixed.module.clone();
    let sh_alt = inst.f.stable_b.stable_hom(&alt_m, &alt_m).unwrap();
    let sh_fix = inst.f.stable_b.stable_hom(&fix_m, &fix_m).unwrap();
    let comp1 = can_rev.mul(&can).unwrap();
    let comp2 = can.mul(&can_rev).unwrap();
    assert!(sh_alt.stably_equal(&comp1, &Mat::identity(P, alt_m.dim)).unwrap());
    assert!(sh_fix.stably_equal(&comp2, &Mat::identity(P, fix_m.dim)).unwrap());
}

#[test]
fn good_conditions_hold() {
    let mut inst = instance();
    let backend_b = inst.backend_b.clone();
    // validate the B-side backend as well
    assert!(backend_b.validate(&mut inst.f.ctx_b).is_ok());
    let w_samples: Vec<Arc<Module>> = inst.a_mods.clone();
    let v_samples: Vec<Arc<Module>> = vec![
        inst.a_mods[0].clone(), // S0 ∈ add T
        inst.a_mods[2].clone(), // P0
        inst.f.t_left.clone(),
    ];
    let items = check_good_conditions(&mut inst.f, &backend_b, &w_samples, &v_samples).unwrap();
    for item in &items {
        assert!(item.passed, "{} failed: {}", item.name, item.detail);
    }
}

#[test]
fn broken_backend_fails_gw2() {
    let mut inst = instance();
    // drop the S0 summand from V0: the intersection check must fail
    let p0 = inst.a_mods[2].clone();
    let all = Module::direct_sum(&[
        inst.a_mods[0].as_ref(),
        inst.a_mods[1].as_ref(),
        inst.a_mods[2].as_ref(),
    ])
    .unwrap();
    let broken = CotorsionBackend::finite_type(
        inst.f.t_left.clone(),
        vec![],
        Arc::new(all.module.as_ref().clone()),
        vec![inst.a_mods[0].clone(), inst.a_mods[1].clone(), inst.a_mods[2].clone()],
        p0.clone(),
        4,
    );
    let mut f2 = WakamatsuFunctor::new(inst.f.t.clone(), broken, Limits::default()).unwrap();
    let backend_b = inst.backend_b.clone();
    let items = check_good_conditions(&mut f2, &backend_b, &inst.a_mods, &[p0]).unwrap();
    let gw2 = items.iter().find(|i| i.name == "gw2.intersection").unwrap();
    assert!(!gw2.passed, "deliberately broken backend must fail GW2");
}

#[test]
fn ext_oracle_matches_on_samples() {
    let mut inst = instance();
    for x in &inst.a_mods {
        for y in &inst.a_mods {
            if x.dim + y.dim > 6 {
                continue;
            }
            let by_res = inst
                .f
                .ctx_a
                .ext_dim(x, y, 1, ResolutionKind::MinimalCover)
                .unwrap();
            let by_cocycle = inst.f.ctx_a.ext1_dim_by_cocycles(x, y).unwrap();
            assert_eq!(by_res, by_cocycle);
        }
    }
}

#[test]
fn trivial_extension_is_symmetric_and_frobenius() {
    let mut inst = instance();
    let (_, witnesses) = inst.f.te_a.symmetric_iso();
    assert!(witnesses.is_empty());
    let (_, wb) = inst.f.te_b.symmetric_iso();
    assert!(wb.is_empty());
    for pair in &inst.pairs {
        let module = wakkit_core::trivext::pair_to_module(&inst.f.te_a, pair).unwrap();
        let proj = inst.f.stable_a.ctx.is_projective(&module).unwrap();
        let inj = inst.f.stable_a.ctx.is_injective(&module).unwrap();
        assert_eq!(proj, inj, "projective and injective must coincide over T(A)");
    }
}

#[test]
fn suspension_orbit_of_the_stable_category() {
    // Σ cycles the four non-projective indecomposables of T(A)
    let mut inst = instance();
    let te = inst.f.te_a.clone();
    let mods: Vec<Arc<Module>> = inst.pairs[0..4]
        .iter()
        .map(|p| Arc::new(wakkit_core::trivext::pair_to_module(&te, p).unwrap()))
        .collect();
    let limits = Limits::default();
    let mut sigma_dims = Vec::new();
    for mm in &mods {
        let key = inst.f.stable_a.register(mm.clone());
        let s = inst.f.stable_a.suspension(key).unwrap();
        sigma_dims.push(s.sigma.dim);
        // Σ(x) is again one of the four indecomposables
        let mut found = false;
        for other in &mods {
            if stably_isomorphic(&mut inst.f.stable_a, &s.sigma, other, &limits).unwrap() {
                found = true;
                break;
            }
        }
        assert!(found);
    }
    assert_eq!(sigma_dims.iter().filter(|&&d| d == 1).count(), 2);
    assert_eq!(sigma_dims.iter().filter(|&&d| d == 2).count(), 2);
}
