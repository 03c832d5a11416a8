//! Deterministic choice of solutions of underdetermined linear systems.
//!
//! Constructions that the theory declares independent of internal choices
//! (connecting morphisms, lifted comparison maps, middle rows of ladders)
//! take a [`Chooser`]. `Chooser::First` picks the canonical first solution;
//! a seeded chooser perturbs it by a reproducible kernel element, which is
//! how the verification suite exercises independence-of-choice claims.

use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{AffineSolutions, Mat};

pub enum Chooser {
    /// Always take the particular solution produced by elimination.
    First,
    /// Particular solution plus a seeded random kernel combination.
    Seeded(ChaCha8Rng),
}

impl Chooser {
    pub fn seeded(seed: u64) -> Chooser {
        Chooser::Seeded(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn scalars(&mut self, p: u64, n: usize) -> Vec<u64> {
        match self {
            Chooser::First => alloc::vec![0; n],
            Chooser::Seeded(rng) => (0..n).map(|_| rng.next_u64() % p).collect(),
        }
    }

    /// Picks one solution out of an affine solution set.
    pub fn solution(&mut self, sols: &AffineSolutions) -> Mat {
        match self {
            Chooser::First => sols.particular.clone(),
            Chooser::Seeded(_) => {
                let p = sols.particular.p();
                let coeffs = self.scalars(p, sols.kernel.cols);
                let offset = sols.kernel.mul(&Mat::col_vec(p, &coeffs)).expect("kernel shape");
                sols.particular.add(&offset).expect("shape")
            }
        }
    }
}
