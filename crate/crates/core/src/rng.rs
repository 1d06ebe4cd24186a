//! Seeded randomness.
//!
//! Every randomized routine draws from SplitMix64 (state = seed, each draw
//! adds the golden-ratio increment and applies the reference finalizer).
//! Field elements are `word mod p` over `F_p` and `word mod 201 - 100` over Q.
//! Fixtures therefore depend only on the seed and the documented draw order.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::linalg::{self, Matrix};
use crate::poly::{Field, Scalar};

pub struct SeededRng {
    inner: SplitMix64,
}

impl SeededRng {
    pub fn new(seed: u64) -> SeededRng {
        SeededRng { inner: SplitMix64::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    pub fn scalar(&mut self, field: Field) -> Scalar {
        field.sample(self.next_u64())
    }

    pub fn nonzero_scalar(&mut self, field: Field) -> Scalar {
        loop {
            let s = self.scalar(field);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Dense random square matrix, redrawn until invertible.
    pub fn invertible_matrix(&mut self, field: Field, n: usize) -> Matrix {
        loop {
            let m: Matrix = (0..n).map(|_| (0..n).map(|_| self.scalar(field)).collect()).collect();
            if !linalg::determinant(field, &m).is_zero() {
                return m;
            }
        }
    }
}
