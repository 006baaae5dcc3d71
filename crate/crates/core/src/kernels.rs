//! Bit-indexed amplitude kernels. Qubit `k` is bit `k` of the basis index.
//!
//! Every kernel pairs amplitudes through aligned chunking: a chunk of length
//! `2 << k` holds the `bit k = 0` half followed by the `bit k = 1` half, so
//! the halves can be borrowed mutably at the same time without index math.

use num_complex::Complex64;

pub type Matrix2 = [[Complex64; 2]; 2];

#[inline]
fn mix(m: &Matrix2, a: &mut Complex64, b: &mut Complex64) {
    let (x, y) = (*a, *b);
    *a = m[0][0] * x + m[0][1] * y;
    *b = m[1][0] * x + m[1][1] * y;
}

/// `(a, b) -> (c a - i s b, -i s a + c b)` for the pair `(idx, idx ^ mask)`.
#[inline]
fn rxx_pair(c: f64, s: f64, a: &mut Complex64, b: &mut Complex64) {
    let (x, y) = (*a, *b);
    let mis = Complex64::new(0.0, -s);
    *a = x * c + mis * y;
    *b = mis * x + y * c;
}

fn ordered(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

pub mod seq {
    use super::*;

    pub fn apply_1q(amps: &mut [Complex64], k: usize, m: &Matrix2) {
        for chunk in amps.chunks_exact_mut(2 << k) {
            let (lo, hi) = chunk.split_at_mut(1 << k);
            for (a, b) in lo.iter_mut().zip(hi) {
                mix(m, a, b);
            }
        }
    }

    pub fn apply_rxx(amps: &mut [Complex64], i: usize, j: usize, c: f64, s: f64) {
        let (lo, hi) = ordered(i, j);
        let lo_bit = 1 << lo;
        for chunk in amps.chunks_exact_mut(2 << hi) {
            let (lower, upper) = chunk.split_at_mut(1 << hi);
            for (lb, ub) in lower
                .chunks_exact_mut(2 << lo)
                .zip(upper.chunks_exact_mut(2 << lo))
            {
                // Within a block, the partner of lb[t] is ub[t ^ lo_bit].
                let (ub0, ub1) = ub.split_at_mut(lo_bit);
                let (lb0, lb1) = lb.split_at_mut(lo_bit);
                for (a, b) in lb0.iter_mut().zip(ub1.iter_mut()) {
                    rxx_pair(c, s, a, b);
                }
                for (a, b) in lb1.iter_mut().zip(ub0.iter_mut()) {
                    rxx_pair(c, s, a, b);
                }
            }
        }
    }

    /// `(P(bit k = 0), P(bit k = 1))`.
    pub fn marginal(amps: &[Complex64], k: usize) -> (f64, f64) {
        let mut p0 = 0.0;
        let mut p1 = 0.0;
        for chunk in amps.chunks_exact(2 << k) {
            let (lo, hi) = chunk.split_at(1 << k);
            p0 += lo.iter().map(|a| a.norm_sqr()).sum::<f64>();
            p1 += hi.iter().map(|a| a.norm_sqr()).sum::<f64>();
        }
        (p0, p1)
    }

    pub fn norm_sqr(amps: &[Complex64]) -> f64 {
        amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

#[cfg(feature = "parallel")]
pub mod par {
    use super::*;
    use rayon::prelude::*;

    const MIN_LEN: usize = 1 << 10;
    /// Partial sums use fixed-size blocks, added in order, so the result does
    /// not depend on how rayon splits the work.
    const SUM_BLOCK: usize = 1 << 12;

    pub fn apply_1q(amps: &mut [Complex64], k: usize, m: &Matrix2) {
        amps.par_chunks_exact_mut(2 << k).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(1 << k);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .with_min_len(MIN_LEN)
                .for_each(|(a, b)| mix(m, a, b));
        });
    }

    pub fn apply_rxx(amps: &mut [Complex64], i: usize, j: usize, c: f64, s: f64) {
        let (lo, hi) = ordered(i, j);
        let lo_bit = 1 << lo;
        amps.par_chunks_exact_mut(2 << hi).for_each(|chunk| {
            let (lower, upper) = chunk.split_at_mut(1 << hi);
            lower
                .par_chunks_exact_mut(2 << lo)
                .zip(upper.par_chunks_exact_mut(2 << lo))
                .with_min_len((MIN_LEN >> (lo + 1)).max(1))
                .for_each(|(lb, ub)| {
                    let (ub0, ub1) = ub.split_at_mut(lo_bit);
                    let (lb0, lb1) = lb.split_at_mut(lo_bit);
                    for (a, b) in lb0.iter_mut().zip(ub1.iter_mut()) {
                        rxx_pair(c, s, a, b);
                    }
                    for (a, b) in lb1.iter_mut().zip(ub0.iter_mut()) {
                        rxx_pair(c, s, a, b);
                    }
                });
        });
    }

    pub fn marginal(amps: &[Complex64], k: usize) -> (f64, f64) {
        let block = SUM_BLOCK.max(2 << k);
        let partials: Vec<(f64, f64)> = amps
            .par_chunks(block)
            .map(|b| super::seq::marginal(b, k))
            .collect();
        partials
            .into_iter()
            .fold((0.0, 0.0), |(p0, p1), (q0, q1)| (p0 + q0, p1 + q1))
    }

    pub fn norm_sqr(amps: &[Complex64]) -> f64 {
        let partials: Vec<f64> = amps
            .par_chunks(SUM_BLOCK)
            .map(super::seq::norm_sqr)
            .collect();
        partials.into_iter().sum()
    }
}
