//! Linear matrix scrambling with a digital shift.
//!
//! Each dimension gets a random unit lower-triangular binary matrix `L_j`
//! over the first [`OUTPUT_BITS`] digits and a random shift `e_j`; a
//! coordinate with digit vector `x` becomes `L_j x + e_j` over GF(2).
//! Because `L_j` is lower triangular with unit diagonal, the first `k`
//! output digits are a bijection of the first `k` input digits, so every
//! elementary interval keeps its point count.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sobol::{DigitalNet, PointSet, OUTPUT_BITS};

/// 32-bit words of ChaCha output reserved per dimension.
const WORDS_PER_DIM: u128 = 128;

const SHIFT_MASK: u64 = !0u64 << (64 - OUTPUT_BITS);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearScramble {
    /// Row `r` of `L`, left aligned like the digit words.
    rows: Vec<u64>,
    shift: u64,
}

impl LinearScramble {
    pub fn identity() -> Self {
        Self {
            rows: (0..OUTPUT_BITS).map(|r| 1u64 << (63 - r)).collect(),
            shift: 0,
        }
    }

    fn random(rng: &mut ChaCha8Rng) -> Self {
        let rows = (0..OUTPUT_BITS)
            .map(|r| {
                let above = if r == 0 { 0 } else { !0u64 << (64 - r) };
                (rng.next_u64() & above) | (1u64 << (63 - r))
            })
            .collect();
        let shift = rng.next_u64() & SHIFT_MASK;
        Self { rows, shift }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    /// `L x` over GF(2), without the shift.
    #[inline]
    pub fn mul(&self, x: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, &row)| acc | (u64::from((row & x).count_ones() & 1) << (63 - r)))
    }

    #[inline]
    pub fn apply(&self, x: u64) -> u64 {
        self.mul(x) ^ self.shift
    }
}

/// The scrambling of one replicate: a pure function of
/// `(seed, replicate, dimension)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrambleRealization {
    seed: u64,
    replicate: u64,
    dims: Vec<LinearScramble>,
}

impl ScrambleRealization {
    /// Draws the scramble for dimensions `0..s`. Dimension `j` reads its own
    /// block of the ChaCha8 stream `replicate` keyed by `seed`, so it does
    /// not depend on `s` or on any other dimension.
    pub fn new(seed: u64, replicate: u64, s: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(replicate);
        let dims = (0..s)
            .map(|j| {
                rng.set_word_pos(j as u128 * WORDS_PER_DIM);
                LinearScramble::random(&mut rng)
            })
            .collect();
        Self { seed, replicate, dims }
    }

    pub fn identity(s: usize) -> Self {
        Self {
            seed: 0,
            replicate: 0,
            dims: vec![LinearScramble::identity(); s],
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn replicate(&self) -> u64 {
        self.replicate
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dimension(&self, j: usize) -> &LinearScramble {
        &self.dims[j]
    }

    /// Scrambles the generator matrices: `L (C x + s) + e = (L C) x + (L s + e)`.
    pub fn scramble_net(&self, net: &DigitalNet) -> DigitalNet {
        assert_eq!(self.dim(), net.dim(), "scramble and net dimensions differ");
        let columns = self
            .dims
            .iter()
            .enumerate()
            .map(|(j, l)| net.columns(j).iter().map(|&c| l.mul(c)).collect())
            .collect();
        let shift = self
            .dims
            .iter()
            .enumerate()
            .map(|(j, l)| l.apply(net.shift(j)))
            .collect();
        DigitalNet::from_parts(net.dim(), net.resolution(), columns, shift)
    }
}

/// Scrambles every point of `points` digit by digit.
pub fn scramble(points: &PointSet, realization: &ScrambleRealization) -> PointSet {
    assert_eq!(points.dim(), realization.dim(), "scramble and point set dimensions differ");
    let s = points.dim();
    let digits = (0..points.len())
        .flat_map(|i| {
            points
                .point_digits(i)
                .iter()
                .enumerate()
                .map(|(j, &x)| realization.dimension(j).apply(x))
                .collect::<Vec<_>>()
        })
        .collect();
    PointSet::from_digits(s, digits)
}
