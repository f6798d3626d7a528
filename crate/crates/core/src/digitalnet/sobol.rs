//! Base-2 digital nets built from Sobol' generator matrices.

use super::direction::DirectionNumbers;
use crate::error::{Error, Result};
use crate::real::Real;

/// Largest supported resolution; `n = 2^m` points.
pub const MAX_RESOLUTION: u32 = 32;

/// Output digits carried per coordinate.
pub const OUTPUT_BITS: u32 = 53;

/// An `n = 2^m` point digital net in base 2.
///
/// Generator columns are stored left aligned: bit 63 of a column word is
/// the first binary digit of the coordinate. Column `k` of every matrix is
/// the contribution of bit `k` of the point index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalNet {
    s: usize,
    m: u32,
    columns: Vec<Vec<u64>>,
    shift: Vec<u64>,
}

impl DigitalNet {
    /// The unscrambled Sobol' net over the first `s` dimensions.
    pub fn sobol(dirs: &DirectionNumbers, s: usize, m: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::param("s", "dimension must be at least 1"));
        }
        if m > MAX_RESOLUTION {
            return Err(Error::param("m", format!("resolution {m} above {MAX_RESOLUTION}")));
        }
        if s > dirs.max_dim() {
            return Err(Error::Capacity(format!(
                "{s} dimensions requested, direction numbers cover {}",
                dirs.max_dim()
            )));
        }
        let columns = (1..=s)
            .map(|d| {
                let ints = dirs.direction_integers(d, m as usize)?;
                Ok(ints
                    .iter()
                    .enumerate()
                    .map(|(k, &mk)| mk << (63 - k))
                    .collect())
            })
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(Self { s, m, columns, shift: vec![0; s] })
    }

    pub(crate) fn from_parts(s: usize, m: u32, columns: Vec<Vec<u64>>, shift: Vec<u64>) -> Self {
        Self { s, m, columns, shift }
    }

    pub fn dim(&self) -> usize {
        self.s
    }

    pub fn resolution(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        1usize << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Generator columns of dimension `j` (zero based).
    pub fn columns(&self, j: usize) -> &[u64] {
        &self.columns[j]
    }

    /// Digital shift of dimension `j` (zero for unscrambled nets).
    pub fn shift(&self, j: usize) -> u64 {
        self.shift[j]
    }

    /// Digits of point `i` in dimension `j`, computed directly.
    pub fn digits(&self, i: usize, j: usize) -> u64 {
        let mut x = self.shift[j];
        let mut bits = i;
        let mut k = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                x ^= self.columns[j][k];
            }
            bits >>= 1;
            k += 1;
        }
        x
    }

    /// Visits every point in natural index order with its digit words.
    ///
    /// Consecutive indices differ in their trailing ones plus one bit, so
    /// each step is a single XOR per dimension with a prefix sum of columns.
    pub fn for_each_point<F: FnMut(usize, &[u64])>(&self, mut f: F) {
        let prefix: Vec<Vec<u64>> = self
            .columns
            .iter()
            .map(|cols| {
                let mut acc = 0u64;
                cols.iter()
                    .map(|&c| {
                        acc ^= c;
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut x = self.shift.clone();
        f(0, &x);
        for i in 1..self.len() {
            let tz = i.trailing_zeros() as usize;
            for (xj, pj) in x.iter_mut().zip(&prefix) {
                *xj ^= pj[tz];
            }
            f(i, &x);
        }
    }

    /// Materialises the whole point set.
    pub fn points(&self) -> PointSet {
        let mut digits = Vec::with_capacity(self.len() * self.s);
        self.for_each_point(|_, x| digits.extend_from_slice(x));
        PointSet { s: self.s, digits }
    }
}

/// Converts a left-aligned digit word to a coordinate in `[0, 1)`,
/// truncating to the precision of `T`.
#[inline]
pub fn unit_from_digits<T: Real>(x: u64) -> T {
    let bits = T::MANTISSA_DIGITS.min(OUTPUT_BITS);
    let top = x >> (64 - bits);
    T::lit(top as f64) * T::lit((-(bits as f64)).exp2())
}

/// A finite point set stored as digit words, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    s: usize,
    digits: Vec<u64>,
}

impl PointSet {
    pub fn from_digits(s: usize, digits: Vec<u64>) -> Self {
        assert!(s > 0 && digits.len() % s == 0, "digit buffer does not match dimension");
        Self { s, digits }
    }

    pub fn dim(&self) -> usize {
        self.s
    }

    pub fn len(&self) -> usize {
        self.digits.len() / self.s
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn point_digits(&self, i: usize) -> &[u64] {
        &self.digits[i * self.s..(i + 1) * self.s]
    }

    pub fn coord<T: Real>(&self, i: usize, j: usize) -> T {
        unit_from_digits(self.digits[i * self.s + j])
    }

    pub fn point<T: Real>(&self, i: usize) -> Vec<T> {
        self.point_digits(i).iter().map(|&x| unit_from_digits(x)).collect()
    }

    pub fn rows<T: Real>(&self) -> Vec<Vec<T>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// Unscrambled Sobol' points for the first `s` dimensions, `n = 2^m`.
pub fn sobol_points(dirs: &DirectionNumbers, s: usize, m: u32) -> Result<PointSet> {
    Ok(DigitalNet::sobol(dirs, s, m)?.points())
}
