//! Sobol' direction numbers in the Joe–Kuo text format.
//!
//! The file has one header line followed by rows `d s a m_1 .. m_s`, one per
//! dimension starting at `d = 2`. Dimension 1 is the van der Corput
//! sequence and is not listed.

use std::io::BufRead;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const JOE_KUO_21201: &str = include_str!("../../data/new-joe-kuo-6.21201");

/// Maximum polynomial degree accepted; generator columns are built for at
/// most 32 digits.
pub const MAX_DEGREE: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionEntry {
    /// Degree `s_j` of the primitive polynomial.
    pub degree: u32,
    /// Interior coefficients of the polynomial, most significant first.
    pub poly: u32,
    /// Initial direction integers `m_1 .. m_{s_j}`.
    pub m: Vec<u32>,
}

/// Direction numbers for dimensions `2..=max_dim()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionNumbers {
    entries: Vec<DimensionEntry>,
}

impl DirectionNumbers {
    /// The vendored `new-joe-kuo-6.21201` table.
    pub fn joe_kuo() -> &'static DirectionNumbers {
        static TABLE: OnceLock<DirectionNumbers> = OnceLock::new();
        TABLE.get_or_init(|| {
            Self::parse_str(JOE_KUO_21201).expect("vendored direction numbers are well formed")
        })
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::parse(text.as_bytes())
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        match lines.next() {
            None => {
                return Err(Error::Parse {
                    line: 1,
                    reason: "empty input, expected a header line".into(),
                })
            }
            Some(Err(e)) => return Err(Error::Parse { line: 1, reason: e.to_string() }),
            Some(Ok(_header)) => {}
        }

        let mut entries = Vec::new();
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            let line = line.map_err(|e| Error::Parse { line: lineno, reason: e.to_string() })?;
            if line.trim().is_empty() {
                continue;
            }
            let entry = parse_row(&line, lineno, entries.len() + 2)?;
            entries.push(entry);
        }
        Ok(Self { entries })
    }

    /// Highest dimension covered, counting the implicit first dimension.
    pub fn max_dim(&self) -> usize {
        self.entries.len() + 1
    }

    /// Entry for 1-based dimension `d >= 2`.
    pub fn entry(&self, d: usize) -> Option<&DimensionEntry> {
        d.checked_sub(2).and_then(|i| self.entries.get(i))
    }

    /// Direction integers `m_1 .. m_len` for 1-based dimension `d`, extended
    /// by the Sobol' recurrence. `m_k` is odd and below `2^k`.
    pub fn direction_integers(&self, d: usize, len: usize) -> Result<Vec<u64>> {
        if d == 0 || d > self.max_dim() {
            return Err(Error::Capacity(format!(
                "dimension {d} requested, direction numbers cover 1..={}",
                self.max_dim()
            )));
        }
        if d == 1 {
            return Ok(vec![1; len]);
        }
        let e = &self.entries[d - 2];
        let s = e.degree as usize;
        let mut m: Vec<u64> = Vec::with_capacity(len.max(s));
        m.extend(e.m.iter().map(|&v| u64::from(v)));
        for i in s..len {
            let mut next = m[i - s] ^ (m[i - s] << s);
            for k in 1..s {
                if (e.poly >> (s - 1 - k)) & 1 == 1 {
                    next ^= m[i - k] << k;
                }
            }
            m.push(next);
        }
        m.truncate(len);
        Ok(m)
    }
}

fn parse_row(line: &str, lineno: usize, expected_dim: usize) -> Result<DimensionEntry> {
    let err = |reason: String| Error::Parse { line: lineno, reason };
    let fields: Vec<u64> = line
        .split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| err(format!("not an unsigned integer: {tok:?}"))))
        .collect::<Result<_>>()?;
    if fields.len() < 4 {
        return Err(err(format!("expected `d s a m_1 ..`, found {} fields", fields.len())));
    }
    let (d, degree, poly) = (fields[0], fields[1], fields[2]);
    if d != expected_dim as u64 {
        return Err(err(format!("dimension {d} out of sequence, expected {expected_dim}")));
    }
    if degree == 0 || degree > u64::from(MAX_DEGREE) {
        return Err(err(format!("degree {degree} outside 1..={MAX_DEGREE}")));
    }
    if poly >= 1 << (degree - 1) {
        return Err(err(format!("coefficient {poly} does not fit degree {degree}")));
    }
    let m = &fields[3..];
    if m.len() != degree as usize {
        return Err(err(format!("expected {degree} initial values, found {}", m.len())));
    }
    for (i, &mi) in m.iter().enumerate() {
        let k = i + 1;
        if mi % 2 == 0 || mi >= 1 << k {
            return Err(err(format!("m_{k} = {mi} must be odd and below 2^{k}")));
        }
    }
    Ok(DimensionEntry {
        degree: degree as u32,
        poly: poly as u32,
        m: m.iter().map(|&v| v as u32).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "d       s       a       m_i\n";

    #[test]
    fn parses_first_published_row() {
        let dirs = DirectionNumbers::parse_str(&format!("{HEADER}2 1 0 1\n")).unwrap();
        assert_eq!(dirs.max_dim(), 2);
        assert_eq!(dirs.entry(2).unwrap(), &DimensionEntry { degree: 1, poly: 0, m: vec![1] });
    }

    #[test]
    fn empty_stream_is_an_error() {
        assert!(matches!(DirectionNumbers::parse_str(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn even_initial_value_is_rejected_with_line_number() {
        let text = format!("{HEADER}2 1 0 1\n3 2 1 1 2\n");
        match DirectionNumbers::parse_str(&text) {
            Err(Error::Parse { line, reason }) => {
                assert_eq!(line, 3);
                assert!(reason.contains("odd"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_rows_are_rejected() {
        for bad in ["2 1 0\n", "2 1 0 x\n", "3 1 0 1\n", "2 2 0 1 1 3\n", "2 1 0 3\n"] {
            assert!(DirectionNumbers::parse_str(&format!("{HEADER}{bad}")).is_err(), "{bad}");
        }
    }

    #[test]
    fn vendored_table_is_complete() {
        let dirs = DirectionNumbers::joe_kuo();
        assert_eq!(dirs.max_dim(), 21201);
        assert_eq!(dirs.entry(7).unwrap().m, vec![1, 3, 5, 13]);
    }

    #[test]
    fn recurrence_matches_hand_expansion() {
        // d = 3: x^2 + x + 1, m = (1, 3); m_3 = 2 m_2 ^ 4 m_1 ^ m_1 = 3.
        let m = DirectionNumbers::joe_kuo().direction_integers(3, 5).unwrap();
        assert_eq!(m[..3], [1, 3, 3]);
        for (k, &mk) in m.iter().enumerate() {
            assert!(mk % 2 == 1 && mk < 1 << (k + 1));
        }
    }

    #[test]
    fn capacity_error_beyond_table() {
        let dirs = DirectionNumbers::parse_str(&format!("{HEADER}2 1 0 1\n")).unwrap();
        assert!(matches!(dirs.direction_integers(3, 4), Err(Error::Capacity(_))));
    }
}
