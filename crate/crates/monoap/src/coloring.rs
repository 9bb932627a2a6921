//! Two-colorings of `Z_n` and `[n]`, their count-preserving symmetries, and
//! canonical forms.
//!
//! A coloring is a bit string: bit value 0 is "red", bit value 1 is "blue".
//! Cyclic colorings index elements `0..n-1`; interval colorings cover
//! positions `1..=n` stored 0-based.

use std::fmt;

use crate::error::Error;
use crate::ratio::gcd_u64;

/// The carrier of a coloring: the cyclic group `Z_n` or the interval `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Cyclic(usize),
    Interval(usize),
}

impl Group {
    pub fn n(&self) -> usize {
        match *self {
            Group::Cyclic(n) | Group::Interval(n) => n,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, Group::Cyclic(_))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Cyclic(n) => write!(f, "Z_{n}"),
            Group::Interval(n) => write!(f, "[{n}]"),
        }
    }
}

/// A 2-coloring of a [`Group`], stored as one byte per element (0 or 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    group: Group,
    bits: Vec<u8>,
}

impl Coloring {
    /// Wraps a bit vector; every entry must be 0 or 1 and the length must
    /// match the group size.
    pub fn new(group: Group, bits: Vec<u8>) -> Result<Coloring, Error> {
        if bits.len() != group.n() {
            return Err(Error::WrongLength {
                expected: group.n(),
                got: bits.len(),
            });
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::IllegalCharacter((b'0' + b) as char));
        }
        Ok(Coloring { group, bits })
    }

    pub fn from_fn(group: Group, f: impl FnMut(usize) -> u8) -> Coloring {
        let bits = (0..group.n()).map(f).map(|b| b & 1).collect();
        Coloring { group, bits }
    }

    /// Parses a coloring from text. Whitespace, commas, and parentheses are
    /// ignored; the remaining characters must be exactly `n` digits 0/1.
    pub fn parse(text: &str, group: Group) -> Result<Coloring, Error> {
        let mut bits = Vec::with_capacity(group.n());
        for ch in text.chars() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                ' ' | '\t' | '\n' | '\r' | ',' | '(' | ')' => {}
                other => return Err(Error::IllegalCharacter(other)),
            }
        }
        Coloring::new(group, bits)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Color of element `v` (0-based for both carriers).
    pub fn bit(&self, v: usize) -> u8 {
        self.bits[v]
    }

    /// Number of red (= 0) elements.
    pub fn red_count(&self) -> u64 {
        self.bits.iter().filter(|&&b| b == 0).count() as u64
    }

    pub fn blue_count(&self) -> u64 {
        self.n() as u64 - self.red_count()
    }

    /// Flips every bit. Preserves all monochromatic counts.
    pub fn conjugate(&self) -> Coloring {
        Coloring {
            group: self.group,
            bits: self.bits.iter().map(|&b| 1 - b).collect(),
        }
    }

    /// `c'(v) = c(v + s mod n)`; cyclic colorings only.
    pub fn translate(&self, s: i64) -> Result<Coloring, Error> {
        let n = self.require_cyclic()? as i64;
        let s = s.rem_euclid(n) as usize;
        let n = n as usize;
        Ok(Coloring::from_fn(self.group, |v| self.bits[(v + s) % n]))
    }

    /// `c'(v) = c(m v mod n)` for a unit `m`; cyclic colorings only.
    pub fn apply_unit_map(&self, m: i64) -> Result<Coloring, Error> {
        let n = self.require_cyclic()?;
        let m_red = m.rem_euclid(n as i64) as u64;
        if gcd_u64(m_red, n as u64) != 1 {
            return Err(Error::UnitNotCoprime { m: m_red, n });
        }
        let m_red = m_red as usize;
        Ok(Coloring::from_fn(self.group, |v| {
            self.bits[(m_red * v) % self.group.n()]
        }))
    }

    /// Lexicographically smallest image of the coloring under the enabled
    /// generators. Idempotent and constant on orbits; the orbit of a coloring
    /// under an empty generator set is the coloring itself.
    pub fn canonical_form(&self, sym: &SymmetryGroup) -> Result<Coloring, Error> {
        let n = self.require_cyclic()?;
        let units: Vec<usize> = if sym.unit_multiplications {
            (1..=n).filter(|&m| gcd_u64(m as u64, n as u64) == 1).collect()
        } else {
            vec![1]
        };
        let shifts: Vec<usize> = if sym.translations { (0..n).collect() } else { vec![0] };
        let flips: &[u8] = if sym.conjugation { &[0, 1] } else { &[0] };

        let mut best: Option<Vec<u8>> = None;
        let mut candidate = vec![0u8; n];
        for &m in &units {
            for &s in &shifts {
                for &flip in flips {
                    for (v, slot) in candidate.iter_mut().enumerate() {
                        *slot = self.bits[(m * v + s) % n] ^ flip;
                    }
                    if best.as_ref().is_none_or(|b| candidate < *b) {
                        best = Some(candidate.clone());
                    }
                }
            }
        }
        Ok(Coloring {
            group: self.group,
            bits: best.unwrap_or_else(|| self.bits.clone()),
        })
    }

    fn require_cyclic(&self) -> Result<usize, Error> {
        match self.group {
            Group::Cyclic(n) => Ok(n),
            Group::Interval(_) => Err(Error::NotCyclic),
        }
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

/// Which count-preserving maps to quotient by when deduplicating colorings.
///
/// Unit multiplications and conjugation are the classical coloring
/// isomorphisms; translations also permute progressions and are enabled in
/// the default group used for search deduplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub translations: bool,
    pub unit_multiplications: bool,
    pub conjugation: bool,
}

impl SymmetryGroup {
    /// Full affine maps `v -> m v + s` plus conjugation (the default).
    pub fn affine_conjugation() -> SymmetryGroup {
        SymmetryGroup {
            translations: true,
            unit_multiplications: true,
            conjugation: true,
        }
    }

    /// Unit multiplications only.
    pub fn multiplicative() -> SymmetryGroup {
        SymmetryGroup {
            translations: false,
            unit_multiplications: true,
            conjugation: false,
        }
    }

    /// Unit multiplications plus conjugation.
    pub fn multiplicative_conjugation() -> SymmetryGroup {
        SymmetryGroup {
            translations: false,
            unit_multiplications: true,
            conjugation: true,
        }
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.translations {
            parts.push("translations");
        }
        if self.unit_multiplications {
            parts.push("units");
        }
        if self.conjugation {
            parts.push("conjugation");
        }
        if parts.is_empty() {
            parts.push("trivial");
        }
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_separators_and_round_trips() {
        let c = Coloring::parse("10", Group::Cyclic(2)).unwrap();
        assert_eq!(c.bits(), &[1, 0]);
        let c2 = Coloring::parse("(1, 0)", Group::Cyclic(2)).unwrap();
        assert_eq!(c, c2);
        let back = Coloring::parse(&c.to_string(), c.group()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Coloring::parse("2", Group::Cyclic(1)),
            Err(Error::IllegalCharacter('2'))
        ));
        assert!(matches!(
            Coloring::parse("10", Group::Cyclic(3)),
            Err(Error::WrongLength { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn unit_map_checks_gcd() {
        let c = Coloring::parse("101010", Group::Cyclic(6)).unwrap();
        assert!(matches!(
            c.apply_unit_map(2),
            Err(Error::UnitNotCoprime { m: 2, n: 6 })
        ));
        assert_eq!(c.apply_unit_map(1).unwrap(), c);
    }

    #[test]
    fn translate_and_conjugate_basics() {
        let c = Coloring::parse("1101", Group::Cyclic(4)).unwrap();
        assert_eq!(c.translate(0).unwrap(), c);
        assert_eq!(c.translate(1).unwrap().bits(), &[1, 0, 1, 1]);
        assert_eq!(c.translate(-1).unwrap().bits(), &[1, 1, 1, 0]);
        assert_eq!(c.conjugate().conjugate(), c);
    }

    #[test]
    fn canonical_form_of_all_ones_is_all_zeros() {
        let c = Coloring::parse("1111", Group::Cyclic(4)).unwrap();
        let canon = c.canonical_form(&SymmetryGroup::affine_conjugation()).unwrap();
        assert_eq!(canon.bits(), &[0, 0, 0, 0]);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let sym = SymmetryGroup::affine_conjugation();
        let c = Coloring::parse("1101001011", Group::Cyclic(10)).unwrap();
        let canon = c.canonical_form(&sym).unwrap();
        assert_eq!(canon.canonical_form(&sym).unwrap(), canon);
    }
}
