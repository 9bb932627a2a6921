//! Periodic block constructions and their exact density analysis.
//!
//! For `n = b t + r`, the coloring `BB…BR` (t copies of a block `B` of
//! length b, then a tail `R` of length r) has a monochromatic k-AP count
//! governed by the block alone, up to O(t) boundary terms. Each parameter
//! pair `(a, d)` falls into a wrap class recording which of the k-1 steps
//! crosses a multiple of n; a progression away from the tail is
//! monochromatic exactly when the corresponding offset progression, with
//! offset r applied at each crossing step, is monochromatic in the block.
//! Weighting the per-class block counts by the exact areas of the class
//! regions in the normalized parameter square yields the density bound
//! computed by [`density_upper_bound`].

use std::collections::BTreeMap;

use crate::apcount::{count_mono_cyclic, ApFilter};
use crate::coloring::{Coloring, Group};
use crate::error::Error;
use crate::ratio::Ratio;

/// Wrap pattern of a progression: bit `x_j` (for `j = 1..k-1`, read
/// most-significant-first) is set when the j-th step crosses a multiple
/// of n. The index is the binary value `x_1 x_2 … x_{k-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WrapClass {
    k: usize,
    index: u32,
}

impl WrapClass {
    pub fn from_index(k: usize, index: u32) -> WrapClass {
        assert!(k >= 2 && index < (1 << (k - 1)), "class index out of range");
        WrapClass { k, index }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// Whether the j-th step (1-based, `1 <= j <= k-1`) crosses a multiple
    /// of n.
    pub fn crosses(&self, j: usize) -> bool {
        assert!((1..self.k).contains(&j));
        (self.index >> (self.k - 1 - j)) & 1 == 1
    }

    /// The per-step offsets `r_j = x_j * r`.
    pub fn step_offsets(&self, r: usize) -> Vec<usize> {
        (1..self.k)
            .map(|j| if self.crosses(j) { r } else { 0 })
            .collect()
    }
}

/// Classifies `(a, d)` with `0 <= a, d < n` by which steps of the unreduced
/// progression `a, a+d, …, a+(k-1)d` cross a multiple of n.
pub fn wrap_class(a: u64, d: u64, n: u64, k: usize) -> WrapClass {
    assert!(a < n && d < n, "parameters must lie in [0, n)");
    let mut index = 0u32;
    let mut prev = 0u64; // floor(a / n) = 0
    for j in 1..k as u64 {
        let cur = (a + j * d) / n;
        index <<= 1;
        if cur > prev {
            index |= 1;
        }
        prev = cur;
    }
    WrapClass { k, index }
}

/// The wrap classes that actually occur, in index order. For k = 4 all
/// eight occur; for k = 5 the patterns 0011 and 1100 are infeasible.
pub fn feasible_class_indices(k: usize) -> Result<Vec<u32>, Error> {
    match k {
        4 => Ok((0..8).collect()),
        5 => Ok((0..16).filter(|&i| i != 3 && i != 12).collect()),
        other => Err(Error::UnsupportedK(other)),
    }
}

/// Exact areas of the normalized wrap-class regions in the parameter
/// square. The areas of the feasible classes sum to 1.
pub fn region_area_table(k: usize) -> Result<BTreeMap<u32, Ratio>, Error> {
    let twelfth = Ratio::new(1, 12);
    let table: Vec<(u32, Ratio)> = match k {
        4 => {
            let sixth = Ratio::new(1, 6);
            vec![
                (0, sixth),
                (1, twelfth),
                (2, sixth),
                (3, twelfth),
                (4, twelfth),
                (5, sixth),
                (6, twelfth),
                (7, sixth),
            ]
        }
        5 => {
            let eighth = Ratio::new(1, 8);
            let twenty_fourth = Ratio::new(1, 24);
            vec![
                (0, eighth),
                (1, twenty_fourth),
                (2, twelfth),
                (4, twelfth),
                (5, twelfth),
                (6, twenty_fourth),
                (7, twenty_fourth),
                (8, twenty_fourth),
                (9, twenty_fourth),
                (10, twelfth),
                (11, twelfth),
                (13, twelfth),
                (14, twenty_fourth),
                (15, eighth),
            ]
        }
        other => return Err(Error::UnsupportedK(other)),
    };
    Ok(table.into_iter().collect())
}

/// Terms of the offset progression in `Z_b`: the j-th term (0-based) is
/// `a + j d - (r_1 + … + r_j) mod b` with `r_j = x_j * r`.
pub fn generalized_terms(b: usize, a: usize, d: usize, class: WrapClass, r: usize) -> Vec<usize> {
    let k = class.k();
    let b_i = b as i64;
    let mut terms = Vec::with_capacity(k);
    let mut offset = 0i64;
    terms.push(a % b);
    for j in 1..k {
        if class.crosses(j) {
            offset += r as i64;
        }
        let t = (a as i64 + (j as i64) * (d as i64) - offset).rem_euclid(b_i);
        terms.push(t as usize);
    }
    terms
}

/// Number of parameter pairs `(a, d) in Z_b^2` whose offset progression is
/// monochromatic in the block.
pub fn generalized_mono_count(
    block: &Coloring,
    class: WrapClass,
    r: usize,
) -> Result<u64, Error> {
    let b = match block.group() {
        Group::Cyclic(b) => b,
        Group::Interval(_) => return Err(Error::NotCyclic),
    };
    assert!(r < b, "offset must lie in [0, b)");
    let k = class.k();
    let bits = block.bits();

    // Precompute the cumulative offsets once; only the term residues move
    // with (a, d).
    let mut cumulative = vec![0i64; k];
    for j in 1..k {
        cumulative[j] = cumulative[j - 1] + if class.crosses(j) { r as i64 } else { 0 };
    }

    let mut count = 0u64;
    let b_i = b as i64;
    for a in 0..b as i64 {
        'next: for d in 0..b as i64 {
            let first = bits[a as usize];
            for j in 1..k as i64 {
                let t = (a + j * d - cumulative[j as usize]).rem_euclid(b_i) as usize;
                if bits[t] != first {
                    continue 'next;
                }
            }
            count += 1;
        }
    }
    Ok(count)
}

/// The per-class counts `c_i` for every feasible class, at the given
/// offset.
pub fn generalized_count_table(
    block: &Coloring,
    k: usize,
    r: usize,
) -> Result<BTreeMap<u32, u64>, Error> {
    let mut table = BTreeMap::new();
    for i in feasible_class_indices(k)? {
        table.insert(
            i,
            generalized_mono_count(block, WrapClass::from_index(k, i), r)?,
        );
    }
    Ok(table)
}

/// Exact asymptotic density of monochromatic k-APs for the periodic
/// construction with this block and residue `r = n mod b`: the block
/// density itself when `r = 0`, otherwise the area-weighted sum
/// `Σ_i a_i c_i / b^2`.
pub fn density_upper_bound(block: &Coloring, k: usize, r: usize) -> Result<Ratio, Error> {
    let b = match block.group() {
        Group::Cyclic(b) => b,
        Group::Interval(_) => return Err(Error::NotCyclic),
    };
    let b_sq = Ratio::from_int((b as i128) * (b as i128));
    if r == 0 {
        let count = count_mono_cyclic(block, k, ApFilter::All)?;
        return Ok(Ratio::from_int(count as i128) / b_sq);
    }
    let areas = region_area_table(k)?;
    let counts = generalized_count_table(block, k, r)?;
    let mut sum = Ratio::ZERO;
    for (i, area) in &areas {
        sum += *area * Ratio::from_int(counts[i] as i128);
    }
    Ok(sum / b_sq)
}

/// The length-n concatenation of `n div b` copies of the block followed by
/// the tail, over the requested carrier. The tail length must equal
/// `n mod b`.
pub fn assemble_periodic(block: &Coloring, group: Group, tail: &[u8]) -> Result<Coloring, Error> {
    let b = match block.group() {
        Group::Cyclic(b) => b,
        Group::Interval(_) => return Err(Error::NotCyclic),
    };
    let n = group.n();
    if tail.len() != n % b {
        return Err(Error::TailLength {
            expected: n % b,
            got: tail.len(),
        });
    }
    if let Some(&x) = tail.iter().find(|&&x| x > 1) {
        return Err(Error::IllegalCharacter((b'0' + x) as char));
    }
    let mut bits = Vec::with_capacity(n);
    for _ in 0..n / b {
        bits.extend_from_slice(block.bits());
    }
    bits.extend_from_slice(tail);
    Coloring::new(group, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::Ratio;

    #[test]
    fn wrap_class_examples() {
        assert_eq!(wrap_class(0, 0, 10, 4).index(), 0);
        assert_eq!(wrap_class(9, 1, 10, 4).index(), 0b100);
        assert_eq!(wrap_class(5, 7, 10, 4).index(), 0b101);
    }

    #[test]
    fn wrap_classes_partition_and_avoid_infeasible_indices() {
        for n in 1..=30u64 {
            let mut seen4 = vec![0u64; 8];
            let mut seen5 = vec![0u64; 16];
            for a in 0..n {
                for d in 0..n {
                    seen4[wrap_class(a, d, n, 4).index() as usize] += 1;
                    seen5[wrap_class(a, d, n, 5).index() as usize] += 1;
                }
            }
            assert_eq!(seen4.iter().sum::<u64>(), n * n);
            assert_eq!(seen5[3], 0, "n={n}: class 0011 must be empty");
            assert_eq!(seen5[12], 0, "n={n}: class 1100 must be empty");
        }
    }

    #[test]
    fn region_areas_sum_to_one() {
        for k in [4usize, 5] {
            let table = region_area_table(k).unwrap();
            let sum = table.values().fold(Ratio::ZERO, |acc, &a| acc + a);
            assert_eq!(sum, Ratio::ONE);
        }
        let t4 = region_area_table(4).unwrap();
        assert_eq!(t4[&0], Ratio::new(1, 6));
        assert_eq!(t4[&1], Ratio::new(1, 12));
        let t5 = region_area_table(5).unwrap();
        assert!(!t5.contains_key(&3) && !t5.contains_key(&12));
        assert_eq!(t5[&0], Ratio::new(1, 8));
        assert_eq!(t5[&1], Ratio::new(1, 24));
        assert!(region_area_table(6).is_err());
    }

    #[test]
    fn class_counts_track_areas() {
        // Exact class populations stay within the O(n) boundary slack of
        // area * n^2.
        let n = 720u64;
        for k in [4usize, 5] {
            let areas = region_area_table(k).unwrap();
            let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
            for a in 0..n {
                for d in 0..n {
                    *counts.entry(wrap_class(a, d, n, k).index()).or_default() += 1;
                }
            }
            for (i, area) in &areas {
                let exact = *counts.get(i).unwrap_or(&0) as i128;
                let predicted = (*area * Ratio::from_int((n * n) as i128)).to_f64();
                assert!(
                    (exact as f64 - predicted).abs() <= 4.0 * n as f64,
                    "k={k} class={i}: count {exact} vs area {predicted}"
                );
            }
        }
    }

    #[test]
    fn all_ones_block_is_fully_monochromatic_for_every_offset() {
        let block = Coloring::from_fn(Group::Cyclic(9), |_| 1);
        for k in [4usize, 5] {
            for i in feasible_class_indices(k).unwrap() {
                for r in 0..9 {
                    let c = generalized_mono_count(&block, WrapClass::from_index(k, i), r).unwrap();
                    assert_eq!(c, 81);
                }
            }
        }
    }

    #[test]
    fn zero_offset_class_count_is_the_plain_count() {
        let block = Coloring::parse("1110010", Group::Cyclic(7)).unwrap();
        let plain = count_mono_cyclic(&block, 4, ApFilter::All).unwrap();
        for i in feasible_class_indices(4).unwrap() {
            let c = generalized_mono_count(&block, WrapClass::from_index(4, i), 0).unwrap();
            assert_eq!(c, plain);
        }
    }

    #[test]
    fn assemble_shapes_and_errors() {
        let block = Coloring::parse("101", Group::Cyclic(3)).unwrap();
        let c = assemble_periodic(&block, Group::Cyclic(9), &[]).unwrap();
        assert_eq!(c.to_string(), "101101101");
        let c = assemble_periodic(&block, Group::Interval(11), &[0, 0]).unwrap();
        assert_eq!(c.to_string(), "10110110100");
        assert!(matches!(
            assemble_periodic(&block, Group::Cyclic(10), &[]),
            Err(Error::TailLength { expected: 1, got: 0 })
        ));
    }
}
