//! Exact enumeration and counting of k-term arithmetic progressions.
//!
//! Cyclic counts run over the full parameter space `(a, d) in Z_n^2`
//! (degenerate progressions included unless filtered); interval counts run
//! over increasing progressions only (`d >= 1`). Counting is implemented
//! twice: a plain reference enumeration and a bit-parallel pass that tests
//! all first elements for a fixed difference with shifted word operations.
//! The two must agree exactly; tests gate the fast path on the reference.

use std::collections::BTreeSet;

use crate::bits::Words;
use crate::coloring::{Coloring, Group};
use crate::error::Error;
use crate::ratio::gcd_u64;

/// Which cyclic progressions a count includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApFilter {
    /// Every parameter pair, degenerate progressions included.
    All,
    /// Only progressions with k distinct terms.
    NonDegenerateOnly,
}

/// The two color classes. Red is bit value 0, blue is bit value 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorClass {
    Red,
    Blue,
}

impl ColorClass {
    pub fn bit(self) -> u8 {
        match self {
            ColorClass::Red => 0,
            ColorClass::Blue => 1,
        }
    }
}

/// How to evaluate a pair intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    BruteForce,
    Formula,
}

/// Parameters of a k-term progression: first element, common difference,
/// number of terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApParam {
    pub start: usize,
    pub step: usize,
    pub k: usize,
}

impl ApParam {
    pub fn new(start: usize, step: usize, k: usize) -> ApParam {
        ApParam { start, step, k }
    }
}

/// Ordered terms of the progression. Cyclic terms are reduced mod n
/// (elements `0..n-1`); interval terms are the 1-based positions themselves.
pub fn kap_terms(p: ApParam, group: Group) -> Result<Vec<usize>, Error> {
    match group {
        Group::Cyclic(n) => {
            if p.start >= n || p.step >= n {
                return Err(Error::ApOutOfRange {
                    start: p.start,
                    step: p.step,
                    k: p.k,
                    n,
                });
            }
            Ok((0..p.k).map(|j| (p.start + j * p.step) % n).collect())
        }
        Group::Interval(n) => {
            let end = p.start + (p.k - 1) * p.step;
            if p.start < 1 || p.step < 1 || end > n {
                return Err(Error::ApOutOfRange {
                    start: p.start,
                    step: p.step,
                    k: p.k,
                    n,
                });
            }
            Ok((0..p.k).map(|j| p.start + j * p.step).collect())
        }
    }
}

/// True when some pair of the k terms coincides: `j d = 0 mod n` for some
/// `1 <= j <= k-1`.
pub fn is_degenerate_step(n: usize, d: usize, k: usize) -> bool {
    (1..k).any(|j| (j * d) % n == 0)
}

fn require_cyclic(c: &Coloring) -> Result<usize, Error> {
    match c.group() {
        Group::Cyclic(n) => Ok(n),
        Group::Interval(_) => Err(Error::NotCyclic),
    }
}

fn require_interval(c: &Coloring) -> Result<usize, Error> {
    match c.group() {
        Group::Interval(n) => Ok(n),
        Group::Cyclic(_) => Err(Error::NotInterval),
    }
}

/// Monochromatic progression count for every common difference `d in Z_n`,
/// over the full parameter space (degenerate progressions included).
pub fn mono_by_difference(c: &Coloring, k: usize) -> Result<Vec<u64>, Error> {
    let n = require_cyclic(c)?;
    let ones = Words::from_bits(c.bits(), false);
    let zeros = Words::from_bits(c.bits(), true);
    let mut out = vec![0u64; n];
    for (d, slot) in out.iter_mut().enumerate() {
        let mut acc1 = ones.clone();
        let mut acc0 = zeros.clone();
        for j in 1..k {
            let s = (j * d) % n;
            acc1.and_assign(&ones.rotated(s));
            acc0.and_assign(&zeros.rotated(s));
        }
        *slot = acc1.count_ones() + acc0.count_ones();
    }
    Ok(out)
}

/// Plain enumeration twin of [`mono_by_difference`]; the fast path is gated
/// on agreeing with this.
pub fn mono_by_difference_reference(c: &Coloring, k: usize) -> Result<Vec<u64>, Error> {
    let n = require_cyclic(c)?;
    let bits = c.bits();
    let mut out = vec![0u64; n];
    for d in 0..n {
        for a in 0..n {
            let first = bits[a];
            if (1..k).all(|j| bits[(a + j * d) % n] == first) {
                out[d] += 1;
            }
        }
    }
    Ok(out)
}

/// Number of monochromatic k-APs in a cyclic coloring under the given filter.
pub fn count_mono_cyclic(c: &Coloring, k: usize, filter: ApFilter) -> Result<u64, Error> {
    let n = require_cyclic(c)?;
    let by_d = mono_by_difference(c, k)?;
    Ok(match filter {
        ApFilter::All => by_d.iter().sum(),
        ApFilter::NonDegenerateOnly => by_d
            .iter()
            .enumerate()
            .filter(|&(d, _)| !is_degenerate_step(n, d, k))
            .map(|(_, &v)| v)
            .sum(),
    })
}

/// Number of monochromatic increasing k-APs (`d >= 1`) in an interval
/// coloring.
pub fn count_mono_interval(c: &Coloring, k: usize) -> Result<u64, Error> {
    let n = require_interval(c)?;
    if k < 2 {
        return Err(Error::UnsupportedK(k));
    }
    let ones = Words::from_bits(c.bits(), false);
    let zeros = Words::from_bits(c.bits(), true);
    let mut total = 0u64;
    let mut d = 1usize;
    while (k - 1) * d <= n.saturating_sub(1) {
        let mut acc1 = ones.clone();
        let mut acc0 = zeros.clone();
        for j in 1..k {
            acc1.and_assign(&ones.shifted_down(j * d));
            acc0.and_assign(&zeros.shifted_down(j * d));
        }
        total += acc1.count_ones() + acc0.count_ones();
        d += 1;
    }
    Ok(total)
}

pub fn count_mono_interval_reference(c: &Coloring, k: usize) -> Result<u64, Error> {
    let n = require_interval(c)?;
    let bits = c.bits();
    let mut total = 0u64;
    for d in 1..=n {
        if (k - 1) * d > n - 1 {
            break;
        }
        for a in 0..n - (k - 1) * d {
            let first = bits[a];
            if (1..k).all(|j| bits[a + j * d] == first) {
                total += 1;
            }
        }
    }
    Ok(total)
}

/// Total number of increasing k-APs in `[n]`: sum over `d >= 1` of
/// `max(0, n - (k-1)d)`.
pub fn total_increasing_aps(n: u64, k: u64) -> u64 {
    assert!(k >= 2, "progressions need at least two terms");
    let mut total = 0;
    let mut d = 1;
    while (k - 1) * d < n {
        total += n - (k - 1) * d;
        d += 1;
    }
    total
}

/// `u[i]` = number of k-AP parameters whose terms include exactly `i` red
/// (color 0) elements. Runs over the full cyclic parameter space, so the
/// entries sum to `n^2`.
pub fn u_vector(c: &Coloring, k: usize) -> Result<Vec<u64>, Error> {
    let n = require_cyclic(c)?;
    let bits = c.bits();
    let mut u = vec![0u64; k + 1];
    for a in 0..n {
        for d in 0..n {
            let reds = (0..k).filter(|&j| bits[(a + j * d) % n] == 0).count();
            u[reds] += 1;
        }
    }
    Ok(u)
}

/// Residue-class census of one color class: `residue_counts[l]` is the
/// number of elements of that color congruent to `l` modulo the given
/// modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorProfile {
    pub total: u64,
    pub residue_counts: Vec<u64>,
}

pub fn color_profile(c: &Coloring, modulus: usize, class: ColorClass) -> Result<ColorProfile, Error> {
    let n = require_cyclic(c)?;
    assert!(modulus >= 1, "modulus must be positive");
    let mut residue_counts = vec![0u64; modulus];
    for v in 0..n {
        if c.bit(v) == class.bit() {
            residue_counts[v % modulus] += 1;
        }
    }
    Ok(ColorProfile {
        total: residue_counts.iter().sum(),
        residue_counts,
    })
}

/// `|A_i ∩ A_j|` (or `|B_i ∩ B_j|`): the number of k-AP parameters whose
/// i-th and j-th terms (1-based) both have the given color.
///
/// `Formula` mode evaluates `r * sum_l rho_l^2` with `r = gcd(j-i, n)` and
/// `rho` the color's residue census mod `r`; `BruteForce` enumerates. The two
/// agree exactly for every n, including composite n.
pub fn pair_intersection(
    c: &Coloring,
    k: usize,
    i: usize,
    j: usize,
    class: ColorClass,
    mode: PairMode,
) -> Result<u64, Error> {
    let n = require_cyclic(c)?;
    if !(1 <= i && i < j && j <= k) {
        return Err(Error::IndexOrder { i, j, k });
    }
    match mode {
        PairMode::BruteForce => {
            let bits = c.bits();
            let want = class.bit();
            let mut count = 0u64;
            for a in 0..n {
                for d in 0..n {
                    if bits[(a + (i - 1) * d) % n] == want && bits[(a + (j - 1) * d) % n] == want {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
        PairMode::Formula => {
            let r = gcd_u64((j - i) as u64, n as u64) as usize;
            let profile = color_profile(c, r, class)?;
            Ok(r as u64 * profile.residue_counts.iter().map(|&x| x * x).sum::<u64>())
        }
    }
}

/// A set of length-k color tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    k: usize,
    patterns: BTreeSet<Vec<u8>>,
}

impl PatternSet {
    pub fn new(k: usize, patterns: impl IntoIterator<Item = Vec<u8>>) -> Result<PatternSet, Error> {
        if k < 2 {
            return Err(Error::UnsupportedK(k));
        }
        let mut set = BTreeSet::new();
        for p in patterns {
            if p.len() != k {
                return Err(Error::PatternLength { expected: k, got: p.len() });
            }
            if let Some(&b) = p.iter().find(|&&b| b > 1) {
                return Err(Error::IllegalCharacter((b'0' + b) as char));
            }
            set.insert(p);
        }
        Ok(PatternSet { k, patterns: set })
    }

    /// The 5-term patterns whose two overlapping 4-term windows each contain
    /// an even number of red entries. These are exactly the patterns for
    /// which both 4-AP extensions of the middle 3-AP are even-colored, the
    /// case that forces an excess of even-colored extensions.
    pub fn even_window_patterns() -> PatternSet {
        let k = 5;
        let mut patterns = BTreeSet::new();
        for x in 0u32..(1 << k) {
            let tuple: Vec<u8> = (0..k).map(|m| ((x >> (k - 1 - m)) & 1) as u8).collect();
            let window_even =
                |w: &[u8]| w.iter().filter(|&&b| b == 0).count() % 2 == 0;
            if window_even(&tuple[..k - 1]) && window_even(&tuple[1..]) {
                patterns.insert(tuple);
            }
        }
        PatternSet { k, patterns }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, pattern: &[u8]) -> bool {
        pattern.len() == self.k && self.patterns.contains(pattern)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.patterns.iter()
    }

    /// Membership table indexed by the pattern packed most-significant-first.
    pub(crate) fn lookup(&self) -> Vec<bool> {
        let mut lut = vec![false; 1usize << self.k];
        for p in &self.patterns {
            lut[Self::pack(p)] = true;
        }
        lut
    }

    pub(crate) fn pack(pattern: &[u8]) -> usize {
        pattern.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
    }
}

/// Number of increasing k-APs in an interval coloring whose color tuple is a
/// member of the pattern set.
pub fn count_frame_patterns(c: &Coloring, set: &PatternSet) -> Result<u64, Error> {
    let n = require_interval(c)?;
    let k = set.k();
    if k > n {
        return Ok(0);
    }
    let lut = set.lookup();
    let bits = c.bits();
    let mut total = 0u64;
    for d in 1..=n {
        if (k - 1) * d > n - 1 {
            break;
        }
        for a in 0..n - (k - 1) * d {
            let idx = (0..k).fold(0usize, |acc, j| (acc << 1) | bits[a + j * d] as usize);
            if lut[idx] {
                total += 1;
            }
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_coloring(rng: &mut ChaCha8Rng, group: Group) -> Coloring {
        let bits: Vec<u8> = (0..group.n()).map(|_| rng.gen_range(0..=1)).collect();
        Coloring::new(group, bits).unwrap()
    }

    #[test]
    fn kap_terms_examples() {
        assert_eq!(
            kap_terms(ApParam::new(9, 1, 4), Group::Cyclic(10)).unwrap(),
            vec![9, 0, 1, 2]
        );
        assert_eq!(
            kap_terms(ApParam::new(3, 0, 4), Group::Cyclic(7)).unwrap(),
            vec![3, 3, 3, 3]
        );
        assert_eq!(
            kap_terms(ApParam::new(1, 3, 4), Group::Interval(10)).unwrap(),
            vec![1, 4, 7, 10]
        );
        assert!(kap_terms(ApParam::new(2, 3, 4), Group::Interval(10)).is_err());
    }

    #[test]
    fn all_red_cyclic_is_fully_monochromatic() {
        for n in [1usize, 2, 7, 20] {
            let c = Coloring::from_fn(Group::Cyclic(n), |_| 0);
            assert_eq!(count_mono_cyclic(&c, 4, ApFilter::All).unwrap(), (n * n) as u64);
        }
    }

    #[test]
    fn fast_path_matches_reference_cyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=60);
            let c = random_coloring(&mut rng, Group::Cyclic(n));
            for k in [3usize, 4, 5] {
                assert_eq!(
                    mono_by_difference(&c, k).unwrap(),
                    mono_by_difference_reference(&c, k).unwrap(),
                    "n={n} k={k} c={c}"
                );
            }
        }
    }

    #[test]
    fn fast_path_matches_reference_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..40 {
            let n = rng.gen_range(1..=80);
            let c = random_coloring(&mut rng, Group::Interval(n));
            for k in [3usize, 4, 5] {
                assert_eq!(
                    count_mono_interval(&c, k).unwrap(),
                    count_mono_interval_reference(&c, k).unwrap(),
                    "n={n} k={k} c={c}"
                );
            }
        }
    }

    #[test]
    fn alternating_interval_three_term_count() {
        // 0101... on [10]: monochromatic 3-APs are exactly those with even d.
        let c = Coloring::from_fn(Group::Interval(10), |v| (v % 2) as u8);
        assert_eq!(count_mono_interval(&c, 3).unwrap(), 8);
    }

    #[test]
    fn no_five_term_progressions_fit_in_four() {
        let c = Coloring::from_fn(Group::Interval(4), |v| (v % 2) as u8);
        assert_eq!(count_mono_interval(&c, 5).unwrap(), 0);
    }

    #[test]
    fn total_increasing_ap_counts() {
        assert_eq!(total_increasing_aps(74, 5), 648);
        assert_eq!(total_increasing_aps(4, 5), 0);
        assert_eq!(total_increasing_aps(10, 3), 20);
    }

    #[test]
    fn u_vector_partitions_parameter_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.gen_range(1..=40);
            let c = random_coloring(&mut rng, Group::Cyclic(n));
            for k in [3usize, 4, 5] {
                let u = u_vector(&c, k).unwrap();
                assert_eq!(u.iter().sum::<u64>(), (n * n) as u64);
                assert_eq!(
                    u[0] + u[k],
                    count_mono_cyclic(&c, k, ApFilter::All).unwrap()
                );
            }
        }
    }

    #[test]
    fn u_vector_counts_red_terms() {
        // All-red (all bits 0): every progression has k red terms.
        let c = Coloring::from_fn(Group::Cyclic(13), |_| 0);
        let u = u_vector(&c, 4).unwrap();
        assert_eq!(u, vec![0, 0, 0, 0, 169]);
        let u_blue = u_vector(&c.conjugate(), 4).unwrap();
        assert_eq!(u_blue, vec![169, 0, 0, 0, 0]);
    }

    #[test]
    fn pair_intersection_modes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..25 {
            let n = rng.gen_range(1..=60);
            let c = random_coloring(&mut rng, Group::Cyclic(n));
            let k = 4;
            for i in 1..k {
                for j in i + 1..=k {
                    for class in [ColorClass::Red, ColorClass::Blue] {
                        let brute = pair_intersection(&c, k, i, j, class, PairMode::BruteForce).unwrap();
                        let formula = pair_intersection(&c, k, i, j, class, PairMode::Formula).unwrap();
                        assert_eq!(brute, formula, "n={n} i={i} j={j} {class:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pair_intersection_examples() {
        // Z_7, 3 red elements, coprime index gap: (red count)^2.
        let c = Coloring::parse("0001111", Group::Cyclic(7)).unwrap();
        assert_eq!(c.red_count(), 3);
        assert_eq!(
            pair_intersection(&c, 4, 1, 2, ColorClass::Red, PairMode::Formula).unwrap(),
            9
        );
        // All-blue: no red pairs at all.
        let blue = Coloring::from_fn(Group::Cyclic(9), |_| 1);
        assert_eq!(
            pair_intersection(&blue, 4, 2, 4, ColorClass::Red, PairMode::BruteForce).unwrap(),
            0
        );
        // Z_6 with red set {0,2,4}: r = gcd(2,6) = 2, profile (3,0), 2*9 = 18.
        let evens = Coloring::from_fn(Group::Cyclic(6), |v| (v % 2) as u8);
        assert_eq!(
            pair_intersection(&evens, 4, 1, 3, ColorClass::Red, PairMode::Formula).unwrap(),
            18
        );
        assert_eq!(
            pair_intersection(&evens, 4, 1, 3, ColorClass::Red, PairMode::BruteForce).unwrap(),
            18
        );
        assert!(pair_intersection(&evens, 4, 3, 2, ColorClass::Red, PairMode::Formula).is_err());
    }

    #[test]
    fn even_window_pattern_set_is_the_expected_eight() {
        let set = PatternSet::even_window_patterns();
        let expected: Vec<Vec<u8>> = vec![
            vec![1, 1, 1, 1, 1],
            vec![1, 0, 0, 1, 1],
            vec![1, 0, 1, 0, 1],
            vec![1, 1, 0, 0, 1],
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0],
            vec![0, 1, 0, 1, 0],
            vec![0, 0, 1, 1, 0],
        ];
        assert_eq!(set.len(), 8);
        for p in &expected {
            assert!(set.contains(p), "{p:?} missing");
        }
        // Closed under conjugation.
        for p in set.iter() {
            let conj: Vec<u8> = p.iter().map(|&b| 1 - b).collect();
            assert!(set.contains(&conj));
        }
    }

    #[test]
    fn frame_pattern_counts() {
        let set = PatternSet::even_window_patterns();
        // All-red [74]: every 5-AP matches (0,0,0,0,0).
        let all_red = Coloring::from_fn(Group::Interval(74), |_| 0);
        assert_eq!(count_frame_patterns(&all_red, &set).unwrap(), 648);
        // Too short for any 5-AP.
        let tiny = Coloring::from_fn(Group::Interval(4), |_| 0);
        assert_eq!(count_frame_patterns(&tiny, &set).unwrap(), 0);
        // Single 5-AP with pattern (1,0,0,0,0), not in the set.
        let c = Coloring::parse("10000", Group::Interval(5)).unwrap();
        assert_eq!(count_frame_patterns(&c, &set).unwrap(), 0);
    }

    #[test]
    fn degenerate_step_detection() {
        // Z_22, k=4: d=0 and d=11 are the degenerate steps.
        let degs: Vec<usize> = (0..22).filter(|&d| is_degenerate_step(22, d, 4)).collect();
        assert_eq!(degs, vec![0, 11]);
        // Z_2, k=4: every step is degenerate.
        assert!((0..2).all(|d| is_degenerate_step(2, d, 4)));
    }
}
