//! Word-packed bit vectors used by the counting fast paths.
//!
//! The counting loops test "all first elements for a fixed difference" with
//! shifted AND/popcount passes. Results must match the plain enumeration
//! bit-for-bit; the equivalence is enforced by tests in `apcount`.

/// A bit vector of `n` bits packed into `u64` words. Bits past `n` in the
/// last word are always zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Words {
    n: usize,
    w: Vec<u64>,
}

impl Words {
    pub fn from_bits(bits: &[u8], invert: bool) -> Words {
        let n = bits.len();
        let mut w = vec![0u64; n.div_ceil(64).max(1)];
        for (i, &b) in bits.iter().enumerate() {
            if (b != 0) != invert {
                w[i / 64] |= 1 << (i % 64);
            }
        }
        Words { n, w }
    }

    pub fn count_ones(&self) -> u64 {
        self.w.iter().map(|x| x.count_ones() as u64).sum()
    }

    fn mask_top(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            let last = self.w.len() - 1;
            self.w[last] &= (1u64 << r) - 1;
        }
    }

    /// `out[v] = self[v + s]` for `v + s < n`, else 0.
    pub fn shifted_down(&self, s: usize) -> Words {
        let mut out = Words {
            n: self.n,
            w: vec![0; self.w.len()],
        };
        if s >= self.n {
            return out;
        }
        let q = s / 64;
        let r = s % 64;
        let len = self.w.len();
        for i in 0..len - q {
            let mut v = self.w[i + q] >> r;
            if r != 0 && i + q + 1 < len {
                v |= self.w[i + q + 1] << (64 - r);
            }
            out.w[i] = v;
        }
        out
    }

    /// `out[v] = self[v - s]` for `v >= s`, else 0.
    pub fn shifted_up(&self, s: usize) -> Words {
        let mut out = Words {
            n: self.n,
            w: vec![0; self.w.len()],
        };
        if s >= self.n {
            return out;
        }
        let q = s / 64;
        let r = s % 64;
        for i in q..self.w.len() {
            let mut v = self.w[i - q] << r;
            if r != 0 && i > q {
                v |= self.w[i - q - 1] >> (64 - r);
            }
            out.w[i] = v;
        }
        out.mask_top();
        out
    }

    /// Cyclic pull: `out[v] = self[(v + s) mod n]`.
    pub fn rotated(&self, s: usize) -> Words {
        let s = if self.n == 0 { 0 } else { s % self.n };
        if s == 0 {
            return self.clone();
        }
        let mut out = self.shifted_down(s);
        let high = self.shifted_up(self.n - s);
        for (o, h) in out.w.iter_mut().zip(&high.w) {
            *o |= h;
        }
        out
    }

    pub fn and_assign(&mut self, rhs: &Words) {
        for (a, b) in self.w.iter_mut().zip(&rhs.w) {
            *a &= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn reference_rotated(bits: &[u8], s: usize) -> Vec<u8> {
        let n = bits.len();
        (0..n).map(|v| bits[(v + s) % n]).collect()
    }

    #[test]
    fn shifts_and_rotations_match_reference() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1usize, 5, 63, 64, 65, 130, 200] {
            let bits: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let w = Words::from_bits(&bits, false);
            for s in [0, 1, 2, n / 2, n - 1, 63 % n, 64 % n] {
                let rot = w.rotated(s);
                let want = Words::from_bits(&reference_rotated(&bits, s), false);
                assert_eq!(rot, want, "n={n} s={s}");

                let down = w.shifted_down(s);
                let want_down: Vec<u8> = (0..n).map(|v| if v + s < n { bits[v + s] } else { 0 }).collect();
                assert_eq!(down, Words::from_bits(&want_down, false), "down n={n} s={s}");

                let up = w.shifted_up(s);
                let want_up: Vec<u8> = (0..n).map(|v| if v >= s { bits[v - s] } else { 0 }).collect();
                assert_eq!(up, Words::from_bits(&want_up, false), "up n={n} s={s}");
            }
        }
    }

    #[test]
    fn invert_masks_tail_bits() {
        let bits = vec![0u8; 70];
        let w = Words::from_bits(&bits, true);
        assert_eq!(w.count_ones(), 70);
    }
}
