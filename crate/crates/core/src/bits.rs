//! Plain bit vector over u64 words.
//!
//! Bit i of word i/64 is position i; bits past `len` are kept zero so word
//! comparisons and popcounts are exact.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn filled(len: usize, value: bool) -> Self {
        let nwords = len.div_ceil(64);
        let mut words = vec![if value { !0u64 } else { 0 }; nwords];
        if value && len % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (len % 64)) - 1;
            }
        }
        BitVec { words, len }
    }

    pub fn from_bools(bools: &[bool]) -> Self {
        let mut v = BitVec::filled(bools.len(), false);
        for (i, &b) in bools.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Indices of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let tz = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }

    /// Count of i in [0, limit) with both bit i and bit i+gap set.
    /// Requires limit + gap <= len.
    pub fn count_pairs(&self, gap: usize, limit: usize) -> u64 {
        assert!(limit + gap <= self.len);
        let mut count = 0u64;
        let full_words = limit / 64;
        for wi in 0..full_words {
            count += (self.words[wi] & self.shifted_word(wi, gap)).count_ones() as u64;
        }
        let rem = limit % 64;
        if rem != 0 {
            let mask = (1u64 << rem) - 1;
            count +=
                (self.words[full_words] & self.shifted_word(full_words, gap) & mask).count_ones() as u64;
        }
        count
    }

    /// The 64 bits starting at position 64*wi + gap, as one word.
    #[inline]
    fn shifted_word(&self, wi: usize, gap: usize) -> u64 {
        let start = wi * 64 + gap;
        let q = start / 64;
        let r = start % 64;
        let lo = self.words.get(q).copied().unwrap_or(0) >> r;
        if r == 0 {
            lo
        } else {
            lo | (self.words.get(q + 1).copied().unwrap_or(0) << (64 - r))
        }
    }

    /// Compact lowercase hex: byte j holds bits 8j (LSB) .. 8j+7, bytes in order.
    pub fn to_hex(&self) -> String {
        let nbytes = self.len.div_ceil(8);
        let mut out = String::with_capacity(nbytes * 2);
        for j in 0..nbytes {
            let word = self.words[j / 8];
            let byte = (word >> ((j % 8) * 8)) as u8;
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}
