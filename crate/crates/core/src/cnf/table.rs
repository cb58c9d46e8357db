use std::fmt;

/// Bit `k` of word `w` for variable positions below 6.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// The `2^num_vars` values of a Boolean function, packed into words.
///
/// Unused high bits of the last word are always zero so that derived
/// equality and hashing are semantic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    num_vars: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn constant(num_vars: usize, value: bool) -> TruthTable {
        let len = Self::word_count(num_vars);
        let mut t = TruthTable {
            num_vars,
            words: vec![if value { !0 } else { 0 }; len],
        };
        t.mask_tail();
        t
    }

    pub fn from_fn(num_vars: usize, f: impl Fn(usize) -> bool) -> TruthTable {
        let mut t = TruthTable::constant(num_vars, false);
        for i in 0..t.len() {
            if f(i) {
                t.words[i / 64] |= 1 << (i % 64);
            }
        }
        t
    }

    fn word_count(num_vars: usize) -> usize {
        if num_vars <= 6 {
            1
        } else {
            1 << (num_vars - 6)
        }
    }

    fn mask_tail(&mut self) {
        if self.num_vars < 6 {
            self.words[0] &= (1u64 << (1 << self.num_vars)) - 1;
        }
    }

    /// Column of the variable at position `pos` for word `word`.
    pub(crate) fn variable_word(pos: usize, word: usize) -> u64 {
        if pos < 6 {
            LOW_PATTERNS[pos]
        } else if (word >> (pos - 6)) & 1 == 1 {
            !0
        } else {
            0
        }
    }

    /// Ands every word with `mask(word_index)`.
    pub(crate) fn retain_where(&mut self, mask: impl Fn(usize) -> u64) {
        for (w, word) in self.words.iter_mut().enumerate() {
            *word &= mask(w);
        }
        self.mask_tail();
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Number of entries, `2^num_vars`.
    pub fn len(&self) -> usize {
        1 << self.num_vars
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `Some(value)` when the function is constant.
    pub fn constant_value(&self) -> Option<bool> {
        let ones = self.count_ones();
        if ones == 0 {
            Some(false)
        } else if ones == self.len() as u64 {
            Some(true)
        } else {
            None
        }
    }

    /// Table over the remaining variables after fixing position `pos`.
    pub fn cofactor(&self, pos: usize, value: bool) -> TruthTable {
        assert!(pos < self.num_vars, "cofactor position out of range");
        let n = self.num_vars - 1;
        let low_mask = (1usize << pos) - 1;
        let fixed = usize::from(value) << pos;
        TruthTable::from_fn(n, |i| {
            let src = ((i & !low_mask) << 1) | fixed | (i & low_mask);
            self.get(src)
        })
    }

    /// True when the function changes with the variable at `pos`.
    pub fn depends_on(&self, pos: usize) -> bool {
        self.cofactor(pos, false) != self.cofactor(pos, true)
    }

    /// The contiguous slice `[start, start + 2^num_vars)` as a table.
    ///
    /// `start` must be a multiple of the slice length.
    pub fn slice(&self, start: usize, num_vars: usize) -> TruthTable {
        let len = 1usize << num_vars;
        debug_assert_eq!(start % len, 0);
        if num_vars >= 6 {
            TruthTable {
                num_vars,
                words: self.words[start / 64..(start + len) / 64].to_vec(),
            }
        } else {
            let word = self.words[start / 64] >> (start % 64);
            let mut t = TruthTable {
                num_vars,
                words: vec![word],
            };
            t.mask_tail();
            t
        }
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({} vars, ", self.num_vars)?;
        if self.num_vars <= 6 {
            for b in self.bits() {
                write!(f, "{}", u8::from(b))?;
            }
        } else {
            write!(f, "{} ones", self.count_ones())?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_masked() {
        let t = TruthTable::constant(2, true);
        assert_eq!(t.count_ones(), 4);
        assert_eq!(t.constant_value(), Some(true));
        assert_eq!(TruthTable::constant(0, false).constant_value(), Some(false));
        assert_eq!(TruthTable::constant(9, true).count_ones(), 512);
    }

    #[test]
    fn cofactor_matches_definition() {
        // f(a, b, c) = a & !c, positions a=0, b=1, c=2.
        let f = TruthTable::from_fn(3, |i| i & 1 == 1 && i & 4 == 0);
        let f_b1 = f.cofactor(1, true);
        assert_eq!(f_b1, TruthTable::from_fn(2, |i| i & 1 == 1 && i & 2 == 0));
        assert!(!f.depends_on(1));
        assert!(f.depends_on(0));
        assert_eq!(f.cofactor(2, true).constant_value(), Some(false));
    }

    #[test]
    fn slices_of_small_and_large_tables() {
        let f = TruthTable::from_fn(8, |i| i % 3 == 0);
        let s = f.slice(128, 7);
        assert_eq!(s, TruthTable::from_fn(7, |i| (i + 128) % 3 == 0));
        let s = f.slice(8, 2);
        assert_eq!(s, TruthTable::from_fn(2, |i| (i + 8) % 3 == 0));
    }
}
