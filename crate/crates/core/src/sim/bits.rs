use smallvec::SmallVec;

/// Bits needed to write any value in `0..count` (at least 1).
pub fn width_for(count: u64) -> u32 {
    if count <= 2 {
        1
    } else {
        64 - (count - 1).leading_zeros()
    }
}

/// An append-only bit string. Its length is what the budget charges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: SmallVec<[u64; 2]>,
    len: u32,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends the low `width` bits of `value`.
    pub fn push(&mut self, value: u64, width: u32) {
        assert!(width <= 64, "field wider than 64 bits");
        debug_assert!(width == 64 || value >> width == 0, "{value} does not fit in {width} bits");
        if width == 0 {
            return;
        }
        let off = self.len % 64;
        if off == 0 {
            self.words.push(value);
        } else {
            let last = self.words.last_mut().expect("partial word exists");
            *last |= value << off;
            if off + width > 64 {
                self.words.push(value >> (64 - off));
            }
        }
        self.len += width;
    }

    /// Builder form of [`BitString::push`].
    pub fn with(mut self, value: u64, width: u32) -> Self {
        self.push(value, width);
        self
    }

    pub fn len(&self) -> u64 {
        self.len as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: self, pos: 0 }
    }
}

/// Sequential field reader over a [`BitString`].
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: u32,
}

impl BitReader<'_> {
    /// Reads the next `width`-bit field. Panics past the end.
    pub fn read(&mut self, width: u32) -> u64 {
        assert!(self.pos + width <= self.bits.len, "read past end of bit string");
        if width == 0 {
            return 0;
        }
        let (word, off) = ((self.pos / 64) as usize, self.pos % 64);
        let mut v = self.bits.words[word] >> off;
        if off + width > 64 {
            v |= self.bits.words[word + 1] << (64 - off);
        }
        self.pos += width;
        if width == 64 {
            v
        } else {
            v & ((1 << width) - 1)
        }
    }

    pub fn remaining(&self) -> u32 {
        self.bits.len - self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn widths() {
        assert_eq!(width_for(1), 1);
        assert_eq!(width_for(2), 1);
        assert_eq!(width_for(3), 2);
        assert_eq!(width_for(16), 4);
        assert_eq!(width_for(17), 5);
    }

    proptest! {
        #[test]
        fn round_trips(fields in proptest::collection::vec((any::<u64>(), 0u32..=64), 0..12)) {
            let mut s = BitString::new();
            let fields: Vec<(u64, u32)> = fields
                .into_iter()
                .map(|(v, w)| (if w == 64 { v } else if w == 0 { 0 } else { v & ((1 << w) - 1) }, w))
                .collect();
            for &(v, w) in &fields {
                s.push(v, w);
            }
            prop_assert_eq!(s.len(), fields.iter().map(|f| f.1 as u64).sum::<u64>());
            let mut r = s.reader();
            for &(v, w) in &fields {
                prop_assert_eq!(r.read(w), v);
            }
            prop_assert_eq!(r.remaining(), 0);
        }
    }
}
