use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of edge ids below `m`, stored as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    m: usize,
    words: Vec<u64>,
}

impl EdgeSubset {
    pub fn empty(m: usize) -> Self {
        EdgeSubset {
            m,
            words: vec![0; m.div_ceil(64)],
        }
    }

    pub fn full(m: usize) -> Self {
        let mut s = Self::empty(m);
        for id in 0..m {
            s.insert(id);
        }
        s
    }

    pub fn from_ids(m: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(m);
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Size of the id universe.
    pub fn universe(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn contains(&self, id: usize) -> bool {
        id < self.m && self.words[id / 64] >> (id % 64) & 1 == 1
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.m, "edge id {id} outside universe {}", self.m);
        self.words[id / 64] |= 1 << (id % 64);
    }

    pub fn remove(&mut self, id: usize) {
        if id < self.m {
            self.words[id / 64] &= !(1 << (id % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        self.zip(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &EdgeSubset) -> EdgeSubset {
        self.zip(other, |a, b| a & !b)
    }

    pub fn intersection(&self, other: &EdgeSubset) -> EdgeSubset {
        self.zip(other, |a, b| a & b)
    }

    pub fn union_with(&mut self, other: &EdgeSubset) {
        assert_eq!(self.m, other.m);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &EdgeSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &EdgeSubset, f: impl Fn(u64, u64) -> u64) -> EdgeSubset {
        assert_eq!(self.m, other.m, "edge subsets over different universes");
        EdgeSubset {
            m: self.m,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    m: usize,
    ids: Vec<usize>,
}

impl Serialize for EdgeSubset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            m: self.m,
            ids: self.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgeSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if let Some(&bad) = w.ids.iter().find(|&&id| id >= w.m) {
            return Err(serde::de::Error::custom(format!("edge id {bad} >= m = {}", w.m)));
        }
        Ok(EdgeSubset::from_ids(w.m, w.ids))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn behaves_like_a_sorted_set(m in 1usize..200, ids in proptest::collection::vec(0usize..200, 0..60)) {
            let ids: Vec<usize> = ids.into_iter().filter(|&i| i < m).collect();
            let s = EdgeSubset::from_ids(m, ids.iter().copied());
            let mut expect = ids.clone();
            expect.sort_unstable();
            expect.dedup();
            prop_assert_eq!(s.iter().collect::<Vec<_>>(), expect.clone());
            prop_assert_eq!(s.len(), expect.len());
            let json = serde_json::to_string(&s).unwrap();
            prop_assert_eq!(serde_json::from_str::<EdgeSubset>(&json).unwrap(), s);
        }
    }

    #[test]
    fn set_algebra() {
        let a = EdgeSubset::from_ids(70, [1, 5, 64, 69]);
        let b = EdgeSubset::from_ids(70, [5, 6, 69]);
        assert_eq!(a.union(&b).iter().collect::<Vec<_>>(), vec![1, 5, 6, 64, 69]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![1, 64]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![5, 69]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.contains(70));
    }
}
