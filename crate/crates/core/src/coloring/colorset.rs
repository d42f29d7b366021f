use std::fmt;

use serde::{Serialize, Serializer};

use super::Color;

/// A set of colors backed by a growable bitset.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ColorSet {
    words: Vec<u64>,
}

impl ColorSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{1, ..., k}`.
    pub fn full(k: Color) -> Self {
        let mut s = Self::new();
        for c in 1..=k {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: Color) -> bool {
        let (w, b) = (c as usize / 64, c % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, c: Color) -> bool {
        let (w, b) = (c as usize / 64, c % 64);
        let Some(word) = self.words.get_mut(w) else {
            return false;
        };
        let had = *word >> b & 1 == 1;
        *word &= !(1 << b);
        self.trim();
        had
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, c: Color) -> bool {
        let (w, b) = (c as usize / 64, c % 64);
        self.words.get(w).is_some_and(|word| word >> b & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn min(&self) -> Option<Color> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<Color> {
        let (i, w) = self.words.iter().enumerate().rev().find(|(_, w)| **w != 0)?;
        Some((i * 64 + 63 - w.leading_zeros() as usize) as Color)
    }

    /// Colors in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((i * 64) as Color + b)
            })
        })
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = ColorSet { words };
        s.trim();
        s
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        let mut s = ColorSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn union(&self, other: &ColorSet) -> ColorSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        ColorSet { words }
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.difference(other).is_empty()
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::new();
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl<const N: usize> From<[Color; N]> for ColorSet {
    fn from(colors: [Color; N]) -> Self {
        colors.into_iter().collect()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ColorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut s = ColorSet::full(5);
        assert_eq!(s.len(), 5);
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 2, 4, 5]);
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(5));
        s.insert(130);
        assert_eq!(s.max(), Some(130));
        s.remove(130);
        assert_eq!(s, ColorSet::from([1, 2, 4, 5]));
    }

    proptest! {
        #[test]
        fn matches_btreeset(a in proptest::collection::btree_set(0u32..200, 0..30),
                            b in proptest::collection::btree_set(0u32..200, 0..30)) {
            let sa: ColorSet = a.iter().copied().collect();
            let sb: ColorSet = b.iter().copied().collect();
            prop_assert_eq!(sa.len(), a.len());
            prop_assert_eq!(sa.difference(&sb).iter().collect::<Vec<_>>(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.max(), a.iter().next_back().copied());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        }
    }
}
