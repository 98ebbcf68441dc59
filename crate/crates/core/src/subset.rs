//! Subsets of `[m]` for `m ≤ 64`, stored as bit masks (element `i` is bit `i-1`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub const MAX_GROUND: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Subset(u64);

/// The integer interval `[start, end]`, both ends inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }

    pub fn len(&self) -> usize {
        (self.end + 1).saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, x: usize) -> bool {
        self.start <= x && x <= self.end
    }

    pub fn to_subset(&self) -> Subset {
        Subset::range(self.start, self.end)
    }
}

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_elements(elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Subset(0);
        for e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(invalid(format!("element {e} outside [1, {MAX_GROUND}]")));
            }
            s.0 |= 1 << (e - 1);
        }
        Ok(s)
    }

    /// `[a, b]`, empty when `b < a`.
    pub fn range(a: usize, b: usize) -> Self {
        let mut s = Subset(0);
        for e in a.max(1)..=b.min(MAX_GROUND) {
            s.0 |= 1 << (e - 1);
        }
        s
    }

    /// `[m]`.
    pub fn full(m: usize) -> Self {
        Subset::range(1, m)
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!((1..=MAX_GROUND).contains(&e), "element {e} out of range");
        self.0 |= 1 << (e - 1);
    }

    pub fn remove(&mut self, e: usize) {
        if (1..=MAX_GROUND).contains(&e) {
            self.0 &= !(1 << (e - 1));
        }
    }

    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// `[m] \ self`.
    pub fn complement(self, m: usize) -> Subset {
        Subset(Subset::full(m).0 & !self.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `{ f(x) : x ∈ self }`.
    pub fn map(self, mut f: impl FnMut(usize) -> usize) -> Subset {
        let mut out = Subset(0);
        for e in self.iter() {
            out.insert(f(e));
        }
        out
    }

    /// `self + k`.
    pub fn translate(self, k: usize) -> Subset {
        Subset(self.0 << k)
    }

    /// `self \ i ∪ j` when `i ∈ self` and `j ∉ self`, else `self`.
    pub fn shift(self, i: usize, j: usize) -> Subset {
        if self.contains(i) && !self.contains(j) {
            self.without(i).with(j)
        } else {
            self
        }
    }

    /// Componentwise comparison of sorted elements (the Gale order); sizes must agree.
    pub fn gale_leq(self, other: Subset) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.iter().zip(other.iter()).all(|(a, b)| a <= b)
    }

    /// Compact notation with parenthesized multi-digit elements, e.g. `13469(12)`.
    pub fn word(self) -> String {
        self.iter()
            .map(|e| {
                if e < 10 {
                    e.to_string()
                } else {
                    format!("({e})")
                }
            })
            .collect()
    }
}

/// Lexicographic order on increasing element sequences.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let (holder, other_bits) = if self.0 & low != 0 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        // The set lacking the first differing element is a proper prefix
        // unless it continues with something larger.
        let above = !(low | (low - 1));
        if other_bits & above != 0 {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let t = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(t + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = Subset(0);
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for Subset {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Subset::from_elements(v)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sorted comma-separated integers, e.g. `1,3,4,6,9,12`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Subset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let elements = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad element {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Subset::from_elements(elements)
    }
}
