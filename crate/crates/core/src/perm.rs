//! Permutations, injective words, Bruhat order and the position statistics
//! (left-to-right minima, right-to-left maxima, anti-fixed points).
//!
//! Everything is one-indexed: `w.at(i)` is `w(i)` for `i` in `1..=n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::catalan::catalan;
use crate::error::{invalid, Error, Result};
use crate::subset::Interval;

/// A bijection of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

/// A word of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InjectiveWord {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e > n || seen[e] {
                return Err(invalid(format!(
                    "{entries:?} is not a permutation of [{n}]"
                )));
            }
            seen[e] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// The longest element `w_0 = n(n-1)...1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            entries: (1..=n).rev().collect(),
        }
    }

    /// The permutation `(n+1)(n+2)...(2n)12...n` of `[2n]`.
    pub fn half_swap(n: usize) -> Self {
        Permutation {
            entries: (n + 1..=2 * n).chain(1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `w(i)` for one-indexed `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| e == i + 1)
    }

    pub fn is_longest(&self) -> bool {
        let n = self.len();
        self.entries.iter().enumerate().all(|(i, &e)| e == n - i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &e) in self.entries.iter().enumerate() {
            inv[e - 1] = i + 1;
        }
        Permutation { entries: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different sizes"
        );
        Permutation {
            entries: other.entries.iter().map(|&e| self.at(e)).collect(),
        }
    }

    /// `w_0 w^{-1} w_0`.
    pub fn reverse_complement_inverse(&self) -> Self {
        let w0 = Permutation::longest(self.len());
        w0.compose(&self.inverse()).compose(&w0)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        (0..e.len())
            .map(|i| (i + 1..e.len()).filter(|&j| e[i] > e[j]).count())
            .sum()
    }

    /// Sorted values `w({1..j})`.
    pub fn prefix_values(&self, j: usize) -> Vec<usize> {
        let mut v = self.entries[..j].to_vec();
        v.sort_unstable();
        v
    }

    pub fn as_word(&self) -> InjectiveWord {
        InjectiveWord {
            entries: self.entries.clone(),
        }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n).collect()),
        }
    }

    /// The 123-avoiding permutations of `[n]`, in lexicographic order.
    pub fn avoiding_123(n: usize) -> Vec<Permutation> {
        fn extend(
            prefix: &mut Vec<usize>,
            used: &mut [bool],
            n: usize,
            out: &mut Vec<Permutation>,
        ) {
            if prefix.len() == n {
                out.push(Permutation {
                    entries: prefix.clone(),
                });
                return;
            }
            // Smallest value that already sits on top of an increasing pair.
            let mut min_so_far = usize::MAX;
            let mut pair_top = usize::MAX;
            for &e in prefix.iter() {
                if e > min_so_far {
                    pair_top = pair_top.min(e);
                }
                min_so_far = min_so_far.min(e);
            }
            for x in 1..=n {
                if used[x] || x > pair_top {
                    continue;
                }
                used[x] = true;
                prefix.push(x);
                extend(prefix, used, n, out);
                prefix.pop();
                used[x] = false;
            }
        }
        let mut out = Vec::new();
        extend(
            &mut Vec::with_capacity(n),
            &mut vec![false; n + 1],
            n,
            &mut out,
        );
        out
    }

    pub fn avoids_123(&self) -> bool {
        let mut min_so_far = usize::MAX;
        let mut pair_top = usize::MAX;
        for &e in &self.entries {
            if e > pair_top {
                return false;
            }
            if e > min_so_far {
                pair_top = pair_top.min(e);
            }
            min_so_far = min_so_far.min(e);
        }
        true
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation { entries: current })
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.entries
    }
}

impl InjectiveWord {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let mut sorted = entries.clone();
        sorted.sort_unstable();
        if sorted.first() == Some(&0) || sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(invalid(format!(
                "{entries:?} is not an injective word on positive integers"
            )));
        }
        Ok(InjectiveWord { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }
}

impl From<&Permutation> for InjectiveWord {
    fn from(p: &Permutation) -> Self {
        p.as_word()
    }
}

/// Tableau criterion: `u ≤ v` iff for every `j` the sorted values of
/// `u({1..j})` are componentwise at most those of `v({1..j})`.
pub fn bruhat_leq(u: &InjectiveWord, v: &InjectiveWord) -> Result<bool> {
    if u.len() != v.len() {
        return Err(invalid(format!(
            "Bruhat comparison of words of lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(words_leq(&u.entries, &v.entries))
}

/// Bruhat order on `S_n`.
pub fn perm_leq(u: &Permutation, v: &Permutation) -> bool {
    assert_eq!(
        u.len(),
        v.len(),
        "Bruhat comparison of permutations of different sizes"
    );
    words_leq(&u.entries, &v.entries)
}

pub(crate) fn words_leq(u: &[usize], v: &[usize]) -> bool {
    let mut su: Vec<usize> = Vec::with_capacity(u.len());
    let mut sv: Vec<usize> = Vec::with_capacity(v.len());
    for (&a, &b) in u.iter().zip(v) {
        let pa = su.partition_point(|&x| x < a);
        su.insert(pa, a);
        let pb = sv.partition_point(|&x| x < b);
        sv.insert(pb, b);
        if su.iter().zip(&sv).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

/// Whether some subsequence of `w` is order-isomorphic to `p`.
pub fn contains_pattern(w: &Permutation, p: &Permutation) -> Result<bool> {
    if p.len() > w.len() {
        return Err(invalid(format!(
            "pattern of length {} longer than permutation of length {}",
            p.len(),
            w.len()
        )));
    }
    fn place(w: &[usize], p: &[usize], chosen: &mut Vec<usize>, start: usize) -> bool {
        let k = chosen.len();
        if k == p.len() {
            return true;
        }
        let last_start = w.len() - (p.len() - k);
        for pos in start..=last_start {
            let fits = chosen
                .iter()
                .enumerate()
                .all(|(t, &q)| (w[q] < w[pos]) == (p[t] < p[k]));
            if fits {
                chosen.push(pos);
                if place(w, p, chosen, pos + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(place(
        &w.entries,
        &p.entries,
        &mut Vec::with_capacity(p.len()),
        0,
    ))
}

/// The partition of positions used by the decomposition of `P_w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositionClasses {
    /// Left-to-right minima that are not right-to-left maxima.
    pub left: Vec<usize>,
    /// Right-to-left maxima that are not left-to-right minima.
    pub right: Vec<usize>,
    /// Anti-fixed points, `w(i) = n - i + 1`.
    pub anti: Vec<usize>,
    /// Maximal runs of consecutive anti-fixed points, in increasing order.
    pub runs: Vec<Interval>,
}

pub fn left_to_right_minima(w: &Permutation) -> Vec<usize> {
    let mut min = usize::MAX;
    let mut out = Vec::new();
    for i in 1..=w.len() {
        if w.at(i) < min {
            min = w.at(i);
            out.push(i);
        }
    }
    out
}

pub fn right_to_left_maxima(w: &Permutation) -> Vec<usize> {
    let mut max = 0;
    let mut out = Vec::new();
    for i in (1..=w.len()).rev() {
        if w.at(i) > max {
            max = w.at(i);
            out.push(i);
        }
    }
    out.reverse();
    out
}

pub fn classify_positions(w: &Permutation) -> PositionClasses {
    let n = w.len();
    let minima = left_to_right_minima(w);
    let maxima = right_to_left_maxima(w);
    let left = minima
        .iter()
        .copied()
        .filter(|i| !maxima.contains(i))
        .collect();
    let right = maxima
        .iter()
        .copied()
        .filter(|i| !minima.contains(i))
        .collect();
    let anti: Vec<usize> = (1..=n).filter(|&i| w.at(i) == n - i + 1).collect();
    let mut runs: Vec<Interval> = Vec::new();
    for &a in &anti {
        match runs.last_mut() {
            Some(run) if run.end + 1 == a => run.end = a,
            _ => runs.push(Interval::new(a, a)),
        }
    }
    PositionClasses {
        left,
        right,
        anti,
        runs,
    }
}

/// `g(w)`: the product of `C_{l+1}` over run lengths `l` of anti-fixed points.
pub fn g_stat(w: &Permutation) -> BigUint {
    classify_positions(w)
        .runs
        .iter()
        .map(|r| catalan(r.len() + 1))
        .fold(BigUint::one(), |acc, c| acc * c)
}

/// One-line notation; entries above 9 are parenthesized, as in `5678(10)9(12)(11)`.
pub(crate) fn write_word(
    f: &mut fmt::Formatter<'_>,
    entries: impl IntoIterator<Item = i64>,
) -> fmt::Result {
    for e in entries {
        if (0..=9).contains(&e) {
            write!(f, "{e}")?;
        } else {
            write!(f, "({e})")?;
        }
    }
    Ok(())
}

pub(crate) fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.contains(',') || s.contains(char::is_whitespace) {
        return s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}")))
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if let Some(d) = c.to_digit(10) {
            out.push(d as usize);
        } else if c == '(' {
            let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
            let v = inner
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad entry ({inner}) in {s:?}")))?;
            out.push(v);
        } else {
            return Err(Error::Parse(format!("unexpected {c:?} in word {s:?}")));
        }
    }
    Ok(out)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.entries.iter().map(|&e| e as i64))
    }
}

impl fmt::Display for InjectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.entries.iter().map(|&e| e as i64))
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::new(parse_word(s)?)
    }
}

impl FromStr for InjectiveWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InjectiveWord::new(parse_word(s)?)
    }
}
