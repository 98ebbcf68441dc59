//! The positroids `P_w`, membership through `v_I` and `u_I`, the pieces `Q_v`
//! of the decomposition along 123-avoiding permutations, bounded affine
//! permutations with their juggling sequences, and the two symmetries.

use std::fmt;

use rayon::prelude::*;

use crate::error::{check_bound, invalid, Error, Result};
use crate::family::{direct_sum, SetFamily};
use crate::order::z_segment;
use crate::path::DyckPath;
use crate::perm::{
    classify_positions, perm_leq, words_leq, write_word, InjectiveWord, Permutation,
};
use crate::subset::{Interval, Subset};
use crate::transversal::{pattern_mw, SupportPattern};

fn check_n_set(set: Subset, n: usize) -> Result<()> {
    if set.len() != n || !set.is_subset(Subset::full(2 * n)) {
        return Err(invalid(format!(
            "{{{set}}} is not an {n}-subset of [{}]",
            2 * n
        )));
    }
    Ok(())
}

/// `v_I`: elements `i > n` of `I` sit in position `i - n`; the elements
/// `≤ n` fill the remaining positions in decreasing order.
pub fn v_word(set: Subset, n: usize) -> Result<InjectiveWord> {
    check_n_set(set, n)?;
    Ok(InjectiveWord::new(v_entries(set, n)).expect("v_I is injective"))
}

fn v_entries(set: Subset, n: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for e in set.iter().filter(|&e| e > n) {
        v[e - n - 1] = e;
    }
    let mut small = set
        .iter()
        .filter(|&e| e <= n)
        .collect::<Vec<_>>()
        .into_iter()
        .rev();
    for slot in v.iter_mut().filter(|s| **s == 0) {
        *slot = small.next().expect("n elements fill n positions");
    }
    v
}

/// `u_I`, the Bruhat-maximal `w` with `I ∈ P_w`: keep `v_I(j)` where
/// `v_I(j) ≤ n - j + 1`, then fill the other positions decreasingly.
pub fn u_perm(set: Subset, n: usize) -> Result<Permutation> {
    check_n_set(set, n)?;
    Ok(u_from_v(&v_entries(set, n)))
}

fn u_from_v(v: &[usize]) -> Permutation {
    let n = v.len();
    let mut u: Vec<usize> = v
        .iter()
        .enumerate()
        .map(|(j, &e)| if e <= n - j { e } else { 0 })
        .collect();
    let used: Subset = u.iter().copied().filter(|&e| e > 0).collect();
    let mut rest = used.complement(n).to_vec().into_iter().rev();
    for slot in u.iter_mut().filter(|s| **s == 0) {
        *slot = rest.next().expect("missing values fill the gaps");
    }
    Permutation::new(u).expect("u_I is a permutation")
}

/// The meet of an injective word with `w_0`: its prefix sets are
/// `E_j = {min(b_i, n - j + i)}` for `v([j]) = {b_1 < … < b_j}`.
pub fn meet_with_longest(v: &InjectiveWord) -> Result<Permutation> {
    let n = v.len();
    let mut prev = Subset::EMPTY;
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        let mut prefix = v.entries()[..j].to_vec();
        prefix.sort_unstable();
        let e: Subset = prefix
            .iter()
            .enumerate()
            .map(|(i, &b)| b.min(n - j + i + 1))
            .collect();
        let new = e.difference(prev);
        if !prev.is_subset(e) || new.len() != 1 {
            return Err(Error::Domain(format!(
                "prefix sets of the meet of {v} with w_0 are not nested"
            )));
        }
        out.push(new.min().unwrap());
        prev = e;
    }
    Permutation::new(out)
}

/// `I ∈ P_w` iff `v_I ≥ w`.
pub fn member(w: &Permutation, set: Subset) -> Result<bool> {
    check_n_set(set, w.len())?;
    Ok(words_leq(w.entries(), &v_entries(set, w.len())))
}

/// A bijection `f` of `ℤ` with `f(i + N) = f(i) + N`, stored by its window `f(1..=N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(invalid("affine permutation needs a nonempty window"));
        }
        let mut residues: Vec<i64> = window.iter().map(|v| v.rem_euclid(n)).collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.len() != window.len() {
            return Err(invalid(format!(
                "window {window:?} repeats a residue mod {n}"
            )));
        }
        Ok(AffinePermutation { window })
    }

    pub fn quasiperiod(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn eval(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let q = (i - 1).div_euclid(n);
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + q * n
    }

    /// `i ≤ f(i) ≤ i + N` on the window, hence everywhere.
    pub fn is_bounded(&self) -> bool {
        let n = self.window.len() as i64;
        self.window
            .iter()
            .zip(1..)
            .all(|(&f, i)| i <= f && f <= i + n)
    }

    /// Number of window values exceeding `N`: the rank of the positroid.
    pub fn rank(&self) -> usize {
        let n = self.window.len() as i64;
        self.window.iter().filter(|&&f| f > n).count()
    }

    /// `J_i = {f(j) - i + 1 : j < i} ∩ ℕ`; only `j ∈ [i - N, i - 1]` can contribute.
    pub fn juggling(&self) -> Result<JugglingSequence> {
        if !self.is_bounded() {
            return Err(Error::Domain(format!("{self} is not bounded")));
        }
        let n = self.window.len() as i64;
        let sets = (1..=n)
            .map(|i| {
                (i - n..i)
                    .map(|j| self.eval(j) - i + 1)
                    .filter(|&v| v >= 1)
                    .map(|v| v as usize)
                    .collect()
            })
            .collect();
        Ok(JugglingSequence { sets })
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.window.iter().copied())
    }
}

/// `f_w` with quasiperiod `2n`: `i ↦ i + n` on `[n]`, `i ↦ w(i - n) + 2n` on `[n+1, 2n]`.
pub fn affine_perm(w: &Permutation) -> AffinePermutation {
    let n = w.len();
    let window = (1..=n)
        .map(|i| (i + n) as i64)
        .chain((1..=n).map(|i| (w.at(i) + 2 * n) as i64))
        .collect();
    AffinePermutation::new(window).expect("f_w is an affine permutation")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JugglingSequence {
    sets: Vec<Subset>,
}

impl JugglingSequence {
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    /// `J_i`, one-indexed.
    pub fn get(&self, i: usize) -> Subset {
        self.sets[i - 1]
    }

    /// `χ^{-i+1} I ≥ J_i` for every `i`, with `≥` the componentwise order on sorted sets.
    pub fn accepts(&self, set: Subset) -> bool {
        let n = self.sets.len();
        self.sets.iter().enumerate().all(|(k, &j)| {
            let rotated = set.map(|e| (e + n - 1 - k) % n + 1);
            rotated.len() == j.len() && j.gale_leq(rotated)
        })
    }
}

/// Membership through the juggling sequence of `f_w`.
pub fn member_via_juggling(w: &Permutation, set: Subset) -> Result<bool> {
    check_n_set(set, w.len())?;
    Ok(affine_perm(w).juggling()?.accepts(set))
}

/// `B_j(I)`: the `j` largest elements of `χ^{-n-j} I`, lowered by `n - j`.
pub fn b_set(set: Subset, n: usize, j: usize) -> Subset {
    let m = 2 * n;
    let rotated = set.map(|e| (e + m - n - j - 1) % m + 1).to_vec();
    rotated[rotated.len() - j..]
        .iter()
        .map(|&b| b + j - n)
        .collect()
}

/// Membership through `B_j(I) ≥ w([j])` for `j ∈ [n]`.
pub fn member_via_b_sets(w: &Permutation, set: Subset) -> Result<bool> {
    let n = w.len();
    check_n_set(set, n)?;
    Ok((1..=n).all(|j| {
        let prefix: Subset = w.entries()[..j].iter().copied().collect();
        prefix.gale_leq(b_set(set, n, j))
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Filter every `n`-subset through `v_I ≥ w`.
    #[default]
    VWordFilter,
    /// Union of `Q_v` over 123-avoiding `v ≥ w`.
    QUnion,
}

pub fn enumerate_pw(w: &Permutation, strategy: Strategy, max_n: usize) -> Result<SetFamily> {
    let n = w.len();
    check_bound("permutation size", n, max_n)?;
    match strategy {
        Strategy::VWordFilter => {
            let candidates = SetFamily::all_of_size(2 * n, n);
            let members: Vec<Subset> = candidates
                .members()
                .par_iter()
                .copied()
                .filter(|&s| words_leq(w.entries(), &v_entries(s, n)))
                .collect();
            Ok(SetFamily::from_sorted_unchecked(2 * n, members))
        }
        Strategy::QUnion => {
            let mut members = Vec::new();
            for v in Permutation::avoiding_123(n) {
                if perm_leq(w, &v) {
                    members.extend(q_family(&v)?.iter());
                }
            }
            SetFamily::new(2 * n, members)
        }
    }
}

/// `P_n = P_{w_0}` described by `#(I ∩ [n-j+1, n+j]) ≥ j` for `j ∈ [n]`.
pub fn catalan_inequalities(n: usize) -> SetFamily {
    let members = SetFamily::all_of_size(2 * n, n)
        .iter()
        .filter(|s| (1..=n).all(|j| s.intersection(Subset::range(n - j + 1, n + j)).len() >= j))
        .collect();
    SetFamily::from_sorted_unchecked(2 * n, members)
}

/// The column map `[2, 2n+1] → [2n]`: `2, 3, 4, 5, … ↦ n+1, n, n+2, n-1, …`.
pub fn alpha(k: usize, n: usize) -> usize {
    if k.is_multiple_of(2) {
        n + k / 2
    } else {
        n + 1 - (k - 1) / 2
    }
}

/// `{α(D ∖ 1) : D ∈ C_{n+1}}`, the Catalan matroid carried onto `[2n]`.
pub fn catalan_via_alpha(n: usize) -> SetFamily {
    let members = DyckPath::all(n + 1)
        .into_iter()
        .map(|d| d.up_steps().without(1).map(|k| alpha(k, n)));
    SetFamily::new(2 * n, members).expect("α maps into [2n]")
}

/// The `(m) × 2m` matrix with row `i` nonzero on columns `[1, 2i-1]`, whose
/// bases are the up-step sets of Dyck paths of semilength `m`.
pub fn pattern_catalan(m: usize) -> Result<SupportPattern> {
    SupportPattern::from_rows(
        2 * m,
        (1..=m).map(|i| Subset::range(1, 2 * i - 1)).collect(),
    )
}

/// `P_{K,n} = f_{K,n}(P_{#K})`, where `f_{K,n}` is the increasing map onto `Z_{#K} K`.
pub fn p_kn(k: Interval, n: usize) -> Result<SetFamily> {
    if k.is_empty() || k.start == 0 || k.end > n {
        return Err(invalid(format!(
            "[{}, {}] is not a nonempty interval of [{n}]",
            k.start, k.end
        )));
    }
    let len = k.len();
    let target = z_segment(k.to_subset(), len, n)?.to_vec();
    pattern_mw(&Permutation::longest(len))
        .enumerate_bases(len)?
        .map_elements(2 * n, |e| target[e - 1])
}

/// `Q_v = ⊕ P_{A_i,n} ⊕ {v(L(v))} ⊕ {n + R(v)}`; empty when `v` contains 123.
pub fn q_family(v: &Permutation) -> Result<SetFamily> {
    let n = v.len();
    if !v.avoids_123() {
        return Ok(SetFamily::empty(2 * n));
    }
    let classes = classify_positions(v);
    let fixed: Subset = classes
        .left
        .iter()
        .map(|&i| v.at(i))
        .chain(classes.right.iter().map(|&i| i + n))
        .collect();
    let mut out = SetFamily::singleton(2 * n, fixed)?;
    for &run in &classes.runs {
        out = direct_sum(&out, &p_kn(run, n)?)?;
    }
    Ok(out)
}

/// `N_v`: the matrix whose transversal matroid is `Q_v`.
pub fn pattern_nw(v: &Permutation) -> Result<SupportPattern> {
    let n = v.len();
    if !v.avoids_123() {
        return Err(Error::Domain(format!("{v} contains 123")));
    }
    let classes = classify_positions(v);
    let mut pat = SupportPattern::empty(n, 2 * n)?;
    for &i in &classes.left {
        pat.set(i, v.at(i), true);
    }
    for &i in &classes.right {
        pat.set(i, i + n, true);
    }
    for run in &classes.runs {
        let len = run.len();
        let columns = z_segment(run.to_subset(), len, n)?.to_vec();
        let block = pattern_mw(&Permutation::longest(len));
        for r in 1..=len {
            for c in block.row(r).iter() {
                pat.set(run.start + r - 1, columns[c - 1], true);
            }
        }
    }
    Ok(pat)
}

/// `x ↦ 2n + 1 - x` applied to every member.
pub fn reflect_family(family: &SetFamily) -> Result<SetFamily> {
    let m = family.ground();
    if !m.is_multiple_of(2) {
        return Err(invalid(format!(
            "reflection needs an even ground set, got {m}"
        )));
    }
    family.map_elements(m, |x| m + 1 - x)
}

/// The dual family relabeled by `w*_n = (n+1)…(2n)1…n`; for `P_w` this gives `P_{w^{-1}}`.
pub fn dual_relabeled(family: &SetFamily) -> Result<SetFamily> {
    let m = family.ground();
    if !m.is_multiple_of(2) {
        return Err(invalid(format!(
            "duality relabeling needs an even ground set, got {m}"
        )));
    }
    let star = Permutation::half_swap(m / 2);
    family.dual()?.map_elements(m, |x| star.at(x))
}
