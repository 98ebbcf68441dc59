//! Lattice paths attached to subsets of `[2n]`, Dyck paths, standardization
//! and the bijection from 123-avoiding permutations to Dyck paths.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::perm::{left_to_right_minima, Permutation};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    U,
    D,
}

/// A peak at step `step` (an up-step followed by a down-step).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Peak {
    pub step: usize,
    pub height: i64,
}

/// The path of `I ⊆ [2n]`: step `i` is up iff `i ∈ I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathReading {
    pub steps: Vec<Step>,
    /// Height after each step.
    pub heights: Vec<i64>,
    pub peaks: Vec<Peak>,
    /// Saw lengths in steps (twice the number of peaks), when the path is Dyck.
    pub saws: Option<Vec<usize>>,
}

impl PathReading {
    pub fn is_dyck(&self) -> bool {
        self.heights.iter().all(|&h| h >= 0) && self.heights.last().copied().unwrap_or(0) == 0
    }

    pub fn word(&self) -> String {
        steps_word(&self.steps)
    }
}

pub fn subset_to_path(set: Subset, n: usize) -> PathReading {
    let steps: Vec<Step> = (1..=2 * n)
        .map(|i| if set.contains(i) { Step::U } else { Step::D })
        .collect();
    let heights = heights_of(&steps);
    let peaks = peaks_of(&steps, &heights);
    let mut reading = PathReading {
        steps,
        heights,
        peaks,
        saws: None,
    };
    if reading.is_dyck() {
        reading.saws = Some(saw_lengths(&reading.peaks));
    }
    reading
}

fn heights_of(steps: &[Step]) -> Vec<i64> {
    steps
        .iter()
        .scan(0i64, |h, s| {
            *h += if *s == Step::U { 1 } else { -1 };
            Some(*h)
        })
        .collect()
}

fn peaks_of(steps: &[Step], heights: &[i64]) -> Vec<Peak> {
    (0..steps.len().saturating_sub(1))
        .filter(|&i| steps[i] == Step::U && steps[i + 1] == Step::D)
        .map(|i| Peak {
            step: i + 1,
            height: heights[i],
        })
        .collect()
}

/// Maximal runs of height-1 peaks whose steps are two apart, as step counts.
fn saw_lengths(peaks: &[Peak]) -> Vec<usize> {
    let mut saws = Vec::new();
    let mut run = 0usize;
    let mut last_step = 0usize;
    for p in peaks.iter().filter(|p| p.height == 1) {
        if run > 0 && p.step == last_step + 2 {
            run += 1;
        } else {
            if run > 0 {
                saws.push(2 * run);
            }
            run = 1;
        }
        last_step = p.step;
    }
    if run > 0 {
        saws.push(2 * run);
    }
    saws
}

fn steps_word(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| if *s == Step::U { 'U' } else { 'D' })
        .collect()
}

/// A lattice path of `U`/`D` steps that ends on the axis and never dips below it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    /// Up-step positions; the path has `2 * up.len()` steps.
    up: Subset,
    semilength: usize,
}

impl DyckPath {
    pub fn from_steps(steps: &[Step]) -> Result<Self> {
        if !steps.len().is_multiple_of(2) {
            return Err(invalid("Dyck path of odd length"));
        }
        let heights = heights_of(steps);
        if heights.iter().any(|&h| h < 0) || heights.last().copied().unwrap_or(0) != 0 {
            return Err(invalid(format!("{} is not a Dyck path", steps_word(steps))));
        }
        let up = steps
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Step::U)
            .map(|(i, _)| i + 1)
            .collect();
        Ok(DyckPath {
            up,
            semilength: steps.len() / 2,
        })
    }

    pub fn from_up_steps(up: Subset, semilength: usize) -> Result<Self> {
        let steps: Vec<Step> = (1..=2 * semilength)
            .map(|i| if up.contains(i) { Step::U } else { Step::D })
            .collect();
        if !up.is_subset(Subset::full(2 * semilength)) {
            return Err(invalid("up-steps beyond the path length"));
        }
        DyckPath::from_steps(&steps)
    }

    pub fn semilength(&self) -> usize {
        self.semilength
    }

    pub fn up_steps(&self) -> Subset {
        self.up
    }

    pub fn steps(&self) -> Vec<Step> {
        (1..=2 * self.semilength)
            .map(|i| {
                if self.up.contains(i) {
                    Step::U
                } else {
                    Step::D
                }
            })
            .collect()
    }

    pub fn reading(&self) -> PathReading {
        subset_to_path(self.up, self.semilength)
    }

    pub fn peaks(&self) -> Vec<Peak> {
        self.reading().peaks
    }

    /// Saw lengths in steps.
    pub fn saws(&self) -> Vec<usize> {
        self.reading().saws.unwrap_or_default()
    }

    /// Height of the first peak.
    pub fn first_peak_height(&self) -> usize {
        self.steps().iter().take_while(|s| **s == Step::U).count()
    }

    /// Returns to the axis, not counting the start.
    pub fn returns(&self) -> usize {
        heights_of(&self.steps())
            .iter()
            .filter(|&&h| h == 0)
            .count()
    }

    /// All Dyck paths of semilength `k`, in lexicographic order of up-step sets.
    pub fn all(k: usize) -> Vec<DyckPath> {
        fn grow(pos: usize, ups: usize, h: usize, k: usize, cur: Subset, out: &mut Vec<DyckPath>) {
            if pos > 2 * k {
                out.push(DyckPath {
                    up: cur,
                    semilength: k,
                });
                return;
            }
            if ups < k {
                grow(pos + 1, ups + 1, h + 1, k, cur.with(pos), out);
            }
            if h > 0 {
                grow(pos + 1, ups, h - 1, k, cur, out);
            }
        }
        let mut out = Vec::new();
        grow(1, 0, 0, k, Subset::EMPTY, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&steps_word(&self.steps()))
    }
}

impl FromStr for DyckPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                _ => Err(Error::Parse(format!("unexpected {c:?} in Dyck word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::from_steps(&steps)
    }
}

/// Replaces each maximal excursion below the axis with a saw `UDUD...` of the same length.
pub fn standardize(set: Subset, n: usize) -> Result<DyckPath> {
    if set.len() != n || !set.is_subset(Subset::full(2 * n)) {
        return Err(invalid(format!(
            "{{{set}}} is not an {n}-subset of [{}]",
            2 * n
        )));
    }
    let mut steps = subset_to_path(set, n).steps;
    let mut h = 0i64;
    let mut start = None;
    for i in 0..steps.len() {
        let before = h;
        h += if steps[i] == Step::U { 1 } else { -1 };
        if before == 0 && h < 0 {
            start = Some(i);
        }
        if h == 0 {
            if let Some(s) = start.take() {
                for (k, step) in steps[s..=i].iter_mut().enumerate() {
                    *step = if k % 2 == 0 { Step::U } else { Step::D };
                }
            }
        }
    }
    DyckPath::from_steps(&steps)
}

/// Krattenthaler's bijection, from the word
/// `U^{w(i_0)-w(i_1)} D^{i_2-i_1} ... U^{w(i_{k-1})-w(i_k)} D^{i_{k+1}-i_k}`
/// over the left-to-right minima `i_1 < ... < i_k`, with `w(i_0) = n+1 = i_{k+1}`.
pub fn krattenthaler(w: &Permutation) -> Result<DyckPath> {
    if !w.avoids_123() {
        return Err(Error::Domain(format!("{w} contains 123")));
    }
    let n = w.len();
    let minima = left_to_right_minima(w);
    let mut steps = Vec::with_capacity(2 * n);
    let mut prev_value = n + 1;
    for (k, &i) in minima.iter().enumerate() {
        let next_pos = minima.get(k + 1).copied().unwrap_or(n + 1);
        steps.extend(std::iter::repeat_n(Step::U, prev_value - w.at(i)));
        steps.extend(std::iter::repeat_n(Step::D, next_pos - i));
        prev_value = w.at(i);
    }
    DyckPath::from_steps(&steps)
}
