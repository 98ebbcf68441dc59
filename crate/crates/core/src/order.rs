//! The total order `n+1 ≺ n ≺ n+2 ≺ n-1 ≺ ... ≺ 2n ≺ 1` on `[2n]`, the
//! diamond order it induces on equal-size sets, and the centred segments `Z_j X`.

use crate::error::{invalid, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecOrder {
    n: usize,
    /// `rank[x]` is the 1-based position of `x`; index 0 unused.
    rank: Vec<usize>,
    sequence: Vec<usize>,
}

impl PrecOrder {
    pub fn new(n: usize) -> Self {
        let sequence: Vec<usize> = (0..n).flat_map(|k| [n + 1 + k, n - k]).collect();
        let mut rank = vec![0; 2 * n + 1];
        for (pos, &x) in sequence.iter().enumerate() {
            rank[x] = pos + 1;
        }
        PrecOrder { n, rank, sequence }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Elements of `[2n]` from ≺-smallest to ≺-largest.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// The first `k` elements in the order.
    pub fn initial(&self, k: usize) -> Subset {
        self.sequence[..k].iter().copied().collect()
    }

    /// Elements of `set` in increasing ≺ order.
    pub fn sort(&self, set: Subset) -> Vec<usize> {
        self.sequence
            .iter()
            .copied()
            .filter(|&x| set.contains(x))
            .collect()
    }

    pub fn max_of(&self, set: Subset) -> Option<usize> {
        self.sequence
            .iter()
            .rev()
            .copied()
            .find(|&x| set.contains(x))
    }

    /// Length of the longest ≺-initial segment of `[2n]` inside `set`.
    pub fn initial_run(&self, set: Subset) -> usize {
        self.sequence
            .iter()
            .take_while(|&&x| set.contains(x))
            .count()
    }

    /// Length of the longest ≺-final segment of `[2n]` disjoint from `set`.
    pub fn final_gap(&self, set: Subset) -> usize {
        self.sequence
            .iter()
            .rev()
            .take_while(|&&x| !set.contains(x))
            .count()
    }

    /// `I ⊴ J`: `I` is the ≺-lexicographically least `#I`-subset of `I ∪ J`,
    /// i.e. `J ∩ I = J ∩ {x ⪯ max_≺ I}`.
    pub fn diamond_leq(&self, i: Subset, j: Subset) -> Result<bool> {
        if i.len() != j.len() {
            return Err(invalid(format!(
                "diamond comparison of sets of sizes {} and {}",
                i.len(),
                j.len()
            )));
        }
        let Some(top) = self.max_of(i) else {
            return Ok(true);
        };
        let below = self.initial(self.rank(top));
        Ok(j.intersection(i) == j.intersection(below))
    }
}

/// Elements of `set` sorted by `ord`.
pub fn prec_sort(set: Subset, ord: &PrecOrder) -> Vec<usize> {
    ord.sort(set)
}

/// `Z_j X = {n-x_j+1, ..., n-x_1+1, n+x_1, ..., n+x_j}` for the `j` smallest `x_i ∈ X`.
pub fn z_segment(x: Subset, j: usize, n: usize) -> Result<Subset> {
    if j == 0 || j > x.len() {
        return Err(invalid(format!("Z_{j} of a set of size {}", x.len())));
    }
    if x.max().is_some_and(|m| m > n) {
        return Err(invalid(format!("{{{x}}} is not a subset of [{n}]")));
    }
    let mut out = Subset::EMPTY;
    for xi in x.iter().take(j) {
        out.insert(n - xi + 1);
        out.insert(n + xi);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SetFamily;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn order_layout() {
        let o = PrecOrder::new(3);
        assert_eq!(o.sequence(), &[4, 3, 5, 2, 6, 1]);
        assert_eq!(o.rank(4), 1);
        assert_eq!(o.rank(1), 6);
    }

    #[test]
    fn prec_sort_examples() {
        let o = PrecOrder::new(2);
        assert_eq!(prec_sort(s(&[1, 4]), &o), vec![4, 1]);
        assert_eq!(prec_sort(s(&[2, 3]), &o), vec![3, 2]);
        assert!(prec_sort(Subset::EMPTY, &o).is_empty());
    }

    #[test]
    fn diamond_examples() {
        let o = PrecOrder::new(2);
        assert!(o.diamond_leq(s(&[1, 3]), s(&[1, 3])).unwrap());
        assert!(o.diamond_leq(s(&[3]), s(&[1])).unwrap());
        assert!(!o.diamond_leq(s(&[1]), s(&[3])).unwrap());
        assert!(o.diamond_leq(s(&[1]), s(&[1, 3])).is_err());
    }

    #[test]
    fn diamond_matches_lexicographic_definition() {
        for n in 1..=4 {
            let o = PrecOrder::new(n);
            for k in 0..=2 * n {
                let fam = SetFamily::all_of_size(2 * n, k);
                for i in fam.iter() {
                    for j in fam.iter() {
                        let pool = o.sort(i.union(j));
                        let least: Subset = pool.into_iter().take(k).collect();
                        assert_eq!(o.diamond_leq(i, j).unwrap(), least == i);
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_is_partial_order() {
        for n in 1..=4 {
            let o = PrecOrder::new(n);
            for k in 0..=2 * n {
                let fam: Vec<Subset> = SetFamily::all_of_size(2 * n, k).iter().collect();
                for &a in &fam {
                    assert!(o.diamond_leq(a, a).unwrap());
                    for &b in &fam {
                        let ab = o.diamond_leq(a, b).unwrap();
                        if a != b && ab {
                            assert!(!o.diamond_leq(b, a).unwrap());
                        }
                        if ab {
                            for &c in &fam {
                                if o.diamond_leq(b, c).unwrap() {
                                    assert!(o.diamond_leq(a, c).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn z_segment_examples() {
        assert_eq!(z_segment(s(&[3, 4]), 2, 7).unwrap(), s(&[4, 5, 10, 11]));
        assert_eq!(z_segment(s(&[1]), 1, 6).unwrap(), s(&[6, 7]));
        for n in 1..=8 {
            for k in 1..=n {
                assert_eq!(z_segment(s(&[k]), 1, n).unwrap(), s(&[n - k + 1, n + k]));
            }
        }
        assert!(z_segment(s(&[1]), 2, 3).is_err());
        assert!(z_segment(s(&[1]), 0, 3).is_err());
    }

    #[test]
    fn z_segments_nest() {
        for n in 1..=6 {
            for bits in 1u64..(1 << n) {
                let x = Subset::from_bits(bits);
                for j in 1..x.len() {
                    let a = z_segment(x, j, n).unwrap();
                    let b = z_segment(x, j + 1, n).unwrap();
                    assert!(a.is_subset(b) && a != b);
                }
            }
        }
    }
}
