//! Transversal matroids of generic matrices given by their support patterns.
//!
//! A generic matrix with algebraically independent nonzero entries has a
//! nonzero maximal minor in columns `I` exactly when the rows can be matched
//! to distinct columns of `I` through nonzero cells, so every rank here is a
//! maximum bipartite matching.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{check_bound, invalid, Error, Result};
use crate::family::SetFamily;
use crate::perm::Permutation;
use crate::poly::BivariatePoly;
use crate::subset::{Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportPattern {
    rows: usize,
    cols: usize,
    /// Column mask of each row.
    row_support: Vec<Subset>,
}

impl SupportPattern {
    pub fn empty(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("support pattern needs positive dimensions"));
        }
        if rows > MAX_GROUND || cols > MAX_GROUND {
            return Err(invalid(format!("support pattern larger than {MAX_GROUND}")));
        }
        Ok(SupportPattern {
            rows,
            cols,
            row_support: vec![Subset::EMPTY; rows],
        })
    }

    pub fn from_rows(cols: usize, rows: Vec<Subset>) -> Result<Self> {
        let mut p = SupportPattern::empty(rows.len(), cols)?;
        let full = Subset::full(cols);
        if rows.iter().any(|r| !r.is_subset(full)) {
            return Err(invalid(format!("row support outside [{cols}]")));
        }
        p.row_support = rows;
        Ok(p)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether cell `(row, col)` (one-indexed) holds a generic nonzero entry.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.row_support[row - 1].contains(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let r = &mut self.row_support[row - 1];
        if value {
            r.insert(col);
        } else {
            r.remove(col);
        }
    }

    pub fn row(&self, row: usize) -> Subset {
        self.row_support[row - 1]
    }

    /// Rows with a nonzero entry in `col`.
    pub fn column(&self, col: usize) -> Subset {
        (1..=self.rows).filter(|&r| self.get(r, col)).collect()
    }

    fn column_table(&self) -> Vec<Subset> {
        (0..=self.cols)
            .map(|c| {
                if c == 0 {
                    Subset::EMPTY
                } else {
                    self.column(c)
                }
            })
            .collect()
    }

    /// Rank of the column set `cols`: a maximum matching of columns into rows.
    pub fn rank_of(&self, cols: Subset) -> usize {
        let table = self.column_table();
        let mut matcher = Matcher::new(self.rows);
        cols.iter()
            .filter(|&c| c <= self.cols && matcher.augment(&table, c))
            .count()
    }

    /// Whether every row can be matched simultaneously.
    pub fn has_full_transversal(&self) -> bool {
        self.rank_of(Subset::full(self.cols)) == self.rows
    }

    /// All `rows`-subsets of columns with a full matching, in lexicographic order.
    pub fn enumerate_bases(&self, max_rows: usize) -> Result<SetFamily> {
        check_bound("pattern rows", self.rows, max_rows)?;
        let table = self.column_table();
        let mut out = Vec::new();
        let mut chosen = Subset::EMPTY;
        self.extend_bases(&table, 1, &mut chosen, &Matcher::new(self.rows), &mut out);
        Ok(SetFamily::from_sorted_unchecked(self.cols, out))
    }

    fn extend_bases(
        &self,
        table: &[Subset],
        start: usize,
        chosen: &mut Subset,
        matcher: &Matcher,
        out: &mut Vec<Subset>,
    ) {
        let need = self.rows - chosen.len();
        if need == 0 {
            out.push(*chosen);
            return;
        }
        for c in start..=self.cols {
            if self.cols + 1 - c < need {
                break;
            }
            let mut next = matcher.clone();
            // No augmenting path means chosen ∪ {c} is dependent, and so is every superset.
            if next.augment(table, c) {
                chosen.insert(c);
                self.extend_bases(table, c + 1, chosen, &next, out);
                chosen.remove(c);
            }
        }
    }

    /// Tutte polynomial from the rank generating sum over all `2^cols` column sets.
    pub fn tutte_by_rank(&self, max_ground: usize) -> Result<BivariatePoly> {
        check_bound("ground set", self.cols, max_ground)?;
        let table = self.column_table();
        let m = self.cols;
        // histogram[rank][size]
        let zero = || vec![vec![0u64; m + 1]; self.rows + 1];
        let histogram = (0u64..1 << m)
            .into_par_iter()
            .fold(zero, |mut h, bits| {
                let set = Subset::from_bits(bits);
                let mut matcher = Matcher::new(self.rows);
                let r = set.iter().filter(|&c| matcher.augment(&table, c)).count();
                h[r][set.len()] += 1;
                h
            })
            .reduce(zero, |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            });
        let full_rank = self.rank_of(Subset::full(m));
        let mut poly = BivariatePoly::zero();
        for (r, by_size) in histogram.iter().enumerate() {
            for (k, &count) in by_size.iter().enumerate() {
                if count > 0 {
                    let term = BivariatePoly::shifted_power((full_rank - r) as u32, (k - r) as u32);
                    poly = &poly + &(&term * &BivariatePoly::constant(count));
                }
            }
        }
        Ok(poly)
    }

    /// `shift_{i→j}`: in rows where column `j` is zero the entry of column `i`
    /// moves to column `j`; elsewhere both columns keep their entries.
    pub fn shift(&self, i: usize, j: usize) -> Result<SupportPattern> {
        if i == j || i == 0 || j == 0 || i > self.cols || j > self.cols {
            return Err(invalid(format!("shift {i}→{j} on {} columns", self.cols)));
        }
        let mut out = self.clone();
        for r in 1..=self.rows {
            if !self.get(r, j) && self.get(r, i) {
                out.set(r, j, true);
                out.set(r, i, false);
            }
        }
        Ok(out)
    }
}

/// Kuhn's augmenting-path matching of columns into rows.
#[derive(Clone)]
struct Matcher {
    /// Column matched to each row (index `row - 1`), 0 if free.
    row_to_col: Vec<usize>,
}

impl Matcher {
    fn new(rows: usize) -> Self {
        Matcher {
            row_to_col: vec![0; rows],
        }
    }

    fn augment(&mut self, table: &[Subset], col: usize) -> bool {
        let mut visited = Subset::EMPTY;
        self.try_col(table, col, &mut visited)
    }

    fn try_col(&mut self, table: &[Subset], col: usize, visited: &mut Subset) -> bool {
        for r in table[col].iter() {
            if visited.contains(r) {
                continue;
            }
            visited.insert(r);
            let owner = self.row_to_col[r - 1];
            if owner == 0 || self.try_col(table, owner, visited) {
                self.row_to_col[r - 1] = col;
                return true;
            }
        }
        false
    }
}

/// `M_w`: row `i` is nonzero exactly on columns `[w(i), i+n]`.
pub fn pattern_mw(w: &Permutation) -> SupportPattern {
    let n = w.len();
    let rows = (1..=n).map(|i| Subset::range(w.at(i), i + n)).collect();
    SupportPattern::from_rows(2 * n, rows).expect("interval rows fit in [2n]")
}

/// Grid of `*` and `0`, one row per line, entries separated by spaces.
impl fmt::Display for SupportPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.rows {
            let line: Vec<&str> = (1..=self.cols)
                .map(|c| if self.get(r, c) { "*" } else { "0" })
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for SupportPattern {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut width = None;
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let cells: Vec<bool> = line
                .split(|c: char| c.is_whitespace() || c == '&')
                .filter(|t| !t.is_empty())
                .map(|t| match t {
                    "*" => Ok(true),
                    "0" => Ok(false),
                    other => Err(Error::Parse(format!("unexpected cell {other:?}"))),
                })
                .collect::<Result<_>>()?;
            if *width.get_or_insert(cells.len()) != cells.len() {
                return Err(Error::Parse("ragged support pattern".into()));
            }
            rows.push(
                cells
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(c, _)| c + 1)
                    .collect(),
            );
        }
        SupportPattern::from_rows(width.unwrap_or(0), rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::binomial;
    use crate::perm::Permutation;
    use num_bigint::{BigInt, BigUint};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    fn p(w: &str) -> Permutation {
        w.parse().unwrap()
    }

    fn random_pattern(
        rng: &mut ChaCha8Rng,
        rows: usize,
        cols: usize,
        density: f64,
    ) -> SupportPattern {
        let rows_support = (0..rows)
            .map(|_| (1..=cols).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        SupportPattern::from_rows(cols, rows_support).unwrap()
    }

    /// Brute-force rank: the largest subset of columns admitting a system of
    /// distinct representatives, found by trying every injection.
    fn brute_rank(pat: &SupportPattern, cols: Subset) -> usize {
        fn best(pat: &SupportPattern, cols: &[usize], row: usize, used: Subset) -> usize {
            if row > pat.rows() {
                return 0;
            }
            let skip = best(pat, cols, row + 1, used);
            let take = cols
                .iter()
                .filter(|&&c| !used.contains(c) && pat.get(row, c))
                .map(|&c| 1 + best(pat, cols, row + 1, used.with(c)))
                .max()
                .unwrap_or(0);
            skip.max(take)
        }
        best(pat, &cols.to_vec(), 1, Subset::EMPTY)
    }

    #[test]
    fn mw_layout() {
        let m = pattern_mw(&p("2143"));
        let expected = "\
0 * * * * 0 0 0
* * * * * * 0 0
0 0 0 * * * * 0
0 0 * * * * * *
";
        assert_eq!(m.to_string(), expected);
        assert_eq!(expected.parse::<SupportPattern>().unwrap(), m);
        assert_eq!(pattern_mw(&p("1")).to_string(), "* *\n");
        let m21 = pattern_mw(&p("21"));
        assert_eq!(m21.row(1), s(&[2, 3]));
        assert_eq!(m21.row(2), s(&[1, 2, 3, 4]));
    }

    #[test]
    fn rank_examples() {
        let m21 = pattern_mw(&p("21"));
        assert_eq!(m21.rank_of(s(&[1, 4])), 1);
        assert_eq!(m21.rank_of(Subset::EMPTY), 0);
        assert_eq!(m21.rank_of(s(&[2, 3])), 2);
    }

    #[test]
    fn rank_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=8);
            let pat = random_pattern(&mut rng, rows, cols, 0.4);
            let set = Subset::from_bits(rng.gen::<u64>() & ((1 << cols) - 1));
            assert_eq!(pat.rank_of(set), brute_rank(&pat, set));
        }
    }

    #[test]
    fn rank_is_monotone_and_submodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(2..=12);
            let pat = random_pattern(&mut rng, rows, cols, 0.35);
            let mask = (1u64 << cols) - 1;
            let a = Subset::from_bits(rng.gen::<u64>() & mask);
            let b = Subset::from_bits(rng.gen::<u64>() & mask);
            let ra = pat.rank_of(a);
            assert!(pat.rank_of(a.union(b)) >= ra);
            assert!(ra <= a.len());
            assert!(
                pat.rank_of(a.union(b)) + pat.rank_of(a.intersection(b)) <= ra + pat.rank_of(b)
            );
        }
    }

    #[test]
    fn bases_examples() {
        let b = pattern_mw(&p("21")).enumerate_bases(7).unwrap();
        assert_eq!(b.to_json(), "[[1,2],[1,3],[2,3],[2,4],[3,4]]");
        for n in 1..=5 {
            let id = pattern_mw(&Permutation::identity(n))
                .enumerate_bases(7)
                .unwrap();
            assert_eq!(BigUint::from(id.len()), binomial(2 * n, n));
        }
        let big = pattern_mw(&Permutation::identity(8));
        assert!(matches!(
            big.enumerate_bases(7),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn bases_equal_full_rank_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(rows..=9);
            let pat = random_pattern(&mut rng, rows, cols, 0.5);
            let bases = pat.enumerate_bases(7).unwrap();
            let brute: Vec<Subset> = SetFamily::all_of_size(cols, rows)
                .iter()
                .filter(|&c| brute_rank(&pat, c) == rows)
                .collect();
            assert_eq!(bases.members(), brute.as_slice());
        }
    }

    #[test]
    fn bases_satisfy_exchange() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                let b = pattern_mw(&w).enumerate_bases(7).unwrap();
                assert!(b.basis_exchange_violation().is_none(), "{w}");
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let all5: Vec<_> = Permutation::all(5).chain(Permutation::all(6)).collect();
        for _ in 0..20 {
            let w = &all5[rng.gen_range(0..all5.len())];
            let b = pattern_mw(w).enumerate_bases(7).unwrap();
            assert!(b.basis_exchange_violation().is_none(), "{w}");
        }
    }

    #[test]
    fn tutte_examples() {
        let t = pattern_mw(&p("1")).tutte_by_rank(16).unwrap();
        assert_eq!(t.to_string(), "x + y");
        let t = pattern_mw(&p("12")).tutte_by_rank(16).unwrap();
        assert_eq!(t.to_string(), "x^2 + 2x + 2y + y^2");
        // A coloop plus a loop.
        let single = SupportPattern::from_rows(2, vec![s(&[1])]).unwrap();
        assert_eq!(single.tutte_by_rank(16).unwrap().to_string(), "xy");
        assert!(pattern_mw(&Permutation::identity(9))
            .tutte_by_rank(16)
            .is_err());
    }

    #[test]
    fn tutte_counts_bases() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let m = pattern_mw(&w);
                let t = m.tutte_by_rank(16).unwrap();
                let b = m.enumerate_bases(7).unwrap();
                assert_eq!(t.eval_i64(1, 1), BigInt::from(b.len()), "{w}");
                // T(2,2) counts all subsets.
                assert_eq!(t.eval_i64(2, 2), BigInt::from(1u64 << (2 * n)));
            }
        }
    }

    #[test]
    fn shift_examples() {
        let pat = SupportPattern::from_rows(2, vec![s(&[1]), Subset::EMPTY]).unwrap();
        let shifted = pat.shift(1, 2).unwrap();
        assert_eq!(shifted.column(1), Subset::EMPTY);
        assert_eq!(shifted.column(2), s(&[1]));

        let pat = SupportPattern::from_rows(2, vec![s(&[2]), s(&[2])]).unwrap();
        assert_eq!(pat.shift(1, 2).unwrap(), pat);

        // columns i=1 = [1,1], j=2 = [1,0]
        let pat = SupportPattern::from_rows(2, vec![s(&[1, 2]), s(&[1])]).unwrap();
        let shifted = pat.shift(1, 2).unwrap();
        assert_eq!(shifted.column(1), s(&[1]));
        assert_eq!(shifted.column(2), s(&[1, 2]));
        assert!(pat.shift(1, 1).is_err());
    }

    #[test]
    fn shift_strictness_witness() {
        let identity = SupportPattern::from_rows(2, vec![s(&[1]), s(&[2])]).unwrap();
        let bases = identity.enumerate_bases(7).unwrap();
        let shifted_family = bases.shift(2, 1);
        assert_eq!(shifted_family.to_json(), "[[1,2]]");
        let shifted_bases = identity.shift(2, 1).unwrap().enumerate_bases(7).unwrap();
        assert!(shifted_bases.is_empty());
    }

    #[test]
    fn shift_containment_on_random_patterns() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(2..=10);
            let pat = random_pattern(&mut rng, rows, cols, 0.45);
            let bases = pat.enumerate_bases(7).unwrap();
            for i in 1..=cols {
                for j in 1..=cols {
                    if i != j {
                        let lhs = pat.shift(i, j).unwrap().enumerate_bases(7).unwrap();
                        assert!(lhs.is_subfamily_of(&bases.shift(i, j)));
                    }
                }
            }
        }
    }
}
