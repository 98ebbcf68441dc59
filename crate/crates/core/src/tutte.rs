//! Ranks in `P_w` through the sets `J_r(I)`, the statistics `c`, `d`, `c̄`,
//! the polynomials `T_n`, `T_{K,n}`, `U_v`, and the closed-form Tutte
//! polynomial of `P_w` together with its Möbius-inverted form.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{check_bound, invalid, Error, Result};
use crate::family::SetFamily;
use crate::order::PrecOrder;
use crate::path::DyckPath;
use crate::perm::{classify_positions, perm_leq, Permutation};
use crate::poly::BivariatePoly;
use crate::positroid::{catalan_inequalities, u_perm};
use crate::subset::{Interval, Subset};

/// `J_r(I)`: the `r` ≺-smallest elements of `I` together with the `n - r`
/// ≺-smallest elements outside them.
pub fn j_r(set: Subset, r: usize, n: usize) -> Result<Subset> {
    if set.len() < r || r > n {
        return Err(invalid(format!(
            "J_{r} of a {}-element set with n = {n}",
            set.len()
        )));
    }
    if !set.is_subset(Subset::full(2 * n)) {
        return Err(invalid(format!("{{{set}}} is not a subset of [{}]", 2 * n)));
    }
    let ord = PrecOrder::new(n);
    let chosen: Subset = ord.sort(set).into_iter().take(r).collect();
    let rest = ord
        .sequence()
        .iter()
        .copied()
        .filter(|&x| !chosen.contains(x))
        .take(n - r);
    Ok(chosen.union(rest.collect()))
}

/// `u_I^r = u_{J_r(I)}`.
pub fn u_r(set: Subset, r: usize, n: usize) -> Result<Permutation> {
    u_perm(j_r(set, r, n)?, n)
}

/// The rank of `I` in `P_w`: the largest `r` with `w ≤ u_I^r`.
pub fn rank_in_pw(w: &Permutation, set: Subset) -> Result<usize> {
    let n = w.len();
    let top = set.len().min(n);
    let mut rank = 0;
    for r in 1..=top {
        if !perm_leq(w, &u_r(set, r, n)?) {
            break;
        }
        rank = r;
    }
    Ok(rank)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// Longest ≺-initial segment of `[2n]` inside `I`.
    pub c: usize,
    /// `#{j ∈ [n] : #(I ∩ [n-j+2, n+j]) = j - 1}`.
    pub d: usize,
    /// Longest ≺-final segment of `[2n]` outside `I`.
    pub cbar: usize,
}

pub fn stats_cd(set: Subset, n: usize) -> Stats {
    let ord = PrecOrder::new(n);
    let d = (1..=n)
        .filter(|&j| set.intersection(Subset::range(n + 2 - j, n + j)).len() == j - 1)
        .count();
    Stats {
        c: ord.initial_run(set),
        d,
        cbar: ord.final_gap(set),
    }
}

/// `T_n = Σ_{I ∈ P_n} x^{c(I)} y^{d(I)}`.
pub fn t_n_by_stats(n: usize) -> BivariatePoly {
    let mut t = BivariatePoly::zero();
    for set in catalan_inequalities(n).iter() {
        let st = stats_cd(set, n);
        t.add_term(BigInt::from(1), st.c as u32, st.d as u32);
    }
    t
}

/// `T_n = Σ_{D ∈ 𝒟_{n+1}} x^{a(D)-1} y^{b(D)-1}` with `a` the first peak
/// height and `b` the number of returns to the axis.
pub fn t_n_by_paths(n: usize) -> BivariatePoly {
    let mut t = BivariatePoly::zero();
    for d in DyckPath::all(n + 1) {
        t.add_term(
            BigInt::from(1),
            (d.first_peak_height() - 1) as u32,
            (d.returns() - 1) as u32,
        );
    }
    t
}

/// Precomputed `T_k` for `k ≤ n` and `U_v` for 123-avoiding `v ∈ S_n`.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    n: usize,
    t: Vec<BivariatePoly>,
    u: HashMap<Permutation, BivariatePoly>,
}

impl ClosedForm {
    pub fn new(n: usize, max_n: usize) -> Result<Self> {
        check_bound("permutation size", n, max_n)?;
        let t: Vec<BivariatePoly> = (0..=n).map(t_n_by_paths).collect();
        let u = Permutation::avoiding_123(n)
            .into_iter()
            .map(|v| {
                let poly = u_from_table(&v, &t);
                (v, poly)
            })
            .collect();
        Ok(ClosedForm { n, t, u })
    }

    pub fn t(&self, k: usize) -> &BivariatePoly {
        &self.t[k]
    }

    /// `U_v`; errors if `v` contains 123.
    pub fn u(&self, v: &Permutation) -> Result<&BivariatePoly> {
        self.check(v)?;
        self.u
            .get(v)
            .ok_or_else(|| Error::Domain(format!("{v} contains 123")))
    }

    fn check(&self, w: &Permutation) -> Result<()> {
        if w.len() != self.n {
            return Err(invalid(format!("{w} is not in S_{}", self.n)));
        }
        Ok(())
    }

    /// `T_n + (1 - (x-1)(y-1)) Σ U_v` over 123-avoiding `v` with `w ≤ v < w_0`.
    pub fn tutte(&self, w: &Permutation) -> Result<BivariatePoly> {
        self.check(w)?;
        let sum: BivariatePoly = self
            .u
            .iter()
            .filter(|(v, _)| !v.is_longest() && perm_leq(w, v))
            .map(|(_, u)| u.clone())
            .sum();
        Ok(&self.t[self.n] + &(&correction() * &sum))
    }

    /// `Σ_{v ≥ w} (-1)^{ℓ(v) - ℓ(w)} T(P_v)`.
    pub fn mobius_sum(&self, w: &Permutation) -> Result<BivariatePoly> {
        self.check(w)?;
        let lw = w.length();
        let mut total = BivariatePoly::zero();
        for v in Permutation::all(self.n).filter(|v| perm_leq(w, v)) {
            let t = self.tutte(&v)?;
            total = if (v.length() - lw).is_multiple_of(2) {
                total + t
            } else {
                total - t
            };
        }
        Ok(total)
    }

    /// The value `mobius_sum` must take: `T_n` at `w_0`, `(1 - (x-1)(y-1)) U_w`
    /// for other 123-avoiding `w`, and 0 otherwise.
    pub fn mobius_expected(&self, w: &Permutation) -> Result<BivariatePoly> {
        self.check(w)?;
        Ok(if w.is_longest() {
            self.t[self.n].clone()
        } else if let Some(u) = self.u.get(w) {
            &correction() * u
        } else {
            BivariatePoly::zero()
        })
    }
}

/// `1 - (x-1)(y-1)`.
fn correction() -> BivariatePoly {
    BivariatePoly::one() - BivariatePoly::shifted_power(1, 1)
}

/// `T_{K,n}`, specialised by whether the run `K` touches `1` and `n`.
fn t_kn(k: Interval, n: usize, t: &[BivariatePoly]) -> BivariatePoly {
    let base = &t[k.len()];
    match (k.contains(1), k.contains(n)) {
        (true, true) => base.clone(),
        (true, false) => base.at_y_one(),
        (false, true) => base.at_x_one(),
        (false, false) => BivariatePoly::constant(base.eval_i64(1, 1)),
    }
}

fn u_from_table(v: &Permutation, t: &[BivariatePoly]) -> BivariatePoly {
    classify_positions(v)
        .runs
        .iter()
        .map(|&k| t_kn(k, v.len(), t))
        .fold(BivariatePoly::one(), |acc, p| &acc * &p)
}

/// `U_v = Π T_{A_i,n}` over the runs of anti-fixed points of `v`.
pub fn u_w(v: &Permutation) -> Result<BivariatePoly> {
    if !v.avoids_123() {
        return Err(Error::Domain(format!("{v} contains 123")));
    }
    let t: Vec<BivariatePoly> = (0..=v.len()).map(t_n_by_paths).collect();
    Ok(u_from_table(v, &t))
}

/// Closed-form Tutte polynomial of `P_w`.
pub fn tutte_pw(w: &Permutation, max_n: usize) -> Result<BivariatePoly> {
    ClosedForm::new(w.len(), max_n)?.tutte(w)
}

/// `J_r^{-1}(K)` by trying every subset of `[2n]`.
pub fn jr_fiber_brute(k: Subset, r: usize, n: usize) -> SetFamily {
    let members = (0u64..1 << (2 * n))
        .map(Subset::from_bits)
        .filter(|s| s.len() >= r && j_r(*s, r, n).is_ok_and(|j| j == k))
        .collect::<Vec<_>>();
    SetFamily::new(2 * n, members).expect("subsets of [2n]")
}

/// `J_r^{-1}(K)` as the sets `E' ∪ F ∪ G`: `E` is the ≺-initial run of `K`,
/// `F = K ∖ E`, `E' ⊆ E` has `#E - n + r` elements, and `G` is any set of
/// elements ≻ `max_≺(E' ∪ F)` (anything at all when `E' ∪ F` is empty).
pub fn jr_fiber_described(k: Subset, r: usize, n: usize) -> SetFamily {
    let ord = PrecOrder::new(n);
    let e = ord.initial(ord.initial_run(k));
    let f = k.difference(e);
    let mut members = Vec::new();
    if let Some(size) = (e.len() + r).checked_sub(n) {
        for e_prime in SetFamily::all_of_size(2 * n, size)
            .iter()
            .filter(|s| s.is_subset(e))
        {
            let base = e_prime.union(f);
            let floor = ord.max_of(base).map_or(0, |m| ord.rank(m));
            let after: Vec<usize> = ord.sequence()[floor..].to_vec();
            for bits in 0u64..1 << after.len() {
                let g: Subset = after
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                members.push(base.union(g));
            }
        }
    }
    SetFamily::new(2 * n, members).expect("subsets of [2n]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::catalan;
    use crate::positroid::q_family;
    use crate::transversal::pattern_mw;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    fn p(w: &str) -> Permutation {
        w.parse().unwrap()
    }

    #[test]
    fn j_r_examples() {
        assert_eq!(j_r(s(&[1, 4]), 1, 2).unwrap(), s(&[3, 4]));
        assert_eq!(j_r(s(&[1, 4]), 0, 2).unwrap(), s(&[2, 3]));
        assert_eq!(j_r(s(&[1, 4]), 2, 2).unwrap(), s(&[1, 4]));
        assert_eq!(j_r(s(&[1]), 0, 3).unwrap(), s(&[3, 4, 5]));
        assert!(j_r(s(&[1]), 2, 2).is_err());
        assert_eq!(u_r(s(&[1, 4]), 1, 2).unwrap(), p("21"));
        assert_eq!(u_r(s(&[1, 4]), 2, 2).unwrap(), p("12"));
        for n in 1..=5 {
            assert!(u_r(Subset::EMPTY, 0, n).unwrap().is_longest());
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_in_pw(&p("21"), s(&[1, 4])).unwrap(), 1);
        assert_eq!(rank_in_pw(&p("21"), s(&[2, 3])).unwrap(), 2);
        assert_eq!(rank_in_pw(&p("21"), Subset::EMPTY).unwrap(), 0);
        for set in (0u64..64).map(Subset::from_bits) {
            assert_eq!(
                rank_in_pw(&Permutation::identity(3), set).unwrap(),
                set.len().min(3)
            );
        }
    }

    #[test]
    fn rank_matches_oracle() {
        for n in 1..=4 {
            for w in Permutation::all(n) {
                let m = pattern_mw(&w);
                for set in (0u64..1 << (2 * n)).map(Subset::from_bits) {
                    assert_eq!(rank_in_pw(&w, set).unwrap(), m.rank_of(set), "{w} {set}");
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let perms: Vec<_> = Permutation::all(5).collect();
        for _ in 0..2000 {
            let w = &perms[rng.gen_range(0..perms.len())];
            let set = Subset::from_bits(rng.gen_range(0..1 << 10));
            assert_eq!(rank_in_pw(w, set).unwrap(), pattern_mw(w).rank_of(set));
        }
    }

    #[test]
    fn stats_examples() {
        assert_eq!(
            stats_cd(s(&[2]), 1),
            Stats {
                c: 1,
                d: 0,
                cbar: 1
            }
        );
        assert_eq!(
            stats_cd(s(&[1]), 1),
            Stats {
                c: 0,
                d: 1,
                cbar: 0
            }
        );
        assert_eq!(
            stats_cd(Subset::EMPTY, 3),
            Stats {
                c: 0,
                d: 1,
                cbar: 6
            }
        );
    }

    #[test]
    fn t_n_examples() {
        assert_eq!(t_n_by_paths(1).to_string(), "x + y");
        assert_eq!(t_n_by_paths(2).to_string(), "x^2 + x + xy + y + y^2");
        assert_eq!(t_n_by_stats(1).to_string(), "x + y");
        assert_eq!(t_n_by_stats(2).to_string(), "x^2 + x + xy + y + y^2");
        assert_eq!(t_n_by_paths(0), BivariatePoly::one());
        for n in 1..=8 {
            assert_eq!(t_n_by_paths(n).eval_i64(1, 1), BigInt::from(catalan(n + 1)));
        }
    }

    #[test]
    fn t_n_three_ways() {
        for n in 1..=6 {
            let by_paths = t_n_by_paths(n);
            assert_eq!(t_n_by_stats(n), by_paths, "n = {n}");
            let oracle = pattern_mw(&Permutation::longest(n))
                .tutte_by_rank(16)
                .unwrap();
            assert_eq!(oracle, by_paths, "n = {n}");
        }
    }

    #[test]
    fn u_w_examples() {
        assert_eq!(u_w(&p("645312")).unwrap().to_string(), "2x + 2");
        assert_eq!(u_w(&p("4321")).unwrap(), t_n_by_paths(4));
        assert_eq!(u_w(&p("2143")).unwrap(), BivariatePoly::one());
        assert!(u_w(&p("123")).is_err());
    }

    #[test]
    fn u_w_is_modified_tutte_of_q() {
        for n in 1..=5 {
            for v in Permutation::avoiding_123(n)
                .into_iter()
                .filter(|v| !v.is_longest())
            {
                let mut sum = BivariatePoly::zero();
                for set in q_family(&v).unwrap().iter() {
                    let st = stats_cd(set, n);
                    sum.add_term(BigInt::from(1), st.c as u32, st.cbar as u32);
                }
                assert_eq!(sum, u_w(&v).unwrap(), "{v}");
            }
        }
    }

    #[test]
    fn tutte_examples() {
        assert_eq!(
            tutte_pw(&p("12"), 9).unwrap().to_string(),
            "x^2 + 2x + 2y + y^2"
        );
        assert_eq!(tutte_pw(&p("21"), 9).unwrap(), t_n_by_paths(2));
        assert_eq!(
            tutte_pw(&p("21"), 9).unwrap().eval_i64(1, 1),
            BigInt::from(5)
        );
        assert_eq!(tutte_pw(&p("1"), 9).unwrap().to_string(), "x + y");
        assert!(matches!(
            tutte_pw(&Permutation::identity(10), 9),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn closed_form_matches_oracle() {
        for n in 1..=5 {
            let cf = ClosedForm::new(n, 9).unwrap();
            for w in Permutation::all(n) {
                let oracle = pattern_mw(&w).tutte_by_rank(16).unwrap();
                assert_eq!(cf.tutte(&w).unwrap(), oracle, "{w}");
            }
        }
    }

    #[test]
    fn closed_form_counts_bases() {
        let cf = ClosedForm::new(7, 9).unwrap();
        for w in [
            Permutation::identity(7),
            Permutation::longest(7),
            p("7162534"),
        ] {
            let count: BigUint = Permutation::avoiding_123(7)
                .iter()
                .filter(|v| perm_leq(&w, v))
                .map(crate::perm::g_stat)
                .sum();
            assert_eq!(cf.tutte(&w).unwrap().eval_i64(1, 1), BigInt::from(count));
        }
    }

    #[test]
    fn mobius_inversion() {
        for n in 1..=4 {
            let cf = ClosedForm::new(n, 9).unwrap();
            for w in Permutation::all(n) {
                assert_eq!(
                    cf.mobius_sum(&w).unwrap(),
                    cf.mobius_expected(&w).unwrap(),
                    "{w}"
                );
            }
        }
        let cf = ClosedForm::new(3, 9).unwrap();
        assert!(cf.mobius_sum(&p("123")).unwrap().is_zero());
        assert_eq!(
            cf.mobius_sum(&p("213")).unwrap(),
            &correction() * &u_w(&p("213")).unwrap()
        );
    }

    #[test]
    fn u_respects_diamond() {
        for n in 1..=4 {
            let ord = PrecOrder::new(n);
            let sets = SetFamily::all_of_size(2 * n, n);
            for i in sets.iter() {
                for j in sets.iter() {
                    if ord.diamond_leq(i, j).unwrap() {
                        assert!(
                            perm_leq(&u_perm(j, n).unwrap(), &u_perm(i, n).unwrap()),
                            "{i} {j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn j_r_respects_diamond() {
        for n in 1..=4 {
            let ord = PrecOrder::new(n);
            for k in 0..=2 * n {
                let sets = SetFamily::all_of_size(2 * n, k);
                for r in 0..=k.min(n) {
                    for i in sets.iter() {
                        for i2 in sets.iter() {
                            if ord.diamond_leq(i, i2).unwrap() {
                                let (a, b) = (j_r(i, r, n).unwrap(), j_r(i2, r, n).unwrap());
                                assert!(ord.diamond_leq(a, b).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn j_r_fibers() {
        for n in 1..=4 {
            for k in SetFamily::all_of_size(2 * n, n).iter() {
                for r in 0..=n {
                    assert_eq!(
                        jr_fiber_brute(k, r, n),
                        jr_fiber_described(k, r, n),
                        "{k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn rank_certificates_decrease() {
        for n in 1..=4 {
            for set in (0u64..1 << (2 * n)).map(Subset::from_bits) {
                for r in 0..set.len().min(n) {
                    let a = u_r(set, r, n).unwrap();
                    let b = u_r(set, r + 1, n).unwrap();
                    assert!(perm_leq(&b, &a), "{set} r={r}");
                }
            }
        }
    }
}
