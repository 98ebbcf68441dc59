//! Batch verification. Theorem and identity checks decide the outcome of a
//! run; conjecture checks are observations and only populate the report.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalan::{binomial, catalan};
use crate::config::Bounds;
use crate::diagram::{check_conjecture, matrix_shift_identity, Conjecture, ConjectureRecord};
use crate::error::{check_bound, invalid, Error, Result};
use crate::family::SetFamily;
use crate::path::{krattenthaler, standardize, DyckPath};
use crate::perm::{classify_positions, g_stat, perm_leq, Permutation};
use crate::positroid::{
    dual_relabeled, enumerate_pw, member, member_via_b_sets, member_via_juggling, q_family,
    reflect_family, Strategy,
};
use crate::subset::Subset;
use crate::transversal::{pattern_mw, SupportPattern};
use crate::tutte::{rank_in_pw, t_n_by_paths, t_n_by_stats, ClosedForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorems,
    Conjectures,
    Identities,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorems" => Ok(Suite::Theorems),
            "conjectures" => Ok(Suite::Conjectures),
            "identities" => Ok(Suite::Identities),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    fn from_outcome(name: &str, failure: Option<Value>) -> Self {
        Check {
            name: name.to_string(),
            status: if failure.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness: failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub records: Vec<ConjectureRecord>,
}

impl Report {
    /// False only when a theorem or identity check failed.
    pub fn succeeded(&self) -> bool {
        self.suite == Suite::Conjectures || self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

pub fn run_suite(suite: Suite, n: usize, seed: u64, bounds: &Bounds) -> Result<Report> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();
    let checks = match suite {
        Suite::Theorems => {
            check_bound("theorem suite n", n, bounds.theorems_max_n)?;
            theorems(n, &mut rng, bounds)?
        }
        Suite::Identities => {
            check_bound("identity suite n", n, bounds.identities_max_n)?;
            identities(n, bounds)?
        }
        Suite::Conjectures => {
            check_bound("conjecture suite n", n, bounds.conjectures_max_n)?;
            let mut checks = Vec::new();
            for c in Conjecture::ALL {
                if c == Conjecture::Isomorphism && n > bounds.isomorphism_max_n {
                    checks.push(Check {
                        name: c.name().to_string(),
                        status: Status::Skip,
                        witness: Some(
                            json!({"reason": format!("n > {}", bounds.isomorphism_max_n)}),
                        ),
                    });
                    continue;
                }
                let rs = check_conjecture(n, c, bounds)?;
                let failures: Vec<&ConjectureRecord> =
                    rs.iter().filter(|r| r.status == Status::Fail).collect();
                checks.push(Check::from_outcome(
                    c.name(),
                    (!failures.is_empty())
                        .then(|| serde_json::to_value(&failures).expect("records serialize")),
                ));
                records.extend(rs);
            }
            checks
        }
    };
    Ok(Report {
        suite,
        n,
        seed,
        checks,
        records,
    })
}

/// Runs `f` on every item in parallel and returns the first failure in item order.
fn first_failure<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<Option<Value>> + Sync + Send,
) -> Result<Option<Value>> {
    let outcomes: Vec<Result<Option<Value>>> = items.par_iter().map(f).collect();
    for o in outcomes {
        if let Some(w) = o? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn word(w: &Permutation) -> String {
    w.to_string()
}

fn theorems(n: usize, rng: &mut ChaCha8Rng, bounds: &Bounds) -> Result<Vec<Check>> {
    let rows = bounds.max_basis_rows;
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let exhaustive = n <= bounds.exhaustive_max_n;
    let perms: Vec<Permutation> = if exhaustive {
        all.clone()
    } else {
        (0..bounds.random_permutations)
            .map(|_| all.choose(rng).expect("S_n nonempty").clone())
            .collect()
    };
    let avoiders = Permutation::avoiding_123(n);
    let n_sets = SetFamily::all_of_size(2 * n, n);
    let mut checks = Vec::new();

    let failure = first_failure(&perms, |w| {
        let oracle = pattern_mw(w).enumerate_bases(rows)?;
        for strategy in [Strategy::VWordFilter, Strategy::QUnion] {
            let fam = enumerate_pw(w, strategy, rows)?;
            if fam != oracle {
                return Ok(Some(
                    json!({"w": word(w), "strategy": format!("{strategy:?}"), "got": fam.len(), "oracle": oracle.len()}),
                ));
            }
        }
        Ok(None)
    })?;
    checks.push(Check::from_outcome("enumeration-matches-oracle", failure));

    let failure = first_failure(&perms, |w| {
        let count = enumerate_pw(w, Strategy::VWordFilter, rows)?.len();
        let formula: BigUint = avoiders.iter().filter(|v| perm_leq(w, v)).map(g_stat).sum();
        Ok((BigUint::from(count) != formula)
            .then(|| json!({"w": word(w), "count": count, "formula": formula.to_string()})))
    })?;
    checks.push(Check::from_outcome("count-formula", failure));

    let pieces: Vec<SetFamily> = avoiders.iter().map(q_family).collect::<Result<_>>()?;
    let mut failure = None;
    let mut seen: Vec<Subset> = Vec::new();
    for (v, q) in avoiders.iter().zip(&pieces) {
        if BigUint::from(q.len()) != g_stat(v) {
            failure = Some(json!({"v": word(v), "size": q.len(), "g": g_stat(v).to_string()}));
            break;
        }
        seen.extend(q.iter());
    }
    let union = SetFamily::new(2 * n, seen.iter().copied())?;
    if failure.is_none() && (union.len() != seen.len() || union != n_sets) {
        failure = Some(json!({"pieces_total": seen.len(), "distinct": union.len()}));
    }
    if failure.is_none() {
        failure = first_failure(&perms, |w| {
            let members = avoiders
                .iter()
                .zip(&pieces)
                .filter(|(v, _)| perm_leq(w, v))
                .flat_map(|(_, q)| q.iter());
            let union = SetFamily::new(2 * n, members)?;
            Ok((union != enumerate_pw(w, Strategy::VWordFilter, rows)?)
                .then(|| json!({"w": word(w)})))
        })?;
    }
    checks.push(Check::from_outcome("decomposition-partition", failure));

    let failure = first_failure(&perms, |w| {
        let oracle = pattern_mw(w).enumerate_bases(rows)?;
        for set in n_sets.iter() {
            let expected = oracle.contains(set);
            let routes = [
                member(w, set)?,
                member_via_juggling(w, set)?,
                member_via_b_sets(w, set)?,
            ];
            if routes.iter().any(|&r| r != expected) {
                return Ok(Some(
                    json!({"w": word(w), "set": set.to_vec(), "oracle": expected, "routes": routes}),
                ));
            }
        }
        Ok(None)
    })?;
    checks.push(Check::from_outcome("membership-routes", failure));

    let pairs: Vec<(Permutation, Subset)> = if n <= 4 {
        all.iter()
            .flat_map(|w| (0u64..1 << (2 * n)).map(move |b| (w.clone(), Subset::from_bits(b))))
            .collect()
    } else {
        (0..bounds.random_rank_pairs)
            .map(|_| {
                let w = all.choose(rng).expect("S_n nonempty").clone();
                (w, Subset::from_bits(rng.gen_range(0..1u64 << (2 * n))))
            })
            .collect()
    };
    let failure = first_failure(&pairs, |(w, set)| {
        let (closed, oracle) = (rank_in_pw(w, *set)?, pattern_mw(w).rank_of(*set));
        Ok((closed != oracle)
            .then(|| json!({"w": word(w), "set": set.to_vec(), "rank": closed, "oracle": oracle})))
    })?;
    checks.push(Check::from_outcome("rank-characterization", failure));

    let cf = ClosedForm::new(n, bounds.max_closed_form_n)?;
    let failure = first_failure(&perms, |w| {
        let (closed, oracle) = (
            cf.tutte(w)?,
            pattern_mw(w).tutte_by_rank(bounds.max_tutte_ground)?,
        );
        Ok((closed != oracle).then(
            || json!({"w": word(w), "closed": closed.to_string(), "oracle": oracle.to_string()}),
        ))
    })?;
    checks.push(Check::from_outcome("tutte-closed-form", failure));

    let (stats, paths) = (t_n_by_stats(n), t_n_by_paths(n));
    let oracle = pattern_mw(&Permutation::longest(n)).tutte_by_rank(bounds.max_tutte_ground)?;
    let agree = stats == paths && paths == oracle;
    checks.push(Check::from_outcome(
        "tutte-statistics",
        (!agree).then(|| json!({"stats": stats.to_string(), "paths": paths.to_string(), "oracle": oracle.to_string()})),
    ));

    let failure = first_failure(&perms, |w| {
        let pw = enumerate_pw(w, Strategy::VWordFilter, rows)?;
        let reflected = enumerate_pw(&w.reverse_complement_inverse(), Strategy::VWordFilter, rows)?;
        if reflect_family(&pw)? != reflected {
            return Ok(Some(json!({"w": word(w), "symmetry": "reflection"})));
        }
        let inverse = enumerate_pw(&w.inverse(), Strategy::VWordFilter, rows)?;
        Ok((dual_relabeled(&pw)? != inverse).then(|| json!({"w": word(w), "symmetry": "duality"})))
    })?;
    checks.push(Check::from_outcome("symmetries", failure));

    // The Möbius sum runs over the whole upper interval of each w; beyond n = 5 that is too slow.
    checks.push(if n <= 5 {
        let failure = first_failure(&perms, |w| {
            let (sum, expected) = (cf.mobius_sum(w)?, cf.mobius_expected(w)?);
            Ok((sum != expected).then(
                || json!({"w": word(w), "sum": sum.to_string(), "expected": expected.to_string()}),
            ))
        })?;
        Check::from_outcome("mobius-inversion", failure)
    } else {
        Check {
            name: "mobius-inversion".into(),
            status: Status::Skip,
            witness: Some(json!({"reason": "n > 5"})),
        }
    });

    let failure = first_failure(&perms, |w| {
        let outcome = matrix_shift_identity(w, rows)?;
        Ok((!outcome.matroid_equal).then(|| json!({"w": word(w), "outcome": outcome})))
    })?;
    checks.push(Check::from_outcome("matrix-shift-identity", failure));

    let patterns: Vec<SupportPattern> = (0..bounds.random_shift_patterns)
        .map(|_| random_pattern(rng))
        .collect::<Result<_>>()?;
    let failure = first_failure(&patterns, |pat| {
        let bases = pat.enumerate_bases(rows)?;
        for i in 1..=pat.cols() {
            for j in (1..=pat.cols()).filter(|&j| j != i) {
                if !pat
                    .shift(i, j)?
                    .enumerate_bases(rows)?
                    .is_subfamily_of(&bases.shift(i, j))
                {
                    return Ok(Some(json!({"pattern": pat.to_string(), "i": i, "j": j})));
                }
            }
        }
        Ok(None)
    })?;
    checks.push(Check::from_outcome("shift-containment", failure));

    Ok(checks)
}

/// Random pattern with at most 4 rows and 10 columns.
fn random_pattern(rng: &mut ChaCha8Rng) -> Result<SupportPattern> {
    let rows = rng.gen_range(1..=4);
    let cols = rng.gen_range(2..=10);
    let support = (0..rows)
        .map(|_| (1..=cols).filter(|_| rng.gen_bool(0.45)).collect())
        .collect();
    SupportPattern::from_rows(cols, support)
}

fn identities(n: usize, bounds: &Bounds) -> Result<Vec<Check>> {
    let avoiders = Permutation::avoiding_123(n);
    let mut checks = Vec::new();

    let sum: BigUint = avoiders.iter().map(g_stat).sum();
    let expected = binomial(2 * n, n);
    checks.push(Check::from_outcome(
        "catalan-product-sum",
        (sum != expected)
            .then(|| json!({"sum": sum.to_string(), "binomial": expected.to_string()})),
    ));

    let paths: Vec<DyckPath> = avoiders.iter().map(krattenthaler).collect::<Result<_>>()?;
    let distinct = SetFamily::new(2 * n, paths.iter().map(DyckPath::up_steps))?.len();
    let ok = distinct == paths.len() && BigUint::from(distinct) == catalan(n);
    checks.push(Check::from_outcome(
        "krattenthaler-bijection",
        (!ok).then(|| json!({"images": distinct, "avoiders": paths.len(), "catalan": catalan(n).to_string()})),
    ));

    let failure = avoiders.iter().zip(&paths).find_map(|(v, d)| {
        let mut runs: Vec<usize> = classify_positions(v).runs.iter().map(|r| r.len()).collect();
        let mut half: Vec<usize> = d.saws().iter().map(|s| s / 2).collect();
        runs.sort_unstable();
        half.sort_unstable();
        (runs != half).then(|| json!({"v": word(v), "runs": runs, "half_saws": half}))
    });
    checks.push(Check::from_outcome("saws-are-runs", failure));

    let mut fiber: std::collections::HashMap<Subset, usize> = std::collections::HashMap::new();
    for set in SetFamily::all_of_size(2 * n, n).iter() {
        *fiber.entry(standardize(set, n)?.up_steps()).or_default() += 1;
    }
    let failure = DyckPath::all(n).into_iter().find_map(|d| {
        let expected: BigUint = d.saws().iter().map(|s| catalan(s / 2 + 1)).product();
        let got = fiber.get(&d.up_steps()).copied().unwrap_or(0);
        (BigUint::from(got) != expected)
            .then(|| json!({"path": d.to_string(), "fiber": got, "expected": expected.to_string()}))
    });
    checks.push(Check::from_outcome("standardization-fibers", failure));

    let t = t_n_by_paths(n).eval_i64(1, 1);
    let c = catalan(n + 1);
    checks.push(Check::from_outcome(
        "tutte-counts-bases",
        (t != c.clone().into()).then(|| json!({"value": t.to_string(), "catalan": c.to_string()})),
    ));

    if n <= bounds.max_basis_rows {
        let count = enumerate_pw(
            &Permutation::longest(n),
            Strategy::VWordFilter,
            bounds.max_basis_rows,
        )?
        .len();
        checks.push(Check::from_outcome(
            "longest-element-count",
            (BigUint::from(count) != c).then(|| json!({"count": count, "catalan": c.to_string()})),
        ));
    }
    Ok(checks)
}
