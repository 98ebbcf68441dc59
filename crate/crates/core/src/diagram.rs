//! Rothe diagrams, the diagram matroids `DM_w`, the composite shift
//! `shift_w`, and observers for the conjectured relations between `DM_w`
//! and `P_w`. Observers report; they never assert.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Bounds;
use crate::error::{check_bound, invalid, Error, Result};
use crate::family::SetFamily;
use crate::iso::find_isomorphism;
use crate::perm::{contains_pattern, Permutation};
use crate::positroid::{enumerate_pw, Strategy};
use crate::transversal::{pattern_mw, SupportPattern};
use crate::tutte::ClosedForm;
use crate::verify::Status;

/// `D(w) = {(i, w(j)) : i < j, w(i) > w(j)}`, sorted.
pub fn rothe_diagram(w: &Permutation) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut cells: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| {
            (i + 1..=n)
                .filter(move |&j| w.at(i) > w.at(j))
                .map(move |j| (i, w.at(j)))
        })
        .collect();
    cells.sort_unstable();
    cells
}

/// `[A | I_n]` where `A` is nonzero exactly off the Rothe diagram.
pub fn pattern_dmw(w: &Permutation) -> SupportPattern {
    let n = w.len();
    let mut pat = SupportPattern::empty(n.max(1), 2 * n.max(1)).expect("n ≥ 1");
    for i in 1..=n {
        for j in 1..=n {
            pat.set(i, j, true);
        }
        pat.set(i, n + i, true);
    }
    for (i, j) in rothe_diagram(w) {
        pat.set(i, j, false);
    }
    pat
}

/// `shift_{2n→w(n)} ∘ ⋯ ∘ shift_{n+1→w(1)}` on the columns of an `n × 2n` pattern.
pub fn shift_w_pattern(w: &Permutation, pat: &SupportPattern) -> Result<SupportPattern> {
    let n = w.len();
    if pat.cols() != 2 * n {
        return Err(invalid(format!(
            "shift_{w} needs {} columns, got {}",
            2 * n,
            pat.cols()
        )));
    }
    (1..=n).try_fold(pat.clone(), |p, k| p.shift(n + k, w.at(k)))
}

/// The same composite on a family over `[2n]`.
pub fn shift_w_family(w: &Permutation, family: &SetFamily) -> Result<SetFamily> {
    let n = w.len();
    if family.ground() != 2 * n {
        return Err(invalid(format!(
            "shift_{w} needs ground [{}], got [{}]",
            2 * n,
            family.ground()
        )));
    }
    Ok((1..=n).fold(family.clone(), |f, k| f.shift(n + k, w.at(k))))
}

/// Outcome of comparing `shift_w M_w` with `DM_w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixShiftOutcome {
    /// Same basis family.
    pub matroid_equal: bool,
    /// Identical support patterns.
    pub support_equal: bool,
}

pub fn matrix_shift_identity(w: &Permutation, max_rows: usize) -> Result<MatrixShiftOutcome> {
    let shifted = shift_w_pattern(w, &pattern_mw(w))?;
    let dm = pattern_dmw(w);
    Ok(MatrixShiftOutcome {
        matroid_equal: shifted.enumerate_bases(max_rows)? == dm.enumerate_bases(max_rows)?,
        support_equal: shifted == dm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    /// `#DM_w = #P_w`.
    BasisCount,
    /// `DM_w ≅ P_w` exactly when `w` avoids 21354.
    Isomorphism,
    /// `DM_w` and `P_w` have the same Tutte polynomial.
    Tutte,
    /// `shift_w P_w = DM_w`.
    Shift,
}

impl Conjecture {
    pub const ALL: [Conjecture; 4] = [
        Conjecture::BasisCount,
        Conjecture::Isomorphism,
        Conjecture::Tutte,
        Conjecture::Shift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::BasisCount => "basis-count",
            Conjecture::Isomorphism => "isomorphism",
            Conjecture::Tutte => "tutte",
            Conjecture::Shift => "shift",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown conjecture {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureRecord {
    pub n: usize,
    pub conjecture: Conjecture,
    #[serde(serialize_with = "serialize_word")]
    pub permutation: Permutation,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

fn serialize_word<S: serde::Serializer>(
    w: &Permutation,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

fn record(w: &Permutation, conjecture: Conjecture, pass: bool, witness: Value) -> ConjectureRecord {
    ConjectureRecord {
        n: w.len(),
        conjecture,
        permutation: w.clone(),
        status: if pass { Status::Pass } else { Status::Fail },
        witness: (!pass).then_some(witness),
    }
}

/// Observes one conjecture on every `w ∈ S_n`; records come back in lexicographic order of `w`.
pub fn check_conjecture(
    n: usize,
    conjecture: Conjecture,
    bounds: &Bounds,
) -> Result<Vec<ConjectureRecord>> {
    let limit = match conjecture {
        Conjecture::Isomorphism => bounds.isomorphism_max_n,
        _ => bounds.conjectures_max_n,
    };
    check_bound("conjecture n", n, limit)?;
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let closed = match conjecture {
        Conjecture::Tutte => Some(ClosedForm::new(n, bounds.max_closed_form_n)?),
        _ => None,
    };
    let pattern = Permutation::new(vec![2, 1, 3, 5, 4]).expect("21354");
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    perms
        .par_iter()
        .map(|w| -> Result<ConjectureRecord> {
            let dm = pattern_dmw(w);
            Ok(match conjecture {
                Conjecture::BasisCount => {
                    let (pw, dmw) = (
                        enumerate_pw(w, Strategy::VWordFilter, bounds.max_basis_rows)?.len(),
                        dm.enumerate_bases(bounds.max_basis_rows)?.len(),
                    );
                    record(
                        w,
                        conjecture,
                        pw == dmw,
                        json!({"positroid": pw, "diagram": dmw}),
                    )
                }
                Conjecture::Isomorphism => {
                    let pw = enumerate_pw(w, Strategy::VWordFilter, bounds.max_basis_rows)?;
                    let dmw = dm.enumerate_bases(bounds.max_basis_rows)?;
                    let map = find_isomorphism(&pw, &dmw, bounds.max_isomorphism_ground)?;
                    let avoids = n < 5 || !contains_pattern(w, &pattern)?;
                    record(
                        w,
                        conjecture,
                        map.is_some() == avoids,
                        json!({"isomorphic": map.is_some(), "avoids_21354": avoids, "map": map}),
                    )
                }
                Conjecture::Tutte => {
                    let closed = closed.as_ref().expect("built above").tutte(w)?;
                    let diagram = dm.tutte_by_rank(bounds.max_tutte_ground)?;
                    record(
                        w,
                        conjecture,
                        closed == diagram,
                        json!({"positroid": closed.to_string(), "diagram": diagram.to_string()}),
                    )
                }
                Conjecture::Shift => {
                    let pw = enumerate_pw(w, Strategy::VWordFilter, bounds.max_basis_rows)?;
                    let shifted = shift_w_family(w, &pw)?;
                    let dmw = dm.enumerate_bases(bounds.max_basis_rows)?;
                    let missing: Vec<String> = shifted
                        .iter()
                        .filter(|s| !dmw.contains(*s))
                        .map(|s| s.word())
                        .collect();
                    let extra: Vec<String> = dmw
                        .iter()
                        .filter(|s| !shifted.contains(*s))
                        .map(|s| s.word())
                        .collect();
                    record(
                        w,
                        conjecture,
                        shifted == dmw,
                        json!({"only_in_shifted_positroid": missing, "only_in_diagram": extra}),
                    )
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::Subset;

    fn p(w: &str) -> Permutation {
        w.parse().unwrap()
    }

    #[test]
    fn rothe_examples() {
        assert_eq!(rothe_diagram(&p("31524")), [(1, 1), (1, 2), (3, 2), (3, 4)]);
        assert!(rothe_diagram(&Permutation::identity(4)).is_empty());
        assert_eq!(rothe_diagram(&p("21")), [(1, 1)]);
        for n in 1..=5 {
            for w in Permutation::all(n) {
                assert_eq!(rothe_diagram(&w).len(), w.length());
            }
        }
    }

    #[test]
    fn dm_layout() {
        let expected = "\
0 0 * * * * 0 0 0 0
* * * * * 0 * 0 0 0
* 0 * 0 * 0 0 * 0 0
* * * * * 0 0 0 * 0
* * * * * 0 0 0 0 *
";
        assert_eq!(pattern_dmw(&p("31524")).to_string(), expected);
        assert_eq!(pattern_dmw(&p("12")).to_string(), "* * * 0\n* * 0 *\n");
        assert_eq!(pattern_dmw(&p("21")).to_string(), "0 * * 0\n* * 0 *\n");
    }

    #[test]
    fn shift_composite() {
        let w = p("21");
        let shifted = shift_w_pattern(&w, &pattern_mw(&w)).unwrap();
        // Column 3 keeps both rows: the move only happens where the target column is zero.
        assert_eq!(shifted.column(3), Subset::range(1, 2));
        let id = Permutation::identity(3);
        let untouched = SetFamily::all_of_size(6, 3)
            .iter()
            .filter(|s| s.is_subset(Subset::range(1, 3)))
            .collect::<Vec<_>>();
        let fam = SetFamily::new(6, untouched).unwrap();
        assert_eq!(shift_w_family(&id, &fam).unwrap(), fam);
        assert!(shift_w_family(&id, &SetFamily::unit(4)).is_err());
    }

    #[test]
    fn matrix_shift_holds_as_matroids() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let outcome = matrix_shift_identity(&w, 7).unwrap();
                assert!(outcome.matroid_equal, "{w}");
                assert_eq!(outcome.support_equal, w.is_identity(), "{w}");
            }
        }
    }

    #[test]
    fn diagram_inside_shifted_positroid() {
        for n in 1..=5 {
            for w in Permutation::all(n) {
                let pw = enumerate_pw(&w, Strategy::VWordFilter, 7).unwrap();
                let dm = pattern_dmw(&w).enumerate_bases(7).unwrap();
                assert!(dm.is_subfamily_of(&shift_w_family(&w, &pw).unwrap()), "{w}");
            }
        }
    }

    #[test]
    fn small_n_literal_equality() {
        for w in Permutation::all(2) {
            let pw = enumerate_pw(&w, Strategy::VWordFilter, 7).unwrap();
            assert_eq!(pattern_dmw(&w).enumerate_bases(7).unwrap(), pw, "{w}");
        }
    }

    #[test]
    fn observers_report_in_order() {
        let bounds = Bounds::default();
        for c in Conjecture::ALL {
            let records = check_conjecture(3, c, &bounds).unwrap();
            assert_eq!(records.len(), 6);
            assert!(records
                .windows(2)
                .all(|r| r[0].permutation < r[1].permutation));
            assert!(records.iter().all(|r| r.status == Status::Pass), "{c}");
        }
        assert!(check_conjecture(6, Conjecture::Isomorphism, &bounds).is_err());
        let json = serde_json::to_string(&check_conjecture(1, Conjecture::Shift, &bounds).unwrap())
            .unwrap();
        assert_eq!(
            json,
            r#"[{"n":1,"conjecture":"shift","permutation":"1","status":"PASS"}]"#
        );
        assert_eq!("tutte".parse::<Conjecture>().unwrap(), Conjecture::Tutte);
    }
}
