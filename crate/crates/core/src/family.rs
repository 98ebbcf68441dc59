//! Explicit families of subsets of a ground set `[m]`, kept sorted and deduplicated.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::subset::{Subset, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: usize,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new(ground: usize, members: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(invalid(format!(
                "ground set size {ground} exceeds {MAX_GROUND}"
            )));
        }
        let full = Subset::full(ground);
        let mut members: Vec<Subset> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|s| !s.is_subset(full)) {
            return Err(invalid(format!("member {{{bad}}} not within [{ground}]")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    /// Builds from members already known to lie in `[ground]`.
    pub(crate) fn from_sorted_unchecked(ground: usize, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|p| p[0] < p[1]));
        SetFamily { ground, members }
    }

    pub fn empty(ground: usize) -> Self {
        SetFamily {
            ground,
            members: Vec::new(),
        }
    }

    /// `{∅}`, the identity for [`direct_sum`].
    pub fn unit(ground: usize) -> Self {
        SetFamily {
            ground,
            members: vec![Subset::EMPTY],
        }
    }

    pub fn singleton(ground: usize, member: Subset) -> Result<Self> {
        SetFamily::new(ground, [member])
    }

    /// All `k`-subsets of `[m]` in lexicographic order.
    pub fn all_of_size(m: usize, k: usize) -> Self {
        let mut members = Vec::new();
        if k <= m {
            let mut idx: Vec<usize> = (1..=k).collect();
            loop {
                members.push(idx.iter().copied().collect());
                let Some(p) = (0..k).rev().find(|&p| idx[p] < m - (k - 1 - p)) else {
                    break;
                };
                idx[p] += 1;
                for q in p + 1..k {
                    idx[q] = idx[q - 1] + 1;
                }
            }
        }
        SetFamily { ground: m, members }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&s| other.contains(s))
    }

    pub fn is_disjoint_from(&self, other: &SetFamily) -> bool {
        self.members.iter().all(|&s| !other.contains(s))
    }

    /// Common member size, if all members have the same size.
    pub fn member_size(&self) -> Option<usize> {
        let first = self.members.first()?.len();
        self.members
            .iter()
            .all(|s| s.len() == first)
            .then_some(first)
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        SetFamily {
            ground: self.ground.max(other.ground),
            members,
        }
    }

    pub fn with_ground(mut self, ground: usize) -> Result<Self> {
        let full = Subset::full(ground);
        if ground > MAX_GROUND || self.members.iter().any(|s| !s.is_subset(full)) {
            return Err(invalid(format!(
                "family does not fit in ground set [{ground}]"
            )));
        }
        self.ground = ground;
        Ok(self)
    }

    /// Image under an element relabelling `x ↦ f(x)` with values in `[ground]`.
    pub fn map_elements(&self, ground: usize, f: impl Fn(usize) -> usize) -> Result<SetFamily> {
        SetFamily::new(ground, self.members.iter().map(|s| s.map(&f)))
    }

    /// `{ [m] \ B : B ∈ self }`, the bases of the dual matroid.
    pub fn dual(&self) -> Result<SetFamily> {
        if self.members.is_empty() {
            return Err(invalid("dual of an empty family"));
        }
        if self.member_size().is_none() {
            return Err(invalid("dual of a family with members of different sizes"));
        }
        SetFamily::new(
            self.ground,
            self.members.iter().map(|s| s.complement(self.ground)),
        )
    }

    /// `shift_{i→j} X`: each member moves `i` to `j` unless the result is
    /// already a member (or the move is impossible).
    pub fn shift(&self, i: usize, j: usize) -> SetFamily {
        let ground = self.ground.max(i).max(j);
        let mut members: Vec<Subset> = self
            .members
            .iter()
            .map(|&s| {
                let moved = s.shift(i, j);
                if moved != s && !self.contains(moved) {
                    moved
                } else {
                    s
                }
            })
            .collect();
        members.sort_unstable();
        members.dedup();
        SetFamily { ground, members }
    }

    /// Looks for a violation of the basis exchange axiom: `(A, B, a)` with
    /// `a ∈ A \ B` and no `b ∈ B \ A` making `A - a + b` a member.
    pub fn basis_exchange_violation(&self) -> Option<(Subset, Subset, usize)> {
        let set: HashSet<Subset> = self.members.iter().copied().collect();
        for &a in &self.members {
            for &b in &self.members {
                for x in a.difference(b).iter() {
                    let ok = b
                        .difference(a)
                        .iter()
                        .any(|y| set.contains(&a.without(x).with(y)));
                    if !ok {
                        return Some((a, b, x));
                    }
                }
            }
        }
        None
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|s| s.to_vec()).collect()
    }

    /// Canonical JSON: a sorted array of sorted integer arrays.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_vecs()).expect("integer arrays serialize")
    }

    pub fn from_json(ground: usize, text: &str) -> Result<SetFamily> {
        let raw: Vec<Vec<usize>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let members = raw
            .into_iter()
            .map(Subset::from_elements)
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, members)
    }
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_vecs().serialize(serializer)
    }
}

/// One member per line as sorted comma-separated integers.
impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.members {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `F ⊕ G = { I ⊔ J }`; every pair must be disjoint.
pub fn direct_sum(f: &SetFamily, g: &SetFamily) -> Result<SetFamily> {
    let mut members = Vec::with_capacity(f.len() * g.len());
    for &a in &f.members {
        for &b in &g.members {
            if !a.is_disjoint(b) {
                return Err(Error::Domain(format!(
                    "direct sum of non-disjoint sets {{{a}}} and {{{b}}}"
                )));
            }
            members.push(a.union(b));
        }
    }
    SetFamily::new(f.ground.max(g.ground), members)
}
