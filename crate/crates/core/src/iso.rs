//! Isomorphism search between explicit basis families.

use crate::error::{check_bound, invalid, Result};
use crate::family::SetFamily;
use crate::subset::Subset;

struct Profile {
    /// `cooc[a][b]`: number of members containing both `a` and `b` (`cooc[a][a]` is the degree).
    cooc: Vec<Vec<usize>>,
    /// Per element: its degree followed by its sorted co-occurrence row.
    signature: Vec<Vec<usize>>,
}

impl Profile {
    fn new(family: &SetFamily) -> Self {
        let m = family.ground();
        let mut cooc = vec![vec![0; m + 1]; m + 1];
        for set in family.iter() {
            let elems = set.to_vec();
            for &a in &elems {
                for &b in &elems {
                    cooc[a][b] += 1;
                }
            }
        }
        let signature = (0..=m)
            .map(|a| {
                let mut row: Vec<usize> = (1..=m).filter(|&b| b != a).map(|b| cooc[a][b]).collect();
                row.sort_unstable();
                row.insert(0, cooc[a][a]);
                row
            })
            .collect();
        Profile { cooc, signature }
    }
}

/// A bijection `σ` of the ground set with `σ(first) = second`, as the list
/// `σ(1), …, σ(m)`, or `None` when the families are not isomorphic.
pub fn find_isomorphism(
    first: &SetFamily,
    second: &SetFamily,
    max_ground: usize,
) -> Result<Option<Vec<usize>>> {
    let m = first.ground();
    if second.ground() != m {
        return Err(invalid(format!(
            "ground sets [{m}] and [{}] differ",
            second.ground()
        )));
    }
    check_bound("isomorphism ground set", m, max_ground)?;
    if first.len() != second.len() || first.member_size() != second.member_size() {
        return Ok(None);
    }
    let (p1, p2) = (Profile::new(first), Profile::new(second));
    let mut sig1: Vec<_> = p1.signature[1..].to_vec();
    let mut sig2: Vec<_> = p2.signature[1..].to_vec();
    sig1.sort();
    sig2.sort();
    if sig1 != sig2 {
        return Ok(None);
    }
    // Map the most constrained elements first: those whose signature class is smallest.
    let class_size = |a: usize| {
        (1..=m)
            .filter(|&b| p1.signature[b] == p1.signature[a])
            .count()
    };
    let mut order: Vec<usize> = (1..=m).collect();
    order.sort_by_key(|&a| (class_size(a), a));

    let mut search = Search {
        first,
        second,
        p1: &p1,
        p2: &p2,
        order: &order,
        sigma: vec![0; m + 1],
        used: Subset::EMPTY,
    };
    Ok(search.extend(0).then(|| search.sigma[1..].to_vec()))
}

struct Search<'a> {
    first: &'a SetFamily,
    second: &'a SetFamily,
    p1: &'a Profile,
    p2: &'a Profile,
    order: &'a [usize],
    sigma: Vec<usize>,
    used: Subset,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            let sigma = &self.sigma;
            return self
                .first
                .iter()
                .all(|s| self.second.contains(s.map(|e| sigma[e])));
        }
        let a = self.order[depth];
        let m = self.sigma.len() - 1;
        for b in 1..=m {
            if self.used.contains(b) || self.p1.signature[a] != self.p2.signature[b] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&c| self.p1.cooc[a][c] == self.p2.cooc[b][self.sigma[c]]);
            if !consistent {
                continue;
            }
            self.sigma[a] = b;
            self.used.insert(b);
            if self.restrictions_agree(depth + 1) && self.extend(depth + 1) {
                return true;
            }
            self.used.remove(b);
            self.sigma[a] = 0;
        }
        false
    }

    /// Members containing the mapped domain must be as many as those containing its image.
    fn restrictions_agree(&self, depth: usize) -> bool {
        let domain: Subset = self.order[..depth].iter().copied().collect();
        let image = domain.map(|e| self.sigma[e]);
        let count = |f: &SetFamily, d: Subset| f.iter().filter(|s| d.is_subset(*s)).count();
        count(self.first, domain) == count(self.second, image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::transversal::pattern_mw;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fam(m: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(
            m,
            sets.iter()
                .map(|s| Subset::from_elements(s.iter().copied()).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn trivial_cases() {
        let b = fam(4, &[&[1, 2], &[1, 3], &[2, 3], &[2, 4], &[3, 4]]);
        let sigma = find_isomorphism(&b, &b, 12).unwrap().unwrap();
        assert_eq!(b.map_elements(4, |e| sigma[e - 1]).unwrap(), b);
        assert_eq!(
            find_isomorphism(&fam(2, &[&[1]]), &fam(2, &[&[2]]), 12).unwrap(),
            Some(vec![2, 1])
        );
        assert_eq!(
            find_isomorphism(&fam(2, &[&[1]]), &fam(2, &[&[1], &[2]]), 12).unwrap(),
            None
        );
        assert!(find_isomorphism(&fam(2, &[&[1]]), &fam(3, &[&[1]]), 12).is_err());
        let big = SetFamily::all_of_size(13, 1);
        assert!(find_isomorphism(&big, &big, 12).is_err());
    }

    #[test]
    fn non_isomorphic_with_equal_degrees() {
        // Both are 2-regular graphs on six vertices; only the cycle structure differs.
        let triangles = fam(6, &[&[1, 2], &[2, 3], &[1, 3], &[4, 5], &[5, 6], &[4, 6]]);
        let hexagon = fam(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        assert_eq!(find_isomorphism(&triangles, &hexagon, 12).unwrap(), None);
    }

    #[test]
    fn recovers_random_relabelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for w in Permutation::all(4).chain(Permutation::all(5).step_by(7)) {
            let m = 2 * w.len();
            let b = pattern_mw(&w).enumerate_bases(7).unwrap();
            let mut perm: Vec<usize> = (1..=m).collect();
            perm.shuffle(&mut rng);
            let relabeled = b.map_elements(m, |e| perm[e - 1]).unwrap();
            let sigma = find_isomorphism(&b, &relabeled, 12)
                .unwrap()
                .expect("relabeling is an isomorphism");
            assert_eq!(b.map_elements(m, |e| sigma[e - 1]).unwrap(), relabeled);
        }
    }
}
