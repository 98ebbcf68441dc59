//! Size bounds shared by the library and the command-line tool.
//!
//! Defaults live in `bounds.toml` at the crate root and are compiled in.

use serde::Deserialize;

use crate::error::{Error, Result};

const DEFAULT_BOUNDS: &str = include_str!("../bounds.toml");

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub max_basis_rows: usize,
    pub max_tutte_ground: usize,
    pub max_isomorphism_ground: usize,
    pub max_closed_form_n: usize,
    pub catalan_cache: usize,
    pub theorems_max_n: usize,
    pub conjectures_max_n: usize,
    pub isomorphism_max_n: usize,
    pub identities_max_n: usize,
    pub exhaustive_max_n: usize,
    pub random_permutations: usize,
    pub random_rank_pairs: usize,
    pub random_shift_patterns: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialBounds {
    max_basis_rows: Option<usize>,
    max_tutte_ground: Option<usize>,
    max_isomorphism_ground: Option<usize>,
    max_closed_form_n: Option<usize>,
    catalan_cache: Option<usize>,
    theorems_max_n: Option<usize>,
    conjectures_max_n: Option<usize>,
    isomorphism_max_n: Option<usize>,
    identities_max_n: Option<usize>,
    exhaustive_max_n: Option<usize>,
    random_permutations: Option<usize>,
    random_rank_pairs: Option<usize>,
    random_shift_patterns: Option<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        toml::from_str(DEFAULT_BOUNDS).expect("bundled bounds.toml is valid")
    }
}

impl Bounds {
    /// Parses a bounds file; absent keys keep their defaults.
    pub fn from_toml(text: &str) -> Result<Self> {
        let p: PartialBounds = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let d = Bounds::default();
        Ok(Bounds {
            max_basis_rows: p.max_basis_rows.unwrap_or(d.max_basis_rows),
            max_tutte_ground: p.max_tutte_ground.unwrap_or(d.max_tutte_ground),
            max_isomorphism_ground: p.max_isomorphism_ground.unwrap_or(d.max_isomorphism_ground),
            max_closed_form_n: p.max_closed_form_n.unwrap_or(d.max_closed_form_n),
            catalan_cache: p.catalan_cache.unwrap_or(d.catalan_cache),
            theorems_max_n: p.theorems_max_n.unwrap_or(d.theorems_max_n),
            conjectures_max_n: p.conjectures_max_n.unwrap_or(d.conjectures_max_n),
            isomorphism_max_n: p.isomorphism_max_n.unwrap_or(d.isomorphism_max_n),
            identities_max_n: p.identities_max_n.unwrap_or(d.identities_max_n),
            exhaustive_max_n: p.exhaustive_max_n.unwrap_or(d.exhaustive_max_n),
            random_permutations: p.random_permutations.unwrap_or(d.random_permutations),
            random_rank_pairs: p.random_rank_pairs.unwrap_or(d.random_rank_pairs),
            random_shift_patterns: p.random_shift_patterns.unwrap_or(d.random_shift_patterns),
        })
    }
}
