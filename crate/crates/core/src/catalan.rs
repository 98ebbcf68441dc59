//! Exact Catalan numbers and binomial coefficients.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::One;

/// Catalan numbers `C_0 ..= C_bound`, computed once.
#[derive(Debug, Clone)]
pub struct CatalanTable {
    values: Vec<BigUint>,
}

impl CatalanTable {
    pub fn new(bound: usize) -> Self {
        let mut values = Vec::with_capacity(bound + 1);
        values.push(BigUint::one());
        for k in 0..bound {
            // C_{k+1} = C_k * 2(2k+1) / (k+2), exact at every step.
            let next = &values[k] * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
            values.push(next);
        }
        CatalanTable { values }
    }

    pub fn bound(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&BigUint> {
        self.values.get(k)
    }
}

fn shared_table() -> &'static RwLock<CatalanTable> {
    static TABLE: OnceLock<RwLock<CatalanTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(CatalanTable::new(64)))
}

/// Resizes the process-wide Catalan cache.
pub fn set_catalan_cache(bound: usize) {
    let mut table = shared_table().write().expect("catalan cache poisoned");
    if table.bound() != bound {
        *table = CatalanTable::new(bound);
    }
}

/// The `k`th Catalan number.
pub fn catalan(k: usize) -> BigUint {
    if let Some(c) = shared_table()
        .read()
        .expect("catalan cache poisoned")
        .get(k)
    {
        return c.clone();
    }
    binomial(2 * k, k) / BigUint::from(k + 1)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_recurrence(limit: usize) -> Vec<BigUint> {
        let mut c = vec![BigUint::one()];
        for k in 0..limit {
            let s: BigUint = (0..=k).map(|i| &c[i] * &c[k - i]).sum();
            c.push(s);
        }
        c
    }

    #[test]
    fn small_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn matches_convolution_recurrence() {
        let oracle = by_recurrence(40);
        for (k, c) in oracle.iter().enumerate() {
            assert_eq!(&catalan(k), c, "C_{k}");
        }
    }

    #[test]
    fn beyond_cache_is_exact() {
        let oracle = by_recurrence(80);
        assert_eq!(catalan(80), oracle[80]);
        let small = CatalanTable::new(5);
        assert_eq!(small.get(5), Some(&BigUint::from(42u32)));
        assert_eq!(small.get(6), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(16, 8), BigUint::from(12870u32));
        assert_eq!(binomial(4, 5), BigUint::default());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
