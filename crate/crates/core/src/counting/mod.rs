//! Exact counting: Stirling numbers of the second kind, poly-Bernoulli numbers
//! of negative upper index, non-ambiguous forest counts, and the truncated
//! generating functions of [`series`] and [`egf`].

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub mod egf;
pub mod series;

pub use egf::{egf_gamma_free, MarkerPoly, Monomial, SeriesTable};
pub use series::{bessel_tree_numbers, bessel_tree_series, omega_numbers, omega_series, UniSeries};

/// Triangle of Stirling partition numbers `S(n, m)` for `0 <= m <= n <= max`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for (m, slot) in row.iter_mut().enumerate().skip(1) {
                // S(n, m) = m S(n-1, m) + S(n-1, m-1)
                let stay = prev.get(m).map_or_else(BigUint::zero, |s| s * m);
                *slot = stay + &prev[m - 1];
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, m)`, zero when `m > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, m: usize) -> BigUint {
        self.rows[n].get(m).cloned().unwrap_or_default()
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn stirling2(n: usize, m: usize) -> BigUint {
    StirlingTable::new(n).get(n, m)
}

fn poly_bernoulli_with(table: &StirlingTable, n: usize, k: usize) -> BigUint {
    let mut fact = BigUint::one();
    let mut total = BigUint::zero();
    for m in 0..=n.min(k) {
        if m > 0 {
            fact *= m;
        }
        total += &fact * &fact * table.get(n + 1, m + 1) * table.get(k + 1, m + 1);
    }
    total
}

/// `B_n^(-k) = sum_m (m!)^2 S(n+1, m+1) S(k+1, m+1)`.
pub fn poly_bernoulli(n: usize, k: usize) -> BigUint {
    poly_bernoulli_with(&StirlingTable::new(n.max(k) + 1), n, k)
}

/// `B_n^(-k)` for all `n <= max_n`, `k <= max_k`, sharing one Stirling table.
pub fn poly_bernoulli_table(max_n: usize, max_k: usize) -> Vec<Vec<BigUint>> {
    let table = StirlingTable::new(max_n.max(max_k) + 1);
    (0..=max_n)
        .map(|n| (0..=max_k).map(|k| poly_bernoulli_with(&table, n, k)).collect())
        .collect()
}

/// Number of non-ambiguous forests with an `n x k` characteristic matrix,
/// `sum_m (m!)^2 S(n, m) S(k, m)`.
pub fn count_naf(n: usize, k: usize) -> BigUint {
    let table = StirlingTable::new(n.max(k));
    let mut fact = BigUint::one();
    let mut total = BigUint::zero();
    for m in 0..=n.min(k) {
        if m > 0 {
            fact *= m;
        }
        total += &fact * &fact * table.get(n, m) * table.get(k, m);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(0, 0), big(1));
        assert_eq!(stirling2(3, 2), big(3));
        assert_eq!(stirling2(4, 1), big(1));
        assert_eq!(stirling2(2, 5), big(0));
        for n in 0..10 {
            assert_eq!(stirling2(n, n), big(1));
        }
        assert_eq!(stirling2(3, 0), big(0));
    }

    /// Counts set partitions of `{0..n}` into `m` blocks by restricted growth strings.
    fn brute_stirling(n: usize, m: usize) -> u64 {
        fn go(i: usize, n: usize, blocks: usize, m: usize) -> u64 {
            if i == n {
                return u64::from(blocks == m);
            }
            (0..=blocks)
                .map(|b| go(i + 1, n, blocks.max(b + 1), m))
                .sum()
        }
        go(0, n, 0, m)
    }

    #[test]
    fn stirling_matches_partition_count() {
        let table = StirlingTable::new(8);
        for n in 0..=8 {
            for m in 0..=n {
                assert_eq!(table.get(n, m), big(brute_stirling(n, m)), "S({n},{m})");
            }
        }
    }

    #[test]
    fn poly_bernoulli_values() {
        assert_eq!(poly_bernoulli(2, 2), big(14));
        assert_eq!(poly_bernoulli(5, 5), big(329462));
        for k in 0..12 {
            assert_eq!(poly_bernoulli(1, k), big(1 << k));
            assert_eq!(poly_bernoulli(0, k), big(1));
        }
    }

    #[test]
    fn poly_bernoulli_symmetric() {
        let t = poly_bernoulli_table(12, 12);
        for (n, row) in t.iter().enumerate() {
            for (k, value) in row.iter().enumerate() {
                assert_eq!(value, &t[k][n]);
            }
        }
    }

    #[test]
    fn naf_counts() {
        assert_eq!(count_naf(1, 1), big(1));
        assert_eq!(count_naf(2, 2), big(5));
        assert_eq!(count_naf(0, 0), big(1));
        for n in 1..6 {
            assert_eq!(count_naf(n, 0), big(0));
        }
    }
}
