//! The bivariate generating function of Γ-free matrices,
//! `e^(ax) e^(by) / (1 - t (e^x - 1)(e^y - 1))`, with `a` marking empty rows,
//! `b` empty columns and `t` top rows.
//!
//! Arithmetic runs on ordinary coefficients `[x^n y^k]` with rational marker
//! polynomials; the table exposes `n! k! [x^n y^k]`, which must be integral.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::factorial;

/// Exponents of `a^ea b^eb t^et`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub t: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, t: 0 };

    pub fn new(a: u32, b: u32, t: u32) -> Self {
        Monomial { a, b, t }
    }

    fn times(self, o: Monomial) -> Monomial {
        Monomial::new(self.a + o.a, self.b + o.b, self.t + o.t)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("t", self.t), ("a", self.a), ("b", self.b)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// Sparse polynomial in the markers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkerPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> MarkerPoly<C> {
    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Clone + Zero + PartialEq> MarkerPoly<C> {
    pub fn zero() -> Self {
        MarkerPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coefficient(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    /// Value at `a = b = t = 1`.
    pub fn sum_of_coefficients(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }
}

type RatPoly = MarkerPoly<BigRational>;

impl RatPoly {
    fn plus(&self, other: &RatPoly) -> RatPoly {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    fn times(&self, other: &RatPoly) -> RatPoly {
        let mut out = RatPoly::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &other.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }

    fn scaled(&self, s: &BigRational) -> RatPoly {
        let mut out = RatPoly::zero();
        for (&m, c) in &self.terms {
            out.add_term(m, c * s);
        }
        out
    }

    fn to_integer(&self) -> Option<MarkerPoly<BigInt>> {
        let mut out = MarkerPoly::zero();
        for (&m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(m, c.to_integer());
        }
        Some(out)
    }
}

/// Bivariate series truncated to `x^max_n y^max_k`, ordinary coefficients.
#[derive(Clone, Debug)]
struct BiSeries {
    max_n: usize,
    max_k: usize,
    coeffs: Vec<Vec<RatPoly>>,
}

impl BiSeries {
    fn zero(max_n: usize, max_k: usize) -> Self {
        BiSeries {
            max_n,
            max_k,
            coeffs: vec![vec![RatPoly::zero(); max_k + 1]; max_n + 1],
        }
    }

    fn from_fn(max_n: usize, max_k: usize, mut f: impl FnMut(usize, usize) -> RatPoly) -> Self {
        let mut s = Self::zero(max_n, max_k);
        for n in 0..=max_n {
            for k in 0..=max_k {
                s.coeffs[n][k] = f(n, k);
            }
        }
        s
    }

    fn times(&self, other: &BiSeries) -> BiSeries {
        BiSeries::from_fn(self.max_n, self.max_k, |n, k| {
            let mut acc = RatPoly::zero();
            for i in 0..=n {
                for j in 0..=k {
                    let (l, r) = (&self.coeffs[i][j], &other.coeffs[n - i][k - j]);
                    if !l.is_zero() && !r.is_zero() {
                        acc = acc.plus(&l.times(r));
                    }
                }
            }
            acc
        })
    }

    /// Inverse of a series whose constant term is the polynomial 1.
    fn reciprocal_unit(&self) -> BiSeries {
        assert_eq!(
            self.coeffs[0][0],
            RatPoly::monomial(Monomial::ONE, BigRational::one()),
            "constant term must be 1"
        );
        let mut out = BiSeries::zero(self.max_n, self.max_k);
        for n in 0..=self.max_n {
            for k in 0..=self.max_k {
                if n == 0 && k == 0 {
                    out.coeffs[0][0] = self.coeffs[0][0].clone();
                    continue;
                }
                let mut acc = RatPoly::zero();
                for i in 0..=n {
                    for j in 0..=k {
                        if (i, j) == (0, 0) {
                            continue;
                        }
                        let (h, g) = (&self.coeffs[i][j], &out.coeffs[n - i][k - j]);
                        if !h.is_zero() && !g.is_zero() {
                            acc = acc.plus(&h.times(g));
                        }
                    }
                }
                out.coeffs[n][k] = acc.scaled(&-BigRational::one());
            }
        }
        out
    }
}

/// `n! k! [x^n y^k]` of the Γ-free generating function, as integer marker
/// polynomials, for `n <= max_n`, `k <= max_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    max_n: usize,
    max_k: usize,
    entries: Vec<Vec<MarkerPoly<BigInt>>>,
}

impl SeriesTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn entry(&self, n: usize, k: usize) -> &MarkerPoly<BigInt> {
        &self.entries[n][k]
    }

    /// Number of `n x k` Γ-free matrices with `top_rows` top rows,
    /// `empty_rows` empty rows and `empty_cols` empty columns.
    pub fn refined(&self, n: usize, k: usize, top_rows: u32, empty_rows: u32, empty_cols: u32) -> BigInt {
        self.entries[n][k].coefficient(Monomial::new(empty_rows, empty_cols, top_rows))
    }

    /// The entry at `a = b = t = 1`.
    pub fn total(&self, n: usize, k: usize) -> BigUint {
        self.entries[n][k]
            .sum_of_coefficients()
            .to_biguint()
            .expect("counts are nonnegative")
    }
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Expands the Γ-free generating function to the requested orders.
pub fn egf_gamma_free(max_n: usize, max_k: usize) -> SeriesTable {
    let inv_fact = |n: usize| rat(factorial(n)).recip();
    let exp_a = BiSeries::from_fn(max_n, max_k, |n, k| {
        if k == 0 {
            RatPoly::monomial(Monomial::new(n as u32, 0, 0), inv_fact(n))
        } else {
            RatPoly::zero()
        }
    });
    let exp_b = BiSeries::from_fn(max_n, max_k, |n, k| {
        if n == 0 {
            RatPoly::monomial(Monomial::new(0, k as u32, 0), inv_fact(k))
        } else {
            RatPoly::zero()
        }
    });
    // 1 - t (e^x - 1)(e^y - 1)
    let denom = BiSeries::from_fn(max_n, max_k, |n, k| match (n, k) {
        (0, 0) => RatPoly::monomial(Monomial::ONE, BigRational::one()),
        (0, _) | (_, 0) => RatPoly::zero(),
        _ => RatPoly::monomial(Monomial::new(0, 0, 1), -(inv_fact(n) * inv_fact(k))),
    });
    let series = exp_a.times(&exp_b).times(&denom.reciprocal_unit());

    let entries = (0..=max_n)
        .map(|n| {
            (0..=max_k)
                .map(|k| {
                    let scale = rat(factorial(n) * factorial(k));
                    series.coeffs[n][k]
                        .scaled(&scale)
                        .to_integer()
                        .unwrap_or_else(|| panic!("n! k! [x^{n} y^{k}] is not integral"))
                })
                .collect()
        })
        .collect();
    SeriesTable {
        max_n,
        max_k,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::poly_bernoulli;

    #[test]
    fn constant_term() {
        let t = egf_gamma_free(0, 0);
        assert_eq!(t.entry(0, 0), &MarkerPoly::monomial(Monomial::ONE, BigInt::one()));
    }

    #[test]
    fn totals_are_poly_bernoulli() {
        let t = egf_gamma_free(4, 4);
        for n in 0..=4 {
            for k in 0..=4 {
                assert_eq!(t.total(n, k), poly_bernoulli(n, k), "({n},{k})");
            }
        }
    }

    #[test]
    fn one_by_one_refinement() {
        // the zero matrix has one empty row and column, [1] has one top row
        let t = egf_gamma_free(1, 1);
        assert_eq!(t.refined(1, 1, 0, 1, 1), BigInt::one());
        assert_eq!(t.refined(1, 1, 1, 0, 0), BigInt::one());
        assert_eq!(t.entry(1, 1).terms().len(), 2);
    }

    #[test]
    fn monomial_display() {
        assert_eq!(Monomial::new(2, 0, 1).to_string(), "t a^2");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
