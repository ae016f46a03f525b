//! Truncated power series in one variable over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factorial;

/// How a coefficient is turned into the counting number it encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `a_n = [x^n]`.
    Ordinary,
    /// `a_n = n!^2 [x^n]`.
    FactorialSquared,
}

/// A power series truncated after `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<BigRational>,
    normalization: Normalization,
}

fn factorial_squared(n: usize) -> BigInt {
    let f = BigInt::from(factorial(n));
    &f * &f
}

impl UniSeries {
    pub fn new(mut coeffs: Vec<BigRational>, normalization: Normalization) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        UniSeries {
            coeffs,
            normalization,
        }
    }

    /// `J_0(2 sqrt x) = sum (-1)^n x^n / n!^2`.
    pub fn bessel_j0(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|n| {
                let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                BigRational::new(sign, factorial_squared(n))
            })
            .collect();
        UniSeries::new(coeffs, Normalization::FactorialSquared)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// The coefficient with the normalization factor cleared.
    pub fn normalized(&self, n: usize) -> BigRational {
        match self.normalization {
            Normalization::Ordinary => self.coeffs[n].clone(),
            Normalization::FactorialSquared => {
                &self.coeffs[n] * BigRational::from_integer(factorial_squared(n))
            }
        }
    }

    /// [`normalized`](Self::normalized) as an integer, `None` if it is not one.
    pub fn normalized_integer(&self, n: usize) -> Option<BigInt> {
        let q = self.normalized(n);
        q.is_integer().then(|| q.to_integer())
    }

    pub fn negate(&self) -> Self {
        UniSeries::new(
            self.coeffs.iter().map(|c| -c).collect(),
            self.normalization,
        )
    }

    pub fn product(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(BigRational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &other.coeffs[n - i]
                })
            })
            .collect();
        UniSeries::new(coeffs, self.normalization)
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn reciprocal(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let s = (1..=n).fold(BigRational::zero(), |acc, i| acc + &self.coeffs[i] * &out[n - i]);
            out.push(-s * &inv0);
        }
        Some(UniSeries::new(out, self.normalization))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = (1..=self.order())
            .map(|n| &self.coeffs[n] * BigRational::from_integer(BigInt::from(n)))
            .collect();
        UniSeries::new(coeffs, self.normalization)
    }

    /// Antiderivative with zero constant term, one order longer.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / BigRational::from_integer(BigInt::from(n + 1))),
        );
        UniSeries::new(coeffs, self.normalization)
    }

    /// Natural logarithm, `ln h = integral(h' / h)`; `None` unless `h(0) = 1`.
    pub fn ln(&self) -> Option<Self> {
        if !self.coeffs[0].is_one() {
            return None;
        }
        if self.order() == 0 {
            return Some(UniSeries::new(vec![BigRational::zero()], self.normalization));
        }
        let inv = self.reciprocal()?;
        Some(self.derivative().product(&inv).integral())
    }

    pub fn all_positive_integers(&self, from: usize) -> bool {
        (from..=self.order()).all(|n| self.normalized_integer(n).is_some_and(|v| v.is_positive()))
    }
}

/// `1 / J_0(2 sqrt x)` to order `max_n`; `n!^2 [x^n]` counts pairs of
/// permutations of `{1..n}` with no common rise.
pub fn omega_series(max_n: usize) -> UniSeries {
    UniSeries::bessel_j0(max_n)
        .reciprocal()
        .expect("constant term is 1")
}

/// `omega(0..=max_n)`.
pub fn omega_numbers(max_n: usize) -> Vec<BigInt> {
    let s = omega_series(max_n);
    (0..=max_n)
        .map(|n| s.normalized_integer(n).expect("omega(n) is an integer"))
        .collect()
}

/// `-ln J_0(2 sqrt x)` to order `max_n + 1`; `b_n = (n+1)!^2 [x^(n+1)]`
/// counts complete non-ambiguous trees with `n` internal vertices.
pub fn bessel_tree_series(max_n: usize) -> UniSeries {
    UniSeries::bessel_j0(max_n + 1)
        .ln()
        .expect("constant term is 1")
        .negate()
}

/// `b_0..=b_max_n`.
pub fn bessel_tree_numbers(max_n: usize) -> Vec<BigInt> {
    let s = bessel_tree_series(max_n);
    (0..=max_n)
        .map(|n| s.normalized_integer(n + 1).expect("b_n is an integer"))
        .collect()
}
