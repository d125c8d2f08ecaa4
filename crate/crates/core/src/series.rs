//! Truncated formal power series over exact rationals. Everything is
//! computed through a fixed truncation order; `exp` and `log` use the
//! standard derivative recurrences.

use num::traits::{One, Zero};

use crate::rat::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    /// Coefficient of `q^m` at index `m`; length is `order + 1`.
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    /// `c * q^k` truncated at `order`.
    pub fn monomial(order: usize, k: usize, c: Rat) -> Self {
        let mut s = PowerSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, m: usize) -> Rat {
        self.coeffs.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
        let order = self.order();
        let mut out = PowerSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > order {
                    break;
                }
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// `exp` of a series with zero constant term, via
    /// `n e_n = sum_k k f_k e_{n-k}`.
    pub fn exp(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_zero(), "exp requires constant term 0");
        let order = self.order();
        let mut e = PowerSeries::zero(order);
        e.coeffs[0] = Rat::one();
        for n in 1..=order {
            let mut acc = Rat::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &e.coeffs[n - k] * rat(k as i64, 1);
                }
            }
            e.coeffs[n] = acc / rat(n as i64, 1);
        }
        e
    }

    /// `log` of a series with constant term 1, via
    /// `n l_n = n f_n - sum_{k<n} k l_k f_{n-k}`.
    pub fn log(&self) -> PowerSeries {
        assert!(self.coeffs[0].is_one(), "log requires constant term 1");
        let order = self.order();
        let mut l = PowerSeries::zero(order);
        for n in 1..=order {
            let mut acc = &self.coeffs[n] * rat(n as i64, 1);
            for k in 1..n {
                if !l.coeffs[k].is_zero() && !self.coeffs[n - k].is_zero() {
                    acc -= &l.coeffs[k] * &self.coeffs[n - k] * rat(k as i64, 1);
                }
            }
            l.coeffs[n] = acc / rat(n as i64, 1);
        }
        l
    }

    /// Divide by `q^k`; the dropped low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> PowerSeries {
        assert!(
            self.coeffs[..k].iter().all(Rat::is_zero),
            "division by q^{k} of a series with lower-order terms"
        );
        PowerSeries { coeffs: self.coeffs[k..].to_vec() }
    }
}
