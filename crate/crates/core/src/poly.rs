//! Sparse multivariate polynomials over exact rationals: the symmetric
//! algebra on a Lie algebra, with the Kirillov-Poisson bracket extended
//! from generators by the Leibniz rule.
//!
//! Terms are keyed by exponent vectors in graded-lexicographic order
//! (total degree first, then earlier variables weigh more); printing
//! walks terms in descending order, which makes output deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num::traits::{One, Zero};

use crate::lie::Algebra;
use crate::rat::{format_rat_abs, Rat};

/// Exponent vector of a monomial, one entry per basis variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    pub fn zero(n: usize) -> Self {
        Expo(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Expo(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Divide by `x_i`; `None` when the exponent is already zero.
    pub fn div_var(&self, i: usize) -> Option<Expo> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(Expo(e))
    }

    /// Componentwise difference, `None` unless `other` divides `self`.
    pub fn div(&self, other: &Expo) -> Option<Expo> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Expo(out))
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// descending graded-lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Expo> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Expo>) {
        if n == 1 {
            prefix.push(d);
            out.push(Expo(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(n - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Element of the symmetric algebra `S(g)` over exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    alg: Algebra,
    terms: BTreeMap<Expo, Rat>,
}

impl Poly {
    pub fn zero(alg: &Algebra) -> Self {
        Poly { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alg: &Algebra, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Expo::zero(alg.dim()), c);
        }
        Poly { alg: alg.clone(), terms }
    }

    pub fn one(alg: &Algebra) -> Self {
        Poly::constant(alg, Rat::one())
    }

    /// The generator `x_i`.
    pub fn var(alg: &Algebra, i: usize) -> Self {
        assert!(i < alg.dim(), "variable index out of range");
        Poly::monomial(alg, &Expo::var(alg.dim(), i), Rat::one())
    }

    pub fn monomial(alg: &Algebra, e: &Expo, c: Rat) -> Self {
        assert_eq!(e.0.len(), alg.dim(), "exponent vector has the wrong length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.clone(), c);
        }
        Poly { alg: alg.clone(), terms }
    }

    pub fn from_terms(alg: &Algebra, terms: impl IntoIterator<Item = (Expo, Rat)>) -> Self {
        let mut p = Poly::zero(alg);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Expo) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().last().map_or(0, Expo::degree)
    }

    pub(crate) fn add_term(&mut self, e: Expo, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn assert_compatible(&self, other: &Poly) {
        assert!(
            Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg,
            "polynomials over different algebras"
        );
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.alg);
        }
        Poly {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.alg);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.alg);
        for (e, c) in &self.terms {
            if let Some(q) = e.div_var(i) {
                out.add_term(q, c * Rat::from_integer(e.0[i].into()));
            }
        }
        out
    }

    /// Component of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous parts, ascending in degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Poly)> {
        let mut by_deg: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_deg
                .entry(e.degree())
                .or_insert_with(|| Poly::zero(&self.alg))
                .add_term(e.clone(), c.clone());
        }
        by_deg.into_iter().collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Expo::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Kirillov-Poisson bracket `{f, g}`: `{x_i, x_j} = [x_i, x_j]` on
    /// generators, extended as a biderivation.
    pub fn poisson(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let alg = &self.alg;
        let mut out = Poly::zero(alg);
        for ((i, j), row) in alg.sc_rows() {
            let t = &(&self.partial(*i) * &other.partial(*j))
                - &(&self.partial(*j) * &other.partial(*i));
            if t.is_zero() {
                continue;
            }
            for (k, c) in row {
                let xk = Poly::monomial(alg, &Expo::var(alg.dim(), *k), c.clone());
                out += &xk * &t;
            }
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = Poly::zero(&self.alg);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.mul(e2), c1 * c2);
            }
        }
        out
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        self.assert_compatible(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        self.assert_compatible(&rhs);
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
    }
}

/// Shared term renderer for `Poly` and the PBW elements, which print the
/// same way (there the factors are read in normal order).
pub(crate) fn format_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    alg: &Algebra,
    terms: impl Iterator<Item = (&'a Expo, &'a Rat)>,
) -> fmt::Result {
    let mut first = true;
    let mut any = false;
    for (e, c) in terms {
        any = true;
        let neg = c < &Rat::zero();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mono: Vec<String> = e
            .0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, &p)| {
                if p == 1 {
                    alg.basis_name(i).to_string()
                } else {
                    format!("{}^{}", alg.basis_name(i), p)
                }
            })
            .collect();
        let abs_is_one = {
            use num::traits::Signed;
            c.abs().is_one()
        };
        if mono.is_empty() {
            write!(f, "{}", format_rat_abs(c))?;
        } else if abs_is_one {
            write!(f, "{}", mono.join("*"))?;
        } else {
            write!(f, "{}*{}", format_rat_abs(c), mono.join("*"))?;
        }
    }
    if !any {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    /// Terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.alg, self.terms.iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rat::{rat, rint};

    fn sl2_omega(alg: &Algebra) -> Poly {
        // Casimir e*f + h^2/4
        let e = Poly::var(alg, 0);
        let h = Poly::var(alg, 1);
        let f = Poly::var(alg, 2);
        &(&e * &f) + &h.pow(2).scale(&rat(1, 4))
    }

    #[test]
    fn products_expand_exactly() {
        let alg = catalog("sl2").unwrap();
        let e = Poly::var(&alg, 0);
        let h = Poly::var(&alg, 1);
        let f = Poly::var(&alg, 2);
        let ef = &e * &f;
        assert_eq!(ef.coeff(&Expo(vec![1, 0, 1])), rint(1));
        assert_eq!(ef.len(), 1);

        let one = Poly::one(&alg);
        let diff_sq = &(&h + &one) * &(&h - &one);
        assert_eq!(diff_sq, &h.pow(2) - &one);

        let omega = sl2_omega(&alg);
        let sq = &omega * &omega;
        let expected = Poly::from_terms(
            &alg,
            vec![
                (Expo(vec![2, 0, 2]), rint(1)),
                (Expo(vec![1, 2, 1]), rat(1, 2)),
                (Expo(vec![0, 4, 0]), rat(1, 16)),
            ],
        );
        assert_eq!(sq, expected);
        assert_eq!(sq.degree(), omega.degree() * 2);
    }

    #[test]
    fn poisson_bracket_on_generators_and_casimir() {
        let alg = catalog("sl2").unwrap();
        let e = Poly::var(&alg, 0);
        let h = Poly::var(&alg, 1);
        let f = Poly::var(&alg, 2);
        assert_eq!(e.poisson(&f), h);
        assert_eq!(f.poisson(&e), (-&h).clone());
        let omega = sl2_omega(&alg);
        assert!(h.poisson(&omega).is_zero());
        assert!(e.poisson(&omega).is_zero());

        let ab = catalog("abelian(3)").unwrap();
        let p = &Poly::var(&ab, 0) * &Poly::var(&ab, 1);
        let q = Poly::var(&ab, 2).pow(3);
        assert!(p.poisson(&q).is_zero());
    }

    #[test]
    fn partials_and_components() {
        let alg = catalog("sl2").unwrap();
        let omega = sl2_omega(&alg);
        let de = omega.partial(0);
        assert_eq!(de, Poly::var(&alg, 2));
        let dh = omega.partial(1);
        assert_eq!(dh, Poly::var(&alg, 1).scale(&rat(1, 2)));
        let mixed = &omega + &Poly::var(&alg, 1);
        assert_eq!(mixed.homogeneous_component(2), omega);
        assert_eq!(mixed.homogeneous_component(1), Poly::var(&alg, 1));
        assert!(!mixed.is_homogeneous());
        assert!(omega.is_homogeneous());
    }

    #[test]
    fn display_uses_graded_lex_descending() {
        let alg = catalog("sl2").unwrap();
        let omega = sl2_omega(&alg);
        assert_eq!(omega.to_string(), "e*f + 1/4*h^2");
        let p = &(&omega * &Poly::constant(&alg, rint(0))) + &Poly::zero(&alg);
        assert_eq!(p.to_string(), "0");
        let q = &(&Poly::var(&alg, 0) * &Poly::var(&alg, 2))
            + &(&Poly::var(&alg, 1).scale(&rat(1, 2)) - &Poly::constant(&alg, rat(1, 6)));
        assert_eq!(q.to_string(), "e*f + 1/2*h - 1/6");
        let neg = -&q;
        assert_eq!(neg.to_string(), "-e*f - 1/2*h + 1/6");
    }

    #[test]
    fn monomial_enumeration_is_descending() {
        let monos = monomials_of_degree(3, 2);
        assert_eq!(monos.len(), 6);
        assert_eq!(monos[0], Expo(vec![2, 0, 0]));
        assert_eq!(monos[5], Expo(vec![0, 0, 2]));
        for w in monos.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    #[should_panic(expected = "different algebras")]
    fn cross_algebra_arithmetic_panics() {
        let a = catalog("sl2").unwrap();
        let b = catalog("so3").unwrap();
        let _ = &Poly::var(&a, 0) * &Poly::var(&b, 0);
    }
}
