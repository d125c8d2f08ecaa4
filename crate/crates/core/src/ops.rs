//! Constant-coefficient differential operators on the symmetric algebra,
//! and the trace operators `Tr_k` with symbol `v -> Tr(ad(v)^k)`.
//!
//! Symbol-to-operator normalization is plain substitution `xi_i -> d/dx_i`
//! with no factorial rescaling; consequently an order-`k` symbol `p`
//! applied to `(sum v_i x_i)^k` yields `k! p(v)`. The Duflo
//! multiplicativity checks downstream only close under this convention.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::Algebra;
use crate::poly::{format_terms, Expo, Poly};
use crate::rat::{rint, Rat};

/// Element of the polynomial algebra in the partials `d/dx_i`, acting on
/// `Poly` term by term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstCoeffOp {
    alg: Algebra,
    terms: BTreeMap<Expo, Rat>,
}

impl ConstCoeffOp {
    pub fn zero(alg: &Algebra) -> Self {
        ConstCoeffOp { alg: alg.clone(), terms: BTreeMap::new() }
    }

    /// Single partial monomial `c * d^e`.
    pub fn monomial(alg: &Algebra, e: &Expo, c: Rat) -> Self {
        assert_eq!(e.0.len(), alg.dim(), "exponent vector has the wrong length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.clone(), c);
        }
        ConstCoeffOp { alg: alg.clone(), terms }
    }

    pub fn from_terms(alg: &Algebra, terms: impl IntoIterator<Item = (Expo, Rat)>) -> Self {
        let mut out = ConstCoeffOp::zero(alg);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Expo, c: Rat) {
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

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    /// Highest order among the terms; 0 for the zero operator.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(Expo::degree).max().unwrap_or(0)
    }

    /// Lowest order among the terms; `None` for the zero operator.
    pub fn min_order(&self) -> Option<u32> {
        self.terms.keys().map(Expo::degree).min()
    }

    pub fn add(&self, other: &ConstCoeffOp) -> ConstCoeffOp {
        assert!(self.alg == other.alg, "operators over different algebras");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> ConstCoeffOp {
        if c.is_zero() {
            return ConstCoeffOp::zero(&self.alg);
        }
        ConstCoeffOp {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Apply to a polynomial; linear, lowers degree by each term's order.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert!(self.alg == *f.algebra(), "operator and polynomial over different algebras");
        let mut out = Poly::zero(&self.alg);
        for (beta, a) in &self.terms {
            for (gamma, c) in f.terms() {
                let Some(rest) = gamma.div(beta) else { continue };
                // falling factorials from repeated differentiation
                let mut factor = Rat::one();
                for (&g, &b) in gamma.0.iter().zip(&beta.0) {
                    for step in 0..b {
                        factor *= rint((g - step) as i64);
                    }
                }
                out.add_term(rest, a * c * factor);
            }
        }
        out
    }

    /// Formal adjoint for integration by parts against a constant volume
    /// form: each order-`m` term picks up `(-1)^m`.
    pub fn formal_adjoint(&self) -> ConstCoeffOp {
        ConstCoeffOp {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let signed = if e.degree() % 2 == 0 { c.clone() } else { -c.clone() };
                    (e.clone(), signed)
                })
                .collect(),
        }
    }
}

impl fmt::Display for ConstCoeffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // rendered like a polynomial in the partials
        format_terms(f, &self.alg, self.terms.iter().rev())
    }
}

fn poly_matrix_mul(a: &[Vec<Poly>], b: &[Vec<Poly>], alg: &Algebra) -> Vec<Vec<Poly>> {
    let n = a.len();
    let mut out = vec![vec![Poly::zero(alg); n]; n];
    for r in 0..n {
        for c in 0..n {
            let mut acc = Poly::zero(alg);
            for t in 0..n {
                if !a[r][t].is_zero() && !b[t][c].is_zero() {
                    acc += &a[r][t] * &b[t][c];
                }
            }
            out[r][c] = acc;
        }
    }
    out
}

/// The operator whose symbol is `v -> Tr(ad(v)^k)`: expand the trace of
/// the k-th power of the generic adjoint matrix and substitute
/// `xi_i -> d/dx_i`. Results are memoized on the algebra.
pub fn trace_operator(alg: &Algebra, k: usize) -> Result<ConstCoeffOp> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    if !alg.is_validated() {
        return Err(Error::Unvalidated);
    }
    if let Some(hit) = alg.trace_cache.lock().unwrap().get(&k) {
        return Ok(ConstCoeffOp::from_terms(alg, hit.clone()));
    }

    let n = alg.dim();
    // generic adjoint matrix: entries are linear polynomials in xi
    let mut generic = vec![vec![Poly::zero(alg); n]; n];
    for i in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        let ad = alg.adjoint_matrix(&v).expect("unit vector has the right length");
        let xi = Poly::var(alg, i);
        for r in 0..n {
            for c in 0..n {
                if !ad[r][c].is_zero() {
                    generic[r][c] += xi.scale(&ad[r][c]);
                }
            }
        }
    }
    let mut power = generic.clone();
    for _ in 1..k {
        power = poly_matrix_mul(&power, &generic, alg);
    }
    let mut symbol = Poly::zero(alg);
    for (r, row) in power.iter().enumerate() {
        symbol += row[r].clone();
    }

    let terms: BTreeMap<Expo, Rat> =
        symbol.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    alg.trace_cache.lock().unwrap().insert(k, terms.clone());
    Ok(ConstCoeffOp::from_terms(alg, terms))
}

/// `exp(sum c_k D_k)` applied to `f`. Exact: every listed operator must
/// have order at least one, so the series terminates on polynomials.
pub fn exp_apply(coeffs: &[(Rat, ConstCoeffOp)], f: &Poly) -> Result<Poly> {
    for (_, d) in coeffs {
        if d.min_order() == Some(0) {
            return Err(Error::NonNilpotentExponent);
        }
    }
    let step = |g: &Poly| -> Poly {
        let mut acc = Poly::zero(f.algebra());
        for (c, d) in coeffs {
            let t = d.apply(g);
            if !t.is_zero() {
                acc += t.scale(c);
            }
        }
        acc
    };
    let mut acc = f.clone();
    let mut term = f.clone();
    let mut m = 1i64;
    while !term.is_zero() {
        term = step(&term).scale(&crate::rat::rat(1, m));
        acc = &acc + &term;
        m += 1;
    }
    Ok(acc)
}

/// Outcome of a Leibniz-rule probe over products of the given generators.
#[derive(Debug, Clone)]
pub struct DerivationCheck {
    pub is_derivation: bool,
    /// First violating pair `(f, g)` in enumeration order, if any.
    pub counterexample: Option<(Poly, Poly)>,
}

/// Check `D(fg) = D(f) g + f D(g)` on all pairs of nonempty products of
/// `gens` with total degree at most `max_degree`.
pub fn is_derivation_on(d: &ConstCoeffOp, gens: &[Poly], max_degree: u32) -> DerivationCheck {
    // nonempty products of generators, depth-first over multisets
    let mut products: Vec<Poly> = Vec::new();
    fn build(gens: &[Poly], start: usize, current: &Poly, max_degree: u32, out: &mut Vec<Poly>) {
        for i in start..gens.len() {
            let next = current * &gens[i];
            if next.is_zero() || next.degree() > max_degree {
                continue;
            }
            out.push(next.clone());
            build(gens, i, &next, max_degree, out);
        }
    }
    let one = Poly::one(d.algebra());
    build(gens, 0, &one, max_degree, &mut products);

    for f in &products {
        for g in &products {
            if f.degree() + g.degree() > max_degree {
                continue;
            }
            let lhs = d.apply(&(f * g));
            let rhs = &(&d.apply(f) * g) + &(f * &d.apply(g));
            if lhs != rhs {
                return DerivationCheck { is_derivation: false, counterexample: Some((f.clone(), g.clone())) };
            }
        }
    }
    DerivationCheck { is_derivation: true, counterexample: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rat::rat;

    fn sl2_omega(alg: &Algebra) -> Poly {
        &(&Poly::var(alg, 0) * &Poly::var(alg, 2))
            + &Poly::monomial(alg, &Expo(vec![0, 2, 0]), rat(1, 4))
    }

    #[test]
    fn trace_operator_sl2_order_two() {
        let alg = catalog("sl2").unwrap();
        let tr2 = trace_operator(&alg, 2).unwrap();
        let expected = ConstCoeffOp::from_terms(
            &alg,
            vec![(Expo(vec![0, 2, 0]), rint(8)), (Expo(vec![1, 0, 1]), rint(8))],
        );
        assert_eq!(tr2, expected);
        assert_eq!(tr2.order(), 2);
        assert!(trace_operator(&alg, 0).is_err());
    }

    #[test]
    fn trace_operator_vanishes_on_nilpotent_and_abelian() {
        let heis = catalog("heisenberg3").unwrap();
        assert!(trace_operator(&heis, 2).unwrap().is_zero());
        let ab = catalog("abelian(3)").unwrap();
        for k in 1..=4 {
            assert!(trace_operator(&ab, k).unwrap().is_zero());
        }
    }

    #[test]
    fn apply_examples() {
        let alg = catalog("sl2").unwrap();
        let tr2 = trace_operator(&alg, 2).unwrap();
        let omega = sl2_omega(&alg);
        assert_eq!(tr2.apply(&omega), Poly::constant(&alg, rint(12)));
        let linear = &Poly::var(&alg, 0) + &Poly::var(&alg, 1).scale(&rat(3, 2));
        assert!(tr2.apply(&linear).is_zero());
        assert!(ConstCoeffOp::zero(&alg).apply(&omega).is_zero());
    }

    #[test]
    fn exp_apply_examples() {
        let alg = catalog("sl2").unwrap();
        let tr2 = trace_operator(&alg, 2).unwrap();
        let omega = sl2_omega(&alg);
        // exp((1/48) Tr_2) adds Tr_2(omega)/48 = 12/48 = 1/4
        let result = exp_apply(&[(rat(1, 48), tr2.clone())], &omega).unwrap();
        assert_eq!(result, &omega + &Poly::constant(&alg, rat(1, 4)));

        let linear = Poly::var(&alg, 1);
        assert_eq!(exp_apply(&[(rat(1, 48), tr2.clone())], &linear).unwrap(), linear);

        let zero_op = ConstCoeffOp::zero(&alg);
        assert_eq!(exp_apply(&[(rint(5), zero_op)], &omega).unwrap(), omega);

        let const_op = ConstCoeffOp::monomial(&alg, &Expo::zero(3), rint(1));
        assert!(exp_apply(&[(rint(1), const_op)], &omega).is_err());
    }

    #[test]
    fn formal_adjoint_signs() {
        let alg = catalog("sl2").unwrap();
        let tr2 = trace_operator(&alg, 2).unwrap();
        assert_eq!(tr2.formal_adjoint(), tr2);
        let de = ConstCoeffOp::monomial(&alg, &Expo::var(3, 0), rint(1));
        assert_eq!(de.formal_adjoint(), de.scale(&rat(-1, 1)));
        assert_eq!(de.formal_adjoint().formal_adjoint(), de);
        assert!(ConstCoeffOp::zero(&alg).formal_adjoint().is_zero());
    }

    #[test]
    fn derivation_probe() {
        let alg = catalog("sl2").unwrap();
        let tr2 = trace_operator(&alg, 2).unwrap();
        let omega = sl2_omega(&alg);
        let check = is_derivation_on(&tr2, std::slice::from_ref(&omega), 4);
        assert!(!check.is_derivation);
        let (f, g) = check.counterexample.unwrap();
        assert_eq!(f, omega);
        assert_eq!(g, omega);
        // Tr_2(omega^2) - 2 omega Tr_2(omega) = 40 omega - 24 omega != 0
        let defect = &tr2.apply(&(&omega * &omega)) - &(&tr2.apply(&omega) * &omega).scale(&rint(2));
        assert_eq!(defect, omega.scale(&rint(16)));

        // vacuous: single linear generator at degree 1
        let x = Poly::var(&alg, 1);
        assert!(is_derivation_on(&tr2, std::slice::from_ref(&x), 1).is_derivation);

        // first-order operators are derivations
        let dh = ConstCoeffOp::monomial(&alg, &Expo::var(3, 1), rint(1));
        assert!(is_derivation_on(&dh, &[omega, x], 6).is_derivation);
    }
}
