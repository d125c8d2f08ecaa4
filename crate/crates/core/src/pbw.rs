//! The universal enveloping algebra in PBW normal form.
//!
//! Elements are rational combinations of normal-ordered monomials
//! `x_1^{a_1} ... x_n^{a_n}` (basis order = declaration order). The
//! product straightens words by always rewriting the *leftmost* inversion
//! `x_j x_i -> x_i x_j + [x_j, x_i]` (j > i), which terminates because
//! each step lowers (degree, inversion count) lexicographically.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num::traits::{One, Zero};

use crate::lie::Algebra;
use crate::poly::{format_terms, Expo, Poly};
use crate::rat::{factorial, Rat};

/// Element of `U(g)` over exact rationals, keyed by normal-ordered
/// monomial exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwElement {
    alg: Algebra,
    terms: BTreeMap<Expo, Rat>,
}

type Terms = BTreeMap<Expo, Rat>;

fn add_into(acc: &mut Terms, e: &Expo, c: Rat) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(e) {
        Some(slot) => {
            *slot += c;
            if slot.is_zero() {
                acc.remove(e);
            }
        }
        None => {
            acc.insert(e.clone(), c);
        }
    }
}

/// Shared straightening context; memoizes normal forms of words so that
/// the many overlapping subproblems of a product are solved once.
struct Straightener<'a> {
    alg: &'a Algebra,
    cache: HashMap<Vec<u32>, Rc<Terms>>,
}

impl<'a> Straightener<'a> {
    fn new(alg: &'a Algebra) -> Self {
        Straightener { alg, cache: HashMap::new() }
    }

    fn expo_of_sorted(&self, word: &[u32]) -> Expo {
        let mut e = vec![0u32; self.alg.dim()];
        for &v in word {
            e[v as usize] += 1;
        }
        Expo(e)
    }

    fn normalize(&mut self, word: &[u32]) -> Rc<Terms> {
        if let Some(hit) = self.cache.get(word) {
            return hit.clone();
        }
        let result = match word.windows(2).position(|w| w[0] > w[1]) {
            None => {
                let mut t = Terms::new();
                t.insert(self.expo_of_sorted(word), Rat::one());
                t
            }
            Some(p) => {
                let (j, i) = (word[p], word[p + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(p, p + 1);
                let base = self.normalize(&swapped);
                let mut acc: Terms = (*base).clone();
                for (k, c) in self.alg.bracket(j as usize, i as usize) {
                    let mut shorter = word.to_vec();
                    shorter.remove(p + 1);
                    shorter[p] = k as u32;
                    let sub = self.normalize(&shorter);
                    for (e, v) in sub.iter() {
                        add_into(&mut acc, e, &c * v);
                    }
                }
                acc
            }
        };
        let rc = Rc::new(result);
        self.cache.insert(word.to_vec(), rc.clone());
        rc
    }
}

fn word_of(e: &Expo) -> Vec<u32> {
    let mut w = Vec::with_capacity(e.degree() as usize);
    for (i, &p) in e.0.iter().enumerate() {
        for _ in 0..p {
            w.push(i as u32);
        }
    }
    w
}

impl PbwElement {
    pub fn zero(alg: &Algebra) -> Self {
        PbwElement { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn one(alg: &Algebra) -> Self {
        PbwElement::monomial(alg, &Expo::zero(alg.dim()), Rat::one())
    }

    /// The generator `x_i` as an element of `U(g)`.
    pub fn generator(alg: &Algebra, i: usize) -> Self {
        assert!(i < alg.dim(), "generator index out of range");
        PbwElement::monomial(alg, &Expo::var(alg.dim(), i), Rat::one())
    }

    /// A normal-ordered monomial with coefficient.
    pub fn monomial(alg: &Algebra, e: &Expo, c: Rat) -> Self {
        assert_eq!(e.0.len(), alg.dim(), "exponent vector has the wrong length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e.clone(), c);
        }
        PbwElement { alg: alg.clone(), terms }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Expo) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Filtration degree; 0 for the zero element.
    pub fn degree(&self) -> u32 {
        self.terms.keys().last().map_or(0, Expo::degree)
    }

    fn assert_compatible(&self, other: &PbwElement) {
        assert!(self.alg == other.alg, "elements over different algebras");
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_into(&mut out.terms, e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            add_into(&mut out.terms, e, -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> PbwElement {
        if c.is_zero() {
            return PbwElement::zero(&self.alg);
        }
        PbwElement {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Top-degree part read as a commutative polynomial (the symbol).
    pub fn top_symbol(&self) -> Poly {
        let d = self.degree();
        Poly::from_terms(
            &self.alg,
            self.terms
                .iter()
                .filter(|(e, _)| e.degree() == d)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Reinterpret the exponent table as a commutative polynomial
    /// (forgetting the ordering of factors), all degrees at once.
    pub fn as_poly_unordered(&self) -> Poly {
        Poly::from_terms(&self.alg, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }
}

/// Product in `U(g)`, computed by straightening the concatenated words.
pub fn pbw_mul(u: &PbwElement, v: &PbwElement) -> PbwElement {
    u.assert_compatible(v);
    let mut st = Straightener::new(&u.alg);
    let mut out = Terms::new();
    for (e1, c1) in &u.terms {
        let w1 = word_of(e1);
        for (e2, c2) in &v.terms {
            let mut word = w1.clone();
            word.extend(word_of(e2));
            let normal = st.normalize(&word);
            let c = c1 * c2;
            for (e, k) in normal.iter() {
                add_into(&mut out, e, &c * k);
            }
        }
    }
    PbwElement { alg: u.alg.clone(), terms: out }
}

/// `[u, v] = uv - vu` in `U(g)`.
pub fn commutator(u: &PbwElement, v: &PbwElement) -> PbwElement {
    pbw_mul(u, v).sub(&pbw_mul(v, u))
}

/// True iff `u` commutes with every generator.
pub fn is_central(u: &PbwElement) -> bool {
    let alg = u.alg.clone();
    (0..alg.dim()).all(|i| commutator(u, &PbwElement::generator(&alg, i)).is_zero())
}

/// Enumerate the distinct arrangements of the multiset word, calling `f`
/// on each.
fn for_each_arrangement(counts: &mut [u32], len: usize, prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if prefix.len() == len {
        f(prefix);
        return;
    }
    for i in 0..counts.len() {
        if counts[i] > 0 {
            counts[i] -= 1;
            prefix.push(i as u32);
            for_each_arrangement(counts, len, prefix, f);
            prefix.pop();
            counts[i] += 1;
        }
    }
}

/// The symmetrization map `S(g) -> U(g)`: a monomial of degree `k` goes
/// to the average of all `k!` orderings of its factors, reduced to normal
/// form; linear extension in general.
pub fn symmetrize(f: &Poly) -> PbwElement {
    let alg = f.algebra().clone();
    let mut st = Straightener::new(&alg);
    let mut out = Terms::new();
    for (e, c) in f.terms() {
        let k = e.degree() as usize;
        if k <= 1 {
            add_into(&mut out, e, c.clone());
            continue;
        }
        // group the k! orderings by distinct arrangement: each arrangement
        // stands for (prod of multiplicities!) coinciding orderings
        let mut counts = e.0.clone();
        let repeats: Rat = e.0.iter().map(|&m| factorial(m as usize)).product();
        let weight = c * repeats / factorial(k);
        let mut prefix = Vec::with_capacity(k);
        for_each_arrangement(&mut counts, k, &mut prefix, &mut |word| {
            let normal = st.normalize(word);
            for (m, v) in normal.iter() {
                add_into(&mut out, m, &weight * v);
            }
        });
    }
    PbwElement { alg, terms: out }
}

/// Exact inverse of [`symmetrize`], by peeling the degree filtration: the
/// top symbol of `symmetrize(p)` is `p`, so subtracting symbol by symbol
/// strictly lowers the degree.
pub fn symmetrize_inv(u: &PbwElement) -> Poly {
    let alg = u.algebra().clone();
    let mut out = Poly::zero(&alg);
    let mut rest = u.clone();
    while !rest.is_zero() {
        let top = rest.top_symbol();
        rest = rest.sub(&symmetrize(&top));
        debug_assert!(rest.is_zero() || rest.degree() < top.degree());
        out += top;
    }
    out
}

impl fmt::Display for PbwElement {
    /// Normal-ordered monomials in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_terms(f, &self.alg, self.terms.iter().rev())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rat::{rat, rint};

    fn sl2_vars(alg: &Algebra) -> (PbwElement, PbwElement, PbwElement) {
        (PbwElement::generator(alg, 0), PbwElement::generator(alg, 1), PbwElement::generator(alg, 2))
    }

    #[test]
    fn straightening_on_sl2() {
        let alg = catalog("sl2").unwrap();
        let (e, h, f) = sl2_vars(&alg);
        // f e = ef - h
        let fe = pbw_mul(&f, &e);
        let expected = PbwElement::monomial(&alg, &Expo(vec![1, 0, 1]), rint(1))
            .sub(&PbwElement::monomial(&alg, &Expo(vec![0, 1, 0]), rint(1)));
        assert_eq!(fe, expected);
        // h e = eh + 2e
        let he = pbw_mul(&h, &e);
        let expected = PbwElement::monomial(&alg, &Expo(vec![1, 1, 0]), rint(1))
            .add(&PbwElement::monomial(&alg, &Expo(vec![1, 0, 0]), rint(2)));
        assert_eq!(he, expected);
    }

    #[test]
    fn abelian_product_is_commutative() {
        let alg = catalog("abelian(3)").unwrap();
        let u = PbwElement::monomial(&alg, &Expo(vec![2, 1, 0]), rat(1, 3));
        let v = PbwElement::monomial(&alg, &Expo(vec![0, 1, 2]), rint(5));
        let uv = pbw_mul(&u, &v);
        assert_eq!(uv, pbw_mul(&v, &u));
        assert_eq!(uv.coeff(&Expo(vec![2, 2, 2])), rat(5, 3));
    }

    #[test]
    fn symmetrize_examples() {
        let alg = catalog("sl2").unwrap();
        let h2 = Poly::monomial(&alg, &Expo(vec![0, 2, 0]), rint(1));
        assert_eq!(symmetrize(&h2), PbwElement::monomial(&alg, &Expo(vec![0, 2, 0]), rint(1)));

        let ef = Poly::monomial(&alg, &Expo(vec![1, 0, 1]), rint(1));
        let phi = symmetrize(&ef);
        // (ef + fe)/2 = ef - h/2
        let expected = PbwElement::monomial(&alg, &Expo(vec![1, 0, 1]), rint(1))
            .sub(&PbwElement::monomial(&alg, &Expo(vec![0, 1, 0]), rat(1, 2)));
        assert_eq!(phi, expected);

        let x = Poly::var(&alg, 1);
        assert_eq!(symmetrize(&x), PbwElement::generator(&alg, 1));
    }

    #[test]
    fn symmetrize_inverse_examples() {
        let alg = catalog("sl2").unwrap();
        let ef = PbwElement::monomial(&alg, &Expo(vec![1, 0, 1]), rint(1));
        let inv = symmetrize_inv(&ef);
        let expected = &Poly::monomial(&alg, &Expo(vec![1, 0, 1]), rint(1))
            + &Poly::monomial(&alg, &Expo(vec![0, 1, 0]), rat(1, 2));
        assert_eq!(inv, expected);
        assert_eq!(symmetrize(&inv), ef);

        let h2 = PbwElement::monomial(&alg, &Expo(vec![0, 2, 0]), rint(1));
        assert_eq!(symmetrize_inv(&h2), Poly::monomial(&alg, &Expo(vec![0, 2, 0]), rint(1)));
    }

    #[test]
    fn commutators_and_centrality() {
        let alg = catalog("sl2").unwrap();
        let (e, h, f) = sl2_vars(&alg);
        assert_eq!(commutator(&e, &f), h);
        assert_eq!(commutator(&h, &e), e.scale(&rint(2)));
        assert!(commutator(&e, &PbwElement::one(&alg)).is_zero());

        // Casimir ef - h/2 + h^2/4, plus any scalar, is central
        let casimir = PbwElement::monomial(&alg, &Expo(vec![1, 0, 1]), rint(1))
            .sub(&PbwElement::monomial(&alg, &Expo(vec![0, 1, 0]), rat(1, 2)))
            .add(&PbwElement::monomial(&alg, &Expo(vec![0, 2, 0]), rat(1, 4)))
            .add(&PbwElement::monomial(&alg, &Expo(vec![0, 0, 0]), rat(1, 4)));
        assert!(is_central(&casimir));
        assert!(!is_central(&e));

        let ab = catalog("abelian(4)").unwrap();
        let u = PbwElement::monomial(&ab, &Expo(vec![1, 2, 0, 3]), rat(7, 2));
        assert!(is_central(&u));
    }
}
