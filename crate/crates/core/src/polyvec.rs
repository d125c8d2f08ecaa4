//! Polyvector fields with polynomial coefficients, the divergence for the
//! constant coordinate volume form, and the Schouten-Nijenhuis bracket.
//!
//! Sign conventions, fixed here once and used everywhere:
//!
//! * components live on strictly increasing index tuples `i_1 < ... < i_d`;
//!   antisymmetry is the access convention;
//! * the divergence is the odd transport of the de Rham differential for
//!   the volume form `dx_1 ^ ... ^ dx_n`:
//!   `div(s d_{i_1}^...^d_{i_d}) = sum_t (-1)^(t-1) (ds/dx_{i_t}) d_{I\i_t}`;
//! * the Schouten bracket is the second-order deviation of the divergence
//!   from the Leibniz rule,
//!   `[a, b] = div(a^b) - div(a)^b - (-1)^deg(a) a^div(b)`,
//!   under which `div[a, b] = -[div a, b] - (-1)^deg(a) [a, div b]`
//!   holds identically (the checked form of the bracket/divergence
//!   compatibility identity).
//!
//! For a bivector stored with the bracket-literal convention (component on
//! `d_i^d_j`, `i < j`, equal to `{x_i, x_j}`), `[a, a] = 0` is exactly the
//! Jacobi identity for the induced bracket.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::lie::Algebra;
use crate::poly::Poly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    alg: Algebra,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

/// Sort an index tuple, returning the permutation sign; `None` if an
/// index repeats.
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, i32)> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, sign))
}

impl PolyVector {
    pub fn zero(alg: &Algebra, degree: usize) -> Self {
        PolyVector { alg: alg.clone(), degree, comps: BTreeMap::new() }
    }

    /// Degree-0 polyvector, i.e. a function.
    pub fn from_poly(p: &Poly) -> Self {
        let mut out = PolyVector::zero(p.algebra(), 0);
        out.add_component(Vec::new(), p.clone());
        out
    }

    /// Build from `(index tuple, coefficient)` pairs; tuples may arrive in
    /// any order and are folded in antisymmetrically.
    pub fn from_components(
        alg: &Algebra,
        degree: usize,
        comps: impl IntoIterator<Item = (Vec<usize>, Poly)>,
    ) -> Self {
        let mut out = PolyVector::zero(alg, degree);
        for (idx, p) in comps {
            assert_eq!(idx.len(), degree, "index tuple length must equal the degree");
            assert!(idx.iter().all(|&i| i < alg.dim()), "index out of range");
            out.add_component(idx, p);
        }
        out
    }

    fn add_component(&mut self, idx: Vec<usize>, p: Poly) {
        if p.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_with_sign(idx) else {
            return;
        };
        let signed = if sign < 0 { -&p } else { p };
        match self.comps.get_mut(&sorted) {
            Some(slot) => {
                *slot = &*slot + &signed;
                if slot.is_zero() {
                    self.comps.remove(&sorted);
                }
            }
            None => {
                self.comps.insert(sorted, signed);
            }
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.comps.iter()
    }

    /// Coefficient on a (not necessarily sorted) index tuple, with the
    /// antisymmetric sign; zero for repeated indices.
    pub fn component(&self, idx: &[usize]) -> Poly {
        match sort_with_sign(idx.to_vec()) {
            None => Poly::zero(&self.alg),
            Some((sorted, sign)) => match self.comps.get(&sorted) {
                None => Poly::zero(&self.alg),
                Some(p) => {
                    if sign < 0 {
                        -p
                    } else {
                        p.clone()
                    }
                }
            },
        }
    }

    fn assert_compatible(&self, other: &PolyVector) {
        assert!(self.alg == other.alg, "polyvectors over different algebras");
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        self.assert_compatible(other);
        assert_eq!(self.degree, other.degree, "polyvector degrees differ");
        let mut out = self.clone();
        for (idx, p) in &other.comps {
            out.add_component(idx.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyVector {
        PolyVector {
            alg: self.alg.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(|(i, p)| (i.clone(), -p)).collect(),
        }
    }

    pub fn sub(&self, other: &PolyVector) -> PolyVector {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> PolyVector {
        if c.is_zero() {
            return PolyVector::zero(&self.alg, self.degree);
        }
        PolyVector {
            alg: self.alg.clone(),
            degree: self.degree,
            comps: self.comps.iter().map(|(i, p)| (i.clone(), p.scale(c))).collect(),
        }
    }

    /// Wedge product; Koszul signs come from merging the index tuples.
    pub fn wedge(&self, other: &PolyVector) -> PolyVector {
        self.assert_compatible(other);
        let mut out = PolyVector::zero(&self.alg, self.degree + other.degree);
        for (i1, p1) in &self.comps {
            for (i2, p2) in &other.comps {
                let mut idx = i1.clone();
                idx.extend_from_slice(i2);
                out.add_component(idx, p1 * p2);
            }
        }
        out
    }

    /// Divergence for the constant coordinate volume form; degree drops
    /// by one. Degree 0 has no divergence.
    pub fn divergence(&self) -> Result<PolyVector> {
        if self.degree == 0 {
            return Err(Error::DegreeZeroPolyvector);
        }
        Ok(self.div_inner())
    }

    /// Same contraction, but degree 0 maps to zero so that the Schouten
    /// formula below can be stated uniformly.
    fn div_inner(&self) -> PolyVector {
        let out_degree = self.degree.saturating_sub(1);
        let mut out = PolyVector::zero(&self.alg, out_degree);
        if self.degree == 0 {
            return out;
        }
        for (idx, p) in &self.comps {
            for (t, &i) in idx.iter().enumerate() {
                let d = p.partial(i);
                if d.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(t);
                let signed = if t % 2 == 0 { d } else { -&d };
                out.add_component(rest, signed);
            }
        }
        out
    }

    /// Schouten-Nijenhuis bracket via the divergence deviation (module
    /// docs fix the signs). Degree of the result is
    /// `deg(a) + deg(b) - 1` (saturating at zero for two functions).
    pub fn schouten(&self, other: &PolyVector) -> PolyVector {
        self.assert_compatible(other);
        let target = (self.degree + other.degree).saturating_sub(1);
        let sign_a: i32 = if self.degree % 2 == 0 { -1 } else { 1 };
        let mut out = PolyVector::zero(&self.alg, target);
        let terms = [
            (self.wedge(other).div_inner(), 1),
            (self.div_inner().wedge(other), -1),
            (self.wedge(&other.div_inner()), sign_a),
        ];
        for (t, s) in terms {
            // zero summands may carry a mismatched nominal degree
            // (divergence of a function); they contribute nothing
            if t.is_zero() {
                continue;
            }
            debug_assert_eq!(t.degree(), target);
            out = if s > 0 { out.add(&t) } else { out.sub(&t) };
        }
        out
    }

    /// Pair a bivector with `df ^ dg`; with the bracket-literal storage
    /// convention this recovers the Poisson bracket.
    pub fn pair_functions(&self, f: &Poly, g: &Poly) -> Poly {
        assert_eq!(self.degree, 2, "pairing against df^dg needs a bivector");
        let mut out = Poly::zero(&self.alg);
        for (idx, s) in &self.comps {
            let (i, j) = (idx[0], idx[1]);
            let t = &(&f.partial(i) * &g.partial(j)) - &(&f.partial(j) * &g.partial(i));
            if !t.is_zero() {
                out += s * &t;
            }
        }
        out
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, p) in &self.comps {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let wedge: Vec<String> =
                idx.iter().map(|&i| format!("d({})", self.alg.basis_name(i))).collect();
            if idx.is_empty() {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*{}", wedge.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, kirillov_bivector, kirillov_bivector_raw, parse_lie_algebra};
    use crate::poly::Expo;
    use crate::rat::{rat, rint};
    use std::sync::Arc;

    #[test]
    fn kirillov_components_match_structure_constants() {
        let alg = catalog("sl2").unwrap();
        let b = kirillov_bivector(&alg).unwrap();
        // component on d(e)^d(f) is h, on d(e)^d(h) is -2e
        assert_eq!(b.component(&[0, 2]), Poly::var(&alg, 1));
        assert_eq!(b.component(&[0, 1]), Poly::var(&alg, 0).scale(&rat(-2, 1)));
        assert_eq!(b.component(&[2, 0]), -&Poly::var(&alg, 1));

        let heis = catalog("heisenberg3").unwrap();
        let bh = kirillov_bivector(&heis).unwrap();
        assert_eq!(bh.components().count(), 1);
        assert_eq!(bh.component(&[0, 1]), Poly::var(&heis, 2));

        let ab = catalog("abelian(3)").unwrap();
        assert!(kirillov_bivector(&ab).unwrap().is_zero());
    }

    #[test]
    fn kirillov_requires_validation() {
        let raw = parse_lie_algebra("dim 2\nbasis x y\nbracket x y = 1 y\n").unwrap();
        let alg = Arc::new(raw);
        assert!(kirillov_bivector(&alg).is_err());
        assert!(!kirillov_bivector_raw(&alg).is_zero());
    }

    #[test]
    fn divergence_of_catalog_bivectors() {
        let sl2 = catalog("sl2").unwrap();
        assert!(kirillov_bivector(&sl2).unwrap().divergence().unwrap().is_zero());

        let aff = catalog("affine1").unwrap();
        let div = kirillov_bivector(&aff).unwrap().divergence().unwrap();
        assert_eq!(div.degree(), 1);
        // d_x(y) d_y - d_y(y) d_x = -d_x in the stored convention
        assert_eq!(div.component(&[0]), Poly::constant(&aff, rat(-1, 1)));
        assert!(div.component(&[1]).is_zero());

        // constant-coefficient bivector has zero divergence
        let consts = PolyVector::from_components(
            &sl2,
            2,
            vec![(vec![0, 1], Poly::constant(&sl2, rint(3))), (vec![1, 2], Poly::one(&sl2))],
        );
        assert!(consts.divergence().unwrap().is_zero());

        let f = PolyVector::from_poly(&Poly::var(&sl2, 0));
        assert!(f.divergence().is_err());
    }

    #[test]
    fn schouten_square_detects_jacobi() {
        let sl2 = catalog("sl2").unwrap();
        let a = kirillov_bivector(&sl2).unwrap();
        assert!(a.schouten(&a).is_zero());

        let broken = Arc::new(
            parse_lie_algebra(
                "dim 3\nbasis e h f\nbracket h e = 2 e\nbracket h f = -2 f\nbracket e f = 1 e\n",
            )
            .unwrap(),
        );
        let b = kirillov_bivector_raw(&broken);
        let sq = b.schouten(&b);
        assert_eq!(sq.degree(), 3);
        assert!(!sq.is_zero());
    }

    #[test]
    fn schouten_of_functions_vanishes() {
        let alg = catalog("sl2").unwrap();
        let f = PolyVector::from_poly(&Poly::var(&alg, 0).pow(2));
        let g = PolyVector::from_poly(&Poly::var(&alg, 1));
        assert!(f.schouten(&g).is_zero());
    }

    #[test]
    fn wedge_is_antisymmetric_on_vectors() {
        let alg = catalog("sl2").unwrap();
        let v = PolyVector::from_components(&alg, 1, vec![(vec![0], Poly::var(&alg, 1))]);
        let w = PolyVector::from_components(&alg, 1, vec![(vec![2], Poly::var(&alg, 0))]);
        let vw = v.wedge(&w);
        let wv = w.wedge(&v);
        assert_eq!(vw, wv.neg());
        assert!(v.wedge(&v).is_zero());
        // repeated index folds to zero
        let rep = PolyVector::from_components(
            &alg,
            2,
            vec![(vec![1, 1], Poly::var(&alg, 0))],
        );
        assert!(rep.is_zero());
    }

    #[test]
    fn pairing_recovers_poisson_bracket() {
        let alg = catalog("sl2").unwrap();
        let b = kirillov_bivector(&alg).unwrap();
        let e = Poly::var(&alg, 0);
        let f = Poly::var(&alg, 2);
        assert_eq!(b.pair_functions(&e, &f), e.poisson(&f));
        let omega = &(&e * &f) + &Poly::monomial(&alg, &Expo(vec![0, 2, 0]), rat(1, 4));
        let h = Poly::var(&alg, 1);
        assert_eq!(b.pair_functions(&h, &omega), h.poisson(&omega));
    }
}
