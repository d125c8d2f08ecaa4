//! The invariant subalgebra, degree by degree: exact nullspace of the
//! stacked constraint maps `f -> {x_i, f}` on the degree-`d` coefficient
//! space.
//!
//! Constraints are intersected one generator at a time. Generators that
//! act diagonally on monomials (Cartan-type directions, detected from the
//! structure constants) are applied first as a plain eigenvalue filter;
//! the remaining generators go through fraction-free sparse elimination.
//! The final basis is canonicalized by reduced elimination over the
//! degree-`d` monomials in descending graded-lex order, so the output is
//! independent of the staging.

use std::collections::BTreeMap;

use num::traits::Zero;

use crate::lie::Algebra;
use crate::matrix::{kernel_basis_sparse, reduce_basis};
use crate::poly::{monomials_of_degree, Expo, Poly};
use crate::rat::Rat;

/// True iff `{x_i, f} = 0` for every generator.
pub fn is_invariant(f: &Poly) -> bool {
    let alg = f.algebra().clone();
    (0..alg.dim()).all(|i| Poly::var(&alg, i).poisson(f).is_zero())
}

/// Does `x_i` act diagonally on monomials, i.e. `[x_i, x_j] in Q x_j`
/// for all `j`?
fn acts_diagonally(alg: &Algebra, i: usize) -> bool {
    (0..alg.dim()).all(|j| alg.bracket(i, j).iter().all(|(k, _)| *k == j))
}

/// Eigenvalue of `{x_i, -}` on the monomial `x^gamma` when `x_i` acts
/// diagonally.
fn diagonal_eigenvalue(alg: &Algebra, i: usize, gamma: &Expo) -> Rat {
    let mut acc = Rat::zero();
    for (j, &g) in gamma.0.iter().enumerate() {
        if g == 0 {
            continue;
        }
        for (k, c) in alg.bracket(i, j) {
            debug_assert_eq!(k, j);
            acc += c * Rat::from_integer(g.into());
        }
    }
    acc
}

/// Basis of the invariant polynomials of homogeneous degree `d`,
/// canonical and monic with respect to descending graded-lex order.
pub fn invariant_basis(alg: &Algebra, d: u32) -> Vec<Poly> {
    let n = alg.dim();
    let monos = monomials_of_degree(n, d);
    let col_of: BTreeMap<&Expo, usize> = monos.iter().enumerate().map(|(c, e)| (e, c)).collect();

    let mut diagonal = Vec::new();
    let mut general = Vec::new();
    for i in 0..n {
        if acts_diagonally(alg, i) {
            diagonal.push(i);
        } else {
            general.push(i);
        }
    }

    // stage 0: diagonal generators keep the basis a set of monomials
    let mut monomial_cols: Vec<usize> = (0..monos.len()).collect();
    for &i in &diagonal {
        monomial_cols.retain(|&c| diagonal_eigenvalue(alg, i, &monos[c]).is_zero());
    }

    let mut basis: Vec<Poly> = monomial_cols
        .iter()
        .map(|&c| Poly::monomial(alg, &monos[c], Rat::from_integer(1.into())))
        .collect();

    // remaining generators: kernel of the constraint matrix over the
    // current basis coordinates
    for &i in &general {
        if basis.is_empty() {
            break;
        }
        let xi = Poly::var(alg, i);
        let mut rows: BTreeMap<Expo, Vec<(usize, Rat)>> = BTreeMap::new();
        for (b, p) in basis.iter().enumerate() {
            let image = xi.poisson(p);
            for (e, c) in image.terms() {
                rows.entry(e.clone()).or_default().push((b, c.clone()));
            }
        }
        let kernel = kernel_basis_sparse(basis.len(), rows.into_values());
        let next: Vec<Poly> = kernel
            .into_iter()
            .map(|combo| {
                let mut p = Poly::zero(alg);
                for (b, c) in combo.into_iter().enumerate() {
                    if !c.is_zero() {
                        p += basis[b].scale(&c);
                    }
                }
                p
            })
            .collect();
        basis = next;
    }

    // canonicalize over the full monomial column order
    let dense: Vec<Vec<Rat>> = basis
        .iter()
        .map(|p| {
            let mut row = vec![Rat::zero(); monos.len()];
            for (e, c) in p.terms() {
                row[col_of[e]] = c.clone();
            }
            row
        })
        .collect();
    reduce_basis(dense)
        .into_iter()
        .map(|row| {
            Poly::from_terms(
                alg,
                row.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(c, v)| (monos[c].clone(), v)),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rat::rat;

    #[test]
    fn casimir_is_invariant_generators_are_not() {
        let alg = catalog("sl2").unwrap();
        let omega = &(&Poly::var(&alg, 0) * &Poly::var(&alg, 2))
            + &Poly::monomial(&alg, &Expo(vec![0, 2, 0]), rat(1, 4));
        assert!(is_invariant(&omega));
        assert!(!is_invariant(&Poly::var(&alg, 0)));
        let ab = catalog("abelian(3)").unwrap();
        let any = &Poly::var(&ab, 0) * &Poly::var(&ab, 2);
        assert!(is_invariant(&any));
    }

    #[test]
    fn sl2_invariant_dimensions() {
        let alg = catalog("sl2").unwrap();
        let basis2 = invariant_basis(&alg, 2);
        assert_eq!(basis2.len(), 1);
        // monic leading term e*f; proportional to the Casimir
        assert_eq!(basis2[0].to_string(), "e*f + 1/4*h^2");
        assert!(invariant_basis(&alg, 1).is_empty());
        assert_eq!(invariant_basis(&alg, 4).len(), 1);
        assert!(invariant_basis(&alg, 3).is_empty());
        assert_eq!(invariant_basis(&alg, 0).len(), 1);
    }

    #[test]
    fn abelian_invariants_are_everything() {
        let alg = catalog("abelian(4)").unwrap();
        for d in 0..4u32 {
            let expect = monomials_of_degree(4, d).len();
            assert_eq!(invariant_basis(&alg, d).len(), expect);
        }
    }

    #[test]
    fn heisenberg_invariants_are_powers_of_the_center() {
        let alg = catalog("heisenberg3").unwrap();
        for d in 1..=5u32 {
            let basis = invariant_basis(&alg, d);
            assert_eq!(basis.len(), 1, "degree {d}");
            let mut e = vec![0u32; 3];
            e[2] = d;
            assert_eq!(basis[0], Poly::monomial(&alg, &Expo(e), Rat::from_integer(1.into())));
        }
    }

    #[test]
    fn every_basis_element_passes_is_invariant() {
        for name in ["sl2", "so3", "affine1", "heisenberg3"] {
            let alg = catalog(name).unwrap();
            for d in 0..=4u32 {
                for p in invariant_basis(&alg, d) {
                    assert!(is_invariant(&p), "{name} degree {d}: {p}");
                }
            }
        }
    }
}
