//! Exact linear algebra over the rationals: fraction-free (Bareiss-style)
//! elimination for determinants and nullspaces. Pivoting always follows
//! the caller's column order, so echelon structure and reduced kernel
//! bases are deterministic.

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Dense rational matrix; only what the exact checks need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rat>>,
}

impl QMatrix {
    pub fn from_rows(data: Vec<Vec<Rat>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix { rows, cols, data }
    }

    /// Exact determinant via integer Bareiss elimination after clearing
    /// denominators row by row.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rat::one();
        }
        let mut scale = Rat::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for row in &self.data {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= Rat::from_integer(lcm.clone());
            m.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
        }

        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Rat::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = m[n - 1][n - 1].clone() * BigInt::from(sign);
        Rat::from_integer(det_int) / scale
    }
}

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, Rat)>;

fn clear_denominators(row: &SparseRow) -> Vec<(usize, BigInt)> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    out.sort_by_key(|(c, _)| *c);
    out
}

fn divide_by_content(row: &mut Vec<(usize, BigInt)>) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a*pivot_lead - b*row_lead` style cross-multiplication elimination of
/// `row`'s leading column against `pivot`, followed by content removal.
fn eliminate(row: &mut Vec<(usize, BigInt)>, pivot: &[(usize, BigInt)]) {
    let lead_col = row[0].0;
    debug_assert_eq!(pivot[0].0, lead_col);
    let a = pivot[0].1.clone();
    let b = row[0].1.clone();
    let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let next = match (row.get(i), pivot.get(j)) {
            (Some(&(rc, _)), Some(&(pc, _))) if rc == pc => {
                let v = &row[i].1 * &a - &pivot[j].1 * &b;
                i += 1;
                j += 1;
                (rc, v)
            }
            (Some(&(rc, _)), Some(&(pc, _))) if rc < pc => {
                let v = &row[i].1 * &a;
                i += 1;
                (rc, v)
            }
            (Some(_), Some(&(pc, _))) => {
                let v = -(&pivot[j].1 * &b);
                j += 1;
                (pc, v)
            }
            (Some(&(rc, _)), None) => {
                let v = &row[i].1 * &a;
                i += 1;
                (rc, v)
            }
            (None, Some(&(pc, _))) => {
                let v = -(&pivot[j].1 * &b);
                j += 1;
                (pc, v)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            merged.push(next);
        }
    }
    debug_assert!(merged.first().map_or(true, |(c, _)| *c > lead_col));
    divide_by_content(&mut merged);
    *row = merged;
}

/// Exact nullspace of the sparse row system, fraction-free elimination.
///
/// Columns are pivoted in increasing index order (callers arrange their
/// column numbering so that this is the term order they want). The result
/// is the canonical reduced (Gauss-Jordan) basis of the kernel subspace
/// with respect to that column order; it depends only on the span, not on
/// row order or elimination details.
pub fn kernel_basis_sparse(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Vec<Vec<Rat>> {
    // forward pass: integer echelon keyed by pivot column
    let mut pivots: std::collections::BTreeMap<usize, Vec<(usize, BigInt)>> =
        std::collections::BTreeMap::new();
    for row in rows {
        let mut r = clear_denominators(&row);
        while let Some(&(lead, _)) = r.first() {
            match pivots.get(&lead) {
                Some(p) => eliminate(&mut r, p),
                None => {
                    divide_by_content(&mut r);
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }

    // back substitution per free column, over the rationals
    let pivot_cols: Vec<usize> = pivots.keys().copied().collect();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    for free in 0..ncols {
        if pivot_cols.binary_search(&free).is_ok() {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (&pcol, prow) in pivots.iter().rev() {
            if pcol > free {
                continue;
            }
            let mut acc = Rat::zero();
            for (c, coef) in prow.iter().skip(1) {
                if !v[*c].is_zero() {
                    acc += Rat::from_integer(coef.clone()) * &v[*c];
                }
            }
            v[pcol] = -acc / Rat::from_integer(prow[0].1.clone());
        }
        basis.push(v);
    }
    reduce_basis(basis)
}

/// Gauss-Jordan on dense rational rows; returns the unique reduced basis
/// of the row span: monic pivots, pivot columns cleared elsewhere, rows
/// ordered by pivot column. Zero rows are dropped.
pub fn reduce_basis(mut rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(r) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, r);
        let inv = rows[next_row][col].recip();
        for x in rows[next_row].iter_mut() {
            *x *= &inv;
        }
        for other in 0..rows.len() {
            if other != next_row && !rows[other][col].is_zero() {
                let factor = rows[other][col].clone();
                for c in col..ncols {
                    let sub = &factor * &rows[next_row][c];
                    rows[other][c] -= sub;
                }
            }
        }
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    rows.truncate(next_row);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    #[test]
    fn det_of_killing_like_matrix() {
        let m = QMatrix::from_rows(vec![
            vec![rint(0), rint(0), rint(4)],
            vec![rint(0), rint(8), rint(0)],
            vec![rint(4), rint(0), rint(0)],
        ]);
        assert_eq!(m.det(), rint(-128));
    }

    #[test]
    fn det_handles_rational_entries_and_swaps() {
        let m = QMatrix::from_rows(vec![
            vec![rint(0), rat(1, 2)],
            vec![rat(1, 3), rint(0)],
        ]);
        assert_eq!(m.det(), rat(-1, 6));
        let singular = QMatrix::from_rows(vec![
            vec![rint(1), rint(2)],
            vec![rint(2), rint(4)],
        ]);
        assert_eq!(singular.det(), rint(0));
    }

    #[test]
    fn kernel_of_small_system() {
        // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
        let rows = vec![
            vec![(0, rint(1)), (1, rint(1)), (2, rint(1))],
            vec![(0, rint(1)), (2, rat(-1, 1))],
        ];
        let basis = kernel_basis_sparse(3, rows);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], vec![rint(1), rat(-2, 1), rint(1)]);
    }

    #[test]
    fn kernel_of_zero_map_is_identity_basis() {
        let basis = kernel_basis_sparse(3, Vec::<SparseRow>::new());
        assert_eq!(basis.len(), 3);
        for (i, v) in basis.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn kernel_is_canonical_under_row_order() {
        let rows1 = vec![
            vec![(0, rint(2)), (1, rint(4)), (3, rint(2))],
            vec![(1, rint(1)), (2, rint(1))],
        ];
        let mut rows2 = rows1.clone();
        rows2.reverse();
        rows2.push(vec![(0, rint(1)), (1, rint(2)), (3, rint(1))]); // dependent
        assert_eq!(kernel_basis_sparse(4, rows1), kernel_basis_sparse(4, rows2));
    }
}
