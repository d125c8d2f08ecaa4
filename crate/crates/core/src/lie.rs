//! Finite-dimensional Lie algebras presented by structure constants.
//!
//! An algebra is a dimension, an ordered basis of names, and the sparse
//! table of brackets `[x_i, x_j] = sum_k C_ij^k x_k`, stored for `i < j`
//! only; the accessor synthesizes the antisymmetric completion. Basis
//! order is declaration order and fixes every normal form downstream.
//!
//! Validation (the Jacobi identity) is explicit: constructors and the
//! parser return *unvalidated* candidates so that deliberately broken
//! tables can be probed; operations that are only meaningful on genuine
//! Lie algebras demand a validated value.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poly::Expo;
use crate::polyvec::PolyVector;
use crate::rat::{parse_rat, Rat};

/// Shared handle used by every value that carries its algebra around.
pub type Algebra = Arc<LieAlgebra>;

pub struct LieAlgebra {
    basis: Vec<String>,
    /// `(i, j) -> {k -> C_ij^k}` for `i < j`, zero rows never stored.
    sc: BTreeMap<(usize, usize), BTreeMap<usize, Rat>>,
    validated: bool,
    /// Memoized symbols of the trace operators, keyed by power.
    pub(crate) trace_cache: Mutex<BTreeMap<usize, BTreeMap<Expo, Rat>>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("basis", &self.basis)
            .field("sc", &self.sc)
            .field("validated", &self.validated)
            .finish()
    }
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.sc == other.sc
    }
}
impl Eq for LieAlgebra {}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        LieAlgebra {
            basis: self.basis.clone(),
            sc: self.sc.clone(),
            validated: self.validated,
            trace_cache: Mutex::new(BTreeMap::new()),
        }
    }
}

impl LieAlgebra {
    /// Build an unvalidated candidate from `(i, j, [(k, c)])` bracket rows
    /// (0-based indices). Rows with `i > j` are folded in antisymmetrically.
    pub fn new(basis: Vec<String>, brackets: Vec<(usize, usize, Vec<(usize, Rat)>)>) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Parse { line: 0, msg: "empty basis".into() });
        }
        for (a, name) in basis.iter().enumerate() {
            if basis[..a].contains(name) {
                return Err(Error::Parse { line: 0, msg: format!("duplicate basis name `{name}`") });
            }
        }
        let mut sc: BTreeMap<(usize, usize), BTreeMap<usize, Rat>> = BTreeMap::new();
        for (i, j, terms) in brackets {
            if i >= n || j >= n || terms.iter().any(|(k, _)| *k >= n) {
                return Err(Error::DimensionMismatch { expected: n, got: i.max(j) + 1 });
            }
            let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            if i == j {
                if terms.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!("bracket of `{}` with itself declared nonzero", basis[i]),
                    });
                }
                continue;
            }
            let row = sc.entry((lo, hi)).or_default();
            for (k, c) in terms {
                let c = if sign < 0 { -c } else { c };
                let slot = row.entry(k).or_insert_with(Rat::zero);
                *slot += c;
                if slot.is_zero() {
                    row.remove(&k);
                }
            }
        }
        sc.retain(|_, row| !row.is_empty());
        Ok(LieAlgebra { basis, sc, validated: false, trace_cache: Mutex::new(BTreeMap::new()) })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Structure constants of `[x_i, x_j]`, any index order; `C_ji = -C_ij`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i == j {
            return Vec::new();
        }
        let (lo, hi, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.sc.get(&(lo, hi)) {
            None => Vec::new(),
            Some(row) => row
                .iter()
                .map(|(k, c)| (*k, if flip { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Stored bracket rows, `i < j` only.
    pub(crate) fn sc_rows(&self) -> &BTreeMap<(usize, usize), BTreeMap<usize, Rat>> {
        &self.sc
    }

    /// Bilinear bracket of coordinate vectors.
    pub fn bracket_coords(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for ((i, j), row) in &self.sc {
            let c = &a[*i] * &b[*j] - &a[*j] * &b[*i];
            if c.is_zero() {
                continue;
            }
            for (k, v) in row {
                out[*k] += &c * v;
            }
        }
        out
    }

    /// Jacobiator `[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]` for
    /// every `i < j < k`; empty iff the Jacobi identity holds.
    pub fn jacobi_defect(&self) -> BTreeMap<(usize, usize, usize), Vec<Rat>> {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::from_integer(1.into());
            v
        };
        let mut defects = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                    let mut d = self.bracket_coords(&self.bracket_coords(&ei, &ej), &ek);
                    let d2 = self.bracket_coords(&self.bracket_coords(&ej, &ek), &ei);
                    let d3 = self.bracket_coords(&self.bracket_coords(&ek, &ei), &ej);
                    for t in 0..n {
                        d[t] += &d2[t] + &d3[t];
                    }
                    if d.iter().any(|c| !c.is_zero()) {
                        defects.insert((i, j, k), d);
                    }
                }
            }
        }
        defects
    }

    /// Mark the algebra as validated after checking Jacobi.
    pub fn validate(mut self) -> Result<Self> {
        match self.jacobi_defect().keys().next() {
            Some(&(i, j, k)) => Err(Error::JacobiFails(i, j, k)),
            None => {
                self.validated = true;
                Ok(self)
            }
        }
    }

    /// Matrix of `ad(v)`: column `j` holds the coordinates of `[v, x_j]`.
    pub fn adjoint_matrix(&self, v: &[Rat]) -> Result<Vec<Vec<Rat>>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        let mut m = vec![vec![Rat::zero(); n]; n];
        for j in 0..n {
            let mut ej = vec![Rat::zero(); n];
            ej[j] = Rat::from_integer(1.into());
            let col = self.bracket_coords(v, &ej);
            for (r, entry) in col.into_iter().enumerate() {
                m[r][j] = entry;
            }
        }
        Ok(m)
    }

    /// `K_ij = Tr(ad x_i . ad x_j)`.
    pub fn killing_form(&self) -> Vec<Vec<Rat>> {
        let n = self.dim();
        let ads: Vec<Vec<Vec<Rat>>> = (0..n)
            .map(|i| {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::from_integer(1.into());
                self.adjoint_matrix(&v).expect("basis vector has the right length")
            })
            .collect();
        let mut k = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut tr = Rat::zero();
                for r in 0..n {
                    for s in 0..n {
                        tr += &ads[i][r][s] * &ads[j][s][r];
                    }
                }
                k[i][j] = tr.clone();
                k[j][i] = tr;
            }
        }
        k
    }

    /// Cartan's criterion: nondegenerate Killing form, decided exactly.
    pub fn is_semisimple(&self) -> Result<bool> {
        if !self.validated {
            return Err(Error::Unvalidated);
        }
        let k = self.killing_form();
        Ok(!QMatrix::from_rows(k).det().is_zero())
    }

    /// `d_j = sum_i C_ij^i`; zero iff the Kirillov bivector is
    /// divergence-free for the constant coordinate volume form.
    pub fn unimodularity_defect(&self) -> Vec<Rat> {
        let n = self.dim();
        let mut d = vec![Rat::zero(); n];
        for ((i, j), row) in &self.sc {
            // contributes C_ij^i to d_j and C_ji^j = -C_ij^j to d_i
            if let Some(c) = row.get(i) {
                d[*j] += c;
            }
            if let Some(c) = row.get(j) {
                d[*i] -= c;
            }
        }
        d
    }
}

/// The linear bivector whose induced bracket of coordinates is the Lie
/// bracket: component on `d_i ^ d_j` (i < j) equals `sum_k C_ij^k x_k`.
/// No validation; used directly when probing broken candidates.
pub fn kirillov_bivector_raw(alg: &Algebra) -> PolyVector {
    let mut comps = Vec::new();
    for ((i, j), row) in &alg.sc {
        let mut p = crate::poly::Poly::zero(alg);
        for (k, c) in row {
            p += crate::poly::Poly::monomial(alg, &Expo::var(alg.dim(), *k), c.clone());
        }
        comps.push((vec![*i, *j], p));
    }
    PolyVector::from_components(alg, 2, comps)
}

/// Validated-only wrapper around [`kirillov_bivector_raw`].
pub fn kirillov_bivector(alg: &Algebra) -> Result<PolyVector> {
    if !alg.is_validated() {
        return Err(Error::Unvalidated);
    }
    Ok(kirillov_bivector_raw(alg))
}

/// Parse the line-oriented Lie file format:
///
/// ```text
/// # sl2 in the Chevalley basis
/// dim 3
/// basis e h f
/// bracket h e = 2 e
/// bracket h f = -2 f
/// bracket e f = 1 h
/// ```
///
/// Brackets are `<rat> <name>` terms joined by `+` or `-`; each unordered
/// pair may be declared at most once; unmentioned brackets are zero.
pub fn parse_lie_algebra(text: &str) -> Result<LieAlgebra> {
    let mut dim: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut brackets: Vec<(usize, usize, Vec<(usize, Rat)>)> = Vec::new();
    let mut declared: Vec<(usize, usize)> = Vec::new();

    let err = |line: usize, msg: String| Error::Parse { line, msg };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        match toks[0] {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line, "dim declared twice".into()));
                }
                if toks.len() != 2 {
                    return Err(err(line, "expected `dim <n>`".into()));
                }
                let n: usize = toks[1]
                    .parse()
                    .map_err(|_| err(line, format!("invalid dimension `{}`", toks[1])))?;
                if n == 0 {
                    return Err(err(line, "dimension must be positive".into()));
                }
                dim = Some(n);
            }
            "basis" => {
                let n = dim.ok_or_else(|| err(line, "basis declared before dim".into()))?;
                if basis.is_some() {
                    return Err(err(line, "basis declared twice".into()));
                }
                let names: Vec<String> = toks[1..].iter().map(|s| s.to_string()).collect();
                if names.len() != n {
                    return Err(err(line, format!("expected {n} basis names, found {}", names.len())));
                }
                for (a, name) in names.iter().enumerate() {
                    if names[..a].contains(name) {
                        return Err(err(line, format!("duplicate basis name `{name}`")));
                    }
                }
                basis = Some(names);
            }
            "bracket" => {
                let names = basis
                    .as_ref()
                    .ok_or_else(|| err(line, "bracket declared before basis".into()))?;
                if toks.len() < 6 || toks[3] != "=" {
                    return Err(err(line, "expected `bracket <a> <b> = <rat> <name> ...`".into()));
                }
                let lookup = |t: &str| -> Result<usize> {
                    names
                        .iter()
                        .position(|b| b == t)
                        .ok_or_else(|| err(line, format!("unknown basis name `{t}`")))
                };
                let i = lookup(toks[1])?;
                let j = lookup(toks[2])?;
                let mut terms: Vec<(usize, Rat)> = Vec::new();
                let mut pos = 4;
                let mut sign = 1i64;
                loop {
                    let c = parse_rat(toks[pos])
                        .ok_or_else(|| err(line, format!("expected rational, found `{}`", toks[pos])))?;
                    let name = toks
                        .get(pos + 1)
                        .ok_or_else(|| err(line, "missing basis name after coefficient".into()))?;
                    let k = lookup(name)?;
                    let c = if sign < 0 { -c } else { c };
                    terms.push((k, c));
                    pos += 2;
                    if pos == toks.len() {
                        break;
                    }
                    sign = match toks[pos] {
                        "+" => 1,
                        "-" => -1,
                        t => return Err(err(line, format!("expected `+` or `-`, found `{t}`"))),
                    };
                    pos += 1;
                    if pos == toks.len() {
                        return Err(err(line, "trailing sign without a term".into()));
                    }
                }
                if i == j && terms.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(err(
                        line,
                        format!("bracket of `{}` with itself declared nonzero", toks[1]),
                    ));
                }
                let key = (i.min(j), i.max(j));
                if i != j {
                    if declared.contains(&key) {
                        return Err(err(
                            line,
                            format!("duplicate bracket declaration for ({}, {})", toks[1], toks[2]),
                        ));
                    }
                    declared.push(key);
                }
                brackets.push((i, j, terms));
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }

    let n = dim.ok_or_else(|| err(text.lines().count(), "missing `dim` declaration".into()))?;
    let basis = basis.ok_or_else(|| err(text.lines().count(), "missing `basis` declaration".into()))?;
    debug_assert_eq!(basis.len(), n);
    LieAlgebra::new(basis, brackets)
}

fn build_catalog(basis: &[&str], brackets: Vec<(usize, usize, Vec<(usize, i64)>)>) -> Algebra {
    let rows = brackets
        .into_iter()
        .map(|(i, j, terms)| {
            (i, j, terms.into_iter().map(|(k, c)| (k, Rat::from_integer(c.into()))).collect())
        })
        .collect();
    let alg = LieAlgebra::new(basis.iter().map(|s| s.to_string()).collect(), rows)
        .expect("catalog tables are well-formed")
        .validate()
        .expect("catalog algebras satisfy Jacobi");
    Arc::new(alg)
}

/// Built-in algebras: `sl2`, `so3`, `sl3`, `heisenberg3`, `affine1`,
/// `abelian(n)`. All returned values are validated.
pub fn catalog(name: &str) -> Result<Algebra> {
    match name {
        "sl2" => Ok(build_catalog(
            &["e", "h", "f"],
            vec![(0, 1, vec![(0, -2)]), (0, 2, vec![(1, 1)]), (1, 2, vec![(2, -2)])],
        )),
        "so3" => Ok(build_catalog(
            &["x", "y", "z"],
            vec![(0, 1, vec![(2, 1)]), (1, 2, vec![(0, 1)]), (0, 2, vec![(1, -1)])],
        )),
        "heisenberg3" => Ok(build_catalog(&["p", "q", "z"], vec![(0, 1, vec![(2, 1)])])),
        "affine1" => Ok(build_catalog(&["x", "y"], vec![(0, 1, vec![(1, 1)])])),
        "sl3" => Ok(build_catalog(
            &["e1", "e2", "e12", "f1", "f2", "f12", "h1", "h2"],
            vec![
                (0, 1, vec![(2, 1)]),
                (0, 3, vec![(6, 1)]),
                (0, 5, vec![(4, -1)]),
                (1, 4, vec![(7, 1)]),
                (1, 5, vec![(3, 1)]),
                (2, 3, vec![(1, -1)]),
                (2, 4, vec![(0, 1)]),
                (2, 5, vec![(6, 1), (7, 1)]),
                (3, 4, vec![(5, -1)]),
                (0, 6, vec![(0, -2)]),
                (1, 6, vec![(1, 1)]),
                (2, 6, vec![(2, -1)]),
                (3, 6, vec![(3, 2)]),
                (4, 6, vec![(4, -1)]),
                (5, 6, vec![(5, 1)]),
                (0, 7, vec![(0, 1)]),
                (1, 7, vec![(1, -2)]),
                (2, 7, vec![(2, -1)]),
                (3, 7, vec![(3, -1)]),
                (4, 7, vec![(4, 2)]),
                (5, 7, vec![(5, 1)]),
            ],
        )),
        _ => {
            if let Some(inner) = name.strip_prefix("abelian(").and_then(|s| s.strip_suffix(')')) {
                let n: usize = inner
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownCatalog(name.to_string()))?;
                if n == 0 {
                    return Err(Error::UnknownCatalog(name.to_string()));
                }
                let basis = (1..=n).map(|i| format!("x{i}")).collect();
                let alg = LieAlgebra::new(basis, Vec::new())
                    .expect("abelian table is well-formed")
                    .validate()
                    .expect("abelian algebras satisfy Jacobi");
                return Ok(Arc::new(alg));
            }
            Err(Error::UnknownCatalog(name.to_string()))
        }
    }
}
